#include "tptd/optimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "tptd/errors.hpp"

namespace tptd {

std::string_view to_string(OptimizerKind kind) noexcept {
    switch (kind) {
        case OptimizerKind::kCrFmNes: return "cr-fm-nes";
        case OptimizerKind::kCmaEs: return "cma-es";
    }
    return "?";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
    if (name == "cr-fm-nes") return OptimizerKind::kCrFmNes;
    if (name == "cma-es") return OptimizerKind::kCmaEs;
    throw ContractError("unknown optimizer '" + std::string(name) + "' (expected cr-fm-nes or cma-es)");
}

void OptimizerConfig::validate() const {
    if (population_size < 4) throw ContractError("optimizer: population_size must be >= 4");
    if (algorithm == OptimizerKind::kCrFmNes && population_size % 2 != 0) {
        throw ContractError("optimizer: cr-fm-nes uses mirrored sampling and needs an even population_size");
    }
    if (max_generations == 0) throw ContractError("optimizer: max_generations must be >= 1");
    if (!(initial_step_size > 0.0) || !std::isfinite(initial_step_size)) {
        throw ContractError("optimizer: initial_step_size must be > 0");
    }
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

Index idx(std::size_t i) { return static_cast<Index>(i); }

double chi_mean(double n) { return std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n)); }

// (mu/mu_w, lambda)-CMA-ES with rank-one, rank-mu and active (negative) updates.
class CmaEs {
public:
    CmaEs(VectorXd mean, double sigma, std::size_t lambda)
        : n_(static_cast<std::size_t>(mean.size())), lambda_(lambda), mu_(lambda / 2), mean_(std::move(mean)),
          sigma_(sigma) {
        const double nd = static_cast<double>(n_);
        const double lam = static_cast<double>(lambda_);
        VectorXd raw(idx(lambda_));
        for (std::size_t i = 0; i < lambda_; ++i) {
            raw(idx(i)) = std::log((lam + 1.0) / 2.0) - std::log(static_cast<double>(i + 1));
        }
        const VectorXd pos = raw.head(idx(mu_));
        const VectorXd neg = raw.tail(idx(lambda_ - mu_));
        mueff_ = pos.sum() * pos.sum() / pos.squaredNorm();
        const double neg_abs = -neg.sum();
        const double mueff_neg = neg_abs > 0.0 ? neg_abs * neg_abs / neg.squaredNorm() : 0.0;

        c_sigma_ = (mueff_ + 2.0) / (nd + mueff_ + 5.0);
        d_sigma_ = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff_ - 1.0) / (nd + 1.0)) - 1.0) + c_sigma_;
        c_c_ = (4.0 + mueff_ / nd) / (nd + 4.0 + 2.0 * mueff_ / nd);
        c_1_ = 2.0 / ((nd + 1.3) * (nd + 1.3) + mueff_);
        c_mu_ = std::min(1.0 - c_1_, 2.0 * (mueff_ - 2.0 + 1.0 / mueff_) / ((nd + 2.0) * (nd + 2.0) + mueff_));
        chi_n_ = chi_mean(nd);

        weights_.resize(idx(lambda_));
        weights_.head(idx(mu_)) = pos / pos.sum();
        if (neg_abs > 0.0) {
            const double alpha_mu = 1.0 + c_1_ / c_mu_;
            const double alpha_mueff = 1.0 + 2.0 * mueff_neg / (mueff_ + 2.0);
            const double alpha_posdef = (1.0 - c_1_ - c_mu_) / (nd * c_mu_);
            weights_.tail(idx(lambda_ - mu_)) = neg * (std::min({alpha_mu, alpha_mueff, alpha_posdef}) / neg_abs);
        }

        const Index ni = idx(n_);
        C_ = MatrixXd::Identity(ni, ni);
        B_ = MatrixXd::Identity(ni, ni);
        D_ = VectorXd::Ones(ni);
        p_sigma_ = VectorXd::Zero(ni);
        p_c_ = VectorXd::Zero(ni);
        Z_.resize(ni, idx(lambda_));
        Y_.resize(ni, idx(lambda_));
        X_.resize(ni, idx(lambda_));
    }

    template <typename Rng>
    const MatrixXd& ask(Rng& rng) {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (Index k = 0; k < Z_.cols(); ++k) {
            for (Index i = 0; i < Z_.rows(); ++i) Z_(i, k) = normal(rng);
        }
        Y_.noalias() = B_ * D_.asDiagonal() * Z_;
        X_ = (sigma_ * Y_).colwise() + mean_;
        return X_;
    }

    void tell(const std::vector<std::size_t>& order) {
        ++generation_;
        const Index ni = idx(n_);
        const Index lam = idx(lambda_);
        const Index mu = idx(mu_);

        MatrixXd Ys(ni, lam);
        VectorXd z_w = VectorXd::Zero(ni);
        for (Index r = 0; r < lam; ++r) {
            const Index k = idx(order[static_cast<std::size_t>(r)]);
            Ys.col(r) = Y_.col(k);
            if (r < mu) z_w += weights_(r) * Z_.col(k);
        }
        const VectorXd y_w = Ys.leftCols(mu) * weights_.head(mu);
        mean_ += sigma_ * y_w;

        // C^{-1/2} y = B z for the B, D that produced the sample.
        p_sigma_ = (1.0 - c_sigma_) * p_sigma_ + std::sqrt(c_sigma_ * (2.0 - c_sigma_) * mueff_) * (B_ * z_w);
        const double ps_norm = p_sigma_.norm();
        const double gen = static_cast<double>(generation_);
        const bool h_sigma = ps_norm / std::sqrt(1.0 - std::pow(1.0 - c_sigma_, 2.0 * gen)) <
                             (1.4 + 2.0 / (static_cast<double>(n_) + 1.0)) * chi_n_;
        p_c_ *= 1.0 - c_c_;
        if (h_sigma) p_c_ += std::sqrt(c_c_ * (2.0 - c_c_) * mueff_) * y_w;

        VectorXd w_adj(lam);
        for (Index r = 0; r < lam; ++r) {
            const double w = weights_(r);
            if (w >= 0.0) {
                w_adj(r) = w;
            } else {
                const double zz = Z_.col(idx(order[static_cast<std::size_t>(r)])).squaredNorm();
                w_adj(r) = zz > 0.0 ? w * static_cast<double>(n_) / zz : 0.0;
            }
        }
        const double delta_h = h_sigma ? 0.0 : c_c_ * (2.0 - c_c_);
        C_ *= 1.0 + c_1_ * delta_h - c_1_ - c_mu_ * weights_.sum();
        C_.noalias() += c_1_ * p_c_ * p_c_.transpose();
        C_.noalias() += c_mu_ * (Ys * w_adj.asDiagonal() * Ys.transpose());

        sigma_ *= std::exp((c_sigma_ / d_sigma_) * (ps_norm / chi_n_ - 1.0));

        evals_ += lambda_;
        const double gap = static_cast<double>(lambda_) / ((c_1_ + c_mu_) * static_cast<double>(n_) * 10.0);
        if (static_cast<double>(evals_ - eigen_evals_) > gap) {
            eigen_evals_ = evals_;
            C_ = (0.5 * (C_ + C_.transpose())).eval();
            Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C_);
            if (eig.info() != Eigen::Success) {
                broken_ = true;
                return;
            }
            VectorXd ev = eig.eigenvalues();
            const double ev_max = std::max(ev.maxCoeff(), std::numeric_limits<double>::min());
            ev = ev.cwiseMax(ev_max * 1e-20);
            B_ = eig.eigenvectors();
            D_ = ev.cwiseSqrt();
            if (ev_max / ev.minCoeff() > 1e14) broken_ = true;
        }
    }

    [[nodiscard]] double max_step() const { return sigma_ * D_.maxCoeff(); }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] bool broken() const { return broken_; }

private:
    std::size_t n_;
    std::size_t lambda_;
    std::size_t mu_;
    VectorXd mean_;
    double sigma_;
    VectorXd weights_;
    double mueff_ = 0, c_sigma_ = 0, d_sigma_ = 0, c_c_ = 0, c_1_ = 0, c_mu_ = 0, chi_n_ = 0;
    MatrixXd C_, B_;
    VectorXd D_, p_sigma_, p_c_;
    MatrixXd Z_, Y_, X_;
    std::size_t generation_ = 0;
    std::size_t evals_ = 0;
    std::size_t eigen_evals_ = 0;
    bool broken_ = false;
};

// Root of (1 + a^2) exp(a^2 / 2) / 0.24 - 10 - n, the distance-weight scale.
double distance_weight_scale(double n) {
    auto f = [n](double a) { return (1.0 + a * a) * std::exp(a * a / 2.0) / 0.24 - 10.0 - n; };
    auto df = [](double a) { return (1.0 / 0.24) * a * std::exp(a * a / 2.0) * (3.0 + a * a); };
    double a = 1.0;
    for (int it = 0; it < 1000 && std::fabs(f(a)) > 1e-10; ++it) a -= 0.5 * f(a) / df(a);
    return a;
}

// Cost-reduction fast-moving natural evolution strategy. The search
// distribution is N(m, sigma^2 D (I + v v^T) D) with diagonal D and one
// rank-one direction v; sampling is mirrored.
class CrFmNes {
public:
    template <typename Rng>
    CrFmNes(VectorXd mean, double sigma, std::size_t lambda, Rng& rng)
        : n_(static_cast<std::size_t>(mean.size())), lambda_(lambda), mean_(std::move(mean)), sigma_(sigma) {
        const double nd = static_cast<double>(n_);
        const double lam = static_cast<double>(lambda_);
        const Index ni = idx(n_);
        std::normal_distribution<double> normal(0.0, 1.0);
        v_.resize(ni);
        for (Index i = 0; i < ni; ++i) v_(i) = normal(rng) / std::sqrt(nd);
        D_ = VectorXd::Ones(ni);

        w_rank_hat_.resize(idx(lambda_));
        for (std::size_t i = 0; i < lambda_; ++i) {
            w_rank_hat_(idx(i)) = std::max(0.0, std::log(lam / 2.0 + 1.0) - std::log(static_cast<double>(i + 1)));
        }
        w_rank_ = (w_rank_hat_ / w_rank_hat_.sum()).array() - 1.0 / lam;
        mueff_ = 1.0 / (w_rank_.array() + 1.0 / lam).square().sum();
        c_s_ = (mueff_ + 2.0) / (nd + mueff_ + 5.0);
        c_c_ = (4.0 + mueff_ / nd) / (nd + 4.0 + 2.0 * mueff_ / nd);
        const double c1_cma = 2.0 / ((nd + 1.3) * (nd + 1.3) + mueff_);
        // Negative for n < 5 in the reference tuning; clamped so the rank-one
        // path never pushes the wrong way on tiny problems.
        c_1_ = std::max(0.0, c1_cma * (nd - 5.0) / 6.0);
        chi_n_ = chi_mean(nd);
        alpha_dist_ = distance_weight_scale(nd) * std::min(1.0, std::sqrt(lam / nd));
        eta_stag_sigma_ = std::tanh((0.024 * lam + 0.7 * nd + 20.0) / (nd + 12.0));
        eta_conv_sigma_ = 2.0 * std::tanh((0.025 * lam + 0.75 * nd + 10.0) / (nd + 4.0));
        eta_b_ = std::tanh((std::min(0.02 * lam, 3.0 * std::log(nd)) + 5.0) / (0.23 * nd + 25.0));

        p_c_ = VectorXd::Zero(ni);
        p_s_ = VectorXd::Zero(ni);
        Z_.resize(ni, idx(lambda_));
        Y_.resize(ni, idx(lambda_));
        X_.resize(ni, idx(lambda_));
    }

    template <typename Rng>
    const MatrixXd& ask(Rng& rng) {
        std::normal_distribution<double> normal(0.0, 1.0);
        const Index half = idx(lambda_ / 2);
        for (Index k = 0; k < half; ++k) {
            for (Index i = 0; i < Z_.rows(); ++i) {
                const double z = normal(rng);
                Z_(i, k) = z;
                Z_(i, k + half) = -z;
            }
        }
        const double normv2 = v_.squaredNorm();
        const VectorXd vbar = v_ / std::sqrt(normv2);
        const RowVectorXd proj = vbar.transpose() * Z_;
        Y_ = Z_ + (std::sqrt(1.0 + normv2) - 1.0) * vbar * proj;
        X_ = (sigma_ * (Y_.array().colwise() * D_.array())).matrix().colwise() + mean_;
        return X_;
    }

    void tell(const std::vector<std::size_t>& order) {
        const Index ni = idx(n_);
        const Index lam = idx(lambda_);
        const double nd = static_cast<double>(n_);

        MatrixXd Z(ni, lam), Y(ni, lam), X(ni, lam);
        for (Index r = 0; r < lam; ++r) {
            const Index k = idx(order[static_cast<std::size_t>(r)]);
            Z.col(r) = Z_.col(k);
            Y.col(r) = Y_.col(k);
            X.col(r) = X_.col(k);
        }

        const double normv = v_.norm();
        const double normv2 = normv * normv;
        const double normv4 = normv2 * normv2;
        const VectorXd vbar = v_ / normv;

        p_s_ = (1.0 - c_s_) * p_s_ + std::sqrt(c_s_ * (2.0 - c_s_) * mueff_) * (Z * w_rank_);
        const double ps_norm = p_s_.norm();

        VectorXd weights;
        double eta_sigma;
        if (ps_norm >= chi_n_) {
            VectorXd w_tmp(lam);
            for (Index r = 0; r < lam; ++r) w_tmp(r) = w_rank_hat_(r) * std::exp(alpha_dist_ * Z.col(r).norm());
            weights = (w_tmp / w_tmp.sum()).array() - 1.0 / static_cast<double>(lambda_);
            eta_sigma = 1.0;
        } else {
            weights = w_rank_;
            eta_sigma = ps_norm >= 0.1 * chi_n_ ? eta_stag_sigma_ : eta_conv_sigma_;
        }

        const VectorXd wxm = (X.colwise() - mean_) * weights;
        p_c_ = (1.0 - c_c_) * p_c_ + std::sqrt(c_c_ * (2.0 - c_c_) * mueff_) * wxm / sigma_;
        mean_ += wxm;

        // Natural-gradient components for D and v.
        const Index cols = lam + 1;
        MatrixXd exY(ni, cols);
        exY.leftCols(lam) = Y;
        exY.col(lam) = p_c_.cwiseQuotient(D_);
        const MatrixXd yy = exY.cwiseProduct(exY);
        const RowVectorXd ip_yvbar = vbar.transpose() * exY;
        const MatrixXd yvbar = exY.array().colwise() * vbar.array();
        const double gammav = 1.0 + normv2;
        const VectorXd vbarbar = vbar.cwiseProduct(vbar);
        const double alphavd =
            std::min(1.0, std::sqrt(normv4 + (2.0 * gammav - std::sqrt(gammav)) / vbarbar.maxCoeff()) / (2.0 + normv2));

        MatrixXd t = (exY.array().rowwise() * ip_yvbar.array()).matrix() -
                     vbar * ((ip_yvbar.array().square() + gammav) / 2.0).matrix();
        const double b = -(1.0 - alphavd * alphavd) * normv4 / gammav + 2.0 * alphavd * alphavd;
        const VectorXd H = VectorXd::Constant(ni, 2.0) - (b + 2.0 * alphavd * alphavd) * vbarbar;
        const VectorXd invH = H.cwiseInverse();

        const MatrixXd s_step1 =
            yy - (normv2 / gammav) * (yvbar.array().rowwise() * ip_yvbar.array()).matrix() -
            MatrixXd::Ones(ni, cols);
        const RowVectorXd ip_vbart = vbar.transpose() * t;
        const MatrixXd s_step2 =
            s_step1 - (alphavd / gammav) * ((2.0 + normv2) * (t.array().colwise() * vbar.array()).matrix() -
                                            normv2 * vbarbar * ip_vbart);
        const VectorXd invHvbarbar = invH.cwiseProduct(vbarbar);
        const RowVectorXd ip_s_step2 = invHvbarbar.transpose() * s_step2;
        const MatrixXd s = (s_step2.array().colwise() * invH.array()).matrix() -
                           (b / (1.0 + b * vbarbar.dot(invHvbarbar))) * invHvbarbar * ip_s_step2;
        const RowVectorXd ip_svbarbar = vbarbar.transpose() * s;
        t -= alphavd * ((2.0 + normv2) * (s.array().colwise() * vbar.array()).matrix() - vbar * ip_svbarbar);

        VectorXd exw(cols);
        exw.head(lam) = eta_b_ * weights;
        exw(lam) = c_1_;
        v_ += (t * exw) / normv;
        D_ += (s * exw).cwiseProduct(D_);
        if (!(D_.minCoeff() > 0.0) || !v_.allFinite()) {
            broken_ = true;
            return;
        }
        const double nthroot_det =
            std::exp(D_.array().log().sum() / nd + std::log(1.0 + v_.squaredNorm()) / (2.0 * nd));
        D_ /= nthroot_det;

        const double g_s = ((Z.array().square() - 1.0).matrix() * weights).sum() / nd;
        sigma_ *= std::exp(eta_sigma / 2.0 * g_s);
    }

    [[nodiscard]] double max_step() const {
        return sigma_ * D_.maxCoeff() * std::sqrt(1.0 + v_.squaredNorm());
    }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] bool broken() const { return broken_; }

private:
    std::size_t n_;
    std::size_t lambda_;
    VectorXd mean_;
    double sigma_;
    VectorXd v_, D_;
    VectorXd w_rank_hat_, w_rank_;
    double mueff_ = 0, c_s_ = 0, c_c_ = 0, c_1_ = 0, chi_n_ = 0;
    double alpha_dist_ = 0, eta_stag_sigma_ = 0, eta_conv_sigma_ = 0, eta_b_ = 0;
    VectorXd p_c_, p_s_;
    MatrixXd Z_, Y_, X_;
    bool broken_ = false;
};

double checked_eval(const ScalarObjective& objective, const double* x, std::size_t n, std::size_t eval_index) {
    const double f = objective(std::span<const double>(x, n));
    if (!std::isfinite(f)) {
        throw NumericalError("objective returned a non-finite value at evaluation " + std::to_string(eval_index));
    }
    return f;
}

template <typename Strategy, typename Rng>
void run_loop(Strategy& es, Rng& rng, const ScalarObjective& objective, std::size_t n, const OptimizerConfig& cfg,
              OptResult& result) {
    const std::size_t lambda = cfg.population_size;
    const std::size_t budget = cfg.budget();
    const std::size_t history_len =
        10 + static_cast<std::size_t>(std::ceil(30.0 * static_cast<double>(n) / static_cast<double>(lambda)));
    std::deque<double> best_history;
    std::vector<double> fitness(lambda);
    std::vector<std::size_t> order(lambda);

    while (result.evaluations_used + lambda <= budget) {
        const MatrixXd& X = es.ask(rng);
        for (std::size_t k = 0; k < lambda; ++k) {
            const double* xk = X.col(idx(k)).data();
            const double f = checked_eval(objective, xk, n, result.evaluations_used);
            ++result.evaluations_used;
            fitness[k] = f;
            if (f < result.best_f) {
                result.best_f = f;
                result.best_x.assign(xk, xk + n);
            }
        }
        ++result.generations;
        if (cfg.record_trace) result.best_trace.push_back(result.best_f);

        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
        es.tell(order);
        if (es.broken()) break;

        const auto [fmin_it, fmax_it] = std::minmax_element(fitness.begin(), fitness.end());
        best_history.push_back(*fmin_it);
        if (best_history.size() > history_len) best_history.pop_front();
        if (best_history.size() == history_len) {
            const auto [hmin, hmax] = std::minmax_element(best_history.begin(), best_history.end());
            if (std::max(*hmax, *fmax_it) - std::min(*hmin, *fmin_it) < cfg.tol_fun) {
                result.converged = true;
                break;
            }
        }
        if (es.max_step() < cfg.tol_x * cfg.initial_step_size) {
            result.converged = true;
            break;
        }
        if (!std::isfinite(es.sigma()) || es.sigma() > 1e100) break;
    }
}

}  // namespace

OptResult minimize(const ScalarObjective& objective, std::size_t n, const OptimizerConfig& cfg) {
    cfg.validate();
    if (n == 0) throw ContractError("optimizer: dimension must be >= 1");

    std::mt19937_64 rng(cfg.seed);
    VectorXd mean(idx(n));
    if (cfg.initial_mean) {
        if (cfg.initial_mean->size() != n) throw ContractError("optimizer: initial mean has wrong dimension");
        for (std::size_t i = 0; i < n; ++i) mean(idx(i)) = (*cfg.initial_mean)[i];
    } else {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) mean(idx(i)) = unit(rng);
    }

    OptResult result;
    result.best_x.assign(mean.data(), mean.data() + n);
    result.best_f = checked_eval(objective, mean.data(), n, 0);
    result.evaluations_used = 1;

    switch (cfg.algorithm) {
        case OptimizerKind::kCmaEs: {
            CmaEs es(mean, cfg.initial_step_size, cfg.population_size);
            run_loop(es, rng, objective, n, cfg, result);
            break;
        }
        case OptimizerKind::kCrFmNes: {
            CrFmNes es(mean, cfg.initial_step_size, cfg.population_size, rng);
            run_loop(es, rng, objective, n, cfg, result);
            break;
        }
    }
    return result;
}

}  // namespace tptd
