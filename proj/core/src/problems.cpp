#include "tptd/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tptd {

namespace {

void check_dimension(const ProblemSpec& spec, std::span<const double> x) {
    if (x.size() != spec.n) {
        throw ContractError("problem " + std::string(to_string(spec.kind)) + ": expected " +
                            std::to_string(spec.n) + " variables, got " + std::to_string(x.size()));
    }
}

// Shape functions of the regular-front family. `pos` holds the mirrored
// position variables; f_1 is the full product, f_m depends on pos[0] only.
template <typename Lead, typename Tail>
ObjectiveVector rp_shape(std::span<const double> pos, std::size_t m, double scale, Lead lead, Tail tail) {
    ObjectiveVector f(m);
    for (std::size_t i = 0; i < m; ++i) {
        // 0-based objective i uses lead() of pos[0..m-2-i] and tail() of pos[m-1-i].
        const std::size_t factors = m - 1 - i;
        double v = scale;
        for (std::size_t j = 0; j < factors; ++j) v *= lead(pos[j]);
        if (i > 0) v *= tail(pos[factors]);
        f[i] = v;
    }
    return f;
}

}  // namespace

ProblemKind parse_problem_kind(std::string_view name) {
    if (name == "rp-linear") return ProblemKind::kRpLinear;
    if (name == "rp-concave") return ProblemKind::kRpConcave;
    if (name == "rp-convex") return ProblemKind::kRpConvex;
    if (name == "med") return ProblemKind::kMed;
    throw ContractError("unknown problem '" + std::string(name) +
                        "' (expected rp-linear, rp-concave, rp-convex or med)");
}

std::string_view to_string(ProblemKind kind) noexcept {
    switch (kind) {
        case ProblemKind::kRpLinear: return "rp-linear";
        case ProblemKind::kRpConcave: return "rp-concave";
        case ProblemKind::kRpConvex: return "rp-convex";
        case ProblemKind::kMed: return "med";
    }
    return "?";
}

void ProblemSpec::validate() const {
    if (m < 2) throw ContractError("problem: m must be >= 2");
    if (n < m) throw ContractError("problem: n must be >= m");
    if (kind == ProblemKind::kMed && !(p > 0.0 && std::isfinite(p))) {
        throw ContractError("problem: MED exponent p must be > 0");
    }
}

double mirror_unit(double t) noexcept {
    double r = std::fmod(std::fabs(t), 2.0);
    return r > 1.0 ? 2.0 - r : r;
}

double rp_distance(std::span<const double> x, std::size_t m) {
    double g = 0.0;
    for (std::size_t i = m - 1; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        g += 100.0 * a * a + b * b;
    }
    return g;
}

ObjectiveVector evaluate_rp(const ProblemSpec& spec, std::span<const double> x) {
    if (!is_rp(spec.kind)) throw ContractError("evaluate_rp: not an RP problem");
    check_dimension(spec, x);
    const std::size_t m = spec.m;
    std::vector<double> pos(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) pos[j] = mirror_unit(x[j]);
    const double scale = 1.0 + rp_distance(x, m);
    constexpr double kHalfPi = std::numbers::pi / 2.0;

    switch (spec.kind) {
        case ProblemKind::kRpLinear:
            return rp_shape(pos, m, scale, [](double v) { return v; }, [](double v) { return 1.0 - v; });
        case ProblemKind::kRpConcave:
            return rp_shape(
                pos, m, scale, [](double v) { return std::sin(kHalfPi * v); },
                [](double v) { return std::cos(kHalfPi * v); });
        case ProblemKind::kRpConvex:
            return rp_shape(
                pos, m, scale, [](double v) { return 1.0 - std::sin(kHalfPi * v); },
                [](double v) { return 1.0 - std::cos(kHalfPi * v); });
        case ProblemKind::kMed: break;
    }
    throw ContractError("evaluate_rp: not an RP problem");
}

ObjectiveVector evaluate_med(const ProblemSpec& spec, std::span<const double> x) {
    if (spec.kind != ProblemKind::kMed) throw ContractError("evaluate_med: not MED");
    check_dimension(spec, x);
    ObjectiveVector f(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - (j == i ? 1.0 : 0.0);
            sq += d * d;
        }
        const double base = std::sqrt(sq / 2.0);
        f[i] = spec.p == 1.0 ? base : std::pow(base, spec.p);
    }
    return f;
}

ObjectiveVector evaluate(const ProblemSpec& spec, std::span<const double> x) {
    return spec.kind == ProblemKind::kMed ? evaluate_med(spec, x) : evaluate_rp(spec, x);
}

Problem make_problem(const ProblemSpec& spec) {
    spec.validate();
    return Problem{spec.m, spec.n, [spec](std::span<const double> x) { return evaluate(spec, x); }};
}

AnalyticReference analytic_reference(const ProblemSpec& spec) {
    spec.validate();
    return {ObjectiveVector(spec.m, 0.0), ObjectiveVector(spec.m, 1.0), spec};
}

bool AnalyticReference::on_front(std::span<const double> x, std::span<const double> f, double tol) const {
    if (x.size() != spec.n || f.size() != spec.m) return false;
    const std::size_t m = spec.m;
    switch (spec.kind) {
        case ProblemKind::kRpLinear: {
            double sum = 0.0;
            for (double v : f) sum += v;
            return rp_distance(x, m) <= tol && std::fabs(sum - 1.0) <= tol;
        }
        case ProblemKind::kRpConcave: {
            double sq = 0.0;
            for (double v : f) sq += v * v;
            return rp_distance(x, m) <= tol && std::fabs(std::sqrt(sq) - 1.0) <= tol;
        }
        case ProblemKind::kRpConvex: {
            if (rp_distance(x, m) > tol) return false;
            const ObjectiveVector expect = evaluate_rp(spec, x);
            for (std::size_t i = 0; i < m; ++i) {
                if (std::fabs(expect[i] - f[i]) > tol) return false;
            }
            return true;
        }
        case ProblemKind::kMed: {
            double sum = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (j < m) {
                    if (x[j] < -tol) return false;
                    sum += x[j];
                } else if (std::fabs(x[j]) > tol) {
                    return false;
                }
            }
            return std::fabs(sum - 1.0) <= tol;
        }
    }
    return false;
}

}  // namespace tptd
