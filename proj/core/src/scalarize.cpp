#include "tptd/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tptd {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b, const char* op) {
    if (a.size() != b.size()) {
        throw ContractError(std::string(op) + ": length mismatch (" + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
    }
}

}  // namespace

TargetPoint::TargetPoint(std::vector<double> t) : t_(std::move(t)) {
    if (t_.size() < 2) throw ContractError("target point: m must be >= 2");
    const double sum = std::accumulate(t_.begin(), t_.end(), 0.0);
    const double expect = hyperplane_sum(t_.size());
    if (!(std::fabs(sum - expect) <= kPlaneTolerance)) {
        throw ContractError("target point: sum " + std::to_string(sum) + " is off the hyperplane (" +
                            std::to_string(expect) + ")");
    }
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
    bool positive = false;
    for (double v : w_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ContractError("weight vector: entries must be finite and >= 0");
        positive = positive || v > 0.0;
    }
    if (!positive) throw ContractError("weight vector: needs at least one positive entry");
}

WeightVector WeightVector::unit(std::size_t m, std::size_t i) {
    if (i >= m) throw ContractError("unit weight: index out of range");
    std::vector<double> w(m, 0.0);
    w[i] = 1.0;
    return WeightVector(std::move(w));
}

TargetPoint project_to_hyperplane(std::span<const double> u) {
    const std::size_t m = u.size();
    if (m < 2) throw ContractError("project_to_hyperplane: m must be >= 2");
    const double md = static_cast<double>(m);
    const double shift = (md - 2.0) / (2.0 * md) + std::accumulate(u.begin(), u.end(), 0.0) / md;
    std::vector<double> t(u.begin(), u.end());
    for (double& v : t) v -= shift;
    return TargetPoint(std::move(t));
}

TargetPoint hyperplane_center(std::size_t m) {
    return project_to_hyperplane(std::vector<double>(m, 0.0));
}

double tptd(std::span<const double> y, std::span<const double> t) {
    check_lengths(y, t, "tptd");
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) worst = std::max(worst, std::fabs(y[i] - t[i]));
    return worst;
}

double augmented_tptd(std::span<const double> y, std::span<const double> t, double rho) {
    const double base = tptd(y, t);
    if (rho == 0.0) return base;
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += y[i] - t[i];
    return base + rho * sum;
}

double tch(std::span<const double> f, const WeightVector& w, std::span<const double> z_ideal) {
    check_lengths(f, w.values(), "tch");
    check_lengths(f, z_ideal, "tch");
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, w[i] * std::fabs(f[i] - z_ideal[i]));
    return worst;
}

double mtch(std::span<const double> f, const WeightVector& w, std::span<const double> z_ideal) {
    check_lengths(f, w.values(), "mtch");
    check_lengths(f, z_ideal, "mtch");
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        worst = std::max(worst, std::fabs(f[i] - z_ideal[i]) / std::max(w[i], kMtchWeightFloor));
    }
    return worst;
}

double orthogonal_residual(std::span<const double> y, std::span<const double> t) {
    check_lengths(y, t, "orthogonal_residual");
    const std::size_t m = y.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += y[i] - t[i];
    mean /= static_cast<double>(m);
    double sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = y[i] - t[i] - mean;
        sq += d * d;
    }
    return std::sqrt(sq);
}

}  // namespace tptd
