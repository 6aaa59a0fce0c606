#include "tptd/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tptd {

void require_finite(std::span<const double> values, std::string_view what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NumericalError(std::string(what) + ": non-finite value at index " +
                                 std::to_string(i));
        }
    }
}

std::string_view to_string(Dominance d) noexcept {
    switch (d) {
        case Dominance::kEqual: return "EQUAL";
        case Dominance::kADominates: return "A_DOMINATES";
        case Dominance::kBDominates: return "B_DOMINATES";
        case Dominance::kAStrictlyDominates: return "A_STRICTLY_DOMINATES";
        case Dominance::kBStrictlyDominates: return "B_STRICTLY_DOMINATES";
        case Dominance::kIncomparable: return "INCOMPARABLE";
    }
    return "?";
}

Dominance compare(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ContractError("dominance: length mismatch (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
    }
    std::size_t a_better = 0;
    std::size_t b_better = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) {
            ++a_better;
        } else if (b[i] < a[i]) {
            ++b_better;
        }
    }
    const std::size_t m = a.size();
    if (a_better == 0 && b_better == 0) return Dominance::kEqual;
    if (b_better == 0) return a_better == m ? Dominance::kAStrictlyDominates : Dominance::kADominates;
    if (a_better == 0) return b_better == m ? Dominance::kBStrictlyDominates : Dominance::kBDominates;
    return Dominance::kIncomparable;
}

bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
    const Dominance d = compare(a, b);
    return d == Dominance::kADominates || d == Dominance::kAStrictlyDominates;
}

bool strictly_dominates(std::span<const double> a, std::span<const double> b) {
    return compare(a, b) == Dominance::kAStrictlyDominates;
}

NormalizationBounds::NormalizationBounds(std::vector<double> f_min, std::vector<double> f_max)
    : f_min_(std::move(f_min)), f_max_(std::move(f_max)) {
    if (f_min_.size() != f_max_.size() || f_min_.empty()) {
        throw ContractError("normalization bounds: f_min and f_max must be non-empty and equal length");
    }
    require_finite(f_min_, "normalization f_min");
    require_finite(f_max_, "normalization f_max");
    for (std::size_t i = 0; i < f_min_.size(); ++i) {
        const double range = f_max_[i] - f_min_[i];
        if (!(range >= kMinRange)) throw DegenerateBoundsError(i, range);
    }
}

NormalizationBounds NormalizationBounds::enclosing(std::span<const ObjectiveVector> points) {
    if (points.empty()) throw ContractError("normalization bounds: no points");
    std::vector<double> lo = points.front();
    std::vector<double> hi = points.front();
    for (const auto& p : points) {
        if (p.size() != lo.size()) throw ContractError("normalization bounds: ragged points");
        for (std::size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    return {std::move(lo), std::move(hi)};
}

ObjectiveVector NormalizationBounds::normalize(std::span<const double> f) const {
    if (f.size() != size()) throw ContractError("normalize: length mismatch");
    ObjectiveVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = (f[i] - f_min_[i]) / (f_max_[i] - f_min_[i]);
    }
    return out;
}

ObjectiveVector NormalizationBounds::denormalize(std::span<const double> y) const {
    if (y.size() != size()) throw ContractError("denormalize: length mismatch");
    ObjectiveVector out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = f_min_[i] + y[i] * (f_max_[i] - f_min_[i]);
    }
    return out;
}

}  // namespace tptd
