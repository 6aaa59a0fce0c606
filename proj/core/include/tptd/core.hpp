#ifndef TPTD_CORE_HPP
#define TPTD_CORE_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tptd/errors.hpp"

namespace tptd {

/// Point in (raw or normalized) objective space. Length is the objective count m.
using ObjectiveVector = std::vector<double>;

/// Decision vector of length n.
using DecisionVector = std::vector<double>;

struct Solution {
    DecisionVector x;
    ObjectiveVector f;
};

/// Throws NumericalError if any entry is NaN or infinite. `what` names the
/// quantity in the message.
void require_finite(std::span<const double> values, std::string_view what);

/// Outcome of comparing two objective vectors under minimization. The
/// strongest applicable relation is reported: strict domination implies weak.
enum class Dominance {
    kEqual,
    kADominates,
    kBDominates,
    kAStrictlyDominates,
    kBStrictlyDominates,
    kIncomparable,
};

[[nodiscard]] std::string_view to_string(Dominance d) noexcept;

[[nodiscard]] Dominance compare(std::span<const double> a, std::span<const double> b);

/// a ⪯ b: no worse in every objective and strictly better in at least one.
[[nodiscard]] bool weakly_dominates(std::span<const double> a, std::span<const double> b);

/// a ≺ b: strictly better in every objective.
[[nodiscard]] bool strictly_dominates(std::span<const double> a, std::span<const double> b);

/// Per-objective affine range used to map raw objectives into the unit box.
class NormalizationBounds {
public:
    static constexpr double kMinRange = 1e-12;

    /// Throws DegenerateBoundsError if f_max[i] - f_min[i] < kMinRange for any i.
    NormalizationBounds(std::vector<double> f_min, std::vector<double> f_max);

    /// Smallest box enclosing `points`.
    static NormalizationBounds enclosing(std::span<const ObjectiveVector> points);

    [[nodiscard]] std::size_t size() const noexcept { return f_min_.size(); }
    [[nodiscard]] const std::vector<double>& f_min() const noexcept { return f_min_; }
    [[nodiscard]] const std::vector<double>& f_max() const noexcept { return f_max_; }

    /// (f - f_min) / (f_max - f_min). Values outside [0, 1] are allowed.
    [[nodiscard]] ObjectiveVector normalize(std::span<const double> f) const;
    [[nodiscard]] ObjectiveVector denormalize(std::span<const double> y) const;

private:
    std::vector<double> f_min_;
    std::vector<double> f_max_;
};

}  // namespace tptd

#endif  // TPTD_CORE_HPP
