#ifndef TPTD_METRICS_HPP
#define TPTD_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tptd/core.hpp"

namespace tptd {

/// Upper corner of the hypervolume box.
struct ReferencePoint {
    std::vector<double> r;

    /// (value, ..., value) of length m; the default reporting point is 1.1.
    [[nodiscard]] static ReferencePoint uniform(std::size_t m, double value = 1.1);
    /// Product of the coordinates.
    [[nodiscard]] double box_volume() const;
};

/// Largest objective count accepted by the exact algorithm.
inline constexpr std::size_t kMaxExactHvObjectives = 8;

struct HypervolumeResult {
    double value = 0.0;
    /// Points with some coordinate >= ref, which contribute nothing.
    std::size_t skipped = 0;
};

/// Exact Lebesgue measure of the union of boxes [p, ref] (WFG recursion).
/// Points are not clipped below. Throws ContractError for m > 8 or mismatched
/// lengths.
[[nodiscard]] HypervolumeResult hypervolume_detail(std::span<const ObjectiveVector> points,
                                                   const ReferencePoint& ref);
[[nodiscard]] double hypervolume(std::span<const ObjectiveVector> points, const ReferencePoint& ref);

/// hypervolume / box_volume(ref).
[[nodiscard]] double hv_ratio(std::span<const ObjectiveVector> points, const ReferencePoint& ref);

/// Monte-Carlo estimate over the box [componentwise min of points, ref].
[[nodiscard]] double mc_hypervolume(std::span<const ObjectiveVector> points, const ReferencePoint& ref,
                                    std::size_t samples, std::uint64_t seed);

/// Points not weakly dominated by another point; exact duplicates keep the first.
[[nodiscard]] std::vector<ObjectiveVector> nondominated(std::span<const ObjectiveVector> points);

}  // namespace tptd

#endif  // TPTD_METRICS_HPP
