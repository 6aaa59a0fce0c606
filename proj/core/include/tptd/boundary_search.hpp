#ifndef TPTD_BOUNDARY_SEARCH_HPP
#define TPTD_BOUNDARY_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>

#include "tptd/core.hpp"
#include "tptd/optimizer.hpp"
#include "tptd/problems.hpp"
#include "tptd/scalarize.hpp"

namespace tptd {

enum class BoundaryStatus { kFound, kDegenerateCenter };

[[nodiscard]] std::string_view to_string(BoundaryStatus s) noexcept;

struct BoundaryResult {
    TargetPoint t_star;
    DecisionVector x_star;
    /// Normalized objectives at x_star.
    ObjectiveVector y_star;
    BoundaryStatus status = BoundaryStatus::kFound;
    /// Bisection steps taken, one optimizer run each.
    std::size_t iterations = 0;
};

/// Ray length from the center: sqrt(m)/2 for even m, sqrt((m^2 - 1)/m)/2 for odd m.
[[nodiscard]] double boundary_radius(std::size_t m);

/// head = center, tail = center + r_T * (t0 - center) / ||t0 - center||.
/// Throws ContractError when t0 coincides with the center.
[[nodiscard]] std::pair<TargetPoint, TargetPoint> binary_endpoints(const TargetPoint& t0);

/// Upper bound on iterations for a given m and eps_t: ceil(log2(r_T / eps_t)) + 1.
[[nodiscard]] std::size_t max_bisection_iterations(std::size_t m, double eps_t);

/// Bisects the ray through t0 for the farthest target whose TPTD solution lands
/// on the ray (orthogonal residual <= eps_t). `normalized` must return
/// normalized objectives. Mid-point runs are seeded from derive_seed(seed, {k}).
/// With `warm_start` each run starts from the previous run's best point.
/// When no mid succeeds the result is one run at the center, DEGENERATE_CENTER.
/// Runs minimize augmented_tptd with the given rho.
[[nodiscard]] BoundaryResult pareto_front_boundary_search(const Problem& normalized, const OptimizerConfig& cfg,
                                                          const TargetPoint& t0, double eps_t, std::uint64_t seed,
                                                          bool warm_start = false, double rho = 0.0);

}  // namespace tptd

#endif  // TPTD_BOUNDARY_SEARCH_HPP
