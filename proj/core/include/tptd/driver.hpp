#ifndef TPTD_DRIVER_HPP
#define TPTD_DRIVER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tptd/core.hpp"
#include "tptd/lattice.hpp"
#include "tptd/optimizer.hpp"
#include "tptd/problems.hpp"
#include "tptd/scalarize.hpp"
#include "tptd/vertex_search.hpp"

namespace tptd {

struct RunConfig {
    ProblemSpec problem;
    std::size_t n_div = 12;
    double eps_t = 0.01;
    double eta = 0.4;
    OptimizerConfig optimizer;
    std::uint64_t master_seed = 0;
    /// Worker threads; 0 means hardware concurrency.
    std::size_t max_parallel = 0;
    /// Boundary bisection runs start from the previous run's best point.
    bool warm_start = false;
    /// Augmentation weight of every TPTD run (see augmented_tptd); 0 gives
    /// plain TPTD, whose flat optima let bisection accept dominated points.
    double rho = 0.01;

    /// Throws ContractError on an invalid problem or optimizer setting,
    /// n_div < 1, eps_t <= 0, eta outside [0, 1] or rho < 0.
    void validate() const;
};

enum class EntryStatus { kOk, kDegenerateCenter };

[[nodiscard]] std::string_view to_string(EntryStatus s) noexcept;

struct ApproxEntry {
    Address address;
    DecisionVector x;
    ObjectiveVector f;
    ObjectiveVector f_norm;
    /// B * a. Absent for vertex addresses.
    std::optional<TargetPoint> initial_target;
    /// Target the final solution was optimized for. Absent for vertex addresses.
    std::optional<TargetPoint> target;
    std::size_t face_dim = 0;
    EntryStatus status = EntryStatus::kOk;
    /// Bisection steps (boundary addresses only).
    std::size_t iterations = 0;
};

struct RunResult {
    /// One entry per address, in generate_addresses() order.
    std::vector<ApproxEntry> entries;
    VertexSearchResult vertices;
};

/// t0 + eta * sum(displacements). Every displacement must sum to 0 within 1e-9.
[[nodiscard]] TargetPoint relocate_interior(const TargetPoint& t0, std::span<const std::vector<double>> displacements,
                                            double eta);

/// Full pipeline on a black-box problem, from vertex search to the final
/// interior runs. Stage failures surface as StageError.
[[nodiscard]] RunResult run(const Problem& problem, const RunConfig& cfg);

/// Same, on cfg.problem.
[[nodiscard]] RunResult run(const RunConfig& cfg);

}  // namespace tptd

#endif  // TPTD_DRIVER_HPP
