#ifndef TPTD_OPTIMIZER_HPP
#define TPTD_OPTIMIZER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tptd {

/// Black-box single-objective function over R^n.
using ScalarObjective = std::function<double(std::span<const double>)>;

/// Search-distribution family behind minimize().
enum class OptimizerKind {
    /// Natural evolution strategy with diagonal-plus-rank-one covariance;
    /// mirrored sampling, needs an even population.
    kCrFmNes,
    /// CMA-ES with full covariance matrix.
    kCmaEs,
};

[[nodiscard]] std::string_view to_string(OptimizerKind kind) noexcept;
/// Parses "cr-fm-nes" or "cma-es".
[[nodiscard]] OptimizerKind parse_optimizer_kind(std::string_view name);

/// Settings for one minimize() call. The evaluation budget is
/// population_size * max_generations.
struct OptimizerConfig {
    OptimizerKind algorithm = OptimizerKind::kCrFmNes;
    std::size_t population_size = 10;
    std::size_t max_generations = 500;
    double initial_step_size = 0.5;
    /// Starting mean. When empty, drawn uniformly from [0, 1]^n using `seed`.
    std::optional<std::vector<double>> initial_mean;
    std::uint64_t seed = 0;

    /// Stop once best values over a window of generations and the current
    /// generation's spread are below tol_fun.
    double tol_fun = 1e-12;
    /// Stop once the largest coordinate step falls below tol_x * initial_step_size.
    double tol_x = 1e-12;
    /// Keep the per-generation best-so-far in OptResult::best_trace.
    bool record_trace = false;

    [[nodiscard]] std::size_t budget() const noexcept { return population_size * max_generations; }

    /// Throws ContractError on population_size < 4 (or odd for cr-fm-nes),
    /// zero generations or a non-positive step.
    void validate() const;
};

struct OptResult {
    std::vector<double> best_x;
    double best_f = 0.0;
    std::size_t evaluations_used = 0;
    std::size_t generations = 0;
    bool converged = false;
    std::vector<double> best_trace;
};

/// Minimizes `objective` with the evolution strategy selected by cfg.algorithm.
///
/// Deterministic for a fixed (objective, cfg). The initial mean is evaluated
/// first and counts against the budget, so best_f <= objective(initial mean)
/// holds and evaluations_used never exceeds cfg.budget().
///
/// Throws NumericalError if the objective returns NaN or infinity.
[[nodiscard]] OptResult minimize(const ScalarObjective& objective, std::size_t n, const OptimizerConfig& cfg);

}  // namespace tptd

#endif  // TPTD_OPTIMIZER_HPP
