#ifndef TPTD_PROBLEMS_HPP
#define TPTD_PROBLEMS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "tptd/core.hpp"

namespace tptd {

enum class ProblemKind { kRpLinear, kRpConcave, kRpConvex, kMed };

/// Parses "rp-linear", "rp-concave", "rp-convex" or "med".
[[nodiscard]] ProblemKind parse_problem_kind(std::string_view name);
[[nodiscard]] std::string_view to_string(ProblemKind kind) noexcept;
[[nodiscard]] constexpr bool is_rp(ProblemKind kind) noexcept { return kind != ProblemKind::kMed; }

struct ProblemSpec {
    ProblemKind kind = ProblemKind::kMed;
    std::size_t m = 3;   // objectives
    std::size_t n = 40;  // decision variables
    double p = 1.0;      // MED convexity exponent

    /// Throws ContractError unless 2 <= m <= n and (MED) p > 0.
    void validate() const;
};

/// Reflects t into [0, 1] (period-2 triangle wave).
[[nodiscard]] double mirror_unit(double t) noexcept;

/// Rosenbrock chain over x_m..x_n (1-based), the distance function of the RP problems.
[[nodiscard]] double rp_distance(std::span<const double> x, std::size_t m);

/// RP-Linear/Concave/Convex. The first m-1 variables are mirrored into [0, 1].
[[nodiscard]] ObjectiveVector evaluate_rp(const ProblemSpec& spec, std::span<const double> x);

/// MED: f_i = (||x - e_i|| / sqrt(2))^p for the first m unit vectors of R^n.
[[nodiscard]] ObjectiveVector evaluate_med(const ProblemSpec& spec, std::span<const double> x);

/// Dispatches on spec.kind.
[[nodiscard]] ObjectiveVector evaluate(const ProblemSpec& spec, std::span<const double> x);

/// Black-box vector objective with fixed dimensions. The driver and the search
/// stages only see this interface, so synthetic problems plug in directly.
struct Problem {
    std::size_t m = 0;
    std::size_t n = 0;
    std::function<ObjectiveVector(std::span<const double>)> evaluate;
};

/// Wraps a validated benchmark spec.
[[nodiscard]] Problem make_problem(const ProblemSpec& spec);

/// Analytic front geometry, used as a test oracle.
struct AnalyticReference {
    ObjectiveVector ideal;
    ObjectiveVector nadir;
    ProblemSpec spec;

    /// True when (x, f) lies on the Pareto front within `tol`.
    [[nodiscard]] bool on_front(std::span<const double> x, std::span<const double> f,
                                double tol = 1e-9) const;
};

[[nodiscard]] AnalyticReference analytic_reference(const ProblemSpec& spec);

}  // namespace tptd

#endif  // TPTD_PROBLEMS_HPP
