#ifndef TPTD_SCALARIZE_HPP
#define TPTD_SCALARIZE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "tptd/core.hpp"

namespace tptd {

/// Sum that every point of the target hyperplane shares: -(m - 2) / 2.
[[nodiscard]] constexpr double hyperplane_sum(std::size_t m) noexcept {
    return -(static_cast<double>(m) - 2.0) / 2.0;
}

/// A point on the (m-1)-dimensional target hyperplane sum_i t_i = -(m - 2) / 2.
class TargetPoint {
public:
    static constexpr double kPlaneTolerance = 1e-9;

    /// Throws ContractError if `t` is off the hyperplane by more than kPlaneTolerance.
    explicit TargetPoint(std::vector<double> t);

    [[nodiscard]] std::size_t size() const noexcept { return t_.size(); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return t_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return t_[i]; }
    [[nodiscard]] operator std::span<const double>() const noexcept { return t_; }

    bool operator==(const TargetPoint&) const = default;

private:
    std::vector<double> t_;
};

/// Nonnegative weights with at least one positive entry.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> w);

    /// The i-th unit weight vector of length m.
    static WeightVector unit(std::size_t m, std::size_t i);

    [[nodiscard]] std::size_t size() const noexcept { return w_.size(); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return w_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return w_[i]; }

private:
    std::vector<double> w_;
};

/// pi(u) = u - ((m - 2) / (2m) + mean(u)) * 1.
[[nodiscard]] TargetPoint project_to_hyperplane(std::span<const double> u);

/// Center of the target hyperplane, pi(0).
[[nodiscard]] TargetPoint hyperplane_center(std::size_t m);

/// Target point-based Tchebycheff distance: max_i |y_i - t_i|.
[[nodiscard]] double tptd(std::span<const double> y, std::span<const double> t);

/// tptd(y, t) + rho * sum_i (y_i - t_i). A small rho breaks ties on the flat
/// part of the max toward points with smaller objectives; rho = 0 is plain tptd.
[[nodiscard]] double augmented_tptd(std::span<const double> y, std::span<const double> t, double rho);

/// Weighted Tchebycheff: max_i w_i |f_i - z_i|.
[[nodiscard]] double tch(std::span<const double> f, const WeightVector& w, std::span<const double> z_ideal);

/// Divisor floor used by mtch for zero weights.
inline constexpr double kMtchWeightFloor = 1e-6;

/// Modified Tchebycheff: max_i |f_i - z_i| / max(w_i, kMtchWeightFloor).
[[nodiscard]] double mtch(std::span<const double> f, const WeightVector& w, std::span<const double> z_ideal);

/// Euclidean norm of (y - t) with its component along the all-ones direction removed.
[[nodiscard]] double orthogonal_residual(std::span<const double> y, std::span<const double> t);

}  // namespace tptd

#endif  // TPTD_SCALARIZE_HPP
