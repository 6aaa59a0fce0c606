#ifndef TPTD_ERRORS_HPP
#define TPTD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tptd {

/// Violated precondition: wrong dimensions, invalid address, off-plane target.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An objective or scalarized value came back NaN or infinite.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Normalization range collapsed to (almost) a point in some objective.
class DegenerateBoundsError : public std::runtime_error {
public:
    DegenerateBoundsError(std::size_t objective, double range)
        : std::runtime_error("degenerate normalization range for objective " +
                             std::to_string(objective + 1) + " (f_max - f_min = " +
                             std::to_string(range) + ")"),
          objective_(objective) {}

    [[nodiscard]] std::size_t objective() const noexcept { return objective_; }

private:
    std::size_t objective_;
};

/// Failure inside one pipeline stage, tagged with the stage and subproblem.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, std::string subproblem, const std::string& what)
        : std::runtime_error(stage + " [" + subproblem + "]: " + what),
          stage_(std::move(stage)),
          subproblem_(std::move(subproblem)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }
    [[nodiscard]] const std::string& subproblem() const noexcept { return subproblem_; }

private:
    std::string stage_;
    std::string subproblem_;
};

}  // namespace tptd

#endif  // TPTD_ERRORS_HPP
