#include "tptd/boundary_search.hpp"

#include <cmath>
#include <optional>

#include "tptd/seeding.hpp"

namespace tptd {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

TargetPoint midpoint(const TargetPoint& a, const TargetPoint& b) {
    std::vector<double> mid(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
    return TargetPoint(std::move(mid));
}

struct Probe {
    DecisionVector x;
    ObjectiveVector y;
};

Probe probe(const Problem& normalized, OptimizerConfig cfg, const TargetPoint& t, std::uint64_t seed, double rho) {
    cfg.seed = seed;
    const OptResult r = minimize(
        [&](std::span<const double> x) { return augmented_tptd(normalized.evaluate(x), t, rho); }, normalized.n, cfg);
    return Probe{r.best_x, normalized.evaluate(r.best_x)};
}

}  // namespace

std::string_view to_string(BoundaryStatus s) noexcept {
    return s == BoundaryStatus::kFound ? "FOUND" : "DEGENERATE_CENTER";
}

double boundary_radius(std::size_t m) {
    const auto md = static_cast<double>(m);
    return m % 2 == 0 ? std::sqrt(md) / 2.0 : std::sqrt((md * md - 1.0) / md) / 2.0;
}

std::pair<TargetPoint, TargetPoint> binary_endpoints(const TargetPoint& t0) {
    const std::size_t m = t0.size();
    TargetPoint c = hyperplane_center(m);
    const double len = distance(t0.values(), c.values());
    if (!(len > 1e-12)) throw ContractError("binary_endpoints: t0 coincides with the center");
    const double r = boundary_radius(m);
    std::vector<double> tail(m);
    for (std::size_t i = 0; i < m; ++i) tail[i] = c[i] + r * (t0[i] - c[i]) / len;
    return {std::move(c), TargetPoint(std::move(tail))};
}

std::size_t max_bisection_iterations(std::size_t m, double eps_t) {
    return static_cast<std::size_t>(std::ceil(std::log2(boundary_radius(m) / eps_t))) + 1;
}

BoundaryResult pareto_front_boundary_search(const Problem& normalized, const OptimizerConfig& cfg,
                                            const TargetPoint& t0, double eps_t, std::uint64_t seed,
                                            bool warm_start, double rho) {
    if (!(eps_t > 0.0)) throw ContractError("boundary search: eps_t must be > 0");
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw ContractError("boundary search: rho must be finite and >= 0");
    if (t0.size() != normalized.m) throw ContractError("boundary search: target dimension mismatch");
    auto [head, tail] = binary_endpoints(t0);

    OptimizerConfig run_cfg = cfg;
    std::optional<BoundaryResult> best;
    std::size_t iterations = 0;
    for (;;) {
        TargetPoint mid = midpoint(head, tail);
        if (distance(head.values(), mid.values()) < eps_t) break;
        Probe p = probe(normalized, run_cfg, mid, derive_seed(seed, {iterations}), rho);
        ++iterations;
        if (warm_start) run_cfg.initial_mean = p.x;
        if (orthogonal_residual(p.y, mid) <= eps_t) {
            best = BoundaryResult{mid, std::move(p.x), std::move(p.y), BoundaryStatus::kFound, 0};
            head = std::move(mid);
        } else {
            tail = std::move(mid);
        }
    }

    if (!best) {
        TargetPoint c = hyperplane_center(normalized.m);
        Probe p = probe(normalized, cfg, c, derive_seed(seed, {~std::uint64_t{0}}), rho);
        best = BoundaryResult{std::move(c), std::move(p.x), std::move(p.y), BoundaryStatus::kDegenerateCenter, 0};
    }
    best->iterations = iterations;
    return std::move(*best);
}

}  // namespace tptd
