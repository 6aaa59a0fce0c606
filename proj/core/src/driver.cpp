#include "tptd/driver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <string>

#include "tptd/boundary_search.hpp"
#include "tptd/parallel.hpp"
#include "tptd/seeding.hpp"

namespace tptd {

namespace {

void validate_settings(const RunConfig& cfg) {
    cfg.optimizer.validate();
    if (cfg.n_div < 1) throw ContractError("run: n_div must be >= 1");
    if (!(cfg.eps_t > 0.0)) throw ContractError("run: eps_t must be > 0");
    if (!(cfg.rho >= 0.0) || !std::isfinite(cfg.rho)) throw ContractError("run: rho must be finite and >= 0");
    if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) throw ContractError("run: eta must lie in [0, 1]");
}

template <typename Fn>
auto with_context(const char* stage, const Address& a, Fn&& fn) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, a.to_string(), e.what());
    }
}

struct Solved {
    DecisionVector x;
    ObjectiveVector y;
};

Solved solve_target(const Problem& normalized, OptimizerConfig cfg, const TargetPoint& t, std::uint64_t seed,
                    double rho) {
    cfg.seed = seed;
    const OptResult r = minimize(
        [&](std::span<const double> x) { return augmented_tptd(normalized.evaluate(x), t, rho); }, normalized.n, cfg);
    return Solved{r.best_x, normalized.evaluate(r.best_x)};
}

std::vector<double> displacement(const TargetPoint& relocated, const TargetPoint& initial) {
    std::vector<double> d(relocated.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = relocated[i] - initial[i];
    return d;
}

}  // namespace

void RunConfig::validate() const {
    problem.validate();
    validate_settings(*this);
}

std::string_view to_string(EntryStatus s) noexcept {
    return s == EntryStatus::kOk ? "OK" : "DEGENERATE_CENTER";
}

TargetPoint relocate_interior(const TargetPoint& t0, std::span<const std::vector<double>> displacements, double eta) {
    std::vector<double> t = t0.values();
    for (const auto& d : displacements) {
        if (d.size() != t.size()) throw ContractError("relocate_interior: displacement dimension mismatch");
        double sum = 0.0;
        for (double v : d) sum += v;
        if (std::fabs(sum) > 1e-9) throw ContractError("relocate_interior: displacement leaves the hyperplane");
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += eta * d[i];
    }
    return TargetPoint(std::move(t));
}

RunResult run(const Problem& problem, const RunConfig& cfg) {
    validate_settings(cfg);
    const std::size_t m = problem.m;
    if (m < 2 || problem.n < 1 || !problem.evaluate) throw ContractError("run: malformed problem");
    const std::size_t workers = cfg.max_parallel == 0 ? default_parallelism() : cfg.max_parallel;

    // Step 1: vertices and normalization.
    VertexSearchResult vertices = search_vertices(problem, StageContext{cfg.optimizer, cfg.master_seed, workers});
    const NormalizationBounds& bounds = vertices.bounds;
    const Problem normalized{m, problem.n, [&](std::span<const double> x) {
                                 return bounds.normalize(problem.evaluate(x));
                             }};

    // Step 2: lattice and initial targets.
    const std::vector<Address> addresses = generate_addresses(m, cfg.n_div);
    std::map<Address, std::size_t> index_of;
    for (std::size_t i = 0; i < addresses.size(); ++i) index_of.emplace(addresses[i], i);

    std::vector<std::vector<double>> columns;
    columns.reserve(m);
    for (const auto& v : vertices.chosen) columns.push_back(project_to_hyperplane(bounds.normalize(v.f)).values());
    const AffineMap map = build_affine_map(std::move(columns));

    std::vector<std::optional<ApproxEntry>> slots(addresses.size());
    std::vector<std::size_t> boundary;
    std::vector<Address> interior;
    for (std::size_t i = 0; i < addresses.size(); ++i) {
        const Address& a = addresses[i];
        const std::size_t d = face_dimension(a);
        if (d == 0) {
            const auto vi = static_cast<std::size_t>(
                std::max_element(a.counts().begin(), a.counts().end()) - a.counts().begin());
            const Solution& s = vertices.chosen[vi];
            slots[i] = ApproxEntry{a, s.x, s.f, bounds.normalize(s.f), std::nullopt, std::nullopt, 0,
                                   EntryStatus::kOk, 0};
        } else if (d == m - 1) {
            interior.push_back(a);
        } else {
            boundary.push_back(i);
        }
    }

    auto finish = [&](std::size_t i, const TargetPoint& t0, const TargetPoint& t, Solved s, EntryStatus status,
                      std::size_t iterations) {
        const Address& a = addresses[i];
        ObjectiveVector f = problem.evaluate(s.x);
        slots[i] = ApproxEntry{a, std::move(s.x), std::move(f), std::move(s.y), t0, t, face_dimension(a), status,
                               iterations};
    };

    if (m == 2) {
        // Only edge points besides the vertices: optimize at the initial targets.
        std::vector<std::size_t> edge;
        for (const auto& a : interior) edge.push_back(index_of.at(a));
        parallel_for(edge.size(), workers, [&](std::size_t k) {
            const std::size_t i = edge[k];
            const Address& a = addresses[i];
            with_context("edge", a, [&] {
                const TargetPoint t0 = initial_target(map, a);
                Solved s = solve_target(normalized, cfg.optimizer, t0,
                                        derive_seed(cfg.master_seed, SeedStage::kEdge, a.counts()), cfg.rho);
                finish(i, t0, t0, std::move(s), EntryStatus::kOk, 0);
                return 0;
            });
        });
    } else {
        // Step 3: boundary faces of dimension 1..m-2.
        parallel_for(boundary.size(), workers, [&](std::size_t k) {
            const std::size_t i = boundary[k];
            const Address& a = addresses[i];
            with_context("boundary", a, [&] {
                const TargetPoint t0 = initial_target(map, a);
                BoundaryResult r = pareto_front_boundary_search(
                    normalized, cfg.optimizer, t0, cfg.eps_t,
                    derive_seed(cfg.master_seed, SeedStage::kBoundary, a.counts()), cfg.warm_start, cfg.rho);
                const EntryStatus status =
                    r.status == BoundaryStatus::kFound ? EntryStatus::kOk : EntryStatus::kDegenerateCenter;
                finish(i, t0, r.t_star, Solved{std::move(r.x_star), std::move(r.y_star)}, status, r.iterations);
                return 0;
            });
        });

        // Step 4: relocate interior targets layer by layer, then optimize.
        std::map<Address, TargetPoint> relocated;
        std::vector<std::size_t> order;
        for (const auto& layer : relocation_layers(interior)) {
            for (const auto& a : layer) {
                const TargetPoint t0 = initial_target(map, a);
                std::vector<std::vector<double>> shifts;
                for (const auto& g : guide_set(a)) {
                    const ApproxEntry* guide = slots[index_of.at(g)] ? &*slots[index_of.at(g)] : nullptr;
                    if (guide != nullptr && guide->target) {
                        if (guide->status == EntryStatus::kOk) {
                            shifts.push_back(displacement(*guide->target, *guide->initial_target));
                        }
                    } else if (auto it = relocated.find(g); it != relocated.end()) {
                        shifts.push_back(displacement(it->second, initial_target(map, g)));
                    } else if (face_dimension(g) == m - 1) {
                        throw StageError("relocation", a.to_string(), "guide " + g.to_string() + " not yet relocated");
                    }
                }
                relocated.emplace(a, relocate_interior(t0, shifts, cfg.eta));
                order.push_back(index_of.at(a));
            }
        }
        parallel_for(order.size(), workers, [&](std::size_t k) {
            const std::size_t i = order[k];
            const Address& a = addresses[i];
            with_context("interior", a, [&] {
                const TargetPoint& t = relocated.at(a);
                Solved s = solve_target(normalized, cfg.optimizer, t,
                                        derive_seed(cfg.master_seed, SeedStage::kInterior, a.counts()), cfg.rho);
                finish(i, initial_target(map, a), t, std::move(s), EntryStatus::kOk, 0);
                return 0;
            });
        });
    }

    RunResult result{{}, std::move(vertices)};
    result.entries.reserve(slots.size());
    for (auto& s : slots) result.entries.push_back(std::move(*s));
    return result;
}

RunResult run(const RunConfig& cfg) {
    cfg.validate();
    return run(make_problem(cfg.problem), cfg);
}

}  // namespace tptd
