#include "tptd/vertex_search.hpp"

#include <cmath>
#include <exception>
#include <string>

#include <Eigen/Dense>

#include "tptd/parallel.hpp"
#include "tptd/scalarize.hpp"
#include "tptd/seeding.hpp"

namespace tptd {

namespace {

Solution solve(const Problem& problem, const StageContext& ctx, SeedStage stage, std::size_t index,
               const std::function<double(const ObjectiveVector&)>& scalar, const char* stage_name) {
    OptimizerConfig cfg = ctx.optimizer;
    cfg.seed = derive_seed(ctx.master_seed, stage, std::span<const int>{}, index);
    cfg.initial_mean.reset();
    try {
        const OptResult r = minimize([&](std::span<const double> x) { return scalar(problem.evaluate(x)); },
                                     problem.n, cfg);
        return Solution{r.best_x, problem.evaluate(r.best_x)};
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage_name, "objective " + std::to_string(index + 1), e.what());
    }
}

std::vector<ObjectiveVector> objectives(std::span<const Solution> s) {
    std::vector<ObjectiveVector> out;
    out.reserve(s.size());
    for (const auto& sol : s) out.push_back(sol.f);
    return out;
}

bool any_dominates(std::span<const ObjectiveVector> a, std::span<const ObjectiveVector> b) {
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (weakly_dominates(x, y)) return true;
        }
    }
    return false;
}

}  // namespace

WeightVector floored_unit(std::size_t m, std::size_t i) {
    std::vector<double> w(m, kMtchWeightFloor);
    w.at(i) = 1.0;
    return WeightVector(std::move(w));
}

std::string_view to_string(VertexKind kind) noexcept { return kind == VertexKind::kTch ? "TCH" : "MTCH"; }

ObjectiveVector estimate_ideal_point(const Problem& problem, const StageContext& ctx) {
    const std::size_t m = problem.m;
    ObjectiveVector z(m);
    parallel_for(m, ctx.max_parallel, [&](std::size_t i) {
        z[i] = solve(problem, ctx, SeedStage::kIdeal, i, [i](const ObjectiveVector& f) { return f[i]; }, "ideal")
                   .f[i];
    });
    return z;
}

double simplex_volume(std::span<const ObjectiveVector> vertices) {
    const std::size_t m = vertices.size();
    if (m < 2) throw ContractError("simplex_volume: needs at least 2 points");
    const std::size_t dim = vertices.front().size();
    for (const auto& v : vertices) {
        if (v.size() != dim) throw ContractError("simplex_volume: inconsistent point dimension");
    }
    const auto k = static_cast<Eigen::Index>(m - 1);
    Eigen::MatrixXd edges(static_cast<Eigen::Index>(dim), k);
    for (Eigen::Index j = 0; j < k; ++j) {
        for (std::size_t r = 0; r < dim; ++r) {
            edges(static_cast<Eigen::Index>(r), j) = vertices[static_cast<std::size_t>(j) + 1][r] - vertices[0][r];
        }
    }
    const Eigen::MatrixXd gram = edges.transpose() * edges;
    const double det = gram.ldlt().vectorD().prod();
    if (!(det > 0.0)) return 0.0;
    return std::sqrt(det) / std::tgamma(static_cast<double>(m));
}

VertexKind select_vertex_set(std::span<const ObjectiveVector> tch, std::span<const ObjectiveVector> mtch) {
    const bool tch_over_mtch = any_dominates(tch, mtch);
    const bool mtch_over_tch = any_dominates(mtch, tch);
    if (tch_over_mtch && !mtch_over_tch) return VertexKind::kTch;
    if (mtch_over_tch && !tch_over_mtch) return VertexKind::kMtch;
    return simplex_volume(mtch) > simplex_volume(tch) ? VertexKind::kMtch : VertexKind::kTch;
}

VertexSearchResult search_vertices(const Problem& problem, const StageContext& ctx) {
    const std::size_t m = problem.m;
    if (m < 2) throw ContractError("search_vertices: m must be >= 2");
    ObjectiveVector z = estimate_ideal_point(problem, ctx);

    std::vector<Solution> runs(2 * m);
    parallel_for(2 * m, ctx.max_parallel, [&](std::size_t job) {
        const std::size_t i = job % m;
        if (job < m) {
            const WeightVector w = floored_unit(m, i);
            runs[job] = solve(problem, ctx, SeedStage::kTch, i,
                              [&](const ObjectiveVector& f) { return tch(f, w, z); }, "vertex-tch");
        } else {
            const WeightVector w = WeightVector::unit(m, i);
            runs[job] = solve(problem, ctx, SeedStage::kMtch, i,
                              [&](const ObjectiveVector& f) { return mtch(f, w, z); }, "vertex-mtch");
        }
    });
    std::vector<Solution> tch_set(runs.begin(), runs.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<Solution> mtch_set(runs.begin() + static_cast<std::ptrdiff_t>(m), runs.end());

    const auto tch_f = objectives(tch_set);
    const auto mtch_f = objectives(mtch_set);
    const VertexKind kind = select_vertex_set(tch_f, mtch_f);
    const auto& chosen_f = kind == VertexKind::kTch ? tch_f : mtch_f;
    NormalizationBounds bounds = NormalizationBounds::enclosing(chosen_f);

    return VertexSearchResult{
        .chosen = kind == VertexKind::kTch ? tch_set : mtch_set,
        .chosen_kind = kind,
        .z_ideal = std::move(z),
        .bounds = std::move(bounds),
        .tch = std::move(tch_set),
        .mtch = std::move(mtch_set),
    };
}

}  // namespace tptd
