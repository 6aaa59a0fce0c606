#ifndef TPTD_VERTEX_SEARCH_HPP
#define TPTD_VERTEX_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tptd/core.hpp"
#include "tptd/optimizer.hpp"
#include "tptd/problems.hpp"
#include "tptd/scalarize.hpp"

namespace tptd {

enum class VertexKind { kTch, kMtch };

[[nodiscard]] std::string_view to_string(VertexKind kind) noexcept;

struct VertexSearchResult {
    /// Chosen vertex solutions; element i came from the i-th unit weight.
    std::vector<Solution> chosen;
    VertexKind chosen_kind = VertexKind::kTch;
    ObjectiveVector z_ideal;
    NormalizationBounds bounds;
    /// Both candidate sets, kept for diagnostics.
    std::vector<Solution> tch;
    std::vector<Solution> mtch;
};

/// Shared settings of the Step-1 optimizer runs. Per-run seeds are derived
/// from master_seed; cfg.seed and cfg.initial_mean are overwritten.
struct StageContext {
    OptimizerConfig optimizer;
    std::uint64_t master_seed = 0;
    std::size_t max_parallel = 1;
};

/// Unit weight i with the other entries raised to kMtchWeightFloor. Used by
/// the TCH runs so that off-axis objectives stay bounded.
[[nodiscard]] WeightVector floored_unit(std::size_t m, std::size_t i);

/// z_i = f_i at the minimizer of f_i alone; one optimizer run per objective.
[[nodiscard]] ObjectiveVector estimate_ideal_point(const Problem& problem, const StageContext& ctx);

/// (m-1)-volume of the simplex spanned by m points: sqrt(det G) / (m-1)!,
/// G the Gram matrix of v_i - v_1. Degenerate input gives 0.
[[nodiscard]] double simplex_volume(std::span<const ObjectiveVector> vertices);

/// Selection rule between the two candidate sets. TCH wins if some TCH
/// solution dominates some MTCH solution and no MTCH solution dominates any
/// TCH solution, MTCH symmetrically; otherwise the larger simplex volume,
/// TCH on an exact tie.
[[nodiscard]] VertexKind select_vertex_set(std::span<const ObjectiveVector> tch,
                                           std::span<const ObjectiveVector> mtch);

/// Estimates the ideal point, then picks between the TCH and MTCH vertex
/// candidates. Bounds come from the chosen set. Throws DegenerateBoundsError if
/// the chosen set is flat in some objective.
[[nodiscard]] VertexSearchResult search_vertices(const Problem& problem, const StageContext& ctx);

}  // namespace tptd

#endif  // TPTD_VERTEX_SEARCH_HPP
