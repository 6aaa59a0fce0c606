#include "tptd/metrics.hpp"

#include <algorithm>
#include <random>

namespace tptd {

namespace {

using Points = std::vector<ObjectiveVector>;

double box(const ObjectiveVector& p, const std::vector<double>& ref) {
    double v = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) v *= ref[i] - p[i];
    return v;
}

// 2-D sweep over points sorted by the first objective.
double sweep2d(Points pts, const std::vector<double>& ref) {
    std::sort(pts.begin(), pts.end());
    double vol = 0.0;
    double ceiling = ref[1];
    for (const auto& p : pts) {
        if (p[1] < ceiling) {
            vol += (ref[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    return vol;
}

double wfg(Points pts, const std::vector<double>& ref);

// Volume dominated by pts[k] but by none of pts[k+1..].
double exclusive(const Points& pts, std::size_t k, const std::vector<double>& ref) {
    Points limit;
    limit.reserve(pts.size() - k - 1);
    for (std::size_t j = k + 1; j < pts.size(); ++j) {
        ObjectiveVector q(pts[k].size());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::max(pts[k][i], pts[j][i]);
        limit.push_back(std::move(q));
    }
    return box(pts[k], ref) - wfg(nondominated(limit), ref);
}

double wfg(Points pts, const std::vector<double>& ref) {
    if (pts.empty()) return 0.0;
    if (pts.size() == 1) return box(pts[0], ref);
    if (ref.size() == 2) return sweep2d(std::move(pts), ref);
    // Worst-first in the last objective keeps limit sets small.
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.back() > b.back(); });
    double vol = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) vol += exclusive(pts, k, ref);
    return vol;
}

void check_points(std::span<const ObjectiveVector> points, const ReferencePoint& ref) {
    for (const auto& p : points) {
        if (p.size() != ref.r.size()) throw ContractError("hypervolume: point and reference lengths differ");
        require_finite(p, "hypervolume point");
    }
}

Points inside(std::span<const ObjectiveVector> points, const ReferencePoint& ref, std::size_t& skipped) {
    Points kept;
    skipped = 0;
    for (const auto& p : points) {
        bool ok = true;
        for (std::size_t i = 0; i < p.size(); ++i) ok = ok && p[i] < ref.r[i];
        if (ok) {
            kept.push_back(p);
        } else {
            ++skipped;
        }
    }
    return kept;
}

}  // namespace

ReferencePoint ReferencePoint::uniform(std::size_t m, double value) { return ReferencePoint{std::vector<double>(m, value)}; }

double ReferencePoint::box_volume() const {
    double v = 1.0;
    for (double x : r) v *= x;
    return v;
}

std::vector<ObjectiveVector> nondominated(std::span<const ObjectiveVector> points) {
    Points out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < points.size() && keep; ++j) {
            if (i == j) continue;
            if (weakly_dominates(points[j], points[i])) keep = false;
            if (j < i && points[j] == points[i]) keep = false;
        }
        if (keep) out.push_back(points[i]);
    }
    return out;
}

HypervolumeResult hypervolume_detail(std::span<const ObjectiveVector> points, const ReferencePoint& ref) {
    const std::size_t m = ref.r.size();
    if (m < 1 || m > kMaxExactHvObjectives) throw ContractError("hypervolume: objective count must be in [1, 8]");
    check_points(points, ref);
    HypervolumeResult res;
    Points kept = inside(points, ref, res.skipped);
    if (kept.empty()) return res;
    if (m == 1) {
        double lo = kept[0][0];
        for (const auto& p : kept) lo = std::min(lo, p[0]);
        res.value = ref.r[0] - lo;
        return res;
    }
    res.value = wfg(nondominated(kept), ref.r);
    return res;
}

double hypervolume(std::span<const ObjectiveVector> points, const ReferencePoint& ref) {
    return hypervolume_detail(points, ref).value;
}

double hv_ratio(std::span<const ObjectiveVector> points, const ReferencePoint& ref) {
    return hypervolume(points, ref) / ref.box_volume();
}

double mc_hypervolume(std::span<const ObjectiveVector> points, const ReferencePoint& ref, std::size_t samples,
                      std::uint64_t seed) {
    check_points(points, ref);
    std::size_t skipped = 0;
    const Points kept = inside(points, ref, skipped);
    if (kept.empty() || samples == 0) return 0.0;
    const std::size_t m = ref.r.size();
    std::vector<double> lo = kept[0];
    for (const auto& p : kept) {
        for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], p[i]);
    }
    double volume = 1.0;
    for (std::size_t i = 0; i < m; ++i) volume *= ref.r[i] - lo[i];

    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> axes;
    for (std::size_t i = 0; i < m; ++i) axes.emplace_back(lo[i], ref.r[i]);
    std::vector<double> s(m);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        for (std::size_t i = 0; i < m; ++i) s[i] = axes[i](rng);
        for (const auto& p : kept) {
            bool dominated = true;
            for (std::size_t i = 0; i < m && dominated; ++i) dominated = p[i] <= s[i];
            if (dominated) {
                ++hits;
                break;
            }
        }
    }
    return volume * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace tptd
