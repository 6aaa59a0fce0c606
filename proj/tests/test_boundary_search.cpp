#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tptd/boundary_search.hpp"
#include "tptd/seeding.hpp"

using namespace tptd;

namespace {

OptimizerConfig opt(std::size_t pop, std::size_t gens) {
    OptimizerConfig c;
    c.population_size = pop;
    c.max_generations = gens;
    return c;
}

double dist(const TargetPoint& a, const TargetPoint& b) { return oracle::norm(oracle::sub(a.values(), b.values())); }

TargetPoint ideal_target(const std::vector<int>& counts) {
    const std::size_t m = counts.size();
    int n = 0;
    for (int c : counts) n += c;
    std::vector<double> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = static_cast<double>(counts[i]) / n;
    std::vector<double> t(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> e(m, 0.0);
        e[j] = 1.0;
        const auto col = oracle::project(e);
        for (std::size_t i = 0; i < m; ++i) t[i] += a[j] * col[i];
    }
    return TargetPoint(t);
}

}  // namespace

TEST_CASE("ray radius") {
    CHECK(boundary_radius(3) == doctest::Approx(std::sqrt(8.0 / 3.0) / 2.0));
    CHECK(boundary_radius(3) == doctest::Approx(0.81650).epsilon(1e-5));
    CHECK(boundary_radius(4) == doctest::Approx(1.0));
    CHECK(boundary_radius(2) == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(max_bisection_iterations(3, 0.01) == 8);
}

TEST_CASE("binary endpoints") {
    for (std::size_t m = 2; m <= 6; ++m) {
        std::vector<double> u(m, 0.0);
        u[0] = 0.3;
        u[m - 1] = 0.9;
        const TargetPoint t0 = project_to_hyperplane(u);
        const auto [head, tail] = binary_endpoints(t0);
        CHECK(head == hyperplane_center(m));
        CHECK(dist(tail, head) == doctest::Approx(boundary_radius(m)));
        // tail lies on the ray through t0
        const auto d1 = oracle::sub(t0.values(), head.values());
        const auto d2 = oracle::sub(tail.values(), head.values());
        const double cos = [&] {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += d1[i] * d2[i];
            return s / (oracle::norm(d1) * oracle::norm(d2));
        }();
        CHECK(cos == doctest::Approx(1.0));
    }
    const auto [h3, t3] = binary_endpoints(ideal_target({6, 6, 0}));
    for (double v : h3.values()) CHECK(v == doctest::Approx(-1.0 / 6.0));
    CHECK_THROWS_AS((void)binary_endpoints(hyperplane_center(3)), ContractError);
}

TEST_CASE("front covering the whole disk: every probe succeeds") {
    // y(x) = x, so every target is attainable with zero residual.
    const Problem identity{3, 3, [](std::span<const double> x) { return ObjectiveVector(x.begin(), x.end()); }};
    const TargetPoint t0 = ideal_target({8, 3, 1});
    const auto r = pareto_front_boundary_search(identity, opt(10, 300), t0, 0.01, 17);
    CHECK(r.status == BoundaryStatus::kFound);
    const auto [head, tail] = binary_endpoints(t0);
    // All k probes succeed, so head sits r_T / 2^k short of the initial tail;
    // the stopping rule makes that gap < 2 eps_t.
    CHECK(r.iterations == 6);
    CHECK(dist(r.t_star, tail) == doctest::Approx(boundary_radius(3) / 64.0).epsilon(1e-9));
    CHECK(dist(r.t_star, tail) < 2.0 * 0.01);
    CHECK(r.iterations <= max_bisection_iterations(3, 0.01));
    CHECK(orthogonal_residual(r.y_star, r.t_star) <= 0.01);
}

TEST_CASE("front collapsed to the center: degenerate fallback") {
    const TargetPoint c = hyperplane_center(3);
    const Problem point{3, 2, [c](std::span<const double> x) {
                            ObjectiveVector y = c.values();
                            for (double& v : y) v += x[0] * x[0] + x[1] * x[1];
                            return y;
                        }};
    const auto r = pareto_front_boundary_search(point, opt(10, 50), ideal_target({6, 6, 0}), 0.01, 3);
    CHECK(r.status == BoundaryStatus::kDegenerateCenter);
    CHECK(r.t_star == c);
    CHECK(r.iterations == 6);
    CHECK(r.x_star.size() == 2);
}

TEST_CASE("iteration bound holds across tolerances") {
    const Problem identity{4, 4, [](std::span<const double> x) { return ObjectiveVector(x.begin(), x.end()); }};
    for (double eps : {0.2, 0.05, 0.01, 0.003}) {
        const auto r = pareto_front_boundary_search(identity, opt(10, 100), ideal_target({3, 1, 0, 2}), eps, 1);
        CHECK(r.iterations <= max_bisection_iterations(4, eps));
        CHECK(r.iterations >= 1);
    }
    CHECK_THROWS_AS((void)pareto_front_boundary_search(identity, opt(10, 10), ideal_target({1, 1, 0, 1}), 0.0, 1),
                    ContractError);
}

TEST_CASE("edge-midpoint ray on an exact simplex front stops at the inradius") {
    // Feasible set is exactly the unit simplex: nothing dominated lies behind
    // an edge, so a target pushed out by delta leaves residual delta.
    const Problem simplex{3, 3, [](std::span<const double> x) {
                              double s = 1e-300;
                              for (double v : x) s += v * v;
                              ObjectiveVector y(3);
                              for (std::size_t i = 0; i < 3; ++i) y[i] = x[i] * x[i] / s;
                              return y;
                          }};
    const TargetPoint t0 = ideal_target({6, 6, 0});
    const auto r = pareto_front_boundary_search(simplex, opt(20, 400), t0, 0.01, 99);
    REQUIRE(r.status == BoundaryStatus::kFound);
    const double inradius = boundary_radius(3) / 2.0;
    CHECK(inradius == doctest::Approx(0.40825).epsilon(1e-4));
    CHECK(std::fabs(dist(r.t_star, hyperplane_center(3)) - inradius) <= 0.01);
    CHECK(r.iterations == 6);
}

TEST_CASE("RP-Linear edge-midpoint ray never undershoots") {
    // Dominated points behind the edge are feasible, so outside targets may
    // still pass the residual test; only the inner side is tight.
    const ProblemSpec spec{ProblemKind::kRpLinear, 3, 40, 1.0};
    const Problem normalized = make_problem(spec);
    const TargetPoint t0 = ideal_target({6, 6, 0});
    const double inradius = boundary_radius(3) / 2.0;
    for (std::uint64_t seed : {99u, 100u}) {
        const auto r = pareto_front_boundary_search(normalized, opt(40, 1500), t0, 0.01, seed);
        REQUIRE(r.status == BoundaryStatus::kFound);
        CHECK(dist(r.t_star, hyperplane_center(3)) >= inradius - 1e-9);
        CHECK(orthogonal_residual(r.y_star, r.t_star) <= 0.01);
        CHECK(r.iterations <= 8);
    }
}

TEST_CASE("augmented runs stop at the RP-Linear edge") {
    const Problem normalized = make_problem(ProblemSpec{ProblemKind::kRpLinear, 3, 40, 1.0});
    const TargetPoint t0 = ideal_target({6, 6, 0});
    const double inradius = boundary_radius(3) / 2.0;
    for (std::uint64_t seed : {99u, 100u}) {
        const auto r = pareto_front_boundary_search(normalized, opt(40, 1500), t0, 0.01, seed, false, 0.01);
        REQUIRE(r.status == BoundaryStatus::kFound);
        CHECK(std::fabs(dist(r.t_star, hyperplane_center(3)) - inradius) <= 0.01 + 0.01);
    }
    CHECK_THROWS_AS((void)pareto_front_boundary_search(normalized, opt(10, 10), t0, 0.01, 1, false, -1.0),
                    ContractError);
}

TEST_CASE("warm start runs are deterministic too") {
    const Problem identity{3, 3, [](std::span<const double> x) { return ObjectiveVector(x.begin(), x.end()); }};
    const TargetPoint t0 = ideal_target({2, 5, 5});
    const auto a = pareto_front_boundary_search(identity, opt(10, 100), t0, 0.01, 5, true);
    const auto b = pareto_front_boundary_search(identity, opt(10, 100), t0, 0.01, 5, true);
    CHECK(a.x_star == b.x_star);
    CHECK(a.t_star == b.t_star);
}
