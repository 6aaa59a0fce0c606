#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "oracles.hpp"
#include "tptd/driver.hpp"

using namespace tptd;

namespace {

RunConfig small_med(std::size_t m, std::size_t n_div, std::uint64_t seed) {
    RunConfig c;
    c.problem = ProblemSpec{ProblemKind::kMed, m, 10, 1.0};
    c.n_div = n_div;
    c.optimizer.population_size = 10;
    c.optimizer.max_generations = 150;
    c.master_seed = seed;
    c.max_parallel = 2;
    return c;
}

void check_entry_invariants(const RunResult& r, std::size_t m, std::size_t n_div) {
    const auto addresses = generate_addresses(m, n_div);
    REQUIRE(r.entries.size() == oracle::binomial(n_div + m - 1, m - 1));
    std::set<Address> seen;
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        const ApproxEntry& e = r.entries[i];
        CHECK(e.address == addresses[i]);
        CHECK(seen.insert(e.address).second);
        CHECK(e.face_dim == face_dimension(e.address));
        CHECK(e.f_norm == r.vertices.bounds.normalize(e.f));
        CHECK(e.f.size() == m);
        if (e.face_dim == 0) {
            CHECK_FALSE(e.target.has_value());
            CHECK_FALSE(e.initial_target.has_value());
        } else {
            REQUIRE(e.target.has_value());
            REQUIRE(e.initial_target.has_value());
            double s0 = 0.0, s1 = 0.0;
            for (double v : e.target->values()) s1 += v;
            for (double v : e.initial_target->values()) s0 += v;
            CHECK(std::fabs(s0 - hyperplane_sum(m)) <= 1e-9);
            CHECK(std::fabs(s1 - hyperplane_sum(m)) <= 1e-9);
        }
    }
}

}  // namespace

TEST_CASE("relocation examples") {
    const TargetPoint t0 = hyperplane_center(3);
    const std::vector<std::vector<double>> one{{0.1, -0.1, 0.0}};
    CHECK(relocate_interior(t0, one, 0.0) == t0);
    CHECK(relocate_interior(t0, {}, 0.4) == t0);
    const auto t = relocate_interior(t0, one, 0.4);
    CHECK(t[0] == doctest::Approx(t0[0] + 0.04));
    CHECK(t[1] == doctest::Approx(t0[1] - 0.04));
    CHECK(t[2] == doctest::Approx(t0[2]));
    const std::vector<std::vector<double>> two{{0.1, -0.1, 0.0}, {0.0, 0.2, -0.2}};
    const auto t2 = relocate_interior(t0, two, 0.5);
    CHECK(t2[0] == doctest::Approx(t0[0] + 0.05));
    CHECK(t2[1] == doctest::Approx(t0[1] + 0.05));
    CHECK(t2[2] == doctest::Approx(t0[2] - 0.1));
    const std::vector<std::vector<double>> off{{0.1, 0.0, 0.0}};
    CHECK_THROWS_AS((void)relocate_interior(t0, off, 0.4), ContractError);
}

TEST_CASE("config validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.n_div == 12);
    CHECK(c.eps_t == 0.01);
    CHECK(c.eta == 0.4);
    c.eta = 1.5;
    CHECK_THROWS_AS(c.validate(), ContractError);
    c.eta = 0.4;
    c.eps_t = 0.0;
    CHECK_THROWS_AS(c.validate(), ContractError);
    c.eps_t = 0.01;
    c.n_div = 0;
    CHECK_THROWS_AS(c.validate(), ContractError);
    c.n_div = 12;
    CHECK(c.rho == 0.01);
    c.rho = -1e-3;
    CHECK_THROWS_AS(c.validate(), ContractError);
    c.rho = 0.0;
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("MED m=3 produces one entry per address") {
    RunConfig c;
    c.problem = ProblemSpec{ProblemKind::kMed, 3, 40, 1.0};
    c.master_seed = 1;
    c.max_parallel = 2;
    const RunResult r = run(c);
    check_entry_invariants(r, 3, 12);
    CHECK(r.entries.size() == 91);
    for (const auto& e : r.entries) CHECK(e.status == EntryStatus::kOk);
}

TEST_CASE("m=2 uses the initial targets directly") {
    const RunResult r = run(small_med(2, 5, 4));
    check_entry_invariants(r, 2, 5);
    CHECK(r.entries.size() == 6);
    for (const auto& e : r.entries) {
        if (e.face_dim == 1) CHECK(*e.target == *e.initial_target);
        CHECK(e.iterations == 0);
    }
}

TEST_CASE("m=4 small lattice") {
    const RunResult r = run(small_med(4, 4, 2));
    check_entry_invariants(r, 4, 4);
}

TEST_CASE("eta = 0 leaves interior targets untouched") {
    RunConfig c = small_med(3, 6, 9);
    c.eta = 0.0;
    const RunResult r = run(c);
    for (const auto& e : r.entries) {
        if (e.face_dim == 2) CHECK(*e.target == *e.initial_target);
    }
}

TEST_CASE("relocated targets follow the guide displacements") {
    RunConfig c = small_med(3, 6, 12);
    const RunResult r = run(c);
    std::map<Address, const ApproxEntry*> by;
    for (const auto& e : r.entries) by[e.address] = &e;
    for (const auto& e : r.entries) {
        if (e.face_dim != 2) continue;
        std::vector<double> expect = e.initial_target->values();
        for (const auto& g : guide_set(e.address)) {
            const ApproxEntry* ge = by.at(g);
            if (ge->status != EntryStatus::kOk) continue;
            for (std::size_t i = 0; i < 3; ++i) expect[i] += c.eta * ((*ge->target)[i] - (*ge->initial_target)[i]);
        }
        for (std::size_t i = 0; i < 3; ++i) CHECK((*e.target)[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
}

TEST_CASE("identical configs give identical results at any worker count") {
    RunConfig a = small_med(3, 5, 21);
    RunConfig b = a;
    a.max_parallel = 1;
    b.max_parallel = 3;
    const RunResult ra = run(a);
    const RunResult rb = run(b);
    REQUIRE(ra.entries.size() == rb.entries.size());
    for (std::size_t i = 0; i < ra.entries.size(); ++i) {
        CHECK(ra.entries[i].x == rb.entries[i].x);
        CHECK(ra.entries[i].f == rb.entries[i].f);
    }
}

TEST_CASE("RP-Linear entries sit on the front") {
    RunConfig c;
    c.problem = ProblemSpec{ProblemKind::kRpLinear, 3, 10, 1.0};
    c.n_div = 6;
    c.optimizer.population_size = 40;
    c.optimizer.max_generations = 1500;
    c.master_seed = 2;
    const RunResult r = run(c);
    for (const auto& e : r.entries) {
        CAPTURE(e.address.to_string());
        double sum = 0.0;
        for (double y : e.f_norm) {
            CHECK(y >= -0.05);
            sum += y;
        }
        // distance from the plane sum(y) = 1
        CHECK(std::fabs(sum - 1.0) / std::sqrt(3.0) < 0.05);
    }
}

TEST_CASE("stage failures carry context") {
    const Problem bad{3, 4, [](std::span<const double>) {
                          return ObjectiveVector{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
                      }};
    RunConfig c = small_med(3, 4, 0);
    try {
        (void)run(bad, c);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.stage() == "ideal");
        CHECK(e.subproblem() == "objective 1");
    }
}
