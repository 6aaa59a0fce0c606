#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tptd/scalarize.hpp"

using namespace tptd;

TEST_CASE("hyperplane projection examples") {
    const auto t = project_to_hyperplane(std::vector{1.0, 0.0, 0.0});
    CHECK(t[0] == doctest::Approx(0.5));
    CHECK(t[1] == doctest::Approx(-0.5));
    CHECK(t[2] == doctest::Approx(-0.5));
    const auto z = project_to_hyperplane(std::vector{0.0, 0.0});
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    const auto q = project_to_hyperplane(std::vector{1.0, 1.0, 1.0, 1.0});
    for (double v : q.values()) CHECK(v == doctest::Approx(-0.25));
    const auto c = hyperplane_center(3);
    for (double v : c.values()) CHECK(v == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("projection agrees with the oracle and fixes points on the plane") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (std::size_t m = 2; m <= 6; ++m) {
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<double> v(m);
            for (double& x : v) x = u(rng);
            const auto t = project_to_hyperplane(v);
            const auto expect = oracle::project(v);
            for (std::size_t i = 0; i < m; ++i) CHECK(t[i] == doctest::Approx(expect[i]).epsilon(1e-12));
            const auto again = project_to_hyperplane(t.values());
            for (std::size_t i = 0; i < m; ++i) CHECK(again[i] == doctest::Approx(t[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("target point rejects off-plane input") {
    CHECK_THROWS_AS(TargetPoint(std::vector{0.0, 0.0, 0.0}), ContractError);
    CHECK_NOTHROW(TargetPoint(std::vector{0.5, -0.5, -0.5}));
    CHECK_THROWS_AS(TargetPoint(std::vector{0.0}), ContractError);
}

TEST_CASE("tptd examples") {
    const std::vector<double> t2{0.0, 0.0};
    CHECK(tptd::tptd(std::vector{0.3, 0.7}, t2) == doctest::Approx(0.7));
    CHECK(tptd::tptd(std::vector{0.5, -0.5, -0.5}, std::vector{0.5, -0.5, -0.5}) == 0.0);
    CHECK(tptd::tptd(std::vector{1.0, 0.0, 0.0}, std::vector{0.5, -0.5, -0.5}) == doctest::Approx(0.5));
    CHECK(tptd::tptd(std::vector{0.0, 0.0}, std::vector{0.0, 1e-300}) > 0.0);
    CHECK_THROWS_AS((void)tptd::tptd(std::vector{0.0}, t2), ContractError);
}

TEST_CASE("augmented tptd") {
    const std::vector<double> t{0.5, -0.5, -0.5};
    const std::vector<double> y{1.0, 0.25, 0.0};
    CHECK(augmented_tptd(y, t, 0.0) == tptd::tptd(y, t));
    CHECK(augmented_tptd(y, t, 0.1) == doctest::Approx(0.75 + 0.1 * (0.5 + 0.75 + 0.5)));
    // On the flat part of the max the smaller point wins.
    const std::vector<double> t2{0.01, 0.01, -0.52};  // just outside the edge y3 = 0
    const std::vector<double> near{0.5, 0.5, 0.0}, far{0.52, 0.52, 0.0};
    CHECK(tptd::tptd(near, t2) == tptd::tptd(far, t2));
    CHECK(augmented_tptd(near, t2, 0.01) < augmented_tptd(far, t2, 0.01));
}

TEST_CASE("tch and mtch examples") {
    const std::vector<double> z{0.0, 0.0};
    CHECK(tch(std::vector{0.4, 0.9}, WeightVector::unit(2, 0), z) == doctest::Approx(0.4));
    CHECK(tch(std::vector{5.0, 0.2}, WeightVector({0.0, 1.0}), z) == doctest::Approx(0.2));
    CHECK(tch(z, WeightVector({0.3, 0.7}), z) == 0.0);
    CHECK(mtch(std::vector{0.2, 0.3}, WeightVector({0.5, 0.5}), z) == doctest::Approx(0.6));
    CHECK(mtch(std::vector{0.4, 1e-7}, WeightVector::unit(2, 0), z) == doctest::Approx(0.4));
    CHECK(mtch(z, WeightVector({0.3, 0.7}), z) == 0.0);
    CHECK_THROWS_AS(WeightVector({0.0, 0.0}), ContractError);
    CHECK_THROWS_AS(WeightVector({-0.1, 1.0}), ContractError);
}

TEST_CASE("tch and mtch are positively homogeneous") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> f(3), z(3), w(3), scaled(3);
        for (std::size_t i = 0; i < 3; ++i) {
            f[i] = u(rng);
            z[i] = u(rng) - 0.5;
            w[i] = u(rng);
        }
        const double lambda = 0.1 + 4.0 * u(rng);
        for (std::size_t i = 0; i < 3; ++i) scaled[i] = z[i] + lambda * (f[i] - z[i]);
        const WeightVector wv(w);
        CHECK(tch(scaled, wv, z) == doctest::Approx(lambda * tch(f, wv, z)).epsilon(1e-12));
        CHECK(mtch(scaled, wv, z) == doctest::Approx(lambda * mtch(f, wv, z)).epsilon(1e-12));
    }
}

TEST_CASE("orthogonal residual examples") {
    const auto c = hyperplane_center(3);
    CHECK(orthogonal_residual(std::vector{0.0, 0.0}, std::vector{0.0, 0.0}) == 0.0);
    CHECK(orthogonal_residual(std::vector{1.0, 0.0}, std::vector{0.0, 0.0}) == doctest::Approx(std::sqrt(0.5)));
    std::vector<double> y = c.values();
    y[0] += 1.0;
    y[1] -= 1.0;
    CHECK(orthogonal_residual(y, c) == doctest::Approx(std::sqrt(2.0)));
    std::vector<double> diag = c.values();
    for (double& v : diag) v += 0.37;
    CHECK(orthogonal_residual(diag, c) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("tptd is zero exactly when the points coincide") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> y(4);
        for (double& v : y) v = u(rng);
        const auto t = project_to_hyperplane(y);
        CHECK(tptd::tptd(t.values(), t) == 0.0);
        CHECK(tptd::tptd(y, t) > 0.0);
    }
}

TEST_CASE("tptd equals the signed maximum for nonnegative y") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> wide(0.0, 2.0);
    for (std::size_t m = 2; m <= 5; ++m) {
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<double> u(m), y(m);
            for (double& v : u) v = unit(rng);
            for (double& v : y) v = wide(rng);
            const auto t = project_to_hyperplane(u);
            double signed_max = -INFINITY;
            for (std::size_t i = 0; i < m; ++i) signed_max = std::max(signed_max, y[i] - t[i]);
            REQUIRE(tptd::tptd(y, t) - signed_max == 0.0);
        }
    }
}
