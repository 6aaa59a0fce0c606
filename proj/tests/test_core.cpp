#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "tptd/core.hpp"

using namespace tptd;

namespace {

Dominance mirror(Dominance d) {
    switch (d) {
        case Dominance::kADominates: return Dominance::kBDominates;
        case Dominance::kBDominates: return Dominance::kADominates;
        case Dominance::kAStrictlyDominates: return Dominance::kBStrictlyDominates;
        case Dominance::kBStrictlyDominates: return Dominance::kAStrictlyDominates;
        default: return d;
    }
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t m, int levels) {
    std::uniform_int_distribution<int> d(0, levels);
    std::vector<double> v(m);
    for (double& x : v) x = d(rng) / static_cast<double>(levels);
    return v;
}

}  // namespace

TEST_CASE("dominance examples") {
    CHECK(compare(std::vector{0.0, 0.0}, std::vector{1.0, 1.0}) == Dominance::kAStrictlyDominates);
    CHECK(compare(std::vector{0.0, 1.0}, std::vector{1.0, 0.0}) == Dominance::kIncomparable);
    CHECK(compare(std::vector{0.0, 1.0}, std::vector{0.0, 2.0}) == Dominance::kADominates);
    CHECK(compare(std::vector{0.5, 0.5}, std::vector{0.5, 0.5}) == Dominance::kEqual);
    CHECK(weakly_dominates(std::vector{0.0, 1.0}, std::vector{0.0, 2.0}));
    CHECK_FALSE(strictly_dominates(std::vector{0.0, 1.0}, std::vector{0.0, 2.0}));
    CHECK_FALSE(weakly_dominates(std::vector{1.0, 1.0}, std::vector{1.0, 1.0}));
    CHECK_THROWS_AS((void)compare(std::vector{0.0}, std::vector{0.0, 1.0}), ContractError);
    CHECK(to_string(Dominance::kIncomparable) == "INCOMPARABLE");
}

TEST_CASE("dominance is antisymmetric on random pairs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::size_t m = 2 + trial % 4;
        const auto a = random_vec(rng, m, 3);  // coarse grid forces ties
        const auto b = random_vec(rng, m, 3);
        CHECK(compare(b, a) == mirror(compare(a, b)));
    }
}

TEST_CASE("normalization examples") {
    NormalizationBounds one({0.0}, {1.0});
    CHECK(one.normalize(std::vector{0.5})[0] == doctest::Approx(0.5));
    NormalizationBounds b({1.0}, {2.0});
    CHECK(b.normalize(std::vector{3.0})[0] == doctest::Approx(2.0));
    NormalizationBounds c({1.0, -2.0}, {3.0, 2.0});
    const auto zero = c.normalize(c.f_min());
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
    const auto back = c.denormalize(c.normalize(std::vector{2.5, 0.25}));
    CHECK(back[0] == doctest::Approx(2.5));
    CHECK(back[1] == doctest::Approx(0.25));
}

TEST_CASE("normalization is affine between the bounds") {
    NormalizationBounds b({-1.0, 0.5, 10.0}, {2.0, 0.75, 30.0});
    for (double alpha = 0.0; alpha <= 1.0; alpha += 0.125) {
        std::vector<double> f(3);
        for (std::size_t i = 0; i < 3; ++i) f[i] = alpha * b.f_min()[i] + (1.0 - alpha) * b.f_max()[i];
        for (double y : b.normalize(f)) CHECK(y == doctest::Approx(1.0 - alpha).epsilon(1e-12));
    }
}

TEST_CASE("dominance survives normalization") {
    std::mt19937_64 rng(5);
    NormalizationBounds b({-3.0, 0.0, 1.0, 2.0}, {1.0, 1e-3, 7.0, 2.5});
    for (int trial = 0; trial < 3000; ++trial) {
        const auto a = random_vec(rng, 4, 4);
        const auto c = random_vec(rng, 4, 4);
        CHECK(compare(b.normalize(a), b.normalize(c)) == compare(a, c));
    }
}

TEST_CASE("degenerate bounds name the objective") {
    try {
        NormalizationBounds bad({0.0, 1.0, 2.0}, {1.0, 1.0, 3.0});
        FAIL("expected DegenerateBoundsError");
    } catch (const DegenerateBoundsError& e) {
        CHECK(e.objective() == 1);
        CHECK(std::string(e.what()).find("objective 2") != std::string::npos);
    }
    CHECK_THROWS_AS(NormalizationBounds({0.0}, {0.5e-12}), DegenerateBoundsError);
    CHECK_NOTHROW(NormalizationBounds({0.0}, {1e-12}));
    CHECK_THROWS_AS(NormalizationBounds({0.0}, {0.0, 1.0}), ContractError);
}

TEST_CASE("enclosing bounds") {
    std::vector<ObjectiveVector> pts{{0.0, 3.0}, {1.0, 2.0}, {0.5, 5.0}};
    const auto b = NormalizationBounds::enclosing(pts);
    CHECK(b.f_min() == std::vector{0.0, 2.0});
    CHECK(b.f_max() == std::vector{1.0, 5.0});
}

TEST_CASE("non-finite values are rejected") {
    CHECK_THROWS_AS(require_finite(std::vector{1.0, std::nan("")}, "probe"), NumericalError);
    CHECK_THROWS_AS(require_finite(std::vector{std::numeric_limits<double>::infinity()}, "probe"), NumericalError);
    CHECK_NOTHROW(require_finite(std::vector{1.0, -2.0}, "probe"));
}
