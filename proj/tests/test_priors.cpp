#include "doctest.h"

#include <cmath>
#include <vector>

#include "qdt/errors.hpp"
#include "qdt/priors.hpp"

using namespace qdt;

TEST_CASE("lottery validation") {
    Lottery ok{{{100.0, 0.5}, {0.0, 0.5}}};
    ok.validate();
    CHECK_THROWS_AS(Lottery{}.validate(), ModelError);
    CHECK_THROWS_AS(Lottery({{{10.0, -0.1}, {0.0, 1.1}}}).validate(), ModelError);
    CHECK_THROWS_AS(Lottery({{{10.0, 0.5}, {0.0, 0.4}}}).validate(), ModelError);
}

TEST_CASE("expected utility") {
    Lottery coin{{{100.0, 0.5}, {0.0, 0.5}}};
    CHECK(expected_utility(coin, [](double x) { return x; }) == doctest::Approx(50.0));
    CHECK(expected_utility(coin, [](double) { return 1.0; }) == doctest::Approx(1.0));

    Lottery skew{{{4.0, 0.25}, {1.0, 0.75}}};
    CHECK(expected_utility(skew, [](double x) { return std::sqrt(x); }) ==
          doctest::Approx(1.25).epsilon(1e-12));

    CHECK_THROWS_AS(expected_utility(coin, [](double x) { return std::log(x); }),
                    DivergenceError);
}

TEST_CASE("attraction attributes from utilities") {
    CHECK(attributes_from_utilities({65000.0, 58000.0}) ==
          std::vector<double>{65000.0, 58000.0});
    // All losses: inverse magnitudes.
    CHECK(attributes_from_utilities({-2.0, -4.0}) == std::vector<double>{0.5, 0.25});
    // Mixed signs: shift the worst alternative to zero.
    CHECK(attributes_from_utilities({-1.0, 3.0}) == std::vector<double>{0.0, 4.0});
    // Zeros count as nonnegative, so no shift.
    CHECK(attributes_from_utilities({0.0, 5.0}) == std::vector<double>{0.0, 5.0});

    CHECK_THROWS_AS(attributes_from_utilities({}), ModelError);
    CHECK_THROWS_AS(attributes_from_utilities({1.0, std::nan("")}), ModelError);
}

TEST_CASE("luce weights") {
    std::vector<double> pair = luce_weights({65.0, 58.0});
    CHECK(pair[0] == doctest::Approx(0.528455).epsilon(1e-5));
    CHECK(pair[1] == doctest::Approx(0.471545).epsilon(1e-5));
    CHECK(pair[0] + pair[1] == doctest::Approx(1.0).epsilon(1e-15));

    std::vector<double> triple = luce_weights({65.0, 58.0, 50.0});
    CHECK(triple[0] == doctest::Approx(0.375723).epsilon(1e-5));
    CHECK(triple[1] == doctest::Approx(0.335260).epsilon(1e-5));
    CHECK(triple[2] == doctest::Approx(0.289017).epsilon(1e-5));

    std::vector<double> even = luce_weights({3.0, 3.0});
    CHECK(even[0] == 0.5);

    CHECK_THROWS_AS(luce_weights({0.0, 0.0}), ModelError);
    CHECK_THROWS_AS(luce_weights({1.0, -0.5}), ModelError);
    CHECK_THROWS_AS(luce_weights({}), ModelError);
}

TEST_CASE("luce endpoint sweeps") {
    // Gains branch: f grows monotonically with the attribute ratio and
    // covers both extremes.
    double previous = -1.0;
    for (double a : {1e-6, 1e-3, 1.0, 1e3, 1e6}) {
        double f = luce_weights({a, 1.0})[0];
        CHECK(f > previous);
        previous = f;
    }
    CHECK(luce_weights({1e-6, 1.0})[0] < 0.01);
    CHECK(luce_weights({1e6, 1.0})[0] > 0.99);

    // Losses branch: deeper losses lose weight through the inverse map.
    previous = 2.0;
    for (double u : {1e-6, 1e-3, 1.0, 1e3, 1e6}) {
        double f = luce_weights(attributes_from_utilities({-u, -1.0}))[0];
        CHECK(f < previous);
        previous = f;
    }
    CHECK(luce_weights(attributes_from_utilities({-1e6, -1.0}))[0] < 0.01);
    CHECK(luce_weights(attributes_from_utilities({-1e-6, -1.0}))[0] > 0.99);
}

TEST_CASE("quarter law under the uniform prior") {
    PriorDensity uniform{[](double) { return 0.5; }};
    auto [plus, minus] = quarter_law(uniform);
    CHECK(std::abs(plus - 0.25) <= 1e-10);
    CHECK(std::abs(minus + 0.25) <= 1e-10);
}

TEST_CASE("quarter law under non-uniform priors") {
    PriorDensity quadratic{[](double x) { return 1.5 * x * x; }};
    auto [plus, minus] = quarter_law(quadratic);
    CHECK(std::abs(plus - 0.375) <= 1e-10);
    CHECK(std::abs(minus + 0.375) <= 1e-10);

    // Support confined to [0, 1]: the negative branch vanishes.
    PriorDensity one_sided{[](double x) { return x > 0.0 ? 2.0 * x : 0.0; }};
    auto [p2, m2] = quarter_law(one_sided);
    CHECK(std::abs(p2 - 2.0 / 3.0) <= 1e-10);
    CHECK(std::abs(m2) <= 1e-10);

    // A symmetric density gives opposite typical magnitudes.
    PriorDensity quartic{[](double x) {
        double s = 1.0 - x * x;
        return (15.0 / 16.0) * s * s;
    }};
    auto [p3, m3] = quarter_law(quartic);
    CHECK(std::abs(p3 - 0.15625) <= 1e-10);
    CHECK(std::abs(p3 + m3) <= 1e-10);
}

TEST_CASE("quarter law rejects bad densities") {
    CHECK_THROWS_AS(quarter_law(PriorDensity{}), ModelError);
    // Mass two on [-1, 1].
    CHECK_THROWS_AS(quarter_law(PriorDensity{[](double) { return 1.0; }}), ModelError);
    CHECK_THROWS_AS(quarter_law(PriorDensity{[](double x) { return x; }}), ModelError);
}

TEST_CASE("aggregate probability") {
    AggregateResult repulsive = aggregate_probability(0.64, Attitude::repulsive);
    CHECK(repulsive.value == doctest::Approx(0.39).epsilon(1e-12));
    CHECK_FALSE(repulsive.out_of_range);

    AggregateResult attractive = aggregate_probability(0.435, Attitude::attractive);
    CHECK(attractive.value == doctest::Approx(0.685).epsilon(1e-12));
    CHECK_FALSE(attractive.out_of_range);

    CHECK(aggregate_probability(0.7, Attitude::neutral).value == 0.7);

    // Out of range is flagged, never clamped.
    AggregateResult high = aggregate_probability(0.9, Attitude::attractive);
    CHECK(high.value == doctest::Approx(1.15).epsilon(1e-12));
    CHECK(high.out_of_range);
    AggregateResult low = aggregate_probability(0.1, Attitude::repulsive);
    CHECK(low.value == doctest::Approx(-0.15).epsilon(1e-12));
    CHECK(low.out_of_range);

    // Opposite attitudes on complementary fractions keep a closed pair.
    AggregateResult up = aggregate_probability(0.435, Attitude::attractive);
    AggregateResult down = aggregate_probability(0.565, Attitude::repulsive);
    CHECK(up.value + down.value == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(aggregate_probability(1.5, Attitude::neutral), ModelError);
}
