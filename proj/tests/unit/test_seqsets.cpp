#include <doctest.h>

#include <cmath>

#include "../support/catalog.hpp"
#include "tame/errors.hpp"
#include "tame/seqsets.hpp"

using namespace tame;

TEST_CASE("sequence sets from generators") {
    const SequenceSet h = make_sequence_set([](double n) { return 1.0 / n; }, 100);
    REQUIRE(h.values.size() == 100);
    CHECK(h.values.front() == 1.0);
    CHECK(h.values.back() == 0.01);
    CHECK(h.strictly_decreasing);
    CHECK(h.decreasing_gaps);
    CHECK(h.truncation_scale() == 0.01);

    const SequenceSet g = make_sequence_set(parse_function_spec("expr:(exp (scale -0.6931471805599453 x)) on (0,200)"), 100);
    CHECK(g.decreasing_gaps);
    CHECK(classify_decay(g).decay == Decay::Exponential);

    const SequenceSet flat = make_sequence_set([](double) { return 1.0; }, 32);
    CHECK_FALSE(flat.strictly_decreasing);

    CHECK_THROWS_AS(make_sequence_set([](double n) { return 1.0 - n / 10.0; }, 32), NonPositiveError);
    CHECK_THROWS_AS(make_sequence_set([](double n) { return 1.0 / n; }, 8), InvalidArgument);

    const SequenceSet geo = geometric_sequence_set(3.0, 5);
    CHECK(geo.values == std::vector<double>{1.0 / 3, 1.0 / 9, 1.0 / 27, 1.0 / 81, 1.0 / 243});
}

TEST_CASE("decay classes") {
    auto from = [](auto gen) {
        std::vector<double> v;
        for (int n = 1; n <= 512; ++n) v.push_back(gen(static_cast<double>(n)));
        return SequenceSet::from_values(v);
    };
    CHECK(classify_decay(from([](double n) { return 1.0 / n; })).decay == Decay::Subexponential);
    CHECK(classify_decay(from([](double n) { return std::exp2(-std::sqrt(n)); })).decay == Decay::Subexponential);
    const DecayFit e = classify_decay(from([](double n) { return std::exp2(-n); }));
    CHECK(e.decay == Decay::Exponential);
    CHECK(e.lambda == doctest::Approx(-std::log(2.0)).epsilon(1e-9));

    CHECK(classify_decay(SequenceSet::from_values({1.0, 0.5, 0.25})).decay == Decay::Unknown);
}

TEST_CASE("omega order") {
    const OmegaOrder a = omega_order(std::vector<double>{1.0, 0.5, 1.0 / 3, 0.25});
    CHECK(a.elements == std::vector<double>{1.0, 0.5, 0.25, 1.0 / 3});
    REQUIRE(a.delta_values.size() == 4);
    CHECK(a.delta_values[0] == doctest::Approx(0.5));
    CHECK(a.delta_values[1] == doctest::Approx(1.0 / 6));
    CHECK(a.delta_values[2] == doctest::Approx(1.0 / 12));
    CHECK(a.delta_values[3] == doctest::Approx(1.0 / 12));

    const OmegaOrder two = omega_order(std::vector<double>{1.0, 0.0});
    CHECK(two.elements == std::vector<double>{0.0, 1.0});
    CHECK(two.delta_values == std::vector<double>{1.0, 1.0});

    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    CHECK(omega_order(grid, 0.02).elements.empty());
}

TEST_CASE("dimension estimates") {
    const PointSet cantor = PointSet::line(tame::testing::cantor_endpoints(12));
    const double target = std::log(2.0) / std::log(3.0);
    CHECK(std::abs(box_dimension_estimate(cantor, {}).estimate - target) <= 0.08);
    CHECK(std::abs(assouad_estimate(cantor, {}).estimate - target) <= 0.08);

    std::vector<double> uniform;
    for (int i = 0; i < 4096; ++i) uniform.push_back(i / 4096.0);
    CHECK(box_dimension_estimate(PointSet::line(uniform), {}).estimate == doctest::Approx(1.0).epsilon(0.05));

    std::vector<std::pair<double, double>> square;
    for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 64; ++j) square.emplace_back(i / 64.0, j / 64.0);
    }
    const PointSet plane = PointSet::plane(square);
    CHECK(box_dimension_estimate(plane, {}).estimate == doctest::Approx(2.0).epsilon(0.1));
    CHECK(assouad_estimate(plane, {}).estimate >= 1.8);

    std::vector<std::pair<double, double>> diagonal;
    for (int i = 0; i < 2048; ++i) diagonal.emplace_back(i / 2048.0, i / 2048.0);
    CHECK(box_dimension_estimate(PointSet::plane(diagonal), {}).estimate == doctest::Approx(1.0).epsilon(0.05));

    CHECK_THROWS_AS(box_dimension_estimate(PointSet::line({0.5}), {}), ScaleError);
    CHECK_THROWS_AS(assouad_estimate(PointSet::line({0.5, 0.5}), {}), ScaleError);
    CHECK_THROWS_AS(assouad_estimate(PointSet::line({0.0, 1.0}), {5, 3}), InvalidArgument);
}

TEST_CASE("difference set intersection") {
    const auto m = difference_set_intersection(std::vector<double>{0, 1, 2}, std::vector<double>{0, 0.5, 1.5}, 1e-12);
    REQUIRE(m.size() == 1);
    CHECK(m[0].c_difference == 1.0);
    CHECK(m[0].d_difference == 1.0);
    CHECK(difference_set_intersection(std::vector<double>{0, 1}, std::vector<double>{0, 1.5}, 1e-12).empty());
    CHECK(difference_set_intersection(std::vector<double>{0, 1}, std::vector<double>{0, 1.5}, 0.6).size() == 1);
}
