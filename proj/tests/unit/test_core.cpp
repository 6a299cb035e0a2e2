#include <doctest.h>

#include <cmath>

#include "tame/errors.hpp"
#include "tame/function_model.hpp"

using namespace tame;

TEST_CASE("interval membership follows openness") {
    const Interval open = Interval::open(0.0, 1.0);
    CHECK_FALSE(open.contains(0.0));
    CHECK(open.contains(0.5));
    CHECK(Interval::closed(0.0, 1.0).contains(1.0));
    const Interval half(0.0, 1.0, Openness::HalfOpenRight);
    CHECK(half.contains(0.0));
    CHECK_FALSE(half.contains(1.0));
    CHECK(Interval::closed(0.0, 1.0).contains(open));
    CHECK_FALSE(open.contains(Interval::closed(0.0, 1.0)));
    CHECK(open.to_string() == "(0,1)");
    CHECK_THROWS_AS(Interval(1.0, 0.0), InvalidArgument);
}

TEST_CASE("evaluation") {
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK(eval(sq, 0.5) == 0.25);
    CHECK_THROWS_AS(eval(sq, 2.0), DomainError);

    const FunctionModel g = parse_function_spec("grid:[0,1] -> [0,2] linear on [0,1]");
    CHECK(eval(g, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("spec parsing round trips and reports positions") {
    const FunctionModel f = parse_function_spec("expr:(add (sin x) (scale 2 (abs (poly [1,-0.5] x)))) on [0,1]");
    CHECK(f.eval(0.25) == doctest::Approx(std::sin(0.25) + 0.5));
    const FunctionModel again = parse_function_spec(f.to_string());
    for (double x : {0.0, 0.3, 0.7, 1.0}) CHECK(again.eval(x) == f.eval(x));

    try {
        parse_function_spec("poly:[1,0 on (0,1)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == "ParseError");
    }
    CHECK_THROWS_AS(parse_function_spec("bogus on (0,1)"), ParseError);
    CHECK_THROWS_AS(parse_function_spec("sininv on (0,1)"), ParseError);
    CHECK_THROWS_AS(parse_function_spec("sawtooth:0 on (0,1)"), ParseError);
}

TEST_CASE("catalog shapes") {
    const FunctionModel cantor = parse_function_spec("cantor on [0,1]");
    CHECK(cantor.eval(0.0) == 0.0);
    CHECK(cantor.eval(1.0) == 1.0);
    CHECK(cantor.eval(0.5) == 0.5);
    CHECK(cantor.eval(0.4) == 0.5);
    CHECK(cantor.eval(0.25) == doctest::Approx(1.0 / 3.0));

    const FunctionModel saw = parse_function_spec("sawtooth:0.25 on [0,1]");
    for (double x : {0.03, 0.11, 0.2}) CHECK(saw.eval(x) == doctest::Approx(saw.eval(x + 0.25)));
}

TEST_CASE("derivatives") {
    const ToleranceConfig cfg;
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK(std::abs(derivative(sq, 0.3, 1, cfg).value - 0.6) <= cfg.eps_deriv);
    const FunctionModel line = parse_function_spec("affine:3,1 on (0,1)");
    CHECK(std::abs(derivative(line, 0.4, 2, cfg).value) <= cfg.eps_deriv);
    const FunctionModel kink = parse_function_spec("abs-shift:0.5 on (0,1)");
    CHECK(derivative(kink, 0.5, 1, cfg).non_smooth);
    CHECK_FALSE(derivative(sq, 0.3, 1, cfg).non_smooth);
    CHECK(std::abs(derivative_inward(sq, 0.0, 1, cfg)) <= 10 * cfg.eps_deriv);
    CHECK(derivative_inward(sq, 1.0, 1, cfg) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("sampling") {
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    const GridForm g = sample(sq, sq.domain(), 3);
    REQUIRE(g.knots.size() == 3);
    CHECK(g.knots[0] == doctest::Approx(1.0 / 12));
    CHECK(g.knots[1] == doctest::Approx(0.5));
    CHECK(g.knots[2] == doctest::Approx(11.0 / 12));
    for (std::size_t i = 0; i < 3; ++i) CHECK(g.values[i] == g.knots[i] * g.knots[i]);

    const FunctionModel line = parse_function_spec("affine:2,1 on [0,1]");
    const GridForm two = sample(line, line.domain(), 2);
    CHECK(two.eval(0.3) == doctest::Approx(1.6));
    CHECK_THROWS_AS(sample(sq, Interval::open(0.0, 2.0), 8), DomainError);
}

TEST_CASE("grid csv input") {
    const FunctionModel f = read_grid_csv("x,fx\n0,0\n0.5,1\n1,0\n");
    CHECK(f.eval(0.25) == doctest::Approx(0.5));
    CHECK_THROWS_AS(read_grid_csv("x,fx\n0,0\n0,1\n"), ParseError);
}

TEST_CASE("tolerance validation") {
    ToleranceConfig cfg;
    cfg.grid_n = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = ToleranceConfig{};
    cfg.eps_value = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}
