#include <doctest.h>

#include <cmath>

#include "../support/catalog.hpp"
#include "tame/diff_ops.hpp"
#include "tame/errors.hpp"
#include "tame/seqsets.hpp"

using namespace tame;

TEST_CASE("generalized differences on polynomials") {
    const FunctionModel line = parse_function_spec("affine:3,1 on (0,1)");
    CHECK(gen_diff(line, 0.1, StepVector{{0.2}}) == doctest::Approx(0.6).epsilon(1e-14));

    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK(gen_diff(sq, 0.3, StepVector{{0.1, 0.2}}) == doctest::Approx(2 * 0.1 * 0.2).epsilon(1e-12));

    const FunctionModel cube = parse_function_spec("poly:[1,0,0,0] on (0,1)");
    CHECK(gen_diff(cube, 0.1, StepVector{{0.1, 0.1, 0.2}}) == doctest::Approx(6 * 0.1 * 0.1 * 0.2).epsilon(1e-12));

    // Below-degree differences vanish.
    CHECK(std::abs(gen_diff(sq, 0.2, StepVector{{0.1, 0.05, 0.2}})) <= 1e-15);
}

TEST_CASE("difference matches the signed subset expansion") {
    const FunctionModel f = parse_function_spec("expr:(add (sin x) (exp x)) on (0,1)");
    const std::vector<double> h = {0.03, 0.11, 0.07, 0.05};
    auto fx = [&f](double t) { return f.eval(t); };
    CHECK(gen_diff(f, 0.2, StepVector{h}) ==
          doctest::Approx(tame::testing::expansion_oracle(fx, 0.2, h)).epsilon(1e-12));
}

TEST_CASE("suitability") {
    const Interval J = Interval::open(0.0, 1.0);
    CHECK(is_suitable(J, 2, StepVector{{0.1, 0.2}}, 0.5));
    CHECK_FALSE(is_suitable(J, 2, StepVector{{0.1, 0.2}}, 0.7));
    CHECK(is_suitable(J, 3, StepVector{{0.0, 0.0, 0.0}}, 0.5));
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK_THROWS_AS(gen_diff(sq, 0.7, StepVector{{0.1, 0.2}}), SuitabilityError);
}

TEST_CASE("difference identities") {
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    IdentityResiduals r = check_diff_identities(sq, sq, 0.2, StepVector{{0.1, 0.1}});
    CHECK(r.composition == 0.0);
    CHECK(r.additivity <= 1e-16);

    const FunctionModel cube = parse_function_spec("poly:[1,0,0,0] on (0,1)");
    const FunctionModel s = parse_function_spec("sin on (0,1)");
    r = check_diff_identities(cube, s, 0.3, StepVector{{0.05, 0.1}});
    CHECK(r.composition <= 1e-12);
    CHECK(r.additivity <= 1e-12);

    const FunctionModel a = parse_function_spec("affine:2,0 on (0,1)");
    const FunctionModel b = parse_function_spec("affine:-1,0 on (0,1)");
    r = check_diff_identities(a, b, 0.25, StepVector{{0.125, 0.25}});
    CHECK(r.composition == 0.0);
    CHECK(r.additivity == 0.0);
}

TEST_CASE("equal-step sign test") {
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK(hk_test(sq, sq.domain(), 2, 256).verdict == Sign::NonNeg);
    const FunctionModel cube = parse_function_spec("poly:[1,0,0,0] on (0,1)");
    CHECK(hk_test(cube, cube.domain(), 3, 256).verdict == Sign::NonNeg);
    const FunctionModel neg = parse_function_spec("poly:[-1,0,0] on (0,1)");
    CHECK(hk_test(neg, neg.domain(), 2, 256).verdict == Sign::NonPos);

    const FunctionModel saw = parse_function_spec("sawtooth:0.25 on (0,1)");
    const SignVerdict v = hk_test(saw, saw.domain(), 2, 256);
    CHECK(v.verdict == Sign::Mixed);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->value < 0.0);
    CHECK(gen_diff(saw, v.witness->x, StepVector::uniform(2, v.witness->h)) == doctest::Approx(v.witness->value));
}

TEST_CASE("smoothness certificates") {
    ToleranceConfig cfg;
    const FunctionModel quartic = parse_function_spec("poly:[1,0,0,0,0] on (0,1)");
    CHECK(certify_smoothness(quartic, quartic.domain(), 2, cfg).coverage_fraction == 1.0);

    const FunctionModel line = parse_function_spec("affine:2,-1 on (0,1)");
    for (int k = 0; k <= 3; ++k) CHECK(certify_smoothness(line, line.domain(), k, cfg).coverage_fraction == 1.0);

    cfg.grid_n = 4096;
    const FunctionModel kink = parse_function_spec("abs-shift:0.5 on (0,1)");
    const SmoothnessCertificate c = certify_smoothness(kink, kink.domain(), 1, cfg);
    CHECK(c.coverage_fraction >= 0.9);
    CHECK(c.coverage_fraction < 1.0);
    for (const CertifiedRegion& r : c.regions) CHECK_FALSE(r.interval.contains(0.5));
    CHECK(std::string(SmoothnessCertificate::label) == "necessary-condition at resolution");
}

TEST_CASE("anchored check") {
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    AnchorCheckReport r = seqset_anchor_check(sq, sq.domain(), 2, geometric_sequence_set(2.0, 20), 128);
    CHECK(r.implication_held);
    CHECK(r.worst_violation == 0.0);

    const FunctionModel cube = parse_function_spec("poly:[1,0,0,0] on (0,1)");
    r = seqset_anchor_check(cube, cube.domain(), 3, geometric_sequence_set(3.0, 20), 128);
    CHECK(r.implication_held);

    const FunctionModel line = parse_function_spec("affine:5,1 on (0,1)");
    r = seqset_anchor_check(line, line.domain(), 2, geometric_sequence_set(2.0, 20), 128);
    CHECK(r.implication_held);
    CHECK(std::abs(r.anchored_min) <= 1e-12);
    CHECK(std::abs(r.unrestricted_min) <= 1e-12);
}
