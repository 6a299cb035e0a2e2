#include <doctest.h>

#include <cmath>

#include "tame/classify.hpp"
#include "tame/errors.hpp"

using namespace tame;

namespace {
const ToleranceConfig kCfg{};
}

TEST_CASE("repetition witnesses") {
    const FunctionModel saw = parse_function_spec("sawtooth:0.25 on (0,1)");
    const auto w = find_repetition_witness(saw, saw.domain(), 0.05, kCfg);
    REQUIRE(w.has_value());
    CHECK(w->max_residual <= 1e-15);
    CHECK(w->y - w->x == doctest::Approx(0.5));
    const double periods = (w->y - w->x) / 0.25;
    CHECK(periods == doctest::Approx(std::round(periods)));

    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK_FALSE(find_repetition_witness(sq, sq.domain(), 0.05, kCfg).has_value());

    const FunctionModel line = parse_function_spec("affine:3,1 on (0,1)");
    const auto a = find_repetition_witness(line, line.domain(), 0.1, kCfg);
    REQUIRE(a.has_value());
    CHECK(a->max_residual <= 1e-15);
    CHECK(a->x < a->y);
    CHECK(a->delta < a->y - a->x);
}

TEST_CASE("strict convexity") {
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK(strict_convexity_test(sq, sq.domain(), 128, kCfg).verdict == Convexity::StrictlyConvex);
    const FunctionModel line = parse_function_spec("affine:3,1 on (0,1)");
    const ConvexityResult flat = strict_convexity_test(line, line.domain(), 128, kCfg);
    CHECK(flat.verdict == Convexity::Neither);
    CHECK(std::abs(flat.max_slack) <= 1e-12);
    const FunctionModel s = parse_function_spec("sin on (0.1,3)");
    CHECK(strict_convexity_test(s, s.domain(), 128, kCfg).verdict == Convexity::StrictlyConcave);
    const FunctionModel mixed = parse_function_spec("sin on (0.1,6)");
    CHECK(strict_convexity_test(mixed, mixed.domain(), 128, kCfg).verdict == Convexity::Neither);

    // Sampled path: more than 10^6 quadruples at this grid size.
    const ConvexityResult big = strict_convexity_test(sq, sq.domain(), 512, kCfg);
    CHECK(big.quadruples == 1000000);
    CHECK(big.verdict == Convexity::StrictlyConvex);
}

TEST_CASE("midpoint defect") {
    const FunctionModel line = parse_function_spec("affine:3,1 on [0,1]");
    CHECK(midpoint_affine_defect(line, line.domain(), 64) <= 1e-15);
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on [0,1]");
    CHECK(midpoint_affine_defect(sq, sq.domain(), 65) == doctest::Approx(0.25));
    const FunctionModel cantor = parse_function_spec("cantor on [0,1]");
    CHECK(midpoint_affine_defect(cantor, cantor.domain(), 64) > 0.0);
}

TEST_CASE("locally affine regions") {
    const FunctionModel pwa = parse_function_spec("expr:(pwa [0,0.3,0.7,1] [0,1,0.5,2] x) on (0,1)");
    const AffineRegions r = locally_affine_regions(pwa, pwa.domain(), kCfg, 12);
    CHECK(r.regions.size() == 3);
    CHECK(r.coverage >= 0.99);

    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    CHECK(locally_affine_regions(sq, sq.domain(), kCfg, 12).coverage == 0.0);

    const FunctionModel cantor = parse_function_spec("cantor on (0,1)");
    CHECK(locally_affine_regions(cantor, cantor.domain(), kCfg, 12).coverage >= 0.9);
}

TEST_CASE("weak poles") {
    std::vector<double> E;
    for (int n = 1; n <= 128; ++n) E.push_back(1.0 / n);
    const FamilyModel scaled{E, [](double d) { return FunctionModel(Interval::closed(0.0, d), Expr::scale(1.0 / d, Expr::var())); }};
    const WeakPoleResult a = weak_pole_check(scaled, 0.5, kCfg);
    CHECK(a.weak_pole);
    CHECK(a.delta == doctest::Approx(1.0));

    const FamilyModel identity{E, [](double d) { return FunctionModel(Interval::closed(0.0, d), Expr::var()); }};
    const WeakPoleResult b = weak_pole_check(identity, 0.5, kCfg);
    CHECK_FALSE(b.weak_pole);
    CHECK(b.delta <= 1.0 / 128 + 1e-12);

    std::vector<double> small;
    for (int n = 8; n <= 1000; n += 8) small.push_back(1.0 / n);
    const FamilyModel oscillating{small, [](double d) {
                                      return FunctionModel(Interval::closed(0.0, d),
                                                           Expr::sin(Expr::recip(Expr::poly({1.0, d * d}))));
                                  }};
    const WeakPoleResult c = weak_pole_check(oscillating, 0.5, kCfg);
    CHECK(c.weak_pole);
    CHECK(c.delta > 0.9);

    CHECK_THROWS_AS(weak_pole_check(FamilyModel{{0.5, 0.4, 0.3}, scaled.member}, 0.5, kCfg), AccumulationError);
    std::vector<double> shallow(E.begin(), E.begin() + 64);
    CHECK_THROWS_AS(weak_pole_check(FamilyModel{shallow, scaled.member}, 0.5, kCfg), AccumulationError);
}

TEST_CASE("uniform continuity modulus") {
    const FunctionModel line = parse_function_spec("affine:3,1 on (0,1)");
    const ModulusTable t = uniform_continuity_modulus(line, line.domain(), kCfg);
    REQUIRE(t.rows.size() == 8);
    for (const ModulusRow& row : t.rows) CHECK(row.delta == doctest::Approx(row.eps / 3).epsilon(0.1));
    CHECK_FALSE(t.collapse);

    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    for (const ModulusRow& row : uniform_continuity_modulus(sq, sq.domain(), kCfg).rows) {
        CHECK(row.delta >= 0.9 * row.eps / 2);
    }

    const FunctionModel osc = parse_function_spec("sininv on (0.001,1)");
    CHECK(uniform_continuity_modulus(osc, osc.domain(), kCfg).collapse);
}

TEST_CASE("trichotomy reports") {
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    const TrichotomyReport r = classify_function(sq, sq.domain(), kCfg);
    CHECK(r.verdict == Verdict::FieldTypeEvidence);
    CHECK(r.smoothness.coverage_fraction == 1.0);
    CHECK(r.convexity.verdict == Convexity::StrictlyConvex);
    for (const SubintervalRepetition& s : r.repetition) CHECK_FALSE(s.witness.has_value());

    const FunctionModel cantor = parse_function_spec("cantor on (0,1)");
    const TrichotomyReport c = classify_function(cantor, cantor.domain(), kCfg);
    CHECK(c.verdict == Verdict::GenericallyAffine);
    REQUIRE(c.repetition.size() == 8);
    for (const SubintervalRepetition& s : c.repetition) CHECK(s.witness.has_value());

    const FunctionModel line = parse_function_spec("affine:9,9 on (0,1)");
    const TrichotomyReport l = classify_function(line, line.domain(), kCfg);
    CHECK(l.verdict == Verdict::GenericallyAffine);
    CHECK(l.affine_coverage == 1.0);
    CHECK(to_string(l.verdict) == "generically_affine");
}
