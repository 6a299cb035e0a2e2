// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/catalog.hpp"
#include "tame/base_r.hpp"
#include "tame/classify.hpp"
#include "tame/cli.hpp"
#include "tame/diff_ops.hpp"
#include "tame/field_synth.hpp"
#include "tame/seqsets.hpp"

namespace {

using namespace tame;
using tame::testing::catalog_models;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + what;
    }
}

// Draws a step vector and base point with x + k*|h| inside J.
std::pair<StepVector, double> draw_suitable(const Interval& J, int k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        StepVector h;
        for (int i = 0; i < k; ++i) h.steps.push_back(J.length() / (2.0 * k) * (0.01 + 0.99 * unit(rng)));
        const double lo = J.lo() + 1e-6 * J.length();
        const double x = lo + (J.hi() - k * h.norm() - lo) * unit(rng);
        if (is_suitable(J, k, h, x)) return {h, x};
    }
}

Outcome c1_differences() {
    Outcome o;
    const auto fns = catalog_models();
    std::mt19937_64 rng(1);
    double expansion = 0.0;
    double permutation = 0.0;
    for (const FunctionModel& f : fns) {
        auto fx = [&f](double t) { return f.eval(t); };
        for (int k = 1; k <= 5; ++k) {
            for (int t = 0; t < 100; ++t) {
                auto [h, x] = draw_suitable(f.domain(), k, rng);
                const double v = gen_diff(f, x, h);
                expansion = std::max(expansion, std::abs(v - tame::testing::expansion_oracle(fx, x, h.steps)));
                StepVector shuffled = h;
                std::shuffle(shuffled.steps.begin(), shuffled.steps.end(), rng);
                permutation = std::max(permutation, std::abs(v - gen_diff(f, x, shuffled)));
            }
        }
    }
    double identities = 0.0;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(fns.size()) - 1);
    std::uniform_int_distribution<int> order(1, 5);
    for (int t = 0; t < 1000; ++t) {
        const FunctionModel& f = fns[pick(rng)];
        const FunctionModel& g = fns[pick(rng)];
        const Interval J = intersect(f.domain(), g.domain());
        auto [h, x] = draw_suitable(J, order(rng), rng);
        const IdentityResiduals r = check_diff_identities(f, g, x, h);
        identities = std::max({identities, r.composition, r.additivity});
    }
    require(o, expansion <= 1e-12, "expansion residual " + fmt(expansion));
    require(o, permutation <= 1e-12, "permutation residual " + fmt(permutation));
    require(o, identities <= 1e-12, "identity residual " + fmt(identities));
    if (o.pass) {
        o.detail = "expansion " + fmt(expansion) + ", permutation " + fmt(permutation) + ", identities " +
                   fmt(identities) + " over 1000 inputs";
    }
    return o;
}

Outcome c2_certification() {
    Outcome o;
    ToleranceConfig cfg;
    cfg.grid_n = 4096;
    const FunctionModel quartic = parse_function_spec("poly:[1,0,0,0,0] on (0,1)");
    const SmoothnessCertificate c4 = certify_smoothness(quartic, quartic.domain(), 2, cfg);
    require(o, c4.coverage_fraction == 1.0, "x^4 coverage " + fmt(c4.coverage_fraction));

    const FunctionModel kink = parse_function_spec("abs-shift:0.5 on (0,1)");
    const SmoothnessCertificate ck = certify_smoothness(kink, kink.domain(), 1, cfg);
    require(o, ck.coverage_fraction >= 0.90, "|x-1/2| coverage " + fmt(ck.coverage_fraction));
    const double lo = 0.5 - std::ldexp(1.0, -8);
    const double hi = 0.5 + std::ldexp(1.0, -8);
    for (const CertifiedRegion& r : ck.regions) {
        require(o, r.interval.hi() <= lo || r.interval.lo() >= hi, "region " + r.interval.to_string() + " meets the kink");
    }

    const FunctionModel w = parse_function_spec("weier:12 on (0,1)");
    const SmoothnessCertificate cw = certify_smoothness(w, w.domain(), 2, cfg);
    require(o, cw.coverage_fraction <= 0.05, "weier coverage " + fmt(cw.coverage_fraction));
    if (o.pass) {
        o.detail = "coverage x^4 " + fmt(c4.coverage_fraction) + ", |x-1/2| " + fmt(ck.coverage_fraction) +
                   ", weier:12 " + fmt(cw.coverage_fraction);
    }
    return o;
}

Outcome c3_anchor() {
    Outcome o;
    const SequenceSet D = geometric_sequence_set(2.0, 20);
    const char* convex[] = {"poly:[1,0,0] on (0,1)", "poly:[1,0,0,0,0] on (0,1)", "exp on (0,1)",
                            "abs-shift:0.5 on (0,1)", "expr:(recip (poly [1,1] x)) on (0,1)"};
    double worst = 0.0;
    for (const char* spec : convex) {
        const FunctionModel f = parse_function_spec(spec);
        const AnchorCheckReport r = seqset_anchor_check(f, f.domain(), 2, D, 256);
        require(o, r.implication_held, std::string(spec) + " implication failed");
        require(o, r.anchored_nonneg == r.unrestricted_nonneg, std::string(spec) + " scans disagree");
        require(o, r.worst_violation <= 1e-9, std::string(spec) + " violation " + fmt(r.worst_violation));
        worst = std::max(worst, r.worst_violation);
    }
    if (o.pass) o.detail = "5 convex functions agree, worst violation " + fmt(worst);
    return o;
}

Outcome c4_classifier() {
    Outcome o;
    ToleranceConfig cfg;
    int convex_count = 0;
    for (const FunctionModel& f : catalog_models()) {
        const ConvexityResult c = strict_convexity_test(f, f.domain(), 256, cfg);
        if (c.verdict != Convexity::StrictlyConvex) continue;
        ++convex_count;
        const auto w = find_repetition_witness(f, f.domain(), f.domain().length() / 32.0, cfg);
        require(o, !w.has_value(), f.to_string() + " is strictly convex yet repetitious");
    }
    const FunctionModel saw = parse_function_spec("sawtooth:0.25 on (0,1)");
    const auto sw = find_repetition_witness(saw, saw.domain(), 1.0 / 32.0, cfg);
    require(o, sw && sw->max_residual <= 1e-9, "sawtooth has no witness within 1e-9");

    const FunctionModel cantor = parse_function_spec("cantor on (0,1)");
    const AffineRegions ar = locally_affine_regions(cantor, cantor.domain(), cfg, 12);
    require(o, ar.coverage >= 0.9, "cantor affine coverage " + fmt(ar.coverage));
    int subintervals = 0;
    for (int level = 0; level <= 3; ++level) {
        const double len = std::ldexp(1.0, -level);
        for (int i = 0; i < (1 << level); ++i) {
            const Interval J = Interval::open(i * len, (i + 1) * len);
            ++subintervals;
            require(o, find_repetition_witness(cantor, J, len / 32.0, cfg).has_value(),
                    "cantor has no witness on " + J.to_string());
        }
    }
    if (o.pass) {
        o.detail = std::to_string(convex_count) + " strictly convex, 0 violations; sawtooth residual " +
                   fmt(sw->max_residual) + "; cantor coverage " + fmt(ar.coverage) + ", witnesses on " +
                   std::to_string(subintervals) + " dyadic subintervals";
    }
    return o;
}

Outcome c5_field() {
    Outcome o;
    ToleranceConfig cfg;
    const FunctionModel sq = parse_function_spec("poly:[1,0,0] on (0,1)");
    const FieldStructure fs = build_field(normalize(sq, sq.domain(), cfg), cfg);
    const AxiomReport r = verify_field_axioms(fs, 1000, cfg);
    require(o, r.max_residual <= 1e-6, "max residual " + fmt(r.max_residual));
    require(o, r.order_violations == 0, std::to_string(r.order_violations) + " order violations");
    require(o, tau(fs, 0.0) == 0.0, "tau(0) != 0");
    require(o, tau(fs, fs.b) == 1.0, "tau(b) != 1");
    require(o, fs.branches_disjoint, "branches overlap");
    if (o.pass) {
        o.detail = "max residual " + fmt(r.max_residual) + ", 0 order violations, tau(0)=0, tau(b)=1, b=" + fmt(fs.b);
    }
    return o;
}

Outcome c6_dimension() {
    Outcome o;
    std::vector<double> harmonic;
    for (int n = 1; n <= 10000; ++n) harmonic.push_back(1.0 / n);
    std::vector<double> geometric;
    for (int n = 1; n <= 40; ++n) geometric.push_back(std::ldexp(1.0, -n));
    const std::vector<double> cantor = tame::testing::cantor_endpoints(12);

    const ScaleRange scales;
    struct Row {
        const char* name;
        double assouad;
        double box;
    };
    std::vector<Row> rows;
    const std::vector<std::pair<const char*, const std::vector<double>*>> sets = {
        {"1/n", &harmonic}, {"2^-n", &geometric}, {"cantor", &cantor}};
    for (const auto& [name, xs] : sets) {
        const PointSet pts = PointSet::line(*xs);
        rows.push_back(Row{name, assouad_estimate(pts, scales).estimate, box_dimension_estimate(pts, scales).estimate});
    }
    const double log32 = std::log(2.0) / std::log(3.0);
    require(o, rows[0].assouad >= 0.8, "1/n assouad " + fmt(rows[0].assouad));
    require(o, rows[1].assouad <= 0.2, "2^-n assouad " + fmt(rows[1].assouad));
    require(o, std::abs(rows[2].assouad - log32) <= 0.08, "cantor assouad " + fmt(rows[2].assouad));
    require(o, std::abs(rows[2].box - log32) <= 0.08, "cantor box " + fmt(rows[2].box));
    for (const Row& r : rows) {
        require(o, r.assouad >= r.box - 0.1, std::string(r.name) + " assouad below box");
    }
    if (o.pass) {
        for (const Row& r : rows) {
            o.detail += (o.detail.empty() ? "" : ", ") + std::string(r.name) + " A=" + fmt(r.assouad) + " B=" + fmt(r.box);
        }
    }
    return o;
}

Outcome c7_omega() {
    Outcome o;
    const std::vector<double> A = {1.0, 1.0 / 2, 1.0 / 3, 1.0 / 4};
    const OmegaOrder w = omega_order(A);
    const std::vector<double> elements = {1.0, 1.0 / 2, 1.0 / 4, 1.0 / 3};
    const std::vector<double> deltas = {1.0 / 2, 1.0 / 6, 1.0 / 12, 1.0 / 12};
    require(o, w.elements == elements, "element order differs");
    require(o, w.delta_values.size() == deltas.size(), "delta count differs");
    for (std::size_t i = 0; o.pass && i < deltas.size(); ++i) {
        require(o, std::abs(w.delta_values[i] - deltas[i]) <= 4 * std::numeric_limits<double>::epsilon() * deltas[i],
                "delta " + std::to_string(i) + " = " + fmt(w.delta_values[i]));
    }
    if (o.pass) o.detail = "[1, 1/2, 1/4, 1/3] with delta [1/2, 1/6, 1/12, 1/12]";
    return o;
}

Outcome c8_difference_sets() {
    Outcome o;
    std::set<double> farey;
    for (int q = 1; q <= 20; ++q) {
        for (int p = 0; p <= q; ++p) farey.insert(static_cast<double>(p) / q);
    }
    const std::vector<double> C(farey.begin(), farey.end());
    std::vector<double> D;
    for (double c : C) D.push_back(std::sqrt(2.0) * c);
    const auto cross = difference_set_intersection(C, D, 1e-12);
    require(o, cross.empty(), std::to_string(cross.size()) + " matches for sqrt2*C");

    std::set<double> diffs;
    for (std::size_t i = 0; i < C.size(); ++i) {
        for (std::size_t j = i + 1; j < C.size(); ++j) diffs.insert(C[j] - C[i]);
    }
    const auto self = difference_set_intersection(C, C, 1e-12);
    require(o, self.size() == diffs.size(), std::to_string(self.size()) + " of " + std::to_string(diffs.size()) + " self matches");
    for (const DifferenceMatch& m : self) {
        if (m.c_difference != m.d_difference) {
            require(o, false, "self match pairs distinct differences");
            break;
        }
    }
    if (o.pass) o.detail = "sqrt2*C: 0 matches; C=C: " + std::to_string(self.size()) + " of " + std::to_string(diffs.size());
    return o;
}

Outcome c9_base_r() {
    Outcome o;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    for (int r : {2, 3, 10}) {
        const int p = std::min(20, max_precision(r));
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const double x = real(rng);
            for (const DigitWord& w : encode(x, r, p)) worst = std::max(worst, std::abs(decode(w) - x));
        }
        require(o, worst <= std::pow(static_cast<double>(r), -p), "base " + std::to_string(r) + " round trip " + fmt(worst));
    }
    require(o, v_r(0.5, 0.25, 1, 2, 8), "V_2(0.5, 1/4, 1) is false");

    const SetModel half = SetModel::graph([](double x) { return x / 2.0; });
    const SetModel square = SetModel::graph([](double x) { return x * x; });
    const TrendReport th = recognizability_trend(half, 2, 4, 10);
    const TrendReport ts = recognizability_trend(square, 2, 4, 10);
    require(o, th.verdict == Trend::Bounded, "x/2 trend " + to_string(th.verdict));
    require(o, ts.verdict == Trend::Growing, "x^2 trend " + to_string(ts.verdict));
    const auto& c = ts.counts;
    require(o, c.size() >= 3 && c[c.size() - 3].second < c[c.size() - 2].second && c[c.size() - 2].second < c.back().second,
            "x^2 counts not strictly increasing at the end");
    if (o.pass) {
        o.detail = "round trips within r^-p; V_2 true; x/2 bounded at " + std::to_string(th.counts.back().second) +
                   ", x^2 growing to " + std::to_string(c.back().second);
    }
    return o;
}

Outcome c10_determinism() {
    Outcome o;
    const char* argv[] = {"tame-analysis", "classify", "--fn", "poly:[1,0,0] on (0,1)", "--seed", "7"};
    std::ostringstream out1, err1, out2, err2;
    const int rc1 = tame::cli::main_entry(6, argv, out1, err1);
    const int rc2 = tame::cli::main_entry(6, argv, out2, err2);
    require(o, rc1 == 0 && rc2 == 0, "exit codes " + std::to_string(rc1) + "," + std::to_string(rc2));
    require(o, !out1.str().empty() && out1.str() == out2.str(), "reports differ");
    if (o.pass) o.detail = std::to_string(out1.str().size()) + " identical bytes";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"difference operators", c1_differences},
        {"smoothness certification", c2_certification},
        {"anchored vs unrestricted check", c3_anchor},
        {"classifier consistency", c4_classifier},
        {"field synthesis", c5_field},
        {"dimension dichotomy", c6_dimension},
        {"omega-order", c7_omega},
        {"difference sets", c8_difference_sets},
        {"base-r encoding", c9_base_r},
        {"determinism", c10_determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << name << " (" << fmt(secs) << " s): " << o.detail
                  << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
