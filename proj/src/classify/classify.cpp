#include "tame/classify.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <random>

#include "tame/errors.hpp"
#include "tame/parallel.hpp"

namespace tame {

namespace {

void require_inside(const FunctionModel& f, const Interval& J) {
    if (!f.domain().contains(J)) {
        throw DomainError(J.to_string() + " not inside domain " + f.domain().to_string());
    }
}

std::vector<double> values_at(const FunctionModel& f, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = f.eval(xs[i]); });
    return out;
}

double defect_on_grid(const FunctionModel& f, const std::vector<double>& xs, const std::vector<double>& fs,
                      std::size_t i) {
    double m = 0.0;
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
        m = std::max(m, std::abs(0.5 * (fs[i] + fs[j]) - f.eval(0.5 * (xs[i] + xs[j]))));
    }
    return m;
}

}  // namespace

std::string to_string(Convexity c) {
    switch (c) {
        case Convexity::StrictlyConvex: return "strictly_convex";
        case Convexity::StrictlyConcave: return "strictly_concave";
        case Convexity::Neither: return "neither";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::FieldTypeEvidence: return "field_type_evidence";
        case Verdict::GenericallyAffine: return "generically_affine";
        case Verdict::TypeBConsistent: return "type_b_consistent";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<RepetitionWitness> find_repetition_witness(const FunctionModel& f, const Interval& J, double min_delta,
                                                         const ToleranceConfig& cfg) {
    cfg.validate();
    require_inside(f, J);
    if (!(min_delta > 0.0)) throw InvalidArgument("min_delta must be positive");
    constexpr int kEpsSteps = 64;
    const double delta = min_delta;
    const std::vector<double> xs = grid_points(J, cfg.grid_n);
    for (int j = 1;; ++j) {
        const double s = J.length() * std::ldexp(1.0, -j);
        if (!(s > min_delta)) break;
        std::vector<double> residual(xs.size(), std::numeric_limits<double>::infinity());
        parallel_for(xs.size(), [&](std::size_t i) {
            const double x = xs[i];
            const double y = x + s;
            if (!J.contains(y) || !J.contains(y + delta * (kEpsSteps - 1) / kEpsSteps)) return;
            const double fx = f.eval(x);
            const double fy = f.eval(y);
            double worst = 0.0;
            for (int e = 0; e < kEpsSteps; ++e) {
                const double eps = delta * e / kEpsSteps;
                worst = std::max(worst, std::abs(f.eval(x + eps) - fx - f.eval(y + eps) + fy));
                if (worst > cfg.eps_value) break;
            }
            residual[i] = worst;
        }, 16);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (residual[i] <= cfg.eps_value) return RepetitionWitness{xs[i], xs[i] + s, delta, residual[i]};
        }
    }
    return std::nullopt;
}

ConvexityResult strict_convexity_test(const FunctionModel& f, const Interval& J, int grid_n,
                                      const ToleranceConfig& cfg) {
    cfg.validate();
    require_inside(f, J);
    if (grid_n < 8) throw InvalidArgument("grid_n must be at least 8");
    const std::vector<double> xs = grid_points(J, grid_n);
    const std::vector<double> fs = values_at(f, xs);
    const auto n = static_cast<long long>(xs.size());

    ConvexityResult out;
    out.min_slack = std::numeric_limits<double>::infinity();
    out.max_slack = -std::numeric_limits<double>::infinity();
    auto visit = [&](long long a, long long b, long long c, long long d) {
        const double left = (fs[b] - fs[a]) / (xs[b] - xs[a]);
        const double right = (fs[d] - fs[c]) / (xs[d] - xs[c]);
        const double slack = right - left;
        out.min_slack = std::min(out.min_slack, slack);
        out.max_slack = std::max(out.max_slack, slack);
        ++out.quadruples;
    };

    constexpr long long kBudget = 1'000'000;
    // i < j <= k < l: C(n,4) with j < k plus C(n,3) with j == k.
    const long double total = static_cast<long double>(n) * (n - 1) * (n - 2) * (n - 3) / 24.0L +
                              static_cast<long double>(n) * (n - 1) * (n - 2) / 6.0L;
    if (total <= kBudget) {
        for (long long a = 0; a < n; ++a)
            for (long long b = a + 1; b < n; ++b)
                for (long long c = b; c < n; ++c)
                    for (long long d = c + 1; d < n; ++d) visit(a, b, c, d);
    } else {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<long long> pick(0, n - 1);
        while (out.quadruples < kBudget) {
            long long q[4] = {pick(rng), pick(rng), pick(rng), pick(rng)};
            std::sort(q, q + 4);
            if (q[0] == q[1] || q[2] == q[3]) continue;
            visit(q[0], q[1], q[2], q[3]);
        }
    }
    if (out.min_slack > cfg.eps_value) out.verdict = Convexity::StrictlyConvex;
    else if (out.max_slack < -cfg.eps_value) out.verdict = Convexity::StrictlyConcave;
    else out.verdict = Convexity::Neither;
    return out;
}

double midpoint_affine_defect(const FunctionModel& f, const Interval& J, int grid_n) {
    require_inside(f, J);
    if (grid_n < 2) throw InvalidArgument("grid_n must be at least 2");
    const std::vector<double> xs = grid_points(J, grid_n);
    const std::vector<double> fs = values_at(f, xs);
    std::vector<double> row(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) { row[i] = defect_on_grid(f, xs, fs, i); }, 8);
    return *std::max_element(row.begin(), row.end());
}

AffineRegions locally_affine_regions(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg,
                                     int max_depth) {
    cfg.validate();
    require_inside(f, I);
    if (max_depth < 0 || max_depth > 30) throw InvalidArgument("max_depth must be in [0,30]");
    constexpr int kCellGrid = 16;
    const double len = I.length();

    struct Cell {
        int depth;
        long long index;
    };
    std::vector<Cell> frontier{{0, 0}};
    std::vector<std::pair<double, double>> affine;
    while (!frontier.empty()) {
        std::vector<char> is_affine(frontier.size(), 0);
        parallel_for(frontier.size(), [&](std::size_t c) {
            const Cell cell = frontier[c];
            const double width = std::ldexp(len, -cell.depth);
            const double lo = I.lo() + width * static_cast<double>(cell.index);
            const double hi = (cell.index + 1 == (1LL << cell.depth)) ? I.hi() : lo + width;
            const std::vector<double> xs = grid_points(Interval::open(lo, hi), kCellGrid);
            std::vector<double> fs(xs.size());
            double scale = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                fs[i] = f.eval(xs[i]);
                scale = std::max(scale, std::abs(fs[i]));
            }
            double defect = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) defect = std::max(defect, defect_on_grid(f, xs, fs, i));
            const double cutoff = std::max(cfg.eps_value * std::ldexp(1.0, -cell.depth), 16 * DBL_EPSILON * scale);
            is_affine[c] = defect <= cutoff ? 1 : 0;
        }, 4);
        std::vector<Cell> next;
        for (std::size_t c = 0; c < frontier.size(); ++c) {
            const Cell cell = frontier[c];
            const double width = std::ldexp(len, -cell.depth);
            const double lo = I.lo() + width * static_cast<double>(cell.index);
            const double hi = (cell.index + 1 == (1LL << cell.depth)) ? I.hi() : lo + width;
            if (is_affine[c]) {
                affine.emplace_back(lo, hi);
            } else if (cell.depth < max_depth) {
                next.push_back({cell.depth + 1, 2 * cell.index});
                next.push_back({cell.depth + 1, 2 * cell.index + 1});
            }
        }
        frontier = std::move(next);
    }
    std::sort(affine.begin(), affine.end());
    AffineRegions out;
    out.max_depth = max_depth;
    double covered = 0.0;
    std::vector<std::pair<double, double>> merged;
    for (const auto& [lo, hi] : affine) {
        covered += hi - lo;
        if (!merged.empty() && merged.back().second == lo) merged.back().second = hi;
        else merged.emplace_back(lo, hi);
    }
    for (const auto& [lo, hi] : merged) out.regions.push_back(Interval::open(lo, hi));
    out.coverage = std::clamp(covered / len, 0.0, 1.0);
    return out;
}

WeakPoleResult weak_pole_check(const FamilyModel& fam, double delta_target, const ToleranceConfig& cfg) {
    cfg.validate();
    if (!(delta_target > 0.0)) throw InvalidArgument("delta_target must be positive");
    if (!fam.member) throw InvalidArgument("family has no member function");
    const auto& E = fam.index_set;
    if (E.size() < 8) throw AccumulationError("index set needs at least 8 members, got " + std::to_string(E.size()));
    for (double d : E) {
        if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("index set members must be positive");
    }
    const auto [lo_it, hi_it] = std::minmax_element(E.begin(), E.end());
    if (!(*lo_it < *hi_it / 100.0)) {
        throw AccumulationError("smallest member " + format_real(*lo_it) + " is not below largest/100");
    }

    WeakPoleResult out;
    out.images.resize(E.size());
    parallel_for(E.size(), [&](std::size_t i) {
        const double d = E[i];
        const FunctionModel h = fam.member(d);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        const int n = cfg.grid_n;
        for (int t = 0; t < n; ++t) {
            const double v = h.eval_closure(d * t / (n - 1));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.images[i] = {d, lo, hi};
    }, 1);
    double delta = std::numeric_limits<double>::infinity();
    for (const auto& [d, lo, hi] : out.images) {
        if (lo > cfg.eps_value) {
            delta = 0.0;
            break;
        }
        delta = std::min(delta, hi);
    }
    out.delta = std::max(0.0, delta);
    out.weak_pole = out.delta > 0.0 && out.delta >= delta_target;
    return out;
}

ModulusTable uniform_continuity_modulus(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg) {
    cfg.validate();
    require_inside(f, I);
    constexpr int kLevels = 8;
    const int n = 16 * cfg.grid_n;
    const std::vector<double> xs = grid_points(I, n);
    const std::vector<double> fs = values_at(f, xs);
    const double h = xs[1] - xs[0];

    std::vector<double> eps(kLevels);
    for (int j = 0; j < kLevels; ++j) eps[j] = std::ldexp(1.0, -(j + 1));
    // first_fail[j]: smallest distance m (in grid steps) whose gap reaches eps[j].
    std::vector<long long> first_fail(kLevels, -1);
    double gap = 0.0;
    constexpr std::size_t kBatch = 256;
    std::size_t m = 1;
    while (m < xs.size() && first_fail[0] < 0) {
        const std::size_t count = std::min(kBatch, xs.size() - m);
        std::vector<double> batch(count, 0.0);
        parallel_for(count, [&](std::size_t b) {
            const std::size_t dist = m + b;
            double worst = 0.0;
            for (std::size_t i = 0; i + dist < xs.size(); ++i) worst = std::max(worst, std::abs(fs[i + dist] - fs[i]));
            batch[b] = worst;
        }, 4);
        for (std::size_t b = 0; b < count; ++b) {
            gap = std::max(gap, batch[b]);
            for (int j = 0; j < kLevels; ++j) {
                if (first_fail[j] < 0 && gap >= eps[j]) first_fail[j] = static_cast<long long>(m + b);
            }
        }
        m += count;
    }
    ModulusTable out;
    out.grid_points = n;
    for (int j = 0; j < kLevels; ++j) {
        const double delta = first_fail[j] < 0 ? xs.back() - xs.front() : h * static_cast<double>(first_fail[j] - 1);
        out.rows.push_back({eps[j], delta});
    }
    const double first_ratio = out.rows.front().delta / out.rows.front().eps;
    const double last_ratio = out.rows.back().delta / out.rows.back().eps;
    out.collapse = std::any_of(out.rows.begin(), out.rows.end(), [](const ModulusRow& r) { return r.delta == 0.0; }) ||
                   last_ratio < first_ratio / 8.0;
    return out;
}

TrichotomyReport classify_function(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg) {
    cfg.validate();
    require_inside(f, I);
    TrichotomyReport out{certify_smoothness(f, I, 2, cfg), strict_convexity_test(f, I, cfg.grid_n, cfg), {},
                         locally_affine_regions(f, I, cfg, kClassifyAffineDepth), 0.0, Verdict::Inconclusive};
    out.affine_coverage = out.affine.coverage;

    constexpr int kParts = 8;
    const double part = I.length() / kParts;
    bool witness_everywhere = true;
    for (int i = 0; i < kParts; ++i) {
        const double lo = I.lo() + part * i;
        const double hi = i + 1 == kParts ? I.hi() : lo + part;
        const Interval sub = Interval::open(lo, hi);
        auto w = find_repetition_witness(f, sub, part / 32.0, cfg);
        if (!w) witness_everywhere = false;
        out.repetition.push_back({sub, w});
    }

    bool non_affine_c2 = false;
    for (const CertifiedRegion& r : out.smoothness.regions) {
        if (midpoint_affine_defect(f, r.interval, 64) > cfg.eps_value) {
            non_affine_c2 = true;
            break;
        }
    }
    if (out.affine_coverage >= 0.95) out.verdict = Verdict::GenericallyAffine;
    else if (non_affine_c2) out.verdict = Verdict::FieldTypeEvidence;
    else if (witness_everywhere && out.affine_coverage < 0.05) out.verdict = Verdict::TypeBConsistent;
    else out.verdict = Verdict::Inconclusive;
    return out;
}

}  // namespace tame
