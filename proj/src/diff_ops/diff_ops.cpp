#include "tame/diff_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tame/errors.hpp"
#include "tame/parallel.hpp"

namespace tame {

namespace {

template <class F>
double difference(const F& f, double x, std::span<const double> h, std::size_t k) {
    if (k == 0) return f(x);
    return difference(f, x + h[k - 1], h, k - 1) - difference(f, x, h, k - 1);
}

int ladder_depth(int grid_n) {
    int j = 0;
    while ((2 << j) <= grid_n) ++j;
    return std::max(j, 1);
}

}  // namespace

double StepVector::norm() const noexcept {
    double m = 0.0;
    for (double s : steps) m = std::max(m, std::abs(s));
    return m;
}

std::string to_string(Sign s) {
    switch (s) {
        case Sign::NonNeg: return "nonneg";
        case Sign::NonPos: return "nonpos";
        case Sign::Mixed: return "mixed";
    }
    return "?";
}

double gen_diff(const std::function<double(double)>& f, double x, std::span<const double> h) {
    return difference(f, x, h, h.size());
}

bool is_suitable(const Interval& J, int k, const StepVector& u, double x) {
    if (!J.contains(x)) return false;
    for (double s : u.steps) {
        if (s < 0.0) return false;
    }
    return J.contains(x + k * u.norm());
}

double gen_diff(const FunctionModel& f, double x, const StepVector& h) {
    if (h.steps.empty()) throw InvalidArgument("step vector must have at least one entry");
    if (!is_suitable(f.domain(), h.order(), h, x)) {
        throw SuitabilityError("(h, " + format_real(x) + ") not suitable for " + f.domain().to_string());
    }
    auto fx = [&f](double t) { return f.eval(t); };
    return difference(fx, x, std::span<const double>(h.steps), h.steps.size());
}

Interval intersect(const Interval& a, const Interval& b) {
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (!(lo < hi)) throw DomainError("intervals " + a.to_string() + " and " + b.to_string() + " do not overlap");
    bool lo_closed = true;
    if (a.lo() == lo && !a.lo_closed()) lo_closed = false;
    if (b.lo() == lo && !b.lo_closed()) lo_closed = false;
    bool hi_closed = true;
    if (a.hi() == hi && !a.hi_closed()) hi_closed = false;
    if (b.hi() == hi && !b.hi_closed()) hi_closed = false;
    Openness o = Openness::Open;
    if (lo_closed && hi_closed) o = Openness::Closed;
    else if (lo_closed) o = Openness::HalfOpenRight;
    else if (hi_closed) o = Openness::HalfOpenLeft;
    return {lo, hi, o};
}

IdentityResiduals check_diff_identities(const FunctionModel& f, const FunctionModel& g, double x,
                                        const StepVector& h) {
    if (h.steps.empty()) throw InvalidArgument("step vector must have at least one entry");
    const Interval common = intersect(f.domain(), g.domain());
    if (!is_suitable(common, h.order(), h, x)) {
        throw SuitabilityError("(h, " + format_real(x) + ") not suitable for " + common.to_string());
    }
    auto fx = [&f](double t) { return f.eval(t); };
    auto gx = [&g](double t) { return g.eval(t); };
    auto sum = [&](double t) { return f.eval(t) + g.eval(t); };
    const std::span<const double> steps(h.steps);

    IdentityResiduals out;
    const double h1 = steps[0];
    auto first_difference = [&](double t) { return f.eval(t + h1) - f.eval(t); };
    const double lhs = difference(fx, x, steps, steps.size());
    const double rhs = difference(first_difference, x, steps.subspan(1), steps.size() - 1);
    out.composition = std::abs(lhs - rhs);

    const double split = lhs + difference(gx, x, steps, steps.size());
    out.additivity = std::abs(difference(sum, x, steps, steps.size()) - split);
    return out;
}

SignVerdict hk_test(const FunctionModel& f, const Interval& J, int k, int grid_n, double eps_value) {
    if (k < 1) throw InvalidArgument("difference order must be positive");
    if (grid_n < 8) throw InvalidArgument("grid_n must be at least 8");
    if (!f.domain().contains(J)) {
        throw DomainError(J.to_string() + " not inside domain " + f.domain().to_string());
    }
    const std::vector<double> xs = grid_points(J, grid_n);
    const int depth = ladder_depth(grid_n);
    std::vector<double> ladder;
    for (int j = 1; j <= depth; ++j) ladder.push_back(J.length() * std::ldexp(1.0, -j) / k);

    struct Row {
        double min = std::numeric_limits<double>::infinity();
        double max = -std::numeric_limits<double>::infinity();
        long long count = 0;
        std::optional<SignWitness> negative;
    };
    std::vector<Row> rows(xs.size());
    auto fx = [&f](double t) { return f.eval(t); };
    parallel_for(xs.size(), [&](std::size_t i) {
        Row& row = rows[i];
        const double x = xs[i];
        for (double h : ladder) {
            if (!J.contains(x + k * h)) continue;
            const std::vector<double> steps(static_cast<std::size_t>(k), h);
            const double v = difference(fx, x, std::span<const double>(steps), steps.size());
            row.min = std::min(row.min, v);
            row.max = std::max(row.max, v);
            ++row.count;
            if (!row.negative && v < -eps_value) row.negative = SignWitness{x, h, v};
        }
    }, 16);

    SignVerdict out;
    out.min_value = std::numeric_limits<double>::infinity();
    out.max_value = -std::numeric_limits<double>::infinity();
    std::optional<SignWitness> first_negative;
    for (const Row& row : rows) {
        out.evaluations += row.count;
        out.min_value = std::min(out.min_value, row.min);
        out.max_value = std::max(out.max_value, row.max);
        if (!first_negative && row.negative) first_negative = row.negative;
    }
    if (out.evaluations == 0) {
        throw EmptyWindowError("no suitable (x, h) pair on " + J.to_string());
    }
    if (out.min_value < -eps_value && out.max_value > eps_value) {
        out.verdict = Sign::Mixed;
        out.witness = first_negative;
    } else if (out.min_value >= -eps_value) {
        out.verdict = Sign::NonNeg;
    } else {
        out.verdict = Sign::NonPos;
    }
    return out;
}

SmoothnessCertificate certify_smoothness(const FunctionModel& f, const Interval& I, int k,
                                         const ToleranceConfig& cfg) {
    cfg.validate();
    if (k < 0) throw InvalidArgument("smoothness order must be nonnegative");
    if (!f.domain().contains(I)) {
        throw DomainError(I.to_string() + " not inside domain " + f.domain().to_string());
    }
    SmoothnessCertificate cert;
    cert.k = k;
    cert.analyzed = I;
    cert.grid_used = cfg.grid_n;
    cert.eps_value = cfg.eps_value;
    cert.max_depth = std::max(0, ladder_depth(cfg.grid_n) - 4);

    const int order = k + 2;
    const double lo = I.lo();
    const double len = I.length();

    // Cells are examined breadth-first so the output is ordered by position
    // within each depth; collected regions are sorted afterwards.
    std::vector<std::pair<int, long long>> frontier{{0, 0}};
    std::vector<CertifiedRegion> found;
    while (!frontier.empty()) {
        std::vector<std::pair<int, long long>> next;
        for (const auto& [depth, index] : frontier) {
            const double width = std::ldexp(len, -depth);
            const double cell_lo = lo + width * static_cast<double>(index);
            const double cell_hi = (index + 1 == (1LL << depth)) ? I.hi() : cell_lo + width;
            const double win_lo = std::max(lo, cell_lo - width);
            const double win_hi = std::min(I.hi(), cell_hi + width);
            const Interval window = Interval::open(win_lo, win_hi);
            const int n = std::max(8, static_cast<int>(std::lround(cfg.grid_n * (win_hi - win_lo) / len)));
            std::optional<Sign> sign;
            try {
                const SignVerdict v = hk_test(f, window, order, n, cfg.eps_value);
                if (v.verdict != Sign::Mixed) sign = v.verdict;
            } catch (const EmptyWindowError&) {
            }
            if (sign) {
                found.push_back({Interval::open(cell_lo, cell_hi), *sign});
            } else if (depth < cert.max_depth) {
                next.emplace_back(depth + 1, 2 * index);
                next.emplace_back(depth + 1, 2 * index + 1);
            }
        }
        frontier = std::move(next);
    }
    std::sort(found.begin(), found.end(),
              [](const CertifiedRegion& a, const CertifiedRegion& b) { return a.interval.lo() < b.interval.lo(); });

    double covered = 0.0;
    for (const CertifiedRegion& r : found) {
        if (!cert.regions.empty() && cert.regions.back().sign == r.sign &&
            cert.regions.back().interval.hi() == r.interval.lo()) {
            cert.regions.back().interval = Interval::open(cert.regions.back().interval.lo(), r.interval.hi());
        } else {
            cert.regions.push_back(r);
        }
        covered += r.interval.length();
    }
    cert.coverage_fraction = std::clamp(covered / len, 0.0, 1.0);
    return cert;
}

AnchorCheckReport seqset_anchor_check(const FunctionModel& f, const Interval& J, int k, const SequenceSet& D,
                                      int grid_n, double eps_value) {
    if (k < 1) throw InvalidArgument("difference order must be positive");
    if (grid_n < 8) throw InvalidArgument("grid_n must be at least 8");
    if (!f.domain().contains(J)) {
        throw DomainError(J.to_string() + " not inside domain " + f.domain().to_string());
    }
    for (double d : D.values) {
        if (!(d > 0.0)) throw InvalidArgument("sequence set members must be positive");
    }
    auto fx = [&f](double t) { return f.eval(t); };
    const double len = J.length();

    // Anchored scan: first step from D, remaining steps from a dyadic ladder.
    std::vector<double> ladder;
    for (int j = 1; j <= 6; ++j) ladder.push_back(len * std::ldexp(1.0, -j) / k);
    const std::vector<double> xs = grid_points(J, grid_n);

    auto for_each_tuple = [](const std::vector<double>& alphabet, int length, auto&& visit) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
        std::vector<double> tuple(static_cast<std::size_t>(length));
        while (true) {
            for (std::size_t i = 0; i < idx.size(); ++i) tuple[i] = alphabet[idx[i]];
            visit(tuple);
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == alphabet.size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
        }
    };

    struct Acc {
        double min = std::numeric_limits<double>::infinity();
        long long count = 0;
    };
    std::vector<Acc> anchored(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        const double x = xs[i];
        std::vector<double> steps(static_cast<std::size_t>(k));
        for (double d : D.values) {
            steps[0] = d;
            for_each_tuple(ladder, k - 1, [&](const std::vector<double>& rest) {
                std::copy(rest.begin(), rest.end(), steps.begin() + 1);
                const StepVector u{steps};
                if (!is_suitable(J, k, u, x)) return;
                const double v = difference(fx, x, std::span<const double>(steps), steps.size());
                anchored[i].min = std::min(anchored[i].min, v);
                ++anchored[i].count;
            });
        }
    }, 8);

    // Unrestricted scan: x grid shifted by half a cell, steps on a uniform grid.
    std::vector<double> uniform_steps;
    constexpr int kUniformSteps = 8;
    for (int m = 1; m <= kUniformSteps; ++m) uniform_steps.push_back(len / k * m / (kUniformSteps + 1));
    std::vector<double> shifted;
    const double half = 0.5 * (xs[1] - xs[0]);
    for (double x : xs) {
        if (J.contains(x + half)) shifted.push_back(x + half);
    }
    std::vector<Acc> free_scan(shifted.size());
    parallel_for(shifted.size(), [&](std::size_t i) {
        const double x = shifted[i];
        for_each_tuple(uniform_steps, k, [&](const std::vector<double>& steps) {
            const StepVector u{steps};
            if (!is_suitable(J, k, u, x)) return;
            const double v = difference(fx, x, std::span<const double>(steps), steps.size());
            free_scan[i].min = std::min(free_scan[i].min, v);
            ++free_scan[i].count;
        });
    }, 8);

    AnchorCheckReport out;
    out.anchored_min = std::numeric_limits<double>::infinity();
    out.unrestricted_min = std::numeric_limits<double>::infinity();
    for (const Acc& a : anchored) {
        out.anchored_min = std::min(out.anchored_min, a.min);
        out.anchored_evaluations += a.count;
    }
    for (const Acc& a : free_scan) {
        out.unrestricted_min = std::min(out.unrestricted_min, a.min);
        out.unrestricted_evaluations += a.count;
    }
    if (out.anchored_evaluations == 0 || out.unrestricted_evaluations == 0) {
        throw EmptyWindowError("no suitable anchored or unrestricted pair on " + J.to_string());
    }
    out.anchored_nonneg = out.anchored_min >= -eps_value;
    out.unrestricted_nonneg = out.unrestricted_min >= -eps_value;
    out.implication_held = !(out.anchored_nonneg && !out.unrestricted_nonneg);
    out.worst_violation = std::max(0.0, -out.unrestricted_min);
    return out;
}

}  // namespace tame
