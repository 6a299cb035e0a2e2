#include "tame/field_synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tame/classify.hpp"
#include "tame/errors.hpp"
#include "tame/parallel.hpp"

namespace tame {

namespace {

// Bisection for the crossing of g between lo (g < 0) and hi (g >= 0).
template <class G>
double bisect(const G& g, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return hi;
}

double slope(const FunctionModel& f, double x, const ToleranceConfig& cfg) {
    return derivative_inward(f, x, 1, cfg);
}

struct Run {
    std::size_t begin = 0;
    std::size_t end = 0;  // inclusive
};

// Longest run of strictly monotone consecutive values, at least min_cells long.
std::optional<Run> longest_monotone_run(const std::vector<double>& d, double margin, std::size_t min_cells) {
    std::optional<Run> best;
    for (int dir : {+1, -1}) {
        std::size_t start = 0;
        for (std::size_t i = 1; i <= d.size(); ++i) {
            const bool continues = i < d.size() && dir * (d[i] - d[i - 1]) > margin;
            if (continues) continue;
            const std::size_t cells = i - 1 - start;
            if (cells >= min_cells && (!best || cells > best->end - best->begin ||
                                       (cells == best->end - best->begin && start < best->begin))) {
                best = Run{start, i - 1};
            }
            start = i;
        }
    }
    return best;
}

struct ESample {
    std::vector<double> x;
    std::vector<int> index;
};

ESample scan_E(const NormalizedFunction& nf, int grid_n, const ToleranceConfig& cfg) {
    if (grid_n < 2) throw InvalidArgument("grid_n must be at least 2");
    const std::vector<double> xs = grid_points(Interval::closed(0.0, nf.b), grid_n);
    std::vector<double> d(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { d[i] = slope(nf.f, xs[i], cfg); });
    ESample out;
    double running = d[0];
    out.x.push_back(0.0);
    out.index.push_back(0);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (d[i] > running + cfg.eps_deriv) {
            running = d[i];
            out.x.push_back(xs[i]);
            out.index.push_back(static_cast<int>(i));
        }
    }
    out.x.push_back(nf.b);
    out.index.push_back(static_cast<int>(xs.size() - 1));
    return out;
}

double snap_tolerance(const FieldStructure& fs) { return 1e-12 * std::max(1.0, fs.b); }

// Membership of y in E: near a sample, or inside a segment between samples
// that are adjacent on the grid.
bool in_E(const FieldStructure& fs, double y) {
    const double tol = snap_tolerance(fs);
    if (y < -tol || y > fs.b + tol) return false;
    const auto it = std::lower_bound(fs.E.begin(), fs.E.end(), y);
    const auto k = static_cast<std::size_t>(it - fs.E.begin());
    if (k < fs.E.size() && fs.E[k] - y <= tol) return true;
    if (k > 0 && y - fs.E[k - 1] <= tol) return true;
    return k > 0 && k < fs.E.size() && fs.E_index[k] == fs.E_index[k - 1] + 1;
}

// tau on E.
double tau_E(const FieldStructure& fs, double y) {
    const double tol = snap_tolerance(fs);
    if (std::abs(y) <= tol) return 0.0;
    if (std::abs(y - fs.b) <= tol) return 1.0;
    return slope(fs.nf.f, y, fs.cfg);
}

// Inverse of tau on E for t in [0, 1].
double tau_inv_E(const FieldStructure& fs, double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return fs.b;
    const auto it = std::lower_bound(fs.tau_E.begin(), fs.tau_E.end(), t);
    const auto k = static_cast<std::size_t>(it - fs.tau_E.begin());
    if (fs.tau_E[k] == t) return fs.E[k];
    if (fs.E_index[k] == fs.E_index[k - 1] + 1) {
        return bisect([&](double x) { return tau_E(fs, x) - t; }, fs.E[k - 1], fs.E[k]);
    }
    return (t - fs.tau_E[k - 1] < fs.tau_E[k] - t) ? fs.E[k - 1] : fs.E[k];
}

}  // namespace

NormalizedFunction normalize(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg) {
    cfg.validate();
    if (!f.domain().contains(I)) {
        throw DomainError(I.to_string() + " not inside domain " + f.domain().to_string());
    }
    const double defect = midpoint_affine_defect(f, I, 64);
    if (defect <= cfg.eps_value) {
        throw AffineInputError("midpoint defect " + format_real(defect) + " on " + I.to_string());
    }
    const std::vector<double> xs = grid_points(I.closure(), cfg.grid_n);
    std::vector<double> d(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { d[i] = slope(f, xs[i], cfg); });
    const auto [lo_it, hi_it] = std::minmax_element(d.begin(), d.end());
    if (*hi_it - *lo_it <= cfg.eps_deriv) {
        throw MonotonicityError("derivative range " + format_real(*hi_it - *lo_it) + " within eps_deriv");
    }

    NormalizationProvenance prov;
    std::size_t p = 0;
    std::size_t r = 0;
    if (auto run = longest_monotone_run(d, 1e-3 * cfg.eps_deriv, 8)) {
        p = run->begin;
        r = run->end;
    } else {
        prov.case_ii = true;
        const auto i_min = static_cast<std::size_t>(lo_it - d.begin());
        const auto i_max = static_cast<std::size_t>(hi_it - d.begin());
        p = std::min(i_min, i_max);
        r = std::max(i_min, i_max);
    }
    prov.a0 = xs[p];
    prov.b0 = xs[r];
    const double s = d[p] > d[r] ? -1.0 : 1.0;
    prov.sign_flipped = s < 0.0;
    for (double& v : d) v *= s;
    auto signed_slope = [&](double x) { return s * slope(f, x, cfg); };

    // Rational shift of the slope.
    const double da = d[p];
    const double db = d[r];
    std::size_t c_index = p;
    prov.c = prov.a0;
    if (std::abs(da) > cfg.eps_deriv) {
        double q = std::round(0.5 * (da + db) * 65536.0) / 65536.0;
        if (!(q > da && q < db)) q = 0.5 * (da + db);
        prov.q = q;
        prov.q_applied = true;
        std::size_t k = r;
        while (k > p && d[k - 1] > q) --k;
        // d[k-1] <= q < d[k]
        c_index = k - 1;
        prov.c = d[c_index] == q ? xs[c_index]
                                 : bisect([&](double x) { return signed_slope(x) - q; }, xs[k - 1], xs[k]);
    }

    const double slope_b = db - prov.q;
    prov.N = (slope_b < 1.0 - cfg.eps_deriv) ? static_cast<int>(std::ceil(1.0 / slope_b)) : 1;
    const double N = prov.N;
    auto scaled = [&](double x) { return N * (signed_slope(x) - prov.q); };

    prov.d = prov.b0;
    for (std::size_t i = c_index + 1; i <= r; ++i) {
        if (N * (d[i] - prov.q) >= 1.0) {
            const double lo = std::max(prov.c, xs[i - 1]);
            prov.d = bisect([&](double x) { return scaled(x) - 1.0; }, lo, xs[i]);
            break;
        }
    }

    Expr body = f.as_expr().compose(Expr::poly({1.0, prov.c}));
    if (prov.sign_flipped) body = Expr::scale(-1.0, body);
    if (prov.q_applied) body = Expr::sub(body, Expr::poly({prov.q, 0.0}));
    if (prov.N != 1) body = Expr::scale(N, body);
    const double b = prov.d - prov.c;
    if (!(b > 0.0)) throw MonotonicityError("normalized interval collapsed to a point");
    return {FunctionModel(Interval::closed(0.0, b), body), b, prov};
}

std::vector<double> build_E(const NormalizedFunction& nf, int grid_n, const ToleranceConfig& cfg) {
    cfg.validate();
    return scan_E(nf, grid_n, cfg).x;
}

FieldStructure build_field(const NormalizedFunction& nf, const ToleranceConfig& cfg) {
    cfg.validate();
    FieldStructure fs{nf, nf.b, {}, {}, {}, {}, false, false, cfg};
    ESample e = scan_E(nf, cfg.grid_n, cfg);
    fs.E = std::move(e.x);
    fs.E_index = std::move(e.index);
    fs.tau_E.resize(fs.E.size());
    for (std::size_t i = 0; i < fs.E.size(); ++i) fs.tau_E[i] = tau_E(fs, fs.E[i]);

    const double b = fs.b;
    double e1_lo = INFINITY, e1_hi = -INFINITY, e2_lo = INFINITY, e2_hi = -INFINITY;
    for (std::size_t i = 0; i < fs.E.size(); ++i) {
        const double y = fs.E[i];
        const double t = fs.tau_E[i];
        fs.tau_table.emplace_back(y, t);
        if (i > 0) {
            fs.tau_table.emplace_back(-y, -t);
            e2_lo = std::min(e2_lo, -y);
            e2_hi = std::max(e2_hi, -y);
        }
        if (i > 0 && i + 1 < fs.E.size()) {
            const double x1 = 2.0 * b - y;
            fs.tau_table.emplace_back(x1, 1.0 / t);
            fs.tau_table.emplace_back(-x1, -1.0 / t);
            e1_lo = std::min(e1_lo, x1);
            e1_hi = std::max(e1_hi, x1);
        }
    }
    std::sort(fs.tau_table.begin(), fs.tau_table.end());
    fs.tau_monotone = true;
    for (std::size_t i = 1; i < fs.tau_table.size(); ++i) {
        if (!(fs.tau_table[i].second > fs.tau_table[i - 1].second) ||
            !(fs.tau_table[i].first > fs.tau_table[i - 1].first)) {
            fs.tau_monotone = false;
        }
    }
    const bool e_ok = fs.E.front() >= 0.0 && fs.E.back() <= b;
    const bool e1_ok = fs.E.size() < 3 || (e1_lo > b && e1_hi < 2.0 * b);
    const bool e2_ok = e2_lo >= -b && e2_hi < 0.0;
    const bool e3_ok = fs.E.size() < 3 || (-e1_hi > -2.0 * b && -e1_lo < -b);
    fs.branches_disjoint = e_ok && e1_ok && e2_ok && e3_ok;
    return fs;
}

double tau(const FieldStructure& fs, double x) {
    const double b = fs.b;
    const double tol = snap_tolerance(fs);
    if (!std::isfinite(x)) throw NotInFError("non-finite point");
    if (x >= -tol && x <= b + tol) {
        if (in_E(fs, x)) return tau_E(fs, x);
    } else if (x > b && x < 2.0 * b) {
        const double y = 2.0 * b - x;
        if (in_E(fs, y)) return 1.0 / tau_E(fs, y);
    } else if (x < 0.0 && x >= -b - tol) {
        if (in_E(fs, -x)) return -tau_E(fs, -x);
    } else if (x < -b && x > -2.0 * b) {
        const double y = 2.0 * b + x;
        if (in_E(fs, y)) return -1.0 / tau_E(fs, y);
    }
    throw NotInFError(format_real(x) + " lies on no branch of F");
}

double tau_inv(const FieldStructure& fs, double t) {
    if (!std::isfinite(t) || std::abs(t) > 1.0 / fs.cfg.eps_deriv) {
        throw RangeError("tau value " + format_real(t) + " outside the representable range");
    }
    if (t < 0.0) return -tau_inv(fs, -t);
    if (t <= 1.0) return tau_inv_E(fs, t);
    return 2.0 * fs.b - tau_inv_E(fs, 1.0 / t);
}

double field_add(const FieldStructure& fs, double x, double y) { return tau_inv(fs, tau(fs, x) + tau(fs, y)); }

double field_mul(const FieldStructure& fs, double x, double y) { return tau_inv(fs, tau(fs, x) * tau(fs, y)); }

std::string to_string(SlopeOrder o) {
    switch (o) {
        case SlopeOrder::Less: return "less";
        case SlopeOrder::Equal: return "equal";
        case SlopeOrder::Greater: return "greater";
    }
    return "?";
}

SlopeComparison compare_slopes(const FunctionModel& f_base, const FunctionModel& g_x, const FunctionModel& g_y,
                               const ToleranceConfig& cfg) {
    cfg.validate();
    for (const FunctionModel* g : {&g_x, &g_y}) {
        if (!g->domain().contains_in_closure(0.0) || g->domain().lo() != 0.0) {
            throw PreconditionError("g must be defined on an interval starting at 0");
        }
        const double g0 = g->eval_closure(0.0);
        if (std::abs(g0) > cfg.eps_value) throw PreconditionError("g(0) = " + format_real(g0) + ", expected 0");
    }
    const double a = f_base.domain().lo();
    const double b = f_base.domain().hi();
    const double L = std::min(g_x.domain().length(), g_y.domain().length());

    auto holds = [&](const FunctionModel& lower, const FunctionModel& upper) -> std::optional<double> {
        for (int j = 1; j <= 16; ++j) {
            const double z = a + (b - a) * std::ldexp(1.0, -j);
            const double fz = f_base.eval_closure(z);
            bool all = true;
            for (int k = 20; k <= 24 && all; ++k) {
                const double e = std::ldexp(L, -k);
                if (!(lower.eval_closure(e) + (f_base.eval_closure(z + e) - fz) < upper.eval_closure(e))) all = false;
            }
            if (all) return z;
        }
        return std::nullopt;
    };

    SlopeComparison out;
    if (auto z = holds(g_x, g_y)) {
        out.order = SlopeOrder::Less;
        out.z = *z;
    } else if (auto z2 = holds(g_y, g_x)) {
        out.order = SlopeOrder::Greater;
        out.z = *z2;
    }
    out.derivative_x = derivative_inward(g_x, 0.0, 1, cfg);
    out.derivative_y = derivative_inward(g_y, 0.0, 1, cfg);
    const double diff = out.derivative_y - out.derivative_x;
    const double tol = 10.0 * cfg.eps_deriv;
    SlopeOrder by_derivative = SlopeOrder::Equal;
    if (diff > tol) by_derivative = SlopeOrder::Less;
    else if (diff < -tol) by_derivative = SlopeOrder::Greater;
    out.agrees_with_derivatives = by_derivative == out.order;
    return out;
}

AxiomReport verify_field_axioms(const FieldStructure& fs, int trials, const ToleranceConfig& cfg) {
    cfg.validate();
    if (trials < 100) throw InvalidArgument("trials must be at least 100");
    AxiomReport rep;
    rep.trials = trials;
    rep.tolerance = 2.0 * cfg.eps_deriv;
    rep.tau_monotone = fs.tau_monotone;
    rep.branches_disjoint = fs.branches_disjoint;
    const double zero = tau_inv(fs, 0.0);
    const double one = tau_inv(fs, 1.0);
    rep.zero_tau = tau(fs, zero);
    rep.one_tau = tau(fs, one);

    for (const char* name : {"commutative_add", "commutative_mul", "associative_add", "associative_mul",
                             "distributive", "additive_identity", "multiplicative_identity", "additive_inverse",
                             "multiplicative_inverse", "homomorphism_add", "homomorphism_mul"}) {
        rep.residuals[name] = 0.0;
    }
    auto record = [&](const std::string& name, double residual, double x, double y, double z) {
        double& slot = rep.residuals[name];
        slot = std::max(slot, residual);
        rep.max_residual = std::max(rep.max_residual, residual);
        if (residual > rep.tolerance && rep.failures.size() < 32) {
            rep.failures.push_back(name + " residual " + format_real(residual) + " at (" + format_real(x) + ", " +
                                   format_real(y) + ", " + format_real(z) + ")");
        }
    };

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    for (int trial = 0; trial < trials; ++trial) {
        const double x = tau_inv(fs, pick(rng));
        const double y = tau_inv(fs, pick(rng));
        const double z = tau_inv(fs, pick(rng));
        try {
            const double tx = tau(fs, x), ty = tau(fs, y), tz = tau(fs, z);
            auto T = [&](double v) { return tau(fs, v); };
            auto add = [&](double u, double v) { return field_add(fs, u, v); };
            auto mul = [&](double u, double v) { return field_mul(fs, u, v); };

            record("commutative_add", std::abs(T(add(x, y)) - T(add(y, x))), x, y, z);
            record("commutative_mul", std::abs(T(mul(x, y)) - T(mul(y, x))), x, y, z);
            record("associative_add", std::abs(T(add(add(x, y), z)) - T(add(x, add(y, z)))), x, y, z);
            record("associative_mul", std::abs(T(mul(mul(x, y), z)) - T(mul(x, mul(y, z)))), x, y, z);
            record("distributive", std::abs(T(mul(x, add(y, z))) - T(add(mul(x, y), mul(x, z)))), x, y, z);
            record("additive_identity", std::abs(T(add(x, zero)) - tx), x, y, z);
            record("multiplicative_identity", std::abs(T(mul(x, one)) - tx), x, y, z);
            record("additive_inverse", std::abs(T(add(x, tau_inv(fs, -tx)))), x, y, z);
            if (std::abs(tx) >= 0.25) record("multiplicative_inverse", std::abs(T(mul(x, tau_inv(fs, 1.0 / tx))) - 1.0), x, y, z);
            record("homomorphism_add", std::abs(T(add(x, y)) - (tx + ty)), x, y, z);
            record("homomorphism_mul", std::abs(T(mul(x, y)) - tx * ty), x, y, z);

            const double lo = std::min(x, y);
            const double hi = std::max(x, y);
            if (lo < hi && add(lo, z) - add(hi, z) > 1e-8) {
                ++rep.order_violations;
                if (rep.failures.size() < 32) rep.failures.push_back("order violated at (" + format_real(lo) + ", " +
                                                                     format_real(hi) + ", " + format_real(z) + ")");
            }
            if (x > 0.0 && y > 0.0 && !(mul(x, y) > 0.0)) {
                ++rep.positivity_violations;
                if (rep.failures.size() < 32) rep.failures.push_back("product of positives not positive at (" +
                                                                     format_real(x) + ", " + format_real(y) + ")");
            }
            (void)tz;
        } catch (const AnalysisError& e) {
            if (rep.failures.size() < 32) rep.failures.push_back(e.kind() + ": " + e.detail());
        }
    }
    if (!rep.tau_monotone) rep.failures.push_back("tau not strictly increasing on the sampled table");
    if (!rep.branches_disjoint) rep.failures.push_back("branches of F overlap");
    return rep;
}

}  // namespace tame
