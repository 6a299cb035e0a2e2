#pragma once

#include <map>
#include <string>
#include <vector>

#include "tame/function_model.hpp"

namespace tame {

struct NormalizationProvenance {
    /// Endpoints of the original interval the pipeline settled on.
    double a0 = 0.0;
    double b0 = 0.0;
    bool sign_flipped = false;
    /// Dyadic rational subtracted from the slope; 0 when not applied.
    double q = 0.0;
    bool q_applied = false;
    /// Maximal point with f' = q; equals a0 when q is skipped.
    double c = 0.0;
    int N = 1;
    /// Minimal point with N (f' - q) = 1.
    double d = 0.0;
    /// f' strictly monotone on no scanned run; F is expected to have empty interior.
    bool case_ii = false;
};

/// f on [0, b] with f'(0) = 0, f'(b) = 1, 0 < f' < 1 in between.
struct NormalizedFunction {
    FunctionModel f;
    double b = 0.0;
    NormalizationProvenance provenance;
};

/// Pipeline: choose [a, b] on the longest strictly monotone run of f' over
/// grid_n points of cl(I), flip the sign if f' decreases, subtract a dyadic q
/// from the slope and restart at the maximal point c with f' = q, scale by N
/// so the slope reaches 1, and stop at the minimal such point d.
/// AffineInputError when f is affine at resolution; MonotonicityError when
/// f' varies by no more than eps_deriv.
NormalizedFunction normalize(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg);

/// Running strict maxima of f' (margin eps_deriv) over grid_n points of
/// [0, b]; always contains 0 and b.
std::vector<double> build_E(const NormalizedFunction& nf, int grid_n, const ToleranceConfig& cfg);

struct FieldStructure {
    NormalizedFunction nf;
    double b = 0.0;
    std::vector<double> E;
    /// Grid index of each member of E; consecutive indices bound a segment
    /// of [0, b] that lies entirely in E.
    std::vector<int> E_index;
    /// f' on E, with exact 0 and 1 at the ends.
    std::vector<double> tau_E;
    /// Sorted (x, tau(x)) over all four branches of F.
    std::vector<std::pair<double, double>> tau_table;
    bool tau_monotone = false;
    bool branches_disjoint = false;
    ToleranceConfig cfg;
};

FieldStructure build_field(const NormalizedFunction& nf, const ToleranceConfig& cfg);

/// tau(x) = h'_x(0): f'(x) on E, 1/f'(2b-x) on E1, -f'(-x) on E2, -1/f'(2b+x)
/// on E3. NotInFError when x lies on no branch.
double tau(const FieldStructure& fs, double x);
/// Inverse of tau. RangeError when t is not finite or |t| > 1/eps_deriv.
double tau_inv(const FieldStructure& fs, double t);

double field_add(const FieldStructure& fs, double x, double y);
double field_mul(const FieldStructure& fs, double x, double y);

enum class SlopeOrder { Less, Equal, Greater };
std::string to_string(SlopeOrder o);

struct SlopeComparison {
    SlopeOrder order = SlopeOrder::Equal;
    /// The z at which the strict inequality held; 0 for Equal.
    double z = 0.0;
    double derivative_x = 0.0;
    double derivative_y = 0.0;
    /// The ordering matches the sign of derivative_y - derivative_x.
    bool agrees_with_derivatives = true;
};

/// g_x < g_y when, for some z = a + (b-a) 2^-j (j = 1..16), the inequality
/// g_x(e) + f(z+e) - f(z) < g_y(e) holds strictly on the five smallest rungs
/// of e = L 2^-k (k = 12..24, L the shorter g domain). Greater is the
/// symmetric test. f_base lives on [a, b] with f'(a) = 0.
/// PreconditionError when g_x(0) or g_y(0) differs from 0.
SlopeComparison compare_slopes(const FunctionModel& f_base, const FunctionModel& g_x, const FunctionModel& g_y,
                               const ToleranceConfig& cfg);

struct AxiomReport {
    int trials = 0;
    double max_residual = 0.0;
    /// Max residual per axiom, in tau coordinates.
    std::map<std::string, double> residuals;
    int order_violations = 0;
    int positivity_violations = 0;
    double zero_tau = 0.0;
    double one_tau = 0.0;
    bool tau_monotone = false;
    bool branches_disjoint = false;
    double tolerance = 0.0;
    std::vector<std::string> failures;
};

/// Random triples of F (tau values uniform in [-2, 2], seeded by cfg.seed).
AxiomReport verify_field_axioms(const FieldStructure& fs, int trials, const ToleranceConfig& cfg);

}  // namespace tame
