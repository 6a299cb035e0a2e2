#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tame/diff_ops.hpp"
#include "tame/function_model.hpp"

namespace tame {

/// x < y with f(x+e) - f(x) = f(y+e) - f(y) for e on a grid of [0, delta).
struct RepetitionWitness {
    double x = 0.0;
    double y = 0.0;
    double delta = 0.0;
    double max_residual = 0.0;
};

/// Offsets y - x = |J| 2^-j, largest first, while above min_delta; x ascending
/// on grid_n points; 64 values of e = delta*i/64 with delta = min_delta. The
/// first pair whose residuals stay within eps_value is returned. No witness
/// means none at this resolution.
std::optional<RepetitionWitness> find_repetition_witness(const FunctionModel& f, const Interval& J, double min_delta,
                                                         const ToleranceConfig& cfg);

enum class Convexity { StrictlyConvex, StrictlyConcave, Neither };
std::string to_string(Convexity c);

struct ConvexityResult {
    Convexity verdict = Convexity::Neither;
    /// Slack = slope(x', y') - slope(x, y) over tested x < y <= x' < y'.
    double min_slack = 0.0;
    double max_slack = 0.0;
    long long quadruples = 0;
};

/// Four-point slope test on grid_n points of J. All quadruples when there are
/// at most 10^6, otherwise 10^6 drawn with cfg.seed.
ConvexityResult strict_convexity_test(const FunctionModel& f, const Interval& J, int grid_n,
                                      const ToleranceConfig& cfg);

/// max |(f(x)+f(y))/2 - f((x+y)/2)| over pairs of grid_n points of J.
double midpoint_affine_defect(const FunctionModel& f, const Interval& J, int grid_n);

struct AffineRegions {
    std::vector<Interval> regions;
    double coverage = 0.0;
    int max_depth = 0;
};

/// Dyadic cells of I down to max_depth. A cell of relative length w is affine
/// when its 16-point midpoint defect is at most eps_value * w. Adjacent affine
/// cells are merged.
AffineRegions locally_affine_regions(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg,
                                     int max_depth = 12);

/// Family {h_d : d in E}, h_d defined on [0, d].
struct FamilyModel {
    std::vector<double> index_set;
    std::function<FunctionModel(double)> member;
};

struct WeakPoleResult {
    bool weak_pole = false;
    /// Largest delta with [0, delta] inside every sampled image.
    double delta = 0.0;
    /// (d, min h_d, max h_d) per member, in index order.
    std::vector<std::tuple<double, double, double>> images;
};

/// AccumulationError unless E has at least 8 members and min E < max E / 100.
WeakPoleResult weak_pole_check(const FamilyModel& fam, double delta_target, const ToleranceConfig& cfg);

struct ModulusRow {
    double eps = 0.0;
    double delta = 0.0;
};

struct ModulusTable {
    std::vector<ModulusRow> rows;
    bool collapse = false;
    int grid_points = 0;
};

/// For eps = 2^-1 .. 2^-8, the largest grid distance delta with
/// sup |f(t) - f(t')| < eps over |t - t'| <= delta, on 16 * grid_n points.
/// Collapse: some delta is 0, or delta/eps at the finest eps drops below an
/// eighth of its value at the coarsest.
ModulusTable uniform_continuity_modulus(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg);

enum class Verdict { FieldTypeEvidence, GenericallyAffine, TypeBConsistent, Inconclusive };
std::string to_string(Verdict v);

struct SubintervalRepetition {
    Interval interval;
    std::optional<RepetitionWitness> witness;
};

struct TrichotomyReport {
    SmoothnessCertificate smoothness;
    ConvexityResult convexity;
    std::vector<SubintervalRepetition> repetition;
    AffineRegions affine;
    double affine_coverage = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

/// Depth of the affine decomposition used by classify_function.
inline constexpr int kClassifyAffineDepth = 16;

TrichotomyReport classify_function(const FunctionModel& f, const Interval& I, const ToleranceConfig& cfg);

}  // namespace tame
