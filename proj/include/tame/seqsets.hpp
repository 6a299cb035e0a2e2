#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tame/function_model.hpp"

namespace tame {

enum class Decay { Exponential, Subexponential, Unknown };

/// Strictly decreasing positive reals s_0 > s_1 > ... sampled from a
/// sequence accumulating at 0. Flags record which properties held; the
/// constructor never rejects a non-decreasing input.
struct SequenceSet {
    std::vector<double> values;
    std::vector<double> gaps;
    bool strictly_decreasing = false;
    bool decreasing_gaps = false;
    Decay decay = Decay::Unknown;

    /// Builds the set from raw values, computing gaps and flags.
    static SequenceSet from_values(std::vector<double> values);
    /// Smallest member, the scale below which the sample says nothing.
    double truncation_scale() const { return values.empty() ? 0.0 : values.back(); }
};

/// Values gen(1..n_max). NonPositiveError when some gen(i) <= 0.
SequenceSet make_sequence_set(const std::function<double(double)>& gen, int n_max);
SequenceSet make_sequence_set(const FunctionModel& gen, int n_max);

/// {base^-i : i = 1..count}.
SequenceSet geometric_sequence_set(double base, int count);

struct OmegaOrder {
    std::vector<double> elements;
    std::vector<double> delta_values;
};

/// Endpoints of the bounded complementary intervals of A, ordered by
/// decreasing minimal adjacent gap, ties broken by increasing value. Gaps no
/// longer than `resolution` are treated as filled.
OmegaOrder omega_order(std::span<const double> A, double resolution = 0.0);

struct DecayFit {
    Decay decay = Decay::Unknown;
    double lambda = 0.0;
    double intercept = 0.0;
    double max_deviation = 0.0;
    double threshold = 0.0;
};

/// Least-squares fit of log s_n against n over the tail half. Exponential
/// when the slope is negative and the tail stays within
/// 0.1 * |slope| * n_max of the line through the origin with that slope.
DecayFit classify_decay(const SequenceSet& s);

/// Point cloud in one or two dimensions.
struct PointSet {
    int dim = 1;
    std::vector<double> coords;  // dim values per point

    static PointSet line(std::vector<double> xs);
    static PointSet plane(const std::vector<std::pair<double, double>>& pts);
    std::size_t size() const { return coords.size() / static_cast<std::size_t>(dim); }
};

struct ScaleRange {
    int j_min = 0;
    int j_max = 40;
};

struct DimensionReport {
    double estimate = 0.0;
    /// Scale indices that entered the fit (ratio exponents m for Assouad,
    /// scale exponents j for box counting).
    std::vector<int> scales_used;
    /// Count per entry of scales_used.
    std::vector<long long> per_scale_counts;
};

/// Two-scale covering estimate. For each ratio R/r = 2^m the maximal count
/// N(B(x,R), r) over data centers and dyadic R is recorded; the estimate is
/// the least-squares growth exponent of those maxima, restricted to r above
/// the smallest gap and to counts below half the sample size.
DimensionReport assouad_estimate(const PointSet& points, ScaleRange scales);
DimensionReport box_dimension_estimate(const PointSet& points, ScaleRange scales);

struct DifferenceMatch {
    double c_difference = 0.0;
    double d_difference = 0.0;
};

/// Positive differences of C matched against positive differences of D
/// within tol. Each distinct C-difference is reported once.
std::vector<DifferenceMatch> difference_set_intersection(std::span<const double> C, std::span<const double> D,
                                                         double tol);

}  // namespace tame
