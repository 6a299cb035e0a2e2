#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tame/function_model.hpp"
#include "tame/seqsets.hpp"

namespace tame {

/// Step vector h = (h_1, ..., h_k) of a generalized k-th difference.
struct StepVector {
    std::vector<double> steps;

    static StepVector uniform(int k, double h) { return {std::vector<double>(static_cast<std::size_t>(k), h)}; }
    int order() const noexcept { return static_cast<int>(steps.size()); }
    /// Sup-norm max |h_i|.
    double norm() const noexcept;
};

/// Delta^0 f(x) = f(x); Delta^k_h f(x) = Delta^{k-1} f(x + h_k) - Delta^{k-1} f(x)
/// with the first k-1 steps. No suitability check.
double gen_diff(const std::function<double(double)>& f, double x, std::span<const double> h);

/// Checked form: SuitabilityError unless (h, x) is suitable for the domain of f.
double gen_diff(const FunctionModel& f, double x, const StepVector& h);

/// (u, x) is (J,k)-suitable: x in J, all u_i >= 0 and x + k*||u|| in J.
bool is_suitable(const Interval& J, int k, const StepVector& u, double x);

/// Intersection of two intervals; DomainError when empty.
Interval intersect(const Interval& a, const Interval& b);

struct IdentityResiduals {
    /// |Delta^k_(h1,h2) f(x) - Delta^{k-1}_h2 Delta^1_h1 f(x)|
    double composition = 0.0;
    /// |Delta^k_h (f+g)(x) - Delta^k_h f(x) - Delta^k_h g(x)|
    double additivity = 0.0;
};

IdentityResiduals check_diff_identities(const FunctionModel& f, const FunctionModel& g, double x,
                                        const StepVector& h);

enum class Sign { NonNeg, NonPos, Mixed };
std::string to_string(Sign s);

struct SignWitness {
    double x = 0.0;
    double h = 0.0;
    double value = 0.0;
};

struct SignVerdict {
    Sign verdict = Sign::NonNeg;
    /// First grid pair (x index major, ladder index minor) with a value below
    /// -eps_value; present only for mixed verdicts.
    std::optional<SignWitness> witness;
    double min_value = 0.0;
    double max_value = 0.0;
    long long evaluations = 0;
};

/// Equal-step k-th differences over x on grid_n points of J and
/// h = |J| 2^-j / k for 1 <= j <= log2(grid_n), suitable pairs only.
/// Values within [-eps_value, eps_value] count as zero. A non-mixed verdict
/// is evidence at this resolution, not a proof.
SignVerdict hk_test(const FunctionModel& f, const Interval& J, int k, int grid_n, double eps_value = 1e-9);

struct CertifiedRegion {
    Interval interval = Interval::open(0.0, 1.0);
    Sign sign = Sign::NonNeg;
};

struct SmoothnessCertificate {
    int k = 0;
    Interval analyzed = Interval::open(0.0, 1.0);
    std::vector<CertifiedRegion> regions;
    double coverage_fraction = 0.0;
    int grid_used = 0;
    int max_depth = 0;
    double eps_value = 0.0;
    static constexpr const char* label = "necessary-condition at resolution";
};

/// Dyadic search for sub-intervals of I on which the order k+2 sign test
/// holds. A cell of width w is tested on the window extending one cell width
/// past each side (clipped to I), so a cell adjacent to a singularity is
/// never certified. Cells down to depth log2(grid_n) - 4 are examined with
/// x-spacing |I| / grid_n; adjacent certified cells of equal sign are merged.
SmoothnessCertificate certify_smoothness(const FunctionModel& f, const Interval& I, int k,
                                         const ToleranceConfig& cfg);

struct AnchorCheckReport {
    double anchored_min = 0.0;
    double unrestricted_min = 0.0;
    bool anchored_nonneg = false;
    bool unrestricted_nonneg = false;
    /// False only when the anchored scan is nonnegative but the unrestricted one is not.
    bool implication_held = true;
    /// max(0, -unrestricted_min)
    double worst_violation = 0.0;
    long long anchored_evaluations = 0;
    long long unrestricted_evaluations = 0;
};

/// Empirical check of the anchor reduction: if Delta^k_(d,h) f(x) >= 0 for
/// first steps d from D, then Delta^k_u f(x) >= 0 on all suitable (u, x).
/// The anchored scan uses D and a dyadic ladder for the remaining steps; the
/// unrestricted scan uses an independent uniform step grid and shifted x grid.
AnchorCheckReport seqset_anchor_check(const FunctionModel& f, const Interval& J, int k, const SequenceSet& D,
                                      int grid_n, double eps_value = 1e-9);

}  // namespace tame
