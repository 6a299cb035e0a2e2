#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tame {

/// Signed base-r word: value -a_p r^p / (r-1) + sum_{i<p} a_i r^i.
/// `digits` holds positions p down to -precision; `tail` repeats forever
/// after position -precision (empty means all zeros).
struct DigitWord {
    int r = 2;
    int p = 0;
    int precision = 0;
    std::vector<int> digits;
    std::vector<int> tail;

    int leading() const { return digits.front(); }
    /// Digit at position m; positions above p repeat a_p.
    int digit_at(int m) const;
    /// "<int digits>⋆<frac digits>[(period)]"
    std::string to_string() const;
    void validate() const;
};

/// Parses the text form; both '⋆' and '*' separate the integer part.
DigitWord parse_digit_word(std::string_view text, int r);

/// Canonical expansion of x, plus the expansion ending in (r-1) repeated
/// when x is r-adic at this precision. PrecisionError when precision
/// exceeds 52 log 2 / log r or |x| >= r^30.
std::vector<DigitWord> encode(double x, int r, int precision);

/// Largest precision encode accepts for base r.
int max_precision(int r);

/// Exact evaluation of the word, rounded once to double.
double decode(const DigitWord& w);

/// Some expansion of x has digit k at the position m with u = r^m.
/// NotAPowerError when u is not a power of r (1e-12 relative).
bool v_r(double x, double u, int k, int r, int precision);

/// A subset of [0,1]^n known through a box oracle and a sampler.
struct SetModel {
    int n = 2;
    /// Does the set meet the closed box prod [lo_i, lo_i + side]?
    std::function<bool(const std::vector<double>& lo, double side)> meets;
    /// A point of the set, or nothing when the draw missed.
    std::function<std::optional<std::vector<double>>(std::mt19937_64&)> sample;
    bool empty = false;

    /// Graph {(x, f(x)) : x in [0,1]} clipped to the unit square; the box
    /// oracle takes the range of f over 17 points of the box's x-side.
    static SetModel graph(std::function<double(double)> f);
    static SetModel full_square();
    static SetModel empty_set();
};

struct NerodeOptions {
    int samples = 4096;
    int probes = 64;
    unsigned long long seed = 0;
};

/// Number of distinct acceptance vectors over length-p fractional prefixes of
/// sampled points. A prefix's vector records, for each probe continuation
/// (digits p+1..2p of a seeded point of the set) and each length 1..p,
/// whether the set meets the extended cylinder. 1 for the empty set;
/// SampleError when a nonempty set yields fewer than 2 prefixes.
int nerode_residual_count(const SetModel& set, int r, int p, const NerodeOptions& opts = {});

enum class Trend { Bounded, Growing, Withheld };
std::string to_string(Trend t);

struct TrendReport {
    Trend verdict = Trend::Withheld;
    std::vector<std::pair<int, int>> counts;  // (p, count)
    static constexpr const char* label = "empirical evidence";
};

TrendReport recognizability_trend(const SetModel& set, int r, int p_min, int p_max, const NerodeOptions& opts = {});

/// Deterministic weak Buchi automaton over (Sigma_r)^n plus the star symbol.
struct Rva {
    /// Digit tuple of length n; the empty tuple is the star.
    using Symbol = std::vector<int>;

    int n = 1;
    int r = 2;
    std::vector<std::string> states;
    int initial = 0;
    std::map<std::pair<int, Symbol>, int> transitions;
    std::vector<std::vector<int>> accepting_sccs;

    /// InvalidArgument unless well formed and every accepting set is a
    /// strongly connected component of the transition graph.
    void validate() const;
    int state_index(const std::string& name) const;
};

struct RvaResult {
    bool accepted = false;
    std::string diagnostic;
};

/// Runs the synchronized word (integer positions, star, fraction, then the
/// common period) and accepts when the states repeated by the lasso lie in
/// an accepting component. A missing transition rejects with a diagnostic.
RvaResult rva_membership(const Rva& a, const std::vector<DigitWord>& words);

}  // namespace tame
