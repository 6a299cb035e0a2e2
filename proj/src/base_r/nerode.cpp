#include <algorithm>
#include <cmath>
#include <set>

#include "tame/base_r.hpp"
#include "tame/errors.hpp"
#include "tame/parallel.hpp"

namespace tame {

namespace {

bool in_unit(double v) { return v >= 0.0 && v < 1.0; }

// Fractional digits first+1 .. first+length of v in [0, 1).
void append_digits(std::vector<int>& out, double v, int r, int first, int length) {
    const DigitWord w = encode(v, r, first + length).front();
    for (int i = 1; i <= length; ++i) out.push_back(w.digit_at(-(first + i)));
}

}  // namespace

SetModel SetModel::graph(std::function<double(double)> f) {
    SetModel s;
    s.n = 2;
    s.meets = [f](const std::vector<double>& lo, double side) {
        const double x0 = std::max(0.0, lo[0]);
        const double x1 = std::min(1.0, lo[0] + side);
        if (x0 > x1) return false;
        double fmin = INFINITY;
        double fmax = -INFINITY;
        constexpr int kPoints = 17;
        for (int i = 0; i < kPoints; ++i) {
            const double v = f(x0 + (x1 - x0) * i / (kPoints - 1));
            fmin = std::min(fmin, v);
            fmax = std::max(fmax, v);
        }
        return !(fmax < lo[1] || fmin > lo[1] + side);
    };
    s.sample = [f](std::mt19937_64& rng) -> std::optional<std::vector<double>> {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double x = u(rng);
        const double y = f(x);
        if (!in_unit(y)) return std::nullopt;
        return std::vector<double>{x, y};
    };
    return s;
}

SetModel SetModel::full_square() {
    SetModel s;
    s.n = 2;
    s.meets = [](const std::vector<double>& lo, double side) {
        for (double l : lo) {
            if (l > 1.0 || l + side < 0.0) return false;
        }
        return true;
    };
    s.sample = [](std::mt19937_64& rng) -> std::optional<std::vector<double>> {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double x = u(rng);
        const double y = u(rng);
        return std::vector<double>{x, y};
    };
    return s;
}

SetModel SetModel::empty_set() {
    SetModel s;
    s.n = 2;
    s.empty = true;
    s.meets = [](const std::vector<double>&, double) { return false; };
    s.sample = [](std::mt19937_64&) -> std::optional<std::vector<double>> { return std::nullopt; };
    return s;
}

int nerode_residual_count(const SetModel& set, int r, int p, const NerodeOptions& opts) {
    if (set.n != 1 && set.n != 2) throw InvalidArgument("set arity must be 1 or 2");
    if (p < 1 || p > 12) throw InvalidArgument("prefix length must be in [1,12]");
    if (2 * p > max_precision(r)) {
        throw PrecisionError("probe depth " + std::to_string(2 * p) + " exceeds precision for base " + std::to_string(r));
    }
    if (opts.samples < 2 || opts.probes < 1) throw InvalidArgument("need at least 2 samples and 1 probe");
    if (set.empty) return 1;

    auto draw = [&](std::mt19937_64& rng) -> std::optional<std::vector<double>> {
        auto pt = set.sample(rng);
        if (!pt || static_cast<int>(pt->size()) != set.n) return std::nullopt;
        for (double v : *pt) {
            if (!in_unit(v)) return std::nullopt;
        }
        return pt;
    };

    std::set<std::vector<int>> prefix_set;
    std::mt19937_64 rng(opts.seed);
    for (int i = 0; i < opts.samples; ++i) {
        if (auto pt = draw(rng)) {
            std::vector<int> key;
            for (double v : *pt) append_digits(key, v, r, 0, p);
            prefix_set.insert(std::move(key));
        }
    }
    if (prefix_set.size() < 2) {
        throw SampleError("only " + std::to_string(prefix_set.size()) + " distinct prefixes observed");
    }

    std::vector<std::vector<int>> probes;
    std::mt19937_64 probe_rng(opts.seed + 1);
    for (long attempt = 0; attempt < 1000L * opts.probes && static_cast<int>(probes.size()) < opts.probes; ++attempt) {
        if (auto pt = draw(probe_rng)) {
            std::vector<int> key;
            for (double v : *pt) append_digits(key, v, r, p, p);
            probes.push_back(std::move(key));
        }
    }

    const std::vector<std::vector<int>> prefixes(prefix_set.begin(), prefix_set.end());
    const double rd = r;
    std::vector<std::vector<bool>> vectors(prefixes.size());
    parallel_for(prefixes.size(), [&](std::size_t idx) {
        const std::vector<int>& pre = prefixes[idx];
        std::vector<double> base(static_cast<std::size_t>(set.n), 0.0);
        for (int a = 0; a < set.n; ++a) {
            double v = 0.0;
            for (int i = 0; i < p; ++i) v += pre[static_cast<std::size_t>(a * p + i)] * std::pow(rd, -(i + 1));
            base[static_cast<std::size_t>(a)] = v;
        }
        std::vector<bool>& vec = vectors[idx];
        vec.reserve(probes.size() * static_cast<std::size_t>(p));
        std::vector<double> lo(static_cast<std::size_t>(set.n));
        for (const std::vector<int>& probe : probes) {
            for (int len = 1; len <= p; ++len) {
                for (int a = 0; a < set.n; ++a) {
                    double v = base[static_cast<std::size_t>(a)];
                    for (int i = 0; i < len; ++i) {
                        v += probe[static_cast<std::size_t>(a * p + i)] * std::pow(rd, -(p + i + 1));
                    }
                    lo[static_cast<std::size_t>(a)] = v;
                }
                vec.push_back(set.meets(lo, std::pow(rd, -(p + len))));
            }
        }
    }, 8);
    const std::set<std::vector<bool>> classes(vectors.begin(), vectors.end());
    return static_cast<int>(classes.size());
}

std::string to_string(Trend t) {
    switch (t) {
        case Trend::Bounded: return "bounded";
        case Trend::Growing: return "growing";
        case Trend::Withheld: return "withheld";
    }
    return "?";
}

TrendReport recognizability_trend(const SetModel& set, int r, int p_min, int p_max, const NerodeOptions& opts) {
    if (p_max - p_min < 2) throw InvalidArgument("trend needs at least three prefix lengths");
    TrendReport out;
    for (int p = p_min; p <= p_max; ++p) out.counts.emplace_back(p, nerode_residual_count(set, r, p, opts));
    const std::size_t n = out.counts.size();
    const int c1 = out.counts[n - 3].second;
    const int c2 = out.counts[n - 2].second;
    const int c3 = out.counts[n - 1].second;
    if (c1 == c2 && c2 == c3) out.verdict = Trend::Bounded;
    else if (c1 < c2 && c2 < c3) out.verdict = Trend::Growing;
    return out;
}

}  // namespace tame
