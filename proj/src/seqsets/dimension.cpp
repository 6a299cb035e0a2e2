#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "tame/errors.hpp"
#include "tame/parallel.hpp"
#include "tame/seqsets.hpp"

namespace tame {

PointSet PointSet::line(std::vector<double> xs) { return {1, std::move(xs)}; }

PointSet PointSet::plane(const std::vector<std::pair<double, double>>& pts) {
    PointSet out{2, {}};
    out.coords.reserve(2 * pts.size());
    for (const auto& [x, y] : pts) {
        out.coords.push_back(x);
        out.coords.push_back(y);
    }
    return out;
}

namespace {

using Key = unsigned __int128;

// Points reduced to integer box indices at the finest admissible scale. For
// a box of level j the index is key >> (dim * (finest - j)), so boxes of all
// levels are contiguous runs of the sorted keys.
struct Prepared {
    int dim = 1;
    std::size_t n = 0;
    std::vector<double> coords;  // sorted by key
    std::vector<Key> keys;
    std::vector<int> levels;     // admissible scale exponents, ascending
    int finest = 0;
};

double min_gap_1d(const std::vector<double>& xs) {
    double g = INFINITY;
    for (std::size_t i = 1; i < xs.size(); ++i) g = std::min(g, xs[i] - xs[i - 1]);
    return g;
}

double min_gap_2d(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    double g = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size() && pts[j].first - pts[i].first < g; ++j) {
            g = std::min(g, std::max(pts[j].first - pts[i].first, std::abs(pts[j].second - pts[i].second)));
        }
    }
    return g;
}

Key interleave(std::uint64_t a, std::uint64_t b) {
    Key out = 0;
    for (int bit = 0; bit < 63; ++bit) {
        out |= static_cast<Key>((a >> bit) & 1U) << (2 * bit + 1);
        out |= static_cast<Key>((b >> bit) & 1U) << (2 * bit);
    }
    return out;
}

Prepared prepare(const PointSet& points, ScaleRange scales) {
    if (points.dim != 1 && points.dim != 2) throw InvalidArgument("point sets must be one or two dimensional");
    if (points.coords.size() % static_cast<std::size_t>(points.dim) != 0) {
        throw InvalidArgument("coordinate count is not a multiple of the dimension");
    }
    if (scales.j_min < 0 || scales.j_max > 40 || scales.j_min >= scales.j_max) {
        throw InvalidArgument("scale range must satisfy 0 <= j_min < j_max <= 40");
    }
    for (double c : points.coords) {
        if (!std::isfinite(c)) throw InvalidArgument("point coordinates must be finite");
    }
    Prepared p;
    p.dim = points.dim;
    double gap = 0.0;
    std::vector<double> lows(static_cast<std::size_t>(p.dim));
    std::vector<double> highs(static_cast<std::size_t>(p.dim));
    if (p.dim == 1) {
        std::vector<double> xs = points.coords;
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        if (xs.size() < 2) throw ScaleError("need at least two distinct points");
        gap = min_gap_1d(xs);
        lows[0] = xs.front();
        highs[0] = xs.back();
        p.coords = std::move(xs);
    } else {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < points.size(); ++i) pts.emplace_back(points.coords[2 * i], points.coords[2 * i + 1]);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() < 2) throw ScaleError("need at least two distinct points");
        gap = min_gap_2d(pts);
        lows = {INFINITY, INFINITY};
        highs = {-INFINITY, -INFINITY};
        for (const auto& [x, y] : pts) {
            lows[0] = std::min(lows[0], x);
            lows[1] = std::min(lows[1], y);
            highs[0] = std::max(highs[0], x);
            highs[1] = std::max(highs[1], y);
            p.coords.push_back(x);
            p.coords.push_back(y);
        }
    }
    p.n = p.coords.size() / static_cast<std::size_t>(p.dim);
    for (int j = scales.j_min; j <= scales.j_max; ++j) {
        if (std::ldexp(1.0, -j) >= gap) p.levels.push_back(j);
    }
    if (p.levels.empty()) throw ScaleError("no scale in range lies above the smallest gap");
    p.finest = p.levels.back();

    // Offsets are whole units so every level's grid stays aligned with the origin.
    std::vector<double> offset(static_cast<std::size_t>(p.dim));
    for (int a = 0; a < p.dim; ++a) {
        offset[a] = std::floor(lows[a]);
        const double span = std::ldexp(highs[a] - offset[a] + 1.0, p.finest);
        if (!(span < std::ldexp(1.0, 62))) throw ScaleError("coordinate range too wide for the finest scale");
    }
    auto index = [&](double v, int a) {
        return static_cast<std::uint64_t>(std::floor(std::ldexp(v, p.finest)) - std::ldexp(offset[a], p.finest));
    };
    std::vector<std::pair<Key, std::size_t>> order(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        Key k = 0;
        if (p.dim == 1) k = index(p.coords[i], 0);
        else k = interleave(index(p.coords[2 * i], 0), index(p.coords[2 * i + 1], 1));
        order[i] = {k, i};
    }
    std::sort(order.begin(), order.end());
    std::vector<double> sorted;
    sorted.reserve(p.coords.size());
    for (const auto& [k, i] : order) {
        p.keys.push_back(k);
        for (int a = 0; a < p.dim; ++a) sorted.push_back(p.coords[i * static_cast<std::size_t>(p.dim) + a]);
    }
    p.coords = std::move(sorted);
    return p;
}

// Coarsest shift (in levels below finest) at which two keys share a box.
int split_depth(Key a, Key b, int dim) {
    Key x = a ^ b;
    int bits = 0;
    while (x != 0) {
        x >>= 1;
        ++bits;
    }
    return (bits + dim - 1) / dim;
}

// counts[s] for s = 0..finest: number of boxes of level finest - s among a
// key-sorted run, given the split depths of its adjacent pairs.
template <class It>
std::vector<long long> box_counts(It first, It last, int finest) {
    std::vector<long long> hist(static_cast<std::size_t>(finest) + 2, 0);
    for (It it = first; it != last; ++it) ++hist[static_cast<std::size_t>(std::min(*it, finest + 1))];
    std::vector<long long> counts(static_cast<std::size_t>(finest) + 1, 1);
    long long above = 0;
    for (int s = finest + 1; s >= 1; --s) {
        above += hist[static_cast<std::size_t>(s)];
        counts[static_cast<std::size_t>(s - 1)] = 1 + above;
    }
    return counts;
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DimensionReport fit(const std::map<int, long long>& counts, std::size_t n, int dim) {
    DimensionReport out;
    std::vector<double> xs, ys;
    for (const auto& [s, c] : counts) {
        if (2 * c > static_cast<long long>(n)) continue;
        out.scales_used.push_back(s);
        out.per_scale_counts.push_back(c);
        xs.push_back(s * std::log(2.0));
        ys.push_back(std::log(static_cast<double>(c)));
    }
    const bool any_split = std::any_of(out.per_scale_counts.begin(), out.per_scale_counts.end(),
                                       [](long long c) { return c >= 2; });
    if (xs.size() < 2 || !any_split) throw ScaleError("fewer than two usable scales");
    out.estimate = std::clamp(slope(xs, ys), 0.0, static_cast<double>(dim));
    return out;
}

}  // namespace

DimensionReport box_dimension_estimate(const PointSet& points, ScaleRange scales) {
    const Prepared p = prepare(points, scales);
    std::vector<int> depth;
    for (std::size_t i = 1; i < p.n; ++i) depth.push_back(split_depth(p.keys[i - 1], p.keys[i], p.dim));
    const std::vector<long long> all = box_counts(depth.begin(), depth.end(), p.finest);
    std::map<int, long long> counts;
    for (int j : p.levels) counts[j] = all[static_cast<std::size_t>(p.finest - j)];
    return fit(counts, p.n, p.dim);
}

DimensionReport assouad_estimate(const PointSet& points, ScaleRange scales) {
    const Prepared p = prepare(points, scales);
    std::map<int, long long> best;
    if (p.dim == 1) {
        // prefix[l][i]: box boundaries of level levels[l] among the first i+1 points.
        std::vector<std::vector<long long>> prefix(p.levels.size(), std::vector<long long>(p.n, 0));
        for (std::size_t i = 1; i < p.n; ++i) {
            const int d = split_depth(p.keys[i - 1], p.keys[i], 1);
            for (std::size_t l = 0; l < p.levels.size(); ++l) {
                prefix[l][i] = prefix[l][i - 1] + (d > p.finest - p.levels[l] ? 1 : 0);
            }
        }
        for (std::size_t l1 = 0; l1 < p.levels.size(); ++l1) {
            const double R = std::ldexp(1.0, -p.levels[l1]);
            for (std::size_t c = 0; c < p.n; ++c) {
                const double x = p.coords[c];
                const auto lo = static_cast<std::size_t>(
                    std::lower_bound(p.coords.begin(), p.coords.end(), x - R) - p.coords.begin());
                const auto hi = static_cast<std::size_t>(
                    std::upper_bound(p.coords.begin(), p.coords.end(), x + R) - p.coords.begin() - 1);
                for (std::size_t l2 = l1 + 1; l2 < p.levels.size(); ++l2) {
                    const long long count = 1 + prefix[l2][hi] - prefix[l2][lo];
                    long long& slot = best[p.levels[l2] - p.levels[l1]];
                    slot = std::max(slot, count);
                }
            }
        }
    } else {
        constexpr std::size_t kMaxCenters = 256;
        const std::size_t stride = std::max<std::size_t>(1, p.n / kMaxCenters);
        std::vector<std::size_t> centers;
        for (std::size_t c = 0; c < p.n; c += stride) centers.push_back(c);
        std::vector<std::map<int, long long>> local(centers.size());
        parallel_for(centers.size(), [&](std::size_t ci) {
            const double cx = p.coords[2 * centers[ci]];
            const double cy = p.coords[2 * centers[ci] + 1];
            for (std::size_t l1 = 0; l1 < p.levels.size(); ++l1) {
                const double R = std::ldexp(1.0, -p.levels[l1]);
                std::vector<int> depth;
                Key prev = 0;
                bool first = true;
                for (std::size_t i = 0; i < p.n; ++i) {
                    if (std::abs(p.coords[2 * i] - cx) > R || std::abs(p.coords[2 * i + 1] - cy) > R) continue;
                    if (!first) depth.push_back(split_depth(prev, p.keys[i], 2));
                    prev = p.keys[i];
                    first = false;
                }
                const std::vector<long long> counts = box_counts(depth.begin(), depth.end(), p.finest);
                for (std::size_t l2 = l1 + 1; l2 < p.levels.size(); ++l2) {
                    long long& slot = local[ci][p.levels[l2] - p.levels[l1]];
                    slot = std::max(slot, counts[static_cast<std::size_t>(p.finest - p.levels[l2])]);
                }
            }
        }, 1);
        for (const auto& m : local) {
            for (const auto& [s, c] : m) best[s] = std::max(best[s], c);
        }
    }
    return fit(best, p.n, p.dim);
}

}  // namespace tame
