#include "tame/seqsets.hpp"

#include <algorithm>
#include <cmath>

#include "tame/errors.hpp"

namespace tame {

SequenceSet SequenceSet::from_values(std::vector<double> values) {
    SequenceSet s;
    s.values = std::move(values);
    s.strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
        s.gaps.push_back(s.values[i] - s.values[i + 1]);
        if (!(s.values[i + 1] < s.values[i])) s.strictly_decreasing = false;
    }
    s.decreasing_gaps = s.strictly_decreasing;
    for (std::size_t i = 0; i + 1 < s.gaps.size(); ++i) {
        if (!(s.gaps[i + 1] < s.gaps[i])) s.decreasing_gaps = false;
    }
    s.decay = classify_decay(s).decay;
    return s;
}

SequenceSet make_sequence_set(const std::function<double(double)>& gen, int n_max) {
    if (n_max < 16) throw InvalidArgument("n_max must be at least 16");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_max));
    for (int i = 1; i <= n_max; ++i) {
        const double v = gen(static_cast<double>(i));
        if (!(v > 0.0)) {
            throw NonPositiveError("generator value at " + std::to_string(i) + " is " + format_real(v));
        }
        values.push_back(v);
    }
    return SequenceSet::from_values(std::move(values));
}

SequenceSet make_sequence_set(const FunctionModel& gen, int n_max) {
    return make_sequence_set([&gen](double t) { return gen.eval(t); }, n_max);
}

SequenceSet geometric_sequence_set(double base, int count) {
    if (!(base > 1.0) || !std::isfinite(base)) throw InvalidArgument("geometric base must exceed 1");
    if (count < 1) throw InvalidArgument("count must be positive");
    std::vector<double> values;
    for (int i = 1; i <= count; ++i) values.push_back(std::pow(base, -i));
    return SequenceSet::from_values(std::move(values));
}

OmegaOrder omega_order(std::span<const double> A, double resolution) {
    std::vector<double> pts(A.begin(), A.end());
    for (double v : pts) {
        if (!std::isfinite(v)) throw InvalidArgument("omega_order needs finite values");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<std::pair<double, double>> tagged;  // (delta, value)
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double delta = INFINITY;
        if (i > 0 && pts[i] - pts[i - 1] > resolution) delta = std::min(delta, pts[i] - pts[i - 1]);
        if (i + 1 < pts.size() && pts[i + 1] - pts[i] > resolution) delta = std::min(delta, pts[i + 1] - pts[i]);
        if (std::isfinite(delta)) tagged.emplace_back(delta, pts[i]);
    }
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    OmegaOrder out;
    for (const auto& [delta, value] : tagged) {
        out.elements.push_back(value);
        out.delta_values.push_back(delta);
    }
    return out;
}

DecayFit classify_decay(const SequenceSet& s) {
    DecayFit fit;
    const std::size_t n = s.values.size();
    if (n < 32) return fit;
    for (double v : s.values) {
        if (!(v > 0.0)) return fit;
    }
    // Tail half, index n counted from 1.
    const std::size_t start = n / 2;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(n - start);
    for (std::size_t i = start; i < n; ++i) {
        const double x = static_cast<double>(i + 1);
        const double y = std::log(s.values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    fit.lambda = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.lambda * sx) / m;
    for (std::size_t i = start; i < n; ++i) {
        const double x = static_cast<double>(i + 1);
        fit.max_deviation = std::max(fit.max_deviation, std::abs(std::log(s.values[i]) - fit.lambda * x));
    }
    fit.threshold = 0.1 * std::abs(fit.lambda) * static_cast<double>(n);
    fit.decay = (fit.lambda < 0.0 && fit.max_deviation < fit.threshold) ? Decay::Exponential : Decay::Subexponential;
    return fit;
}

namespace {

std::vector<double> positive_differences(std::span<const double> xs) {
    std::vector<double> pts(xs.begin(), xs.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<double> out;
    out.reserve(pts.size() * (pts.size() - (pts.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) out.push_back(pts[j] - pts[i]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<DifferenceMatch> difference_set_intersection(std::span<const double> C, std::span<const double> D,
                                                         double tol) {
    if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
    const std::vector<double> cd = positive_differences(C);
    const std::vector<double> dd = positive_differences(D);
    std::vector<DifferenceMatch> out;
    std::size_t j = 0;
    for (double c : cd) {
        while (j < dd.size() && dd[j] < c - tol) ++j;
        std::size_t best = dd.size();
        for (std::size_t t = j; t < dd.size() && dd[t] <= c + tol; ++t) {
            if (best == dd.size() || std::abs(dd[t] - c) < std::abs(dd[best] - c)) best = t;
        }
        if (best != dd.size()) out.push_back({c, dd[best]});
    }
    return out;
}

}  // namespace tame
