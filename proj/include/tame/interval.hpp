#pragma once

#include <string>

namespace tame {

enum class Openness { Open, Closed, HalfOpenLeft, HalfOpenRight };

/// Bounded interval with lo < hi. HalfOpenLeft is (lo,hi], HalfOpenRight is [lo,hi).
class Interval {
public:
    Interval(double lo, double hi, Openness openness = Openness::Open);

    static Interval open(double lo, double hi) { return {lo, hi, Openness::Open}; }
    static Interval closed(double lo, double hi) { return {lo, hi, Openness::Closed}; }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    Openness openness() const noexcept { return openness_; }
    double length() const noexcept { return hi_ - lo_; }
    double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }

    bool lo_closed() const noexcept {
        return openness_ == Openness::Closed || openness_ == Openness::HalfOpenRight;
    }
    bool hi_closed() const noexcept {
        return openness_ == Openness::Closed || openness_ == Openness::HalfOpenLeft;
    }

    bool contains(double x) const noexcept;
    bool contains_in_closure(double x) const noexcept { return x >= lo_ && x <= hi_; }
    /// True when every point of `other` lies in this interval.
    bool contains(const Interval& other) const noexcept;

    Interval closure() const { return closed(lo_, hi_); }
    Interval with_bounds(double lo, double hi) const { return {lo, hi, openness_}; }

    /// Canonical text: "(lo,hi)", "[lo,hi]", "(lo,hi]" or "[lo,hi)".
    std::string to_string() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_;
    double hi_;
    Openness openness_;
};

/// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

}  // namespace tame
