#include "tame/interval.hpp"

#include <charconv>
#include <cmath>

#include "tame/errors.hpp"

namespace tame {

Interval::Interval(double lo, double hi, Openness openness) : lo_(lo), hi_(hi), openness_(openness) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
        throw InvalidArgument("interval requires finite lo < hi, got " + format_real(lo) + ", " +
                              format_real(hi));
    }
}

bool Interval::contains(double x) const noexcept {
    const bool above = lo_closed() ? x >= lo_ : x > lo_;
    const bool below = hi_closed() ? x <= hi_ : x < hi_;
    return above && below;
}

bool Interval::contains(const Interval& other) const noexcept {
    if (other.lo_ < lo_ || other.hi_ > hi_) return false;
    if (other.lo_ == lo_ && other.lo_closed() && !lo_closed()) return false;
    if (other.hi_ == hi_ && other.hi_closed() && !hi_closed()) return false;
    return true;
}

std::string Interval::to_string() const {
    std::string out;
    out += lo_closed() ? '[' : '(';
    out += format_real(lo_);
    out += ',';
    out += format_real(hi_);
    out += hi_closed() ? ']' : ')';
    return out;
}

std::string format_real(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

}  // namespace tame
