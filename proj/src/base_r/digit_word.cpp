#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "tame/base_r.hpp"
#include "tame/errors.hpp"
#include "tame/interval.hpp"

namespace tame {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

constexpr std::string_view kStar = "⋆";

void check_base(int r) {
    if (r < 2 || r > 36) throw InvalidArgument("base must be in [2,36], got " + std::to_string(r));
}

cpp_int power(int r, int e) { return boost::multiprecision::pow(cpp_int(r), static_cast<unsigned>(e)); }

cpp_rational exact(double x) {
    int e = 0;
    const double m = std::frexp(x, &e);
    const auto mantissa = static_cast<long long>(std::ldexp(m, 53));
    cpp_rational out(mantissa);
    e -= 53;
    if (e >= 0) out *= cpp_rational(cpp_int(1) << e);
    else out /= cpp_rational(cpp_int(1) << -e);
    return out;
}

// Base-r digits of t, most significant first, padded to `width`.
std::vector<int> to_digits(cpp_int t, int r, int width) {
    std::vector<int> out(static_cast<std::size_t>(width), 0);
    for (int i = width - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(t % r);
        t /= r;
    }
    return out;
}

char digit_char(int d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10); }

int char_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

}  // namespace

int DigitWord::digit_at(int m) const {
    if (m > p) return leading();
    if (m >= -precision) return digits[static_cast<std::size_t>(p - m)];
    if (tail.empty()) return 0;
    const auto offset = static_cast<std::size_t>(-precision - 1 - m);
    return tail[offset % tail.size()];
}

std::string DigitWord::to_string() const {
    std::string out;
    for (int i = 0; i <= p; ++i) out += digit_char(digits[static_cast<std::size_t>(i)]);
    out += kStar;
    for (std::size_t i = static_cast<std::size_t>(p) + 1; i < digits.size(); ++i) out += digit_char(digits[i]);
    if (!tail.empty()) {
        out += '(';
        for (int d : tail) out += digit_char(d);
        out += ')';
    }
    return out;
}

void DigitWord::validate() const {
    check_base(r);
    if (p < 0 || precision < 0) throw InvalidArgument("word positions must be nonnegative");
    if (digits.size() != static_cast<std::size_t>(p + 1 + precision)) {
        throw InvalidArgument("digit count does not match p and precision");
    }
    if (leading() != 0 && leading() != r - 1) throw InvalidArgument("leading digit must be 0 or r-1");
    for (int d : digits) {
        if (d < 0 || d >= r) throw InvalidArgument("digit out of range for base " + std::to_string(r));
    }
    for (int d : tail) {
        if (d < 0 || d >= r) throw InvalidArgument("period digit out of range for base " + std::to_string(r));
    }
}

DigitWord parse_digit_word(std::string_view text, int r) {
    check_base(r);
    std::size_t star = text.find(kStar);
    std::size_t star_len = kStar.size();
    if (star == std::string_view::npos) {
        star = text.find('*');
        star_len = 1;
    }
    if (star == std::string_view::npos) throw ParseError(0, "word needs a star");
    DigitWord w;
    w.r = r;
    auto read = [&](std::string_view part, std::size_t base_pos, std::vector<int>& into) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            const int d = char_digit(part[i]);
            if (d < 0 || d >= r) throw ParseError(base_pos + i, "invalid digit for base " + std::to_string(r));
            into.push_back(d);
        }
    };
    const std::string_view int_part = text.substr(0, star);
    if (int_part.empty()) throw ParseError(0, "integer part is empty");
    read(int_part, 0, w.digits);
    std::string_view rest = text.substr(star + star_len);
    const std::size_t rest_pos = star + star_len;
    const std::size_t open = rest.find('(');
    std::string_view frac = rest.substr(0, open);
    read(frac, rest_pos, w.digits);
    if (open != std::string_view::npos) {
        if (rest.back() != ')' || rest.size() < open + 3) throw ParseError(rest_pos + open, "malformed period");
        read(rest.substr(open + 1, rest.size() - open - 2), rest_pos + open + 1, w.tail);
    }
    w.p = static_cast<int>(int_part.size()) - 1;
    w.precision = static_cast<int>(frac.size());
    if (w.leading() != 0 && w.leading() != r - 1) throw ParseError(0, "leading digit must be 0 or r-1");
    return w;
}

int max_precision(int r) {
    check_base(r);
    return static_cast<int>(std::floor(52.0 * std::log(2.0) / std::log(static_cast<double>(r)) + 1e-12));
}

std::vector<DigitWord> encode(double x, int r, int precision) {
    check_base(r);
    if (!std::isfinite(x)) throw InvalidArgument("cannot encode a non-finite value");
    if (precision < 0 || precision > max_precision(r)) {
        throw PrecisionError("precision " + std::to_string(precision) + " exceeds " + std::to_string(max_precision(r)) +
                             " for base " + std::to_string(r));
    }
    if (std::abs(x) >= std::pow(static_cast<double>(r), 30.0)) {
        throw PrecisionError("|x| must be below r^30");
    }
    const cpp_rational X = x == 0.0 ? cpp_rational(0) : exact(x);
    int p = 0;
    while (!(X >= -cpp_rational(power(r, p)) && X < cpp_rational(power(r, p)))) ++p;
    const bool negative = X < 0;
    const cpp_rational Y = negative ? X + cpp_rational(power(r, p)) : X;
    const cpp_int num = boost::multiprecision::numerator(Y) * power(r, precision);
    const cpp_int den = boost::multiprecision::denominator(Y);
    const cpp_int T = num / den;
    const bool exact_at_precision = num % den == 0;

    auto make = [&](const cpp_int& t, std::vector<int> tail) {
        DigitWord w;
        w.r = r;
        w.p = p;
        w.precision = precision;
        w.digits.push_back(negative ? r - 1 : 0);
        for (int d : to_digits(t, r, p + precision)) w.digits.push_back(d);
        w.tail = std::move(tail);
        return w;
    };
    std::vector<DigitWord> out{make(T, {})};
    if (exact_at_precision && T > 0) out.push_back(make(T - 1, {r - 1}));
    return out;
}

double decode(const DigitWord& w) {
    w.validate();
    const int r = w.r;
    cpp_int body = 0;
    for (std::size_t i = 1; i < w.digits.size(); ++i) body = body * r + w.digits[i];
    cpp_rational value = cpp_rational(body, power(r, w.precision));
    value -= cpp_rational(cpp_int(w.leading()) * power(r, w.p), cpp_int(r - 1));
    if (!w.tail.empty()) {
        cpp_int period = 0;
        for (int d : w.tail) period = period * r + d;
        const int L = static_cast<int>(w.tail.size());
        value += cpp_rational(period, (power(r, L) - 1) * power(r, w.precision));
    }
    return static_cast<double>(value);
}

bool v_r(double x, double u, int k, int r, int precision) {
    check_base(r);
    if (k < 0 || k >= r) throw InvalidArgument("digit " + std::to_string(k) + " not in base " + std::to_string(r));
    if (!(u > 0.0) || !std::isfinite(u)) throw NotAPowerError(format_real(u) + " is not a power of " + std::to_string(r));
    const long m = std::lround(std::log(u) / std::log(static_cast<double>(r)));
    const double power_value = std::pow(static_cast<double>(r), static_cast<double>(m));
    if (std::abs(u - power_value) > 1e-12 * u) {
        throw NotAPowerError(format_real(u) + " is not a power of " + std::to_string(r));
    }
    if (std::labs(m) > precision) {
        throw PrecisionError("position " + std::to_string(m) + " beyond precision " + std::to_string(precision));
    }
    for (const DigitWord& w : encode(x, r, precision)) {
        if (w.digit_at(static_cast<int>(m)) == k) return true;
    }
    return false;
}

}  // namespace tame
