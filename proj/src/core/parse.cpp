#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "tame/errors.hpp"
#include "tame/function_model.hpp"

namespace tame {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) fail("expected '" + std::string(token) + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    double number() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr == begin) fail("expected a number");
        if (!std::isfinite(v)) fail("number must be finite");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    int integer() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        int v = 0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr == begin) fail("expected an integer");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    std::string word() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::vector<double> list() {
        expect("[");
        std::vector<double> out;
        if (accept("]")) return out;
        do {
            out.push_back(number());
        } while (accept(","));
        expect("]");
        return out;
    }

    [[noreturn]] void fail(const std::string& reason) const { throw ParseError(pos_, reason); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Interval parse_interval(Cursor& c) {
    bool lo_closed = false;
    if (c.accept("[")) {
        lo_closed = true;
    } else if (!c.accept("(")) {
        c.fail("expected '(' or '[' to open an interval");
    }
    const double lo = c.number();
    c.expect(",");
    const double hi = c.number();
    bool hi_closed = false;
    if (c.accept("]")) {
        hi_closed = true;
    } else if (!c.accept(")")) {
        c.fail("expected ')' or ']' to close an interval");
    }
    if (!(lo < hi)) c.fail("interval requires lo < hi");
    Openness o = Openness::Open;
    if (lo_closed && hi_closed) o = Openness::Closed;
    else if (lo_closed) o = Openness::HalfOpenRight;
    else if (hi_closed) o = Openness::HalfOpenLeft;
    return {lo, hi, o};
}

Interpolation parse_interpolation(Cursor& c) {
    const std::size_t at = c.pos();
    const std::string w = c.word();
    if (w == "linear") return Interpolation::Linear;
    if (w == "none") return Interpolation::None;
    throw ParseError(at, "expected 'linear' or 'none'");
}

GridForm make_grid(Cursor& c, std::size_t at, std::vector<double> knots, std::vector<double> values,
                   Interpolation interp) {
    GridForm g{std::move(knots), std::move(values), interp};
    try {
        g.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(at, e.detail());
    }
    (void)c;
    return g;
}

Expr parse_sexpr(Cursor& c) {
    const char ch = c.peek();
    if (ch == 'x') {
        c.expect("x");
        return Expr::var();
    }
    if (ch != '(') return Expr::constant(c.number());
    c.expect("(");
    const std::size_t at = c.pos();
    const std::string head = c.word();
    Expr out = Expr::var();
    try {
        if (head == "add" || head == "sub" || head == "min" || head == "max") {
            Expr a = parse_sexpr(c);
            Expr b = parse_sexpr(c);
            if (head == "add") out = Expr::add(a, b);
            else if (head == "sub") out = Expr::sub(a, b);
            else if (head == "min") out = Expr::min(a, b);
            else out = Expr::max(a, b);
        } else if (head == "scale") {
            const double k = c.number();
            out = Expr::scale(k, parse_sexpr(c));
        } else if (head == "poly") {
            auto coeffs = c.list();
            out = Expr::poly(std::move(coeffs), parse_sexpr(c));
        } else if (head == "abs") {
            out = Expr::abs(parse_sexpr(c));
        } else if (head == "sin") {
            out = Expr::sin(parse_sexpr(c));
        } else if (head == "exp") {
            out = Expr::exp(parse_sexpr(c));
        } else if (head == "recip") {
            out = Expr::recip(parse_sexpr(c));
        } else if (head == "pwa") {
            auto knots = c.list();
            auto values = c.list();
            out = Expr::piecewise_affine(std::move(knots), std::move(values), parse_sexpr(c));
        } else if (head == "cantor") {
            out = Expr::cantor(parse_sexpr(c));
        } else if (head == "sawtooth") {
            const double period = c.number();
            out = Expr::sawtooth(period, parse_sexpr(c));
        } else if (head == "weier") {
            const int n = c.integer();
            out = Expr::weierstrass(n, parse_sexpr(c));
        } else if (head == "grid") {
            auto knots = c.list();
            auto values = c.list();
            const Interpolation interp = parse_interpolation(c);
            GridForm g = make_grid(c, at, std::move(knots), std::move(values), interp);
            out = Expr::grid(std::move(g), parse_sexpr(c));
        } else {
            throw ParseError(at, "unknown expression head '" + head + "'");
        }
    } catch (const InvalidArgument& e) {
        throw ParseError(at, e.detail());
    }
    c.expect(")");
    return out;
}

}  // namespace

FunctionModel parse_function_spec(std::string_view text) {
    Cursor c(text);
    if (c.accept("grid:")) {
        const std::size_t at = c.pos();
        auto knots = c.list();
        c.expect("->");
        auto values = c.list();
        const Interpolation interp = parse_interpolation(c);
        GridForm g = make_grid(c, at, std::move(knots), std::move(values), interp);
        std::optional<Interval> domain;
        if (c.accept("on")) domain = parse_interval(c);
        if (!c.done()) c.fail("trailing characters");
        if (!domain) return FunctionModel(std::move(g));
        try {
            return {*domain, std::move(g)};
        } catch (const InvalidArgument& e) {
            throw ParseError(at, e.detail());
        }
    }

    Expr body = Expr::var();
    const std::size_t at = c.pos();
    if (c.accept("expr:")) {
        body = parse_sexpr(c);
    } else if (c.accept("poly:")) {
        const std::size_t list_at = c.pos();
        auto coeffs = c.list();
        if (coeffs.empty()) throw ParseError(list_at, "polynomial needs coefficients");
        body = Expr::poly(std::move(coeffs));
    } else if (c.accept("affine:")) {
        const double m = c.number();
        c.expect(",");
        const double b = c.number();
        body = Expr::poly({m, b});
    } else if (c.accept("abs-shift:")) {
        body = Expr::abs(Expr::poly({1.0, -c.number()}));
    } else if (c.accept("sininv")) {
        body = Expr::sin(Expr::recip(Expr::var()));
    } else if (c.accept("sin")) {
        body = Expr::sin(Expr::var());
    } else if (c.accept("exp")) {
        body = Expr::exp(Expr::var());
    } else if (c.accept("cantor")) {
        body = Expr::cantor();
    } else if (c.accept("sawtooth:")) {
        const std::size_t p_at = c.pos();
        const double period = c.number();
        if (!(period > 0.0)) throw ParseError(p_at, "sawtooth period must be positive");
        body = Expr::sawtooth(period);
    } else if (c.accept("weier:")) {
        const std::size_t n_at = c.pos();
        const int n = c.integer();
        if (n < 0 || n > 60) throw ParseError(n_at, "weierstrass term count must be in [0,60]");
        body = Expr::weierstrass(n);
    } else {
        throw ParseError(at, "unknown function kind");
    }
    c.expect("on");
    const std::size_t dom_at = c.pos();
    const Interval domain = parse_interval(c);
    if (!c.done()) c.fail("trailing characters");
    if (body.kind() == Expr::Kind::Sin && body.children()[0].kind() == Expr::Kind::Recip &&
        !(domain.lo() > 0.0)) {
        throw ParseError(dom_at, "sininv requires lo > 0");
    }
    return {domain, body};
}

FunctionModel read_grid_csv(std::string_view csv_text, Interpolation interpolation) {
    std::istringstream in{std::string(csv_text)};
    std::string line;
    std::size_t offset = 0;
    if (!std::getline(in, line)) throw ParseError(0, "empty CSV");
    {
        std::string header;
        for (char ch : line) {
            if (!std::isspace(static_cast<unsigned char>(ch))) header += ch;
        }
        if (header != "x,fx") throw ParseError(0, "CSV header must be 'x,fx'");
    }
    offset += line.size() + 1;
    GridForm g;
    g.interpolation = interpolation;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            offset += line.size() + 1;
            continue;
        }
        Cursor c(line);
        double x = 0.0;
        double v = 0.0;
        try {
            x = c.number();
            c.expect(",");
            v = c.number();
            c.accept("\r");
            if (!c.done()) c.fail("expected two columns");
        } catch (const ParseError& e) {
            throw ParseError(offset + e.position(), e.reason());
        }
        g.knots.push_back(x);
        g.values.push_back(v);
        offset += line.size() + 1;
    }
    try {
        g.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(offset, e.detail());
    }
    return FunctionModel(std::move(g));
}

}  // namespace tame
