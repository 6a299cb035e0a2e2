#include <algorithm>
#include <cmath>
#include <numbers>

#include "tame/errors.hpp"
#include "tame/function_model.hpp"

namespace tame {

struct Expr::Node {
    Kind kind;
    std::vector<double> params;
    std::vector<Expr> children;
    std::shared_ptr<const GridForm> grid;
};

namespace {

double cantor_value(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double result = 0.0;
    double weight = 0.5;
    for (int i = 0; i < 64 && weight > 0.0; ++i) {
        x *= 3.0;
        const double digit = std::floor(x);
        x -= digit;
        if (digit >= 1.0 && digit < 2.0) return result + weight;
        if (digit >= 2.0) result += weight;
        weight *= 0.5;
    }
    return result;
}

double triangle_wave(double period, double x) {
    const double t = x / period;
    return period * std::abs(t - std::nearbyint(t));
}

double weierstrass_sum(int terms, double x) {
    double sum = 0.0;
    double amp = 1.0;
    double freq = std::numbers::pi;
    for (int n = 0; n <= terms; ++n) {
        sum += amp * std::cos(freq * x);
        amp *= 0.5;
        freq *= 2.0;
    }
    return sum;
}

double piecewise_affine_value(const std::vector<double>& p, double x) {
    const std::size_t n = p.size() / 2;
    const double* knots = p.data();
    const double* values = p.data() + n;
    if (x <= knots[0]) {
        const double slope = (values[1] - values[0]) / (knots[1] - knots[0]);
        return values[0] + slope * (x - knots[0]);
    }
    if (x >= knots[n - 1]) {
        const double slope = (values[n - 1] - values[n - 2]) / (knots[n - 1] - knots[n - 2]);
        return values[n - 1] + slope * (x - knots[n - 1]);
    }
    const auto it = std::upper_bound(knots, knots + n, x);
    const std::size_t i = static_cast<std::size_t>(it - knots) - 1;
    const double w = (x - knots[i]) / (knots[i + 1] - knots[i]);
    return values[i] + w * (values[i + 1] - values[i]);
}

std::string vec_text(const std::vector<double>& v, std::size_t from, std::size_t to) {
    std::string out = "[";
    for (std::size_t i = from; i < to; ++i) {
        if (i > from) out += ',';
        out += format_real(v[i]);
    }
    return out + "]";
}

}  // namespace

Expr Expr::constant(double c) {
    return Expr(std::make_shared<const Node>(Node{Kind::Const, {c}, {}, nullptr}));
}
Expr Expr::var() { return Expr(std::make_shared<const Node>(Node{Kind::Var, {}, {}, nullptr})); }
Expr Expr::add(Expr a, Expr b) {
    return Expr(std::make_shared<const Node>(Node{Kind::Add, {}, {std::move(a), std::move(b)}, nullptr}));
}
Expr Expr::sub(Expr a, Expr b) {
    return Expr(std::make_shared<const Node>(Node{Kind::Sub, {}, {std::move(a), std::move(b)}, nullptr}));
}
Expr Expr::scale(double c, Expr a) {
    return Expr(std::make_shared<const Node>(Node{Kind::Scale, {c}, {std::move(a)}, nullptr}));
}
Expr Expr::poly(std::vector<double> coeffs, Expr arg) {
    if (coeffs.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
    return Expr(std::make_shared<const Node>(Node{Kind::Poly, std::move(coeffs), {std::move(arg)}, nullptr}));
}
Expr Expr::abs(Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Abs, {}, {std::move(arg)}, nullptr}));
}
Expr Expr::min(Expr a, Expr b) {
    return Expr(std::make_shared<const Node>(Node{Kind::Min, {}, {std::move(a), std::move(b)}, nullptr}));
}
Expr Expr::max(Expr a, Expr b) {
    return Expr(std::make_shared<const Node>(Node{Kind::Max, {}, {std::move(a), std::move(b)}, nullptr}));
}
Expr Expr::sin(Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Sin, {}, {std::move(arg)}, nullptr}));
}
Expr Expr::exp(Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Exp, {}, {std::move(arg)}, nullptr}));
}
Expr Expr::recip(Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Recip, {}, {std::move(arg)}, nullptr}));
}
Expr Expr::piecewise_affine(std::vector<double> knots, std::vector<double> values, Expr arg) {
    if (knots.size() < 2 || knots.size() != values.size()) {
        throw InvalidArgument("piecewise-affine needs >= 2 knots and one value per knot");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i - 1] < knots[i])) throw InvalidArgument("piecewise-affine knots must increase");
    }
    std::vector<double> params = std::move(knots);
    params.insert(params.end(), values.begin(), values.end());
    return Expr(std::make_shared<const Node>(Node{Kind::PiecewiseAffine, std::move(params), {std::move(arg)}, nullptr}));
}
Expr Expr::cantor(Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Cantor, {}, {std::move(arg)}, nullptr}));
}
Expr Expr::sawtooth(double period, Expr arg) {
    if (!(period > 0.0)) throw InvalidArgument("sawtooth period must be positive");
    return Expr(std::make_shared<const Node>(Node{Kind::Sawtooth, {period}, {std::move(arg)}, nullptr}));
}
Expr Expr::weierstrass(int terms, Expr arg) {
    if (terms < 0 || terms > 60) throw InvalidArgument("weierstrass term count must be in [0,60]");
    return Expr(std::make_shared<const Node>(
        Node{Kind::Weierstrass, {static_cast<double>(terms)}, {std::move(arg)}, nullptr}));
}
Expr Expr::grid(GridForm g, Expr arg) {
    g.validate();
    return Expr(std::make_shared<const Node>(
        Node{Kind::Grid, {}, {std::move(arg)}, std::make_shared<const GridForm>(std::move(g))}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const std::vector<double>& Expr::params() const { return node_->params; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
const GridForm* Expr::grid_form() const { return node_->grid.get(); }

Expr Expr::compose(const Expr& inner) const {
    if (node_->kind == Kind::Var) return inner;
    if (node_->children.empty()) return *this;
    Node copy = *node_;
    for (auto& child : copy.children) child = child.compose(inner);
    return Expr(std::make_shared<const Node>(std::move(copy)));
}

double Expr::eval(double x) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const: return n.params[0];
        case Kind::Var: return x;
        case Kind::Add: return n.children[0].eval(x) + n.children[1].eval(x);
        case Kind::Sub: return n.children[0].eval(x) - n.children[1].eval(x);
        case Kind::Scale: return n.params[0] * n.children[0].eval(x);
        case Kind::Poly: {
            const double t = n.children[0].eval(x);
            double acc = 0.0;
            for (double c : n.params) acc = acc * t + c;
            return acc;
        }
        case Kind::Abs: return std::abs(n.children[0].eval(x));
        case Kind::Min: return std::min(n.children[0].eval(x), n.children[1].eval(x));
        case Kind::Max: return std::max(n.children[0].eval(x), n.children[1].eval(x));
        case Kind::Sin: return std::sin(n.children[0].eval(x));
        case Kind::Exp: return std::exp(n.children[0].eval(x));
        case Kind::Recip: {
            const double t = n.children[0].eval(x);
            if (t == 0.0) throw DomainError("reciprocal of zero");
            return 1.0 / t;
        }
        case Kind::PiecewiseAffine: return piecewise_affine_value(n.params, n.children[0].eval(x));
        case Kind::Cantor: return cantor_value(n.children[0].eval(x));
        case Kind::Sawtooth: return triangle_wave(n.params[0], n.children[0].eval(x));
        case Kind::Weierstrass: return weierstrass_sum(static_cast<int>(n.params[0]), n.children[0].eval(x));
        case Kind::Grid: return n.grid->eval(n.children[0].eval(x));
    }
    return 0.0;
}

std::string Expr::to_sexpr() const {
    const Node& n = *node_;
    auto arg = [&](std::size_t i) { return n.children[i].to_sexpr(); };
    switch (n.kind) {
        case Kind::Const: return format_real(n.params[0]);
        case Kind::Var: return "x";
        case Kind::Add: return "(add " + arg(0) + " " + arg(1) + ")";
        case Kind::Sub: return "(sub " + arg(0) + " " + arg(1) + ")";
        case Kind::Scale: return "(scale " + format_real(n.params[0]) + " " + arg(0) + ")";
        case Kind::Poly: return "(poly " + vec_text(n.params, 0, n.params.size()) + " " + arg(0) + ")";
        case Kind::Abs: return "(abs " + arg(0) + ")";
        case Kind::Min: return "(min " + arg(0) + " " + arg(1) + ")";
        case Kind::Max: return "(max " + arg(0) + " " + arg(1) + ")";
        case Kind::Sin: return "(sin " + arg(0) + ")";
        case Kind::Exp: return "(exp " + arg(0) + ")";
        case Kind::Recip: return "(recip " + arg(0) + ")";
        case Kind::PiecewiseAffine: {
            const std::size_t half = n.params.size() / 2;
            return "(pwa " + vec_text(n.params, 0, half) + " " + vec_text(n.params, half, n.params.size()) + " " +
                   arg(0) + ")";
        }
        case Kind::Cantor: return "(cantor " + arg(0) + ")";
        case Kind::Sawtooth: return "(sawtooth " + format_real(n.params[0]) + " " + arg(0) + ")";
        case Kind::Weierstrass:
            return "(weier " + std::to_string(static_cast<int>(n.params[0])) + " " + arg(0) + ")";
        case Kind::Grid: {
            const GridForm& g = *n.grid;
            return "(grid " + vec_text(g.knots, 0, g.knots.size()) + " " + vec_text(g.values, 0, g.values.size()) +
                   (g.interpolation == Interpolation::Linear ? " linear " : " none ") + arg(0) + ")";
        }
    }
    return "?";
}

}  // namespace tame
