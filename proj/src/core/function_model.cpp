#include <algorithm>
#include <cmath>

#include "tame/errors.hpp"
#include "tame/function_model.hpp"

namespace tame {

void ToleranceConfig::validate() const {
    if (!(eps_value > 0.0) || !(eps_deriv > 0.0) || !(deriv_step > 0.0)) {
        throw InvalidArgument("tolerances and derivative step must be positive");
    }
    if (grid_n < 8) throw InvalidArgument("grid_n must be at least 8");
}

void GridForm::validate() const {
    if (knots.empty() || knots.size() != values.size()) {
        throw InvalidArgument("grid needs one value per knot and at least one knot");
    }
    if (interpolation == Interpolation::Linear && knots.size() < 2) {
        throw InvalidArgument("linear grid needs at least two knots");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i - 1] < knots[i])) throw InvalidArgument("grid knots must be strictly increasing");
    }
}

double GridForm::eval(double x) const {
    if (x < knots.front() || x > knots.back()) {
        throw DomainError(format_real(x) + " outside grid knots");
    }
    const auto it = std::lower_bound(knots.begin(), knots.end(), x);
    const auto i = static_cast<std::size_t>(it - knots.begin());
    if (*it == x) return values[i];
    if (interpolation == Interpolation::None) {
        throw UndefinedError(format_real(x) + " is not a knot and interpolation is none");
    }
    const double w = (x - knots[i - 1]) / (knots[i] - knots[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

FunctionModel::FunctionModel(Interval domain, Expr expr) : domain_(domain), body_(std::move(expr)) {}

FunctionModel::FunctionModel(Interval domain, GridForm grid) : domain_(domain), body_(std::move(grid)) {
    const auto& g = std::get<GridForm>(body_);
    g.validate();
    for (double k : g.knots) {
        if (!domain_.contains_in_closure(k)) throw InvalidArgument("grid knot " + format_real(k) + " outside domain");
    }
}

FunctionModel::FunctionModel(GridForm grid)
    : FunctionModel(Interval::closed(grid.knots.empty() ? 0.0 : grid.knots.front(),
                                     grid.knots.empty() ? 1.0 : grid.knots.back()),
                    std::move(grid)) {}

const Expr& FunctionModel::expression() const { return std::get<Expr>(body_); }
const GridForm& FunctionModel::grid() const { return std::get<GridForm>(body_); }

double FunctionModel::eval(double x) const {
    if (!domain_.contains(x)) {
        throw DomainError(format_real(x) + " outside domain " + domain_.to_string());
    }
    return eval_closure(x);
}

double FunctionModel::eval_closure(double x) const {
    if (!domain_.contains_in_closure(x)) {
        throw DomainError(format_real(x) + " outside closure of " + domain_.to_string());
    }
    if (const auto* e = std::get_if<Expr>(&body_)) return e->eval(x);
    return std::get<GridForm>(body_).eval(x);
}

FunctionModel FunctionModel::restrict(const Interval& sub) const {
    if (!domain_.closure().contains(sub)) {
        throw DomainError(sub.to_string() + " not inside " + domain_.to_string());
    }
    if (const auto* e = std::get_if<Expr>(&body_)) return {sub, *e};
    return {sub, Expr::grid(std::get<GridForm>(body_))};
}

Expr FunctionModel::as_expr() const {
    if (const auto* e = std::get_if<Expr>(&body_)) return *e;
    return Expr::grid(std::get<GridForm>(body_));
}

namespace {

std::string list_text(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_real(v[i]);
    }
    return out + "]";
}

bool is_var(const Expr& e) { return e.kind() == Expr::Kind::Var; }

// Mini-language atom for the expression, or empty when only the general
// "expr:" form can represent it.
std::string atom_text(const Expr& e) {
    using K = Expr::Kind;
    if (e.children().size() != 1) return {};
    const Expr& arg = e.children()[0];
    switch (e.kind()) {
        case K::Poly:
            if (is_var(arg)) return "poly:" + list_text(e.params());
            return {};
        case K::Abs:
            if (arg.kind() == K::Poly && arg.params().size() == 2 && arg.params()[0] == 1.0 &&
                is_var(arg.children()[0]) && arg.params()[1] != 0.0) {
                return "abs-shift:" + format_real(-arg.params()[1]);
            }
            return {};
        case K::Sin:
            if (is_var(arg)) return "sin";
            if (arg.kind() == K::Recip && is_var(arg.children()[0])) return "sininv";
            return {};
        case K::Cantor: return is_var(arg) ? "cantor" : std::string{};
        case K::Sawtooth: return is_var(arg) ? "sawtooth:" + format_real(e.params()[0]) : std::string{};
        case K::Weierstrass:
            return is_var(arg) ? "weier:" + std::to_string(static_cast<int>(e.params()[0])) : std::string{};
        default: return {};
    }
}

}  // namespace

std::string FunctionModel::to_string() const {
    if (const auto* g = std::get_if<GridForm>(&body_)) {
        std::string out = "grid:" + list_text(g->knots) + "->" + list_text(g->values) +
                          (g->interpolation == Interpolation::Linear ? " linear" : " none");
        if (!(domain_ == Interval::closed(g->knots.front(), g->knots.back()))) {
            out += " on " + domain_.to_string();
        }
        return out;
    }
    const Expr& e = std::get<Expr>(body_);
    std::string atom = atom_text(e);
    if (atom.empty()) atom = "expr:" + e.to_sexpr();
    return atom + " on " + domain_.to_string();
}

FunctionModel make_poly(std::vector<double> coeffs, Interval domain) {
    return {domain, Expr::poly(std::move(coeffs))};
}

FunctionModel make_affine(double slope, double intercept, Interval domain) {
    return {domain, Expr::poly({slope, intercept})};
}

FunctionModel make_abs_shift(double c, Interval domain) {
    return {domain, Expr::abs(Expr::poly({1.0, -c}))};
}

double eval(const FunctionModel& f, double x) { return f.eval(x); }

std::vector<double> grid_points(const Interval& J, int n) {
    if (n < 2) throw InvalidArgument("grid needs at least two points");
    const double nudge = J.length() / (4.0 * n);
    const double lo = J.lo_closed() ? J.lo() : J.lo() + nudge;
    const double hi = J.hi_closed() ? J.hi() : J.hi() - nudge;
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    pts.back() = hi;
    return pts;
}

GridForm sample(const FunctionModel& f, const Interval& J, int n) {
    if (!f.domain().contains(J)) {
        throw DomainError(J.to_string() + " not inside domain " + f.domain().to_string());
    }
    GridForm g;
    g.knots = grid_points(J, n);
    g.values.reserve(g.knots.size());
    for (double x : g.knots) g.values.push_back(f.eval(x));
    g.interpolation = Interpolation::Linear;
    return g;
}

}  // namespace tame
