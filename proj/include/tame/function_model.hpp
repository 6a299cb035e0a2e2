#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tame/interval.hpp"

namespace tame {

/// Tolerances shared by every analysis. Defaults match the double-precision
/// central-difference error budget.
struct ToleranceConfig {
    double eps_value = 1e-9;
    double eps_deriv = 1e-6;
    int grid_n = 1024;
    double deriv_step = 1e-4;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument unless all fields are positive and grid_n >= 8.
    void validate() const;
};

enum class Interpolation { Linear, None };

/// Sampled function: strictly increasing knots with one value per knot.
struct GridForm {
    std::vector<double> knots;
    std::vector<double> values;
    Interpolation interpolation = Interpolation::Linear;

    void validate() const;
    double eval(double x) const;
};

/// Immutable expression tree over the builtin catalog. Every unary builtin is
/// applied to an argument sub-expression, so composition with affine
/// re-parameterizations stays inside the catalog.
class Expr {
public:
    enum class Kind {
        Const,
        Var,
        Add,
        Sub,
        Scale,
        Poly,
        Abs,
        Min,
        Max,
        Sin,
        Exp,
        Recip,
        PiecewiseAffine,
        Cantor,
        Sawtooth,
        Weierstrass,
        Grid,
    };

    static Expr constant(double c);
    static Expr var();
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr scale(double c, Expr a);
    /// Coefficients from highest degree down to the constant term.
    static Expr poly(std::vector<double> coeffs, Expr arg = var());
    static Expr abs(Expr arg);
    static Expr min(Expr a, Expr b);
    static Expr max(Expr a, Expr b);
    static Expr sin(Expr arg);
    static Expr exp(Expr arg);
    static Expr recip(Expr arg);
    static Expr piecewise_affine(std::vector<double> knots, std::vector<double> values, Expr arg = var());
    static Expr cantor(Expr arg = var());
    /// Continuous triangle wave with the given period and slopes +-1.
    static Expr sawtooth(double period, Expr arg = var());
    /// sum_{n=0}^{N} 2^-n cos(2^n pi x).
    static Expr weierstrass(int terms, Expr arg = var());
    static Expr grid(GridForm g, Expr arg = var());

    /// Replaces every occurrence of the variable with `inner`.
    Expr compose(const Expr& inner) const;

    double eval(double x) const;

    Kind kind() const;
    const std::vector<double>& params() const;
    const std::vector<Expr>& children() const;
    const GridForm* grid_form() const;

    /// Canonical S-expression text, e.g. "(add (poly [1,0,0] x) (scale -2 x))".
    std::string to_sexpr() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// A real function on an interval: closed-form or grid-sampled.
class FunctionModel {
public:
    using Body = std::variant<Expr, GridForm>;

    FunctionModel(Interval domain, Expr expr);
    FunctionModel(Interval domain, GridForm grid);
    /// Grid model whose domain is the closed hull of its knots.
    explicit FunctionModel(GridForm grid);

    const Interval& domain() const noexcept { return domain_; }
    const Body& body() const noexcept { return body_; }
    bool is_expression() const noexcept { return std::holds_alternative<Expr>(body_); }
    const Expr& expression() const;
    const GridForm& grid() const;

    /// Checked evaluation: DomainError outside the domain (per openness).
    double eval(double x) const;
    /// Evaluation on the closure of the domain; used where endpoint values
    /// of a continuous model are needed.
    double eval_closure(double x) const;

    /// The same model on a sub-interval. DomainError when `sub` is not inside.
    FunctionModel restrict(const Interval& sub) const;

    /// As an expression (grid bodies become a Grid leaf) for composition.
    Expr as_expr() const;

    /// Canonical one-line text in the function spec mini-language.
    std::string to_string() const;

private:
    Interval domain_;
    Body body_;
};

// Common catalog constructors.
FunctionModel make_poly(std::vector<double> coeffs, Interval domain);
FunctionModel make_affine(double slope, double intercept, Interval domain);
FunctionModel make_abs_shift(double c, Interval domain);

/// Parses the one-line function spec mini-language. Throws ParseError.
FunctionModel parse_function_spec(std::string_view text);

/// Reads a two-column CSV ("x,fx" header required) into a grid model.
FunctionModel read_grid_csv(std::string_view csv_text, Interpolation interpolation = Interpolation::Linear);

double eval(const FunctionModel& f, double x);

struct DerivativeEstimate {
    double value = 0.0;
    /// Set when successive extrapolation levels, or the one-sided estimates,
    /// disagree by more than 10 * eps_deriv.
    bool non_smooth = false;
};

/// Central difference with one Richardson step. Order 1 uses step
/// deriv_step * max(1,|x|); order 2 uses ten times that. Requires the
/// stencil radius (twice the step) inside the domain.
DerivativeEstimate derivative(const FunctionModel& f, double x, int order, const ToleranceConfig& cfg);

/// Like `derivative`, but switches to second-order one-sided stencils near
/// the ends of the domain closure instead of failing.
double derivative_inward(const FunctionModel& f, double x, int order, const ToleranceConfig& cfg);

/// n equally spaced knots over J, nudged inward by (hi-lo)/(4n) at open ends.
std::vector<double> grid_points(const Interval& J, int n);

/// Samples f on J with n knots; the result interpolates linearly.
GridForm sample(const FunctionModel& f, const Interval& J, int n);

}  // namespace tame
