#include <algorithm>
#include <cmath>

#include "tame/errors.hpp"
#include "tame/function_model.hpp"

namespace tame {

namespace {

double base_step(double x, int order, const ToleranceConfig& cfg) {
    const double h = cfg.deriv_step * std::max(1.0, std::abs(x));
    return order == 1 ? h : 10.0 * h;
}

void check_order(int order) {
    if (order != 1 && order != 2) throw InvalidArgument("derivative order must be 1 or 2");
}

// Central difference quotient of the requested order.
template <class F>
double central(const F& f, double x, double h, int order) {
    if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// One-sided quotient stepping in direction dir (+1 forward, -1 backward).
// First-order accurate; callers extrapolate.
template <class F>
double one_sided(const F& f, double x, double h, int order, double dir) {
    const double s = dir * h;
    if (order == 1) return (f(x + s) - f(x)) / s;
    return (f(x + 2.0 * s) - 2.0 * f(x + s) + f(x)) / (h * h);
}

template <class F>
double one_sided_richardson(const F& f, double x, double h, int order, double dir) {
    return 2.0 * one_sided(f, x, 0.5 * h, order, dir) - one_sided(f, x, h, order, dir);
}

}  // namespace

DerivativeEstimate derivative(const FunctionModel& f, double x, int order, const ToleranceConfig& cfg) {
    check_order(order);
    const double h = base_step(x, order, cfg);
    const Interval& dom = f.domain();
    if (!dom.contains(x - 2.0 * h) || !dom.contains(x + 2.0 * h)) {
        throw DomainError("derivative stencil at " + format_real(x) + " leaves " + dom.to_string());
    }
    auto fx = [&](double t) { return f.eval(t); };
    const double coarse = central(fx, x, h, order);
    const double fine = central(fx, x, 0.5 * h, order);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;

    const double forward = one_sided_richardson(fx, x, h, order, +1.0);
    const double backward = one_sided_richardson(fx, x, h, order, -1.0);

    const double limit = 10.0 * cfg.eps_deriv;
    DerivativeEstimate out;
    out.value = extrapolated;
    out.non_smooth = std::abs(extrapolated - fine) > limit || std::abs(forward - backward) > limit;
    return out;
}

double derivative_inward(const FunctionModel& f, double x, int order, const ToleranceConfig& cfg) {
    check_order(order);
    const Interval closure = f.domain().closure();
    if (!closure.contains(x)) {
        throw DomainError(format_real(x) + " outside closure of " + f.domain().to_string());
    }
    double h = base_step(x, order, cfg);
    // Shrink the step on very short domains so one side always fits.
    h = std::min(h, closure.length() / 8.0);
    auto fx = [&](double t) { return f.eval_closure(t); };
    if (closure.contains(x - 2.0 * h) && closure.contains(x + 2.0 * h)) {
        const double coarse = central(fx, x, h, order);
        const double fine = central(fx, x, 0.5 * h, order);
        return (4.0 * fine - coarse) / 3.0;
    }
    const double dir = closure.contains(x + 2.0 * h) ? +1.0 : -1.0;
    return one_sided_richardson(fx, x, h, order, dir);
}

}  // namespace tame
