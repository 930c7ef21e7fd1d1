#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace slipline::num {

//! Central difference with one Richardson step, O(h^4).
template <class F>
double richardson_derivative(F&& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

inline double default_step(double coord) { return 1e-4 * std::max(1.0, std::abs(coord)); }

//! Number of sign changes of f over n equal sub-intervals of [a, b].
template <class F>
int count_sign_changes(F&& f, double a, double b, int n = 64) {
    int count = 0;
    double prev = f(a);
    for (int i = 1; i <= n; ++i) {
        const double x = a + (b - a) * double(i) / double(n);
        const double cur = f(x);
        if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) ++count;
        if (cur != 0.0) prev = cur;
    }
    return count;
}

//! Bisection to tol in x, then one Newton step (kept only if it stays in the
//! final bracket). df may be empty.
inline double bisect_newton(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-12,
                            const std::function<double(double)>& df = {}) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "no sign change on [" << a << ", " << b << "]";
        throw NoRootInBracket(os.str());
    }
    for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double x = 0.5 * (a + b);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double w = hi - lo;
    const double fx = f(x);
    double d = 0.0;
    if (df) {
        d = df(x);
    } else {
        const double h = std::max(w, 1e-9 * std::max(1.0, std::abs(x)));
        d = (f(x + h) - f(x - h)) / (2.0 * h);
    }
    if (d != 0.0 && std::isfinite(d)) {
        const double xn = x - fx / d;
        if (xn >= lo - w && xn <= hi + w) x = xn;
    }
    return x;
}

//! Root of f in [a, b]; MultipleRoots if sampling shows more than one sign change.
inline double unique_root(const std::function<double(double)>& f, double a, double b,
                          int samples = 64, double tol = 1e-12,
                          const std::function<double(double)>& df = {}) {
    const int n = count_sign_changes(f, a, b, samples);
    if (n > 1) {
        std::ostringstream os;
        os << n << " sign changes on [" << a << ", " << b << "]";
        throw MultipleRoots(os.str());
    }
    return bisect_newton(f, a, b, tol, df);
}

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth, int& evals) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals += 2;
    if (!std::isfinite(flm) || !std::isfinite(frm))
        throw QuadratureFailure("non-finite integrand");
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
        if (std::abs(delta) > 15.0 * tol * 1e3)
            throw QuadratureFailure("adaptive Simpson depth exhausted");
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

}  // namespace detail

//! Adaptive Simpson with absolute tolerance tol. The interval is split once
//! up front so a symmetric integrand cannot fool the first estimate.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw QuadratureFailure("non-finite integrand");
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    int evals = 5;
    return detail::simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, max_depth, evals) +
           detail::simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, max_depth, evals);
}

using Vec2 = std::array<double, 2>;

//! One classical RK4 step for y' = f(y).
template <class F>
Vec2 rk4_step(F&& f, const Vec2& y, double h) {
    const Vec2 k1 = f(y);
    const Vec2 k2 = f(Vec2{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const Vec2 k3 = f(Vec2{y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const Vec2 k4 = f(Vec2{y[0] + h * k3[0], y[1] + h * k3[1]});
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

inline double wrap_near(double angle, double ref) {
    return angle + 2.0 * std::numbers::pi * std::round((ref - angle) / (2.0 * std::numbers::pi));
}

}  // namespace slipline::num
