#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace slipline {

inline constexpr double pi = std::numbers::pi;

enum class Frame { cartesian, polar, characteristic };

inline std::string to_string(Frame f) {
    switch (f) {
        case Frame::cartesian: return "cartesian";
        case Frame::polar: return "polar";
        case Frame::characteristic: return "characteristic";
    }
    return "?";
}

//! A location tagged with its frame. Polar: (r, phi); characteristic: (xi, eta).
struct Point2 {
    double a = 0.0;
    double b = 0.0;
    Frame frame = Frame::cartesian;

    static Point2 cartesian(double x, double y) { return {x, y, Frame::cartesian}; }

    static Point2 polar(double r, double phi) {
        if (!(r > 0.0)) throw SingularCoords("polar point with r <= 0");
        return {r, phi, Frame::polar};
    }

    static Point2 characteristic(double xi, double eta) {
        return {xi, eta, Frame::characteristic};
    }

    double x() const { return a; }
    double y() const { return b; }
    double r() const { return a; }
    double phi() const { return b; }
    double xi() const { return a; }
    double eta() const { return b; }

    Point2 to_cartesian() const {
        switch (frame) {
            case Frame::cartesian: return *this;
            case Frame::polar: return cartesian(a * std::cos(b), a * std::sin(b));
            case Frame::characteristic:
                throw UnsupportedField("characteristic point has no direct cartesian image");
        }
        return *this;
    }

    // phi in (-pi, pi]
    Point2 to_polar() const {
        switch (frame) {
            case Frame::polar: return *this;
            case Frame::cartesian: return polar(std::hypot(a, b), std::atan2(b, a));
            case Frame::characteristic:
                throw UnsupportedField("characteristic point has no direct polar image");
        }
        return *this;
    }
};

//! Levy variables. theta is the cartesian angle unless stated otherwise.
struct StressState {
    double sigma = 0.0;
    double theta = 0.0;
    double k = 0.5;
};

struct FullStress {
    double sigma_x = 0.0;
    double sigma_y = 0.0;
    double tau_xy = 0.0;

    double yield_residual(double k) const {
        const double d = sigma_x - sigma_y;
        return d * d + 4.0 * tau_xy * tau_xy - 4.0 * k * k;
    }
};

inline FullStress levy_to_components(const StressState& s) {
    const double s2 = std::sin(2.0 * s.theta);
    const double c2 = std::cos(2.0 * s.theta);
    return {s.sigma - s.k * s2, s.sigma + s.k * s2, s.k * c2};
}

//! Inverse Levy map. Without a hint 2theta lies in (-pi, pi]; with a hint the
//! 2pi-periodic representative nearest 2*hint is returned.
inline StressState components_to_levy(const FullStress& f, double k,
                                      std::optional<double> theta_hint = std::nullopt,
                                      double tol = 1e-8) {
    if (!(k > 0.0)) throw DomainError("k must be positive");
    if (std::abs(f.yield_residual(k)) > tol * k * k)
        throw YieldViolation("stress state violates the yield condition");
    const double sigma = 0.5 * (f.sigma_x + f.sigma_y);
    double two_theta = std::atan2((f.sigma_y - f.sigma_x) / (2.0 * k), f.tau_xy / k);
    if (theta_hint) {
        const double target = 2.0 * *theta_hint;
        two_theta += 2.0 * pi * std::round((target - two_theta) / (2.0 * pi));
    }
    return {sigma, 0.5 * two_theta, k};
}

inline double theta_cart_from_polar(double theta_p, double phi) { return theta_p + phi; }
inline double theta_polar_from_cart(double theta_c, double phi) { return theta_c - phi; }

//! Scalar function of one variable, optionally with its derivative and an
//! antiderivative. Missing derivatives fall back to Richardson central
//! differences; missing antiderivatives are integrated from 0 by the caller.
struct FunctionParam {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> antiderivative;
    std::string label;

    FunctionParam() = default;
    FunctionParam(std::function<double(double)> fn, std::function<double(double)> d = {},
                  std::function<double(double)> anti = {}, std::string name = {})
        : f(std::move(fn)), df(std::move(d)), antiderivative(std::move(anti)),
          label(std::move(name)) {}

    double operator()(double t) const { return f(t); }

    double deriv(double t) const {
        if (df) return df(t);
        const double h = 1e-4 * std::max(1.0, std::abs(t));
        const double d1 = (f(t + h) - f(t - h)) / (2.0 * h);
        const double d2 = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
        return (4.0 * d2 - d1) / 3.0;
    }

    bool has_antiderivative() const { return static_cast<bool>(antiderivative); }

    static FunctionParam constant(double c) {
        return {[c](double) { return c; }, [](double) { return 0.0; },
                [c](double t) { return c * t; }, "const"};
    }

    static FunctionParam exponential(double c) {
        return {[c](double t) { return c * std::exp(t); }, [c](double t) { return c * std::exp(t); },
                [c](double t) { return c * std::exp(t); }, "exp"};
    }

    //! sum_i coeffs[i] * t^i
    static FunctionParam polynomial(std::vector<double> coeffs);
};

inline FunctionParam FunctionParam::polynomial(std::vector<double> coeffs) {
    auto eval = [coeffs](double t) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
    std::vector<double> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * double(i));
    std::vector<double> anti{0.0};
    for (std::size_t i = 0; i < coeffs.size(); ++i) anti.push_back(coeffs[i] / double(i + 1));
    auto horner = [](std::vector<double> c) {
        return [c](double t) {
            double acc = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
            return acc;
        };
    };
    return {eval, horner(d), horner(anti), "poly"};
}

}  // namespace slipline
