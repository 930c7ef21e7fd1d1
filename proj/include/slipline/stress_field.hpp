#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "core.hpp"
#include "numerics.hpp"

namespace slipline {

enum class DerivMode { analytic, fd };

inline std::string to_string(DerivMode m) { return m == DerivMode::analytic ? "analytic" : "FD"; }

//! First partials in the field's native coordinates (x,y), (r,phi) or (xi,eta).
struct Partials {
    double s1 = 0.0;  // dsigma/dc1
    double s2 = 0.0;  // dsigma/dc2
    double t1 = 0.0;  // dtheta/dc1
    double t2 = 0.0;  // dtheta/dc2
};

struct CartPartials {
    double sx = 0.0;
    double sy = 0.0;
    double tx = 0.0;
    double ty = 0.0;
};

//! Invariance operator as c0 X1 + c1 X2 + c2 X3 + c3 X4 + c4 dx + c5 dy.
struct SubalgebraTag {
    std::string id;
    double alpha = 0.0;
    std::array<double, 6> combo{};
};

//! Two-parameter net (s, t) covering the field; positions are cartesian.
struct CharNet {
    std::string s_name = "s";
    std::string t_name = "t";
    std::function<Point2(double, double)> position;
    std::function<StressState(double, double)> stress;
    // optional analytic d(x,y)/d(s,t) as {x_s, x_t, y_s, y_t}
    std::function<std::array<double, 4>(double, double)> jacobian;
};

struct StressField {
    std::string name;
    std::map<std::string, double> params;
    std::map<std::string, FunctionParam> functions;
    Frame frame = Frame::cartesian;
    double k = 0.5;
    std::function<StressState(const Point2&)> eval_fn;
    std::function<Partials(const Point2&)> partials_fn;
    std::function<bool(const Point2&, double)> domain_fn;
    std::optional<SubalgebraTag> tag;
    // characteristic frame only: (xi,eta) -> polar point, and {r_xi, r_eta, phi_xi, phi_eta}
    std::function<Point2(const Point2&)> position_fn;
    std::function<std::array<double, 4>(const Point2&)> position_jac_fn;
    std::optional<CharNet> net;

    double param(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw ConfigError("missing parameter " + key);
        return it->second;
    }

    //! Converts p to the native frame. For polar fields phi_ref selects the
    //! 2pi branch of the angle (nearest to phi_ref).
    Point2 native(const Point2& p,
                  double phi_ref = std::numeric_limits<double>::quiet_NaN()) const {
        if (p.frame == frame) return p;
        if (frame == Frame::characteristic || p.frame == Frame::characteristic)
            throw UnsupportedField(name + ": characteristic coordinates cannot be converted");
        if (frame == Frame::cartesian) return p.to_cartesian();
        Point2 q = p.to_polar();
        if (std::isfinite(phi_ref)) q.b = num::wrap_near(q.b, phi_ref);
        return q;
    }

    bool contains(const Point2& p, double margin = 0.0) const {
        try {
            return domain_fn(native(p), margin);
        } catch (const DomainError&) {
            return false;
        }
    }

    StressState eval(const Point2& p) const {
        const Point2 q = native(p);
        if (!domain_fn(q, 0.0)) throw DomainError(name + ": point outside domain");
        return eval_fn(q);
    }

    Partials partials(const Point2& p) const {
        const Point2 q = native(p);
        if (!domain_fn(q, 0.0)) throw DomainError(name + ": point outside domain");
        return partials_fn(q);
    }
};

//! Native partials by central differences with one Richardson step.
inline Partials fd_native_partials(const StressField& f, const Point2& p, double h_scale = 1e-4) {
    const Point2 q = f.native(p);
    auto at = [&](double a, double b) { return f.eval_fn(Point2{a, b, q.frame}); };
    const double h1 = h_scale * std::max(1.0, std::abs(q.a));
    const double h2 = h_scale * std::max(1.0, std::abs(q.b));
    Partials d;
    auto s_a = [&](double a) { return at(a, q.b).sigma; };
    auto t_a = [&](double a) { return at(a, q.b).theta; };
    auto s_b = [&](double b) { return at(q.a, b).sigma; };
    auto t_b = [&](double b) { return at(q.a, b).theta; };
    d.s1 = num::richardson_derivative(s_a, q.a, h1);
    d.t1 = num::richardson_derivative(t_a, q.a, h1);
    d.s2 = num::richardson_derivative(s_b, q.b, h2);
    d.t2 = num::richardson_derivative(t_b, q.b, h2);
    return d;
}

inline Partials native_partials(const StressField& f, const Point2& p, DerivMode mode,
                                double h_scale = 1e-4) {
    if (mode == DerivMode::analytic) return f.partials(p);
    return fd_native_partials(f, p, h_scale);
}

//! Cartesian position of a native point.
inline Point2 cartesian_position(const StressField& f, const Point2& p) {
    if (p.frame == Frame::characteristic) return f.position_fn(p).to_cartesian();
    return p.to_cartesian();
}

//! {r_xi, r_eta, phi_xi, phi_eta} for characteristic fields.
inline std::array<double, 4> position_jacobian(const StressField& f, const Point2& p,
                                               DerivMode mode, double h_scale = 1e-4) {
    if (mode == DerivMode::analytic && f.position_jac_fn) return f.position_jac_fn(p);
    const double h1 = h_scale * std::max(1.0, std::abs(p.a));
    const double h2 = h_scale * std::max(1.0, std::abs(p.b));
    auto r_a = [&](double a) { return f.position_fn(Point2::characteristic(a, p.b)).r(); };
    auto f_a = [&](double a) { return f.position_fn(Point2::characteristic(a, p.b)).phi(); };
    auto r_b = [&](double b) { return f.position_fn(Point2::characteristic(p.a, b)).r(); };
    auto f_b = [&](double b) { return f.position_fn(Point2::characteristic(p.a, b)).phi(); };
    return {num::richardson_derivative(r_a, p.a, h1), num::richardson_derivative(r_b, p.b, h2),
            num::richardson_derivative(f_a, p.a, h1), num::richardson_derivative(f_b, p.b, h2)};
}

//! Polar partials (d/dr, d/dphi) of a characteristic field through the chain.
inline Partials polar_partials_from_char(const StressField& f, const Point2& p, DerivMode mode,
                                         double h_scale = 1e-4) {
    const Partials d = native_partials(f, p, mode, h_scale);
    const auto J = position_jacobian(f, p, mode, h_scale);
    // [d/dxi d/deta] = [d/dr d/dphi] * M, M = [[r_xi, r_eta], [phi_xi, phi_eta]]
    const double det = J[0] * J[3] - J[1] * J[2];
    if (std::abs(det) < 1e-14) throw SingularJacobian(f.name + ": degenerate (xi,eta) chart");
    // inverse rows: d/dr = ( phi_eta d/dxi - phi_xi d/deta)/det, d/dphi = (-r_eta d/dxi + r_xi d/deta)/det
    Partials out;
    out.s1 = (J[3] * d.s1 - J[2] * d.s2) / det;
    out.s2 = (-J[1] * d.s1 + J[0] * d.s2) / det;
    out.t1 = (J[3] * d.t1 - J[2] * d.t2) / det;
    out.t2 = (-J[1] * d.t1 + J[0] * d.t2) / det;
    return out;
}

inline CartPartials polar_to_cart_partials(const Partials& d, double r, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {c * d.s1 - s / r * d.s2, s * d.s1 + c / r * d.s2, c * d.t1 - s / r * d.t2,
            s * d.t1 + c / r * d.t2};
}

inline CartPartials cartesian_partials(const StressField& f, const Point2& p, DerivMode mode,
                                       double h_scale = 1e-4) {
    const Point2 q = f.native(p);
    switch (f.frame) {
        case Frame::cartesian: {
            const Partials d = native_partials(f, q, mode, h_scale);
            return {d.s1, d.s2, d.t1, d.t2};
        }
        case Frame::polar:
            return polar_to_cart_partials(native_partials(f, q, mode, h_scale), q.r(), q.phi());
        case Frame::characteristic: {
            const Point2 pol = f.position_fn(q);
            return polar_to_cart_partials(polar_partials_from_char(f, q, mode, h_scale), pol.r(),
                                          pol.phi());
        }
    }
    return {};
}

}  // namespace slipline
