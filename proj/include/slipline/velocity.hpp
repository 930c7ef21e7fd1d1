#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "characteristics.hpp"

namespace slipline {

struct VelocityPartials {
    double ux = 0.0;
    double uy = 0.0;
    double vx = 0.0;
    double vy = 0.0;
};

struct StrainRates {
    double e_x = 0.0;
    double e_y = 0.0;
    double gamma_xy = 0.0;  // (u_y + v_x) / 2
};

inline StrainRates strain_rates(const VelocityPartials& d) { return {d.ux, d.vy, 0.5 * (d.uy + d.vx)}; }

//! Velocity field on cartesian points, tied to the stress field it was built for.
struct VelocityField {
    std::string name;
    std::map<std::string, double> params;
    std::map<std::string, FunctionParam> functions;
    StressField background;
    std::function<num::Vec2(const Point2&)> eval_fn;
    std::function<VelocityPartials(const Point2&)> partials_fn;
    std::function<bool(const Point2&, double)> domain_fn;

    bool contains(const Point2& p, double margin = 0.0) const {
        try {
            return domain_fn(p.to_cartesian(), margin);
        } catch (const DomainError&) {
            return false;
        }
    }

    num::Vec2 eval(const Point2& p) const {
        const Point2 c = p.to_cartesian();
        if (!domain_fn(c, 0.0)) throw DomainError(name + ": point outside domain");
        return eval_fn(c);
    }

    VelocityPartials partials(const Point2& p) const {
        const Point2 c = p.to_cartesian();
        if (!domain_fn(c, 0.0)) throw DomainError(name + ": point outside domain");
        return partials_fn(c);
    }
};

inline VelocityPartials fd_velocity_partials(const VelocityField& vf, const Point2& p, double h_scale = 1e-4) {
    const Point2 c = p.to_cartesian();
    const double hx = h_scale * std::max(1.0, std::abs(c.x()));
    const double hy = h_scale * std::max(1.0, std::abs(c.y()));
    auto comp = [&](int i, double x, double y) { return vf.eval_fn(Point2::cartesian(x, y))[std::size_t(i)]; };
    VelocityPartials d;
    d.ux = num::richardson_derivative([&](double x) { return comp(0, x, c.y()); }, c.x(), hx);
    d.uy = num::richardson_derivative([&](double y) { return comp(0, c.x(), y); }, c.y(), hy);
    d.vx = num::richardson_derivative([&](double x) { return comp(1, x, c.y()); }, c.x(), hx);
    d.vy = num::richardson_derivative([&](double y) { return comp(1, c.x(), y); }, c.y(), hy);
    return d;
}

inline VelocityPartials velocity_partials(const VelocityField& vf, const Point2& p, DerivMode mode,
                                          double h_scale = 1e-4) {
    if (mode == DerivMode::analytic) return vf.partials(p);
    if (!vf.contains(p)) throw DomainError(vf.name + ": point outside domain");
    return fd_velocity_partials(vf, p, h_scale);
}

//! r1 = (u_y + v_x) sin 2theta + (u_x - v_y) cos 2theta, r2 = u_x + v_y.
inline num::Vec2 velocity_residual(const VelocityField& vf, const StressField& bg, const Point2& p,
                                   DerivMode mode = DerivMode::analytic, double h_scale = 1e-4) {
    const StressState s = bg.eval(p);
    const VelocityPartials d = velocity_partials(vf, p, mode, h_scale);
    return {(d.uy + d.vx) * std::sin(2.0 * s.theta) + (d.ux - d.vy) * std::cos(2.0 * s.theta), d.ux + d.vy};
}

inline double dissipation(const FullStress& fs, const StrainRates& sr) {
    return fs.sigma_x * sr.e_x + fs.sigma_y * sr.e_y + 2.0 * fs.tau_xy * sr.gamma_xy;
}

inline double dissipation_at(const VelocityField& vf, const StressField& bg, const Point2& p,
                             DerivMode mode = DerivMode::analytic) {
    return dissipation(levy_to_components(bg.eval(p)), strain_rates(velocity_partials(vf, p, mode)));
}

//! Sign of the common ratio (u_x - v_y)/(sigma_x - sigma_y) = (v_x + u_y)/(2 tau_xy),
//! decided from the cross-multiplied products.
inline bool dissipation_sign_ok(const VelocityField& vf, const StressField& bg, const Point2& p,
                                DerivMode mode = DerivMode::analytic, double tol = 1e-14) {
    const FullStress fs = levy_to_components(bg.eval(p));
    const VelocityPartials d = velocity_partials(vf, p, mode);
    const double a = (d.ux - d.vy) * (fs.sigma_x - fs.sigma_y);
    const double b = (d.vx + d.uy) * fs.tau_xy;
    const double scale = std::max({std::abs(fs.sigma_x - fs.sigma_y), std::abs(fs.tau_xy), 1e-300});
    if (std::abs(fs.sigma_x - fs.sigma_y) < tol * scale && std::abs(fs.tau_xy) < tol * scale)
        throw IndeterminateAtStressIsotropy(vf.name + ": both stress denominators vanish");
    return a >= -tol && b >= -tol;
}

// ---------------------------------------------------------------- Prandtl-background catalog

namespace vcat {

namespace detail {

inline bool strip(const Point2& p, double margin) { return std::abs(p.y()) <= 1.0 - margin; }

inline VelocityField base(std::string name, std::map<std::string, double> params) {
    VelocityField vf;
    vf.name = std::move(name);
    vf.params = std::move(params);
    vf.background = catalog::prandtl();
    vf.domain_fn = strip;
    return vf;
}

inline double sq(double y) { return std::sqrt(std::max(0.0, 1.0 - y * y)); }

}  // namespace detail

inline VelocityField nadai() {
    auto vf = detail::base("nadai", {});
    vf.eval_fn = [](const Point2& p) { return num::Vec2{p.x() - 2.0 * detail::sq(p.y()), -p.y()}; };
    vf.partials_fn = [](const Point2& p) {
        const double s = detail::sq(p.y());
        return VelocityPartials{1.0, 2.0 * p.y() / s, 0.0, -1.0};
    };
    return vf;
}

inline VelocityField yakhno(double C1 = 3.0, double C2 = pi) {
    auto vf = detail::base("yakhno", {{"C1", C1}, {"C2", C2}});
    vf.eval_fn = [=](const Point2& p) {
        const double x = p.x(), y = p.y(), s = detail::sq(y);
        return num::Vec2{x * x - 3.0 * y * y - 4.0 * x * s + C1,
                         2.0 * y * s - 2.0 * std::acos(std::clamp(y, -1.0, 1.0)) - 2.0 * x * y + C2};
    };
    vf.partials_fn = [](const Point2& p) {
        const double x = p.x(), y = p.y(), s = detail::sq(y);
        return VelocityPartials{2.0 * x - 4.0 * s, -6.0 * y + 4.0 * x * y / s, -2.0 * y,
                                2.0 * s - 2.0 * y * y / s + 2.0 / s - 2.0 * x};
    };
    return vf;
}

inline VelocityField ivlev_senashov(double c1 = 0.0, double c2 = 0.0) {
    auto vf = detail::base("ivlev_senashov", {{"c1", c1}, {"c2", c2}});
    vf.eval_fn = [=](const Point2& p) {
        const double x = p.x(), y = p.y(), s = detail::sq(y);
        return num::Vec2{x * y + std::asin(std::clamp(y, -1.0, 1.0)) - y * s + c1, -0.5 * (x * x + y * y) + c2};
    };
    vf.partials_fn = [](const Point2& p) {
        const double x = p.x(), y = p.y(), s = detail::sq(y);
        return VelocityPartials{y, x + 1.0 / s - s + y * y / s, -x, -y};
    };
    return vf;
}

//! Scale-invariant family: u = F sin psi, v = F cos psi with F = c2 cosh^{1/2} w,
//! psi = (1/2) arccos tanh w - (1/2) arcsin y, w = x - sqrt(1-y^2) + c1.
inline VelocityField theta3(double c1 = 0.0, double c2 = 1.0) {
    auto vf = detail::base("theta3", {{"c1", c1}, {"c2", c2}});
    vf.eval_fn = [=](const Point2& p) {
        const double y = p.y();
        const double w = p.x() - detail::sq(y) + c1;
        const double F = c2 * std::sqrt(std::cosh(w));
        const double psi = 0.5 * std::acos(std::tanh(w)) - 0.5 * std::asin(std::clamp(y, -1.0, 1.0));
        return num::Vec2{F * std::sin(psi), F * std::cos(psi)};
    };
    vf.partials_fn = [=](const Point2& p) {
        const double y = p.y(), s = detail::sq(y);
        const double w = p.x() - s + c1;
        const double h = std::tanh(w);
        const double F = c2 * std::sqrt(std::cosh(w));
        const double psi = 0.5 * std::acos(h) - 0.5 * std::asin(y);
        const double Fw = 0.5 * F * h;
        const double psiw = -0.5 / std::cosh(w);
        const double zy = y / s;
        const double sn = std::sin(psi), cs = std::cos(psi);
        const double uw = Fw * sn + F * cs * psiw;
        const double vw = Fw * cs - F * sn * psiw;
        const double psiy = -0.5 / s;
        return VelocityPartials{uw, uw * zy + F * cs * psiy, vw, vw * zy - F * sn * psiy};
    };
    return vf;
}

//! Rotation-type family with ln f = (2/3) int_0^z cos 2g, g = arctan(2 - sqrt3 tanh(z/sqrt3 + c)),
//! z = x - sqrt(1-y^2) - (1/2) arcsin y; u = f sin psi, v = f cos psi, psi = g - (1/2) arcsin y.
inline VelocityField theta4(double c = 0.0, double quad_tol = 1e-12) {
    auto vf = detail::base("theta4", {{"const", c}, {"quad_tol", quad_tol}});
    const double r3 = std::sqrt(3.0);
    auto w_of = [=](double z) { return 2.0 - r3 * std::tanh(z / r3 + c); };
    auto cos2g = [=](double z) {
        const double w = w_of(z);
        return (1.0 - w * w) / (1.0 + w * w);
    };
    auto lnf = [=](double z) { return 2.0 / 3.0 * num::adaptive_simpson(cos2g, 0.0, z, quad_tol); };
    vf.eval_fn = [=](const Point2& p) {
        const double y = p.y();
        const double as = std::asin(std::clamp(y, -1.0, 1.0));
        const double z = p.x() - detail::sq(y) - 0.5 * as;
        const double f = std::exp(lnf(z));
        const double psi = std::atan(w_of(z)) - 0.5 * as;
        return num::Vec2{f * std::sin(psi), f * std::cos(psi)};
    };
    vf.partials_fn = [=](const Point2& p) {
        const double y = p.y(), s = detail::sq(y);
        const double as = std::asin(y);
        const double z = p.x() - s - 0.5 * as;
        const double f = std::exp(lnf(z));
        const double w = w_of(z);
        const double psi = std::atan(w) - 0.5 * as;
        const double ch = std::cosh(z / r3 + c);
        const double gz = -1.0 / (ch * ch) / (1.0 + w * w);
        const double fz = 2.0 / 3.0 * cos2g(z) * f;
        const double zy = (2.0 * y - 1.0) / (2.0 * s);
        const double sn = std::sin(psi), cs = std::cos(psi);
        const double uz = fz * sn + f * cs * gz;
        const double vz = fz * cs - f * sn * gz;
        const double psiy = -0.5 / s;
        return VelocityPartials{uz, uz * zy + f * cs * psiy, vz, vz * zy - f * sn * psiy};
    };
    return vf;
}

enum class Theta2Branch { printed, smooth };

//! Translation family u = e^{-x/2} f(y), v = e^{-x/2} g(y). The smooth branch uses
//! q(y) = arcsin y - y/(1+s), s = sqrt(1-y^2); the printed branch is sign(y) times it.
inline VelocityField theta2(double c1 = 0.0, double c2 = -1.0, Theta2Branch branch = Theta2Branch::printed) {
    auto vf = detail::base("theta2", {{"c1", c1}, {"c2", c2}, {"branch", branch == Theta2Branch::printed ? 0.0 : 1.0}});
    auto sgn = [branch](double y) { return branch == Theta2Branch::smooth ? 1.0 : (y < 0.0 ? -1.0 : 1.0); };
    vf.eval_fn = [=](const Point2& p) {
        const double y = std::clamp(p.y(), -1.0, 1.0), s = detail::sq(y);
        const double E = std::exp(0.5 * (-p.x() + s));
        const double P = std::sqrt(1.0 + s);
        const double q = std::asin(y) - y / (1.0 + s);
        const double g = sgn(y);
        return num::Vec2{g * E * P * (c1 + c2 * q), g * E / P * (c1 * y + c2 * (1.0 + s + y * std::asin(y)))};
    };
    vf.partials_fn = [=](const Point2& p) {
        const double y = p.y(), s = detail::sq(y);
        const double E = std::exp(0.5 * (-p.x() + s));
        const double Ey = -y * E / (2.0 * s);
        const double P = std::sqrt(1.0 + s);
        const double Py = -y / (2.0 * s * P);
        const double as = std::asin(y);
        const double Q = c1 + c2 * (as - y / (1.0 + s));
        const double Qy = c2 / (1.0 + s);
        const double R = c1 * y + c2 * (1.0 + s + y * as);
        const double Ry = c1 + c2 * as;
        const double g = sgn(y);
        const double u = E * P * Q, v = E * R / P;
        return VelocityPartials{-0.5 * g * u, g * (Ey * P * Q + E * Py * Q + E * P * Qy), -0.5 * g * v,
                                g * (Ey * R / P + E * Ry / P - E * R * Py / (P * P))};
    };
    // the printed branch jumps across y = 0
    if (branch == Theta2Branch::printed)
        vf.domain_fn = [](const Point2& p, double margin) {
            return detail::strip(p, margin) && (margin == 0.0 || std::abs(p.y()) >= margin);
        };
    return vf;
}

//! Closed-form dissipation of the theta2 family with c1 = 0 (printed branch).
inline double theta2_dissipation_closed(double x, double y, double c2) {
    const double s = detail::sq(y);
    if (y == 0.0) return 0.0;
    return -c2 * (s - 1.0 + y * std::asin(y)) / (2.0 * std::sqrt(1.0 - s) * s) * std::exp(0.5 * (-x + s));
}

//! u = a + omega y, v = b - omega x: compatible with every background.
inline VelocityField rigid(double a = 0.0, double b = 0.0, double omega = 1.0,
                           std::optional<StressField> bg = std::nullopt) {
    auto vf = detail::base("rigid", {{"a", a}, {"b", b}, {"omega", omega}});
    if (bg) {
        vf.background = *bg;
        vf.domain_fn = [f = *bg](const Point2& p, double margin) { return f.contains(p, margin); };
    }
    vf.eval_fn = [=](const Point2& p) { return num::Vec2{a + omega * p.y(), b - omega * p.x()}; };
    vf.partials_fn = [=](const Point2&) { return VelocityPartials{0.0, omega, -omega, 0.0}; };
    return vf;
}

enum class StraightFamily { first, second };

//! Velocities on a simple-wave background. first: the first family is straight (odd n),
//! U(theta) along it is constant on each line and Vc = V(J1 + PhiHat) - UHat with
//! J1 = x cos theta + y sin theta. second: the mirror for even n with
//! J2 = x sin theta - y cos theta. Velocity = Uc (cos, sin) + Vc (-sin, cos).
inline VelocityField simple_wave_velocity(const FunctionParam& U, const FunctionParam& V, StraightFamily fam,
                                          const StressField& bg) {
    if (!bg.functions.count("Phi") || !bg.params.count("n"))
        throw BackgroundMismatch("simple_wave_velocity: background is not a simple wave");
    const bool even = int(bg.param("n")) % 2 == 0;
    if ((fam == StraightFamily::second) != even)
        throw BackgroundMismatch("simple_wave_velocity: straight family does not match the background parity");
    VelocityField vf;
    vf.name = "simple_wave_velocity";
    vf.params = {{"family", fam == StraightFamily::first ? 1.0 : 2.0}};
    vf.functions = {{"U", U}, {"V", V}};
    vf.background = bg;
    vf.domain_fn = [bg](const Point2& p, double margin) { return bg.contains(p, margin); };
    const FunctionParam Phi = bg.functions.at("Phi");
    auto hat = [](const FunctionParam& F, double t) { return phi_hat(F, t); };
    // components (Uc, Vc) along (cos, sin) and (-sin, cos), plus their theta/J derivatives
    struct Comp {
        double Uc, Vc, Uc_t, Vc_t, Uc_J, Vc_J, J;
    };
    auto comp = [=](double x, double y, double th) {
        const double c = std::cos(th), s = std::sin(th);
        Comp k{};
        if (fam == StraightFamily::first) {
            k.J = x * c + y * s;
            const double arg = k.J + hat(Phi, th);
            k.Uc = U(th);
            k.Vc = V(arg) - hat(U, th);
            k.Uc_t = U.deriv(th);
            k.Uc_J = 0.0;
            // d/dtheta at fixed J
            k.Vc_t = V.deriv(arg) * Phi(th) - U(th);
            k.Vc_J = V.deriv(arg);
        } else {
            k.J = x * s - y * c;
            const double arg = k.J - hat(Phi, th);
            k.Vc = V(th);
            k.Uc = U(arg) + hat(V, th);
            k.Vc_t = V.deriv(th);
            k.Vc_J = 0.0;
            k.Uc_t = -U.deriv(arg) * Phi(th) + V(th);
            k.Uc_J = U.deriv(arg);
        }
        return k;
    };
    vf.eval_fn = [=](const Point2& p) {
        const double th = bg.eval_fn(p).theta;
        const auto k = comp(p.x(), p.y(), th);
        const double c = std::cos(th), s = std::sin(th);
        return num::Vec2{k.Uc * c - k.Vc * s, k.Uc * s + k.Vc * c};
    };
    vf.partials_fn = [=](const Point2& p) {
        const StressState st = bg.eval_fn(p);
        const Partials d = bg.partials_fn(p);
        const double th = st.theta, tx = d.t1, ty = d.t2;
        const double c = std::cos(th), s = std::sin(th);
        const auto k = comp(p.x(), p.y(), th);
        // J as a function of (x, y, theta)
        const double Jx = fam == StraightFamily::first ? c : s;
        const double Jy = fam == StraightFamily::first ? s : -c;
        const double Jt = fam == StraightFamily::first ? -p.x() * s + p.y() * c : p.x() * c + p.y() * s;
        auto total = [&](double dJ, double dth, double fJ, double ft) { return fJ * (dJ + Jt * dth) + ft * dth; };
        const double Ucx = total(Jx, tx, k.Uc_J, k.Uc_t), Ucy = total(Jy, ty, k.Uc_J, k.Uc_t);
        const double Vcx = total(Jx, tx, k.Vc_J, k.Vc_t), Vcy = total(Jy, ty, k.Vc_J, k.Vc_t);
        // u = Uc c - Vc s, v = Uc s + Vc c
        const double ut = -k.Uc * s - k.Vc * c, vt = k.Uc * c - k.Vc * s;
        return VelocityPartials{Ucx * c - Vcx * s + ut * tx, Ucy * c - Vcy * s + ut * ty, Ucx * s + Vcx * c + vt * tx,
                                Ucy * s + Vcy * c + vt * ty};
    };
    return vf;
}

}  // namespace vcat

// ---------------------------------------------------------------- streamlines

struct Streamline {
    std::vector<Point2> points;
    std::vector<num::Vec2> velocity;
    std::vector<double> s;
    std::string stop_reason;

    std::size_t size() const { return points.size(); }
};

//! RK4 on the unit velocity direction (arc-length parameter).
inline Streamline trace_streamline(const VelocityField& vf, const Point2& start, double step = 1e-3,
                                   double max_arclen = 1.0, double margin = 1e-2) {
    const Point2 p0 = start.to_cartesian();
    if (!vf.contains(p0, margin)) throw StartOutsideDomain(vf.name + ": start point outside domain");
    auto vel = [&](const num::Vec2& q) { return vf.eval_fn(Point2::cartesian(q[0], q[1])); };
    num::Vec2 u0 = vel({p0.x(), p0.y()});
    if (std::hypot(u0[0], u0[1]) < 1e-12) throw StagnationPoint(vf.name + ": zero velocity at start");
    Streamline out;
    out.points.push_back(p0);
    out.velocity.push_back(u0);
    out.s.push_back(0.0);
    num::Vec2 y{p0.x(), p0.y()};
    double s = 0.0;
    out.stop_reason = "max_arclen";
    const int nsteps = int(std::ceil(max_arclen / step - 1e-9));
    for (int i = 0; i < nsteps; ++i) {
        const double h = std::min(step, max_arclen - s);
        bool stagnant = false;
        auto rhs = [&](const num::Vec2& q) {
            const num::Vec2 w = vel(q);
            const double n = std::hypot(w[0], w[1]);
            if (n < 1e-12) {
                stagnant = true;
                return num::Vec2{0.0, 0.0};
            }
            return num::Vec2{w[0] / n, w[1] / n};
        };
        const num::Vec2 yn = num::rk4_step(rhs, y, h);
        if (stagnant) {
            out.stop_reason = "stagnation";
            break;
        }
        const Point2 pn = Point2::cartesian(yn[0], yn[1]);
        if (!vf.contains(pn, margin)) {
            out.stop_reason = "domain_boundary";
            break;
        }
        y = yn;
        s += h;
        out.points.push_back(pn);
        out.velocity.push_back(vel(yn));
        out.s.push_back(s);
    }
    return out;
}

//! Implicit streamline functions (constant along streamlines).
inline double nadai_stream_invariant(double x, double y) {
    const double s = std::sqrt(1.0 - y * y);
    return x * y - y * s - std::asin(y);
}
inline double yakhno_stream_invariant(double x, double y) {
    const double s = std::sqrt(1.0 - y * y);
    return 2.0 * x * std::acos(y) + y * x * x - 2.0 * x * y * s - pi * x - y * y * y + 3.0 * y;
}
//! theta2 with c2 = 0.
inline double theta2_stream_invariant(double x, double y) {
    const double s = std::sqrt(1.0 - y * y);
    return x - s - std::log(1.0 - s);
}

}  // namespace slipline
