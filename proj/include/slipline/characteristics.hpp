#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "stress_catalog.hpp"

namespace slipline {

enum class Family { first, second };

inline std::string to_string(Family f) { return f == Family::first ? "first" : "second"; }

struct CharCoords {
    double xi = 0.0;
    double eta = 0.0;
};

//! xi = sigma/2k - theta (constant along first-family lines), eta = sigma/2k + theta.
inline CharCoords riemann_invariants(const StressState& s) {
    return {s.sigma / (2.0 * s.k) - s.theta, s.sigma / (2.0 * s.k) + s.theta};
}

//! Unit slip direction. For Frame::polar theta is theta^p and the result is in
//! the local (e_r, e_phi) basis; otherwise theta is cartesian.
inline num::Vec2 slip_direction(double theta, Family fam) {
    const double c = std::cos(theta), s = std::sin(theta);
    return fam == Family::first ? num::Vec2{c, s} : num::Vec2{s, -c};
}

inline num::Vec2 slip_direction(const StressState& s, Family fam) { return slip_direction(s.theta, fam); }

struct Polyline {
    Family family = Family::first;
    std::vector<Point2> points;  // cartesian
    std::vector<StressState> stress;
    std::vector<double> s;       // arc length
    std::string stop_reason;

    std::size_t size() const { return points.size(); }
};

namespace detail {

// native point of a cartesian location; polar angles are kept near phi_ref
inline Point2 local_point(const StressField& f, const Point2& p, double phi_ref) {
    return f.native(p, phi_ref);
}

inline double dot(const num::Vec2& a, const num::Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

}  // namespace detail

struct TraceOptions {
    double step = 1e-3;
    double max_arclen = 1.0;
    double margin = 1e-2;
    int direction = 1;  // +1 follows the family direction at the start, -1 reverses it
};

//! Fixed-step RK4 along the slip direction field in cartesian coordinates.
inline Polyline trace_slipline(const StressField& f, const Point2& start, Family fam,
                               const TraceOptions& opt = {}) {
    if (f.frame == Frame::characteristic)
        throw UnsupportedField(f.name + ": trace the (xi, eta) net with closed_form_family instead");
    if (!(opt.step > 0.0)) throw ConfigError("trace step must be positive");
    const Point2 p0 = start.to_cartesian();
    double phi_ref = std::atan2(p0.y(), p0.x());
    if (f.frame == Frame::polar && start.frame == Frame::polar) phi_ref = start.phi();
    auto inside = [&](const Point2& c, double ref) {
        try {
            return f.domain_fn(detail::local_point(f, c, ref), opt.margin);
        } catch (const DomainError&) {
            return false;
        }
    };
    if (!inside(p0, phi_ref)) throw StartOutsideDomain(f.name + ": start point outside domain");

    auto stress_at = [&](const num::Vec2& q, double ref) {
        return f.eval_fn(detail::local_point(f, Point2::cartesian(q[0], q[1]), ref));
    };

    Polyline out;
    out.family = fam;
    num::Vec2 y{p0.x(), p0.y()};
    StressState st = stress_at(y, phi_ref);
    num::Vec2 dir = slip_direction(st, fam);
    if (opt.direction < 0) dir = {-dir[0], -dir[1]};
    out.points.push_back(p0);
    out.stress.push_back(st);
    out.s.push_back(0.0);

    const int nsteps = int(std::ceil(opt.max_arclen / opt.step - 1e-9));
    double s = 0.0;
    out.stop_reason = "max_arclen";
    for (int i = 0; i < nsteps; ++i) {
        const double h = std::min(opt.step, opt.max_arclen - s);
        const double ref = phi_ref;
        const num::Vec2 ref_dir = dir;
        bool bad = false;
        auto rhs = [&](const num::Vec2& q) {
            num::Vec2 d{0.0, 0.0};
            try {
                d = slip_direction(stress_at(q, ref), fam);
            } catch (const DomainError&) {
                bad = true;
                return ref_dir;
            }
            if (!std::isfinite(d[0]) || !std::isfinite(d[1])) {
                bad = true;
                return ref_dir;
            }
            if (detail::dot(d, ref_dir) < 0.0) d = {-d[0], -d[1]};
            return d;
        };
        const num::Vec2 yn = num::rk4_step(rhs, y, h);
        if (bad) {
            out.stop_reason = "singular_direction";
            break;
        }
        const Point2 pn = Point2::cartesian(yn[0], yn[1]);
        const double ref_n = num::wrap_near(std::atan2(yn[1], yn[0]), phi_ref);
        if (!inside(pn, ref_n)) {
            out.stop_reason = "domain_boundary";
            break;
        }
        StressState sn;
        try {
            sn = stress_at(yn, ref_n);
        } catch (const DomainError&) {
            out.stop_reason = "domain_boundary";
            break;
        }
        num::Vec2 dn = slip_direction(sn, fam);
        if (detail::dot(dn, dir) < 0.0) dn = {-dn[0], -dn[1]};
        if (detail::dot(dn, dir) < 0.5) {
            out.stop_reason = "singular_direction";
            break;
        }
        y = yn;
        phi_ref = ref_n;
        dir = dn;
        s += h;
        out.points.push_back(pn);
        out.stress.push_back(sn);
        out.s.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- closed-form families

struct ParametricCurve {
    std::string param = "t";
    double t0 = 0.0;
    double t1 = 1.0;
    Family family = Family::first;
    std::function<Point2(double)> at;  // cartesian

    std::vector<Point2> sample(int n) const {
        std::vector<Point2> pts;
        pts.reserve(std::size_t(n));
        for (int i = 0; i < n; ++i) pts.push_back(at(t0 + (t1 - t0) * double(i) / double(n - 1)));
        return pts;
    }
};

namespace detail {

inline double two_circles_arctan(double C2, double tau) {
    return std::atan(std::sqrt((C2 + 1.0) / (C2 - 1.0)) * std::tan(0.5 * tau));
}

}  // namespace detail

//! Two-circles slip lines as phi(tau), tau = 2 theta^p; valid for tau in (-pi, pi).
inline double two_circles_family_phi(double C2, double tau, Family fam) {
    const double A = detail::two_circles_arctan(C2, tau);
    if (fam == Family::first) return -0.5 * tau + std::sqrt((C2 - 1.0) / (C2 + 1.0)) * A;
    return -0.5 * tau + std::sqrt((C2 + 1.0) / (C2 - 1.0)) * A;
}

//! Implicit slip-line relations for a = 1, b = sqrt 2, as stated (value is constant along a line).
//! epicycloid: (1/sqrt2) T - arcsin(2r^2-3) - sqrt2 phi; hypocycloid: sqrt2 T - arcsin(2r^2-3) - 2 sqrt2 phi,
//! T = arctan((3r^2-4) / (2 sqrt2 sqrt((r^2-1)(2-r^2)))).
inline double epicycloid_relation(double r, double phi) {
    const double r2 = r * r;
    const double T = std::atan((3.0 * r2 - 4.0) / (2.0 * std::sqrt(2.0) * std::sqrt((r2 - 1.0) * (2.0 - r2))));
    return T / std::sqrt(2.0) - std::asin(2.0 * r2 - 3.0) - std::sqrt(2.0) * phi;
}
inline double hypocycloid_relation(double r, double phi) {
    const double r2 = r * r;
    const double T = std::atan((3.0 * r2 - 4.0) / (2.0 * std::sqrt(2.0) * std::sqrt((r2 - 1.0) * (2.0 - r2))));
    return std::sqrt(2.0) * T - std::asin(2.0 * r2 - 3.0) - 2.0 * std::sqrt(2.0) * phi;
}

//! Spiral (alpha = 1, A = 2 sqrt2 k) slip lines: phi = -g + c tan(g + pi/8) + C.
inline double spiral_family_phi(double g, double C, Family fam) {
    const double coef = fam == Family::first ? (1.0 + std::sqrt(2.0)) / (2.0 * std::sqrt(2.0))
                                             : (std::sqrt(2.0) - 1.0) / (2.0 * std::sqrt(2.0));
    return -g + coef * std::tan(g + pi / 8.0) + C;
}

//! Antiderivative of Phi with value 0 at t = 0 (analytic when supplied).
inline double phi_hat(const FunctionParam& Phi, double t) {
    if (Phi.has_antiderivative()) return Phi.antiderivative(t) - Phi.antiderivative(0.0);
    return num::adaptive_simpson([&](double x) { return Phi(x); }, 0.0, t, 1e-12);
}

//! One slip line of the given family. curve_const selects the member; the
//! returned curve is parameterised over [t0, t1] (defaults per field).
inline ParametricCurve closed_form_family(const StressField& f, Family fam, double curve_const,
                                          std::optional<std::pair<double, double>> range = std::nullopt) {
    ParametricCurve c;
    c.family = fam;
    auto set_range = [&](double a, double b) {
        c.t0 = range ? range->first : a;
        c.t1 = range ? range->second : b;
    };
    const std::string& n = f.name;
    if (n == "prandtl") {
        if (f.param("m") != 1.0) throw UnsupportedField("prandtl: closed-form slip lines need m = 1");
        const double h = f.param("h");
        const double sgn = fam == Family::first ? -1.0 : 1.0;
        c.param = "theta";
        set_range(-pi / 2.0, 0.0);
        c.at = [h, sgn, curve_const](double t) {
            const double y = h * std::cos(2.0 * t);
            return Point2::cartesian(sgn * 2.0 * h * t + std::sqrt(std::max(0.0, h * h - y * y)) + curve_const, y);
        };
        return c;
    }
    if (n == "nadai_cavity" || (n == "nadai_channel_singular" && f.param("form") == 0.0)) {
        // theta^p = pi/4: logarithmic spirals r = K e^{+-phi}
        const double sgn = fam == Family::first ? 1.0 : -1.0;
        c.param = "phi";
        set_range(-pi / 2.0, pi / 2.0);
        c.at = [sgn, curve_const](double phi) { return Point2::polar(curve_const * std::exp(sgn * phi), phi).to_cartesian(); };
        return c;
    }
    if (n == "nadai_channel") {
        const auto br = catalog::ChannelBranch::make(f.param("c"), f.params.count("c1") ? f.param("c1")
                                                                                       : f.param("c2"));
        const double sgn = fam == Family::first ? -1.0 : 1.0;
        c.param = "psi";
        set_range(br.psi_lo + 1e-6, br.psi_hi - 1e-6);
        c.at = [br, sgn, curve_const](double psi) {
            const double r = curve_const * std::exp(sgn * br.theta(psi) / br.c) /
                             std::sqrt(std::abs(br.c + std::sin(2.0 * psi)));
            return Point2::polar(r, br.phi(psi)).to_cartesian();
        };
        return c;
    }
    if (n == "nadai_two_circles") {
        const catalog::TwoCircles tc{f.param("a"), f.param("b"), f.param("k"), int(f.param("branch"))};
        const double C2 = tc.C2();
        c.param = "tau";
        set_range(tc.branch > 0 ? 1e-6 : -pi + 1e-6, tc.branch > 0 ? pi - 1e-6 : -1e-6);
        c.at = [tc, C2, fam, curve_const](double tau) {
            return Point2::polar(tc.r_of_tau(tau), two_circles_family_phi(C2, tau, fam) + curve_const).to_cartesian();
        };
        return c;
    }
    if (n == "spiral") {
        if (f.param("closed") != 1.0) throw UnsupportedField("spiral: closed-form slip lines need alpha = 1, A = 2 sqrt2 k");
        const catalog::Spiral sp(f.param("A"), f.param("alpha"), f.param("k"), true);
        c.param = "g";
        set_range(-pi / 4.0 + 1e-6, pi / 4.0 - 1e-6);
        c.at = [sp, fam, curve_const](double g) {
            const double phi = spiral_family_phi(g, curve_const, fam);
            return Point2::polar(std::exp(phi + sp.log_lambda(g)), phi).to_cartesian();
        };
        return c;
    }
    if (n == "simple_wave" || n == "spiral_simple_wave" || n == "centered_fan") {
        const FunctionParam Phi = f.functions.at("Phi");
        const bool even = int(f.param("n")) % 2 == 0;
        // straight family: second for even n, first for odd n
        const bool straight = (fam == Family::second) == even;
        if (straight) {
            const double th = curve_const;
            c.param = "t";
            set_range(-1.0, 1.0);
            c.at = [Phi, th, even](double t) {
                const double cs = std::cos(th), sn = std::sin(th), P = Phi(th);
                return even ? Point2::cartesian(P * cs + t * sn, P * sn - t * cs)
                            : Point2::cartesian(P * sn + t * cs, -P * cs + t * sn);
            };
        } else {
            c.param = "theta";
            set_range(f.param("theta_lo"), f.param("theta_hi"));
            c.at = [Phi, even, curve_const](double th) {
                const double cs = std::cos(th), sn = std::sin(th), P = Phi(th);
                if (even) {
                    const double t = phi_hat(Phi, th) + curve_const;
                    return Point2::cartesian(P * cs + t * sn, P * sn - t * cs);
                }
                const double t = -phi_hat(Phi, th) + curve_const;
                return Point2::cartesian(P * sn + t * cs, -P * cs + t * sn);
            };
        }
        return c;
    }
    if (n == "revuzhenko") {
        // xi is constant along first-family lines, eta along second-family lines
        c.param = fam == Family::first ? "eta" : "xi";
        set_range(0.05, 1.0);
        auto pos = f.position_fn;
        c.at = [pos, fam, curve_const](double t) {
            const Point2 q = fam == Family::first ? Point2::characteristic(curve_const, t)
                                                  : Point2::characteristic(t, curve_const);
            return pos(q).to_cartesian();
        };
        return c;
    }
    throw UnsupportedField(n + ": no closed-form slip lines");
}

// ---------------------------------------------------------------- envelopes

struct EnvelopeCurve {
    std::string label;
    Family family = Family::first;  // family the curve envelopes
    std::string construction;       // "closed-form" or "numeric"
    std::vector<Point2> points;     // cartesian
    std::vector<num::Vec2> params;  // net parameters (s, t) when known
};

namespace detail {

inline EnvelopeCurve sample_envelope(std::string label, Family fam, const std::function<Point2(double)>& at,
                                     double t0, double t1, int n,
                                     const std::function<num::Vec2(double)>& par = {}) {
    EnvelopeCurve e;
    e.label = std::move(label);
    e.family = fam;
    e.construction = "closed-form";
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * double(i) / double(n - 1);
        e.points.push_back(at(t));
        if (par) e.params.push_back(par(t));
    }
    return e;
}

}  // namespace detail

//! Fold curves of the (xi, eta) chart: 2 v (xi^2 + eta^2) = sign w gives
//! w(v) = (sign + root sqrt(1 - 16 v^4)) / (4 v), with (v, w) = (xi, eta) or (eta, xi).
inline double revuzhenko_envelope_root(double v, int sign, int root) {
    const double d = 1.0 - 16.0 * v * v * v * v;
    if (d < 0.0 || v == 0.0) throw NoEnvelope("revuzhenko: fold parameter must lie in (0, 1/2] in modulus");
    return (double(sign) + double(root) * std::sqrt(d)) / (4.0 * v);
}

inline std::vector<EnvelopeCurve> envelope_closed_form(const StressField& f, int n = 201) {
    std::vector<EnvelopeCurve> out;
    const std::string& nm = f.name;
    if (nm == "revuzhenko") {
        const int sign = int(f.param("sign"));
        auto pos = f.position_fn;
        // eta(xi) curves: the xi-derivative of the map vanishes, the fold is tangent to
        // xi = const (first family); xi(eta) curves mirror this for the second family
        for (bool eta_of_xi : {true, false}) {
            for (int root : {-1, 1}) {
                for (double side : {-1.0, 1.0}) {
                    // stay clear of |v| = 1/2 (double root) and v -> 0 (w -> infinity)
                    const double a = side * 0.05, b = side * 0.4999;
                    auto par = [sign, root, eta_of_xi](double v) {
                        const double w = revuzhenko_envelope_root(v, sign, root);
                        return eta_of_xi ? num::Vec2{v, w} : num::Vec2{w, v};
                    };
                    auto at = [pos, par](double v) {
                        const auto p = par(v);
                        return pos(Point2::characteristic(p[0], p[1])).to_cartesian();
                    };
                    std::string lbl = std::string(eta_of_xi ? "eta_of_xi" : "xi_of_eta") +
                                      (root < 0 ? "_minus" : "_plus") + (side < 0 ? "_neg" : "_pos");
                    out.push_back(detail::sample_envelope(lbl, eta_of_xi ? Family::first : Family::second, at,
                                                          a, b, n, par));
                }
            }
        }
        return out;
    }
    if (nm == "nadai_two_circles") {
        const double a = f.param("a"), b = f.param("b");
        auto circle = [](double r) { return [r](double t) { return Point2::polar(r, t).to_cartesian(); }; };
        out.push_back(detail::sample_envelope("r=a", Family::first, circle(a), -pi, pi, n));
        out.push_back(detail::sample_envelope("r=b", Family::second, circle(b), -pi, pi, n));
        return out;
    }
    if (nm == "spiral") {
        const catalog::Spiral sp(f.param("A"), f.param("alpha"), f.param("k"), f.param("closed") == 1.0);
        for (double g : {sp.g_hi(), sp.g_lo()}) {
            if (std::abs(sp.D(g)) > 1e-9) continue;  // branch edge is not a fold
            const double L = sp.log_lambda(g), al = sp.alpha();
            auto at = [L, al](double phi) { return Point2::polar(std::exp(L + al * phi), phi).to_cartesian(); };
            // at D = 0 the slip direction of the family with theta^p = g is tangent to lambda = const
            const double tp = g;
            const num::Vec2 tangent{al, 1.0};
            const auto d1 = slip_direction(tp, Family::first);
            const double cr = std::abs(d1[0] * tangent[1] - d1[1] * tangent[0]);
            out.push_back(detail::sample_envelope(g > 0 ? "g=g_hi" : "g=g_lo",
                                                  cr < 1e-9 ? Family::first : Family::second, at, -pi / 2.0,
                                                  pi / 2.0, n));
        }
        if (out.empty()) throw NoEnvelope("spiral: no fold on the main branch");
        return out;
    }
    if (nm == "spiral_simple_wave") {
        const double C = f.param("C");
        auto at = [C](double phi) {
            return Point2::polar(C * std::sqrt(2.0) * std::exp(phi - pi / 4.0), phi).to_cartesian();
        };
        out.push_back(detail::sample_envelope("log_spiral", Family::second, at, -pi / 4.0, 3.0 * pi / 4.0, n));
        return out;
    }
    if (nm == "simple_wave") {
        const FunctionParam Phi = f.functions.at("Phi");
        const bool even = int(f.param("n")) % 2 == 0;
        auto at = [Phi, even](double t) {
            const double c = std::cos(t), s = std::sin(t), P = Phi(t), dP = Phi.deriv(t);
            return even ? Point2::cartesian(P * c - dP * s, P * s + dP * c)
                        : Point2::cartesian(P * s + dP * c, -P * c + dP * s);
        };
        out.push_back(detail::sample_envelope("edge_of_regression", even ? Family::second : Family::first, at,
                                              f.param("theta_lo"), f.param("theta_hi"), n));
        return out;
    }
    if (nm == "nadai_channel") {
        const double c = f.param("c");
        if (c * c < 1.0) throw NoEnvelope("nadai_channel: no envelope for c^2 < 1");
        const auto br = catalog::ChannelBranch::make(c, f.params.count("c1") ? f.param("c1") : 0.0);
        // walls: rays where theta^p = 0 or -pi/2 (c > 1), 0 or pi/2 (c < -1)
        for (double psi : {br.psi_lo, br.psi_hi}) {
            const double ph = br.phi(psi);
            auto at = [ph](double r) { return Point2::polar(r, ph).to_cartesian(); };
            const auto d1 = slip_direction(psi, Family::first);
            out.push_back(detail::sample_envelope("wall", std::abs(d1[1]) < 1e-9 ? Family::first : Family::second,
                                                  at, 0.1, 2.0, n));
        }
        return out;
    }
    throw NoEnvelope(nm + ": no documented envelope");
}

//! det d(x,y)/d(s,t) of a characteristic net (analytic jacobian when supplied).
inline double net_jacobian(const CharNet& net, double s, double t, double h = 1e-5) {
    if (net.jacobian) {
        const auto J = net.jacobian(s, t);
        return J[0] * J[3] - J[1] * J[2];
    }
    auto xs = [&](double a) { return net.position(a, t).x(); };
    auto ys = [&](double a) { return net.position(a, t).y(); };
    auto xt = [&](double b) { return net.position(s, b).x(); };
    auto yt = [&](double b) { return net.position(s, b).y(); };
    const double hs = h * std::max(1.0, std::abs(s));
    const double ht = h * std::max(1.0, std::abs(t));
    return num::richardson_derivative(xs, s, hs) * num::richardson_derivative(yt, t, ht) -
           num::richardson_derivative(xt, t, ht) * num::richardson_derivative(ys, s, hs);
}

struct NetRegion {
    double s0 = 0.0, s1 = 1.0, t0 = 0.0, t1 = 1.0;
};

//! Zero set of the net jacobian: for each of `grid` rows of the fixed parameter,
//! sign changes along the scanned parameter (t, or s when scan_t is false) on
//! `grid` samples are refined by bisection to tol.
inline EnvelopeCurve envelope_numeric(const StressField& f, Family fam, const NetRegion& reg, int grid = 400,
                                      double tol = 1e-10, bool scan_t = true) {
    if (!f.net) throw UnsupportedField(f.name + ": no characteristic net");
    const CharNet& net = *f.net;
    EnvelopeCurve e;
    e.label = f.name + "_numeric";
    e.family = fam;
    e.construction = "numeric";
    const double a0 = scan_t ? reg.s0 : reg.t0, a1 = scan_t ? reg.s1 : reg.t1;
    const double b0 = scan_t ? reg.t0 : reg.s0, b1 = scan_t ? reg.t1 : reg.s1;
    for (int i = 0; i < grid; ++i) {
        const double a = a0 + (a1 - a0) * double(i) / double(grid - 1);
        auto J = [&](double b) { return scan_t ? net_jacobian(net, a, b) : net_jacobian(net, b, a); };
        double bp = b0;
        double jp = J(bp);
        for (int j = 1; j < grid; ++j) {
            const double b = b0 + (b1 - b0) * double(j) / double(grid - 1);
            const double jc = J(b);
            if (std::isfinite(jp) && std::isfinite(jc) && ((jp < 0.0 && jc > 0.0) || (jp > 0.0 && jc < 0.0))) {
                const double root = num::bisect_newton(J, bp, b, tol);
                const num::Vec2 st = scan_t ? num::Vec2{a, root} : num::Vec2{root, a};
                e.params.push_back(st);
                e.points.push_back(net.position(st[0], st[1]));
            }
            bp = b;
            jp = jc;
        }
    }
    if (e.points.empty()) throw NoSignChange(f.name + ": net jacobian has no sign change in region");
    return e;
}

//! Largest angle (rad) between the envelope tangent and the slip direction of its
//! family, over interior samples. stress_at gives the stress at a sample index.
inline double envelope_tangency(const EnvelopeCurve& e, const std::function<StressState(std::size_t)>& stress_at) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < e.points.size(); ++i) {
        const num::Vec2 t{e.points[i + 1].x() - e.points[i - 1].x(), e.points[i + 1].y() - e.points[i - 1].y()};
        const double nt = std::hypot(t[0], t[1]);
        if (nt == 0.0) continue;
        const auto d = slip_direction(stress_at(i), e.family);
        const double cr = std::abs(t[0] * d[1] - t[1] * d[0]) / nt;
        worst = std::max(worst, std::asin(std::min(1.0, cr)));
    }
    return worst;
}

}  // namespace slipline
