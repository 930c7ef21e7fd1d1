#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "stress_field.hpp"

namespace slipline::catalog {

namespace detail {

inline SubalgebraTag tag(std::string id, double alpha, std::array<double, 6> combo) {
    return {std::move(id), alpha, combo};
}

inline bool polar_r_ok(const Point2& p, double rmin, double margin) { return p.r() >= rmin + margin; }

}  // namespace detail

// ---------------------------------------------------------------- Prandtl

//! Block compressed between rough plates y = +-h.
inline StressField prandtl(double c = 0.0, double m = 1.0, double h = 1.0, double k = 0.5) {
    if (!(k > 0.0) || !(h > 0.0)) throw ConfigError("prandtl: k and h must be positive");
    if (m < 0.0 || m > 1.0) throw ConfigError("prandtl: m must lie in [0, 1]");
    StressField f;
    f.name = "prandtl";
    f.params = {{"c", c}, {"m", m}, {"h", h}, {"k", k}};
    f.frame = Frame::cartesian;
    f.k = k;
    f.domain_fn = [h](const Point2& p, double margin) { return std::abs(p.y()) <= h - margin; };
    f.eval_fn = [=](const Point2& p) {
        const double w = m * p.y() / h;
        const double root = std::sqrt(std::max(0.0, 1.0 - w * w));
        return StressState{k * (-c - m * p.x() / h + root), -0.5 * std::acos(std::clamp(w, -1.0, 1.0)),
                           k};
    };
    f.partials_fn = [=](const Point2& p) {
        const double w = m * p.y() / h;
        const double root = std::sqrt(1.0 - w * w);
        return Partials{-k * m / h, -k * (m * m * p.y() / (h * h)) / root, 0.0, 0.5 * (m / h) / root};
    };
    if (m > 0.0) f.tag = detail::tag("sigma_translation_x", 0.0, {0, 0, 1, 0, -h / (k * m), 0});
    return f;
}

// ---------------------------------------------------------------- Nadai cavity

inline StressField nadai_cavity(double R = 1.0, double p = 0.0, double k = 0.5) {
    if (!(R > 0.0) || !(k > 0.0)) throw ConfigError("nadai_cavity: R and k must be positive");
    StressField f;
    f.name = "nadai_cavity";
    f.params = {{"R", R}, {"p", p}, {"k", k}};
    f.frame = Frame::polar;
    f.k = k;
    f.domain_fn = [R](const Point2& q, double margin) { return detail::polar_r_ok(q, R, margin); };
    f.eval_fn = [=](const Point2& q) {
        return StressState{2.0 * k * std::log(q.r() / R) + k - p, q.phi() + pi / 4.0, k};
    };
    f.partials_fn = [=](const Point2& q) { return Partials{2.0 * k / q.r(), 0.0, 0.0, 1.0}; };
    f.tag = detail::tag("Theta2", 1.0 / (2.0 * k), {1.0 / (2.0 * k), 0, 1, 0, 0, 0});
    return f;
}

// ---------------------------------------------------------------- Nadai vortex

inline StressField nadai_vortex(double R = 1.0, double p = 0.0, double k = 0.5) {
    if (!(R > 0.0) || !(k > 0.0)) throw ConfigError("nadai_vortex: R and k must be positive");
    StressField f;
    f.name = "nadai_vortex";
    f.params = {{"R", R}, {"p", p}, {"k", k}};
    f.frame = Frame::polar;
    f.k = k;
    f.domain_fn = [R](const Point2& q, double margin) { return detail::polar_r_ok(q, R, margin); };
    f.eval_fn = [=](const Point2& q) {
        const double a = std::acos(std::min(1.0, R * R / (q.r() * q.r())));
        return StressState{-k * std::log(std::tan(0.5 * a + pi / 4.0)) - p, q.phi() - pi / 2.0 + 0.5 * a,
                           k};
    };
    f.partials_fn = [=](const Point2& q) {
        const double r = q.r();
        const double w = std::sqrt(r * r * r * r - R * R * R * R);
        const double da = 2.0 * R * R / (r * w);
        return Partials{-2.0 * k * r / w, 0.0, 0.5 * da, 1.0};
    };
    f.tag = detail::tag("Theta3", 0.0, {0, 1, 0, 0, 0, 0});
    return f;
}

// ---------------------------------------------------------------- Nadai channel

//! theta(psi) and the monotone psi-interval of one channel branch, psi = theta - phi.
struct ChannelBranch {
    double c = 2.0;
    double shift = 0.0;  // c1 (c^2 > 1) or c2 (c^2 < 1)
    double psi_lo = 0.0;
    double psi_hi = 0.0;

    double theta(double psi) const {
        if (c * c > 1.0) {
            const double q = std::sqrt(c * c - 1.0);
            return c / q * std::atan2(c * std::sin(psi) + std::cos(psi), q * std::cos(psi)) - shift;
        }
        const double q = std::sqrt(1.0 - c * c);
        const double w = std::clamp((c * std::tan(psi) + 1.0) / q, -1.0, 1.0);
        return -c / q * std::atanh(w) - shift;
    }

    double phi(double psi) const { return theta(psi) - psi; }

    double dphi_dpsi(double psi) const {
        const double s2 = std::sin(2.0 * psi);
        return -s2 / (c + s2);
    }

    static ChannelBranch make(double c, double shift) {
        ChannelBranch b;
        b.c = c;
        b.shift = shift;
        if (c > 1.0) {
            b.psi_lo = -pi / 2.0;
            b.psi_hi = 0.0;
        } else if (c < -1.0) {
            b.psi_lo = 0.0;
            b.psi_hi = pi / 2.0;
        } else if (c > 0.0) {
            b.psi_lo = -pi / 2.0 + 0.5 * std::asin(c);
            b.psi_hi = -0.5 * std::asin(c);
        } else {
            b.psi_lo = 0.5 * std::asin(-c);
            b.psi_hi = pi / 2.0 - 0.5 * std::asin(-c);
        }
        return b;
    }

    //! psi with phi(psi) = target, or NoRootInBracket.
    double solve(double target) const {
        const double eps = (c * c > 1.0) ? 0.0 : 1e-13;
        auto g = [&](double s) { return phi(s) - target; };
        auto dg = [&](double s) { return dphi_dpsi(s); };
        return num::bisect_newton(g, psi_lo + eps, psi_hi - eps, 1e-12, dg);
    }
};

inline StressField nadai_channel(double c = 2.0, double k = 0.5, double cst = 0.0, double shift = 0.0) {
    if (c == 0.0 || std::abs(std::abs(c) - 1.0) < 1e-12)
        throw ConfigError("nadai_channel: c must be nonzero and |c| != 1 (see nadai_channel_singular)");
    if (!(k > 0.0)) throw ConfigError("nadai_channel: k must be positive");
    const auto br = ChannelBranch::make(c, shift);
    StressField f;
    f.name = "nadai_channel";
    f.params = {{"c", c}, {"k", k}, {"const", cst}, {c * c > 1.0 ? "c1" : "c2", shift}};
    f.frame = Frame::polar;
    f.k = k;
    auto psi_of = [br](const Point2& q) { return br.solve(q.phi()); };
    f.domain_fn = [br](const Point2& q, double margin) {
        if (!(q.r() > margin)) return false;
        if (br.c * br.c > 1.0) {
            const double a = br.phi(br.psi_lo);
            const double b = br.phi(br.psi_hi);
            return q.phi() >= std::min(a, b) + margin && q.phi() <= std::max(a, b) - margin;
        }
        try {
            const double psi = br.solve(q.phi());
            return std::abs(br.c + std::sin(2.0 * psi)) > margin * margin;
        } catch (const NoRootInBracket&) {
            return false;
        }
    };
    f.eval_fn = [=](const Point2& q) {
        const double psi = psi_of(q);
        const double th = br.theta(psi);
        const double sigma = -2.0 * k * c * std::log(q.r()) -
                             k * c * std::log(std::abs(c + std::sin(2.0 * psi))) + cst;
        return StressState{sigma, th, k};
    };
    f.partials_fn = [=](const Point2& q) {
        const double psi = psi_of(q);
        const double s2 = std::sin(2.0 * psi);
        const double c2 = std::cos(2.0 * psi);
        return Partials{-2.0 * k * c / q.r(), 2.0 * k * c * c2 / s2, 0.0, -c / s2};
    };
    const double alpha = -1.0 / (2.0 * k * c);
    f.tag = detail::tag("Theta2", alpha, {alpha, 0, 1, 0, 0, 0});
    f.net = CharNet{"psi", "log_r",
                    [br](double psi, double lr) {
                        return Point2::polar(std::exp(lr), br.phi(psi)).to_cartesian();
                    },
                    [br, k, c, cst](double psi, double lr) {
                        return StressState{-2.0 * k * c * lr -
                                               k * c * std::log(std::abs(c + std::sin(2.0 * psi))) + cst,
                                           br.theta(psi), k};
                    },
                    {}};
    return f;
}

//! c = 1 relatives. form 0: singular theta = phi + pi/4, sigma = 2k ln r + const
//! (the cavity form); form 1: non-singular theta = A - 1/(tan psi + 1).
inline StressField nadai_channel_singular(double k = 0.5, double cst = 0.0, int form = 0, double A = 0.0) {
    if (!(k > 0.0)) throw ConfigError("nadai_channel_singular: k must be positive");
    StressField f;
    f.name = "nadai_channel_singular";
    f.params = {{"k", k}, {"const", cst}, {"form", double(form)}, {"A", A}};
    f.frame = Frame::polar;
    f.k = k;
    if (form == 0) {
        f.domain_fn = [](const Point2& q, double margin) { return q.r() > margin; };
        f.eval_fn = [=](const Point2& q) {
            return StressState{2.0 * k * std::log(q.r()) + cst, q.phi() + pi / 4.0, k};
        };
        f.partials_fn = [=](const Point2& q) { return Partials{2.0 * k / q.r(), 0.0, 0.0, 1.0}; };
        f.tag = detail::tag("Theta2", 1.0 / (2.0 * k), {1.0 / (2.0 * k), 0, 1, 0, 0, 0});
        return f;
    }
    if (form != 1) throw ConfigError("nadai_channel_singular: form must be 0 or 1");
    // psi in (-pi/4, 0] covers phi in (-inf, A - 1]
    auto theta_of = [A](double psi) { return A - 1.0 / (std::tan(psi) + 1.0); };
    auto solve = [theta_of](double phi) {
        auto g = [&](double s) { return theta_of(s) - s - phi; };
        auto dg = [](double s) {
            const double s2 = std::sin(2.0 * s);
            return -s2 / (1.0 + s2);
        };
        return num::bisect_newton(g, -pi / 4.0 + 1e-9, 0.0, 1e-12, dg);
    };
    f.domain_fn = [=](const Point2& q, double margin) {
        return q.r() > margin && q.phi() <= A - 1.0 - margin && q.phi() > A - 1.0 - 1e8;
    };
    f.eval_fn = [=](const Point2& q) {
        const double psi = solve(q.phi());
        return StressState{-2.0 * k * std::log(q.r()) - k * std::log(1.0 + std::sin(2.0 * psi)) + cst,
                           theta_of(psi), k};
    };
    f.partials_fn = [=](const Point2& q) {
        const double psi = solve(q.phi());
        const double s2 = std::sin(2.0 * psi);
        return Partials{-2.0 * k / q.r(), 2.0 * k * std::cos(2.0 * psi) / s2, 0.0, -1.0 / s2};
    };
    f.tag = detail::tag("Theta2", -1.0 / (2.0 * k), {-1.0 / (2.0 * k), 0, 1, 0, 0, 0});
    return f;
}

// ---------------------------------------------------------------- two circles

struct TwoCircles {
    double a = 1.0;
    double b = std::sqrt(2.0);
    double k = 0.5;
    int branch = 1;  // sign of theta^p

    double C1() const { return -2.0 * a * a * b * b / (b * b - a * a); }
    double C2() const { return (a * a + b * b) / (b * b - a * a); }

    //! tau = 2 theta^p in [0, pi] (branch +1) or [-pi, 0].
    double tau(double r) const {
        const double c = std::clamp(C1() / (r * r) + C2(), -1.0, 1.0);
        return branch * std::acos(c);
    }

    double r_of_tau(double t) const { return std::sqrt(C1() / (std::cos(t) - C2())); }

    double dfdtau(double t) const {
        const double c = std::cos(t);
        const double s = std::sin(t);
        return k * c + k * s * s / (c - C2());
    }

    //! f with f(a) = 0 by quadrature in tau.
    double f_of_tau(double t) const {
        const double t0 = branch * pi;
        return num::adaptive_simpson([this](double x) { return dfdtau(x); }, t0, t, 1e-13);
    }
};

inline StressField nadai_two_circles(double a = 1.0, double b = std::sqrt(2.0), double k = 0.5,
                                     int branch = 1) {
    if (!(a > 0.0) || !(b > a)) throw ConfigError("nadai_two_circles: need 0 < a < b");
    if (!(k > 0.0)) throw ConfigError("nadai_two_circles: k must be positive");
    if (branch != 1 && branch != -1) throw ConfigError("nadai_two_circles: branch must be +-1");
    const TwoCircles tc{a, b, k, branch};
    StressField f;
    f.name = "nadai_two_circles";
    f.params = {{"a", a}, {"b", b}, {"k", k}, {"branch", double(branch)}};
    f.frame = Frame::polar;
    f.k = k;
    f.domain_fn = [a, b](const Point2& q, double margin) {
        return q.r() >= a + margin && q.r() <= b - margin;
    };
    f.eval_fn = [tc](const Point2& q) {
        const double t = tc.tau(q.r());
        return StressState{-2.0 * tc.k * tc.C2() * q.phi() + tc.f_of_tau(t), q.phi() + 0.5 * t, tc.k};
    };
    f.partials_fn = [tc](const Point2& q) {
        const double r = q.r();
        const double t = tc.tau(r);
        const double gp = tc.C1() / (r * r * r * std::sin(t));
        const double fp = 2.0 * tc.k * gp * std::cos(t) + 2.0 * tc.k * std::sin(t) / r;
        return Partials{fp, -2.0 * tc.k * tc.C2(), gp, 1.0};
    };
    const double c2 = tc.C2();
    f.tag = detail::tag("Theta4-", 0.0, {0, -1.0 / (2.0 * k * c2), 1, 0, 0, 0});
    f.net = CharNet{"tau", "phi",
                    [tc](double t, double phi) { return Point2::polar(tc.r_of_tau(t), phi).to_cartesian(); },
                    [tc](double t, double phi) {
                        return StressState{-2.0 * tc.k * tc.C2() * phi + tc.f_of_tau(t), phi + 0.5 * t, tc.k};
                    },
                    {}};
    return f;
}

// ---------------------------------------------------------------- Revuzhenko

//! Closed form in characteristic parameters (xi, eta), 2k = 1. sign +1 is the
//! upper choice phi = ... - arctan(eta/xi), r = e^{+2 xi eta}...
inline StressField revuzhenko(int sign = 1) {
    if (sign != 1 && sign != -1) throw ConfigError("revuzhenko: sign must be +-1");
    const double k = 0.5;
    const double s = sign;
    StressField f;
    f.name = "revuzhenko";
    f.params = {{"sign", s}, {"k", k}};
    f.frame = Frame::characteristic;
    f.k = k;
    f.domain_fn = [](const Point2& p, double margin) {
        return std::abs(p.xi()) > margin && std::abs(p.eta()) > margin && p.xi() != 0.0 && p.eta() != 0.0;
    };
    f.eval_fn = [k](const Point2& p) {
        const double x = p.xi(), e = p.eta();
        return StressState{x * x + e * e, e * e - x * x - pi / 4.0, k};
    };
    f.partials_fn = [](const Point2& p) {
        return Partials{2.0 * p.xi(), 2.0 * p.eta(), -2.0 * p.xi(), 2.0 * p.eta()};
    };
    f.position_fn = [s](const Point2& p) {
        const double x = p.xi(), e = p.eta();
        if (x == 0.0 || e == 0.0) throw SingularCoords("revuzhenko: xi and eta must be nonzero");
        const double phi = e * e - x * x - pi / 4.0 - s * std::atan(e / x);
        const double r = std::exp(2.0 * s * x * e) * std::sqrt(1.0 / (x * x) + 1.0 / (e * e));
        return Point2::polar(r, phi);
    };
    f.position_jac_fn = [s, pos = f.position_fn](const Point2& p) {
        const double x = p.xi(), e = p.eta();
        const double rho2 = x * x + e * e;
        const double r = pos(p).r();
        const double lr_x = 2.0 * s * e - e * e / (x * rho2);
        const double lr_e = 2.0 * s * x - x * x / (e * rho2);
        const double ph_x = -2.0 * x + s * e / rho2;
        const double ph_e = 2.0 * e - s * x / rho2;
        return std::array<double, 4>{r * lr_x, r * lr_e, ph_x, ph_e};
    };
    // (1/3) Y1 pushed forward: -X4 + (pi/2) X3
    f.tag = detail::tag("Theta1", 0.0, {0, 0, pi / 2.0, -1, 0, 0});
    auto pos = f.position_fn;
    auto jac = f.position_jac_fn;
    f.net = CharNet{"xi", "eta",
                    [pos](double x, double e) { return pos(Point2::characteristic(x, e)).to_cartesian(); },
                    [k](double x, double e) { return StressState{x * x + e * e, e * e - x * x - pi / 4.0, k}; },
                    [pos, jac](double x, double e) {
                        const Point2 pc = Point2::characteristic(x, e);
                        const Point2 q = pos(pc);
                        const auto J = jac(pc);
                        const double c = std::cos(q.phi()), sn = std::sin(q.phi());
                        return std::array<double, 4>{J[0] * c - q.r() * sn * J[2], J[1] * c - q.r() * sn * J[3],
                                                     J[0] * sn + q.r() * c * J[2], J[1] * sn + q.r() * c * J[3]};
                    }};
    return f;
}

//! Revuzhenko point map convenience: (polar point, stress) of (xi, eta).
inline std::pair<Point2, StressState> revuzhenko_point(double xi, double eta, int sign = 1) {
    const auto f = revuzhenko(sign);
    const Point2 p = Point2::characteristic(xi, eta);
    if (xi == 0.0 || eta == 0.0) throw SingularCoords("revuzhenko: xi and eta must be nonzero");
    return {f.position_fn(p), f.eval_fn(p)};
}

// ---------------------------------------------------------------- spiral

//! sigma = A phi + f(lambda), theta = phi + g(lambda), lambda = r e^{-alpha phi}.
class Spiral {
public:
    Spiral(double A, double alpha, double k, bool closed_form)
        : A_(A), alpha_(alpha), k_(k), closed_(closed_form) {
        if (alpha == 0.0) throw ConfigError("spiral: alpha must be nonzero");
        if (!(k > 0.0)) throw ConfigError("spiral: k must be positive");
        if (std::abs(std::abs(A) - 2.0 * k) < 1e-12)
            throw UnsupportedField("spiral: A = +-2k is a simple wave, use simple_wave");
        if (closed_ && !closed_available())
            throw ConfigError("spiral: closed form needs alpha = 1, A = 2 sqrt(2) k");
        find_branch();
        if (!closed_) build_table();
    }

    bool closed_available() const {
        return std::abs(alpha_ - 1.0) < 1e-12 && std::abs(A_ - 2.0 * std::sqrt(2.0) * k_) < 1e-12;
    }

    double D(double g) const {
        return 2.0 * alpha_ * std::cos(2.0 * g) + (1.0 - alpha_ * alpha_) * std::sin(2.0 * g);
    }
    double Ng(double g) const { return A_ / (2.0 * k_) + std::cos(2.0 * g) - alpha_ * std::sin(2.0 * g); }
    double Nf(double g) const { return 2.0 * k_ / A_ + std::cos(2.0 * g) - alpha_ * std::sin(2.0 * g); }

    double g_lo() const { return g_lo_; }
    double g_hi() const { return g_hi_; }

    //! ln lambda(g) with ln lambda(0) = 0.
    double log_lambda(double g) const {
        if (closed_) return I2_closed(g) - I2_closed(0.0);
        return table_integral(g);
    }

    //! f(g) with f(0) = 0.
    double f_of_g(double g) const {
        if (closed_) return f_closed(g) - f_closed(0.0);
        guard_path(0.0, g);
        return num::adaptive_simpson([this](double t) { return A_ * Nf(t) / Ng(t); }, 0.0, g, 1e-12);
    }

    //! Quadrature-only ln lambda, used to cross-check the closed form.
    double log_lambda_quadrature(double g) const {
        guard_path(0.0, g);
        return num::adaptive_simpson([this](double t) { return D(t) / Ng(t); }, 0.0, g, 1e-12);
    }
    double f_quadrature(double g) const {
        guard_path(0.0, g);
        return num::adaptive_simpson([this](double t) { return A_ * Nf(t) / Ng(t); }, 0.0, g, 1e-12);
    }

    //! g on the main branch with log_lambda(g) = L.
    double solve_g(double L) const {
        const double lo = g_lo_ + 1e-12, hi = g_hi_ - 1e-12;
        auto h = [&](double g) { return log_lambda(g) - L; };
        auto dh = [&](double g) { return D(g) / Ng(g); };
        return num::bisect_newton(h, lo, hi, 1e-12, dh);
    }

    double L_min() const { return std::min(log_lambda(g_lo_), log_lambda(g_hi_)); }
    double L_max() const { return std::max(log_lambda(g_lo_), log_lambda(g_hi_)); }

    static double I2_closed(double g) {
        const double u = g + pi / 8.0;
        return u - 0.5 * std::tan(u) - std::log(std::cos(u));
    }
    double f_closed(double g) const {
        const double u = g + pi / 8.0;
        return k_ / std::sqrt(2.0) * (4.0 * u - std::tan(u));
    }

    double A() const { return A_; }
    double alpha() const { return alpha_; }
    double k() const { return k_; }
    bool closed() const { return closed_; }

private:
    void guard_path(double a, double b) const {
        const double lo = std::min(a, b), hi = std::max(a, b);
        const int n = 256;
        for (int i = 0; i <= n; ++i) {
            const double g = lo + (hi - lo) * i / n;
            if (std::abs(Ng(g)) < 1e-6) throw QuadratureSingularity("spiral: integrand denominator vanishes");
        }
    }

    // nearest zeros of D or Ng on each side of 0
    void find_branch() {
        auto bad = [this](double g) { return D(g) * Ng(g); };
        if (Ng(0.0) == 0.0) throw QuadratureSingularity("spiral: Ng(0) = 0");
        const double step = 1e-3;
        auto edge = [&](double dir) {
            double prev = 0.0;
            for (double g = step; g <= pi; g += step) {
                const double x = dir * g;
                if ((bad(x) > 0.0) != (bad(0.0) > 0.0)) {
                    auto h = [&](double t) { return bad(t); };
                    return num::bisect_newton(h, dir * prev, x, 1e-14);
                }
                prev = g;
            }
            return dir * pi;
        };
        g_hi_ = edge(1.0);
        g_lo_ = edge(-1.0);
    }

    void build_table() {
        const int n = 1024;
        nodes_.resize(n + 1);
        cum_.resize(n + 1);
        for (int i = 0; i <= n; ++i) nodes_[i] = g_lo_ + (g_hi_ - g_lo_) * i / n;
        auto integrand = [this](double t) { return D(t) / Ng(t); };
        guard_path(g_lo_, g_hi_);
        cum_[0] = 0.0;
        for (int i = 1; i <= n; ++i)
            cum_[i] = cum_[i - 1] + num::adaptive_simpson(integrand, nodes_[i - 1], nodes_[i], 1e-14);
        // shift so that the value at 0 is zero
        zero_shift_ = table_raw(0.0);
    }

    double table_raw(double g) const {
        const double h = (g_hi_ - g_lo_) / double(nodes_.size() - 1);
        int i = int(std::floor((g - g_lo_) / h));
        i = std::clamp(i, 0, int(nodes_.size()) - 2);
        auto integrand = [this](double t) { return D(t) / Ng(t); };
        return cum_[i] + num::adaptive_simpson(integrand, nodes_[i], g, 1e-14);
    }

    double table_integral(double g) const { return table_raw(g) - zero_shift_; }

    double A_, alpha_, k_;
    bool closed_;
    double g_lo_ = 0.0, g_hi_ = 0.0;
    std::vector<double> nodes_, cum_;
    double zero_shift_ = 0.0;
};

inline StressField spiral(double A = 2.0 * std::sqrt(2.0) * 0.5, double alpha = 1.0, double k = 0.5,
                          bool closed_form = true) {
    auto sp = std::make_shared<const Spiral>(A, alpha, k,
                                             closed_form &&
                                                 std::abs(alpha - 1.0) < 1e-12 &&
                                                 std::abs(A - 2.0 * std::sqrt(2.0) * k) < 1e-12);
    StressField f;
    f.name = "spiral";
    f.params = {{"A", A}, {"alpha", alpha}, {"k", k}, {"closed", sp->closed() ? 1.0 : 0.0}};
    f.frame = Frame::polar;
    f.k = k;
    f.domain_fn = [sp](const Point2& q, double margin) {
        if (!(q.r() > 0.0)) return false;
        // margin is measured in ln(lambda), i.e. log-radial distance from the folds
        const double L = std::log(q.r()) - sp->alpha() * q.phi();
        if (margin <= 0.0) return L >= sp->L_min() && L <= sp->L_max();
        return L > sp->L_min() + margin && L < sp->L_max() - margin;
    };
    auto g_of = [sp](const Point2& q) { return sp->solve_g(std::log(q.r()) - sp->alpha() * q.phi()); };
    f.eval_fn = [sp, g_of](const Point2& q) {
        const double g = g_of(q);
        return StressState{sp->A() * q.phi() + sp->f_of_g(g), q.phi() + g, sp->k()};
    };
    f.partials_fn = [sp, g_of](const Point2& q) {
        const double g = g_of(q);
        const double d = sp->D(g), ng = sp->Ng(g), nf = sp->Nf(g);
        const double r = q.r(), a = sp->alpha(), Av = sp->A();
        return Partials{Av * nf / (r * d), Av - a * Av * nf / d, ng / (r * d), 1.0 - a * ng / d};
    };
    f.tag = detail::tag("Theta4+", alpha, {alpha, 1, A, 0, 0, 0});
    f.net = CharNet{"g", "phi",
                    [sp](double g, double phi) {
                        return Point2::polar(std::exp(sp->log_lambda(g) + sp->alpha() * phi), phi).to_cartesian();
                    },
                    [sp](double g, double phi) {
                        return StressState{sp->A() * phi + sp->f_of_g(g), phi + g, sp->k()};
                    },
                    {}};
    return f;
}

// ---------------------------------------------------------------- simple waves

//! Lines x cos t + y sin t = Phi(t) (n even, sigma = 2k t + const) or
//! x sin t - y cos t = Phi(t) (n odd, sigma = -2k t + const).
struct SimpleWave {
    FunctionParam Phi;
    int n = 0;
    double cst = 0.0;
    double k = 0.5;
    double lo = -pi / 2.0;
    double hi = 0.0;
    bool relative = false;  // bracket is theta - phi

    bool even() const { return n % 2 == 0; }

    double relation(double x, double y, double t) const {
        return even() ? x * std::cos(t) + y * std::sin(t) - Phi(t)
                      : x * std::sin(t) - y * std::cos(t) - Phi(t);
    }
    double relation_dt(double x, double y, double t) const {
        return even() ? -x * std::sin(t) + y * std::cos(t) - Phi.deriv(t)
                      : x * std::cos(t) + y * std::sin(t) - Phi.deriv(t);
    }

    std::pair<double, double> bracket(double x, double y) const {
        if (!relative) return {lo, hi};
        const double phi = std::atan2(y, x);
        return {phi + lo, phi + hi};
    }

    double theta(double x, double y) const {
        const auto [a, b] = bracket(x, y);
        auto F = [&](double t) { return relation(x, y, t); };
        auto dF = [&](double t) { return relation_dt(x, y, t); };
        return num::unique_root(F, a, b, 64, 1e-12, dF);
    }

    double sigma(double t) const { return (even() ? 2.0 : -2.0) * k * t + cst; }
};

inline StressField simple_wave(FunctionParam Phi, int n = 0, double cst = 0.0, double k = 0.5,
                               double theta_lo = -pi / 2.0, double theta_hi = 0.0,
                               bool relative_bracket = false) {
    if (!(k > 0.0)) throw ConfigError("simple_wave: k must be positive");
    if (!(theta_hi > theta_lo)) throw ConfigError("simple_wave: empty theta bracket");
    auto sw = std::make_shared<const SimpleWave>(
        SimpleWave{std::move(Phi), n, cst, k, theta_lo, theta_hi, relative_bracket});
    StressField f;
    f.name = "simple_wave";
    f.params = {{"n", double(n)},           {"const", cst},           {"k", k},
                {"theta_lo", theta_lo},     {"theta_hi", theta_hi},   {"relative", relative_bracket ? 1.0 : 0.0}};
    f.functions = {{"Phi", sw->Phi}};
    f.frame = Frame::cartesian;
    f.k = k;
    f.domain_fn = [sw](const Point2& p, double margin) {
        try {
            const double t = sw->theta(p.x(), p.y());
            const auto [a, b] = sw->bracket(p.x(), p.y());
            if (t < a + margin || t > b - margin) return false;
            return std::abs(sw->relation_dt(p.x(), p.y(), t)) > margin;
        } catch (const DomainError&) {
            return false;
        }
    };
    f.eval_fn = [sw](const Point2& p) {
        const double t = sw->theta(p.x(), p.y());
        return StressState{sw->sigma(t), t, sw->k};
    };
    f.partials_fn = [sw](const Point2& p) {
        const double t = sw->theta(p.x(), p.y());
        const double Ft = sw->relation_dt(p.x(), p.y(), t);
        const double tx = sw->even() ? -std::cos(t) / Ft : -std::sin(t) / Ft;
        const double ty = sw->even() ? -std::sin(t) / Ft : std::cos(t) / Ft;
        const double s = sw->even() ? 2.0 * sw->k : -2.0 * sw->k;
        return Partials{s * tx, s * ty, tx, ty};
    };
    // (theta, t): position = Phi n + t m along the straight line through the foot point
    f.net = CharNet{"theta", "t",
                    [sw](double th, double t) {
                        const double c = std::cos(th), s = std::sin(th), P = sw->Phi(th);
                        return sw->even() ? Point2::cartesian(P * c + t * s, P * s - t * c)
                                          : Point2::cartesian(P * s + t * c, -P * c + t * s);
                    },
                    [sw](double th, double) { return StressState{sw->sigma(th), th, sw->k}; },
                    {}};
    return f;
}

//! Spiral simple wave r cos(theta - phi) = C e^theta, sigma = 2k theta + const.
inline StressField spiral_simple_wave(double C = 1.0, double cst = 0.0, double k = 0.5) {
    auto f = simple_wave(FunctionParam::exponential(C), 0, cst, k, -pi / 4.0, pi / 2.0, true);
    f.name = "spiral_simple_wave";
    f.params["C"] = C;
    f.tag = detail::tag("Theta5-spiral", 1.0, {1, 1, 2.0 * k, 0, 0, 0});
    return f;
}

//! Centred fan: Phi = 0, lines through the origin.
inline StressField centered_fan(int n = 0, double cst = 0.0, double k = 0.5) {
    const bool even = n % 2 == 0;
    // even: theta = phi - pi/2; odd: theta = phi
    auto f = even ? simple_wave(FunctionParam::constant(0.0), n, cst, k, -3.0 * pi / 4.0, -pi / 4.0, true)
                  : simple_wave(FunctionParam::constant(0.0), n, cst, k, -pi / 4.0, pi / 4.0, true);
    f.name = "centered_fan";
    f.tag = detail::tag("Theta5", 0.0, {1, 0, 0, 0, 0, 0});
    return f;
}

}  // namespace slipline::catalog
