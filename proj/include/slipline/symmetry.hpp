#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "velocity.hpp"

namespace slipline {

using Vec = std::vector<double>;

//! Vector field sum_i coeffs_i(p) d/dvar_i. jacobian, when present, returns
//! d coeff_i / d var_j as a row-major n x n matrix.
struct LieOperator {
    std::string name;
    std::vector<std::string> space;
    std::function<Vec(const Vec&)> coeffs;
    std::function<Vec(const Vec&)> jacobian;

    std::size_t dim() const { return space.size(); }
    Vec operator()(const Vec& p) const { return coeffs(p); }
};

namespace lie {

inline double fd_partial(const std::function<double(const Vec&)>& f, const Vec& p, std::size_t i,
                         double h = 1e-5) {
    const double hi = h * std::max(1.0, std::abs(p[i]));
    auto g = [&](double t) {
        Vec q = p;
        q[i] = t;
        return f(q);
    };
    return num::richardson_derivative(g, p[i], hi);
}

//! d coeff_i / d var_j (row-major), analytic when available.
inline Vec coeff_jacobian(const LieOperator& op, const Vec& p, bool analytic = true, double h = 1e-5) {
    if (analytic && op.jacobian) return op.jacobian(p);
    const std::size_t n = op.dim();
    Vec J(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double hj = h * std::max(1.0, std::abs(p[j]));
        Vec a = p, b = p, c = p, d = p;
        a[j] += hj;
        b[j] -= hj;
        c[j] += 0.5 * hj;
        d[j] -= 0.5 * hj;
        const Vec fa = op(a), fb = op(b), fc = op(c), fd = op(d);
        for (std::size_t i = 0; i < n; ++i) {
            const double d1 = (fa[i] - fb[i]) / (2.0 * hj);
            const double d2 = (fc[i] - fd[i]) / hj;
            J[i * n + j] = (4.0 * d2 - d1) / 3.0;
        }
    }
    return J;
}

}  // namespace lie

//! X(f) at p, partials of f by Richardson central differences.
inline double apply(const LieOperator& op, const std::function<double(const Vec&)>& f, const Vec& p,
                    double h = 1e-5) {
    const Vec c = op(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < op.dim(); ++i)
        if (c[i] != 0.0) acc += c[i] * lie::fd_partial(f, p, i, h);
    return acc;
}

//! Coefficients of [a, b] = a(b) - b(a) at p.
inline Vec commutator(const LieOperator& a, const LieOperator& b, const Vec& p, bool analytic = true) {
    if (a.dim() != b.dim()) throw ConfigError("commutator: operators act on different spaces");
    const std::size_t n = a.dim();
    const Vec ca = a(p), cb = b(p);
    const Vec Ja = lie::coeff_jacobian(a, p, analytic), Jb = lie::coeff_jacobian(b, p, analytic);
    Vec out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += ca[j] * Jb[i * n + j] - cb[j] * Ja[i * n + j];
    return out;
}

//! Operator whose coefficients are the commutator field (FD jacobian only).
inline LieOperator bracket(const LieOperator& a, const LieOperator& b, bool analytic = true) {
    LieOperator r;
    r.name = "[" + a.name + "," + b.name + "]";
    r.space = a.space;
    r.coeffs = [a, b, analytic](const Vec& p) { return commutator(a, b, p, analytic); };
    return r;
}

inline LieOperator linear_combination(std::string name, const std::vector<std::pair<double, LieOperator>>& terms) {
    if (terms.empty()) throw ConfigError("linear_combination: no terms");
    LieOperator r;
    r.name = std::move(name);
    r.space = terms.front().second.space;
    const std::size_t n = r.space.size();
    r.coeffs = [terms, n](const Vec& p) {
        Vec out(n, 0.0);
        for (const auto& [c, op] : terms) {
            if (c == 0.0) continue;
            const Vec v = op(p);
            for (std::size_t i = 0; i < n; ++i) out[i] += c * v[i];
        }
        return out;
    };
    bool all = true;
    for (const auto& t : terms) all = all && static_cast<bool>(t.second.jacobian);
    if (all)
        r.jacobian = [terms, n](const Vec& p) {
            Vec out(n * n, 0.0);
            for (const auto& [c, op] : terms) {
                if (c == 0.0) continue;
                const Vec J = op.jacobian(p);
                for (std::size_t i = 0; i < n * n; ++i) out[i] += c * J[i];
            }
            return out;
        };
    return r;
}

// ---------------------------------------------------------------- catalogs

namespace ops {

inline const std::vector<std::string> xy_sigma_theta{"x", "y", "sigma", "theta"};
inline const std::vector<std::string> r_phi_sigma_theta{"r", "phi", "sigma", "theta"};
inline const std::vector<std::string> xy_uv{"x", "y", "u", "v"};

inline LieOperator make(std::string name, std::vector<std::string> space, std::function<Vec(const Vec&)> c,
                        std::function<Vec(const Vec&)> j) {
    return {std::move(name), std::move(space), std::move(c), std::move(j)};
}

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

// L_sigma_theta on (x, y, sigma, theta)
inline LieOperator X1() {
    return make("X1", xy_sigma_theta, [](const Vec& p) { return Vec{p[0], p[1], 0, 0}; },
                [](const Vec&) { return Vec{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}; });
}
inline LieOperator X2() {
    return make("X2", xy_sigma_theta, [](const Vec& p) { return Vec{-p[1], p[0], 0, 1}; },
                [](const Vec&) { return Vec{0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}; });
}
inline LieOperator X3() {
    return make("X3", xy_sigma_theta, [](const Vec&) { return Vec{0, 0, 1, 0}; },
                [](const Vec&) { return zeros(16); });
}
inline LieOperator X4(double k) {
    return make(
        "X4", xy_sigma_theta,
        [k](const Vec& p) {
            const double x = p[0], y = p[1], s = p[2], t = p[3];
            const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
            return Vec{x * c2 + y * s2 + y * s / k, x * s2 - y * c2 - x * s / k, -4.0 * k * t, -s / k};
        },
        [k](const Vec& p) {
            const double x = p[0], y = p[1], s = p[2], t = p[3];
            const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
            return Vec{c2,         s2 + s / k, y / k,  2.0 * (-x * s2 + y * c2),
                       s2 - s / k, -c2,        -x / k, 2.0 * (x * c2 + y * s2),
                       0,          0,          0,      -4.0 * k,
                       0,          0,          -1.0 / k, 0};
        });
}
inline LieOperator Dx() {
    return make("dx", xy_sigma_theta, [](const Vec&) { return Vec{1, 0, 0, 0}; }, [](const Vec&) { return zeros(16); });
}
inline LieOperator Dy() {
    return make("dy", xy_sigma_theta, [](const Vec&) { return Vec{0, 1, 0, 0}; }, [](const Vec&) { return zeros(16); });
}

//! sum combo_i B_i over [X1, X2, X3, X4, dx, dy].
inline LieOperator from_combo(const std::string& name, const std::array<double, 6>& combo, double k) {
    const std::vector<LieOperator> basis{X1(), X2(), X3(), X4(k), Dx(), Dy()};
    std::vector<std::pair<double, LieOperator>> terms;
    for (std::size_t i = 0; i < 6; ++i)
        if (combo[i] != 0.0) terms.emplace_back(combo[i], basis[i]);
    if (terms.empty()) terms.emplace_back(0.0, X3());
    return linear_combination(name, terms);
}

// polar forms on (r, phi, sigma, theta^c)
inline LieOperator X1p() {
    return make("X1p", r_phi_sigma_theta, [](const Vec& p) { return Vec{p[0], 0, 0, 0}; }, {});
}
inline LieOperator X2p() {
    return make("X2p", r_phi_sigma_theta, [](const Vec&) { return Vec{0, 1, 0, 1}; }, {});
}
inline LieOperator X3p() {
    return make("X3p", r_phi_sigma_theta, [](const Vec&) { return Vec{0, 0, 1, 0}; }, {});
}
inline LieOperator X4p(double k) {
    return make(
        "X4p", r_phi_sigma_theta,
        [k](const Vec& p) {
            const double r = p[0], ph = p[1], s = p[2], t = p[3];
            return Vec{r * std::cos(2.0 * (t - ph)), std::sin(2.0 * (t - ph)) - s / k, -4.0 * k * t, -s / k};
        },
        {});
}

// L_uv on (x, y, u, v), Prandtl background with 2k = 1
inline double sq(double y) { return std::sqrt(1.0 - y * y); }

inline LieOperator Z1() {
    return make("Z1", xy_uv, [](const Vec& p) { return Vec{0, 0, p[2], p[3]}; },
                [](const Vec&) {
                    Vec J = zeros(16);
                    J[2 * 4 + 2] = 1;
                    J[3 * 4 + 3] = 1;
                    return J;
                });
}
inline LieOperator Z2() {
    return make("Z2", xy_uv, [](const Vec& p) { return Vec{-2.0 * p[1], 2.0 * sq(p[1]), -p[3], p[2]}; },
                [](const Vec& p) {
                    Vec J = zeros(16);
                    J[0 * 4 + 1] = -2;
                    J[1 * 4 + 1] = -2.0 * p[1] / sq(p[1]);
                    J[2 * 4 + 3] = -1;
                    J[3 * 4 + 2] = 1;
                    return J;
                });
}
inline LieOperator Z3() {
    return make("Z3", xy_uv, [](const Vec&) { return Vec{1, 0, 0, 0}; }, [](const Vec&) { return zeros(16); });
}
inline LieOperator Z4() {
    return make(
        "Z4", xy_uv,
        [](const Vec& p) {
            const double x = p[0], y = p[1], u = p[2], v = p[3], s = sq(y);
            return Vec{2.0 * std::acos(y) + 2.0 * y * (x - s), 2.0 * (-x + s) * s, y * u + v * (x - 2.0 * s),
                       -(x * u + y * v)};
        },
        [](const Vec& p) {
            const double x = p[0], y = p[1], u = p[2], v = p[3], s = sq(y);
            const double sy = -y / s;
            Vec J = zeros(16);
            J[0] = 2.0 * y;
            J[1] = -2.0 / s + 2.0 * (x - s) - 2.0 * y * sy;
            J[4 + 0] = -2.0 * s;
            J[4 + 1] = 2.0 * sy * s + 2.0 * (-x + s) * sy;
            J[8 + 0] = v;
            J[8 + 1] = u - 2.0 * v * sy;
            J[8 + 2] = y;
            J[8 + 3] = x - 2.0 * s;
            J[12 + 0] = -u;
            J[12 + 1] = -v;
            J[12 + 2] = -x;
            J[12 + 3] = -y;
            return J;
        });
}
inline LieOperator Z5() {
    return make("Z5", xy_uv, [](const Vec& p) { return Vec{0, 0, p[1], -p[0]}; },
                [](const Vec&) {
                    Vec J = zeros(16);
                    J[2 * 4 + 1] = 1;
                    J[3 * 4 + 0] = -1;
                    return J;
                });
}
//! u0 d_u + v0 d_v for a compatible velocity (u0, v0).
inline LieOperator Z6(const VelocityField& vf) {
    return make("Z6[" + vf.name + "]", xy_uv,
                [vf](const Vec& p) {
                    const auto w = vf.eval_fn(Point2::cartesian(p[0], p[1]));
                    return Vec{0, 0, w[0], w[1]};
                },
                [vf](const Vec& p) {
                    const auto d = vf.partials_fn(Point2::cartesian(p[0], p[1]));
                    Vec J = zeros(16);
                    J[8 + 0] = d.ux;
                    J[8 + 1] = d.uy;
                    J[12 + 0] = d.vx;
                    J[12 + 1] = d.vy;
                    return J;
                });
}
inline LieOperator Du() {
    return make("du", xy_uv, [](const Vec&) { return Vec{0, 0, 1, 0}; }, [](const Vec&) { return zeros(16); });
}
inline LieOperator Dv() {
    return make("dv", xy_uv, [](const Vec&) { return Vec{0, 0, 0, 1}; }, [](const Vec&) { return zeros(16); });
}

}  // namespace ops

// ---------------------------------------------------------------- invariance

struct InvarianceResidual {
    double res_sigma = 0.0;
    double res_theta = 0.0;
    double max_abs() const { return std::max(std::abs(res_sigma), std::abs(res_theta)); }
};

//! op on (x, y, sigma, theta); p in the field's native frame (or cartesian).
inline InvarianceResidual check_invariance(const LieOperator& op, const StressField& f, const Point2& p,
                                           DerivMode mode = DerivMode::analytic) {
    const Point2 q = f.native(p);
    if (!f.domain_fn(q, 0.0)) throw DomainError(f.name + ": point outside domain");
    const StressState st = f.eval_fn(q);
    const Point2 c = cartesian_position(f, q);
    const CartPartials d = cartesian_partials(f, q, mode);
    const Vec co = op(Vec{c.x(), c.y(), st.sigma, st.theta});
    return {co[2] - (co[0] * d.sx + co[1] * d.sy), co[3] - (co[0] * d.tx + co[1] * d.ty)};
}

inline LieOperator tag_operator(const StressField& f) {
    if (!f.tag) throw UnsupportedField(f.name + ": no subalgebra tag");
    return ops::from_combo(f.tag->id, f.tag->combo, f.k);
}

// ---------------------------------------------------------------- hodograph

//! Residuals of the linear system for x(sigma, theta), y(sigma, theta):
//! r1 = y_theta + 2k (y_sigma cos 2theta - x_sigma sin 2theta),
//! r2 = x_theta - 2k (x_sigma cos 2theta + y_sigma sin 2theta).
inline num::Vec2 hodograph_residual(const std::function<double(double, double)>& x_of,
                                    const std::function<double(double, double)>& y_of, double sigma, double theta,
                                    double k, double h = 1e-5) {
    const double hs = h * std::max(1.0, std::abs(sigma));
    const double ht = h * std::max(1.0, std::abs(theta));
    const double xs = num::richardson_derivative([&](double s) { return x_of(s, theta); }, sigma, hs);
    const double xt = num::richardson_derivative([&](double t) { return x_of(sigma, t); }, theta, ht);
    const double ys = num::richardson_derivative([&](double s) { return y_of(s, theta); }, sigma, hs);
    const double yt = num::richardson_derivative([&](double t) { return y_of(sigma, t); }, theta, ht);
    const double J = xs * yt - xt * ys;
    if (std::abs(J) < 1e-12) throw SingularJacobian("hodograph: d(x,y)/d(sigma,theta) vanishes");
    const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
    return {yt + 2.0 * k * (ys * c2 - xs * s2), xt - 2.0 * k * (xs * c2 + ys * s2)};
}

// ---------------------------------------------------------------- Revuzhenko operator check

struct RevuzhenkoOperatorCheck {
    double y1_on_solution = 0.0;  // Y1(u - s eta/xi) at u = s eta/xi
    double eq_u = 0.0;            // residual of the u-equation for u = s eta/xi
    double pushforward = 0.0;     // max coefficient gap between (1/3) Y1 and -X4p + (pi/2) X3p
};

//! Y1 = -xi d_xi + eta d_eta + 2u d_u on (xi, eta, u).
inline LieOperator Y1() {
    return ops::make("Y1", {"xi", "eta", "u"}, [](const Vec& p) { return Vec{-p[0], p[1], 2.0 * p[2]}; }, {});
}

//! Residual of u_{xi eta} (ln|u|) - (G'/2) d_xi(1/u) + (F'/2) d_eta u with F' = 4 xi, G' = 4 eta.
inline double eq_u_residual(const std::function<double(double, double)>& u, double xi, double eta, double h = 1e-4) {
    const double hx = h * std::max(1.0, std::abs(xi)), he = h * std::max(1.0, std::abs(eta));
    auto lnu = [&](double a, double b) { return std::log(std::abs(u(a, b))); };
    // mixed derivative: Richardson on the d/deta of d/dxi
    auto dxi_ln = [&](double b) { return num::richardson_derivative([&](double a) { return lnu(a, b); }, xi, hx); };
    const double mixed = num::richardson_derivative(dxi_ln, eta, he);
    const double d_inv = num::richardson_derivative([&](double a) { return 1.0 / u(a, eta); }, xi, hx);
    const double d_u = num::richardson_derivative([&](double b) { return u(xi, b); }, eta, he);
    return mixed - 2.0 * eta * d_inv + 2.0 * xi * d_u;
}

inline RevuzhenkoOperatorCheck revuzhenko_operator_check(double xi, double eta, int sign = 1) {
    if (xi == 0.0 || eta == 0.0) throw SingularCoords("revuzhenko_operator_check: xi and eta must be nonzero");
    RevuzhenkoOperatorCheck out;
    const double s = sign;
    const double u0 = s * eta / xi;
    const LieOperator y1 = Y1();
    auto F = [s](const Vec& p) { return p[2] - s * p[1] / p[0]; };
    out.y1_on_solution = std::abs(apply(y1, F, Vec{xi, eta, u0}));
    out.eq_u = std::abs(eq_u_residual([s](double a, double b) { return s * b / a; }, xi, eta));

    // on u = s eta/xi, 2u d_u acts as -2 xi d_xi + 2 eta d_eta, so (1/3) Y1 = -xi d_xi + eta d_eta
    const auto f = catalog::revuzhenko(sign);
    const Point2 pc = Point2::characteristic(xi, eta);
    const Point2 pol = f.position_fn(pc);
    const StressState st = f.eval_fn(pc);
    const auto J = f.position_jac_fn(pc);
    const Partials d = f.partials_fn(pc);
    const double a = -xi, b = eta;
    const Vec pushed{J[0] * a + J[1] * b, J[2] * a + J[3] * b, d.s1 * a + d.s2 * b, d.t1 * a + d.t2 * b};
    const Vec p4{pol.r(), pol.phi(), st.sigma, st.theta};
    const LieOperator target =
        linear_combination("-X4p+pi/2 X3p", {{-1.0, ops::X4p(st.k)}, {pi / 2.0, ops::X3p()}});
    const Vec tc = target(p4);
    for (std::size_t i = 0; i < 4; ++i) out.pushforward = std::max(out.pushforward, std::abs(pushed[i] - tc[i]));
    return out;
}

}  // namespace slipline
