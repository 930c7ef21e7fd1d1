#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "symmetry.hpp"

namespace slipline {

//! Central difference of f along var i with one Richardson step.
inline double fd_partial(const std::function<double(const Vec&)>& f, const Vec& p, std::size_t i, double h) {
    if (!(h > 0.0)) throw ConfigError("fd_partial: h must be positive");
    auto g = [&](double t) {
        Vec q = p;
        q[i] = t;
        return f(q);
    };
    return num::richardson_derivative(g, p[i], h);
}

inline num::Vec2 residual_cartesian(const StressField& f, const Point2& p, DerivMode mode = DerivMode::analytic,
                                    double h_scale = 1e-4) {
    const Point2 q = f.native(p);
    if (!f.domain_fn(q, 0.0)) throw DomainError(f.name + ": point outside domain");
    const StressState s = f.eval_fn(q);
    const CartPartials d = cartesian_partials(f, q, mode, h_scale);
    const double c2 = std::cos(2.0 * s.theta), s2 = std::sin(2.0 * s.theta);
    return {d.sx - 2.0 * s.k * (d.tx * c2 + d.ty * s2), d.sy - 2.0 * s.k * (d.tx * s2 - d.ty * c2)};
}

//! Polar residuals with theta = theta^c, psi = theta - phi:
//! e1 = r sigma_r - 2k (r theta_r cos 2psi + theta_phi sin 2psi),
//! e2 = sigma_phi - 2k (r theta_r sin 2psi - theta_phi cos 2psi).
inline num::Vec2 residual_polar(const StressField& f, const Point2& p, DerivMode mode = DerivMode::analytic,
                                double h_scale = 1e-4) {
    const Point2 q = f.native(p);
    if (!f.domain_fn(q, 0.0)) throw DomainError(f.name + ": point outside domain");
    const StressState s = f.eval_fn(q);
    Partials d;
    double r = 0.0, phi = 0.0;
    switch (f.frame) {
        case Frame::polar:
            d = native_partials(f, q, mode, h_scale);
            r = q.r();
            phi = q.phi();
            break;
        case Frame::characteristic: {
            d = polar_partials_from_char(f, q, mode, h_scale);
            const Point2 pol = f.position_fn(q);
            r = pol.r();
            phi = pol.phi();
            break;
        }
        case Frame::cartesian: {
            const CartPartials c = cartesian_partials(f, q, mode, h_scale);
            const Point2 pol = q.to_polar();
            r = pol.r();
            phi = pol.phi();
            const double cs = std::cos(phi), sn = std::sin(phi);
            d = {cs * c.sx + sn * c.sy, r * (-sn * c.sx + cs * c.sy), cs * c.tx + sn * c.ty,
                 r * (-sn * c.tx + cs * c.ty)};
            break;
        }
    }
    const double psi = s.theta - phi;
    const double c2 = std::cos(2.0 * psi), s2 = std::sin(2.0 * psi);
    return {r * d.s1 - 2.0 * s.k * (r * d.t1 * c2 + d.t2 * s2), d.s2 - 2.0 * s.k * (r * d.t1 * s2 - d.t2 * c2)};
}

inline num::Vec2 residual_velocity(const VelocityField& vf, const StressField& bg, const Point2& p,
                                   DerivMode mode = DerivMode::analytic, double h_scale = 1e-4) {
    return velocity_residual(vf, bg, p, mode, h_scale);
}

enum class System { cartesian, polar2, uv_cartesian };

inline std::string to_string(System s) {
    switch (s) {
        case System::cartesian: return "cartesian";
        case System::polar2: return "polar2";
        case System::uv_cartesian: return "uv_cartesian";
    }
    return "?";
}

//! Native-frame box: (x0,x1,y0,y1), (r0,r1,phi0,phi1) or (xi0,xi1,eta0,eta1).
struct Region {
    double a0 = 0.0, a1 = 1.0, b0 = 0.0, b1 = 1.0;
    Frame frame = Frame::cartesian;
};

struct ResidualReport {
    std::string field;
    std::string system;
    Region region;
    int grid_n = 0;
    double margin = 0.0;
    DerivMode mode = DerivMode::analytic;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    Point2 worst;
    int evaluated = 0;
    int skipped = 0;
};

inline nlohmann::ordered_json to_json(const ResidualReport& r) {
    nlohmann::ordered_json j;
    j["field"] = r.field;
    j["system"] = r.system;
    j["region"] = {{"frame", to_string(r.region.frame)}, {"bounds", {r.region.a0, r.region.a1, r.region.b0, r.region.b1}}};
    j["grid_n"] = r.grid_n;
    j["margin"] = r.margin;
    j["mode"] = to_string(r.mode);
    j["max_abs_residual"] = r.max_abs;
    j["mean_abs_residual"] = r.mean_abs;
    j["worst_point"] = {r.worst.a, r.worst.b};
    j["evaluated"] = r.evaluated;
    j["skipped"] = r.skipped;
    return j;
}

//! Worker count: SLIPLINE_LAB_THREADS caps hardware concurrency.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SLIPLINE_LAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, unsigned(cap));
    }
    return n;
}

namespace detail {

// per-point residual magnitude, or NaN when the point is skipped
template <class F>
std::vector<double> parallel_eval(int count, unsigned threads, F&& fn) {
    std::vector<double> out(std::size_t(count), std::numeric_limits<double>::quiet_NaN());
    threads = std::max(1u, std::min(threads, unsigned(count)));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) out[std::size_t(i)] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = int(t); i < count; i += int(threads)) out[std::size_t(i)] = fn(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

inline ResidualReport aggregate(const std::vector<double>& vals, const std::vector<Point2>& pts) {
    ResidualReport r;
    double sum = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (std::isnan(vals[i])) {
            ++r.skipped;
            continue;
        }
        ++r.evaluated;
        sum += vals[i];
        if (vals[i] > r.max_abs || r.evaluated == 1) {
            r.max_abs = vals[i];
            r.worst = pts[i];
        }
    }
    if (r.evaluated > 0) r.mean_abs = sum / r.evaluated;
    return r;
}

inline std::vector<Point2> lattice(const Region& reg, int n) {
    std::vector<Point2> pts;
    pts.reserve(std::size_t(n) * std::size_t(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pts.push_back(Point2{reg.a0 + (reg.a1 - reg.a0) * i / double(n - 1),
                                 reg.b0 + (reg.b1 - reg.b0) * j / double(n - 1), reg.frame});
    return pts;
}

}  // namespace detail

//! Residual sweep of a stress field on an n x n lattice of the region; points
//! outside the domain shrunk by margin are skipped and counted.
inline ResidualReport sweep(const StressField& f, System sys, const Region& reg, int n,
                            DerivMode mode = DerivMode::analytic, double margin = 1e-2, unsigned threads = 0) {
    if (n < 2) throw ConfigError("sweep: grid_n must be at least 2");
    if (sys == System::uv_cartesian) throw ConfigError("sweep: uv_cartesian needs a velocity field");
    const auto pts = detail::lattice(reg, n);
    const auto vals = detail::parallel_eval(int(pts.size()), threads ? threads : worker_count(), [&](int i) {
        const Point2& p = pts[std::size_t(i)];
        try {
            const Point2 q = f.native(p);
            if (!f.domain_fn(q, margin)) return std::numeric_limits<double>::quiet_NaN();
            const num::Vec2 r = sys == System::cartesian ? residual_cartesian(f, q, mode) : residual_polar(f, q, mode);
            return std::max(std::abs(r[0]), std::abs(r[1]));
        } catch (const DomainError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    });
    ResidualReport rep = detail::aggregate(vals, pts);
    rep.field = f.name;
    rep.system = to_string(sys);
    rep.region = reg;
    rep.grid_n = n;
    rep.margin = margin;
    rep.mode = mode;
    return rep;
}

inline ResidualReport sweep(const VelocityField& vf, const StressField& bg, const Region& reg, int n,
                            DerivMode mode = DerivMode::analytic, double margin = 1e-2, unsigned threads = 0) {
    if (n < 2) throw ConfigError("sweep: grid_n must be at least 2");
    const auto pts = detail::lattice(reg, n);
    const auto vals = detail::parallel_eval(int(pts.size()), threads ? threads : worker_count(), [&](int i) {
        const Point2& p = pts[std::size_t(i)];
        try {
            if (!vf.contains(p, margin) || !bg.contains(p, margin)) return std::numeric_limits<double>::quiet_NaN();
            const num::Vec2 r = velocity_residual(vf, bg, p, mode);
            return std::max(std::abs(r[0]), std::abs(r[1]));
        } catch (const DomainError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    });
    ResidualReport rep = detail::aggregate(vals, pts);
    rep.field = vf.name;
    rep.system = to_string(System::uv_cartesian);
    rep.region = reg;
    rep.grid_n = n;
    rep.margin = margin;
    rep.mode = mode;
    return rep;
}

//! Natural residual system of a field's frame.
inline System native_system(const StressField& f) {
    return f.frame == Frame::cartesian ? System::cartesian : System::polar2;
}

// ---------------------------------------------------------------- injected defects

//! sigma += eps a^2 (a = first native coordinate) or theta += eps a.
inline StressField perturbed(StressField f, double eps, bool theta = false) {
    auto ev = f.eval_fn;
    auto pa = f.partials_fn;
    f.name += theta ? "+theta_defect" : "+sigma_defect";
    if (theta) {
        f.eval_fn = [ev, eps](const Point2& p) {
            StressState s = ev(p);
            s.theta += eps * p.a;
            return s;
        };
        f.partials_fn = [pa, eps](const Point2& p) {
            Partials d = pa(p);
            d.t1 += eps;
            return d;
        };
    } else {
        f.eval_fn = [ev, eps](const Point2& p) {
            StressState s = ev(p);
            s.sigma += eps * p.a * p.a;
            return s;
        };
        f.partials_fn = [pa, eps](const Point2& p) {
            Partials d = pa(p);
            d.s1 += 2.0 * eps * p.a;
            return d;
        };
    }
    return f;
}

//! u += eps x^2.
inline VelocityField perturbed(VelocityField vf, double eps) {
    auto ev = vf.eval_fn;
    auto pa = vf.partials_fn;
    vf.name += "+defect";
    vf.eval_fn = [ev, eps](const Point2& p) {
        num::Vec2 w = ev(p);
        w[0] += eps * p.x() * p.x();
        return w;
    };
    vf.partials_fn = [pa, eps](const Point2& p) {
        VelocityPartials d = pa(p);
        d.ux += 2.0 * eps * p.x();
        return d;
    };
    return vf;
}

}  // namespace slipline
