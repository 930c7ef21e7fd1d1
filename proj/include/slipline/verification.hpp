#pragma once

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "registry.hpp"

namespace slipline::verify {

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation = "<=";
    bool pass = false;
    bool timing = false;  // value left out of reports (not reproducible)
    std::string note;
};

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const {
        if (checks.empty()) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void le(std::string name, double v, double thr, std::string note = {}) {
        checks.push_back({std::move(name), v, thr, "<=", std::isfinite(v) && v <= thr, false, std::move(note)});
    }
    void gt(std::string name, double v, double thr, std::string note = {}) {
        checks.push_back({std::move(name), v, thr, ">", std::isfinite(v) && v > thr, false, std::move(note)});
    }
    void ge(std::string name, double v, double thr, std::string note = {}) {
        checks.push_back({std::move(name), v, thr, ">=", std::isfinite(v) && v >= thr, false, std::move(note)});
    }
    void flag(std::string name, bool ok, std::string note = {}) {
        checks.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok, false, std::move(note)});
    }
    void fail(std::string name, const std::string& what) {
        checks.push_back({std::move(name), std::numeric_limits<double>::quiet_NaN(), 0.0, "error", false, false, what});
    }
};

struct Options {
    std::uint64_t seed = 20240611;
    int grid = 50;
    unsigned threads = 0;
};

// ---------------------------------------------------------------- shared cases

struct StressCase {
    std::string label;
    StressField field;
    Region region;
    std::string control;  // a basis operator the field is not invariant under
};

inline std::vector<StressCase> stress_cases() {
    using registry::default_region;
    std::vector<StressCase> out;
    auto add = [&](std::string label, StressField f, std::string control) {
        const Region r = default_region(f);
        out.push_back({std::move(label), std::move(f), r, std::move(control)});
    };
    add("prandtl", catalog::prandtl(), "X1");
    add("prandtl_m0.7_h2", catalog::prandtl(0.3, 0.7, 2.0, 0.5), "X1");
    add("nadai_cavity", catalog::nadai_cavity(), "X1");
    add("nadai_vortex", catalog::nadai_vortex(), "X1");
    add("nadai_channel_c2", catalog::nadai_channel(2.0), "X1");
    add("nadai_channel_c0.5", catalog::nadai_channel(0.5), "X1");
    add("nadai_channel_c-2", catalog::nadai_channel(-2.0), "X1");
    add("nadai_channel_singular", catalog::nadai_channel_singular(), "X1");
    add("nadai_channel_c1_regular", catalog::nadai_channel_singular(0.5, 0.0, 1, 0.5), "X1");
    add("nadai_two_circles", catalog::nadai_two_circles(), "X1");
    add("revuzhenko_plus", catalog::revuzhenko(1), "X1");
    add("revuzhenko_minus", catalog::revuzhenko(-1), "X1");
    add("spiral", catalog::spiral(), "X2");
    add("spiral_alpha0.5_A2", catalog::spiral(2.0, 0.5, 0.5, false), "X2");
    add("simple_wave_poly", catalog::simple_wave(FunctionParam::polynomial({0.5, 0.2}), 0, 0.0, 0.5, -pi / 2.0, 0.0),
        "");
    add("centered_fan_even", catalog::centered_fan(0), "X2");
    add("centered_fan_odd", catalog::centered_fan(1), "X2");
    add("spiral_simple_wave", catalog::spiral_simple_wave(), "X2");
    return out;
}

struct VelocityCase {
    std::string label;
    VelocityField field;
    Region region;
};

inline std::vector<VelocityCase> velocity_cases() {
    const Region strip = registry::strip_region();
    const Region fan{0.2, 2.0, 0.2, 2.0, Frame::cartesian};
    const auto U = FunctionParam::polynomial({0.3, 0.2, -0.1});
    const auto V = FunctionParam::polynomial({1.0, -0.5, 0.25});
    return {
        {"nadai", vcat::nadai(), strip},
        {"yakhno", vcat::yakhno(), strip},
        {"yakhno_C1=2_C2=0", vcat::yakhno(2.0, 0.0), strip},
        {"ivlev_senashov", vcat::ivlev_senashov(0.3, 1.2), strip},
        {"theta3", vcat::theta3(0.3, 1.2), strip},
        {"theta4", vcat::theta4(0.1), strip},
        {"theta2_printed", vcat::theta2(0.4, -1.0, vcat::Theta2Branch::printed), strip},
        {"theta2_smooth", vcat::theta2(0.4, -1.0, vcat::Theta2Branch::smooth), strip},
        {"rigid", vcat::rigid(0.2, -0.1, 0.7), strip},
        {"simple_wave_even", vcat::simple_wave_velocity(U, V, vcat::StraightFamily::second, catalog::centered_fan(0)),
         fan},
        {"simple_wave_odd", vcat::simple_wave_velocity(U, V, vcat::StraightFamily::first, catalog::centered_fan(1)),
         fan},
        {"spiral_simple_wave", vcat::simple_wave_velocity(FunctionParam::polynomial({0.3, 0.2}), V,
                                                          vcat::StraightFamily::second, catalog::spiral_simple_wave()),
         {1.5, 4.0, 0.5, 3.0, Frame::cartesian}},
    };
}

namespace detail {

inline double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// polylines traced backwards and forwards from start, joined (arc length from the far end)
inline Polyline full_trace(const StressField& f, const Point2& start, Family fam, double step, double len,
                           double margin) {
    const Polyline fw = trace_slipline(f, start, fam, {step, len, margin, 1});
    const Polyline bw = trace_slipline(f, start, fam, {step, len, margin, -1});
    Polyline out;
    out.family = fam;
    out.stop_reason = bw.stop_reason + "/" + fw.stop_reason;
    for (std::size_t i = bw.size(); i-- > 1;) {
        out.points.push_back(bw.points[i]);
        out.stress.push_back(bw.stress[i]);
    }
    for (std::size_t i = 0; i < fw.size(); ++i) {
        out.points.push_back(fw.points[i]);
        out.stress.push_back(fw.stress[i]);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        if (i > 0)
            s += std::hypot(out.points[i].x() - out.points[i - 1].x(), out.points[i].y() - out.points[i - 1].y());
        out.s.push_back(s);
    }
    return out;
}

inline double arclen(const Polyline& p) { return p.s.empty() ? 0.0 : p.s.back(); }

// continuous polar angles along a polyline, on the sheet where the point nearest
// to start has angle start.phi()
inline std::vector<double> unwrapped_phi(const Polyline& p, const Point2& start) {
    std::vector<double> out;
    double ref = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double ph = std::atan2(p.points[i].y(), p.points[i].x());
        if (i > 0) ph = num::wrap_near(ph, ref);
        out.push_back(ph);
        ref = ph;
    }
    const Point2 sc = start.to_cartesian(), sp = start.to_polar();
    std::size_t idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::hypot(p.points[i].x() - sc.x(), p.points[i].y() - sc.y());
        if (d < best) {
            best = d;
            idx = i;
        }
    }
    if (!out.empty()) {
        const double shift = num::wrap_near(out[idx], sp.phi()) - out[idx];
        for (auto& v : out) v += shift;
    }
    return out;
}

inline double dist(const Point2& a, const Point2& b) { return std::hypot(a.x() - b.x(), a.y() - b.y()); }

// polar stress components at polar angle phi
inline std::array<double, 3> polar_components(const StressState& s, double phi) {
    const FullStress c = levy_to_components(s);
    const double cs = std::cos(phi), sn = std::sin(phi);
    const double sr = c.sigma_x * cs * cs + c.sigma_y * sn * sn + 2.0 * c.tau_xy * sn * cs;
    const double sp = c.sigma_x * sn * sn + c.sigma_y * cs * cs - 2.0 * c.tau_xy * sn * cs;
    const double trp = (c.sigma_y - c.sigma_x) * sn * cs + c.tau_xy * (cs * cs - sn * sn);
    return {sr, sp, trp};
}

inline double max_dev(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline LieOperator basis_operator(const std::string& name, double k) {
    if (name == "X1") return ops::X1();
    if (name == "X2") return ops::X2();
    if (name == "X3") return ops::X3();
    if (name == "X4") return ops::X4(k);
    throw ConfigError("unknown control operator " + name);
}

}  // namespace detail

// ---------------------------------------------------------------- criteria

inline Criterion stress_residuals(const Options& o) {
    Criterion c{1, "stress residual sweeps", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& sc : stress_cases()) {
        const double k = sc.field.k;
        try {
            const System sys = native_system(sc.field);
            const auto ra = sweep(sc.field, sys, sc.region, o.grid, DerivMode::analytic, 1e-2, o.threads);
            const auto rf = sweep(sc.field, sys, sc.region, o.grid, DerivMode::fd, 1e-2, o.threads);
            c.le(sc.label + " analytic " + to_string(sys), ra.max_abs, 1e-9 * k);
            c.le(sc.label + " FD " + to_string(sys), rf.max_abs, 1e-4 * k);
            c.ge(sc.label + " evaluated points", ra.evaluated, 100.0);
            if (sc.field.frame == Frame::polar) {
                const auto rc = sweep(sc.field, System::cartesian, sc.region, o.grid, DerivMode::analytic, 1e-2,
                                      o.threads);
                c.le(sc.label + " analytic cartesian", rc.max_abs, 1e-9 * k);
            }
        } catch (const Error& e) {
            c.fail(sc.label, e.what());
        }
    }
    c.seconds = detail::elapsed(t0);
    c.checks.push_back({"runtime seconds", c.seconds, 10.0, "<=", c.seconds <= 10.0, true, {}});
    return c;
}

inline Criterion yield_identity(const Options& o) {
    Criterion c{2, "yield identity", {}, 0.0};
    for (const auto& sc : stress_cases()) {
        const StressField& f = sc.field;
        const auto pts = slipline::detail::lattice(sc.region, o.grid);
        const auto vals = slipline::detail::parallel_eval(int(pts.size()), o.threads ? o.threads : worker_count(),
                                                          [&](int i) {
                                                              const Point2& p = pts[std::size_t(i)];
                                                              if (!f.contains(p, 1e-2))
                                                                  return std::numeric_limits<double>::quiet_NaN();
                                                              const StressState s = f.eval_fn(f.native(p));
                                                              return std::abs(levy_to_components(s).yield_residual(f.k));
                                                          });
        const auto rep = slipline::detail::aggregate(vals, pts);
        c.le(sc.label, rep.max_abs, 1e-12 * f.k * f.k);
    }
    return c;
}

inline Criterion riemann_drift(const Options&) {
    Criterion c{3, "Riemann invariant conservation along traces", {}, 0.0};
    struct T {
        std::string label;
        StressField f;
        std::vector<Point2> starts;
    };
    const std::vector<T> cases{
        {"prandtl", catalog::prandtl(), {Point2::cartesian(0.0, 0.3), Point2::cartesian(-1.0, -0.6)}},
        {"nadai_two_circles", catalog::nadai_two_circles(), {Point2::polar(1.2, 0.3), Point2::polar(1.05, -2.0)}},
        {"nadai_vortex", catalog::nadai_vortex(), {Point2::polar(2.0, 0.3), Point2::polar(1.5, 2.5)}},
        {"simple_wave_poly",
         catalog::simple_wave(FunctionParam::polynomial({0.5, 0.2}), 0, 0.0, 0.5, -pi / 2.0, 0.0),
         {Point2::cartesian(1.0, 1.0)}},
        {"centered_fan_odd", catalog::centered_fan(1), {Point2::cartesian(1.0, 0.8)}},
        {"spiral_simple_wave", catalog::spiral_simple_wave(), {Point2::cartesian(2.5, 1.5)}},
    };
    for (const auto& t : cases) {
        for (std::size_t si = 0; si < t.starts.size(); ++si) {
            for (Family fam : {Family::first, Family::second}) {
                const std::string lbl = t.label + " start " + std::to_string(si) + " " + to_string(fam);
                try {
                    const Polyline pl = detail::full_trace(t.f, t.starts[si], fam, 1e-3, 1.0, 1e-2);
                    const CharCoords c0 = riemann_invariants(pl.stress.front());
                    double drift = 0.0;
                    for (const auto& s : pl.stress) {
                        const CharCoords ci = riemann_invariants(s);
                        drift = std::max(drift, std::abs(fam == Family::first ? ci.xi - c0.xi : ci.eta - c0.eta));
                    }
                    const double len = detail::arclen(pl);
                    c.le(lbl + " drift per unit length", drift / std::max(len, 1e-300), 1e-5);
                } catch (const Error& e) {
                    c.fail(lbl, e.what());
                }
            }
        }
    }
    return c;
}

inline Criterion closed_form_traces(const Options&) {
    Criterion c{4, "closed-form slip lines against ODE traces", {}, 0.0};
    const double step = 1e-3, len = 3.0, margin = 1e-2;
    auto report = [&](const std::string& lbl, const Polyline& pl, double dev) {
        c.le(lbl + " max pointwise distance", dev, 1e-5);
        c.ge(lbl + " arc length", detail::arclen(pl), 1.0);
    };
    // cycloids
    {
        const auto f = catalog::prandtl();
        const double h = f.param("h");
        for (Family fam : {Family::first, Family::second}) {
            const Polyline pl = detail::full_trace(f, Point2::cartesian(0.0, 0.3), fam, step, len, margin);
            const double sgn = fam == Family::first ? -1.0 : 1.0;
            const auto& p0 = pl.points.front();
            const double C = p0.x() - (sgn * 2.0 * h * pl.stress.front().theta + std::sqrt(h * h - p0.y() * p0.y()));
            const ParametricCurve cv = closed_form_family(f, fam, C);
            double dev = 0.0;
            for (std::size_t i = 0; i < pl.size(); ++i)
                dev = std::max(dev, detail::dist(pl.points[i], cv.at(pl.stress[i].theta)));
            report("prandtl cycloid " + to_string(fam), pl, dev);
        }
    }
    // epi/hypocycloids; the annulus a = 2, b = 2 sqrt2 is the a = 1 picture scaled so
    // that one slip line between the circles is longer than 1
    {
        const double a = 2.0, b = 2.0 * std::sqrt(2.0);
        const auto f = catalog::nadai_two_circles(a, b);
        const catalog::TwoCircles tc{a, b, f.k, 1};
        for (Family fam : {Family::first, Family::second}) {
            const double r0 = fam == Family::first ? 2.3 : 2.1;
            const Point2 start = Point2::polar(r0, 0.3);
            const Polyline pl = detail::full_trace(f, start, fam, step, len, 1e-3);
            const auto ph = detail::unwrapped_phi(pl, start);
            const double rr0 = std::hypot(pl.points[0].x(), pl.points[0].y());
            const double C = ph[0] - two_circles_family_phi(tc.C2(), tc.tau(rr0), fam);
            const ParametricCurve cv = closed_form_family(f, fam, C);
            double dev = 0.0, rel = 0.0;
            auto relation = [&](std::size_t i) {
                const double r = std::hypot(pl.points[i].x(), pl.points[i].y()) / a;
                return fam == Family::first ? hypocycloid_relation(r, ph[i]) : epicycloid_relation(r, ph[i]);
            };
            const double rel0 = relation(0);
            for (std::size_t i = 0; i < pl.size(); ++i) {
                const double r = std::hypot(pl.points[i].x(), pl.points[i].y());
                dev = std::max(dev, detail::dist(pl.points[i], cv.at(tc.tau(r))));
                rel = std::max(rel, std::abs(relation(i) - rel0));
            }
            const std::string nm = fam == Family::first ? "hypocycloid" : "epicycloid";
            report("two circles " + nm, pl, dev);
            c.le("two circles " + nm + " implicit relation drift", rel, 1e-5);
        }
    }
    // channel slip lines
    for (double cc : {2.0, 0.5}) {
        const auto f = catalog::nadai_channel(cc);
        const auto br = catalog::ChannelBranch::make(cc, 0.0);
        for (Family fam : {Family::first, Family::second}) {
            const Point2 start = Point2::polar(1.0, cc > 1.0 ? 0.2 : 0.0);
            const Polyline pl = detail::full_trace(f, start, fam, step, len, margin);
            const auto ph = detail::unwrapped_phi(pl, start);
            const ParametricCurve unit = closed_form_family(f, fam, 1.0);
            const double psi0 = br.solve(ph[0]);
            const double C = std::hypot(pl.points[0].x(), pl.points[0].y()) /
                             std::hypot(unit.at(psi0).x(), unit.at(psi0).y());
            const ParametricCurve cv = closed_form_family(f, fam, C);
            double dev = 0.0;
            for (std::size_t i = 0; i < pl.size(); ++i) {
                const Point2 q = cv.at(br.solve(ph[i]));
                // same polar angle: compare radii, then positions
                dev = std::max(dev, std::abs(std::hypot(q.x(), q.y()) - std::hypot(pl.points[i].x(), pl.points[i].y())));
            }
            report("channel c=" + std::to_string(cc).substr(0, 3) + " " + to_string(fam), pl, dev);
        }
    }
    // spiral families
    {
        const auto f = catalog::spiral();
        const catalog::Spiral sp(f.param("A"), f.param("alpha"), f.k, true);
        for (Family fam : {Family::first, Family::second}) {
            const Point2 start = Point2::polar(1.0, 0.0);
            const Polyline pl = detail::full_trace(f, start, fam, step, len, margin);
            const auto ph = detail::unwrapped_phi(pl, start);
            auto g_at = [&](std::size_t i) {
                const double g = pl.stress[i].theta - ph[i];
                return g - pi * std::round(g / pi);
            };
            const double C = ph[0] - spiral_family_phi(g_at(0), 0.0, fam);
            const ParametricCurve cv = closed_form_family(f, fam, C);
            double dev = 0.0;
            for (std::size_t i = 0; i < pl.size(); ++i) dev = std::max(dev, detail::dist(pl.points[i], cv.at(g_at(i))));
            report("spiral " + to_string(fam), pl, dev);
        }
    }
    return c;
}

inline Criterion envelopes(const Options&) {
    Criterion c{5, "envelopes", {}, 0.0};
    // Revuzhenko, lower sign: eta(xi) minus branch
    try {
        const auto f = catalog::revuzhenko(-1);
        const EnvelopeCurve e = envelope_numeric(f, Family::first, {0.05, 0.45, -12.0, -0.005}, 400, 1e-10);
        double worst = 0.0, stated = 0.0;
        int hits = 0;
        for (const auto& st : e.params) {
            const double xi = st[0], eta = st[1];
            double best = std::numeric_limits<double>::infinity();
            int best_id = -1;
            int id = 0;
            for (int root : {-1, 1}) {
                for (bool eta_of_xi : {true, false}) {
                    double d = std::numeric_limits<double>::infinity();
                    try {
                        d = eta_of_xi ? std::abs(eta - revuzhenko_envelope_root(xi, -1, root))
                                      : std::abs(xi - revuzhenko_envelope_root(eta, -1, root));
                    } catch (const NoEnvelope&) {
                    }
                    if (d < best) {
                        best = d;
                        best_id = id;
                    }
                    ++id;
                }
            }
            worst = std::max(worst, best);
            if (best_id == 0) {
                ++hits;
                stated = std::max(stated, best);
                if (xi * eta >= 0.0) c.flag("revuzhenko stated branch has xi*eta < 0", false);
            }
        }
        c.le("revuzhenko numeric zeros vs fold branches", worst, 1e-8);
        c.le("revuzhenko numeric zeros vs (-1-sqrt(1-16xi^4))/(4xi)", stated, 1e-8);
        c.ge("revuzhenko stated branch samples", hits, 100.0);
        // tangency on the closed-form stated branch
        // the fold spirals quickly at small xi, so chord tangents need a fine sampling
        for (const auto& ce : envelope_closed_form(f, 20001)) {
            if (ce.label != "eta_of_xi_minus_pos") continue;
            const double ang = envelope_tangency(ce, [&](std::size_t i) {
                return f.eval_fn(Point2::characteristic(ce.params[i][0], ce.params[i][1]));
            });
            c.le("revuzhenko envelope tangency (rad)", ang, 1e-3);
        }
    } catch (const Error& e) {
        c.fail("revuzhenko envelope", e.what());
    }
    // two circles, both circles
    try {
        const auto f = catalog::nadai_two_circles();
        const double a = f.param("a"), b = f.param("b");
        const EnvelopeCurve eb = envelope_numeric(f, Family::second, {-0.5, 0.4, -pi, pi}, 400, 1e-10, false);
        const EnvelopeCurve ea =
            envelope_numeric(f, Family::first, {pi - 0.5, pi + 0.4, -pi, pi}, 400, 1e-10, false);
        double db = 0.0, da = 0.0;
        for (const auto& q : eb.points) db = std::max(db, std::abs(std::hypot(q.x(), q.y()) - b));
        for (const auto& q : ea.points) da = std::max(da, std::abs(std::hypot(q.x(), q.y()) - a));
        c.le("two circles numeric envelope vs r=b", db, 1e-6);
        c.le("two circles numeric envelope vs r=a", da, 1e-6);
        for (const auto& ce : envelope_closed_form(f)) {
            const double r = ce.label == "r=a" ? a + 1e-13 : b - 1e-13;
            const double ang = envelope_tangency(ce, [&](std::size_t i) {
                const double ph = std::atan2(ce.points[i].y(), ce.points[i].x());
                return f.eval_fn(Point2::polar(r, ph));
            });
            c.le("two circles tangency " + ce.label + " (rad)", ang, 1e-3);
        }
    } catch (const Error& e) {
        c.fail("two circles envelope", e.what());
    }
    // spiral: logarithmic spirals at the folds
    try {
        const auto f = catalog::spiral();
        const catalog::Spiral sp(f.param("A"), f.param("alpha"), f.k, true);
        for (const auto& ce : envelope_closed_form(f)) {
            const bool hi = ce.label == "g=g_hi";
            const double L = hi ? sp.L_max() : sp.L_min();
            const double ang = envelope_tangency(ce, [&](std::size_t i) {
                const double ph = std::atan2(ce.points[i].y(), ce.points[i].x());
                const double phi = num::wrap_near(ph, 0.0);
                // just inside the fold
                const double lr = (hi ? L - 1e-11 : L + 1e-11) + sp.alpha() * phi;
                return f.eval_fn(Point2::polar(std::exp(lr), phi));
            });
            c.le("spiral tangency " + ce.label + " (rad)", ang, 1e-3);
        }
    } catch (const Error& e) {
        c.fail("spiral envelope", e.what());
    }
    // channel c = 2 walls
    try {
        const auto f = catalog::nadai_channel(2.0);
        const auto br = catalog::ChannelBranch::make(2.0, 0.0);
        for (const auto& ce : envelope_closed_form(f)) {
            const double ph = ce.points.front().to_polar().phi();
            const double psi = std::abs(br.phi(br.psi_lo) - ph) < std::abs(br.phi(br.psi_hi) - ph) ? br.psi_lo : br.psi_hi;
            // on the wall the field is the limit psi -> wall value
            const double ang = envelope_tangency(ce, [&](std::size_t) { return StressState{0.0, br.theta(psi), f.k}; });
            c.le("channel c=2 wall tangency (rad)", ang, 1e-3);
        }
    } catch (const Error& e) {
        c.fail("channel envelope", e.what());
    }
    // simple wave: x + f'(theta) sin^2 theta = 0 with f = Phi / sin theta
    try {
        const auto Phi = FunctionParam::polynomial({0.5, 0.2, 0.1});
        const auto f = catalog::simple_wave(Phi, 0, 0.0, 0.5, -pi / 2.0 + 0.05, -0.05);
        const auto env = envelope_closed_form(f);
        const auto& e = env.front();
        double worst = 0.0;
        const double t0 = f.param("theta_lo"), t1 = f.param("theta_hi");
        for (std::size_t i = 0; i < e.points.size(); ++i) {
            const double th = t0 + (t1 - t0) * double(i) / double(e.points.size() - 1);
            const double sn = std::sin(th), cs = std::cos(th);
            const double fp = (Phi.deriv(th) * sn - Phi(th) * cs) / (sn * sn);
            worst = std::max(worst, std::abs(e.points[i].x() + fp * sn * sn));
        }
        c.le("simple wave envelope equation", worst, 1e-8);
        const double ang = envelope_tangency(e, [&](std::size_t i) {
            const double th = t0 + (t1 - t0) * double(i) / double(e.points.size() - 1);
            return StressState{2.0 * f.k * th, th, f.k};
        });
        c.le("simple wave envelope tangency (rad)", ang, 1e-3);
    } catch (const Error& e) {
        c.fail("simple wave envelope", e.what());
    }
    // spiral simple wave: r = C sqrt2 e^{phi - pi/4}; the net jacobian vanishes on it
    try {
        const auto f = catalog::spiral_simple_wave();
        const auto e = envelope_closed_form(f).front();
        const double C = f.param("C");
        double worst = 0.0;
        for (const auto& q : e.points) {
            const Point2 pp = q.to_polar();
            const double phi = num::wrap_near(pp.phi(), pi / 4.0);
            worst = std::max(worst, std::abs(pp.r() - C * std::sqrt(2.0) * std::exp(phi - pi / 4.0)));
        }
        c.le("spiral simple wave envelope radius", worst, 1e-12);
        const double ang = envelope_tangency(e, [&](std::size_t i) {
            const double phi = num::wrap_near(e.points[i].to_polar().phi(), pi / 4.0);
            return StressState{0.0, phi - pi / 4.0, f.k};
        });
        c.le("spiral simple wave envelope tangency (rad)", ang, 1e-3);
    } catch (const Error& e) {
        c.fail("spiral simple wave envelope", e.what());
    }
    return c;
}

inline Criterion structure_constants(const Options& o) {
    Criterion c{6, "structure constants and Jacobi identity", {}, 0.0};
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(-0.9, 0.9), us(-1.0, 1.0), ut(-pi, pi);
    const double k = 0.5;
    using namespace ops;
    double d24 = 0, d34 = 0, z24 = 0, z34 = 0, z15 = 0, z35 = 0, jac_s = 0, jac_u = 0;
    const LieOperator x1 = X1(), x2 = X2(), x3 = X3(), x4 = X4(k), dx = Dx(), dy = Dy();
    const LieOperator z1 = Z1(), z2 = Z2(), z3 = Z3(), z4 = Z4(), z5 = Z5(), dv = Dv();
    auto scaled = [](const Vec& v, double s) {
        Vec r = v;
        for (auto& x : r) x *= s;
        return r;
    };
    auto jacobi = [](const LieOperator& a, const LieOperator& b, const LieOperator& cc, const Vec& p) {
        const Vec t1 = commutator(bracket(a, b), cc, p, false);
        const Vec t2 = commutator(bracket(b, cc), a, p, false);
        const Vec t3 = commutator(bracket(cc, a), b, p, false);
        double m = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(t1[i] + t2[i] + t3[i]));
        return m;
    };
    for (int i = 0; i < 100; ++i) {
        const Vec ps{ux(rng), uy(rng), us(rng), ut(rng)};
        const Vec pu{ux(rng), uy(rng), us(rng), us(rng)};
        d24 = std::max(d24, detail::max_dev(commutator(x2, x4, ps, false), scaled(x3(ps), -4.0 * k)));
        d34 = std::max(d34, detail::max_dev(commutator(x3, x4, ps, false), scaled(x2(ps), -1.0 / k)));
        z24 = std::max(z24, detail::max_dev(commutator(z2, z4, pu, false), scaled(z3(pu), -4.0)));
        z34 = std::max(z34, detail::max_dev(commutator(z3, z4, pu, false), scaled(z2(pu), -1.0)));
        z15 = std::max(z15, detail::max_dev(commutator(z1, z5, pu, false), scaled(z5(pu), -1.0)));
        z35 = std::max(z35, detail::max_dev(commutator(z3, z5, pu, false), scaled(dv(pu), -1.0)));
        if (i < 25) {
            for (const auto& t : std::vector<std::array<LieOperator, 3>>{
                     {x1, x2, x4}, {x2, x3, x4}, {x1, x3, x4}, {x2, x4, dx}, {x4, dx, dy}})
                jac_s = std::max(jac_s, jacobi(t[0], t[1], t[2], ps));
            for (const auto& t : std::vector<std::array<LieOperator, 3>>{
                     {z1, z2, z4}, {z2, z3, z4}, {z2, z4, z5}, {z3, z4, z5}, {z1, z4, z5}})
                jac_u = std::max(jac_u, jacobi(t[0], t[1], t[2], pu));
        }
    }
    c.le("[X2,X4] = -4k X3", d24, 1e-6);
    c.le("[X3,X4] = -X2/k", d34, 1e-6);
    c.le("[Z2,Z4] = -4 Z3", z24, 1e-6);
    c.le("[Z3,Z4] = -Z2", z34, 1e-6);
    c.le("[Z1,Z5] = -Z5", z15, 1e-6);
    c.le("[Z3,Z5] = -dv", z35, 1e-6);
    c.le("Jacobi identity L_sigma_theta", jac_s, 1e-6);
    c.le("Jacobi identity L_uv", jac_u, 1e-6);
    return c;
}

inline Criterion commutator_velocities(const Options& o) {
    Criterion c{7, "commutator-generated velocity fields", {}, 0.0};
    std::mt19937_64 rng(o.seed + 7);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(-0.9, 0.9), uu(-1.0, 1.0);
    const auto nad = vcat::nadai();
    const auto yak = vcat::yakhno(2.0, 0.0);
    const auto sen = vcat::ivlev_senashov(-pi / 2.0, 3.0);
    const LieOperator z2 = ops::Z2(), z4 = ops::Z4(), z5 = ops::Z5();
    const LieOperator z45 = bracket(z4, z5);
    double d25 = 0, d45 = 0, d245 = 0;
    for (int i = 0; i < 100; ++i) {
        const Vec p{ux(rng), uy(rng), uu(rng), uu(rng)};
        const Point2 q = Point2::cartesian(p[0], p[1]);
        const auto wn = nad.eval(q), wy = yak.eval(q), ws = sen.eval(q);
        d25 = std::max(d25, detail::max_dev(commutator(z2, z5, p, false), Vec{0, 0, -wn[0], -wn[1]}));
        d45 = std::max(d45, detail::max_dev(commutator(z4, z5, p, false), Vec{0, 0, wy[0], wy[1]}));
        d245 = std::max(d245, detail::max_dev(commutator(z2, z45, p, false), Vec{0, 0, 2.0 * ws[0], 2.0 * ws[1]}));
    }
    c.le("[Z2,Z5] = -Nadai field", d25, 1e-6);
    c.le("[Z4,Z5] = yakhno field (C1=2, C2=0)", d45, 1e-6);
    c.le("[Z2,[Z4,Z5]] = 2 x senashov field (c1=-pi/2, c2=3)", d245, 1e-6);
    return c;
}

inline Criterion velocity_compatibility(const Options& o) {
    Criterion c{8, "velocity compatibility", {}, 0.0};
    for (const auto& vc : velocity_cases()) {
        try {
            const auto ra = sweep(vc.field, vc.field.background, vc.region, o.grid, DerivMode::analytic, 1e-2, o.threads);
            const auto rf = sweep(vc.field, vc.field.background, vc.region, o.grid, DerivMode::fd, 1e-2, o.threads);
            c.le(vc.label + " analytic", ra.max_abs, 1e-9);
            c.le(vc.label + " FD", rf.max_abs, 1e-6);
            c.ge(vc.label + " evaluated points", ra.evaluated, 100.0);
        } catch (const Error& e) {
            c.fail(vc.label, e.what());
        }
    }
    return c;
}

inline Criterion boundary_conditions(const Options&) {
    Criterion c{9, "boundary conditions", {}, 0.0};
    const std::vector<double> xs{-1.5, -0.3, 0.0, 0.7, 2.0};
    for (const auto& [m, h, cst] : std::vector<std::array<double, 3>>{{1.0, 1.0, 0.0}, {0.7, 2.0, 0.3}}) {
        const auto f = catalog::prandtl(cst, m, h, 0.5);
        double d = 0.0;
        for (double x : xs)
            for (double sgn : {1.0, -1.0}) {
                const FullStress s = levy_to_components(f.eval(Point2::cartesian(x, sgn * h)));
                d = std::max(d, std::abs(s.tau_xy - sgn * m * f.k));
            }
        c.le("prandtl tau_xy(y=+-h) = +-mk, m=" + std::to_string(m).substr(0, 3), d, 1e-10);
    }
    {
        const auto f = catalog::nadai_two_circles();
        const double a = f.param("a"), b = f.param("b");
        double da = 0.0, db = 0.0;
        for (double ph : {-2.5, -1.0, 0.0, 0.4, 2.0}) {
            da = std::max(da, std::abs(detail::polar_components(f.eval(Point2::polar(a, ph)), ph)[2] + f.k));
            db = std::max(db, std::abs(detail::polar_components(f.eval(Point2::polar(b, ph)), ph)[2] - f.k));
        }
        c.le("two circles tau_rphi(a) = -k", da, 1e-10);
        c.le("two circles tau_rphi(b) = k", db, 1e-10);
    }
    for (const auto& [R, p] : std::vector<std::array<double, 2>>{{1.0, 0.0}, {1.5, 0.3}}) {
        const auto f = catalog::nadai_vortex(R, p, 0.5);
        double dt = 0.0, ds = 0.0;
        for (double ph : {-2.5, 0.0, 1.0}) {
            const StressState s = f.eval(Point2::polar(R, ph));
            dt = std::max(dt, std::abs(detail::polar_components(s, ph)[2] + f.k));
            ds = std::max(ds, std::abs(s.sigma + p));
        }
        c.le("vortex tau_rphi(R) = -k, R=" + std::to_string(R).substr(0, 3), dt, 1e-10);
        c.le("vortex sigma(R) = -p, p=" + std::to_string(p).substr(0, 3), ds, 1e-10);
    }
    {
        const auto n = vcat::nadai();
        const auto y = vcat::yakhno(3.0, pi);
        const auto ts = vcat::theta2(0.0, -0.8, vcat::Theta2Branch::smooth);
        const auto tp = vcat::theta2(0.0, -0.8, vcat::Theta2Branch::printed);
        const double c2 = -0.8;
        double dn = 0, dy = 0, dts = 0, dtp = 0;
        for (double x : xs)
            for (double sgn : {1.0, -1.0}) {
                const Point2 q = Point2::cartesian(x, sgn);
                const auto wn = n.eval(q), wy = y.eval(q), ws = ts.eval(q), wp = tp.eval(q);
                dn = std::max({dn, std::abs(wn[0] - x), std::abs(wn[1] + sgn)});
                dy = std::max({dy, std::abs(wy[0] - x * x), std::abs(wy[1] + sgn * (2.0 * x - pi))});
                const double e = std::exp(-0.5 * x);
                dts = std::max(dts, std::abs(ws[0] - sgn * c2 * (pi / 2.0 - 1.0) * e));
                dtp = std::max({dtp, std::abs(wp[0] - c2 * (pi / 2.0 - 1.0) * e),
                                std::abs(wp[1] - sgn * c2 * (1.0 + pi / 2.0) * e)});
            }
        c.le("nadai velocity u(x,+-1) = x, v = -+1", dn, 1e-10);
        c.le("yakhno u(x,+-1) = x^2, v = -+(2x - pi)", dy, 1e-10);
        c.le("theta2 smooth u(x,+-1) = +-c2(pi/2-1)e^{-x/2}", dts, 1e-10);
        c.le("theta2 printed plate values", dtp, 1e-10);
    }
    return c;
}

inline Criterion dissipation_checks(const Options& o) {
    Criterion c{10, "plastic dissipation", {}, 0.0};
    const auto bg = catalog::prandtl();
    const auto n = vcat::nadai();
    const auto y = vcat::yakhno();
    const int N = o.grid;
    double dn = 0, dy = 0, gap_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const double x = -2.0 + 8.0 * i / double(N - 1), yy = -0.99 + 1.98 * j / double(N - 1);
            const Point2 q = Point2::cartesian(x, yy);
            const double s = std::sqrt(1.0 - yy * yy);
            const double Dn = dissipation_at(n, bg, q), Dy = dissipation_at(y, bg, q);
            dn = std::max(dn, std::abs(Dn - 1.0 / s));
            dy = std::max(dy, std::abs(Dy - 2.0 * (x - 2.0 * s) / s));
            if (x > 0.5 + 2.0 * s + 1e-9) gap_min = std::min(gap_min, Dy - Dn);
        }
    c.le("nadai D = 1/sqrt(1-y^2)", dn, 1e-8);
    c.le("yakhno D = 2(x-2s)/s", dy, 1e-8);
    c.gt("min D_yakhno - D_nadai where x > 1/2 + 2s", gap_min, 0.0);
    double root_err = 0.0;
    for (double yy : {-0.95, -0.6, -0.2, 0.0, 0.3, 0.7, 0.99}) {
        auto D = [&](double x) { return dissipation_at(y, bg, Point2::cartesian(x, yy)); };
        const double x0 = num::bisect_newton(D, -1.0, 3.0, 1e-13);
        root_err = std::max(root_err, std::abs(x0 - 2.0 * std::sqrt(1.0 - yy * yy)));
    }
    c.le("yakhno sign boundary x = 2 sqrt(1-y^2)", root_err, 1e-8);
    for (double c2 : {-1.0, -0.3}) {
        const auto t2 = vcat::theta2(0.0, c2, vcat::Theta2Branch::printed);
        double dmin = std::numeric_limits<double>::infinity(), closed = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < 4 * N; ++j) {
                const double x = -2.0 + 4.0 * i / double(N - 1);
                const double yy = -0.999999 + 1.999998 * j / double(4 * N - 1);
                const Point2 q = Point2::cartesian(x, yy);
                if (!t2.contains(q)) continue;
                const double D = dissipation_at(t2, bg, q);
                dmin = std::min(dmin, D);
                const double Dc = vcat::theta2_dissipation_closed(x, yy, c2);
                closed = std::max(closed, std::abs(D - Dc) / std::max(1.0, std::abs(Dc)));
            }
        const std::string tag = "theta2 c2=" + std::to_string(c2).substr(0, 4);
        c.ge(tag + " min D on |y| < 1", dmin, 0.0);
        c.le(tag + " D vs closed form (relative)", closed, 1e-8);
    }
    return c;
}

inline Criterion streamline_oracles(const Options&) {
    Criterion c{11, "streamline invariants", {}, 0.0};
    struct S {
        std::string label;
        VelocityField vf;
        std::function<double(double, double)> inv;
        std::vector<std::array<double, 2>> starts;
    };
    const std::vector<S> cases{
        {"nadai", vcat::nadai(), nadai_stream_invariant, {{0.5, 0.3}, {-1.0, -0.5}, {1.5, 0.8}}},
        {"yakhno", vcat::yakhno(), yakhno_stream_invariant, {{-2.0, 0.2}, {1.5, -0.2}, {3.0, 0.4}}},
        {"theta2 c2=0", vcat::theta2(1.0, 0.0, vcat::Theta2Branch::smooth), theta2_stream_invariant,
         {{-2.0, 0.4}, {0.0, -0.2}, {3.0, 0.2}}},
    };
    for (const auto& sc : cases) {
        double dev = 0.0, shortest = std::numeric_limits<double>::infinity();
        for (const auto& st : sc.starts) {
            try {
                const auto sl = trace_streamline(sc.vf, Point2::cartesian(st[0], st[1]), 1e-3, 1.0);
                const double i0 = sc.inv(st[0], st[1]);
                for (const auto& q : sl.points) dev = std::max(dev, std::abs(sc.inv(q.x(), q.y()) - i0));
                shortest = std::min(shortest, sl.s.back());
            } catch (const Error& e) {
                c.fail(sc.label, e.what());
            }
        }
        c.le(sc.label + " invariant drift", dev, 1e-4);
        c.ge(sc.label + " shortest trace", shortest, 1.0 - 1e-9);
    }
    return c;
}

inline Criterion invariance(const Options&) {
    Criterion c{12, "invariance under the declared subalgebras", {}, 0.0};
    for (const auto& sc : stress_cases()) {
        const StressField& f = sc.field;
        if (!f.tag) continue;
        try {
            const LieOperator op = tag_operator(f);
            const auto pts = slipline::detail::lattice(sc.region, 12);
            double res = 0.0, ctrl = 0.0;
            int used = 0;
            const LieOperator control = detail::basis_operator(sc.control, f.k);
            for (const auto& p : pts) {
                if (!f.contains(p, 1e-2)) continue;
                ++used;
                res = std::max(res, check_invariance(op, f, p).max_abs());
                ctrl = std::max(ctrl, check_invariance(control, f, p).max_abs());
            }
            c.le(sc.label + " <" + f.tag->id + ">", res, 1e-7);
            c.gt(sc.label + " negative control " + sc.control, ctrl, 1e-3);
            c.ge(sc.label + " points", used, 20.0);
        } catch (const Error& e) {
            c.fail(sc.label, e.what());
        }
    }
    double y1 = 0, equ = 0, push = 0;
    for (int sign : {1, -1})
        for (double xi : {0.15, 0.3, 0.6, 0.9})
            for (double eta : {-0.8, -0.2, 0.25, 0.7}) {
                const auto r = revuzhenko_operator_check(xi, eta, sign);
                y1 = std::max(y1, r.y1_on_solution);
                equ = std::max(equ, r.eq_u);
                push = std::max(push, r.pushforward);
            }
    c.le("revuzhenko Y1 annihilates u - s eta/xi", y1, 1e-7);
    c.le("revuzhenko u = s eta/xi solves the u-equation", equ, 1e-6);
    c.le("revuzhenko (1/3)Y1 = -X4p + (pi/2)X3p", push, 1e-7);
    return c;
}

inline Criterion defect_sensitivity(const Options& o) {
    Criterion c{13, "defect sensitivity", {}, 0.0};
    const double eps = 1e-2;
    for (const auto& sc : stress_cases()) {
        try {
            const System sys = native_system(sc.field);
            const auto rs = sweep(perturbed(sc.field, eps), sys, sc.region, o.grid, DerivMode::analytic, 1e-2, o.threads);
            const auto rt =
                sweep(perturbed(sc.field, eps, true), sys, sc.region, o.grid, DerivMode::analytic, 1e-2, o.threads);
            const auto rf = sweep(perturbed(sc.field, eps), sys, sc.region, o.grid, DerivMode::fd, 1e-2, o.threads);
            c.gt(sc.label + " sigma defect", rs.max_abs, 1e-3);
            c.gt(sc.label + " theta defect", rt.max_abs, 1e-3);
            c.gt(sc.label + " sigma defect FD", rf.max_abs, 1e-3);
        } catch (const Error& e) {
            c.fail(sc.label, e.what());
        }
    }
    for (const auto& vc : velocity_cases()) {
        try {
            const auto r = sweep(perturbed(vc.field, eps), vc.field.background, vc.region, o.grid, DerivMode::analytic,
                                 1e-2, o.threads);
            c.gt(vc.label + " u defect", r.max_abs, 1e-3);
        } catch (const Error& e) {
            c.fail(vc.label, e.what());
        }
    }
    // hodograph form of the Prandtl field: x = -sigma/k - sin 2theta, y = cos 2theta
    {
        const double k = 0.5;
        auto x_of = [k](double s, double t) { return -s / k - std::sin(2.0 * t); };
        auto y_of = [](double, double t) { return std::cos(2.0 * t); };
        auto x_bad = [&](double s, double t) { return x_of(s, t) + eps * s * s; };
        double good = 0.0, bad = 0.0;
        for (double s : {-0.7, 0.1, 0.9})
            for (double t : {-1.3, -0.8, -0.3}) {
                const auto r = hodograph_residual(x_of, y_of, s, t, k);
                const auto b = hodograph_residual(x_bad, y_of, s, t, k);
                good = std::max({good, std::abs(r[0]), std::abs(r[1])});
                bad = std::max({bad, std::abs(b[0]), std::abs(b[1])});
            }
        c.le("prandtl hodograph residual", good, 1e-8);
        c.gt("prandtl hodograph defect", bad, 1e-3);
    }
    {
        double bad = 0.0;
        for (double xi : {0.3, 0.6})
            for (double eta : {-0.5, 0.4})
                bad = std::max(bad, std::abs(eq_u_residual(
                                        [eps](double a, double b) { return b / a + eps * a * a; }, xi, eta)));
        c.gt("revuzhenko u-equation defect", bad, 1e-3);
    }
    return c;
}

// ---------------------------------------------------------------- drivers

inline Criterion run_criterion(int id, const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    switch (id) {
        case 1: c = stress_residuals(o); break;
        case 2: c = yield_identity(o); break;
        case 3: c = riemann_drift(o); break;
        case 4: c = closed_form_traces(o); break;
        case 5: c = envelopes(o); break;
        case 6: c = structure_constants(o); break;
        case 7: c = commutator_velocities(o); break;
        case 8: c = velocity_compatibility(o); break;
        case 9: c = boundary_conditions(o); break;
        case 10: c = dissipation_checks(o); break;
        case 11: c = streamline_oracles(o); break;
        case 12: c = invariance(o); break;
        case 13: c = defect_sensitivity(o); break;
        default: throw ConfigError("no verification suite " + std::to_string(id));
    }
    c.seconds = detail::elapsed(t0);
    return c;
}

inline std::vector<Criterion> run_all(const Options& o) {
    std::vector<Criterion> out;
    for (int id = 1; id <= 13; ++id) out.push_back(run_criterion(id, o));
    return out;
}

//! Checks on a single solution: residual sweeps, yield identity and, when tagged, invariance.
inline Criterion check_solution(const std::string& name, const nlohmann::json& params, double perturb,
                                std::optional<double> k_override, const Options& o) {
    Criterion c{0, name, {}, 0.0};
    if (registry::is_velocity(name)) {
        VelocityField vf = registry::make_velocity(name, params);
        const StressField bg = vf.background;
        if (perturb != 0.0) vf = perturbed(vf, perturb);
        const Region reg = name == "simple_wave_velocity" ? Region{0.2, 2.0, 0.2, 2.0, Frame::cartesian}
                                                          : registry::strip_region();
        const auto ra = sweep(vf, bg, reg, o.grid, DerivMode::analytic, 1e-2, o.threads);
        const auto rf = sweep(vf, bg, reg, o.grid, DerivMode::fd, 1e-2, o.threads);
        c.le("uv_cartesian analytic", ra.max_abs, 1e-9);
        c.le("uv_cartesian FD", rf.max_abs, 1e-6);
        return c;
    }
    StressField f = registry::make_stress(name, params, k_override);
    const Region reg = registry::default_region(f);
    const bool tagged = f.tag.has_value();
    if (perturb != 0.0) f = perturbed(f, perturb);
    const System sys = native_system(f);
    const auto ra = sweep(f, sys, reg, o.grid, DerivMode::analytic, 1e-2, o.threads);
    const auto rf = sweep(f, sys, reg, o.grid, DerivMode::fd, 1e-2, o.threads);
    c.le(to_string(sys) + " analytic", ra.max_abs, 1e-9 * f.k);
    c.le(to_string(sys) + " FD", rf.max_abs, 1e-4 * f.k);
    double yr = 0.0, inv = 0.0;
    const LieOperator op = tagged ? tag_operator(f) : LieOperator{};
    for (const auto& p : slipline::detail::lattice(reg, 12)) {
        if (!f.contains(p, 1e-2)) continue;
        yr = std::max(yr, std::abs(levy_to_components(f.eval_fn(f.native(p))).yield_residual(f.k)));
        if (tagged) inv = std::max(inv, check_invariance(op, f, p).max_abs());
    }
    c.le("yield identity", yr, 1e-12 * f.k * f.k);
    if (tagged) c.le("invariance <" + f.tag->id + ">", inv, 1e-7);
    return c;
}

inline nlohmann::ordered_json to_json(const Criterion& c) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["title"] = c.title;
    j["pass"] = c.pass();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& ch : c.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = ch.name;
        if (ch.timing)
            cj["value"] = nullptr;
        else if (std::isfinite(ch.value))
            cj["value"] = ch.value;
        else
            cj["value"] = nullptr;
        cj["relation"] = ch.relation;
        cj["threshold"] = ch.threshold;
        cj["pass"] = ch.pass;
        if (!ch.note.empty()) cj["note"] = ch.note;
        arr.push_back(cj);
    }
    j["checks"] = arr;
    return j;
}

inline std::vector<const Check*> failures(const Criterion& c) {
    std::vector<const Check*> out;
    for (const auto& ch : c.checks)
        if (!ch.pass) out.push_back(&ch);
    return out;
}

}  // namespace slipline::verify
