// slipline_lab: sample stress and velocity fields, trace slip lines, envelopes and
// streamlines, and run the verification suites.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "slipline/slipline.hpp"

using namespace slipline;
using json = nlohmann::json;

namespace {

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Job {
    std::string solution;
    std::string params = "{}";
    std::string region;
    bool polar = false;
    int n = 0;
    double step = 1e-3;
    double arclen = 2.0;
    int family = 0;
    std::string out;
    std::string format = "csv";
    double k = 0.0;
    bool k_set = false;
    std::uint64_t seed = verify::Options{}.seed;
    bool skip_outside = false;
    bool numeric = false;
    std::string scan = "t";
    bool all = false;
    double perturb = 0.0;
};

json parse_params(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body[0] == '@') {
        std::ifstream is(body.substr(1));
        if (!is) throw ConfigError("cannot read params file " + body.substr(1));
        std::ostringstream ss;
        ss << is.rdbuf();
        body = ss.str();
    }
    try {
        json j = json::parse(body);
        if (!j.is_object()) throw ConfigError("--params must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("--params: ") + e.what());
    }
}

std::array<double, 4> parse_region(const std::string& s) {
    std::array<double, 4> v{};
    std::stringstream ss(s);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw ConfigError("--region needs exactly 4 comma-separated numbers");
        try {
            std::size_t used = 0;
            v[std::size_t(i)] = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--region: bad number '" + item + "'");
        }
        ++i;
    }
    if (i != 4) throw ConfigError("--region needs exactly 4 comma-separated numbers");
    if (!(v[1] > v[0]) || !(v[3] > v[2])) throw ConfigError("--region bounds must be increasing");
    return v;
}

std::optional<double> k_of(const Job& j) { return j.k_set ? std::optional<double>(j.k) : std::nullopt; }

void check_format(const Job& j, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (j.format == a) return;
    throw ConfigError("--format " + j.format + " is not available for this command");
}

void emit(const Job& j, const std::string& content) {
    if (j.out.empty() || j.out == "-")
        std::cout << content;
    else
        out::atomic_write(j.out, content);
}

// lattice region in the field's native frame
Region job_region(const Job& j, const StressField& f) {
    if (j.region.empty()) {
        if (j.polar) throw ConfigError("--polar needs --region");
        return registry::default_region(f);
    }
    const auto r = parse_region(j.region);
    if (f.frame == Frame::characteristic) {
        if (j.polar) throw ConfigError(f.name + ": region is given in (xi, eta); --polar does not apply");
        return {r[0], r[1], r[2], r[3], Frame::characteristic};
    }
    if (j.polar && !(r[0] > 0.0)) throw ConfigError("--polar region needs r0 > 0");
    return {r[0], r[1], r[2], r[3], j.polar ? Frame::polar : Frame::cartesian};
}

Region cartesian_region(const Job& j, const Region& def) {
    if (j.region.empty()) return def;
    if (j.polar) throw ConfigError("velocity fields use a cartesian --region");
    const auto r = parse_region(j.region);
    return {r[0], r[1], r[2], r[3], Frame::cartesian};
}

// ---------------------------------------------------------------- sample

int cmd_sample(const Job& j) {
    check_format(j, {"csv", "json"});
    const StressField f = registry::make_stress(j.solution, parse_params(j.params), k_of(j));
    const Region reg = job_region(j, f);
    const int n = j.n > 0 ? j.n : 50;
    if (n < 2) throw ConfigError("--n must be at least 2");
    out::Csv csv(out::sample_header());
    json rows = json::array();
    for (const Point2& p : slipline::detail::lattice(reg, n)) {
        if (!f.contains(p, 0.0)) {
            if (j.skip_outside) continue;
            throw DomainError(f.name + ": lattice point (" + out::num(p.a) + ", " + out::num(p.b) +
                              ") outside the domain (use --skip-outside)");
        }
        const Point2 q = f.native(p);
        const StressState s = f.eval_fn(q);
        const Point2 c = cartesian_position(f, q);
        const FullStress fs = levy_to_components(s);
        const CharCoords cc = riemann_invariants(s);
        const std::vector<double> row{c.x(), c.y(), s.sigma, s.theta, fs.sigma_x, fs.sigma_y, fs.tau_xy, cc.xi, cc.eta};
        csv.row(row);
        rows.push_back(row);
    }
    if (j.format == "csv") {
        emit(j, csv.str());
    } else {
        nlohmann::ordered_json o;
        o["solution"] = j.solution;
        o["params"] = parse_params(j.params);
        o["columns"] = out::sample_header();
        o["rows"] = rows;
        emit(j, o.dump(1) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------- slip lines and envelopes

struct Curve {
    Family family;
    std::vector<Point2> pts;
    std::vector<StressState> stress;
    std::string css;
};

std::vector<double> arclength(const std::vector<Point2>& pts) {
    std::vector<double> s;
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) acc += std::hypot(pts[i].x() - pts[i - 1].x(), pts[i].y() - pts[i - 1].y());
        s.push_back(acc);
    }
    return s;
}

std::vector<Family> families(const Job& j) {
    if (j.family == 0) return {Family::first, Family::second};
    if (j.family == 1) return {Family::first};
    if (j.family == 2) return {Family::second};
    throw ConfigError("--family must be 1 or 2");
}

std::vector<Curve> envelope_curves(const StressField& f) {
    std::vector<Curve> out;
    try {
        for (const auto& e : envelope_closed_form(f, 401)) {
            Curve c{e.family, e.points, {}, "envelope"};
            out.push_back(std::move(c));
        }
    } catch (const NoEnvelope&) {
    }
    return out;
}

int write_curves(const Job& j, const StressField& f, const std::vector<Curve>& curves, bool with_envelopes) {
    if (j.format == "svg") {
        std::vector<out::SvgPath> paths;
        for (const auto& c : curves) {
            out::SvgPath p;
            p.css_class = c.css;
            for (const auto& q : c.pts) p.pts.push_back({q.x(), q.y()});
            paths.push_back(std::move(p));
        }
        if (with_envelopes)
            for (const auto& c : envelope_curves(f)) {
                out::SvgPath p;
                p.css_class = "envelope";
                for (const auto& q : c.pts) p.pts.push_back({q.x(), q.y()});
                paths.push_back(std::move(p));
            }
        emit(j, out::svg(paths, f.name));
        return 0;
    }
    out::Csv csv(out::polyline_header());
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t id = 0; id < curves.size(); ++id) {
        const Curve& c = curves[id];
        const auto s = arclength(c.pts);
        nlohmann::ordered_json cj;
        cj["curve_id"] = id;
        cj["family"] = c.family == Family::first ? 1 : 2;
        cj["kind"] = c.css;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < c.pts.size(); ++i) {
            const bool has = i < c.stress.size();
            const StressState st = has ? c.stress[i] : StressState{nan, nan, f.k};
            const CharCoords cc = has ? riemann_invariants(st) : CharCoords{nan, nan};
            const std::vector<double> row{double(id), s[i], c.pts[i].x(), c.pts[i].y(), st.sigma, st.theta, cc.xi, cc.eta};
            csv.row(row);
            rows.push_back(std::vector<double>(row.begin() + 1, row.end()));
        }
        cj["rows"] = rows;
        arr.push_back(cj);
    }
    if (j.format == "csv") {
        emit(j, csv.str());
    } else {
        nlohmann::ordered_json o;
        o["solution"] = f.name;
        o["columns"] = std::vector<std::string>(out::polyline_header().begin() + 1, out::polyline_header().end());
        o["curves"] = arr;
        emit(j, o.dump(1) + "\n");
    }
    return 0;
}

int cmd_sliplines(const Job& j) {
    check_format(j, {"csv", "json", "svg"});
    const StressField f = registry::make_stress(j.solution, parse_params(j.params), k_of(j));
    const Region reg = job_region(j, f);
    const auto fams = families(j);
    const int n = j.n > 0 ? j.n : 9;
    if (!(j.step > 0.0) || !(j.arclen > 0.0)) throw ConfigError("--step and --arclen must be positive");
    std::vector<Curve> curves;
    if (f.frame == Frame::characteristic) {
        // lines of the (xi, eta) net
        for (Family fam : fams) {
            const bool first = fam == Family::first;
            const double c0 = first ? reg.a0 : reg.b0, c1 = first ? reg.a1 : reg.b1;
            const double t0 = first ? reg.b0 : reg.a0, t1 = first ? reg.b1 : reg.a1;
            const int m = std::max(2, int(std::ceil((t1 - t0) / j.step)) + 1);
            for (int i = 0; i < n; ++i) {
                const double cst = c0 + (c1 - c0) * (i + 0.5) / n;
                Curve c{fam, {}, {}, first ? "first" : "second"};
                for (int q = 0; q < m; ++q) {
                    const double t = t0 + (t1 - t0) * q / double(m - 1);
                    const Point2 p = first ? Point2::characteristic(cst, t) : Point2::characteristic(t, cst);
                    if (!f.contains(p, 0.0)) continue;
                    c.pts.push_back(cartesian_position(f, p));
                    c.stress.push_back(f.eval_fn(p));
                }
                if (c.pts.size() > 1) curves.push_back(std::move(c));
            }
        }
        return write_curves(j, f, curves, true);
    }
    for (Family fam : fams) {
        for (int i = 0; i < n; ++i) {
            const double u = (i + 0.5) / n;
            const Point2 seed{reg.a0 + (reg.a1 - reg.a0) * u, reg.b0 + (reg.b1 - reg.b0) * u, reg.frame};
            if (!f.contains(seed, 1e-2)) continue;
            const Polyline fw = trace_slipline(f, seed, fam, {j.step, j.arclen, 1e-2, 1});
            const Polyline bw = trace_slipline(f, seed, fam, {j.step, j.arclen, 1e-2, -1});
            Curve c{fam, {}, {}, fam == Family::first ? "first" : "second"};
            for (std::size_t q = bw.size(); q-- > 1;) {
                c.pts.push_back(bw.points[q]);
                c.stress.push_back(bw.stress[q]);
            }
            for (std::size_t q = 0; q < fw.size(); ++q) {
                c.pts.push_back(fw.points[q]);
                c.stress.push_back(fw.stress[q]);
            }
            curves.push_back(std::move(c));
        }
    }
    if (curves.empty()) throw DomainError(f.name + ": no seed point inside the domain");
    return write_curves(j, f, curves, true);
}

int cmd_envelope(const Job& j) {
    check_format(j, {"csv", "json", "svg"});
    const StressField f = registry::make_stress(j.solution, parse_params(j.params), k_of(j));
    std::vector<Curve> curves;
    if (j.numeric) {
        if (j.region.empty()) throw ConfigError("--numeric needs --region s0,s1,t0,t1 in net parameters");
        if (j.scan != "s" && j.scan != "t") throw ConfigError("--scan must be s or t");
        const auto r = parse_region(j.region);
        const auto fams = families(j);
        const EnvelopeCurve e = envelope_numeric(f, fams.front(), {r[0], r[1], r[2], r[3]}, j.n > 0 ? j.n : 400,
                                                 1e-10, j.scan == "t");
        curves.push_back({e.family, e.points, {}, "envelope"});
    } else {
        curves = envelope_curves(f);
        if (curves.empty()) throw NoEnvelope(f.name + ": no documented envelope");
    }
    return write_curves(j, f, curves, false);
}

// ---------------------------------------------------------------- velocity

std::vector<double> velocity_row(const VelocityField& vf, const Point2& p, double id, double s) {
    const auto w = vf.eval(p);
    const double D = dissipation_at(vf, vf.background, p);
    const bool ok = dissipation_sign_ok(vf, vf.background, p);
    return {id, s, p.x(), p.y(), w[0], w[1], D, ok ? 1.0 : 0.0};
}

Region velocity_default_region(const std::string& name) {
    return name == "simple_wave_velocity" ? Region{0.2, 2.0, 0.2, 2.0, Frame::cartesian} : registry::strip_region();
}

int cmd_streamlines(const Job& j) {
    check_format(j, {"csv", "json", "svg"});
    const VelocityField vf = registry::make_velocity(j.solution, parse_params(j.params));
    const Region reg = cartesian_region(j, velocity_default_region(j.solution));
    const int n = j.n > 0 ? j.n : 7;
    if (!(j.step > 0.0) || !(j.arclen > 0.0)) throw ConfigError("--step and --arclen must be positive");
    std::vector<Streamline> lines;
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) / n;
        const Point2 seed = Point2::cartesian(reg.a0 + (reg.a1 - reg.a0) * u, reg.b0 + (reg.b1 - reg.b0) * u);
        if (!vf.contains(seed, 1e-2) || !vf.background.contains(seed, 1e-2)) continue;
        try {
            lines.push_back(trace_streamline(vf, seed, j.step, j.arclen));
        } catch (const StagnationPoint&) {
        }
    }
    if (lines.empty()) throw DomainError(vf.name + ": no usable seed point");
    if (j.format == "svg") {
        std::vector<out::SvgPath> paths;
        for (const auto& l : lines) {
            out::SvgPath p;
            p.css_class = "streamline";
            for (const auto& q : l.points) p.pts.push_back({q.x(), q.y()});
            paths.push_back(std::move(p));
        }
        emit(j, out::svg(paths, vf.name));
        return 0;
    }
    out::Csv csv(out::velocity_header());
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t id = 0; id < lines.size(); ++id) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < lines[id].size(); ++i) {
            const auto row = velocity_row(vf, lines[id].points[i], double(id), lines[id].s[i]);
            csv.row(row);
            rows.push_back(std::vector<double>(row.begin() + 1, row.end()));
        }
        arr.push_back({{"curve_id", id}, {"rows", rows}});
    }
    if (j.format == "csv") {
        emit(j, csv.str());
    } else {
        nlohmann::ordered_json o;
        o["velocity"] = vf.name;
        o["columns"] = std::vector<std::string>(out::velocity_header().begin() + 1, out::velocity_header().end());
        o["curves"] = arr;
        emit(j, o.dump(1) + "\n");
    }
    return 0;
}

int cmd_velocity(const Job& j) {
    check_format(j, {"csv", "json"});
    const VelocityField vf = registry::make_velocity(j.solution, parse_params(j.params));
    const Region reg = cartesian_region(j, velocity_default_region(j.solution));
    const int n = j.n > 0 ? j.n : 50;
    if (n < 2) throw ConfigError("--n must be at least 2");
    // lattice rows: s is the sample index
    const std::vector<std::string> header(out::velocity_header().begin() + 1, out::velocity_header().end());
    out::Csv csv(header);
    json rows = json::array();
    int idx = 0;
    for (const Point2& p : slipline::detail::lattice(reg, n)) {
        if (!vf.contains(p, 0.0) || !vf.background.contains(p, 0.0)) {
            if (j.skip_outside) continue;
            throw DomainError(vf.name + ": lattice point (" + out::num(p.x()) + ", " + out::num(p.y()) +
                              ") outside the domain (use --skip-outside)");
        }
        auto row = velocity_row(vf, p, 0.0, double(idx++));
        row.erase(row.begin());
        csv.row(row);
        rows.push_back(row);
    }
    if (j.format == "csv") {
        emit(j, csv.str());
    } else {
        nlohmann::ordered_json o;
        o["velocity"] = vf.name;
        o["columns"] = header;
        o["rows"] = rows;
        emit(j, o.dump(1) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Job& j) {
    check_format(j, {"json"});
    verify::Options opt;
    opt.seed = j.seed;
    if (j.n > 0) opt.grid = j.n;
    if (j.all == !j.solution.empty()) throw ConfigError("verify needs exactly one of --all or --solution");
    std::vector<verify::Criterion> results;
    if (j.all) {
        if (j.perturb != 0.0) throw ConfigError("--perturb applies to --solution");
        results = verify::run_all(opt);
    } else {
        const json params = parse_params(j.params);
        if (!registry::is_stress(j.solution) && !registry::is_velocity(j.solution))
            throw ConfigError("unknown solution '" + j.solution + "'");
        results.push_back(verify::check_solution(j.solution, params, j.perturb, k_of(j), opt));
    }
    nlohmann::ordered_json rep;
    rep["seed"] = opt.seed;
    rep["grid_n"] = opt.grid;
    if (!j.all) {
        rep["solution"] = j.solution;
        rep["params"] = parse_params(j.params);
        rep["perturb"] = j.perturb;
    }
    bool ok = true;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : results) {
        arr.push_back(verify::to_json(c));
        ok = ok && c.pass();
        std::cout << (c.pass() ? "PASS " : "FAIL ") << (c.id ? std::to_string(c.id) + " " : std::string()) << c.title
                  << '\n';
        for (const auto* f : verify::failures(c))
            std::cerr << "  failing check: " << f->name << " value " << out::num(f->value) << ' ' << f->relation << ' '
                      << out::num(f->threshold) << (f->note.empty() ? "" : " (" + f->note + ")") << '\n';
    }
    rep["suites"] = arr;
    rep["pass"] = ok;
    if (!j.out.empty()) out::atomic_write(j.out, rep.dump(1) + "\n");
    if (!ok) throw VerificationFailed("verification failed");
    return 0;
}

// CLI11 reads "-2,2,-1,1" after an option as a new flag; glue such values on.
std::vector<std::string> normalise_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if ((args[i] == "--region" || args[i] == "--params") && i + 1 < args.size()) {
            out.push_back(args[i] + "=" + args[i + 1]);
            ++i;
        } else {
            out.push_back(args[i]);
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slip-line field laboratory: plane perfect plasticity fields, symmetries and residual checks"};
    app.require_subcommand(1);
    Job job;

    auto common = [&](CLI::App* sc, bool stress_like) {
        sc->add_option("--solution", job.solution, "field name");
        sc->add_option("--params", job.params, "JSON object of field parameters (or @file)");
        sc->add_option("--region", job.region, stress_like ? "x0,x1,y0,y1 (r0,r1,phi0,phi1 with --polar)"
                                                            : "x0,x1,y0,y1");
        sc->add_option("--n", job.n, "grid size or number of curves");
        sc->add_option("--out", job.out, "output file (default stdout)");
        sc->add_option("--format", job.format, "csv | json | svg");
        if (stress_like) {
            sc->add_flag("--polar", job.polar, "region is r0,r1,phi0,phi1");
            auto* ko = sc->add_option("--k", job.k, "yield stress in shear");
            ko->check(CLI::PositiveNumber);
            sc->callback([&job, ko] { job.k_set = ko->count() > 0; });
        }
    };

    auto* sample = app.add_subcommand("sample", "sample a stress field on a lattice");
    common(sample, true);
    sample->add_flag("--skip-outside", job.skip_outside, "drop lattice points outside the domain");

    auto* sl = app.add_subcommand("sliplines", "trace slip lines of one or both families");
    common(sl, true);
    sl->add_option("--family", job.family, "1 or 2 (default both)");
    sl->add_option("--step", job.step, "RK4 step");
    sl->add_option("--arclen", job.arclen, "arc length traced each way from a seed");

    auto* env = app.add_subcommand("envelope", "closed-form or numeric envelopes");
    common(env, true);
    env->add_flag("--numeric", job.numeric, "scan the net jacobian over --region (net parameters)");
    env->add_option("--family", job.family, "family the numeric envelope bounds");
    env->add_option("--scan", job.scan, "net parameter scanned: s or t");

    auto* st = app.add_subcommand("streamlines", "trace streamlines of a velocity field");
    common(st, false);
    st->add_option("--step", job.step, "RK4 step");
    st->add_option("--arclen", job.arclen, "arc length per streamline");

    auto* vel = app.add_subcommand("velocity", "sample a velocity field with its dissipation");
    common(vel, false);
    vel->add_flag("--skip-outside", job.skip_outside, "drop lattice points outside the domain");

    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_flag("--all", job.all, "every suite");
    ver->add_option("--solution", job.solution, "single field to check");
    ver->add_option("--params", job.params, "JSON object of field parameters");
    ver->add_option("--perturb", job.perturb, "inject a defect of this size");
    ver->add_option("--seed", job.seed, "seed for random verification points");
    ver->add_option("--n", job.n, "sweep grid size");
    ver->add_option("--out", job.out, "report JSON path");
    auto* vk = ver->add_option("--k", job.k, "yield stress in shear");
    vk->check(CLI::PositiveNumber);
    ver->callback([&job, vk] { job.k_set = vk->count() > 0; });

    try {
        auto args = normalise_args(argc, argv);
        app.parse(args);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (ver->parsed()) job.format = "json";
    try {
        if (!ver->parsed() && job.solution.empty()) throw ConfigError("--solution is required");
        if (sample->parsed()) return cmd_sample(job);
        if (sl->parsed()) return cmd_sliplines(job);
        if (env->parsed()) return cmd_envelope(job);
        if (st->parsed()) return cmd_streamlines(job);
        if (vel->parsed()) return cmd_velocity(job);
        if (ver->parsed()) return cmd_verify(job);
    } catch (const VerificationFailed& e) {
        std::cerr << "slipline_lab: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "slipline_lab: domain error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "slipline_lab: config error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "slipline_lab: config error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
