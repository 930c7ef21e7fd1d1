#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "residuals.hpp"

namespace slipline::registry {

using json = nlohmann::json;

namespace detail {

// Reads a number, rejecting keys outside `allowed` before any computation.
class Params {
public:
    Params(const json& j, std::string owner, std::set<std::string> allowed)
        : j_(j.is_null() ? json::object() : j), owner_(std::move(owner)) {
        if (!j_.is_object()) throw ConfigError(owner_ + ": params must be a JSON object");
        for (const auto& [key, _] : j_.items())
            if (!allowed.count(key)) throw ConfigError(owner_ + ": unknown parameter '" + key + "'");
    }

    double num(const std::string& key, double def) const {
        if (!j_.contains(key)) return def;
        const auto& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(owner_ + ": parameter '" + key + "' must be a number");
        return v.get<double>();
    }

    int integer(const std::string& key, int def) const {
        const double v = num(key, def);
        if (v != std::floor(v)) throw ConfigError(owner_ + ": parameter '" + key + "' must be an integer");
        return int(v);
    }

    bool flag(const std::string& key, bool def) const {
        if (!j_.contains(key)) return def;
        const auto& v = j_.at(key);
        if (v.is_boolean()) return v.get<bool>();
        if (v.is_number()) return v.get<double>() != 0.0;
        throw ConfigError(owner_ + ": parameter '" + key + "' must be boolean");
    }

    std::string str(const std::string& key, const std::string& def) const {
        if (!j_.contains(key)) return def;
        const auto& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(owner_ + ": parameter '" + key + "' must be a string");
        return v.get<std::string>();
    }

    bool has(const std::string& key) const { return j_.contains(key); }
    const json& raw(const std::string& key) const { return j_.at(key); }

private:
    json j_;
    std::string owner_;
};

}  // namespace detail

//! Function parameter from JSON: a number (constant), {"poly": [c0, c1, ...]} or {"exp": C}.
inline FunctionParam function_param(const json& j, const std::string& owner) {
    if (j.is_number()) return FunctionParam::constant(j.get<double>());
    if (j.is_object() && j.size() == 1) {
        if (j.contains("poly") && j.at("poly").is_array()) {
            std::vector<double> c;
            for (const auto& v : j.at("poly")) {
                if (!v.is_number()) throw ConfigError(owner + ": poly coefficients must be numbers");
                c.push_back(v.get<double>());
            }
            if (c.empty()) throw ConfigError(owner + ": empty poly");
            return FunctionParam::polynomial(c);
        }
        if (j.contains("exp") && j.at("exp").is_number()) return FunctionParam::exponential(j.at("exp").get<double>());
    }
    throw ConfigError(owner + ": function must be a number, {\"poly\": [...]} or {\"exp\": C}");
}

inline const std::vector<std::string>& stress_names() {
    static const std::vector<std::string> names{"prandtl",       "nadai_cavity",     "nadai_vortex",
                                                "nadai_channel", "nadai_channel_singular", "nadai_two_circles",
                                                "revuzhenko",    "spiral",           "simple_wave",
                                                "spiral_simple_wave", "centered_fan"};
    return names;
}

inline const std::vector<std::string>& velocity_names() {
    static const std::vector<std::string> names{"nadai",  "yakhno", "ivlev_senashov", "theta3",
                                                "theta4", "theta2", "simple_wave_velocity", "rigid"};
    return names;
}

//! k_override replaces the params' k when the field has one.
inline StressField make_stress(const std::string& name, const json& params = json::object(),
                               std::optional<double> k_override = std::nullopt) {
    using detail::Params;
    auto K = [&](const Params& p) { return k_override ? *k_override : p.num("k", 0.5); };
    if (name == "prandtl") {
        Params p(params, name, {"c", "m", "h", "k"});
        return catalog::prandtl(p.num("c", 0.0), p.num("m", 1.0), p.num("h", 1.0), K(p));
    }
    if (name == "nadai_cavity") {
        Params p(params, name, {"R", "p", "k"});
        return catalog::nadai_cavity(p.num("R", 1.0), p.num("p", 0.0), K(p));
    }
    if (name == "nadai_vortex") {
        Params p(params, name, {"R", "p", "k"});
        return catalog::nadai_vortex(p.num("R", 1.0), p.num("p", 0.0), K(p));
    }
    if (name == "nadai_channel") {
        Params p(params, name, {"c", "k", "const", "c1", "c2"});
        const double c = p.num("c", 2.0);
        const std::string shift_key = c * c > 1.0 ? "c1" : "c2";
        if (p.has(c * c > 1.0 ? "c2" : "c1"))
            throw ConfigError("nadai_channel: use " + shift_key + " for this c");
        return catalog::nadai_channel(c, K(p), p.num("const", 0.0), p.num(shift_key, 0.0));
    }
    if (name == "nadai_channel_singular") {
        Params p(params, name, {"k", "const", "form", "A"});
        return catalog::nadai_channel_singular(K(p), p.num("const", 0.0), p.integer("form", 0), p.num("A", 0.0));
    }
    if (name == "nadai_two_circles") {
        Params p(params, name, {"a", "b", "k", "branch"});
        return catalog::nadai_two_circles(p.num("a", 1.0), p.num("b", std::sqrt(2.0)), K(p), p.integer("branch", 1));
    }
    if (name == "revuzhenko") {
        Params p(params, name, {"sign"});
        if (k_override && *k_override != 0.5) throw ConfigError("revuzhenko: fixed normalisation k = 0.5");
        return catalog::revuzhenko(p.integer("sign", 1));
    }
    if (name == "spiral") {
        Params p(params, name, {"A", "alpha", "k", "closed"});
        const double k = K(p);
        return catalog::spiral(p.num("A", 2.0 * std::sqrt(2.0) * k), p.num("alpha", 1.0), k, p.flag("closed", true));
    }
    if (name == "simple_wave") {
        Params p(params, name, {"Phi", "n", "const", "k", "theta_lo", "theta_hi", "relative"});
        const FunctionParam Phi = p.has("Phi") ? function_param(p.raw("Phi"), name) : FunctionParam::constant(0.0);
        return catalog::simple_wave(Phi, p.integer("n", 0), p.num("const", 0.0), K(p), p.num("theta_lo", -pi / 2.0),
                                    p.num("theta_hi", 0.0), p.flag("relative", false));
    }
    if (name == "spiral_simple_wave") {
        Params p(params, name, {"C", "const", "k"});
        return catalog::spiral_simple_wave(p.num("C", 1.0), p.num("const", 0.0), K(p));
    }
    if (name == "centered_fan") {
        Params p(params, name, {"n", "const", "k"});
        return catalog::centered_fan(p.integer("n", 0), p.num("const", 0.0), K(p));
    }
    throw ConfigError("unknown solution '" + name + "'");
}

inline bool is_stress(const std::string& name) {
    const auto& n = stress_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

inline bool is_velocity(const std::string& name) {
    const auto& n = velocity_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

inline VelocityField make_velocity(const std::string& name, const json& params = json::object()) {
    using detail::Params;
    if (name == "nadai") {
        Params p(params, name, {});
        return vcat::nadai();
    }
    if (name == "yakhno") {
        Params p(params, name, {"C1", "C2"});
        return vcat::yakhno(p.num("C1", 3.0), p.num("C2", pi));
    }
    if (name == "ivlev_senashov") {
        Params p(params, name, {"c1", "c2"});
        return vcat::ivlev_senashov(p.num("c1", 0.0), p.num("c2", 0.0));
    }
    if (name == "theta3") {
        Params p(params, name, {"c1", "c2"});
        return vcat::theta3(p.num("c1", 0.0), p.num("c2", 1.0));
    }
    if (name == "theta4") {
        Params p(params, name, {"const"});
        return vcat::theta4(p.num("const", 0.0));
    }
    if (name == "theta2") {
        Params p(params, name, {"c1", "c2", "branch"});
        const std::string b = p.str("branch", "printed");
        if (b != "printed" && b != "smooth") throw ConfigError("theta2: branch must be 'printed' or 'smooth'");
        return vcat::theta2(p.num("c1", 0.0), p.num("c2", -1.0),
                            b == "printed" ? vcat::Theta2Branch::printed : vcat::Theta2Branch::smooth);
    }
    if (name == "rigid") {
        Params p(params, name, {"a", "b", "omega"});
        return vcat::rigid(p.num("a", 0.0), p.num("b", 0.0), p.num("omega", 1.0));
    }
    if (name == "simple_wave_velocity") {
        Params p(params, name, {"U", "V", "n", "background"});
        const int n = p.integer("n", 0);
        const FunctionParam U = p.has("U") ? function_param(p.raw("U"), name) : FunctionParam::constant(0.0);
        const FunctionParam V = p.has("V") ? function_param(p.raw("V"), name) : FunctionParam::constant(1.0);
        json bgp = p.has("background") ? p.raw("background") : json::object();
        if (!bgp.is_object()) throw ConfigError(name + ": background must be an object");
        if (bgp.contains("n")) throw ConfigError(name + ": set n at the top level");
        bgp["n"] = n;
        if (!bgp.contains("theta_lo")) {
            // centred fan brackets relative to phi
            bgp["relative"] = true;
            bgp["theta_lo"] = n % 2 == 0 ? -3.0 * pi / 4.0 : -pi / 4.0;
            bgp["theta_hi"] = n % 2 == 0 ? -pi / 4.0 : pi / 4.0;
        }
        const StressField bg = make_stress("simple_wave", bgp);
        return vcat::simple_wave_velocity(U, V, n % 2 == 0 ? vcat::StraightFamily::second : vcat::StraightFamily::first,
                                          bg);
    }
    throw ConfigError("unknown velocity field '" + name + "'");
}

//! Default native-frame sweep region for a stress field.
inline Region default_region(const StressField& f) {
    const std::string& n = f.name;
    if (n == "prandtl") return {-2.0, 2.0, -0.99 * f.param("h"), 0.99 * f.param("h"), Frame::cartesian};
    if (n == "nadai_cavity" || n == "nadai_vortex")
        return {f.param("R"), 3.0 * f.param("R"), -pi, pi, Frame::polar};
    if (n == "nadai_channel") {
        const double c = f.param("c");
        if (c * c > 1.0) {
            const auto br = catalog::ChannelBranch::make(c, f.params.count("c1") ? f.param("c1") : 0.0);
            const double a = br.phi(br.psi_lo), b = br.phi(br.psi_hi);
            return {0.5, 2.0, std::min(a, b), std::max(a, b), Frame::polar};
        }
        return {0.5, 2.0, -3.0, 3.0, Frame::polar};
    }
    if (n == "nadai_channel_singular") {
        if (f.param("form") == 0.0) return {0.5, 2.0, -pi, pi, Frame::polar};
        const double A = f.param("A");
        return {0.5, 2.0, A - 4.0, A - 1.0, Frame::polar};
    }
    if (n == "nadai_two_circles") return {f.param("a"), f.param("b"), -pi, pi, Frame::polar};
    if (n == "revuzhenko") {
        // fold-free quadrant: the folds satisfy 2 v rho^2 = sign w
        return f.param("sign") > 0 ? Region{0.1, 1.0, -1.0, -0.1, Frame::characteristic}
                                   : Region{0.1, 1.0, 0.1, 1.0, Frame::characteristic};
    }
    if (n == "spiral") return {0.5, 3.0, -0.5, 0.5, Frame::polar};
    if (n == "spiral_simple_wave") return {1.5, 4.0, 0.5, 3.0, Frame::cartesian};
    return {0.2, 2.0, 0.2, 2.0, Frame::cartesian};
}

inline Region strip_region() { return {-2.0, 2.0, -0.99, 0.99, Frame::cartesian}; }

}  // namespace slipline::registry
