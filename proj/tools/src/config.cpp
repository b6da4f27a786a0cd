#include "bethe_cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

namespace bethe::cli {

namespace {

using nlohmann::json;

struct Point {
    Complex value;
    std::optional<Rational> exact;  ///< only for real rationals
};

// A JSON number or a rational string; integers and strings are exact.
std::pair<double, std::optional<Rational>> parse_component(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        const auto v = j.get<long long>();
        return {static_cast<double>(v), Rational(static_cast<long>(v))};
    }
    if (j.is_number()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) throw ConfigError(where + ": non-finite value");
        return {v, std::nullopt};
    }
    if (j.is_string()) {
        const auto q = parse_rational(j.get<std::string>());
        if (!q) throw ConfigError(where + ": cannot parse \"" + j.get<std::string>() + "\" as a rational");
        return {q->get_d(), *q};
    }
    throw ConfigError(where + ": expected a number or a rational string");
}

Point parse_point(const json& j, std::size_t index) {
    const std::string where = "z[" + std::to_string(index) + "]";
    if (j.is_array()) {
        if (j.size() != 2) throw ConfigError(where + ": complex values are [re, im] pairs");
        const auto [re, re_q] = parse_component(j[0], where);
        const auto [im, im_q] = parse_component(j[1], where);
        Point p{Complex(re, im), std::nullopt};
        if (re_q && im_q && sgn(*im_q) == 0) p.exact = re_q;
        return p;
    }
    const auto [re, re_q] = parse_component(j, where);
    return {Complex(re, 0.0), re_q};
}

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::Exact;
    if (s == "float") return Mode::Float;
    throw ConfigError("mode must be \"exact\" or \"float\", got \"" + s + "\"");
}

template <typename T>
T get_field(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field \"") + key + "\" has the wrong type");
    }
}

json number_json(double x) { return x; }

json component_json(const Complex& c) { return json::array({number_json(c.real()), number_json(c.imag())}); }

}  // namespace

std::string to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

SolverOptions RunConfig::solver_options() const {
    SolverOptions o;
    o.newton_tol = tol_newton;
    o.dedup_tol = tol_dedup;
    o.s = s;
    o.seed = seed;
    return o;
}

Configuration RunConfig::configuration() const {
    if (z_exact) return Configuration(*z_exact);
    return Configuration(z);
}

ProblemInstance RunConfig::instance() const { return ProblemInstance(ExponentVector(m), k, configuration()); }

std::vector<Complex> generic_configuration(std::size_t n, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x2au};
    std::mt19937_64 rng(seq);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    std::vector<Complex> z;
    while (z.size() < n) {
        const Complex c(unit(), unit());
        bool ok = true;
        for (const auto& w : z) ok = ok && std::abs(c - w) > 0.1;
        if (ok) z.push_back(c);
    }
    return z;
}

RunConfig parse_config(const json& j, const Overrides& ov) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    if (!j.contains("m") || !j.at("m").is_array()) throw ConfigError("field \"m\" (list of positive integers) is required");
    for (const auto& x : j.at("m")) {
        if (!x.is_number_integer() || x.get<long long>() < 1)
            throw ConfigError("entries of \"m\" must be positive integers");
        c.m.push_back(static_cast<int>(x.get<long long>()));
    }
    if (c.m.empty()) throw ConfigError("\"m\" must not be empty");
    if (!j.contains("k") || !j.at("k").is_number_integer() || j.at("k").get<long long>() < 0)
        throw ConfigError("field \"k\" (nonnegative integer) is required");
    c.k = static_cast<int>(j.at("k").get<long long>());

    c.mode = parse_mode(get_field<std::string>(j, "mode", "float"));
    c.seed = get_field<std::uint64_t>(j, "seed", 0);
    c.s = get_field<double>(j, "s", 32.0);
    c.tol_newton = get_field<double>(j, "tol_newton", 1e-12);
    c.tol_dedup = get_field<double>(j, "tol_dedup", 1e-6);
    if (ov.mode) c.mode = *ov.mode;
    if (ov.seed) c.seed = *ov.seed;
    if (ov.s) c.s = *ov.s;
    if (ov.tol_newton) c.tol_newton = *ov.tol_newton;
    if (ov.tol_dedup) c.tol_dedup = *ov.tol_dedup;
    if (!(c.s > 1.0)) throw ConfigError("s must exceed 1");
    if (!(c.tol_newton > 0.0) || !(c.tol_dedup > 0.0)) throw ConfigError("tolerances must be positive");

    if (!j.contains("z")) throw ConfigError("field \"z\" is required");
    const auto& zj = j.at("z");
    if (zj.is_string()) {
        const auto text = zj.get<std::string>();
        const std::string prefix = "generic:";
        if (text.rfind(prefix, 0) != 0) throw ConfigError("z must be a list or \"generic:<seed>\"");
        std::uint64_t zseed = 0;
        try {
            std::size_t used = 0;
            zseed = std::stoull(text.substr(prefix.size()), &used);
            if (used != text.size() - prefix.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw ConfigError("cannot parse the seed in \"" + text + "\"");
        }
        c.z = generic_configuration(c.m.size(), zseed);
        c.z_source = text;
    } else if (zj.is_array()) {
        std::vector<Rational> exact;
        bool all_exact = true;
        for (std::size_t i = 0; i < zj.size(); ++i) {
            const auto p = parse_point(zj[i], i);
            c.z.push_back(p.value);
            if (p.exact)
                exact.push_back(*p.exact);
            else
                all_exact = false;
        }
        if (all_exact) c.z_exact = std::move(exact);
    } else {
        throw ConfigError("z must be a list or \"generic:<seed>\"");
    }
    if (c.z.size() != c.m.size())
        throw ConfigError("z has " + std::to_string(c.z.size()) + " points but m has " + std::to_string(c.m.size()) +
                          " entries");
    if (c.mode == Mode::Exact && !c.z_exact)
        throw ConfigError("exact mode needs every z as a real integer or rational string");
    try {
        (void)c.configuration();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path, const Overrides& ov) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j, ov);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["m"] = c.m;
    j["k"] = c.k;
    json z = json::array();
    for (std::size_t i = 0; i < c.z.size(); ++i) {
        if (c.z_exact)
            z.push_back(bethe::to_string((*c.z_exact)[i]));
        else
            z.push_back(component_json(c.z[i]));
    }
    j["z"] = z;
    if (!c.z_source.empty()) j["z_source"] = c.z_source;
    j["mode"] = to_string(c.mode);
    j["seed"] = c.seed;
    j["s"] = c.s;
    j["tol_newton"] = c.tol_newton;
    j["tol_dedup"] = c.tol_dedup;
    return j;
}

std::string config_hash(const RunConfig& c) {
    const std::string text = config_to_json(c).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace bethe::cli
