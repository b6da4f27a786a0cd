#include "bethe_cli/report.hpp"

#include "bethe_cli/config.hpp"

#include <cmath>
#include <limits>

namespace bethe::cli {

namespace {

using nlohmann::json;

json num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double num_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError("report: expected a number, got " + j.dump());
}

json cplx(const Complex& c) { return json::array({num(c.real()), num(c.imag())}); }

Complex cplx_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("report: expected [re, im], got " + j.dump());
    return {num_from(j[0]), num_from(j[1])};
}

json cvec(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(cplx(c));
    return a;
}

std::vector<Complex> cvec_from(const json& j) {
    std::vector<Complex> out;
    for (const auto& x : j) out.push_back(cplx_from(x));
    return out;
}

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

json counts_json(const CountRecord& c) {
    return {{"w", c.w},       {"d", c.d},           {"sharp", c.sharp},
            {"sing_dim", c.sing_dim}, {"admissible", c.admissible}, {"dual_w", c.dual_w}};
}

CountRecord counts_from(const json& j) {
    CountRecord c;
    c.w = j.at("w").get<long>();
    c.d = j.at("d").get<long>();
    c.sharp = j.at("sharp").get<long long>();
    c.sing_dim = j.at("sing_dim").get<long>();
    c.admissible = j.at("admissible").get<long>();
    c.dual_w = j.at("dual_w").get<long>();
    return c;
}

json bethe_json(const BetheRecord& b) {
    json j;
    j["e_residual"] = num(b.e_residual);
    j["max_eigen_residual"] = num(b.max_eigen_residual);
    j["eigenvalues"] = cvec(b.eigenvalues);
    j["eigenvalue_sum_difference"] = num(b.eigenvalue_sum_difference);
    j["shapovalov_norm"] = cplx(b.shapovalov_norm);
    j["hessian_det"] = cplx(b.hessian_det);
    j["norm_identity_error"] = num(b.norm_identity_error);
    j["degenerate"] = b.degenerate;
    put_opt(j, "exact_singular", b.exact_singular);
    put_opt(j, "exact_eigenvector", b.exact_eigenvector);
    put_opt(j, "exact_norm_identity", b.exact_norm_identity);
    j["passed"] = b.passed;
    return j;
}

BetheRecord bethe_from(const json& j) {
    BetheRecord b;
    b.e_residual = num_from(j.at("e_residual"));
    b.max_eigen_residual = num_from(j.at("max_eigen_residual"));
    b.eigenvalues = cvec_from(j.at("eigenvalues"));
    b.eigenvalue_sum_difference = num_from(j.at("eigenvalue_sum_difference"));
    b.shapovalov_norm = cplx_from(j.at("shapovalov_norm"));
    b.hessian_det = cplx_from(j.at("hessian_det"));
    b.norm_identity_error = num_from(j.at("norm_identity_error"));
    b.degenerate = j.at("degenerate").get<bool>();
    b.exact_singular = get_opt<bool>(j, "exact_singular");
    b.exact_eigenvector = get_opt<bool>(j, "exact_eigenvector");
    b.exact_norm_identity = get_opt<bool>(j, "exact_norm_identity");
    b.passed = j.at("passed").get<bool>();
    return b;
}

json fuchsian_json(const FuchsianRecord& f) {
    json j;
    j["h"] = cvec(f.h);
    put_opt(j, "exact_remainder_zero", f.exact_remainder_zero);
    j["generic_degree"] = f.generic_degree;
    j["special_degree"] = f.special_degree;
    j["wronskian_error"] = num(f.wronskian_error);
    j["special_roots"] = cvec(f.special_roots);
    j["dual_residual"] = num(f.dual_residual);
    j["min_root_gap"] = num(f.min_root_gap);
    j["nondegenerate"] = f.nondegenerate;
    j["notes"] = f.notes;
    j["passed"] = f.passed;
    j["failure"] = f.failure;
    return j;
}

FuchsianRecord fuchsian_from(const json& j) {
    FuchsianRecord f;
    f.h = cvec_from(j.at("h"));
    f.exact_remainder_zero = get_opt<bool>(j, "exact_remainder_zero");
    f.generic_degree = j.at("generic_degree").get<int>();
    f.special_degree = j.at("special_degree").get<int>();
    f.wronskian_error = num_from(j.at("wronskian_error"));
    f.special_roots = cvec_from(j.at("special_roots"));
    f.dual_residual = num_from(j.at("dual_residual"));
    f.min_root_gap = num_from(j.at("min_root_gap"));
    f.nondegenerate = j.at("nondegenerate").get<bool>();
    f.notes = j.at("notes").get<std::vector<std::string>>();
    f.passed = j.at("passed").get<bool>();
    f.failure = j.at("failure").get<std::string>();
    return f;
}

json orbit_json(const OrbitRecord& o) {
    json j;
    j["t"] = cvec(o.t);
    j["lambda"] = cvec(o.lambda);
    j["residual"] = num(o.residual);
    j["hessian_det"] = cplx(o.hessian_det);
    j["hessian_cond"] = num(o.hessian_cond);
    if (o.bethe) j["bethe"] = bethe_json(*o.bethe);
    if (o.fuchsian) j["fuchsian"] = fuchsian_json(*o.fuchsian);
    return j;
}

OrbitRecord orbit_from(const json& j) {
    OrbitRecord o;
    o.t = cvec_from(j.at("t"));
    o.lambda = cvec_from(j.at("lambda"));
    o.residual = num_from(j.at("residual"));
    o.hessian_det = cplx_from(j.at("hessian_det"));
    o.hessian_cond = num_from(j.at("hessian_cond"));
    if (j.contains("bethe")) o.bethe = bethe_from(j.at("bethe"));
    if (j.contains("fuchsian")) o.fuchsian = fuchsian_from(j.at("fuchsian"));
    return o;
}

json line_json(const LineRecord& l) {
    json j;
    j["base_lambda"] = cvec(l.base_lambda);
    j["direction_lambda"] = cvec(l.direction_lambda);
    j["source_t"] = cvec(l.source_t);
    j["equation"] = {{"f", cvec(l.f)}, {"g", cvec(l.g)}, {"h", cvec(l.h)}};
    j["u1"] = cvec(l.u1);
    j["u2"] = cvec(l.u2);
    j["max_sample_residual"] = num(l.max_sample_residual);
    return j;
}

LineRecord line_from(const json& j) {
    LineRecord l;
    l.base_lambda = cvec_from(j.at("base_lambda"));
    l.direction_lambda = cvec_from(j.at("direction_lambda"));
    l.source_t = cvec_from(j.at("source_t"));
    l.f = cvec_from(j.at("equation").at("f"));
    l.g = cvec_from(j.at("equation").at("g"));
    l.h = cvec_from(j.at("equation").at("h"));
    l.u1 = cvec_from(j.at("u1"));
    l.u2 = cvec_from(j.at("u2"));
    l.max_sample_residual = num_from(j.at("max_sample_residual"));
    return l;
}

}  // namespace

json to_json(const RunReport& r) {
    json j;
    j["command"] = r.command;
    j["config_hash"] = r.config_hash;
    j["config"] = r.config;
    j["regime"] = r.regime;
    j["expected"] = r.expected;
    j["found"] = r.found;
    if (r.counts) j["counts"] = counts_json(*r.counts);
    j["orbits"] = json::array();
    for (const auto& o : r.orbits) j["orbits"].push_back(orbit_json(o));
    j["lines"] = json::array();
    for (const auto& l : r.lines) j["lines"].push_back(line_json(l));
    put_opt(j, "lines_disjoint", r.lines_disjoint);
    if (r.basis)
        j["basis"] = {{"determinant", cplx(r.basis->determinant)},
                      {"hadamard_ratio", num(r.basis->hadamard_ratio)},
                      {"coordinate_residual", num(r.basis->coordinate_residual)},
                      {"is_basis", r.basis->is_basis}};
    j["flags"] = r.flags;
    j["failures"] = r.failures;
    j["exit_code"] = r.exit_code;
    return j;
}

RunReport report_from_json(const json& j) {
    try {
        RunReport r;
        r.command = j.at("command").get<std::string>();
        r.config_hash = j.at("config_hash").get<std::string>();
        r.config = j.at("config");
        r.regime = j.at("regime").get<std::string>();
        r.expected = j.at("expected").get<long>();
        r.found = j.at("found").get<long>();
        if (j.contains("counts")) r.counts = counts_from(j.at("counts"));
        for (const auto& o : j.at("orbits")) r.orbits.push_back(orbit_from(o));
        for (const auto& l : j.at("lines")) r.lines.push_back(line_from(l));
        r.lines_disjoint = get_opt<bool>(j, "lines_disjoint");
        if (j.contains("basis")) {
            const auto& b = j.at("basis");
            r.basis = BasisRecord{cplx_from(b.at("determinant")), num_from(b.at("hadamard_ratio")),
                                  num_from(b.at("coordinate_residual")), b.at("is_basis").get<bool>()};
        }
        r.flags = j.at("flags").get<std::vector<std::string>>();
        r.failures = j.at("failures").get<std::vector<std::string>>();
        r.exit_code = j.at("exit_code").get<int>();
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

std::string serialize(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

RunReport parse_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }
    return report_from_json(j);
}

}  // namespace bethe::cli
