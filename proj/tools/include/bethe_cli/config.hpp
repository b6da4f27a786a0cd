#pragma once

// Run configuration for the command-line front end: JSON problem files plus
// command-line overrides.

#include "bethe/master_function.hpp"
#include "bethe/solver.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bethe::cli {

/// Malformed configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { Exact, Float };

std::string to_string(Mode m);

struct RunConfig {
    std::vector<int> m;
    int k = 0;
    std::vector<Complex> z;
    std::optional<std::vector<Rational>> z_exact;  ///< set when every point is a real rational
    std::string z_source;                          ///< "generic:<seed>" when z was generated, else empty
    Mode mode = Mode::Float;
    std::uint64_t seed = 0;
    double s = 32.0;
    double tol_newton = 1e-12;
    double tol_dedup = 1e-6;

    SolverOptions solver_options() const;
    ProblemInstance instance() const;
    Configuration configuration() const;
};

/// Overrides given on the command line; unset fields keep the file's values.
struct Overrides {
    std::optional<Mode> mode;
    std::optional<std::uint64_t> seed;
    std::optional<double> s;
    std::optional<double> tol_newton;
    std::optional<double> tol_dedup;
};

/// n points uniform in [-1,1]² with every pairwise distance above 0.1.
std::vector<Complex> generic_configuration(std::size_t n, std::uint64_t seed);

/// Parses a config object. z entries may be numbers, rational strings "p/q",
/// or [re, im] pairs of either; the whole field may be "generic:<seed>".
RunConfig parse_config(const nlohmann::json& j, const Overrides& ov = {});
RunConfig load_config(const std::string& path, const Overrides& ov = {});

/// Resolved configuration, with generated points written out explicitly.
nlohmann::json config_to_json(const RunConfig& c);

/// 64-bit FNV-1a of the compact dump of config_to_json, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace bethe::cli
