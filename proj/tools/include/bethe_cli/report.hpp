#pragma once

// Report records written by the commands. Serialization is deterministic:
// object keys are sorted and doubles are printed with round-trip precision.
// Non-finite doubles are stored as the strings "inf", "-inf" and "nan".

#include "bethe/scalar.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bethe::cli {

struct CountRecord {
    long w = 0;               ///< multiplicity of L_{l-2k}
    long d = 0;               ///< dim difference of adjacent weight spaces
    long long sharp = 0;      ///< inclusion-exclusion count
    long sing_dim = 0;        ///< dimension of the singular subspace
    long admissible = -1;     ///< number of admissible sequences, -1 when the pair is not good
    long dual_w = 0;          ///< multiplicity at l(m) + 1 - k, 0 when negative
    friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

struct BetheRecord {
    double e_residual = 0.0;
    double max_eigen_residual = 0.0;
    std::vector<Complex> eigenvalues;
    double eigenvalue_sum_difference = 0.0;
    Complex shapovalov_norm{};
    Complex hessian_det{};
    double norm_identity_error = 0.0;
    bool degenerate = false;
    std::optional<bool> exact_singular;      ///< set when t was recognized rational
    std::optional<bool> exact_eigenvector;
    std::optional<bool> exact_norm_identity;
    bool passed = false;
    friend bool operator==(const BetheRecord&, const BetheRecord&) = default;
};

struct FuchsianRecord {
    std::vector<Complex> h;  ///< ascending coefficients of H
    std::optional<bool> exact_remainder_zero;
    int generic_degree = 0;
    int special_degree = 0;
    double wronskian_error = 0.0;
    std::vector<Complex> special_roots;
    double dual_residual = 0.0;
    double min_root_gap = 0.0;
    bool nondegenerate = false;
    std::vector<std::string> notes;
    bool passed = false;
    std::string failure;
    friend bool operator==(const FuchsianRecord&, const FuchsianRecord&) = default;
};

struct OrbitRecord {
    std::vector<Complex> t;
    std::vector<Complex> lambda;
    double residual = 0.0;
    Complex hessian_det{};
    double hessian_cond = 0.0;
    std::optional<BetheRecord> bethe;
    std::optional<FuchsianRecord> fuchsian;
    friend bool operator==(const OrbitRecord&, const OrbitRecord&) = default;
};

struct LineRecord {
    std::vector<Complex> base_lambda;
    std::vector<Complex> direction_lambda;
    std::vector<Complex> source_t;  ///< empty when the special solution is constant
    std::vector<Complex> f, g, h;   ///< the equation F u'' + G u' + H u = 0
    std::vector<Complex> u1, u2;    ///< solution basis, ascending coefficients
    double max_sample_residual = 0.0;
    friend bool operator==(const LineRecord&, const LineRecord&) = default;
};

struct BasisRecord {
    Complex determinant{};
    double hadamard_ratio = 0.0;
    double coordinate_residual = 0.0;
    bool is_basis = false;
    friend bool operator==(const BasisRecord&, const BasisRecord&) = default;
};

struct RunReport {
    std::string command;
    std::string config_hash;
    nlohmann::json config;
    std::string regime;
    long expected = 0;
    long found = 0;
    std::optional<CountRecord> counts;
    std::vector<OrbitRecord> orbits;
    std::vector<LineRecord> lines;
    std::optional<bool> lines_disjoint;
    std::optional<BasisRecord> basis;
    std::vector<std::string> flags;
    std::vector<std::string> failures;
    int exit_code = 0;
    friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

/// Pretty-printed JSON with a trailing newline.
std::string serialize(const RunReport& r);
RunReport parse_report(const std::string& text);

}  // namespace bethe::cli
