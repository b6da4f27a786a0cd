#pragma once

// Bethe vectors v(t, z) = Σ_J A_J(t, z) f_J v and their checks: singularity,
// common eigenvector of the Gaudin Hamiltonians, norm = Hessian determinant.

#include "bethe/gaudin.hpp"
#include "bethe/master_function.hpp"
#include "bethe/rep.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bethe {

/// Σ over maps σ: {1..k} → {1..n} with |σ⁻¹(l)| = j_l of ∏_i 1/(t_i - z_{σ(i)}).
/// Throws ArrangementError when some t_i equals some z_l.
template <typename T>
T a_coefficient(const WeightIndex& J, std::span<const T> t, std::span<const T> z);

struct BetheVector {
    TensorVector<Complex> v;
    CriticalPoint source;
    std::vector<Complex> eigenvalues;      ///< μ_i = S(v, H_i v) / S(v, v)
    double e_residual = 0.0;               ///< ‖e v‖ / ‖v‖
    std::vector<double> eigen_residuals;   ///< ‖H_i v - μ_i v‖ / ‖v‖
    double max_eigen_residual = 0.0;
    Complex shapovalov_norm{};             ///< S(v, v)
};

/// Raised by bethe_vector when a check exceeds its tolerance.
class BetheCheckError : public std::runtime_error {
public:
    BetheCheckError(const std::string& what, double e_res, double eig_res)
        : std::runtime_error(what), e_residual(e_res), eigen_residual(eig_res) {}
    double e_residual;
    double eigen_residual;
};

/// Builds v and fills in every residual; never throws on a failed check.
BetheVector evaluate_bethe_vector(const CriticalPoint& cp, const ProblemInstance& inst);

/// As evaluate_bethe_vector, but throws BetheCheckError if the e-residual or
/// any eigen-residual is at least `tol`.
BetheVector bethe_vector(const CriticalPoint& cp, const ProblemInstance& inst, double tol = 1e-8);

struct NormIdentity {
    Complex shapovalov{};
    Complex hessian_det{};
    double relative_error = 0.0;
    bool degenerate = false;  ///< Hessian numerically singular: no pass/fail verdict
};

/// |S(v, v) - det Hess ln Φ| / |det|.
NormIdentity norm_identity_check(const BetheVector& bv, const ProblemInstance& inst);

struct BasisCheck {
    Complex determinant{};   ///< det of the coordinate matrix in singular_basis
    double hadamard_ratio = 0.0;  ///< |det| / ∏ column norms
    double coordinate_residual = 0.0;  ///< least-squares misfit of the coordinates
    bool is_basis = false;
};

/// Coordinates of the Bethe vectors in singular_basis(m, k). Throws std::domain_error
/// when the number of vectors differs from dim Sing.
BasisCheck basis_check(std::span<const BetheVector> vectors, const ProblemInstance& inst, double threshold = 1e-6);

struct EigenvalueSum {
    Complex sum_of_eigenvalues{};
    Complex rayleigh_of_sum{};  ///< S(v, (Σ H_i) v) / S(v, v)
    double difference = 0.0;
};

EigenvalueSum eigenvalue_sum_check(const BetheVector& bv, const ProblemInstance& inst);

struct ExactBetheCheck {
    TensorVector<Rational> v;
    bool singular = false;          ///< e v == 0
    bool eigenvector = false;       ///< H_i v ∈ ℚ v for every i
    std::vector<Rational> eigenvalues;
    Rational shapovalov_norm;
    Rational hessian_det;
};

/// Exact checks for rational t and an exact configuration.
ExactBetheCheck exact_bethe_check(std::span<const Rational> t, const ProblemInstance& inst);

}  // namespace bethe
