#pragma once

// Second-order Fuchsian equations F u'' + G u' + H u = 0 with
//   F = ∏ (x - z_j),  G / F = Σ -m_j / (x - z_j),  deg H <= n - 2,
// their polynomial solutions, exponents and the enumerative counts built on them.

#include "bethe/gaudin.hpp"
#include "bethe/master_function.hpp"
#include "bethe/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bethe {

/// Raised when F u'' + G u' is not divisible by u, i.e. t is not a critical point.
class NotCriticalError : public std::runtime_error {
public:
    NotCriticalError(const std::string& what, double remainder) : std::runtime_error(what), remainder_norm(remainder) {}
    double remainder_norm;
};

/// Raised by verify_all_polynomial with a description of the failed check.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename T>
struct FuchsianEquation {
    Polynomial<T> F, G, H;
    ExponentVector m;
    int k = 0;  ///< degree of the polynomial solution the equation was built from
};

struct ExponentPair {
    Complex first, second;  ///< ordered by (real, imag)
};

struct ExponentTable {
    std::vector<ExponentPair> finite;  ///< one pair per z_j
    ExponentPair infinity;
    Complex fuchs_sum;  ///< Σ of all exponents; n - 1 for a Fuchsian equation
};

template <typename T>
std::pair<Polynomial<T>, Polynomial<T>> build_fg(const std::vector<T>& z, const ExponentVector& m);

/// E(t⁰, z, m) from a critical point. The remainder of -(F u'' + G u') / u must be
/// below rel_tol relative to the dividend.
FuchsianEquation<Complex> associated_equation(std::span<const Complex> t0, const Configuration& z,
                                              const ExponentVector& m, double rel_tol = 1e-8);

/// Exact variant for a rational u (given by its symmetric coordinates) and exact z.
/// The remainder must vanish identically.
FuchsianEquation<Rational> associated_equation_exact(std::span<const Rational> lambda, const Configuration& z,
                                                     const ExponentVector& m);

/// Roots of ρ² + (p₀ - 1) ρ + q₀ = 0, ordered by (real, imag).
ExponentPair indicial_roots(Complex p0, Complex q0);

/// Exponents computed from the coefficients of the equation.
ExponentTable exponents(const FuchsianEquation<Complex>& e, const Configuration& z);

/// The table (0, m_j + 1) at z_j and (-k, k - l(m) - 1) at infinity.
ExponentTable expected_exponents(const ExponentVector& m, int k);

/// Canonical basis of the polynomial solutions of degree <= d: monic, distinct
/// degrees in descending order, each basis element zero at the leading
/// degrees of the others.
std::vector<ComplexPolynomial> polynomial_solutions(const FuchsianEquation<Complex>& e, int d, double rel_tol = 1e-8);
std::vector<RationalPolynomial> polynomial_solutions(const FuchsianEquation<Rational>& e, int d);

struct SolutionSpace {
    ComplexPolynomial u1;  ///< generic solution, degree k1
    ComplexPolynomial u2;  ///< special solution, degree k2 < k1
    int k1 = 0;
    int k2 = 0;
    ComplexPolynomial wronskian;  ///< monic W(u1, u2)
    double wronskian_error = 0.0;  ///< relative distance to ∏ (x - z_l)^{m_l}
    bool generic_simple_roots = false;
    double generic_min_root_gap = 0.0;
    int dual_degree = 0;              ///< l(m) + 1 - k
    double dual_residual = 0.0;       ///< Bethe residual of the degree-(l+1-k) solution's roots
    std::string dual_note;
};

/// Checks that E has a two-dimensional space of polynomial solutions of degrees
/// k and l(m)+1-k whose Wronskian is ∏ (x - z_l)^{m_l}. Throws VerificationFailure.
SolutionSpace verify_all_polynomial(const FuchsianEquation<Complex>& e, const Configuration& z, double rel_tol = 1e-8);

/// ∏ (x - z_l)^{m_l}
ComplexPolynomial wronskian_target(const Configuration& z, const ExponentVector& m);

struct Nondegeneracy {
    bool nondegenerate = true;
    std::vector<std::string> reasons;
};

/// No common zero of the space, and the special solution avoids every z_l.
Nondegeneracy nondegenerate_check(const SolutionSpace& v, const Configuration& z, double rel_margin = 1e-8);

/// Number of Fuchsian equations with the given exponents whose solutions are all univalued.
/// Pairs are (ρ_1, ρ_2) per finite point and at infinity. Throws std::domain_error
/// if the Fuchs relation fails or an exponent difference is not a positive integer.
long count_univalued_equations(std::span<const std::pair<Rational, Rational>> finite,
                               const std::pair<Rational, Rational>& infinity);

/// Number of nondegenerate two-dimensional spaces with Wronskian ∏ (x - z_l)^{m_l}
/// and degrees k1 > k2: the multiplicity of L_{k1-k2-1} in L^{⊗m}.
long count_nondegenerate_spaces(const ExponentVector& m, int k1, int k2);

}  // namespace bethe
