#pragma once

// Log-derivatives of the master function
//   Φ(t; z, m) = ∏_i ∏_l (t_i - z_l)^{-m_l} ∏_{i<j} (t_i - t_j)^2.
// Φ itself is never evaluated; everything here works with ln Φ.

#include "bethe/gaudin.hpp"
#include "bethe/rep.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bethe {

/// t touches the arrangement: t_i = z_l or t_i = t_j within the margin.
class ArrangementError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The (m, k, z) triple. Zero exponents are removed together with their point.
class ProblemInstance {
public:
    ProblemInstance(ExponentVector m, int k, Configuration z);

    const ExponentVector& m() const { return m_; }
    int k() const { return k_; }
    const Configuration& z() const { return z_; }
    std::size_t n() const { return m_.n(); }
    int l() const { return m_.total(); }

    /// Same exponents and points with a different particle number.
    ProblemInstance with_k(int k) const { return ProblemInstance(m_, k, z_); }

private:
    ExponentVector m_;
    int k_;
    Configuration z_;
};

struct CriticalPoint {
    std::vector<Complex> t;       ///< canonical order
    std::vector<Complex> lambda;  ///< elementary symmetric functions of t
    double residual_norm = 0.0;
    Complex hessian_det{};
    double hessian_cond = 0.0;
};

enum class Regime { IsolatedPoints, NoCriticalEqualExponents, CriticalLines, NoCriticalNegativeDual };

struct RegimeLabel {
    Regime regime;
    long expected_count;
};

std::string to_string(Regime r);
std::optional<Regime> parse_regime(const std::string& s);

/// Default arrangement margin: 1e-8 times the diameter of z ∪ t.
double arrangement_margin(std::span<const Complex> t, const Configuration& z);

/// Throws ArrangementError naming the colliding pair when t is within `margin` of 𝒜.
void check_arrangement(std::span<const Complex> t, const Configuration& z, double margin);

/// Distance from t to the arrangement, scaled per coordinate: min over pairs.
double arrangement_distance(std::span<const Complex> t, const Configuration& z);

/// r_i = Σ_l -m_l/(t_i - z_l) + Σ_{j≠i} 2/(t_i - t_j)
std::vector<Complex> bethe_residual(std::span<const Complex> t, const ProblemInstance& inst);

/// Exact residual for rational t and an exact configuration.
std::vector<Rational> bethe_residual_exact(std::span<const Rational> t, const ProblemInstance& inst);

/// max_i |r_i| / (Σ_l m_l/|t_i - z_l| + Σ_{j≠i} 2/|t_i - t_j|): scale-free cancellation measure.
double relative_residual(std::span<const Complex> t, const ProblemInstance& inst);

/// ∂² ln Φ / ∂t_i ∂t_j, equal to the Jacobian of bethe_residual.
Eigen::MatrixXcd hessian_ln_phi(std::span<const Complex> t, const ProblemInstance& inst);

/// ∂ r / ∂ z (k × n), used by the path tracker.
Eigen::MatrixXcd residual_z_jacobian(std::span<const Complex> t, const ProblemInstance& inst);

template <typename T>
std::vector<T> elementary_symmetric(std::span<const T> t) {
    std::vector<T> e(t.size() + 1, T(0));
    e[0] = T(1);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j >= 1; --j) e[j] += e[j - 1] * t[i];
    return std::vector<T>(e.begin() + 1, e.end());
}

/// Roots of x^k - λ_1 x^{k-1} + ... + (-1)^k λ_k via companion eigenvalues.
std::vector<Complex> roots_from_lambda(std::span<const Complex> lambda);

/// Coordinates sorted by (real, imag); λ attached. Residual fields are left zero.
CriticalPoint canonical_orbit(std::span<const Complex> t);

/// Canonical orbit with residual, Hessian determinant and condition number filled in.
CriticalPoint make_critical_point(std::span<const Complex> t, const ProblemInstance& inst);

/// Translation and scale used to compare orbits: λ is taken of (t - center) / scale.
struct OrbitFrame {
    Complex center{};
    double scale = 1.0;
};

/// Center at the mean of z, scale the largest distance from it to any z_l or t_i.
OrbitFrame orbit_frame(const Configuration& z, std::span<const CriticalPoint> pts);

/// Max-norm distance between the normalized λ vectors of two orbits.
double orbit_distance(const CriticalPoint& a, const CriticalPoint& b, const OrbitFrame& frame);

/// Merges orbits closer than `tol` and sorts the result by λ.
std::vector<CriticalPoint> dedup_orbits(std::vector<CriticalPoint> pts, const Configuration& z, double tol);

/// Lexicographic order on λ by (real, imag).
bool lambda_less(const CriticalPoint& a, const CriticalPoint& b);

/// Four-way split by l(m) + 1 - k against k.
RegimeLabel classify_regime(const ExponentVector& m, int k);

enum class N2Case {
    Unique,               ///< (i)   k <= m_1, m_2
    InArrangement,        ///< (ii)  k exceeds exactly one exponent
    Line,                 ///< (iii) m_1, m_2 < k <= m_1 + m_2 + 1
    InArrangementBeyond,  ///< (iv)  k > m_1 + m_2 + 1
};

std::string to_string(N2Case c);

/// Solution of the linear critical-point system of Φ_{k,2} at z = (0, 1) in λ-coordinates.
struct N2Solution {
    N2Case which = N2Case::Unique;
    std::size_t rank = 0;
    bool has_solution = true;         ///< false when the system is inconsistent (reachable in case (ii))
    std::vector<Rational> lambda;     ///< unique solution, or the base point of the line
    std::vector<Rational> direction;  ///< only for N2Case::Line
    bool lands_in_arrangement = false;
    std::string arrangement_reason;
};

/// (p+1)(p - m_1) λ_{k-p-1} = (k-p)(k+p-1-m_1-m_2) λ_{k-p}, p = 0..k-1, λ_0 = 1, solved exactly.
N2Solution n2_closed_form(const Rational& m1, const Rational& m2, int k);

/// Exact arrangement test for the polynomial with symmetric coordinates λ at z = (0, 1).
std::optional<std::string> n2_arrangement_hit(std::span<const Rational> lambda);

/// λ ↦ coordinates for z = (z1, z2) via t = z1 + (z2 - z1) u.
std::vector<Complex> n2_points(std::span<const Rational> lambda, Complex z1, Complex z2);

}  // namespace bethe
