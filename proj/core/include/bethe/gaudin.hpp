#pragma once

// Casimir operator and Gaudin Hamiltonians on weight subspaces of L^{⊗m}.

#include "bethe/matrix.hpp"
#include "bethe/rep.hpp"

#include <optional>
#include <vector>

namespace bethe {

/// Points z_1..z_n with pairwise distinct coordinates. When every point is a
/// real rational the exact values are kept alongside the floating ones.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Complex> z);
    explicit Configuration(std::vector<Rational> z);

    std::size_t n() const { return z_.size(); }
    const std::vector<Complex>& points() const { return z_; }
    const Complex& operator[](std::size_t i) const { return z_[i]; }
    bool is_exact() const { return exact_.has_value(); }
    const std::vector<Rational>& exact_points() const;
    double min_distance() const { return min_dist_; }
    double diameter() const;

    /// Points with the given indices removed (used when stripping zero exponents).
    Configuration without(const std::vector<std::size_t>& drop) const;

private:
    void validate();

    std::vector<Complex> z_;
    std::optional<std::vector<Rational>> exact_;
    double min_dist_ = 0.0;
};

/// Ω = ½ h⊗h + e⊗f + f⊗e acting in factors i and j.
template <typename T>
TensorVector<T> casimir_pair(const TensorVector<T>& v, std::size_t i, std::size_t j, const ExponentVector& m);

template <typename T>
struct HamiltonianMatrix {
    std::size_t site = 0;
    Matrix<T> entries;  ///< over weight_basis(m, k)
};

/// Matrix of H_i(z) = Σ_{j≠i} Ω^{(i,j)} / (z_i - z_j) on weight_basis(m, k).
/// Throws std::domain_error naming the pair if two points coincide.
template <typename T>
HamiltonianMatrix<T> hamiltonian_matrix(std::size_t i, const std::vector<T>& z, const ExponentVector& m, int k);

/// Matrix of Ω^{(i,j)} on weight_basis(m, k).
template <typename T>
Matrix<T> casimir_matrix(std::size_t i, std::size_t j, const ExponentVector& m, int k);

/// All Hamiltonians for a configuration, complex mode.
std::vector<Eigen::MatrixXcd> hamiltonians_complex(const Configuration& z, const ExponentVector& m, int k);

/// All Hamiltonians for a configuration of real rationals, exact mode.
std::vector<RationalMatrix> hamiltonians_exact(const Configuration& z, const ExponentVector& m, int k);

}  // namespace bethe
