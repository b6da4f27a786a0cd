#include "bethe/gaudin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bethe {

Configuration::Configuration(std::vector<Complex> z) : z_(std::move(z)) { validate(); }

Configuration::Configuration(std::vector<Rational> z) : exact_(std::move(z)) {
    z_.reserve(exact_->size());
    for (const auto& q : *exact_) z_.emplace_back(q.get_d(), 0.0);
    validate();
}

const std::vector<Rational>& Configuration::exact_points() const {
    if (!exact_) throw std::logic_error("configuration has no exact representation");
    return *exact_;
}

double Configuration::diameter() const {
    double d = 0.0;
    for (std::size_t a = 0; a < z_.size(); ++a)
        for (std::size_t b = a + 1; b < z_.size(); ++b) d = std::max(d, std::abs(z_[a] - z_[b]));
    return d;
}

Configuration Configuration::without(const std::vector<std::size_t>& drop) const {
    auto dropped = [&](std::size_t i) { return std::find(drop.begin(), drop.end(), i) != drop.end(); };
    if (exact_) {
        std::vector<Rational> keep;
        for (std::size_t i = 0; i < exact_->size(); ++i)
            if (!dropped(i)) keep.push_back((*exact_)[i]);
        return Configuration(std::move(keep));
    }
    std::vector<Complex> keep;
    for (std::size_t i = 0; i < z_.size(); ++i)
        if (!dropped(i)) keep.push_back(z_[i]);
    return Configuration(std::move(keep));
}

void Configuration::validate() {
    min_dist_ = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < z_.size(); ++a) {
        if (!std::isfinite(z_[a].real()) || !std::isfinite(z_[a].imag()))
            throw std::domain_error("configuration: non-finite point z_" + std::to_string(a + 1));
        for (std::size_t b = a + 1; b < z_.size(); ++b) {
            const bool same = exact_ ? (*exact_)[a] == (*exact_)[b] : z_[a] == z_[b];
            if (same)
                throw std::domain_error("configuration: z_" + std::to_string(a + 1) + " and z_" + std::to_string(b + 1) +
                                        " coincide");
            min_dist_ = std::min(min_dist_, std::abs(z_[a] - z_[b]));
        }
    }
}

template <typename T>
TensorVector<T> casimir_pair(const TensorVector<T>& v, std::size_t i, std::size_t j, const ExponentVector& m) {
    if (i == j) throw std::domain_error("casimir_pair: factor indices must differ");
    if (i >= m.n() || j >= m.n()) throw std::out_of_range("casimir_pair: factor index out of range");
    const T half = ScalarTraits<T>::from_rational(Rational(1, 2));
    TensorVector<T> out = half * apply_local(Generator::H, i, apply_local(Generator::H, j, v, m), m);
    out += apply_local(Generator::E, i, apply_local(Generator::F, j, v, m), m);
    out += apply_local(Generator::F, i, apply_local(Generator::E, j, v, m), m);
    return out;
}

template <typename T>
Matrix<T> casimir_matrix(std::size_t i, std::size_t j, const ExponentVector& m, int k) {
    return operator_matrix<T>([&](const TensorVector<T>& v) { return casimir_pair(v, i, j, m); }, m, k, k);
}

template <typename T>
HamiltonianMatrix<T> hamiltonian_matrix(std::size_t i, const std::vector<T>& z, const ExponentVector& m, int k) {
    if (z.size() != m.n()) throw std::invalid_argument("hamiltonian_matrix: z and m lengths differ");
    if (i >= m.n()) throw std::out_of_range("hamiltonian_matrix: site index out of range");
    const std::size_t dim = weight_basis(m, k).size();
    HamiltonianMatrix<T> h{i, Matrix<T>(dim, dim)};
    for (std::size_t j = 0; j < m.n(); ++j) {
        if (j == i) continue;
        T diff = z[i] - z[j];
        if (ScalarTraits<T>::is_zero(diff))
            throw std::domain_error("hamiltonian_matrix: z_" + std::to_string(i + 1) + " and z_" + std::to_string(j + 1) +
                                    " coincide");
        T inv = T(1) / diff;
        h.entries = h.entries + inv * casimir_matrix<T>(i, j, m, k);
    }
    return h;
}

template TensorVector<Rational> casimir_pair(const TensorVector<Rational>&, std::size_t, std::size_t,
                                             const ExponentVector&);
template TensorVector<Complex> casimir_pair(const TensorVector<Complex>&, std::size_t, std::size_t,
                                            const ExponentVector&);
template Matrix<Rational> casimir_matrix(std::size_t, std::size_t, const ExponentVector&, int);
template Matrix<Complex> casimir_matrix(std::size_t, std::size_t, const ExponentVector&, int);
template HamiltonianMatrix<Rational> hamiltonian_matrix(std::size_t, const std::vector<Rational>&,
                                                        const ExponentVector&, int);
template HamiltonianMatrix<Complex> hamiltonian_matrix(std::size_t, const std::vector<Complex>&, const ExponentVector&,
                                                       int);

std::vector<Eigen::MatrixXcd> hamiltonians_complex(const Configuration& z, const ExponentVector& m, int k) {
    // Casimir matrices are rational; assemble them once and weight by 1/(z_i - z_j).
    const std::size_t n = m.n();
    const std::size_t dim = weight_basis(m, k).size();
    std::vector<Eigen::MatrixXcd> h(n, Eigen::MatrixXcd::Zero(dim, dim));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Eigen::MatrixXcd omega = to_complex(casimir_matrix<Rational>(i, j, m, k));
            const Complex d = z[i] - z[j];
            h[i] += omega / d;
            h[j] -= omega / d;
        }
    return h;
}

std::vector<RationalMatrix> hamiltonians_exact(const Configuration& z, const ExponentVector& m, int k) {
    std::vector<RationalMatrix> out;
    for (std::size_t i = 0; i < m.n(); ++i) out.push_back(hamiltonian_matrix<Rational>(i, z.exact_points(), m, k).entries);
    return out;
}

}  // namespace bethe
