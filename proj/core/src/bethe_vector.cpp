#include "bethe/bethe_vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bethe {

namespace {

// Multiset assignments of t_0..t_{k-1} to sites, in lexicographic order of σ.
template <typename T>
void accumulate_maps(std::size_t i, std::vector<int>& remaining, const std::vector<std::vector<T>>& inv, const T& prod,
                     T& total) {
    if (i == inv.size()) {
        total += prod;
        return;
    }
    for (std::size_t l = 0; l < remaining.size(); ++l) {
        if (remaining[l] == 0) continue;
        --remaining[l];
        accumulate_maps(i + 1, remaining, inv, T(prod * inv[i][l]), total);
        ++remaining[l];
    }
}

double euclidean(const TensorVector<Complex>& v) {
    double s = 0.0;
    for (const auto& [J, x] : v.coeffs()) s += std::norm(x);
    return std::sqrt(s);
}

TensorVector<Complex> from_dense(const Eigen::VectorXcd& x, std::span<const WeightIndex> basis, int k) {
    TensorVector<Complex> v(k);
    for (std::size_t i = 0; i < basis.size(); ++i) v.add(basis[i], x(static_cast<Eigen::Index>(i)));
    return v;
}

Eigen::VectorXcd to_dense(const TensorVector<Complex>& v, std::span<const WeightIndex> basis) {
    const auto d = v.dense(basis);
    Eigen::VectorXcd x(static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) x(static_cast<Eigen::Index>(i)) = d[i];
    return x;
}

}  // namespace

template <typename T>
T a_coefficient(const WeightIndex& J, std::span<const T> t, std::span<const T> z) {
    if (J.j.size() != z.size()) throw std::invalid_argument("a_coefficient: J and z lengths differ");
    if (J.k() != static_cast<int>(t.size())) throw std::invalid_argument("a_coefficient: |J| differs from k");
    std::vector<std::vector<T>> inv(t.size(), std::vector<T>(z.size()));
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t l = 0; l < z.size(); ++l) {
            const T d = t[i] - z[l];
            if (ScalarTraits<T>::is_zero(d))
                throw ArrangementError("a_coefficient: t_" + std::to_string(i + 1) + " = z_" + std::to_string(l + 1));
            inv[i][l] = T(1) / d;
        }
    std::vector<int> remaining(J.j.begin(), J.j.end());
    T total(0);
    accumulate_maps(0, remaining, inv, T(1), total);
    return total;
}

template Rational a_coefficient(const WeightIndex&, std::span<const Rational>, std::span<const Rational>);
template Complex a_coefficient(const WeightIndex&, std::span<const Complex>, std::span<const Complex>);

BetheVector evaluate_bethe_vector(const CriticalPoint& cp, const ProblemInstance& inst) {
    const auto& m = inst.m();
    const int k = inst.k();
    if (static_cast<int>(cp.t.size()) != k) throw std::invalid_argument("bethe vector: orbit size differs from k");
    BetheVector bv;
    bv.source = cp;
    bv.v = TensorVector<Complex>(k);
    const auto basis = weight_basis(m, k);
    const auto& z = inst.z().points();
    for (const auto& J : basis) bv.v.add(J, a_coefficient<Complex>(J, cp.t, z));

    const double vnorm = std::max(euclidean(bv.v), 1e-300);
    bv.e_residual = euclidean(apply_generator(Generator::E, bv.v, m)) / vnorm;
    bv.shapovalov_norm = shapovalov_form(bv.v, bv.v, m);

    const auto hams = hamiltonians_complex(inst.z(), m, k);
    const Eigen::VectorXcd x = to_dense(bv.v, basis);
    for (const auto& h : hams) {
        const Eigen::VectorXcd hx = h * x;
        // Euclidean Rayleigh quotient: S(v,v) vanishes at degenerate points, x*x does not.
        const Complex mu = x.dot(hx) / x.squaredNorm();
        bv.eigenvalues.push_back(mu);
        const double res = (hx - mu * x).norm() / vnorm;
        bv.eigen_residuals.push_back(res);
        bv.max_eigen_residual = std::max(bv.max_eigen_residual, res);
    }
    return bv;
}

BetheVector bethe_vector(const CriticalPoint& cp, const ProblemInstance& inst, double tol) {
    BetheVector bv = evaluate_bethe_vector(cp, inst);
    if (!(bv.e_residual < tol) || !(bv.max_eigen_residual < tol)) {
        std::ostringstream os;
        os << "Bethe vector check failed: e-residual " << bv.e_residual << ", eigen-residual " << bv.max_eigen_residual
           << " (tolerance " << tol << ")";
        throw BetheCheckError(os.str(), bv.e_residual, bv.max_eigen_residual);
    }
    return bv;
}

NormIdentity norm_identity_check(const BetheVector& bv, const ProblemInstance& inst) {
    NormIdentity out;
    out.shapovalov = bv.shapovalov_norm;
    if (bv.source.t.empty()) {
        out.hessian_det = 1.0;
    } else {
        const Eigen::MatrixXcd h = hessian_ln_phi(bv.source.t, inst);
        out.hessian_det = h.determinant();
        double rows = 1.0;
        for (Eigen::Index i = 0; i < h.rows(); ++i) rows *= h.row(i).norm();
        out.degenerate = !(std::abs(out.hessian_det) > 1e-10 * rows);
    }
    out.relative_error = std::abs(out.shapovalov - out.hessian_det) / std::max(std::abs(out.hessian_det), 1e-300);
    return out;
}

BasisCheck basis_check(std::span<const BetheVector> vectors, const ProblemInstance& inst, double threshold) {
    const auto& m = inst.m();
    const int k = inst.k();
    const auto sing = singular_basis(m, k);
    if (vectors.size() != sing.size()) {
        std::ostringstream os;
        os << "basis_check: " << vectors.size() << " Bethe vectors for a singular space of dimension " << sing.size();
        throw std::domain_error(os.str());
    }
    BasisCheck out;
    if (sing.empty()) {
        out.determinant = 1.0;
        out.hadamard_ratio = 1.0;
        out.is_basis = true;
        return out;
    }
    const auto basis = weight_basis(m, k);
    const auto d = static_cast<Eigen::Index>(sing.size());
    Eigen::MatrixXcd s(static_cast<Eigen::Index>(basis.size()), d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const auto col = sing[static_cast<std::size_t>(c)].dense(basis);
        for (std::size_t r = 0; r < basis.size(); ++r) s(static_cast<Eigen::Index>(r), c) = col[r].get_d();
    }
    Eigen::MatrixXcd vmat(static_cast<Eigen::Index>(basis.size()), d);
    for (Eigen::Index c = 0; c < d; ++c) vmat.col(c) = to_dense(vectors[static_cast<std::size_t>(c)].v, basis);
    const Eigen::MatrixXcd coords = s.colPivHouseholderQr().solve(vmat);
    out.coordinate_residual = (s * coords - vmat).norm() / std::max(vmat.norm(), 1e-300);
    out.determinant = coords.determinant();
    double prod = 1.0;
    for (Eigen::Index c = 0; c < d; ++c) prod *= coords.col(c).norm();
    out.hadamard_ratio = prod > 0 ? std::abs(out.determinant) / prod : 0.0;
    out.is_basis = out.hadamard_ratio > threshold;
    return out;
}

EigenvalueSum eigenvalue_sum_check(const BetheVector& bv, const ProblemInstance& inst) {
    EigenvalueSum out;
    for (const auto& mu : bv.eigenvalues) out.sum_of_eigenvalues += mu;
    const auto basis = weight_basis(inst.m(), inst.k());
    const auto hams = hamiltonians_complex(inst.z(), inst.m(), inst.k());
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()),
                                                    static_cast<Eigen::Index>(basis.size()));
    for (const auto& h : hams) total += h;
    const Eigen::VectorXcd hx = total * to_dense(bv.v, basis);
    out.rayleigh_of_sum = shapovalov_form(bv.v, from_dense(hx, basis, inst.k()), inst.m()) / bv.shapovalov_norm;
    out.difference = std::abs(out.sum_of_eigenvalues - out.rayleigh_of_sum);
    return out;
}

ExactBetheCheck exact_bethe_check(std::span<const Rational> t, const ProblemInstance& inst) {
    const auto& m = inst.m();
    const int k = inst.k();
    if (static_cast<int>(t.size()) != k) throw std::invalid_argument("exact_bethe_check: t size differs from k");
    const auto& z = inst.z().exact_points();
    ExactBetheCheck out;
    out.v = TensorVector<Rational>(k);
    const auto basis = weight_basis(m, k);
    for (const auto& J : basis) out.v.add(J, a_coefficient<Rational>(J, t, z));
    out.singular = apply_generator(Generator::E, out.v, m).is_zero();
    out.shapovalov_norm = shapovalov_form(out.v, out.v, m);

    const auto x = out.v.dense(basis);
    RationalMatrix col(x.size(), 1);
    for (std::size_t i = 0; i < x.size(); ++i) col(i, 0) = x[i];
    out.eigenvector = !out.v.is_zero();
    for (const auto& h : hamiltonians_exact(inst.z(), m, k)) {
        const RationalMatrix hx = h * col;
        // Eigenvalue from the first nonzero coordinate, then an exact proportionality test.
        Rational mu = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (sgn(x[i]) != 0) {
                mu = hx(i, 0) / x[i];
                break;
            }
        for (std::size_t i = 0; i < x.size(); ++i)
            if (hx(i, 0) != mu * x[i]) out.eigenvector = false;
        out.eigenvalues.push_back(mu);
    }

    const std::size_t kk = t.size();
    RationalMatrix hess(kk, kk);
    for (std::size_t i = 0; i < kk; ++i) {
        for (std::size_t l = 0; l < z.size(); ++l) {
            const Rational d = t[i] - z[l];
            hess(i, i) += Rational(m[l]) / (d * d);
        }
        for (std::size_t j = 0; j < kk; ++j) {
            if (j == i) continue;
            const Rational d = t[i] - t[j];
            const Rational v = Rational(2) / (d * d);
            hess(i, i) -= v;
            hess(i, j) = v;
        }
    }
    out.hessian_det = kk == 0 ? Rational(1) : determinant(hess);
    return out;
}

}  // namespace bethe
