#include "bethe/polynomial.hpp"

#include <Eigen/Eigenvalues>

namespace bethe {

std::vector<Complex> roots(const ComplexPolynomial& p) {
    const int n = p.degree();
    if (n < 1) return {};
    const auto& c = p.coeffs();
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

ComplexPolynomial to_complex(const RationalPolynomial& p) {
    std::vector<Complex> c;
    c.reserve(p.size());
    for (const auto& q : p.coeffs()) c.emplace_back(q.get_d(), 0.0);
    return ComplexPolynomial(std::move(c));
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace bethe
