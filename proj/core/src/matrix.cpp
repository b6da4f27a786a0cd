#include "bethe/matrix.hpp"

#include <Eigen/SVD>

namespace bethe {

std::vector<std::size_t> rref(RationalMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && sgn(a(sel, col)) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
        Rational inv = 1 / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || sgn(a(r, col)) == 0) continue;
            Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a) {
    RationalMatrix r = a;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(a.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const RationalMatrix& a) {
    RationalMatrix r = a;
    return rref(r).size();
}

Rational determinant(RationalMatrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && sgn(a(sel, col)) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(sel, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(a(r, col)) == 0) continue;
            Rational f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

Eigen::MatrixXcd to_complex(const RationalMatrix& a) {
    Eigen::MatrixXcd out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = Complex(a(r, c).get_d(), 0.0);
    return out;
}

Eigen::MatrixXcd numerical_nullspace(const Eigen::MatrixXcd& a, double rel_tol) {
    const auto cols = a.cols();
    if (cols == 0) return Eigen::MatrixXcd(0, 0);
    if (a.rows() == 0) return Eigen::MatrixXcd::Identity(cols, cols);
    // Pad to at least square so that the full V is available.
    Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(std::max(a.rows(), cols), cols);
    padded.topRows(a.rows()) = a;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(padded, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * smax && smax > 0) ++r;
    return svd.matrixV().rightCols(cols - r);
}

}  // namespace bethe
