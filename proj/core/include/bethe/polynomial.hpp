#pragma once

#include "bethe/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bethe {

/// Univariate polynomial, coefficients in ascending degree order.
/// The zero polynomial has no coefficients and degree -1.
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { strip(); }

    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
    static Polynomial monomial(std::size_t deg, const T& coeff = T(1)) {
        std::vector<T> c(deg + 1, T(0));
        c[deg] = coeff;
        return Polynomial(std::move(c));
    }

    /// ∏ (x - r_i)
    static Polynomial from_roots(std::span<const T> roots) {
        std::vector<T> c{T(1)};
        for (const T& r : roots) {
            std::vector<T> next(c.size() + 1, T(0));
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i + 1] += c[i];
                next[i] -= r * c[i];
            }
            c = std::move(next);
        }
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }

    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    T operator()(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * from_int<T>(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        std::vector<T> a(c_.size() + 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / from_int<T>(static_cast<long>(i + 1));
        return Polynomial(std::move(a));
    }

    Polynomial monic() const {
        if (c_.empty()) return {};
        T lead = c_.back();
        std::vector<T> m(c_);
        for (auto& x : m) x /= lead;
        return Polynomial(std::move(m));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.size(), b.size()), T(0));
        for (std::size_t i = 0; i < a.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.size(); ++i) c[i] += b.c_[i];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.size(), b.size()), T(0));
        for (std::size_t i = 0; i < a.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b.c_[i];
        return Polynomial(std::move(c));
    }

    Polynomial operator-() const {
        std::vector<T> c(c_);
        for (auto& x : c) x = -x;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.size() + b.size() - 1, T(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const T& s, const Polynomial& p) {
        std::vector<T> c(p.c_);
        for (auto& x : c) x *= s;
        return Polynomial(std::move(c));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Quotient and remainder of long division by a nonzero divisor.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
        if (den.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<T> r(num.c_);
        const int dd = den.degree();
        if (num.degree() < dd) return {Polynomial{}, num};
        std::vector<T> q(num.degree() - dd + 1, T(0));
        const T lead = den.leading();
        for (int i = num.degree() - dd; i >= 0; --i) {
            T f = r[i + dd] / lead;
            q[i] = f;
            for (int j = 0; j <= dd; ++j) r[i + j] -= f * den.c_[j];
            r[i + dd] = T(0);
        }
        r.resize(dd);
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    /// Euclidean norm of the coefficient vector.
    double norm() const {
        double s = 0;
        for (const auto& x : c_) {
            double m = ScalarTraits<T>::magnitude(x);
            s += m * m;
        }
        return std::sqrt(s);
    }

    /// Drops leading coefficients with magnitude <= rel_tol * norm().
    Polynomial trimmed(double rel_tol) const {
        std::vector<T> c(c_);
        const double cut = rel_tol * norm();
        while (!c.empty() && ScalarTraits<T>::magnitude(c.back()) <= cut) c.pop_back();
        return Polynomial(std::move(c));
    }

private:
    void strip() {
        while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using RationalPolynomial = Polynomial<Rational>;
using ComplexPolynomial = Polynomial<Complex>;

/// Roots of a complex polynomial as eigenvalues of its companion matrix.
std::vector<Complex> roots(const ComplexPolynomial& p);

ComplexPolynomial to_complex(const RationalPolynomial& p);

/// Monic gcd over the rationals.
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// W(f, g) = f' g - f g'
template <typename T>
Polynomial<T> wronskian(const Polynomial<T>& f, const Polynomial<T>& g) {
    return f.derivative() * g - f * g.derivative();
}

}  // namespace bethe
