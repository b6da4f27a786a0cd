#pragma once

// Exact sl2 representation theory on tensor products L_{m_1} ⊗ ... ⊗ L_{m_n}.
// A weight vector f^{j_1}v ⊗ ... ⊗ f^{j_n}v is labelled by J = (j_1, ..., j_n).

#include "bethe/matrix.hpp"
#include "bethe/scalar.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace bethe {

/// Highest weights of the tensor factors. Solver workflows use positive
/// integers; zero entries are stripped by ProblemInstance.
class ExponentVector {
public:
    ExponentVector() = default;
    ExponentVector(std::initializer_list<int> m) : m_(m) {}
    explicit ExponentVector(std::vector<int> m) : m_(std::move(m)) {}

    std::size_t n() const { return m_.size(); }
    int operator[](std::size_t i) const { return m_[i]; }
    int total() const;  ///< l(m)
    bool all_positive() const;
    std::span<const int> values() const { return m_; }
    auto begin() const { return m_.begin(); }
    auto end() const { return m_.end(); }

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<int> m_;
};

struct WeightIndex {
    std::vector<int> j;

    int k() const;
    friend auto operator<=>(const WeightIndex&, const WeightIndex&) = default;
};

/// Finite linear combination of weight vectors f_J v. All keys share k.
template <typename T>
class TensorVector {
public:
    TensorVector() = default;
    explicit TensorVector(int k) : k_(k) {}

    int k() const { return k_; }
    const std::map<WeightIndex, T>& coeffs() const { return c_; }

    void add(const WeightIndex& J, const T& value) {
        if (ScalarTraits<T>::is_zero(value)) return;
        auto [it, inserted] = c_.try_emplace(J, value);
        if (!inserted) {
            it->second += value;
            if (ScalarTraits<T>::is_zero(it->second)) c_.erase(it);
        }
    }

    T at(const WeightIndex& J) const {
        auto it = c_.find(J);
        return it == c_.end() ? T(0) : it->second;
    }

    bool is_zero() const { return c_.empty(); }

    TensorVector& operator+=(const TensorVector& o) {
        for (const auto& [J, v] : o.c_) add(J, v);
        return *this;
    }
    TensorVector& operator-=(const TensorVector& o) {
        for (const auto& [J, v] : o.c_) add(J, -v);
        return *this;
    }
    friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
    friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
    friend TensorVector operator*(const T& s, const TensorVector& v) {
        TensorVector out(v.k_);
        for (const auto& [J, x] : v.c_) out.add(J, s * x);
        return out;
    }
    friend bool operator==(const TensorVector& a, const TensorVector& b) {
        return (a.c_.empty() && b.c_.empty()) || (a.k_ == b.k_ && a.c_ == b.c_);
    }

    /// Coefficients in the order of `basis`.
    std::vector<T> dense(std::span<const WeightIndex> basis) const {
        std::vector<T> out;
        out.reserve(basis.size());
        for (const auto& J : basis) out.push_back(at(J));
        return out;
    }

    static TensorVector basis_vector(const WeightIndex& J) {
        TensorVector v(J.k());
        v.add(J, T(1));
        return v;
    }

private:
    int k_ = 0;
    std::map<WeightIndex, T> c_;
};

enum class Generator { E, F, H };

/// All J with Σ j_l = k and 0 <= j_l <= m_l, in ascending lexicographic order.
std::vector<WeightIndex> weight_basis(const ExponentVector& m, int k);

/// dim L^{⊗m}[l(m) - 2k]; zero for k < 0.
std::size_t weight_space_dim(const ExponentVector& m, int k);

/// d(m,k) = dim L[l(m)-2k] - dim L[l(m)-2k+2]; may be negative past the middle weight.
long difference_d(const ExponentVector& m, int k);

/// Multiplicity of L_{l(m)-2k} in L^{⊗m}. Throws std::domain_error for k < 0.
long multiplicity_w(const ExponentVector& m, int k);

/// Binomial coefficient with C(p,q) = 0 when p < q, p < 0 or q < 0.
long long binomial(long long p, long long q);

/// The alternating sum ♯(k, n; m_1, ..., m_a) over the integral exponents. Each term
/// C(x + n - 2, n - 2) is read as the number of ways to write x as n - 1 ordered
/// nonnegative parts, which agrees with `binomial` for n >= 2 and gives [x = 0] for n = 1.
long long sharp_count(int k, int n, std::span<const int> int_exponents);

/// Action of a generator on the `factor`-th tensor factor only.
template <typename T>
TensorVector<T> apply_local(Generator g, std::size_t factor, const TensorVector<T>& v, const ExponentVector& m) {
    const int a = m[factor];
    const int k_out = g == Generator::E ? v.k() - 1 : g == Generator::F ? v.k() + 1 : v.k();
    TensorVector<T> out(k_out);
    for (const auto& [J, c] : v.coeffs()) {
        const int j = J.j[factor];
        switch (g) {
            case Generator::E:
                if (j > 0) {
                    WeightIndex K = J;
                    --K.j[factor];
                    out.add(K, from_int<T>(static_cast<long>(j) * (a - j + 1)) * c);
                }
                break;
            case Generator::F:
                if (j < a) {
                    WeightIndex K = J;
                    ++K.j[factor];
                    out.add(K, c);
                }
                break;
            case Generator::H:
                out.add(J, from_int<T>(a - 2 * j) * c);
                break;
        }
    }
    return out;
}

/// Coproduct action: sum of the local actions over all factors.
template <typename T>
TensorVector<T> apply_generator(Generator g, const TensorVector<T>& v, const ExponentVector& m) {
    const int k_out = g == Generator::E ? v.k() - 1 : g == Generator::F ? v.k() + 1 : v.k();
    TensorVector<T> out(k_out);
    for (std::size_t l = 0; l < m.n(); ++l) out += apply_local(g, l, v, m);
    return out;
}

/// S_a(f^j v, f^j v) = ∏_{i=1}^{j} i (a - i + 1)
Rational shapovalov_local(int a, int j);

/// Diagonal Shapovalov Gram matrix over weight_basis(m, k).
RationalMatrix shapovalov_gram(const ExponentVector& m, int k);

/// S(x, y) = Σ_J S_J x_J y_J (bilinear, no conjugation).
template <typename T>
T shapovalov_form(const TensorVector<T>& x, const TensorVector<T>& y, const ExponentVector& m) {
    T acc(0);
    for (const auto& [J, xv] : x.coeffs()) {
        auto it = y.coeffs().find(J);
        if (it == y.coeffs().end()) continue;
        Rational s = 1;
        for (std::size_t l = 0; l < m.n(); ++l) s *= shapovalov_local(m[l], J.j[l]);
        acc += ScalarTraits<T>::from_rational(s) * xv * it->second;
    }
    return acc;
}

/// Matrix of the map x ↦ op(x) from weight space k_from to weight space k_to,
/// columns indexed by weight_basis(m, k_from).
template <typename T, typename Op>
Matrix<T> operator_matrix(Op&& op, const ExponentVector& m, int k_from, int k_to) {
    const auto from = weight_basis(m, k_from);
    const auto to = weight_basis(m, k_to);
    Matrix<T> out(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
        TensorVector<T> image = op(TensorVector<T>::basis_vector(from[c]));
        for (std::size_t r = 0; r < to.size(); ++r) out(r, c) = image.at(to[r]);
    }
    return out;
}

/// Exact basis of Sing(L^{⊗m})_k = ker e on the weight space l(m) - 2k.
std::vector<TensorVector<Rational>> singular_basis(const ExponentVector& m, int k);

struct GoodPairReport {
    bool is_good = false;
    int a = 0;  ///< positive integers
    int b = 0;  ///< non-integer positives
    int c = 0;  ///< negative integers
    std::vector<std::size_t> witness;  ///< original indices in block order
};

/// Good-pair predicate over rational exponents.
GoodPairReport classify_good_pair(std::span<const Rational> m, int k);

}  // namespace bethe
