#include "bethe/rep.hpp"

#include <numeric>
#include <stdexcept>

namespace bethe {

int ExponentVector::total() const { return std::accumulate(m_.begin(), m_.end(), 0); }

bool ExponentVector::all_positive() const {
    for (int v : m_)
        if (v <= 0) return false;
    return true;
}

int WeightIndex::k() const { return std::accumulate(j.begin(), j.end(), 0); }

namespace {

void enumerate(const ExponentVector& m, std::size_t pos, int remaining, std::vector<int>& cur,
               std::vector<WeightIndex>& out) {
    if (pos == m.n()) {
        if (remaining == 0) out.push_back(WeightIndex{cur});
        return;
    }
    // Capacity of the remaining factors bounds the smallest admissible j here.
    int tail = 0;
    for (std::size_t l = pos + 1; l < m.n(); ++l) tail += m[l];
    const int lo = std::max(0, remaining - tail);
    const int hi = std::min(m[pos], remaining);
    for (int j = lo; j <= hi; ++j) {
        cur[pos] = j;
        enumerate(m, pos + 1, remaining - j, cur, out);
    }
    cur[pos] = 0;
}

}  // namespace

std::vector<WeightIndex> weight_basis(const ExponentVector& m, int k) {
    std::vector<WeightIndex> out;
    if (k < 0) return out;
    for (int v : m)
        if (v < 0) throw std::domain_error("weight_basis: exponents must be nonnegative integers");
    std::vector<int> cur(m.n(), 0);
    enumerate(m, 0, k, cur, out);
    return out;
}

std::size_t weight_space_dim(const ExponentVector& m, int k) {
    if (k < 0) return 0;
    // Coefficient of x^k in ∏ (1 + x + ... + x^{m_l}).
    std::vector<std::size_t> poly{1};
    for (int a : m) {
        std::vector<std::size_t> next(std::min<std::size_t>(poly.size() + a, static_cast<std::size_t>(k) + 1), 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (int j = 0; j <= a && i + j < next.size(); ++j) next[i + j] += poly[i];
        poly = std::move(next);
    }
    return static_cast<std::size_t>(k) < poly.size() ? poly[k] : 0;
}

long difference_d(const ExponentVector& m, int k) {
    return static_cast<long>(weight_space_dim(m, k)) - static_cast<long>(weight_space_dim(m, k - 1));
}

long multiplicity_w(const ExponentVector& m, int k) {
    if (k < 0) throw std::domain_error("multiplicity_w: k must be nonnegative");
    if (m.total() - 2 * k < 0) return 0;
    return difference_d(m, k);
}

long long binomial(long long p, long long q) {
    if (q < 0 || p < 0 || p < q) return 0;
    q = std::min(q, p - q);
    long long r = 1;
    for (long long i = 1; i <= q; ++i) r = r * (p - q + i) / i;
    return r;
}

long long sharp_count(int k, int n, std::span<const int> int_exponents) {
    const std::size_t a = int_exponents.size();
    if (a > static_cast<std::size_t>(n)) throw std::domain_error("sharp_count: more integral exponents than points");
    long long total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << a); ++mask) {
        long long shift = 0;
        int q = 0;
        for (std::size_t i = 0; i < a; ++i)
            if (mask & (std::size_t{1} << i)) {
                shift += int_exponents[i];
                ++q;
            }
        const long long x = static_cast<long long>(k) - shift - q;
        const long long term = n >= 2 ? binomial(x + n - 2, n - 2) : (x == 0 ? 1 : 0);
        total += (q % 2 == 0) ? term : -term;
    }
    return total;
}

Rational shapovalov_local(int a, int j) {
    Rational s = 1;
    for (int i = 1; i <= j; ++i) s *= Rational(i) * Rational(a - i + 1);
    return s;
}

RationalMatrix shapovalov_gram(const ExponentVector& m, int k) {
    const auto basis = weight_basis(m, k);
    RationalMatrix g(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Rational s = 1;
        for (std::size_t l = 0; l < m.n(); ++l) s *= shapovalov_local(m[l], basis[i].j[l]);
        g(i, i) = s;
    }
    return g;
}

std::vector<TensorVector<Rational>> singular_basis(const ExponentVector& m, int k) {
    std::vector<TensorVector<Rational>> out;
    if (k < 0 || m.total() - 2 * k < 0) return out;
    const auto basis = weight_basis(m, k);
    auto e = operator_matrix<Rational>(
        [&](const TensorVector<Rational>& v) { return apply_generator(Generator::E, v, m); }, m, k, k - 1);
    for (const auto& kv : nullspace(e)) {
        TensorVector<Rational> v(k);
        for (std::size_t i = 0; i < basis.size(); ++i) v.add(basis[i], kv[i]);
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

Rational frac_part(const Rational& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - Rational(fl);
}

// Orders the non-integer positives so that no consecutive block sums to an
// integer: equivalently all prefix sums are pairwise distinct modulo 1.
bool order_noninteger_block(const std::vector<Rational>& vals, std::vector<bool>& used, std::vector<Rational>& prefix,
                            std::vector<std::size_t>& order) {
    if (order.size() == vals.size()) return true;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (used[i]) continue;
        Rational next = frac_part(prefix.back() + vals[i]);
        bool clash = false;
        for (const auto& p : prefix)
            if (p == next) {
                clash = true;
                break;
            }
        if (clash) continue;
        used[i] = true;
        prefix.push_back(next);
        order.push_back(i);
        if (order_noninteger_block(vals, used, prefix, order)) return true;
        order.pop_back();
        prefix.pop_back();
        used[i] = false;
    }
    return false;
}

}  // namespace

GoodPairReport classify_good_pair(std::span<const Rational> m, int k) {
    GoodPairReport rep;
    Rational total = 0;
    for (const auto& v : m) total += v;
    if (total < 2 * k) return rep;

    std::vector<std::size_t> pos_int, non_int, neg_int;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (is_integer(m[i])) {
            if (sgn(m[i]) > 0)
                pos_int.push_back(i);
            else if (sgn(m[i]) < 0)
                neg_int.push_back(i);
            else
                return rep;
        } else if (sgn(m[i]) > 0) {
            non_int.push_back(i);
        } else {
            return rep;
        }
    }

    std::vector<Rational> vals;
    for (auto i : non_int) vals.push_back(m[i]);
    std::vector<bool> used(vals.size(), false);
    std::vector<Rational> prefix{Rational(0)};
    std::vector<std::size_t> order;
    if (!order_noninteger_block(vals, used, prefix, order)) return rep;

    rep.is_good = true;
    rep.a = static_cast<int>(pos_int.size());
    rep.b = static_cast<int>(non_int.size());
    rep.c = static_cast<int>(neg_int.size());
    rep.witness = pos_int;
    for (auto o : order) rep.witness.push_back(non_int[o]);
    rep.witness.insert(rep.witness.end(), neg_int.begin(), neg_int.end());
    return rep;
}

}  // namespace bethe
