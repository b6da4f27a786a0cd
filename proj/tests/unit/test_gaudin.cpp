#include "bethe/gaudin.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bethe;

namespace {

using Vec = TensorVector<Rational>;

Vec basis(std::vector<int> j) { return Vec::basis_vector(WeightIndex{std::move(j)}); }

Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

// Ω^{(0,1)} on L_a ⊗ L_b, assembled from Kronecker products of the local matrices
// and restricted to the weight basis.
std::vector<std::vector<double>> casimir_kron(int a, int b, const std::vector<WeightIndex>& wb) {
    const auto la = oracle::local_sl2(a);
    const auto lb = oracle::local_sl2(b);
    std::vector<std::vector<double>> out(wb.size(), std::vector<double>(wb.size(), 0.0));
    for (std::size_t r = 0; r < wb.size(); ++r)
        for (std::size_t c = 0; c < wb.size(); ++c) {
            const auto i1 = static_cast<std::size_t>(wb[r].j[0]), i2 = static_cast<std::size_t>(wb[r].j[1]);
            const auto o1 = static_cast<std::size_t>(wb[c].j[0]), o2 = static_cast<std::size_t>(wb[c].j[1]);
            out[r][c] = 0.5 * la.h[i1][o1] * lb.h[i2][o2] + la.e[i1][o1] * lb.f[i2][o2] + la.f[i1][o1] * lb.e[i2][o2];
        }
    return out;
}

std::vector<Rational> rational_points(std::size_t n) {
    static const std::vector<Rational> pool{q(0), q(1), q(-5, 2), q(7, 3), q(-1, 4)};
    return {pool.begin(), pool.begin() + static_cast<long>(n)};
}

RationalMatrix e_matrix(const ExponentVector& m, int k) {
    return operator_matrix<Rational>([&](const Vec& v) { return apply_generator(Generator::E, v, m); }, m, k, k - 1);
}

}  // namespace

TEST_CASE("Casimir on small vectors") {
    const ExponentVector m({1, 1});
    CHECK(casimir_pair(basis({0, 0}), 0, 1, m) == q(1, 2) * basis({0, 0}));
    const ExponentVector m23({2, 3});
    CHECK(casimir_pair(basis({0, 0}), 0, 1, m23) == q(3) * basis({0, 0}));

    CHECK(casimir_pair(basis({1, 0}), 0, 1, m) == q(-1, 2) * basis({1, 0}) + basis({0, 1}));
    const Vec sing = basis({1, 0}) - basis({0, 1});
    CHECK(casimir_pair(sing, 0, 1, m) == q(-3, 2) * sing);
    CHECK(casimir_pair(sing, 1, 0, m) == q(-3, 2) * sing);

    CHECK_THROWS_AS(casimir_pair(sing, 1, 1, m), std::domain_error);
}

TEST_CASE("Casimir agrees with Kronecker-product matrices") {
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            const ExponentVector m({a, b});
            for (int k = 0; k <= a + b; ++k) {
                const auto wb = weight_basis(m, k);
                const auto got = casimir_matrix<Rational>(0, 1, m, k);
                const auto want = casimir_kron(a, b, wb);
                for (std::size_t r = 0; r < wb.size(); ++r)
                    for (std::size_t c = 0; c < wb.size(); ++c) CHECK(got(r, c).get_d() == want[r][c]);
            }
        }
}

TEST_CASE("two-point Hamiltonians") {
    const ExponentVector m({1, 1});
    const std::vector<Rational> z{q(0), q(1)};
    const auto h1 = hamiltonian_matrix<Rational>(0, z, m, 1);
    const auto h2 = hamiltonian_matrix<Rational>(1, z, m, 1);
    CHECK(h1.site == 0);
    // Basis order is (0,1), (1,0): v⊗fv first, fv⊗v second.
    RationalMatrix want(2, 2);
    want(0, 0) = q(1, 2);
    want(0, 1) = q(-1);
    want(1, 0) = q(-1);
    want(1, 1) = q(1, 2);
    CHECK(h1.entries == want);
    CHECK(h2.entries == q(-1) * h1.entries);

    RationalMatrix sing(2, 1);
    sing(0, 0) = q(-1);
    sing(1, 0) = q(1);
    CHECK(h1.entries * sing == q(3, 2) * sing);

    for (const auto& [mv, k] : std::vector<std::pair<std::vector<int>, int>>{{{2, 3}, 2}, {{3, 1}, 1}, {{2, 2}, 3}}) {
        const ExponentVector mm(mv);
        const std::vector<Rational> zz{q(2, 3), q(-7, 5)};
        CHECK(hamiltonian_matrix<Rational>(1, zz, mm, k).entries ==
              q(-1) * hamiltonian_matrix<Rational>(0, zz, mm, k).entries);
    }
}

TEST_CASE("coincident points are rejected") {
    const ExponentVector m({1, 1, 1});
    const std::vector<Rational> z{q(0), q(1), q(1)};
    CHECK_THROWS_AS(hamiltonian_matrix<Rational>(1, z, m, 1), std::domain_error);
    CHECK_THROWS_AS(Configuration{z}, std::domain_error);
}

TEST_CASE("complex and exact assembly agree") {
    const ExponentVector m({2, 1, 2});
    const Configuration cfg(std::vector<Rational>{q(0), q(3, 2), q(-2, 3)});
    const auto ex = hamiltonians_exact(cfg, m, 2);
    const auto cx = hamiltonians_complex(cfg, m, 2);
    REQUIRE(ex.size() == 3);
    REQUIRE(cx.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t r = 0; r < ex[i].rows(); ++r)
            for (std::size_t c = 0; c < ex[i].cols(); ++c)
                CHECK(std::abs(cx[i](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) - ex[i](r, c).get_d()) <
                      1e-13);
}

TEST_CASE("Hamiltonians commute, preserve singular vectors and are S-symmetric (exhaustive, exact)") {
    const auto z = rational_points(3);
    int checked = 0;
    for (int m1 = 1; m1 <= 2; ++m1)
        for (int m2 = 1; m2 <= 2; ++m2)
            for (int m3 = 1; m3 <= 2; ++m3) {
                const ExponentVector m({m1, m2, m3});
                for (int k = 0; k <= 3; ++k) {
                    if (weight_basis(m, k).empty()) continue;
                    std::vector<RationalMatrix> h;
                    for (std::size_t i = 0; i < 3; ++i) h.push_back(hamiltonian_matrix<Rational>(i, z, m, k).entries);
                    const auto g = shapovalov_gram(m, k);
                    const auto hdiag = operator_matrix<Rational>(
                        [&](const Vec& v) { return apply_generator(Generator::H, v, m); }, m, k, k);
                    for (std::size_t i = 0; i < 3; ++i) {
                        for (std::size_t j = 0; j < 3; ++j) CHECK(h[i] * h[j] == h[j] * h[i]);
                        CHECK(hdiag * h[i] == h[i] * hdiag);
                        CHECK(h[i].transpose() * g == g * h[i]);
                        if (k > 0 && !weight_basis(m, k - 1).empty()) {
                            const auto e = e_matrix(m, k);
                            CHECK(e * h[i] == hamiltonian_matrix<Rational>(i, z, m, k - 1).entries * e);
                        }
                    }
                    for (const auto& v : singular_basis(m, k)) {
                        const auto wb = weight_basis(m, k);
                        const auto x = v.dense(wb);
                        RationalMatrix col(x.size(), 1);
                        for (std::size_t r = 0; r < x.size(); ++r) col(r, 0) = x[r];
                        for (std::size_t i = 0; i < 3; ++i) {
                            const auto y = h[i] * col;
                            Vec image(k);
                            for (std::size_t r = 0; r < wb.size(); ++r) image.add(wb[r], y(r, 0));
                            CHECK(apply_generator(Generator::E, image, m).is_zero());
                        }
                    }
                    ++checked;
                }
            }
    CHECK(checked == 32);
}

TEST_CASE("sum of Hamiltonians commutes with the diagonal action") {
    const ExponentVector m({1, 2, 1, 1});
    const auto z = rational_points(4);
    for (int k = 1; k <= 2; ++k) {
        RationalMatrix total(weight_space_dim(m, k), weight_space_dim(m, k));
        for (std::size_t i = 0; i < 4; ++i) total = total + hamiltonian_matrix<Rational>(i, z, m, k).entries;
        const auto e = e_matrix(m, k);
        RationalMatrix below(weight_space_dim(m, k - 1), weight_space_dim(m, k - 1));
        for (std::size_t i = 0; i < 4; ++i) below = below + hamiltonian_matrix<Rational>(i, z, m, k - 1).entries;
        CHECK(e * total == below * e);
    }
}
