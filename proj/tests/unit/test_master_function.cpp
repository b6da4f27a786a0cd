#include "bethe/master_function.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace bethe;

namespace {

Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

ProblemInstance exact_instance(std::vector<int> m, int k, std::vector<Rational> z) {
    return ProblemInstance(ExponentVector(std::move(m)), k, Configuration(std::move(z)));
}

// Random t in [-2,2]² kept at distance > 0.15 from every z and from each other.
std::vector<Complex> safe_point(std::mt19937_64& rng, std::size_t k, const std::vector<Complex>& z) {
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0; };
    std::vector<Complex> t;
    while (t.size() < k) {
        const Complex c(unit(), unit());
        bool ok = true;
        for (const auto& w : z) ok = ok && std::abs(c - w) > 0.15;
        for (const auto& w : t) ok = ok && std::abs(c - w) > 0.15;
        if (ok) t.push_back(c);
    }
    return t;
}

double real_log_form(const std::vector<Complex>& t, const std::vector<Complex>& z, const std::vector<int>& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t l = 0; l < z.size(); ++l) s -= m[l] * std::log(std::abs(t[i] - z[l]));
        for (std::size_t j = i + 1; j < t.size(); ++j) s += 2.0 * std::log(std::abs(t[i] - t[j]));
    }
    return s;
}

}  // namespace

TEST_CASE("residual examples") {
    auto inst = exact_instance({1, 1}, 1, {q(0), q(1)});
    const std::vector<Rational> half{q(1, 2)};
    CHECK(bethe_residual_exact(half, inst)[0] == 0);
    const std::vector<Rational> quarter{q(1, 4)};
    CHECK(bethe_residual_exact(quarter, inst)[0] == q(-8, 3));
    const std::vector<Complex> quarter_c{0.25};
    CHECK(std::abs(bethe_residual(quarter_c, inst)[0] - Complex(-8.0 / 3.0)) < 1e-14);

    // Three unit exponents at (0, 1, c): critical points are the roots of 3x² - 2(c+1)x + c.
    // For c = 8/5 the discriminant is a square and the roots are 4/3 and 2/5.
    auto three = exact_instance({1, 1, 1}, 1, {q(0), q(1), q(8, 5)});
    for (const auto& r : {q(4, 3), q(2, 5)}) {
        const std::vector<Rational> t{r};
        CHECK(bethe_residual_exact(t, three)[0] == 0);
    }
    const std::vector<Rational> off{q(1, 3)};
    CHECK(bethe_residual_exact(off, three)[0] != 0);

    for (const double c : {2.0, -1.5, 3.7}) {
        const auto [r1, r2] = oracle::quadratic_roots(3.0, -2.0 * (c + 1.0), c);
        auto fl = ProblemInstance(ExponentVector({1, 1, 1}), 1, Configuration(std::vector<Complex>{0.0, 1.0, c}));
        for (const auto& r : {r1, r2}) CHECK(std::abs(bethe_residual(std::vector<Complex>{r}, fl)[0]) < 1e-12);
    }
}

TEST_CASE("residual matches the direct formula and rejects the arrangement") {
    const auto zc = oracle::generic_points(4, 11);
    const std::vector<Complex> z(zc.begin(), zc.end());
    const std::vector<int> m{1, 3, 2, 1};
    auto inst = ProblemInstance(ExponentVector(m), 3, Configuration(z));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = safe_point(rng, 3, z);
        const auto got = bethe_residual(t, inst);
        const auto want = oracle::residual_direct({t.begin(), t.end()}, zc, m);
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12 * (1.0 + std::abs(want[i])));
    }
    std::vector<Complex> bad{z[1], Complex(0.3, 0.3), Complex(-0.2, 0.5)};
    CHECK_THROWS_AS(bethe_residual(bad, inst), ArrangementError);
    bad = {Complex(0.3, 0.3), Complex(0.3, 0.3), Complex(-0.2, 0.5)};
    CHECK_THROWS_AS(bethe_residual(bad, inst), ArrangementError);
}

TEST_CASE("Hessian examples") {
    auto inst = ProblemInstance(ExponentVector({1, 1}), 1, Configuration(std::vector<Complex>{0.0, 1.0}));
    const auto h = hessian_ln_phi(std::vector<Complex>{0.5}, inst);
    REQUIRE(h.rows() == 1);
    CHECK(std::abs(h(0, 0) - 8.0) < 1e-13);

    auto inst2 = ProblemInstance(ExponentVector({1, 1}), 2, Configuration(std::vector<Complex>{0.0, 1.0}));
    const auto h2 = hessian_ln_phi(std::vector<Complex>{0.3, 0.7}, inst2);
    CHECK(std::abs(h2(0, 1) - 12.5) < 1e-12);
    CHECK(std::abs(h2(1, 0) - 12.5) < 1e-12);
    const double d0 = 1.0 / 0.09 + 1.0 / 0.49 - 12.5;
    CHECK(std::abs(h2(0, 0) - d0) < 1e-12);
}

TEST_CASE("gradient and Jacobian against finite differences at 100 safe points") {
    const auto zc = oracle::generic_points(3, 17);
    const std::vector<Complex> z(zc.begin(), zc.end());
    const std::vector<int> m{2, 1, 3};
    std::mt19937_64 rng(99);
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
        auto inst = ProblemInstance(ExponentVector(m), static_cast<int>(k), Configuration(z));
        const auto t = safe_point(rng, k, z);
        const auto r = bethe_residual(t, inst);
        // ln Φ is holomorphic with derivative r_i, so ∂_x Re = Re r_i and ∂_y Re = -Im r_i.
        for (std::size_t i = 0; i < k; ++i) {
            auto tp = t, tm = t;
            tp[i] += h;
            tm[i] -= h;
            const double dx = (real_log_form(tp, z, m) - real_log_form(tm, z, m)) / (2 * h);
            tp = t;
            tm = t;
            tp[i] += Complex(0, h);
            tm[i] -= Complex(0, h);
            const double dy = (real_log_form(tp, z, m) - real_log_form(tm, z, m)) / (2 * h);
            const double scale = 1.0 + std::abs(r[i]);
            CHECK(std::abs(dx - r[i].real()) < 1e-6 * scale);
            CHECK(std::abs(dy + r[i].imag()) < 1e-6 * scale);
        }
        const auto hess = hessian_ln_phi(t, inst);
        const auto fd = oracle::residual_jacobian_fd({t.begin(), t.end()}, zc, m);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                const Complex hv = hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                CHECK(std::abs(hv - fd[i][j]) < 1e-6 * (1.0 + std::abs(hv)));
                CHECK(std::abs(hv - hess(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))) == 0.0);
            }
    }
}

TEST_CASE("residual is permutation equivariant (exact)") {
    auto inst = exact_instance({2, 1, 3}, 4, {q(0), q(1), q(-3, 2)});
    const std::vector<Rational> t{q(1, 3), q(5, 7), q(-2, 9), q(11, 4)};
    const auto r = bethe_residual_exact(t, inst);
    std::vector<std::size_t> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Rational> tp(4);
        for (std::size_t i = 0; i < 4; ++i) tp[i] = t[perm[i]];
        const auto rp = bethe_residual_exact(tp, inst);
        for (std::size_t i = 0; i < 4; ++i) CHECK(rp[i] == r[perm[i]]);
    }
}

TEST_CASE("symmetric coordinates") {
    const std::vector<Complex> a{2.0, 3.0};
    auto e = elementary_symmetric<Complex>(a);
    CHECK(e == std::vector<Complex>{5.0, 6.0});
    const std::vector<Rational> ones{q(1), q(1), q(1)};
    CHECK(elementary_symmetric<Rational>(ones) == std::vector<Rational>{q(3), q(3), q(1)});

    const auto [r1, r2] = oracle::quadratic_roots(1.0, -1.0, 1.0 / 3.0);
    const std::vector<Complex> roots{r1, r2};
    e = elementary_symmetric<Complex>(roots);
    CHECK(std::abs(e[0] - 1.0) < 1e-14);
    CHECK(std::abs(e[1] - 1.0 / 3.0) < 1e-14);

    const std::vector<Complex> lam{Complex(1.5, -0.5), Complex(0.25, 2.0), Complex(-1.0, 0.0)};
    const auto back = elementary_symmetric<Complex>(roots_from_lambda(lam));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(back[i] - lam[i]) < 1e-12);
}

TEST_CASE("orbit canonicalization and dedup") {
    const std::vector<Complex> t{0.7, 0.3};
    const auto o = canonical_orbit(t);
    CHECK(o.t == std::vector<Complex>{0.3, 0.7});
    CHECK(std::abs(o.lambda[0] - 1.0) < 1e-15);

    const std::vector<Complex> a{Complex(1, 2), Complex(-1, 0.5), Complex(1, -1)};
    std::vector<Complex> b{a[2], a[0], a[1]};
    CHECK(canonical_orbit(a).t == canonical_orbit(b).t);
    b = {a[1], a[2], a[0]};
    CHECK(canonical_orbit(a).t == canonical_orbit(b).t);

    const Configuration z(std::vector<Complex>{0.0, 1.0, 2.0});
    auto near = a;
    near[0] += 1e-10;
    std::vector<CriticalPoint> pts{canonical_orbit(a), canonical_orbit(near), canonical_orbit(std::vector<Complex>{
                                                                                  Complex(0.5, 0.5), 1.5, Complex(0, -2)})};
    CHECK(dedup_orbits(pts, z, 1e-6).size() == 2);
    auto far = a;
    far[0] += 1e-2;
    pts = {canonical_orbit(a), canonical_orbit(far)};
    CHECK(dedup_orbits(pts, z, 1e-6).size() == 2);
    const auto merged = dedup_orbits({canonical_orbit(near), canonical_orbit(a)}, z, 1e-6);
    REQUIRE(merged.size() == 1);
}

TEST_CASE("regime classification") {
    auto r = classify_regime(ExponentVector({1, 1, 1}), 1);
    CHECK(r.regime == Regime::IsolatedPoints);
    CHECK(r.expected_count == 2);
    CHECK(classify_regime(ExponentVector({1, 1, 1}), 2).regime == Regime::NoCriticalEqualExponents);
    CHECK(classify_regime(ExponentVector({1, 1}), 4).regime == Regime::NoCriticalNegativeDual);
    r = classify_regime(ExponentVector({1, 1, 1}), 3);
    CHECK(r.regime == Regime::CriticalLines);
    CHECK(r.expected_count == 2);
    r = classify_regime(ExponentVector({1, 1}), 3);
    CHECK(r.regime == Regime::CriticalLines);
    CHECK(r.expected_count == 1);

    for (const auto reg : {Regime::IsolatedPoints, Regime::NoCriticalEqualExponents, Regime::CriticalLines,
                           Regime::NoCriticalNegativeDual})
        CHECK(parse_regime(to_string(reg)) == reg);
    CHECK_FALSE(parse_regime("nonsense").has_value());
}

TEST_CASE("isolated points only while l(m) - 2k > -2") {
    for (int n = 1; n <= 4; ++n)
        for (int total = n; total <= 4 * n; ++total) {
            std::vector<int> m(static_cast<std::size_t>(n), 1);
            int extra = total - n;
            for (auto& x : m) {
                const int add = std::min(extra, 3);
                x += add;
                extra -= add;
            }
            const ExponentVector mv(m);
            for (int k = 0; k <= total + 3; ++k) {
                const auto reg = classify_regime(mv, k).regime;
                if (total - 2 * k > -2) CHECK(reg != Regime::CriticalLines);
                const int dual = total + 1 - k;
                CHECK((reg == Regime::CriticalLines) == (dual >= 0 && dual < k));
            }
        }
}

TEST_CASE("two-point closed form: worked cases") {
    auto s = n2_closed_form(q(1), q(1), 1);
    CHECK(s.which == N2Case::Unique);
    REQUIRE(s.lambda.size() == 1);
    CHECK(s.lambda[0] == q(1, 2));

    s = n2_closed_form(q(2), q(2), 2);
    CHECK(s.which == N2Case::Unique);
    CHECK(s.lambda == std::vector<Rational>{q(1), q(1, 3)});

    s = n2_closed_form(q(1), q(1), 2);
    CHECK(s.which == N2Case::Line);
    CHECK(s.rank == 1);
    CHECK(s.has_solution);
    CHECK(s.direction.size() == 2);

    s = n2_closed_form(q(3), q(1), 2);
    CHECK(s.which == N2Case::InArrangement);
    CHECK(s.lands_in_arrangement);

    CHECK(n2_arrangement_hit(std::vector<Rational>{q(1), q(0)}) == std::string("root at z_1 = 0"));
    CHECK(n2_arrangement_hit(std::vector<Rational>{q(2), q(1)}) == std::string("root at z_2 = 1"));
    CHECK(n2_arrangement_hit(std::vector<Rational>{q(1), q(1, 4)}) == std::string("repeated root"));
    CHECK_FALSE(n2_arrangement_hit(std::vector<Rational>{q(1), q(1, 3)}).has_value());
}

TEST_CASE("two-point closed form: case sweep over integer exponents") {
    int arrangement_cases = 0;
    for (int m1 = 1; m1 <= 5; ++m1)
        for (int m2 = 1; m2 <= 5; ++m2)
            for (int k = 1; k <= m1 + m2 + 4; ++k) {
                const auto s = n2_closed_form(q(m1), q(m2), k);
                const int above = (k > m1) + (k > m2);
                if (above == 0) {
                    CHECK(s.which == N2Case::Unique);
                    // The k! points from the roots satisfy the critical-point system at z = (0, 1).
                    auto inst = ProblemInstance(ExponentVector({m1, m2}), k, Configuration(std::vector<Complex>{0.0, 1.0}));
                    const auto t = n2_points(s.lambda, 0.0, 1.0);
                    double worst = 0.0;
                    for (const auto& r : bethe_residual(t, inst)) worst = std::max(worst, std::abs(r));
                    CHECK(relative_residual(t, inst) < 1e-10);
                    // Shifting to another pair of points is affine in t.
                    auto moved = ProblemInstance(ExponentVector({m1, m2}), k,
                                                 Configuration(std::vector<Complex>{Complex(2, 1), Complex(-1, 3)}));
                    CHECK(relative_residual(n2_points(s.lambda, Complex(2, 1), Complex(-1, 3)), moved) < 1e-10);
                } else if (above == 1) {
                    CHECK(s.which == N2Case::InArrangement);
                    // Either the unique solution sits on the arrangement, or (when the dual index
                    // drops below k) the system has no solution at all. Both leave no critical point.
                    if (m1 + m2 + 1 - k >= k) {
                        CHECK(s.has_solution);
                        CHECK(s.rank == static_cast<std::size_t>(k));
                        CHECK(s.lands_in_arrangement);
                        ++arrangement_cases;
                    } else {
                        CHECK_FALSE(s.has_solution);
                        CHECK(s.rank == static_cast<std::size_t>(k - 1));
                    }
                } else if (k <= m1 + m2 + 1) {
                    CHECK(s.which == N2Case::Line);
                    CHECK(s.rank == static_cast<std::size_t>(k - 1));
                } else {
                    CHECK(s.which == N2Case::InArrangementBeyond);
                    CHECK(s.lands_in_arrangement);
                    ++arrangement_cases;
                }
            }
    CHECK(arrangement_cases >= 20);
}
