#include "bethe/fuchsian.hpp"
#include "bethe/solver.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace bethe;

namespace {

Configuration exact_config(std::vector<Rational> z) { return Configuration(std::move(z)); }

std::vector<Complex> generic(std::size_t n, std::uint64_t seed) {
    auto z = oracle::generic_points(n, seed);
    return {z.begin(), z.end()};
}

double cdist(const ComplexPolynomial& a, const ComplexPolynomial& b) { return (a - b).norm(); }

ComplexPolynomial cpoly(std::vector<Complex> c) { return ComplexPolynomial(std::move(c)); }

}  // namespace

TEST_CASE("F and G from points and exponents") {
    auto [F, G] = build_fg(std::vector<Rational>{Rational(0), Rational(1)}, ExponentVector({1, 1}));
    CHECK(F == RationalPolynomial(std::vector<Rational>{0, -1, 1}));
    CHECK(G == RationalPolynomial(std::vector<Rational>{1, -2}));

    const Complex c(0.3, 1.7);
    auto [Fc, Gc] = build_fg(std::vector<Complex>{0.0, 1.0, c}, ExponentVector({1, 1, 1}));
    // Residue of G/F at z_j is G(z_j)/F'(z_j) = -m_j.
    for (Complex zj : {Complex(0.0), Complex(1.0), c})
        CHECK(std::abs(Gc(zj) / Fc.derivative()(zj) + 1.0) < 1e-14);
    // G = -(F' ) when every exponent is 1.
    CHECK(cdist(Gc, -1.0 * Fc.derivative()) < 1e-14);

    CHECK_THROWS_AS(build_fg(std::vector<Rational>{Rational(2), Rational(2)}, ExponentVector({1, 1})), std::domain_error);
}

TEST_CASE("associated equation of the two-point instance") {
    const auto z = exact_config({Rational(0), Rational(1)});
    const ExponentVector m({1, 1});
    const std::vector<Rational> lam{Rational(1, 2)};
    const auto e = associated_equation_exact(lam, z, m);
    CHECK(e.H == RationalPolynomial::constant(Rational(2)));

    const std::vector<Complex> t{0.5};
    const auto ef = associated_equation(t, z, m);
    CHECK(std::abs(ef.H(0.0) - 2.0) < 1e-14);
    CHECK(ef.H.degree() <= 0);

    const std::vector<Complex> off{0.6};
    CHECK_THROWS_AS(associated_equation(off, z, m), NotCriticalError);
    const std::vector<Rational> off_exact{Rational(3, 5)};
    CHECK_THROWS_AS(associated_equation_exact(off_exact, z, m), NotCriticalError);
}

TEST_CASE("three-point example: H = -G/(x - alpha)") {
    const Configuration z(std::vector<Complex>{0.0, 1.0, 2.0});
    const ExponentVector m({1, 1, 1});
    const auto [a1, a2] = oracle::quadratic_roots(3.0, -6.0, 2.0);
    for (Complex alpha : {a1, a2}) {
        const std::vector<Complex> t{alpha};
        const auto e = associated_equation(t, z, m);
        CHECK(e.H.degree() <= 1);
        auto [q, r] = divmod(-1.0 * e.G, cpoly({-alpha, 1.0}));
        CHECK(cdist(e.H, q) < 1e-12);
    }
}

TEST_CASE("indicial roots") {
    auto r = indicial_roots(-3.0, 0.0);
    CHECK(std::abs(r.first) < 1e-15);
    CHECK(std::abs(r.second - 4.0) < 1e-15);
    r = indicial_roots(1.0, 0.0);
    CHECK(std::abs(r.first) < 1e-15);
    CHECK(std::abs(r.second) < 1e-15);
    // Generic quadratic against the quadratic formula.
    const Complex p0(0.3, -1.2), q0(2.5, 0.7);
    const auto [x1, x2] = oracle::quadratic_roots(1.0, p0 - 1.0, q0);
    r = indicial_roots(p0, q0);
    const bool same = (std::abs(r.first - x1) < 1e-12 && std::abs(r.second - x2) < 1e-12) ||
                      (std::abs(r.first - x2) < 1e-12 && std::abs(r.second - x1) < 1e-12);
    CHECK(same);
    CHECK((r.first.real() < r.second.real() ||
           (r.first.real() == r.second.real() && r.first.imag() <= r.second.imag())));
}

TEST_CASE("exponent table and the Fuchs relation") {
    const auto ex = expected_exponents(ExponentVector({1, 1}), 1);
    CHECK(ex.finite[0].second == 2.0);
    CHECK(ex.infinity.first == -2.0);
    CHECK(ex.infinity.second == -1.0);
    CHECK(std::abs(ex.fuchs_sum - 1.0) < 1e-15);
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 6; ++k) {
            std::vector<int> m;
            for (int l = 0; l < n; ++l) m.push_back(1 + (l * 7 + k) % 4);
            CHECK(std::abs(expected_exponents(ExponentVector(m), k).fuchs_sum - static_cast<double>(n - 1)) < 1e-12);
        }
    const auto eq = expected_exponents(ExponentVector({1, 1, 1}), 2);
    CHECK(eq.infinity.first == eq.infinity.second);
}

TEST_CASE("exponents computed from solver equations match the table") {
    for (const auto& [m, k] : std::vector<std::pair<std::vector<int>, int>>{{{1, 1, 1}, 1}, {{2, 1, 2}, 2}, {{1, 1, 1, 1}, 2}}) {
        const ProblemInstance inst(ExponentVector(m), k, Configuration(generic(m.size(), 3)));
        for (const auto& o : solve_all(inst).orbits) {
            const auto e = associated_equation(o.t, inst.z(), inst.m());
            const auto got = exponents(e, inst.z());
            const auto want = expected_exponents(inst.m(), k);
            for (std::size_t j = 0; j < m.size(); ++j) {
                CHECK(std::abs(got.finite[j].first - want.finite[j].first) < 1e-8);
                CHECK(std::abs(got.finite[j].second - want.finite[j].second) < 1e-8);
            }
            CHECK(std::abs(got.infinity.first - want.infinity.first) < 1e-8);
            CHECK(std::abs(got.infinity.second - want.infinity.second) < 1e-8);
            CHECK(std::abs(got.fuchs_sum - static_cast<double>(m.size() - 1)) < 1e-8);
        }
    }
}

TEST_CASE("polynomial solutions of x(x-1)u'' - (2x-1)u' + 2u = 0") {
    const auto z = exact_config({Rational(0), Rational(1)});
    const ExponentVector m({1, 1});
    const std::vector<Rational> lam{Rational(1, 2)};
    const auto e = associated_equation_exact(lam, z, m);

    auto d1 = polynomial_solutions(e, 1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == RationalPolynomial(std::vector<Rational>{Rational(-1, 2), 1}));

    auto d2 = polynomial_solutions(e, 2);
    REQUIRE(d2.size() == 2);
    CHECK(d2[0] == RationalPolynomial::monomial(2));
    CHECK(d2[1] == RationalPolynomial(std::vector<Rational>{Rational(-1, 2), 1}));

    const std::vector<Complex> t{0.5};
    const auto ef = associated_equation(t, z, m);
    auto f2 = polynomial_solutions(ef, 2);
    REQUIRE(f2.size() == 2);
    CHECK(cdist(f2[0], cpoly({0.0, 0.0, 1.0})) < 1e-12);
    CHECK(cdist(f2[1], cpoly({-0.5, 1.0})) < 1e-12);

    auto wrong = e;
    wrong.H = wrong.H + RationalPolynomial::constant(Rational(1));
    CHECK(polynomial_solutions(wrong, 1).empty());
    auto wrongf = ef;
    wrongf.H = wrongf.H + ComplexPolynomial::constant(1.0);
    CHECK(polynomial_solutions(wrongf, 1).empty());
}

TEST_CASE("Wronskians") {
    const ComplexPolynomial x = cpoly({0.0, 1.0});
    CHECK(cdist(wronskian(x, ComplexPolynomial::constant(1.0)), ComplexPolynomial::constant(1.0)) < 1e-15);
    const RationalPolynomial x2 = RationalPolynomial::monomial(2);
    const RationalPolynomial u2(std::vector<Rational>{Rational(-1, 2), 1});
    CHECK(wronskian(x2, u2) == RationalPolynomial(std::vector<Rational>{0, -1, 1}));
    CHECK(wronskian(u2, u2).is_zero());
    CHECK(wronskian(u2, x2) == Rational(-1) * wronskian(x2, u2));
}

TEST_CASE("verify_all_polynomial on the worked equation") {
    const Configuration z(std::vector<Complex>{0.0, 1.0});
    const ExponentVector m({1, 1});
    const std::vector<Complex> t{0.5};
    const auto v = verify_all_polynomial(associated_equation(t, z, m), z);
    CHECK(v.k1 == 2);
    CHECK(v.k2 == 1);
    CHECK(v.wronskian_error < 1e-12);
    CHECK(v.generic_simple_roots);
    CHECK(v.dual_degree == 2);
    CHECK(v.dual_residual < 1e-10);
    const auto nd = nondegenerate_check(v, z);
    CHECK(nd.nondegenerate);
}

TEST_CASE("nondegeneracy failures") {
    const Configuration z(std::vector<Complex>{0.0, 1.0});
    SolutionSpace v;
    v.u1 = cpoly({0.0, 0.0, 1.0});
    v.u2 = cpoly({0.0, 1.0});
    auto nd = nondegenerate_check(v, z);
    CHECK_FALSE(nd.nondegenerate);
    CHECK(nd.reasons.size() >= 1);

    v.u1 = cpoly({0.25, 0.0, 1.0});
    v.u2 = cpoly({-1.0, 1.0});
    nd = nondegenerate_check(v, z);
    CHECK_FALSE(nd.nondegenerate);
}

TEST_CASE("round trip over solver orbits") {
    const std::vector<std::pair<std::vector<int>, int>> cases{{{1, 1, 1}, 1}, {{2, 2}, 2}, {{1, 1, 1, 1}, 2},
                                                              {{2, 1, 2}, 2}, {{1, 2, 3}, 2}, {{3, 1, 2, 1}, 3}};
    for (const auto& [m, k] : cases)
        for (std::uint64_t seed = 40; seed < 43; ++seed) {
            const ProblemInstance inst(ExponentVector(m), k, Configuration(generic(m.size(), seed)));
            const auto rep = solve_all(inst);
            CHECK(rep.found == rep.expected);
            std::vector<ComplexPolynomial> hs;
            for (const auto& o : rep.orbits) {
                const auto e = associated_equation(o.t, inst.z(), inst.m());
                CHECK(e.H.degree() <= static_cast<int>(m.size()) - 2);
                const auto v = verify_all_polynomial(e, inst.z());
                CHECK(v.k2 == k);
                CHECK(v.k1 == inst.l() + 1 - k);
                CHECK(v.wronskian_error < 1e-8);
                CHECK(v.dual_residual < 1e-8);
                CHECK(nondegenerate_check(v, inst.z()).nondegenerate);
                hs.push_back(e.H);
            }
            for (std::size_t a = 0; a < hs.size(); ++a)
                for (std::size_t b = a + 1; b < hs.size(); ++b) CHECK(cdist(hs[a], hs[b]) > 1e-6);
        }
}

TEST_CASE("critical-line equations: degree-k solution plus the dual one") {
    const ProblemInstance inst(ExponentVector({1, 1, 1}), 3, Configuration(std::vector<Complex>{0.0, 1.0, 2.0}));
    const auto lines = critical_lines(inst);
    REQUIRE(lines.lines.size() == 2);
    for (const auto& line : lines.lines) {
        CHECK(line.u1.degree() == 3);
        CHECK(line.u2.degree() == 1);
        const auto e = associated_equation(line.source_orbit->t, inst.z(), inst.m());
        const auto v = verify_all_polynomial(e, inst.z());
        CHECK(v.k1 == 3);
        CHECK(v.k2 == 1);
    }
    // Antiderivative construction when l(m) + 1 - k = 0.
    const ProblemInstance anti(ExponentVector({1, 2}), 4, Configuration(std::vector<Complex>{0.0, 1.0}));
    const auto al = critical_lines(anti);
    REQUIRE(al.lines.size() == 1);
    CHECK(al.lines[0].u2.degree() == 0);
    CHECK(cdist(al.lines[0].u1.derivative(), 4.0 * wronskian_target(anti.z(), anti.m())) < 1e-12);
}

TEST_CASE("counting univalued equations") {
    using P = std::pair<Rational, Rational>;
    // m = (1,1,1), k = 3: exponents (0,2) at each point and (-3,-1) at infinity.
    std::vector<P> finite{{0, 2}, {0, 2}, {0, 2}};
    CHECK(count_univalued_equations(finite, P{-3, -1}) == 2);
    // Equal exponents at infinity: m = (1,1,1), k = 2.
    CHECK(count_univalued_equations(finite, P{-2, -2}) == 0);
    // Two points, k <= min(m1, m2): exactly one.
    std::vector<P> two{{0, 4}, {0, 3}};
    for (int k = 0; k <= 2; ++k) CHECK(count_univalued_equations(two, P{Rational(-k), Rational(k - 5 - 1)}) == 1);
    // Fuchs relation violated.
    CHECK_THROWS_AS(count_univalued_equations(finite, P{-3, 0}), std::domain_error);

    CHECK(count_nondegenerate_spaces(ExponentVector({1, 1, 1}), 3, 1) == 2);
    CHECK_THROWS_AS(count_nondegenerate_spaces(ExponentVector({1, 1, 1}), 3, 2), std::domain_error);

    // Dual-count equality on a small sweep: lines regime count vs equation count.
    for (int n = 1; n <= 3; ++n)
        for (int a = 1; a <= 3; ++a)
            for (int k = 0; k <= 7; ++k) {
                std::vector<int> m(static_cast<std::size_t>(n), a);
                const int l = n * a;
                const int dual = l + 1 - k;
                if (dual < 0 || dual >= k) continue;
                std::vector<P> fin(m.size(), P{0, a + 1});
                CHECK(count_univalued_equations(fin, P{Rational(-k), Rational(k - l - 1)}) ==
                      oracle::clebsch_gordan_multiplicity(m, dual));
            }
}
