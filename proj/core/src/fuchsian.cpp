#include "bethe/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bethe {

template <typename T>
std::pair<Polynomial<T>, Polynomial<T>> build_fg(const std::vector<T>& z, const ExponentVector& m) {
    if (z.size() != m.n()) throw std::invalid_argument("build_fg: z and m lengths differ");
    for (std::size_t a = 0; a < z.size(); ++a)
        for (std::size_t b = a + 1; b < z.size(); ++b)
            if (ScalarTraits<T>::is_zero(z[a] - z[b]))
                throw std::domain_error("build_fg: z_" + std::to_string(a + 1) + " and z_" + std::to_string(b + 1) +
                                        " coincide");
    Polynomial<T> F = Polynomial<T>::from_roots(std::span<const T>(z));
    Polynomial<T> G;
    for (std::size_t j = 0; j < z.size(); ++j) {
        std::vector<T> others;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (i != j) others.push_back(z[i]);
        G = G + from_int<T>(-m[j]) * Polynomial<T>::from_roots(std::span<const T>(others));
    }
    return {F, G};
}

template std::pair<RationalPolynomial, RationalPolynomial> build_fg(const std::vector<Rational>&, const ExponentVector&);
template std::pair<ComplexPolynomial, ComplexPolynomial> build_fg(const std::vector<Complex>&, const ExponentVector&);

FuchsianEquation<Complex> associated_equation(std::span<const Complex> t0, const Configuration& z,
                                              const ExponentVector& m, double rel_tol) {
    auto [F, G] = build_fg(z.points(), m);
    const ComplexPolynomial u = ComplexPolynomial::from_roots(t0);
    const ComplexPolynomial dividend = -(F * u.derivative().derivative() + G * u.derivative());
    auto [H, rem] = divmod(dividend, u);
    const double scale = std::max(dividend.norm(), 1e-300);
    const double rel = rem.norm() / scale;
    if (rel > rel_tol) {
        std::ostringstream os;
        os << "not a critical point: division remainder " << rel << " exceeds " << rel_tol;
        throw NotCriticalError(os.str(), rel);
    }
    // deg H <= n - 2 holds identically; drop round-off above it.
    std::vector<Complex> hc(H.coeffs());
    const std::size_t max_len = m.n() >= 2 ? m.n() - 1 : 0;
    if (hc.size() > max_len) hc.resize(max_len);
    return {F, G, ComplexPolynomial(std::move(hc)), m, static_cast<int>(t0.size())};
}

FuchsianEquation<Rational> associated_equation_exact(std::span<const Rational> lambda, const Configuration& z,
                                                     const ExponentVector& m) {
    auto [F, G] = build_fg(z.exact_points(), m);
    const std::size_t k = lambda.size();
    std::vector<Rational> c(k + 1);
    c[k] = 1;
    for (std::size_t j = 1; j <= k; ++j) c[k - j] = (j % 2 == 0) ? Rational(lambda[j - 1]) : Rational(-lambda[j - 1]);
    const RationalPolynomial u(std::move(c));
    const RationalPolynomial dividend = -(F * u.derivative().derivative() + G * u.derivative());
    auto [H, rem] = divmod(dividend, u);
    if (!rem.is_zero()) throw NotCriticalError("not a critical point: exact division leaves a nonzero remainder", 1.0);
    if (H.degree() > static_cast<int>(m.n()) - 2)
        throw NotCriticalError("not a critical point: H has degree above n - 2", 1.0);
    return {F, G, H, m, static_cast<int>(k)};
}

namespace {

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

ExponentPair ordered(Complex a, Complex b) {
    if (complex_less(b, a)) std::swap(a, b);
    return {a, b};
}

// Rows of `basis` are coefficient vectors (ascending degree). Returns a reduced
// echelon form with pivots taken from the highest degree downwards.
std::vector<ComplexPolynomial> canonical_basis(Eigen::MatrixXcd basis, double rel_tol) {
    const Eigen::Index r = basis.rows();
    const Eigen::Index len = basis.cols();
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pivots;  // (row, column)
    Eigen::Index row = 0;
    const double global = basis.cwiseAbs().maxCoeff();
    for (Eigen::Index col = len - 1; col >= 0 && row < r; --col) {
        Eigen::Index best = -1;
        double best_abs = rel_tol * global;
        for (Eigen::Index i = row; i < r; ++i)
            if (std::abs(basis(i, col)) > best_abs) {
                best_abs = std::abs(basis(i, col));
                best = i;
            }
        if (best < 0) {
            for (Eigen::Index i = row; i < r; ++i) basis(i, col) = 0.0;
            continue;
        }
        basis.row(row).swap(basis.row(best));
        basis.row(row) /= basis(row, col);
        for (Eigen::Index i = 0; i < r; ++i)
            if (i != row) {
                basis.row(i) -= basis(i, col) * basis.row(row);
                basis(i, col) = 0.0;
            }
        pivots.emplace_back(row, col);
        ++row;
    }
    std::vector<ComplexPolynomial> out;
    for (auto [pr, pc] : pivots) {
        std::vector<Complex> c(static_cast<std::size_t>(pc) + 1);
        for (Eigen::Index j = 0; j <= pc; ++j) c[static_cast<std::size_t>(j)] = basis(pr, j);
        c.back() = 1.0;
        // Zero the pivot columns of the other basis elements exactly.
        for (auto [qr, qc] : pivots)
            if (qr != pr && qc < pc) c[static_cast<std::size_t>(qc)] = 0.0;
        out.emplace_back(std::move(c));
    }
    return out;
}

template <typename T>
std::vector<T> apply_operator_to_monomial(const FuchsianEquation<T>& e, int j, std::size_t rows) {
    const Polynomial<T> xj = Polynomial<T>::monomial(static_cast<std::size_t>(j));
    const Polynomial<T> image = e.F * xj.derivative().derivative() + e.G * xj.derivative() + e.H * xj;
    std::vector<T> col(rows, T(0));
    for (std::size_t i = 0; i < image.size() && i < rows; ++i) col[i] = image.coeffs()[i];
    return col;
}

std::size_t operator_rows(std::size_t n, int d) { return static_cast<std::size_t>(d) + n + 1; }

}  // namespace

ExponentPair indicial_roots(Complex p0, Complex q0) {
    // ρ² + bρ + c with b = p0 - 1, c = q0; stable quadratic formula.
    const Complex b = p0 - 1.0;
    const Complex disc = std::sqrt(b * b - 4.0 * q0);
    Complex r1, r2;
    const Complex s = (std::real(std::conj(b) * disc) >= 0) ? -(b + disc) : -(b - disc);
    if (std::abs(s) == 0.0) {
        r1 = r2 = 0.0;
    } else {
        r1 = s / 2.0;
        r2 = (2.0 * q0) / s;
    }
    return ordered(r1, r2);
}

ExponentTable exponents(const FuchsianEquation<Complex>& e, const Configuration& z) {
    ExponentTable table;
    const ComplexPolynomial dF = e.F.derivative();
    for (std::size_t j = 0; j < z.n(); ++j) {
        const Complex p0 = e.G(z[j]) / dF(z[j]);
        // H / F has at most a simple pole at z_j, so q0 vanishes.
        table.finite.push_back(indicial_roots(p0, 0.0));
    }
    const std::size_t n = z.n();
    const Complex lead = e.F.leading();
    const Complex P = e.G.coeff(n - 1) / lead;
    const Complex Q = n >= 2 ? e.H.coeff(n - 2) / lead : Complex{};
    table.infinity = indicial_roots(2.0 - P, Q);
    Complex sum = table.infinity.first + table.infinity.second;
    for (const auto& p : table.finite) sum += p.first + p.second;
    table.fuchs_sum = sum;
    return table;
}

ExponentTable expected_exponents(const ExponentVector& m, int k) {
    ExponentTable table;
    Complex sum = 0.0;
    for (int mj : m) {
        table.finite.push_back({0.0, static_cast<double>(mj + 1)});
        sum += static_cast<double>(mj + 1);
    }
    table.infinity = ordered(static_cast<double>(-k), static_cast<double>(k - m.total() - 1));
    sum += table.infinity.first + table.infinity.second;
    table.fuchs_sum = sum;
    return table;
}

std::vector<ComplexPolynomial> polynomial_solutions(const FuchsianEquation<Complex>& e, int d, double rel_tol) {
    if (d < 0) return {};
    const std::size_t rows = operator_rows(e.m.n(), d);
    const auto cols = static_cast<Eigen::Index>(d + 1);
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows), cols);
    Eigen::VectorXd col_scale(cols);
    for (int j = 0; j <= d; ++j) {
        const auto col = apply_operator_to_monomial(e, j, rows);
        double nrm = 0.0;
        for (const auto& x : col) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        col_scale(j) = nrm > 0 ? nrm : 1.0;
        for (std::size_t i = 0; i < rows; ++i) a(static_cast<Eigen::Index>(i), j) = col[i] / col_scale(j);
    }
    const Eigen::MatrixXcd kernel = numerical_nullspace(a, rel_tol);
    if (kernel.cols() == 0) return {};
    Eigen::MatrixXcd rows_basis = kernel.transpose();
    for (Eigen::Index j = 0; j < cols; ++j) rows_basis.col(j) /= col_scale(j);
    return canonical_basis(rows_basis, rel_tol);
}

std::vector<RationalPolynomial> polynomial_solutions(const FuchsianEquation<Rational>& e, int d) {
    if (d < 0) return {};
    const std::size_t rows = operator_rows(e.m.n(), d);
    RationalMatrix a(rows, static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
        const auto col = apply_operator_to_monomial(e, j, rows);
        for (std::size_t i = 0; i < rows; ++i) a(i, static_cast<std::size_t>(j)) = col[i];
    }
    const auto kernel = nullspace(a);
    if (kernel.empty()) return {};
    // Reverse the column order so that pivots are taken from the top degree.
    RationalMatrix b(kernel.size(), static_cast<std::size_t>(d) + 1);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (int j = 0; j <= d; ++j) b(i, static_cast<std::size_t>(d - j)) = kernel[i][static_cast<std::size_t>(j)];
    rref(b);
    std::vector<RationalPolynomial> out;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
        for (int j = 0; j <= d; ++j) c[static_cast<std::size_t>(j)] = b(i, static_cast<std::size_t>(d - j));
        RationalPolynomial p(std::move(c));
        if (!p.is_zero()) out.push_back(std::move(p));
    }
    return out;
}

ComplexPolynomial wronskian_target(const Configuration& z, const ExponentVector& m) {
    ComplexPolynomial w = ComplexPolynomial::constant(1.0);
    for (std::size_t l = 0; l < z.n(); ++l) {
        const ComplexPolynomial factor(std::vector<Complex>{-z[l], 1.0});
        for (int p = 0; p < m[l]; ++p) w = w * factor;
    }
    return w;
}

namespace {

double relative_difference(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

double min_root_gap(const std::vector<Complex>& r) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) gap = std::min(gap, std::abs(r[i] - r[j]));
    return gap;
}

// Fixed coefficient for the "generic" member u1 + c u2 of a solution space.
constexpr Complex kGenericMix{0.7310585786300049, 0.4142135623730950};

}  // namespace

SolutionSpace verify_all_polynomial(const FuchsianEquation<Complex>& e, const Configuration& z, double rel_tol) {
    const int l = e.m.total();
    const int k = e.k;
    const int dual = l + 1 - k;
    if (dual < 0) throw VerificationFailure("l(m) + 1 - k is negative: no polynomial-only equation");
    if (dual == k) throw VerificationFailure("equal exponents at infinity: solutions are multivalued");

    const int top = std::max(k, dual);
    const int low = std::min(k, dual);
    auto sols = polynomial_solutions(e, top, rel_tol);
    if (sols.size() != 2) {
        std::ostringstream os;
        os << "expected a 2-dimensional polynomial solution space up to degree " << top << ", found dimension "
           << sols.size();
        throw VerificationFailure(os.str());
    }
    SolutionSpace v;
    v.u1 = sols[0];
    v.u2 = sols[1];
    v.k1 = v.u1.degree();
    v.k2 = v.u2.degree();
    if (v.k1 != top || v.k2 != low) {
        std::ostringstream os;
        os << "solution degrees (" << v.k1 << ", " << v.k2 << ") differ from (" << top << ", " << low << ")";
        throw VerificationFailure(os.str());
    }

    const ComplexPolynomial w = wronskian(v.u1, v.u2).trimmed(1e-12);
    if (w.degree() != l) {
        std::ostringstream os;
        os << "Wronskian degree " << w.degree() << " differs from l(m) = " << l;
        throw VerificationFailure(os.str());
    }
    v.wronskian = w.monic();
    v.wronskian_error = relative_difference(v.wronskian, wronskian_target(z, e.m));
    if (v.wronskian_error > rel_tol) {
        std::ostringstream os;
        os << "Wronskian differs from the product of (x - z_l)^m_l by " << v.wronskian_error;
        throw VerificationFailure(os.str());
    }

    const double mix_scale = v.u2.norm() > 0 ? v.u1.norm() / v.u2.norm() : 1.0;
    const ComplexPolynomial generic = v.u1 + (kGenericMix * mix_scale) * v.u2;
    const auto generic_roots = roots(generic);
    const double root_scale = std::max(1.0, z.diameter());
    v.generic_min_root_gap = generic_roots.size() > 1 ? min_root_gap(generic_roots) / root_scale : 1.0;
    v.generic_simple_roots = v.generic_min_root_gap > 1e-6;

    v.dual_degree = dual;
    if (dual == 0) {
        v.dual_residual = 0.0;
        v.dual_note = "dual degree 0: constant solution";
    } else {
        const auto dual_roots = dual == low ? roots(v.u2) : generic_roots;
        const ProblemInstance dual_inst(e.m, dual, z);
        try {
            v.dual_residual = relative_residual(dual_roots, dual_inst);
        } catch (const ArrangementError& err) {
            v.dual_residual = std::numeric_limits<double>::infinity();
            v.dual_note = std::string("dual roots touch the arrangement: ") + err.what();
        }
    }
    return v;
}

Nondegeneracy nondegenerate_check(const SolutionSpace& v, const Configuration& z, double rel_margin) {
    Nondegeneracy out;
    const auto r2 = roots(v.u2);
    const double scale = std::max(1.0, z.diameter());
    for (const auto& r : r2) {
        // A common zero of the space is a common root of u1 and u2.
        const double rel = std::abs(v.u1(r)) / std::max(v.u1.norm(), 1e-300);
        if (rel < rel_margin) {
            std::ostringstream os;
            os << "common zero at " << r.real() << (r.imag() < 0 ? "" : "+") << r.imag() << "i";
            out.reasons.push_back(os.str());
        }
        for (std::size_t l = 0; l < z.n(); ++l)
            if (std::abs(r - z[l]) <= rel_margin * scale) {
                out.reasons.push_back("special solution vanishes at z_" + std::to_string(l + 1));
            }
    }
    out.nondegenerate = out.reasons.empty();
    return out;
}

long count_univalued_equations(std::span<const std::pair<Rational, Rational>> finite,
                               const std::pair<Rational, Rational>& infinity) {
    const std::size_t n = finite.size();
    Rational sum = infinity.first + infinity.second;
    for (const auto& [a, b] : finite) sum += a + b;
    if (sum != Rational(static_cast<long>(n) - 1))
        throw std::domain_error("count_univalued_equations: exponents violate the Fuchs relation");

    std::vector<int> m;
    Rational k_rat = 0;
    auto low_high = [](const std::pair<Rational, Rational>& p) {
        return p.first < p.second ? p : std::pair<Rational, Rational>{p.second, p.first};
    };
    for (const auto& p : finite) {
        auto [lo, hi] = low_high(p);
        Rational diff = hi - lo;
        if (!is_integer(diff) || sgn(diff) <= 0)
            throw std::domain_error("count_univalued_equations: exponent difference is not a positive integer");
        m.push_back(static_cast<int>(diff.get_num().get_si()) - 1);
        k_rat -= lo;
    }
    auto [inf_lo, inf_hi] = low_high(infinity);
    Rational inf_diff = inf_hi - inf_lo;
    // Equal exponents at infinity force a logarithmic solution.
    if (sgn(inf_diff) == 0) return 0;
    if (!is_integer(inf_diff) || sgn(inf_diff) < 0)
        throw std::domain_error("count_univalued_equations: exponent difference at infinity is not a positive integer");
    k_rat -= inf_lo;
    if (!is_integer(k_rat)) return 0;
    const long k = k_rat.get_num().get_si();
    const ExponentVector mv(std::move(m));
    const long dual = mv.total() + 1 - k;
    if (k <= dual || dual < 0) return 0;
    return multiplicity_w(mv, static_cast<int>(dual));
}

long count_nondegenerate_spaces(const ExponentVector& m, int k1, int k2) {
    if (k1 <= k2 || k2 < 0) throw std::domain_error("count_nondegenerate_spaces: need k1 > k2 >= 0");
    if (m.total() != k1 + k2 - 1) throw std::domain_error("count_nondegenerate_spaces: l(m) must equal k1 + k2 - 1");
    return multiplicity_w(m, k2);
}

}  // namespace bethe
