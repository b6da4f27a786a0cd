#include "bethe/master_function.hpp"

#include "bethe/polynomial.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bethe {

namespace {

ExponentVector strip_zero_exponents(const ExponentVector& m, std::vector<std::size_t>& dropped) {
    std::vector<int> keep;
    for (std::size_t i = 0; i < m.n(); ++i) {
        if (m[i] < 0) throw std::domain_error("problem instance: exponents must be nonnegative integers");
        if (m[i] == 0)
            dropped.push_back(i);
        else
            keep.push_back(m[i]);
    }
    return ExponentVector(std::move(keep));
}

}  // namespace

ProblemInstance::ProblemInstance(ExponentVector m, int k, Configuration z) : k_(k) {
    if (m.n() != z.n()) throw std::invalid_argument("problem instance: m and z have different lengths");
    if (k < 0) throw std::domain_error("problem instance: k must be nonnegative");
    std::vector<std::size_t> dropped;
    m_ = strip_zero_exponents(m, dropped);
    z_ = dropped.empty() ? std::move(z) : z.without(dropped);
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::IsolatedPoints: return "IsolatedPoints";
        case Regime::NoCriticalEqualExponents: return "NoCriticalEqualExponents";
        case Regime::CriticalLines: return "CriticalLines";
        case Regime::NoCriticalNegativeDual: return "NoCriticalNegativeDual";
    }
    return "?";
}

std::optional<Regime> parse_regime(const std::string& s) {
    for (auto r : {Regime::IsolatedPoints, Regime::NoCriticalEqualExponents, Regime::CriticalLines,
                   Regime::NoCriticalNegativeDual})
        if (to_string(r) == s) return r;
    return std::nullopt;
}

double arrangement_margin(std::span<const Complex> t, const Configuration& z) {
    std::vector<Complex> all(z.points());
    all.insert(all.end(), t.begin(), t.end());
    double diam = 0.0;
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b) diam = std::max(diam, std::abs(all[a] - all[b]));
    return 1e-8 * diam;
}

void check_arrangement(std::span<const Complex> t, const Configuration& z, double margin) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i].real()) || !std::isfinite(t[i].imag()))
            throw ArrangementError("t_" + std::to_string(i + 1) + " is not finite");
        for (std::size_t l = 0; l < z.n(); ++l)
            if (std::abs(t[i] - z[l]) <= margin)
                throw ArrangementError("t_" + std::to_string(i + 1) + " hits z_" + std::to_string(l + 1));
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (std::abs(t[i] - t[j]) <= margin)
                throw ArrangementError("t_" + std::to_string(i + 1) + " hits t_" + std::to_string(j + 1));
    }
}

double arrangement_distance(std::span<const Complex> t, const Configuration& z) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t l = 0; l < z.n(); ++l) d = std::min(d, std::abs(t[i] - z[l]));
        for (std::size_t j = i + 1; j < t.size(); ++j) d = std::min(d, std::abs(t[i] - t[j]));
    }
    return d;
}

std::vector<Complex> bethe_residual(std::span<const Complex> t, const ProblemInstance& inst) {
    check_arrangement(t, inst.z(), arrangement_margin(t, inst.z()));
    std::vector<Complex> r(t.size(), Complex{});
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t l = 0; l < inst.n(); ++l) r[i] -= static_cast<double>(inst.m()[l]) / (t[i] - inst.z()[l]);
        for (std::size_t j = 0; j < t.size(); ++j)
            if (j != i) r[i] += 2.0 / (t[i] - t[j]);
    }
    return r;
}

std::vector<Rational> bethe_residual_exact(std::span<const Rational> t, const ProblemInstance& inst) {
    const auto& z = inst.z().exact_points();
    std::vector<Rational> r(t.size(), Rational(0));
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t l = 0; l < inst.n(); ++l) {
            if (t[i] == z[l]) throw ArrangementError("t_" + std::to_string(i + 1) + " hits z_" + std::to_string(l + 1));
            r[i] -= Rational(inst.m()[l]) / (t[i] - z[l]);
        }
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j == i) continue;
            if (t[i] == t[j]) throw ArrangementError("t_" + std::to_string(i + 1) + " hits t_" + std::to_string(j + 1));
            r[i] += Rational(2) / (t[i] - t[j]);
        }
    }
    return r;
}

double relative_residual(std::span<const Complex> t, const ProblemInstance& inst) {
    const auto r = bethe_residual(t, inst);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double scale = 0.0;
        for (std::size_t l = 0; l < inst.n(); ++l) scale += inst.m()[l] / std::abs(t[i] - inst.z()[l]);
        for (std::size_t j = 0; j < t.size(); ++j)
            if (j != i) scale += 2.0 / std::abs(t[i] - t[j]);
        if (scale > 0) worst = std::max(worst, std::abs(r[i]) / scale);
    }
    return worst;
}

Eigen::MatrixXcd hessian_ln_phi(std::span<const Complex> t, const ProblemInstance& inst) {
    check_arrangement(t, inst.z(), arrangement_margin(t, inst.z()));
    const auto k = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < inst.n(); ++l) {
            const Complex d = t[i] - inst.z()[l];
            h(i, i) += static_cast<double>(inst.m()[l]) / (d * d);
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            if (j == i) continue;
            const Complex d = t[i] - t[j];
            const Complex v = 2.0 / (d * d);
            h(i, j) = v;
            h(i, i) -= v;
        }
    }
    return h;
}

Eigen::MatrixXcd residual_z_jacobian(std::span<const Complex> t, const ProblemInstance& inst) {
    Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(t.size()), static_cast<Eigen::Index>(inst.n()));
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t l = 0; l < inst.n(); ++l) {
            const Complex d = t[i] - inst.z()[l];
            jz(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = -static_cast<double>(inst.m()[l]) / (d * d);
        }
    return jz;
}

std::vector<Complex> roots_from_lambda(std::span<const Complex> lambda) {
    const std::size_t k = lambda.size();
    std::vector<Complex> c(k + 1);
    c[k] = 1.0;
    for (std::size_t j = 1; j <= k; ++j) c[k - j] = (j % 2 == 0 ? 1.0 : -1.0) * lambda[j - 1];
    return roots(ComplexPolynomial(std::move(c)));
}

namespace {

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

CriticalPoint canonical_orbit(std::span<const Complex> t) {
    CriticalPoint cp;
    cp.t.assign(t.begin(), t.end());
    std::sort(cp.t.begin(), cp.t.end(), complex_less);
    cp.lambda = elementary_symmetric<Complex>(cp.t);
    return cp;
}

CriticalPoint make_critical_point(std::span<const Complex> t, const ProblemInstance& inst) {
    CriticalPoint cp = canonical_orbit(t);
    cp.residual_norm = relative_residual(cp.t, inst);
    if (!cp.t.empty()) {
        const Eigen::MatrixXcd h = hessian_ln_phi(cp.t, inst);
        cp.hessian_det = h.determinant();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        const auto& sv = svd.singularValues();
        const double smin = sv(sv.size() - 1);
        cp.hessian_cond = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    } else {
        cp.hessian_det = 1.0;
        cp.hessian_cond = 1.0;
    }
    return cp;
}

OrbitFrame orbit_frame(const Configuration& z, std::span<const CriticalPoint> pts) {
    OrbitFrame f;
    for (const auto& p : z.points()) f.center += p;
    if (z.n() > 0) f.center /= static_cast<double>(z.n());
    double s = 0.0;
    for (const auto& p : z.points()) s = std::max(s, std::abs(p - f.center));
    for (const auto& cp : pts)
        for (const auto& t : cp.t) s = std::max(s, std::abs(t - f.center));
    f.scale = s > 0 ? s : 1.0;
    return f;
}

double orbit_distance(const CriticalPoint& a, const CriticalPoint& b, const OrbitFrame& frame) {
    if (a.t.size() != b.t.size()) return std::numeric_limits<double>::infinity();
    auto normalized = [&](const CriticalPoint& cp) {
        std::vector<Complex> u;
        u.reserve(cp.t.size());
        for (const auto& t : cp.t) u.push_back((t - frame.center) / frame.scale);
        return elementary_symmetric<Complex>(u);
    };
    const auto la = normalized(a);
    const auto lb = normalized(b);
    double d = 0.0;
    for (std::size_t j = 0; j < la.size(); ++j) d = std::max(d, std::abs(la[j] - lb[j]));
    return d;
}

bool lambda_less(const CriticalPoint& a, const CriticalPoint& b) {
    return std::lexicographical_compare(a.lambda.begin(), a.lambda.end(), b.lambda.begin(), b.lambda.end(),
                                        complex_less);
}

std::vector<CriticalPoint> dedup_orbits(std::vector<CriticalPoint> pts, const Configuration& z, double tol) {
    const OrbitFrame frame = orbit_frame(z, pts);
    std::vector<CriticalPoint> kept;
    for (auto& p : pts) {
        auto it = std::find_if(kept.begin(), kept.end(),
                               [&](const CriticalPoint& q) { return orbit_distance(p, q, frame) <= tol; });
        if (it == kept.end())
            kept.push_back(std::move(p));
        else if (p.residual_norm < it->residual_norm)
            *it = std::move(p);
    }
    std::sort(kept.begin(), kept.end(), lambda_less);
    return kept;
}

RegimeLabel classify_regime(const ExponentVector& m, int k) {
    const int dual = m.total() + 1 - k;
    if (dual > k) return {Regime::IsolatedPoints, multiplicity_w(m, k)};
    if (dual == k) return {Regime::NoCriticalEqualExponents, 0};
    if (dual >= 0) return {Regime::CriticalLines, multiplicity_w(m, dual)};
    return {Regime::NoCriticalNegativeDual, 0};
}

std::string to_string(N2Case c) {
    switch (c) {
        case N2Case::Unique: return "unique";
        case N2Case::InArrangement: return "in_arrangement";
        case N2Case::Line: return "line";
        case N2Case::InArrangementBeyond: return "in_arrangement_beyond";
    }
    return "?";
}

std::optional<std::string> n2_arrangement_hit(std::span<const Rational> lambda) {
    const std::size_t k = lambda.size();
    if (k == 0) return std::nullopt;
    std::vector<Rational> c(k + 1);
    c[k] = 1;
    for (std::size_t j = 1; j <= k; ++j) c[k - j] = (j % 2 == 0) ? Rational(lambda[j - 1]) : Rational(-lambda[j - 1]);
    RationalPolynomial p(std::move(c));
    if (sgn(p(Rational(0))) == 0) return std::string("root at z_1 = 0");
    if (sgn(p(Rational(1))) == 0) return std::string("root at z_2 = 1");
    if (gcd(p, p.derivative()).degree() >= 1) return std::string("repeated root");
    return std::nullopt;
}

N2Solution n2_closed_form(const Rational& m1, const Rational& m2, int k) {
    if (k < 0) throw std::domain_error("n2_closed_form: k must be nonnegative");
    N2Solution sol;
    if (k == 0) {
        sol.rank = 0;
        return sol;
    }
    // Unknowns λ_1..λ_k in columns 0..k-1, right-hand side in column k.
    RationalMatrix a(static_cast<std::size_t>(k), static_cast<std::size_t>(k) + 1);
    for (int p = 0; p < k; ++p) {
        const std::size_t row = static_cast<std::size_t>(p);
        const Rational lhs = Rational(p + 1) * (Rational(p) - m1);  // multiplies λ_{k-p-1}
        const Rational rhs = Rational(k - p) * (Rational(k + p - 1) - m1 - m2);  // multiplies λ_{k-p}
        a(row, static_cast<std::size_t>(k - p - 1)) -= rhs;
        if (k - p - 1 == 0)
            a(row, static_cast<std::size_t>(k)) = -lhs;
        else
            a(row, static_cast<std::size_t>(k - p - 2)) += lhs;
    }
    RationalMatrix coeff(a.rows(), static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) coeff(r, c) = a(r, c);
    sol.rank = rank(coeff);
    const std::size_t aug_rank = rank(a);
    if (aug_rank > sol.rank) {
        // Happens in case (ii) once l(m) + 1 - k < k: no λ at all, so no critical points either.
        sol.has_solution = false;
        sol.arrangement_reason = "inconsistent system";
        const Rational kq(k);
        if (is_integer(m1) && is_integer(m2) && ((kq > m1) != (kq > m2)))
            sol.which = N2Case::InArrangement;
        else if (kq > m1 + m2 + 1)
            sol.which = N2Case::InArrangementBeyond;
        else
            sol.which = N2Case::Line;
        return sol;
    }

    RationalMatrix reduced = a;
    auto pivots = rref(reduced);
    sol.lambda.assign(static_cast<std::size_t>(k), Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) sol.lambda[pivots[i]] = reduced(i, static_cast<std::size_t>(k));

    if (sol.rank < static_cast<std::size_t>(k)) {
        auto ns = nullspace(coeff);
        sol.direction = ns.front();
        sol.which = N2Case::Line;
        return sol;
    }

    if (auto hit = n2_arrangement_hit(sol.lambda)) {
        sol.lands_in_arrangement = true;
        sol.arrangement_reason = *hit;
        sol.which = Rational(k) > m1 + m2 + 1 ? N2Case::InArrangementBeyond : N2Case::InArrangement;
    } else {
        sol.which = N2Case::Unique;
    }
    return sol;
}

std::vector<Complex> n2_points(std::span<const Rational> lambda, Complex z1, Complex z2) {
    std::vector<Complex> lc;
    lc.reserve(lambda.size());
    for (const auto& q : lambda) lc.emplace_back(q.get_d(), 0.0);
    auto u = roots_from_lambda(lc);
    for (auto& x : u) x = z1 + (z2 - z1) * x;
    return u;
}

}  // namespace bethe
