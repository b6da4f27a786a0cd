#include "bethe_cli/commands.hpp"

#include "bethe/bethe_vector.hpp"
#include "bethe/fuchsian.hpp"
#include "bethe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bethe::cli {

namespace {

constexpr int kMultistartCount = 200;

RunReport start_report(const std::string& command, const RunConfig& cfg) {
    RunReport r;
    r.command = command;
    r.config = config_to_json(cfg);
    r.config_hash = config_hash(cfg);
    return r;
}

OrbitRecord orbit_record(const CriticalPoint& cp) {
    OrbitRecord o;
    o.t = cp.t;
    o.lambda = cp.lambda;
    o.residual = cp.residual_norm;
    o.hessian_det = cp.hessian_det;
    o.hessian_cond = cp.hessian_cond;
    return o;
}

std::vector<Complex> coefficients(const ComplexPolynomial& p) { return p.coeffs(); }

std::string fmt(const Complex& c) {
    std::ostringstream os;
    os.precision(10);
    os << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
    return os.str();
}

std::string fmt_list(const std::vector<Complex>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s + ")";
}

// Exact coordinates when every t_i is (numerically) a real rational.
std::optional<std::vector<Rational>> rational_coordinates(const std::vector<Complex>& t) {
    std::vector<Rational> out;
    for (const auto& x : t) {
        if (std::abs(x.imag()) > 1e-12 * std::max(1.0, std::abs(x))) return std::nullopt;
        auto q = recognize_rational(x.real(), 10000, 1e-12);
        if (!q) return std::nullopt;
        out.push_back(*q);
    }
    return out;
}

void exact_checks(const RunConfig& cfg, const ProblemInstance& inst, const std::vector<Complex>& t, BetheRecord& b,
                  FuchsianRecord& f) {
    if (cfg.mode != Mode::Exact || !inst.z().is_exact()) return;
    const auto tq = rational_coordinates(t);
    if (!tq) return;
    try {
        const auto ex = exact_bethe_check(*tq, inst);
        b.exact_singular = ex.singular;
        b.exact_eigenvector = ex.eigenvector;
        b.exact_norm_identity = ex.shapovalov_norm == ex.hessian_det;
    } catch (const ArrangementError&) {
        b.exact_singular = false;
    }
    try {
        (void)associated_equation_exact(elementary_symmetric<Rational>(*tq), inst.z(), inst.m());
        f.exact_remainder_zero = true;
    } catch (const NotCriticalError&) {
        f.exact_remainder_zero = false;
    }
}

struct OrbitCheck {
    OrbitRecord record;
    std::optional<BetheVector> vector;
};

OrbitCheck check_orbit(const RunConfig& cfg, const ProblemInstance& inst, const std::vector<Complex>& t,
                       std::vector<std::string>& failures, std::size_t index) {
    const std::string tag = "orbit " + std::to_string(index) + ": ";
    OrbitCheck out;
    CriticalPoint cp;
    try {
        cp = make_critical_point(t, inst);
    } catch (const ArrangementError& e) {
        out.record.t = t;
        failures.push_back(tag + e.what());
        return out;
    }
    out.record = orbit_record(cp);

    BetheRecord b;
    const auto bv = evaluate_bethe_vector(cp, inst);
    b.e_residual = bv.e_residual;
    b.max_eigen_residual = bv.max_eigen_residual;
    b.eigenvalues = bv.eigenvalues;
    b.shapovalov_norm = bv.shapovalov_norm;
    const auto ni = norm_identity_check(bv, inst);
    b.hessian_det = ni.hessian_det;
    b.norm_identity_error = ni.relative_error;
    b.degenerate = ni.degenerate;
    const auto sum = eigenvalue_sum_check(bv, inst);
    b.eigenvalue_sum_difference = sum.difference;
    const double sum_scale = std::max(1.0, std::abs(sum.rayleigh_of_sum));
    b.passed = b.e_residual < kCheckTol && b.max_eigen_residual < kCheckTol &&
               (b.degenerate || b.norm_identity_error < kCheckTol) && b.eigenvalue_sum_difference < 1e-10 * sum_scale;
    if (!b.passed) {
        std::ostringstream os;
        os << tag << "Bethe checks failed (e-residual " << b.e_residual << ", eigen-residual " << b.max_eigen_residual
           << ", norm identity " << b.norm_identity_error << ")";
        failures.push_back(os.str());
    } else {
        out.vector = bv;
    }

    FuchsianRecord f;
    try {
        const auto eq = associated_equation(cp.t, inst.z(), inst.m());
        f.h = coefficients(eq.H);
        const auto space = verify_all_polynomial(eq, inst.z());
        f.generic_degree = space.k1;
        f.special_degree = space.k2;
        f.wronskian_error = space.wronskian_error;
        f.dual_residual = space.dual_residual;
        f.min_root_gap = space.generic_min_root_gap;
        if (!space.dual_note.empty()) f.notes.push_back(space.dual_note);
        const ComplexPolynomial& special = space.k2 == space.dual_degree ? space.u2 : space.u1;
        f.special_roots = special.degree() > 0 ? roots(special) : std::vector<Complex>{};
        std::sort(f.special_roots.begin(), f.special_roots.end(),
                  [](const Complex& a, const Complex& c) { return std::pair(a.real(), a.imag()) < std::pair(c.real(), c.imag()); });
        const auto nd = nondegenerate_check(space, inst.z());
        f.nondegenerate = nd.nondegenerate;
        for (const auto& r : nd.reasons) f.notes.push_back(r);
        f.passed = f.wronskian_error < kCheckTol && f.dual_residual < kCheckTol && f.nondegenerate;
        if (!f.passed) f.failure = "round trip outside tolerance";
    } catch (const NotCriticalError& e) {
        f.failure = e.what();
    } catch (const VerificationFailure& e) {
        f.failure = e.what();
    }
    exact_checks(cfg, inst, cp.t, b, f);
    if (b.exact_singular == false || b.exact_eigenvector == false || b.exact_norm_identity == false)
        failures.push_back(tag + "exact Bethe check failed");
    if (f.exact_remainder_zero == false) failures.push_back(tag + "exact remainder is nonzero");
    if (!f.passed) failures.push_back(tag + "Fuchsian round trip failed: " + f.failure);

    out.record.bethe = b;
    out.record.fuchsian = f;
    return out;
}

// Empty regimes: random Newton starts must find nothing.
void witness_empty(const RunConfig& cfg, const ProblemInstance& inst, RunReport& r) {
    const auto pts = multistart_search(inst, kMultistartCount, cfg.seed);
    for (const auto& p : pts) r.orbits.push_back(orbit_record(p));
    r.found = static_cast<long>(pts.size());
    r.flags.push_back("multistart_witness:" + std::to_string(kMultistartCount));
}

void finish(RunReport& r) {
    if (!r.failures.empty())
        r.exit_code = kExitVerification;
    else if (r.found != r.expected)
        r.exit_code = kExitCountMismatch;
    else
        r.exit_code = kExitOk;
}

std::string headline(const RunReport& r) {
    std::ostringstream os;
    os << r.command << ": regime " << r.regime << ", expected " << r.expected << ", found " << r.found;
    if (!r.flags.empty()) {
        os << "\nflags:";
        for (const auto& f : r.flags) os << " " << f;
    }
    return os.str();
}

std::string status_line(const RunReport& r) {
    switch (r.exit_code) {
        case kExitOk: return "status: PASS";
        case kExitCountMismatch: return "status: COUNT MISMATCH (genericity suspect)";
        default: return "status: FAIL";
    }
}

void lines_regime_error(const RunConfig& cfg) {
    throw ConfigError("(m, k) = (l(m) " + std::to_string(ExponentVector(cfg.m).total()) + ", k " +
                      std::to_string(cfg.k) + ") is in the critical-lines regime; run `bethe lines` instead");
}

}  // namespace

CommandResult run_count(const RunConfig& cfg) {
    const ExponentVector m(cfg.m);
    RunReport r = start_report("count", cfg);
    const auto label = classify_regime(m, cfg.k);
    r.regime = to_string(label.regime);
    r.expected = label.expected_count;
    r.found = label.expected_count;

    CountRecord c;
    c.w = multiplicity_w(m, cfg.k);
    c.d = difference_d(m, cfg.k);
    c.sharp = sharp_count(cfg.k, static_cast<int>(m.n()), m.values());
    c.sing_dim = static_cast<long>(singular_basis(m, cfg.k).size());
    try {
        c.admissible = static_cast<long>(admissible_sequences(m, cfg.k).size());
    } catch (const std::domain_error&) {
        c.admissible = -1;
    }
    const int dual = m.total() + 1 - cfg.k;
    c.dual_w = dual >= 0 ? multiplicity_w(m, dual) : 0;
    r.counts = c;
    if (c.sharp != c.d) r.failures.push_back("inclusion-exclusion count differs from the weight-space difference");
    if (c.sing_dim != c.w) r.failures.push_back("singular subspace dimension differs from the multiplicity");
    finish(r);

    std::ostringstream os;
    os << headline(r) << "\nw(m,k) = " << c.w << ", d(m,k) = " << c.d << ", sharp = " << c.sharp
       << ", dim Sing = " << c.sing_dim << ", admissible sequences = ";
    if (c.admissible < 0)
        os << "n/a (pair not good)";
    else
        os << c.admissible;
    os << ", w(m, l+1-k) = " << c.dual_w << "\n" << status_line(r);
    return {r, os.str()};
}

CommandResult run_solve(const RunConfig& cfg) {
    const auto inst = cfg.instance();
    RunReport r = start_report("solve", cfg);
    const auto label = classify_regime(inst.m(), inst.k());
    r.regime = to_string(label.regime);
    r.expected = label.expected_count;
    if (label.regime == Regime::CriticalLines) lines_regime_error(cfg);

    if (label.regime == Regime::IsolatedPoints) {
        const auto rep = solve_all(inst, cfg.solver_options());
        r.found = rep.found;
        r.flags = rep.genericity_flags;
        for (const auto& o : rep.orbits) r.orbits.push_back(orbit_record(o));
    } else {
        witness_empty(cfg, inst, r);
    }
    finish(r);

    std::ostringstream os;
    os << headline(r);
    for (std::size_t i = 0; i < r.orbits.size(); ++i)
        os << "\n  orbit " << i << ": t = " << fmt_list(r.orbits[i].t) << ", residual " << r.orbits[i].residual;
    os << "\n" << status_line(r);
    return {r, os.str()};
}

CommandResult run_verify(const RunConfig& cfg, const std::optional<RunReport>& prior) {
    const auto inst = cfg.instance();
    RunReport r = start_report("verify", cfg);
    const auto label = classify_regime(inst.m(), inst.k());
    r.regime = to_string(label.regime);
    r.expected = label.expected_count;
    if (label.regime == Regime::CriticalLines) lines_regime_error(cfg);

    std::vector<std::vector<Complex>> points;
    if (prior) {
        if (prior->config_hash != r.config_hash)
            throw ConfigError("report was produced for config " + prior->config_hash + ", current config is " +
                              r.config_hash);
        for (const auto& o : prior->orbits) points.push_back(o.t);
        r.flags = prior->flags;
        r.flags.push_back("orbits_from_report");
    } else if (label.regime == Regime::IsolatedPoints) {
        const auto rep = solve_all(inst, cfg.solver_options());
        r.flags = rep.genericity_flags;
        for (const auto& o : rep.orbits) points.push_back(o.t);
    } else {
        witness_empty(cfg, inst, r);
        finish(r);
        return {r, headline(r) + "\n" + status_line(r)};
    }

    std::vector<BetheVector> vectors;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto checked = check_orbit(cfg, inst, points[i], r.failures, i);
        r.orbits.push_back(std::move(checked.record));
        if (checked.vector) vectors.push_back(std::move(*checked.vector));
    }
    r.found = static_cast<long>(points.size());
    if (label.regime == Regime::IsolatedPoints && r.found == r.expected && vectors.size() == points.size() &&
        r.expected > 0) {
        const auto bc = basis_check(vectors, inst);
        r.basis = BasisRecord{bc.determinant, bc.hadamard_ratio, bc.coordinate_residual, bc.is_basis};
        if (!bc.is_basis) r.failures.push_back("Bethe vectors do not form a basis of the singular subspace");
    }
    finish(r);

    std::ostringstream os;
    os << headline(r);
    for (std::size_t i = 0; i < r.orbits.size(); ++i) {
        const auto& o = r.orbits[i];
        os << "\n  orbit " << i << ": t = " << fmt_list(o.t);
        if (o.bethe)
            os << "\n    e-residual " << o.bethe->e_residual << ", eigen-residual " << o.bethe->max_eigen_residual
               << ", S(v,v) = " << fmt(o.bethe->shapovalov_norm) << ", det Hess = " << fmt(o.bethe->hessian_det)
               << "\n    eigenvalues " << fmt_list(o.bethe->eigenvalues);
        if (o.fuchsian && o.fuchsian->passed)
            os << "\n    H = " << fmt_list(o.fuchsian->h) << ", degrees (" << o.fuchsian->generic_degree << ", "
               << o.fuchsian->special_degree << "), Wronskian error " << o.fuchsian->wronskian_error;
    }
    if (r.basis) os << "\n  basis: Hadamard ratio " << r.basis->hadamard_ratio;
    for (const auto& f : r.failures) os << "\n  FAIL " << f;
    os << "\n" << status_line(r);
    return {r, os.str()};
}

CommandResult run_lines(const RunConfig& cfg) {
    const auto inst = cfg.instance();
    RunReport r = start_report("lines", cfg);
    const auto label = classify_regime(inst.m(), inst.k());
    r.regime = to_string(label.regime);
    r.expected = label.expected_count;
    if (label.regime != Regime::CriticalLines)
        throw ConfigError("(m, k) is in the " + r.regime + " regime; `bethe lines` needs the critical-lines regime");

    const auto opts = cfg.solver_options();
    const auto rep = critical_lines(inst, opts);
    r.flags = rep.genericity_flags;
    r.found = static_cast<long>(rep.lines.size());
    r.lines_disjoint = rep.pairwise_disjoint;
    const auto [f, g] = build_fg(inst.z().points(), inst.m());
    for (std::size_t i = 0; i < rep.lines.size(); ++i) {
        const auto& line = rep.lines[i];
        LineRecord l;
        l.base_lambda = line.base_lambda;
        l.direction_lambda = line.direction_lambda;
        l.f = f.coeffs();
        l.g = g.coeffs();
        if (line.source_orbit) {
            l.source_t = line.source_orbit->t;
            l.h = associated_equation(line.source_orbit->t, inst.z(), inst.m()).H.coeffs();
        }
        l.u1 = line.u1.coeffs();
        l.u2 = line.u2.coeffs();
        l.max_sample_residual = line.max_sample_residual;
        if (!(l.max_sample_residual < kCheckTol))
            r.failures.push_back("line " + std::to_string(i) + ": sampled points are not critical");
        r.lines.push_back(std::move(l));
    }
    if (!rep.pairwise_disjoint) r.failures.push_back("critical lines intersect");
    finish(r);

    std::ostringstream os;
    os << headline(r);
    for (std::size_t i = 0; i < r.lines.size(); ++i)
        os << "\n  line " << i << ": lambda = " << fmt_list(r.lines[i].base_lambda) << " + c "
           << fmt_list(r.lines[i].direction_lambda) << ", sample residual " << r.lines[i].max_sample_residual;
    os << "\n" << status_line(r);
    return {r, os.str()};
}

}  // namespace bethe::cli
