#include "bethe/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bethe {

bool admissible_triple(const Rational& m1, const Rational& m2, int k) {
    if (k < 0) return false;
    if (m1 + m2 - 2 * k < 0) return false;
    for (const Rational* mi : {&m1, &m2})
        if (is_integer(*mi) && sgn(*mi) >= 0 && *mi < k) return false;
    return true;
}

namespace {

void extend_sequences(std::span<const Rational> m, int remaining, std::size_t pos, const Rational& a,
                      std::vector<int>& current, std::vector<AdmissibleSequence>& out) {
    if (pos == m.size()) {
        if (remaining == 0) out.push_back({current});
        return;
    }
    for (int i = 0; i <= remaining; ++i) {
        if (pos == 0 && i != 0) break;
        if (!admissible_triple(a, m[pos], i)) continue;
        current.push_back(i);
        extend_sequences(m, remaining - i, pos + 1, a + m[pos] - 2 * i, current, out);
        current.pop_back();
    }
}

std::vector<Rational> to_rationals(const ExponentVector& m) {
    std::vector<Rational> out;
    for (int v : m) out.emplace_back(v);
    return out;
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex disc_uniform(std::mt19937_64& rng) {
    const double r = std::sqrt(unit_uniform(rng));
    const double a = 2.0 * std::numbers::pi * unit_uniform(rng);
    return std::polar(r, a);
}

std::mt19937_64 stream(std::uint64_t master, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::optional<double> safe_relative_residual(std::span<const Complex> t, const ProblemInstance& inst) {
    try {
        const double r = relative_residual(t, inst);
        if (!std::isfinite(r)) return std::nullopt;
        return r;
    } catch (const ArrangementError&) {
        return std::nullopt;
    }
}

double config_scale(const Configuration& z) {
    double s = z.diameter();
    for (const auto& p : z.points()) s = std::max(s, std::abs(p));
    return std::max(s, 1e-300);
}

// Newton direction; empty when the Hessian is numerically singular or t is on 𝒜.
std::optional<Eigen::VectorXcd> newton_direction(std::span<const Complex> t, const ProblemInstance& inst) {
    try {
        const auto r = bethe_residual(t, inst);
        const Eigen::MatrixXcd h = hessian_ln_phi(t, inst);
        Eigen::VectorXcd rv(static_cast<Eigen::Index>(r.size()));
        for (std::size_t i = 0; i < r.size(); ++i) rv(static_cast<Eigen::Index>(i)) = r[i];
        Eigen::VectorXcd dt = h.fullPivLu().solve(-rv);
        if (!dt.allFinite()) return std::nullopt;
        return dt;
    } catch (const ArrangementError&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<AdmissibleSequence> admissible_sequences(std::span<const Rational> m, int k) {
    if (!classify_good_pair(m, k).is_good) {
        std::ostringstream os;
        os << "admissible_sequences: (m, k=" << k << ") is not a good pair";
        throw std::domain_error(os.str());
    }
    std::vector<AdmissibleSequence> out;
    std::vector<int> current;
    extend_sequences(m, k, 0, Rational(0), current, out);
    return out;
}

std::vector<AdmissibleSequence> admissible_sequences(const ExponentVector& m, int k) {
    const auto q = to_rationals(m);
    return admissible_sequences(std::span<const Rational>(q), k);
}

std::vector<Complex> seed_point(const AdmissibleSequence& seq, const ExponentVector& m, double s) {
    if (seq.i.size() != m.n()) throw std::invalid_argument("seed_point: sequence and m lengths differ");
    std::vector<Complex> t;
    Rational a = 0;
    double scale = 1.0;
    for (std::size_t l = 0; l < m.n(); ++l) {
        scale *= s;
        const int il = seq.i[l];
        if (il > 0) {
            const N2Solution block = n2_closed_form(a, Rational(m[l]), il);
            std::vector<Complex> lam;
            for (const auto& q : block.lambda) lam.emplace_back(q.get_d(), 0.0);
            for (const auto& u : roots_from_lambda(lam)) t.push_back(scale * u);
        }
        a += m[l] - 2 * il;
    }
    return t;
}

NewtonResult newton_refine(std::span<const Complex> t0, const ProblemInstance& inst, double tol, int max_iter) {
    NewtonResult res;
    res.t.assign(t0.begin(), t0.end());
    if (t0.empty()) {
        res.converged = true;
        return res;
    }
    auto rel = safe_relative_residual(res.t, inst);
    if (!rel) {
        res.failure = "start point lies on the arrangement";
        return res;
    }
    res.residual = *rel;
    const double escape = 1e8 * config_scale(inst.z());
    bool reached = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (res.residual < tol) reached = true;
        const auto dt = newton_direction(res.t, inst);
        if (!dt) {
            if (reached) break;
            res.failure = "singular Hessian";
            return res;
        }
        double alpha = 1.0;
        bool accepted = false;
        std::vector<Complex> trial(res.t.size());
        for (int halving = 0; halving < 40; ++halving, alpha *= 0.5) {
            bool escaped = false;
            for (std::size_t i = 0; i < trial.size(); ++i) {
                trial[i] = res.t[i] + alpha * (*dt)(static_cast<Eigen::Index>(i));
                if (std::abs(trial[i]) > escape) escaped = true;
            }
            if (escaped) continue;
            const auto r = safe_relative_residual(trial, inst);
            if (!r) continue;
            // Once converged, keep polishing only while the residual still drops noticeably.
            const double need = reached ? 0.9 * res.residual : res.residual;
            if (*r < need) {
                res.t = trial;
                res.residual = *r;
                accepted = true;
                break;
            }
            if (reached) break;
        }
        res.iterations = iter + 1;
        if (!accepted) {
            if (reached || res.residual < tol) break;
            res.failure = "no residual decrease along the Newton direction";
            return res;
        }
    }
    if (res.residual < tol) {
        res.converged = true;
    } else if (res.failure.empty()) {
        std::ostringstream os;
        os << "max iterations reached with residual " << res.residual;
        res.failure = os.str();
    }
    return res;
}

namespace {

struct Segment {
    std::vector<Complex> from, to;
};

std::vector<Complex> interpolate(const Segment& seg, double tau) {
    std::vector<Complex> z(seg.from.size());
    for (std::size_t l = 0; l < z.size(); ++l) z[l] = (1.0 - tau) * seg.from[l] + tau * seg.to[l];
    return z;
}

struct SegmentResult {
    bool ok = false;
    double stuck_tau = 0.0;
    int steps = 0;
    std::string failure;
};

constexpr double kPathTol = 1e-9;

// Tracks t along one linear segment in z. On success t holds a point that
// satisfies the equations at seg.to to kPathTol.
SegmentResult track_segment(std::vector<Complex>& t, const Segment& seg, const ExponentVector& m, int k) {
    SegmentResult out;
    const std::size_t n = m.n();
    std::vector<Complex> dz(n);
    for (std::size_t l = 0; l < n; ++l) dz[l] = seg.to[l] - seg.from[l];
    double tau = 0.0;
    double h = 0.01;
    int successes = 0;
    const double escape = 1e8 * std::max(config_scale(Configuration(seg.from)), config_scale(Configuration(seg.to)));

    while (tau < 1.0) {
        if (out.steps > 200000) {
            out.failure = "step budget exhausted";
            out.stuck_tau = tau;
            return out;
        }
        const ProblemInstance here(m, k, Configuration(interpolate(seg, tau)));
        Eigen::VectorXcd tdot;
        try {
            const Eigen::MatrixXcd hess = hessian_ln_phi(t, here);
            const Eigen::MatrixXcd jz = residual_z_jacobian(t, here);
            Eigen::VectorXcd dzv(static_cast<Eigen::Index>(n));
            for (std::size_t l = 0; l < n; ++l) dzv(static_cast<Eigen::Index>(l)) = dz[l];
            tdot = hess.fullPivLu().solve(-(jz * dzv));
        } catch (const ArrangementError& e) {
            out.failure = std::string("path touched the arrangement: ") + e.what();
            out.stuck_tau = tau;
            return out;
        }
        if (!tdot.allFinite()) {
            out.failure = "singular Hessian along the path";
            out.stuck_tau = tau;
            return out;
        }

        // Local step limits relative to the distances to everything else.
        std::vector<double> dist(t.size(), std::numeric_limits<double>::infinity());
        std::vector<double> zdist(n, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (std::size_t l = 0; l < n; ++l) {
                const double d = std::abs(t[i] - here.z()[l]);
                dist[i] = std::min(dist[i], d);
                zdist[l] = std::min(zdist[l], d);
            }
            for (std::size_t j = 0; j < t.size(); ++j)
                if (j != i) dist[i] = std::min(dist[i], std::abs(t[i] - t[j]));
        }
        double hmax = std::min(h, 1.0 - tau);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double speed = std::abs(tdot(static_cast<Eigen::Index>(i)));
            if (speed > 0) hmax = std::min(hmax, 0.2 * dist[i] / speed);
        }
        for (std::size_t l = 0; l < n; ++l) {
            const double speed = std::abs(dz[l]);
            if (speed > 0 && std::isfinite(zdist[l])) hmax = std::min(hmax, 0.2 * zdist[l] / speed);
        }
        if (hmax < 1e-13) {
            out.failure = "step size underflow";
            out.stuck_tau = tau;
            return out;
        }

        const double next_tau = (1.0 - tau - hmax < 1e-15) ? 1.0 : tau + hmax;
        const ProblemInstance there(m, k, Configuration(interpolate(seg, next_tau)));
        std::vector<Complex> trial(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) trial[i] = t[i] + hmax * tdot(static_cast<Eigen::Index>(i));

        bool ok = false;
        double prev_norm = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 4; ++it) {
            const auto rel = safe_relative_residual(trial, there);
            if (!rel) break;
            if (*rel < kPathTol) {
                ok = true;
                break;
            }
            const auto d = newton_direction(trial, there);
            if (!d) break;
            double step_norm = 0.0;
            bool jump = false;
            for (std::size_t i = 0; i < trial.size(); ++i) {
                const double di = std::abs((*d)(static_cast<Eigen::Index>(i)));
                step_norm = std::max(step_norm, di);
                if (it == 0 && di > 0.3 * dist[i]) jump = true;
            }
            if (jump || step_norm > 0.5 * prev_norm) break;
            prev_norm = step_norm;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += (*d)(static_cast<Eigen::Index>(i));
        }
        if (ok) {
            for (const auto& x : trial)
                if (std::abs(x) > escape) {
                    out.failure = "coordinates escaped to infinity";
                    out.stuck_tau = next_tau;
                    return out;
                }
            t = trial;
            tau = next_tau;
            ++out.steps;
            if (++successes >= 2) {
                h = std::min(2.0 * h, 0.1);
                successes = 0;
            }
        } else {
            h = hmax * 0.5;
            successes = 0;
            if (h < 1e-13) {
                out.failure = "step size underflow";
                out.stuck_tau = tau;
                return out;
            }
        }
    }
    out.ok = true;
    out.stuck_tau = 1.0;
    return out;
}

std::vector<Complex> strip_points(const std::vector<Complex>& z, const ExponentVector& m) {
    std::vector<Complex> out;
    for (std::size_t l = 0; l < m.n(); ++l)
        if (m[l] != 0) out.push_back(z[l]);
    return out;
}

ExponentVector strip_exponents(const ExponentVector& m) {
    std::vector<int> out;
    for (int v : m)
        if (v != 0) out.push_back(v);
    return ExponentVector(std::move(out));
}

}  // namespace

TrackResult track_path(std::span<const Complex> t_start, const Configuration& z_start, const Configuration& z_target,
                       const ExponentVector& m, const SolverOptions& opts, std::uint64_t rng_seed) {
    if (z_start.n() != m.n() || z_target.n() != m.n())
        throw std::invalid_argument("track_path: configuration and m lengths differ");
    const ExponentVector mm = strip_exponents(m);
    const auto from = strip_points(z_start.points(), m);
    const auto to = strip_points(z_target.points(), m);
    const int k = static_cast<int>(t_start.size());
    const ProblemInstance target(mm, k, Configuration(to));

    TrackResult res;
    std::mt19937_64 rng = stream(rng_seed, 0x5eed);
    const double radius = 0.5 * std::max(Configuration(to).diameter(), 1e-12);

    for (int attempt = 0; attempt <= opts.max_detours; ++attempt) {
        std::vector<Segment> path;
        if (attempt == 0) {
            path.push_back({from, to});
        } else {
            // Waypoint off the straight path, drawn from the per-path stream.
            std::vector<Complex> w(to.size());
            for (std::size_t l = 0; l < to.size(); ++l) w[l] = 0.5 * (from[l] + to[l]) + radius * disc_uniform(rng);
            try {
                Configuration check(w);
                (void)check;
            } catch (const std::domain_error&) {
                continue;
            }
            path.push_back({from, w});
            path.push_back({w, to});
            res.detours = attempt;
        }
        std::vector<Complex> t(t_start.begin(), t_start.end());
        bool ok = true;
        bool on_last = false;
        SegmentResult last;
        for (std::size_t si = 0; si < path.size(); ++si) {
            last = track_segment(t, path[si], mm, k);
            res.steps += last.steps;
            if (!last.ok) {
                ok = false;
                on_last = si + 1 == path.size();
                break;
            }
        }
        if (!ok) {
            res.stuck_tau = last.stuck_tau;
            res.failure = last.failure;
            // Endgame: stuck at the very end, finish with Newton at the target.
            if (on_last && last.stuck_tau > 0.999) {
                auto nr = newton_refine(t, target, opts.newton_tol, opts.max_iter);
                if (nr.converged) {
                    res.success = true;
                    res.endgame_used = true;
                    res.t = nr.t;
                    res.residual = nr.residual;
                    return res;
                }
            }
            continue;
        }
        auto nr = newton_refine(t, target, opts.newton_tol, opts.max_iter);
        if (nr.converged) {
            res.success = true;
            res.t = nr.t;
            res.residual = nr.residual;
            return res;
        }
        res.failure = "final Newton at the target failed: " + nr.failure;
    }
    return res;
}

namespace {

struct SeedOutcome {
    bool ok = false;
    CriticalPoint cp;
    bool endgame = false;
    int detours = 0;
    double s = 0.0;
    std::string failure;
};

// Affine image of z^(s) with the same diameter as the target, turned by a
// fixed complex angle so that the straight path to a real target is not real.
struct StartFrame {
    Complex scale;
    Complex shift;
};

StartFrame start_frame(const Configuration& target, double s, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng = stream(seed, 0xf4a3e);
    const double angle = 0.25 * std::numbers::pi + 0.5 * std::numbers::pi * unit_uniform(rng);
    Complex center{};
    for (const auto& p : target.points()) center += p;
    center /= static_cast<double>(std::max<std::size_t>(target.n(), 1));
    const double diam = std::max(target.diameter(), 1e-12);
    return {std::polar(diam / std::pow(s, static_cast<double>(n)), angle), center};
}

}  // namespace

SolveReport solve_all(const ProblemInstance& inst, const SolverOptions& opts) {
    SolveReport rep;
    rep.regime = classify_regime(inst.m(), inst.k());
    switch (rep.regime.regime) {
        case Regime::IsolatedPoints: break;
        case Regime::CriticalLines:
            throw std::domain_error("solve_all: critical points form lines here (l(m) + 1 - k < k); use critical_lines");
        case Regime::NoCriticalEqualExponents:
        case Regime::NoCriticalNegativeDual:
            throw std::domain_error("solve_all: this regime has no critical points; use multistart_search to witness it");
    }
    rep.expected = rep.regime.expected_count;
    const auto& m = inst.m();
    const int k = inst.k();
    const std::size_t n = inst.n();

    if (k == 0) {
        rep.orbits.push_back(make_critical_point(std::vector<Complex>{}, inst));
        rep.found = 1;
        rep.seeds_used = 1;
        return rep;
    }

    const auto seqs = admissible_sequences(m, k);
    rep.seeds_used = static_cast<int>(seqs.size());
    std::vector<SeedOutcome> outcomes(seqs.size());

    auto run_seed = [&](std::size_t idx, int forced_attempts) {
        SeedOutcome& o = outcomes[idx];
        double s = opts.s;
        for (int doubling = 0; doubling <= opts.s_doublings; ++doubling, s *= 2.0) {
            std::vector<Complex> zs(n);
            double p = 1.0;
            for (std::size_t l = 0; l < n; ++l) zs[l] = (p *= s);
            const ProblemInstance at_s(m, k, Configuration(zs));
            const auto t0 = seed_point(seqs[idx], m, s);
            auto nr = newton_refine(t0, at_s, opts.newton_tol, opts.max_iter);
            if (!nr.converged) {
                o.failure = "Newton at the separated configuration failed: " + nr.failure;
                continue;
            }
            const StartFrame frame = start_frame(inst.z(), s, n, opts.seed);
            std::vector<Complex> zstart(n), tstart(nr.t.size());
            for (std::size_t l = 0; l < n; ++l) zstart[l] = frame.shift + frame.scale * zs[l];
            for (std::size_t i = 0; i < nr.t.size(); ++i) tstart[i] = frame.shift + frame.scale * nr.t[i];

            SolverOptions local = opts;
            TrackResult tr;
            const std::uint64_t path_seed = opts.seed * 0x9e3779b97f4a7c15ULL + idx + 1;
            if (forced_attempts == 0) {
                tr = track_path(tstart, Configuration(zstart), inst.z(), m, local, path_seed);
            } else {
                // Re-track through detours only, with a stream distinct from the first pass.
                local.max_detours = opts.max_detours;
                TrackResult best;
                for (int a = 0; a < forced_attempts && !best.success; ++a) {
                    std::mt19937_64 rng = stream(path_seed, 0xc0111de + static_cast<std::uint64_t>(a));
                    std::vector<Complex> w(n);
                    const double radius = 0.5 * std::max(inst.z().diameter(), 1e-12);
                    for (std::size_t l = 0; l < n; ++l)
                        w[l] = 0.5 * (zstart[l] + inst.z()[l]) + radius * disc_uniform(rng);
                    try {
                        auto first = track_path(tstart, Configuration(zstart), Configuration(w), m, local, rng());
                        if (!first.success) continue;
                        best = track_path(first.t, Configuration(w), inst.z(), m, local, rng());
                        best.detours += first.detours + 1;
                    } catch (const std::domain_error&) {
                        continue;
                    }
                }
                tr = best;
            }
            if (!tr.success) {
                o.failure = "tracking failed: " + tr.failure;
                o.ok = false;
                return;
            }
            o.cp = make_critical_point(tr.t, inst);
            o.endgame = tr.endgame_used;
            o.detours = tr.detours;
            o.ok = o.cp.residual_norm < opts.accept_tol;
            if (!o.ok) o.failure = "endpoint residual above the acceptance tolerance";
            o.s = s;
            return;
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(seqs.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < seqs.size(); ++i) run_seed(i, 0);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < seqs.size(); i = next++) run_seed(i, 0);
            });
        for (auto& th : pool) th.join();
    }

    // Greedy orbit assignment in seed order; a seed whose endpoint repeats an
    // earlier orbit is re-tracked through detours.
    auto add_flag = [&](const std::string& f) {
        if (std::find(rep.genericity_flags.begin(), rep.genericity_flags.end(), f) == rep.genericity_flags.end())
            rep.genericity_flags.push_back(f);
    };
    std::vector<CriticalPoint> kept;
    std::vector<std::size_t> colliding;
    auto is_new = [&](const CriticalPoint& cp) {
        std::vector<CriticalPoint> both = kept;
        both.push_back(cp);
        const OrbitFrame frame = orbit_frame(inst.z(), both);
        for (const auto& q : kept)
            if (orbit_distance(q, cp, frame) <= opts.dedup_tol) return false;
        return true;
    };
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].ok) {
            ++rep.seeds_failed;
            continue;
        }
        if (outcomes[i].endgame) add_flag("endgame_used");
        rep.s_used = std::max(rep.s_used, outcomes[i].s);
        if (is_new(outcomes[i].cp))
            kept.push_back(outcomes[i].cp);
        else
            colliding.push_back(i);
    }
    if (!colliding.empty()) add_flag("seed_collision");
    if (static_cast<long>(kept.size()) < rep.expected) {
        for (std::size_t i : colliding) {
            run_seed(i, opts.max_detours);
            if (outcomes[i].ok && is_new(outcomes[i].cp)) kept.push_back(outcomes[i].cp);
        }
        // Failed seeds get the same treatment.
        for (std::size_t i = 0; i < outcomes.size() && static_cast<long>(kept.size()) < rep.expected; ++i) {
            if (outcomes[i].ok || std::find(colliding.begin(), colliding.end(), i) != colliding.end()) continue;
            run_seed(i, opts.max_detours);
            if (outcomes[i].ok) {
                --rep.seeds_failed;
                if (is_new(outcomes[i].cp)) kept.push_back(outcomes[i].cp);
            }
        }
    }

    if (opts.multistart && static_cast<long>(kept.size()) < rep.expected) {
        for (auto& cp : multistart_search(inst, opts.multistart_count, opts.seed ^ 0x6d756c7469ULL, opts.accept_tol))
            if (is_new(cp)) {
                kept.push_back(cp);
                ++rep.multistart_found;
            }
        if (rep.multistart_found > 0) add_flag("multistart_used");
    }

    std::sort(kept.begin(), kept.end(), lambda_less);
    rep.orbits = std::move(kept);
    rep.found = static_cast<long>(rep.orbits.size());
    if (rep.found != rep.expected) add_flag("count_mismatch");
    for (const auto& cp : rep.orbits)
        if (!(cp.hessian_cond < 1e10)) add_flag("ill_conditioned_hessian");
    if (rep.orbits.size() > 1) {
        const OrbitFrame frame = orbit_frame(inst.z(), rep.orbits);
        for (std::size_t a = 0; a < rep.orbits.size(); ++a)
            for (std::size_t b = a + 1; b < rep.orbits.size(); ++b)
                if (orbit_distance(rep.orbits[a], rep.orbits[b], frame) < 1e-4) add_flag("orbit_collision");
    }
    return rep;
}

std::vector<CriticalPoint> multistart_search(const ProblemInstance& inst, int starts, std::uint64_t seed,
                                             double accept_tol) {
    std::vector<CriticalPoint> found;
    const int k = inst.k();
    if (k == 0) return found;
    Complex center{};
    for (const auto& p : inst.z().points()) center += p;
    center /= static_cast<double>(std::max<std::size_t>(inst.n(), 1));
    double radius = 0.0;
    for (const auto& p : inst.z().points()) radius = std::max(radius, std::abs(p - center));
    radius = 1.5 * std::max(radius, 0.5);
    const double keep_off = 1e-3 * radius;

    for (int sidx = 0; sidx < starts; ++sidx) {
        std::mt19937_64 rng = stream(seed, static_cast<std::uint64_t>(sidx));
        std::vector<Complex> t;
        int guard = 0;
        while (static_cast<int>(t.size()) < k && guard++ < 10000) {
            const Complex c = center + radius * disc_uniform(rng);
            bool clear = true;
            for (const auto& p : inst.z().points()) clear = clear && std::abs(c - p) > keep_off;
            for (const auto& p : t) clear = clear && std::abs(c - p) > keep_off;
            if (clear) t.push_back(c);
        }
        auto nr = newton_refine(t, inst, 1e-12, 100);
        const auto rel = safe_relative_residual(nr.t, inst);
        if (!rel || *rel >= accept_tol) continue;
        found.push_back(make_critical_point(nr.t, inst));
    }
    return dedup_orbits(std::move(found), inst.z(), 1e-6);
}

std::vector<Complex> lambda_of(const ComplexPolynomial& p) {
    const int k = p.degree();
    std::vector<Complex> lam;
    for (int j = 1; j <= k; ++j) {
        const Complex c = p.coeff(static_cast<std::size_t>(k - j)) / p.leading();
        lam.push_back(j % 2 == 0 ? c : -c);
    }
    return lam;
}

namespace {

std::vector<Complex> direction_of(const ComplexPolynomial& u2, int k) {
    std::vector<Complex> dir;
    for (int j = 1; j <= k; ++j) {
        const Complex c = (k - j <= u2.degree()) ? u2.coeff(static_cast<std::size_t>(k - j)) : Complex{};
        dir.push_back(j % 2 == 0 ? c : -c);
    }
    return dir;
}

double sample_line(const CriticalLine& line, const ProblemInstance& inst) {
    static const Complex kSamples[] = {{0.37, 0.91}, {-1.3, 0.2}, {2.1, -0.7}, {0.05, -1.6}};
    const double scale = line.u2.norm() > 0 ? line.u1.norm() / line.u2.norm() : 1.0;
    double worst = 0.0;
    int used = 0;
    for (const Complex& c : kSamples) {
        const auto r = roots(line.u1 + (c * scale) * line.u2);
        const auto rel = safe_relative_residual(r, inst);
        if (!rel) continue;
        worst = std::max(worst, *rel);
        ++used;
    }
    return used == 0 ? std::numeric_limits<double>::infinity() : worst;
}

}  // namespace

bool lines_intersect(const CriticalLine& a, const CriticalLine& b, double rel_tol) {
    const auto k = static_cast<Eigen::Index>(a.base_lambda.size());
    Eigen::MatrixXcd mat(k, 2);
    Eigen::VectorXcd rhs(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        mat(j, 0) = a.direction_lambda[ju];
        mat(j, 1) = -b.direction_lambda[ju];
        rhs(j) = b.base_lambda[ju] - a.base_lambda[ju];
    }
    const Eigen::VectorXcd c = mat.completeOrthogonalDecomposition().solve(rhs);
    const double miss = (mat * c - rhs).norm();
    double scale = rhs.norm();
    for (Eigen::Index j = 0; j < k; ++j) scale = std::max(scale, std::abs(a.base_lambda[static_cast<std::size_t>(j)]));
    return miss <= rel_tol * std::max(scale, 1e-300);
}

LinesReport critical_lines(const ProblemInstance& inst, const SolverOptions& opts) {
    LinesReport rep;
    rep.regime = classify_regime(inst.m(), inst.k());
    if (rep.regime.regime != Regime::CriticalLines)
        throw std::domain_error("critical_lines: regime is " + to_string(rep.regime.regime) +
                                ", lines occur only when 0 <= l(m) + 1 - k < k");
    rep.expected = rep.regime.expected_count;
    const int k = inst.k();
    const int dual = inst.l() + 1 - k;

    if (dual == 0) {
        ComplexPolynomial w = wronskian_target(inst.z(), inst.m());
        CriticalLine line;
        line.u1 = (static_cast<double>(inst.l() + 1)) * w.antiderivative();
        line.u2 = ComplexPolynomial::constant(1.0);
        line.base_lambda = lambda_of(line.u1);
        line.direction_lambda = direction_of(line.u2, k);
        line.max_sample_residual = sample_line(line, inst);
        rep.lines.push_back(std::move(line));
    } else {
        const SolveReport dual_rep = solve_all(inst.with_k(dual), opts);
        for (const auto& f : dual_rep.genericity_flags) rep.genericity_flags.push_back("dual_" + f);
        for (const auto& orbit : dual_rep.orbits) {
            const auto eq = associated_equation(orbit.t, inst.z(), inst.m());
            const auto sols = polynomial_solutions(eq, k);
            if (sols.size() != 2 || sols[0].degree() != k || sols[1].degree() != dual) {
                rep.genericity_flags.push_back("solution_space_mismatch");
                continue;
            }
            CriticalLine line;
            line.u1 = sols[0];
            line.u2 = sols[1];
            line.source_orbit = orbit;
            line.base_lambda = lambda_of(line.u1);
            line.direction_lambda = direction_of(line.u2, k);
            line.max_sample_residual = sample_line(line, inst);
            rep.lines.push_back(std::move(line));
        }
    }
    for (const auto& line : rep.lines)
        if (!(line.max_sample_residual < opts.line_sample_tol)) {
            rep.genericity_flags.push_back("line_sample_residual");
            break;
        }
    for (std::size_t a = 0; a < rep.lines.size(); ++a)
        for (std::size_t b = a + 1; b < rep.lines.size(); ++b)
            if (lines_intersect(rep.lines[a], rep.lines[b])) rep.pairwise_disjoint = false;
    if (!rep.pairwise_disjoint) rep.genericity_flags.push_back("lines_intersect");
    if (static_cast<long>(rep.lines.size()) != rep.expected) rep.genericity_flags.push_back("count_mismatch");
    return rep;
}

}  // namespace bethe
