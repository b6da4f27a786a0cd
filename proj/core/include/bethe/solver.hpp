#pragma once

// Critical points of the master function by continuation: seeds at the
// separated configuration (s, s², …, sⁿ), Newton refinement there, then
// predictor-corrector tracking to the target points.

#include "bethe/fuchsian.hpp"
#include "bethe/master_function.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bethe {

/// {m₁, m₂; k}: m₁ + m₂ - 2k >= 0 and k <= m_i for every m_i that is a nonnegative integer.
bool admissible_triple(const Rational& m1, const Rational& m2, int k);

struct AdmissibleSequence {
    std::vector<int> i;  ///< block sizes, i[0] == 0, Σ i == k
    auto operator<=>(const AdmissibleSequence&) const = default;
};

/// All admissible sequences in lexicographic order. Throws std::domain_error
/// when (m, k) is not a good pair.
std::vector<AdmissibleSequence> admissible_sequences(std::span<const Rational> m, int k);
std::vector<AdmissibleSequence> admissible_sequences(const ExponentVector& m, int k);

/// Start point at z = (s, s², …, sⁿ): block l holds s^l times the two-point
/// critical point with exponent a_l at 0 and m_l at 1.
std::vector<Complex> seed_point(const AdmissibleSequence& seq, const ExponentVector& m, double s);

struct SolverOptions {
    double newton_tol = 1e-12;
    int max_iter = 100;
    double dedup_tol = 1e-6;
    double s = 32.0;
    int s_doublings = 4;
    int max_detours = 8;
    std::uint64_t seed = 0;
    bool multistart = false;
    int multistart_count = 200;
    unsigned threads = 1;
    double line_sample_tol = 1e-9;
    double accept_tol = 1e-10;  ///< residual required of a reported orbit
};

struct NewtonResult {
    bool converged = false;
    std::vector<Complex> t;
    double residual = 0.0;
    int iterations = 0;
    std::string failure;
};

/// Damped Newton on the residual with the Hessian of ln Φ as Jacobian.
NewtonResult newton_refine(std::span<const Complex> t0, const ProblemInstance& inst, double tol = 1e-12,
                           int max_iter = 100);

struct TrackResult {
    bool success = false;
    std::vector<Complex> t;
    double residual = 0.0;
    double stuck_tau = 0.0;
    int steps = 0;
    int detours = 0;
    bool endgame_used = false;
    std::string failure;
};

/// Follows t along z(τ) = (1 - τ) z_start + τ z_target. On step underflow it
/// retries through a random complex waypoint drawn from `rng_seed`.
TrackResult track_path(std::span<const Complex> t_start, const Configuration& z_start, const Configuration& z_target,
                       const ExponentVector& m, const SolverOptions& opts = {}, std::uint64_t rng_seed = 0);

struct SolveReport {
    RegimeLabel regime{Regime::IsolatedPoints, 0};
    long expected = 0;
    long found = 0;
    std::vector<CriticalPoint> orbits;
    std::vector<std::string> genericity_flags;
    int seeds_used = 0;
    int seeds_failed = 0;
    int multistart_found = 0;
    double s_used = 0.0;
};

/// Every critical orbit for the IsolatedPoints regime. Throws std::domain_error
/// for the other regimes.
SolveReport solve_all(const ProblemInstance& inst, const SolverOptions& opts = {});

/// Random Newton starts in a disc around z; returns every orbit whose relative
/// residual drops below `accept_tol`. Used to witness the empty regimes.
std::vector<CriticalPoint> multistart_search(const ProblemInstance& inst, int starts, std::uint64_t seed,
                                             double accept_tol = 1e-10);

struct CriticalLine {
    std::vector<Complex> base_lambda;
    std::vector<Complex> direction_lambda;
    std::optional<CriticalPoint> source_orbit;  ///< empty when l(m) + 1 - k == 0
    ComplexPolynomial u1;  ///< degree k
    ComplexPolynomial u2;  ///< degree l(m) + 1 - k
    double max_sample_residual = 0.0;
};

struct LinesReport {
    RegimeLabel regime{Regime::CriticalLines, 0};
    long expected = 0;
    std::vector<CriticalLine> lines;
    bool pairwise_disjoint = true;
    std::vector<std::string> genericity_flags;
};

/// Critical lines for the CriticalLines regime. Throws std::domain_error otherwise.
LinesReport critical_lines(const ProblemInstance& inst, const SolverOptions& opts = {});

/// λ-coordinates (x^k - λ₁ x^{k-1} + …) of a monic polynomial of degree k.
std::vector<Complex> lambda_of(const ComplexPolynomial& monic_poly);

/// True when the two lines base_a + c d_a and base_b + c d_b share a point.
bool lines_intersect(const CriticalLine& a, const CriticalLine& b, double rel_tol = 1e-8);

}  // namespace bethe
