#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace bethe {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Scalar kinds used by the exact and floating assembly paths.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static bool is_zero(const Complex& x) { return x == Complex{}; }
    static double magnitude(const Complex& x) { return std::abs(x); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& q) { return q.get_d(); }
    static bool is_zero(double x) { return x == 0.0; }
    static double magnitude(double x) { return std::abs(x); }
};

template <typename T>
T from_int(long v) {
    return ScalarTraits<T>::from_rational(Rational(v));
}

/// Parses "p", "p/q" or a decimal literal such as "-0.25" into an exact rational.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Exact value of a finite double.
Rational exact_from_double(double x);

/// Best rational approximation with denominator at most `max_den`, accepted
/// only if it lies within `rel_tol` of x (relative to max(1, |x|)).
std::optional<Rational> recognize_rational(double x, long max_den = 1000000, double rel_tol = 1e-10);

bool is_integer(const Rational& q);

}  // namespace bethe
