#include "bethe/scalar.hpp"

#include <cctype>
#include <cmath>

namespace bethe {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class d{std::string(den)};
        if (d == 0) return std::nullopt;
        value = Rational(mpz_class(std::string(num)), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto ip = body.substr(0, dot);
        auto fp = body.substr(dot + 1);
        if (ip.empty() && fp.empty()) return std::nullopt;
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) return std::nullopt;
        mpz_class scale = 1;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        mpz_class whole(ip.empty() ? std::string("0") : std::string(ip));
        mpz_class frac(fp.empty() ? std::string("0") : std::string(fp));
        value = Rational(whole * scale + frac, scale);
    } else {
        if (!all_digits(body)) return std::nullopt;
        value = Rational(mpz_class(std::string(body)));
    }
    value.canonicalize();
    if (negative) value = -value;
    return value;
}

std::string to_string(const Rational& value) {
    Rational q(value);
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational exact_from_double(double x) {
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

std::optional<Rational> recognize_rational(double x, long max_den, double rel_tol) {
    if (!std::isfinite(x)) return std::nullopt;
    // Continued-fraction convergents.
    long double r = x;
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(r));
    mpz_class k_prev = 0, k = 1;
    long double frac = r - std::floor(r);
    const double tol = rel_tol * std::max(1.0, std::abs(x));
    for (int iter = 0; iter < 64; ++iter) {
        Rational candidate(h, k);
        candidate.canonicalize();
        if (std::abs(candidate.get_d() - x) <= tol) return candidate;
        if (frac == 0) break;
        r = 1.0L / frac;
        long a = static_cast<long>(std::floor(r));
        frac = r - std::floor(r);
        mpz_class h_next = a * h + h_prev;
        mpz_class k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    return std::nullopt;
}

bool is_integer(const Rational& value) {
    Rational q(value);
    q.canonicalize();
    return q.get_den() == 1;
}

}  // namespace bethe
