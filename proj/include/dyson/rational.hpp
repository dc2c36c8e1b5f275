#ifndef DYSON_RATIONAL_HPP
#define DYSON_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace dyson {

// Exact rationals on top of GMP. mpq_class already keeps values canonical
// (lowest terms, positive denominator) as long as canonicalize() runs after
// raw construction, which the helpers below guarantee.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("unparsable rational: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    return q;
}

// "p" or "p/q", decimal-free.
inline std::string rat_to_string(const Rational& q) {
    return q.get_str();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline long to_long(const Rational& q) {
    if (!is_integer(q)) throw std::domain_error("rational is not an integer");
    if (!q.get_num().fits_slong_p()) throw std::overflow_error("integer too large for long");
    return q.get_num().get_si();
}

inline Rational binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

inline Rational factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

} // namespace dyson

#endif
