#ifndef DYSON_ZETAPOLY_HPP
#define DYSON_ZETAPOLY_HPP

#include "dyson/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace dyson {

// A monomial in the symbols zeta(2), zeta(3), ...: the sorted multiset of
// arguments. Empty vector = the rational constant 1.
using ZetaMonomial = std::vector<int>;

struct ModifiedWeightOfEvenZeta : std::domain_error {
    ModifiedWeightOfEvenZeta() : std::domain_error("modified weight undefined on even zeta symbols") {}
};

enum class WeightScheme { standard, modified };

// Bernoulli numbers B_0..B_n (B_1 = -1/2), by the defining recurrence.
inline const Rational& bernoulli(unsigned n) {
    static std::vector<Rational> cache{rat(1)};
    while (cache.size() <= n) {
        unsigned m = cache.size();
        Rational s = 0;
        for (unsigned j = 0; j + 1 <= m; ++j) s += binomial(m + 1, j) * cache[j];
        cache.push_back(-s / binomial(m + 1, m));
    }
    return cache[n];
}

// zeta(2n) / zeta(2)^n, a rational number (both sides are rational multiples
// of pi^{2n}).
inline Rational even_zeta_ratio(int two_n) {
    int n = two_n / 2;
    // zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!), zeta(2) = pi^2/6.
    Rational z2n = bernoulli(2 * n) / (2 * factorial(2 * n));
    if (n % 2 == 0) z2n = -z2n;
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, 2 * n);     // 2^{2n}
    mpz_class p6;
    mpz_ui_pow_ui(p6.get_mpz_t(), 6, n);         // 6^n, cancels zeta(2)^n
    return z2n * Rational(p2) * Rational(p6);
}

class ZetaPoly {
public:
    ZetaPoly() = default;
    ZetaPoly(long c) { if (c != 0) terms_[{}] = rat(c); }
    ZetaPoly(const Rational& c) { if (c != 0) terms_[{}] = c; }

    static ZetaPoly zeta(int n) {
        if (n < 2) throw std::invalid_argument("zeta symbol needs argument >= 2");
        ZetaPoly p;
        p.terms_[{n}] = rat(1);
        return p;
    }

    const std::map<ZetaMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational rational_part() const {
        auto it = terms_.find({});
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("ZetaPoly is not a rational constant");
        return rational_part();
    }

    ZetaPoly& operator+=(const ZetaPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ZetaPoly& operator-=(const ZetaPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b) { return a += b; }
    friend ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b) { return a -= b; }
    friend ZetaPoly operator-(const ZetaPoly& a) { return ZetaPoly(0) - a; }

    friend ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b) {
        ZetaPoly r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                ZetaMonomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                r.add_term(m, ca * cb);
            }
        return r;
    }
    ZetaPoly& operator*=(const ZetaPoly& o) { return *this = *this * o; }

    ZetaPoly& operator*=(const Rational& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend ZetaPoly operator*(ZetaPoly a, const Rational& c) { return a *= c; }
    friend ZetaPoly operator*(const Rational& c, ZetaPoly a) { return a *= c; }
    ZetaPoly& operator/=(const Rational& c) {
        if (c == 0) throw std::domain_error("division by zero");
        for (auto& [m, v] : terms_) v /= c;
        return *this;
    }
    friend ZetaPoly operator/(ZetaPoly a, const Rational& c) { return a /= c; }

    friend bool operator==(const ZetaPoly& a, const ZetaPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ZetaPoly& a, const ZetaPoly& b) { return !(a == b); }

    bool has_even_zeta() const {
        for (auto& [m, c] : terms_)
            for (int n : m)
                if (n % 2 == 0) return true;
        return false;
    }

    // Rewrite every zeta(2n), n >= 2, as a rational multiple of zeta(2)^n.
    // Mathematically the identity zeta(2n) = q_n zeta(2)^n; gives a normal
    // form in which genuine cancellations between e.g. zeta(4) and zeta(2)^2
    // become visible.
    ZetaPoly canonical_even() const {
        ZetaPoly r;
        for (auto& [m, c] : terms_) {
            Rational coef = c;
            ZetaMonomial nm;
            for (int n : m) {
                if (n % 2 == 0 && n > 2) {
                    coef *= even_zeta_ratio(n);
                    nm.insert(nm.end(), n / 2, 2);
                } else {
                    nm.push_back(n);
                }
            }
            std::sort(nm.begin(), nm.end());
            r.add_term(nm, coef);
        }
        return r;
    }

    // Max over monomials of the summed symbol weights; nullopt encodes w(0) =
    // minus infinity. Modified scheme: W(zeta(2n+1)) = 2n, errors on evens.
    std::optional<long> weight(WeightScheme scheme) const {
        if (terms_.empty()) return std::nullopt;
        long best = std::numeric_limits<long>::min();
        for (auto& [m, c] : terms_) {
            long w = 0;
            for (int n : m) {
                if (scheme == WeightScheme::modified) {
                    if (n % 2 == 0) throw ModifiedWeightOfEvenZeta();
                    w += n - 1;
                } else {
                    w += n;
                }
            }
            best = std::max(best, w);
        }
        return best;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << rat_to_string(c);
            for (int n : m) os << "*z" << n;
        }
        return os.str();
    }

private:
    void add_term(const ZetaMonomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<ZetaMonomial, Rational> terms_;
};

inline std::optional<long> weight(const ZetaPoly& p, WeightScheme scheme) {
    return p.weight(scheme);
}

// ---- numerics ------------------------------------------------------------

using BigFloat = boost::multiprecision::mpfr_float;

namespace detail {
// Riemann zeta at integer s >= 2 by direct series plus Euler-Maclaurin tail.
inline BigFloat zeta_numeric(int s, unsigned digits) {
    const unsigned J = 16; // tail correction terms
    // truncation M from the magnitude of the first dropped correction,
    // ~ M^{-(s+2J+1)}; generous safety margin.
    double need = (digits + 10.0) / (s + 2.0 * J + 1.0);
    unsigned long M = static_cast<unsigned long>(std::pow(10.0, need)) + 16;

    unsigned prec = digits + 20;
    BigFloat::default_precision(prec);
    BigFloat sum = 0;
    for (unsigned long k = 1; k < M; ++k) sum += pow(BigFloat(1) / k, s);
    BigFloat Mb = M;
    sum += pow(BigFloat(1) / Mb, s) / 2;
    sum += pow(BigFloat(1) / Mb, s - 1) / (s - 1);
    // + sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * M^{-(s+2j-1)}
    BigFloat rising = s; // s ... (s+2j-2), updated per j
    for (unsigned j = 1; j <= J; ++j) {
        Rational b = bernoulli(2 * j) / factorial(2 * j);
        BigFloat bf(b.get_num().get_str());
        bf /= BigFloat(b.get_den().get_str());
        sum += bf * rising * pow(BigFloat(1) / Mb, s + 2 * (long)j - 1);
        rising *= BigFloat(s + 2 * j - 1) * BigFloat(s + 2 * j);
    }
    return sum;
}

inline BigFloat to_bigfloat(const Rational& q, unsigned digits) {
    BigFloat::default_precision(digits + 20);
    BigFloat n(q.get_num().get_str()), d(q.get_den().get_str());
    return n / d;
}
} // namespace detail

inline BigFloat numeric_eval(const ZetaPoly& p, unsigned digits) {
    BigFloat::default_precision(digits + 20);
    BigFloat r = 0;
    for (auto& [m, c] : p.terms()) {
        BigFloat t = detail::to_bigfloat(c, digits);
        for (int n : m) t *= detail::zeta_numeric(n, digits + 10);
        r += t;
    }
    return r;
}

inline double numeric_eval_d(const ZetaPoly& p) {
    return numeric_eval(p, 30).convert_to<double>();
}

// ---- zeta arithmetic entry point matching the operation contract ----------

enum class ZetaOp { add, mul };

inline ZetaPoly zeta_arith(const ZetaPoly& lhs, const ZetaPoly& rhs, ZetaOp op) {
    return op == ZetaOp::add ? lhs + rhs : lhs * rhs;
}

} // namespace dyson

#endif
