#ifndef DYSON_KFUNC_HPP
#define DYSON_KFUNC_HPP

#include "dyson/rational.hpp"
#include "dyson/zetapoly.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <vector>

namespace dyson {

// Polynomial in an integer index k with ZetaPoly coefficients.
class KPoly {
public:
    KPoly() : c_(1) {}
    explicit KPoly(ZetaPoly v) : c_{std::move(v)} {}
    explicit KPoly(const Rational& v) : c_{ZetaPoly(v)} {}
    static KPoly var() { return KPoly(std::vector<ZetaPoly>{ZetaPoly(0), ZetaPoly(1)}); }
    explicit KPoly(std::vector<ZetaPoly> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.resize(1);
        trim();
    }

    int deg() const { return static_cast<int>(c_.size()) - 1; } // zero poly reports 0
    bool is_zero() const { return c_.size() == 1 && c_[0].is_zero(); }
    const ZetaPoly& coeff(int i) const {
        static const ZetaPoly z(0);
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : z;
    }

    friend KPoly operator+(const KPoly& a, const KPoly& b) {
        std::vector<ZetaPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff((int)i) + b.coeff((int)i);
        return KPoly(std::move(r));
    }
    friend KPoly operator-(const KPoly& a, const KPoly& b) {
        std::vector<ZetaPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff((int)i) - b.coeff((int)i);
        return KPoly(std::move(r));
    }
    friend KPoly operator*(const KPoly& a, const KPoly& b) {
        std::vector<ZetaPoly> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return KPoly(std::move(r));
    }
    friend KPoly operator*(const KPoly& a, const ZetaPoly& s) {
        std::vector<ZetaPoly> r = a.c_;
        for (auto& x : r) x = x * s;
        return KPoly(std::move(r));
    }
    friend bool operator==(const KPoly& a, const KPoly& b) {
        int d = std::max(a.deg(), b.deg());
        for (int i = 0; i <= d; ++i)
            if (!(a.coeff(i) == b.coeff(i))) return false;
        return true;
    }

    ZetaPoly eval(const Rational& k) const {
        ZetaPoly acc(0);
        for (int i = deg(); i >= 0; --i) acc = acc * ZetaPoly(k) + c_[i];
        return acc;
    }

    // multiply by (k + j)
    KPoly times_linear(long j) const {
        std::vector<ZetaPoly> r(c_.size() + 1);
        for (size_t i = 0; i < c_.size(); ++i) {
            r[i + 1] += c_[i];
            r[i] += c_[i] * ZetaPoly(rat(j));
        }
        return KPoly(std::move(r));
    }

    // exact synthetic division by (k + j); throws if the remainder is nonzero
    KPoly divide_linear(long j) const {
        if (is_zero()) return KPoly();
        std::vector<ZetaPoly> q(std::max(deg(), 1));
        ZetaPoly carry(0);
        for (int i = deg(); i >= 1; --i) {
            carry = c_[i] + carry;
            q[i - 1] = carry;
            carry = carry * ZetaPoly(rat(-j));
        }
        ZetaPoly rem = c_[0] + carry;
        if (!rem.is_zero()) throw std::logic_error("KPoly::divide_linear: nonzero remainder");
        return KPoly(std::move(q));
    }
    bool divisible_by_linear(long j) const { return eval(rat(-j)).is_zero(); }

private:
    void trim() {
        while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<ZetaPoly> c_;
};

// Rational function of k: numerator polynomial over a product of integer-root
// linear factors prod_j (k + j)^{mult_j}.
class RatK {
public:
    RatK() = default;
    explicit RatK(ZetaPoly v) : num_(std::move(v)) {}
    explicit RatK(const Rational& v) : num_(ZetaPoly(v)) {}
    explicit RatK(int v) : num_(ZetaPoly(Rational(v))) {}
    RatK(KPoly num, std::map<long, int> den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    const KPoly& num() const { return num_; }
    const std::map<long, int>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.empty() && num_.deg() == 0; }
    ZetaPoly constant() const {
        if (!is_constant()) throw std::logic_error("RatK::constant on non-constant");
        return num_.coeff(0);
    }

    static RatK one_over_linear(long j, int mult = 1) {
        std::map<long, int> d;
        d[j] = mult;
        return RatK(KPoly(ZetaPoly(1)), std::move(d));
    }

    friend RatK operator+(const RatK& a, const RatK& b) {
        // common denominator: union with max multiplicities
        std::map<long, int> den;
        for (auto& [j, m] : a.den_) den[j] = m;
        for (auto& [j, m] : b.den_) den[j] = std::max(den.count(j) ? den[j] : 0, m);
        KPoly na = a.num_, nb = b.num_;
        for (auto& [j, m] : den) {
            int ma = a.den_.count(j) ? a.den_.at(j) : 0;
            int mb = b.den_.count(j) ? b.den_.at(j) : 0;
            for (int i = 0; i < m - ma; ++i) na = na.times_linear(j);
            for (int i = 0; i < m - mb; ++i) nb = nb.times_linear(j);
        }
        return RatK(na + nb, std::move(den));
    }
    friend RatK operator-(const RatK& a, const RatK& b) { return a + (b * ZetaPoly(-1)); }
    friend RatK operator*(const RatK& a, const RatK& b) {
        std::map<long, int> den = a.den_;
        for (auto& [j, m] : b.den_) den[j] += m;
        return RatK(a.num_ * b.num_, std::move(den));
    }
    friend RatK operator*(const RatK& a, const ZetaPoly& s) {
        RatK r = a;
        r.num_ = r.num_ * s;
        if (r.num_.is_zero()) r.den_.clear();
        return r;
    }
    friend RatK operator*(const RatK& a, const Rational& s) { return a * ZetaPoly(s); }

    // divide by c*(k+j)
    RatK over_linear(const Rational& c, long j) const {
        if (c == 0) throw std::invalid_argument("RatK::over_linear by zero");
        RatK r = *this;
        r.num_ = r.num_ * ZetaPoly(1 / c);
        r.den_[j] += 1;
        r.reduce();
        return r;
    }

    friend bool operator==(const RatK& a, const RatK& b) { return (a - b).is_zero(); }

    ZetaPoly eval(const Rational& k) const {
        ZetaPoly n = num_.eval(k);
        Rational d = 1;
        for (auto& [j, m] : den_)
            for (int i = 0; i < m; ++i) {
                Rational f = k + j;
                if (f == 0) throw std::domain_error("RatK::eval at pole");
                d *= f;
            }
        return n * ZetaPoly(1 / d);
    }

    // partial-fraction atoms: coeff / (k + j)^m, plus a polynomial remainder
    struct Atom {
        ZetaPoly coeff;
        long j;
        int m;
    };
    struct PartialFractions {
        std::vector<Atom> atoms;
        KPoly poly;
    };
    PartialFractions partial_fractions() const {
        PartialFractions out;
        KPoly num = num_;
        std::map<long, int> den = den_;
        while (!den.empty()) {
            if (num.is_zero()) return out;
            // peel the highest multiplicity at some root
            auto it = den.begin();
            for (auto jt = den.begin(); jt != den.end(); ++jt)
                if (jt->second > it->second) it = jt;
            long j = it->first;
            int m = it->second;
            // residue numerator at k=-j over the other factors
            ZetaPoly nval = num.eval(rat(-j));
            Rational dval = 1;
            for (auto& [j2, m2] : den) {
                if (j2 == j) continue;
                Rational f = rat(-j) + j2;
                for (int i = 0; i < m2; ++i) dval *= f;
            }
            ZetaPoly A = nval * ZetaPoly(1 / dval);
            if (!A.is_zero()) out.atoms.push_back({A, j, m});
            // subtract A * (den without the (k+j) powers), then strip one power
            KPoly rest(A);
            for (auto& [j2, m2] : den) {
                if (j2 == j) continue;
                for (int i = 0; i < m2; ++i) rest = rest.times_linear(j2);
            }
            num = (num - rest).divide_linear(j);
            if (--it->second == 0) den.erase(it);
        }
        out.poly = num;
        return out;
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0 && num_.divisible_by_linear(it->first)) {
                num_ = num_.divide_linear(it->first);
                --it->second;
            }
            it = (it->second == 0) ? den_.erase(it) : std::next(it);
        }
    }
    KPoly num_;
    std::map<long, int> den_;
};

// Monomial in the harmonic carriers H_k and H_{k,2}.
struct HarmonicKey {
    int h = 0;  // power of H_k (0..2)
    int h2 = 0; // power of H_{k,2} (0..1)
    bool operator<(const HarmonicKey& o) const { return std::tie(h, h2) < std::tie(o.h, o.h2); }
    bool operator==(const HarmonicKey& o) const { return h == o.h && h2 == o.h2; }
};

// Function of k: sum over harmonic monomials of RatK coefficients. Products of
// two harmonic-carrying elements never occur in the solver; multiplication
// asserts that at most one side carries harmonics.
class KFunc {
public:
    KFunc() = default;
    explicit KFunc(RatK r) {
        if (!r.is_zero()) terms_[{0, 0}] = std::move(r);
    }
    explicit KFunc(ZetaPoly v) : KFunc(RatK(std::move(v))) {}
    explicit KFunc(const Rational& v) : KFunc(RatK(v)) {}
    explicit KFunc(int v) : KFunc(RatK(v)) {}

    static KFunc harmonic(int h, int h2, RatK coeff) {
        KFunc f;
        if (!coeff.is_zero()) f.terms_[{h, h2}] = std::move(coeff);
        return f;
    }

    const std::map<HarmonicKey, RatK>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational_function() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == HarmonicKey{0, 0});
    }
    RatK rational_part() const {
        auto it = terms_.find({0, 0});
        return it == terms_.end() ? RatK() : it->second;
    }

    friend KFunc operator+(const KFunc& a, const KFunc& b) {
        KFunc r = a;
        for (auto& [key, v] : b.terms_) r.add_term(key, v);
        return r;
    }
    friend KFunc operator-(const KFunc& a, const KFunc& b) { return a + (b * ZetaPoly(-1)); }
    friend KFunc operator*(const KFunc& a, const ZetaPoly& s) {
        KFunc r;
        for (auto& [key, v] : a.terms_) r.add_term(key, v * s);
        return r;
    }
    friend KFunc operator*(const KFunc& a, const Rational& s) { return a * ZetaPoly(s); }
    friend KFunc operator*(const KFunc& a, const RatK& s) {
        KFunc r;
        for (auto& [key, v] : a.terms_) r.add_term(key, v * s);
        return r;
    }
    friend KFunc operator*(const KFunc& a, const KFunc& b) {
        KFunc r;
        for (auto& [ka, va] : a.terms_)
            for (auto& [kb, vb] : b.terms_) {
                assert((ka == HarmonicKey{0, 0} || kb == HarmonicKey{0, 0}) &&
                       "product of two harmonic carriers");
                HarmonicKey key{ka.h + kb.h, ka.h2 + kb.h2};
                r.add_term(key, va * vb);
            }
        return r;
    }

    KFunc over_linear(const Rational& c, long j) const {
        KFunc r;
        for (auto& [key, v] : terms_) r.add_term(key, v.over_linear(c, j));
        return r;
    }

    friend bool operator==(const KFunc& a, const KFunc& b) { return (a - b).is_zero(); }

    // numeric evaluation at an integer k >= 1 (for oracle checks)
    ZetaPoly eval(long k) const {
        Rational hk = 0, hk2 = 0;
        for (long n = 1; n <= k; ++n) {
            hk += rat(1, n);
            hk2 += rat(1, n * n);
        }
        ZetaPoly acc(0);
        for (auto& [key, v] : terms_) {
            Rational w = 1;
            for (int i = 0; i < key.h; ++i) w *= hk;
            for (int i = 0; i < key.h2; ++i) w *= hk2;
            acc += v.eval(rat(k)) * ZetaPoly(w);
        }
        return acc;
    }

private:
    void add_term(const HarmonicKey& key, const RatK& v) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (!v.is_zero()) terms_[key] = v;
            return;
        }
        it->second = it->second + v;
        if (it->second.is_zero()) terms_.erase(it);
    }
    std::map<HarmonicKey, RatK> terms_;
};

} // namespace dyson

#endif
