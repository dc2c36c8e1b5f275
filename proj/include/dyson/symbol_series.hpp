#ifndef DYSON_SYMBOL_SERIES_HPP
#define DYSON_SYMBOL_SERIES_HPP

#include "dyson/series.hpp"

#include <vector>

namespace dyson {

// F = low + A*aPart + B*bPart with the symbol relations
//   3 a^2 d/da A = -(1+5a) A,   3 a^2 d/da B = B
// used for sector separation; A^2, AB, B^2 cross terms are dropped.
template <class R>
struct SymbolSeries {
    Series<R> low, aPart, bPart;

    explicit SymbolSeries(int trunc = 0) : low(trunc), aPart(trunc), bPart(trunc) {}
    SymbolSeries(Series<R> l, Series<R> a, Series<R> b)
        : low(std::move(l)), aPart(std::move(a)), bPart(std::move(b)) {}

    int trunc() const { return std::min({low.trunc(), aPart.trunc(), bPart.trunc()}); }

    friend SymbolSeries operator+(const SymbolSeries& x, const SymbolSeries& y) {
        return {x.low + y.low, x.aPart + y.aPart, x.bPart + y.bPart};
    }
    friend SymbolSeries operator-(const SymbolSeries& x, const SymbolSeries& y) {
        return {x.low - y.low, x.aPart - y.aPart, x.bPart - y.bPart};
    }
    friend SymbolSeries operator-(const SymbolSeries& x) {
        return {-x.low, -x.aPart, -x.bPart};
    }
    friend bool operator==(const SymbolSeries& x, const SymbolSeries& y) {
        return x.low == y.low && x.aPart == y.aPart && x.bPart == y.bPart;
    }
    bool is_zero() const { return low.is_zero() && aPart.is_zero() && bPart.is_zero(); }
};

template <class R>
SymbolSeries<R> symbol_mul(const SymbolSeries<R>& x, const SymbolSeries<R>& y) {
    return {x.low * y.low,
            x.low * y.aPart + x.aPart * y.low,
            x.low * y.bPart + x.bPart * y.low};
}

template <class R>
SymbolSeries<R> symbol_scale(const SymbolSeries<R>& x, const Series<R>& s) {
    return {x.low * s, x.aPart * s, x.bPart * s};
}

// a^2 d/da acting on low/A/B sectors; the symbol derivatives fold in exactly.
template <class R>
SymbolSeries<R> symbol_a2_del_a(const SymbolSeries<R>& f) {
    auto a2del = [](const Series<R>& s) { return a_del_a(s).shifted(1); };
    Series<R> a1 = Series<R>::var(f.trunc());
    // A sector: A * a^2 g' + (a^2 A'/A) A g with 3 a^2 A' = -(1+5a) A
    Series<R> aSym = a2del(f.aPart) - f.aPart.scaled(rat(1, 3)) -
                     (f.aPart * a1).scaled(rat(5, 3));
    Series<R> bSym = a2del(f.bPart) + f.bPart.scaled(rat(1, 3));
    return {a2del(f.low), aSym, bSym};
}

// One operator term: coef * a^{aPower} * D, D in {identity, a d/da, a^2 d/da}.
// a d/da alone is ill-defined on the symbols, so it must come with aPower >= 1
// and is rewritten as a^{aPower-1} (a^2 d/da).
struct OpTerm {
    Rational coef = 1;
    int aPower = 0;
    enum Deriv { none, a_del, a2_del } deriv = none;
};
using OperatorSpec = std::vector<OpTerm>;

template <class R>
SymbolSeries<R> symbol_op(const SymbolSeries<R>& f, const OperatorSpec& op) {
    int t = f.trunc();
    SymbolSeries<R> out(t);
    for (const OpTerm& term : op) {
        SymbolSeries<R> v = f;
        int ap = term.aPower;
        if (term.deriv == OpTerm::a2_del) {
            v = symbol_a2_del_a(v);
        } else if (term.deriv == OpTerm::a_del) {
            if (ap < 1) throw std::domain_error("a d/da on symbols requires an a prefix");
            --ap;
            v = symbol_a2_del_a(v);
        }
        Series<R> mult = Series<R>::constant(R(1), t).shifted(ap);
        SymbolSeries<R> scaled = symbol_scale(v, mult);
        out = out + SymbolSeries<R>{scaled.low.scaled(term.coef), scaled.aPart.scaled(term.coef),
                                    scaled.bPart.scaled(term.coef)};
    }
    return out;
}

// gamma (lam + 3 mu a d/da) F for gamma = a * gammaOverA: the prefactor a is
// absorbed into the derivative so only the well-defined a^2 d/da acts on
// symbols.
template <class R>
SymbolSeries<R> gamma_apply(const SymbolSeries<R>& gammaOverA, const SymbolSeries<R>& F,
                            const Rational& lam, const Rational& mu) {
    int t = std::min(gammaOverA.trunc(), F.trunc());
    Series<R> a = Series<R>::var(t);
    SymbolSeries<R> t1 = symbol_mul(gammaOverA, F);
    t1 = symbol_scale(t1, a); // restore the a from gamma
    SymbolSeries<R> t2 = symbol_mul(gammaOverA, symbol_a2_del_a(F));
    auto scal = [](const SymbolSeries<R>& s, const Rational& q) {
        return SymbolSeries<R>{s.low.scaled(q), s.aPart.scaled(q), s.bPart.scaled(q)};
    };
    return scal(t1, lam) + scal(t2, 3 * mu);
}

} // namespace dyson

#endif
