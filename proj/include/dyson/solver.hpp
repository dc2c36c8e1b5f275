#ifndef DYSON_SOLVER_HPP
#define DYSON_SOLVER_HPP

#include "dyson/eulersum.hpp"
#include "dyson/mellin.hpp"
#include "dyson/symbol_series.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyson {

struct NonvanishingConstant : std::domain_error {
    NonvanishingConstant() : std::domain_error("series must vanish at a = 0") {}
};
struct InsufficientTower : std::domain_error {
    InsufficientTower() : std::domain_error("tower too short for the requested truncation") {}
};
struct UnsupportedOrder : std::domain_error {
    explicit UnsupportedOrder(const std::string& w) : std::domain_error(w) {}
};
struct MissingData : std::runtime_error {
    explicit MissingData(const std::string& w) : std::runtime_error(w) {}
};

// ---- gamma tower: g_0 = 1, g_{j+1} = g (1 + 3 a d/da) g_j ------------------

template <class R>
std::vector<Series<R>> gamma_tower(const Series<R>& g, int n) {
    if (!(g[0] == R(0))) throw NonvanishingConstant();
    std::vector<Series<R>> t{Series<R>::constant(R(1), g.trunc())};
    for (int j = 0; j < n; ++j) t.push_back(g * (t.back() + a_del_a(t.back()).scaled(3)));
    return t;
}

// symbol version; gamma = a * gOverA
inline std::vector<SymbolSeries<ZetaPoly>> gamma_tower(const SymbolSeries<ZetaPoly>& gOverA,
                                                       int n) {
    int t = gOverA.trunc();
    SymbolSeries<ZetaPoly> one(t);
    one.low = Series<ZetaPoly>::constant(ZetaPoly(1), t);
    std::vector<SymbolSeries<ZetaPoly>> tw{one};
    for (int j = 0; j < n; ++j) tw.push_back(gamma_apply(gOverA, tw.back(), 1, 1));
    return tw;
}

// ---- the I transform on the pole expansion ---------------------------------

struct TermSpec {
    enum Kind { SimplePole, PolePower, Monomial, LinePole } kind;
    int k = 1;
    int n = 0;
    std::vector<Rational> lineCoeffs; // numerator coefficients of the line pole

    static TermSpec simple_pole(int k) { return {SimplePole, k, 0, {}}; }
    static TermSpec pole_power(int k, int n) { return {PolePower, k, n, {}}; }
    static TermSpec monomial(int n) { return {Monomial, 1, n, {}}; }
    static TermSpec line_pole(int k, std::vector<Rational> coeffs) {
        return {LinePole, k, 0, std::move(coeffs)};
    }
};

inline Series<ZetaPoly> apply_I(const TermSpec& term, const std::vector<Series<ZetaPoly>>& tower) {
    if (term.k < 1 || term.n < 0) throw std::invalid_argument("bad term spec");
    if (tower.empty()) throw InsufficientTower();
    int t = tower[0].trunc();
    long k = term.k;
    auto need = [&](int n) {
        if ((int)tower.size() <= n) throw InsufficientTower();
        return tower[n];
    };
    auto geometric = [&](int from) {
        // (1/k) sum_{n >= from} (-1/k)^n g_n; terms beyond the truncation vanish
        if ((int)tower.size() <= t) throw InsufficientTower();
        Series<ZetaPoly> acc(t);
        Rational w = rat(1, k);
        for (int i = 0; i < from; ++i) w *= rat(-1, k);
        for (int n = from; n <= t; ++n) {
            acc = acc + tower[n].scaled(w);
            w *= rat(-1, k);
        }
        return acc;
    };
    switch (term.kind) {
    case TermSpec::SimplePole:
        return geometric(0);
    case TermSpec::PolePower:
        // (-k)^n g_n [F_k - (1/k) sum_{i<n} (-1/k)^i g_i] = (-k)^n g_n * tail
        {
            Series<ZetaPoly> tail = geometric(term.n);
            Rational w = 1;
            for (int i = 0; i < term.n; ++i) w *= -k;
            return (need(term.n) * tail).scaled(w);
        }
    case TermSpec::Monomial:
        return need(term.n) * need(term.n);
    case TermSpec::LinePole: {
        // k L = g (2 + 3 a d/da) L + sum_n coeffs[n] g_n^2, solved order by order
        const Series<ZetaPoly>& g = need(1);
        Series<ZetaPoly> src(t);
        for (size_t n = 1; n < term.lineCoeffs.size(); ++n)
            src = src + (need((int)n) * need((int)n)).scaled(term.lineCoeffs[n]);
        Series<ZetaPoly> L(t);
        for (int m = 0; m <= t; ++m) {
            Series<ZetaPoly> rhs = g * (L.scaled(2) + a_del_a(L).scaled(3)) + src;
            L[m] = rhs[m] * ZetaPoly(rat(1, k));
        }
        return L;
    }
    }
    throw std::logic_error("unreachable");
}

// ---- solver -----------------------------------------------------------------

struct SolutionSet {
    int order = 0;        // component series computed through a^order
    int poleCut = 0;      // k range used when families are tabulated in reports
    int numeratorDeg = 0; // residue-polynomial degree kept in the pole terms
    // gamma/a = c + A d + B e, F = f + A g + B h, L = l + A m + B n
    Series<ZetaPoly> f, g, h, l, m, n, c, d, e;
    // pole families, one coefficient function of k per power of a
    std::vector<KFunc> fk, gk, hk, lk, mk, nk;
    std::string scaleNotes;

    Series<ZetaPoly> family_at(const std::vector<KFunc>& fam, long k) const {
        Series<ZetaPoly> s((int)fam.size() - 1);
        for (size_t i = 0; i < fam.size(); ++i) s[(int)i] = fam[i].eval(k);
        return s;
    }
};

namespace detail {

using SZ = SymbolSeries<ZetaPoly>;
using SK = SymbolSeries<KFunc>;

inline Series<KFunc> promote(const Series<ZetaPoly>& s) {
    Series<KFunc> r(s.trunc());
    for (int i = 0; i <= s.trunc(); ++i) r[i] = KFunc(s[i]);
    return r;
}
inline SK promote(const SZ& s) { return {promote(s.low), promote(s.aPart), promote(s.bPart)}; }

inline KFunc k_monomial(int n, const Rational& scale) {
    KPoly p{ZetaPoly(scale)};
    for (int i = 0; i < n; ++i) p = p.times_linear(0);
    return KFunc(RatK(std::move(p), {}));
}

template <class S>
S sym_scale(const S& s, const Rational& q) {
    return {s.low.scaled(q), s.aPart.scaled(q), s.bPart.scaled(q)};
}

inline SK sym_mul_kfunc(const SK& s, const KFunc& v) {
    auto mul = [&](const Series<KFunc>& x) {
        Series<KFunc> r(x.trunc());
        for (int i = 0; i <= x.trunc(); ++i) r[i] = x[i] * v;
        return r;
    };
    return {mul(s.low), mul(s.aPart), mul(s.bPart)};
}

inline Rational rational_of(const ZetaPoly& p) {
    if (!p.is_rational()) throw std::logic_error("expected a rational probe response");
    return p.rational_part();
}

class TruncSolver {
public:
    TruncSolver(int order, int poleCut, int numeratorDeg)
        : N(order), cut(poleCut), P(numeratorDeg), T(order + 2), F(T), L(T), G(T) {
        if (N < 0 || N > 5) throw UnsupportedOrder("orders beyond a^5 are not supported");
        if (P < 1 || P > 3)
            throw UnsupportedOrder("residue numerators beyond cubic are not tabulated");
        for (int n = 1; n <= P; ++n) {
            pk[n] = residue_coeff_k(ResidueSide::negative, n);
            qk[n] = residue_coeff_k(ResidueSide::line, n);
        }
        Fk.assign(3, std::vector<KFunc>(T + 1));
        Lk.assign(3, std::vector<KFunc>(T + 1));
    }

    SolutionSet run() {
        int lowTop = std::min(N + 1, 5); // c beyond a^5 is out of reach anyway
        for (int m = 0; m <= lowTop; ++m) {
            solve1(F.low[m], [&] { return res_F().low.coeffs()[m]; });
            solve1(L.low[m], [&] { return res_L().low.coeffs()[m]; });
            solveK(Fk[0][m], [&] { return res_Fk().low[m]; });
            solveK(Lk[0][m], [&] { return res_Lk().low[m]; });
            ZetaPoly ks = euler_sum_kfunc(ksum_raw().low[m], 2);
            solve1(G.low[m], [&] { return res_gamma_base().low.coeffs()[m] - ks; });
        }
        int sTop = std::min(N, 4); // symbol sectors need the next numerator degree past a^4
        for (int m = 0; m <= sTop; ++m) { // A sector
            solveK(Fk[1][m], [&] { return res_Fk().aPart[m]; });
            solveK(Lk[1][m], [&] { return res_Lk().aPart[m]; });
            solve1(L.aPart[m], [&] { return res_L().aPart.coeffs()[m]; });
            ZetaPoly ks = euler_sum_kfunc(ksum_raw().aPart[m], 2);
            if (m == 0) {
                F.aPart[0] = ZetaPoly(1); // one-dimensional sector, unit scale
                solve1(G.aPart[0], [&] { return res_gamma_base().aPart.coeffs()[0] - ks; });
                if (!(res_F().aPart[1] == ZetaPoly(0)))
                    throw std::logic_error("sector normalization is inconsistent");
            } else {
                solve2(F.aPart[m], G.aPart[m], [&] { return res_F().aPart.coeffs()[m + 1]; },
                       [&] { return res_gamma_base().aPart.coeffs()[m] - ks; });
            }
        }
        for (int m = 0; m <= sTop; ++m) { // B sector
            solve1(F.bPart[m], [&] { return res_F().bPart.coeffs()[m]; });
            solveK(Fk[2][m], [&] { return res_Fk().bPart[m]; });
            solveK(Lk[2][m], [&] { return res_Lk().bPart[m]; });
            ZetaPoly ks = euler_sum_kfunc(ksum_raw().bPart[m], 2);
            if (m == 0) {
                L.bPart[0] = ZetaPoly(1);
                solve1(G.bPart[0], [&] { return res_gamma_base().bPart.coeffs()[0] - ks; });
                if (!(res_L().bPart[1] == ZetaPoly(0)))
                    throw std::logic_error("sector normalization is inconsistent");
            } else {
                solve2(L.bPart[m], G.bPart[m], [&] { return res_L().bPart.coeffs()[m + 1]; },
                       [&] { return res_gamma_base().bPart.coeffs()[m] - ks; });
            }
        }

        SolutionSet sol;
        sol.order = N;
        sol.poleCut = cut;
        sol.numeratorDeg = P;
        sol.f = F.low.truncated(N);
        sol.l = L.low.truncated(N);
        sol.c = G.low.truncated(std::min(N + 1, 5));
        sol.g = F.aPart.truncated(sTop);
        sol.m = L.aPart.truncated(sTop);
        sol.d = G.aPart.truncated(sTop);
        sol.h = F.bPart.truncated(sTop);
        sol.n = L.bPart.truncated(sTop);
        sol.e = G.bPart.truncated(sTop);
        auto take = [&](const std::vector<KFunc>& v, int top) {
            return std::vector<KFunc>(v.begin(), v.begin() + top + 1);
        };
        sol.fk = take(Fk[0], N);
        sol.lk = take(Lk[0], N);
        sol.gk = take(Fk[1], sTop);
        sol.mk = take(Lk[1], sTop);
        sol.hk = take(Fk[2], sTop);
        sol.nk = take(Lk[2], sTop);
        sol.scaleNotes = "A sector scales with a free constant g0 (normalized to g(0) = 1); "
                         "B sector scales with a free constant n0 (normalized to n(0) = 1).";
        return sol;
    }

private:
    int N, cut, P, T;
    SZ F, L, G; // G = gamma / a
    std::vector<std::vector<KFunc>> Fk, Lk; // [sector][a-order], sectors {low, A, B}
    std::array<KFunc, 4> pk, qk;

    Series<ZetaPoly> a_var() const { return Series<ZetaPoly>::var(T); }

    SZ one_sym() const {
        SZ s(T);
        s.low = Series<ZetaPoly>::constant(ZetaPoly(1), T);
        return s;
    }

    SZ gamma_sq() const { // gamma^2 = a^2 (G)^2
        SZ g2 = symbol_mul(G, G);
        Series<ZetaPoly> a2 = Series<ZetaPoly>::constant(ZetaPoly(1), T).shifted(2);
        return symbol_scale(g2, a2);
    }

    SZ res_F() const { return F - one_sym() + gamma_apply(G, F, 1, 1); }
    SZ res_L() const { return L - gamma_sq() - gamma_apply(G, L, 2, 1); }

    SK fam_sym(const std::vector<std::vector<KFunc>>& fam) const {
        Series<KFunc> lo(T), aa(T), bb(T);
        for (int i = 0; i <= T; ++i) {
            lo[i] = fam[0][i];
            aa[i] = fam[1][i];
            bb[i] = fam[2][i];
        }
        return {lo, aa, bb};
    }

    SK res_Fk() const {
        SK fk = fam_sym(Fk);
        SK r = sym_mul_kfunc(fk, k_monomial(1, 1)) + gamma_apply(promote(G), fk, 1, 1);
        r.low[0] = r.low[0] - KFunc(1);
        return r;
    }

    SK res_Lk() const {
        SK lk = fam_sym(Lk);
        SK r = sym_mul_kfunc(lk, k_monomial(1, 1)) - gamma_apply(promote(G), lk, 2, 1);
        auto tw = gamma_tower(G, P);
        for (int n = 1; n <= P; ++n) {
            SK g2 = promote(symbol_mul(tw[n], tw[n]));
            r = r - sym_mul_kfunc(g2, qk[n]);
        }
        return r;
    }

    // k >= 2 sums entering the gamma equation, as coefficient functions of k;
    // only the coefficients a probe actually reads are closed via euler_sum
    SK ksum_raw() const {
        auto twz = gamma_tower(G, P);
        std::vector<SK> tw;
        for (auto& t : twz) tw.push_back(promote(t));
        SK total = fam_sym(Lk);
        SK fk = fam_sym(Fk);
        for (int n = 1; n <= P; ++n) {
            SK bracket = fk;
            Rational w = rat(1, 1);
            for (int i = 0; i < n; ++i) {
                // (1/k)(-1/k)^i gamma_i
                bracket = bracket -
                          sym_mul_kfunc(tw[i], KFunc(RatK::one_over_linear(0, i + 1) * w));
                w = -w;
            }
            Rational sgn = (n % 2 == 0) ? 2 : -2;
            SK tn = sym_mul_kfunc(symbol_mul(tw[n], bracket), k_monomial(n, sgn));
            tn = tn - sym_mul_kfunc(symbol_mul(tw[n], tw[n]), KFunc(RatK::one_over_linear(0, 1)));
            total = total + sym_mul_kfunc(tn, pk[n]);
        }
        return total;
    }

    // gamma-equation residual without the k sums
    SZ res_gamma_base() const {
        SZ Fm1 = F - one_sym();
        SZ s = sym_scale(F, 2) - one_sym() -
               sym_scale(symbol_scale(symbol_mul(G, Fm1), a_var()), 2) - gamma_sq() +
               sym_scale(L, rat(1, 2));
        return G - s;
    }

    template <class Res>
    void solve1(ZetaPoly& slot, Res res) {
        slot = ZetaPoly(0);
        ZetaPoly r0 = res();
        slot = ZetaPoly(1);
        Rational resp = rational_of(res() - r0);
        if (resp == 0) throw std::logic_error("degenerate probe");
        slot = r0 * ZetaPoly(-1 / resp);
    }

    template <class R1, class R2>
    void solve2(ZetaPoly& u, ZetaPoly& v, R1 r1, R2 r2) {
        u = ZetaPoly(0);
        v = ZetaPoly(0);
        ZetaPoly a0 = r1(), b0 = r2();
        u = ZetaPoly(1);
        Rational a11 = rational_of(r1() - a0), a21 = rational_of(r2() - b0);
        u = ZetaPoly(0);
        v = ZetaPoly(1);
        Rational a12 = rational_of(r1() - a0), a22 = rational_of(r2() - b0);
        Rational det = a11 * a22 - a12 * a21;
        if (det == 0) throw std::logic_error("degenerate probe pair");
        u = (a0 * ZetaPoly(-a22) + b0 * ZetaPoly(a12)) * ZetaPoly(1 / det);
        v = (a0 * ZetaPoly(a21) + b0 * ZetaPoly(-a11)) * ZetaPoly(1 / det);
    }

    template <class Res>
    void solveK(KFunc& slot, Res res) {
        slot = KFunc();
        KFunc r0 = res();
        slot = KFunc(1);
        KFunc resp = res() - r0;
        // the response must be a purely rational linear factor c (k + j)
        if (resp.terms().size() != 1) throw std::logic_error("non-linear family response");
        const auto& [key, rk] = *resp.terms().begin();
        if (!(key == HarmonicKey{0, 0}) || !rk.den().empty() || rk.num().deg() != 1)
            throw std::logic_error("non-linear family response");
        Rational lead = rational_of(rk.num().coeff(1));
        Rational j = rational_of(rk.num().coeff(0)) / lead;
        if (!is_integer(j)) throw std::logic_error("family response root is not integral");
        slot = (r0 * Rational(-1)).over_linear(lead, to_long(j));
    }
};

} // namespace detail

inline SolutionSet solve_truncated(int order, int poleCut = 40, int numeratorDeg = 3) {
    return detail::TruncSolver(order, poleCut, numeratorDeg).run();
}

// ---- audits -----------------------------------------------------------------

struct AuditReport {
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

inline AuditReport audits(const SolutionSet& sol) {
    AuditReport rep;
    auto has_even = [](const ZetaPoly& p) {
        ZetaPoly canon = p.canonical_even();
        for (auto& [mono, coef] : canon.terms())
            for (int arg : mono)
                if (arg % 2 == 0) return true;
        return false;
    };
    auto scan_even = [&](const char* name, const Series<ZetaPoly>& s) {
        for (int i = 0; i <= s.trunc(); ++i)
            if (has_even(s[i]))
                rep.violations.push_back(std::string(name) + " has an even zeta at order " +
                                         std::to_string(i));
    };
    scan_even("c", sol.c);
    scan_even("d", sol.d);
    scan_even("e", sol.e);
    scan_even("g", sol.g);
    scan_even("h", sol.h);
    scan_even("m", sol.m);
    scan_even("n", sol.n);
    auto scan_weight = [&](const char* name, const Series<ZetaPoly>& s) {
        for (int p = 0; p <= s.trunc(); ++p) {
            try {
                auto w = s[p].weight(WeightScheme::modified);
                if (w && *w > p)
                    rep.violations.push_back(std::string(name) + " order " + std::to_string(p) +
                                             " exceeds the weight bound");
            } catch (const ModifiedWeightOfEvenZeta&) {
                rep.violations.push_back(std::string(name) + " order " + std::to_string(p) +
                                         " has an even zeta in the weight scan");
            }
        }
    };
    scan_weight("d", sol.d);
    scan_weight("e", sol.e);
    return rep;
}

// ---- reduced system (first poles only): mechanical vs component form --------

struct ReducedComponents {
    Series<ZetaPoly> f, g, h, l, m, n, c, d, e;
};

// residuals of the three-function system generated through the symbol algebra
inline std::array<Series<ZetaPoly>, 9>
reduced_residuals_symbolic(const ReducedComponents& x) {
    using SZ = detail::SZ;
    int t = x.f.trunc();
    SZ F{x.f, x.g, x.h}, L{x.l, x.m, x.n}, G{x.c, x.d, x.e};
    SZ one(t);
    one.low = Series<ZetaPoly>::constant(ZetaPoly(1), t);
    Series<ZetaPoly> a2 = Series<ZetaPoly>::constant(ZetaPoly(1), t).shifted(2);
    SZ g2 = symbol_scale(symbol_mul(G, G), a2);
    SZ rF = F - one + gamma_apply(G, F, 1, 1);
    SZ rL = L - g2 - gamma_apply(G, L, 2, 1);
    SZ rhs = detail::sym_scale(F, 2) - one -
             detail::sym_scale(symbol_scale(symbol_mul(G, F - one), Series<ZetaPoly>::var(t)), 2) -
             g2 + detail::sym_scale(L, rat(1, 2));
    SZ rG = G - rhs;
    return {rF.low, rF.aPart, rF.bPart, rL.low, rL.aPart, rL.bPart, rG.low, rG.aPart, rG.bPart};
}

// the same system written out per component, with the symbol derivatives
// already folded into the coefficients
inline std::array<Series<ZetaPoly>, 9>
reduced_residuals_explicit(const ReducedComponents& x) {
    using S = Series<ZetaPoly>;
    int t = x.f.trunc();
    S a = S::var(t);
    auto a2del = [](const S& s) { return a_del_a(s).shifted(1); };
    auto adel = [](const S& s) { return a_del_a(s); };
    const S &f = x.f, &g = x.g, &h = x.h, &l = x.l, &m = x.m, &n = x.n, &c = x.c, &d = x.d,
            &e = x.e;
    S one = S::constant(ZetaPoly(1), t);
    S rf = f + c * (a2del(f).scaled(3) + a * f) - one;
    S rg = g + d * (a2del(f).scaled(3) + a * f) +
           c * (a2del(g).scaled(3) - g - (a * g).scaled(4));
    S rh = h + e * (a2del(f).scaled(3) + a * f) + c * (a2del(h).scaled(3) + h + a * h);
    S rl = l - a * a * c * c - a * c * (adel(l).scaled(3) + l.scaled(2));
    S rm = m - (a * a * d * c).scaled(2) - c * (a2del(m).scaled(3) - m - (a * m).scaled(3)) -
           a * d * (adel(l).scaled(3) + l.scaled(2));
    S rn = n - (a * a * e * c).scaled(2) - c * (a2del(n).scaled(3) + n + (a * n).scaled(2)) -
           a * e * (adel(l).scaled(3) + l.scaled(2));
    S rc = c - f.scaled(2) + one + (a * c * (f - one)).scaled(2) + a * a * c * c -
           l.scaled(rat(1, 2));
    S rd = d - g.scaled(2) - m.scaled(rat(1, 2)) + (a * (c * g + d * f - d)).scaled(2) +
           (a * a * c * d).scaled(2);
    S re = e - h.scaled(2) - n.scaled(rat(1, 2)) + (a * (c * h + e * f - e)).scaled(2) +
           (a * a * c * e).scaled(2);
    return {rf, rg, rh, rl, rm, rn, rc, rd, re};
}

// ---- scale fits ---------------------------------------------------------------

struct FitResult {
    double g0 = 0, n0 = 0;
    struct Row {
        int order;
        double g0, n0;
    };
    std::vector<Row> perOrder;
};

// Two-point fits of the free scales against externally supplied coefficients of
// gamma. The file holds whitespace-separated numbers: the coefficients of a^1,
// a^2, ... of gamma.
inline FitResult fit_scales(const SolutionSet& sol, const std::string& coeffFile) {
    std::ifstream in(coeffFile);
    if (!in) throw MissingData("cannot open coefficient file: " + coeffFile);
    std::vector<double> data{0.0}; // data[m] = coefficient of a^m
    double v;
    while (in >> v) data.push_back(v);
    if (data.size() < (size_t)sol.order + 5)
        throw MissingData("coefficient file holds too few orders for a fit");

    int M = (int)data.size() - 1;
    // tail series: gamma_A = a d(a) A(a), A_1 = 1, A_{i+1} = -(3i+5) A_i (scale absorbed in g0)
    std::vector<double> A(M + 2), B(M + 2);
    A[1] = B[1] = 1.0;
    for (int i = 1; i <= M; ++i) {
        A[i + 1] = -(3.0 * i + 5.0) * A[i];
        B[i + 1] = 3.0 * i * B[i];
    }
    auto tail = [&](const Series<ZetaPoly>& comp, const std::vector<double>& S, int mm) {
        double acc = 0;
        for (int j = 0; j <= comp.trunc() && mm - 1 - j >= 1; ++j)
            acc += numeric_eval_d(comp[j]) * S[mm - 1 - j];
        return acc;
    };
    FitResult fit;
    for (int mm = sol.order + 2; mm + 1 <= M; ++mm) {
        double a11 = tail(sol.d, A, mm), a12 = tail(sol.e, B, mm);
        double a21 = tail(sol.d, A, mm + 1), a22 = tail(sol.e, B, mm + 1);
        double det = a11 * a22 - a12 * a21;
        if (det == 0) continue;
        double g0 = (data[mm] * a22 - data[mm + 1] * a12) / det;
        double n0 = (data[mm + 1] * a11 - data[mm] * a21) / det;
        fit.perOrder.push_back({mm, g0, n0});
    }
    if (fit.perOrder.empty()) throw MissingData("no usable fit orders");
    fit.g0 = fit.perOrder.back().g0;
    fit.n0 = fit.perOrder.back().n0;
    return fit;
}

} // namespace dyson

#endif
