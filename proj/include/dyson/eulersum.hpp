#ifndef DYSON_EULERSUM_HPP
#define DYSON_EULERSUM_HPP

#include "dyson/kfunc.hpp"
#include "dyson/zetapoly.hpp"

#include <deque>
#include <functional>
#include <stdexcept>
#include <utility>

namespace dyson {

struct UnsupportedSumFamily : std::domain_error {
    explicit UnsupportedSumFamily(const std::string& what) : std::domain_error(what) {}
};

enum class SumKind { rational, times_h, times_h_sq, times_h2 };

// sum_{k >= k0} R(k) * (harmonic factor), R given by integer-root factor lists:
// R(k) = scale * prod (k - numRoots[i]) / prod (k - denRoots[j])
struct SumSpec {
    SumKind kind = SumKind::rational;
    Rational scale = 1;
    std::vector<long> numRoots;
    std::vector<long> denRoots;
    long k0 = 1;
};

namespace detail {

// closed forms for sigma(p,q,s) = sum_{n>=1} H_n^p H_{n,2}^q / n^s
inline ZetaPoly sigma_value(int p, int q, int s) {
    using Z = ZetaPoly;
    auto zeta = [](int n) { return Z::zeta(n); };
    if (p == 0 && q == 0) {
        if (s >= 2) return zeta(s);
    } else if (p == 1 && q == 0 && s >= 2) {
        // Euler: sum H_n/n^s = (1 + s/2) zeta(s+1) - (1/2) sum_{i=1}^{s-2} zeta(i+1) zeta(s-i)
        if (s > 4) throw UnsupportedSumFamily("sigma(1,0,s) beyond weight 5 table");
        Z r = zeta(s + 1) * Z(rat(s + 2, 2));
        for (int i = 1; i <= s - 2; ++i) r -= zeta(i + 1) * zeta(s - i) * Z(rat(1, 2));
        return r;
    } else if (p == 2 && q == 0) {
        if (s == 2) return zeta(4) * Z(rat(17, 4));
        if (s == 3) return zeta(5) * Z(rat(7, 2)) - zeta(2) * zeta(3);
    } else if (p == 0 && q == 1) {
        if (s == 2) return zeta(4) * Z(rat(7, 4));
        if (s == 3) return zeta(2) * zeta(3) * Z(3) - zeta(5) * Z(rat(9, 2));
    }
    throw UnsupportedSumFamily("no reduction for sigma(" + std::to_string(p) + "," +
                               std::to_string(q) + "," + std::to_string(s) + ")");
}

struct SumAtom {
    ZetaPoly coeff;
    int p = 0, q = 0; // harmonic powers H_k^p H_{k,2}^q
    long j = 0;       // pole factor (k+j)^m
    int m = 0;
    long k0 = 1;
};

// partial harmonic sums up to N (H_{N}, H_{N,2}, and sum_{n<=N} 1/n^s)
inline Rational partial_power_sum(long N, int s) {
    Rational r = 0;
    for (long n = 1; n <= N; ++n) {
        Rational t = rat(1, n);
        Rational ts = 1;
        for (int i = 0; i < s; ++i) ts *= t;
        r += ts;
    }
    return r;
}
inline Rational partial_sigma_sum(int p, int q, int s, long N) {
    Rational r = 0, hk = 0, hk2 = 0;
    for (long n = 1; n <= N; ++n) {
        hk += rat(1, n);
        hk2 += rat(1, n * n);
        Rational t = 1;
        for (int i = 0; i < p; ++i) t *= hk;
        for (int i = 0; i < q; ++i) t *= hk2;
        Rational ns = 1;
        for (int i = 0; i < s; ++i) ns *= rat(1, n);
        r += t * ns;
    }
    return r;
}

} // namespace detail

// Exact evaluation of sum_{k >= k0} f(k) over the harmonic coefficient ring.
// Divergent canonical pieces are carried as formal symbols per harmonic family;
// the whole sum is rejected unless every such symbol cancels exactly.
inline ZetaPoly euler_sum_kfunc(const KFunc& f, long k0) {
    using detail::SumAtom;
    ZetaPoly finite(0);
    std::map<std::pair<int, int>, ZetaPoly> divergent;
    std::deque<SumAtom> work;

    auto enqueue_ratk = [&](const RatK& r, int p, int q, long start) {
        auto pf = r.partial_fractions();
        if (!pf.poly.is_zero())
            throw UnsupportedSumFamily("summand does not decay (polynomial part)");
        for (auto& a : pf.atoms) work.push_back({a.coeff, p, q, a.j, a.m, start});
    };

    for (auto& [key, ratk] : f.terms()) enqueue_ratk(ratk, key.h, key.h2, k0);

    while (!work.empty()) {
        SumAtom at = work.front();
        work.pop_front();
        long start = at.k0;
        if (start + at.j < 1)
            throw UnsupportedSumFamily("pole at or above the start index");

        if (at.p == 0 && at.q == 0) {
            long N = start + at.j - 1; // sum_{k>=start} 1/(k+j)^m = sum_{n>N} 1/n^m
            if (at.m >= 2) {
                finite += at.coeff * (ZetaPoly::zeta(at.m) -
                                      ZetaPoly(detail::partial_power_sum(N, at.m)));
            } else {
                divergent[{0, 0}] += at.coeff;
                finite -= at.coeff * ZetaPoly(detail::partial_power_sum(N, 1));
            }
            continue;
        }

        if (at.j == 0) {
            // canonical family sum_{n>=start} H_n^p H_{n,2}^q / n^m
            Rational head = detail::partial_sigma_sum(at.p, at.q, at.m, start - 1);
            if (at.m >= 2) {
                finite += at.coeff * (detail::sigma_value(at.p, at.q, at.m) - ZetaPoly(head));
            } else if (at.m == 1) {
                divergent[{at.p, at.q}] += at.coeff;
                finite -= at.coeff * ZetaPoly(head);
            } else {
                throw UnsupportedSumFamily("non-decaying harmonic atom");
            }
            continue;
        }

        // shift l = k + j and re-expand the harmonics around the pole at l = 0:
        // H_{l-j} = H_l - sum_{t=0}^{j-1} 1/(l-t)   (j >= 1)
        //         = H_l + sum_{t=1}^{-j}  1/(l+t)   (j <= -1)
        // The leading piece keeps (p,q) but is canonical; every cross term
        // strictly lowers the harmonic degree, so this terminates.
        long l0 = start + at.j;
        struct Corr {
            int sign;
            long u;
        };
        std::vector<Corr> corr;
        if (at.j >= 1)
            for (long t = 0; t < at.j; ++t) corr.push_back({-1, -t});
        else
            for (long t = 1; t <= -at.j; ++t) corr.push_back({+1, t});

        // choice per harmonic factor: -1 keeps the carrier, otherwise index into corr
        int nc = static_cast<int>(corr.size());
        std::vector<int> choice(at.p + at.q, -1);
        auto emit = [&]() {
            int p2 = 0, q2 = 0;
            Rational sgn = 1;
            std::map<long, int> den;
            den[0] = at.m;
            for (int f2 = 0; f2 < at.p + at.q; ++f2) {
                bool second = f2 >= at.p; // H_{k,2} slot: squared correction fractions
                if (choice[f2] < 0) {
                    (second ? q2 : p2)++;
                } else {
                    const Corr& c = corr[choice[f2]];
                    sgn *= c.sign;
                    den[c.u] += second ? 2 : 1;
                }
            }
            RatK piece(KPoly(at.coeff * ZetaPoly(sgn)), std::move(den));
            auto pf = piece.partial_fractions();
            if (!pf.poly.is_zero()) throw UnsupportedSumFamily("unexpected polynomial part");
            for (auto& a : pf.atoms) work.push_back({a.coeff, p2, q2, a.j, a.m, l0});
        };
        std::function<void(int)> enumerate = [&](int slot) {
            if (slot == at.p + at.q) {
                emit();
                return;
            }
            for (int c = -1; c < nc; ++c) {
                choice[slot] = c;
                enumerate(slot + 1);
            }
        };
        enumerate(0);
    }

    for (auto& [fam, coef] : divergent)
        if (!coef.is_zero())
            throw UnsupportedSumFamily("divergent family fails to cancel");
    return finite.canonical_even();
}

inline KFunc kfunc_from_spec(const SumSpec& spec) {
    KPoly num(ZetaPoly(spec.scale));
    for (long r : spec.numRoots) num = num.times_linear(-r);
    std::map<long, int> den;
    for (long r : spec.denRoots) den[-r] += 1;
    if (static_cast<long>(spec.denRoots.size()) <
        static_cast<long>(spec.numRoots.size()) + 2)
        throw UnsupportedSumFamily("denominator degree must exceed numerator degree by 2");
    for (long r : spec.denRoots)
        if (r >= spec.k0) throw UnsupportedSumFamily("denominator root at or above start index");
    RatK ratk(std::move(num), std::move(den));
    switch (spec.kind) {
        case SumKind::rational: return KFunc(ratk);
        case SumKind::times_h: return KFunc::harmonic(1, 0, ratk);
        case SumKind::times_h_sq: return KFunc::harmonic(2, 0, ratk);
        default: return KFunc::harmonic(0, 1, ratk);
    }
}

inline ZetaPoly euler_sum(const SumSpec& spec) {
    return euler_sum_kfunc(kfunc_from_spec(spec), spec.k0);
}

} // namespace dyson

#endif
