#ifndef DYSON_MELLIN_HPP
#define DYSON_MELLIN_HPP

#include "dyson/kfunc.hpp"
#include "dyson/series.hpp"
#include "dyson/specfun.hpp"
#include "dyson/zetapoly.hpp"

#include <complex>
#include <stdexcept>

namespace dyson {

struct PoleProximity : std::domain_error {
    PoleProximity() : std::domain_error("Mellin kernel evaluated too close to a pole") {}
};
struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& w) : std::out_of_range(w) {}
};

// H(x,y) = Gamma(1+x)Gamma(1+y)Gamma(1-x-y) / (Gamma(1-x)Gamma(1-y)Gamma(2+x+y))
inline cplx h_numeric(cplx x, cplx y, double poleDistance = 1e-8) {
    auto near_pole = [&](cplx z) {
        // Gamma(z) poles at nonpositive integers
        double r = std::round(z.real());
        return r <= 0.0 && std::abs(z - cplx(r, 0)) < poleDistance;
    };
    for (cplx z : {1.0 + x, 1.0 + y, 1.0 - x - y, 1.0 - x, 1.0 - y, 2.0 + x + y})
        if (near_pole(z)) throw PoleProximity();
    return gamma_complex(1.0 + x) * gamma_complex(1.0 + y) * gamma_complex(1.0 - x - y) /
           (gamma_complex(1.0 - x) * gamma_complex(1.0 - y) * gamma_complex(2.0 + x + y));
}

// exact Taylor coefficients of H to total degree N:
// [1/(1+x+y)] exp(2 sum_j zeta(2j+1)/(2j+1) ((x+y)^{2j+1} - x^{2j+1} - y^{2j+1}))
inline BiSeries<ZetaPoly> h_taylor(int N) {
    using BS = BiSeries<ZetaPoly>;
    BS x = BS::x(N), y = BS::y(N);
    BS xy = x + y;
    // exponent
    BS expo(N);
    BS xyp = xy, xp = x, yp = y; // odd powers, advanced by squares
    for (int j = 1; 2 * j + 1 <= N; ++j) {
        xyp = xyp * xy * xy;
        xp = xp * x * x;
        yp = yp * y * y;
        ZetaPoly c = ZetaPoly::zeta(2 * j + 1) * ZetaPoly(rat(2, 2 * j + 1));
        expo = expo + (xyp - xp - yp) * c;
    }
    BS expFactor = expo.exp();
    // 1/(1+x+y) = sum (-1)^m (x+y)^m
    BS geom = BS::constant(ZetaPoly(1), N);
    BS pw = BS::constant(ZetaPoly(1), N);
    for (int m = 1; m <= N; ++m) {
        pw = pw * xy;
        geom = geom + pw * ZetaPoly(rat((m % 2 == 0) ? 1 : -1));
    }
    return geom * expFactor;
}

enum class ResidueSide { negative, line };

// residue polynomials in X = xy at the poles x = -k (side negative, P_k) and
// x + y = k (side line, Q_k)
struct ResiduePoly {
    int k;
    ResidueSide side;
    std::vector<Rational> coeffs; // coefficient of X^n
};

inline ResiduePoly residues(int k, ResidueSide side, int maxdeg) {
    if (side == ResidueSide::negative && k < 2)
        throw IndexOutOfRange("negative-side residues need k >= 2 (k = 1 is the fixed 1+xy)");
    if (side == ResidueSide::line && k < 1) throw IndexOutOfRange("line residues need k >= 1");
    if (maxdeg < 0) throw IndexOutOfRange("maxdeg must be nonnegative");

    // polynomial arithmetic over Rational, truncated at maxdeg
    auto mul_lin = [&](std::vector<Rational>& poly, const Rational& c) {
        // poly *= (1 + c X)
        std::vector<Rational> out(std::min<size_t>(poly.size() + 1, maxdeg + 1), 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            if (i < out.size()) out[i] += poly[i];
            if (i + 1 < out.size()) out[i + 1] += poly[i] * c;
        }
        poly = std::move(out);
    };

    std::vector<Rational> p{0};
    if (side == ResidueSide::negative) {
        // P_k(X) = [X/(k(k-1))] prod_{i=1}^{k}(1+X/(ki)) prod_{i=1}^{k-2}(1+X/(ki))
        p = {1};
        for (int i = 1; i <= k; ++i) mul_lin(p, rat(1, (long)k * i));
        for (int i = 1; i <= k - 2; ++i) mul_lin(p, rat(1, (long)k * i));
        // shift by X/(k(k-1))
        std::vector<Rational> out(maxdeg + 1, 0);
        for (size_t i = 0; i + 1 <= (size_t)maxdeg && i < p.size(); ++i)
            out[i + 1] = p[i] / ((long)k * (k - 1));
        p = std::move(out);
    } else {
        // Q_k(X) = [X/(k(k+1))] prod_{i=1}^{k-1}(1 - X/(i(k-i)))
        p = {1};
        for (int i = 1; i <= k - 1; ++i) mul_lin(p, rat(-1, (long)i * (k - i)));
        std::vector<Rational> out(maxdeg + 1, 0);
        for (size_t i = 0; i + 1 <= (size_t)maxdeg && i < p.size(); ++i)
            out[i + 1] = p[i] / ((long)k * (k + 1));
        p = std::move(out);
    }
    p.resize(maxdeg + 1, 0);
    return {k, side, std::move(p)};
}

// residue coefficients as exact functions of k (numerator degree n <= 3), in
// the harmonic coefficient ring: p_{k,n} and q_{k,n}
inline KFunc residue_coeff_k(ResidueSide side, int n) {
    if (n < 1 || n > 3) throw IndexOutOfRange("symbolic residue coefficients support n in 1..3");
    auto inv_poly = [](std::initializer_list<std::pair<long, int>> factors) {
        std::map<long, int> den;
        for (auto& [j, m] : factors) den[j] += m;
        return RatK(KPoly(ZetaPoly(1)), std::move(den));
    };
    if (side == ResidueSide::negative) {
        // common factor 1/(k^n (k-1))
        if (n == 1) return KFunc(inv_poly({{0, 1}, {-1, 1}}));
        if (n == 2) {
            // p_{k,2} = (H_k + H_{k-2}) / (k^2 (k-1)), expanded over {H_k}
            RatK base = inv_poly({{0, 2}, {-1, 1}});
            return KFunc::harmonic(1, 0, base) * ZetaPoly(2) - KFunc(base.over_linear(1, 0)) -
                   KFunc(base.over_linear(1, -1));
        }
        // p_{k,3} = [H_k H_{k-2} + (H_k^2 - H_{k,2})/2 + (H_{k-2}^2 - H_{k-2,2})/2] / (k^3(k-1))
        // with H_{k-2} = H_k - 1/k - 1/(k-1), H_{k-2,2} = H_{k,2} - 1/k^2 - 1/(k-1)^2
        RatK base = inv_poly({{0, 3}, {-1, 1}});
        RatK u = RatK(KPoly(ZetaPoly(1)), {{0, 1}}) + RatK(KPoly(ZetaPoly(1)), {{-1, 1}}); // 1/k + 1/(k-1)
        RatK u2 = RatK(KPoly(ZetaPoly(1)), {{0, 2}}) + RatK(KPoly(ZetaPoly(1)), {{-1, 2}}); // 1/k^2 + 1/(k-1)^2
        // H_k(H_k - u) + (H_k^2 - H_{k,2})/2 + ((H_k-u)^2 - H_{k,2} + u2)/2
        //   = 2 H_k^2 - 2 u H_k - H_{k,2} + u^2/2 + u2/2
        KFunc r = KFunc::harmonic(2, 0, base * Rational(2)) -
                  KFunc::harmonic(1, 0, base * u * Rational(2)) -
                  KFunc::harmonic(0, 1, base) +
                  KFunc(base * (u * u) * rat(1, 2)) + KFunc(base * u2 * rat(1, 2));
        return r;
    }
    // line side, common factor 1/(k^n (k+1))
    if (n == 1) return KFunc(inv_poly({{0, 1}, {1, 1}}));
    RatK base2 = inv_poly({{0, 2}, {1, 1}});
    RatK inv_k = RatK(KPoly(ZetaPoly(1)), {{0, 1}});
    if (n == 2) {
        // q_{k,2} = -2 H_{k-1} / (k^2 (k+1)), H_{k-1} = H_k - 1/k
        return KFunc::harmonic(1, 0, base2 * Rational(-2)) + KFunc(base2.over_linear(1, 0) * Rational(2));
    }
    // q_{k,3} = [2 H_{k-1}^2 - H_{k-1,2} - 2 H_{k-1}/k] / (k^3 (k+1))
    RatK base3 = inv_poly({{0, 3}, {1, 1}});
    // H_{k-1} = H_k - 1/k, H_{k-1,2} = H_{k,2} - 1/k^2
    // 2(H_k - 1/k)^2 - (H_{k,2} - 1/k^2) - 2(H_k - 1/k)/k
    //   = 2H_k^2 - 6H_k/k - H_{k,2} + 5/k^2
    return KFunc::harmonic(2, 0, base3 * Rational(2)) -
           KFunc::harmonic(1, 0, base3 * inv_k * Rational(6)) -
           KFunc::harmonic(0, 1, base3) + KFunc(base3 * (inv_k * inv_k) * Rational(5));
}

// numeric evaluation of the pole expansion vs the Gamma-ratio form
struct PoleSumReport {
    cplx partial;
    cplx direct;
    double gap;
};

inline PoleSumReport pole_sum_check(cplx x, cplx y, long K) {
    cplx X = x * y;
    cplx s = (1.0 + X) * (1.0 / (1.0 + x) + 1.0 / (1.0 + y) - 1.0) + 0.5 * X / (1.0 - x - y);
    for (long k = 2; k <= K; ++k) {
        // P_k(X) and Q_k(X) by their product forms
        cplx P = X / double(k * (k - 1));
        for (long i = 1; i <= k; ++i) P *= 1.0 + X / double(k * i);
        for (long i = 1; i <= k - 2; ++i) P *= 1.0 + X / double(k * i);
        cplx Q = X / double(k * (k + 1));
        for (long i = 1; i <= k - 1; ++i) Q *= 1.0 - X / double(i * (k - i));
        s += (1.0 / (double(k) + x) + 1.0 / (double(k) + y) - 1.0 / double(k)) * P;
        s += Q / (double(k) - x - y);
    }
    cplx direct = h_numeric(x, y);
    return {s, direct, std::abs(s - direct)};
}

} // namespace dyson

#endif
