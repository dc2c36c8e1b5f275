#ifndef DYSON_SPECFUN_HPP
#define DYSON_SPECFUN_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dyson {

using cplx = std::complex<double>;

struct PoleArgument : std::domain_error {
    PoleArgument() : std::domain_error("Gamma pole at nonpositive integer") {}
};
struct UnsupportedDomain : std::domain_error {
    explicit UnsupportedDomain(const std::string& w) : std::domain_error(w) {}
};
struct OutsideConvergenceDomain : std::domain_error {
    OutsideConvergenceDomain() : std::domain_error("F4 outside sqrt|x|+sqrt|y| < 1") {}
};
struct ToleranceNotMet : std::runtime_error {
    ToleranceNotMet() : std::runtime_error("quadrature tolerance not met") {}
};

// ---- complex Gamma ---------------------------------------------------------

// Lanczos, g = 7, 9 coefficients (regression-tested against the recursion and
// reflection identities).
inline cplx gamma_complex(cplx z) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
        throw PoleArgument();
    if (z.real() < 0.5) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
        const double pi = 3.14159265358979323846;
        return pi / (std::sin(pi * z) * gamma_complex(1.0 - z));
    }
    z -= 1.0;
    cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + cplx(i, 0));
    cplx t = z + g + 0.5;
    const double sqrt2pi = 2.5066282746310005;
    return sqrt2pi * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline cplx log_gamma(cplx z) {
    // principal branch via recursion into a well-conditioned region
    cplx shift = 0;
    while (z.real() < 10) {
        shift -= std::log(z);
        z += 1.0;
    }
    // Stirling
    const double pi = 3.14159265358979323846;
    cplx r = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * pi);
    static const double B[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188};
    cplx zp = z;
    for (double b : B) {
        r += b / zp;
        zp *= z * z;
    }
    return r + shift;
}

// ---- error functions -------------------------------------------------------

// e^{p^2} erfc(p) without overflow for large positive p
inline double erfc_scaled(double p) {
    if (p < 0) {
        // erfc(p) = 2 - erfc(-p); safe directly since erfc(p) in (1,2]
        return std::exp(p * p) * (2.0 - std::exp(-p * p) * erfc_scaled(-p));
    }
    if (p <= 8.0) return std::exp(p * p) * std::erfc(p);
    // Laplace continued fraction with modified Lentz:
    // sqrt(pi) e^{p^2} erfc(p) = 1/(p + (1/2)/(p + 1/(p + (3/2)/(p + 2/(p + ...)))))
    const double sqrtpi = 1.7724538509055160273;
    double f = p, C = f, D = 0;
    for (int n = 1; n < 200; ++n) {
        double an = n / 2.0;
        D = p + an * D;
        if (D == 0) D = 1e-300;
        C = p + an / C;
        if (C == 0) C = 1e-300;
        D = 1 / D;
        double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / (sqrtpi * f);
}

// Dawson integral, Rybicki's sampling method
inline double dawson(double x) {
    const double h = 0.25;
    const int nmax = 13;
    static double aw[nmax + 1];
    static bool init = false;
    if (!init) {
        for (int i = 1; i <= nmax; ++i) aw[i] = std::exp(-((2.0 * i - 1.0) * h) * ((2.0 * i - 1.0) * h));
        init = true;
    }
    if (std::abs(x) < 0.2) {
        double x2 = x * x;
        return x * (1.0 + x2 * (-2.0 / 3 + x2 * (4.0 / 15 + x2 * (-8.0 / 105 + x2 * 16.0 / 945))));
    }
    double xx = std::abs(x);
    int n0 = 2 * static_cast<int>(0.5 * xx / h + 0.5);
    double xp = xx - n0 * h;
    double e1 = std::exp(2.0 * xp * h);
    double e2 = e1 * e1;
    double d1 = n0 + 1, d2 = d1 - 2.0;
    double sum = 0, t1 = e1;
    for (int i = 1; i <= nmax; ++i, d1 += 2.0, d2 -= 2.0, t1 *= e2)
        sum += aw[i] * (t1 / d1 + 1.0 / (d2 * t1));
    const double isqrtpi = 0.5641895835477562869;
    double r = isqrtpi * std::exp(-xp * xp) * sum;
    return x >= 0 ? r : -r;
}

inline double erfi(double p) {
    // erfi(p) = (2/sqrt(pi)) e^{p^2} D(p)
    const double twosqrtpi = 1.1283791670955125739;
    if (std::abs(p) < 3.0) {
        // direct series: (2/sqrt(pi)) sum p^{2n+1} / (n! (2n+1))
        double term = p, sum = p;
        for (int n = 1; n < 200; ++n) {
            term *= p * p / n;
            sum += term / (2 * n + 1);
            if (std::abs(term / (2 * n + 1)) < 1e-17 * std::abs(sum)) break;
        }
        return twosqrtpi * sum;
    }
    return twosqrtpi * std::exp(p * p) * dawson(p);
}

enum class ErfKind { erfc_scaled, erfi };
inline double erf_family(double p, ErfKind which) {
    return which == ErfKind::erfc_scaled ? erfc_scaled(p) : erfi(p);
}

// ---- Gauss 2F1 --------------------------------------------------------------

namespace detail {
inline bool near_nonpos_int(cplx z, double tol = 1e-9) {
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}
inline bool near_int(cplx z, double tol = 1e-9) {
    return std::abs(z.real() - std::round(z.real())) < tol && std::abs(z.imag()) < tol;
}

inline cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z) {
    cplx term = 1, sum = 1;
    for (int n = 0; n < 4000; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * z;
        sum += term;
        if (std::abs(term) < 1e-16 * (std::abs(sum) + 1.0) && n > 4) return sum;
    }
    throw UnsupportedDomain("2F1 series failed to converge");
}
} // namespace detail

inline cplx hyp2f1(cplx a, cplx b, cplx c, cplx z) {
    using detail::near_int;
    using detail::near_nonpos_int;
    if (near_nonpos_int(c)) throw UnsupportedDomain("2F1 with nonpositive integer c");
    if (near_nonpos_int(a) || near_nonpos_int(b)) {
        // terminating polynomial case (used by the Appell reduction lemma)
        return detail::hyp2f1_series(a, b, c, z);
    }
    if (std::abs(z) < 0.9) return detail::hyp2f1_series(a, b, c, z);
    cplx w = z / (z - 1.0);
    if (std::abs(w) < 0.99) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w);
    }
    if (std::abs(1.0 - z) < 0.9) {
        if (near_int(c - a - b))
            throw UnsupportedDomain("degenerate 1-z continuation (c-a-b integer)");
        cplx g1 = gamma_complex(c) * gamma_complex(c - a - b) /
                  (gamma_complex(c - a) * gamma_complex(c - b));
        cplx g2 = gamma_complex(c) * gamma_complex(a + b - c) /
                  (gamma_complex(a) * gamma_complex(b));
        return g1 * detail::hyp2f1_series(a, b, a + b - c + 1.0, 1.0 - z) +
               g2 * std::pow(1.0 - z, c - a - b) *
                   detail::hyp2f1_series(c - a, c - b, c - a - b + 1.0, 1.0 - z);
    }
    // Pfaff followed by the 1-z continuation on the transformed parameters
    cplx wp = 1.0 - w;
    if (std::abs(wp) < 0.9) {
        cplx a2 = a, b2 = c - b, c2 = c;
        if (near_int(c2 - a2 - b2))
            throw UnsupportedDomain("degenerate continuation (b-a integer after Pfaff)");
        cplx g1 = gamma_complex(c2) * gamma_complex(c2 - a2 - b2) /
                  (gamma_complex(c2 - a2) * gamma_complex(c2 - b2));
        cplx g2 = gamma_complex(c2) * gamma_complex(a2 + b2 - c2) /
                  (gamma_complex(a2) * gamma_complex(b2));
        cplx val = g1 * detail::hyp2f1_series(a2, b2, a2 + b2 - c2 + 1.0, wp) +
                   g2 * std::pow(wp, c2 - a2 - b2) *
                       detail::hyp2f1_series(c2 - a2, c2 - b2, c2 - a2 - b2 + 1.0, wp);
        return std::pow(1.0 - z, -a) * val;
    }
    throw UnsupportedDomain("2F1 argument outside supported continuation region");
}

// ---- Appell F4 ---------------------------------------------------------------

inline cplx appell_f4(cplx a, cplx b, cplx c, cplx d, double x, double y) {
    if (std::sqrt(std::abs(x)) + std::sqrt(std::abs(y)) >= 1.0)
        throw OutsideConvergenceDomain();
    // F4 = sum_{m,n} (a)_{m+n} (b)_{m+n} / ((c)_m (d)_n m! n!) x^m y^n,
    // summed by anti-diagonals s = m+n with term recurrences
    cplx sum = 0;
    cplx poch_ab = 1; // (a)_s (b)_s / s! at m+n = s, outer factor
    double rho = std::sqrt(std::abs(x)) + std::sqrt(std::abs(y));
    for (int s = 0; s < 600; ++s) {
        // inner: sum_{m=0}^{s} s!/(m!(s-m)!) * x^m y^{s-m} / ((c)_m (d)_{s-m})
        cplx inner = 0;
        cplx binom = 1; // s!/(m! (s-m)!)
        cplx pc = 1;    // (c)_m
        // (d)_{s-m}: build table once per s
        std::vector<cplx> pd(s + 1);
        pd[0] = 1;
        for (int i = 1; i <= s; ++i) pd[i] = pd[i - 1] * (d + double(i - 1));
        double xm = 1;
        for (int m = 0; m <= s; ++m) {
            inner += binom * xm * std::pow(y, s - m) / (pc * pd[s - m]);
            binom *= double(s - m) / double(m + 1);
            pc *= (c + double(m));
            xm *= x;
        }
        cplx term = poch_ab * inner;
        sum += term;
        poch_ab *= (a + double(s)) * (b + double(s)) / double(s + 1);
        if (s > 8 && std::abs(term) < 1e-17 * (std::abs(sum) + 1.0) &&
            std::abs(term) * std::pow(rho, 2) < 1e-17)
            break;
    }
    return sum;
}

// ---- adaptive quadrature -----------------------------------------------------

struct QuadratureSpec {
    std::function<double(double)> integrand;
    double a = 0, b = 1;        // b may be +infinity
    double expA = 0, expB = 0;  // endpoint singularity exponents t^exp (> -1)
    double absTol = 1e-10, relTol = 1e-10;
    int maxDepth = 40;
};

namespace detail {
struct QuadLeaf {
    double value;
    double err;
};
inline QuadLeaf adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                 double fa, double fm, double fb, double whole, double tol,
                                 int depth, int maxDepth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15 * tol || depth >= maxDepth)
        return {left + right + delta / 15, std::abs(delta) / 15};
    QuadLeaf l = adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth + 1, maxDepth);
    QuadLeaf r = adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth + 1, maxDepth);
    return {l.value + r.value, l.err + r.err};
}
} // namespace detail

struct QuadratureResult {
    double value;
    double errorEstimate;
};

inline QuadratureResult quad_adaptive(const QuadratureSpec& spec) {
    if (spec.absTol <= 0 || spec.relTol <= 0)
        throw std::invalid_argument("tolerances must be positive");
    std::function<double(double)> f = spec.integrand;
    double a = spec.a, b = spec.b;

    // infinite upper limit: t = a + u/(1-u); integrand decays by precondition
    if (std::isinf(b)) {
        double a0 = a;
        auto g = f;
        f = [g, a0](double u) {
            if (u >= 1.0) return 0.0;
            double t = a0 + u / (1 - u);
            double jac = 1.0 / ((1 - u) * (1 - u));
            return g(t) * jac;
        };
        a = 0;
        b = 1;
    }

    // endpoint singularity (t-a)^{expA}: substitute t = a + u^p with
    // p = 2/(1+expA), so the transformed integrand vanishes like u at u = 0
    if (spec.expA != 0) {
        double e = spec.expA;
        if (e <= -1) throw std::invalid_argument("endpoint exponent must be > -1");
        double p = 2.0 / (1.0 + e);
        auto g = f;
        double a0 = a;
        f = [g, a0, p](double u) {
            if (u <= 0.0) return 0.0;
            double t = a0 + std::pow(u, p);
            return g(t) * p * std::pow(u, p - 1.0);
        };
        b = std::pow(b - a, 1.0 / p);
        a = 0;
    }
    if (spec.expB != 0) {
        double e = spec.expB;
        if (e <= -1) throw std::invalid_argument("endpoint exponent must be > -1");
        double p = 2.0 / (1.0 + e);
        auto g = f;
        double b0 = b;
        f = [g, b0, p](double u) {
            if (u <= 0.0) return 0.0;
            double t = b0 - std::pow(u, p);
            return g(t) * p * std::pow(u, p - 1.0);
        };
        double width = b - a;
        a = 0;
        b = std::pow(width, 1.0 / p);
    }

    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    double tol = std::max(spec.absTol, spec.relTol * std::abs(whole));
    detail::QuadLeaf r = detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0, spec.maxDepth);
    if (!(r.err <= std::max(spec.absTol, spec.relTol * std::abs(r.value))) || std::isnan(r.value))
        throw ToleranceNotMet();
    return {r.value, r.err};
}

// complex-valued integrand helper built on the real engine
inline cplx quad_adaptive_complex(const std::function<cplx(double)>& f, QuadratureSpec spec) {
    QuadratureSpec re = spec, im = spec;
    re.integrand = [f](double t) { return f(t).real(); };
    im.integrand = [f](double t) { return f(t).imag(); };
    return {quad_adaptive(re).value, quad_adaptive(im).value};
}

} // namespace dyson

#endif
