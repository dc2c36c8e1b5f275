#pragma once
// Closed-form parametric solutions of the linear Schwinger-Dyson equations
// (massless Yukawa, massive Yukawa limits, massive Wess-Zumino) together with
// finite-difference residual verification of the governing ODEs and the
// anomalous-dimension series of the massless Yukawa model.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "series.hpp"
#include "specfun.hpp"

namespace dyson {

struct NoRoot : std::runtime_error {
    explicit NoRoot(const std::string& msg) : std::runtime_error("no root: " + msg) {}
};
struct InvalidRegime : std::runtime_error {
    explicit InvalidRegime(const std::string& tag)
        : std::runtime_error("invalid regime/model tag: " + tag) {}
};
struct GridTooCoarse : std::runtime_error {
    GridTooCoarse() : std::runtime_error("grid too coarse: need at least 5 samples") {}
};

struct ModelContext {
    std::string model;
    double a = 0.0;
    double mratio = 0.0;  // m^2 / mu^2
    double gamma = 0.0;   // anomalous dimension attached to the model branch
    double delta = 0.0;   // massive anomalous dimension (UV / deep-IR inputs)
    double p0 = 0.0;
};

struct ParamPoint {
    double p = 0.0;
    double q2_over_mu2 = 0.0;
    double G = 0.0;
    std::optional<double> M;
    ModelContext context;
};

namespace detail {

// bracketed bisection followed by a short Newton polish; f must change sign
// on [lo, hi] and be monotone there
inline double solve_root(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw NoRoot("no sign change in bracket");
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const double d = df(x);
        if (d == 0.0) break;
        const double step = f(x) / d;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

}  // namespace detail

// p0 of the massless Yukawa solution: sqrt(pi) e^{p0^2} erfc(p0) = sqrt(a/2).
// Solved on the scaled form, which is monotone decreasing and never overflows.
inline double yukawa_massless_p0(double a) {
    if (a <= 0.0) throw std::invalid_argument("coupling must be positive");
    const double sqrtpi = 1.7724538509055160273;
    const double target = std::sqrt(a / 2.0);
    auto f = [&](double p) { return sqrtpi * erfc_scaled(p) - target; };
    // d/dp [sqrt(pi) e^{p^2} erfc(p)] = 2p sqrt(pi) e^{p^2} erfc(p) - 2
    auto df = [&](double p) { return 2.0 * p * sqrtpi * erfc_scaled(p) - 2.0; };
    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 200 && f(lo) <= 0.0; ++it) lo = 2.0 * lo - 1.0;
    for (int it = 0; it < 200 && f(hi) >= 0.0; ++it) hi = 2.0 * hi + 1.0;
    if (f(lo) <= 0.0 || f(hi) >= 0.0) throw NoRoot("bracketing failed for p0");
    return detail::solve_root(f, df, lo, hi);
}

inline ParamPoint yukawa_massless(double p, double a) {
    const double p0 = yukawa_massless_p0(a);
    const double pi = 3.14159265358979323846;
    const double sp = erfc_scaled(p), sp0 = erfc_scaled(p0);
    ParamPoint pt;
    pt.p = p;
    pt.G = std::sqrt(a / (2.0 * pi)) / sp;
    // q^2/mu^2 = sqrt(erfc(p)/erfc(p0)), evaluated without forming erfc itself
    pt.q2_over_mu2 = std::exp(0.5 * (p0 * p0 - p * p)) * std::sqrt(sp / sp0);
    pt.context.model = "yukawa-massless";
    pt.context.a = a;
    pt.context.gamma = std::sqrt(2.0 * a) * p0 - 2.0;  // gamma-tilde
    pt.context.p0 = p0;
    return pt;
}

// p0 of the massive Wess-Zumino solution: alpha(p0) = sqrt(a/2)/(1 + m^2/mu^2)
// with alpha(p) = (sqrt(pi)/2) e^{-p^2} Erfi(p) = dawson(p), taken on the
// decreasing branch right of the Dawson maximum.
inline double wz_massive_p0(double a, double mratio) {
    if (a <= 0.0) throw std::invalid_argument("coupling must be positive");
    if (mratio < 0.0) throw std::invalid_argument("mass ratio must be nonnegative");
    const double pmax = 0.92413887300459176701;  // argmax of dawson
    const double target = std::sqrt(a / 2.0) / (1.0 + mratio);
    if (target > dawson(pmax)) throw NoRoot("alpha(p0) above the Dawson maximum");
    auto f = [&](double p) { return dawson(p) - target; };
    auto df = [&](double p) { return 1.0 - 2.0 * p * dawson(p); };
    double hi = 2.0 * pmax;
    for (int it = 0; it < 200 && f(hi) >= 0.0; ++it) hi *= 2.0;
    if (f(hi) >= 0.0) throw NoRoot("bracketing failed for p0");
    return detail::solve_root(f, df, pmax, hi);
}

inline ParamPoint wz_massive(double p, double a, double mratio) {
    const double p0 = wz_massive_p0(a, mratio);
    const double dp = dawson(p), dp0 = dawson(p0);
    if (dp <= 0.0) throw std::invalid_argument("p outside the Erfi(p) > 0 branch");
    ParamPoint pt;
    pt.p = p;
    // G = sqrt(2a/pi) e^{p^2}/Erfi(p) - (m^2/mu^2) Erfi(p0)/Erfi(p), with
    // Erfi(p) = (2/sqrt(pi)) e^{p^2} dawson(p) so both terms stay bounded
    pt.G = std::sqrt(a / 2.0) / dp - mratio * std::exp(p0 * p0 - p * p) * dp0 / dp;
    pt.q2_over_mu2 = std::exp(p * p - p0 * p0) * dp / dp0;
    pt.context.model = "wz-massive";
    pt.context.a = a;
    pt.context.mratio = mratio;
    pt.context.gamma = std::sqrt(2.0 * a) * p0 - 1.0;
    pt.context.p0 = p0;
    return pt;
}

namespace detail {

// one application of the fixed-point map
//   gamma |-> 2 sum_{n>=1} (2n-1)!! (-a)^n / (2+gamma)^{2n}
// on series in a, truncated at the order of g
inline Series<Rational> gamma_fixed_point(const Series<Rational>& g) {
    const int N = g.trunc();
    const auto one = Series<Rational>::constant(rat(1), N);
    const Series<Rational> s = Series<Rational>::constant(rat(2), N) + g;
    const Series<Rational> inv2 = one / (s * s);  // 1/(2+gamma)^2
    Series<Rational> next(N);
    Series<Rational> powi = one;
    Rational dfact = rat(1);  // (2n-1)!!
    for (int n = 1; n <= N; ++n) {
        powi = powi * inv2;
        dfact = dfact * rat(2 * n - 1);
        const Rational scale = rat(2) * dfact * (n % 2 ? rat(-1) : rat(1));
        next = next + (powi * scale).shifted(n);
    }
    return next;
}

}  // namespace detail

// gamma-tilde of the massless Yukawa model as an exact series in a, from the
// asymptotic series of alpha-tilde and p0 = (2+gamma)/sqrt(2a)
inline Series<Rational> yukawa_gamma_series(int N) {
    if (N < 0) throw std::invalid_argument("negative order");
    if (N > 12) throw std::invalid_argument("order above supported range");
    Series<Rational> g(N);
    for (int pass = 0; pass < N; ++pass) g = detail::gamma_fixed_point(g);
    return g;
}

// residual of the defining fixed-point relation; identically zero for the
// series produced by yukawa_gamma_series
inline Series<Rational> yukawa_gamma_residual(const Series<Rational>& g) {
    return g - detail::gamma_fixed_point(g);
}

struct RegimeInputs {
    double a = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
};

struct RegimePoint {
    double q2_over_mu2 = 0.0;
    double G = 0.0;
    double M = 0.0;
};

// evaluator for one regime of the massive Yukawa model; the argument of at()
// is the parameter p for "uv" and q^2/mu^2 directly for the infrared regimes
struct RegimeEvaluator {
    std::string regime;
    std::function<RegimePoint(double)> at;
    double p0 = 0.0;  // uv only
};

inline RegimeEvaluator yukawa_massive_limits(const std::string& regime, const RegimeInputs& in) {
    RegimeEvaluator ev;
    ev.regime = regime;
    if (regime == "uv") {
        const double a = in.a, delta = in.delta;
        const double p0 = yukawa_massless_p0(a);
        ev.p0 = p0;
        ev.at = [a, delta, p0](double p) {
            const double pi = 3.14159265358979323846;
            const double sp = erfc_scaled(p), sp0 = erfc_scaled(p0);
            RegimePoint r;
            r.q2_over_mu2 = std::exp(0.5 * (p0 * p0 - p * p)) * std::sqrt(sp / sp0);
            r.G = std::sqrt(a / (2.0 * pi)) / sp;
            const double lam = p0 - delta / std::sqrt(2.0 * a);
            r.M = std::exp(-p * p) *
                  (std::exp(p0 * p0) + std::sqrt(pi) * lam * (erfi(p) - erfi(p0)));
            return r;
        };
    } else if (regime == "soft-ir") {
        // reference scale mu = (m/2) sqrt(3/a); in z = (q^2/mu^2)^2 the mass
        // function is (2/sqrt(3)) z^{3/4} and G-tilde = z G has exponents
        // 1/2 +- sqrt(7)/4
        const double A = 0.5 + (1.0 + in.gamma) / std::sqrt(7.0);
        const double B = 0.5 - (1.0 + in.gamma) / std::sqrt(7.0);
        ev.at = [A, B](double x) {
            const double s = std::sqrt(7.0) / 2.0;
            RegimePoint r;
            r.q2_over_mu2 = x;
            r.G = A * std::pow(x, s - 1.0) + B * std::pow(x, -s - 1.0);
            r.M = std::sqrt(x);  // 2 sqrt(a/3) q/m at the reference scale
            return r;
        };
    } else if (regime == "deep-ir") {
        const double gamma = in.gamma, delta = in.delta;
        ev.at = [gamma, delta](double x) {
            RegimePoint r;
            r.q2_over_mu2 = x;
            r.M = 1.0 + delta - delta / x;
            r.G = 1.0 + 0.5 * gamma - 0.5 * gamma / (x * x);
            return r;
        };
    } else {
        throw InvalidRegime(regime);
    }
    return ev;
}

namespace detail {

// Fornberg finite-difference weights: c[k][j] is the weight of f(xs[j]) in
// the k-th derivative at x0, for k = 0..m
inline std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& xs,
                                                   int m) {
    const int n = static_cast<int>(xs.size());
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

// first and second derivatives on a strictly increasing grid via 5-point
// nonuniform stencils, clamped near the ends
inline void fd_derivs(const std::vector<double>& x, const std::vector<double>& f,
                      std::vector<double>& d1, std::vector<double>& d2) {
    const int n = static_cast<int>(x.size());
    if (n < 5) throw GridTooCoarse();
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int lo = std::clamp(i - 2, 0, n - 5);
        const std::vector<double> nodes(x.begin() + lo, x.begin() + lo + 5);
        const auto w = fd_weights(x[i], nodes, 2);
        for (int j = 0; j < 5; ++j) {
            d1[i] += w[1][j] * f[lo + j];
            d2[i] += w[2][j] * f[lo + j];
        }
    }
}

// reorder (x, f) so x is strictly increasing; parametric pairs can come out
// decreasing in the parameter
inline void sort_increasing(std::vector<double>& x, std::vector<double>& f) {
    if (x.size() >= 2 && x.front() > x.back()) {
        std::reverse(x.begin(), x.end());
        std::reverse(f.begin(), f.end());
    }
}

}  // namespace detail

struct ResidualSpec {
    std::string model;  // yukawa-massless | yukawa-massless-z | wz-massive | uv | soft-ir | deep-ir
    double a = 1.0;
    double mratio = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

// max absolute residual of the equation each solution was derived from,
// with derivatives taken by 5-point nonuniform finite differences in the
// physical variable. The grid holds p-samples for the parametric models
// (yukawa-massless, yukawa-massless-z, wz-massive, uv), z-samples for
// soft-ir and q^2/mu^2 samples for deep-ir.
inline double max_residual(const ResidualSpec& spec, const std::vector<double>& grid) {
    const int n = static_cast<int>(grid.size());
    if (n < 5) throw GridTooCoarse();
    std::vector<double> d1, d2;
    double worst = 0.0;
    // residuals are collected where the 5-point stencil is centered; the
    // clamped one-sided end stencils lose an order of accuracy and would
    // only measure the grid, not the solution
    const int first = 2, last = n - 3;
    auto keep = [&worst](double r) { worst = std::max(worst, std::abs(r)); };

    if (spec.model == "yukawa-massless") {
        // G(x) D(D+2) G(x) = -a in x = q^2/mu^2
        std::vector<double> x(n), G(n);
        for (int i = 0; i < n; ++i) {
            const ParamPoint pt = yukawa_massless(grid[i], spec.a);
            x[i] = pt.q2_over_mu2;
            G[i] = pt.G;
        }
        detail::sort_increasing(x, G);
        detail::fd_derivs(x, G, d1, d2);
        for (int i = first; i <= last; ++i)
            keep(G[i] * (x[i] * x[i] * d2[i] + 3.0 * x[i] * d1[i]) + spec.a);
    } else if (spec.model == "yukawa-massless-z") {
        // the integrated form 2 G-tilde G-tilde'' = -1 in z = (q^2/mu^2)^2
        const double p0 = yukawa_massless_p0(spec.a);
        std::vector<double> z(n), Gt(n);
        for (int i = 0; i < n; ++i) {
            const double p = grid[i];
            z[i] = std::exp(p0 * p0 - p * p) * erfc_scaled(p) / erfc_scaled(p0);
            Gt[i] = std::sqrt(2.0 / spec.a) * std::exp(p0 * p0 - p * p);
        }
        detail::sort_increasing(z, Gt);
        detail::fd_derivs(z, Gt, d1, d2);
        for (int i = first; i <= last; ++i) keep(2.0 * Gt[i] * d2[i] + 1.0);
    } else if (spec.model == "wz-massive") {
        // [G(x) + m^2/x] D(D+1) G(x) = a in x = q^2/mu^2 (mu = 1 units)
        std::vector<double> x(n), G(n);
        for (int i = 0; i < n; ++i) {
            const ParamPoint pt = wz_massive(grid[i], spec.a, spec.mratio);
            x[i] = pt.q2_over_mu2;
            G[i] = pt.G;
        }
        detail::sort_increasing(x, G);
        detail::fd_derivs(x, G, d1, d2);
        for (int i = first; i <= last; ++i)
            keep((G[i] + spec.mratio / x[i]) * (x[i] * x[i] * d2[i] + 2.0 * x[i] * d1[i]) -
                 spec.a);
    } else if (spec.model == "uv") {
        // the UV limit equation 2 G-tilde^2 M-tilde'' = -M-tilde in z
        const auto ev = yukawa_massive_limits("uv", {spec.a, spec.gamma, spec.delta});
        const double p0 = ev.p0;
        std::vector<double> z(n), Mt(n), Gt(n);
        for (int i = 0; i < n; ++i) {
            const double p = grid[i];
            z[i] = std::exp(p0 * p0 - p * p) * erfc_scaled(p) / erfc_scaled(p0);
            Gt[i] = std::sqrt(2.0 / spec.a) * std::exp(p0 * p0 - p * p);
            Mt[i] = ev.at(p).M;
        }
        if (z.front() > z.back()) {  // z decreases with p; reverse all three together
            std::reverse(z.begin(), z.end());
            std::reverse(Mt.begin(), Mt.end());
            std::reverse(Gt.begin(), Gt.end());
        }
        detail::fd_derivs(z, Mt, d1, d2);
        for (int i = first; i <= last; ++i) keep(2.0 * Gt[i] * Gt[i] * d2[i] + Mt[i]);
    } else if (spec.model == "soft-ir") {
        // 4 M-tilde d/dz [sqrt(z) M-tilde'] = 1 and (16/3) G-tilde'' = G-tilde/z^2
        const auto ev = yukawa_massive_limits("soft-ir", {spec.a, spec.gamma, spec.delta});
        std::vector<double> z = grid, Mt(n), Gt(n);
        const double root = std::sqrt(3.0);
        for (int i = 0; i < n; ++i) {
            Mt[i] = (2.0 / root) * std::pow(z[i], 0.75);
            const double x = std::sqrt(z[i]);  // q^2/mu^2
            Gt[i] = z[i] * ev.at(x).G;
        }
        detail::fd_derivs(z, Mt, d1, d2);
        for (int i = first; i <= last; ++i) {
            const double sz = std::sqrt(z[i]);
            // d/dz [sqrt(z) M'] = sqrt(z) M'' + M'/(2 sqrt(z))
            keep(4.0 * Mt[i] * (sz * d2[i] + d1[i] / (2.0 * sz)) - 1.0);
        }
        detail::fd_derivs(z, Gt, d1, d2);
        for (int i = first; i <= last; ++i) keep((16.0 / 3.0) * d2[i] - Gt[i] / (z[i] * z[i]));
    } else if (spec.model == "deep-ir") {
        // the decoupled pair x^2 M'' + 2x M' = 0, x^2 G'' + 3x G' = 0.
        // Differencing in u = 1/x, where both closed forms are polynomials
        // the 5-point weights reproduce exactly:
        //   x^2 M'' + 2x M' = u^2 M_uu,  x^2 G'' + 3x G' = u^2 G_uu - u G_u
        const auto ev = yukawa_massive_limits("deep-ir", {spec.a, spec.gamma, spec.delta});
        std::vector<double> u(n), M(n), G(n);
        for (int i = 0; i < n; ++i) {
            u[i] = 1.0 / grid[i];
            const RegimePoint r = ev.at(grid[i]);
            M[i] = r.M;
            G[i] = r.G;
        }
        detail::sort_increasing(u, M);
        std::vector<double> u2(n);
        for (int i = 0; i < n; ++i) u2[i] = 1.0 / grid[i];
        detail::sort_increasing(u2, G);
        detail::fd_derivs(u, M, d1, d2);
        for (int i = first; i <= last; ++i) keep(u[i] * u[i] * d2[i]);
        detail::fd_derivs(u, G, d1, d2);
        for (int i = first; i <= last; ++i) keep(u[i] * u[i] * d2[i] - u[i] * d1[i]);
    } else {
        throw InvalidRegime(spec.model);
    }
    return worst;
}

}  // namespace dyson
