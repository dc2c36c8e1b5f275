#pragma once
// Exact singularity structure of the Borel-transformed anomalous dimension:
// the order formulas at xi = k/3, the dictionary between formal power series
// with a singular symbol and algebraic singularities of the Borel transform,
// numeric checks of the convolution product laws near the singular point, and
// the Taylor expansion of the truncated closed equation for gamma.

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "series.hpp"
#include "specfun.hpp"

namespace dyson {

struct ZeroIndex : std::domain_error {
    ZeroIndex() : std::domain_error("singularity index k must be nonzero") {}
};
struct NonIntegrableModel : std::domain_error {
    explicit NonIntegrableModel(const std::string& w) : std::domain_error(w) {}
};

// One algebraic singularity: leadingScale * (xi - location)^exponent, with an
// extra ln(xi - location) factor when hasLog is set.  leadingScale keeps one
// free overall constant "c"; where the dictionary pins the ratio to c it is
// recorded as an exact rational multiple.
struct SingularModel {
    Rational location;
    Rational exponent;
    bool hasLog = false;
    std::string leadingScale = "c";
};

inline bool is_nonneg_int(const Rational& q) { return is_integer(q) && q >= 0; }

// Order of the singularity of the Borel transform of gamma at xi = k/3:
// (2/3)(k-1) on the positive side, -(2/3)(k-1) for k <= -2, and -5/3 at
// xi = -1/3.  The log flag follows the algebraic-singularity convention:
// exponents in Z>=0 carry a logarithm (the k = 1 singularity, of order 0,
// is the first such case).
inline SingularModel singularity_order(long k) {
    if (k == 0) throw ZeroIndex();
    SingularModel s;
    s.location = rat(k, 3);
    if (k >= 1)
        s.exponent = rat(2 * (k - 1), 3);
    else if (k == -1)
        s.exponent = rat(-5, 3);
    else
        s.exponent = rat(2 * (k + 1), 3);  // -(2/3)(|k| - 1)
    s.hasLog = is_nonneg_int(s.exponent);
    s.leadingScale = "c";
    return s;
}

// Pochhammer symbol (x)_j = x(x+1)...(x+j-1) over exact rationals.
inline Rational pochhammer(const Rational& x, int j) {
    Rational r = 1;
    for (int i = 0; i < j; ++i) r *= x + i;
    return r;
}

// Taylor coefficients of (1 - xi)^(beta - 1), the Borel transform of the
// symbol A normalized to a singularity at 1.  They satisfy the recursion
// hatA_n / hatA_{n-1} = 1 - beta/n.
inline std::vector<Rational> ahat_coeffs(const Rational& beta, int count) {
    std::vector<Rational> c(count);
    if (count == 0) return c;
    c[0] = 1;
    for (int j = 1; j < count; ++j) c[j] = c[j - 1] * (rat(1) - beta / j);
    return c;
}

namespace detail {
inline std::string scale_string(const Rational& r) {
    if (r == 1) return "c";
    if (r == -1) return "-c";
    return rat_to_string(r) + " c";
}
} // namespace detail

// Borel image of a^n A, where A has the symbol recursion A_{j+1}/A_j = j - beta
// and the singularity is placed at `location` (1 after normalization of alpha).
// For beta outside Z>=0:  ((-1)^n / (beta)_n) (loc - xi)^(beta+n-1);
// for beta in Z>=0 a logarithm appears:
//   ((-1)^(n+beta) / (beta+n-1)!) (loc - xi)^(beta+n-1) ln(loc - xi),
// except the bare beta = 0, n = 0 symbol which is the plain pole (loc-xi)^-1.
inline SingularModel symbol_singularity(const Rational& beta, int n,
                                        const Rational& location = rat(1)) {
    if (n < 0) throw std::invalid_argument("symbol power must be nonnegative");
    SingularModel s;
    s.location = location;
    s.exponent = beta + n - 1;
    s.hasLog = is_nonneg_int(beta);
    Rational scale;
    if (!s.hasLog) {
        scale = rat(n % 2 == 0 ? 1 : -1) / pochhammer(beta, n);
    } else if (s.exponent >= 0) {
        long b = to_long(beta);
        Rational f = 1;
        for (long i = 2; i <= b + n - 1; ++i) f *= i;
        scale = rat((n + b) % 2 == 0 ? 1 : -1) / f;
    } else {
        scale = 1;  // beta = 0, n = 0: hat A itself is the simple pole
        s.hasLog = false;
    }
    s.leadingScale = detail::scale_string(scale);
    return s;
}

// One value of the convolution integral (f*g)(xi) = int_0^xi f(xi-t) g(t) dt
// by adaptive quadrature.
inline double convolution_value(const std::function<double(double)>& fh,
                                const std::function<double(double)>& gh, double xi,
                                double tol = 1e-12) {
    QuadratureSpec spec;
    spec.integrand = [&fh, &gh, xi](double t) { return fh(xi - t) * gh(t); };
    spec.a = 0;
    spec.b = xi;
    spec.absTol = tol;
    spec.relTol = tol;
    return quad_adaptive(spec).value;
}

// Geometric grid of distances to the singular point used by the exponent fit.
struct FitGrid {
    double eps0 = 1e-2;  // largest distance to the singularity
    double ratio = 0.6;  // refinement factor in (0, 1)
    int points = 10;     // number of exponent estimates
};

struct ConvolutionCheck {
    double predictedExponent = 0;
    double predictedCoefficient = 0;
    double fittedExponent = 0;
    double fittedCoefficient = 0;
    double exponentError = 0;     // relative
    double coefficientError = 0;  // relative
    std::vector<double> exponentEstimates;
    bool pass = false;
};

// Checks the product law for the model pair built from the non-integer-beta
// dictionary,
//   fhat(x) = x^(n-1)/(n-1)! + ((-1)^m/(beta)_m) (1-x)^(beta+m-1)
//   ghat(x) = x^(p-1)/(p-1)! + ((-1)^q/(beta)_q) (1-x)^(beta+q-1),
// against the predicted singular behavior of fhat * ghat at xi = 1: terms of
// exponents beta+q+n-1 and beta+m+p-1 with Pochhammer coefficients.  The
// convolution is evaluated by adaptive quadrature on a geometric grid
// approaching 1; the exponent comes from two-point log-ratios of
// polynomial-annihilating differences, extrapolated to zero spacing.
// p = q = 0 encodes ghat identically zero.
inline ConvolutionCheck model_convolution_check(const Rational& beta, int n, int m, int p,
                                                int q, const FitGrid& grid = FitGrid{}) {
    ConvolutionCheck out;
    if (p == 0 && q == 0) {  // ghat == 0: convolution vanishes identically
        out.pass = true;
        return out;
    }
    if (n < 1 || m < 1 || p < 1 || q < 1)
        throw std::invalid_argument("model powers must be >= 1");
    if (is_integer(beta))
        throw std::invalid_argument("quadrature check covers the non-integer branch only");
    if (beta + m - 1 <= -1 || beta + q - 1 <= -1)
        throw NonIntegrableModel("singular factor (1-x)^e with e <= -1 is not integrable");
    if (!(grid.ratio > 0 && grid.ratio < 1) || grid.points < 4 || grid.eps0 <= 0)
        throw std::invalid_argument("bad fit grid");

    const double betaD = mpq_class(beta).get_d();
    const Rational e1 = beta + q + n - 1, e2 = beta + m + p - 1;
    const Rational eMin = e1 < e2 ? e1 : e2;
    if (eMin <= -1) throw NonIntegrableModel("predicted exponent <= -1");
    out.predictedExponent = mpq_class(eMin).get_d();
    Rational cPred = 0;
    if (e1 == eMin) cPred += rat((q + n) % 2 == 0 ? 1 : -1) / pochhammer(beta, q + n);
    if (e2 == eMin) cPred += rat((m + p) % 2 == 0 ? 1 : -1) / pochhammer(beta, m + p);
    out.predictedCoefficient = mpq_class(cPred).get_d();

    auto fac = [](int j) {
        double v = 1;
        for (int i = 2; i <= j; ++i) v *= i;
        return v;
    };
    const double cf = ((m % 2 == 0) ? 1.0 : -1.0) / mpq_class(pochhammer(beta, m)).get_d();
    const double cg = ((q % 2 == 0) ? 1.0 : -1.0) / mpq_class(pochhammer(beta, q)).get_d();
    const double fn = fac(n - 1), fp = fac(p - 1);
    auto fhat = [=](double x) {
        return std::pow(x, n - 1) / fn + cf * std::pow(1 - x, betaD + m - 1);
    };
    auto ghat = [=](double x) {
        return std::pow(x, p - 1) / fp + cg * std::pow(1 - x, betaD + q - 1);
    };

    // Differencing weights on nodes eps * ratio^j that annihilate holomorphic
    // background up to degree d, leaving the eps^lambda singular part.
    const double lam = out.predictedExponent;
    const int d = std::max(0, static_cast<int>(std::floor(lam))) + 1;
    const int nodes = d + 2;
    std::vector<double> w(nodes, 0.0);
    {
        // Solve sum_j w_j (ratio^j)^t = 0 for t = 0..d with w_0 = 1 (small
        // Vandermonde system, Gaussian elimination).
        std::vector<std::vector<double>> Ab(d + 1, std::vector<double>(nodes, 0.0));
        for (int t = 0; t <= d; ++t)
            for (int j = 0; j < nodes; ++j)
                Ab[t][j] = std::pow(grid.ratio, double(j) * t);
        // unknowns w_1..w_{d+1}; rhs = -column 0
        std::vector<std::vector<double>> M(d + 1, std::vector<double>(d + 2, 0.0));
        for (int t = 0; t <= d; ++t) {
            for (int j = 1; j < nodes; ++j) M[t][j - 1] = Ab[t][j];
            M[t][d + 1] = -Ab[t][0];
        }
        for (int col = 0; col <= d; ++col) {
            int piv = col;
            for (int r = col + 1; r <= d; ++r)
                if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
            std::swap(M[col], M[piv]);
            for (int r = 0; r <= d; ++r) {
                if (r == col) continue;
                double f = M[r][col] / M[col][col];
                for (int cc = col; cc <= d + 1; ++cc) M[r][cc] -= f * M[col][cc];
            }
        }
        w[0] = 1.0;
        for (int j = 1; j < nodes; ++j) w[j] = M[j - 1][d + 1] / M[j - 1][j - 1];
    }
    double W = 0;  // response of the difference to eps^lambda
    for (int j = 0; j < nodes; ++j) W += w[j] * std::pow(grid.ratio, double(j) * lam);

    // Convolution values along the full grid, shared between estimates.
    const int nEps = grid.points + nodes;
    std::vector<double> F(nEps);
    for (int k = 0; k < nEps; ++k) {
        double eps = grid.eps0 * std::pow(grid.ratio, k);
        F[k] = convolution_value(fhat, ghat, 1.0 - eps);
    }
    std::vector<double> D(grid.points + 1);
    for (int k = 0; k <= grid.points; ++k) {
        double s = 0;
        for (int j = 0; j < nodes; ++j) s += w[j] * F[k + j];
        D[k] = s;
    }
    for (int k = 0; k < grid.points; ++k) {
        if (D[k + 1] == 0 || D[k] / D[k + 1] <= 0)
            throw NonIntegrableModel("differenced data lost the singular signal");
        out.exponentEstimates.push_back(std::log(D[k] / D[k + 1]) / std::log(1.0 / grid.ratio));
    }
    // Aitken extrapolation of the tail (error decays geometrically in k).
    double lamFit = out.exponentEstimates.back();
    {
        int sz = static_cast<int>(out.exponentEstimates.size());
        if (sz >= 3) {
            double a0 = out.exponentEstimates[sz - 3];
            double a1 = out.exponentEstimates[sz - 2];
            double a2 = out.exponentEstimates[sz - 1];
            double den = a2 - 2 * a1 + a0;
            if (std::abs(den) > 1e-14 * (std::abs(a2) + 1))
                lamFit = a2 - (a2 - a1) * (a2 - a1) / den;
        }
    }
    out.fittedExponent = lamFit;
    // Coefficient from the last difference with the fitted exponent.
    double epsLast = grid.eps0 * std::pow(grid.ratio, grid.points);
    double Wfit = 0;
    for (int j = 0; j < nodes; ++j) Wfit += w[j] * std::pow(grid.ratio, double(j) * lamFit);
    out.fittedCoefficient = D[grid.points] / (std::pow(epsLast, lamFit) * Wfit);
    (void)W;

    out.exponentError = std::abs(out.fittedExponent - out.predictedExponent) /
                        std::abs(out.predictedExponent);
    out.coefficientError = std::abs(out.fittedCoefficient - out.predictedCoefficient) /
                           std::abs(out.predictedCoefficient);
    out.pass = out.exponentError < 0.02;
    return out;
}

// Taylor coefficients of the truncated closed equation
//   gamma = a - a gamma + 2 gamma^2 - 3 a gamma gamma',
// solved order by order with gamma = a + O(a^2).  Drops the quadratic Borel
// term of the full system, so the coefficients differ from order a^3 on.
inline Series<Rational> truncated_model_taylor(int N) {
    if (N < 1) throw std::invalid_argument("need at least one order");
    Series<Rational> g(N);
    g[1] = 1;
    for (int j = 2; j <= N; ++j) {
        Rational v = 0;
        v -= g[j - 1];  // -a gamma
        for (int i = 1; i <= j - 1; ++i) v += 2 * g[i] * g[j - i];
        // -3 a gamma gamma': coefficient of a^j picks i + l = j, l >= 1
        for (int i = 1; i <= j - 1; ++i) v -= 3 * g[i] * (j - i) * g[j - i];
        g[j] = v;
    }
    return g;
}

} // namespace dyson
