#pragma once
// Numerical solution of the truncated system in the Borel plane along a
// complex ray: the renormalization-group specialization
//   -(1+3 xi) g(xi) = gammahat(xi) + int_0^xi gammahat(xi-eta) g(eta) deta
//                     + 3 int_0^xi gammahat'(xi-eta) eta g(eta) deta
// closed by gammahat' = 2 g.  Explicit marching: at each node the two
// convolutions are evaluated over the known history by a composite rule, the
// node value of g is solved for algebraically, and gammahat advances by the
// same rule applied to 2g.

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specfun.hpp"

namespace dyson {

struct RayThroughSingularity : std::domain_error {
    RayThroughSingularity()
        : std::domain_error("ray crosses the real axis where the singularities sit") {}
};
struct StepCountTooSmall : std::invalid_argument {
    StepCountTooSmall() : std::invalid_argument("need at least 16 marching steps") {}
};

enum class MarchRule { trapezoid, simpson };

struct TraceSample {
    cplx xi;
    cplx gammaHat;
    cplx gammaHatPrime;
    cplx g;
};

struct ComplexTrace {
    cplx target;        // ray endpoint xi*
    int steps = 0;      // uniform spacing |xi*|/steps
    MarchRule rule = MarchRule::simpson;
    std::vector<TraceSample> samples;  // samples[j] at xi* j/steps
};

namespace detail {
// Composite-rule weights in the ray parameter for int over nodes 0..j.  For
// Simpson with an odd panel count, the trailing three panels use the 3/8 rule
// so the composite stays fourth order; the single-panel case j = 1 (only at
// the start of the march, where one low-order panel cannot affect the global
// order) degrades to trapezoid.
inline std::vector<double> composite_weights(int j, MarchRule rule) {
    std::vector<double> w(j + 1, 0.0);
    if (j == 0) return w;
    if (rule == MarchRule::trapezoid || j == 1) {
        w[0] = w[j] = 0.5;
        for (int i = 1; i < j; ++i) w[i] = 1.0;
        return w;
    }
    int even = (j % 2 == 0) ? j : j - 3;
    if (even > 0) {
        w[0] = 1.0 / 3.0;
        for (int i = 1; i < even; ++i) w[i] = (i % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
        w[even] = 1.0 / 3.0;
    }
    if (even != j) {  // 3/8 rule on the trailing three panels
        w[even] += 3.0 / 8.0;
        w[even + 1] += 9.0 / 8.0;
        w[even + 2] += 9.0 / 8.0;
        w[j] += 3.0 / 8.0;
    }
    return w;
}

inline ComplexTrace march_core(cplx xiStar, int steps, MarchRule rule,
                               const std::function<cplx(cplx)>* source,
                               bool refineStartup) {
    const cplx dz = xiStar / double(steps);
    ComplexTrace tr;
    tr.target = xiStar;
    tr.steps = steps;
    tr.rule = rule;
    tr.samples.resize(steps + 1);

    std::vector<cplx> xi(steps + 1), gam(steps + 1), g(steps + 1);
    for (int j = 0; j <= steps; ++j) xi[j] = xiStar * (double(j) / steps);
    gam[0] = 1.0;
    cplx s0 = source ? (*source)(cplx(0.0)) : cplx(0.0);
    g[0] = -(gam[0] + s0);  // node 0: empty integrals, 1+3*0 = 1
    tr.samples[0] = {xi[0], gam[0], 2.0 * g[0], g[0]};

    for (int j = 1; j <= steps; ++j) {
        std::vector<double> w = composite_weights(j, rule);
        // The node-j unknowns enter linearly through the rule endpoints:
        //   gam_j = A + 2 dz w_j g_j                       (advance by 2g)
        //   I1    = K1 + dz w_0 g_0 gam_j + dz w_j g_j     (gammahat(0) = 1)
        //   I2    = K2 + dz w_j (2 g_0) xi_j g_j           (gammahat'(0) = 2 g_0)
        // with A, K1, K2 accumulated over the interior history.
        cplx A = 1.0 + 2.0 * dz * w[0] * g[0], K1 = 0.0, K2 = 0.0;
        for (int i = 1; i < j; ++i) {
            A += 2.0 * dz * w[i] * g[i];
            K1 += dz * w[i] * gam[j - i] * g[i];
            K2 += dz * w[i] * (2.0 * g[j - i]) * xi[i] * g[i];
        }
        const cplx wj = dz * w[j];
        const cplx w0 = dz * w[0];
        cplx src = source ? (*source)(xi[j]) : cplx(0.0);
        // Substituting gam_j into -(1+3 xi_j) g_j = gam_j + I1 + 3 I2 + src and
        // collecting the g_j terms:
        const cplx one3xi = 1.0 + 3.0 * xi[j];
        cplx rhsKnown = (1.0 + w0 * g[0]) * A + K1 + 3.0 * K2 + src;
        cplx gCoeff =
            -one3xi - 2.0 * wj * (1.0 + w0 * g[0]) - wj - 3.0 * wj * (2.0 * g[0]) * xi[j];
        g[j] = rhsKnown / gCoeff;
        gam[j] = A + 2.0 * wj * g[j];
        tr.samples[j] = {xi[j], gam[j], 2.0 * g[j], g[j]};

        // Startup refinement for Simpson: the very first panel is a lone
        // trapezoid, whose O(h^3) error at node 1 would cap the global order
        // at 3.  Once three panels exist, replace nodes 1..3 with values from
        // a fine plain sub-march over [0, xi_3]; the substep count depends on
        // the spacing only, so prefix re-marching stays bit-for-bit identical.
        if (refineStartup && rule == MarchRule::simpson && j == 3 && steps > 3) {
            int k = std::max(2, static_cast<int>(std::ceil(std::pow(std::abs(dz), -1.0 / 3.0))));
            ComplexTrace fine = march_core(xi[3], 3 * k, rule, source, false);
            for (int i = 1; i <= 3; ++i) {
                const TraceSample& s = fine.samples[i * k];
                gam[i] = s.gammaHat;
                g[i] = s.g;
                tr.samples[i] = {xi[i], gam[i], 2.0 * g[i], g[i]};
            }
        }
    }
    return tr;
}
} // namespace detail

inline ComplexTrace march(cplx xiStar, int steps, MarchRule rule = MarchRule::simpson) {
    if (xiStar.imag() == 0.0)
        throw RayThroughSingularity();  // singularities lie on R at k/3
    if (steps < 16) throw StepCountTooSmall();
    return detail::march_core(xiStar, steps, rule, nullptr, true);
}

// Marching with an additive source on the right-hand side, for
// manufactured-solution convergence studies.  The source fixes the exact
// solution; no singularity guard since the forced problem is entire.
inline ComplexTrace march_forced(cplx xiStar, int steps, MarchRule rule,
                                 const std::function<cplx(cplx)>& source) {
    if (steps < 16) throw StepCountTooSmall();
    return detail::march_core(xiStar, steps, rule, &source, true);
}

// Source polynomial that forces gammahat to equal a given polynomial (g is
// then gammahat'/2).  Uses the exact monomial convolution
//   int_0^xi (xi-eta)^p eta^q deta = p! q! / (p+q+1)! xi^(p+q+1).
// Input: coefficients of gammahat, gh[0] must be 1.
inline std::vector<cplx> manufactured_source(const std::vector<cplx>& gh) {
    if (gh.empty() || gh[0] != cplx(1.0))
        throw std::invalid_argument("manufactured gammahat must start at 1");
    int N = static_cast<int>(gh.size()) - 1;
    // g = gammahat'/2: coefficients gp[k] = (k+1) gh[k+1] / 2, degree N-1.
    std::vector<cplx> gp(std::max(N, 1), cplx(0.0));
    for (int k = 0; k + 1 <= N; ++k) gp[k] = double(k + 1) * gh[k + 1] / 2.0;
    auto fact = [](int n) {
        double f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    int deg = 2 * N + 1;
    std::vector<cplx> S(deg + 1, cplx(0.0));
    // -(1+3 xi) g
    for (int k = 0; k < static_cast<int>(gp.size()); ++k) {
        S[k] -= gp[k];
        S[k + 1] -= 3.0 * gp[k];
    }
    // - gammahat
    for (int k = 0; k <= N; ++k) S[k] -= gh[k];
    // - gammahat * g (convolution)
    for (int p = 0; p <= N; ++p)
        for (int q = 0; q < static_cast<int>(gp.size()); ++q)
            S[p + q + 1] -= gh[p] * gp[q] * fact(p) * fact(q) / fact(p + q + 1);
    // - 3 gammahat' * (eta g): gammahat' has coefficients 2 gp; eta*g shifts q by 1
    for (int p = 0; p < static_cast<int>(gp.size()); ++p)
        for (int q = 0; q < static_cast<int>(gp.size()); ++q)
            S[p + q + 2] -=
                3.0 * (2.0 * gp[p]) * gp[q] * fact(p) * fact(q + 1) / fact(p + q + 2);
    return S;
}

inline std::function<cplx(cplx)> poly_source(std::vector<cplx> coeffs) {
    return [coeffs](cplx z) {
        cplx acc = 0.0;
        for (size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
        return acc;
    };
}

struct ConvergenceReport {
    std::vector<double> pairwiseDeviation;  // sup-norm of gammahat on common nodes
    double estimatedOrder = 0.0;
};

// Sup-norm deviations between traces at consecutive step counts, restricted to
// shared ray nodes, plus an empirical convergence order from the last two
// deviations (error of the coarser trace dominates each pair).
inline ConvergenceReport convergence_study(cplx xiStar, const std::vector<int>& stepsList,
                                           MarchRule rule = MarchRule::simpson,
                                           const std::function<cplx(cplx)>* source = nullptr) {
    if (stepsList.empty()) throw std::invalid_argument("empty steps list");
    for (size_t i = 1; i < stepsList.size(); ++i)
        if (stepsList[i] < stepsList[i - 1])
            throw std::invalid_argument("steps list must be ascending");
    std::vector<ComplexTrace> traces;
    for (int s : stepsList)
        traces.push_back(source ? march_forced(xiStar, s, rule, *source)
                                : march(xiStar, s, rule));
    ConvergenceReport rep;
    for (size_t t = 0; t + 1 < traces.size(); ++t) {
        const ComplexTrace& a = traces[t];
        const ComplexTrace& b = traces[t + 1];
        double dev = 0;
        for (int j = 0; j <= a.steps; ++j) {
            long long num = static_cast<long long>(j) * b.steps;
            if (num % a.steps != 0) continue;
            int i = static_cast<int>(num / a.steps);
            dev = std::max(dev,
                           std::abs(a.samples[j].gammaHat - b.samples[i].gammaHat));
        }
        rep.pairwiseDeviation.push_back(dev);
    }
    size_t n = rep.pairwiseDeviation.size();
    if (n >= 2) {
        double d0 = rep.pairwiseDeviation[n - 2], d1 = rep.pairwiseDeviation[n - 1];
        double h0 = 1.0 / stepsList[n - 1], hPrev = 1.0 / stepsList[n - 2];
        if (d0 > 0 && d1 > 0)
            rep.estimatedOrder = std::log(d0 / d1) / std::log(hPrev / h0);
    }
    return rep;
}

// CSV trace with columns step,re_xi,im_xi,re_gamma,im_gamma,re_g,im_g.
inline void write_trace_csv(const ComplexTrace& tr, std::ostream& os) {
    os << "step,re_xi,im_xi,re_gamma,im_gamma,re_g,im_g\n";
    os.precision(17);
    auto z = [](double v) { return v + 0.0; };  // flush negative zero
    for (size_t j = 0; j < tr.samples.size(); ++j) {
        const TraceSample& s = tr.samples[j];
        os << j << ',' << z(s.xi.real()) << ',' << z(s.xi.imag()) << ','
           << z(s.gammaHat.real()) << ',' << z(s.gammaHat.imag()) << ',' << z(s.g.real())
           << ',' << z(s.g.imag()) << '\n';
    }
}

inline void write_trace_csv(const ComplexTrace& tr, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_trace_csv(tr, os);
}

} // namespace dyson
