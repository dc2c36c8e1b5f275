#pragma once
// Massless Euclidean one-loop integrals: the two-point bubble with arbitrary
// propagator powers, its "completed graph" reduction, the bubble with a
// numerator power, and the off-shell three-point triangle expressed through
// four Appell F4 terms.  Values are quoted without the Wick-rotation factor i,
// so they compare directly against real quadrature oracles; the Minkowski
// integral is i times the returned value.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "specfun.hpp"

namespace dyson::feynman {



struct GammaPole : std::domain_error {
    explicit GammaPole(const std::string& where)
        : std::domain_error("Gamma pole in " + where) {}
};

namespace detail {

constexpr double pi = 3.14159265358979323846;

// Gamma in a numerator: a pole argument means the quoted value diverges.
inline cplx gam(cplx z, const char* where) {
    try {
        return gamma_complex(z);
    } catch (const PoleArgument&) {
        throw GammaPole(where);
    }
}

// Gamma in a denominator: 1/Gamma is entire, poles just give zero.
inline cplx rgam(cplx z) {
    if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
        return 0.0;
    return 1.0 / gamma_complex(z);
}

inline cplx pow_pi_half(cplx D) { return std::pow(cplx(pi), D / 2.0); }

}  // namespace detail

struct PowerLaw {
    cplx power;        // exponent of p^2
    cplx coefficient;  // includes pi^{D/2}
};

// Bubble with propagator powers b1, b2:
//   integral d^D q / (q^2)^{b1} ((p-q)^2)^{b2}
//     = (p^2)^{D/2-b1-b2} pi^{D/2} G(D/2-b1) G(D/2-b2) G(D/2-b0)
//                                  / (G(b1) G(b2) G(b0)),  b0 = D - b1 - b2.
inline PowerLaw one_loop(cplx b1, cplx b2, cplx D) {
    const cplx h = D / 2.0;
    const cplx b0 = D - b1 - b2;
    const cplx coef = detail::pow_pi_half(D) * detail::gam(h - b1, "one_loop") *
                      detail::gam(h - b2, "one_loop") *
                      detail::gam(h - b0, "one_loop") * detail::rgam(b1) *
                      detail::rgam(b2) * detail::rgam(b0);
    return {h - b1 - b2, coef};
}

struct CompletedReport {
    cplx direct;     // N(b1, b2): the bubble coefficient without pi^{D/2}
    cplx completed;  // Gamma(D/2) * I of the completed (vacuum) graph
    cplx ratio;      // direct / completed; the reduction theorem says 1
};

// Closing the bubble's external legs on a third edge with the scale-invariant
// power b0 = D - b1 - b2 turns it into a vacuum graph whose value is fully
// symmetric in (b0, b1, b2).
inline CompletedReport completed_reduction(cplx b1, cplx b2, cplx D) {
    const cplx h = D / 2.0;
    const cplx b0 = D - b1 - b2;
    const cplx direct = detail::gam(h - b1, "completed_reduction") *
                        detail::gam(h - b2, "completed_reduction") *
                        detail::gam(h - b0, "completed_reduction") *
                        detail::rgam(b1) * detail::rgam(b2) * detail::rgam(b0);
    const cplx completed =
        detail::gam(h, "completed_reduction") *
        (detail::gam(h - b0, "completed_reduction") *
         detail::gam(h - b1, "completed_reduction") *
         detail::gam(h - b2, "completed_reduction") * detail::rgam(h) *
         detail::rgam(b0) * detail::rgam(b1) * detail::rgam(b2));
    return {direct, completed, direct / completed};
}

// Bubble carrying a numerator: propagator powers b1, b2 and a third line
// raised to the non-positive power -b3, i.e. ((q-r)^2)^{b3} in the numerator.
//   Coefficient: G(b1+b2-b3-D/2) G(D/2-b1) G(D/2-b2)
//                / (G(D+b3-b1-b2) G(b1) G(b2)), power D/2+b3-b1-b2.
inline PowerLaw two_point_numerator(cplx b1, cplx b2, cplx b3, cplx D) {
    const cplx h = D / 2.0;
    const cplx coef = detail::pow_pi_half(D) *
                      detail::gam(b1 + b2 - b3 - h, "two_point_numerator") *
                      detail::gam(h - b1, "two_point_numerator") *
                      detail::gam(h - b2, "two_point_numerator") *
                      detail::rgam(D + b3 - b1 - b2) * detail::rgam(b1) *
                      detail::rgam(b2);
    return {h + b3 - b1 - b2, coef};
}

// The closing formula for the triangle is quoted in the literature with
// bracketed trigonometric factors multiplying two of the four F4 terms.  Read
// as cosines of the written arguments they collapse to 1 identically
// (cos A sin B + cos B sin A = sin(A+B)), which is the `literature` variant;
// `asWritten` evaluates the quotient explicitly so the collapse can be checked
// numerically.
enum class BracketVariant { literature, asWritten };

namespace detail {

inline cplx bracket(cplx a, cplx b, BracketVariant variant) {
    if (variant == BracketVariant::literature) return 1.0;
    const cplx denom = std::sin(pi * (a + b));
    if (std::abs(denom) < 1e-12)
        throw UnsupportedDomain(
            "bracket quotient 0/0: sin(pi(a+b)) vanishes");
    return (std::cos(pi * a) * std::sin(pi * b) +
            std::cos(pi * b) * std::sin(pi * a)) /
           denom;
}

// Triangle in the F4 convergence domain sqrt(q2/p2) + sqrt(k2/p2) < 1.
inline cplx three_point_core(cplx mu, cplx nu, cplx rho, cplx D, double p2,
                             double q2, double k2, BracketVariant variant) {
    const cplx h = D / 2.0;
    const double x = q2 / p2;
    const double y = k2 / p2;
    const cplx a = h - mu - rho;  // exponent of x in the x-channel terms
    const cplx b = h - rho - nu;  // exponent of y in the y-channel terms

    const cplx base = pow_pi_half(D) * std::pow(cplx(p2), h - mu - nu - rho) *
                      rgam(mu) * rgam(nu) * rgam(rho) *
                      rgam(D - mu - nu - rho);

    const char* who = "three_point";
    const cplx t1 = gam(b, who) * gam(a, who) * gam(rho, who) *
                    gam(mu + nu + rho - h, who) *
                    appell_f4(rho, mu + nu + rho - h, 1.0 - a, 1.0 - b, x, y);
    const cplx t2 = std::pow(cplx(x), a) * bracket(a, b, variant) *
                    gam(-a, who) * gam(b, who) * gam(nu, who) *
                    gam(h - mu, who) *
                    appell_f4(h - mu, nu, 1.0 + a, 1.0 - b, x, y);
    const cplx t3 = std::pow(cplx(y), b) * bracket(a, b, variant) *
                    gam(-b, who) * gam(a, who) * gam(h - nu, who) *
                    gam(mu, who) *
                    appell_f4(mu, h - nu, 1.0 - a, 1.0 + b, x, y);
    const cplx t4 = std::pow(cplx(x), a) * std::pow(cplx(y), b) *
                    gam(-a, who) * gam(-b, who) * gam(h - rho, who) *
                    gam(D - rho - mu - nu, who) *
                    appell_f4(h - rho, D - mu - nu - rho, 1.0 + a, 1.0 + b, x, y);

    return base * (t1 + t2 + t3 + t4);
}

}  // namespace detail

// Off-shell massless triangle
//   integral d^D r / ((r^2)^mu ((r-q)^2)^nu ((r-q-k)^2 ... )  -- equivalently
//   propagator powers mu, nu, rho carried by the three internal lines facing
//   the external invariants k^2, q^2, p^2 respectively.
// The F4 series needs sqrt(q2/p2) + sqrt(k2/p2) < 1; when the arguments as
// given violate it we permute (mu,k2), (nu,q2), (rho,p2) simultaneously --
// shifts of the loop momentum permute the lines together with the opposite
// invariants -- and evaluate the first admissible arrangement.
inline cplx three_point(cplx mu, cplx nu, cplx rho, cplx D, double p2,
                        double q2, double k2,
                        BracketVariant variant = BracketVariant::literature) {
    if (p2 <= 0 || q2 <= 0 || k2 <= 0)
        throw std::invalid_argument("invariants must be positive");
    struct Line {
        cplx expo;
        double inv;  // the invariant opposite this line
    };
    const std::array<Line, 3> lines = {{{mu, k2}, {nu, q2}, {rho, p2}}};
    std::array<int, 3> idx = {0, 1, 2};
    do {
        const Line& l0 = lines[idx[0]];
        const Line& l1 = lines[idx[1]];
        const Line& l2 = lines[idx[2]];
        // l2 plays the role of rho: its opposite invariant is the large one
        if (std::sqrt(l1.inv / l2.inv) + std::sqrt(l0.inv / l2.inv) < 1.0)
            return detail::three_point_core(l0.expo, l1.expo, l2.expo, D,
                                            l2.inv, l1.inv, l0.inv, variant);
    } while (std::next_permutation(idx.begin(), idx.end()));
    throw OutsideConvergenceDomain();
}

}  // namespace dyson::feynman
