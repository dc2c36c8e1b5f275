#include <catch2/catch_amalgamated.hpp>

#include "dyson/borel_sing.hpp"

#include <cmath>

using namespace dyson;
using Catch::Approx;

TEST_CASE("singularity orders at xi = k/3") {
    SingularModel s1 = singularity_order(1);
    CHECK(s1.location == rat(1, 3));
    CHECK(s1.exponent == 0);
    CHECK(s1.hasLog);

    SingularModel sm1 = singularity_order(-1);
    CHECK(sm1.location == rat(-1, 3));
    CHECK(sm1.exponent == rat(-5, 3));
    CHECK_FALSE(sm1.hasLog);

    CHECK(singularity_order(3).exponent == rat(4, 3));
    CHECK(singularity_order(2).exponent == rat(2, 3));
    CHECK(singularity_order(-2).exponent == rat(-2, 3));
    CHECK(singularity_order(-4).exponent == rat(-2));
    CHECK_FALSE(singularity_order(-4).hasLog);  // negative integer: plain power

    CHECK_THROWS_AS(singularity_order(0), ZeroIndex);
}

TEST_CASE("log flag over a window of singularities") {
    // With the order formula (2/3)(k-1), the exponent lands in Z>=0 at k = 1
    // (order 0) and again at k = 4 (order 2); all other k in [-6, 6] give
    // non-integer or negative orders.
    for (long k = -6; k <= 6; ++k) {
        if (k == 0) continue;
        bool lg = singularity_order(k).hasLog;
        CHECK(lg == (k == 1 || k == 4));
    }
}

TEST_CASE("symbol dictionary") {
    // aA, with the singularity at -1/3: exponent beta + n - 1 = -5/3.
    SingularModel aA = symbol_singularity(rat(-5, 3), 1, rat(-1, 3));
    CHECK(aA.location == rat(-1, 3));
    CHECK(aA.exponent == rat(-5, 3));
    CHECK_FALSE(aA.hasLog);
    CHECK(aA.leadingScale == "3/5 c");  // (-1)^1 / (-5/3)_1

    // aB at +1/3: beta = 0 with one power of a gives the pure logarithm.
    SingularModel aB = symbol_singularity(rat(0), 1, rat(1, 3));
    CHECK(aB.exponent == 0);
    CHECK(aB.hasLog);
    CHECK(aB.leadingScale == "-c");

    // beta = 2, n = 0: (1-xi)^1 log model.
    SingularModel b2 = symbol_singularity(rat(2), 0);
    CHECK(b2.exponent == 1);
    CHECK(b2.hasLog);
    CHECK(b2.leadingScale == "c");

    // bare beta = 0 symbol: the simple pole, no logarithm.
    SingularModel pole = symbol_singularity(rat(0), 0);
    CHECK(pole.exponent == -1);
    CHECK_FALSE(pole.hasLog);
}

TEST_CASE("hatA coefficients satisfy the closed-form recursion") {
    for (const Rational& beta : {rat(1, 2), rat(-5, 3), rat(7, 4), rat(2)}) {
        std::vector<Rational> c = ahat_coeffs(beta, 12);
        for (int j = 1; j < 12; ++j) {
            if (c[j - 1] == 0) continue;
            CHECK(c[j] / c[j - 1] == rat(1) - beta / j);
        }
    }
    // beta = 2: hatA_1/hatA_0 = 1 - beta = -1.
    CHECK(ahat_coeffs(rat(2), 2)[1] == rat(-1));
}

TEST_CASE("numeric convolution agrees with the exact series product") {
    Series<Rational> f(8), g(8);
    f[2] = 1;          // x^2
    g[0] = 1;
    g[1] = 1;          // 1 + x
    Series<Rational> conv = convolve(f, g);
    auto fd = [](double x) { return x * x; };
    auto gd = [](double x) { return 1.0 + x; };
    for (double xi : {0.3, 0.7, 1.4}) {
        double exact = 0;
        for (int j = conv.trunc(); j >= 0; --j) exact = exact * xi + conv[j].get_d();
        CHECK(convolution_value(fd, gd, xi) == Approx(exact).margin(1e-8));
    }
}

TEST_CASE("convolution product law: fitted exponent matches the dictionary") {
    ConvolutionCheck r = model_convolution_check(rat(1, 2), 1, 1, 1, 1);
    CHECK(r.predictedExponent == Approx(1.5));
    CHECK(r.pass);
    CHECK(r.exponentError < 0.02);

    // asymmetric powers: dominant exponent beta + q + n - 1 = 4/3
    ConvolutionCheck r2 = model_convolution_check(rat(1, 3), 1, 2, 1, 1);
    CHECK(r2.predictedExponent == Approx(4.0 / 3.0));
    CHECK(r2.pass);
}

TEST_CASE("convolution check edge cases") {
    ConvolutionCheck z = model_convolution_check(rat(1, 2), 1, 1, 0, 0);
    CHECK(z.pass);
    CHECK(z.fittedCoefficient == 0);

    CHECK_THROWS_AS(model_convolution_check(rat(-3, 2), 1, 1, 1, 1), NonIntegrableModel);
    CHECK_THROWS_AS(model_convolution_check(rat(2), 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("truncated model Taylor coefficients") {
    Series<Rational> g = truncated_model_taylor(4);
    CHECK(g[1] == 1);
    CHECK(g[2] == -2);
    CHECK(g[3] == 12);
    CHECK(g[4] == -124);

    // Borel transform: 1 - 2 xi + 6 xi^2 - (62/3) xi^3
    Series<Rational> gh = borel_map(g);
    CHECK(gh[0] == 1);
    CHECK(gh[1] == -2);
    CHECK(gh[2] == 6);
    CHECK(gh[3] == rat(-62, 3));

    CHECK_THROWS_AS(truncated_model_taylor(0), std::invalid_argument);
}
