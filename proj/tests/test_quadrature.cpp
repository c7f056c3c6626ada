#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "epr/quadrature.hpp"
#include "epr/tariff.hpp"

TEST_CASE("polynomial exactness") {
    // n-node Gauss-Legendre is exact through degree 2n-1
    auto mono = [](int k) {
        return [k](double x) { return std::pow(x, k); };
    };
    for (int k = 0; k <= 15; ++k) {
        double exact = 1.0 / (k + 1);
        CHECK(epr::quad::integrate(mono(k), 0.0, 1.0, 8) ==
              doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("known integrals") {
    CHECK(epr::quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(epr::quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(epr::quad::integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("panel halving self-consistency") {
    // smooth integrand: panel doubling should agree to machine-level accuracy
    auto smooth = [](double x) { return std::exp(-x) * std::cos(3 * x); };
    double a = epr::quad::integrate(smooth, 0.0, 1.0, 64, 2);
    double b = epr::quad::integrate(smooth, 0.0, 1.0, 64, 4);
    CHECK(std::fabs(a - b) < 1e-12);
    // sqrt has a derivative singularity at 0; convergence is slower there
    auto kinked = [](double x) { return std::sqrt(x) * std::cos(3 * x); };
    double c = epr::quad::integrate(kinked, 0.0, 1.0, 64, 2);
    double d = epr::quad::integrate(kinked, 0.0, 1.0, 64, 4);
    CHECK(std::fabs(c - d) < 1e-6);
}

TEST_CASE("distribution moments") {
    using epr::tariff::TasteShockDistribution;
    CHECK(TasteShockDistribution::uniform01().second_moment() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    // power(k): density k s^(k-1), int s^2 dF = k/(k+2)
    CHECK(TasteShockDistribution::power(2).second_moment() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(TasteShockDistribution::power(0.5).second_moment() ==
          doctest::Approx(0.2).epsilon(1e-10));
    // piecewise-linear CDF: uniform in two segments
    auto qt = TasteShockDistribution::quantile_table({0.0, 0.5, 1.0},
                                                     {0.0, 0.25, 1.0});
    // int s^2 dF = 0.5*int_0^.5 s^2 + 1.5*int_.5^1 s^2
    double exact = 0.5 * (0.125 / 3.0) + 1.5 * (1.0 - 0.125) / 3.0;
    CHECK(qt.second_moment() == doctest::Approx(exact).epsilon(1e-12));
    CHECK(qt.cdf(0.5) == doctest::Approx(0.25));
    CHECK(qt.cdf(0.0) == 0.0);
    CHECK(qt.cdf(1.0) == 1.0);
}
