#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "epr/tariff.hpp"

using namespace epr::tariff;

namespace {

// brute-force second-period optimum: pick (q, theta) maximizing the blended
// objective with the no-purchase benchmark max((s+theta)^2/p - L, 0)
double grid_demand(double s, double p, double L, double gamma) {
    double qmax = 1.2 * (s + 1.0) * (s + 1.0) / (p * p);
    double best = -1e300, best_q = 0.0;
    for (int i = 0; i <= 2500; ++i) {
        double q = qmax * i / 2500.0;
        double mat = 2.0 * s * std::sqrt(q) - p * q - L;
        for (int j = 0; j <= 600; ++j) {
            double th = j / 600.0;
            double v = 2.0 * (s + th) * std::sqrt(q) - p * q - L;
            double bench = std::max((s + th) * (s + th) / p - L, 0.0);
            double tot = (1.0 - gamma) * mat + gamma * (v - bench);
            if (tot > best) {
                best = tot;
                best_q = q;
            }
        }
    }
    return best_q;
}

}  // namespace

TEST_CASE("demand formulas") {
    CHECK(classical_demand(0.5, 2.0, 7.0) == doctest::Approx(0.0625));
    CHECK(rationalizing_demand(0.5, 2.0, 7.0, 0.0) == doctest::Approx(0.0625));
    // s above the break-even point: no distortion
    double sbar = std::sqrt(0.125 * 2.0);  // L=0.125, p=2 -> sbar=0.5
    CHECK(rationalizing_demand(sbar + 0.1, 2.0, 0.125, 0.7) ==
          classical_demand(sbar + 0.1, 2.0, 0.125));
    // below: the shifted-state form
    double q = rationalizing_demand(0.3, 2.0, 0.125, 0.5);
    double shifted = 0.3 + 0.5 * (0.5 - 0.3);
    CHECK(q == doctest::Approx(shifted * shifted / 4.0));
    CHECK(q > classical_demand(0.3, 2.0, 0.125));  // upward distortion
    CHECK_THROWS_AS(classical_demand(0.5, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(rationalizing_demand(0.5, 1.0, -0.1, 0.5), std::domain_error);
}

TEST_CASE("behavioral equivalence is exact") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        double p = 0.5 + 2.0 * U(rng);
        double L = U(rng);
        double g = 0.99 * U(rng);
        double sbar = std::sqrt(L * p);
        for (int i = 0; i < 100; ++i) {
            double s = i / 99.0;
            double theta = std::max(sbar - s, 0.0);
            CHECK(rationalizing_demand(s, p, L, g) ==
                  classical_demand(s + g * theta, p, L));
        }
    }
}

TEST_CASE("demand matches the brute-force rationalizer") {
    struct Case {
        double s, p, L, g;
    };
    for (auto [s, p, L, g] : {Case{0.3, 2.0, 0.125, 0.5}, Case{0.2, 1.0, 0.3, 0.8},
                              Case{0.6, 1.5, 0.4, 0.3}, Case{0.9, 1.2, 0.1, 0.6}}) {
        double qf = rationalizing_demand(s, p, L, g);
        double qg = grid_demand(s, p, L, g);
        CHECK(std::fabs(std::sqrt(qf) - std::sqrt(qg)) < 5e-3);
    }
}

TEST_CASE("demand monotone in the upfront fee") {
    std::vector<double> states;
    for (int i = 0; i <= 50; ++i) states.push_back(i / 50.0);
    auto v = demand_monotonicity_check(1.5, 0.4, 0.1, 0.3, states);
    CHECK(v.ok);
    // gamma = 0 kills the channel
    auto v0 = demand_monotonicity_check(1.5, 0.0, 0.1, 0.3, states);
    CHECK(v0.ok);
    CHECK_THROWS_AS(demand_monotonicity_check(1.5, 0.4, 0.3, 0.1, states),
                    std::invalid_argument);
}

TEST_CASE("expected profit, classical hand case") {
    auto dist = TasteShockDistribution::uniform01();
    double M = dist.second_moment();
    TariffInstance in{2.0, M / 2.0, 1.0, 0.0, dist};
    // participation binds exactly; profit = (p-c) M/p^2 + L
    double expect = (2.0 - 1.0) * M / 4.0 + M / 2.0;
    CHECK(expected_profit(in, Consumer::Classical) ==
          doctest::Approx(expect).epsilon(1e-10));
    // pushing L above the anticipated surplus drives everyone away
    in.L = M / 2.0 + 0.01;
    CHECK(expected_profit(in, Consumer::Naif) == 0.0);
}

TEST_CASE("optimal tariffs at gamma = 0 price at cost") {
    for (auto dist : {TasteShockDistribution::uniform01(),
                      TasteShockDistribution::power(2.0),
                      TasteShockDistribution::quantile_table({0.0, 0.5, 1.0},
                                                             {0.0, 0.25, 1.0})}) {
        double M = dist.second_moment();
        auto naif = optimal_tariff_naif(1.3, 0.0, dist);
        CHECK(naif.p_star == doctest::Approx(1.3).epsilon(1e-12));
        CHECK(naif.L_star == doctest::Approx(M / 1.3).epsilon(1e-10));
        CHECK(naif.lambda == 0.0);
        auto soph = optimal_tariff_sophisticate(1.3, 0.0, dist);
        CHECK(soph.p_star == doctest::Approx(1.3).epsilon(1e-9));
        CHECK(soph.L_star == doctest::Approx(M / 1.3).epsilon(1e-7));
    }
}

TEST_CASE("uniform gamma=0.5 closed forms hit the frozen targets") {
    auto dist = TasteShockDistribution::uniform01();
    auto naif = optimal_tariff_naif(1.0, 0.5, dist);
    double sbar = std::sqrt(1.0 / 3.0);
    // lambda = sbar^3 (gamma + gamma^2) / 3 for the uniform
    CHECK(naif.lambda ==
          doctest::Approx(sbar * sbar * sbar * 0.75 / 3.0).epsilon(1e-10));
    CHECK(naif.p_star == doctest::Approx(1.0673110285892724).epsilon(1e-12));
    CHECK(naif.break_even == doctest::Approx(sbar).epsilon(1e-12));
    CHECK(naif.L_star == doctest::Approx((1.0 / 3.0) / naif.p_star));

    auto soph = optimal_tariff_sophisticate(1.0, 0.5, dist);
    CHECK(std::fabs(soph.p_star - 1.0859) < 1e-3);
    CHECK(std::fabs(soph.break_even - 0.5642) < 1e-3);
    CHECK(soph.L_star == doctest::Approx(soph.break_even * soph.break_even /
                                         soph.p_star));
    CHECK(soph.break_even < sbar);
    CHECK(soph.p_star > naif.p_star);  // sophistication raises the markup here
}

TEST_CASE("closed forms beat a coarse tariff grid") {
    for (auto dist :
         {TasteShockDistribution::uniform01(), TasteShockDistribution::power(2.0)}) {
        double c = 1.0, M = dist.second_moment();
        for (auto who : {Consumer::Naif, Consumer::Sophisticate}) {
            auto sol = who == Consumer::Naif
                           ? optimal_tariff_naif(c, 0.5, dist)
                           : optimal_tariff_sophisticate(c, 0.5, dist);
            double best = -1e300;
            for (int i = 0; i <= 80; ++i)
                for (int j = 0; j <= 80; ++j) {
                    TariffInstance in{c + 2.0 * c * i / 80.0,
                                      1.5 * M / c * j / 80.0, c, 0.5, dist};
                    best = std::max(best, expected_profit(in, who));
                }
            CHECK(sol.expected_profit >= best - 1e-6);
        }
    }
}

TEST_CASE("naif price rises with gamma") {
    auto dist = TasteShockDistribution::uniform01();
    double prev = 1.0;
    for (double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        auto sol = optimal_tariff_naif(1.0, g, dist);
        CHECK(sol.p_star > prev);
        prev = sol.p_star;
    }
}

TEST_CASE("demand curve csv") {
    auto dist = TasteShockDistribution::uniform01();
    TariffInstance in{2.0, 0.125, 1.0, 0.5, dist};
    std::string csv = demand_curve_csv(in, {0.0, 0.3, 0.5, 0.9});
    CHECK(csv.rfind("s,q_classical,q_rationalizing,theta_adopted\n", 0) == 0);
    CHECK(csv == demand_curve_csv(in, {0.0, 0.3, 0.5, 0.9}));

    // gamma = 0: rationalizing column collapses onto classical, theta reads 0
    TariffInstance in0{2.0, 0.125, 1.0, 0.0, dist};
    std::string c0 = demand_curve_csv(in0, {0.3});
    auto row = c0.substr(c0.find('\n') + 1);
    CHECK(row.find(",0\n") != std::string::npos);

    TariffInstance bad{2.0, -1.0, 1.0, 0.0, dist};
    CHECK_THROWS_AS(demand_curve_csv(bad, {0.5}), std::invalid_argument);
}
