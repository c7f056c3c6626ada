#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "epr/lp.hpp"

using namespace epr::lp;

TEST_CASE("simple bounded maximum") {
    // max x+y s.t. x+2y<=4, 3x+y<=6 -> x=1.6, y=1.2
    auto r = maximize({1, 1}, {{{1, 2}, Rel::Le, 4}, {{3, 1}, Rel::Le, 6}});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(2.8).epsilon(1e-9));
    CHECK(r.x[0] == doctest::Approx(1.6));
    CHECK(r.x[1] == doctest::Approx(1.2));
}

TEST_CASE("equality constraints") {
    // max 2x+3y s.t. x+y=1 -> y=1
    auto r = maximize({2, 3}, {{{1, 1}, Rel::Eq, 1}});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(3.0));
    CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("ge rows and negative rhs normalization") {
    // max -x s.t. x >= 2  -> x=2
    auto r = maximize({-1}, {{{1}, Rel::Ge, 2}});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(-2.0));

    // same posed with rhs < 0: max -x s.t. -x <= -2
    auto r2 = maximize({-1}, {{{-1}, Rel::Le, -2}});
    REQUIRE(r2.status == Status::Optimal);
    CHECK(r2.value == doctest::Approx(-2.0));
}

TEST_CASE("infeasible and unbounded detection") {
    auto inf = maximize({1}, {{{1}, Rel::Le, 1}, {{1}, Rel::Ge, 2}});
    CHECK(inf.status == Status::Infeasible);

    auto unb = maximize({1}, {{{-1}, Rel::Le, 1}});
    CHECK(unb.status == Status::Unbounded);
}

TEST_CASE("degenerate vertex does not cycle") {
    // classic degenerate corner: three planes through one vertex
    auto r = maximize({1, 1, 1}, {{{1, 0, 0}, Rel::Le, 1},
                                  {{0, 1, 0}, Rel::Le, 1},
                                  {{1, 1, 0}, Rel::Le, 2},
                                  {{0, 0, 1}, Rel::Le, 1}});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(3.0));
}

TEST_CASE("max-min over a simplex matches enumeration") {
    // max_w min_i (R w) with w on the simplex, posed as max t s.t. Rw >= t.
    // Optimum of a 2-row game is computable by hand: rows (1,0), (0,1)
    // -> value 1/2 at w=(1/2,1/2).
    auto r = maximize({0, 0, 1}, {{{1, 0, -1}, Rel::Ge, 0},
                                  {{0, 1, -1}, Rel::Ge, 0},
                                  {{1, 1, 0}, Rel::Eq, 1}});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(0.5));
}

TEST_CASE("random LPs agree with dense vertex enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        // 2 vars, 4 <= rows with positive rhs: bounded feasible region
        std::vector<double> c = {u(rng), u(rng)};
        std::vector<Constraint> cons;
        for (int i = 0; i < 4; ++i)
            cons.push_back({{u(rng), u(rng)}, Rel::Le, std::fabs(u(rng)) + 0.2});
        cons.push_back({{1, 0}, Rel::Le, 3});
        cons.push_back({{0, 1}, Rel::Le, 3});
        auto r = maximize(c, cons);
        REQUIRE(r.status == Status::Optimal);

        // brute force: all pairwise constraint intersections + axis corners
        double best = 0.0;  // origin is feasible (x >= 0, rhs > 0)
        auto feas = [&](double x, double y) {
            if (x < -1e-9 || y < -1e-9) return false;
            for (const auto& cn : cons)
                if (cn.a[0] * x + cn.a[1] * y > cn.rhs + 1e-9) return false;
            return true;
        };
        auto try_pt = [&](double x, double y) {
            if (feas(x, y)) best = std::max(best, c[0] * x + c[1] * y);
        };
        std::vector<std::vector<double>> rows;
        for (const auto& cn : cons) rows.push_back({cn.a[0], cn.a[1], cn.rhs});
        rows.push_back({1, 0, 0});
        rows.push_back({0, 1, 0});
        best = -1e300;
        try_pt(0, 0);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
                if (std::fabs(det) < 1e-9) continue;
                double x = (rows[i][2] * rows[j][1] - rows[i][1] * rows[j][2]) / det;
                double y = (rows[i][0] * rows[j][2] - rows[i][2] * rows[j][0]) / det;
                try_pt(x, y);
            }
        CHECK(r.value == doctest::Approx(best).epsilon(1e-7));
    }
}
