#pragma once
// Two-part tariff against a rationalizing consumer: demand, participation,
// expected profit, and the closed-form optimal tariffs for naive and
// sophisticated consumers.

#include <functional>
#include <string>
#include <vector>

namespace epr::tariff {

struct TasteShockDistribution {
    enum class Kind { Uniform01, Power, QuantileTable };
    Kind kind = Kind::Uniform01;
    double power_k = 2.0;
    // quantile table: knots (s_i, F_i), strictly increasing in both coords,
    // F piecewise linear between knots
    std::vector<double> knots_s, knots_F;

    static TasteShockDistribution uniform01();
    static TasteShockDistribution power(double k);
    static TasteShockDistribution quantile_table(std::vector<double> s,
                                                 std::vector<double> F);

    double cdf(double s) const;
    double density(double s) const;
    // integral of g over [lo, hi] against dF, composite 64-node GL per branch
    double integrate(double lo, double hi,
                     const std::function<double(double)>& g, int panels = 2) const;
    double second_moment() const;  // int s^2 dF
};

enum class Consumer { Classical, Naif, Sophisticate };

struct TariffInstance {
    double p = 1.0;
    double L = 0.0;
    double c = 1.0;
    double gamma = 0.0;
    TasteShockDistribution dist;
    void validate() const;
};

struct TariffSolution {
    double p_star = 0.0;
    double L_star = 0.0;
    double break_even = 0.0;   // s-bar (naif) or s-tilde (sophisticate)
    double lambda = 0.0;       // naif distortion integral (0 for gamma=0)
    double expected_profit = 0.0;
    double consumer_material_utility = 0.0;
};

double classical_demand(double s, double p, double L);
double rationalizing_demand(double s, double p, double L, double gamma);

struct MonotonicityVerdict {
    bool ok = true;
    std::string witness;
};
MonotonicityVerdict demand_monotonicity_check(double p, double gamma, double L,
                                              double Lp,
                                              const std::vector<double>& states);

double expected_profit(const TariffInstance&, Consumer);

TariffSolution optimal_tariff_naif(double c, double gamma,
                                   const TasteShockDistribution&);
TariffSolution optimal_tariff_sophisticate(double c, double gamma,
                                           const TasteShockDistribution&);

// CSV rows: s,q_classical,q_rationalizing,theta_adopted — the rationalizing
// column is recomputed through the behavioral-equivalence shift, not through
// rationalizing_demand
std::string demand_curve_csv(const TariffInstance&,
                             const std::vector<double>& states);

}  // namespace epr::tariff
