#include "epr/tariff.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "epr/quadrature.hpp"
#include "epr/report.hpp"

namespace epr::tariff {

TasteShockDistribution TasteShockDistribution::uniform01() {
    return TasteShockDistribution{};
}

TasteShockDistribution TasteShockDistribution::power(double k) {
    if (k <= 0) throw std::invalid_argument("power distribution needs k > 0");
    TasteShockDistribution d;
    d.kind = Kind::Power;
    d.power_k = k;
    return d;
}

TasteShockDistribution TasteShockDistribution::quantile_table(
    std::vector<double> s, std::vector<double> F) {
    if (s.size() != F.size() || s.size() < 2)
        throw std::invalid_argument("quantile table needs matching knots");
    if (std::fabs(s.front()) > 1e-12 || std::fabs(s.back() - 1.0) > 1e-12 ||
        std::fabs(F.front()) > 1e-12 || std::fabs(F.back() - 1.0) > 1e-12)
        throw std::invalid_argument("quantile table must span [0,1] to [0,1]");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i] > s[i - 1]) || !(F[i] > F[i - 1]))
            throw std::invalid_argument("quantile table must be strictly increasing");
    TasteShockDistribution d;
    d.kind = Kind::QuantileTable;
    d.knots_s = std::move(s);
    d.knots_F = std::move(F);
    return d;
}

double TasteShockDistribution::cdf(double s) const {
    if (s <= 0) return 0.0;
    if (s >= 1) return 1.0;
    switch (kind) {
        case Kind::Uniform01: return s;
        case Kind::Power: return std::pow(s, power_k);
        case Kind::QuantileTable: {
            std::size_t i = 1;
            while (knots_s[i] < s) ++i;
            double t = (s - knots_s[i - 1]) / (knots_s[i] - knots_s[i - 1]);
            return knots_F[i - 1] + t * (knots_F[i] - knots_F[i - 1]);
        }
    }
    return 0.0;
}

double TasteShockDistribution::density(double s) const {
    switch (kind) {
        case Kind::Uniform01: return 1.0;
        case Kind::Power: return power_k * std::pow(s, power_k - 1.0);
        case Kind::QuantileTable: {
            if (s < 0 || s > 1) return 0.0;
            std::size_t i = 1;
            while (i + 1 < knots_s.size() && knots_s[i] < s) ++i;
            return (knots_F[i] - knots_F[i - 1]) / (knots_s[i] - knots_s[i - 1]);
        }
    }
    return 0.0;
}

double TasteShockDistribution::integrate(
    double lo, double hi, const std::function<double(double)>& g,
    int panels) const {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (hi <= lo) return 0.0;
    if (kind == Kind::QuantileTable) {
        // integrate segment-by-segment: density is constant on each segment
        double acc = 0.0;
        for (std::size_t i = 1; i < knots_s.size(); ++i) {
            double a = std::max(lo, knots_s[i - 1]);
            double b = std::min(hi, knots_s[i]);
            if (b <= a) continue;
            double dens = (knots_F[i] - knots_F[i - 1]) / (knots_s[i] - knots_s[i - 1]);
            acc += quad::integrate([&](double s) { return g(s) * dens; }, a, b,
                                   64, panels);
        }
        return acc;
    }
    return quad::integrate([&](double s) { return g(s) * density(s); }, lo, hi,
                           64, panels);
}

double TasteShockDistribution::second_moment() const {
    return integrate(0.0, 1.0, [](double s) { return s * s; });
}

void TariffInstance::validate() const {
    if (c <= 0) throw std::invalid_argument("marginal cost must be positive");
    if (gamma < 0 || gamma >= 1) throw std::invalid_argument("gamma not in [0,1)");
    if (p < 0 || L < 0) throw std::invalid_argument("negative tariff");
}

double classical_demand(double s, double p, double L) {
    (void)L;  // demand is L-free for the classical consumer
    if (p <= 0) throw std::domain_error("unbounded demand at p = 0");
    return (s * s) / (p * p);
}

double rationalizing_demand(double s, double p, double L, double gamma) {
    if (p <= 0) throw std::domain_error("unbounded demand at p = 0");
    if (L < 0) throw std::domain_error("negative upfront payment");
    double sbar = std::sqrt(L * p);
    if (s >= sbar || gamma == 0.0) return (s * s) / (p * p);
    double shifted = s + gamma * (sbar - s);
    return (shifted * shifted) / (p * p);
}

MonotonicityVerdict demand_monotonicity_check(double p, double gamma, double L,
                                              double Lp,
                                              const std::vector<double>& states) {
    if (!(L < Lp)) throw std::invalid_argument("need L < L'");
    MonotonicityVerdict v;
    double thresh = std::sqrt(Lp * p);
    for (double s : states) {
        double q0 = rationalizing_demand(s, p, L, gamma);
        double q1 = rationalizing_demand(s, p, Lp, gamma);
        bool fail;
        if (s >= thresh || gamma == 0.0)
            fail = q0 != q1;
        else
            fail = !(q1 > q0);
        if (fail) {
            std::ostringstream os;
            os << "s=" << s << " q(L)=" << q0 << " q(L')=" << q1;
            v.ok = false;
            v.witness = os.str();
            return v;
        }
    }
    return v;
}

namespace {

// material consumption utility of the rationalizing consumer, net of L
double realized_surplus(const TariffInstance& in, double gamma) {
    auto g = [&](double s) {
        double q = rationalizing_demand(s, in.p, in.L, gamma);
        return 2.0 * s * std::sqrt(q) - in.p * q;
    };
    double sbar = std::sqrt(in.L * in.p);
    return in.dist.integrate(0.0, sbar, g) + in.dist.integrate(sbar, 1.0, g) - in.L;
}

}  // namespace

double expected_profit(const TariffInstance& in, Consumer who) {
    in.validate();
    if (in.p <= 0) throw std::domain_error("p must be positive");
    double gamma = who == Consumer::Classical ? 0.0 : in.gamma;

    double participation;
    if (who == Consumer::Sophisticate) {
        participation = realized_surplus(in, gamma);
    } else {
        // classical and naif both anticipate classical consumption
        participation = in.dist.second_moment() / in.p - in.L;
    }
    // a consumer indifferent within numerical tolerance participates: the
    // optimal tariff makes this constraint bind, so the cutoff must match the
    // 1e-8 binding tolerance or the optimum itself reports zero profit
    if (participation < -1e-8) return 0.0;

    auto g = [&](double s) {
        return (in.p - in.c) * rationalizing_demand(s, in.p, in.L, gamma);
    };
    double sbar = std::sqrt(in.L * in.p);
    return in.dist.integrate(0.0, sbar, g) + in.dist.integrate(sbar, 1.0, g) + in.L;
}

TariffSolution optimal_tariff_naif(double c, double gamma,
                                   const TasteShockDistribution& dist) {
    if (c <= 0) throw std::invalid_argument("c must be positive");
    double M = dist.second_moment();
    double sbar = std::sqrt(M);
    double lambda = dist.integrate(0.0, sbar, [&](double s) {
        double d = sbar - s;
        return 2.0 * gamma * s * d + gamma * gamma * d * d;
    });
    TariffSolution sol;
    sol.break_even = sbar;
    sol.lambda = lambda;
    sol.p_star = c * (M + lambda) / (M + 0.5 * lambda);
    sol.L_star = M / sol.p_star;  // binding anticipated participation

    // first-order condition of the reduced profit in p
    double foc = -(M + lambda) * sol.p_star + 2.0 * c * (M + lambda) -
                 M * sol.p_star;
    if (std::fabs(foc) > 1e-8)
        throw std::logic_error("naif tariff FOC residual too large");

    TariffInstance in{sol.p_star, sol.L_star, c, gamma, dist};
    sol.expected_profit = expected_profit(in, Consumer::Naif);
    sol.consumer_material_utility = realized_surplus(in, gamma);
    double anticipated = M / sol.p_star - sol.L_star;
    if (std::fabs(anticipated) > 1e-8)
        throw std::logic_error("naif participation does not bind");
    return sol;
}

TariffSolution optimal_tariff_sophisticate(double c, double gamma,
                                           const TasteShockDistribution& dist) {
    if (c <= 0) throw std::invalid_argument("c must be positive");
    double M = dist.second_moment();
    double sbar = std::sqrt(M);
    auto G = [&](double st) {
        double lo = dist.integrate(0.0, st, [&](double s) {
            double d = st - s;
            return gamma * gamma * d * d;
        });
        return M - lo - st * st;
    };
    double a = 0.0, b = sbar;
    double ga = G(a), gb = G(b);
    if (!(ga > 0.0) || gb > 1e-12)
        throw std::runtime_error("s-tilde bisection bracket failure");
    while (b - a > 1e-10) {
        double mid = 0.5 * (a + b);
        if (G(mid) > 0)
            a = mid;
        else
            b = mid;
    }
    double st = 0.5 * (a + b);

    double num = M + dist.integrate(0.0, st, [&](double s) {
                     double d = st - s;
                     return 2.0 * gamma * s * d + gamma * gamma * d * d;
                 });
    double den = M + dist.integrate(0.0, st, [&](double s) {
                     return gamma * s * (st - s);
                 });
    TariffSolution sol;
    sol.break_even = st;
    sol.p_star = c * num / den;
    sol.L_star = st * st / sol.p_star;
    if (gamma > 0 && !(sol.p_star > c))
        throw std::logic_error("sophisticate price not above cost");

    TariffInstance in{sol.p_star, sol.L_star, c, gamma, dist};
    sol.expected_profit = expected_profit(in, Consumer::Sophisticate);
    sol.consumer_material_utility = realized_surplus(in, gamma);
    if (std::fabs(sol.consumer_material_utility) > 1e-8)
        throw std::logic_error("sophisticate participation does not bind");
    return sol;
}

std::string demand_curve_csv(const TariffInstance& in,
                             const std::vector<double>& states) {
    in.validate();
    std::ostringstream out;
    out << "s,q_classical,q_rationalizing,theta_adopted\n";
    double sbar = std::sqrt(in.L * in.p);
    for (double s : states) {
        double qc = classical_demand(s, in.p, in.L);
        double theta = std::max(sbar - s, 0.0);
        if (theta > 1.0 + 1e-12)
            throw std::logic_error("adopted rationale outside [-1,1]");
        // behavioral equivalence: classical consumer at the shifted state
        double qr = classical_demand(s + in.gamma * theta, in.p, in.L);
        out << report::fmt(s) << ',' << report::fmt(qc) << ',' << report::fmt(qr)
            << ',' << report::fmt(in.gamma == 0.0 ? 0.0 : theta) << '\n';
    }
    return out.str();
}

}  // namespace epr::tariff
