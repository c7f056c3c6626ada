#pragma once
// Worked settings on top of the core solver: project persistence, the
// same-problem-twice stickiness construction, and MLRP belief elicitation
// with quadratic scoring.

#include <cstdint>
#include <functional>
#include <vector>

namespace epr::apps {

struct CostFn {
    enum class Kind { Linear, Quadratic, Power };
    Kind kind = Kind::Linear;
    double k = 2.0;
    double scale = 1.0;
    double operator()(double x) const;
};

struct ProjectInstance {
    std::vector<double> a1_grid, a2_grid;  // effort grids in [0,1], increasing
    std::vector<double> theta;             // reward grid, increasing, >= 0
    std::size_t theta_star = 0;
    CostFn c1, c2;
    std::vector<double> states;  // cost shocks multiplying c1
    std::vector<double> prior;
    void validate() const;
    double w(double a1, double a2, double th, double s) const {
        return th * a1 * a2 - s * c1(a1) - c2(a2);
    }
};

struct ProjectResult {
    std::size_t a1 = 0;                        // naif ex-ante choice (max of ties)
    std::vector<std::size_t> classical;        // a2 grid indices
    std::vector<std::size_t> rationalizing;
    double theta_bar = 0.0;                    // max adopted rationale
};

ProjectResult project_simulate(const ProjectInstance&, double gamma,
                               std::size_t shock_state);

struct StickyInstance {
    std::vector<double> grid;   // common action grid A
    std::vector<double> theta;
    std::size_t theta_star = 0;
    std::vector<double> states;
    std::function<double(double a, double th, double s)> phi;
};

struct StickyResult {
    std::vector<std::size_t> classical;  // argmax of phi(., theta*, s)
    std::vector<std::size_t> rationalizing;
    double theta_bar = 0.0;
};

// same-problem-twice: w = phi(a1,.) + phi(a2,.); throws if phi fails the
// supermodularity precondition (checked through the lattice toolkit)
StickyResult sticky_choice_simulate(const StickyInstance&, double gamma,
                                    std::size_t state, std::size_t a1);

struct MLRPFamily {
    std::vector<double> Y;                  // increasing outcome support
    std::vector<double> theta;              // prior-family grid
    std::size_t theta_star = 0;
    std::vector<std::vector<double>> h;     // h[t][y], full support
    std::vector<std::vector<double>> g;     // g[x][y] = P(signal x | outcome y)
    void validate() const;                  // strict MLRP on adjacent pairs
    std::size_t n_signals() const { return g.size(); }
    static MLRPFamily default_bernoulli();  // Y={0,1}, theta 0.01..0.99, 0.7 signal
};

struct Posterior {
    std::vector<double> pmf;
    double mean = 0.0;
};

Posterior posterior(const MLRPFamily&, std::size_t t, std::size_t x);
bool posteriors_fosd_ordered(const MLRPFamily&, std::size_t x);

inline constexpr std::size_t kReportGridPoints = 201;

struct ElicitationRun {
    double a1 = 0.0;             // first report: prior mean under theta*
    std::size_t signal = 0;
    double a2 = 0.0;             // second report, on the report grid
    double theta_bar = 0.0;      // adopted rationale
    double posterior_mean = 0.0; // classical target m*
    bool a1_rationalizable = false;  // a1 optimal under some rationale given x
};

// deterministic core: given the signal realization
ElicitationRun elicitation_with_signal(const MLRPFamily&, double gamma,
                                       std::size_t x, double a1_override,
                                       bool use_override);
// seeded draw of (y, x) from the true-theta data-generating process
ElicitationRun elicitation_simulate(const MLRPFamily&, double gamma,
                                    std::size_t true_theta, std::uint64_t seed);

}  // namespace epr::apps
