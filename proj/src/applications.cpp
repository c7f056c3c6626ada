#include "epr/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "epr/core_model.hpp"
#include "epr/lattice.hpp"

namespace epr::apps {

double CostFn::operator()(double x) const {
    switch (kind) {
        case Kind::Linear: return scale * x;
        case Kind::Quadratic: return scale * x * x;
        case Kind::Power: return scale * std::pow(x, k);
    }
    return 0.0;
}

namespace {

void check_increasing(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw std::invalid_argument(std::string(what) + " empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw std::invalid_argument(std::string(what) + " not increasing");
}

// tabular family over a product problem: first menu x second menu constant
core::DecisionProblem make_problem(std::size_t n1, std::size_t n2,
                                   const std::vector<double>& prior) {
    core::DecisionProblem p;
    for (std::size_t s = 0; s < prior.size(); ++s)
        p.states.push_back("s" + std::to_string(s));
    p.prior = prior;
    std::vector<std::string> menu2;
    for (std::size_t j = 0; j < n2; ++j) menu2.push_back("b" + std::to_string(j));
    for (std::size_t i = 0; i < n1; ++i) {
        p.first_menu.push_back("a" + std::to_string(i));
        p.second_menu.push_back(menu2);
    }
    p.finalize();
    return p;
}

}  // namespace

void ProjectInstance::validate() const {
    check_increasing(a1_grid, "a1 grid");
    check_increasing(a2_grid, "a2 grid");
    check_increasing(theta, "theta grid");
    if (theta.front() < 0) throw std::invalid_argument("theta must be >= 0");
    if (theta_star >= theta.size()) throw std::invalid_argument("bad theta*");
    if (states.size() != prior.size()) throw std::invalid_argument("prior mismatch");
    for (double a : a1_grid)
        if (a < 0 || a > 1) throw std::invalid_argument("a1 grid outside [0,1]");
    for (double a : a2_grid)
        if (a < 0 || a > 1) throw std::invalid_argument("a2 grid outside [0,1]");
    // costs non-decreasing on the grids
    for (std::size_t i = 1; i < a1_grid.size(); ++i)
        if (c1(a1_grid[i]) < c1(a1_grid[i - 1]) - 1e-12)
            throw std::invalid_argument("c1 decreasing on grid");
    for (std::size_t i = 1; i < a2_grid.size(); ++i)
        if (c2(a2_grid[i]) < c2(a2_grid[i - 1]) - 1e-12)
            throw std::invalid_argument("c2 decreasing on grid");
}

ProjectResult project_simulate(const ProjectInstance& in, double gamma,
                               std::size_t shock_state) {
    in.validate();
    if (shock_state >= in.states.size())
        throw std::domain_error("shock state out of range");

    auto p = make_problem(in.a1_grid.size(), in.a2_grid.size(), in.prior);
    std::vector<core::UtilityTable> tables(in.theta.size());
    for (std::size_t t = 0; t < in.theta.size(); ++t) {
        tables[t].values.assign(p.n_pairs(), std::vector<double>(in.states.size()));
        for (std::size_t i = 0; i < in.a1_grid.size(); ++i)
            for (std::size_t j = 0; j < in.a2_grid.size(); ++j)
                for (std::size_t s = 0; s < in.states.size(); ++s)
                    tables[t].values[p.pair_index(i, j)][s] =
                        in.w(in.a1_grid[i], in.a2_grid[j], in.theta[t], in.states[s]);
    }
    auto fam = core::RationaleFamily::tabular(std::move(tables), in.theta_star);

    core::AgentConfig cfg;
    cfg.gamma = gamma;
    cfg.policy = core::Policy::Naif;
    auto first = core::first_period_choice(p, fam, cfg);

    ProjectResult res;
    res.a1 = first.chosen.back();  // highest tied effort

    const auto& u = fam.material();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < in.a2_grid.size(); ++j)
        best = std::max(best, u.at(p, res.a1, j, shock_state));
    for (std::size_t j = 0; j < in.a2_grid.size(); ++j)
        if (u.at(p, res.a1, j, shock_state) >= best - core::kArgmaxTol)
            res.classical.push_back(j);

    auto cr = core::second_period_choice(p, fam, gamma, res.a1, shock_state);
    res.rationalizing = cr.chosen;
    res.theta_bar = in.theta[in.theta_star];
    for (const auto& wit : cr.witnesses)
        for (std::size_t r : wit) res.theta_bar = std::max(res.theta_bar, in.theta[r]);
    return res;
}

StickyResult sticky_choice_simulate(const StickyInstance& in, double gamma,
                                    std::size_t state, std::size_t a1) {
    check_increasing(in.grid, "action grid");
    check_increasing(in.theta, "theta grid");
    if (in.theta_star >= in.theta.size()) throw std::invalid_argument("bad theta*");
    if (state >= in.states.size()) throw std::domain_error("state out of range");
    if (a1 >= in.grid.size()) throw std::domain_error("a1 out of range");

    const std::size_t n = in.grid.size(), nt = in.theta.size();
    double s = in.states[state];

    // precondition: phi supermodular in (a, theta) — checked on the
    // same-problem-twice lattice instance
    lattice::LatticeInstance li;
    li.a1 = lattice::Poset::chain(n);
    li.a2 = lattice::Lattice::chain(n);
    li.theta = in.theta;
    li.theta_star = in.theta_star;
    li.n_states = 1;
    li.gamma = gamma;
    std::vector<std::size_t> full(n);
    for (std::size_t j = 0; j < n; ++j) full[j] = j;
    li.menu.assign(n, full);
    li.w_.assign(n * n * nt, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < nt; ++t)
                li.w(i, j, t, 0) = in.phi(in.grid[i], in.theta[t], s) +
                                   in.phi(in.grid[j], in.theta[t], s);
    if (auto v = lattice::supermodularity_violation(li))
        throw std::invalid_argument("phi not supermodular in (a,theta): " + v->what);

    auto p = make_problem(n, n, {1.0});
    std::vector<core::UtilityTable> tables(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        tables[t].values.assign(p.n_pairs(), std::vector<double>(1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                tables[t].values[p.pair_index(i, j)][0] = li.w(i, j, t, 0);
    }
    auto fam = core::RationaleFamily::tabular(std::move(tables), in.theta_star);

    StickyResult res;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
        best = std::max(best, in.phi(in.grid[j], in.theta[in.theta_star], s));
    for (std::size_t j = 0; j < n; ++j)
        if (in.phi(in.grid[j], in.theta[in.theta_star], s) >= best - core::kArgmaxTol)
            res.classical.push_back(j);

    auto cr = core::second_period_choice(p, fam, gamma, a1, 0);
    res.rationalizing = cr.chosen;
    res.theta_bar = in.theta[in.theta_star];
    for (const auto& wit : cr.witnesses)
        for (std::size_t r : wit) res.theta_bar = std::max(res.theta_bar, in.theta[r]);
    return res;
}

void MLRPFamily::validate() const {
    check_increasing(Y, "outcome support");
    check_increasing(theta, "theta grid");
    if (theta_star >= theta.size()) throw std::invalid_argument("bad theta*");
    if (h.size() != theta.size()) throw std::invalid_argument("prior count mismatch");
    for (const auto& ht : h) {
        if (ht.size() != Y.size()) throw std::invalid_argument("prior support mismatch");
        double sum = 0;
        for (double v : ht) {
            if (!(v > 0)) throw std::invalid_argument("prior must have full support");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("prior does not sum to 1");
    }
    // strict MLRP on adjacent theta pairs
    for (std::size_t t = 1; t < theta.size(); ++t)
        for (std::size_t y0 = 0; y0 < Y.size(); ++y0)
            for (std::size_t y1 = y0 + 1; y1 < Y.size(); ++y1)
                if (!(h[t][y1] * h[t - 1][y0] > h[t - 1][y1] * h[t][y0]))
                    throw std::invalid_argument("strict MLRP fails");
    if (g.empty()) throw std::invalid_argument("no signals");
    for (const auto& gx : g)
        if (gx.size() != Y.size()) throw std::invalid_argument("likelihood mismatch");
    for (std::size_t y = 0; y < Y.size(); ++y) {
        double sum = 0;
        for (std::size_t x = 0; x < g.size(); ++x) {
            if (g[x][y] < 0) throw std::invalid_argument("negative likelihood");
            sum += g[x][y];
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("likelihood does not sum to 1");
    }
}

MLRPFamily MLRPFamily::default_bernoulli() {
    MLRPFamily f;
    f.Y = {0.0, 1.0};
    for (int i = 1; i <= 99; ++i) f.theta.push_back(i / 100.0);
    f.theta_star = 49;  // theta = 0.5
    for (double th : f.theta) f.h.push_back({1.0 - th, th});
    f.g = {{0.7, 0.3}, {0.3, 0.7}};  // g[x][y], 0.7-accuracy symmetric signal
    f.validate();
    return f;
}

Posterior posterior(const MLRPFamily& f, std::size_t t, std::size_t x) {
    if (t >= f.theta.size()) throw std::domain_error("theta index out of range");
    if (x >= f.n_signals()) throw std::domain_error("unknown signal");
    Posterior post;
    post.pmf.resize(f.Y.size());
    double marginal = 0.0;
    for (std::size_t y = 0; y < f.Y.size(); ++y) {
        post.pmf[y] = f.h[t][y] * f.g[x][y];
        marginal += post.pmf[y];
    }
    for (std::size_t y = 0; y < f.Y.size(); ++y) {
        post.pmf[y] /= marginal;
        post.mean += post.pmf[y] * f.Y[y];
    }
    return post;
}

bool posteriors_fosd_ordered(const MLRPFamily& f, std::size_t x) {
    // theta' > theta: posterior under theta' first-order dominates
    for (std::size_t t = 1; t < f.theta.size(); ++t) {
        auto lo = posterior(f, t - 1, x), hi = posterior(f, t, x);
        double cl = 0, ch = 0;
        for (std::size_t y = 0; y + 1 < f.Y.size(); ++y) {
            cl += lo.pmf[y];
            ch += hi.pmf[y];
            if (ch > cl + 1e-12) return false;
        }
    }
    return true;
}

ElicitationRun elicitation_with_signal(const MLRPFamily& f, double gamma,
                                       std::size_t x, double a1_override,
                                       bool use_override) {
    f.validate();
    if (x >= f.n_signals()) throw std::domain_error("unknown signal");

    ElicitationRun run;
    run.signal = x;
    if (use_override) {
        run.a1 = a1_override;
    } else {
        run.a1 = 0.0;
        for (std::size_t y = 0; y < f.Y.size(); ++y)
            run.a1 += f.h[f.theta_star][y] * f.Y[y];
    }

    const std::size_t nt = f.theta.size();
    std::vector<double> mean(nt), var(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        auto post = posterior(f, t, x);
        mean[t] = post.mean;
        for (std::size_t y = 0; y < f.Y.size(); ++y) {
            double d = f.Y[y] - post.mean;
            var[t] += post.pmf[y] * d * d;
        }
    }
    run.posterior_mean = mean[f.theta_star];

    // quadratic loss: phi(a, t) = -(a - mean[t])^2 - var[t]
    auto phi = [&](double a, std::size_t t) {
        double d = a - mean[t];
        return -d * d - var[t];
    };

    double lo = f.Y.front(), hi = f.Y.back();
    const std::size_t ng = kReportGridPoints;
    auto grid_at = [&](std::size_t k) {
        return lo + (hi - lo) * k / double(ng - 1);
    };
    // ex-post best report under rationale t: the grid point nearest mean[t]
    std::vector<double> grid_best(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < ng; ++k)
            best = std::max(best, phi(grid_at(k), t));
        grid_best[t] = best;
    }

    auto total = [&](std::size_t k, std::size_t t) {
        return (1.0 - gamma) * phi(grid_at(k), f.theta_star) +
               gamma * (phi(run.a1, t) + phi(grid_at(k), t) - 2.0 * grid_best[t]);
    };
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < ng; ++k)
        for (std::size_t t = 0; t < nt; ++t) best = std::max(best, total(k, t));
    // report: lowest tied grid point; rationale: highest theta witnessing it
    std::size_t best_k = ng, best_t = 0;
    for (std::size_t k = 0; k < ng && best_k == ng; ++k)
        for (std::size_t t = 0; t < nt; ++t)
            if (total(k, t) >= best - core::kArgmaxTol) {
                best_k = k;
                best_t = t;
            }
    for (std::size_t t = best_t; t < nt; ++t)
        if (total(best_k, t) >= best - core::kArgmaxTol) best_t = t;
    run.a2 = grid_at(best_k);
    run.theta_bar = f.theta[best_t];

    double mmin = *std::min_element(mean.begin(), mean.end());
    double mmax = *std::max_element(mean.begin(), mean.end());
    run.a1_rationalizable = run.a1 >= mmin - 1e-9 && run.a1 <= mmax + 1e-9;
    return run;
}

ElicitationRun elicitation_simulate(const MLRPFamily& f, double gamma,
                                    std::size_t true_theta, std::uint64_t seed) {
    if (true_theta >= f.theta.size())
        throw std::domain_error("theta index out of range");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    // draw y ~ h_true, then x ~ g(.|y)
    double r = u01(rng);
    std::size_t y = 0;
    for (double acc = 0.0; y < f.Y.size(); ++y) {
        acc += f.h[true_theta][y];
        if (r <= acc) break;
    }
    if (y == f.Y.size()) --y;
    r = u01(rng);
    std::size_t x = 0;
    for (double acc = 0.0; x < f.n_signals(); ++x) {
        acc += f.g[x][y];
        if (r <= acc) break;
    }
    if (x == f.n_signals()) --x;
    return elicitation_with_signal(f, gamma, x, 0.0, false);
}

}  // namespace epr::apps
