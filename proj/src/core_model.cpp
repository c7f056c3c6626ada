#include "epr/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace epr::core {

void DecisionProblem::finalize() {
    if (first_menu.empty()) throw std::invalid_argument("empty first menu");
    if (second_menu.size() != first_menu.size())
        throw std::invalid_argument("second_menu size mismatch");
    if (prior.size() != states.size())
        throw std::invalid_argument("prior size mismatch");
    double sum = 0.0;
    for (double w : prior) {
        if (w < 0.0) throw std::invalid_argument("negative prior weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("prior does not sum to 1");
    auto check_dupes = [](const std::vector<std::string>& menu) {
        std::set<std::string> seen(menu.begin(), menu.end());
        if (seen.size() != menu.size())
            throw std::invalid_argument("duplicate action id in menu");
    };
    check_dupes(first_menu);
    pair_offset.assign(1, 0);
    for (const auto& menu : second_menu) {
        if (menu.empty()) throw std::invalid_argument("empty second menu");
        check_dupes(menu);
        pair_offset.push_back(pair_offset.back() + menu.size());
    }
}

std::size_t DecisionProblem::state_index(const std::string& id) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == id) return i;
    throw std::domain_error("unknown state id: " + id);
}

std::size_t DecisionProblem::a1_index(const std::string& id) const {
    for (std::size_t i = 0; i < first_menu.size(); ++i)
        if (first_menu[i] == id) return i;
    throw std::domain_error("unknown first action id: " + id);
}

std::size_t DecisionProblem::a2_index(std::size_t a1, const std::string& id) const {
    const auto& menu = second_menu.at(a1);
    for (std::size_t i = 0; i < menu.size(); ++i)
        if (menu[i] == id) return i;
    throw std::domain_error("action '" + id + "' not in menu of '" +
                            first_menu[a1] + "'");
}

RationaleFamily RationaleFamily::tabular(std::vector<UtilityTable> tables,
                                         std::size_t material_index) {
    if (tables.empty()) throw std::invalid_argument("empty rationale family");
    if (material_index >= tables.size())
        throw std::invalid_argument("material index out of range");
    for (const auto& t : tables)
        for (const auto& row : t.values)
            for (double v : row)
                if (!std::isfinite(v))
                    throw std::invalid_argument("non-finite utility value");
    RationaleFamily f;
    f.kind = Kind::Tabular;
    f.members = std::move(tables);
    f.material_index = material_index;
    return f;
}

RationaleFamily RationaleFamily::parametric(const DecisionProblem& p,
                                            std::vector<double> theta_grid,
                                            std::size_t theta_star_index,
                                            const PayoffFn& w) {
    if (theta_grid.empty()) throw std::invalid_argument("empty theta grid");
    for (std::size_t i = 1; i < theta_grid.size(); ++i)
        if (!(theta_grid[i] > theta_grid[i - 1]))
            throw std::invalid_argument("theta grid not strictly increasing");
    if (theta_star_index >= theta_grid.size())
        throw std::invalid_argument("theta* index out of range");
    RationaleFamily f;
    f.kind = Kind::Parametric;
    f.theta = std::move(theta_grid);
    f.material_index = theta_star_index;
    f.members.resize(f.theta.size());
    for (std::size_t r = 0; r < f.theta.size(); ++r) {
        auto& tab = f.members[r];
        tab.values.assign(p.n_pairs(), std::vector<double>(p.n_states()));
        for (std::size_t i = 0; i < p.first_menu.size(); ++i)
            for (std::size_t j = 0; j < p.second_menu[i].size(); ++j)
                for (std::size_t s = 0; s < p.n_states(); ++s) {
                    double v = w(p.first_menu[i], p.second_menu[i][j],
                                 f.theta[r], p.states[s]);
                    if (!std::isfinite(v))
                        throw std::invalid_argument("non-finite payoff value");
                    tab.values[p.pair_index(i, j)][s] = v;
                }
    }
    return f;
}

double ex_post_value(const DecisionProblem& p, const UtilityTable& v,
                     std::size_t state) {
    if (state >= p.n_states()) throw std::domain_error("state out of range");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.first_menu.size(); ++i)
        for (std::size_t j = 0; j < p.second_menu[i].size(); ++j)
            best = std::max(best, v.at(p, i, j, state));
    return best;
}

double ex_post_value(const DecisionProblem& p, const UtilityTable& v,
                     const std::string& state_id) {
    return ex_post_value(p, v, p.state_index(state_id));
}

double total_utility(const DecisionProblem& p, const RationaleFamily& fam,
                     double gamma, std::size_t a1, std::size_t a2,
                     std::size_t rationale, std::size_t state) {
    if (a1 >= p.first_menu.size()) throw std::domain_error("a1 out of range");
    if (a2 >= p.second_menu[a1].size())
        throw std::domain_error("a2 not in menu of a1");
    if (gamma < 0.0 || gamma >= 1.0) throw std::domain_error("gamma not in [0,1)");
    const UtilityTable& u = fam.material();
    const UtilityTable& v = fam.members.at(rationale);
    double regret = v.at(p, a1, a2, state) - ex_post_value(p, v, state);
    return (1.0 - gamma) * u.at(p, a1, a2, state) + gamma * regret;
}

ChoiceResult second_period_choice(const DecisionProblem& p,
                                  const RationaleFamily& fam, double gamma,
                                  std::size_t a1, std::size_t state) {
    if (a1 >= p.first_menu.size()) throw std::domain_error("a1 out of range");
    const std::size_t n2 = p.second_menu[a1].size();
    const std::size_t nr = fam.size();
    const UtilityTable& u = fam.material();

    std::vector<double> expost(nr);
    for (std::size_t r = 0; r < nr; ++r)
        expost[r] = ex_post_value(p, fam.members[r], state);

    // tu[j][r]
    std::vector<std::vector<double>> tu(n2, std::vector<double>(nr));
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n2; ++j) {
        double mu = u.at(p, a1, j, state);
        for (std::size_t r = 0; r < nr; ++r) {
            double regret = fam.members[r].at(p, a1, j, state) - expost[r];
            tu[j][r] = (1.0 - gamma) * mu + gamma * regret;
            best = std::max(best, tu[j][r]);
        }
    }

    ChoiceResult res;
    res.total_utility = best;
    for (std::size_t j = 0; j < n2; ++j) {
        std::vector<std::size_t> wit;
        for (std::size_t r = 0; r < nr; ++r)
            if (tu[j][r] >= best - kArgmaxTol) wit.push_back(r);
        if (!wit.empty()) {
            res.chosen.push_back(j);
            res.witnesses.push_back(std::move(wit));
        }
    }
    std::size_t j0 = res.chosen.front();
    res.material_utility = u.at(p, a1, j0, state);
    if (gamma > 0.0)
        res.regret = (best - (1.0 - gamma) * res.material_utility) / gamma;
    else
        res.regret = 0.0;
    return res;
}

namespace {

double material_continuation(const DecisionProblem& p, const UtilityTable& u,
                             std::size_t a1, std::size_t s) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p.second_menu[a1].size(); ++j)
        best = std::max(best, u.at(p, a1, j, s));
    return best;
}

}  // namespace

FirstPeriodResult first_period_choice(const DecisionProblem& p,
                                      const RationaleFamily& fam,
                                      const AgentConfig& cfg) {
    if (cfg.gamma < 0.0 || cfg.gamma >= 1.0)
        throw std::domain_error("gamma not in [0,1)");
    const UtilityTable& u = fam.material();
    const std::size_t n1 = p.first_menu.size();
    std::vector<double> value(n1, 0.0);

    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t s = 0; s < p.n_states(); ++s) {
            if (p.prior[s] == 0.0) continue;
            double v;
            switch (cfg.policy) {
                case Policy::Naif:
                case Policy::Classical:
                    v = material_continuation(p, u, i, s);
                    break;
                case Policy::Sophisticate: {
                    ChoiceResult cr = second_period_choice(p, fam, cfg.gamma, i, s);
                    double sel = cfg.selection == Selection::Pessimistic
                                     ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
                    for (std::size_t j : cr.chosen) {
                        double mu = u.at(p, i, j, s);
                        sel = cfg.selection == Selection::Pessimistic
                                  ? std::min(sel, mu)
                                  : std::max(sel, mu);
                    }
                    v = sel;
                    break;
                }
                case Policy::EmpatheticSophisticate: {
                    ChoiceResult cr = second_period_choice(p, fam, cfg.gamma, i, s);
                    v = cr.total_utility;
                    break;
                }
                default:
                    throw std::logic_error("unknown policy");
            }
            value[i] += p.prior[s] * v;
        }
    }

    FirstPeriodResult res;
    double best = *std::max_element(value.begin(), value.end());
    res.expected_value = best;
    for (std::size_t i = 0; i < n1; ++i)
        if (value[i] >= best - kArgmaxTol) res.chosen.push_back(i);
    return res;
}

}  // namespace epr::core
