#pragma once
// Two-period decision problems and the rationalizing-agent solver.
//
// An agent picks a1 from the first menu, a state s realizes, then the agent
// picks a2 from the second menu together with a rationale v from a family
// containing the material utility u. Second-period objective:
//   (1-gamma) * u(a1,a2,s) + gamma * (v(a1,a2,s) - max_{feasible plan} v(.,s))

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epr::core {

struct DecisionProblem {
    std::vector<std::string> states;
    std::vector<double> prior;
    std::vector<std::string> first_menu;
    std::vector<std::vector<std::string>> second_menu;  // indexed like first_menu

    // flattened (a1, a2) pair indexing
    std::vector<std::size_t> pair_offset;  // size |A1|+1
    void finalize();                       // validate + build offsets

    std::size_t n_states() const { return states.size(); }
    std::size_t n_pairs() const { return pair_offset.back(); }
    std::size_t pair_index(std::size_t a1, std::size_t a2) const {
        return pair_offset[a1] + a2;
    }
    std::size_t state_index(const std::string& id) const;
    std::size_t a1_index(const std::string& id) const;
    std::size_t a2_index(std::size_t a1, const std::string& id) const;
};

struct UtilityTable {
    // values[pair][state]
    std::vector<std::vector<double>> values;
    double at(const DecisionProblem& p, std::size_t a1, std::size_t a2,
              std::size_t s) const {
        return values[p.pair_index(a1, a2)][s];
    }
};

using PayoffFn = std::function<double(const std::string& a1, const std::string& a2,
                                      double theta, const std::string& state)>;

struct RationaleFamily {
    enum class Kind { Tabular, Parametric };
    Kind kind = Kind::Tabular;
    std::vector<UtilityTable> members;
    std::vector<double> theta;  // Parametric only, strictly increasing
    std::size_t material_index = 0;

    const UtilityTable& material() const { return members[material_index]; }
    std::size_t size() const { return members.size(); }

    static RationaleFamily tabular(std::vector<UtilityTable> tables,
                                   std::size_t material_index);
    static RationaleFamily parametric(const DecisionProblem& p,
                                      std::vector<double> theta_grid,
                                      std::size_t theta_star_index,
                                      const PayoffFn& w);
};

enum class Policy { Naif, Sophisticate, EmpatheticSophisticate, Classical };
enum class Selection { Pessimistic, Optimistic };

struct AgentConfig {
    double gamma = 0.0;
    Policy policy = Policy::Naif;
    Selection selection = Selection::Pessimistic;
};

struct ChoiceResult {
    std::vector<std::size_t> chosen;  // a2 indices within A2(a1), menu order
    std::vector<std::vector<std::size_t>> witnesses;  // rationale indices per chosen
    double total_utility = 0.0;       // the attained maximum
    double material_utility = 0.0;    // u at the first chosen action
    double regret = 0.0;              // rationale term at the first chosen action
};

struct FirstPeriodResult {
    std::vector<std::size_t> chosen;  // a1 indices, menu order
    double expected_value = 0.0;
};

inline constexpr double kArgmaxTol = 1e-10;

double ex_post_value(const DecisionProblem& p, const UtilityTable& v,
                     std::size_t state);
double ex_post_value(const DecisionProblem& p, const UtilityTable& v,
                     const std::string& state_id);

double total_utility(const DecisionProblem& p, const RationaleFamily& fam,
                     double gamma, std::size_t a1, std::size_t a2,
                     std::size_t rationale, std::size_t state);

ChoiceResult second_period_choice(const DecisionProblem& p,
                                  const RationaleFamily& fam, double gamma,
                                  std::size_t a1, std::size_t state);

FirstPeriodResult first_period_choice(const DecisionProblem& p,
                                      const RationaleFamily& fam,
                                      const AgentConfig& cfg);

}  // namespace epr::core
