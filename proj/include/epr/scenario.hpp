#pragma once
// Scenario files: JSON schema for two-period problems, the parametric payoff
// catalog, and CSV report emission.

#include <string>

#include "epr/core_model.hpp"

namespace epr::scenario {

struct Scenario {
    std::string id;
    core::DecisionProblem problem;
    core::RationaleFamily family;
    core::AgentConfig config;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scenario load(const std::string& json_text);
Scenario load_file(const std::string& path);

// CSV body: scenario_id,state,a1,a2_set,witness_theta_min,witness_theta_max,
//           total_utility,material_utility,regret
std::string run_csv(const Scenario& sc);

}  // namespace epr::scenario
