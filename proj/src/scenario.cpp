#include "epr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "epr/report.hpp"
#include "json.hpp"

namespace epr::scenario {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ParseError("scenario field '" + field + "': " + what);
}

void expect_keys(const json& j, const std::string& where,
                 const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(where + "." + it.key(), "unknown field");
}

double parse_number_id(const std::string& id, const std::string& field) {
    try {
        std::size_t pos = 0;
        double v = std::stod(id, &pos);
        if (pos != id.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail(field, "action/state id '" + id + "' is not numeric");
    }
}

// cost catalog for the bilinear expression: scale * x^k
struct Cost {
    double k = 1.0, scale = 1.0;
    double operator()(double x) const { return scale * std::pow(x, k); }
};

Cost parse_cost(const json& j, const std::string& field) {
    Cost c;
    if (j.is_null()) return c;
    expect_keys(j, field, {"kind", "k", "scale"});
    std::string kind = j.value("kind", "linear");
    if (kind == "linear") c.k = 1.0;
    else if (kind == "quadratic") c.k = 2.0;
    else if (kind == "power") c.k = j.value("k", 2.0);
    else fail(field, "unknown cost kind '" + kind + "'");
    c.scale = j.value("scale", 1.0);
    return c;
}

core::PayoffFn make_expression(const std::string& name, const json& rj) {
    if (name == "ticket_example") {
        // a1 id: upfront payment; a2 id: extra payment to attend, or "stay";
        // state "snow": the bad-weather state. theta: value of attending.
        return [](const std::string& a1, const std::string& a2, double theta,
                  const std::string& s) {
            double pay = parse_number_id(a1, "first_menu");
            bool attend = a2 != "stay";
            if (attend) pay += parse_number_id(a2, "second_menu");
            double v = -pay;
            if (attend) {
                v += theta;
                if (s == "snow") v -= 200.0;
            }
            return v;
        };
    }
    if (name == "bilinear") {
        Cost c1 = parse_cost(rj.value("c1", json()), "rationales.c1");
        Cost c2 = parse_cost(rj.value("c2", json()), "rationales.c2");
        return [c1, c2](const std::string& a1, const std::string& a2,
                        double theta, const std::string& s) {
            double x1 = parse_number_id(a1, "first_menu");
            double x2 = parse_number_id(a2, "second_menu");
            double sv = parse_number_id(s, "states");
            return theta * x1 * x2 - sv * c1(x1) - c2(x2);
        };
    }
    if (name == "separable") {
        // phi(a, theta, s) = -(a - theta - s)^2, supermodular in (a, theta)
        return [](const std::string& a1, const std::string& a2, double theta,
                  const std::string& s) {
            double x1 = parse_number_id(a1, "first_menu");
            double x2 = parse_number_id(a2, "second_menu");
            double sv = parse_number_id(s, "states");
            auto phi = [&](double x) { return -(x - theta - sv) * (x - theta - sv); };
            return phi(x1) + phi(x2);
        };
    }
    fail("rationales.expression", "unknown expression '" + name + "'");
}

core::RationaleFamily parse_family(const core::DecisionProblem& p, const json& rj) {
    std::string kind = rj.value("kind", "");
    if (kind == "parametric") {
        expect_keys(rj, "rationales",
                    {"kind", "expression", "theta", "grid", "theta_star", "c1", "c2"});
        std::vector<double> grid;
        if (rj.contains("grid")) {
            grid = rj.at("grid").get<std::vector<double>>();
        } else if (rj.contains("theta")) {
            const json& t = rj.at("theta");
            expect_keys(t, "rationales.theta", {"min", "max", "points"});
            double lo = t.at("min"), hi = t.at("max");
            int n = t.value("points", 401);
            if (n < 1 || hi <= lo) fail("rationales.theta", "bad grid bounds");
            for (int i = 0; i < n; ++i)
                grid.push_back(lo + (hi - lo) * i / (n - 1));
        } else {
            fail("rationales", "parametric family needs 'theta' or 'grid'");
        }
        double theta_star = rj.at("theta_star");
        std::size_t star = grid.size();
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::fabs(grid[i] - theta_star) < 1e-9) star = i;
        if (star == grid.size()) fail("rationales.theta_star", "not on the grid");
        auto w = make_expression(rj.value("expression", ""), rj);
        return core::RationaleFamily::parametric(p, grid, star, w);
    }
    if (kind == "tabular") {
        expect_keys(rj, "rationales", {"kind", "tables", "material_index"});
        std::vector<core::UtilityTable> tables;
        for (const json& tj : rj.at("tables")) {
            core::UtilityTable tab;
            tab.values.assign(p.n_pairs(), std::vector<double>(p.n_states(), 0.0));
            for (std::size_t i = 0; i < p.first_menu.size(); ++i) {
                if (!tj.contains(p.first_menu[i]))
                    fail("rationales.tables", "missing a1 '" + p.first_menu[i] + "'");
                const json& row = tj.at(p.first_menu[i]);
                for (std::size_t j2 = 0; j2 < p.second_menu[i].size(); ++j2) {
                    const std::string& a2 = p.second_menu[i][j2];
                    if (!row.contains(a2))
                        fail("rationales.tables", "missing a2 '" + a2 + "'");
                    auto vals = row.at(a2).get<std::vector<double>>();
                    if (vals.size() != p.n_states())
                        fail("rationales.tables", "state count mismatch for '" + a2 + "'");
                    tab.values[p.pair_index(i, j2)] = vals;
                }
            }
            tables.push_back(std::move(tab));
        }
        return core::RationaleFamily::tabular(std::move(tables),
                                              rj.value("material_index", 0));
    }
    fail("rationales.kind", "expected 'parametric' or 'tabular'");
}

}  // namespace

Scenario load(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("scenario JSON parse: ") + e.what());
    }
    expect_keys(j, "",
                {"scenario_id", "states", "prior", "first_menu", "second_menu",
                 "gamma", "policy", "selection_rule", "rationales"});
    core::DecisionProblem p;
    try {
        p.states = j.at("states").get<std::vector<std::string>>();
        p.prior = j.at("prior").get<std::vector<double>>();
        p.first_menu = j.at("first_menu").get<std::vector<std::string>>();
        const json& sm = j.at("second_menu");
        for (const auto& a1 : p.first_menu) {
            if (!sm.contains(a1)) fail("second_menu", "missing entry for '" + a1 + "'");
            p.second_menu.push_back(sm.at(a1).get<std::vector<std::string>>());
        }
        p.finalize();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("scenario problem block: ") + e.what());
    }

    Scenario sc{j.value("scenario_id", "unnamed"), p, parse_family(p, j.at("rationales")), {}};
    sc.config.gamma = j.at("gamma");
    if (sc.config.gamma < 0.0 || sc.config.gamma >= 1.0)
        fail("gamma", "outside [0,1)");
    std::string pol = j.value("policy", "naif");
    if (pol == "naif") sc.config.policy = core::Policy::Naif;
    else if (pol == "sophisticate") sc.config.policy = core::Policy::Sophisticate;
    else if (pol == "empathetic_sophisticate")
        sc.config.policy = core::Policy::EmpatheticSophisticate;
    else if (pol == "classical") sc.config.policy = core::Policy::Classical;
    else fail("policy", "unknown policy '" + pol + "'");
    std::string sel = j.value("selection_rule", "pessimistic");
    if (sel == "pessimistic") sc.config.selection = core::Selection::Pessimistic;
    else if (sel == "optimistic") sc.config.selection = core::Selection::Optimistic;
    else fail("selection_rule", "unknown rule '" + sel + "'");
    return sc;
}

Scenario load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load(ss.str());
}

std::string run_csv(const Scenario& sc) {
    const auto& p = sc.problem;
    double gamma = sc.config.policy == core::Policy::Classical ? 0.0 : sc.config.gamma;
    auto first = core::first_period_choice(p, sc.family, sc.config);

    std::ostringstream out;
    out << "scenario_id,state,a1,a2_set,witness_theta_min,witness_theta_max,"
           "total_utility,material_utility,regret\n";
    for (std::size_t s = 0; s < p.n_states(); ++s) {
        for (std::size_t i : first.chosen) {
            auto cr = core::second_period_choice(p, sc.family, gamma, i, s);
            std::string a2set;
            double wmin = 0, wmax = 0;
            bool any = false;
            for (std::size_t k = 0; k < cr.chosen.size(); ++k) {
                if (k) a2set += '|';
                a2set += p.second_menu[i][cr.chosen[k]];
                for (std::size_t r : cr.witnesses[k]) {
                    double tv = sc.family.kind == core::RationaleFamily::Kind::Parametric
                                    ? sc.family.theta[r]
                                    : static_cast<double>(r);
                    if (!any || tv < wmin) wmin = tv;
                    if (!any || tv > wmax) wmax = tv;
                    any = true;
                }
            }
            out << sc.id << ',' << p.states[s] << ',' << p.first_menu[i] << ','
                << a2set << ',' << report::fmt(wmin) << ',' << report::fmt(wmax)
                << ',' << report::fmt(cr.total_utility) << ','
                << report::fmt(cr.material_utility) << ','
                << report::fmt(cr.regret) << '\n';
        }
    }
    return out.str();
}

}  // namespace epr::scenario
