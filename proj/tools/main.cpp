// rationalize: batch CLI over the two-period rationalization model.
// Exit codes: 0 success, 1 assertion/property failure (machine-readable
// violation on stderr), 2 input error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "epr/applications.hpp"
#include "epr/core_model.hpp"
#include "epr/identification.hpp"
#include "epr/lattice.hpp"
#include "epr/report.hpp"
#include "epr/scenario.hpp"
#include "epr/tariff.hpp"

namespace {

using nlohmann::ordered_json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write: " + path);
    out << content;
}

std::string join_vals(const std::vector<std::size_t>& idx,
                      const std::vector<double>& grid) {
    std::string s;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) s += '|';
        s += epr::report::fmt(grid[idx[k]]);
    }
    return s;
}

// ---- solve --------------------------------------------------------------

int run_solve(const std::string& config, double gamma, bool has_gamma,
              std::uint64_t seed, const std::string& out) {
    std::string text = read_file(config);
    epr::scenario::Scenario sc = epr::scenario::load(text);
    if (has_gamma) {
        if (gamma < 0.0 || gamma >= 1.0) throw InputError("gamma outside [0,1)");
        sc.config.gamma = gamma;
    }
    std::string bytes = text + "|gamma=" +
                        epr::report::fmt(sc.config.gamma);
    std::string rep = epr::report::header("solve", seed, bytes) +
                      epr::scenario::run_csv(sc);
    emit(out, rep);
    return 0;
}

// ---- propcheck ----------------------------------------------------------

epr::lattice::SizeParams parse_sizes(const std::string& spec, bool grid) {
    epr::lattice::SizeParams sz;
    std::vector<std::size_t> v;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stoul(tok));
        } catch (...) {
            throw InputError("bad --sizes entry '" + tok + "'");
        }
    }
    if (v.size() != 4) throw InputError("--sizes wants n_a1,n_a2,n_theta,n_states");
    sz.n_a1 = v[0];
    sz.n_a2 = v[1];
    sz.n_theta = v[2];
    sz.n_states = v[3];
    sz.a2_grid = grid;
    return sz;
}

std::vector<std::size_t> expost_a1(const epr::lattice::LatticeInstance& in,
                                   std::size_t s) {
    std::vector<double> cont(in.a1.n, -1e300);
    for (std::size_t i = 0; i < in.a1.n; ++i)
        for (std::size_t j : in.menu[i])
            cont[i] = std::max(cont[i], in.w(i, j, in.theta_star, s));
    double best = *std::max_element(cont.begin(), cont.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < in.a1.n; ++i)
        if (cont[i] >= best - 1e-10) out.push_back(i);
    return out;
}

int run_propcheck(std::size_t seeds, std::uint64_t seed0,
                  const std::string& sizes_spec, bool grid,
                  const std::string& construction, bool corrupt,
                  const std::string& out) {
    auto sz = parse_sizes(sizes_spec, grid);
    epr::lattice::Construction c;
    if (construction == "sum")
        c = epr::lattice::Construction::SumOfMonotoneProducts;
    else if (construction == "separable")
        c = epr::lattice::Construction::Separable;
    else
        throw InputError("unknown construction '" + construction + "'");

    std::string bytes = "sizes=" + sizes_spec + "|grid=" + (grid ? "1" : "0") +
                        "|construction=" + construction +
                        "|corrupt=" + (corrupt ? "1" : "0") +
                        "|seeds=" + std::to_string(seeds);
    std::ostringstream csv;
    csv << epr::report::header("propcheck", seed0, bytes);
    csv << "seed,sizes,state,a1_star,a1_bar,verdict,witness\n";
    std::string size_tag = sizes_spec + (grid ? "+grid" : "");
    for (auto& ch : size_tag)
        if (ch == ',') ch = 'x';

    std::string violation;
    for (std::size_t k = 0; k < seeds; ++k) {
        std::uint64_t seed = seed0 + k;
        auto in = epr::lattice::random_instance(seed, sz, c);
        if (corrupt && k == 0) {
            if (in.a2.n < 2 || in.theta.size() < 2)
                throw InputError("--corrupt needs n_a2 >= 2 and n_theta >= 2");
            // break supermodularity at the top corner on purpose
            in.w(0, in.a2.n - 1, in.theta.size() - 1, 0) -= 10.0;
        }
        if (auto v = epr::lattice::supermodularity_violation(in)) {
            csv << seed << ',' << size_tag << ",0,,," << "violated,\""
                << v->what << "\"\n";
            if (violation.empty()) violation = v->what;
            continue;
        }
        if (auto v = epr::lattice::increasing_differences_violation(in)) {
            csv << seed << ',' << size_tag << ",0,,," << "violated,\""
                << v->what << "\"\n";
            if (violation.empty()) violation = v->what;
            continue;
        }
        for (std::size_t s = 0; s < in.n_states; ++s) {
            auto stars = expost_a1(in, s);
            std::string star_tag;
            for (std::size_t i = 0; i < stars.size(); ++i) {
                if (i) star_tag += '|';
                star_tag += std::to_string(stars[i]);
            }
            for (std::size_t a1 = 0; a1 < in.a1.n; ++a1) {
                auto rep = epr::lattice::check_theorem2(in, s, a1);
                const char* verdict =
                    rep.verdict == epr::lattice::Verdict::Holds        ? "holds"
                    : rep.verdict == epr::lattice::Verdict::Violated   ? "violated"
                                                                       : "inapplicable";
                std::string wit;
                if (rep.verdict == epr::lattice::Verdict::Holds) {
                    for (std::size_t i = 0; i < rep.witness_theta.size(); ++i) {
                        if (i) wit += '|';
                        wit += epr::report::fmt(in.theta[rep.witness_theta[i]]);
                    }
                    if (!rep.lemma5_ok) {
                        verdict = "violated";
                        wit = "low-theta maximizer outside material argmax";
                    }
                } else if (rep.verdict == epr::lattice::Verdict::Violated) {
                    wit = rep.detail;
                }
                csv << seed << ',' << size_tag << ',' << s << ',' << star_tag
                    << ',' << a1 << ',' << verdict << ",\"" << wit << "\"\n";
                if (std::string(verdict) == "violated" && violation.empty())
                    violation = "seed " + std::to_string(seed) + ": " + wit;
            }
        }
    }
    emit(out, csv.str());
    if (!violation.empty()) throw CheckFailure(violation);
    return 0;
}

// ---- identify -----------------------------------------------------------

epr::ident::RegularRepresentation parse_rep(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("rep JSON parse: ") + e.what());
    }
    epr::ident::RegularRepresentation rep;
    try {
        rep.space.z1 = j.at("z1").get<std::vector<std::string>>();
        rep.space.z2 =
            j.at("z2").get<std::vector<std::vector<std::string>>>();
        rep.space.finalize();
        rep.gamma = j.at("gamma");
        rep.u = j.at("u").get<std::vector<double>>();
        rep.extremes = j.at("extremes").get<std::vector<std::vector<double>>>();
    } catch (const std::exception& e) {
        throw InputError(std::string("rep file: ") + e.what());
    }
    rep.validate();
    return rep;
}

int run_identify(const std::string& rep_path, std::size_t samples,
                 std::uint64_t seed, const std::string& out) {
    std::string text = read_file(rep_path);
    auto rep = parse_rep(text);
    epr::ident::ChoiceOracle oracle(rep);

    const std::size_t nz = rep.space.size();
    epr::ident::Vec a(nz, 1.0 / double(nz));

    auto udir = epr::ident::recover_material_direction(oracle, a);
    auto normals =
        epr::ident::recover_rationale_cone(oracle, a, 2000, seed);
    auto ge = epr::ident::estimate_gamma(oracle, a, udir, normals, seed + 1);

    // probe-vs-ground-truth agreement on sampled directions
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 3);
    std::normal_distribution<double> gauss;
    double amin = *std::min_element(a.begin(), a.end());
    std::size_t agree = 0, unsound = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        epr::ident::Vec d(nz);
        double mean = 0.0;
        for (auto& x : d) {
            x = gauss(rng);
            mean += x;
        }
        double norm = 0.0;
        for (auto& x : d) {
            x -= mean / double(nz);
            norm += x * x;
        }
        norm = std::sqrt(std::max(norm, 1e-30));
        epr::ident::Vec p(a);
        for (std::size_t i = 0; i < nz; ++i) p[i] += 0.4 * amin * d[i] / norm;
        bool gt = epr::ident::inner_cone_membership(oracle, a, p,
                                                    epr::ident::Mode::GroundTruth);
        bool pr = epr::ident::inner_cone_membership(oracle, a, p,
                                                    epr::ident::Mode::Probe);
        if (gt == pr) ++agree;
        if (gt && !pr) ++unsound;
    }

    ordered_json rj;
    rj["header"] = {{"subcommand", "identify"},
                    {"seed", seed},
                    {"config", epr::report::fnv1a_hex(
                                   text + "|samples=" + std::to_string(samples))}};
    rj["samples"] = samples;
    rj["agreement_rate"] = samples ? double(agree) / double(samples) : 1.0;
    rj["unsound"] = unsound;
    rj["material_direction"] = udir;
    rj["normals"] = normals;
    rj["gamma"] = ge.gamma;
    rj["gamma_disagreements"] = ge.disagreements;
    emit(out, rj.dump(2) + "\n");
    if (unsound > 0)
        throw CheckFailure("probe classified a ground-truth member as non-member");
    return 0;
}

// ---- tariff -------------------------------------------------------------

epr::tariff::TasteShockDistribution parse_dist(const std::string& name,
                                               double power_k) {
    if (name == "uniform01") return epr::tariff::TasteShockDistribution::uniform01();
    if (name == "power") return epr::tariff::TasteShockDistribution::power(power_k);
    throw InputError("unknown distribution '" + name + "'");
}

int run_tariff(double c, double gamma, const std::string& dist_name,
               double power_k, const std::string& consumer, std::uint64_t seed,
               const std::string& out, const std::string& curve,
               std::size_t curve_points) {
    if (c <= 0) throw InputError("--c must be positive");
    if (gamma < 0 || gamma >= 1) throw InputError("gamma outside [0,1)");
    auto dist = parse_dist(dist_name, power_k);

    epr::tariff::TariffSolution sol;
    double eff_gamma = gamma;
    if (consumer == "naif") {
        sol = epr::tariff::optimal_tariff_naif(c, gamma, dist);
    } else if (consumer == "soph") {
        sol = epr::tariff::optimal_tariff_sophisticate(c, gamma, dist);
    } else if (consumer == "classical") {
        eff_gamma = 0.0;
        sol = epr::tariff::optimal_tariff_naif(c, 0.0, dist);
    } else {
        throw InputError("unknown consumer '" + consumer + "'");
    }

    std::string bytes = "c=" + epr::report::fmt(c) +
                        "|gamma=" + epr::report::fmt(gamma) + "|dist=" +
                        dist_name + "|k=" + epr::report::fmt(power_k) +
                        "|consumer=" + consumer;
    ordered_json rj;
    rj["header"] = {{"subcommand", "tariff"},
                    {"seed", seed},
                    {"config", epr::report::fnv1a_hex(bytes)}};
    rj["p_star"] = sol.p_star;
    rj["L_star"] = sol.L_star;
    rj["break_even"] = sol.break_even;
    rj["lambda"] = sol.lambda;
    rj["expected_profit"] = sol.expected_profit;
    rj["consumer_material_utility"] = sol.consumer_material_utility;
    emit(out, rj.dump(2) + "\n");

    if (!curve.empty()) {
        epr::tariff::TariffInstance in{sol.p_star, sol.L_star, c, eff_gamma, dist};
        std::vector<double> states(curve_points);
        for (std::size_t i = 0; i < curve_points; ++i)
            states[i] = double(i) / double(curve_points - 1);
        emit(curve, epr::report::header("tariff", seed, bytes) +
                        epr::tariff::demand_curve_csv(in, states));
    }
    return 0;
}

// ---- project / sticky ---------------------------------------------------

epr::apps::ProjectInstance default_project() {
    epr::apps::ProjectInstance in;
    for (int i = 0; i <= 20; ++i) {
        in.a1_grid.push_back(i / 20.0);
        in.a2_grid.push_back(i / 20.0);
    }
    for (int t = 0; t <= 10; ++t) in.theta.push_back(t / 5.0);
    in.theta_star = 3;  // theta* = 0.6
    in.c1 = {epr::apps::CostFn::Kind::Quadratic, 2.0, 0.5};
    in.c2 = {epr::apps::CostFn::Kind::Quadratic, 2.0, 0.5};
    // low shocks likely, so the naif commits effort upfront; the high
    // realization then makes that effort an ex-post mistake
    in.states = {0.1, 0.3, 1.0};
    in.prior = {0.5, 0.3, 0.2};
    return in;
}

int run_project(double gamma, std::uint64_t seed, const std::string& out) {
    if (gamma < 0 || gamma >= 1) throw InputError("gamma outside [0,1)");
    auto in = default_project();
    std::string bytes = "gamma=" + epr::report::fmt(gamma) + "|family=default";
    std::ostringstream csv;
    csv << epr::report::header("project", seed, bytes);
    csv << "state,a1,a2_classical,a2_rationalizing,theta_bar\n";
    for (std::size_t s = 0; s < in.states.size(); ++s) {
        auto res = epr::apps::project_simulate(in, gamma, s);
        csv << epr::report::fmt(in.states[s]) << ','
            << epr::report::fmt(in.a1_grid[res.a1]) << ','
            << join_vals(res.classical, in.a2_grid) << ','
            << join_vals(res.rationalizing, in.a2_grid) << ','
            << epr::report::fmt(res.theta_bar) << '\n';
    }
    emit(out, csv.str());
    return 0;
}

epr::apps::StickyInstance default_sticky() {
    epr::apps::StickyInstance in;
    for (int i = 0; i <= 100; ++i) in.grid.push_back(i / 100.0);
    for (int t = -5; t <= 5; ++t) in.theta.push_back(t / 10.0);
    in.theta_star = 5;  // theta* = 0
    in.states = {0.0, 0.1, 0.2};
    in.phi = [](double a, double th, double s) {
        double d = a - th - s;
        return -d * d;
    };
    return in;
}

int run_sticky(double gamma, double a1, std::uint64_t seed,
               const std::string& out) {
    if (gamma < 0 || gamma >= 1) throw InputError("gamma outside [0,1)");
    auto in = default_sticky();
    if (a1 < in.grid.front() || a1 > in.grid.back())
        throw InputError("--a1 outside the action grid");
    std::size_t a1_idx = 0;
    for (std::size_t i = 1; i < in.grid.size(); ++i)
        if (std::fabs(in.grid[i] - a1) < std::fabs(in.grid[a1_idx] - a1)) a1_idx = i;
    std::string bytes = "gamma=" + epr::report::fmt(gamma) +
                        "|a1=" + epr::report::fmt(in.grid[a1_idx]) +
                        "|family=default";
    std::ostringstream csv;
    csv << epr::report::header("sticky", seed, bytes);
    csv << "state,a1,a2_classical,a2_rationalizing,theta_bar\n";
    for (std::size_t s = 0; s < in.states.size(); ++s) {
        auto res = epr::apps::sticky_choice_simulate(in, gamma, s, a1_idx);
        csv << epr::report::fmt(in.states[s]) << ','
            << epr::report::fmt(in.grid[a1_idx]) << ','
            << join_vals(res.classical, in.grid) << ','
            << join_vals(res.rationalizing, in.grid) << ','
            << epr::report::fmt(res.theta_bar) << '\n';
    }
    emit(out, csv.str());
    return 0;
}

// ---- elicit -------------------------------------------------------------

int run_elicit(const std::string& family, double gamma, std::size_t runs,
               std::uint64_t seed, const std::string& out) {
    if (family != "default") throw InputError("unknown family '" + family + "'");
    if (gamma < 0 || gamma >= 1) throw InputError("gamma outside [0,1)");
    auto f = epr::apps::MLRPFamily::default_bernoulli();
    std::string bytes = "family=default|gamma=" + epr::report::fmt(gamma) +
                        "|runs=" + std::to_string(runs);
    std::ostringstream csv;
    csv << epr::report::header("elicit", seed, bytes);
    csv << "run,a1,signal,posterior_mean,a2,theta_bar,a1_rationalizable\n";
    std::string violation;
    const double half_step = 0.5 / (epr::apps::kReportGridPoints - 1);
    for (std::size_t r = 0; r < runs; ++r) {
        auto run = epr::apps::elicitation_simulate(f, gamma, f.theta_star,
                                                   seed + r);
        csv << r << ',' << epr::report::fmt(run.a1) << ',' << run.signal << ','
            << epr::report::fmt(run.posterior_mean) << ','
            << epr::report::fmt(run.a2) << ',' << epr::report::fmt(run.theta_bar)
            << ',' << (run.a1_rationalizable ? 1 : 0) << '\n';
        if (run.a1_rationalizable) {
            double d1 = run.a1 - run.posterior_mean;
            double d2 = run.a2 - run.posterior_mean;
            bool sandwich = std::fabs(d2) <= std::fabs(d1) + 1e-9 &&
                            (d1 * d2 >= 0.0 || std::fabs(d2) <= half_step + 1e-9);
            if (!sandwich && violation.empty())
                violation = "run " + std::to_string(r) + ": a2=" +
                            epr::report::fmt(run.a2) + " outside [m*, a1]";
        }
    }
    emit(out, csv.str());
    if (!violation.empty()) throw CheckFailure(violation);
    return 0;
}

// ---- golden -------------------------------------------------------------

struct GoldenRow {
    std::string name, expected, actual;
    bool ok;
};

std::string choice_set(const epr::core::DecisionProblem& p,
                       const epr::core::RationaleFamily& fam, double gamma,
                       std::size_t a1, std::size_t s) {
    auto cr = epr::core::second_period_choice(p, fam, gamma, a1, s);
    std::string out;
    for (std::size_t k = 0; k < cr.chosen.size(); ++k) {
        if (k) out += '|';
        out += p.second_menu[a1][cr.chosen[k]];
    }
    return out;
}

int run_golden(const std::string& configs) {
    std::vector<GoldenRow> rows;
    auto add = [&](const std::string& name, const std::string& exp,
                   const std::string& act) {
        rows.push_back({name, exp, act, exp == act});
    };

    // example 1: attend/stay threshold at gamma = 1/6
    {
        auto sc = epr::scenario::load_file(configs + "/example1.json");
        std::size_t buy = sc.problem.a1_index("100");
        std::size_t snow = sc.problem.state_index("snow");
        for (double g : {0.0, 0.1, 0.16})
            add("example1 gamma=" + epr::report::fmt(g), "stay",
                choice_set(sc.problem, sc.family, g, buy, snow));
        for (double g : {0.17, 0.2, 0.5})
            add("example1 gamma=" + epr::report::fmt(g), "0",
                choice_set(sc.problem, sc.family, g, buy, snow));
        // scan: the flip sits between 0.16 and 0.17, bracketing 1/6
        double lo = 0.0, hi = 1.0;
        for (int k = 0; k <= 100; ++k) {
            double g = k / 101.0;
            bool attend =
                choice_set(sc.problem, sc.family, g, buy, snow) == "0";
            if (!attend) lo = std::max(lo, g);
            if (attend) hi = std::min(hi, g);
        }
        bool crosses = lo < 1.0 / 6.0 && hi > 1.0 / 6.0 && hi - lo < 0.02;
        add("example1 threshold scan brackets 1/6", "yes", crosses ? "yes" : "no");
    }
    // example 2: singleton first menu collapses to the classical choice
    {
        auto sc = epr::scenario::load_file(configs + "/example2.json");
        std::size_t snow = sc.problem.state_index("snow");
        std::string classical = choice_set(sc.problem, sc.family, 0.0, 0, snow);
        for (double g : {0.0, 0.25, 0.5, 0.75})
            add("example2 gamma=" + epr::report::fmt(g), classical,
                choice_set(sc.problem, sc.family, g, 0, snow));
    }
    // example 3: money-only rationales cannot reduce regret
    {
        auto sc = epr::scenario::load_file(configs + "/example3.json");
        std::size_t buy = sc.problem.a1_index("buy");
        std::size_t snow = sc.problem.state_index("snow");
        for (double g : {0.0, 0.25, 0.5, 0.75})
            add("example3 gamma=" + epr::report::fmt(g), "expire",
                choice_set(sc.problem, sc.family, g, buy, snow));
    }
    // example 4: unsunk benefit, decline iff gamma > 1/2
    {
        auto sc = epr::scenario::load_file(configs + "/example4.json");
        std::size_t decline = sc.problem.a1_index("0");
        std::size_t sunny = sc.problem.state_index("sunny");
        for (double g : {0.0, 0.3, 0.49})
            add("example4 gamma=" + epr::report::fmt(g), "100",
                choice_set(sc.problem, sc.family, g, decline, sunny));
        for (double g : {0.51, 0.6, 0.9})
            add("example4 gamma=" + epr::report::fmt(g), "stay",
                choice_set(sc.problem, sc.family, g, decline, sunny));
    }
    // example-1 hand values
    {
        auto sc = epr::scenario::load_file(configs + "/example1.json");
        const auto& p = sc.problem;
        std::size_t buy = p.a1_index("100");
        std::size_t snow = p.state_index("snow");
        std::size_t r300 = 15, r180 = 9;  // grid 0..400 step 20
        add("example1 ex-post value theta=300 snow", "0",
            epr::report::fmt(
                epr::core::ex_post_value(p, sc.family.members[r300], snow)));
        add("example1 attend theta=300 gamma=0.2", "-96",
            epr::report::fmt(epr::core::total_utility(
                p, sc.family, 0.2, buy, p.a2_index(buy, "0"), r300, snow)));
        add("example1 stay theta=180 gamma=0.2", "-100",
            epr::report::fmt(epr::core::total_utility(
                p, sc.family, 0.2, buy, p.a2_index(buy, "stay"), r180, snow)));
    }
    // tariff: gamma = 0 collapses to marginal-cost pricing
    {
        auto sol = epr::tariff::optimal_tariff_naif(
            1.0, 0.0, epr::tariff::TasteShockDistribution::uniform01());
        add("tariff uniform gamma=0 p/c", "1",
            std::fabs(sol.p_star - 1.0) < 1e-9 ? "1" : epr::report::fmt(sol.p_star));
        auto ss = epr::tariff::optimal_tariff_sophisticate(
            1.0, 0.0, epr::tariff::TasteShockDistribution::uniform01());
        add("tariff uniform gamma=0 soph p/c", "1",
            std::fabs(ss.p_star - 1.0) < 1e-9 ? "1" : epr::report::fmt(ss.p_star));
    }

    std::cout << epr::report::header("golden", 0, "golden-suite");
    std::cout << "name,expected,actual,verdict\n";
    std::string violation;
    for (const auto& r : rows) {
        std::cout << r.name << ',' << r.expected << ',' << r.actual << ','
                  << (r.ok ? "pass" : "FAIL") << '\n';
        if (!r.ok && violation.empty())
            violation = r.name + ": expected " + r.expected + ", got " + r.actual;
    }
    if (!violation.empty()) throw CheckFailure(violation);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rationalize: two-period rationalization model toolkit"};
    app.require_subcommand(1);

    // solve
    std::string sv_config, sv_out;
    double sv_gamma = 0.0;
    std::uint64_t sv_seed = 0;
    auto* solve = app.add_subcommand("solve", "run a scenario file");
    solve->add_option("--config", sv_config, "scenario JSON file")->required();
    auto* sv_gopt = solve->add_option("--gamma", sv_gamma, "override gamma");
    solve->add_option("--seed", sv_seed, "report seed");
    solve->add_option("--out", sv_out, "output CSV path (default stdout)");

    // propcheck
    std::size_t pc_seeds = 100;
    std::uint64_t pc_seed0 = 0;
    std::string pc_sizes = "3,4,4,2", pc_construction = "sum", pc_out;
    bool pc_grid = false, pc_corrupt = false;
    auto* propcheck =
        app.add_subcommand("propcheck", "comparative-statics property sweep");
    propcheck->add_option("--seeds", pc_seeds, "number of seeded instances");
    propcheck->add_option("--seed", pc_seed0, "base seed");
    propcheck->add_option("--sizes", pc_sizes, "n_a1,n_a2,n_theta,n_states");
    propcheck->add_flag("--grid", pc_grid, "use a 2x3 grid for A2");
    propcheck->add_option("--construction", pc_construction, "sum | separable");
    propcheck->add_flag("--corrupt", pc_corrupt,
                        "inject a non-supermodular instance (self-test)");
    propcheck->add_option("--out", pc_out, "output CSV path");

    // identify
    std::string id_rep, id_out;
    std::size_t id_samples = 500;
    std::uint64_t id_seed = 1;
    auto* identify =
        app.add_subcommand("identify", "recover primitives from a choice oracle");
    identify->add_option("--rep", id_rep, "representation JSON file")->required();
    identify->add_option("--samples", id_samples, "agreement-probe directions");
    identify->add_option("--seed", id_seed, "sampling seed");
    identify->add_option("--out", id_out, "output JSON path");

    // tariff
    double tf_c = 1.0, tf_gamma = 0.0, tf_k = 2.0;
    std::string tf_dist = "uniform01", tf_consumer = "naif", tf_out, tf_curve;
    std::uint64_t tf_seed = 0;
    std::size_t tf_points = 101;
    auto* tariff = app.add_subcommand("tariff", "optimal two-part tariff");
    tariff->add_option("--c", tf_c, "marginal cost");
    tariff->add_option("--gamma", tf_gamma, "regret weight");
    tariff->add_option("--dist", tf_dist, "uniform01 | power");
    tariff->add_option("--power-k", tf_k, "exponent for --dist power");
    tariff->add_option("--consumer", tf_consumer, "naif | soph | classical");
    tariff->add_option("--seed", tf_seed, "report seed");
    tariff->add_option("--out", tf_out, "solution JSON path");
    tariff->add_option("--curve", tf_curve, "demand curve CSV path");
    tariff->add_option("--curve-points", tf_points, "states on the curve");

    // project
    double pj_gamma = 0.5;
    std::uint64_t pj_seed = 0;
    std::string pj_out;
    auto* project = app.add_subcommand("project", "project-persistence simulation");
    project->add_option("--gamma", pj_gamma, "regret weight");
    project->add_option("--seed", pj_seed, "report seed");
    project->add_option("--out", pj_out, "output CSV path");

    // sticky
    double st_gamma = 0.5, st_a1 = 0.8;
    std::uint64_t st_seed = 0;
    std::string st_out;
    auto* sticky = app.add_subcommand("sticky", "same-problem-twice simulation");
    sticky->add_option("--gamma", st_gamma, "regret weight");
    sticky->add_option("--a1", st_a1, "first-round action (snapped to grid)");
    sticky->add_option("--seed", st_seed, "report seed");
    sticky->add_option("--out", st_out, "output CSV path");

    // elicit
    std::string el_family = "default", el_out;
    double el_gamma = 0.5;
    std::size_t el_runs = 1000;
    std::uint64_t el_seed = 7;
    auto* elicit = app.add_subcommand("elicit", "belief-elicitation simulation");
    elicit->add_option("--family", el_family, "prior family (default)");
    elicit->add_option("--gamma", el_gamma, "regret weight");
    elicit->add_option("--runs", el_runs, "number of seeded runs");
    elicit->add_option("--seed", el_seed, "base seed");
    elicit->add_option("--out", el_out, "output CSV path");

    // golden
    std::string gd_configs = "configs";
    auto* golden = app.add_subcommand("golden", "golden-value regression suite");
    golden->add_option("--configs", gd_configs, "directory with scenario files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*solve)
            return run_solve(sv_config, sv_gamma, sv_gopt->count() > 0, sv_seed,
                             sv_out);
        if (*propcheck)
            return run_propcheck(pc_seeds, pc_seed0, pc_sizes, pc_grid,
                                 pc_construction, pc_corrupt, pc_out);
        if (*identify) return run_identify(id_rep, id_samples, id_seed, id_out);
        if (*tariff)
            return run_tariff(tf_c, tf_gamma, tf_dist, tf_k, tf_consumer, tf_seed,
                              tf_out, tf_curve, tf_points);
        if (*project) return run_project(pj_gamma, pj_seed, pj_out);
        if (*sticky) return run_sticky(st_gamma, st_a1, st_seed, st_out);
        if (*elicit)
            return run_elicit(el_family, el_gamma, el_runs, el_seed, el_out);
        if (*golden) return run_golden(gd_configs);
    } catch (const CheckFailure& e) {
        std::cerr << ordered_json{{"violation", e.what()}}.dump() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const epr::scenario::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // library-internal assertion tripped
        std::cerr << ordered_json{{"violation", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}
