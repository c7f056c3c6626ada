// pybind11 surface over the core library: scenario solving, tariff closed
// forms, demand curves, elicitation runs, and the comparative-statics checker.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "epr/applications.hpp"
#include "epr/core_model.hpp"
#include "epr/lattice.hpp"
#include "epr/scenario.hpp"
#include "epr/tariff.hpp"

namespace py = pybind11;

namespace {

epr::tariff::TasteShockDistribution make_dist(const std::string& name, double k) {
    if (name == "uniform01") return epr::tariff::TasteShockDistribution::uniform01();
    if (name == "power") return epr::tariff::TasteShockDistribution::power(k);
    throw std::invalid_argument("unknown distribution '" + name + "'");
}

py::dict tariff_dict(const epr::tariff::TariffSolution& sol) {
    py::dict d;
    d["p_star"] = sol.p_star;
    d["L_star"] = sol.L_star;
    d["break_even"] = sol.break_even;
    d["lambda"] = sol.lambda;
    d["expected_profit"] = sol.expected_profit;
    d["consumer_material_utility"] = sol.consumer_material_utility;
    return d;
}

}  // namespace

PYBIND11_MODULE(_rationalize, m) {
    m.doc() = "two-period rationalization model: core operations";

    m.def(
        "solve",
        [](const std::string& config_json, py::object gamma) {
            auto sc = epr::scenario::load(config_json);
            if (!gamma.is_none()) sc.config.gamma = gamma.cast<double>();
            return epr::scenario::run_csv(sc);
        },
        py::arg("config_json"), py::arg("gamma") = py::none(),
        "run a scenario from its JSON text; returns the report CSV");

    m.def("classical_demand", &epr::tariff::classical_demand, py::arg("s"),
          py::arg("p"), py::arg("L") = 0.0);
    m.def("rationalizing_demand", &epr::tariff::rationalizing_demand,
          py::arg("s"), py::arg("p"), py::arg("L"), py::arg("gamma"));

    m.def(
        "optimal_tariff",
        [](double c, double gamma, const std::string& consumer,
           const std::string& dist, double power_k) {
            auto d = make_dist(dist, power_k);
            if (consumer == "naif")
                return tariff_dict(epr::tariff::optimal_tariff_naif(c, gamma, d));
            if (consumer == "soph")
                return tariff_dict(
                    epr::tariff::optimal_tariff_sophisticate(c, gamma, d));
            if (consumer == "classical")
                return tariff_dict(epr::tariff::optimal_tariff_naif(c, 0.0, d));
            throw std::invalid_argument("unknown consumer '" + consumer + "'");
        },
        py::arg("c"), py::arg("gamma"), py::arg("consumer") = "naif",
        py::arg("dist") = "uniform01", py::arg("power_k") = 2.0);

    m.def(
        "demand_curve",
        [](double p, double L, double c, double gamma,
           const std::vector<double>& states, const std::string& dist,
           double power_k) {
            epr::tariff::TariffInstance in{p, L, c, gamma,
                                           make_dist(dist, power_k)};
            return epr::tariff::demand_curve_csv(in, states);
        },
        py::arg("p"), py::arg("L"), py::arg("c"), py::arg("gamma"),
        py::arg("states"), py::arg("dist") = "uniform01",
        py::arg("power_k") = 2.0);

    m.def(
        "elicit",
        [](double gamma, std::uint64_t seed) {
            auto f = epr::apps::MLRPFamily::default_bernoulli();
            auto run =
                epr::apps::elicitation_simulate(f, gamma, f.theta_star, seed);
            py::dict d;
            d["a1"] = run.a1;
            d["signal"] = run.signal;
            d["posterior_mean"] = run.posterior_mean;
            d["a2"] = run.a2;
            d["theta_bar"] = run.theta_bar;
            d["a1_rationalizable"] = run.a1_rationalizable;
            return d;
        },
        py::arg("gamma"), py::arg("seed") = 7,
        "one seeded belief-elicitation run on the default Bernoulli family");

    m.def(
        "propcheck",
        [](std::uint64_t seed, const std::string& construction) {
            using namespace epr::lattice;
            SizeParams sz;
            auto c = construction == "separable"
                         ? Construction::Separable
                         : Construction::SumOfMonotoneProducts;
            auto in = random_instance(seed, sz, c);
            if (supermodularity_violation(in) ||
                increasing_differences_violation(in))
                return std::string("violated");
            for (std::size_t s = 0; s < in.n_states; ++s)
                for (std::size_t a1 = 0; a1 < in.a1.n; ++a1) {
                    auto rep = check_theorem2(in, s, a1);
                    if (rep.verdict == Verdict::Violated || !rep.lemma5_ok)
                        return std::string("violated");
                }
            return std::string("holds");
        },
        py::arg("seed"), py::arg("construction") = "sum",
        "verdict for one seeded comparative-statics instance");

    m.attr("__version__") = "0.1.0";
}
