import json

import pytest

import rationalize as rz

TICKET = {
    "scenario_id": "ticket-upfront",
    "states": ["snow", "good"],
    "prior": [0.3, 0.7],
    "first_menu": ["100", "0"],
    "second_menu": {"100": ["0", "stay"], "0": ["stay"]},
    "rationales": {
        "kind": "parametric",
        "expression": "ticket_example",
        "theta": {"min": 0, "max": 400, "points": 21},
        "theta_star": 180,
    },
    "gamma": 0.2,
    "policy": "naif",
}


def test_solve_threshold():
    csv = rz.solve(json.dumps(TICKET))
    assert csv.splitlines()[0].startswith("scenario_id,state,a1,a2_set")
    assert "ticket-upfront,snow,100,0,300,400,-96,-120,0" in csv
    low = rz.solve(json.dumps(TICKET), gamma=0.1)
    assert "ticket-upfront,snow,100,stay," in low
    assert rz.solve(json.dumps(TICKET)) == csv  # deterministic


def test_solve_rejects_malformed():
    with pytest.raises(Exception):
        rz.solve("{not json")
    with pytest.raises(Exception):
        rz.solve(json.dumps({**TICKET, "bogus": 1}))


def test_demand():
    assert rz.classical_demand(0.5, 2.0) == pytest.approx(0.0625)
    q = rz.rationalizing_demand(0.3, 2.0, 0.125, 0.5)
    assert q == pytest.approx(0.4**2 / 4.0)
    assert q > rz.classical_demand(0.3, 2.0)


def test_optimal_tariff():
    sol = rz.optimal_tariff(1.0, 0.5, consumer="naif")
    assert sol["p_star"] == pytest.approx(1.0673110285892724, abs=1e-12)
    sol0 = rz.optimal_tariff(1.0, 0.0, consumer="soph")
    assert sol0["p_star"] == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(Exception):
        rz.optimal_tariff(1.0, 0.5, consumer="martian")


def test_demand_curve():
    csv = rz.demand_curve(2.0, 0.125, 1.0, 0.5, [0.0, 0.25, 0.5, 1.0])
    lines = csv.strip().splitlines()
    assert lines[0] == "s,q_classical,q_rationalizing,theta_adopted"
    assert len(lines) == 5


def test_elicit():
    run = rz.elicit(0.5, seed=7)
    assert run["a1"] == pytest.approx(0.5)
    assert run["posterior_mean"] in (pytest.approx(0.3), pytest.approx(0.7))
    assert rz.elicit(0.5, seed=7) == run


def test_propcheck():
    assert rz.propcheck(1) == "holds"
    assert rz.propcheck(2, construction="separable") == "holds"
