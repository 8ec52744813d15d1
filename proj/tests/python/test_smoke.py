import json
import math

import pytest

import caplab


def test_ball_capacity_and_volume():
    ball = caplab.ball(2, 1.5)
    assert ball.dim == 4
    assert caplab.ehz_closed_form(ball) == pytest.approx(1.5)
    assert ball.closed_form_volume == pytest.approx(1.5**2 / 2)


def test_p_product_closed_forms():
    assert caplab.ehz_p_product([1.0, 2.0], math.inf) == pytest.approx(1.0)
    assert caplab.ehz_p_product([1.0, 2.0], 1.0) == pytest.approx(2.0 / 3.0)
    with pytest.raises(caplab.UndefinedGluing):
        caplab.glue_period(1.0, 1.0, 2.0)


def test_solver_matches_closed_form():
    body = caplab.ellipsoid([1.0, 2.0])
    result = caplab.ehz_capacity(body, restarts=3, seed=1)
    assert result.capacity == pytest.approx(1.0, rel=1e-6)


def test_gh_capacities_of_an_ellipsoid():
    profile = caplab.simplex_profile([1.0, 2.0])
    assert caplab.gh_capacity_sequence(profile, 4) == pytest.approx([1.0, 2.0, 2.0, 3.0])


def test_monte_carlo_volume():
    body = caplab.polydisc([1.0, 2.0])
    est = caplab.volume_monte_carlo(body, 50000, seed=2)
    assert abs(est.mean - 2.0) <= 4 * est.standard_error


def test_sequence_rules():
    nat = [float(i) for i in range(1, 11)]
    assert caplab.merged_sequence(nat, nat, 4) == 2.0
    assert caplab.capacity_product_rule(nat, nat, 4.0, 3) == pytest.approx(math.sqrt(5.0))


def test_spec_errors_map_to_exceptions():
    body, profile = caplab.load_spec('{"type":"ball","dim":2,"capacity":1}')
    assert body.dim == 2 and profile.n == 1
    with pytest.raises(caplab.InvalidSpec):
        caplab.load_spec('{"type":"ellipsoid","a":[1,-2]}')
    with pytest.raises(caplab.InvariantViolation):
        caplab.load_spec('{"type":"ball","dim":2,"capacity":1e-320}')


def test_verify_round_trip():
    report = caplab.verify(["lemma_calculus"], seed=0)
    assert report.passed
    rows = json.loads(report.format("json"))
    assert rows[0]["check"] == "lemma_calculus"
    again = caplab.parse_report(report.format("json"))
    assert again.format("json") == report.format("json")
    assert "lemma_calculus" in caplab.check_names()
