import math

import pytest

import nlbox


def test_family_values():
    assert nlbox.nl(nlbox.p_eps(0.1)) == pytest.approx(2.2, abs=1e-12)
    assert nlbox.nl(nlbox.p_eps_delta(0.01, 0.002)) == pytest.approx(2.008, abs=1e-12)
    assert nlbox.correlators(nlbox.pr()).as_tuple() == (1.0, 1.0, 1.0, -1.0)
    assert nlbox.validate(nlbox.noise()) == []


def test_distillation():
    out = nlbox.compose_xor(nlbox.p_eps(0.1), 3)
    assert nlbox.nl(out) == pytest.approx(3 - 0.8**3, abs=1e-9)
    assert nlbox.nl_closed_eps_delta(0.01, 0.002, 2) == pytest.approx(2.015648, abs=1e-12)
    assert nlbox.is_distillable_at(0.01, 0.002, 2)
    assert nlbox.is_quantum_box(nlbox.p_eps_delta(0.01, 0.002))["quantum"]


def test_optimizer_and_search():
    opt = nlbox.optimize_quantum_distillation(n_max=4, coarse_step=2e-3)
    assert opt["n"] == 2
    assert opt["nl_out"] == pytest.approx(1 + math.sqrt(2), abs=1e-4)
    result = nlbox.search_2copy(nlbox.isotropic(0.6))
    assert result["nl_out"] == pytest.approx(2.4, abs=1e-9)


def test_game_and_depolarize():
    assert nlbox.classical_and_optimum() == 0.75
    assert nlbox.and_game_success(nlbox.p_eps(0.3), 4) > 0.776
    iso = nlbox.depolarize(nlbox.p_eps(0.1))
    assert nlbox.correlators(iso).x11 == pytest.approx(-0.55, abs=1e-9)


def test_errors_and_json():
    with pytest.raises(ValueError):
        nlbox.p_eps(0.0)
    with pytest.raises(nlbox.ParseError):
        nlbox.box_from_json("{")
    box = nlbox.p_eps_delta(0.3, 0.1)
    assert nlbox.box_from_json(nlbox.box_to_json(box)) == box
    assert nlbox.Box(box.matrix) == box
