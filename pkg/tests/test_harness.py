import numpy as np
import pytest

from bgph.harness import CHECKS, RandomModel, run_check, run_property_suite


def test_model_is_seeded():
    m = RandomModel(seed=7)
    assert np.array_equal(m.points(m.rng(3)), m.points(m.rng(3)))
    assert not np.array_equal(m.points(m.rng(3), 5), m.points(m.rng(4), 5))
    with pytest.raises(ValueError):
        RandomModel(n_min=5, n_max=3)


def test_perturbation_radius():
    m = RandomModel(seed=2, eps=0.1)
    rng = m.rng(0)
    pts = m.points(rng, 6)
    moved = m.perturb(pts, rng)
    assert np.all(np.linalg.norm(moved - pts, axis=1) <= 0.1 + 1e-15)


def test_zero_perturbation_is_tight():
    m = RandomModel(seed=5, eps=0.0)
    for t in range(3):
        assert run_check("stability_perturbed", m, t).ok


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_each_check_passes(name):
    r = run_property_suite(RandomModel(seed=1), trials=3, checks=[name])
    assert r.ok, r.lines()


def test_report_and_threads():
    model = RandomModel(seed=4)
    a = run_property_suite(model, 2, checks=["surgery", "doubling_hh"])
    b = run_property_suite(model, 2, checks=["surgery", "doubling_hh"], threads=3)
    assert a.results == b.results
    assert a.summary() == {"surgery": (2, 2), "doubling_hh": (2, 2)}
    with pytest.raises(ValueError):
        run_property_suite(model, 1, checks=["nope"])


def test_failures_carry_reproduction_data(monkeypatch):
    import bgph.harness as h
    monkeypatch.setitem(h.CHECKS, "broken", lambda model, rng, p: (False, "points=[1]"))
    r = run_property_suite(RandomModel(seed=9), 1, checks=["broken"])
    assert not r.ok and "seed=9 trial=0" in r.lines()[-1]
