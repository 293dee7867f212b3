import math

import pytest

import rsc


def shell_example():
    return rsc.Complex(4, 2, [[1, 2], [2, 3], [3, 4], [1, 3, 4]])


def test_complex_basics():
    c = rsc.Complex(4, 2, [[1, 2, 3]])
    assert c.n == 4 and c.d == 2
    assert c.count(1) == 3
    assert sorted(c.facets()) == [[1, 2, 3], [4]]
    assert rsc.Complex.from_json(c.to_json()) == c


def test_cohomology_rings():
    path = rsc.Complex(4, 2, [[1, 2], [2, 3], [3, 4]])
    for ring in ("f2", "fp:3", "z"):
        assert rsc.is_cohom_connected(path, 1, ring)
    g = shell_example()
    assert rsc.cohomology(g, 1, "f2")["free_rank"] == 1
    g2 = g.add_simplex([1, 2, 3])
    assert rsc.cohomology(g2, 1, "z")["free_rank"] == 0


def test_obstruction_copies():
    g = shell_example()
    copies = rsc.find_Mhat_copies(g, 1, 2)
    assert {"K": [1, 3, 4], "C": [3], "w": 1, "a": 2} in [
        {key: m[key] for key in ("K", "C", "w", "a")} for m in copies
    ]
    g2 = g.add_simplex([1, 2, 3])
    assert rsc.find_Mhat_copies(g2, 1, 1) == [] and rsc.find_Mhat_copies(g2, 1, 2) == []


def test_criticality_and_expectation():
    dp = rsc.Direction.default_critical(2, 1)
    rep = rsc.criticality(dp, 1e4)
    assert rep["is_critical"] and rep["k_bar"] == 2
    window = rsc.critical_window_expectation(dp, 1e4, 0.5)
    assert math.isclose(sum(window), rsc.E_constant(dp, 1e4, 0.5), rel_tol=1e-12)

    # One triangle on 3 vertices with p2 = 0.5: X_{1,2} counts the 3 boundary-free centres.
    assert math.isclose(rsc.exact_expected_Xjk(3, [0, 0, 0.5], 1, 2), 1.5, rel_tol=1e-12)


def test_sampling_is_deterministic():
    dp = rsc.Direction.default_critical(2, 1)
    a = rsc.sample(20, dp, 7, 1.0)
    b = rsc.sample(20, dp, 7, 1.0)
    assert a == b
    assert rsc.sample(6, dp, 7, 0.0).facets() == [[v] for v in range(1, 7)]
    h = rsc.hitting_time(30, dp, 3, 2.0)
    assert h["events"] > 0 and "tau_star" in h


def test_errors_are_translated():
    with pytest.raises(rsc.RscError):
        rsc.Direction.parse("not a config")
    with pytest.raises(ValueError):
        rsc.cohomology(shell_example(), 1, "fp:4")
