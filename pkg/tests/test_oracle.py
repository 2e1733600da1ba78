import itertools

import numpy as np
import pytest

from spinkick import (
    ChainConfig,
    CurveKind,
    OracleCurve,
    ProtocolUndefinedError,
    PulseSchedule,
    build_final_state,
    build_paper_schedule,
    c_edge,
    c_end_pair,
    c_ends,
    c_middle,
    c_post_protocol_middle,
    c_three_spin_ends,
    concurrence,
    fidelity_pure,
    purity,
    reduce_to_pair,
    reduce_to_spin,
    run_schedule,
    state_at,
)

PEAK = (np.sqrt(5) - 1) / 4


def ternary_max(f, lo, hi, iters=200):
    for _ in range(iters):
        a, b = lo + (hi - lo) / 3, hi - (hi - lo) / 3
        if f(a) < f(b):
            lo = a
        else:
            hi = b
    return (lo + hi) / 2


def test_middle_curve_maximum():
    # f = sin t/2 - (1 - cos t)/4 on (0, pi) is concave; f' = 0 at tan t = 2
    t_star = ternary_max(c_middle, 0.0, np.pi)
    assert t_star == pytest.approx(np.arctan(2), abs=1e-7)
    assert c_middle(t_star) == pytest.approx(PEAK, abs=1e-12)
    assert c_middle(np.arctan(2)) == pytest.approx(PEAK, abs=1e-15)
    assert PEAK == pytest.approx(0.30902, abs=1e-5)
    grid = np.linspace(0, 4 * np.pi, 100_001)
    assert c_middle(grid).max() <= PEAK + 1e-15


def test_middle_curve_values():
    assert c_middle(0.0) == 0.0
    assert c_middle(np.pi) == pytest.approx(0.0, abs=1e-15)
    assert isinstance(c_middle(1.0), float)
    assert c_middle(np.array([0.0, 1.0])).shape == (2,)


def test_edge_curve_values():
    assert c_edge(np.pi / 2) == pytest.approx(0.5, abs=1e-15)
    assert c_edge(3 * np.pi / 2) == pytest.approx(0.5, abs=1e-15)
    assert c_edge(0.0) == 0.0


def test_three_spin_curve_values():
    assert c_three_spin_ends(2 * np.pi) == pytest.approx(1.0, abs=1e-15)
    assert c_three_spin_ends(np.pi / 2) == 0.0
    assert c_three_spin_ends(3 * np.pi) == pytest.approx(0.0, abs=1e-15)
    assert c_three_spin_ends(np.pi) == pytest.approx(0.0, abs=1e-15)


def test_ends_curve_values():
    assert c_ends(3 * np.pi, 4) == pytest.approx(1.0, abs=1e-15)
    assert c_ends(6 * np.pi, 7) == pytest.approx(1.0, abs=1e-15)
    assert c_ends(3.5 * np.pi, 6) == 0.0
    with pytest.raises(ProtocolUndefinedError):
        c_ends(1.0, 3)
    assert c_end_pair(2 * np.pi, 3) == pytest.approx(1.0)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9])
def test_ends_curve_peaks(n):
    for k in range(3):
        assert c_ends((n + 2 * k - 1) * np.pi, n) == pytest.approx(1.0, abs=1e-14)


def test_post_protocol_middle_equals_middle():
    grid = np.linspace(0, 20, 1000)
    np.testing.assert_allclose(c_post_protocol_middle(grid), c_middle(grid), atol=1e-15)
    for k in range(4):
        assert c_post_protocol_middle(np.arctan(2) + 2 * k * np.pi) == pytest.approx(PEAK, abs=1e-14)
    assert c_post_protocol_middle(2 * np.pi) == pytest.approx(0.0, abs=1e-15)


def test_oracle_curve_kinds():
    t = np.linspace(0, 10, 7)
    np.testing.assert_array_equal(OracleCurve("middle_pair")(t), c_middle(t))
    np.testing.assert_array_equal(OracleCurve(CurveKind.ENDS_EVEN, 6)(t), c_ends(t, 6))
    np.testing.assert_array_equal(OracleCurve("ends_odd", 3)(t), c_three_spin_ends(t))
    with pytest.raises(ValueError):
        OracleCurve("ends_even", 5)
    with pytest.raises(ValueError):
        OracleCurve("ends_odd", 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
@pytest.mark.parametrize("basis", ["x", "y"])
def test_final_state_structure(n, basis):
    psi = build_final_state(n, basis)
    assert psi.norm() == pytest.approx(1.0, abs=1e-14)
    ends = reduce_to_pair(psi, 1, n)
    assert concurrence(ends) == pytest.approx(1.0, abs=1e-12)
    assert purity(ends) == pytest.approx(1.0, abs=1e-12)
    for j in range(2, n):
        rho = reduce_to_spin(psi, j)
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-12)


def test_final_state_three_spin_middle_factor():
    psi = build_final_state(3).tensor()
    # middle factor (|0> + |1>)/sqrt(2), end pair (|00> + |11> + i|01> + i|10>)/2
    end = np.array([[1, 1j], [1j, 1]]) / 2
    expected = np.einsum("ac,b->abc", end, np.array([1, 1]) / np.sqrt(2))
    np.testing.assert_allclose(psi, expected, atol=1e-15)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_final_state_forms_differ_by_local_phase(n):
    x, y = build_final_state(n, "x"), build_final_state(n, "y")
    np.testing.assert_allclose(reduce_to_pair(x, 1, n).entries, reduce_to_pair(y, 1, n).entries, atol=1e-15)
    assert fidelity_pure(x, y) == pytest.approx(2.0 ** -(n - 2), abs=1e-14)


def test_final_state_errors():
    with pytest.raises(ValueError):
        build_final_state(2)
    with pytest.raises(ValueError):
        build_final_state(4, "z")


# simulator against the closed forms


def test_free_evolution_matches_closed_forms():
    n = 6
    times = np.linspace(0, 4 * np.pi, 200)
    recs = run_schedule(ChainConfig(n), PulseSchedule(), times, pairs="all", observables={"concurrence"})
    c = {p: np.array([r.pair_concurrences[p] for r in recs]) for p in recs[0].pair_concurrences}
    for j in (2, 3, 4):
        assert np.max(np.abs(c[(j, j + 1)] - c_middle(times))) < 1e-10
    for p in [(1, 2), (5, 6)]:
        assert np.max(np.abs(c[p] - c_edge(times))) < 1e-10
    for (i, j), v in c.items():
        if j - i >= 2:
            assert np.max(v) < 1e-9


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_kicked_ends_match_closed_forms(n):
    times = np.linspace(0, (n + 2) * np.pi, 64 * (n + 2) + 1)
    recs = run_schedule(ChainConfig(n), build_paper_schedule(n), times, observables={"concurrence"})
    sim = np.array([r.pair_concurrences[(1, n)] for r in recs])
    assert np.max(np.abs(sim - c_end_pair(times, n))) < 1e-9


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_simulated_final_state_is_y_form(n):
    psi = state_at(ChainConfig(n), build_paper_schedule(n), (n - 1) * np.pi)
    assert fidelity_pure(psi, build_final_state(n, "y")) >= 1 - 1e-12


@pytest.mark.parametrize("n", [5, 7])
def test_odd_chains_recover_middle_curve(n):
    times = np.linspace((n - 2) * np.pi, (n + 2) * np.pi, 257)[1:]
    recs = run_schedule(ChainConfig(n), build_paper_schedule(n), times,
                        pairs=[(j, j + 1) for j in range(2, n - 1)], observables={"concurrence"})
    for r in recs:
        for v in r.pair_concurrences.values():
            assert v == pytest.approx(c_post_protocol_middle(r.time), abs=1e-9)


@pytest.mark.parametrize("n", [4, 6])
def test_even_chains_recover_middle_curve_shifted(n):
    times = np.linspace((n - 2) * np.pi, (n + 2) * np.pi, 257)[1:]
    recs = run_schedule(ChainConfig(n), build_paper_schedule(n), times,
                        pairs=[(j, j + 1) for j in range(2, n - 1)], observables={"concurrence"})
    for r in recs:
        for v in r.pair_concurrences.values():
            assert v == pytest.approx(c_middle(r.time + np.pi), abs=1e-9)
