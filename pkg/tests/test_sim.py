"""Weight-stratified Monte Carlo: determinism, recombination, cross-checks."""

import math
import random
from fractions import Fraction
from math import comb

import pytest

from qdsbch.qds import bch_sm, identity_sm, qds_assemble, repetition_sm
from qdsbch.sim import (
    CellStats,
    ErrorModel,
    SimGrid,
    binomial_weight_probability,
    build_grid,
    combine_grid,
    combine_grid_bounds,
    default_code_meta,
    direct_monte_carlo,
    estimate_cell,
    required_cells,
    stabilizer_meas_error_prob,
    sweep,
    wilson_interval,
)
from qdsbch.stabilizer import lookup_decoder_build, steane_code


def _steane_qds(sm=None):
    base = steane_code()
    q = qds_assemble(base, sm if sm is not None else identity_sm(6))
    dec = lookup_decoder_build(base, max_weight=1)
    return q, dec


# --- elementary probabilities --------------------------------------------------


def test_meas_error_prob_worked_value():
    assert stabilizer_meas_error_prob(3, 0.1) == pytest.approx(0.244, rel=1e-12)
    assert stabilizer_meas_error_prob(1, 0.3) == pytest.approx(0.3, rel=1e-12)
    with pytest.raises(ValueError):
        stabilizer_meas_error_prob(0, 0.3)


def test_meas_error_prob_matches_odd_binomial_sum():
    """(1 - (1-2p)^w)/2 is exactly the odd-flip-count probability."""
    rng = random.Random(101)
    for _ in range(60):
        w = rng.randrange(1, 65)
        p = Fraction(rng.randrange(1, 1000), 2000)
        exact = sum(
            comb(w, j) * p**j * (1 - p) ** (w - j) for j in range(1, w + 1, 2)
        )
        got = stabilizer_meas_error_prob(w, float(p))
        assert got == pytest.approx(float(exact), rel=1e-12)


def test_binomial_weight_probability():
    for n, p in [(7, 0.1), (21, 0.03)]:
        total = sum(binomial_weight_probability(w, p, n) for w in range(n + 1))
        assert total == pytest.approx(1.0, rel=1e-12)
        assert binomial_weight_probability(2, p, n) == pytest.approx(
            comb(n, 2) * p**2 * (1 - p) ** (n - 2), rel=1e-12
        )
    assert binomial_weight_probability(0, 0.0, 5) == 1.0
    assert binomial_weight_probability(1, 0.0, 5) == 0.0


def test_wilson_interval():
    lo, hi = wilson_interval(10, 100)
    assert 0.0 < lo < 0.1 < hi < 0.2
    lo0, hi0 = wilson_interval(0, 100)
    assert lo0 == 0.0
    assert 0.0 < hi0 < 0.05
    loN, hiN = wilson_interval(100, 100)
    assert 0.95 < loN < 1.0
    assert hiN == pytest.approx(1.0)
    with pytest.raises(ValueError):
        wilson_interval(5, 0)
    with pytest.raises(ValueError):
        wilson_interval(7, 5)


def test_error_model_validation():
    ErrorModel(0.01, 0.02)
    with pytest.raises(ValueError):
        ErrorModel(-0.1, 0.0)
    with pytest.raises(ValueError):
        ErrorModel(0.0, 1.5)


# --- cell estimation ------------------------------------------------------------


def test_estimate_cell_is_deterministic():
    q, dec = _steane_qds(bch_sm(6, 3))
    a = estimate_cell(q, dec, 2, 1, trials=500, seed=42)
    b = estimate_cell(q, dec, 2, 1, trials=500, seed=42)
    assert a == b
    c = estimate_cell(q, dec, 2, 1, trials=500, seed=43)
    # different seed gives an independent stream (values may coincide but
    # the draw sequence must not be forced to)
    assert 0.0 <= c <= 1.0


def test_estimate_cell_certified_region_is_zero():
    q, dec = _steane_qds(bch_sm(6, 3))
    for w_q in (0, 1):
        for w_s in (0, 1, 2, 3):
            assert estimate_cell(q, dec, w_q, w_s, trials=300, seed=7) == 0.0


def test_estimate_cell_all_flips_is_deterministic_failure_fraction():
    q, dec = _steane_qds()
    frac = estimate_cell(q, dec, 0, q.sm.n_s, trials=100, seed=3)
    assert frac in (0.0, 1.0)


def test_estimate_cell_validates_inputs():
    q, dec = _steane_qds()
    with pytest.raises(ValueError):
        estimate_cell(q, dec, 8, 0, trials=10, seed=1)
    with pytest.raises(ValueError):
        estimate_cell(q, dec, 0, 7, trials=10, seed=1)
    with pytest.raises(ValueError):
        estimate_cell(q, dec, 0, 0, trials=0, seed=1)


# --- grids ----------------------------------------------------------------------


def test_grid_json_roundtrip_is_byte_identical():
    q, dec = _steane_qds()
    grid = build_grid(q, dec, seed=5, boundary_trials=50, bulk_trials=20,
                      cells=[(0, 0), (1, 1), (2, 3)])
    text = grid.to_json_text()
    again = SimGrid.from_json_text(text)
    assert again == grid
    assert again.to_json_text() == text


def test_grid_add_accumulates():
    grid = SimGrid({"n": 7, "n_s": 6}, seed=1)
    grid.add(0, 0, 100, 3)
    grid.add(0, 0, 50, 2)
    assert grid.cells[(0, 0)] == CellStats(150, 5)


def test_grid_merge_rules():
    meta = {"n": 7, "n_s": 6}
    a = SimGrid(meta, seed=1)
    a.add(0, 0, 10, 0)
    b = SimGrid(meta, seed=1)
    b.add(1, 0, 10, 1)
    merged = a.merge(b)
    assert set(merged.cells) == {(0, 0), (1, 0)}

    overlapping = SimGrid(meta, seed=1)
    overlapping.add(0, 0, 5, 0)
    with pytest.raises(ValueError):
        a.merge(overlapping)

    other_seed = SimGrid(meta, seed=2)
    other_seed.add(2, 0, 5, 0)
    with pytest.raises(ValueError):
        a.merge(other_seed)

    other_meta = SimGrid({"n": 9, "n_s": 6}, seed=1)
    other_meta.add(2, 0, 5, 0)
    with pytest.raises(ValueError):
        a.merge(other_meta)


def test_build_grid_repeats_byte_identical():
    q, dec = _steane_qds(repetition_sm(6, 3))
    cells = [(wq, ws) for wq in range(3) for ws in range(3)]
    g1 = build_grid(q, dec, seed=11, boundary_trials=60, bulk_trials=25, cells=cells)
    g2 = build_grid(q, dec, seed=11, boundary_trials=60, bulk_trials=25, cells=cells)
    assert g1.to_json_text() == g2.to_json_text()


def test_build_grid_boundary_gets_more_trials():
    q, dec = _steane_qds()
    grid = build_grid(q, dec, seed=1, boundary_trials=40, bulk_trials=10,
                      cells=[(0, 0), (5, 5)])
    # identity SM: t_s = 0, t_data = 1, so (0,0) is boundary and (5,5) bulk
    assert grid.cells[(0, 0)].trials == 40
    assert grid.cells[(5, 5)].trials == 10


def test_default_code_meta_contents():
    q, dec = _steane_qds(bch_sm(6, 3))
    meta = default_code_meta(q, dec)
    assert meta["n"] == 7
    assert meta["n_s"] == 21
    assert meta["ell"] == 6
    assert meta["t_s"] == 3
    assert meta["t_data"] == 1
    assert meta["sm"] == "bch"


# --- recombination ---------------------------------------------------------------


def test_combine_with_zero_truncation_is_the_full_sum():
    q, dec = _steane_qds()
    grid = build_grid(q, dec, seed=9, boundary_trials=200, bulk_trials=50)
    p_q, p_s = 0.03, 0.02
    want = 0.0
    for (wq, ws), st in grid.cells.items():
        pref = binomial_weight_probability(wq, p_q, 7) * binomial_weight_probability(
            ws, p_s, 6
        )
        want += pref * st.failures / st.trials
    res = combine_grid(grid, p_q, p_s, truncation=0.0)
    assert res.p_err == pytest.approx(want, rel=1e-12)
    assert res.truncation_mass == 0.0
    assert res.dropped_cells == 0


def test_combine_truncation_accounting():
    q, dec = _steane_qds()
    grid = build_grid(q, dec, seed=9, boundary_trials=200, bulk_trials=50)
    p_q, p_s = 0.03, 0.02
    full = combine_grid(grid, p_q, p_s, truncation=0.0)
    cut = combine_grid(grid, p_q, p_s, truncation=1e-6)
    assert cut.dropped_cells > 0
    assert cut.truncation_mass == pytest.approx(1e-6 * cut.dropped_cells)
    assert cut.p_err <= full.p_err
    assert full.p_err - cut.p_err <= cut.truncation_mass + 1e-15


def test_combine_missing_cell_raises():
    q, dec = _steane_qds()
    grid = build_grid(q, dec, seed=2, boundary_trials=50, bulk_trials=20,
                      cells=[(wq, ws) for wq in range(3) for ws in range(7)])
    # covered at a coarse truncation
    combine_grid(grid, 0.01, 0.01, truncation=1e-4)
    with pytest.raises(ValueError):
        combine_grid(grid, 0.01, 0.01, truncation=0.0)


def test_combine_validates_probabilities():
    q, dec = _steane_qds()
    grid = build_grid(q, dec, seed=2, boundary_trials=20, bulk_trials=10,
                      cells=[(0, 0)])
    with pytest.raises(ValueError):
        combine_grid(grid, -0.1, 0.1, truncation=1e-2)
    with pytest.raises(ValueError):
        combine_grid(grid, 0.1, 1.1, truncation=1e-2)


def test_combine_requires_domain_metadata():
    grid = SimGrid({"note": "missing n"}, seed=1)
    with pytest.raises(ValueError):
        combine_grid(grid, 0.1, 0.1)


def test_combine_bounds_bracket_the_estimate():
    q, dec = _steane_qds(bch_sm(6, 3))
    cells = [(wq, ws) for wq in range(4) for ws in range(6)]
    grid = build_grid(q, dec, seed=21, boundary_trials=400, bulk_trials=100, cells=cells)
    p_q, p_s = 0.01, 0.01
    res = combine_grid(grid, p_q, p_s, truncation=1e-6)
    lo, hi = combine_grid_bounds(grid, p_q, p_s, truncation=1e-6)
    assert lo <= res.p_err <= hi
    # certified cells contribute no width: with p small the interval is tight
    assert hi - lo < 0.05


def test_required_cells_small_case():
    cells = required_cells(2, 1, [(0.1, 0.1)], truncation=0.05)
    # A_wq(0.1, 2) = (0.81, 0.18, 0.01); A_ws(0.1, 1) = (0.9, 0.1)
    want = {
        (wq, ws)
        for wq in range(3)
        for ws in range(2)
        if binomial_weight_probability(wq, 0.1, 2)
        * binomial_weight_probability(ws, 0.1, 1)
        >= 0.05
    }
    assert cells == want
    assert (0, 0) in cells
    assert (2, 0) not in cells  # 0.01 * 0.9 < 0.05


def test_required_cells_union_over_points():
    one = required_cells(7, 6, [(0.0, 1e-3)], truncation=1e-9)
    two = required_cells(7, 6, [(0.0, 1e-3), (0.05, 0.05)], truncation=1e-9)
    assert one <= two


# --- end-to-end consistency ------------------------------------------------------


def test_direct_monte_carlo_agrees_with_recombination():
    q, dec = _steane_qds()
    model = ErrorModel(p_q=0.02, p_s=0.01)
    direct = direct_monte_carlo(q, dec, model, trials=20_000, seed=77)
    grid = build_grid(q, dec, seed=78, boundary_trials=2_000, bulk_trials=500)
    combined = combine_grid(grid, model.p_q, model.p_s, truncation=0.0).p_err
    lo, hi = wilson_interval(round(direct * 20_000), 20_000, z=3.5)
    assert lo - 0.01 <= combined <= hi + 0.01


def test_direct_monte_carlo_deterministic():
    q, dec = _steane_qds()
    model = ErrorModel(p_q=0.05, p_s=0.02)
    a = direct_monte_carlo(q, dec, model, trials=2_000, seed=5)
    b = direct_monte_carlo(q, dec, model, trials=2_000, seed=5)
    assert a == b


def test_weight_aware_model_runs():
    q, dec = _steane_qds(bch_sm(6, 3))
    model = ErrorModel(p_q=0.02, p_s=0.01, weight_aware=True)
    plain = ErrorModel(p_q=0.02, p_s=0.01)
    a = direct_monte_carlo(q, dec, model, trials=3_000, seed=9)
    b = direct_monte_carlo(q, dec, plain, trials=3_000, seed=9)
    assert 0.0 <= a <= 1.0
    assert 0.0 <= b <= 1.0


def test_sweep_builds_once_and_recombines():
    q, dec = _steane_qds()
    ps = [1e-3, 3e-3, 1e-2]
    grid, points = sweep(q, dec, ps, ratio=0.1, seed=31,
                         boundary_trials=300, bulk_trials=100, truncation=1e-9)
    assert [pt.p_s for pt in points] == ps
    assert all(pt.p_q == pytest.approx(0.1 * pt.p_s) for pt in points)
    assert all(0.0 <= pt.p_err <= 1.0 for pt in points)
    # error rate grows with the error rates
    assert points[0].p_err < points[-1].p_err
    # a prebuilt grid is reused as-is
    grid2, points2 = sweep(q, dec, ps, ratio=0.1, seed=31, grid=grid,
                           truncation=1e-9)
    assert grid2 is grid
    assert points2 == points


def test_sweep_trial_count_consistency():
    """Doubling the sampling effort moves estimates within noise."""
    q, dec = _steane_qds()
    ps = [3e-3, 1e-2]
    _, small = sweep(q, dec, ps, ratio=0.1, seed=41,
                     boundary_trials=500, bulk_trials=200, truncation=1e-9)
    _, big = sweep(q, dec, ps, ratio=0.1, seed=42,
                   boundary_trials=1_000, bulk_trials=400, truncation=1e-9)
    for a, b in zip(small, big):
        assert b.p_err == pytest.approx(a.p_err, rel=0.5, abs=1e-4)


def test_slope_is_two_for_bare_syndrome_readout_in_data_noise():
    """With p_s = 0 and a distance-3 base code, weight-2 data errors set
    the failure scaling: p_err ~ p_q^2."""
    q, dec = _steane_qds()
    cells = [(wq, 0) for wq in range(6)]
    grid = build_grid(q, dec, seed=51, boundary_trials=4_000, bulk_trials=2_000,
                      cells=cells)
    lo_p, hi_p = 1e-3, 1e-2
    r_lo = combine_grid(grid, lo_p, 0.0, truncation=1e-9).p_err
    r_hi = combine_grid(grid, hi_p, 0.0, truncation=1e-9).p_err
    slope = math.log(r_hi / r_lo) / math.log(hi_p / lo_p)
    assert slope == pytest.approx(2.0, abs=0.3)
