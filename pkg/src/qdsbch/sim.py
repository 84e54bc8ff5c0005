"""Phenomenological-noise Monte Carlo for QDS codes, weight-stratified.

The error model draws a data Pauli error (each qubit hit independently
with probability p_q, uniform X/Y/Z letter) and independent readout bit
flips (probability p_s per measurement, or the weight-dependent
stabilizer_meas_error_prob when the model is weight-aware).  A trial
fails when the two-step decode gives up or the residual error is not an
element of the stabilizer group.

Instead of sampling that model directly at each (p_q, p_s), cells are
sampled at fixed error weights: estimate the failure fraction p_L(w_q,
w_s) with errors of exactly w_q hit qubits and exactly w_s flipped
readouts, then recombine

    p_err(p_q, p_s) = sum_cells A(w_q; p_q, n) A(w_s; p_s, n_s) p_L

with binomial weight probabilities A.  One grid of cells serves every
probability point, cells with negligible prefactor are dropped (their
total is bounded by truncation * dropped_count), and each cell draws from
its own seeded stream so grids are reproducible cell by cell.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb, sqrt
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from . import __version__
from .qds import QdsCode

Cell = Tuple[int, int]


def stabilizer_meas_error_prob(w: int, p_m: float) -> float:
    """Probability that a weight-w stabilizer measurement reads out wrong
    when each of the w physical factors fails independently with
    probability p_m: the chance of an odd number of failures,
    (1 - (1 - 2 p_m)^w) / 2."""
    if w < 1:
        raise ValueError("measurement weight must be at least 1")
    if not 0.0 <= p_m <= 1.0:
        raise ValueError("p_m must be a probability")
    return 0.5 * (1.0 - (1.0 - 2.0 * p_m) ** w)


def binomial_weight_probability(w: int, p: float, n: int) -> float:
    """A(w; p, n) = C(n, w) p^w (1-p)^(n-w)."""
    if not 0 <= w <= n:
        raise ValueError("need 0 <= w <= n")
    return comb(n, w) * p**w * (1.0 - p) ** (n - w)


def wilson_interval(failures: int, trials: int, z: float = 1.96) -> Tuple[float, float]:
    """Wilson score interval for a binomial fraction."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 <= failures <= trials:
        raise ValueError("failures must be in [0, trials]")
    phat = failures / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = (z / denom) * sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class ErrorModel:
    """Phenomenological model: qubit error rate p_q, readout flip rate p_s.

    When weight_aware is set, each readout bit flips with
    stabilizer_meas_error_prob(row weight, p_s) instead of plain p_s.
    """

    p_q: float
    p_s: float
    weight_aware: bool = False

    def __post_init__(self):
        for name in ("p_q", "p_s"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be a probability, got {v}")


@dataclass
class CellStats:
    trials: int
    failures: int


class SimGrid:
    """Failure statistics per (w_q, w_s) cell, with provenance.

    code_meta must at least carry n and n_s so the grid can be recombined
    without the code objects in hand.
    """

    def __init__(self, code_meta: dict, seed: int, cells: Optional[Dict[Cell, CellStats]] = None):
        self.code_meta = dict(code_meta)
        self.seed = seed
        self.cells: Dict[Cell, CellStats] = dict(cells) if cells else {}

    def add(self, w_q: int, w_s: int, trials: int, failures: int) -> None:
        key = (w_q, w_s)
        held = self.cells.get(key)
        if held is None:
            self.cells[key] = CellStats(trials, failures)
        else:
            held.trials += trials
            held.failures += failures

    def merge(self, other: "SimGrid") -> "SimGrid":
        """Union of two grids over disjoint cell sets (same code, same seed)."""
        if self.code_meta != other.code_meta:
            raise ValueError("cannot merge grids with different code_meta")
        if self.seed != other.seed:
            raise ValueError("cannot merge grids with different seeds")
        overlap = self.cells.keys() & other.cells.keys()
        if overlap:
            raise ValueError(f"cell sets overlap: {sorted(overlap)[:4]}...")
        merged = SimGrid(self.code_meta, self.seed, self.cells)
        for key, st in other.cells.items():
            merged.cells[key] = CellStats(st.trials, st.failures)
        return merged

    def to_json_dict(self) -> dict:
        return {
            "code_meta": self.code_meta,
            "seed": self.seed,
            "cells": [
                {
                    "wq": wq,
                    "ws": ws,
                    "trials": st.trials,
                    "failures": st.failures,
                }
                for (wq, ws), st in sorted(self.cells.items())
            ],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SimGrid":
        grid = cls(obj["code_meta"], obj["seed"])
        for cell in obj["cells"]:
            grid.add(cell["wq"], cell["ws"], cell["trials"], cell["failures"])
        return grid

    @classmethod
    def from_json_text(cls, text: str) -> "SimGrid":
        return cls.from_json_dict(json.loads(text))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimGrid)
            and self.code_meta == other.code_meta
            and self.seed == other.seed
            and self.cells == other.cells
        )

    def __repr__(self) -> str:
        return f"SimGrid(cells={len(self.cells)}, seed={self.seed})"


def _cell_generator(seed: int, w_q: int, w_s: int) -> np.random.Generator:
    # one independent, reproducible stream per cell; grid build order and
    # cell subsetting cannot change any cell's samples
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(w_q, w_s)))


def _run_cell(qds: QdsCode, decoder, w_q: int, w_s: int, trials: int, rng) -> int:
    """Failure count over `trials` samples at exact weights (w_q, w_s)."""
    base = qds.base
    n = base.n
    n_s = qds.sm.n_s
    rows = qds._rows
    gen_masks = base._gen_masks
    basis = base._membership_basis
    sm_decode = qds.sm._decode_mask
    table = decoder._table

    supports = letters = flip_sites = None
    if w_q:
        u = rng.random((trials, n))
        supports = np.argsort(u, axis=1)[:, :w_q].tolist()
        letters = rng.integers(0, 3, size=(trials, w_q)).tolist()
    if w_s:
        u = rng.random((trials, n_s))
        flip_sites = np.argsort(u, axis=1)[:, :w_s].tolist()

    failures = 0
    for idx in range(trials):
        ex = ez = 0
        if w_q:
            sup = supports[idx]
            lets = letters[idx]
            for j in range(w_q):
                bit = 1 << sup[j]
                letter = lets[j]
                if letter == 0:
                    ex |= bit
                elif letter == 1:
                    ex |= bit
                    ez |= bit
                else:
                    ez |= bit
        word = 0
        if w_s:
            for p in flip_sites[idx]:
                word |= 1 << p
        for i, (rx, rz) in enumerate(rows):
            if ((rx & ez).bit_count() + (rz & ex).bit_count()) & 1:
                word ^= 1 << i
        msg = sm_decode(word)
        if msg is None:
            failures += 1
            continue
        correction = table.get(msg)
        if correction is None:
            failures += 1
            continue
        rx = ex ^ correction.x
        rz = ez ^ correction.z
        if rx == 0 and rz == 0:
            continue
        detectable = False
        for gx, gz in gen_masks:
            if ((gx & rz).bit_count() + (gz & rx).bit_count()) & 1:
                detectable = True
                break
        if detectable:
            failures += 1
            continue
        v = rx | (rz << n)
        for pivot, row in basis:
            if (v >> pivot) & 1:
                v ^= row
        if v != 0:
            failures += 1  # logical
    return failures


def estimate_cell(
    qds: QdsCode, decoder, w_q: int, w_s: int, trials: int, seed: int
) -> float:
    """Failure fraction at exact weights (w_q, w_s), reproducible by seed."""
    if not 0 <= w_q <= qds.base.n:
        raise ValueError("w_q out of range")
    if not 0 <= w_s <= qds.sm.n_s:
        raise ValueError("w_s out of range")
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = _cell_generator(seed, w_q, w_s)
    return _run_cell(qds, decoder, w_q, w_s, trials, rng) / trials


def default_code_meta(qds: QdsCode, decoder) -> dict:
    meta = {
        "version": __version__,
        "n": qds.base.n,
        "k": qds.base.k,
        "ell": qds.base.ell,
        "n_s": qds.sm.n_s,
        "t_s": qds.sm.t_s,
        "t_data": decoder.max_weight,
        "sm": qds.sm.name,
        "extra_measurements": qds.extra_measurements,
    }
    return meta


def build_grid(
    qds: QdsCode,
    decoder,
    *,
    seed: int,
    boundary_trials: int = 10_000,
    bulk_trials: int = 1_000,
    cells: Optional[Iterable[Cell]] = None,
    code_meta: Optional[dict] = None,
) -> SimGrid:
    """Sample a grid of (w_q, w_s) cells.

    Cells at the failure boundary (w_q <= t_data + 1 and w_s <= t_s + 1)
    get boundary_trials samples, the rest bulk_trials.  cells defaults to
    the full (n+1) x (n_s+1) domain.
    """
    if boundary_trials < 1 or bulk_trials < 1:
        raise ValueError("trial counts must be positive")
    n = qds.base.n
    n_s = qds.sm.n_s
    if cells is None:
        cells = [(wq, ws) for wq in range(n + 1) for ws in range(n_s + 1)]
    else:
        cells = sorted(set(cells))
        for wq, ws in cells:
            if not (0 <= wq <= n and 0 <= ws <= n_s):
                raise ValueError(f"cell ({wq}, {ws}) outside the weight domain")
    t_data = decoder.max_weight
    t_s = qds.sm.t_s
    meta = default_code_meta(qds, decoder) if code_meta is None else dict(code_meta)
    grid = SimGrid(meta, seed)
    for wq, ws in cells:
        trials = boundary_trials if (wq <= t_data + 1 and ws <= t_s + 1) else bulk_trials
        rng = _cell_generator(seed, wq, ws)
        failures = _run_cell(qds, decoder, wq, ws, trials, rng)
        grid.add(wq, ws, trials, failures)
    return grid


@dataclass(frozen=True)
class CombineResult:
    p_err: float
    truncation_mass: float
    dropped_cells: int


def combine_grid(
    grid: SimGrid, p_q: float, p_s: float, truncation: float = 1e-12
) -> CombineResult:
    """Recombine a grid into p_err(p_q, p_s).

    Cells with binomial prefactor below truncation contribute zero; their
    worst-case total is reported as truncation_mass.  A cell that is
    needed (prefactor >= truncation) but absent from the grid is an error.
    """
    n, n_s = _domain_from_meta(grid)
    for name, v in (("p_q", p_q), ("p_s", p_s)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must be a probability, got {v}")
    if truncation < 0.0:
        raise ValueError("truncation must be nonnegative")
    col = [binomial_weight_probability(ws, p_s, n_s) for ws in range(n_s + 1)]
    p_err = 0.0
    dropped = 0
    for wq in range(n + 1):
        aq = binomial_weight_probability(wq, p_q, n)
        if aq < truncation:  # every cell in this row is below threshold
            dropped += n_s + 1
            continue
        for ws in range(n_s + 1):
            pref = aq * col[ws]
            if pref < truncation:
                dropped += 1
                continue
            st = grid.cells.get((wq, ws))
            if st is None:
                raise ValueError(
                    f"grid is missing cell ({wq}, {ws}) with prefactor {pref:.3g} "
                    f">= truncation {truncation:.3g}"
                )
            p_err += pref * (st.failures / st.trials)
    return CombineResult(p_err=p_err, truncation_mass=truncation * dropped, dropped_cells=dropped)


def combine_grid_bounds(
    grid: SimGrid, p_q: float, p_s: float, truncation: float = 1e-12, z: float = 1.96
) -> Tuple[float, float]:
    """Wilson-interval bounds on p_err(p_q, p_s) from a grid.

    Cells inside the certified-correctable region (w_q <= t_data and
    w_s <= t_s from code_meta) are exactly zero and contribute no
    uncertainty.  The upper bound includes the truncation mass.
    """
    n, n_s = _domain_from_meta(grid)
    t_data = grid.code_meta.get("t_data")
    t_s = grid.code_meta.get("t_s")
    col = [binomial_weight_probability(ws, p_s, n_s) for ws in range(n_s + 1)]
    lo = hi = 0.0
    dropped = 0
    for wq in range(n + 1):
        aq = binomial_weight_probability(wq, p_q, n)
        if aq < truncation:
            dropped += n_s + 1
            continue
        for ws in range(n_s + 1):
            pref = aq * col[ws]
            if pref < truncation:
                dropped += 1
                continue
            st = grid.cells.get((wq, ws))
            if st is None:
                raise ValueError(f"grid is missing cell ({wq}, {ws})")
            certified = (
                t_data is not None and t_s is not None and wq <= t_data and ws <= t_s
            )
            if certified and st.failures == 0:
                continue
            cell_lo, cell_hi = wilson_interval(st.failures, st.trials, z)
            lo += pref * cell_lo
            hi += pref * cell_hi
    return lo, hi + truncation * dropped


def _domain_from_meta(grid: SimGrid) -> Tuple[int, int]:
    try:
        return int(grid.code_meta["n"]), int(grid.code_meta["n_s"])
    except KeyError as exc:
        raise ValueError("grid code_meta must carry n and n_s") from exc


def required_cells(
    n: int, n_s: int, points: Sequence[Tuple[float, float]], truncation: float
) -> Set[Cell]:
    """Cells whose prefactor reaches truncation at any (p_q, p_s) point."""
    needed: Set[Cell] = set()
    for p_q, p_s in points:
        col = [binomial_weight_probability(ws, p_s, n_s) for ws in range(n_s + 1)]
        for wq in range(n + 1):
            aq = binomial_weight_probability(wq, p_q, n)
            if aq < truncation:
                continue
            for ws in range(n_s + 1):
                if aq * col[ws] >= truncation:
                    needed.add((wq, ws))
    return needed


@dataclass(frozen=True)
class SweepPoint:
    p_s: float
    p_q: float
    p_err: float
    truncation_mass: float


def sweep(
    qds: QdsCode,
    decoder,
    p_s_values: Sequence[float],
    ratio: float,
    *,
    seed: int,
    boundary_trials: int = 10_000,
    bulk_trials: int = 1_000,
    truncation: float = 1e-12,
    grid: Optional[SimGrid] = None,
) -> Tuple[SimGrid, List[SweepPoint]]:
    """Error-rate curve over p_s values with p_q = ratio * p_s.

    Builds one grid covering every cell any point needs (unless an
    existing grid is passed in) and recombines it per point.
    """
    points = [(ratio * ps, ps) for ps in p_s_values]
    for p_q, p_s in points:
        if not (0.0 <= p_q <= 1.0 and 0.0 <= p_s <= 1.0):
            raise ValueError(f"point (p_q={p_q}, p_s={p_s}) is not a probability pair")
    if grid is None:
        cells = required_cells(qds.base.n, qds.sm.n_s, points, truncation)
        grid = build_grid(
            qds,
            decoder,
            seed=seed,
            boundary_trials=boundary_trials,
            bulk_trials=bulk_trials,
            cells=cells,
        )
    out = []
    for p_q, p_s in points:
        res = combine_grid(grid, p_q, p_s, truncation)
        out.append(
            SweepPoint(p_s=p_s, p_q=p_q, p_err=res.p_err, truncation_mass=res.truncation_mass)
        )
    return grid, out


def direct_monte_carlo(
    qds: QdsCode, decoder, model: ErrorModel, trials: int, seed: int
) -> float:
    """Plain Monte Carlo under the full error model (no stratification).

    Useful as a cross-check of grid recombination and as the only way to
    sample the weight-aware readout model.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    base = qds.base
    n = base.n
    n_s = qds.sm.n_s
    rows = qds._rows
    gen_masks = base._gen_masks
    basis = base._membership_basis
    sm_decode = qds.sm._decode_mask
    table = decoder._table
    if model.weight_aware:
        row_p = np.array(
            [stabilizer_meas_error_prob(w, model.p_s) if w else 0.0 for w in qds.row_weights]
        )
    else:
        row_p = np.full(n_s, model.p_s)

    rng = np.random.default_rng(np.random.SeedSequence(seed))
    hits = rng.random((trials, n)) < model.p_q
    letters = rng.integers(0, 3, size=(trials, n))
    flips = rng.random((trials, n_s)) < row_p
    hits = hits.tolist()
    letters = letters.tolist()
    flips = flips.tolist()

    failures = 0
    for idx in range(trials):
        ex = ez = 0
        hit_row = hits[idx]
        letter_row = letters[idx]
        for q in range(n):
            if hit_row[q]:
                bit = 1 << q
                letter = letter_row[q]
                if letter == 0:
                    ex |= bit
                elif letter == 1:
                    ex |= bit
                    ez |= bit
                else:
                    ez |= bit
        word = 0
        flip_row = flips[idx]
        for i in range(n_s):
            if flip_row[i]:
                word |= 1 << i
        for i, (rx, rz) in enumerate(rows):
            if ((rx & ez).bit_count() + (rz & ex).bit_count()) & 1:
                word ^= 1 << i
        msg = sm_decode(word)
        if msg is None:
            failures += 1
            continue
        correction = table.get(msg)
        if correction is None:
            failures += 1
            continue
        rx = ex ^ correction.x
        rz = ez ^ correction.z
        if rx == 0 and rz == 0:
            continue
        bad = False
        for gx, gz in gen_masks:
            if ((gx & rz).bit_count() + (gz & rx).bit_count()) & 1:
                bad = True
                break
        if not bad:
            v = rx | (rz << n)
            for pivot, row in basis:
                if (v >> pivot) & 1:
                    v ^= row
            bad = v != 0
        if bad:
            failures += 1
    return failures / trials
