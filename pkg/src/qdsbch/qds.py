"""Quantum data-syndrome codes: a stabilizer code plus a syndrome
measurement (SM) code that protects the syndrome bits themselves.

An SM code is a binary [n_s, ell] code; instead of measuring the ell
generators once, one measures the n_s products of generators given by the
columns of the SM encode matrix G, so a clean readout of a data error E is
the SM encoding of E's ordinary syndrome.  The combined check matrix is

    H_Q = G^T H      (n_s rows of length 2n),

each row a measurable product of generators.  Decoding is two-step: decode
the noisy n_s-bit readout with the classical SM decoder to recover the
ell-bit syndrome, then hand that syndrome to any decoder for the base
stabilizer code.

Three SM families are provided: a shortened BCH code of dimension ell
(the interesting one), the (2t+1)-fold repetition of all ell measurements,
and the identity (plain single measurement, no protection).

For overhead comparisons, fujiwara_extra_measurements counts the extra
rows of the earlier distinct-pair-measurement construction, and
overhead_table tabulates all three against each other.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import List, Optional, Sequence, Tuple

from .bch import BchCode, bch_select_m, bch_select_parameters
from .linalg import BinaryMatrix
from .stabilizer import BudgetExceededError, PauliOperator, StabilizerCode, iter_weight_paulis

Bits = Tuple[int, ...]


def _bits_to_mask(bits: Sequence[int], what: str) -> int:
    mask = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"{what} must be 0/1 bits")
        mask |= b << i
    return mask


def _mask_to_bits(mask: int, width: int) -> Bits:
    return tuple((mask >> i) & 1 for i in range(width))


class SyndromeMeasurementCode(ABC):
    """Binary [n_s, ell] code used to protect syndrome readout.

    encode maps an ell-bit syndrome to the n_s-bit clean readout; decode
    maps a noisy readout back to an ell-bit syndrome estimate (None if the
    decoder gives up).  t_s is the guaranteed correction radius.
    """

    ell: int
    n_s: int
    t_s: int
    name: str

    @property
    @abstractmethod
    def encode_matrix(self) -> BinaryMatrix:
        """ell x n_s matrix G with encode(s) = s G."""

    def encode(self, syndrome: Sequence[int]) -> Bits:
        syndrome = tuple(syndrome)
        if len(syndrome) != self.ell:
            raise ValueError(f"syndrome length must be {self.ell}")
        return _mask_to_bits(self._encode_mask(_bits_to_mask(syndrome, "syndrome")), self.n_s)

    def decode(self, received: Sequence[int]) -> Optional[Bits]:
        received = tuple(received)
        if len(received) != self.n_s:
            raise ValueError(f"received length must be {self.n_s}")
        msg = self._decode_mask(_bits_to_mask(received, "received word"))
        return None if msg is None else _mask_to_bits(msg, self.ell)

    @abstractmethod
    def _encode_mask(self, mask: int) -> int: ...

    @abstractmethod
    def _decode_mask(self, mask: int) -> Optional[int]: ...

    @property
    def extra_measurements(self) -> int:
        return self.n_s - self.ell

    def __repr__(self) -> str:
        return f"{type(self).__name__}(ell={self.ell}, n_s={self.n_s}, t_s={self.t_s})"


class BchSyndromeMeasurement(SyndromeMeasurementCode):
    """SM code backed by a shortened BCH code of dimension ell."""

    name = "bch"

    def __init__(self, code: BchCode):
        self.code = code
        self.ell = code.dimension
        self.n_s = code.length
        self.t_s = code.t

    @property
    def encode_matrix(self) -> BinaryMatrix:
        return self.code.generator_matrix()

    def _encode_mask(self, mask: int) -> int:
        return self.code._encode_mask(mask)

    def _decode_mask(self, mask: int) -> Optional[int]:
        out = self.code._decode_mask(mask)
        return None if out is None else out[0]


class RepetitionSyndromeMeasurement(SyndromeMeasurementCode):
    """Each of the ell syndrome bits measured reps times (reps odd).

    Layout is copy-major: the whole ell-bit syndrome repeated whole, so
    bit b of copy c sits at position b + c*ell.  Decoding is an
    independent majority vote per bit; it never reports failure.  reps=1
    is the identity SM code (single unprotected measurement).
    """

    def __init__(self, ell: int, reps: int):
        if ell < 1:
            raise ValueError("ell must be positive")
        if reps < 1 or reps % 2 == 0:
            raise ValueError("reps must be odd and positive")
        self.ell = ell
        self.reps = reps
        self.n_s = ell * reps
        self.t_s = (reps - 1) // 2
        self.name = "identity" if reps == 1 else "repetition"

    @property
    def encode_matrix(self) -> BinaryMatrix:
        rows = []
        for b in range(self.ell):
            mask = 0
            for c in range(self.reps):
                mask |= 1 << (b + c * self.ell)
            rows.append(mask)
        return BinaryMatrix(self.ell, self.n_s, rows)

    def _encode_mask(self, mask: int) -> int:
        word = 0
        for c in range(self.reps):
            word |= mask << (c * self.ell)
        return word

    def _decode_mask(self, mask: int) -> int:
        if self.reps == 1:
            return mask
        out = 0
        half = self.reps // 2
        for b in range(self.ell):
            count = 0
            pos = b
            for _ in range(self.reps):
                count += (mask >> pos) & 1
                pos += self.ell
            if count > half:
                out |= 1 << b
        return out


def bch_sm(ell: int, t: int) -> BchSyndromeMeasurement:
    """BCH SM code for ell syndrome bits correcting t measurement errors."""
    _, code = bch_select_m(ell, t)
    return BchSyndromeMeasurement(code)


def repetition_sm(ell: int, reps: int) -> RepetitionSyndromeMeasurement:
    return RepetitionSyndromeMeasurement(ell, reps)


def identity_sm(ell: int) -> RepetitionSyndromeMeasurement:
    return RepetitionSyndromeMeasurement(ell, 1)


class QdsCode:
    """A stabilizer code with its syndrome measurements encoded by an SM code."""

    def __init__(self, base: StabilizerCode, sm: SyndromeMeasurementCode):
        if sm.ell != base.ell:
            raise ValueError(
                f"SM code dimension {sm.ell} != generator count {base.ell}"
            )
        self.base = base
        self.sm = sm
        self.h_q = sm.encode_matrix.transpose().mat_mul(base.check_matrix)
        self.extra_measurements = sm.extra_measurements
        n = base.n
        low = (1 << n) - 1
        self._rows = tuple(
            (self.h_q.row_mask(i) & low, self.h_q.row_mask(i) >> n)
            for i in range(self.h_q.rows)
        )
        self.row_weights = tuple((rx | rz).bit_count() for rx, rz in self._rows)

    def measurement_pauli(self, i: int) -> PauliOperator:
        """Row i of H_Q as the product of generators it measures."""
        rx, rz = self._rows[i]
        return PauliOperator(self.base.n, rx, rz)

    def measure(
        self, data_error: PauliOperator, syndrome_error: Optional[Sequence[int]] = None
    ) -> Bits:
        """The n_s-bit readout for a data error plus readout bit flips."""
        if data_error.n != self.base.n:
            raise ValueError("data error acts on wrong qubit count")
        flips = 0
        if syndrome_error is not None:
            syndrome_error = tuple(syndrome_error)
            if len(syndrome_error) != self.sm.n_s:
                raise ValueError(f"syndrome error length must be {self.sm.n_s}")
            flips = _bits_to_mask(syndrome_error, "syndrome error")
        word = self._measure_mask(data_error.x, data_error.z, flips)
        return _mask_to_bits(word, self.sm.n_s)

    def _measure_mask(self, ex: int, ez: int, flips: int) -> int:
        word = flips
        for i, (rx, rz) in enumerate(self._rows):
            if ((rx & ez).bit_count() + (rz & ex).bit_count()) & 1:
                word ^= 1 << i
        return word

    def decode_two_step(self, measured: Sequence[int], quantum_decoder):
        """SM-decode the readout, then look up a correction for the
        recovered syndrome.  Returns (correction, syndrome_bits) or None
        if either step fails."""
        measured = tuple(measured)
        if len(measured) != self.sm.n_s:
            raise ValueError(f"measured word length must be {self.sm.n_s}")
        msg = self.sm._decode_mask(_bits_to_mask(measured, "measured word"))
        if msg is None:
            return None
        correction = quantum_decoder._decode_mask(msg)
        if correction is None:
            return None
        return correction, _mask_to_bits(msg, self.sm.ell)

    def __repr__(self) -> str:
        return f"QdsCode(base={self.base!r}, sm={self.sm!r})"


def qds_assemble(base: StabilizerCode, sm: SyndromeMeasurementCode) -> QdsCode:
    return QdsCode(base, sm)


def qds_measure(
    qds: QdsCode, data_error: PauliOperator, syndrome_error: Optional[Sequence[int]] = None
) -> Bits:
    return qds.measure(data_error, syndrome_error)


def qds_decode_two_step(qds: QdsCode, measured: Sequence[int], quantum_decoder):
    return qds.decode_two_step(measured, quantum_decoder)


# --- measurement overhead counting -----------------------------------------


def _min_power_of_two_exponent_times_e(d: int) -> int:
    """Smallest z with 2^z >= d * e, computed with exact rational bounds.

    Brackets e between partial sums of sum 1/k! (the tail after k = K-1 is
    below 2/K!), widening K until both bounds give the same z.
    """
    if d <= 0:
        raise ValueError("d must be positive")
    terms = 30
    while True:
        e_low = sum(Fraction(1, factorial(j)) for j in range(terms))
        e_high = e_low + Fraction(2, factorial(terms))

        def min_exponent(bound: Fraction) -> int:
            z = max(0, (bound.numerator // bound.denominator).bit_length() - 1)
            while Fraction(1 << z) < d * bound:
                z += 1
            return z

        z_low = min_exponent(e_low)
        z_high = min_exponent(e_high)
        if z_low == z_high:
            return z_low
        terms += 20


def fujiwara_extra_measurements(ell: int, t_c: int) -> Tuple[int, List[int]]:
    """Extra measurement count of the distinct-pair construction.

    For correcting up to t_c syndrome bit flips on ell syndrome bits, the
    construction takes 2*t_c full-weight reference measurements plus, for
    each i = 1..t_c, (2*t_c - 2*i + 1) repetitions of an m_i-bit block
    where m_i is the smallest z with

        2^z >= (C(ell, 2i) - C(ell - 2i, 2i)) * e.

    Returns (total_extra, [m_1, ..., m_tc]).  Requires 2*t_c <= ell;
    t_c = 0 costs nothing.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if t_c < 0:
        raise ValueError("t_c must be nonnegative")
    if 2 * t_c > ell:
        raise ValueError(f"need 2*t_c <= ell, got t_c={t_c}, ell={ell}")
    m_list: List[int] = []
    total = 2 * t_c
    for i in range(1, t_c + 1):
        d = comb(ell, 2 * i) - comb(ell - 2 * i, 2 * i)
        m_i = _min_power_of_two_exponent_times_e(d)
        m_list.append(m_i)
        total += (2 * t_c - 2 * i + 1) * m_i
    return total, m_list


@dataclass(frozen=True)
class OverheadEntry:
    """Extra measurements needed by each construction at one (ell, t)."""

    ell: int
    t: int
    bch: int
    fujiwara: Optional[int]  # None where 2t > ell
    repetition: int


def overhead_table(ells: Sequence[int], ts: Sequence[int]) -> List[OverheadEntry]:
    """Extra-measurement comparison over a grid of syndrome lengths and t.

    bch: parity count R of the bound-rule-selected shortened BCH code;
    repetition: (2t+1)-fold repetition costs 2*t*ell extra; fujiwara: the
    distinct-pair count, None where the formula does not apply.
    """
    out = []
    for ell in ells:
        for t in ts:
            _, r = bch_select_parameters(ell, t)
            if 2 * t <= ell:
                fuji, _ = fujiwara_extra_measurements(ell, t)
            else:
                fuji = None
            out.append(
                OverheadEntry(ell=ell, t=t, bch=r, fujiwara=fuji, repetition=2 * t * ell)
            )
    return out


# --- exhaustive verification -----------------------------------------------


@dataclass(frozen=True)
class VerifyCell:
    """Exhaustive two-step check over one (data weight, flip weight) cell."""

    w_q: int
    w_s: int
    cases: int
    failures: int


def _iter_weight_masks(n: int, w: int):
    if w == 0:
        yield 0
        return
    for support in combinations(range(n), w):
        mask = 0
        for p in support:
            mask |= 1 << p
        yield mask


def verify_correction_guarantee(
    qds: QdsCode, quantum_decoder, budget: int = 10**6
) -> List[VerifyCell]:
    """Prove the guarantee region: every data error of weight <= t_data
    combined with every readout flip pattern of weight <= t_s must decode
    to a correction with trivial residual.

    Runs all cases exhaustively; raises BudgetExceededError (with the
    required count) instead of starting a run larger than budget.
    """
    n = qds.base.n
    n_s = qds.sm.n_s
    # the data-error radius the decoder is on the hook for
    t_data = quantum_decoder.max_weight
    t_s = qds.sm.t_s
    total = 0
    for w_q in range(t_data + 1):
        for w_s in range(t_s + 1):
            total += comb(n, w_q) * 3**w_q * comb(n_s, w_s)
    if total > budget:
        raise BudgetExceededError(
            f"exhaustive verification needs {total} cases, budget is {budget}",
            required=total,
            budget=budget,
        )
    base = qds.base
    cells = []
    for w_q in range(t_data + 1):
        data_errors = list(iter_weight_paulis(n, w_q))
        for w_s in range(t_s + 1):
            cases = 0
            failures = 0
            for e in data_errors:
                clean = qds._measure_mask(e.x, e.z, 0)
                for flips in _iter_weight_masks(n_s, w_s):
                    cases += 1
                    out = qds.sm._decode_mask(clean ^ flips)
                    if out is None:
                        failures += 1
                        continue
                    correction = quantum_decoder._decode_mask(out)
                    if correction is None:
                        failures += 1
                        continue
                    residual = PauliOperator(n, e.x ^ correction.x, e.z ^ correction.z)
                    if base.classify(residual) != "trivial":
                        failures += 1
            cells.append(VerifyCell(w_q=w_q, w_s=w_s, cases=cases, failures=failures))
    return cells
