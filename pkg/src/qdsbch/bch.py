"""Primitive narrow-sense BCH codes: construct, shorten, encode, decode.

A code is defined over GF(2^m) by the generator polynomial

    g(x) = lcm of the minimal polynomials of alpha, alpha^2, ..., alpha^2t,

giving a cyclic [n, k, >= 2t+1] code with n = 2^m - 1, k = n - deg g.
Codewords are bit masks, position j = coefficient of x^j.  Encoding is
systematic with the message in the first k positions: because x^n = 1
(mod g), the matrix row for message bit i is x^i + x^k * (x^(i+r) mod g),
so the parity block lands in the last r positions and no elimination is
needed.

Shortening by a drops the first a coordinates (fixing them to zero), an
[n-a, k-a, >= 2t+1] code; decoding re-prepends a zeros and rejects any
correction that lands inside the dropped prefix.

Decoding is classical Berlekamp-Massey plus Chien search over the 2t
power-sum syndromes S_j = r(alpha^j).  Within the design radius t it
corrects exactly; beyond it, it either reports failure (None) or lands on
a wrong codeword, but it never emits a non-codeword: corrected words are
re-checked against all 2t syndromes.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .fields import (
    MAX_EXTENSION_DEGREE,
    BinaryPolynomial,
    GF2m,
    minimal_polynomial,
    poly_lcm,
)
from .linalg import BinaryMatrix


class BchCode:
    """A (possibly shortened) primitive narrow-sense BCH code.

    Attributes
    ----------
    m, t:        extension degree and design correction radius
    n, k:        parent (unshortened) length and dimension
    r:           parity bit count, deg g = n - k
    shorten_by:  number of leading coordinates removed
    length:      n - shorten_by
    dimension:   k - shorten_by
    distance:    the design distance 2t + 1 (a lower bound on the true one)
    """

    def __init__(self, field: GF2m, t: int, generator: BinaryPolynomial, shorten_by: int = 0):
        n = field.group_order
        r = generator.degree
        k = n - r
        if not 0 <= shorten_by < k:
            raise ValueError(f"shorten_by must be in [0, {k}), got {shorten_by}")
        self.field = field
        self.m = field.m
        self.t = t
        self.generator = generator
        self.n = n
        self.r = r
        self.k = k
        self.shorten_by = shorten_by
        self.length = n - shorten_by
        self.dimension = k - shorten_by
        self.distance = 2 * t + 1
        self._gen_matrix: Optional[BinaryMatrix] = None
        self._pow_tables: Optional[List[List[int]]] = None

    # --- derived structure ---

    def shortened(self, a: int) -> "BchCode":
        """Shorten by a further leading coordinates."""
        if a < 0:
            raise ValueError("shortening amount must be nonnegative")
        return BchCode(self.field, self.t, self.generator, self.shorten_by + a)

    def generator_matrix(self) -> BinaryMatrix:
        """Systematic dimension x length generator matrix [I | P]."""
        if self._gen_matrix is None:
            g = self.generator
            a, k, r = self.shorten_by, self.k, self.r
            xpow = BinaryPolynomial.x_power
            rows = []
            for i in range(a, k):
                parity = (xpow(i + r) % g).mask
                rows.append(((1 << i) | (parity << k)) >> a)
            self._gen_matrix = BinaryMatrix(self.dimension, self.length, rows)
        return self._gen_matrix

    # --- encode ---

    def encode(self, message: Sequence[int]) -> Tuple[int, ...]:
        message = list(message)
        if len(message) != self.dimension:
            raise ValueError(f"message length must be {self.dimension}")
        mask = 0
        for i, b in enumerate(message):
            if b not in (0, 1):
                raise ValueError("message bits must be 0 or 1")
            mask |= b << i
        word = self._encode_mask(mask)
        return tuple((word >> j) & 1 for j in range(self.length))

    def _encode_mask(self, msg_mask: int) -> int:
        # parent message has the dropped prefix fixed to zero
        parent_msg = msg_mask << self.shorten_by
        parity = self._poly_mod_generator(parent_msg << self.r)
        return ((parity << self.k) | parent_msg) >> self.shorten_by

    def _poly_mod_generator(self, mask: int) -> int:
        gmask = self.generator.mask
        gdeg = self.r
        while mask.bit_length() - 1 >= gdeg:
            mask ^= gmask << (mask.bit_length() - 1 - gdeg)
        return mask

    # --- decode ---

    def decode(self, received: Sequence[int]) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Bounded-distance decode.

        Returns (message_bits, corrected_positions) or None on failure.
        Up to t bit errors are always corrected; beyond t the call may
        return None or a wrong codeword's message, never a non-codeword.
        """
        received = list(received)
        if len(received) != self.length:
            raise ValueError(f"received word length must be {self.length}")
        mask = 0
        for i, b in enumerate(received):
            if b not in (0, 1):
                raise ValueError("received bits must be 0 or 1")
            mask |= b << i
        out = self._decode_mask(mask)
        if out is None:
            return None
        msg_mask, positions = out
        msg = tuple((msg_mask >> i) & 1 for i in range(self.dimension))
        return msg, positions

    def _decode_mask(self, word: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
        a = self.shorten_by
        parent = word << a
        pow_tables = self._pow_tables
        if pow_tables is None:
            pow_tables = self._build_pow_tables()
        # power-sum syndromes S_j = sum over support of alpha^(j*i)
        syndromes = [0] * (2 * self.t)
        rem = parent
        while rem:
            low = rem & -rem
            i = low.bit_length() - 1
            rem ^= low
            for j in range(2 * self.t):
                syndromes[j] ^= pow_tables[j][i]
        if not any(syndromes):
            return (word & ((1 << self.dimension) - 1), ())
        sigma, errors = self._berlekamp_massey(syndromes)
        if errors == 0 or errors > self.t or len(sigma) - 1 != errors:
            return None
        positions = self._chien_search(sigma)
        if positions is None or len(positions) != errors:
            return None
        if positions[0] < a:  # sorted ascending; a correction in the prefix
            return None
        # reject any locator whose flips do not cancel every syndrome
        for j in range(2 * self.t):
            s = syndromes[j]
            tab = pow_tables[j]
            for p in positions:
                s ^= tab[p]
            if s:
                return None
        flip = 0
        for p in positions:
            flip |= 1 << p
        corrected = parent ^ flip
        msg_mask = (corrected >> a) & ((1 << self.dimension) - 1)
        return msg_mask, tuple(p - a for p in positions)

    def _build_pow_tables(self) -> List[List[int]]:
        antilog = self.field._antilog
        n = self.n
        self._pow_tables = [
            [antilog[(j * i) % n] for i in range(n)] for j in range(1, 2 * self.t + 1)
        ]
        return self._pow_tables

    def _berlekamp_massey(self, syndromes: List[int]) -> Tuple[List[int], int]:
        """Minimal LFSR (error locator sigma, as field coefficients lowest
        degree first) generating the syndrome sequence, and its length."""
        mul = self.field.mul
        div = self.field.div
        sigma = [1]
        prev = [1]
        length = 0
        shift = 1
        prev_disc = 1
        for i, s in enumerate(syndromes):
            disc = s
            for j in range(1, length + 1):
                if j < len(sigma) and sigma[j] and syndromes[i - j]:
                    disc ^= mul(sigma[j], syndromes[i - j])
            if disc == 0:
                shift += 1
                continue
            coef = div(disc, prev_disc)
            needed = len(prev) + shift
            if len(sigma) < needed:
                sigma.extend([0] * (needed - len(sigma)))
            if 2 * length <= i:
                saved = list(sigma[: length + 1])
                for j, pj in enumerate(prev):
                    if pj:
                        sigma[j + shift] ^= mul(coef, pj)
                length = i + 1 - length
                prev = saved
                prev_disc = disc
                shift = 1
            else:
                for j, pj in enumerate(prev):
                    if pj:
                        sigma[j + shift] ^= mul(coef, pj)
                shift += 1
        while sigma and sigma[-1] == 0:
            sigma.pop()
        return sigma, length

    def _chien_search(self, sigma: List[int]) -> Optional[List[int]]:
        """Distinct roots of sigma as error positions, sorted ascending.

        sigma(alpha^i) = 0 puts an error at position (n - i) mod n.
        Returns None if the root count does not match deg sigma.
        """
        n = self.n
        mul = self.field.mul
        antilog = self.field._antilog
        deg = len(sigma) - 1
        work = list(sigma)
        positions = []
        for i in range(n):
            v = 0
            for w in work:
                v ^= w
            if v == 0:
                positions.append((n - i) % n)
            for jj in range(1, deg + 1):
                if work[jj]:
                    work[jj] = mul(work[jj], antilog[jj])
        if len(positions) != deg:
            return None
        positions.sort()
        return positions

    def __repr__(self) -> str:
        return (
            f"BchCode([{self.length},{self.dimension},{self.distance}], "
            f"m={self.m}, t={self.t}, shorten_by={self.shorten_by})"
        )


def bch_construct(m: int, t: int, primitive_polynomial=None) -> BchCode:
    """The primitive narrow-sense BCH code of length 2^m - 1 correcting t errors."""
    if t < 1:
        raise ValueError("t must be at least 1")
    n = (1 << m) - 1 if m >= 1 else 0
    if 2 * t >= n:
        raise ValueError(f"2t = {2 * t} must be below the code length {n}")
    field = GF2m(m, primitive_polynomial)
    seen_exponents = set()
    minimal_polys = []
    for e in range(1, 2 * t + 1):
        if e in seen_exponents:
            continue
        c = e
        while c not in seen_exponents:
            seen_exponents.add(c)
            c = (2 * c) % n
        minimal_polys.append(minimal_polynomial(field, e))
    g = poly_lcm(minimal_polys)
    code = BchCode(field, t, g)
    if code.r > m * t:
        raise AssertionError("parity count exceeded the m*t bound")
    return code


def bch_shorten(code: BchCode, a: int) -> BchCode:
    return code.shortened(a)


def parity_bit_count(m: int, t: int) -> int:
    """R(m, t) = deg g for the (m, t) code, via cyclotomic coset sizes.

    deg g is the number of distinct roots of g, i.e. the total size of the
    cosets meeting {1, ..., 2t}.  No field build needed.
    """
    n = (1 << m) - 1
    if t < 1 or 2 * t >= n:
        raise ValueError("need 1 <= t and 2t < 2^m - 1")
    counted = set()
    total = 0
    for e in range(1, 2 * t + 1):
        if e in counted:
            continue
        c = e
        while c not in counted:
            counted.add(c)
            total += 1
            c = (2 * c) % n
    return total


def bch_select_parameters(ell: int, t: int, max_m: int = MAX_EXTENSION_DEGREE) -> Tuple[int, int]:
    """(m, R) for the smallest m with ell <= 2^m - m*t - 1.

    The bound guarantees room for ell message bits even in the worst case
    deg g = m*t; R is the actual parity count of the selected code.  No
    field tables are built.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if t < 1:
        raise ValueError("t must be at least 1")
    for m in range(2, max_m + 1):
        n = (1 << m) - 1
        if 2 * t >= n:
            continue
        if ell <= (1 << m) - m * t - 1:
            return m, parity_bit_count(m, t)
    raise ValueError(f"no extension degree m <= {max_m} fits ell={ell}, t={t}")


def bch_select_m(ell: int, t: int, max_m: int = MAX_EXTENSION_DEGREE) -> Tuple[int, BchCode]:
    """Smallest-m BCH code shortened to dimension ell, correcting t errors.

    Returns (m, code); the code's length is ell + R(m, t).
    """
    m, _ = bch_select_parameters(ell, t, max_m)
    code = bch_construct(m, t)
    return m, code.shortened(code.k - ell)


def bch_generator_matrix(code: BchCode) -> BinaryMatrix:
    return code.generator_matrix()


def bch_encode(code: BchCode, message: Sequence[int]) -> Tuple[int, ...]:
    return code.encode(message)


def bch_decode(code: BchCode, received: Sequence[int]):
    return code.decode(received)
