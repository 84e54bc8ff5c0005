"""Arithmetic substrate: polynomials over GF(2), GF(2^m) tables, and GF(4).

Polynomials over GF(2) are integer bit masks: bit i holds the coefficient
of x^i, so 0b100101 is x^5 + x^2 + 1.  Field elements of GF(2^m) are
integers in [0, 2^m) whose bits are coordinates in the polynomial basis
{1, alpha, ..., alpha^(m-1)} with alpha = x a root of the primitive
polynomial; multiplication goes through log/antilog tables.

GF(4) elements are the integers 0..3 under the bit-pair encoding

    0 <-> (0, 0)    1 <-> (1, 0)    omega <-> (0, 1)    omega-bar <-> (1, 1)

with value = x_bit + 2 * z_bit, which is exactly the Pauli correspondence
I -> 0, X -> 1, Z -> omega, Y -> omega-bar used by the stabilizer layer.
Addition is XOR of encodings; the trace inner product of two GF(4) vectors
is the commutation indicator of the underlying Pauli operators.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

# Primitive polynomials over GF(2), one per supported extension degree.
# Masks are bit-reversible to the usual textbook tables; each is checked
# for primitivity when the field tables are built, so a typo here cannot
# survive construction.
PRIMITIVE_POLYNOMIALS = {
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10001001,           # x^7 + x^3 + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011, # x^16 + x^12 + x^3 + x + 1
}

MAX_EXTENSION_DEGREE = max(PRIMITIVE_POLYNOMIALS)


class BinaryPolynomial:
    """A polynomial over GF(2), stored as an integer bit mask.

    Instances are immutable.  Arithmetic (`+`, `*`, `divmod`, `%`, `//`)
    is carry-less; `+` and `-` coincide.
    """

    __slots__ = ("mask",)

    def __init__(self, mask: int):
        if mask < 0:
            raise ValueError("polynomial mask must be nonnegative")
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryPolynomial is immutable")

    @classmethod
    def zero(cls) -> "BinaryPolynomial":
        return cls(0)

    @classmethod
    def one(cls) -> "BinaryPolynomial":
        return cls(1)

    @classmethod
    def x_power(cls, k: int) -> "BinaryPolynomial":
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        return cls(1 << k)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "BinaryPolynomial":
        """Build from coefficients listed lowest degree first."""
        mask = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ValueError("coefficients must be 0 or 1")
            mask |= c << i
        return cls(mask)

    @classmethod
    def from_hex(cls, text: str) -> "BinaryPolynomial":
        return cls(int(text, 16))

    def to_hex(self) -> str:
        return hex(self.mask)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return self.mask.bit_length() - 1

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    def coefficients(self) -> Tuple[int, ...]:
        """Coefficients lowest degree first; () for the zero polynomial."""
        if self.mask == 0:
            return ()
        return tuple((self.mask >> i) & 1 for i in range(self.degree + 1))

    def __add__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(self.mask ^ other.mask)

    __sub__ = __add__

    def __mul__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        a, b = self.mask, other.mask
        if a == 0 or b == 0:
            return BinaryPolynomial(0)
        # keep the inner loop over the sparser operand
        if a.bit_count() > b.bit_count():
            a, b = b, a
        acc = 0
        while a:
            low = a & -a
            acc ^= b << (low.bit_length() - 1)
            a ^= low
        return BinaryPolynomial(acc)

    def __divmod__(self, other: "BinaryPolynomial"):
        if other.mask == 0:
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.mask
        quot = 0
        dd = other.degree
        while rem.bit_length() - 1 >= dd:
            shift = rem.bit_length() - 1 - dd
            rem ^= other.mask << shift
            quot |= 1 << shift
        return BinaryPolynomial(quot), BinaryPolynomial(rem)

    def __mod__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return divmod(self, other)[0]

    def gcd(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a

    def eval_in(self, field: "GF2m", element: int) -> int:
        """Evaluate at an element of GF(2^m), returning a field element."""
        acc = 0
        for i in range(self.degree, -1, -1):
            acc = field.mul(acc, element)
            if (self.mask >> i) & 1:
                acc ^= 1
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryPolynomial) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(("BinaryPolynomial", self.mask))

    def __str__(self) -> str:
        if self.mask == 0:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            if (self.mask >> i) & 1:
                terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"BinaryPolynomial({self.to_hex()})"


def poly_lcm(polys: Sequence[BinaryPolynomial]) -> BinaryPolynomial:
    """Least common multiple of nonzero polynomials over GF(2)."""
    if not polys:
        raise ValueError("poly_lcm needs at least one polynomial")
    acc = BinaryPolynomial.one()
    for p in polys:
        if p.is_zero:
            raise ValueError("poly_lcm is undefined for the zero polynomial")
        g = acc.gcd(p)
        acc = (acc // g) * p
    return acc


class GF2m:
    """GF(2^m) with log/antilog tables over a primitive polynomial.

    Parameters
    ----------
    m:
        Extension degree, 2 <= m <= 16.
    primitive_polynomial:
        Degree-m polynomial defining the field, as a BinaryPolynomial or a
        bit mask.  Defaults to the entry in PRIMITIVE_POLYNOMIALS.  The
        table build verifies primitivity (alpha must have order 2^m - 1)
        and raises ValueError otherwise.
    """

    def __init__(self, m: int, primitive_polynomial=None):
        if not 2 <= m <= MAX_EXTENSION_DEGREE:
            raise ValueError(f"m must be in [2, {MAX_EXTENSION_DEGREE}], got {m}")
        if primitive_polynomial is None:
            primitive_polynomial = BinaryPolynomial(PRIMITIVE_POLYNOMIALS[m])
        elif isinstance(primitive_polynomial, int):
            primitive_polynomial = BinaryPolynomial(primitive_polynomial)
        if primitive_polynomial.degree != m:
            raise ValueError("primitive polynomial must have degree m")
        self.m = m
        self.primitive_polynomial = primitive_polynomial
        self.order = 1 << m
        self.group_order = self.order - 1  # multiplicative order of alpha

        n = self.group_order
        log = [0] * self.order  # log[0] unused
        antilog = [0] * (2 * n)  # doubled so mul can skip a mod
        val = 1
        reduce_mask = primitive_polynomial.mask ^ (1 << m)  # low m bits
        for i in range(n):
            if val == 1 and i != 0:
                raise ValueError(
                    f"{primitive_polynomial} is not primitive: alpha has order {i}"
                )
            antilog[i] = val
            antilog[i + n] = val
            log[val] = i
            val <<= 1
            if val & self.order:
                val = (val ^ self.order) ^ reduce_mask
        if val != 1:
            raise ValueError(f"{primitive_polynomial} is not irreducible over GF(2)")
        self._log = log
        self._antilog = antilog

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._antilog[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._antilog[self.group_order - self._log[a]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero field element")
        if a == 0:
            return 0
        return self._antilog[self._log[a] - self._log[b] + self.group_order]

    def pow_alpha(self, i: int) -> int:
        """alpha**i for any integer i (exponent taken mod 2^m - 1)."""
        return self._antilog[i % self.group_order]

    def log_of(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero is undefined")
        return self._log[a]

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, primitive={self.primitive_polynomial.to_hex()})"


def cyclotomic_cosets(m: int) -> List[List[int]]:
    """2-cyclotomic cosets mod 2^m - 1, each sorted, ordered by leader.

    Every coset is closed under doubling mod 2^m - 1; the coset {0} is
    included.  Coset sizes divide m and the cosets partition
    [0, 2^m - 2].
    """
    if m < 1:
        raise ValueError("m must be positive")
    n = (1 << m) - 1
    seen = [False] * n
    cosets: List[List[int]] = []
    for lead in range(n):
        if seen[lead]:
            continue
        coset = []
        e = lead
        while not seen[e]:
            seen[e] = True
            coset.append(e)
            e = (2 * e) % n
        cosets.append(sorted(coset))
    return cosets


def minimal_polynomial(field: GF2m, exponent: int) -> BinaryPolynomial:
    """Minimal polynomial of alpha**exponent over GF(2).

    Computed as prod_{c in coset(exponent)} (x - alpha^c), multiplied out
    in GF(2^m); the result must have all coefficients in GF(2), which is
    asserted rather than assumed.
    """
    n = field.group_order
    exponent %= n
    coset = []
    e = exponent
    while e not in coset:
        coset.append(e)
        e = (2 * e) % n
    # coefficients of the product live in the extension field until the end
    coeffs = [1]  # the constant polynomial 1, lowest degree first
    for c in coset:
        root = field.pow_alpha(c)
        # multiply coeffs by (x + root)
        nxt = [0] * (len(coeffs) + 1)
        for i, ci in enumerate(coeffs):
            if ci:
                nxt[i + 1] ^= ci
                nxt[i] ^= field.mul(ci, root)
        coeffs = nxt
    mask = 0
    for i, ci in enumerate(coeffs):
        if ci not in (0, 1):
            raise AssertionError("minimal polynomial left the prime field")
        mask |= ci << i
    return BinaryPolynomial(mask)


# --- GF(4) under the bit-pair encoding ------------------------------------

GF4_ZERO = 0
GF4_ONE = 1
GF4_OMEGA = 2
GF4_OMEGA_BAR = 3

_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
_GF4_CONJ = (0, 1, 3, 2)


def gf4_add(a: int, b: int) -> int:
    """Addition in GF(4); XOR of the bit-pair encodings."""
    return a ^ b


def gf4_mul(a: int, b: int) -> int:
    return _GF4_MUL[a][b]


def gf4_conjugate(a: int) -> int:
    """Conjugation (Frobenius) a -> a^2: swaps omega and omega-bar."""
    return _GF4_CONJ[a]


def gf4_trace_inner_product(xs: Sequence[int], ys: Sequence[int]) -> int:
    """Trace inner product sum_i tr(x_i * conj(y_i)) of two GF(4) vectors.

    Returns 0 or 1.  Under the Pauli correspondence this is 0 exactly when
    the two operators commute.
    """
    if len(xs) != len(ys):
        raise ValueError("vectors must have equal length")
    acc = 0
    for x, y in zip(xs, ys):
        acc ^= _GF4_MUL[x][_GF4_CONJ[y]] ^ _GF4_MUL[_GF4_CONJ[x]][y]
    # x*conj(y) + conj(x)*y is fixed by conjugation, so it lies in {0, 1}
    return acc
