"""Dense GF(2) matrices with bit-packed rows.

Each row is one Python integer; bit j of row i is the entry (i, j).
Elimination and products are XOR word operations, which keeps the sizes
used here (hundreds of columns) far from needing anything fancier.

Text serialization: a header line "rows cols", then one line of '0'/'1'
characters per row.  The JSON form is a dict with the same three fields,
rows as strings.
"""

from __future__ import annotations

import json
from typing import Iterable, List, Sequence, Tuple

import numpy as np


class BinaryMatrix:
    """An immutable rows x cols matrix over GF(2)."""

    def __init__(self, rows: int, cols: int, data: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data = tuple(int(r) for r in data)
        if len(data) != rows:
            raise ValueError(f"expected {rows} rows, got {len(data)}")
        for i, r in enumerate(data):
            if r < 0 or (r >> cols) != 0:
                raise ValueError(f"row {i} has bits outside {cols} columns")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._rref_cache = None

    # --- constructors ---

    @classmethod
    def from_rows(cls, bit_rows: Sequence[Sequence[int]], cols: int | None = None) -> "BinaryMatrix":
        bit_rows = [list(r) for r in bit_rows]
        if cols is None:
            cols = len(bit_rows[0]) if bit_rows else 0
        data = []
        for r in bit_rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            mask = 0
            for j, b in enumerate(r):
                if b not in (0, 1):
                    raise ValueError("entries must be 0 or 1")
                mask |= b << j
            data.append(mask)
        return cls(len(bit_rows), cols, data)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BinaryMatrix":
        return cls.from_rows([[int(ch) for ch in line] for line in lines])

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(rows, cols, [0] * rows)

    # --- element access ---

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("matrix index out of range")
        return (self.data[i] >> j) & 1

    def row_mask(self, i: int) -> int:
        return self.data[i]

    def row_bits(self, i: int) -> Tuple[int, ...]:
        r = self.data[i]
        return tuple((r >> j) & 1 for j in range(self.cols))

    def to_lists(self) -> List[List[int]]:
        return [list(self.row_bits(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.uint8).reshape(self.rows, self.cols)

    # --- algebra ---

    def transpose(self) -> "BinaryMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BinaryMatrix(self.cols, self.rows, out)

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        return self.mat_mul(other)

    def mat_mul(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: ({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})"
            )
        brow = other.data
        out = []
        for a in self.data:
            acc = 0
            r = a
            while r:
                low = r & -r
                acc ^= brow[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return BinaryMatrix(self.rows, other.cols, out)

    def __xor__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return BinaryMatrix(self.rows, self.cols, [a ^ b for a, b in zip(self.data, other.data)])

    def row_reduce(self) -> Tuple["BinaryMatrix", int, Tuple[int, ...]]:
        """Reduced row echelon form.

        Returns (rref_matrix, rank, pivot_columns).  Deterministic: pivots
        are chosen left to right, first nonzero row wins.
        """
        rows = list(self.data)
        pivots = []
        rank = 0
        for col in range(self.cols):
            bit = 1 << col
            pivot_row = None
            for i in range(rank, len(rows)):
                if rows[i] & bit:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i] & bit:
                    rows[i] ^= rows[rank]
            pivots.append(col)
            rank += 1
            if rank == len(rows):
                break
        return BinaryMatrix(self.rows, self.cols, rows), rank, tuple(pivots)

    @property
    def rank(self) -> int:
        return self._rref()[1]

    def _rref(self):
        if self._rref_cache is None:
            self._rref_cache = self.row_reduce()
        return self._rref_cache

    def in_row_space(self, vector: Sequence[int]) -> bool:
        """Is the given bit vector a GF(2) combination of the rows?"""
        vector = list(vector)
        if len(vector) != self.cols:
            raise ValueError("vector length must equal column count")
        mask = 0
        for j, b in enumerate(vector):
            if b not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            mask |= b << j
        return self._contains_mask(mask)

    def _contains_mask(self, mask: int) -> bool:
        rref, rank, pivots = self._rref()
        for i, col in enumerate(pivots):
            if (mask >> col) & 1:
                mask ^= rref.data[i]
        return mask == 0

    # --- serialization ---

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            lines.append("".join(str(b) for b in self.row_bits(i)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError("header must be 'rows cols'")
        rows, cols = int(header[0]), int(header[1])
        body = lines[1:]
        if len(body) != rows:
            raise ValueError(f"expected {rows} row lines, got {len(body)}")
        data = []
        for i, line in enumerate(body):
            if len(line) != cols:
                raise ValueError(f"row {i} has length {len(line)}, expected {cols}")
            if set(line) - {"0", "1"}:
                raise ValueError(f"row {i} contains characters other than 0/1")
            data.append(int(line[::-1], 2) if line else 0)
        return cls(rows, cols, data)

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "data": ["".join(str(b) for b in self.row_bits(i)) for i in range(self.rows)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BinaryMatrix":
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
        if len(data) != rows:
            raise ValueError("row count mismatch")
        masks = []
        for line in data:
            if len(line) != cols:
                raise ValueError("ragged rows")
            masks.append(int(line[::-1], 2) if line else 0)
        return cls(rows, cols, masks)

    @classmethod
    def from_json(cls, text: str) -> "BinaryMatrix":
        return cls.from_json_dict(json.loads(text))

    # --- misc ---

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"
