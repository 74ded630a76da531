"""Dense GF(2) vectors and matrices packed into Python integers.

Bit ``i`` of the packed integer is coordinate ``i``; coordinate 0 is physical
qubit 1 in the usual 1-based qubit labels, so a support ``{1, 3, 5}`` becomes
the coordinates ``{0, 2, 4}``.  The 0/1 string rendering lists coordinate 0
first, i.e. the most significant index comes last.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ContainmentError, DimensionError, NoSolutionError


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class BitVector:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError(f"negative length {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise DimensionError(f"bits do not fit in length {self.n}")

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> BitVector:
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, i: int) -> BitVector:
        return cls(n, 1 << i)

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> BitVector:
        bits = 0
        n = 0
        for i, b in enumerate(values):
            if b & 1:
                bits |= 1 << i
            n = i + 1
        return cls(n, bits)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int], one_based: bool = False) -> BitVector:
        bits = 0
        for i in support:
            i = i - 1 if one_based else i
            if not 0 <= i < n:
                raise DimensionError(f"index {i} out of range for length {n}")
            bits ^= 1 << i
        return cls(n, bits)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.n
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        for _ in range(self.n):
            yield b & 1
            b >>= 1

    def _check(self, other: BitVector) -> None:
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.n, self.bits ^ other.bits)

    __add__ = __xor__

    def __and__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.n, self.bits & other.bits)

    def __or__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.n, self.bits | other.bits)

    def __invert__(self) -> BitVector:
        return BitVector(self.n, self.bits ^ ((1 << self.n) - 1))

    def __bool__(self) -> bool:
        return self.bits != 0

    def dot(self, other: BitVector) -> int:
        return dot_mod2(self, other)

    @property
    def weight(self) -> int:
        return _popcount(self.bits)

    def support(self, one_based: bool = False) -> list[int]:
        off = 1 if one_based else 0
        return [i + off for i in range(self.n) if (self.bits >> i) & 1]

    def to_string(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"BitVector({self.to_string()!r})"


def dot_mod2(a: BitVector, b: BitVector) -> int:
    """Return ``sum(a_i * b_i) mod 2``."""
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} vs {b.n}")
    return _popcount(a.bits & b.bits) & 1


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; rows are BitVectors of a common length."""

    rows: tuple[BitVector, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r.n != self.ncols:
                raise DimensionError(f"row of length {r.n} in matrix with {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], ncols: int | None = None) -> BitMatrix:
        rows = tuple(rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            ncols = rows[0].n
        return cls(rows, ncols)

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> BitMatrix:
        return cls.from_rows([BitVector.from_string(s) for s in rows], ncols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        return cls.from_rows([BitVector.from_bits(r) for r in rows], ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(tuple(BitVector(ncols) for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(BitVector.unit(n, i) for i in range(n)), n)

    @classmethod
    def empty(cls, ncols: int) -> BitMatrix:
        return cls((), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.rows)

    def __getitem__(self, i: int) -> BitVector:
        return self.rows[i]

    def int_rows(self) -> list[int]:
        return [r.bits for r in self.rows]

    def stack(self, other: BitMatrix) -> BitMatrix:
        if other.ncols != self.ncols:
            raise DimensionError("column count mismatch in stack")
        return BitMatrix(self.rows + other.rows, self.ncols)

    def append(self, v: BitVector) -> BitMatrix:
        return BitMatrix(self.rows + (v,), self.ncols)

    def matvec(self, v: BitVector) -> BitVector:
        """Return ``M v`` (one parity bit per row)."""
        if v.n != self.ncols:
            raise DimensionError(f"vector of length {v.n} for {self.ncols} columns")
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= (_popcount(r.bits & v.bits) & 1) << i
        return BitVector(self.nrows, bits)

    def matmul(self, other: BitMatrix) -> BitMatrix:
        """Return ``self @ other`` over GF(2)."""
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        orows = other.int_rows()
        for r in self.rows:
            acc = 0
            b = r.bits
            i = 0
            while b:
                if b & 1:
                    acc ^= orows[i]
                b >>= 1
                i += 1
            out.append(BitVector(other.ncols, acc))
        return BitMatrix(tuple(out), other.ncols)

    def transpose(self) -> BitMatrix:
        cols = []
        for j in range(self.ncols):
            bits = 0
            for i, r in enumerate(self.rows):
                if (r.bits >> j) & 1:
                    bits |= 1 << i
            cols.append(BitVector(self.nrows, bits))
        return BitMatrix(tuple(cols), self.nrows)

    def rank(self) -> int:
        return len(_echelon(self.int_rows())[1])

    def to_strings(self) -> list[str]:
        return [r.to_string() for r in self.rows]

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_strings()!r})"


def _echelon(rows: list[int]) -> tuple[list[int], list[int]]:
    """Fully reduced echelon form of packed rows with leftmost pivots.

    Returns (nonzero reduced rows in pivot order, pivot columns).
    """
    work = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    while work:
        # lowest set bit over all remaining rows is the leftmost pivot column
        low = min(r & -r for r in work)
        col = low.bit_length() - 1
        idx = next(i for i, r in enumerate(work) if r & low)
        prow = work.pop(idx)
        work = [r ^ prow if r & low else r for r in work]
        work = [r for r in work if r]
        out = [r ^ prow if r & low else r for r in out]
        out.append(prow)
        pivots.append(col)
    return out, pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form with deterministic leftmost pivot selection.

    The returned matrix has the same shape as ``m``; zero rows are moved to
    the bottom.
    """
    red, pivots = _echelon(m.int_rows())
    rows = [BitVector(m.ncols, r) for r in red]
    rows += [BitVector(m.ncols)] * (m.nrows - len(rows))
    return BitMatrix(tuple(rows), m.ncols), pivots


def rank(m: BitMatrix) -> int:
    return m.rank()


def in_rowspace(v: BitVector, m: BitMatrix) -> bool:
    if v.n != m.ncols:
        raise DimensionError(f"vector of length {v.n} for {m.ncols} columns")
    red, pivots = _echelon(m.int_rows())
    return _reduce(v.bits, red, pivots) == 0


def _reduce(x: int, red: list[int], pivots: list[int]) -> int:
    for r, c in zip(red, pivots):
        if (x >> c) & 1:
            x ^= r
    return x


def solve_linear(m: BitMatrix, d: BitVector) -> BitVector:
    """Return one ``v`` with ``M v = d``; free variables are fixed to 0.

    Raises NoSolutionError for an inconsistent system. The message says
    whether ``M`` is rank deficient, which is the only way that can happen.
    """
    if d.n != m.nrows:
        raise DimensionError(f"right-hand side has length {d.n}, matrix has {m.nrows} rows")
    n = m.ncols
    # augmented column sits at bit n
    aug = [r.bits | (((d.bits >> i) & 1) << n) for i, r in enumerate(m.rows)]
    red, pivots = _echelon(aug)
    if n in pivots:
        deficient = m.rank() < m.nrows
        raise NoSolutionError(
            "inconsistent system" + (" (matrix is rank deficient)" if deficient else "")
        )
    v = 0
    for r, c in zip(red, pivots):
        if (r >> n) & 1:
            v |= 1 << c
    return BitVector(n, v)


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    """Basis of ``{v : M v = 0}``, one vector per free column in column order."""
    n = m.ncols
    red, pivots = _echelon(m.int_rows())
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = 1 << f
        for r, c in zip(red, pivots):
            if (r >> f) & 1:
                v |= 1 << c
        basis.append(BitVector(n, v))
    return BitMatrix(tuple(basis), n)


def extend_to_coset_basis(sub: BitMatrix, full: BitMatrix) -> BitMatrix:
    """Vectors of rowspace(full) completing rowspace(sub) to rowspace(full).

    Rows of ``full`` are scanned in order and kept when independent of
    ``sub`` together with the rows already kept, so the output is
    deterministic and consists of rows of ``full``.
    """
    if sub.ncols != full.ncols:
        raise DimensionError("column count mismatch")
    fred, fpiv = _echelon(full.int_rows())
    for r in sub.rows:
        if _reduce(r.bits, fred, fpiv):
            raise ContainmentError(f"row {r} of sub is not in the row space of full")
    red, pivots = _echelon(sub.int_rows())
    kept = []
    for r in full.rows:
        x = _reduce(r.bits, red, pivots)
        if x:
            kept.append(r)
            red, pivots = _echelon(red + [x])
    return BitMatrix(tuple(kept), full.ncols)


def span(m: BitMatrix) -> set[int]:
    """All packed elements of the row space; only for small ranks."""
    red, _ = _echelon(m.int_rows())
    elems = {0}
    for r in red:
        elems |= {e ^ r for e in elems}
    return elems
