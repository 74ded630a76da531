"""Self-dual CSS codes (H_x = H_z = H) and a small built-in catalog."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import (
    DegenerateCodeError,
    InvalidCodeError,
    NotSelfDualError,
    ParameterError,
    TooLargeError,
    UnknownCodeError,
)
from .gf2 import BitMatrix, BitVector, _echelon, _reduce, extend_to_coset_basis, nullspace_basis

Pair = tuple[BitVector, BitVector]

DISTANCE_ENUM_LIMIT = 24


@dataclass(frozen=True)
class SelfDualCssCode:
    """A CSS code whose X and Z checks share the matrix ``H``.

    ``H`` spans the dual code D⊥; ``H`` together with ``coset_reps`` spans D.
    ``reference_bases`` maps a label to a tuple of (x, z) support pairs; the
    catalog uses it for bases that appear in the literature.
    """

    n: int
    k: int
    H: BitMatrix
    coset_reps: BitMatrix
    name: str = ""
    reference_bases: dict[str, tuple[Pair, ...]] = field(default_factory=dict, hash=False)
    redundant_rows_removed: int = 0

    @property
    def r(self) -> int:
        return self.H.nrows

    @property
    def params(self) -> tuple[int, int]:
        return (self.n, self.k)

    def __str__(self) -> str:
        label = f"[[{self.n},{self.k}]]"
        return f"{self.name} {label}" if self.name else label

    def stabilizer_rows(self) -> list[BitVector]:
        return list(self.H.rows)

    def in_dual(self, v: BitVector) -> bool:
        """Membership in D⊥ = rowspace(H)."""
        red, piv = _echelon(self.H.int_rows())
        return _reduce(v.bits, red, piv) == 0

    def in_code(self, v: BitVector) -> bool:
        """Membership in D = {v : H v = 0}."""
        return not any(v.dot(g) for g in self.H.rows)

    def with_reference_basis(self, label: str, pairs) -> SelfDualCssCode:
        refs = dict(self.reference_bases)
        refs[label] = tuple((x, z) for x, z in pairs)
        return SelfDualCssCode(self.n, self.k, self.H, self.coset_reps, self.name, refs,
                               self.redundant_rows_removed)


def from_check_matrix(H: BitMatrix, coset_reps: BitMatrix | None = None,
                      name: str = "") -> SelfDualCssCode:
    """Validate ``H`` and build the code.

    Redundant rows of ``H`` are dropped (first occurrence kept) with a
    warning. Missing coset representatives are derived from the null space
    of ``H`` by a leftmost-pivot extension.
    """
    n = H.ncols
    if H.nrows == 0 or not any(H.rows):
        raise InvalidCodeError("check matrix must have a nonzero row")
    rows = list(H.rows)
    for i, a in enumerate(rows):
        for j in range(i, len(rows)):
            if a.dot(rows[j]):
                what = f"row {i + 1} has odd weight" if i == j else f"rows {i + 1} and {j + 1} overlap oddly"
                raise NotSelfDualError(f"H is not self-orthogonal: {what}")

    kept: list[BitVector] = []
    red: list[int] = []
    piv: list[int] = []
    for g in rows:
        x = _reduce(g.bits, red, piv)
        if x:
            kept.append(g)
            red, piv = _echelon(red + [x])
    removed = len(rows) - len(kept)
    if removed:
        warnings.warn(f"removed {removed} linearly dependent row(s) from H", stacklevel=2)
    H = BitMatrix(tuple(kept), n)
    r = len(kept)
    k = n - 2 * r
    if k < 1:
        raise DegenerateCodeError(f"code encodes k = {k} logical qubits")

    if coset_reps is None:
        coset_reps = extend_to_coset_basis(H, nullspace_basis(H))
    else:
        if coset_reps.ncols != n:
            raise InvalidCodeError(f"coset representatives have length {coset_reps.ncols}, expected {n}")
        for j, h in enumerate(coset_reps.rows):
            for i, g in enumerate(H.rows):
                if h.dot(g):
                    raise InvalidCodeError(f"coset rep {j + 1} is not orthogonal to row {i + 1} of H")
        if coset_reps.nrows != k:
            raise InvalidCodeError(f"expected {k} coset representatives, got {coset_reps.nrows}")
        if BitMatrix(H.rows + coset_reps.rows, n).rank() != r + k:
            raise InvalidCodeError("coset representatives are not independent modulo rowspace(H)")
    return SelfDualCssCode(n, k, H, coset_reps, name, {}, removed)


def hamming_code(m: int) -> SelfDualCssCode:
    """Quantum Hamming code [[2^m - 1, 2^m - 1 - 2m, 3]]."""
    if m < 3:
        raise ParameterError(f"m must be >= 3 (m = {m} leaves no logical qubit)")
    n = (1 << m) - 1
    rows = []
    for j in range(m):
        bits = 0
        for i in range(1, n + 1):
            if (i >> j) & 1:
                bits |= 1 << (i - 1)
        rows.append(BitVector(n, bits))
    return from_check_matrix(BitMatrix(tuple(rows), n), name=f"hamming{n}")


def _vec(n: int, support) -> BitVector:
    return BitVector.from_support(n, support, one_based=True)


_GAUGE15 = [
    ((3, 7, 11, 15), (12, 13, 14, 15)),
    ((12, 13, 14, 15), (3, 7, 11, 15)),
    ((5, 7, 13, 15), (10, 11, 14, 15)),
    ((10, 11, 14, 15), (5, 7, 13, 15)),
    ((9, 11, 13, 15), (6, 7, 14, 15)),
    ((6, 7, 14, 15), (9, 11, 13, 15)),
    (tuple(range(1, 16)), tuple(range(1, 16))),
]

# new pair j = products of gauge pairs (x indices, z indices), 1-based
_NEW15 = [
    ((1, 7), (2, 7)),
    ((2, 7), (1, 7)),
    ((1, 2, 3, 7), (1, 2, 4, 7)),
    ((1, 2, 4, 7), (1, 2, 3, 7)),
    ((1, 2, 3, 4, 5, 7), (1, 2, 3, 4, 6, 7)),
    ((1, 2, 3, 4, 6, 7), (1, 2, 3, 4, 5, 7)),
    ((1, 2, 3, 4, 5, 6, 7), (1, 2, 3, 4, 5, 6, 7)),
]


def _qhamming15() -> SelfDualCssCode:
    n = 15
    gauge = [(_vec(n, xs), _vec(n, zs)) for xs, zs in _GAUGE15]
    compat = []
    for xi, zi in _NEW15:
        x = BitVector(n)
        z = BitVector(n)
        for j in xi:
            x = x ^ gauge[j - 1][0]
        for j in zi:
            z = z ^ gauge[j - 1][1]
        compat.append((x, z))
    H = hamming_code(4).H
    reps = BitMatrix(tuple(p[0] for p in gauge), n)
    code = from_check_matrix(H, reps, name="qhamming15")
    return code.with_reference_basis("gauge", gauge).with_reference_basis("compatible", compat)


def _c422() -> SelfDualCssCode:
    return from_check_matrix(BitMatrix.from_strings(["1111"]), name="c422")


def _c622() -> SelfDualCssCode:
    H = BitMatrix.from_strings(["110011", "001111"])
    l1, l2 = BitVector.from_string("101010"), BitVector.from_string("010101")
    code = from_check_matrix(H, BitMatrix((l1, l2), 6), name="c622")
    return code.with_reference_basis("compatible", [(l1, l1), (l2, l2)])


def _steane7() -> SelfDualCssCode:
    ones = BitVector.ones(7)
    code = from_check_matrix(hamming_code(3).H, BitMatrix((ones,), 7), name="steane7")
    return code.with_reference_basis("compatible", [(ones, ones)])


_CATALOG = {
    "qhamming15": _qhamming15,
    "c422": _c422,
    "c622": _c622,
    "steane7": _steane7,
}

CATALOG_KEYS = tuple(_CATALOG)


def builtin(name: str) -> SelfDualCssCode:
    try:
        factory = _CATALOG[name]
    except KeyError:
        raise UnknownCodeError(f"unknown catalog code {name!r}; known: {', '.join(_CATALOG)}") from None
    return factory()


def min_distance_bruteforce(code: SelfDualCssCode) -> int:
    """Minimum weight of D minus D⊥ by enumerating every element of D."""
    r, k = code.r, code.k
    if r + k > DISTANCE_ENUM_LIMIT:
        raise TooLargeError(
            f"enumeration needs 2^{r + k} codewords; limit is r + k <= {DISTANCE_ENUM_LIMIT}"
        )
    g_rows = code.H.int_rows()
    stab = [0]
    for g in g_rows:
        stab += [s ^ g for s in stab]
    reps = code.coset_reps.int_rows()
    best = code.n + 1
    logical = [0]
    for h in reps:
        logical += [b ^ h for b in logical]
    for b in logical[1:]:
        w = min((b ^ s).bit_count() for s in stab)
        best = min(best, w)
    return best
