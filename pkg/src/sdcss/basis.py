"""Compatible symplectic bases for self-dual CSS codes.

A basis is a list of k pairs (lx, lz) of binary vectors, one per logical
qubit. It is compatible when every pair is *matched* (lx == lz), which is
what makes all-H and S/S† layers act transversally on the logical qubits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .codes import SelfDualCssCode
from .errors import BasisConstructionError, DimensionError, MergeError, UnsupportedCodeError
from .gf2 import BitMatrix, BitVector
from .pauli import PauliOperator, TransversalLayer, conjugate_by_layer

Pair = tuple[BitVector, BitVector]


def _classify(pairs: Sequence[Pair]) -> tuple[int | None, ...]:
    out: list[int | None] = []
    for j, (x, z) in enumerate(pairs):
        if x == z:
            out.append(j)
            continue
        partner = None
        for jj, (x2, z2) in enumerate(pairs):
            if jj != j and x == z2 and x2 == z:
                partner = jj
                break
        out.append(partner)
    return tuple(out)


@dataclass(frozen=True)
class SymplecticBasis:
    """Pairs of logical operator supports plus their support structure.

    ``structure[j]`` is ``j`` for a matched pair, the partner index for a
    crossed pair, and ``None`` when neither pattern applies.
    """

    pairs: tuple[Pair, ...]
    structure: tuple[int | None, ...] = ()

    def __post_init__(self):
        pairs = tuple((x, z) for x, z in self.pairs)
        if pairs:
            n = pairs[0][0].n
            if any(x.n != n or z.n != n for x, z in pairs):
                raise DimensionError("basis vectors differ in length")
        object.__setattr__(self, "pairs", pairs)
        if not self.structure:
            object.__setattr__(self, "structure", _classify(pairs))
        elif len(self.structure) != len(pairs):
            raise DimensionError("structure length does not match pair count")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Pair]) -> SymplecticBasis:
        return cls(tuple(pairs))

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def n(self) -> int:
        return self.pairs[0][0].n if self.pairs else 0

    def x(self, j: int) -> BitVector:
        return self.pairs[j][0]

    def z(self, j: int) -> BitVector:
        return self.pairs[j][1]

    def is_matched(self, j: int) -> bool:
        return self.structure[j] == j

    def is_crossed(self, j: int) -> bool:
        p = self.structure[j]
        return p is not None and p != j

    @property
    def matched(self) -> list[int]:
        return [j for j in range(self.k) if self.is_matched(j)]

    @property
    def crossed(self) -> list[int]:
        return [j for j in range(self.k) if self.is_crossed(j)]

    @property
    def u(self) -> int:
        return len(self.matched)

    @property
    def v(self) -> int:
        return len(self.crossed) // 2

    @property
    def all_matched(self) -> bool:
        return all(self.is_matched(j) for j in range(self.k))

    def logical_x(self, j: int) -> PauliOperator:
        return PauliOperator.x_type(self.pairs[j][0])

    def logical_z(self, j: int) -> PauliOperator:
        return PauliOperator.z_type(self.pairs[j][1])

    def class_label(self, j: int) -> str:
        p = self.structure[j]
        if p == j:
            return "matched"
        if p is None:
            return "none"
        return f"crossed({p + 1})"

    def x_matrix(self) -> BitMatrix:
        return BitMatrix(tuple(p[0] for p in self.pairs), self.n)

    def z_matrix(self) -> BitMatrix:
        return BitMatrix(tuple(p[1] for p in self.pairs), self.n)


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    witness: BitVector | None = None
    witness_index: int | None = None

    def __bool__(self) -> bool:
        return self.exists


def existence_check(code: SelfDualCssCode, reps: BitMatrix | None = None) -> ExistenceVerdict:
    """A compatible basis exists iff some coset representative has odd weight."""
    reps = code.coset_reps if reps is None else reps
    for j, h in enumerate(reps.rows):
        if h.dot(h):
            return ExistenceVerdict(True, h, j)
    return ExistenceVerdict(False)


def symplectic_gram_schmidt(h: Sequence[BitVector]) -> SymplecticBasis:
    """Gram-Schmidt over GF(2) with the dot product, tailored to self-dual codes.

    Each round either emits a matched pair from the first odd-weight w_p, or
    (if every w has even weight) a crossed couple built from w_1 and the
    first w_p with w_1 . w_p = 1. The remaining vectors are then made
    orthogonal to what was emitted.
    """
    w = list(h)
    pairs: list[Pair] = []
    structure: list[int] = []
    while w:
        p = next((i for i, v in enumerate(w) if v.dot(v)), None)
        if p is not None:
            wp = w[p]
            m = len(pairs)
            pairs.append((wp, wp))
            structure.append(m)
            w = [wq ^ wp if wq.dot(wp) else wq for i, wq in enumerate(w) if i != p]
            continue
        w1 = w[0]
        p = next((i for i in range(1, len(w)) if w1.dot(w[i])), None)
        if p is None:
            raise BasisConstructionError(
                "no vector with odd self-dot and none pairing with w_1: input is not independent modulo D-perp"
            )
        wp = w[p]
        m = len(pairs)
        pairs += [(w1, wp), (wp, w1)]
        structure += [m + 1, m]
        rest = []
        for i, wq in enumerate(w):
            if i in (0, p):
                continue
            nq = wq
            if wq.dot(w1):
                nq = nq ^ wp
            if wq.dot(wp):
                nq = nq ^ w1
            rest.append(nq)
        w = rest
    return SymplecticBasis(tuple(pairs), tuple(structure))


def merge_triple(basis: SymplecticBasis, a: int, b: int, c: int) -> SymplecticBasis:
    """Turn matched pair ``a`` and crossed couple ``(b, c)`` into three matched pairs."""
    if len({a, b, c}) != 3:
        raise MergeError(f"indices must be distinct, got {(a, b, c)}")
    if not basis.is_matched(a):
        raise MergeError(f"pair {a} is not matched")
    if basis.structure[b] != c or basis.structure[c] != b:
        raise MergeError(f"pairs {b} and {c} are not a crossed couple")
    ax, az = basis.pairs[a]
    bx, bz = basis.pairs[b]
    cx, cz = basis.pairs[c]
    pairs = list(basis.pairs)
    pairs[a] = (ax ^ bx ^ cx, az ^ bz ^ cz)
    pairs[b] = (ax ^ bx, az ^ cz)
    pairs[c] = (ax ^ cx, az ^ bz)
    structure = list(basis.structure)
    structure[a], structure[b], structure[c] = a, b, c
    return SymplecticBasis(tuple(pairs), tuple(structure))


def build_compatible_basis(code: SelfDualCssCode, reps: BitMatrix | None = None) -> SymplecticBasis:
    """Construct an all-matched basis or raise UnsupportedCodeError."""
    reps = code.coset_reps if reps is None else reps
    verdict = existence_check(code, reps)
    if not verdict.exists:
        raise UnsupportedCodeError(
            f"{code} has no compatible symplectic basis: every coset representative has even weight",
            verdict,
        )
    order = [verdict.witness_index] + [j for j in range(reps.nrows) if j != verdict.witness_index]
    basis = symplectic_gram_schmidt([reps.rows[j] for j in order])
    while not basis.all_matched:
        crossed = basis.crossed
        if not basis.matched or not crossed:
            raise BasisConstructionError("cannot merge: no matched pair or no crossed couple")
        b = crossed[0]
        basis = merge_triple(basis, basis.matched[0], b, basis.structure[b])
    return basis


@dataclass(frozen=True)
class Violation:
    kind: str
    index: int | None
    detail: str

    def __str__(self) -> str:
        where = f"pair {self.index + 1}: " if self.index is not None else ""
        return f"[{self.kind}] {where}{self.detail}"


@dataclass
class BasisReport:
    ok: bool
    violations: list[Violation] = field(default_factory=list)
    swaps: list[tuple[int, int]] = field(default_factory=list)

    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]

    def lines(self) -> list[str]:
        if self.ok:
            return ["basis OK"]
        return [str(v) for v in self.violations]


def verify_basis(code: SelfDualCssCode, basis: SymplecticBasis,
                 require_matched: bool = True) -> BasisReport:
    """Check the symplectic relations and, optionally, compatibility with all-H.

    Never raises on an invalid basis; problems are returned as violations.
    With ``require_matched`` the all-H layer is applied to every logical X
    and the image must be the paired logical Z exactly (phase included).
    ``swaps`` lists ``(j, j')`` whenever X_j is sent to Z_j' with j' != j.
    """
    if basis.n != code.n:
        raise DimensionError(f"basis acts on {basis.n} qubits, code on {code.n}")
    out: list[Violation] = []
    k = basis.k
    if k != code.k:
        out.append(Violation("count", None, f"{k} pairs for a code with k = {code.k}"))
    for j, (x, z) in enumerate(basis.pairs):
        if not x.dot(z):
            out.append(Violation("anticommute", j, "X and Z commute"))
        for jj, (_, z2) in enumerate(basis.pairs):
            if jj != j and x.dot(z2):
                out.append(Violation("commute", j, f"X anticommutes with Z of pair {jj + 1}"))
        for i, g in enumerate(code.H.rows):
            if x.dot(g) or z.dot(g):
                out.append(Violation("stabilizer", j, f"anticommutes with stabilizer row {i + 1}"))
    r = code.r
    for label, mat in (("X", basis.x_matrix()), ("Z", basis.z_matrix())):
        if k and BitMatrix(code.H.rows + mat.rows, code.n).rank() != r + code.k:
            out.append(Violation("span", None, f"stabilizers and logical {label} do not span D"))
    expected = _classify(basis.pairs)
    for j in range(k):
        if basis.structure[j] != expected[j]:
            out.append(Violation("structure", j, f"declared {basis.class_label(j)} does not match supports"))

    swaps: list[tuple[int, int]] = []
    if require_matched and k:
        all_h = TransversalLayer.uniform(code.n, "H")
        for j, (x, z) in enumerate(basis.pairs):
            img = conjugate_by_layer(PauliOperator.x_type(x), all_h)
            if img == PauliOperator.z_type(z):
                continue
            target = next((jj for jj, (_, z2) in enumerate(basis.pairs) if z2 == x), None)
            if target is not None:
                swaps.append((j, target))
                out.append(Violation("support", j,
                                     f"supp(X) != supp(Z); all-H sends X to the Z of pair {target + 1}"))
            else:
                out.append(Violation("support", j, "supp(X) != supp(Z); all-H image is not a basis Z"))
        for i, g in enumerate(code.H.rows):
            img = conjugate_by_layer(PauliOperator.x_type(g), all_h)
            if img != PauliOperator.z_type(g):
                out.append(Violation("stabilizer", None, f"all-H does not fix stabilizer row {i + 1}"))
    return BasisReport(not out, out, swaps)


def same_logical_quotient(code: SelfDualCssCode, a: SymplecticBasis, b: SymplecticBasis) -> bool:
    """Whether both bases generate the same groups modulo the stabilizers."""
    H = code.H.rows
    n = code.n
    for get in (SymplecticBasis.x_matrix, SymplecticBasis.z_matrix):
        ra = BitMatrix(H + get(a).rows, n).rank()
        rb = BitMatrix(H + get(b).rows, n).rank()
        both = BitMatrix(H + get(a).rows + get(b).rows, n).rank()
        if not (ra == rb == both):
            return False
    return True
