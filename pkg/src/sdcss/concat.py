"""Concatenated self-dual CSS codes and gates that stay transversal across levels.

Level ``l`` of an L-level code has ``N^(l) = k_1...k_l * n_{l+1}...n_L``
qubits, labelled by coordinates ``(c_1, ..., c_L)`` with ``c_i < k_i`` for
``i <= l`` and ``c_i < n_i`` otherwise. Flat indices are row-major, so the
last coordinate varies fastest. Level 0 is physical, level L is logical.

The code ``Q_l`` acts on coordinate l: a block is a set of level-(l-1)
qubits that differ only in that coordinate. Logical operators and
stabilizers are carried to level 0 by replacing each level-l bit with the
corresponding basis pattern of ``Q_l``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from .basis import SymplecticBasis, build_compatible_basis, existence_check, verify_basis
from .codes import DISTANCE_ENUM_LIMIT, SelfDualCssCode, min_distance_bruteforce
from .errors import (
    DimensionError,
    IncompatibleSupportError,
    SdcssError,
    UnsupportedLevelError,
    UnsupportedShapeError,
)
from .gf2 import BitVector
from .pauli import (
    CLIFFORD1_TABLE,
    PauliOperator,
    TransversalLayer,
    conjugate_by_layer,
    conjugate_by_transversal_cnot,
    reduce_word,
    symbol_word,
    symplectic_class,
    word_action,
    word_symbol,
)
from .phase import PhasePattern, synthesize_phase_layer

Pair = tuple[BitVector, BitVector]


@dataclass(frozen=True)
class LevelIndex:
    level: int
    coords: tuple[int, ...]


class LevelIndexMap:
    """Row-major bijection between ``range(N^(l))`` and level-l coordinates."""

    def __init__(self, level: int, dims: Sequence[int]):
        self.level = level
        self.dims = tuple(dims)
        self.size = prod(self.dims)
        strides = []
        s = 1
        for d in reversed(self.dims):
            strides.append(s)
            s *= d
        self.strides = tuple(reversed(strides))

    def __len__(self) -> int:
        return self.size

    def to_coords(self, flat: int) -> LevelIndex:
        if not 0 <= flat < self.size:
            raise IndexError(f"index {flat} outside level {self.level} (size {self.size})")
        return LevelIndex(self.level, tuple((flat // s) % d for s, d in zip(self.strides, self.dims)))

    def to_flat(self, coords: LevelIndex | Sequence[int]) -> int:
        if isinstance(coords, LevelIndex):
            coords = coords.coords
        if len(coords) != len(self.dims):
            raise DimensionError(f"need {len(self.dims)} coordinates")
        for c, d in zip(coords, self.dims):
            if not 0 <= c < d:
                raise IndexError(f"coordinate {c} outside range {d}")
        return sum(c * s for c, s in zip(coords, self.strides))

    def __iter__(self):
        return (self.to_coords(f) for f in range(self.size))


@dataclass(frozen=True)
class ConcatenatedCode:
    """``levels[0]`` is the innermost code Q_1; each level has an all-matched basis.

    ``stabilizers`` are physical supports shared by the X-type and Z-type
    generators. ``D_lb`` is the product of level distances, which is only a
    lower bound on the true distance.
    """

    levels: tuple[SelfDualCssCode, ...]
    bases: tuple[SymplecticBasis, ...]
    stabilizers: tuple[BitVector, ...] = ()
    logical_pairs: tuple[Pair, ...] = ()
    distances: tuple[int | None, ...] = ()

    @property
    def L(self) -> int:
        return len(self.levels)

    @property
    def N(self) -> int:
        return prod(c.n for c in self.levels)

    @property
    def K(self) -> int:
        return prod(c.k for c in self.levels)

    @property
    def D_lb(self) -> int | None:
        if any(d is None for d in self.distances):
            return None
        return prod(self.distances)

    def dims(self, level: int) -> tuple[int, ...]:
        self._check_level(level)
        return tuple(c.k if i < level else c.n for i, c in enumerate(self.levels))

    def width(self, level: int) -> int:
        return prod(self.dims(level))

    @property
    def level_widths(self) -> tuple[int, ...]:
        return tuple(self.width(l) for l in range(self.L + 1))

    def _check_level(self, level: int) -> None:
        if not 0 <= level <= self.L:
            raise IndexError(f"level {level} outside 0..{self.L}")

    def __str__(self) -> str:
        d = self.D_lb
        dtxt = f">={d}" if d is not None else "?"
        names = " o ".join(c.name or f"[[{c.n},{c.k}]]" for c in reversed(self.levels))
        return f"[[{self.N},{self.K},{dtxt}]] = {names}"

    # -- index helpers --------------------------------------------------------

    def _split(self, level: int) -> tuple[int, int, int, int]:
        """(prefix count, inner dim at level, lower dim, suffix stride) for Q_level blocks."""
        t = level - 1
        dims = self.dims(level)
        suffix = prod(dims[t + 1:])
        prefix = prod(dims[:t])
        code = self.levels[t]
        return prefix, code.k, code.n, suffix

    def blocks(self, level: int, upper: bool = True) -> list[list[int]]:
        """Flat indices of every Q_level block, at level ``level`` (upper) or ``level - 1``."""
        if not 1 <= level <= self.L:
            raise IndexError(f"code level {level} outside 1..{self.L}")
        prefix, k, n, suffix = self._split(level)
        width = k if upper else n
        out = []
        for pre in range(prefix):
            for rest in range(suffix):
                base = pre * width * suffix + rest
                out.append([base + c * suffix for c in range(width)])
        return out

    def lower(self, v: int, level: int, kind: str = "x") -> int:
        """Carry a packed level-``level`` support down to level 0."""
        for l in range(level, 0, -1):
            v = self._lower_once(v, l, kind)
        return v

    def _lower_once(self, v: int, level: int, kind: str) -> int:
        prefix, k, n, suffix = self._split(level)
        basis = self.bases[level - 1]
        pats = [(basis.x(j) if kind == "x" else basis.z(j)).support() for j in range(k)]
        out = 0
        while v:
            low = v & -v
            f = low.bit_length() - 1
            v ^= low
            rest = f % suffix
            c = (f // suffix) % k
            pre = f // (suffix * k)
            base = pre * n * suffix + rest
            for i in pats[c]:
                out ^= 1 << (base + i * suffix)
        return out


def _materialize(levels, bases) -> tuple[tuple[BitVector, ...], tuple[Pair, ...]]:
    cc = ConcatenatedCode(tuple(levels), tuple(bases))
    N = cc.N
    stabs = []
    for l in range(1, cc.L + 1):
        code = levels[l - 1]
        for blk in cc.blocks(l, upper=False):
            for g in code.H.rows:
                v = 0
                for i in g.support():
                    v |= 1 << blk[i]
                stabs.append(BitVector(N, cc.lower(v, l - 1, "x")))
    pairs = []
    for j in range(cc.K):
        pairs.append((BitVector(N, cc.lower(1 << j, cc.L, "x")),
                      BitVector(N, cc.lower(1 << j, cc.L, "z"))))
    return tuple(stabs), tuple(pairs)


def concatenate(codes: Sequence[SelfDualCssCode], bases: Sequence[SymplecticBasis] | None = None,
                compute_distance: bool = True) -> ConcatenatedCode:
    """Build Q_L o ... o Q_1 from ``codes = [Q_1, ..., Q_L]`` (innermost first).

    Each level needs a compatible basis. Missing bases are constructed;
    supplied ones are used as given so that broken inputs can be diagnosed
    with verify_multilevel.
    """
    codes = list(codes)
    if not codes:
        raise DimensionError("need at least one level")
    if bases is not None and len(bases) != len(codes):
        raise DimensionError("one basis per level is required")
    out_bases = []
    for i, code in enumerate(codes):
        verdict = existence_check(code)
        if not verdict.exists:
            raise UnsupportedLevelError(
                f"level {i + 1} ({code}) has no compatible symplectic basis", i + 1, verdict)
        if bases is not None and bases[i] is not None:
            if bases[i].n != code.n or bases[i].k != code.k:
                raise DimensionError(f"basis for level {i + 1} has the wrong shape")
            out_bases.append(bases[i])
        else:
            out_bases.append(build_compatible_basis(code))
    dists: list[int | None] = []
    for code in codes:
        if compute_distance and code.r + code.k <= DISTANCE_ENUM_LIMIT:
            dists.append(min_distance_bruteforce(code))
        else:
            dists.append(None)
    stabs, pairs = _materialize(codes, out_bases)
    return ConcatenatedCode(tuple(codes), tuple(out_bases), stabs, pairs, tuple(dists))


def level_index_map(cc: ConcatenatedCode, level: int) -> LevelIndexMap:
    return LevelIndexMap(level, cc.dims(level))


# -- layers at a given level ---------------------------------------------------

@dataclass(frozen=True)
class LevelLayer:
    """One single-qubit Clifford per level-``level`` qubit, or a two-block CNOT layer.

    Single-block symbols are reduced gate words such as ``"H"``, ``"S"``,
    ``"Sdg"`` or ``"H.S"`` (time order); Pauli symbols are taken up to
    global phase. Two-block layers use ``"CX"`` and ``"I"``.
    """

    level: int
    gates: tuple[str, ...]
    two_block: bool = False

    def __post_init__(self):
        gates = tuple(self.gates)
        if self.two_block:
            if set(gates) - {"CX", "I"}:
                raise ValueError("two-block layers only hold CX and I")
        else:
            gates = tuple(word_symbol(reduce_word(symbol_word(g))) for g in gates)
        object.__setattr__(self, "gates", gates)

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def support(self) -> list[int]:
        return [i for i, g in enumerate(self.gates) if g != "I"]

    def is_identity(self) -> bool:
        return not self.support

    def single_letters(self) -> bool:
        return all("." not in g for g in self.gates)

    def as_physical(self) -> TransversalLayer:
        if self.level != 0:
            raise ValueError(f"layer lives at level {self.level}, not the physical level")
        if self.two_block:
            return TransversalLayer(self.gates, cnot=True)
        if not self.single_letters():
            raise ValueError("layer holds composite gate words; use conjugate_by_words")
        return TransversalLayer(self.gates)

    def render(self) -> str:
        return " ".join("S†" if g == "Sdg" else g for g in self.gates)


def conjugate_by_words(p: PauliOperator, symbols: Sequence[str]) -> PauliOperator:
    """Conjugate by a per-qubit product of gate words (each word in time order)."""
    words = [symbol_word(s) for s in symbols]
    depth = max((len(w) for w in words), default=0)
    for s in range(depth):
        layer = TransversalLayer(tuple(w[s] if s < len(w) else "I" for w in words))
        p = conjugate_by_layer(p, layer)
    return p


def conjugate_level0(p: PauliOperator, layer: LevelLayer) -> PauliOperator:
    if layer.level != 0:
        raise ValueError("conjugation needs a physical layer")
    if layer.two_block:
        return conjugate_by_transversal_cnot(p, TransversalLayer(layer.gates, cnot=True))
    return conjugate_by_words(p, layer.gates)


_CLASS_REP: dict = {}
for _act, _w in sorted(CLIFFORD1_TABLE.items(), key=lambda kv: len(kv[1])):
    if set(_w) <= {"H", "S"}:
        _CLASS_REP.setdefault(symplectic_class(_w), _w)


def _split_class(word: tuple[str, ...]) -> tuple[tuple[str, ...], str]:
    """Write ``word`` as an H/S word followed by a Pauli."""
    rep = _CLASS_REP[symplectic_class(word)]
    target = word_action(word)
    for p in ("I", "X", "Y", "Z"):
        if word_action(rep + (p,)) == target:
            return rep, p
    raise AssertionError("Pauli completion not found")


def _pauli_pattern(code_basis: SymplecticBasis, letters: Sequence[str], n: int) -> list[str]:
    x = BitVector(n)
    z = BitVector(n)
    for j, p in enumerate(letters):
        if p in ("X", "Y"):
            x = x ^ code_basis.x(j)
        if p in ("Z", "Y"):
            z = z ^ code_basis.z(j)
    return ["IXZY"[x[i] + 2 * z[i]] for i in range(n)]


def _push_block_down(code: SelfDualCssCode, basis: SymplecticBasis,
                     symbols: list[str]) -> list[tuple[str, ...]] | None:
    words = [symbol_word(s) for s in symbols]
    n = code.n
    if all(not w for w in words):
        return [()] * n
    if all(w in (("S",), ("Sdg",)) for w in words):
        signs = PhasePattern(tuple(1 if w == ("S",) else -1 for w in words))
        pat = synthesize_phase_layer(code, basis, signs)
        return [("S",) if s == 1 else ("Sdg",) for s in pat]
    classes = {symplectic_class(w) for w in words}
    if len(classes) != 1:
        return None
    rep = _split_class(words[0])[0]
    paulis = [_split_class(w)[1] for w in words]
    out: list[tuple[str, ...]] = [()] * n
    for g in rep:
        if g == "H":
            low = ["H"] * n
        else:
            low = ["S" if s == 1 else "Sdg" for s in synthesize_phase_layer(code, basis, [1] * code.k)]
        out = [o + (lg,) for o, lg in zip(out, low)]
    pat = _pauli_pattern(basis, paulis, n)
    return [o + ((p,) if p != "I" else ()) for o, p in zip(out, pat)]


def push_down(cc: ConcatenatedCode, layer: LevelLayer) -> LevelLayer | None:
    """Express a level-m layer as a layer at level m-1, or None if no rule applies.

    A block of Q_m must be uniform up to Paulis (same Clifford modulo the
    Pauli group), all S/S†, or a CX/identity block for two-block layers.
    """
    m = layer.level
    if m == 0:
        return None
    if len(layer) != cc.width(m):
        raise DimensionError(f"layer has {len(layer)} gates, level {m} has {cc.width(m)} qubits")
    code, basis = cc.levels[m - 1], cc.bases[m - 1]
    out = ["I"] * cc.width(m - 1)
    for up, lo in zip(cc.blocks(m, True), cc.blocks(m, False)):
        symbols = [layer.gates[i] for i in up]
        if layer.two_block:
            if all(s == "I" for s in symbols):
                continue
            if all(s == "CX" for s in symbols):
                for i in lo:
                    out[i] = "CX"
                continue
            return None
        low = _push_block_down(code, basis, symbols)
        if low is None:
            return None
        for i, w in zip(lo, low):
            out[i] = word_symbol(reduce_word(w))
    return LevelLayer(m - 1, tuple(out), layer.two_block)


def _block_logical_action(code: SelfDualCssCode, basis: SymplecticBasis,
                          symbols: list[str]) -> list[tuple[str, ...]] | None:
    stab_rows = code.H.rows

    def in_dual_space(v: BitVector) -> bool:
        return code.in_dual(v)

    for g in stab_rows:
        for p in (PauliOperator.x_type(g), PauliOperator.z_type(g)):
            img = conjugate_by_words(p, symbols)
            if img.phase != 0 or not in_dual_space(img.x) or not in_dual_space(img.z):
                return None
    out = []
    for j in range(basis.k):
        action = []
        for p in (basis.logical_x(j), basis.logical_z(j)):
            img = conjugate_by_words(p, symbols)
            if not code.in_code(img.x) or not code.in_code(img.z):
                return None
            a = [img.x.dot(basis.z(jj)) for jj in range(basis.k)]
            b = [img.z.dot(basis.x(jj)) for jj in range(basis.k)]
            if any(a[jj] or b[jj] for jj in range(basis.k) if jj != j):
                return None
            action.append((a[j], b[j], img.phase))
        word = CLIFFORD1_TABLE.get((action[0], action[1]))
        if word is None:
            return None
        out.append(word)
    return out


def push_up(cc: ConcatenatedCode, layer: LevelLayer) -> LevelLayer | None:
    """Express a level-m layer as single-qubit gates at level m+1, if possible.

    Single-block layers are analysed by conjugating the logical operators
    and stabilizers of each Q_{m+1} block; the block qualifies when every
    logical qubit is mapped into itself.
    """
    m = layer.level
    if m >= cc.L:
        return None
    if len(layer) != cc.width(m):
        raise DimensionError(f"layer has {len(layer)} gates, level {m} has {cc.width(m)} qubits")
    code, basis = cc.levels[m], cc.bases[m]
    out = ["I"] * cc.width(m + 1)
    for up, lo in zip(cc.blocks(m + 1, True), cc.blocks(m + 1, False)):
        symbols = [layer.gates[i] for i in lo]
        if all(s == "I" for s in symbols):
            continue
        if layer.two_block:
            if all(s == "CX" for s in symbols):
                for i in up:
                    out[i] = "CX"
                continue
            return None
        words = _block_logical_action(code, basis, symbols)
        if words is None:
            return None
        for i, w in zip(up, words):
            out[i] = word_symbol(w)
    return LevelLayer(m + 1, tuple(out), layer.two_block)


def representations(cc: ConcatenatedCode, layer: LevelLayer) -> dict[int, LevelLayer]:
    """Every level at which the layer was found to be transversal, with its form there."""
    reps = {layer.level: layer}
    cur = layer
    while (nxt := push_down(cc, cur)) is not None:
        reps[nxt.level] = nxt
        cur = nxt
    cur = layer
    while (nxt := push_up(cc, cur)) is not None:
        reps[nxt.level] = nxt
        cur = nxt
    return dict(sorted(reps.items()))


def transversal_levels(cc: ConcatenatedCode, layer: LevelLayer) -> list[int]:
    return list(representations(cc, layer))


@dataclass
class LiftResult:
    top: LevelLayer
    lowest: LevelLayer
    levels: list[int]

    @property
    def physical(self) -> TransversalLayer | None:
        return self.lowest.as_physical() if self.lowest.level == 0 else None


LIFT_KINDS = ("H", "S", "X", "Y", "Z", "CNOT")


def _normalize_sets(cc: ConcatenatedCode, level: int, index_sets) -> list[list[int]]:
    dims = cc.dims(level)
    if len(index_sets) != cc.L:
        raise DimensionError(f"need {cc.L} index sets, got {len(index_sets)}")
    out = []
    for i, (s, d) in enumerate(zip(index_sets, dims)):
        s = sorted(set(s))
        if not s:
            raise UnsupportedShapeError(f"index set {i + 1} is empty")
        if s[0] < 0 or s[-1] >= d:
            raise IndexError(f"index set {i + 1} leaves range({d})")
        out.append(s)
    return out


def _supported_shape(cc: ConcatenatedCode, level: int, sets: list[list[int]]) -> bool:
    if level == 0:
        return True
    dims = cc.dims(level)
    if any(len(s) != 1 for s in sets[level:]):
        return False
    for m in range(level):
        if all(len(s) == 1 for s in sets[:m]) and all(len(sets[i]) == dims[i] for i in range(m, level)):
            return True
    return False


def level_layer(cc: ConcatenatedCode, level: int, gate: str, index_sets,
                signs: Sequence[int] | None = None) -> LevelLayer:
    """Place ``gate`` on the product of ``index_sets`` at ``level`` (no shape check).

    For ``gate="S"`` the optional ``signs`` give S (+1) or S† (-1) per
    selected qubit in row-major order.
    """
    sets = _normalize_sets(cc, level, index_sets)
    imap = level_index_map(cc, level)
    chosen = [imap.to_flat(c) for c in itertools.product(*sets)]
    two = gate == "CNOT"
    gates = ["I"] * imap.size
    if gate == "S":
        signs = list(signs) if signs is not None else [1] * len(chosen)
        if len(signs) != len(chosen):
            raise DimensionError(f"need {len(chosen)} signs, got {len(signs)}")
        for f, s in zip(chosen, signs):
            if s not in (1, -1):
                raise ValueError("signs must be +1 or -1")
            gates[f] = "S" if s == 1 else "Sdg"
    else:
        sym = "CX" if two else gate
        for f in chosen:
            gates[f] = sym
    return LevelLayer(level, tuple(gates), two)


def lift_transversal(cc: ConcatenatedCode, kind: str, level: int, index_sets,
                     signs: Sequence[int] | None = None) -> LiftResult:
    """Push a transversal gate placed at ``level`` down as far as it goes.

    H, S and CNOT gates must use the shape covered by the multilevel
    rule (singletons, then full ranges up to ``level``, then singletons);
    Pauli gates may use any index sets. ``lowest`` is the representation at
    the lowest level reached, which is level 0 exactly when the full-range
    part starts at level 1.
    """
    if kind not in LIFT_KINDS:
        raise ValueError(f"unknown gate kind {kind!r}; choose from {LIFT_KINDS}")
    cc._check_level(level)
    sets = _normalize_sets(cc, level, index_sets)
    if kind in ("H", "S", "CNOT") and not _supported_shape(cc, level, sets):
        raise UnsupportedShapeError(
            "index sets must be singletons up to some level m, full ranges from m+1 to the gate level,"
            " and singletons above it")
    top = level_layer(cc, level, kind, sets, signs)
    cur = top
    levels = [level]
    while (nxt := push_down(cc, cur)) is not None:
        cur = nxt
        levels.append(cur.level)
    return LiftResult(top, cur, sorted(levels))


@dataclass
class MergeResult:
    product: LevelLayer
    common_level: int
    lowest_level: int
    levels: list[int]


def merge_product(cc: ConcatenatedCode, layers: Sequence[LevelLayer]) -> MergeResult:
    """Multiply layers (``layers[0]`` acts first) and find where the product is transversal.

    Each factor is moved to the lowest level shared by all factors, the
    per-qubit gate words are multiplied and reduced, and the product is
    then pushed down and up again.
    """
    if not layers:
        raise ValueError("nothing to multiply")
    if len({l.two_block for l in layers}) != 1:
        raise IncompatibleSupportError("cannot mix single-block and two-block layers")
    reps = [representations(cc, l) for l in layers]
    common = set(reps[0])
    for r in reps[1:]:
        common &= set(r)
    if not common:
        raise IncompatibleSupportError(
            "the factors share no level at which all of them are transversal: "
            + ", ".join(str(sorted(r)) for r in reps))
    c = min(common)
    factors = [r[c] for r in reps]
    width = cc.width(c)
    if layers[0].two_block:
        gates = []
        for i in range(width):
            count = sum(f.gates[i] == "CX" for f in factors)
            gates.append("CX" if count % 2 else "I")
    else:
        gates = []
        for i in range(width):
            word: tuple[str, ...] = ()
            for f in factors:
                word += symbol_word(f.gates[i])
            gates.append(word_symbol(reduce_word(word)))
    product = LevelLayer(c, tuple(gates), layers[0].two_block)
    prod_reps = representations(cc, product)
    lowest = min(prod_reps)
    return MergeResult(prod_reps[lowest], c, lowest, list(prod_reps))


# -- verification ----------------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    level: int | None = None


@dataclass
class MultilevelReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failed_levels(self) -> list[int]:
        return sorted({c.level for c in self.checks if not c.ok and c.level is not None})

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.ok else "FAIL"
            tail = f": {c.detail}" if c.detail else ""
            out.append(f"{mark} {c.name}{tail}")
        return out


def _full_sets(cc: ConcatenatedCode) -> list[list[int]]:
    return [list(range(c.k)) for c in cc.levels]


def _check_h(cc: ConcatenatedCode) -> Check:
    res = lift_transversal(cc, "H", cc.L, _full_sets(cc))
    if res.lowest.level != 0:
        return Check("all-H", False, f"only reaches level {res.lowest.level}")
    layer = res.physical
    if layer.gates != ("H",) * cc.N:
        return Check("all-H", False, "physical form is not H on every qubit")
    for j, (x, z) in enumerate(cc.logical_pairs):
        if conjugate_by_layer(PauliOperator.x_type(x), layer) != PauliOperator.z_type(z):
            return Check("all-H", False, f"X of logical {j + 1} is not sent to its Z")
        if conjugate_by_layer(PauliOperator.z_type(z), layer) != PauliOperator.x_type(x):
            return Check("all-H", False, f"Z of logical {j + 1} is not sent to its X")
    for i, g in enumerate(cc.stabilizers):
        if conjugate_by_layer(PauliOperator.x_type(g), layer) != PauliOperator.z_type(g):
            return Check("all-H", False, f"stabilizer {i + 1} not preserved")
    return Check("all-H", True, f"{cc.K} logical pairs swapped with phase 0 on {cc.N} qubits")


def _check_s(cc: ConcatenatedCode, signs: Sequence[int]) -> Check:
    name = "S pattern " + "".join("+" if s == 1 else "-" for s in signs)
    res = lift_transversal(cc, "S", cc.L, _full_sets(cc), signs)
    if res.lowest.level != 0:
        return Check(name, False, f"only reaches level {res.lowest.level}")
    layer = res.physical
    for j, (x, z) in enumerate(cc.logical_pairs):
        img = conjugate_by_layer(PauliOperator.x_type(x), layer)
        want = PauliOperator(x, z, 1 if signs[j] == 1 else 3)
        if img != want:
            return Check(name, False, f"X of logical {j + 1} -> {img.label()}")
        if conjugate_by_layer(PauliOperator.z_type(z), layer) != PauliOperator.z_type(z):
            return Check(name, False, f"Z of logical {j + 1} not fixed")
    for i, g in enumerate(cc.stabilizers):
        if conjugate_by_layer(PauliOperator.x_type(g), layer) != PauliOperator(g, g, 0):
            return Check(name, False, f"stabilizer {i + 1} not preserved")
    return Check(name, True, "")


def _check_relations(cc: ConcatenatedCode) -> Check:
    stabs = cc.stabilizers
    for i, a in enumerate(stabs):
        for b in stabs[i:]:
            if a.dot(b):
                return Check("relations", False, "two stabilizers anticommute")
    for j, (x, z) in enumerate(cc.logical_pairs):
        if any(x.dot(g) or z.dot(g) for g in stabs):
            return Check("relations", False, f"logical {j + 1} anticommutes with a stabilizer")
        for jj, (_, z2) in enumerate(cc.logical_pairs):
            if x.dot(z2) != (j == jj):
                return Check("relations", False, f"X{j + 1} / Z{jj + 1} relation broken")
    return Check("relations", True, f"{len(stabs)} stabilizers, {cc.K} logical pairs")


def verify_multilevel(cc: ConcatenatedCode, samples: int = 16, seed: int = 0) -> MultilevelReport:
    """Check the transversal H and S claims on the materialized code.

    Sign patterns are enumerated exhaustively when 2^K <= samples, otherwise
    drawn at random from ``seed``. Failures are reported, never raised.
    """
    report = MultilevelReport()
    for i, (code, basis) in enumerate(zip(cc.levels, cc.bases), start=1):
        rep = verify_basis(code, basis, require_matched=True)
        report.checks.append(Check(f"basis level {i}", rep.ok, "; ".join(rep.lines()), i))

    def guarded(fn, name, *args):
        try:
            report.checks.append(fn(*args))
        except SdcssError as exc:
            lvl = getattr(exc, "level", None)
            report.checks.append(Check(name, False, f"{type(exc).__name__}: {exc}", lvl))

    guarded(_check_relations, "relations", cc)
    guarded(_check_h, "all-H", cc)
    K = cc.K
    if (1 << K) <= samples:
        patterns = [p.signs for p in (PhasePattern(tuple(-1 if (m >> j) & 1 else 1 for j in range(K)))
                                      for m in range(1 << K))]
    else:
        rng = random.Random(seed)
        patterns = [tuple([1] * K), tuple([-1] * K)]
        patterns += [tuple(rng.choice((1, -1)) for _ in range(K)) for _ in range(max(samples - 2, 0))]
    for signs in patterns:
        guarded(_check_s, "S pattern", cc, signs)
    # attribute level-independent failures to the first broken basis, if any
    broken = [c.level for c in report.checks if c.name.startswith("basis") and not c.ok]
    if broken:
        for c in report.checks:
            if not c.ok and c.level is None:
                c.level = broken[0]
    return report
