"""Transversal S/S† layers that act as chosen logical phase gates.

Sign convention: +1 stands for S and -1 for S†, both physically and
logically. A logical sign a_j = +1 means X_j -> +i X_j Z_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .basis import BasisReport, SymplecticBasis, verify_basis
from .codes import SelfDualCssCode
from .errors import DimensionError, InconsistentBasisError, PreconditionError
from .gf2 import BitVector, solve_linear
from .pauli import PauliOperator, TransversalLayer, conjugate_by_layer


@dataclass(frozen=True)
class PhasePattern:
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise ValueError("phase pattern entries must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def all_plus(cls, n: int) -> PhasePattern:
        return cls((1,) * n)

    @classmethod
    def from_string(cls, text: str) -> PhasePattern:
        """Parse a compact string such as ``"++-+"``."""
        table = {"+": 1, "-": -1}
        try:
            return cls(tuple(table[ch] for ch in text.strip()))
        except KeyError as exc:
            raise ValueError(f"bad character {exc.args[0]!r} in sign string") from None

    @classmethod
    def from_vector(cls, v: BitVector) -> PhasePattern:
        """Bit 1 means -1."""
        return cls(tuple(-1 if b else 1 for b in v))

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, i: int) -> int:
        return self.signs[i]

    def __iter__(self):
        return iter(self.signs)

    def to_vector(self) -> BitVector:
        return BitVector.from_bits(1 if s == -1 else 0 for s in self.signs)

    def flipped(self, support: BitVector) -> PhasePattern:
        return PhasePattern(tuple(-s if support[i] else s for i, s in enumerate(self.signs)))

    def to_layer(self) -> TransversalLayer:
        return TransversalLayer.from_signs(self.signs)

    def render(self) -> str:
        return " ".join("S" if s == 1 else "S†" for s in self.signs)

    def compact(self) -> str:
        return "".join("+" if s == 1 else "-" for s in self.signs)

    def minus_positions(self, one_based: bool = True) -> list[int]:
        off = 1 if one_based else 0
        return [i + off for i, s in enumerate(self.signs) if s == -1]


def stabilizer_preserving_layer(code: SelfDualCssCode) -> PhasePattern:
    """S/S† layer mapping every g^x to g^x g^z with phase exactly 0.

    Row i needs an odd overlap with the S† positions when wt(g_i) = 2 mod 4
    and an even overlap when wt(g_i) = 0 mod 4; free variables are 0.
    """
    delta = BitVector.from_bits((g.weight % 4) // 2 for g in code.H.rows)
    v = solve_linear(code.H, delta)
    return PhasePattern.from_vector(v)


def layer_preserves_stabilizers(code: SelfDualCssCode, layer: PhasePattern) -> bool:
    tl = layer.to_layer()
    for g in code.H.rows:
        if conjugate_by_layer(PauliOperator.x_type(g), tl) != PauliOperator(g, g, 0):
            return False
        if conjugate_by_layer(PauliOperator.z_type(g), tl) != PauliOperator.z_type(g):
            return False
    return True


def _require_matched(basis: SymplecticBasis) -> None:
    if not basis.all_matched:
        bad = [j + 1 for j in range(basis.k) if not basis.is_matched(j)]
        raise PreconditionError(f"basis pairs {bad} are not matched")


def _check_sizes(code: SelfDualCssCode, basis: SymplecticBasis, layer: PhasePattern | None = None):
    if basis.n != code.n:
        raise DimensionError(f"basis on {basis.n} qubits, code on {code.n}")
    if layer is not None and len(layer) != code.n:
        raise DimensionError(f"layer has {len(layer)} entries, code has n = {code.n}")


def _signs_by_formula(basis: SymplecticBasis, layer: PhasePattern) -> list[int]:
    v = layer.to_vector()
    out = []
    for x, _ in basis.pairs:
        q = x.weight - 2 * (x & v).weight
        out.append(((q + 2) % 4) - 2)
    return out


def _signs_by_conjugation(basis: SymplecticBasis, layer: PhasePattern) -> list[int]:
    tl = layer.to_layer()
    out = []
    for j, (x, z) in enumerate(basis.pairs):
        img = conjugate_by_layer(PauliOperator.x_type(x), tl)
        if not (img.x == x and img.z == z and img.phase in (1, 3)):
            raise InconsistentBasisError(f"layer does not send X of pair {j + 1} to ±i X Z")
        zimg = conjugate_by_layer(PauliOperator.z_type(z), tl)
        if zimg != PauliOperator.z_type(z):
            raise InconsistentBasisError(f"layer does not fix Z of pair {j + 1}")
        out.append(1 if img.phase == 1 else -1)
    return out


def logical_phase_signs(code: SelfDualCssCode, basis: SymplecticBasis,
                        layer: PhasePattern) -> PhasePattern:
    """Logical S/S† pattern induced by a stabilizer-preserving S/S† layer.

    Computed from weights and overlaps, then confirmed by conjugating each
    logical X through the layer.
    """
    _check_sizes(code, basis, layer)
    _require_matched(basis)
    if not layer_preserves_stabilizers(code, layer):
        raise PreconditionError("layer does not preserve the stabilizer group")
    formula = _signs_by_formula(basis, layer)
    conj = _signs_by_conjugation(basis, layer)
    if formula != conj:
        raise InconsistentBasisError(f"formula signs {formula} disagree with conjugation {conj}")
    return PhasePattern(tuple(formula))


def synthesize_phase_layer(code: SelfDualCssCode, basis: SymplecticBasis,
                           target: PhasePattern | Sequence[int]) -> PhasePattern:
    """Physical S/S† layer realizing the logical sign pattern ``target``.

    Starts from the stabilizer-preserving layer and multiplies by logical Z_j
    (a sign flip on supp(l_j)) wherever the induced sign is wrong.
    """
    target = target if isinstance(target, PhasePattern) else PhasePattern(tuple(target))
    _check_sizes(code, basis)
    _require_matched(basis)
    if len(target) != basis.k:
        raise DimensionError(f"target has {len(target)} signs, basis has k = {basis.k}")
    layer = stabilizer_preserving_layer(code)
    current = logical_phase_signs(code, basis, layer)
    for j in range(basis.k):
        if current[j] != target[j]:
            layer = layer.flipped(basis.x(j))
    got = _signs_by_conjugation(basis, layer)
    if tuple(got) != target.signs:
        raise InconsistentBasisError(f"synthesized layer realizes {got}, wanted {list(target.signs)}")
    return layer


def hadamard_layer(code: SelfDualCssCode, basis: SymplecticBasis
                   ) -> tuple[TransversalLayer, BasisReport]:
    """All-H layer together with the report showing it acts as H on every logical qubit."""
    _check_sizes(code, basis)
    report = verify_basis(code, basis, require_matched=True)
    if not report.ok:
        raise InconsistentBasisError("all-H is not a logical transversal H in this basis: "
                                     + "; ".join(report.lines()), report)
    layer = TransversalLayer.uniform(code.n, "H")
    for j, (x, z) in enumerate(basis.pairs):
        if conjugate_by_layer(PauliOperator.z_type(z), layer) != PauliOperator.x_type(x):
            raise InconsistentBasisError(f"all-H does not send Z of pair {j + 1} to its X", report)
    return layer, report


def signs_iter(k: int) -> Iterable[PhasePattern]:
    for m in range(1 << k):
        yield PhasePattern(tuple(-1 if (m >> j) & 1 else 1 for j in range(k)))
