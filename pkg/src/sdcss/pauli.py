"""Phase-tracked Pauli operators and their conjugation by Clifford layers.

Operators are kept in the canonical form ``i**phase * X**x Z**z`` (all X
factors to the left of all Z factors). With this convention ``Y = i X Z``,
so a lone ``Y`` has phase 1.

Besides the fast symbolic rules there is a dense-matrix oracle for small
qubit counts and a breadth-first closure over binary symplectic matrices,
which is how generated Clifford groups are sized modulo phases and Paulis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, SdcssError
from .gf2 import BitMatrix, BitVector, dot_mod2

SINGLE_QUBIT_GATES = ("I", "X", "Y", "Z", "H", "S", "Sdg")
_ALIASES = {"S†": "Sdg", "SDG": "Sdg", "sdg": "Sdg", "Sd": "Sdg", "id": "I"}
_INVERSE = {"I": "I", "X": "X", "Y": "Y", "Z": "Z", "H": "H", "S": "Sdg", "Sdg": "S"}
_PHASE_TOKENS = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_TOKEN_PHASES = {"+1": 0, "1": 0, "+": 0, "+i": 1, "i": 1, "-1": 2, "-": 2, "-i": 3}


def _pc(x: int) -> int:
    return x.bit_count()


def normalize_gate(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in SINGLE_QUBIT_GATES:
        raise ValueError(f"unknown single-qubit gate {name!r}")
    return name


@dataclass(frozen=True)
class PauliOperator:
    x: BitVector
    z: BitVector
    phase: int = 0

    def __post_init__(self):
        if self.x.n != self.z.n:
            raise DimensionError("x and z parts differ in length")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def n(self) -> int:
        return self.x.n

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(BitVector(n), BitVector(n))

    @classmethod
    def x_type(cls, v: BitVector, phase: int = 0) -> PauliOperator:
        return cls(v, BitVector(v.n), phase)

    @classmethod
    def z_type(cls, v: BitVector, phase: int = 0) -> PauliOperator:
        return cls(BitVector(v.n), v, phase)

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        """Parse ``"XIZY"`` or ``"-i XIZY"``; the token is relative to the letters.

        ``"+1 Y"`` is the Hermitian Y, stored canonically as phase 1.
        """
        parts = label.split()
        if len(parts) == 2:
            token, letters = parts
            if token not in _TOKEN_PHASES:
                raise ValueError(f"bad phase token {token!r}")
            extra = _TOKEN_PHASES[token]
        elif len(parts) == 1:
            letters, extra = parts[0], 0
        else:
            raise ValueError(f"cannot parse Pauli label {label!r}")
        x = z = 0
        ny = 0
        for i, ch in enumerate(letters):
            if ch == "X":
                x |= 1 << i
            elif ch == "Z":
                z |= 1 << i
            elif ch == "Y":
                x |= 1 << i
                z |= 1 << i
                ny += 1
            elif ch != "I":
                raise ValueError(f"bad Pauli letter {ch!r}")
        n = len(letters)
        return cls(BitVector(n, x), BitVector(n, z), extra + ny)

    def letters(self) -> str:
        out = []
        for i in range(self.n):
            xb, zb = self.x[i], self.z[i]
            out.append("IXZY"[xb + 2 * zb])
        return "".join(out)

    @property
    def letter_phase(self) -> int:
        """Phase exponent relative to the letter form (Y counted as Hermitian)."""
        return (self.phase - _pc(self.x.bits & self.z.bits)) % 4

    def label(self) -> str:
        return f"{_PHASE_TOKENS[self.letter_phase]} {self.letters()}"

    def __str__(self) -> str:
        return self.label()

    @property
    def is_hermitian(self) -> bool:
        return self.letter_phase in (0, 2)

    @property
    def weight(self) -> int:
        return _pc(self.x.bits | self.z.bits)

    def is_identity_up_to_phase(self) -> bool:
        return not self.x and not self.z

    def same_up_to_phase(self, other: PauliOperator) -> bool:
        return self.x == other.x and self.z == other.z

    def commutes_with(self, other: PauliOperator) -> bool:
        return (dot_mod2(self.x, other.z) ^ dot_mod2(self.z, other.x)) == 0

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return pauli_multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.x, self.z, self.phase + 2)

    def times_phase(self, k: int) -> PauliOperator:
        return PauliOperator(self.x, self.z, self.phase + k)

    def to_matrix(self) -> np.ndarray:
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        z = np.array([[1, 0], [0, -1]], dtype=complex)
        eye = np.eye(2, dtype=complex)
        mats = []
        for i in range(self.n):
            m = eye
            if self.x[i]:
                m = x
            if self.z[i]:
                m = m @ z
            mats.append(m)
        full = reduce(np.kron, mats, np.eye(1, dtype=complex))
        return (1j ** self.phase) * full


def pauli_multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    if a.n != b.n:
        raise DimensionError(f"size mismatch: {a.n} vs {b.n}")
    # Z^{z_a} X^{x_b} = (-1)^{z_a . x_b} X^{x_b} Z^{z_a}
    phase = a.phase + b.phase + 2 * dot_mod2(a.z, b.x)
    return PauliOperator(a.x ^ b.x, a.z ^ b.z, phase)


@dataclass(frozen=True)
class TransversalLayer:
    """One gate per qubit of a block, or a transversal CNOT between two blocks.

    For a single-block layer ``gates`` holds symbols from SINGLE_QUBIT_GATES.
    For a CNOT layer (``cnot=True``) ``gates`` holds ``"CX"`` or ``"I"`` per
    qubit position; position ``i`` couples qubit ``i`` of both blocks. The
    first block is the control unless ``reverse`` is set.
    """

    gates: tuple[str, ...]
    cnot: bool = False
    reverse: bool = False

    def __post_init__(self):
        if self.cnot:
            gates = tuple(self.gates)
            if set(gates) - {"CX", "I"}:
                raise ValueError("a CNOT layer carries no single-qubit gates")
        else:
            gates = tuple(normalize_gate(g) for g in self.gates)
            if self.reverse:
                raise ValueError("direction flag only applies to CNOT layers")
        object.__setattr__(self, "gates", gates)

    @property
    def n(self) -> int:
        return len(self.gates)

    @classmethod
    def uniform(cls, n: int, gate: str) -> TransversalLayer:
        return cls((normalize_gate(gate),) * n)

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> TransversalLayer:
        return cls(tuple("S" if s == 1 else "Sdg" for s in signs))

    @classmethod
    def cnot_layer(cls, n: int, support: Iterable[int] | None = None,
                   reverse: bool = False) -> TransversalLayer:
        if support is None:
            gates = ("CX",) * n
        else:
            sup = set(support)
            gates = tuple("CX" if i in sup else "I" for i in range(n))
        return cls(gates, cnot=True, reverse=reverse)

    def mask(self, gate: str) -> int:
        m = 0
        for i, g in enumerate(self.gates):
            if g == gate:
                m |= 1 << i
        return m

    def inverse(self) -> TransversalLayer:
        if self.cnot:
            return self
        return TransversalLayer(tuple(_INVERSE[g] for g in self.gates))

    def render(self) -> str:
        return " ".join("S†" if g == "Sdg" else g for g in self.gates)


def conjugate_by_layer(p: PauliOperator, layer: TransversalLayer) -> PauliOperator:
    """Return ``L P L^dagger`` for a single-block layer."""
    if layer.cnot:
        raise ValueError("use conjugate_by_transversal_cnot for CNOT layers")
    if p.n != layer.n:
        raise DimensionError(f"size mismatch: operator on {p.n}, layer on {layer.n}")
    x, z = p.x.bits, p.z.bits
    mh, ms, msd = layer.mask("H"), layer.mask("S"), layer.mask("Sdg")
    mx, my, mz = layer.mask("X"), layer.mask("Y"), layer.mask("Z")
    phase = p.phase
    # H: X<->Z, and XZ -> ZX = -XZ
    phase += 2 * _pc(x & z & mh)
    # S: X -> iXZ ; Sdg: X -> -iXZ
    phase += _pc(x & ms) - _pc(x & msd)
    # Pauli gates only flip signs of anticommuting factors
    phase += 2 * (_pc(z & mx) + _pc(x & mz) + _pc((x ^ z) & my))
    nx = (x & ~mh) | (z & mh)
    nz = (z & ~mh) | (x & mh)
    nz ^= x & (ms | msd)
    n = p.n
    return PauliOperator(BitVector(n, nx), BitVector(n, nz), phase)


def conjugate_by_transversal_cnot(p: PauliOperator, layer: TransversalLayer | None = None
                                  ) -> PauliOperator:
    """Conjugate an operator on two n-qubit blocks by a transversal CNOT.

    X parts are copied control -> target, Z parts target -> control. The
    canonical phase never changes.
    """
    if p.n % 2:
        raise DimensionError(f"odd total length {p.n} cannot hold two blocks")
    n = p.n // 2
    if layer is None:
        layer = TransversalLayer.cnot_layer(n)
    if not layer.cnot or layer.n != n:
        raise DimensionError("need a CNOT layer matching the block length")
    m = layer.mask("CX")
    lo = (1 << n) - 1
    x1, x2 = p.x.bits & lo, p.x.bits >> n
    z1, z2 = p.z.bits & lo, p.z.bits >> n
    if not layer.reverse:
        x2 ^= x1 & m
        z1 ^= z2 & m
    else:
        x1 ^= x2 & m
        z2 ^= z1 & m
    return PauliOperator(BitVector(2 * n, x1 | (x2 << n)), BitVector(2 * n, z1 | (z2 << n)),
                         p.phase)


def conjugate_by_gate(p: PauliOperator, gate: str, *qubits: int) -> PauliOperator:
    """Conjugate by one gate on the given qubit(s).

    Two-qubit gates: ``"CX"`` (control, target) and ``"CZ"``.
    """
    n = p.n
    if gate in ("CX", "CNOT"):
        c, t = qubits
        x, z = p.x.bits, p.z.bits
        x ^= ((x >> c) & 1) << t
        z ^= ((z >> t) & 1) << c
        return PauliOperator(BitVector(n, x), BitVector(n, z), p.phase)
    if gate == "CZ":
        a, b = qubits
        x, z = p.x.bits, p.z.bits
        xa, xb = (x >> a) & 1, (x >> b) & 1
        z ^= (xb << a) ^ (xa << b)
        return PauliOperator(BitVector(n, x), BitVector(n, z), p.phase + 2 * (xa & xb))
    (q,) = qubits
    gates = ["I"] * n
    gates[q] = normalize_gate(gate)
    return conjugate_by_layer(p, TransversalLayer(tuple(gates)))


# --- dense oracle -----------------------------------------------------------

ORACLE_MAX_QUBITS = 7

GATE_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "Sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
}


def layer_matrix(layer: TransversalLayer) -> np.ndarray:
    if not layer.cnot:
        return reduce(np.kron, [GATE_MATRICES[g] for g in layer.gates], np.eye(1, dtype=complex))
    n = layer.n
    total = 2 * n
    dim = 1 << total
    perm = np.zeros((dim, dim), dtype=complex)
    ctrl_off, targ_off = (0, n) if not layer.reverse else (n, 0)
    for col in range(dim):
        row = col
        for i, g in enumerate(layer.gates):
            if g != "CX":
                continue
            # qubit q sits at bit (total - 1 - q) of the basis index
            c_bit = total - 1 - (ctrl_off + i)
            t_bit = total - 1 - (targ_off + i)
            if (col >> c_bit) & 1:
                row ^= 1 << t_bit
        perm[row, col] = 1
    return perm


def pauli_from_matrix(m: np.ndarray, n: int, atol: float = 1e-9) -> PauliOperator:
    """Recover the canonical form of a matrix known to be a scaled Pauli."""
    dim = 1 << n
    col0 = m[:, 0]
    rows = np.flatnonzero(np.abs(col0) > atol)
    if len(rows) != 1:
        raise SdcssError("matrix is not a Pauli operator")
    r = int(rows[0])
    x = 0
    for q in range(n):
        if (r >> (n - 1 - q)) & 1:
            x |= 1 << q
    val = col0[r]
    phase = None
    for k in range(4):
        if abs(val - 1j ** k) < atol:
            phase = k
    if phase is None:
        raise SdcssError("matrix entry is not a power of i")
    z = 0
    for q in range(n):
        c = 1 << (n - 1 - q)
        ratio = m[r ^ c, c] / val
        if abs(ratio + 1) < atol:
            z |= 1 << q
        elif abs(ratio - 1) >= atol:
            raise SdcssError("matrix is not a Pauli operator")
    out = PauliOperator(BitVector(n, x), BitVector(n, z), phase)
    if not np.allclose(out.to_matrix(), m, atol=1e-7):
        raise SdcssError("matrix is not a Pauli operator")
    assert dim == m.shape[0]
    return out


def dense_oracle_conjugate(p: PauliOperator, layer: TransversalLayer) -> PauliOperator:
    """Compute ``L P L^dagger`` with explicit 2^n x 2^n matrices.

    Independent of the symbolic rules above; refused beyond 7 qubits.
    """
    total = 2 * layer.n if layer.cnot else layer.n
    if p.n != total:
        raise DimensionError(f"size mismatch: operator on {p.n}, layer on {total}")
    if total > ORACLE_MAX_QUBITS:
        raise ValueError(f"dense oracle refuses {total} > {ORACLE_MAX_QUBITS} qubits")
    u = layer_matrix(layer)
    m = u @ p.to_matrix() @ u.conj().T
    return pauli_from_matrix(m, total)


def word_matrix(word: Sequence[str]) -> np.ndarray:
    """2x2 unitary of a gate word applied left to right in time."""
    m = np.eye(2, dtype=complex)
    for g in word:
        m = GATE_MATRICES[normalize_gate(g)] @ m
    return m


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-9) -> bool:
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < atol:
        return bool(np.allclose(a, b, atol=atol))
    ph = a[idx] / b[idx]
    if abs(abs(ph) - 1) > 1e-7:
        return False
    return bool(np.allclose(a, ph * b, atol=atol))


# --- binary symplectic group --------------------------------------------------

def symplectic_form(u: int, v: int, k: int) -> int:
    lo = (1 << k) - 1
    return (_pc((u & lo) & (v >> k)) + _pc((u >> k) & (v & lo))) & 1


def is_symplectic(m: BitMatrix) -> bool:
    if m.nrows != m.ncols or m.ncols % 2:
        return False
    k = m.ncols // 2
    rows = m.int_rows()
    for i in range(2 * k):
        for j in range(2 * k):
            if symplectic_form(rows[i], rows[j], k) != symplectic_form(1 << i, 1 << j, k):
                return False
    return True


def clifford_symplectic(num_qubits: int, ops: Sequence[tuple]) -> BitMatrix:
    """Binary symplectic matrix of a Clifford circuit, modulo phases.

    Row ``i`` is the image of the i-th basis Pauli (X_0..X_{k-1}, Z_0..Z_{k-1})
    packed as ``x | z << k``; row vectors multiply from the left. ``ops`` is a
    sequence of ``(gate, *qubits)`` tuples in time order.
    """
    k = num_qubits
    rows = []
    for i in range(2 * k):
        e = BitVector.unit(k, i % k)
        p = PauliOperator.x_type(e) if i < k else PauliOperator.z_type(e)
        for gate, *qs in ops:
            p = conjugate_by_gate(p, gate, *qs)
        rows.append(BitVector(2 * k, p.x.bits | (p.z.bits << k)))
    return BitMatrix(tuple(rows), 2 * k)


def _mat_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for r in a:
        acc = 0
        i = 0
        while r:
            if r & 1:
                acc ^= b[i]
            r >>= 1
            i += 1
        out.append(acc)
    return tuple(out)


SYMPLECTIC_CLOSURE_LIMIT = 1451520  # |Sp(6, 2)|


def symplectic_closure(generators: Sequence[BitMatrix], dim: int | None = None) -> int:
    """Order of the subgroup of Sp(2k, 2) generated by ``generators``.

    Breadth-first search over right multiplication by generators. With no
    generators the trivial group (order 1) is returned.
    """
    gens = list(generators)
    for g in gens:
        if not is_symplectic(g):
            raise ValueError(f"generator is not symplectic: {g}")
    if not gens:
        return 1
    size = gens[0].ncols
    if dim is not None and dim != size:
        raise DimensionError("generator size does not match dim")
    if any(g.ncols != size for g in gens):
        raise DimensionError("generators differ in size")
    if size > 6:
        raise ValueError("closure limited to 2k <= 6 (group order at most |Sp(6,2)|)")
    gen_t = list(dict.fromkeys(tuple(g.int_rows()) for g in gens))
    ident = tuple(1 << i for i in range(size))
    seen = {ident}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        for g in gen_t:
            nxt = _mat_mul(cur, g)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        if len(seen) > SYMPLECTIC_CLOSURE_LIMIT:
            raise SdcssError("closure exceeded |Sp(6,2)|; generators inconsistent")
    return len(seen)


def count_symplectic_matrices(k: int) -> int:
    """Brute-force |Sp(2k, 2)| by testing every 2k x 2k binary matrix (k <= 2)."""
    if k > 2:
        raise ValueError("enumeration only feasible for k <= 2")
    size = 2 * k
    total = 0
    for code in range(1 << (size * size)):
        rows = [(code >> (size * i)) & ((1 << size) - 1) for i in range(size)]
        ok = all(
            symplectic_form(rows[i], rows[j], k) == symplectic_form(1 << i, 1 << j, k)
            for i in range(size) for j in range(i, size)
        )
        total += ok
    return total


SET2_CHOICES = ("2.1", "2.2", "2.3", "2.4")
SET3_CHOICES = ("3.1", "3.2")


def full_clifford_generators(k: int, m: int, set2: str = "2.1", set3: str = "3.1"
                             ) -> list[BitMatrix]:
    """Symplectic images of the generating sets for m blocks of k logical qubits.

    Always includes the block-transversal gates (all-H, all-S and transversal
    CNOT between distinct blocks) plus one addressable in-block set and one
    between-block set. Logical qubit ``j`` of block ``p`` is index ``p*k + j``.
    Phase patterns of the transversal S layers coincide modulo Paulis, so a
    single S layer per block represents all of them.
    """
    if set2 not in SET2_CHOICES or set3 not in SET3_CHOICES:
        raise ValueError("unknown generating set")
    total = k * m
    q = lambda p, j: p * k + j  # noqa: E731
    circuits: list[list[tuple]] = []
    for p in range(m):
        circuits.append([("H", q(p, j)) for j in range(k)])
        circuits.append([("S", q(p, j)) for j in range(k)])
        for p2 in range(m):
            if p2 != p:
                circuits.append([("CX", q(p, j), q(p2, j)) for j in range(k)])
    single = {"2.1": "H", "2.2": "S", "2.3": "H", "2.4": None}[set2]
    pair_gates = {"2.1": ["CX"], "2.2": ["CX"], "2.3": ["CZ"], "2.4": ["CX", "CZ"]}[set2]
    for p in range(m):
        for j in range(k):
            if single:
                circuits.append([(single, q(p, j))])
            for l in range(k):
                if l != j:
                    for g in pair_gates:
                        circuits.append([(g, q(p, j), q(p, l))])
    inter = "CX" if set3 == "3.1" else "CZ"
    for p in range(m):
        for p2 in range(m):
            if p2 != p:
                circuits.append([(inter, q(p, 0), q(p2, 0))])
    mats = [clifford_symplectic(total, c) for c in circuits]
    uniq = {tuple(mm.int_rows()): mm for mm in mats}
    return list(uniq.values())


# --- single-qubit Clifford group modulo global phase ----------------------------

Action = tuple[tuple[int, int, int], tuple[int, int, int]]
_ONE = BitVector(1, 1)
_ZERO = BitVector(1, 0)


def word_action(word: Sequence[str]) -> Action:
    """Images of X and Z under a gate word (time order), as (x, z, phase)."""
    out = []
    for p in (PauliOperator(_ONE, _ZERO), PauliOperator(_ZERO, _ONE)):
        for g in word:
            g = normalize_gate(g)
            if g != "I":
                p = conjugate_by_layer(p, TransversalLayer((g,)))
        out.append((p.x.bits, p.z.bits, p.phase))
    return (out[0], out[1])


def _build_clifford_table() -> dict[Action, tuple[str, ...]]:
    letters = ("X", "Y", "Z", "H", "S", "Sdg")
    table: dict[Action, tuple[str, ...]] = {word_action(()): ()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for g in letters:
                cand = w + (g,)
                act = word_action(cand)
                if act not in table:
                    table[act] = cand
                    nxt.append(cand)
        frontier = nxt
    return table


CLIFFORD1_TABLE = _build_clifford_table()


def reduce_word(word: Sequence[str]) -> tuple[str, ...]:
    """Shortest equivalent word (up to global phase); ``()`` is the identity."""
    return CLIFFORD1_TABLE[word_action(word)]


def word_symbol(word: Sequence[str]) -> str:
    """Render a reduced word: single gate names, ``"I"``, or ``"H.S"`` (time order)."""
    return ".".join(word) if word else "I"


def symbol_word(symbol: str) -> tuple[str, ...]:
    if symbol in ("I", ""):
        return ()
    return tuple(normalize_gate(g) for g in symbol.split("."))


def symplectic_class(word: Sequence[str]) -> tuple[tuple[int, int], tuple[int, int]]:
    """The action with signs dropped: identifies the Clifford modulo Paulis."""
    (xx, xz, _), (zx, zz, _) = word_action(word)
    return ((xx, xz), (zx, zz))
