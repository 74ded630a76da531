"""Converting logical Pauli measurements with global logical H and S layers.

Measuring P after applying U† and undoing with U is the same as measuring
U P U†. When all-H and all-S are free (compatible basis), measurements in
the same orbit can share one ancilla type. Everything here works on k
logical qubits; signs are reported but equivalence is modulo ±1.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .pauli import PauliOperator, TransversalLayer, conjugate_by_layer

MOVES = ("H", "S")
WORD_LETTERS = ("H", "S", "Sdg")
_MOVE_NAMES = {"H": "H^k", "S": "S^k", "Sdg": "S†^k"}


def _label(op: PauliOperator) -> str:
    parts = []
    for i in range(op.n):
        letter = "IXZY"[op.x[i] + 2 * op.z[i]]
        if letter != "I":
            parts.append(f"{letter}{i + 1}")
    sign = "-" if op.letter_phase == 2 else ""
    return sign + (" ".join(parts) if parts else "I")


@dataclass(frozen=True)
class MeasurementTarget:
    operator: PauliOperator

    def __post_init__(self):
        op = self.operator
        if op.is_identity_up_to_phase():
            raise ValueError("measurement target must not be the identity")
        if not op.is_hermitian:
            raise ValueError(f"measurement target {op.label()} is not Hermitian")

    @property
    def k(self) -> int:
        return self.operator.n

    @property
    def label(self) -> str:
        return _label(self.operator)

    def unsigned(self) -> MeasurementTarget:
        op = self.operator
        if op.letter_phase == 2:
            op = -op
        return MeasurementTarget(op)

    def key(self) -> tuple[int, int]:
        return (self.operator.x.bits, self.operator.z.bits)

    def __str__(self) -> str:
        return self.label


_SPARSE = re.compile(r"^([XYZ])([0-9]+|[a-z])$")


def parse_target(text: str, k: int | None = None) -> MeasurementTarget:
    """Parse a logical Pauli.

    Accepted forms: a dense string ``"XIZ"``, sparse 1-based tokens
    ``"X1 Z3"``, or symbolic tokens ``"Zi Zj"`` where each distinct letter
    names the next free qubit in order of appearance. A leading ``-`` is
    allowed. ``k`` defaults to the smallest size that fits.
    """
    s = text.strip()
    sign = 0
    if s.startswith("-"):
        sign = 2
        s = s[1:].strip()
    elif s.startswith("+"):
        s = s[1:].strip()
    tokens = s.replace("_", "").split()
    if len(tokens) == 1 and re.fullmatch(r"[IXYZ]+", tokens[0]):
        letters = tokens[0]
        if k is not None and len(letters) != k:
            raise ValueError(f"dense label has length {len(letters)}, expected k = {k}")
        op = PauliOperator.from_label(letters)
        return MeasurementTarget(op.times_phase(sign))
    placed: dict[int, str] = {}
    names: dict[str, int] = {}
    for tok in tokens:
        m = _SPARSE.match(tok)
        if not m:
            raise ValueError(f"cannot parse Pauli token {tok!r}")
        letter, where = m.groups()
        if where.isdigit():
            q = int(where) - 1
            if q < 0:
                raise ValueError("qubit indices are 1-based")
        else:
            if where not in names:
                names[where] = len(names)
            q = names[where]
        if q in placed:
            raise ValueError(f"qubit {q + 1} appears twice")
        placed[q] = letter
    size = max(placed) + 1 if placed else 0
    if k is None:
        k = size
    if size > k:
        raise ValueError(f"label uses qubit {size} but k = {k}")
    letters = "".join(placed.get(i, "I") for i in range(k))
    return MeasurementTarget(PauliOperator.from_label(letters).times_phase(sign))


def convert_measurement(target: MeasurementTarget, word: Sequence[str]
                        ) -> tuple[MeasurementTarget, int]:
    """Return (U P U† with its sign stripped, that sign) for U given by ``word``.

    ``word`` lists global logical gates in time order, from H, S and Sdg.
    """
    op = target.operator
    for g in word:
        if g not in WORD_LETTERS:
            raise ValueError(f"unknown move {g!r}; use one of {WORD_LETTERS}")
        op = conjugate_by_layer(op, TransversalLayer.uniform(op.n, g))
    sign = -1 if op.letter_phase == 2 else 1
    if sign == -1:
        op = -op
    return MeasurementTarget(op), sign


def conversion_chain(source: MeasurementTarget, target: MeasurementTarget,
                     max_depth: int = 8) -> list[str] | None:
    """Shortest word over {H, S} taking ``source`` to ``target`` up to sign.

    Breadth-first, H tried before S, so the answer is deterministic.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    if source.k != target.k:
        raise ValueError("source and target act on different numbers of qubits")
    goal = target.key()
    start = source.unsigned()
    if start.key() == goal:
        return []
    seen = {start.key()}
    queue = deque([(start, [])])
    while queue:
        cur, word = queue.popleft()
        if len(word) >= max_depth:
            continue
        for g in MOVES:
            nxt, _ = convert_measurement(cur, [g])
            if nxt.key() in seen:
                continue
            if nxt.key() == goal:
                return word + [g]
            seen.add(nxt.key())
            queue.append((nxt, word + [g]))
    return None


def orbit(source: MeasurementTarget) -> list[MeasurementTarget]:
    """Every target reachable from ``source`` (up to sign)."""
    start = source.unsigned()
    seen = {start.key(): start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in MOVES:
            nxt, _ = convert_measurement(cur, [g])
            if nxt.key() not in seen:
                seen[nxt.key()] = nxt
                queue.append(nxt)
    return list(seen.values())


def ancilla_classes(targets: Sequence[MeasurementTarget], max_depth: int = 8
                    ) -> list[list[MeasurementTarget]]:
    """Group targets that can share an ancilla type; classes keep input order."""
    parent = list(range(len(targets)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(targets)):
        for j in range(i + 1, len(targets)):
            if find(i) != find(j) and conversion_chain(targets[i], targets[j], max_depth) is not None:
                parent[find(j)] = find(i)
    groups: dict[int, list[MeasurementTarget]] = {}
    for i, t in enumerate(targets):
        groups.setdefault(find(i), []).append(t)
    return list(groups.values())


def render_chain(source: MeasurementTarget, word: Sequence[str]) -> str:
    """Arrow notation, e.g. ``Z1 Z2 <-H^k-> X1 X2 <-S^k-> Y1 Y2``."""
    parts = [source.unsigned().label]
    cur = source
    for g in word:
        cur, _ = convert_measurement(cur, [g])
        parts.append(f"<-{_MOVE_NAMES[g]}-> {cur.label}")
    return " ".join(parts)


def overcomplete_set(k: int, i: int = 0, j: int = 1, l: int = 2) -> list[MeasurementTarget]:
    """The single-, two- and three-qubit measurement list used by gate teleportation."""
    def t(spec: dict[int, str]) -> MeasurementTarget:
        letters = "".join(spec.get(q, "I") for q in range(k))
        return MeasurementTarget(PauliOperator.from_label(letters))

    out = [t({i: "X"}), t({i: "Y"}), t({i: "Z"})]
    if k >= 2:
        out += [t({i: "X", j: "X"}), t({i: "Y", j: "Y"}), t({i: "Z", j: "Z"}),
                t({i: "X", j: "Y"}), t({i: "Y", j: "Z"}), t({i: "X", j: "Z"})]
    if k >= 3:
        out += [t({i: "X", j: "X", l: "X"}), t({i: "Z", j: "Z", l: "Z"})]
    return out
