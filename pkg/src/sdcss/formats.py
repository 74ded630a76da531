"""Plain-text file formats for codes, bases and concatenation specs.

Code file::

    # comments start with '#'
    name: c622
    n: 6
    H:
    110011
    001111
    coset_reps:
    101010
    010101
    basis compatible:
    101010 101010
    010101 010101

``coset_reps`` and ``basis <label>`` sections are optional; basis rows hold
the X and Z supports of one pair. Bit i of every string is qubit i+1.

Basis file: one pair per line, ``X: <bits>  Z: <bits>  class: matched``
(or ``crossed(j)`` with a 1-based partner, or ``none``).

Concatenation spec: one code reference per line, innermost code first.
A reference is a path (relative to the spec file), ``builtin:NAME`` or
``hamming:M``.
"""

from __future__ import annotations

import re
from pathlib import Path

from .basis import SymplecticBasis
from .codes import SelfDualCssCode, builtin, from_check_matrix, hamming_code
from .errors import ParseError
from .gf2 import BitMatrix, BitVector

_BITS = re.compile(r"^[01]+$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_code(text: str) -> SelfDualCssCode:
    problems: list[tuple[int, str]] = []
    name = ""
    n: int | None = None
    n_line = 0
    section: str | None = None
    rows: dict[str, list[tuple[int, str]]] = {"H": [], "coset_reps": []}
    bases: dict[str, list[tuple[int, str, str]]] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.endswith(":"):
            head = line[:-1].strip()
            if head in ("H", "coset_reps"):
                section = head
            elif head.lower().startswith("basis"):
                label = head[5:].strip() or "reference"
                if label in bases:
                    problems.append((ln, f"duplicate basis section {label!r}"))
                bases[label] = []
                section = "basis:" + label
            else:
                problems.append((ln, f"unknown section {head!r}"))
                section = None
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if key == "name":
                name = value
            elif key == "n":
                try:
                    n = int(value)
                    n_line = ln
                except ValueError:
                    problems.append((ln, f"n must be an integer, got {value!r}"))
            else:
                problems.append((ln, f"unknown field {key!r}"))
            continue
        if section is None:
            problems.append((ln, "row outside of a section"))
            continue
        if section.startswith("basis:"):
            parts = line.split()
            if len(parts) != 2 or not all(_BITS.match(p) for p in parts):
                problems.append((ln, "basis row needs two 0/1 strings (X and Z supports)"))
                continue
            bases[section[6:]].append((ln, parts[0], parts[1]))
            continue
        if not _BITS.match(line):
            problems.append((ln, f"row contains characters other than 0 and 1: {line!r}"))
            continue
        rows[section].append((ln, line))

    all_rows = [(ln, s) for key in rows for ln, s in rows[key]]
    all_rows += [(ln, s) for b in bases.values() for ln, x, z in b for s in (x, z)]
    if n is None and all_rows:
        n = len(rows["H"][0][1]) if rows["H"] else len(all_rows[0][1])
    if n is not None:
        if n < 1:
            problems.append((n_line, "n must be positive"))
        for ln, s in all_rows:
            if len(s) != n:
                problems.append((ln, f"row has length {len(s)}, expected n = {n}"))
    if not rows["H"]:
        problems.append((0, "missing H section"))
    if problems:
        raise ParseError(sorted(problems))

    H = BitMatrix.from_strings([s for _, s in rows["H"]], n)
    reps = BitMatrix.from_strings([s for _, s in rows["coset_reps"]], n) if rows["coset_reps"] else None
    code = from_check_matrix(H, reps, name=name)
    for label, pairs in bases.items():
        code = code.with_reference_basis(
            label, [(BitVector.from_string(x), BitVector.from_string(z)) for _, x, z in pairs])
    return code


def emit_code(code: SelfDualCssCode) -> str:
    lines = []
    if code.name:
        lines.append(f"name: {code.name}")
    lines.append(f"n: {code.n}")
    lines.append("H:")
    lines += code.H.to_strings()
    lines.append("coset_reps:")
    lines += code.coset_reps.to_strings()
    for label, pairs in code.reference_bases.items():
        lines.append(f"basis {label}:")
        lines += [f"{x} {z}" for x, z in pairs]
    return "\n".join(lines) + "\n"


_BASIS_LINE = re.compile(
    r"^X:\s*([01]+)\s+Z:\s*([01]+)(?:\s+class:\s*(matched|none|crossed\((\d+)\)))?$")


def parse_basis(text: str) -> SymplecticBasis:
    problems = []
    pairs = []
    classes: list[tuple[int, str | None, str | None]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        m = _BASIS_LINE.match(line)
        if not m:
            problems.append((ln, "expected 'X: <bits>  Z: <bits>  class: matched|crossed(j)|none'"))
            continue
        x, z, cls, partner = m.groups()
        pairs.append((ln, x, z))
        classes.append((ln, cls, partner))
    if pairs:
        n = len(pairs[0][1])
        for ln, x, z in pairs:
            if len(x) != n or len(z) != n:
                problems.append((ln, f"support strings must all have length {n}"))
    else:
        problems.append((0, "no basis pairs found"))
    structure: list[int | None] = []
    k = len(pairs)
    for j, (ln, cls, partner) in enumerate(classes):
        if cls is None:
            structure = []
            break
        if cls == "matched":
            structure.append(j)
        elif cls == "none":
            structure.append(None)
        else:
            p = int(partner) - 1
            if not 0 <= p < k or p == j:
                problems.append((ln, f"crossed partner {partner} is out of range"))
            structure.append(p)
    if problems:
        raise ParseError(sorted(problems))
    vecs = tuple((BitVector.from_string(x), BitVector.from_string(z)) for _, x, z in pairs)
    return SymplecticBasis(vecs, tuple(structure))


def emit_basis(basis: SymplecticBasis) -> str:
    lines = [f"X: {x}  Z: {z}  class: {basis.class_label(j)}" for j, (x, z) in enumerate(basis.pairs)]
    return "\n".join(lines) + "\n"


def load_code_ref(ref: str, base_dir: Path | None = None) -> SelfDualCssCode:
    """Resolve ``builtin:NAME``, ``hamming:M`` or a code-file path."""
    if ref.startswith("builtin:"):
        return builtin(ref.split(":", 1)[1])
    if ref.startswith("hamming:"):
        value = ref.split(":", 1)[1]
        try:
            m = int(value)
        except ValueError:
            raise ParseError([(0, f"hamming parameter must be an integer, got {value!r}")]) from None
        return hamming_code(m)
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return parse_code(path.read_text())


def parse_concat_spec(text: str) -> list[tuple[int, str]]:
    """Non-empty references with their 1-based line numbers."""
    refs = [(ln, _strip(line)) for ln, line in enumerate(text.splitlines(), start=1)]
    refs = [(ln, r) for ln, r in refs if r]
    if not refs:
        raise ParseError([(0, "concatenation spec lists no codes")])
    return refs


def load_concat_spec(path: Path) -> list[SelfDualCssCode]:
    refs = parse_concat_spec(path.read_text())
    out = []
    problems = []
    for ln, ref in refs:
        try:
            out.append(load_code_ref(ref, path.parent))
        except FileNotFoundError:
            problems.append((ln, f"code file {ref!r} not found"))
    if problems:
        raise ParseError(problems)
    return out
