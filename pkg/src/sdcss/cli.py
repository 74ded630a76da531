"""Command-line interface: ``sdcss <command> ...``.

Every command prints one JSON document on stdout (or text with
``--human``). Exit status: 0 ok, 2 unsupported code, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .basis import SymplecticBasis, build_compatible_basis, existence_check, verify_basis
from .codes import CATALOG_KEYS, SelfDualCssCode, builtin, hamming_code
from .concat import concatenate, verify_multilevel
from .errors import (
    InconsistentBasisError,
    ParseError,
    PreconditionError,
    SdcssError,
    UnsupportedCodeError,
    UnsupportedLevelError,
)
from .formats import emit_basis, emit_code, load_code_ref, load_concat_spec, parse_basis
from .ftqc import conversion_chain, parse_target, render_chain
from .pauli import PauliOperator, conjugate_by_layer
from .phase import PhasePattern, layer_preserves_stabilizers, synthesize_phase_layer

EXIT_CODES = {"ok": 0, "unsupported": 2}


@dataclass
class CommandResult:
    status: str
    payload: dict[str, Any] = field(default_factory=dict)
    human_text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.status, 1)


def _code_summary(code: SelfDualCssCode) -> dict[str, Any]:
    return {"name": code.name, "n": code.n, "k": code.k, "r": code.r,
            "H": code.H.to_strings(), "coset_reps": code.coset_reps.to_strings()}


def _resolve_code(ref: str) -> SelfDualCssCode:
    if ref in CATALOG_KEYS and not Path(ref).exists():
        return builtin(ref)
    return load_code_ref(ref)


def _basis_payload(basis: SymplecticBasis) -> list[dict[str, Any]]:
    return [{"x": str(x), "z": str(z), "class": basis.class_label(j),
             "support": x.support(one_based=True)}
            for j, (x, z) in enumerate(basis.pairs)]


def cmd_check(args) -> CommandResult:
    code = _resolve_code(args.code)
    verdict = existence_check(code)
    payload = {"code": _code_summary(code), "exists": verdict.exists,
               "witness": str(verdict.witness) if verdict.witness else None,
               "witness_index": verdict.witness_index + 1 if verdict.exists else None,
               "witness_weight": verdict.witness.weight if verdict.witness else None}
    if verdict.exists:
        text = (f"{code}: compatible basis exists; witness h_{verdict.witness_index + 1} = "
                f"{verdict.witness} (weight {verdict.witness.weight})")
        return CommandResult("ok", payload, text)
    text = f"{code}: no compatible basis (every coset representative has even weight)"
    return CommandResult("unsupported", payload, text)


def cmd_basis(args) -> CommandResult:
    code = _resolve_code(args.code)
    basis = build_compatible_basis(code)
    report = verify_basis(code, basis, require_matched=True)
    payload = {"code": _code_summary(code), "pairs": _basis_payload(basis),
               "verified": report.ok, "violations": [str(v) for v in report.violations]}
    text = emit_basis(basis)
    if args.output:
        Path(args.output).write_text(text)
        payload["written"] = args.output
    human = f"{code}: {basis.k} matched pairs, verification {'pass' if report.ok else 'FAIL'}\n" + text
    return CommandResult("ok" if report.ok else "internal-error", payload, human.rstrip())


def _parse_signs(text: str, k: int) -> PhasePattern:
    t = text.strip()
    if t in ("all+", "all-"):
        return PhasePattern((1 if t == "all+" else -1,) * k)
    if set(t) <= {"+", "-"}:
        pat = PhasePattern.from_string(t)
    else:
        try:
            pat = PhasePattern(tuple(int(s) for s in t.replace(",", " ").split()))
        except ValueError as exc:
            raise ParseError([(0, f"cannot read signs {text!r}: {exc}")]) from None
    if len(pat) != k:
        raise ParseError([(0, f"got {len(pat)} signs, the code has k = {k}")])
    return pat


def _pick_basis(code: SelfDualCssCode, basis_file: str | None,
                reference: str | None = None) -> tuple[SymplecticBasis, str]:
    if basis_file:
        return parse_basis(Path(basis_file).read_text()), basis_file
    if reference:
        if reference not in code.reference_bases:
            known = ", ".join(code.reference_bases) or "none"
            raise KeyError(f"{code.name or code} has no reference basis {reference!r} (known: {known})")
        return SymplecticBasis.from_pairs(code.reference_bases[reference]), reference
    ref = code.reference_bases.get("compatible")
    if ref is not None:
        basis = SymplecticBasis.from_pairs(ref)
        if basis.all_matched:
            return basis, "reference"
    return build_compatible_basis(code), "constructed"


def cmd_phase(args) -> CommandResult:
    code = _resolve_code(args.code)
    basis, source = _pick_basis(code, args.basis_file, args.reference)
    if basis.n != code.n or basis.k != code.k:
        raise ParseError([(0, f"basis shape ({basis.n}, {basis.k}) does not fit {code}")])
    target = _parse_signs(args.signs, code.k)
    layer = synthesize_phase_layer(code, basis, target)
    tl = layer.to_layer()
    transcript = []
    for j, (x, z) in enumerate(basis.pairs):
        img = conjugate_by_layer(PauliOperator.x_type(x), tl)
        token = "+i" if img.phase == 1 else "-i"
        transcript.append(f"Xbar_{j + 1} -> {token} Xbar_{j + 1} Zbar_{j + 1}")
    preserved = layer_preserves_stabilizers(code, layer)
    transcript.append(f"stabilizer group preserved: {preserved}")
    payload = {"code": code.name or str(code), "basis_source": source,
               "target": list(target.signs), "layer": layer.compact(), "render": layer.render(),
               "sdg_qubits": layer.minus_positions(), "transcript": transcript}
    human = "\n".join([layer.render(), layer.compact()] + transcript)
    return CommandResult("ok", payload, human)


def cmd_concat(args) -> CommandResult:
    if args.codes:
        codes = [_resolve_code(r) for r in args.codes]
    elif args.spec:
        codes = load_concat_spec(Path(args.spec))
    else:
        raise ParseError([(0, "give a spec file or --codes")])
    cc = concatenate(codes)
    payload: dict[str, Any] = {"N": cc.N, "K": cc.K, "D_lower_bound": cc.D_lb,
                               "level_widths": list(cc.level_widths),
                               "levels": [c.name or str(c) for c in cc.levels],
                               "stabilizer_generators": len(cc.stabilizers)}
    lines = [str(cc), f"level widths: {list(cc.level_widths)}"]
    status = "ok"
    if args.verify:
        rep = verify_multilevel(cc, samples=args.samples, seed=args.seed)
        payload["verify"] = {"ok": rep.ok, "checks": [
            {"name": c.name, "ok": c.ok, "detail": c.detail, "level": c.level} for c in rep.checks]}
        lines += rep.lines()
        if not rep.ok:
            status = "internal-error"
    return CommandResult(status, payload, "\n".join(lines))


def cmd_convert(args) -> CommandResult:
    src = parse_target(args.source, args.k)
    dst = parse_target(args.target, args.k)
    word = conversion_chain(src, dst, args.max_depth)
    payload = {"source": src.label, "target": dst.label, "max_depth": args.max_depth}
    if word is None:
        payload["word"] = None
        return CommandResult("not-found", payload,
                             f"{src.label} cannot reach {dst.label} within {args.max_depth} moves")
    payload["word"] = word
    payload["chain"] = render_chain(src, word)
    return CommandResult("ok", payload, payload["chain"] if word else f"{src.label} (no conversion needed)")


def cmd_catalog(args) -> CommandResult:
    if args.name == "hamming":
        if args.m is None:
            raise ParseError([(0, "hamming needs --m")])
        code = hamming_code(args.m)
    elif args.name is None:
        keys = list(CATALOG_KEYS) + ["hamming --m M"]
        return CommandResult("ok", {"available": keys}, "\n".join(keys))
    else:
        code = builtin(args.name)
    text = emit_code(code)
    payload = {"code": _code_summary(code), "file": text}
    if args.output:
        Path(args.output).write_text(text)
        payload["written"] = args.output
    return CommandResult("ok", payload, text.rstrip())


def cmd_verify(args) -> CommandResult:
    code = _resolve_code(args.code)
    basis, source = _pick_basis(code, args.basis_file, args.reference)
    report = verify_basis(code, basis, require_matched=not args.structural_only)
    payload = {"code": code.name or str(code), "basis_source": source, "ok": report.ok,
               "violations": [str(v) for v in report.violations],
               "swaps": [[a + 1, b + 1] for a, b in report.swaps]}
    return CommandResult("ok" if report.ok else "invalid-input", payload, "\n".join(report.lines()))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="print text instead of JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    p = argparse.ArgumentParser(prog="sdcss", description="Compatible symplectic bases for self-dual CSS codes")
    sub = p.add_subparsers(dest="command", required=True)
    code_help = "code file, builtin name, builtin:NAME or hamming:M"

    s = sub.add_parser("check", parents=[common], help="decide whether a compatible basis exists")
    s.add_argument("code", help=code_help)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("basis", parents=[common], help="construct and verify a compatible basis")
    s.add_argument("code", help=code_help)
    s.add_argument("-o", "--output", help="write the basis file here")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("phase", parents=[common], help="synthesize a transversal S/S† layer")
    s.add_argument("code", help=code_help)
    s.add_argument("--signs", default="all+", help="all+, all-, a +/- string or a list such as 1,-1,1")
    s.add_argument("--basis-file", help="basis file to use instead of the reference or constructed one")
    s.add_argument("--reference", help="use the code's reference basis with this label")
    s.set_defaults(func=cmd_phase)

    s = sub.add_parser("concat", parents=[common], help="build a concatenated code")
    s.add_argument("spec", nargs="?", help="concatenation spec file (innermost code first)")
    s.add_argument("--codes", nargs="+", help="code references instead of a spec file")
    s.add_argument("--verify", action="store_true", help="run the multilevel checks")
    s.add_argument("--samples", type=int, default=32, help="number of sign patterns to check")
    s.set_defaults(func=cmd_concat)

    s = sub.add_parser("convert", parents=[common], help="find a measurement conversion word")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--k", type=int, default=None, help="number of logical qubits")
    s.add_argument("--max-depth", type=int, default=8)
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("catalog", parents=[common], help="emit a catalog code file")
    s.add_argument("name", nargs="?", help=f"one of {', '.join(CATALOG_KEYS)} or 'hamming'")
    s.add_argument("--m", type=int, help="Hamming parameter")
    s.add_argument("-o", "--output", help="write the code file here")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("verify", parents=[common], help="verify a basis against a code")
    s.add_argument("code", help=code_help)
    s.add_argument("--basis-file")
    s.add_argument("--reference", help="use the code's reference basis with this label")
    s.add_argument("--structural-only", action="store_true", help="skip the all-H compatibility check")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[CommandResult, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except UnsupportedCodeError as exc:
        payload: dict[str, Any] = {"error": str(exc)}
        verdict = exc.verdict
        if verdict is not None:
            payload["exists"] = verdict.exists
        if isinstance(exc, UnsupportedLevelError):
            payload["level"] = exc.level
        result = CommandResult("unsupported", payload, f"unsupported: {exc}")
    except ParseError as exc:
        payload = {"error": str(exc), "problems": [{"line": ln, "message": m} for ln, m in exc.problems]}
        result = CommandResult("invalid-input", payload, f"invalid input: {exc}")
    except (InconsistentBasisError, PreconditionError) as exc:
        result = CommandResult("invalid-input", {"error": str(exc)}, f"invalid input: {exc}")
    except (SdcssError, ValueError, KeyError, OSError) as exc:
        bad_input = isinstance(exc, (ValueError, KeyError, OSError))
        status = "invalid-input" if bad_input else "internal-error"
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        result = CommandResult(status, {"error": msg}, f"{status}: {msg}")
    return result, args


def main(argv: Sequence[str] | None = None) -> int:
    result, args = run(argv)
    if args.human:
        print(result.human_text)
    else:
        doc = {"command": args.command, "status": result.status, "payload": result.payload}
        print(json.dumps(doc, indent=2))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
