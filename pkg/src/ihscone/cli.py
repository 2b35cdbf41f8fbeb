"""File-driven front end.

One JSON document in, one deterministic JSON report (or SVG) out. All
integers in reports are decimal strings so consumers never lose precision;
inputs accept plain JSON integers or the same string form.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, replace
from typing import Any, Optional

from .alphas import (
    AlphaResult,
    alpha_case_a,
    alpha_case_b,
    alpha_effective,
    build_context,
)
from .catalog import DeformationType, expected_disc_group, matches_profile, parse_type
from .engine import (
    ConeAnalysis,
    EnumerationBound,
    RayDescriptor,
    analyze,
    classify_rank2,
    enumerate_exceptional,
)
from .errors import (
    BoundExceededError,
    ContractViolationError,
    IHSConeError,
    InputFormatError,
    PreconditionError,
)
from .lattice import Lattice, Vec, discriminant_group, norm, signature
from .pell import (
    fundamental_solution,
    second_solution,
    solution_with_residue,
)
from .svg import render_section
from .weyl import weyl_reduce

SCHEMA_VERSION = "1"

_INT_RE = re.compile(r"^-?[0-9]+$")


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise InputFormatError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INT_RE.match(value):
        return int(value)
    raise InputFormatError(f"{where}: expected an integer or decimal string, got {value!r}")


def _as_vector(value: Any, where: str, length: Optional[int] = None) -> Vec:
    if not isinstance(value, list) or not value:
        raise InputFormatError(f"{where}: expected a nonempty list of integers")
    vec = tuple(_as_int(x, f"{where}[{i}]") for i, x in enumerate(value))
    if length is not None and len(vec) != length:
        raise InputFormatError(f"{where}: expected length {length}, got {len(vec)}")
    return vec


def _stringify(obj: Any) -> Any:
    """Integers to decimal strings, recursively; booleans stay booleans."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_stringify(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    return obj


@dataclass(frozen=True)
class InputSpec:
    lattice: Lattice
    dtype: DeformationType
    ample: Optional[Vec]
    bound: EnumerationBound
    label: Optional[str]
    vector: Optional[Vec] = None
    d_class: Optional[Vec] = None
    e_class: Optional[Vec] = None


_LATTICE_FIELDS = {"gram", "type", "n", "ample", "bound", "label", "vector", "D", "E"}
_BOUND_FIELDS = {"max_ample_pairing", "wall_test_limit", "pell_index_cap"}


def parse_input(text: str) -> InputSpec:
    """Validate a lattice analysis document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("input document must be a JSON object")
    unknown = sorted(set(doc) - _LATTICE_FIELDS)
    if unknown:
        raise InputFormatError(f"unknown input fields: {', '.join(unknown)}")
    if "gram" not in doc:
        raise InputFormatError("missing required field 'gram'")
    if "type" not in doc:
        raise InputFormatError("missing required field 'type'")

    raw = doc["gram"]
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise InputFormatError("gram: expected a list of integer rows")
    n_rank = len(raw)
    rows = []
    for i, row in enumerate(raw):
        if len(row) != n_rank:
            raise InputFormatError(f"gram: row {i} has length {len(row)}, expected {n_rank}")
        rows.append(tuple(_as_int(x, f"gram[{i}][{j}]") for j, x in enumerate(row)))
    for i in range(n_rank):
        for j in range(i + 1, n_rank):
            if rows[i][j] != rows[j][i]:
                raise InputFormatError(
                    f"gram is not symmetric: entry ({i},{j}) = {rows[i][j]} "
                    f"but ({j},{i}) = {rows[j][i]}"
                )

    tag = doc["type"]
    if not isinstance(tag, str):
        raise InputFormatError("type: expected a tag string")
    n_param = _as_int(doc["n"], "n") if doc.get("n") is not None else None
    dtype = parse_type(tag, n_param)

    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise InputFormatError("label: expected a string")

    bound = EnumerationBound()
    if "bound" in doc:
        braw = doc["bound"]
        if not isinstance(braw, dict):
            raise InputFormatError("bound: expected an object")
        bad = sorted(set(braw) - _BOUND_FIELDS)
        if bad:
            raise InputFormatError(f"bound: unknown fields: {', '.join(bad)}")
        overrides = {k: _as_int(v, f"bound.{k}") for k, v in braw.items()}
        try:
            bound = replace(bound, **overrides)
        except PreconditionError as exc:
            raise InputFormatError(f"bound: {exc}") from exc

    ample = _as_vector(doc["ample"], "ample", n_rank) if doc.get("ample") is not None else None
    vector = _as_vector(doc["vector"], "vector", n_rank) if doc.get("vector") is not None else None
    d_class = _as_vector(doc["D"], "D", n_rank) if doc.get("D") is not None else None
    e_class = _as_vector(doc["E"], "E", n_rank) if doc.get("E") is not None else None

    lattice = Lattice(tuple(rows), label=label or "")
    return InputSpec(
        lattice=lattice,
        dtype=dtype,
        ample=ample,
        bound=bound,
        label=label,
        vector=vector,
        d_class=d_class,
        e_class=e_class,
    )


def _echo(spec: InputSpec) -> dict:
    doc: dict[str, Any] = {
        "gram": [list(r) for r in spec.lattice.gram],
        "type": spec.dtype.kind.value,
        "n": spec.dtype.n,
        "ample": list(spec.ample) if spec.ample is not None else None,
        "label": spec.label,
        "bound": {
            "max_ample_pairing": spec.bound.max_ample_pairing,
            "wall_test_limit": spec.bound.wall_test_limit,
            "pell_index_cap": spec.bound.pell_index_cap,
        },
    }
    if spec.vector is not None:
        doc["vector"] = list(spec.vector)
    if spec.d_class is not None:
        doc["D"] = list(spec.d_class)
    if spec.e_class is not None:
        doc["E"] = list(spec.e_class)
    return doc


def _require_ample(spec: InputSpec) -> Vec:
    if spec.ample is None:
        raise InputFormatError("missing required field 'ample'")
    return spec.ample


def _ray_json(desc: RayDescriptor) -> dict:
    if desc.rational:
        return {"rational": True, "vector": list(desc.vector), "display": desc.display()}
    return {
        "rational": False,
        "num_const": desc.num_const,
        "sign": desc.sign,
        "delta": desc.delta,
        "den": desc.den,
        "orientation": desc.orientation,
        "display": desc.display(),
    }


def _rank2_json(analysis_rank2) -> Optional[dict]:
    if analysis_rank2 is None:
        return None
    return {
        "ray1": _ray_json(analysis_rank2.ray1),
        "ray2": _ray_json(analysis_rank2.ray2),
        "both_rational": analysis_rank2.both_rational,
        "bir_finite": analysis_rank2.bir_finite,
    }


def _disc_json(spec: InputSpec) -> dict:
    group = discriminant_group(spec.lattice)
    expected = expected_disc_group(spec.dtype)
    computed = list(group.invariant_factors)
    return {
        "invariant_factors": computed,
        "order": group.order,
        "expected_invariant_factors": list(expected),
        "disc_group_mismatch": computed != list(expected),
    }


def _analysis_json(spec: InputSpec, analysis: ConeAnalysis) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "analyze",
        "label": spec.label,
        "input": _echo(spec),
        "signature": list(signature(spec.lattice)),
        "disc_group": _disc_json(spec),
        "exceptional_classes": [list(v) for v in analysis.exceptional_found],
        "exceptional_count": len(analysis.exceptional_found),
        "chamber_walls": [list(v) for v in analysis.chamber_walls],
        "verdict": analysis.verdict,
        "extremal_rays": [list(v) for v in analysis.extremal_rays],
        "mov_candidate": {
            "wall_inequalities": [list(v) for v in analysis.mov_candidate.wall_inequalities],
            "includes_positive_cone": analysis.mov_candidate.includes_positive_cone,
        },
        "duality_checked": analysis.duality_checked,
        "rank2": _rank2_json(analysis.rank2),
        "finiteness": {
            "eff_rational_polyhedral_up_to_bound": analysis.finiteness.eff_rational_polyhedral_up_to_bound,
            "bir_finite": analysis.finiteness.bir_finite,
            "quotient_finite": analysis.finiteness.quotient_finite,
            "finitely_many_exceptional_up_to_bound": analysis.finiteness.finitely_many_exceptional_up_to_bound,
            "equivalence_applicable": analysis.finiteness.equivalence_applicable,
            "caveat": analysis.finiteness.caveat,
        },
        "mds": {"is_mds": analysis.mds.is_mds, "reason": analysis.mds.reason},
        "notes": list(analysis.notes),
    }


def run_analyze(spec: InputSpec) -> dict:
    analysis = analyze(spec.lattice, spec.dtype, _require_ample(spec), spec.bound)
    return _analysis_json(spec, analysis)


def run_enumerate(spec: InputSpec) -> dict:
    classes = enumerate_exceptional(spec.lattice, spec.dtype, _require_ample(spec), spec.bound)
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "enumerate",
        "label": spec.label,
        "input": _echo(spec),
        "classes": [list(v) for v in classes],
        "count": len(classes),
        "bound": spec.bound.max_ample_pairing,
    }


def run_reduce(spec: InputSpec, max_steps: int) -> dict:
    if spec.vector is None:
        raise InputFormatError("missing required field 'vector'")
    roots = enumerate_exceptional(spec.lattice, spec.dtype, _require_ample(spec), spec.bound)
    reduction = weyl_reduce(spec.lattice, roots, spec.vector, max_steps=max_steps)
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "reduce",
        "label": spec.label,
        "input": _echo(spec),
        "roots_used": [list(v) for v in roots],
        "representative": list(reduction.representative),
        "word": [list(v) for v in reduction.word],
        "steps": reduction.steps,
    }


def _alpha_result_json(spec: InputSpec, result: AlphaResult, ctx) -> dict:
    sol = result.pell_solution_used
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "alpha",
        "label": spec.label,
        "input": _echo(spec),
        "context": {"d": ctx.d, "t": ctx.t, "b": ctx.b, "e": ctx.e, "N": ctx.N},
        "branch": result.branch,
        "alpha": list(result.alpha),
        "norm_alpha": norm(spec.lattice, result.alpha),
        "pell_solution": {"x": sol.x, "y": sol.y, "n": sol.n_param} if sol else None,
        "certified_primitive": result.certified_primitive,
        "certified_effective": result.certified_effective,
        "div_alpha": result.div_alpha,
    }


def run_alpha(spec: InputSpec) -> dict:
    """Dispatch on the shape of (D, E): isotropic E takes the direct branch,
    square N the degenerate one, profile-matching E the effectivity pipeline,
    anything else the plain Pell branch."""
    if spec.d_class is None or spec.e_class is None:
        raise InputFormatError("alpha needs both 'D' and 'E' fields")
    lattice = spec.lattice
    ctx = build_context(lattice, spec.d_class, spec.e_class)
    if norm(lattice, spec.e_class) == 0:
        result = alpha_case_a(ctx)
    else:
        from .pell import is_perfect_square

        if is_perfect_square(ctx.N) is not None:
            result = alpha_case_b(ctx)
        elif matches_profile(lattice, spec.dtype, spec.e_class):
            result = alpha_effective(ctx, spec.dtype)
        else:
            result = alpha_case_b(ctx)
    return _alpha_result_json(spec, result, ctx)


_PELL_FIELDS = {"n", "modulus", "residue", "index_cap", "label"}


def run_pell(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("input document must be a JSON object")
    unknown = sorted(set(doc) - _PELL_FIELDS)
    if unknown:
        raise InputFormatError(f"unknown input fields: {', '.join(unknown)}")
    if "n" not in doc:
        raise InputFormatError("missing required field 'n'")
    n = _as_int(doc["n"], "n")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise InputFormatError("label: expected a string")
    has_mod = doc.get("modulus") is not None
    has_res = doc.get("residue") is not None
    if has_mod != has_res:
        raise InputFormatError("'modulus' and 'residue' must be given together")
    fund = fundamental_solution(n)
    second = second_solution(n)
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "pell",
        "label": label,
        "input": {"n": n},
        "fundamental": {"x": fund.x, "y": fund.y},
        "second": {"x": second.x, "y": second.y},
        "second_identity_holds": second.x - 1 == 2 * n * fund.y * fund.y,
        "residue_solution": None,
    }
    if has_mod:
        modulus = _as_int(doc["modulus"], "modulus")
        residue = _as_int(doc["residue"], "residue")
        cap = _as_int(doc.get("index_cap", 64), "index_cap")
        report["input"] = {"n": n, "modulus": modulus, "residue": residue, "index_cap": cap}
        sol = solution_with_residue(n, modulus, residue, index_cap=cap)
        report["residue_solution"] = {"x": sol.x, "y": sol.y}
    return report


def run_rank2(spec: InputSpec) -> dict:
    report = classify_rank2(spec.lattice, spec.dtype, _require_ample(spec), spec.bound)
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": "rank2",
        "label": spec.label,
        "input": _echo(spec),
        "ray1": _ray_json(report.ray1),
        "ray2": _ray_json(report.ray2),
        "both_rational": report.both_rational,
        "bir_finite": report.bir_finite,
    }


def run_plot_section(spec: InputSpec) -> str:
    analysis = analyze(spec.lattice, spec.dtype, _require_ample(spec), spec.bound)
    return render_section(analysis)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_json(report: dict, fmt: str) -> str:
    payload = _stringify(report)
    if fmt == "pretty":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ihscone",
        description="Exact cone analysis for hyperbolic Picard-type lattices.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in ("analyze", "enumerate", "reduce", "alpha", "pell", "plot-section", "rank2"):
        sp = sub.add_parser(name)
        sp.add_argument("--input", required=True, help="path to the JSON input document")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "pretty"), default="json")
        if name in ("analyze", "enumerate", "reduce", "rank2", "plot-section"):
            sp.add_argument("--bound", type=int, help="override max_ample_pairing")
        if name == "reduce":
            sp.add_argument("--max-steps", type=int, default=10000)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return 2
    try:
        if args.subcommand == "pell":
            report = run_pell(text)
            _emit(_render_json(report, args.format), args.output)
            return 0
        spec = parse_input(text)
        if getattr(args, "bound", None) is not None:
            try:
                spec = replace(spec, bound=replace(spec.bound, max_ample_pairing=args.bound))
            except PreconditionError as exc:
                raise InputFormatError(f"--bound: {exc}") from exc
        if args.subcommand == "plot-section":
            _emit(run_plot_section(spec), args.output)
            return 0
        if args.subcommand == "analyze":
            report = run_analyze(spec)
        elif args.subcommand == "enumerate":
            report = run_enumerate(spec)
        elif args.subcommand == "reduce":
            report = run_reduce(spec, args.max_steps)
        elif args.subcommand == "alpha":
            report = run_alpha(spec)
        else:
            report = run_rank2(spec)
        _emit(_render_json(report, args.format), args.output)
        return 0
    except InputFormatError as exc:
        _fail(exc)
        return 2
    except BoundExceededError as exc:
        _fail(exc)
        return 4
    except ContractViolationError as exc:
        _fail(exc)
        return 5
    except PreconditionError as exc:
        _fail(exc)
        return 3
    except IHSConeError as exc:
        _fail(exc)
        return 1


def _fail(exc: Exception) -> None:
    doc = {"error": {"kind": type(exc).__name__, "message": str(exc)}}
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
