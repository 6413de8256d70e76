"""Command-line front end.

Inputs are JSON, given inline, as a file path, or as ``-`` for stdin.  A module
input is either a bare module object or ``{"ring": ..., "module": ...}``; a
functor input likewise (``"functor"``).  Exit codes: 0 success, 1 computation
error or failed self-test, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import agj, linkage
from .freyd import FpFunctor, IsoDecision, evaluate
from .modules import (
    FpModule,
    elementary_divisors,
    ext_value,
    invariant_factors,
    is_projective,
    minimize,
    stable_part,
    syzygy,
    tor_value,
    transpose,
)
from .ring import RingMismatch, RingSpec, UnsupportedRing
from .serialize import (
    SchemaError,
    functor_from_json,
    functor_to_json,
    module_from_json,
    module_to_json,
    ring_from_json,
)
from .suites import SUITES, SuiteConfig, run_all
from .testkit import Testbed, default_testbed


def _load(text: str) -> Any:
    if text == "-":
        text = sys.stdin.read()
    elif not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise SchemaError(f"{text!r} is neither JSON nor an existing file")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None


def _ring(args, doc: Any = None) -> RingSpec:
    if isinstance(doc, dict) and "ring" in doc:
        return ring_from_json(doc["ring"])
    return ring_from_json(args.ring)


def _module_input(args, key: str = "module") -> tuple[RingSpec, FpModule]:
    doc = _load(args.input)
    ring = _ring(args, doc)
    body = doc[key] if isinstance(doc, dict) and key in doc else doc
    return ring, module_from_json(body, ring)


def _functor_input(args) -> tuple[RingSpec, FpFunctor, dict]:
    doc = _load(args.input)
    ring = _ring(args, doc)
    body = doc["functor"] if isinstance(doc, dict) and "functor" in doc else doc
    return ring, functor_from_json(body, ring), doc if isinstance(doc, dict) else {}


def _testbed(args, ring: RingSpec) -> Testbed:
    if not args.testbed:
        return default_testbed(ring, args.seed)
    doc = _load(args.testbed)
    mods = doc.get("modules") if isinstance(doc, dict) else doc
    if not isinstance(mods, list) or not mods:
        raise SchemaError("testbed must be a nonempty list of modules (or {\"modules\": [...]})")
    tb_ring = _ring(args, doc) if isinstance(doc, dict) else ring
    if not tb_ring.compatible(ring):
        raise SchemaError(f"testbed is over {tb_ring}, input over {ring}")
    return Testbed(ring, tuple(module_from_json(m, ring) for m in mods))


# --- report pieces -----------------------------------------------------------


def _factors(M: FpModule) -> list[int]:
    return list(invariant_factors(M).factors)


def _module_report(M: FpModule) -> dict:
    return {
        "module": module_to_json(M),
        "invariant_factors": _factors(M),
        "chain": invariant_factors(M).render(),
    }


def _values(F: FpFunctor, bed: Testbed) -> list[dict]:
    out = []
    for A in bed:
        V = evaluate(F, A)
        out.append({"at": module_to_json(A), "at_factors": _factors(A),
                    "value": _factors(V), "chain": invariant_factors(V).render()})
    return out


def _decision(d: IsoDecision) -> dict:
    out = {"verdict": d.verdict.value, "reason": d.reason, "tried": d.tried}
    if d.certificate is not None:
        out["certificate"] = _module_report(d.certificate)
        out["values"] = [_factors(v) for v in d.values]
    return out


# --- commands ----------------------------------------------------------------


def cmd_module(args) -> dict:
    ring, M = _module_input(args)
    report: dict = {"ring": ring.to_json(), "input": _module_report(M)}
    if args.action == "info":
        report["elementary_divisors"] = [list(pe) for pe in elementary_divisors(M)]
        report["projective"] = is_projective(M)
        report["stable_part"] = [list(pe) for pe in stable_part(M)]
        report["minimal"] = module_to_json(minimize(M))
    elif args.action == "tr":
        report["result"] = _module_report(transpose(M))
    elif args.action == "syzygy":
        report["result"] = _module_report(syzygy(M))
    elif args.action == "linked":
        linked, trace = linkage.linked_module(M)
        report["linked"] = linked
        report["stably_zero"] = trace.stably_zero
        report["trace"] = [dict(stage=name, **_module_report(N))
                           for name, N in zip(linkage.STAGES, trace.modules)]
    return report


def _pair_input(args) -> tuple[RingSpec, FpModule, FpModule]:
    doc = _load(args.input)
    if not isinstance(doc, dict) or not {"M", "N"} <= set(doc):
        raise SchemaError("expected {\"ring\": ..., \"M\": module, \"N\": module}")
    ring = _ring(args, doc)
    return ring, module_from_json(doc["M"], ring), module_from_json(doc["N"], ring)


def cmd_ext(args) -> dict:
    ring, M, N = _pair_input(args)
    value = ext_value(args.n, M, N)
    return {"ring": ring.to_json(), "n": args.n, "M": _module_report(M), "N": _module_report(N),
            "result": _module_report(value)}


def cmd_tor(args) -> dict:
    ring, M, N = _pair_input(args)
    value = tor_value(args.n, M, N)
    return {"ring": ring.to_json(), "n": args.n, "M": _module_report(M), "N": _module_report(N),
            "result": _module_report(value)}


def cmd_functor(args) -> dict:
    ring, F, doc = _functor_input(args)
    bed = _testbed(args, ring)
    report: dict = {"ring": ring.to_json(), "input": functor_to_json(F)}
    if args.action == "eval":
        if "at" in doc:
            bed = Testbed(ring, (module_from_json(doc["at"], ring),))
        report["values"] = _values(F, bed)
    elif args.action == "dual":
        G = agj.dual(F)
        report["result"] = functor_to_json(G)
        report["values"] = _values(G, bed)
    elif args.action == "satellite":
        G = agj.satellite(F, args.k)
        report["k"] = args.k
        report["result"] = functor_to_json(G)
        report["values"] = _values(G, bed)
    elif args.action == "defect":
        report["result"] = _module_report(agj.defect(F))
    elif args.action == "linked":
        report["decision"] = _decision(linkage.linked_functor(F, args.budget, bed.modules))
    return report


def cmd_linkage_table(args) -> dict:
    ring = ring_from_json(args.ring)
    rows = []
    for row in linkage.linkage_table(ring):
        rows.append({"d": row.d, "linked": row.linked, "stably_zero": row.stably_zero,
                     "trace": [_factors(N) for N in row.trace.modules], "chain": row.trace.render()})
    return {"ring": ring.to_json(), "rows": rows}


def cmd_selftest(args) -> dict:
    ring = ring_from_json(args.ring)
    bed = _testbed(args, ring) if args.testbed else None
    cfg = SuiteConfig(ring, seed=args.seed, budget=args.budget, testbed=bed)
    results = run_all(cfg, args.suite or None)
    return {
        "ring": ring.to_json(),
        "seed": args.seed,
        "budget": args.budget,
        "passed": all(r.passed for r in results),
        "suites": [{"name": r.name, "passed": r.passed, "checked": r.checked, "skipped": r.skipped,
                    "failures": r.failures[:5], "seconds": round(r.seconds, 3)} for r in results],
    }


# --- text rendering ----------------------------------------------------------


def _text(report: dict, command: str) -> str:
    lines = []
    if "ring" in report:
        lines.append(f"ring: {RingSpec.from_json(report['ring'])}")
    for key in ("input", "M", "N"):
        part = report.get(key)
        if isinstance(part, dict) and "chain" in part:
            lines.append(f"{key}: {part['chain']}  (presentation {part['module']})")
    if "elementary_divisors" in report:
        eds = ", ".join("Z" if p == 0 else f"{p}^{e}" for p, e in report["elementary_divisors"]) or "none"
        lines.append(f"elementary divisors: {eds}")
        lines.append(f"projective: {report['projective']}")
    if "trace" in report and command == "module":
        for stage in report["trace"]:
            lines.append(f"  {stage['stage']:<22} {stage['chain']}")
        lines.append(f"linked: {report['linked']}  stably zero: {report['stably_zero']}")
    res = report.get("result")
    if isinstance(res, dict) and "chain" in res:
        lines.append(f"result: {res['chain']}")
    elif isinstance(res, dict):
        lines.append(f"result: {json.dumps(res)}")
    for v in report.get("values", []):
        lines.append(f"  F({invariant_chain(v['at_factors'])}) = {v['chain']}")
    if "decision" in report:
        d = report["decision"]
        lines.append(f"verdict: {d['verdict']} ({d['reason']})")
        if "certificate" in d:
            lines.append(f"  certificate: {d['certificate']['chain']} with values {d['values']}")
    for row in report.get("rows", []):
        lines.append(f"d={row['d']:<4} linked={str(row['linked']):<5} stably_zero={str(row['stably_zero']):<5} "
                     f"{row['chain']}")
    for s in report.get("suites", []):
        status = "PASS" if s["passed"] else "FAIL"
        lines.append(f"{status} {s['name']}: {s['checked']} checks, {s['skipped']} skipped, {s['seconds']}s")
        lines.extend(f"    {f}" for f in s["failures"])
    if "error" in report:
        lines.append(f"error: {report['error']}")
    return "\n".join(lines)


def invariant_chain(factors: Sequence[int]) -> str:
    return "|".join(str(d) for d in factors) if factors else "0-module"


# --- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--ring", default="Z", help="ring descriptor: Z, Zmod:8, GFp:5 (default Z)")
    common.add_argument("--testbed", help="JSON file or inline list of test modules")
    common.add_argument("--budget", type=int, default=2, help="coefficient bound for witness search")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="fpfunctors", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("module", parents=[common], help="analyse a module")
    m.add_argument("action", choices=("info", "tr", "syzygy", "linked"))
    m.add_argument("input")

    for name in ("ext", "tor"):
        q = sub.add_parser(name, parents=[common], help=f"{name.capitalize()}^n(M, N)")
        q.add_argument("--n", type=int, default=1)
        q.add_argument("input")

    f = sub.add_parser("functor", parents=[common], help="operate on a functor")
    f.add_argument("action", choices=("eval", "dual", "satellite", "defect", "linked"))
    f.add_argument("--k", type=int, default=1, help="satellite index (negative for left satellites)")
    f.add_argument("input")

    sub.add_parser("linkage-table", parents=[common], help="linkage of R/(d) for d | n")

    s = sub.add_parser("selftest", parents=[common], help="run the property suites")
    s.add_argument("--suite", action="append", choices=sorted(SUITES))
    return p


COMMANDS = {
    "module": cmd_module,
    "ext": cmd_ext,
    "tor": cmd_tor,
    "functor": cmd_functor,
    "linkage-table": cmd_linkage_table,
    "selftest": cmd_selftest,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    code = 0
    try:
        report = COMMANDS[args.command](args)
        if args.command == "selftest" and not report["passed"]:
            code = 1
    except SchemaError as exc:
        report, code = {"error": str(exc), "kind": "schema"}, 2
    except (UnsupportedRing, RingMismatch, ValueError) as exc:
        report, code = {"error": str(exc), "kind": "computation"}, 1
    if args.format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(_text(report, args.command) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
