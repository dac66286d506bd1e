"""``fit``: JSON front end to the fitting pipeline and its oracles.

Usage::

    fit lines job.json
    fit check < job.json
    fit verify --seed 7 --trials 50

A job is one JSON document::

    {"field": "Q", "ambient": "affine", "points": [[1, 0], [1, 1], ["3", "-1"]],
     "options": {"order": "grevlex"}}

Exit codes: 0 on success, 2 for invalid input or a violated precondition,
1 when two independent routes disagree. Every response is a JSON object
carrying ``"schema": "nilfit/1"``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import jsonschema

from . import SCHEMA
from .errors import FitError, InternalInconsistencyError
from .fields import FieldError, PrimeField, field_from_descriptor
from .fitting import (
    DEFAULT_MAX_GENERATORS,
    DEFAULT_MAX_POINTS,
    FatPointScheme,
    PointSet,
    check_generic,
    dual_arrangement,
    embed_affine,
    fat_point_ideal,
    hyp_via_nil,
    min_distance,
    support_ideal,
    verify_decomposition,
)
from .groebner import ResourceLimitError
from .ideals import DEFAULT_LIMITS, Limits, nil_index
from .monomials import MonomialOrder

COMMANDS = ("check", "hyp", "lines", "nil", "mindist", "fatpoints", "verify", "decomp")

_COORD = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$"},
    ]
}

JOB_SCHEMA = {
    "type": "object",
    "properties": {
        "schema": {"const": SCHEMA},
        "field": {
            "oneOf": [
                {"type": "string"},
                {
                    "type": "object",
                    "properties": {"Fp": {"type": "integer", "minimum": 2}},
                    "required": ["Fp"],
                    "additionalProperties": False,
                },
            ]
        },
        "ambient": {"enum": ["affine", "projective"]},
        "points": {"type": "array", "items": {"type": "array", "items": _COORD, "minItems": 1}},
        "multiplicities": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "options": {
            "type": "object",
            "properties": {
                "order": {"type": "string"},
                "max_points": {"type": "integer", "minimum": 1},
                "max_generators": {"type": "integer", "minimum": 1},
                "max_pairs": {"type": "integer", "minimum": 1},
                "max_terms": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer"},
            },
            "additionalProperties": False,
        },
    },
    "required": ["points"],
    "additionalProperties": False,
}


class InputError(Exception):
    """Malformed job: bad JSON, schema violation, unknown field or order."""

    def __init__(self, code: str, message: str, details=None):
        super().__init__(message)
        self.code = code
        self.details = details

    def to_dict(self) -> dict:
        out = {"type": self.code, "message": str(self)}
        if self.details is not None:
            out["details"] = self.details
        return out


# -- job handling -------------------------------------------------------------------


class Job:
    def __init__(self, doc: dict, args: argparse.Namespace):
        opts = doc.get("options", {})
        try:
            self.field = field_from_descriptor(args.field if args.field is not None else doc.get("field", "Q"))
        except (FieldError, ValueError, TypeError) as exc:
            raise InputError("BadField", str(exc)) from exc
        order = args.order or opts.get("order", "grevlex")
        try:
            self.order = MonomialOrder.from_name(order, 1).kind
        except ValueError as exc:
            raise InputError("BadOrder", str(exc)) from exc
        self.ambient = doc.get("ambient", "affine")
        self.points = doc.get("points", [])
        self.multiplicities = doc.get("multiplicities")
        self.max_points = _positive(args.max_points, opts.get("max_points", DEFAULT_MAX_POINTS), "--max-points")
        self.max_generators = _positive(
            args.max_generators, opts.get("max_generators", DEFAULT_MAX_GENERATORS), "--max-generators"
        )
        self.limits = Limits(
            max_pairs=opts.get("max_pairs", DEFAULT_LIMITS.max_pairs),
            max_terms=opts.get("max_terms", DEFAULT_LIMITS.max_terms),
        )
        self.seed = args.seed if args.seed is not None else opts.get("seed", 0)

    def pointset(self) -> PointSet:
        try:
            if self.ambient == "affine":
                return embed_affine(self.points, self.field)
            return PointSet.from_projective(self.points, self.field)
        except FitError:
            raise
        except (FieldError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError("BadCoordinate", str(exc)) from exc

    def pipeline(self, ps: PointSet):
        return hyp_via_nil(
            ps,
            order=self.order,
            limits=self.limits,
            max_points=self.max_points,
            max_generators=self.max_generators,
        )


def _positive(flag, default, name):
    value = flag if flag is not None else default
    if not isinstance(value, int) or value < 1:
        raise InputError("BadOption", f"{name} must be a positive integer")
    return value


def load_job(path: Optional[str], stdin=None) -> dict:
    if path is None or path == "-":
        text = (stdin or sys.stdin).read()
        source = "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("ReadError", str(exc)) from exc
        source = path
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            "ParseError",
            f"{source}: {exc.msg}",
            {"line": exc.lineno, "column": exc.colno},
        ) from exc
    return validate_job(doc)


def validate_job(doc) -> dict:
    try:
        jsonschema.validate(doc, JOB_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path)
        raise InputError("SchemaError", exc.message, {"path": where or "/"}) from exc
    return doc


# -- commands ----------------------------------------------------------------------


def _oracle_checks(ps, report) -> list:
    from .oracle import compare_with_oracles

    checks = compare_with_oracles(ps, report)
    bad = [c.quantity for c in checks if not c.agree]
    if bad:
        raise InternalInconsistencyError(f"oracle disagreement on {', '.join(bad)}")
    return [c.to_dict() for c in checks]


def cmd_check(job: Job, args) -> dict:
    ps = job.pointset()
    gen = check_generic(ps)
    if not gen:
        from .errors import NotGenericError

        raise NotGenericError(f"points {list(gen.witness)} do not span a hyperplane", witness=gen.witness)
    return {"valid": True, "k": ps.k, "n": ps.n, "generic": True, "field": job.field.descriptor()}


def cmd_hyp(job: Job, args) -> dict:
    ps = job.pointset()
    report = job.pipeline(ps)
    out = {"k": report.k, "n": report.n, "hyp": report.hyp, "nil": report.nil, "d": report.min_distance}
    if args.oracle:
        out["oracle"] = _oracle_checks(ps, report)
    return out


def cmd_lines(job: Job, args) -> dict:
    ps = job.pointset()
    report = job.pipeline(ps)
    out = report.to_dict()
    if args.oracle:
        out["oracle"] = _oracle_checks(ps, report)
    return out


def cmd_nil(job: Job, args) -> dict:
    ps = job.pointset()
    report = job.pipeline(ps)
    res = report.nil_result
    return {
        "k": report.k,
        "n": report.n,
        "nil": report.nil,
        "products_generators": len(report.products.generators),
        "radical_basis": [str(g) for g in report.radical.groebner().elements],
        "chain": [[str(g) for g in Q.groebner().elements] for Q in res.chain],
    }


def cmd_mindist(job: Job, args) -> dict:
    ps = job.pointset()
    report = job.pipeline(ps)
    md = min_distance(ps, report)
    out = {"n": ps.n, "k": ps.k, "hyp": report.hyp, **md.to_dict(ps.field)}
    if args.oracle and isinstance(ps.field, PrimeField):
        from .oracle import min_distance_bruteforce

        d = min_distance_bruteforce(ps)
        if d != md.d:
            raise InternalInconsistencyError(f"exhaustive minimum distance {d} != {md.d}")
        out["oracle"] = {"d": d, "agree": True}
    return out


def cmd_fatpoints(job: Job, args) -> dict:
    if job.multiplicities is None:
        raise InputError("SchemaError", "fatpoints needs a 'multiplicities' array", {"path": "/"})
    points = [list(p) + [1] for p in job.points] if job.ambient == "affine" else job.points
    try:
        Z = FatPointScheme.create(points, job.multiplicities, job.field)
    except FitError:
        raise
    except (FieldError, TypeError, ZeroDivisionError) as exc:
        raise InputError("BadCoordinate", str(exc)) from exc
    except ValueError as exc:
        raise InputError("SchemaError", str(exc), {"path": "/multiplicities"}) from exc
    ring = Z.ring(job.order)
    I = fat_point_ideal(Z, ring, limits=job.limits)
    J = support_ideal(Z, ring, limits=job.limits)
    res = nil_index(I, J, cap=max(Z.multiplicities) + 1)
    if res.index != max(Z.multiplicities):
        raise InternalInconsistencyError(f"nil = {res.index} but the largest multiplicity is {max(Z.multiplicities)}")
    out = {
        "nil": res.index,
        "max_multiplicity": max(Z.multiplicities),
        "ideal_basis": [str(g) for g in I.groebner().elements],
        "support_basis": [str(g) for g in J.groebner().elements],
    }
    if args.oracle:
        from .oracle import nil_bruteforce

        s = nil_bruteforce(I, J, cap=res.index + 1)
        if s != res.index:
            raise InternalInconsistencyError(f"brute-force nil {s} != {res.index}")
        out["oracle"] = {"nil": s, "agree": True}
    return out


def cmd_decomp(job: Job, args) -> dict:
    ps = job.pointset()
    gen = check_generic(ps)
    if not gen:
        from .errors import NotGenericError

        raise NotGenericError(f"points {list(gen.witness)} do not span a hyperplane", witness=gen.witness)
    A = dual_arrangement(ps, job.order)
    cert = verify_decomposition(A, limits=job.limits, max_generators=job.max_generators)
    if not cert.holds:
        raise InternalInconsistencyError("the products ideal is not the predicted intersection of coatom powers")
    return cert.to_dict()


def cmd_verify(job: Optional[Job], args) -> dict:
    from .oracle import run_equivalence_trials

    if job is not None and job.points:
        ps = job.pointset()
        report = job.pipeline(ps)
        checks = _oracle_checks(ps, report)
        return {"hyp": report.hyp, "checks": checks, "agree": True}
    trials = args.trials if args.trials is not None else 20
    if trials < 1:
        raise InputError("BadOption", "--trials must be a positive integer")
    seed = args.seed if args.seed is not None else 0
    field = job.field if job is not None else field_from_descriptor(args.field or "Q")
    records = run_equivalence_trials(seed, trials, field=field)
    agreements = sum(r.agree for r in records)
    out = {
        "seed": seed,
        "trials": trials,
        "agreements": agreements,
        "records": [r.to_dict() for r in records],
    }
    if agreements != trials:
        out["disagreements"] = [r.trial for r in records if not r.agree]
    return out


HANDLERS = {
    "check": cmd_check,
    "hyp": cmd_hyp,
    "lines": cmd_lines,
    "nil": cmd_nil,
    "mindist": cmd_mindist,
    "fatpoints": cmd_fatpoints,
    "verify": cmd_verify,
    "decomp": cmd_decomp,
}


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fit", description="Exact hyperplane fitting by the index of nilpotency.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("job", nargs="?", help="JSON job file ('-' or omitted: standard input)")
    ap.add_argument("--field", help="override the job's field: Q, GF(p) or Fp:p")
    ap.add_argument("--order", help="monomial order: grevlex (default) or lex")
    ap.add_argument("--max-points", type=int, dest="max_points")
    ap.add_argument("--max-generators", type=int, dest="max_generators")
    ap.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--trials", type=int)
    return ap


def run(argv: Sequence[str] | None = None, stdin=None) -> tuple:
    """Execute one command; returns ``(exit_code, response_dict)``."""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify" and args.job is None:
            job = None
        else:
            job = Job(load_job(args.job, stdin), args)
        body = HANDLERS[args.command](job, args)
        code = 1 if body.get("disagreements") else 0
        return code, {"schema": SCHEMA, "command": args.command, **body}
    except InputError as exc:
        return 2, {"schema": SCHEMA, "command": args.command, "error": exc.to_dict()}
    except FitError as exc:
        return 2, {"schema": SCHEMA, "command": args.command, "error": exc.to_dict()}
    except ResourceLimitError as exc:
        return 2, {"schema": SCHEMA, "command": args.command, "error": {"type": "CapExceeded", "message": str(exc)}}
    except InternalInconsistencyError as exc:
        return 1, {"schema": SCHEMA, "command": args.command, "error": exc.to_dict()}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(argv)
    sys.stdout.write(dumps(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
