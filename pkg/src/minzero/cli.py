"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (table mismatch,
failed condition, non-copositivity evidence), 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import census
from .families import FamilyParseError, GuardExceeded, parse_family
from .floatlin import DEFAULT_TOL
from .irred import OutOfRange, irreducibility_report, lin_rel_check
from .matgen import AsymmetryError, DomainError, ParseError, gen_horn, gen_tmat, parse_entry, parse_matrix, \
    serialize_matrix
from .ratlin import SymmetricRationalMatrix
from .zeros import NoMinimalZeroInside, NotAZero, NotCopositiveEvidence, decompose_zero, find_minimal_zeros

JOBS_ENV = "MINZERO_JOBS"


class InputError(Exception):
    pass


def default_jobs() -> int:
    v = os.environ.get(JOBS_ENV)
    if v:
        try:
            return max(1, int(v))
        except ValueError:
            raise InputError(f"{JOBS_ENV} must be an integer, got {v!r}")
    return os.cpu_count() or 1


@dataclass
class CliConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    n: int | None = None
    conditions: tuple[str, ...] = census.ALL_CONDITIONS
    jobs: int = 1
    tol: float = DEFAULT_TOL
    format: str = "text"
    prune: bool = True
    allow_long: bool = False
    strict_chain: bool = False
    backend: str = "exact"
    which: str = "2"
    theta: tuple[float, ...] = ()
    count_only: bool = False


# ------------------------------------------------------------------ helpers

def _num(x) -> str:
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    q = Fraction(x)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vec(v) -> str:
    return "(" + ", ".join(_num(x) for x in v) + ")"


def _set(s) -> str:
    return "{" + ",".join(str(i) for i in s) + "}"


def parse_vector(text: str) -> list[Fraction]:
    body = text.strip().strip("()[]")
    toks = [t for t in re.split(r"[,\s]+", body) if t]
    if not toks:
        raise InputError("empty vector")
    try:
        return [parse_entry(t) for t in toks]
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad vector entry: {e}")


_ANGLE = re.compile(r"^([0-9.]*)\*?pi(?:/([0-9.]+))?$")


def parse_angle(tok: str) -> float:
    t = tok.strip().lower().replace(" ", "")
    m = _ANGLE.match(t)
    try:
        if m:
            a = float(m.group(1)) if m.group(1) else 1.0
            b = float(m.group(2)) if m.group(2) else 1.0
            return a * math.pi / b
        return float(t)
    except ValueError:
        raise InputError(f"bad angle {tok!r}; use a number or forms like pi/10, 2pi/7")


def read_matrix(path: str, backend: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as e:
        raise InputError(str(e))
    A = parse_matrix(text, exact=True)
    if backend == "float":
        return np.array([[float(x) for x in r] for r in A.rows()])
    return A


def emit(cfg: CliConfig, obj: dict, text: str):
    if cfg.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(text)


def _zero_json(z):
    return {"support": [i + 1 for i in z.support], "vector": [_num(x) for x in z.vector]}


# ------------------------------------------------------------------ commands

def cmd_minimal_zeros(cfg: CliConfig) -> int:
    A = read_matrix(cfg.inputs[0], cfg.backend)
    mz = find_minimal_zeros(A, cfg.tol)
    lines = [f"{len(mz)} minimal zero(s)"]
    lines += [f"  {_set(z.support_1based()):<16} {_vec(z.vector)}" for z in mz]
    if len(mz):
        lines.append(f"support family: {mz.family().literal()}")
    emit(cfg, {"n": mz.n, "backend": cfg.backend, "minimal_zeros": [_zero_json(z) for z in mz],
               "family": mz.family().to_json() if len(mz) else []}, "\n".join(lines))
    return 0


def cmd_analyze(cfg: CliConfig) -> int:
    A = read_matrix(cfg.inputs[0], cfg.backend)
    mz = find_minimal_zeros(A, cfg.tol)
    rep = irreducibility_report(A, mz, tol=cfg.tol)
    out = {"n": mz.n, "backend": cfg.backend, "minimal_zeros": [_zero_json(z) for z in mz],
           "family": mz.family().to_json() if len(mz) else [], "irreducibility": rep.to_json()}
    lines = [f"minimal zeros ({len(mz)}):"]
    lines += [f"  {_set(z.support_1based()):<16} {_vec(z.vector)}" for z in mz]
    lines.append("")
    nn = rep.wrt_nonnegative
    lines.append(f"irreducible w.r.t. the nonnegative cone: {'yes' if nn.holds else 'no'}")
    for (i, j), z in nn.witnesses.items():
        w = "none" if z is None else _set(z.support_1based())
        lines.append(f"  pair ({i + 1},{j + 1}): witness zero with support {w}")
    lines.append(f"irreducible w.r.t. the PSD cone: {'yes' if rep.wrt_psd.holds else 'no'} "
                 f"(span rank {rep.wrt_psd.rank} of {mz.n})")
    lines.append("")
    try:
        rel = lin_rel_check(A, mz, cfg.tol)
    except OutOfRange as e:
        out["relations"] = {"skipped": str(e)}
        lines.append(f"angle relations: skipped ({e})")
    else:
        summ = rel.summary()
        out["relations"] = {"summary": summ, "exact": rel.alpha.exact,
                            "failures": [{"relation": c.relation, "index": list(c.index),
                                          "value": None if c.value is None else _num(c.value)}
                                         for c in rel.failures()]}
        lines.append("angle relations (a)-(h): " + ", ".join(f"({k}) {v}" for k, v in summ.items()))
        for c in rel.failures():
            lines.append(f"  ({c.relation}) fails on {_set(c.index)}: value {_num(c.value)}")
    emit(cfg, out, "\n".join(lines))
    return 0


def cmd_decompose(cfg: CliConfig) -> int:
    if cfg.backend != "exact":
        raise InputError("decompose needs the exact backend")
    A = read_matrix(cfg.inputs[0], "exact")
    u = parse_vector(cfg.inputs[1])
    if len(u) != A.n:
        raise InputError(f"vector has {len(u)} entries, matrix has dimension {A.n}")
    parts = decompose_zero(A, u)
    lines = [f"{_num(c)} * {_vec(z.vector)}   support {_set(z.support_1based())}" for z, c in parts]
    emit(cfg, {"vector": [_num(x) for x in u],
               "terms": [{"coefficient": _num(c), **_zero_json(z)} for z, c in parts]}, "\n".join(lines))
    return 0


def cmd_check_family(cfg: CliConfig) -> int:
    f = parse_family(cfg.inputs[0], cfg.n)
    rep = census.check_family(f, cfg.strict_chain)
    lines = [f"family {f.literal()} on n = {f.n}"]
    for k, v in rep.items():
        line = f"  ({k}) {v.status}"
        if v.witness is not None and v.status != "pass":
            line += f"  {json.dumps(v.witness)}"
        lines.append(line)
    emit(cfg, {"n": f.n, "family": f.to_json(), "conditions": rep.to_json(), "all_passed": rep.all_passed},
         "\n".join(lines))
    return 0 if rep.all_passed else 1


def cmd_enumerate(cfg: CliConfig) -> int:
    if cfg.n is None:
        raise InputError("enumerate needs --n")
    res = census.enumerate_classes(cfg.n, cfg.conditions, prune=cfg.prune, strict_chain=cfg.strict_chain,
                                   jobs=cfg.jobs, allow_long=cfg.allow_long)
    label = census.condition_label(res.conditions)
    lines = [f"n = {res.n}, conditions {label}: {res.count} class(es)"]
    if not cfg.count_only:
        lines += [f"{k + 1:>5}  {f.literal()}" for k, f in enumerate(res.classes)]
    emit(cfg, res.to_json(with_classes=not cfg.count_only), "\n".join(lines))
    return 0


def cmd_tables(cfg: CliConfig) -> int:
    rep = census.reproduce_table(cfg.which, cfg.n, jobs=cfg.jobs, strict_chain=cfg.strict_chain,
                                 allow_long=cfg.allow_long)
    emit(cfg, rep.to_json(), rep.text())
    return 0 if rep.ok else 1


def cmd_gen(cfg: CliConfig) -> int:
    kind = cfg.inputs[0]
    if kind == "horn":
        A = gen_horn()
    elif kind == "tmat":
        if len(cfg.theta) != 5:
            raise InputError("tmat needs five angles")
        A = gen_tmat(cfg.theta)
    else:
        raise InputError(f"unknown generator {kind!r}; use horn or tmat")
    text = serialize_matrix(A)
    if cfg.format == "json":
        rows = A.rows() if isinstance(A, SymmetricRationalMatrix) else A.tolist()
        print(json.dumps({"n": len(rows), "rows": [[_num(x) for x in r] for r in rows]}, indent=2))
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {"analyze": cmd_analyze, "minimal-zeros": cmd_minimal_zeros, "decompose": cmd_decompose,
            "check-family": cmd_check_family, "enumerate": cmd_enumerate, "tables": cmd_tables, "gen": cmd_gen}


def run(cfg: CliConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except NotCopositiveEvidence as e:
        # a precondition of the matrix commands, so an input error
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InputError, ParseError, AsymmetryError, FamilyParseError, DomainError, NotAZero, NoMinimalZeroInside,
            census.CensusRefused, GuardExceeded, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


# ------------------------------------------------------------------ argv

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float-backend tolerance")
    common.add_argument("--jobs", type=int, default=None, help=f"worker processes (default: ${JOBS_ENV} or CPU count)")
    common.add_argument("--strict-chain", action="store_true", help="read the (iii) chain order as strict inclusion")

    ap = argparse.ArgumentParser(prog="minzero", description="Minimal zeros of copositive matrices and "
                                 "the census of candidate minimal support sets.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("analyze", "minimal-zeros"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("matrix", help="matrix file ('-' for stdin)")
        p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("matrix")
    p.add_argument("vector", help="e.g. 1,2,1,0,0 (rationals allowed)")
    p = sub.add_parser("check-family", parents=[common])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("family", help='e.g. "{1,2},{2,3},{3,4},{4,5},{1,5}"')
    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--conditions", default="i-v", help="e.g. i-v or i,ii,iv,v")
    p.add_argument("--prune", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--count-only", action="store_true")
    p = sub.add_parser("tables", parents=[common])
    p.add_argument("--which", choices=("1", "2"), default="2")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--allow-long", action="store_true")
    p = sub.add_parser("gen", parents=[common])
    p.add_argument("kind", choices=("horn", "tmat"))
    p.add_argument("theta", nargs="*", help="five angles for tmat, e.g. pi/10 (x5)")
    return ap


def config_from_args(ns) -> CliConfig:
    cfg = CliConfig(ns.command, format=ns.format, tol=ns.tol, strict_chain=ns.strict_chain)
    cfg.jobs = ns.jobs if ns.jobs is not None else default_jobs()
    if cfg.jobs < 1:
        raise InputError("--jobs must be positive")
    if ns.command in ("analyze", "minimal-zeros"):
        cfg.inputs, cfg.backend = [ns.matrix], ns.backend
    elif ns.command == "decompose":
        cfg.inputs = [ns.matrix, ns.vector]
    elif ns.command == "check-family":
        cfg.inputs, cfg.n = [ns.family], ns.n
    elif ns.command == "enumerate":
        cfg.n, cfg.prune, cfg.allow_long, cfg.count_only = ns.n, ns.prune, ns.allow_long, ns.count_only
        cfg.conditions = census.normalize_conditions(ns.conditions)
    elif ns.command == "tables":
        cfg.which, cfg.n, cfg.allow_long = ns.which, ns.n, ns.allow_long
    elif ns.command == "gen":
        cfg.inputs = [ns.kind]
        if ns.kind == "tmat":
            cfg.theta = tuple(parse_angle(t) for t in ns.theta)
        elif ns.theta:
            raise InputError("horn takes no angles")
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
