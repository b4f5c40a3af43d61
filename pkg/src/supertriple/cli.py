"""Command-line interface: ``supertriple <command> ...``.

Exit codes: 0 when every check passes, 1 when a mathematical violation is
found, 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import deformation as dfm
from . import io
from .cohomology import (
    adjoint_representation,
    check_representation,
    coboundary,
    cochain_space,
    cohomology,
    semidirect_sum,
    verify_complex,
)
from . import spaces
from .core import TripleSystem, verify_axioms
from .linalg import format_rational, parse_rational
from .systems import BUNDLED, bundled_path, random_valid_systems

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    error: str | None = None
    lines: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "violations" if self.violations else "ok"

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "violations": EXIT_VIOLATION, "error": EXIT_INPUT}[self.status]

    def to_json(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "status": self.status,
               "results": self.results}
        if self.violations:
            out["violations"] = self.violations
        if self.error is not None:
            out["error"] = self.error
        return out

    def say(self, line: str = ""):
        self.lines.append(line)


def thread_cap() -> int:
    """Parallelism cap from SUPERTRIPLE_THREADS; every computation here runs on one thread."""
    raw = os.environ.get("SUPERTRIPLE_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise io.InputError(f"SUPERTRIPLE_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise io.InputError(f"SUPERTRIPLE_THREADS must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------------------
# input helpers

def _digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def _locate(report: RunReport, arg: str, key: str) -> Path:
    p = Path(arg)
    if not p.exists() and arg in BUNDLED:
        p = Path(str(bundled_path(arg)))
    if not p.exists():
        raise io.InputError(f"no such file: {arg}")
    report.inputs[key] = {"path": arg, "digest": _digest(p)}
    return p


def _system(report, arg) -> TripleSystem:
    return io.load_system(_locate(report, arg, "system"))


def _rep(report, T, arg, adjoint):
    if adjoint or arg is None:
        return adjoint_representation(T)
    return io.load_representation(T, _locate(report, arg, "representation"))


def _require_valid(report: RunReport, T: TripleSystem) -> bool:
    ax = verify_axioms(T)
    if not ax.ok:
        report.results["axioms"] = ax.to_json()
        report.violations.append({"check": "axioms", "failed": ax.failed})
        report.say(f"{T.name or 'system'} is not a valid system: fails {', '.join(ax.failed)}")
    return ax.ok


def _mark(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def _check_table(report, checks, key="check"):
    for ch in checks:
        tag = " (info)" if ch.get("informational") else ""
        wit = f"  at {tuple(ch['witness'])}" if "witness" in ch and ch["witness"] is not None else ""
        report.say(f"  {_mark(ch['pass']):4}  {ch[key]}{tag}{wit}")


def _absorb(report, name, payload, ok, failed):
    report.results[name] = payload
    if not ok:
        report.violations.append({"check": name, "failed": list(failed)})


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args, report):
    T = _system(report, args.system)
    ax = verify_axioms(T)
    _absorb(report, "axioms", ax.to_json(), ax.ok, ax.failed)
    report.say(f"{T.name or args.system}: dim {T.dim}, delta {T.delta:+d}, parity {list(T.parity)}")
    _check_table(report, report.results["axioms"]["axioms"], "axiom")


def cmd_spaces(args, report):
    T = _system(report, args.system)
    if not _require_valid(report, T):
        return
    ks = [args.k] if args.k is not None else [0, 1]
    kinds = [args.kind] if args.kind else list(spaces.KINDS)
    out = []
    for kind in kinds:
        for k in ks if kind in ("der", "qder", "gder", "centroid") else [None]:
            sp = spaces.operator_space(T, kind, k or 0)
            out.append(sp.to_json(with_basis=args.json or args.verbose))
            report.say(f"  {sp.label():14} even {sp.dim_even:3}  odd {sp.dim_odd:3}")
            if kind in ("qder", "gder") and not spaces.verify_witnesses(T, sp):
                report.violations.append({"check": f"{sp.label()} witnesses"})
    report.results["spaces"] = out


def cmd_theorems(args, report):
    T = _system(report, args.system)
    if not _require_valid(report, T):
        return
    tr = spaces.verify_structure_theorems(T)
    _absorb(report, "theorems", tr.to_json(), tr.ok, tr.failed)
    for label, (e, o) in tr.dims.items():
        report.say(f"  {label:14} even {e:3}  odd {o:3}")
    _check_table(report, report.results["theorems"]["claims"], "claim")


def cmd_rep_check(args, report):
    T = _system(report, args.system)
    rep = _rep(report, T, args.rep, args.adjoint)
    r = check_representation(T, rep)
    _absorb(report, "representation", r.to_json(), r.ok, r.failed)
    _check_table(report, report.results["representation"]["checks"], "identity")


def cmd_semidirect(args, report):
    T = _system(report, args.system)
    rep = _rep(report, T, args.rep, args.adjoint)
    r = check_representation(T, rep)
    _absorb(report, "representation", r.to_json(), r.ok, r.failed)
    if not r.ok:
        _check_table(report, report.results["representation"]["checks"], "identity")
        return
    S = semidirect_sum(T, rep, check=False)
    ax = verify_axioms(S)
    _absorb(report, "axioms", ax.to_json(), ax.ok, ax.failed)
    io.dump_system(S, args.output)
    report.results["output"] = {"path": args.output, "dim": S.dim, "parity": list(S.parity)}
    report.say(f"wrote {args.output} (dim {S.dim}); axioms {_mark(ax.ok)}")


def cmd_cohomology(args, report):
    T = _system(report, args.system)
    if not _require_valid(report, T):
        return
    rep = _rep(report, T, args.rep, args.adjoint)
    res = cohomology(T, rep, args.n)
    parts = []
    for p in res["degrees"]:
        d = p.to_json()
        if not (args.json or args.verbose):
            d.pop("representatives")
        parts.append(d)
        report.say(f"  H^{p.n} degree {p.degree}: C {p.dim_C}  Z {p.dim_Z}  B {p.dim_B}  H {p.dim_H}")
        if not p.boundaries_closed:
            report.violations.append({"check": f"B{p.n} in Z{p.n}", "degree": p.degree})
    report.results["cohomology"] = {"n": args.n, "degrees": parts, "total": res["total"]}
    report.say(f"  total dim_H = {res['total']['dim_H']}")


def cmd_complex_check(args, report):
    T = _system(report, args.system)
    if not _require_valid(report, T):
        return
    rep = _rep(report, T, args.rep, args.adjoint)
    r = verify_complex(T, rep)
    _absorb(report, "complex", r.to_json(), r.ok, r.failed)
    _check_table(report, report.results["complex"]["checks"], "identity")


def cmd_rigidity(args, report):
    T = _system(report, args.system)
    if not _require_valid(report, T):
        return
    r = dfm.rigidity_report(T)
    report.results["rigidity"] = r.to_json()
    report.say(f"  dim H3 = {r.dim_H3} (even part {r.dim_H3_even}); "
               f"H3 = 0 suffices for rigidity: {'yes' if r.rigid_sufficient else 'no'}")


def cmd_deform_check(args, report):
    fd = io.load_deformation(_locate(report, args.file, "deformation"))
    if not _require_valid(report, fd.base):
        return
    r = dfm.check_deformation(fd)
    _absorb(report, "deformation", r.to_json(), r.ok, r.failed)
    _check_table(report, report.results["deformation"]["checks"])


def cmd_deform_equiv(args, report):
    T = _system(report, args.system)
    if not _require_valid(report, T):
        return
    f1 = io.load_trilinear(T, _locate(report, args.f1, "f1"))
    f1p = io.load_trilinear(T, _locate(report, args.f1p, "f1p"))
    eq = dfm.first_order_equivalence(T, f1, f1p)
    report.results["equivalence"] = eq.to_json()
    if eq.cohomologous:
        report.say("cohomologous; witness phi:")
        for row in report.results["equivalence"]["witness"]:
            report.say("  " + " ".join(f"{x:>6}" for x in row))
    else:
        report.violations.append({"check": "equivalence", "result": "not cohomologous"})
        report.say("not cohomologous")


def _lambdas(raw: str) -> list[Fraction]:
    try:
        out = [parse_rational(x.strip()) for x in raw.split(",") if x.strip()]
    except ValueError as exc:
        raise io.InputError(f"bad --lambdas value: {exc}") from exc
    if not out:
        raise io.InputError("--lambdas needs at least one value")
    return out


def cmd_nijenhuis(args, report):
    lambdas = _lambdas(args.lambdas)
    T, N = io.load_nijenhuis(_locate(report, args.file, "nijenhuis"))
    if not _require_valid(report, T):
        return
    nj = dfm.is_nijenhuis(T, N)
    _absorb(report, "nijenhuis", nj.to_json(), nj.ok, nj.failed)
    _check_table(report, report.results["nijenhuis"]["checks"])
    if not nj.ok:
        return
    psi = dfm.nijenhuis_infinitesimal(T, N)
    report.results["psi"] = io.trilinear_to_entries(psi)
    sp = dfm.check_specializations(T, psi, lambdas)
    _absorb(report, "specializations", sp.to_json(), sp.ok, sp.failed)
    _check_table(report, report.results["specializations"]["checks"])
    trivial = []
    for lam in lambdas:
        tw = dfm.verify_trivial_witness(T, N, lam)
        trivial.append(tw.to_json())
        outcome = "singular (skipped)" if tw.singular else _mark(tw.passed)
        report.say(f"  trivial witness at lambda={format_rational(lam)}: {outcome}")
        if not tw.singular and not tw.passed:
            report.violations.append({"check": "trivial witness", "lambda": format_rational(lam)})
    report.results["trivial_witness"] = trivial


def _random_constrained(space, rng):
    coords = [rng.randint(-3, 3) for _ in range(space.dim)]
    return space.tensor(coords)


def cmd_selftest(args, report):
    """Randomized identities on small random systems."""
    rng = random.Random(args.seed)
    systems = random_valid_systems(args.count, seed=args.seed)
    rows = []
    for T in systems:
        rep = adjoint_representation(T)
        cx = verify_complex(T, rep)
        repc = check_representation(T, rep)
        sd = verify_axioms(semidirect_sum(T, rep, check=False)).ok
        sp = cochain_space(T, rep, 3, 0)
        circ = True
        if sp.dim:
            f1 = _random_constrained(sp, rng)
            lhs = dfm.circle(T, T.c, f1) + dfm.circle(T, f1, T.c)
            circ = bool(np.all(lhs == coboundary(T, rep, 3, f1, 0)))
        row = {"system": T.name, "dim": T.dim, "delta": T.delta, "representation": repc.ok,
               "complex": cx.ok, "semidirect": sd, "deformation identity": circ}
        rows.append(row)
        ok = all(v for k, v in row.items() if isinstance(v, bool))
        if not ok:
            report.violations.append({"check": "selftest", "system": T.name})
        report.say(f"  {_mark(ok):4}  {T.name} (dim {T.dim}, delta {T.delta:+d})")
    report.results["selftest"] = {"seed": args.seed, "systems": rows}


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS,
                        help="include basis tensors in human output")

    parser = argparse.ArgumentParser(prog="supertriple", parents=[common],
                                     description="Exact checks and computations for supertriple systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    def rep_args(p, optional=True):
        p.add_argument("rep", nargs="?" if optional else None, help="representation file")
        p.add_argument("--adjoint", action="store_true", help="use the adjoint representation")

    p = add("verify", cmd_verify, "check the axioms")
    p.add_argument("system")

    p = add("spaces", cmd_spaces, "derivation-type operator spaces")
    p.add_argument("system")
    p.add_argument("--kind", choices=spaces.KINDS)
    p.add_argument("--k", type=int, choices=(0, 1))

    p = add("theorems", cmd_theorems, "structure theorems among the operator spaces")
    p.add_argument("system")

    p = add("rep-check", cmd_rep_check, "check a representation")
    p.add_argument("system")
    rep_args(p)

    p = add("semidirect", cmd_semidirect, "write the semidirect sum with a representation")
    p.add_argument("system")
    rep_args(p)
    p.add_argument("-o", "--output", required=True)

    p = add("cohomology", cmd_cohomology, "cochain, cocycle, coboundary and cohomology dimensions")
    p.add_argument("system")
    rep_args(p)
    p.add_argument("--n", type=int, choices=(3, 4), default=3)

    p = add("complex-check", cmd_complex_check, "check that the coboundary maps square to zero")
    p.add_argument("system")
    rep_args(p)

    p = add("rigidity", cmd_rigidity, "third adjoint cohomology and the rigidity criterion")
    p.add_argument("system")

    p = add("deform", None, "formal deformations")
    dsub = p.add_subparsers(dest="deform_command", required=True)
    q = dsub.add_parser("check", parents=[common], help="check a truncated deformation")
    q.add_argument("file")
    q.set_defaults(func=cmd_deform_check)
    q = dsub.add_parser("equiv", parents=[common], help="first-order equivalence of two cocycles")
    q.add_argument("system")
    q.add_argument("f1")
    q.add_argument("f1p")
    q.set_defaults(func=cmd_deform_equiv)

    p = add("nijenhuis", None, "Nijenhuis operators")
    nsub = p.add_subparsers(dest="nijenhuis_command", required=True)
    q = nsub.add_parser("check", parents=[common], help="check N and the deformation it induces")
    q.add_argument("file")
    q.add_argument("--lambdas", default="1,-1,2,1/2")
    q.set_defaults(func=cmd_nijenhuis)

    p = add("selftest", cmd_selftest, "randomized identity checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=6)
    return parser


def _command_name(args) -> str:
    parts = [args.command]
    for extra in ("deform_command", "nijenhuis_command"):
        if getattr(args, extra, None):
            parts.append(getattr(args, extra))
    return " ".join(parts)


def run(argv=None) -> tuple[RunReport, bool]:
    """Parse and execute; returns the report and whether --json was requested."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        report = RunReport("?", error="usage error")
        if exc.code == 0:
            report.error = None
        return report, False
    args.json = getattr(args, "json", False)
    args.verbose = getattr(args, "verbose", False)
    report = RunReport(_command_name(args))
    try:
        report.results["threads"] = thread_cap()
        args.func(args, report)
    except io.InputError as exc:
        report.error = str(exc)
    except ValueError as exc:
        report.error = f"invalid input: {exc}"
    return report, args.json


def main(argv=None) -> int:
    report, as_json = run(argv)
    if report.command == "?":
        return report.exit_code
    if as_json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        for line in report.lines:
            print(line)
        if report.error:
            print(f"error: {report.error}", file=sys.stderr)
        print(f"status: {report.status}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
