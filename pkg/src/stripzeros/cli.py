"""Command-line front end: apply operators, run verification suites, emit reports.

Exit codes: 0 pass, 1 counterexample, 2 usage or I/O error, 3 solver
failure, 4 too many inconclusive cases.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import ops
from .errors import MalformedInput, StripZerosError, TolNotMet, Unconverged
from .polycore import Poly
from .roots import find_roots, strip_width
from .suites import CE, INC, SUITES, SuiteReport, run_suite

log = logging.getLogger("stripzeros")

EXIT_PASS, EXIT_COUNTER, EXIT_USAGE, EXIT_SOLVER, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
CSV_COLUMNS = ["suite", "case", "predicted", "observed", "margin", "status"]
STATE_FILE = "last_report.json"


class UsageError(Exception):
    pass


# --- input parsing --------------------------------------------------------------


def load_json_arg(text: str):
    """Parse ``text`` as JSON, or read it from a file when it names one."""
    if text.startswith("@"):
        text = text[1:]
    p = Path(text)
    try:
        if not text.lstrip().startswith(("{", "[")) and p.exists():
            text = p.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {text}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from exc


_TERM = re.compile(r"([+-]?)\s*(\d*\.?\d*(?:[eE][+-]?\d+)?)\s*(t(?:\^?(\d+))?)?")


def parse_kernel(spec: str) -> Poly:
    """Kernel from a shorthand for H(it) such as "-t4" or "-t2-0.5t4", or JSON.

    The shorthand lists the terms b_k t^k of H(it); only even k keep H real,
    and then h_k = b_k (-1)^(k/2). JSON form: {"H_coeffs": [h_0, h_1, ...]}.
    """
    s = spec.strip()
    if s.startswith("{") or s.startswith("@") or Path(s).suffix == ".json":
        d = load_json_arg(s)
        if not isinstance(d, dict) or "H_coeffs" not in d:
            raise UsageError("kernel JSON needs 'H_coeffs'")
        return Poly([float(x) for x in d["H_coeffs"]])
    body = s.replace(" ", "")
    if not body:
        raise UsageError("empty kernel spec")
    coeffs = {}
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse kernel term at {body[pos:]!r}")
        sign, num, tpart, power = m.groups()
        if not num and not tpart:
            raise UsageError(f"cannot parse kernel term at {body[pos:]!r}")
        val = float(num) if num else 1.0
        if sign == "-":
            val = -val
        k = 0 if not tpart else int(power) if power else 1
        if k % 2:
            raise UsageError("odd powers of t make the kernel non-real")
        coeffs[k] = coeffs.get(k, 0.0) + val
        pos = m.end()
    deg = max(coeffs)
    h = np.zeros(deg + 1)
    for k, b in coeffs.items():
        h[k] = b * (-1) ** (k // 2)
    return Poly(h)


def build_operator(spec: dict, degree: int):
    """Return a callable Poly -> Poly plus the family tag and a predicted-width rule."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise UsageError("operator JSON needs a 'family'")
    fam = spec["family"]
    pr = spec.get("params", {}) or {}
    order = max(degree, 1)
    try:
        if fam == "strong":
            h = Poly.from_json(pr["h"])
            pair = ops.op_strong(h, float(pr["lam"]), order)
            return (lambda p: ops.apply_strong_sum(pair, p)), (lambda mu: ops.predicted_width(pair[0], mu))
        if fam == "multiplier":
            m = ops.MultiplierOp([float(x) for x in pr["gamma"]])
            ok = ops.multiplier_is_admissible(m.gamma)
            return (lambda p: ops.apply_multiplier(m, p)), ((lambda mu: mu) if ok else None)
        if fam == "cosine_transform" and "g" in pr:
            mom = ops.moments_closed_form(pr["g"], order // 2 + 1)
            op = ops.op_cosine_transform(mom, float(pr["lam"]), order)
        else:
            op = ops.from_json(spec, order)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, StripZerosError) and not isinstance(exc, MalformedInput):
            raise
        raise UsageError(f"bad operator spec: {exc}") from exc

    def rule(mu, op=op):
        try:
            return ops.predicted_width(op, mu)
        except ops.NoClaim:
            return None

    return (lambda p: ops.apply(op, p)), rule


# --- commands ------------------------------------------------------------------------


def _width(p: Poly, tol: float):
    if p.degree is None or p.degree == 0:
        return 0.0, None
    rs = find_roots(p, tol)
    if not rs.converged:
        raise Unconverged("root finder did not converge")
    return strip_width(rs), rs


def cmd_apply(args) -> int:
    try:
        p = Poly.from_json(load_json_arg(args.poly))
    except MalformedInput as exc:
        raise UsageError(str(exc)) from exc
    deg = p.degree or 0
    fn, rule = build_operator(load_json_arg(args.op), deg)
    q = fn(p)
    if p.is_real and not q.is_real and np.max(np.abs(q.coeffs.imag)) <= 1e-12 * np.max(np.abs(q.coeffs)):
        q = q.real_part()
    w_in, _ = _width(p, args.tol)
    w_out, rs = _width(q, args.tol)
    predicted = rule(w_in) if rule else None
    out = {
        "output": q.to_json(),
        "roots": rs.to_json() if rs is not None else {"roots": [], "residuals": [], "converged": True},
        "input_width": w_in,
        "output_width": w_out,
        "predicted_width": predicted,
        "degenerate": ops.is_degenerate(q),
    }
    _emit(json.dumps(out, indent=2), args.out)
    if predicted is not None and w_out > predicted + 1e-8:
        return EXIT_COUNTER
    return EXIT_PASS


def report_to_csv(rep: SuiteReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for i, c in enumerate(rep.cases):
        row = [rep.suite_id, c.get("case", i)]
        for key in ("predicted", "observed", "margin"):
            v = c.get(key)
            row.append("" if v is None else json.dumps(v) if isinstance(v, list) else v)
        row.append(c["status"])
        w.writerow(row)
    return buf.getvalue()


def render(rep: SuiteReport, fmt: str) -> str:
    if fmt == "csv":
        return report_to_csv(rep)
    return json.dumps(rep.to_json(), indent=2)


def _emit(text: str, path: Optional[str]):
    if path:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc}") from exc
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _state_path(args) -> Path:
    return Path(args.state_dir) / STATE_FILE


def verdict_code(rep: SuiteReport, max_inconclusive: float) -> int:
    counts = rep.counts()
    if counts.get(CE, 0):
        return EXIT_COUNTER
    total = max(len(rep.cases), 1)
    if counts.get(INC, 0) / total > max_inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def cmd_verify(args) -> int:
    kernel = parse_kernel(args.kernel) if args.kernel else None
    rep = run_suite(args.suite, seed=args.seed, n=args.n, tol=args.tol, threads=args.threads, kernel=kernel)
    counts = rep.counts()
    header = (f"suite={rep.suite_id} seed={rep.seed} cases={len(rep.cases)} "
              + " ".join(f"{k}={v}" for k, v in counts.items()) + f" elapsed_ms={rep.elapsed_ms}")
    print(header)
    try:
        sp = _state_path(args)
        sp.parent.mkdir(parents=True, exist_ok=True)
        sp.write_text(json.dumps(rep.to_json()))
    except OSError as exc:
        log.warning("could not cache report: %s", exc)
    if args.out:
        _emit(render(rep, args.format), args.out)
    return verdict_code(rep, args.max_inconclusive)


def cmd_report(args) -> int:
    src = Path(args.input) if args.input else _state_path(args)
    if src.exists():
        try:
            rep = SuiteReport.from_json(json.loads(src.read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read report {src}: {exc}") from exc
    elif args.input:
        raise UsageError(f"no report at {src}")
    else:
        rep = SuiteReport("none", 0)
    _emit(render(rep, args.format), args.out)
    return EXIT_PASS


def cmd_moments(args) -> int:
    closed = ops.moments_closed_form(args.g, args.count)
    out = {"g": args.g, "moments": [float(x) for x in closed], "method": "closed_form"}
    if args.method == "quad":
        from scipy.integrate import quad

        weights = {
            "one": lambda t: 1.0,
            "t": lambda t: t,
            "t2": lambda t: t * t,
            "expm1": np.expm1,
        }
        g = weights[args.g]
        vals = [quad(lambda t, k=k: t ** (2 * k) * g(t), 0.0, 1.0, epsabs=args.tol, epsrel=args.tol)[0]
                for k in range(args.count)]
        out = {"g": args.g, "moments": vals, "method": "quad",
               "max_gap_to_closed_form": float(np.max(np.abs(np.array(vals) - closed)))}
    _emit(json.dumps(out, indent=2), args.out)
    return EXIT_PASS


def cmd_experiment(args) -> int:
    """Zero scan for an arbitrary kernel; informational, no pass criterion."""
    from .fourier import KernelPoly, fourier_eval, real_zero_verdict

    kp = KernelPoly(parse_kernel(args.kernel))
    rep = real_zero_verdict(lambda z: fourier_eval(kp, z), tuple(args.x_range), tuple(args.y_band))
    out = {"H": [float(x) for x in kp.H.coeffs.real], "leading_ok": kp.leading_ok,
           "h_prime_real_rooted": kp.h_prime_lp, **rep.to_json()}
    _emit(json.dumps(out, indent=2), args.out)
    return EXIT_PASS


# --- argument handling -----------------------------------------------------------------


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("STRIPZEROS_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stripzeros", description="Strip-narrowing operators and zero checks.")
    ap.add_argument("--state-dir", default=".stripzeros", help="where the last suite report is cached")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", type=int, default=None, help="number of cases")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=_default_threads())

    a = sub.add_parser("apply", parents=[common], help="apply an operator to a polynomial")
    a.add_argument("--op", required=True, help="operator JSON or path")
    a.add_argument("--poly", required=True, help="polynomial JSON or path")
    a.set_defaults(func=cmd_apply, tol=1e-12)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--kernel", default=None, help='kernel shorthand for H(it), e.g. "-t4"')
    v.add_argument("--max-inconclusive", type=float, default=0.05)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", parents=[common], help="serialize the last suite report")
    r.add_argument("--input", default=None, help="report JSON to convert instead of the cached one")
    r.set_defaults(func=cmd_report)

    m = sub.add_parser("moments", parents=[common], help="even moments of a weight on [0, 1]")
    m.add_argument("--g", choices=("one", "t", "t2", "expm1"), required=True)
    m.add_argument("--count", type=int, default=6)
    m.add_argument("--method", choices=("closed", "quad"), default="closed")
    m.set_defaults(func=cmd_moments, tol=1e-12)

    e = sub.add_parser("experiment", parents=[common], help="zero scan for an arbitrary kernel")
    e.add_argument("--kernel", required=True)
    e.add_argument("--x-range", type=float, nargs=2, default=(-8.0, 8.0))
    e.add_argument("--y-band", type=float, nargs=2, default=(0.05, 2.0))
    e.set_defaults(func=cmd_experiment)
    return ap


def _join_dash_values(argv: List[str]) -> List[str]:
    """Turn ``--kernel -t4`` into ``--kernel=-t4`` so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--kernel" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--kernel={argv[i + 1]}")
            i += 2
            continue
        out.append(argv[i])
        i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    argv = _join_dash_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, MalformedInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Unconverged, TolNotMet) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except StripZerosError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
