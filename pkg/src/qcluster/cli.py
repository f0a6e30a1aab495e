"""Command-line front end.

Exit status: 0 on success, 1 when a table or property check finds a
mismatch, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from .classical import (
    ExchangeData,
    classical_f_polys,
    denominator_vectors,
    find_symmetrizer,
    g_vectors,
)
from .errors import QClusterError
from .fpoly import extract_all, qfpolys_by_recurrence
from .golden import TABLES, reproduce_table
from .sampling import random_skew
from .seed import CompatiblePair
from .trees import quiver_from_matrix, tree_gvector, tree_qfpoly, typeA_chains
from .verify import SUITES, route_suite, run_suite

COMMANDS = ("mutate", "fpoly", "qfpoly", "gvec", "dvec", "chains", "table", "verify")


class BadInput(Exception):
    """Malformed command-line input; the message names the offending field."""


def _load_json(value: str, field: str):
    if value == "-":
        text = sys.stdin.read()
    elif value.lstrip().startswith(("[", "{")):
        text = value
    else:
        path = Path(value)
        if not path.is_file():
            raise BadInput(f"{field}: no such file {value!r}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInput(f"{field}: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None


def _int_matrix(data, field: str) -> list[list[int]]:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise BadInput(f"{field}: expected a non-empty list of rows")
    out = []
    for i, row in enumerate(data, start=1):
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise BadInput(f"{field}: row {i} has a non-integer entry")
        out.append(list(row))
    width = len(out[0])
    for i, row in enumerate(out, start=1):
        if len(row) != width:
            raise BadInput(f"{field}: row {i} has length {len(row)}, expected {width}")
    return out


def _read_matrix(args) -> list[list[int]]:
    if args.matrix is None:
        raise BadInput("--matrix: required for this command")
    data = _load_json(args.matrix, "--matrix")
    if isinstance(data, dict):
        if args.d is None and "d" in data:
            d = data["d"]
            if not isinstance(d, list) or not all(isinstance(x, int) for x in d):
                raise BadInput("--matrix: field 'd' must be a list of integers")
            args.d = ",".join(map(str, d))
        for key in ("btilde", "b0", "matrix"):
            if key in data:
                data = data[key]
                break
        else:
            raise BadInput("--matrix: object needs a 'btilde', 'b0' or 'matrix' key")
    return _int_matrix(data, "--matrix")


def _square(b: list[list[int]], field: str = "--matrix") -> list[list[int]]:
    if len(b) != len(b[0]):
        raise BadInput(f"{field}: expected a square principal part, got {len(b)} x {len(b[0])}")
    return b


def _parse_word(text: str | None, n: int) -> tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    word = []
    for part in text.split(","):
        part = part.strip()
        try:
            k = int(part)
        except ValueError:
            raise BadInput(f"--word: {part!r} is not an integer") from None
        if not 1 <= k <= n:
            raise BadInput(f"--word: direction {k} outside [1, {n}]")
        word.append(k)
    return tuple(word)


def _parse_d(text: str | None, b0: list[list[int]]) -> tuple[int, ...]:
    n = len(b0)
    if text is None:
        try:
            return find_symmetrizer(b0)
        except QClusterError as exc:
            raise BadInput(f"--matrix: {exc}") from None
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise BadInput(f"--d: {text!r} is not an integer list") from None
    if len(vals) == 1:
        vals = vals * n
    if len(vals) != n:
        raise BadInput(f"--d: expected 1 or {n} entries, got {len(vals)}")
    if any(v <= 0 for v in vals):
        raise BadInput("--d: entries must be positive")
    try:
        ExchangeData(tuple(map(tuple, b0)), tuple(vals))
    except QClusterError as exc:
        raise BadInput(f"--d: {exc}") from None
    return tuple(vals)


def _parse_lambda(text: str | None, n: int, seed: int):
    if text is None or text == "zero":
        return None
    if text == "random":
        return random_skew(n, random.Random(seed))
    lam = _int_matrix(_load_json(text, "--lambda"), "--lambda")
    if len(lam) != n or len(lam[0]) != n:
        raise BadInput(f"--lambda: expected {n} x {n}, got {len(lam)} x {len(lam[0])}")
    for i in range(n):
        for j in range(n):
            if lam[i][j] != -lam[j][i]:
                raise BadInput(f"--lambda: entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")
    return lam


def _parse_j(j: int | None, n: int) -> list[int]:
    if j is None:
        return list(range(1, n + 1))
    if not 1 <= j <= n:
        raise BadInput(f"--j: index {j} outside [1, {n}]")
    return [j]


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _cmd_mutate(args) -> int:
    bt = _read_matrix(args)
    n = len(bt[0])
    word = _parse_word(args.word, n)
    if args.lambda_ is not None and args.lambda_ not in ("zero", "random"):
        lam = _int_matrix(_load_json(args.lambda_, "--lambda"), "--lambda")
        try:
            pair = CompatiblePair.from_matrices(lam, bt)
        except QClusterError as exc:
            raise BadInput(f"--lambda: {exc}") from None
        for k in word:
            pair = pair.mutate(k)
        out_b = [list(r) for r in pair.exchange.btilde]
        payload = {"word": list(word), "btilde": out_b, "lambda": [list(r) for r in pair.lam.matrix]}
    else:
        try:
            ex = ExchangeData.from_matrix(bt)
        except QClusterError as exc:
            raise BadInput(f"--matrix: {exc}") from None
        for k in word:
            ex = ex.mutate(k)
        out_b = [list(r) for r in ex.btilde]
        payload = {"word": list(word), "btilde": out_b}
    text = "\n".join(" ".join(f"{x:>3}" for x in r) for r in out_b)
    if "lambda" in payload:
        text += "\nlambda:\n" + "\n".join(" ".join(f"{x:>3}" for x in r) for r in payload["lambda"])
    _emit(args, payload, text)
    return 0


def _b0_word_j(args):
    b0 = _square(_read_matrix(args))
    d = _parse_d(args.d, b0)
    word = _parse_word(args.word, len(b0))
    js = _parse_j(args.j, len(b0))
    return b0, d, word, js


def _cmd_fpoly(args) -> int:
    b0, _, word, js = _b0_word_j(args)
    polys = classical_f_polys(b0, word)
    payload = {"word": list(word), "fpolys": {str(j): polys[j - 1].to_json() for j in js}}
    _emit(args, payload, "\n".join(f"F_{j} = {polys[j - 1]}" for j in js))
    return 0


def _cmd_qfpoly(args) -> int:
    b0, d, word, js = _b0_word_j(args)
    lam = _parse_lambda(args.lambda_, len(b0), args.seed)
    if args.method == "recurrence":
        polys = qfpolys_by_recurrence(b0, d, word).qfpolys()
        gs = g_vectors(b0, word)
    else:
        pairs = extract_all(b0, d, lam, word)
        polys = [f for f, _ in pairs]
        gs = [g for _, g in pairs]
        if args.method == "both":
            other = qfpolys_by_recurrence(b0, d, word).qfpolys()
            for j in js:
                if other[j - 1] != polys[j - 1]:
                    print(f"routes disagree for j={j}: extraction {polys[j - 1]}, recurrence {other[j - 1]}", file=sys.stderr)
                    return 1
    payload = {
        "word": list(word),
        "d": list(d),
        "qfpolys": {str(j): {"g": list(gs[j - 1]), "qfpoly": polys[j - 1].to_json()} for j in js},
    }
    _emit(args, payload, "\n".join(f"F_{j} = {polys[j - 1]}    g = {list(gs[j - 1])}" for j in js))
    return 0


def _cmd_vectors(args, fn, label: str) -> int:
    b0, _, word, js = _b0_word_j(args)
    vecs = fn(b0, word)
    payload = {"word": list(word), label: {str(j): list(vecs[j - 1]) for j in js}}
    _emit(args, payload, "\n".join(f"{label}_{j} = {list(vecs[j - 1])}" for j in js))
    return 0


def _cmd_chains(args) -> int:
    b0 = _square(_read_matrix(args))
    try:
        q = quiver_from_matrix(b0)
        chains = typeA_chains(q)
    except (QClusterError, ValueError) as exc:
        raise BadInput(f"--matrix: {exc}") from None
    d = int(args.d) if args.d is not None else 1
    if d <= 0:
        raise BadInput("--d: must be a positive integer for chains")
    reports = []
    lines = [f"quiver arcs: {[list(a) for a in q.arcs]}"]
    for c in chains:
        f = tree_qfpoly(c, q, d)
        g = tree_gvector(c, q)
        dv = denominator_vectors(b0, c.word)[c.word[-1] - 1]
        reports.append({"chain": list(c.word), "gvector": list(g), "qfpoly": f.to_json(), "denominator": list(dv)})
        lines.append(f"{list(c.word)}: d = {list(dv)}, g = {list(g)}, F = {f}")
    _emit(args, {"quiver": q.to_json(), "chains": reports}, "\n".join(lines))
    return 0


def _cmd_table(args) -> int:
    if args.name not in TABLES:
        raise BadInput(f"table: unknown table {args.name!r}; choose from {', '.join(TABLES)}")
    report = reproduce_table(args.name)
    _emit(args, report.to_json(), report.text())
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    if args.trials < 0 or args.route_trials < 0:
        raise BadInput("--trials: counts must be nonnegative")
    if args.depth < 0:
        raise BadInput("--depth: must be nonnegative")
    results = [run_suite(name, args.trials, args.seed) for name in sorted(SUITES)]
    results.append(route_suite(args.route_trials, args.seed, args.depth))
    results.sort(key=lambda r: r.name)
    ok = all(r.passed for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: {r.checks} checks over {r.trials} trials in {r.seconds:.1f}s")
        if r.first:
            lines.append("  first counterexample: " + json.dumps(r.first.to_json(), sort_keys=True))
    _emit(args, {"passed": ok, "suites": [r.to_json() for r in results]}, "\n".join(lines))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", help="JSON matrix: a file path, '-' for stdin, or inline JSON")
    common.add_argument("--word", help="comma-separated mutation directions, e.g. 2,1,2")
    common.add_argument("--j", type=int, help="cluster index (all indices when omitted)")
    common.add_argument("--d", help="symmetrizer: one integer or a comma-separated list")
    common.add_argument("--lambda", dest="lambda_", help="zero, random, or a JSON skew-symmetric matrix")
    common.add_argument("--depth", type=int, default=6, help="maximum random word length for verify")
    common.add_argument("--trials", type=int, default=500, help="trials per property suite")
    common.add_argument("--route-trials", type=int, default=100, help="samples for the route-equivalence suite")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="qcluster", description="Quantum F-polynomials of cluster algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("mutate", parents=[common], help="mutate an exchange matrix (and a compatible Lambda)")
    sub.add_parser("fpoly", parents=[common], help="classical F-polynomials")
    qf = sub.add_parser("qfpoly", parents=[common], help="quantum F-polynomials and g-vectors")
    qf.add_argument("--method", choices=("extract", "recurrence", "both"), default="extract")
    sub.add_parser("gvec", parents=[common], help="g-vectors")
    sub.add_parser("dvec", parents=[common], help="denominator vectors")
    sub.add_parser("chains", parents=[common], help="chains of a type-A quiver with closed forms")
    tp = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    tp.add_argument("name", help="a2 or a4")
    sub.add_parser("verify", parents=[common], help="run the randomized property suites")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    handlers = {
        "mutate": _cmd_mutate,
        "fpoly": _cmd_fpoly,
        "qfpoly": _cmd_qfpoly,
        "gvec": lambda a: _cmd_vectors(a, g_vectors, "g"),
        "dvec": lambda a: _cmd_vectors(a, denominator_vectors, "d"),
        "chains": _cmd_chains,
        "table": _cmd_table,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QClusterError as exc:
        print(f"error: --matrix: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def run(argv: Sequence[str] | None = None) -> int:
    """Alias of :func:`main` for programmatic use."""
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
