"""Randomized property suites.

Each suite draws its inputs from a seeded :class:`random.Random`, runs a
fixed number of trials and records the first counterexample verbatim.  The
suites are shared by the test-suite and by ``qcluster verify``.
"""
from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass, field
from typing import Callable

from .classical import (
    ExchangeData,
    classical_f_polys,
    denominator_vectors,
    extended_g_vectors,
    g_vectors,
)
from .errors import NotDivisible, QClusterError
from .fpoly import (
    coefficient_symmetry_check,
    extract_all,
    qfpolys_by_recurrence,
)
from .sampling import (
    random_compatible_pair,
    random_skew_symmetrizable,
    random_word,
    route_corpus,
)
from .seed import check_compatible, lambda_mutate, seed_mutate, QuantumSeed

__all__ = [
    "Counterexample",
    "SuiteResult",
    "SUITES",
    "run_suite",
    "run_all",
    "route_suite",
]


@dataclass
class Counterexample:
    prop: str
    inputs: dict
    expected: str
    actual: str

    def to_json(self) -> dict:
        return {"property": self.prop, "inputs": self.inputs, "expected": self.expected, "actual": self.actual}


@dataclass
class SuiteResult:
    name: str
    trials: int
    checks: int = 0
    failures: int = 0
    first: Counterexample | None = None
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "trials": self.trials,
            "checks": self.checks,
            "failures": self.failures,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "first_counterexample": self.first.to_json() if self.first else None,
            **self.extra,
        }


class _Recorder:
    def __init__(self, result: SuiteResult):
        self.r = result

    def check(self, prop: str, ok: bool, inputs: dict, expected, actual) -> None:
        self.r.checks += 1
        if not ok:
            self.r.failures += 1
            if self.r.first is None:
                self.r.first = Counterexample(prop, inputs, str(expected), str(actual))

    def error(self, prop: str, inputs: dict, exc: BaseException) -> None:
        self.check(prop, False, inputs, "no exception", "".join(traceback.format_exception_only(type(exc), exc)).strip())


def _rows(m) -> list[list[int]]:
    return [list(r) for r in m]


def _random_exchange(rng: random.Random) -> ExchangeData:
    n = rng.randint(1, 4)
    b0, d = random_skew_symmetrizable(n, rng, bound=2)
    extra = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, 3))]
    return ExchangeData(b0 + tuple(tuple(r) for r in extra), d)


def matrix_involution(rec: _Recorder, rng: random.Random) -> None:
    ex = _random_exchange(rng)
    k = rng.randint(1, ex.n)
    back = ex.mutate(k).mutate(k)
    rec.check("matrix mutation is an involution", back == ex, {"btilde": _rows(ex.btilde), "k": k}, ex.btilde, back.btilde)


def lambda_properties(rec: _Recorder, rng: random.Random) -> None:
    pair = random_compatible_pair(rng, n_max=4, frozen_max=3, bound=2)
    k = rng.randint(1, pair.n)
    inputs = {"lambda": _rows(pair.lam.matrix), "btilde": _rows(pair.exchange.btilde), "k": k}
    plus = lambda_mutate(pair.lam, pair.exchange, k, 1)
    minus = lambda_mutate(pair.lam, pair.exchange, k, -1)
    rec.check("Lambda-mutation is independent of the sign", plus == minus, inputs, plus.matrix, minus.matrix)
    mutated_ex = pair.exchange.mutate(k)
    back = lambda_mutate(plus, mutated_ex, k, 1)
    rec.check("Lambda-mutation is an involution", back == pair.lam, inputs, pair.lam.matrix, back.matrix)
    try:
        d2 = check_compatible(plus, mutated_ex)
        rec.check("pair mutation preserves compatibility with the same D", d2 == pair.d, inputs, pair.d, d2)
    except QClusterError as exc:
        rec.error("pair mutation preserves compatibility with the same D", inputs, exc)


def vector_involution(rec: _Recorder, rng: random.Random) -> None:
    n = rng.randint(1, 4)
    b0, d = random_skew_symmetrizable(n, rng, bound=1)
    word = random_word(n, rng, 6)
    k = rng.randint(1, n)
    longer = word + (k, k)
    inputs = {"b0": _rows(b0), "d": list(d), "word": list(word), "k": k}
    try:
        for name, fn in (
            ("g-vectors", lambda w: g_vectors(b0, w)),
            ("denominator vectors", lambda w: denominator_vectors(b0, w)),
            ("extended g-vectors", lambda w: extended_g_vectors(ExchangeData.principal(b0, d), w)),
        ):
            a, b = fn(word), fn(longer)
            rec.check(f"{name} return after mutating twice in one direction", a == b, inputs, a, b)
    except QClusterError as exc:
        # g_vector_step raises EpsilonMismatch when the two sign branches differ
        rec.error("vector recurrences are sign independent and involutive", inputs, exc)


# seeds are checked at every prefix and then mutated twice more
SEED_DEPTH = 4


def _seed_checks(rec: _Recorder, seed: QuantumSeed, inputs: dict) -> None:
    lam_t = seed.pair.lam
    m = seed.pair.m
    for i, x in enumerate(seed.cluster):
        bx = x.bar()
        rec.check("cluster variables are bar-invariant", bx == x, {**inputs, "index": i + 1}, x, bx)
    for i in range(m):
        for j in range(i + 1, m):
            xi, xj = seed.cluster[i], seed.cluster[j]
            lhs = xi * xj
            rhs = (xj * xi).shift_q(2 * lam_t.matrix[i][j])
            rec.check(
                "X_i X_j = q^(lambda_ij) X_j X_i",
                lhs == rhs,
                {**inputs, "i": i + 1, "j": j + 1},
                lhs,
                rhs,
            )


def seed_properties(rec: _Recorder, rng: random.Random) -> None:
    pair = random_compatible_pair(rng, n_max=3, frozen_max=2, bound=1, frozen_bound=1, d_choices=(1, 2))
    word = random_word(pair.n, rng, SEED_DEPTH)
    inputs = {"lambda": _rows(pair.lam.matrix), "btilde": _rows(pair.exchange.btilde), "word": list(word)}
    seed = QuantumSeed.initial(pair)
    try:
        _seed_checks(rec, seed, {**inputs, "prefix": []})
        for i, k in enumerate(word):
            seed = seed_mutate(seed, k)
            _seed_checks(rec, seed, {**inputs, "prefix": list(word[: i + 1])})
        k = rng.randint(1, pair.n)
        back = seed_mutate(seed_mutate(seed, k), k)
        rec.check("seed mutation is an involution", back == seed, {**inputs, "k": k}, "the seed itself", "a different seed")
    except NotDivisible as exc:
        rec.error("quantum Laurent phenomenon (no inexact division)", inputs, exc)


SUITES: dict[str, Callable[[_Recorder, random.Random], None]] = {
    "matrix-involution": matrix_involution,
    "lambda-mutation": lambda_properties,
    "vector-recurrences": vector_involution,
    "quantum-seeds": seed_properties,
}


def run_suite(name: str, trials: int, seed: int) -> SuiteResult:
    rng = random.Random(f"{name}:{seed}")
    result = SuiteResult(name, trials)
    rec = _Recorder(result)
    fn = SUITES[name]
    start = time.perf_counter()
    for _ in range(trials):
        fn(rec, rng)
    result.seconds = time.perf_counter() - start
    return result


def route_suite(trials: int, seed: int, depth: int = 6, n_max: int = 4, bound: int = 2) -> SuiteResult:
    """Recurrence vs extraction vs classical oracle, Lambda-independence and coefficient symmetry."""
    result = SuiteResult("route-equivalence", trials)
    rec = _Recorder(result)
    start = time.perf_counter()
    for item in route_corpus(trials, seed, n_max, bound, depth):
        inputs = item.to_json()
        try:
            rec_f = qfpolys_by_recurrence(item.b0, None, item.word).qfpolys()
            ext = extract_all(item.b0, None, None, item.word)
            ext_lam = extract_all(item.b0, None, item.lam, item.word)
            classical = classical_f_polys(item.b0, item.word)
        except QClusterError as exc:
            rec.error("both routes run without error", inputs, exc)
            continue
        for j, ((f, g), (f2, _), fr, fc) in enumerate(zip(ext, ext_lam, rec_f, classical), start=1):
            at = {**inputs, "j": j}
            rec.check("recurrence equals extraction", fr == f, at, f, fr)
            rec.check("q = 1 specialization equals the classical F-polynomial", f.specialize() == fc, at, fc, f.specialize())
            rec.check("extraction does not depend on lam", f2.to_json() == f.to_json(), at, f, f2)
            rec.check("coefficient symmetry", coefficient_symmetry_check(f, g), at, "symmetric", f)
    result.seconds = time.perf_counter() - start
    return result


def run_all(trials: int, route_trials: int, seed: int, depth: int = 6) -> list[SuiteResult]:
    out = [run_suite(name, trials, seed) for name in sorted(SUITES)]
    out.append(route_suite(route_trials, seed, depth))
    return sorted(out, key=lambda r: r.name)
