"""Seeded random inputs for the property suites and the CLI ``verify`` command."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .classical import Matrix, as_matrix

__all__ = [
    "random_skew",
    "random_skew_symmetric",
    "random_skew_symmetrizable",
    "random_word",
    "random_compatible_pair",
    "CorpusItem",
    "route_corpus",
]


def random_skew(n: int, rng: random.Random, bound: int = 3) -> list[list[int]]:
    """Random integer skew-symmetric ``n x n`` matrix with entries in ``[-bound, bound]``."""
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            m[i][j] = v
            m[j][i] = -v
    return m


def random_skew_symmetric(n: int, rng: random.Random, bound: int = 2) -> Matrix:
    return as_matrix(random_skew(n, rng, bound))


def random_skew_symmetrizable(
    n: int, rng: random.Random, bound: int = 1, d_choices: tuple[int, ...] = (1, 2, 3)
) -> tuple[Matrix, tuple[int, ...]]:
    """``(B, d)`` with ``d_i b_ij = -d_j b_ji``.

    Each pair gets ``b_ij = v d_j / g`` and ``b_ji = -v d_i / g`` with
    ``g = gcd(d_i, d_j)`` and ``v`` uniform in ``[-bound, bound]``.
    """
    d = tuple(rng.choice(d_choices) for _ in range(n))
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            g = gcd(d[i], d[j])
            b[i][j] = v * d[j] // g
            b[j][i] = -v * d[i] // g
    return as_matrix(b), d


def random_word(n: int, rng: random.Random, max_len: int) -> tuple[int, ...]:
    """Length uniform in ``[0, max_len]``, letters uniform in ``[1, n]``."""
    return tuple(rng.randint(1, n) for _ in range(rng.randint(0, max_len)))


def random_compatible_pair(
    rng: random.Random,
    n_max: int = 3,
    frozen_max: int = 2,
    bound: int = 1,
    frozen_bound: int = 2,
    d_choices: tuple[int, ...] = (1, 2, 3),
):
    """Compatible pair for a random skew-symmetrizable principal part with extra frozen rows."""
    from .seed import extended_principal_pair

    n = rng.randint(1, n_max)
    b0, d = random_skew_symmetrizable(n, rng, bound, d_choices)
    r = rng.randint(0, frozen_max)
    rows = [[rng.randint(-frozen_bound, frozen_bound) for _ in range(n)] for _ in range(r)]
    cross = [[rng.randint(-frozen_bound, frozen_bound) for _ in range(r)] for _ in range(n)]
    return extended_principal_pair(b0, d, rows, random_skew(n, rng), random_skew(r, rng), cross)


@dataclass(frozen=True)
class CorpusItem:
    index: int
    b0: Matrix
    word: tuple[int, ...]
    lam: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"index": self.index, "b0": [list(r) for r in self.b0], "word": list(self.word), "lam": [list(r) for r in self.lam]}


def route_corpus(count: int, seed: int, n_max: int = 4, bound: int = 2, depth: int = 6) -> list[CorpusItem]:
    """Skew-symmetric ``B0`` (``n`` uniform in ``[1, n_max]``), a uniform random word and a random ``lam``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, n_max)
        b0 = random_skew_symmetric(n, rng, bound)
        word = random_word(n, rng, depth)
        lam = as_matrix(random_skew(n, rng))
        out.append(CorpusItem(i, b0, word, lam))
    return out
