"""Vectorized twisted multiplication for large torus elements.

Every (exponent, q-power) pair of both factors becomes one row of an
integer array.  Result keys are packed into a single int64 (mixed radix over
the exponent box and the q-range), products are summed with a sort and
``reduceat``.  Coefficients stay in int64 when a crude bound proves no
overflow is possible and fall back to Python ints (object arrays) otherwise.
"""
from __future__ import annotations

import numpy as np

_LIMIT = 1 << 62
_CHUNK = 1 << 22


def _flatten(t: dict) -> tuple[np.ndarray, np.ndarray, list[int]]:
    exps: list[tuple[int, ...]] = []
    qs: list[int] = []
    cs: list[int] = []
    for e, c in t.items():
        for r, v in c._c.items():
            exps.append(e)
            qs.append(r)
            cs.append(v)
    return np.array(exps, dtype=np.int64), np.array(qs, dtype=np.int64), cs


def _coeff_array(cs: list[int], small: bool) -> np.ndarray:
    if small:
        return np.array(cs, dtype=np.int64)
    arr = np.empty(len(cs), dtype=object)
    arr[:] = cs
    return arr


def _reduce(keys: np.ndarray, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sum coefficients sharing a key; returns sorted unique keys."""
    if len(keys) == 0:
        return keys, coeffs
    lo = int(keys.min())
    span = int(keys.max()) - lo + 1
    if coeffs.dtype != object and span <= max(8 * len(keys), 1 << 20):
        acc = np.zeros(span, dtype=np.int64)
        np.add.at(acc, keys - lo, coeffs)
        idx = np.flatnonzero(acc)
        return idx + lo, acc[idx]
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coeffs = coeffs[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(keys)) + 1))
    return keys[starts], np.add.reduceat(coeffs, starts)


def twisted_product(matrix, ta: dict, tb: dict, m: int) -> dict | None:
    """Raw ``{exp: {twice_q: coeff}}`` of the product, or None when keys do not pack into int64."""
    ea, qa, ca = _flatten(ta)
    eb, qb, cb = _flatten(tb)
    lam = np.array(matrix, dtype=np.int64).reshape(m, m)
    ra = ea @ lam

    lo = ea.min(axis=0) + eb.min(axis=0)
    hi = ea.max(axis=0) + eb.max(axis=0)
    tw_bound = int((np.abs(ra) @ np.abs(eb).max(axis=0)).max()) if m else 0
    qlo = int(qa.min()) + int(qb.min()) - tw_bound
    qhi = int(qa.max()) + int(qb.max()) + tw_bound
    spans = [int(h) - int(l) + 1 for l, h in zip(lo, hi)]
    radix = []
    total = qhi - qlo + 1
    for s in reversed(spans):
        radix.append(total)
        total *= s
    if total >= _LIMIT or max(abs(x) for x in (*lo.tolist(), *hi.tolist(), 0)) >= _LIMIT >> 8:
        return None
    radix = np.array(radix[::-1], dtype=np.int64)

    small = sum(map(abs, ca)) * sum(map(abs, cb)) < _LIMIT
    ca = _coeff_array(ca, small)
    cb = _coeff_array(cb, small)

    # key(e_a + e_b, r) = sum (e_a - lo) radix + sum e_b radix + (r - qlo)
    ka = (ea - lo) @ radix + qa - qlo
    kb = eb @ radix + qb
    step = max(1, _CHUNK // max(1, len(kb)))
    part_keys = []
    part_coeffs = []
    for s in range(0, len(ka), step):
        tw = ra[s : s + step] @ eb.T
        keys = (ka[s : s + step, None] + kb[None, :] + tw).ravel()
        coeffs = np.multiply.outer(ca[s : s + step], cb).ravel()
        k, c = _reduce(keys, coeffs)
        part_keys.append(k)
        part_coeffs.append(c)
    keys, coeffs = _reduce(np.concatenate(part_keys), np.concatenate(part_coeffs))
    nz = coeffs != 0
    keys = keys[nz]
    coeffs = coeffs[nz]

    rem = keys
    digits = []
    for rdx in radix:
        d, rem = np.divmod(rem, rdx)
        digits.append(d)
    q = (rem + qlo).tolist()
    exps = (np.stack(digits, axis=1) + lo).tolist() if m else [[]] * len(q)
    out: dict = {}
    for e, r, v in zip(map(tuple, exps), q, coeffs.tolist()):
        tgt = out.get(e)
        if tgt is None:
            out[e] = {r: int(v)}
        else:
            tgt[r] = int(v)
    return out
