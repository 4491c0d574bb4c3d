"""Backtracking search for structure-preserving maps between finite carriers.

Both algebra homomorphisms and structure morphisms reduce to the same
problem: find every assignment ``h: range(n) -> range(m)`` that commutes with
a list of (partial) operation tables and maps a list of relations forward.
The search assigns the smallest unassigned element, then propagates forced
values through every operation whose arguments are all assigned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class OpConstraint:
    """``h(src(t)) == tgt(h(t))`` for every tuple ``t`` in the listed domain."""

    args: list           # one int array per argument position
    res: np.ndarray      # source result per tuple
    tgt: np.ndarray      # target table, -1 where undefined
    partial: bool = False


@dataclass
class RelConstraint:
    args: list
    tgt: np.ndarray      # boolean array of shape (m,)*k


@dataclass
class Problem:
    n: int
    m: int
    ops: list = field(default_factory=list)
    rels: list = field(default_factory=list)
    fixed: list = field(default_factory=list)   # (element, value) pairs
    candidates: list | None = None
    injective: bool = False


def total_op(src_table: np.ndarray, tgt_table: np.ndarray) -> OpConstraint:
    k = src_table.ndim
    n = src_table.shape[0]
    grid = np.indices((n,) * k).reshape(k, -1)
    return OpConstraint(list(grid), src_table.reshape(-1).astype(np.int64),
                        np.asarray(tgt_table, dtype=np.int64))


def partial_op(arity: int, src: dict, m: int, tgt: dict) -> OpConstraint:
    table = np.full((m,) * arity, -1, dtype=np.int64)
    for t, v in tgt.items():
        table[t] = v
    keys = sorted(src)
    if keys:
        cols = np.array(keys, dtype=np.int64).reshape(len(keys), arity).T
        args = list(cols)
    else:
        args = [np.zeros(0, dtype=np.int64) for _ in range(arity)]
    res = np.array([src[t] for t in keys], dtype=np.int64)
    return OpConstraint(args, res, table, partial=True)


def relation(arity: int, src: frozenset, m: int, tgt: frozenset) -> RelConstraint:
    table = np.zeros((m,) * arity, dtype=bool)
    for t in tgt:
        table[t] = True
    keys = sorted(src)
    if keys:
        args = list(np.array(keys, dtype=np.int64).reshape(len(keys), arity).T)
    else:
        args = [np.zeros(0, dtype=np.int64) for _ in range(arity)]
    return RelConstraint(args, table)


def _propagate(p: Problem, h: np.ndarray) -> bool:
    changed = True
    while changed:
        changed = False
        for op in p.ops:
            if op.res.size == 0:
                continue
            ok = np.ones(op.res.size, dtype=bool)
            for a in op.args:
                ok &= h[a] >= 0
            if not ok.any():
                continue
            imgs = op.tgt[tuple(h[a[ok]] for a in op.args)]
            res = op.res[ok]
            if op.partial and (imgs < 0).any():
                return False
            cur = h[res]
            if ((cur >= 0) & (cur != imgs)).any():
                return False
            new = cur < 0
            if new.any():
                h[res[new]] = imgs[new]
                if (h[res[new]] != imgs[new]).any():
                    return False
                changed = True
        for rel in p.rels:
            if not rel.args or rel.args[0].size == 0:
                continue
            ok = np.ones(rel.args[0].size, dtype=bool)
            for a in rel.args:
                ok &= h[a] >= 0
            if ok.any() and not rel.tgt[tuple(h[a[ok]] for a in rel.args)].all():
                return False
        if p.injective:
            vals = h[h >= 0]
            if vals.size != np.unique(vals).size:
                return False
    return True


def solve(p: Problem, first: bool = False):
    """Yield every solution as a tuple, in lexicographic order."""
    h = np.full(p.n, -1, dtype=np.int64)
    if p.m == 0:
        if p.n == 0 and _propagate(p, h):
            yield ()
        return
    for i, v in p.fixed:
        if h[i] >= 0 and h[i] != v:
            return
        h[i] = v
    if not _propagate(p, h):
        return

    def rec(h):
        free = np.flatnonzero(h < 0)
        if free.size == 0:
            yield tuple(int(v) for v in h)
            return
        i = int(free[0])
        values = range(p.m) if p.candidates is None else p.candidates[i]
        used = set(h[h >= 0].tolist()) if p.injective else ()
        for v in values:
            if v in used:
                continue
            h2 = h.copy()
            h2[i] = v
            if _propagate(p, h2):
                yield from rec(h2)

    for sol in rec(h):
        yield sol
        if first:
            return

