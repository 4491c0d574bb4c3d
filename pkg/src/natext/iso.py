"""Certified isomorphisms and canonical forms for small algebras and structures.

Elements are first split into classes by isomorphism-invariant signatures
(occurrence counts in tables and relations, fixed points, constants).  An
isomorphism search only maps an element into its own class; a canonical form
is the lexicographically least relabelled encoding over all class-respecting
bijections.
"""

from __future__ import annotations

import itertools
from math import factorial, prod

import numpy as np

from . import _search
from .algebra import FiniteAlgebra, GuardExceeded, hom_problem
from .structure import morphism_problem


def _invariants(X) -> list:
    n = X.size
    inv = [[] for _ in range(n)]
    if isinstance(X, FiniteAlgebra):
        for name, k in X.signature.ops:
            t = X.tables[name]
            if k == 0:
                for x in range(n):
                    inv[x].append(int(x == int(t)))
                continue
            counts = np.bincount(t.reshape(-1), minlength=n)
            diag = t[tuple([np.arange(n)] * k)]
            for x in range(n):
                inv[x] += [int(counts[x]), int(diag[x] == x)]
            if k == 2:
                for x in range(n):
                    inv[x].append(int((t[x, :] == x).sum()))
        return [tuple(v) for v in inv]
    for name, k in X.signature.relations:
        for pos in range(k):
            c = [0] * n
            for t in X.relations[name]:
                c[t[pos]] += 1
            for x in range(n):
                inv[x].append(c[x])
    for name, k in X.signature.operations:
        t = X.operations[name]
        counts = np.bincount(t.reshape(-1), minlength=n) if n else []
        diag = t[tuple([np.arange(n)] * k)] if n else []
        for x in range(n):
            inv[x] += [int(counts[x]), int(diag[x] == x)]
    for name, k in X.signature.partial_operations:
        c = [0] * n
        for t, v in X.partial_operations[name].items():
            for a in t:
                c[a] += 1
        for x in range(n):
            inv[x].append(c[x])
    for name in X.signature.constants:
        for x in range(n):
            inv[x].append(int(X.constants[name] == x))
    return [tuple(v) for v in inv]


def _global_shape(X) -> tuple:
    if isinstance(X, FiniteAlgebra):
        return ("algebra", X.signature, X.size)
    return ("structure", X.signature, X.size,
            tuple(len(X.relations[n]) for n, _ in X.signature.relations),
            tuple(len(X.partial_operations[n]) for n, _ in X.signature.partial_operations))


def find_isomorphism(X, Y):
    """A bijection X -> Y preserving everything in both directions, or None.

    For algebras a bijective homomorphism is an isomorphism.  For structures a
    bijective morphism is one as soon as relations and partial-operation
    domains have equal sizes on both sides, which is checked up front.
    """
    if type(X) is not type(Y) or _global_shape(X) != _global_shape(Y):
        return None
    ix, iy = _invariants(X), _invariants(Y)
    if sorted(ix) != sorted(iy):
        return None
    p = hom_problem(X, Y) if isinstance(X, FiniteAlgebra) else morphism_problem(X, Y)
    p.injective = True
    p.candidates = [[y for y in range(Y.size) if iy[y] == ix[x]] for x in range(X.size)]
    for sol in _search.solve(p, first=True):
        return sol
    return None


def _relabel(X, perm) -> tuple:
    n = X.size
    inverse = [0] * n
    for old, new in enumerate(perm):
        inverse[new] = old
    inv = np.array(inverse, dtype=np.int64)
    p = np.array(perm, dtype=np.int64)
    parts = []
    if isinstance(X, FiniteAlgebra):
        for name, k in X.signature.ops:
            t = X.tables[name]
            if k == 0:
                parts.append((name, (int(p[int(t)]),)))
            else:
                parts.append((name, tuple(p[t[np.ix_(*([inv] * k))]].reshape(-1).tolist())))
        return tuple(parts)
    for name, _ in X.signature.relations:
        parts.append((name, tuple(sorted(tuple(perm[v] for v in t) for t in X.relations[name]))))
    for name, k in X.signature.operations:
        t = X.operations[name]
        parts.append((name, tuple(p[t[np.ix_(*([inv] * k))]].reshape(-1).tolist()) if n else ()))
    for name, _ in X.signature.partial_operations:
        parts.append((name, tuple(sorted((tuple(perm[a] for a in t), perm[v])
                                         for t, v in X.partial_operations[name].items()))))
    for name in X.signature.constants:
        parts.append((name, (perm[X.constants[name]],)))
    return tuple(parts)


def canonical_form(X, guard: int = 200_000) -> tuple:
    """An encoding equal for two inputs exactly when they are isomorphic."""
    inv = _invariants(X)
    classes = {}
    for x, v in enumerate(inv):
        classes.setdefault(v, []).append(x)
    order = sorted(classes)
    blocks = [classes[v] for v in order]
    count = prod(factorial(len(b)) for b in blocks)
    if count > guard:
        raise GuardExceeded(f"{count} class-respecting bijections exceed the guard {guard}")
    best = None
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        sequence = [x for block in choice for x in block]
        perm = [0] * X.size
        for new, old in enumerate(sequence):
            perm[old] = new
        enc = _relabel(X, perm)
        if best is None or enc < best:
            best = enc
    return (_global_shape(X), tuple(order), best)
