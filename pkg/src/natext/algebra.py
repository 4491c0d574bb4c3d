"""Finite algebras over a finite signature.

Carriers are ``range(size)``; each operation is a numpy table of shape
``(size,) * arity``.  Labels are cosmetic: every isomorphism claim elsewhere
in the package is a certified bijection that commutes with the tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _search


class SignatureMismatch(ValueError):
    pass


class GuardExceeded(ValueError):
    """An exponential enumeration was refused because its input is too large."""


@dataclass(frozen=True)
class Signature:
    ops: tuple  # ((name, arity), ...)

    def __post_init__(self):
        names = [n for n, _ in self.ops]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate operation symbol in {names}")
        for name, k in self.ops:
            if k < 0:
                raise ValueError(f"negative arity for {name!r}")

    @classmethod
    def of(cls, **arities) -> "Signature":
        return cls(tuple(arities.items()))

    def arity(self, name: str) -> int:
        return dict(self.ops)[name]

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.ops)

    @property
    def constants(self) -> tuple:
        return tuple(n for n, k in self.ops if k == 0)


class FiniteAlgebra:
    """An algebra on ``range(size)`` with total operation tables."""

    def __init__(self, signature: Signature, size: int, tables: dict, labels=None):
        if size < 1:
            raise ValueError("an algebra needs a nonempty carrier")
        self.signature = signature
        self.size = size
        self.tables = {}
        for name, k in signature.ops:
            if name not in tables:
                raise ValueError(f"missing table for {name!r}")
            t = np.array(tables[name], dtype=np.int64)
            if t.shape != (size,) * k:
                raise ValueError(f"table {name!r} has shape {t.shape}, expected {(size,) * k}")
            bad = np.argwhere((t < 0) | (t >= size))
            if bad.size:
                raise ValueError(f"table {name!r} entry at {tuple(int(i) for i in bad[0])} "
                                 f"is out of range 0..{size - 1}")
            t.setflags(write=False)
            self.tables[name] = t
        extra = set(tables) - set(signature.names)
        if extra:
            raise ValueError(f"tables for unknown symbols {sorted(extra)}")
        self.labels = tuple(str(x) for x in labels) if labels is not None else tuple(
            str(i) for i in range(size))
        if len(self.labels) != size:
            raise ValueError("label count does not match carrier size")

    def op(self, name: str, *args) -> int:
        return int(self.tables[name][tuple(args)])

    def label(self, i: int) -> str:
        return self.labels[i]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def same_tables(self, other: "FiniteAlgebra") -> bool:
        return (self.signature == other.signature and self.size == other.size
                and all(np.array_equal(self.tables[n], other.tables[n])
                        for n in self.signature.names))

    def __repr__(self):
        return f"FiniteAlgebra(size={self.size}, ops={list(self.signature.ops)})"


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, mapping) -> bool:
    h = np.asarray(mapping, dtype=np.int64)
    if h.shape != (A.size,) or (h < 0).any() or (h >= B.size).any():
        return False
    for name, k in A.signature.ops:
        ta, tb = A.tables[name], B.tables[name]
        if k == 0:
            if h[ta] != tb:
                return False
            continue
        grid = np.indices((A.size,) * k)
        if not np.array_equal(h[ta], tb[tuple(h[g] for g in grid)]):
            return False
    return True


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple

    def __post_init__(self):
        if not is_homomorphism(self.source, self.target, self.mapping):
            raise ValueError(f"{self.mapping} is not a homomorphism")

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def __eq__(self, other):
        return isinstance(other, Homomorphism) and self.mapping == other.mapping and \
            self.source is other.source and self.target is other.target

    def __hash__(self):
        return hash(self.mapping)


def _check_signatures(A, B):
    if A.signature != B.signature:
        raise SignatureMismatch(f"{A.signature.ops} vs {B.signature.ops}")


def hom_problem(A: FiniteAlgebra, B: FiniteAlgebra) -> _search.Problem:
    _check_signatures(A, B)
    p = _search.Problem(A.size, B.size)
    for name, k in A.signature.ops:
        if k == 0:
            p.fixed.append((int(A.tables[name]), int(B.tables[name])))
        else:
            p.ops.append(_search.total_op(A.tables[name], B.tables[name]))
    return p


def enumerate_homs(A: FiniteAlgebra, B: FiniteAlgebra) -> list:
    """All homomorphisms A -> B, sorted lexicographically by assignment."""
    return [Homomorphism(A, B, h) for h in _search.solve(hom_problem(A, B))]


def closure(A: FiniteAlgebra, gens) -> np.ndarray:
    mask = np.zeros(A.size, dtype=bool)
    mask[list(gens)] = True
    while True:
        before = mask.sum()
        for name, k in A.signature.ops:
            t = A.tables[name]
            if k == 0:
                mask[int(t)] = True
                continue
            idx = np.flatnonzero(mask)
            if idx.size:
                mask[t[np.ix_(*([idx] * k))].reshape(-1)] = True
        if mask.sum() == before:
            return mask


def induced_subalgebra(A: FiniteAlgebra, subset) -> tuple:
    """Subalgebra on a closed subset, with its inclusion map as a tuple."""
    elems = sorted(set(int(x) for x in subset))
    pos = {e: i for i, e in enumerate(elems)}
    tables = {}
    for name, k in A.signature.ops:
        t = A.tables[name]
        if k == 0:
            tables[name] = pos[int(t)]
            continue
        sub = t[np.ix_(*([elems] * k))]
        try:
            tables[name] = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
        except KeyError:
            raise ValueError(f"subset is not closed under {name!r}") from None
    S = FiniteAlgebra(A.signature, len(elems), tables, [A.labels[e] for e in elems])
    return S, tuple(elems)


def subalgebra_generated(A: FiniteAlgebra, gens) -> tuple:
    """Smallest subalgebra containing ``gens``, with its embedding into A."""
    mask = closure(A, gens)
    if not mask.any():
        raise ValueError("the empty set generates no subalgebra in a signature "
                         "without constants")
    return induced_subalgebra(A, np.flatnonzero(mask))


def direct_product(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple:
    """A x B with its two projections; (i, j) is stored at index i*|B| + j."""
    _check_signatures(A, B)
    n, m = A.size, B.size
    tables = {}
    for name, k in A.signature.ops:
        ta, tb = A.tables[name], B.tables[name]
        if k == 0:
            tables[name] = int(ta) * m + int(tb)
            continue
        grid = np.indices((n * m,) * k)
        tables[name] = ta[tuple(g // m for g in grid)] * m + tb[tuple(g % m for g in grid)]
    labels = [f"({a},{b})" for a in A.labels for b in B.labels]
    P = FiniteAlgebra(A.signature, n * m, tables, labels)
    p1 = Homomorphism(P, A, tuple(i // m for i in range(n * m)))
    p2 = Homomorphism(P, B, tuple(i % m for i in range(n * m)))
    return P, p1, p2


def power(A: FiniteAlgebra, k: int) -> FiniteAlgebra:
    """A^k with elements ordered lexicographically and labelled as words."""
    tables = {}
    elems = list(itertools.product(range(A.size), repeat=k))
    index = {e: i for i, e in enumerate(elems)}
    for name, ar in A.signature.ops:
        t = A.tables[name]
        if ar == 0:
            tables[name] = index[(int(t),) * k]
            continue
        out = np.zeros((len(elems),) * ar, dtype=np.int64)
        for args in itertools.product(range(len(elems)), repeat=ar):
            out[args] = index[tuple(int(t[tuple(elems[a][c] for a in args)]) for c in range(k))]
        tables[name] = out
    labels = ["".join(A.labels[c] for c in e) for e in elems]
    return FiniteAlgebra(A.signature, len(elems), tables, labels)


# -- terms ------------------------------------------------------------------

def evaluate_term(A: FiniteAlgebra, term, env: dict) -> int:
    """Evaluate a term given as a variable name or a tuple ``(op, *subterms)``."""
    if isinstance(term, str):
        if term in env:
            return env[term]
        return A.op(term)
    name, *subs = term
    return A.op(name, *(evaluate_term(A, s, env) for s in subs))


# -- congruences ------------------------------------------------------------

def _canonical_blocks(labels) -> tuple:
    seen = {}
    return tuple(seen.setdefault(int(b), len(seen)) for b in labels)


@dataclass(frozen=True)
class Congruence:
    blocks: tuple  # restricted growth string: block index per element

    @classmethod
    def from_labels(cls, labels) -> "Congruence":
        return cls(_canonical_blocks(labels))

    @property
    def size(self) -> int:
        return len(self.blocks)

    @property
    def classes(self) -> list:
        out = {}
        for i, b in enumerate(self.blocks):
            out.setdefault(b, []).append(i)
        return [tuple(c) for c in out.values()]

    def related(self, a: int, b: int) -> bool:
        return self.blocks[a] == self.blocks[b]

    def __le__(self, other: "Congruence") -> bool:
        return all(other.blocks[c[0]] == other.blocks[x]
                   for c in self.classes for x in c)

    def is_compatible(self, A: FiniteAlgebra) -> bool:
        b = np.array(self.blocks)
        for name, k in A.signature.ops:
            if k == 0:
                continue
            t = A.tables[name]
            rep = np.array([self.classes[x][0] for x in self.blocks])
            grid = list(np.indices((A.size,) * k).reshape(k, -1))
            orig = t[tuple(grid)]
            for i in range(k):
                moved = list(grid)
                moved[i] = rep[grid[i]]
                if not np.array_equal(b[orig], b[t[tuple(moved)]]):
                    return False
        return True


def generated_congruence(A: FiniteAlgebra, pairs) -> Congruence:
    """Smallest congruence of A containing every pair in ``pairs``."""
    parent = list(range(A.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
            return True
        return False

    for x, y in pairs:
        union(x, y)
    grids = {k: list(np.indices((A.size,) * k).reshape(k, -1))
             for _, k in A.signature.ops if k > 0}
    changed = True
    while changed:
        changed = False
        rep = np.array([find(x) for x in range(A.size)])
        for name, k in A.signature.ops:
            if k == 0:
                continue
            t, grid = A.tables[name], grids[k]
            orig = t[tuple(grid)]
            for i in range(k):
                moved = list(grid)
                moved[i] = rep[grid[i]]
                img = t[tuple(moved)]
                for x, y in set(zip(rep[orig].tolist(), rep[img].tolist())):
                    if x != y:
                        changed |= union(x, y)
            rep = np.array([find(x) for x in range(A.size)])
    return Congruence.from_labels([find(x) for x in range(A.size)])


def all_congruences(A: FiniteAlgebra, guard: int = 8) -> list:
    """Every congruence of A, sorted by block string.

    Congruences are generated as joins of principal congruences, so the cost
    is polynomial in |Con A|; the guard still bounds the input size.
    """
    if A.size > guard:
        raise GuardExceeded(f"|A| = {A.size} exceeds the congruence guard {guard}")
    bottom = Congruence(tuple(range(A.size)))
    principal = {generated_congruence(A, [(a, b)])
                 for a in range(A.size) for b in range(a + 1, A.size)}
    found = {bottom} | principal
    frontier = set(found)
    while frontier:
        new = set()
        for c in frontier:
            for p in principal:
                j = join(c, p)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    return sorted(found, key=lambda c: c.blocks)


def join(c: Congruence, d: Congruence) -> Congruence:
    # The equivalence join of two congruences is already a congruence.
    parent = list(range(c.size))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for cong in (c, d):
        for cls in cong.classes:
            for x in cls[1:]:
                rx, ry = find(cls[0]), find(x)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    return Congruence.from_labels([find(x) for x in range(c.size)])


def quotient(A: FiniteAlgebra, cong: Congruence) -> tuple:
    """A / cong with the canonical surjection."""
    if not cong.is_compatible(A):
        raise ValueError("partition is not a congruence")
    classes = sorted(cong.classes)
    which = {x: i for i, cls in enumerate(classes) for x in cls}
    tables = {}
    for name, k in A.signature.ops:
        t = A.tables[name]
        if k == 0:
            tables[name] = which[int(t)]
            continue
        out = np.zeros((len(classes),) * k, dtype=np.int64)
        for args in itertools.product(range(len(classes)), repeat=k):
            out[args] = which[int(t[tuple(classes[a][0] for a in args)])]
        tables[name] = out
    labels = ["{" + ",".join(A.labels[x] for x in cls) + "}" for cls in classes]
    Q = FiniteAlgebra(A.signature, len(classes), tables, labels)
    return Q, Homomorphism(A, Q, tuple(which[x] for x in range(A.size)))
