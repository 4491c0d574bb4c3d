"""Finite and symbolic relational structures: alter egos and duals.

A ``FiniteStructure`` carries relations, total operations, partial
operations and constants over ``range(size)``; its topology is discrete and
never represented.  A ``SymbolicStructure`` describes a countable structure
through decidable rules and a depth filtration whose level-n slices are
finite structures.

Substructure convention: a subset D is a substructure when it contains every
constant, is closed under the total operations, and for each partial
operation h and each tuple of ``dom(h)`` inside D, the value ``h(t)`` lies in D.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _search
from .algebra import GuardExceeded, SignatureMismatch


@dataclass(frozen=True)
class StructureSignature:
    relations: tuple = ()           # ((name, arity), ...)
    operations: tuple = ()          # total, arity >= 1
    partial_operations: tuple = ()
    constants: tuple = ()           # names

    def __post_init__(self):
        names = ([n for n, _ in self.relations] + [n for n, _ in self.operations]
                 + [n for n, _ in self.partial_operations] + list(self.constants))
        if len(set(names)) != len(names):
            raise ValueError(f"symbol names must be unique across kinds: {names}")
        for n, k in self.operations:
            if k < 1:
                raise ValueError(f"total operation {n!r} needs arity >= 1; use a constant")


class FiniteStructure:
    def __init__(self, signature: StructureSignature, size: int, relations=None,
                 operations=None, partial_operations=None, constants=None, labels=None):
        relations = relations or {}
        operations = operations or {}
        partial_operations = partial_operations or {}
        constants = constants or {}
        self.signature = signature
        self.size = size
        self.relations = {}
        for name, k in signature.relations:
            tuples = frozenset(tuple(int(v) for v in t) for t in relations.get(name, ()))
            for t in tuples:
                if len(t) != k or any(not 0 <= v < size for v in t):
                    raise ValueError(f"relation {name!r} has bad tuple {t}")
            self.relations[name] = tuples
        self.operations = {}
        for name, k in signature.operations:
            t = np.array(operations[name], dtype=np.int64)
            if t.shape != (size,) * k:
                raise ValueError(f"operation {name!r} has shape {t.shape}")
            if t.size and ((t < 0) | (t >= size)).any():
                raise ValueError(f"operation {name!r} leaves the carrier")
            t.setflags(write=False)
            self.operations[name] = t
        self.partial_operations = {}
        for name, k in signature.partial_operations:
            table = {tuple(int(v) for v in t): int(v)
                     for t, v in dict(partial_operations.get(name, {})).items()}
            for t, v in table.items():
                if len(t) != k or any(not 0 <= a < size for a in t) or not 0 <= v < size:
                    raise ValueError(f"partial operation {name!r} has bad entry {t} -> {v}")
            self.partial_operations[name] = table
        self.constants = {}
        for name in signature.constants:
            v = int(constants[name])
            if not 0 <= v < size:
                raise ValueError(f"constant {name!r} = {v} is not in the carrier")
            self.constants[name] = v
        self.labels = tuple(str(x) for x in labels) if labels is not None else tuple(
            str(i) for i in range(size))
        if len(self.labels) != size:
            raise ValueError("label count does not match carrier size")

    def label(self, i: int) -> str:
        return self.labels[i]

    def __repr__(self):
        return f"FiniteStructure(size={self.size}, signature={self.signature})"


def is_struct_morphism(X: FiniteStructure, Y: FiniteStructure, mapping) -> bool:
    h = tuple(mapping)
    if len(h) != X.size or any(not 0 <= v < Y.size for v in h):
        return False
    for name, c in X.constants.items():
        if h[c] != Y.constants[name]:
            return False
    for name, tuples in X.relations.items():
        target = Y.relations[name]
        if any(tuple(h[v] for v in t) not in target for t in tuples):
            return False
    for name, k in X.signature.operations:
        tx, ty = X.operations[name], Y.operations[name]
        for t in itertools.product(range(X.size), repeat=k):
            if h[tx[t]] != ty[tuple(h[v] for v in t)]:
                return False
    for name, table in X.partial_operations.items():
        ty = Y.partial_operations[name]
        for t, v in table.items():
            img = tuple(h[a] for a in t)
            if img not in ty or ty[img] != h[v]:
                return False
    return True


@dataclass(frozen=True, eq=False)
class StructMorphism:
    source: FiniteStructure
    target: FiniteStructure
    mapping: tuple

    def __post_init__(self):
        if not is_struct_morphism(self.source, self.target, self.mapping):
            raise ValueError(f"{self.mapping} does not preserve the structure")

    def __call__(self, p: int) -> int:
        return self.mapping[p]


def _check_signatures(X, Y):
    if X.signature != Y.signature:
        raise SignatureMismatch(f"{X.signature} vs {Y.signature}")


def morphism_problem(X: FiniteStructure, Y: FiniteStructure) -> _search.Problem:
    _check_signatures(X, Y)
    p = _search.Problem(X.size, Y.size)
    for name, c in X.constants.items():
        p.fixed.append((c, Y.constants[name]))
    for name, k in X.signature.operations:
        if X.size:
            p.ops.append(_search.total_op(X.operations[name], Y.operations[name]))
    for name, k in X.signature.partial_operations:
        p.ops.append(_search.partial_op(k, X.partial_operations[name], Y.size,
                                        Y.partial_operations[name]))
    for name, k in X.signature.relations:
        p.rels.append(_search.relation(k, X.relations[name], Y.size, Y.relations[name]))
    return p


def enumerate_struct_morphisms(X: FiniteStructure, Y: FiniteStructure) -> list:
    """All structure-preserving maps X -> Y in lexicographic order."""
    return [StructMorphism(X, Y, h) for h in _search.solve(morphism_problem(X, Y))]


# -- substructures ----------------------------------------------------------

def substructure_closure(X: FiniteStructure, subset) -> frozenset:
    out = set(int(v) for v in subset) | set(X.constants.values())
    while True:
        new = set()
        for name, k in X.signature.operations:
            t = X.operations[name]
            for args in itertools.product(sorted(out), repeat=k):
                new.add(int(t[args]))
        for table in X.partial_operations.values():
            for args, v in table.items():
                if all(a in out for a in args):
                    new.add(v)
        if new <= out:
            return frozenset(out)
        out |= new


def is_closed_subset(X: FiniteStructure, subset) -> bool:
    return substructure_closure(X, subset) == frozenset(subset)


def substructure(X: FiniteStructure, subset) -> tuple:
    """Induced substructure on a closed subset, with its inclusion tuple."""
    elems = sorted(set(int(v) for v in subset))
    if not is_closed_subset(X, elems):
        raise ValueError(f"{elems} is not a closed substructure")
    pos = {e: i for i, e in enumerate(elems)}
    keep = set(elems)
    rels = {name: [tuple(pos[v] for v in t) for t in ts if set(t) <= keep]
            for name, ts in X.relations.items()}
    ops = {}
    for name, k in X.signature.operations:
        t = X.operations[name]
        out = np.zeros((len(elems),) * k, dtype=np.int64)
        for args in itertools.product(range(len(elems)), repeat=k):
            out[args] = pos[int(t[tuple(elems[a] for a in args)])]
        ops[name] = out
    partial = {name: {tuple(pos[a] for a in t): pos[v] for t, v in table.items() if set(t) <= keep}
               for name, table in X.partial_operations.items()}
    consts = {name: pos[v] for name, v in X.constants.items()}
    S = FiniteStructure(X.signature, len(elems), rels, ops, partial, consts,
                        [X.labels[e] for e in elems])
    return S, tuple(elems)


def closed_substructures(X: FiniteStructure, guard: int = 16) -> list:
    """Every closed subset of X, as sorted tuples, ordered by (size, elements)."""
    if X.size > guard:
        raise GuardExceeded(f"|X| = {X.size} exceeds the substructure guard {guard}")
    start = substructure_closure(X, ())
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(X.size):
                if x not in s:
                    c = substructure_closure(X, s | {x})
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    return sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))


@dataclass(frozen=True, eq=False)
class PartialMorphism:
    source: FiniteStructure
    target: FiniteStructure
    domain: tuple       # sorted elements of the source
    mapping: tuple      # value per domain element

    def __post_init__(self):
        sub, _ = substructure(self.source, self.domain)
        if not is_struct_morphism(sub, self.target, self.mapping):
            raise ValueError("partial map does not preserve the structure on its domain")

    def as_dict(self) -> dict:
        return dict(zip(self.domain, self.mapping))

    def __call__(self, p: int) -> int:
        return self.as_dict()[p]

    @property
    def is_total(self) -> bool:
        return len(self.domain) == self.source.size


def enumerate_partial_morphisms(X: FiniteStructure, Y: FiniteStructure, guard: int = 16) -> list:
    out = []
    for dom in closed_substructures(X, guard):
        sub, _ = substructure(X, dom)
        for m in enumerate_struct_morphisms(sub, Y):
            out.append(PartialMorphism(X, Y, dom, m.mapping))
    return out


# -- direct unions ----------------------------------------------------------

def direct_union_amalgamated(X: FiniteStructure, Y: FiniteStructure,
                             amalgamate: bool = True) -> tuple:
    """Disjoint union of X and Y with each constant identified across the copies.

    Returns the union and the two embeddings as tuples.  With
    ``amalgamate=False`` the copies stay disjoint and the constants are read
    from the X copy; this is not a coproduct in general and exists to build
    counterexamples.
    """
    _check_signatures(X, Y)
    for name, k in X.signature.operations:
        if k >= 2:
            raise ValueError(f"direct union is undefined for the {k}-ary operation {name!r}")
    emb1 = tuple(range(X.size))
    emb2 = []
    labels = [f"{l}|1" for l in X.labels]
    const_of_y = {}
    if amalgamate:
        for name, v in Y.constants.items():
            target = X.constants[name]
            if const_of_y.setdefault(v, target) != target:
                raise ValueError("constants that coincide in Y differ in X; "
                                 "amalgamation would collapse X")
        for name, v in X.constants.items():
            labels[v] = X.labels[v]
    for y in range(Y.size):
        if y in const_of_y:
            emb2.append(const_of_y[y])
        else:
            emb2.append(len(labels))
            labels.append(f"{Y.labels[y]}|2")
    emb2 = tuple(emb2)
    size = len(labels)
    rels = {name: {tuple(emb1[v] for v in t) for t in X.relations[name]}
            | {tuple(emb2[v] for v in t) for t in Y.relations[name]}
            for name in X.relations}
    ops = {}
    for name, k in X.signature.operations:
        out = np.zeros(size, dtype=np.int64)
        for x in range(X.size):
            out[emb1[x]] = emb1[int(X.operations[name][x])]
        for y in range(Y.size):
            v = emb2[int(Y.operations[name][y])]
            if y in const_of_y and out[emb2[y]] != v:
                raise ValueError(f"operation {name!r} disagrees on an amalgamated constant")
            out[emb2[y]] = v
        ops[name] = out
    partial = {}
    for name, k in X.signature.partial_operations:
        table = {tuple(emb1[a] for a in t): emb1[v] for t, v in X.partial_operations[name].items()}
        for t, v in Y.partial_operations[name].items():
            key = tuple(emb2[a] for a in t)
            if key in table and table[key] != emb2[v]:
                raise ValueError(f"partial operation {name!r} disagrees on amalgamated constants")
            table[key] = emb2[v]
        if not table and not X.signature.constants:
            raise ValueError(f"partial operation {name!r} would have an empty domain")
        partial[name] = table
    consts = dict(X.constants)
    U = FiniteStructure(X.signature, size, rels, ops, partial, consts, labels)
    return U, emb1, emb2


def check_coproduct_universal(X: FiniteStructure, Y: FiniteStructure, Z: FiniteStructure,
                              union=None) -> tuple:
    """Does the (given or amalgamated) union of X and Y behave as a coproduct against Z?

    Returns ``(verdict, table)`` where ``table`` maps each pair of morphism
    tables ``(g, h)`` to the list of mediating morphisms found.
    """
    U, e1, e2 = union if union is not None else direct_union_amalgamated(X, Y)
    table = {(g.mapping, h.mapping): [] for g in enumerate_struct_morphisms(X, Z)
             for h in enumerate_struct_morphisms(Y, Z)}
    ok = True
    for m in enumerate_struct_morphisms(U, Z):
        key = (tuple(m.mapping[i] for i in e1), tuple(m.mapping[i] for i in e2))
        if key not in table:
            ok = False
            continue
        table[key].append(m.mapping)
    ok = ok and all(len(v) == 1 for v in table.values())
    return ok, table


# -- symbolic structures ----------------------------------------------------

class SymbolicStructure:
    """A countable structure given by rules and filtered by a depth function.

    Subclasses implement ``points``, ``level``, ``contains``, ``holds``,
    ``apply``, ``constant`` and ``label``.  Only finite slices are ever
    materialised.
    """

    signature: StructureSignature

    def points(self, level: int) -> list:
        raise NotImplementedError

    def level(self, p) -> int:
        raise NotImplementedError

    def contains(self, p) -> bool:
        raise NotImplementedError

    def holds(self, relation: str, tup) -> bool:
        raise NotImplementedError

    def apply(self, operation: str, tup):
        raise NotImplementedError

    def partial_apply(self, operation: str, tup):
        """Value of a partial operation, or None outside its domain."""
        raise NotImplementedError

    def constant(self, name: str):
        raise NotImplementedError

    def label(self, p) -> str:
        return str(p)

    def slice(self, level: int) -> tuple:
        pts = self.points(level)
        pos = {p: i for i, p in enumerate(pts)}
        sig = self.signature
        rels = {name: [tuple(pos[p] for p in t) for t in itertools.product(pts, repeat=k)
                       if self.holds(name, t)] for name, k in sig.relations}
        ops = {}
        for name, k in sig.operations:
            out = np.zeros((len(pts),) * k, dtype=np.int64)
            for t in itertools.product(range(len(pts)), repeat=k):
                out[t] = pos[self.apply(name, tuple(pts[i] for i in t))]
            ops[name] = out
        partial = {}
        for name, k in sig.partial_operations:
            table = {}
            for t in itertools.product(pts, repeat=k):
                v = self.partial_apply(name, t)
                if v is not None:
                    table[tuple(pos[p] for p in t)] = pos[v]
            partial[name] = table
        consts = {name: pos[self.constant(name)] for name in sig.constants}
        X = FiniteStructure(sig, len(pts), rels, ops, partial, consts,
                            [self.label(p) for p in pts])
        return X, pts

    def check_filtration(self, level: int) -> bool:
        """Slices are nested, closed under the unary operations, and hold the constants."""
        for n in range(level + 1):
            pts = set(self.points(n))
            if n < level and not pts <= set(self.points(n + 1)):
                return False
            if any(self.level(p) > n or not self.contains(p) for p in pts):
                return False
            if any(self.constant(c) not in pts for c in self.signature.constants):
                return False
            for name, k in self.signature.operations:
                if k == 1 and any(self.apply(name, (p,)) not in pts for p in pts):
                    return False
        return True
