"""Duals, natural extensions and the δ-topology basis for finite algebras.

An alter ego pairs a finite algebra M with a structure on the same carrier.
For a finite algebra A the dual A* is the set of homomorphisms A -> M with
relations, operations and constants induced pointwise; the natural extension
is the algebra of all structure-preserving maps A* -> M under pointwise
operations.  Dual points are listed in the order of ``enumerate_homs`` and
named φ₀, φ₁, ...; extension points are sorted lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteAlgebra, all_congruences, direct_product, enumerate_homs
from .structure import (FiniteStructure, PartialMorphism, direct_union_amalgamated,
                        enumerate_partial_morphisms, enumerate_struct_morphisms)

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def phi_label(i: int) -> str:
    return "φ" + str(i).translate(_SUBSCRIPTS)


class NonAlgebraicEgo(ValueError):
    """A component of an alter ego is not compatible with the algebra it sits on."""


@dataclass(frozen=True, eq=False)
class AlterEgo:
    algebra: FiniteAlgebra
    structure: FiniteStructure
    name: str = ""

    def __post_init__(self):
        if self.algebra.size != self.structure.size:
            raise ValueError("alter ego and algebra must share a carrier")


def _apply_componentwise(M: FiniteAlgebra, name: str, k: int, tuples) -> tuple:
    t = M.tables[name]
    return tuple(int(t[tuple(col)]) for col in zip(*tuples))


def check_algebraic(ego: AlterEgo) -> list:
    """Raise ``NonAlgebraicEgo`` naming the first bad component; otherwise list what was checked."""
    M, X = ego.algebra, ego.structure
    ops = M.signature.ops
    checked = []

    def closed(name, universe, arity):
        universe = set(universe)
        for op, r in ops:
            if r == 0:
                c = (int(M.tables[op]),) * arity
                if c not in universe:
                    raise NonAlgebraicEgo(f"{name!r} misses the constant tuple {c} of {op!r}")
                continue
            for args in itertools.product(sorted(universe), repeat=r):
                v = _apply_componentwise(M, op, r, args)
                if v not in universe:
                    raise NonAlgebraicEgo(
                        f"{name!r} is not closed under {op!r}: {args} gives {v}")

    for name, k in X.signature.relations:
        closed(name, X.relations[name], k)
        checked.append(f"relation {name} is a subalgebra of M^{k}")
    for name, k in X.signature.operations:
        table = X.operations[name]
        for op, r in ops:
            if r == 0:
                c = int(M.tables[op])
                if int(table[(c,) * k]) != c:
                    raise NonAlgebraicEgo(f"{name!r} does not fix the constant {op!r}")
                continue
            for args in itertools.product(itertools.product(range(M.size), repeat=k), repeat=r):
                lhs = int(table[_apply_componentwise(M, op, r, args)])
                rhs = int(M.tables[op][tuple(int(table[a]) for a in args)])
                if lhs != rhs:
                    raise NonAlgebraicEgo(
                        f"{name!r} does not commute with {op!r} at {args}")
        checked.append(f"operation {name} is a homomorphism")
    for name, k in X.signature.partial_operations:
        dom = X.partial_operations[name]
        if not dom:
            raise NonAlgebraicEgo(f"partial operation {name!r} has an empty domain")
        closed(name, dom.keys(), k)
        for op, r in ops:
            if r == 0:
                continue
            for args in itertools.product(sorted(dom), repeat=r):
                v = _apply_componentwise(M, op, r, args)
                if dom[v] != int(M.tables[op][tuple(dom[a] for a in args)]):
                    raise NonAlgebraicEgo(
                        f"{name!r} does not commute with {op!r} at {args}")
        checked.append(f"partial operation {name} is a homomorphism on its domain")
    for name in X.signature.constants:
        closed(name, [(X.constants[name],)], 1)
        checked.append(f"constant {name} is a one-element subalgebra")
    return checked


@dataclass(eq=False)
class DualSpace:
    algebra: FiniteAlgebra
    ego: AlterEgo
    homs: list
    structure: FiniteStructure
    certificate: list

    @property
    def size(self) -> int:
        return len(self.homs)

    def evaluation(self, a: int) -> tuple:
        """e(a) as the tuple (φ(a) for φ in A*)."""
        return tuple(h.mapping[a] for h in self.homs)

    def evaluation_table(self) -> list:
        return [self.evaluation(a) for a in range(self.algebra.size)]

    def zero_set_label(self, i: int) -> str:
        """The set of elements sent to 0 by the i-th dual point."""
        zeros = [self.algebra.labels[a] for a, v in enumerate(self.homs[i].mapping) if v == 0]
        return "{" + ",".join(zeros) + "}" if zeros else "∅"


def dual_of(A: FiniteAlgebra, ego: AlterEgo) -> DualSpace:
    M, X = ego.algebra, ego.structure
    if A.signature != M.signature:
        from .algebra import SignatureMismatch
        raise SignatureMismatch(f"{A.signature} vs {M.signature}")
    certificate = check_algebraic(ego)
    homs = enumerate_homs(A, M)
    index = {h.mapping: i for i, h in enumerate(homs)}
    cols = np.array([h.mapping for h in homs], dtype=np.int64).reshape(len(homs), A.size)
    sig = X.signature
    rels = {}
    for name, k in sig.relations:
        allowed = np.zeros((M.size,) * k, dtype=bool)
        for t in X.relations[name]:
            allowed[t] = True
        rels[name] = [t for t in itertools.product(range(len(homs)), repeat=k)
                      if allowed[tuple(cols[i] for i in t)].all()]
    ops = {}
    for name, k in sig.operations:
        out = np.zeros((len(homs),) * k, dtype=np.int64)
        for t in itertools.product(range(len(homs)), repeat=k):
            out[t] = index[tuple(X.operations[name][tuple(cols[i] for i in t)].tolist())]
        ops[name] = out
    partial = {}
    for name, k in sig.partial_operations:
        dom = X.partial_operations[name]
        table = {}
        for t in itertools.product(range(len(homs)), repeat=k):
            pts = list(zip(*(cols[i].tolist() for i in t)))
            if all(p in dom for p in pts):
                table[t] = index[tuple(dom[p] for p in pts)]
        partial[name] = table
    consts = {name: index[(X.constants[name],) * A.size] for name in sig.constants}
    S = FiniteStructure(sig, len(homs), rels, ops, partial, consts,
                        [phi_label(i) for i in range(len(homs))])
    return DualSpace(A, ego, homs, S, certificate)


@dataclass(eq=False)
class NaturalExtension:
    dual: DualSpace
    points: list            # structure-preserving maps A* -> M as tuples
    algebra: FiniteAlgebra  # pointwise operations on ``points``
    embedding: tuple        # a -> index of e(a) in ``points``, or -1 when e(a) is missing

    @property
    def size(self) -> int:
        return len(self.points)


def natural_extension(A: FiniteAlgebra, ego: AlterEgo, dual: DualSpace | None = None) -> NaturalExtension:
    D = dual or dual_of(A, ego)
    M = ego.algebra
    points = [m.mapping for m in enumerate_struct_morphisms(D.structure, ego.structure)]
    index = {p: i for i, p in enumerate(points)}
    arr = np.array(points, dtype=np.int64).reshape(len(points), D.size)
    tables = {}
    for name, k in M.signature.ops:
        t = M.tables[name]
        if k == 0:
            tables[name] = index[(int(t),) * D.size]
            continue
        out = np.zeros((len(points),) * k, dtype=np.int64)
        for args in itertools.product(range(len(points)), repeat=k):
            out[args] = index[tuple(t[tuple(arr[i] for i in args)].tolist())]
        tables[name] = out
    evals = D.evaluation_table()
    embedding = tuple(index.get(e, -1) for e in evals)
    labels = []
    for i, p in enumerate(points):
        hits = [A.labels[a] for a, e in enumerate(evals) if e == p]
        labels.append(f"e({hits[0]})" if len(hits) == 1 else f"x{i}")
    return NaturalExtension(D, points, FiniteAlgebra(A.signature, len(points), tables, labels),
                            embedding)


@dataclass
class DualityReport:
    holds: bool
    extension_size: int
    inverse: tuple | None = None      # extension point -> element
    missing: tuple | None = None      # a morphism outside e(A)
    collision: tuple | None = None    # two elements with the same evaluation


def check_duality(A: FiniteAlgebra, ego: AlterEgo) -> DualityReport:
    """Is e_A a bijection onto the structure-preserving maps A* -> M?"""
    N = natural_extension(A, ego)
    evals = N.dual.evaluation_table()
    seen = {}
    for a, e in enumerate(evals):
        if e in seen:
            return DualityReport(False, N.size, collision=(seen[e], a))
        seen[e] = a
    for p in N.points:
        if p not in seen:
            return DualityReport(False, N.size, missing=p)
    return DualityReport(True, N.size, inverse=tuple(seen[p] for p in N.points))


def evaluation_is_embedding(A: FiniteAlgebra, ego: AlterEgo) -> bool:
    """Each e(a) is a morphism A* -> M and a ↦ e(a) is an injective homomorphism."""
    N = natural_extension(A, ego)
    if -1 in N.embedding or len(set(N.embedding)) != A.size:
        return False
    from .algebra import is_homomorphism
    return is_homomorphism(A, N.algebra, N.embedding)


# -- the δ basis ------------------------------------------------------------

@dataclass(eq=False)
class DeltaBasis:
    extension: NaturalExtension
    entries: list   # (PartialMorphism, frozenset of extension-point indices)

    def lookup(self, domain: tuple, mapping: tuple):
        for f, o in self.entries:
            if f.domain == domain and f.mapping == mapping:
                return f, o
        return None


def basic_open(N: NaturalExtension, f: PartialMorphism) -> frozenset:
    return frozenset(i for i, p in enumerate(N.points)
                     if all(p[d] == v for d, v in zip(f.domain, f.mapping)))


def delta_basis(A: FiniteAlgebra, ego: AlterEgo, guard: int = 16) -> DeltaBasis:
    N = natural_extension(A, ego)
    entries = [(f, basic_open(N, f))
               for f in enumerate_partial_morphisms(N.dual.structure, ego.structure, guard)]
    return DeltaBasis(N, entries)


@dataclass
class DeltaBaseReport:
    holds: bool
    empty: int = 0
    union: int = 0          # O_f ∩ O_g = O_{f∪g}
    other: int = 0          # equal to some other basic open
    failures: list = field(default_factory=list)
    discrete: bool = False  # every point isolated, so δ agrees with the discrete ι


def check_delta_base(A: FiniteAlgebra, ego: AlterEgo, guard: int = 16) -> DeltaBaseReport:
    B = delta_basis(A, ego, guard)
    opens = {o for _, o in B.entries}
    report = DeltaBaseReport(True)
    for (f, of), (g, og) in itertools.combinations_with_replacement(B.entries, 2):
        meet = of & og
        if not meet:
            report.empty += 1
            continue
        fd, gd = f.as_dict(), g.as_dict()
        if all(fd[d] == gd[d] for d in fd.keys() & gd.keys()):
            union = {**fd, **gd}
            dom = tuple(sorted(union))
            hit = B.lookup(dom, tuple(union[d] for d in dom))
            if hit is not None and hit[1] == meet:
                report.union += 1
                continue
        if meet in opens:
            report.other += 1
        else:
            report.holds = False
            report.failures.append((f, g))
    report.discrete = all(frozenset([i]) in opens for i in range(B.extension.size))
    return report


# -- products ---------------------------------------------------------------

@dataclass
class ProductReport:
    extension_iso: tuple | None   # (A×B)^δ -> A^δ × B^δ
    dual_iso: tuple | None        # (A×B)* -> A* ⨿ B*

    @property
    def extension_holds(self) -> bool:
        return self.extension_iso is not None

    @property
    def dual_holds(self) -> bool:
        return self.dual_iso is not None

    @property
    def agree(self) -> bool:
        return self.extension_holds == self.dual_holds


def check_product_theorem(A: FiniteAlgebra, B: FiniteAlgebra, ego: AlterEgo) -> ProductReport:
    from .iso import find_isomorphism

    P, _, _ = direct_product(A, B)
    ext_prod, _, _ = direct_product(natural_extension(A, ego).algebra,
                                    natural_extension(B, ego).algebra)
    ext_iso = find_isomorphism(natural_extension(P, ego).algebra, ext_prod)
    U, _, _ = direct_union_amalgamated(dual_of(A, ego).structure, dual_of(B, ego).structure)
    dual_iso = find_isomorphism(dual_of(P, ego).structure, U)
    return ProductReport(ext_iso, dual_iso)


def check_congruence_product(A: FiniteAlgebra, B: FiniteAlgebra, guard: int = 64) -> tuple:
    """Is (θ, ψ) ↦ θ×ψ an order isomorphism Con A × Con B -> Con(A×B)?

    Returns the verdict and the pairing table (pair of block strings -> block string).
    """
    from .algebra import Congruence

    P, _, _ = direct_product(A, B)
    ca, cb = all_congruences(A, guard), all_congruences(B, guard)
    cp = all_congruences(P, guard)
    m = B.size
    table = {}
    for s, t in itertools.product(ca, cb):
        labels = [s.blocks[i // m] * len(t.classes) + t.blocks[i % m] for i in range(P.size)]
        table[(s.blocks, t.blocks)] = Congruence.from_labels(labels)
    images = list(table.values())
    ok = len(set(images)) == len(images) and set(images) == set(cp)
    if ok:
        pairs = list(table.items())
        for (k1, c1), (k2, c2) in itertools.product(pairs, repeat=2):
            below = (Congruence(k1[0]) <= Congruence(k2[0])
                     and Congruence(k1[1]) <= Congruence(k2[1]))
            if below != (c1 <= c2):
                ok = False
                break
    return ok, {k: v.blocks for k, v in table.items()}


# -- median cover formula -----------------------------------------------------

def check_median_cover_formula(A: FiniteAlgebra, a_list, b_list) -> tuple:
    """Compare the cover ∪[a_i:1] ∪ ∪[b_j:0] = A* with the disjunction of (a_i,b_k,b_l) = a_i.

    ``[a:m]`` is the set of dual points sending a to m.  Returns ``(cover, formula)``.
    """
    from .library import median2

    homs = enumerate_homs(A, median2())
    covered = all(any(h.mapping[a] == 1 for a in a_list) or any(h.mapping[b] == 0 for b in b_list)
                  for h in homs)
    med = A.tables["median"]
    formula = any(int(med[a, bk, bl]) == a for a in a_list for bk in b_list for bl in b_list)
    return covered, formula


# -- injectivity evidence ------------------------------------------------------

def injectivity_evidence(ego: AlterEgo, structures, guard: int = 16) -> dict:
    """Check that every morphism from a closed substructure into the ego extends.

    Only finite members are examined, so a positive answer is finite-level
    evidence rather than a proof of injectivity.
    """
    checked = 0
    for X in structures:
        totals = {m.mapping for m in enumerate_struct_morphisms(X, ego.structure)}
        for f in enumerate_partial_morphisms(X, ego.structure, guard):
            checked += 1
            if not any(all(t[d] == v for d, v in zip(f.domain, f.mapping)) for t in totals):
                return {"label": "finite-level evidence", "holds": False, "checked": checked,
                        "counterexample": (X, f.domain, f.mapping)}
    return {"label": "finite-level evidence", "holds": True, "checked": checked}


# -- DOT ---------------------------------------------------------------------

def structure_to_dot(X: FiniteStructure, name: str = "dual", labels=None,
                     converse: bool = False) -> str:
    """Nodes, Hasse edges of ≤ (lower -> upper) and • as dashed undirected arcs.

    ``converse`` draws the reverse of ≤, which is inclusion of zero sets when
    dual points are labelled by the ideals they send to 0.
    """
    labels = list(labels) if labels is not None else list(X.labels)
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for i in range(X.size):
        lines.append(f'  n{i} [label="{labels[i]}"];')
    if "≤" in X.relations:
        leq = X.relations["≤"]
        strict = {(q, p) if converse else (p, q) for p, q in leq if p != q}
        for p, q in sorted(strict):
            if not any((p, r) in strict and (r, q) in strict for r in range(X.size)):
                lines.append(f"  n{p} -> n{q};")
    if "•" in X.operations:
        t = X.operations["•"]
        for p in range(X.size):
            q = int(t[p])
            if p < q:
                lines.append(f"  n{p} -> n{q} [style=dashed, dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
