"""The median algebra of the comb-shaped tree a0 - a1 - a2 - ... with a leaf b_i on each a_i.

Elements are pairs ``("a", i)`` and ``("b", i)``; both have depth i.  Dual
points are prime ideals: the whole algebra ``"A"``, the empty ideal ``"∅"``,
and ``("A", i)`` = ↑a_i, ``("A•", i)`` its complement (i ≥ 1),
``("B", i)`` = {b_i} and ``("B•", i)`` its complement (i ≥ 0).  A dual point
sends an element to 0 exactly when the element lies in the ideal, and the
order on dual points is the pointwise order of homomorphisms, i.e. reverse
inclusion of ideals.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..algebra import FiniteAlgebra
from ..extension import (FiniteSite, MapBetweenAlgebras, ProElement, Site, Witness,
                         point_window, check_smooth)
from ..library import MEDIAN, MEDIAN_EGO_SIGNATURE, median2, median_ego
from ..structure import SymbolicStructure

WHOLE, EMPTY = "A", "∅"


class NoAlgebraPoint(LookupError):
    """A pointwise computation on the dual matched no single algebra point."""


def tree_median(x, y, z):
    if x == y or x == z:
        return x
    if y == z:
        return y
    return ("a", sorted((x[1], y[1], z[1]))[1])


def element_label(a) -> str:
    return f"{a[0]}{a[1]}"


def elements(depth: int) -> list:
    return [("a", i) for i in range(depth + 1)] + [("b", i) for i in range(depth + 1)]


def build_median_tree(n: int) -> FiniteAlgebra:
    """The subalgebra {a0..an, b0..bn}; a_i sits at index i and b_i at n + 1 + i."""
    if n < 0:
        raise ValueError("level must be non-negative")
    elems = elements(n)
    pos = {e: i for i, e in enumerate(elems)}
    size = len(elems)
    t = np.zeros((size,) * 3, dtype=np.int64)
    for (i, x), (j, y), (k, z) in itertools.product(enumerate(elems), repeat=3):
        t[i, j, k] = pos[tree_median(x, y, z)]
    return FiniteAlgebra(MEDIAN, size, {"median": t}, [element_label(e) for e in elems])


def tree_embedding(n: int) -> tuple:
    """Inclusion of the level-n tree into the level-(n+1) tree."""
    return tuple(range(n + 1)) + tuple(n + 2 + i for i in range(n + 1))


def in_ideal(p, a) -> bool:
    if p == WHOLE:
        return True
    if p == EMPTY:
        return False
    kind, i = p
    if kind == "A":
        return a[1] >= i
    if kind == "A•":
        return a[1] < i
    if kind == "B":
        return a == ("b", i)
    return a != ("b", i)


def evaluate(p, a) -> int:
    return 0 if in_ideal(p, a) else 1


def level(p) -> int:
    return 0 if p in (WHOLE, EMPTY) else p[1]


def point_label(p) -> str:
    if p in (WHOLE, EMPTY):
        return p
    return f"{p[0]}{p[1]}"


_COMPLEMENT = {"A": "A•", "A•": "A", "B": "B•", "B•": "B"}


class MedianTreeDual(SymbolicStructure):
    signature = MEDIAN_EGO_SIGNATURE

    def points(self, lvl: int) -> list:
        out = [WHOLE, EMPTY]
        for i in range(lvl + 1):
            if i >= 1:
                out += [("A", i), ("A•", i)]
            out += [("B", i), ("B•", i)]
        return out

    def level(self, p) -> int:
        return level(p)

    def contains(self, p) -> bool:
        if p in (WHOLE, EMPTY):
            return True
        return (isinstance(p, tuple) and len(p) == 2 and p[0] in _COMPLEMENT
                and isinstance(p[1], int) and p[1] >= (1 if p[0] in ("A", "A•") else 0))

    def ideal(self, p, up_to: int) -> frozenset:
        return frozenset(a for a in elements(up_to) if in_ideal(p, a))

    def holds(self, relation: str, tup) -> bool:
        if relation != "≤":
            raise KeyError(relation)
        p, q = tup
        # Ideals are eventually uniform, so vertices one level past both points decide inclusion.
        n = max(level(p), level(q)) + 1
        return self.ideal(p, n) >= self.ideal(q, n)

    def apply(self, operation: str, tup):
        if operation != "•":
            raise KeyError(operation)
        (p,) = tup
        if p == WHOLE:
            return EMPTY
        if p == EMPTY:
            return WHOLE
        return (_COMPLEMENT[p[0]], p[1])

    def partial_apply(self, operation, tup):
        raise KeyError(operation)

    def constant(self, name: str):
        return {"0": WHOLE, "1": EMPTY}[name]

    def label(self, p) -> str:
        return point_label(p)


def infinity_rule(p) -> int:
    if p == EMPTY:
        return 1
    if p == WHOLE:
        return 0
    return 1 if p[0] in ("A•", "B") else 0


INFINITY = ProElement("∞", "∞", infinity_rule)


def _witness_contains(x, p) -> bool:
    return p in (WHOLE, EMPTY) or p[0] in ("B", "B•")


def _witness_agrees(x, a) -> bool:
    # e(a) and x are uniform on B_i, B_i• beyond index depth(a) + 1.
    n = a[1] + 1
    return all(evaluate(p, a) == x(p) for p in MedianTreeDual().points(n)
               if _witness_contains(x, p))


BULLET_CLOSED_WITNESS = Witness("F∪F•", lambda x: x.key == "∞", _witness_contains,
                                _witness_agrees)


class MedianTreeSite(Site):
    margin = 2
    default_depth = 8
    name = "median-tree"
    signature = MEDIAN

    def __init__(self, witnesses: bool = True):
        self.dual = MedianTreeDual()
        self.ego = median_ego()
        self.witnesses = (BULLET_CLOSED_WITNESS,) if witnesses else ()

    def elements(self, depth: int) -> list:
        return elements(depth)

    def element_depth(self, a) -> int:
        return a[1]

    def element_label(self, a) -> str:
        return element_label(a)

    def dual_points(self, lvl: int) -> list:
        return self.dual.points(lvl)

    def point_label(self, p) -> str:
        return point_label(p)

    def evaluate(self, p, a) -> int:
        return evaluate(p, a)

    def op(self, name: str, *args):
        return tree_median(*args)

    def sample_points(self) -> list:
        return [INFINITY] + [self.embed(a) for a in elements(3)]


def median_bidual_points(n: int) -> list:
    site = MedianTreeSite()
    return [site.embed(a) for a in elements(n)] + [INFINITY]


def below(q, p) -> bool:
    """q ∈ ↓p for inclusion of ideals, i.e. p ≤ q in the pointwise order."""
    return MedianTreeDual().holds("≤", (p, q))


def union_form(n: int, q) -> bool:
    """q ∈ ↓A_{n+1} ∪ ↓A_n• (A_0• is the empty ideal)."""
    return below(q, ("A", n + 1)) or below(q, ("A•", n) if n >= 1 else EMPTY)


def membership_formula(kind: str, n: int, q) -> bool:
    """Membership of q in the 1-set of e(a_n) = ↓A_{n+1} ∪ ↓A_n• ∪ {B_n} or e(b_n) = ↓B_n•."""
    if kind == "b":
        return below(q, ("B•", n))
    return union_form(n, q) or q == ("B", n)


def membership_tables(max_level: int = 6) -> dict:
    """Compare e(a_n), e(b_n) and ∞ with their descriptions on every dual point of level ≤ max_level.

    ``union_gaps`` lists the points where e(b_n) differs from ↓A_{n+1} ∪ ↓A_n•.
    """
    pts = MedianTreeDual().points(max_level)
    mismatches, gaps = [], []
    checked = 0
    for n in range(max_level + 1):
        for kind in ("a", "b"):
            for q in pts:
                checked += 1
                inside = evaluate(q, (kind, n)) == 1
                if inside != membership_formula(kind, n, q):
                    mismatches.append((f"{kind}{n}", point_label(q)))
                if kind == "b" and inside != union_form(n, q):
                    gaps.append((f"b{n}", point_label(q)))
    for q in pts:
        checked += 1
        expected = q == EMPTY or (q not in (WHOLE, EMPTY) and q[0] in ("A•", "B"))
        if (INFINITY(q) == 1) != expected:
            mismatches.append(("∞", point_label(q)))
    return {"checked": checked, "mismatches": mismatches, "holds": not mismatches,
            "union_gaps": gaps}


def median_triple_with_infinity(m: int, n: int, kinds=("a", "b")) -> str:
    """The element matching the pointwise median of ∞, kinds[0]_m and kinds[1]_n."""
    depth = max(m, n) + 2
    pts = MedianTreeDual().points(depth)
    y, z = (kinds[0], m), (kinds[1], n)
    target = tuple(int(INFINITY(p) + evaluate(p, y) + evaluate(p, z) >= 2) for p in pts)
    hits = [a for a in elements(depth) if tuple(evaluate(p, a) for p in pts) == target]
    if len(hits) != 1:
        raise NoAlgebraPoint(f"(∞, {kinds[0]}{m}, {kinds[1]}{n}) matches {len(hits)} algebra points")
    return element_label(hits[0])


def u_prime_map(site: MedianTreeSite | None = None) -> MapBetweenAlgebras:
    site = site or MedianTreeSite()
    two = FiniteSite(median2(), median_ego(), "2")
    return MapBetweenAlgebras(site, two, lambda a: 0 if a[0] == "a" else 1, "u′")


def median_u_prime_smoothness(depth: int = 8) -> dict:
    with_w = u_prime_map(MedianTreeSite(True))
    without = u_prime_map(MedianTreeSite(False))
    two = with_w.target
    full = tuple(two.dual_points())
    singles = {two.point_label(p): point_window(with_w, INFINITY, (p,), depth).values
               for p in full}
    w = point_window(with_w, INFINITY, full, depth)
    decoded = sorted(two.element_label(two.decode(v)) for v in w.values)
    bare = [point_window(without, INFINITY, full, d) for d in range(depth + 1)]
    bare_decoded = [sorted(two.element_label(two.decode(v)) for v in r.values) for r in bare]
    anchor = point_window(with_w, with_w.source.embed(("b", 3)), full, depth)
    verdict = check_smooth(with_w, depth=depth)
    return {
        "window_at_infinity": decoded,
        "stabilized": w.stabilized,
        "single_point_windows": {k: [list(v) for v in vals] for k, vals in singles.items()},
        "witness": list(w.witnesses),
        "without_witness": bare_decoded,
        "anchor_b3": sorted(two.element_label(two.decode(v)) for v in anchor.values),
        "smooth": verdict.holds,
        "depth": depth,
    }
