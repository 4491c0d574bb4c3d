"""Windows and the multivalued extension of arbitrary maps between algebras.

A *site* presents an algebra A of ISP(M) through its dual: algebra elements
with a depth, dual points with a level, and evaluation ``φ(a)``.  A point x
of the natural extension is a ``ProElement``.  For a map u: A -> B and a
finite set F of dual points of B, the window at x collects the traces
``e_B(u(a))|F`` of all algebra points a in a δ-neighbourhood of x.

Finite sites are exact: neighbourhoods range over the whole δ-basis.
Symbolic sites are truncated: the depth-k neighbourhood of x is agreement
with x on every dual point of level ≤ k, intersected with any registered
witness domain that applies to x, and only algebra elements of depth
≤ k + margin are inspected.  Algebra points always use their isolating
neighbourhood (agreement on the whole dual).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable

from .algebra import FiniteAlgebra, is_homomorphism
from .duality import AlterEgo, delta_basis, dual_of, phi_label


class EmptyAtDepth(ValueError):
    """No algebra point was found in a neighbourhood up to the inspected depth."""


class NotStrong(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ProElement:
    key: Hashable
    label: str
    rule: Callable
    element: Hashable = None     # the algebra element a when this point is e(a)

    def __call__(self, phi) -> int:
        return self.rule(phi)

    @property
    def is_algebra_point(self) -> bool:
        return self.element is not None

    def __eq__(self, other):
        return isinstance(other, ProElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"ProElement({self.label})"


@dataclass(frozen=True)
class Witness:
    """A basic open O_f whose domain may be infinite, registered by a case study.

    ``contains(x, phi)`` decides membership of a dual point in dom(f), where f
    is the restriction of x to that domain; ``agrees(x, a)`` decides whether
    e(a) coincides with x on the whole domain.
    """

    name: str
    applies: Callable
    contains: Callable
    agrees: Callable


@dataclass(frozen=True)
class Neighborhood:
    point: ProElement
    level: int | None          # None isolates an algebra point
    witnesses: tuple = ()


class Site:
    exact = False
    margin = 0
    default_depth = 0
    witnesses: tuple = ()
    name = ""
    ego: AlterEgo
    signature = None

    def elements(self, depth: int) -> list:
        raise NotImplementedError

    def element_depth(self, a) -> int:
        return 0

    def element_label(self, a) -> str:
        return str(a)

    def dual_points(self, level: int) -> list:
        raise NotImplementedError

    def point_label(self, phi) -> str:
        return str(phi)

    def evaluate(self, phi, a) -> int:
        raise NotImplementedError

    def op(self, name: str, *args):
        raise NotImplementedError

    def embed(self, a) -> ProElement:
        return ProElement(("e", a), f"e({self.element_label(a)})",
                          lambda phi, a=a: self.evaluate(phi, a), a)

    def sample_points(self) -> list:
        raise NotImplementedError

    def max_level(self) -> int | None:
        """Level that already lists every dual point, or None for an infinite dual."""
        return None

    def applicable_witnesses(self, x: ProElement) -> tuple:
        return tuple(w for w in self.witnesses if w.applies(x))

    def neighborhood_members(self, nb: Neighborhood, depth: int) -> list:
        x = nb.point
        if nb.level is None:
            return [x.element]
        pts = self.dual_points(nb.level)
        out = []
        for a in self.elements(depth):
            if all(self.evaluate(p, a) == x(p) for p in pts) and all(
                    w.agrees(x, a) for w in nb.witnesses):
                out.append(a)
        return out

    def neighborhood_family(self, x: ProElement, k: int, use_witnesses: bool) -> list:
        ws = self.applicable_witnesses(x) if use_witnesses else ()
        return [self.neighborhood_members(Neighborhood(x, k, ws), k + self.margin)]


class FiniteSite(Site):
    """A finite algebra with an alter ego; windows are exact over the δ-basis."""

    exact = True

    def __init__(self, A: FiniteAlgebra, ego: AlterEgo, name: str = ""):
        self.algebra = A
        self.ego = ego
        self.name = name
        self.signature = A.signature
        self.dual = dual_of(A, ego)
        self._evals = self.dual.evaluation_table()
        self._basis = None

    def elements(self, depth: int = 0) -> list:
        return list(range(self.algebra.size))

    def element_label(self, a) -> str:
        return self.algebra.labels[a]

    def dual_points(self, level: int = 0) -> list:
        return list(range(self.dual.size))

    def max_level(self) -> int:
        return 0

    def point_label(self, phi) -> str:
        return phi_label(phi)

    def evaluate(self, phi, a) -> int:
        return self.dual.homs[phi].mapping[a]

    def op(self, name: str, *args):
        return self.algebra.op(name, *args)

    def sample_points(self) -> list:
        return [self.embed(a) for a in range(self.algebra.size)]

    def decode(self, values: tuple):
        """The element whose evaluation on the whole dual is ``values``, or None."""
        for a, e in enumerate(self._evals):
            if e == tuple(values):
                return a
        return None

    def identity_point(self) -> int:
        ident = tuple(range(self.algebra.size))
        for i, h in enumerate(self.dual.homs):
            if h.mapping == ident:
                return i
        raise ValueError("the identity is not a dual point of this algebra")

    @property
    def basis(self):
        if self._basis is None:
            self._basis = delta_basis(self.algebra, self.ego)
        return self._basis

    def neighborhood_family(self, x: ProElement, k: int = 0, use_witnesses: bool = True) -> list:
        B = self.basis
        N = B.extension
        target = tuple(x(p) for p in range(self.dual.size))
        idx = N.points.index(target)
        out = []
        for f, opens in B.entries:
            if idx in opens:
                out.append([a for a in range(self.algebra.size) if N.embedding[a] in opens])
        return out


@dataclass(frozen=True, eq=False)
class MapBetweenAlgebras:
    source: Site
    target: Site
    fn: Callable
    name: str = "u"

    def __call__(self, a):
        return self.fn(a)

    def trace(self, a, F) -> tuple:
        b = self.fn(a)
        return tuple(self.target.evaluate(phi, b) for phi in F)


def table_map(source: FiniteSite, target: FiniteSite, table, name: str = "u") -> MapBetweenAlgebras:
    table = tuple(int(v) for v in table)
    if len(table) != source.algebra.size or any(not 0 <= v < target.algebra.size for v in table):
        raise ValueError("map table does not fit the carriers")
    return MapBetweenAlgebras(source, target, table.__getitem__, name)


def compose(v: MapBetweenAlgebras, u: MapBetweenAlgebras) -> MapBetweenAlgebras:
    return MapBetweenAlgebras(u.source, v.target, lambda a: v(u(a)), f"{v.name}∘{u.name}")


# -- windows ----------------------------------------------------------------

def _sorted(values) -> tuple:
    return tuple(sorted(values))


@dataclass
class WindowResult:
    map: str
    point: str
    window: tuple               # dual point labels of F
    depth: int
    values: tuple               # sorted tuples in M^F
    stabilized: bool
    history: tuple = ()
    witnesses: tuple = ()
    empty_at_depth: bool = False

    def to_dict(self) -> dict:
        return {"map": self.map, "point": self.point, "window": list(self.window),
                "depth": self.depth, "values": [list(v) for v in self.values],
                "stabilized": self.stabilized, "witnesses": list(self.witnesses)}


def window_image(u: MapBetweenAlgebras, V, F, depth: int | None = None) -> frozenset:
    """u(V, F): traces on F of u(a) for the algebra points a of V.

    ``V`` is a ``Neighborhood``, an explicit list of algebra elements, or, on a
    finite source, a partial morphism of the δ-basis.
    """
    site = u.source
    if isinstance(V, Neighborhood):
        d = site.default_depth if depth is None else depth
        members = site.neighborhood_members(V, d)
    elif hasattr(V, "domain") and hasattr(V, "mapping"):
        N = site.basis.extension
        members = [a for a in site.elements(0)
                   if all(N.points[N.embedding[a]][p] == v for p, v in zip(V.domain, V.mapping))]
    else:
        members = list(V)
    if not members:
        raise EmptyAtDepth(f"empty at depth {depth}")
    return frozenset(u.trace(a, F) for a in members)


def point_window(u: MapBetweenAlgebras, x: ProElement, F, depth: int | None = None,
                 use_witnesses: bool = True, patience: int = 3) -> WindowResult:
    """u(x, F), computed exactly on finite sources and by truncation otherwise."""
    site = u.source
    F = tuple(F)
    labels = tuple(u.target.point_label(p) for p in F)
    if site.exact:
        values = None
        for members in site.neighborhood_family(x, 0, use_witnesses):
            img = frozenset(u.trace(a, F) for a in members)
            values = img if values is None else values & img
        values = _sorted(values)
        return WindowResult(u.name, x.label, labels, 0, values, True, (values,), ("δ-basis",))
    if x.is_algebra_point:
        values = (u.trace(x.element, F),)
        return WindowResult(u.name, x.label, labels, 0, values, True, (values,), ("isolation",))
    d = site.default_depth if depth is None else depth
    ws = site.applicable_witnesses(x) if use_witnesses else ()
    history = []
    for k in range(d + 1):
        members = site.neighborhood_members(Neighborhood(x, k, ws), k + site.margin)
        history.append(_sorted({u.trace(a, F) for a in members}))
    last = history[-1]
    empty = not last
    stable = (not empty and len(history) > patience
              and all(h == last for h in history[-patience - 1:]))
    return WindowResult(u.name, x.label, labels, d, last, stable, tuple(history),
                        tuple(w.name for w in ws), empty)


def tilde_u(u: MapBetweenAlgebras, x: ProElement, F, depth: int | None = None,
            use_witnesses: bool = True) -> WindowResult:
    """The trace of ũ(x) on F, which equals the window u(x, F)."""
    return point_window(u, x, F, depth, use_witnesses)


def restrict(values, F, G) -> frozenset:
    """Project tuples indexed by F onto the sub-list G of F."""
    pos = [list(F).index(g) for g in G]
    return frozenset(tuple(v[i] for i in pos) for v in values)


def default_windows(site: Site, level: int = 1) -> list:
    pts = site.dual_points(level)
    out = [(p,) for p in pts]
    if len(pts) > 1:
        out.append(tuple(pts))
    return out


# -- smoothness and strongness ---------------------------------------------

@dataclass
class Verdict:
    holds: bool
    kind: str                      # "smooth" / "strong"
    depth: int
    checked: int
    witness: dict | None = None

    def describe(self) -> str:
        if self.holds:
            return f"{self.kind.upper()}-evidence: no violation in {self.checked} windows up to depth {self.depth}"
        w = self.witness
        vals = "{" + ",".join(_fmt(v) for v in w["values"]) + "}"
        return (f"NOT {self.kind.upper()}; witness: {w['point']}, window "
                f"{{{','.join(w['window'])}}}, values {vals}")


def _fmt(v: tuple) -> str:
    return str(v[0]) if len(v) == 1 else "(" + ",".join(str(c) for c in v) + ")"


def check_smooth(u: MapBetweenAlgebras, points=None, windows=None, depth: int | None = None,
                 use_witnesses: bool = True) -> Verdict:
    """Not smooth as soon as one window holds two values; that certificate is exact."""
    points = u.source.sample_points() if points is None else points
    windows = default_windows(u.target) if windows is None else windows
    d = u.source.default_depth if depth is None else depth
    checked = 0
    for x in points:
        for F in windows:
            w = point_window(u, x, F, d, use_witnesses)
            checked += 1
            if len(w.values) >= 2:
                return Verdict(False, "smooth", d, checked,
                               {"point": x.label, "window": w.window, "values": w.values,
                                "stabilized": w.stabilized})
    return Verdict(True, "smooth", d, checked)


def check_strong(u: MapBetweenAlgebras, points=None, windows=None, depth: int | None = None) -> Verdict:
    """Look for x and F such that every ι-neighbourhood of x meets an algebra point
    whose trace on F leaves the window ũ(x)|F.

    The ι-neighbourhood at level k is agreement with x on the dual points of
    level ≤ k; a witness must succeed at every k up to the depth.
    """
    site = u.source
    points = site.sample_points() if points is None else points
    windows = default_windows(u.target) if windows is None else windows
    d = site.default_depth if depth is None else depth
    checked = 0
    for x in points:
        for F in windows:
            checked += 1
            allowed = set(point_window(u, x, F, d).values)
            escapes = []
            for k in range(d + 1):
                hit = None
                for a in site.neighborhood_members(Neighborhood(x, k), k + site.margin):
                    t = u.trace(a, F)
                    if t not in allowed:
                        hit = (k, site.element_label(a), t)
                        break
                if hit is None:
                    break
                escapes.append(hit)
            else:
                return Verdict(False, "strong", d, checked,
                               {"point": x.label,
                                "window": tuple(u.target.point_label(p) for p in F),
                                "values": tuple(sorted(allowed)), "escapes": escapes})
    return Verdict(True, "strong", d, checked)


def hom_violation(u: MapBetweenAlgebras, depth: int | None = None):
    """First operation that u fails to preserve, as (op, args), or None."""
    site, target = u.source, u.target
    if isinstance(site, FiniteSite) and isinstance(target, FiniteSite):
        table = tuple(u(a) for a in range(site.algebra.size))
        if is_homomorphism(site.algebra, target.algebra, table):
            return None
    d = site.default_depth if depth is None else depth
    elems = site.elements(d)
    for name, k in site.signature.ops:
        for args in itertools.product(elems, repeat=k):
            lhs = u(site.op(name, *args))
            rhs = target.op(name, *(u(a) for a in args))
            if lhs != rhs:
                return name, tuple(site.element_label(a) for a in args)
    return None


def is_hom_map(u: MapBetweenAlgebras, depth: int | None = None) -> bool:
    return hom_violation(u, depth) is None


# -- hyperspace lifts and composition ----------------------------------------

def gamma_lift(algebra: FiniteAlgebra, op: str, args) -> frozenset:
    """g(S1, ..., Sn) = f(S1 × ... × Sn) on subsets of a finite algebra."""
    k = algebra.signature.arity(op)
    if len(args) != k:
        raise ValueError(f"{op!r} takes {k} arguments, got {len(args)}")
    return frozenset(algebra.op(op, *t) for t in itertools.product(*args))


def lift_bar_u(u: MapBetweenAlgebras, K, F, depth: int | None = None) -> frozenset:
    """Union of the windows ũ(x)|F over x in K; refuses maps with a strongness violation."""
    K = list(K)
    verdict = check_strong(u, K, [tuple(F)], depth)
    if not verdict.holds:
        raise NotStrong(verdict.describe())
    out = set()
    for x in K:
        out |= set(point_window(u, x, F, depth).values)
    return frozenset(out)


@dataclass
class CompositionReport:
    relation: str        # "=" or "⊆"
    verified: bool
    lhs: tuple           # window of (v∘u)~ at x
    rhs: tuple           # ṽ applied to ũ(x)


def check_composition(u: MapBetweenAlgebras, v: MapBetweenAlgebras, x: ProElement, F,
                      depth: int | None = None) -> CompositionReport:
    """Compare the window of (v∘u)~ at x with ṽ(ũ(x)) on F; B must be finite."""
    B = u.target
    if not isinstance(B, FiniteSite):
        raise ValueError("composition checks need a finite middle algebra")
    vu = compose(v, u)
    lhs = set(point_window(vu, x, F, depth).values)
    full = tuple(B.dual_points())
    rhs = set()
    for y in point_window(u, x, full, depth).values:
        b = B.decode(y)
        if b is None:
            raise ValueError(f"window value {y} is not an algebra point of the target")
        rhs |= set(point_window(v, B.embed(b), F, depth).values)
    if is_hom_map(v):
        relation, ok = "=", lhs == rhs
    else:
        relation, ok = "⊆", lhs <= rhs
    return CompositionReport(relation, ok, _sorted(lhs), _sorted(rhs))


def localize(u: MapBetweenAlgebras, phi, target: FiniteSite | None = None) -> MapBetweenAlgebras:
    """u_φ = φ∘u as a map into M."""
    ego = u.target.ego
    M = target or FiniteSite(ego.algebra, ego, "M")
    return MapBetweenAlgebras(u.source, M, lambda a: u.target.evaluate(phi, u(a)),
                              f"{u.target.point_label(phi)}∘{u.name}")


# -- total orders and lower/upper extensions -----------------------------------

@dataclass(frozen=True)
class TotalOrder:
    perm: tuple                   # carrier elements from least to greatest
    algebraic: bool = False

    @classmethod
    def on(cls, M: FiniteAlgebra, perm=None) -> "TotalOrder":
        perm = tuple(range(M.size)) if perm is None else tuple(int(p) for p in perm)
        if sorted(perm) != list(range(M.size)):
            raise ValueError(f"{perm} is not a permutation of the carrier")
        rank = {m: i for i, m in enumerate(perm)}
        leq = {(a, b) for a in range(M.size) for b in range(M.size) if rank[a] <= rank[b]}
        algebraic = True
        for name, k in M.signature.ops:
            t = M.tables[name]
            if k == 0:
                continue
            for pairs in itertools.product(sorted(leq), repeat=k):
                left = int(t[tuple(p[0] for p in pairs)])
                right = int(t[tuple(p[1] for p in pairs)])
                if (left, right) not in leq:
                    algebraic = False
                    break
            if not algebraic:
                break
        return cls(perm, algebraic)

    def rank(self, m: int) -> int:
        return self.perm.index(m)

    def le(self, a: int, b: int) -> bool:
        return self.rank(a) <= self.rank(b)

    def meet(self, values) -> int:
        return min(values, key=self.rank)

    def join(self, values) -> int:
        return max(values, key=self.rank)


@dataclass
class UpperLower:
    lower: tuple
    upper: tuple
    window: tuple
    matches_window: bool     # lower/upper equal the pointwise meet/join of ũ(x)|F
    sandwich: bool           # lower ≤ s ≤ upper for every s in the window
    stabilized: bool


def upper_lower(u: MapBetweenAlgebras, x: ProElement, F, depth: int | None = None,
                order: TotalOrder | None = None) -> UpperLower:
    ego = u.target.ego
    order = order or TotalOrder.on(ego.algebra)
    M = FiniteSite(ego.algebra, ego, "M")
    ident = (M.identity_point(),)
    lower, upper, stable = [], [], True
    for phi in F:
        w = point_window(localize(u, phi, M), x, ident, depth)
        stable &= w.stabilized
        vals = [v[0] for v in w.values]
        lower.append(order.meet(vals))
        upper.append(order.join(vals))
    w = point_window(u, x, F, depth)
    stable &= w.stabilized
    cols = list(zip(*w.values)) if w.values else [()] * len(F)
    meet = tuple(order.meet(c) for c in cols)
    join = tuple(order.join(c) for c in cols)
    sandwich = all(order.le(lo, s) and order.le(s, hi)
                   for v in w.values for lo, s, hi in zip(lower, v, upper))
    return UpperLower(tuple(lower), tuple(upper), w.values,
                      meet == tuple(lower) and join == tuple(upper), sandwich, stable)


def check_local_lattice(site: Site, order: TotalOrder | None = None, level: int = 3,
                        depth: int = 3) -> tuple:
    """Is the pointwise meet and join of two evaluations again an evaluation on each window?

    Finite sites are checked over every subset F of the dual, smallest first,
    so a certificate names a minimal window.
    """
    order = order or TotalOrder.on(site.ego.algebra)
    elems = site.elements(depth)
    pts = site.dual_points(level)
    evals = {a: tuple(site.evaluate(p, a) for p in pts) for a in elems}
    if site.exact:
        windows = [F for r in range(1, len(pts) + 1) for F in itertools.combinations(range(len(pts)), r)]
    else:
        windows = [tuple(range(len(pts)))]
    for F in windows:
        traces = {tuple(e[i] for i in F) for e in evals.values()}
        for b, c in itertools.combinations_with_replacement(elems, 2):
            for kind, pick in (("meet", order.meet), ("join", order.join)):
                t = tuple(pick((evals[b][i], evals[c][i])) for i in F)
                if t not in traces:
                    return False, {"kind": kind, "pair": (site.element_label(b), site.element_label(c)),
                                   "window": tuple(site.point_label(pts[i]) for i in F),
                                   "value": t}
    return True, None


def pointwise_leq(site: Site, p, q, order: TotalOrder, depth: int = 4) -> bool:
    return all(order.le(site.evaluate(p, a), site.evaluate(q, a)) for a in site.elements(depth))


def check_a_plus_membership(site: Site, x: ProElement, order: TotalOrder | None = None,
                            level: int = 3, depth: int = 4, pairs=None) -> tuple:
    """Is x order-preserving on comparable pairs of dual points?"""
    order = order or TotalOrder.on(site.ego.algebra)
    if pairs is None:
        pts = site.dual_points(level)
        pairs = [(p, q) for p in pts for q in pts if pointwise_leq(site, p, q, order, depth)]
    for p, q in pairs:
        if not order.le(x(p), x(q)):
            return False, (site.point_label(p), site.point_label(q))
    return True, None


def verify_witness(structure, ego: AlterEgo, w: Witness, x: ProElement, level: int) -> bool:
    """On the level-n slice of a symbolic dual: dom(f) holds the constants and is
    closed under the unary operations, and f = x|dom preserves the structure."""
    pts = [p for p in structure.points(level) if w.contains(x, p)]
    dom = set(pts)
    sig = structure.signature
    E = ego.structure
    for c in sig.constants:
        p = structure.constant(c)
        if p not in dom or x(p) != E.constants[c]:
            return False
    for name, k in sig.operations:
        if k != 1:
            continue
        for p in pts:
            q = structure.apply(name, (p,))
            if q not in dom or x(q) != int(E.operations[name][x(p)]):
                return False
    for name, k in sig.relations:
        for t in itertools.product(pts, repeat=k):
            if structure.holds(name, t) and tuple(x(p) for p in t) not in E.relations[name]:
                return False
    return True


# -- refusing continuous selections --------------------------------------------

def no_continuous_selection_demo(u: MapBetweenAlgebras, x: ProElement, F,
                                 depth: int | None = None) -> dict:
    """For every single value one might pick at x, name an algebra point of the
    neighbourhood that forces a different value on some φ in F."""
    F = tuple(F)
    w = point_window(u, x, F, depth)
    if len(w.values) < 2:
        raise ValueError(f"{u.name} has a one-element window at {x.label}; nothing to refute")
    site = u.source
    d = w.depth
    ws = site.applicable_witnesses(x)
    members = (site.neighborhood_family(x, d, True)[0] if site.exact else
               site.neighborhood_members(Neighborhood(x, d, ws), d + site.margin))
    refutations = []
    for choice in w.values:
        for other in w.values:
            if other == choice:
                continue
            i = next(i for i in range(len(F)) if other[i] != choice[i])
            a = next(a for a in members if u.trace(a, F)[i] == other[i])
            refutations.append({"choice": choice, "phi": u.target.point_label(F[i]),
                                "forced": other[i], "algebra_point": site.element_label(a)})
            break
    return {"map": u.name, "point": x.label, "window": w.window, "values": w.values,
            "depth": d, "refutations": refutations}


# -- minimality among Γ-extensions ---------------------------------------------

def gamma_extension_minimality(u: MapBetweenAlgebras, guard: int = 100_000) -> dict:
    """Enumerate every (δ, σ↓)-continuous Γ-extension u' on a finite instance
    and check ũ(x) ⊆ u'(x) at every point."""
    A, B = u.source, u.target
    if not (isinstance(A, FiniteSite) and isinstance(B, FiniteSite)):
        raise ValueError("exhaustive Γ-extension search needs finite algebras")
    pts = A.sample_points()
    full = tuple(B.dual_points())
    nonempty = [frozenset(s) for r in range(1, B.algebra.size + 1)
                for s in itertools.combinations(range(B.algebra.size), r)]
    options = []
    for x in pts:
        if x.is_algebra_point:
            options.append([frozenset([u(x.element)])])
        else:
            options.append(nonempty)
    total = 1
    for o in options:
        total *= len(o)
    if total > guard:
        from .algebra import GuardExceeded
        raise GuardExceeded(f"{total} candidate Γ-extensions exceed the guard {guard}")
    opens = set()
    N = A.basis.extension
    point_index = [N.points.index(tuple(x(p) for p in A.dual_points())) for x in pts]
    for _, o in A.basis.entries:
        opens.add(frozenset(i for i, idx in enumerate(point_index) if idx in o))
    tilde = [{B.decode(v) for v in point_window(u, x, full).values} for x in pts]
    candidates = 0
    for choice in itertools.product(*options):
        continuous = True
        for r in range(0, B.algebra.size + 1):
            for U in itertools.combinations(range(B.algebra.size), r):
                # the preimage of □U must be a union of basic opens
                pre = frozenset(i for i, s in enumerate(choice) if s <= set(U))
                if not all(any(i in o and o <= pre for o in opens) for i in pre):
                    continuous = False
                    break
            if not continuous:
                break
        if not continuous:
            continue
        candidates += 1
        if not all(tilde[i] <= set(choice[i]) for i in range(len(pts))):
            return {"holds": False, "candidates": candidates, "counterexample": choice}
    return {"holds": True, "candidates": candidates}
