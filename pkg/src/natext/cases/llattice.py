"""The bounded lattice L of finite subsets of ω together with ω itself.

Finite subsets are bitmask integers and ω is ``OMEGA = -1``.  The dual has
the points φ_n(X) = [n ∈ X] and ∞(X) = [X = ω]; as homomorphisms ∞ ≤ φ_n and
the φ_n form an antichain.  A point of L^δ with x(∞) = 0 is an arbitrary
subset S of ω (x(φ_n) = [n ∈ S]); the only other point is the top, e(ω).
Infinite subsets are given as eventually periodic sets.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass


from ..duality import phi_label
from ..extension import (FiniteSite, MapBetweenAlgebras, Neighborhood, ProElement, Site,
                         Witness)
from ..library import BDL, ORDER_SIGNATURE, boolean_lattice, dl2, dl_ego
from ..structure import SymbolicStructure

OMEGA = -1
INF = "∞"


@dataclass(frozen=True)
class EPSet:
    """An eventually periodic subset of ω: membership of n is ``prefix[n]`` for
    n < len(prefix), then ``cycle`` repeats."""

    prefix: tuple = ()
    cycle: tuple = (False,)
    name: str = ""

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("the periodic part must be nonempty")
        object.__setattr__(self, "prefix", tuple(bool(b) for b in self.prefix))
        object.__setattr__(self, "cycle", tuple(bool(b) for b in self.cycle))

    def __contains__(self, n: int) -> bool:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def __eq__(self, other):
        if not isinstance(other, EPSet):
            return NotImplemented
        span = max(len(self.prefix), len(other.prefix)) + len(self.cycle) * len(other.cycle)
        return all((n in self) == (n in other) for n in range(span))

    def __hash__(self):
        # equal sets share their first entries; the cycle length is not canonical
        return hash(tuple(n in self for n in range(64)))

    @property
    def is_infinite(self) -> bool:
        return any(self.cycle)

    @property
    def is_coinfinite(self) -> bool:
        return not all(self.cycle)

    def below(self, k: int) -> int:
        """Bitmask of the members ≤ k."""
        return sum(1 << n for n in range(k + 1) if n in self)

    def as_finite(self) -> int:
        if self.is_infinite:
            raise ValueError(f"{self} is infinite")
        return self.below(len(self.prefix))

    def complement(self) -> "EPSet":
        return EPSet(tuple(not b for b in self.prefix), tuple(not b for b in self.cycle))

    @classmethod
    def evens(cls) -> "EPSet":
        return cls((), (True, False), "evens")

    @classmethod
    def odds(cls) -> "EPSet":
        return cls((), (False, True), "odds")

    @classmethod
    def finite(cls, members) -> "EPSet":
        members = set(members)
        top = max(members, default=-1)
        return cls(tuple(n in members for n in range(top + 1)), (False,))

    @classmethod
    def cofinite(cls, missing) -> "EPSet":
        return cls.finite(missing).complement()

    @classmethod
    def parse(cls, text: str) -> "EPSet":
        """``evens``, ``odds``, ``all``, ``none``, or bits ``prefix(cycle)`` such as ``1(01)``."""
        named = {"evens": cls.evens(), "odds": cls.odds(), "all": cls((), (True,), "all"),
                 "none": cls((), (False,), "none")}
        if text in named:
            return named[text]
        m = re.fullmatch(r"([01]*)\(([01]+)\)", text)
        if not m:
            raise ValueError(f"not an eventually periodic set: {text!r}")
        return cls(tuple(c == "1" for c in m.group(1)), tuple(c == "1" for c in m.group(2)), text)

    def __str__(self):
        if self.name:
            return self.name
        bits = lambda t: "".join("1" if b else "0" for b in t)
        return f"{bits(self.prefix)}({bits(self.cycle)})"


# -- the lattice ---------------------------------------------------------------

def meet(x: int, y: int) -> int:
    if x == OMEGA:
        return y
    if y == OMEGA:
        return x
    return x & y


def join(x: int, y: int) -> int:
    if OMEGA in (x, y):
        return OMEGA
    return x | y


def members(x: int) -> list:
    return [n for n in range(x.bit_length()) if x >> n & 1]


def element_label(x: int) -> str:
    if x == OMEGA:
        return "ω"
    return "{" + ",".join(str(n) for n in members(x)) + "}"


def element_depth(x: int) -> int:
    return 0 if x in (OMEGA, 0) else x.bit_length() - 1


def evaluate(p, x: int) -> int:
    if x == OMEGA:
        return 1
    if p == INF:
        return 0
    return x >> p[1] & 1


def parity(x: int) -> int:
    return 1 if x == OMEGA else bin(x).count("1") % 2


class LDual(SymbolicStructure):
    signature = ORDER_SIGNATURE

    def points(self, level: int) -> list:
        return [INF] + [("φ", n) for n in range(level + 1)]

    def level(self, p) -> int:
        return 0 if p == INF else p[1]

    def contains(self, p) -> bool:
        return p == INF or (isinstance(p, tuple) and len(p) == 2 and p[0] == "φ"
                            and isinstance(p[1], int) and p[1] >= 0)

    def holds(self, relation: str, tup) -> bool:
        if relation != "≤":
            raise KeyError(relation)
        p, q = tup
        return p == q or p == INF

    def apply(self, operation, tup):
        raise KeyError(operation)

    def partial_apply(self, operation, tup):
        raise KeyError(operation)

    def constant(self, name):
        raise KeyError(name)

    def label(self, p) -> str:
        return INF if p == INF else phi_label(p[1])


def subset_point(S: EPSet) -> ProElement:
    """The point of L^δ with x(∞) = 0 and x(φ_n) = [n ∈ S]; e(X) when S is finite."""
    if not S.is_infinite:
        X = S.as_finite()
        return ProElement(("e", X), f"e({element_label(X)})",
                          lambda p, X=X: evaluate(p, X), X)
    return ProElement(("set", S), str(S), lambda p, S=S: 0 if p == INF else int(p[1] in S))


def _support(x: ProElement):
    return x.key[1] if x.key[0] == "set" else None


def _co_support_contains(x, p) -> bool:
    return p == INF or x(p) == 0


def _co_support_agrees(x, a) -> bool:
    S = _support(x)
    return a != OMEGA and all(n in S for n in members(a))


# f ≡ 0 on {∞} ∪ (ω \ S); continuous because ∞ is the only accumulation point
CO_SUPPORT_WITNESS = Witness("co-support", lambda x: _support(x) is not None,
                             _co_support_contains, _co_support_agrees)


class LSite(Site):
    margin = 3
    default_depth = 12
    name = "L"
    signature = BDL

    def __init__(self, witnesses: bool = True):
        self.dual = LDual()
        self.ego = dl_ego()
        self.witnesses = (CO_SUPPORT_WITNESS,) if witnesses else ()

    def elements(self, depth: int) -> list:
        return list(range(1 << (depth + 1))) + [OMEGA]

    def element_depth(self, a) -> int:
        return element_depth(a)

    def element_label(self, a) -> str:
        return element_label(a)

    def dual_points(self, level: int) -> list:
        return self.dual.points(level)

    def point_label(self, p) -> str:
        return self.dual.label(p)

    def evaluate(self, p, a) -> int:
        return evaluate(p, a)

    def op(self, name: str, *args):
        if name == "meet":
            return meet(*args)
        if name == "join":
            return join(*args)
        return {"bot": 0, "top": OMEGA}[name]

    def sample_points(self) -> list:
        return [subset_point(EPSet.evens()), subset_point(EPSet.odds()),
                subset_point(EPSet.parse("(001)")), subset_point(EPSet.cofinite({0, 3})),
                self.embed(OMEGA), self.embed(0), self.embed(0b101), self.embed(0b1000)]

    def neighborhood_members(self, nb: Neighborhood, depth: int) -> list:
        x = nb.point
        if nb.level is None:
            return [x.element]
        k = nb.level
        if x(INF) == 1:
            return [OMEGA] if all(x(p) == 1 for p in self.dual_points(k)) else []
        base = sum(1 << n for n in range(k + 1) if x(("φ", n)))
        free = list(range(k + 1, depth + 1))
        out = []
        for r in range(len(free) + 1):
            for extra in itertools.combinations(free, r):
                a = base | sum(1 << n for n in extra)
                if all(w.agrees(x, a) for w in nb.witnesses):
                    out.append(a)
        return sorted(out)


def realize(values: dict):
    """The point of L^δ with the given values on finitely many dual points, or None.

    Any order-preserving assignment extends: to the top when ∞ ↦ 1, otherwise
    to the finite set it names.
    """
    if values.get(INF, 0) == 1:
        return LSite().embed(OMEGA) if all(v == 1 for v in values.values()) else None
    return subset_point(EPSet.finite(p[1] for p, v in values.items() if p != INF and v))


def lattice_laws(depth: int = 3) -> bool:
    """Bounded distributive lattice laws on every triple of elements up to ``depth``."""
    elems = LSite().elements(depth)
    for x, y, z in itertools.product(elems, repeat=3):
        if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)):
            return False
        if meet(x, join(x, y)) != x or join(x, meet(x, y)) != x:
            return False
        if join(x, OMEGA) != OMEGA or meet(x, 0) != 0:
            return False
    return True


# -- the example maps ------------------------------------------------------------

def two_site() -> FiniteSite:
    return FiniteSite(dl2(), dl_ego(), "2")


def four_site() -> FiniteSite:
    # dual points in lexicographic order: φ₀ is the first projection
    return FiniteSite(boolean_lattice(2), dl_ego(), "2²")


def parity_map(site: LSite | None = None) -> MapBetweenAlgebras:
    return MapBetweenAlgebras(site or LSite(), two_site(), parity, "parity")


def pair_parity_map(site: LSite | None = None) -> MapBetweenAlgebras:
    def fn(x):
        if x == OMEGA:
            return 3
        p = parity(x)
        return 2 * p + (1 - p)
    return MapBetweenAlgebras(site or LSite(), four_site(), fn, "pair-parity")


def u_subset_map(A: EPSet, site: LSite | None = None) -> MapBetweenAlgebras:
    """u_A(X) = 0 iff X ⊆ A."""
    def fn(x):
        if x == OMEGA:
            return 0 if A == EPSet.parse("all") else 1
        return 0 if all(n in A for n in members(x)) else 1
    return MapBetweenAlgebras(site or LSite(), two_site(), fn, f"u_{A}")


def negated_point_map(n: int = 0, site: LSite | None = None) -> MapBetweenAlgebras:
    return MapBetweenAlgebras(site or LSite(), two_site(),
                              lambda x: 1 - evaluate(("φ", n), x), f"¬∘{phi_label(n)}")


def l_case_functions() -> dict:
    """Each example map with the verdicts it is expected to reproduce."""
    return {
        "l-parity": (parity_map(), {"smooth": False, "witness": "evens", "window": ("φ₀",),
                                    "values": ((0,), (1,)), "lower": (0,), "upper": (1,)}),
        "l-pair-parity": (pair_parity_map(), {"smooth": False, "values": ((0, 1), (1, 0)),
                                              "lower": (0, 0), "upper": (1, 1)}),
        "l-u-evens": (u_subset_map(EPSet.evens()), {"smooth": True, "strong": False}),
        "l-neg-phi0": (negated_point_map(0), {"smooth": True, "hom": False}),
    }
