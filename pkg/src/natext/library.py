"""Standard algebras and alter egos: the median algebra 2 and bounded distributive lattices."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .algebra import FiniteAlgebra, Signature, induced_subalgebra, power
from .duality import AlterEgo
from .structure import FiniteStructure, StructureSignature

MEDIAN = Signature.of(median=3)
BDL = Signature.of(meet=2, join=2, bot=0, top=0)

MEDIAN_EGO_SIGNATURE = StructureSignature(relations=(("≤", 2),), operations=(("•", 1),),
                                          constants=("0", "1"))
ORDER_SIGNATURE = StructureSignature(relations=(("≤", 2),))

_LEQ = [(0, 0), (0, 1), (1, 1)]


def majority_table() -> np.ndarray:
    t = np.zeros((2, 2, 2), dtype=np.int64)
    for x, y, z in itertools.product((0, 1), repeat=3):
        t[x, y, z] = int(x + y + z >= 2)
    return t


def median2() -> FiniteAlgebra:
    return FiniteAlgebra(MEDIAN, 2, {"median": majority_table()})


def median_ego(with_bullet: bool = True) -> AlterEgo:
    """⟨{0,1}, 0, 1, ≤, •⟩ with • the negation; ``with_bullet=False`` drops •."""
    if with_bullet:
        sig = MEDIAN_EGO_SIGNATURE
        ops = {"•": [1, 0]}
    else:
        sig = StructureSignature(relations=(("≤", 2),), constants=("0", "1"))
        ops = {}
    X = FiniteStructure(sig, 2, {"≤": _LEQ}, ops, constants={"0": 0, "1": 1})
    return AlterEgo(median2(), X, "median" if with_bullet else "median-without-bullet")


def median_power(k: int) -> FiniteAlgebra:
    return power(median2(), k)


def is_median_algebra(A: FiniteAlgebra) -> bool:
    """Majority law, symmetry and the distributive law of median algebras."""
    m = A.tables["median"]
    n = A.size
    for x, y in itertools.product(range(n), repeat=2):
        if m[x, x, y] != x:
            return False
    for x, y, z in itertools.product(range(n), repeat=3):
        v = m[x, y, z]
        if not (v == m[y, x, z] == m[x, z, y]):
            return False
    for x, y, z, u, w in itertools.product(range(n), repeat=5):
        if m[m[x, y, z], u, w] != m[x, m[y, u, w], m[z, u, w]]:
            return False
    return True


def median_subalgebras(k: int) -> list:
    """Every nonempty subalgebra of the median algebra 2^k, as (algebra, inclusion) pairs."""
    P = median_power(k)
    m = P.tables["median"]
    out = []
    for mask in range(1, 1 << P.size):
        S = [i for i in range(P.size) if mask >> i & 1]
        if all(m[x, y, z] in S for x in S for y in S for z in S):
            out.append(induced_subalgebra(P, S))
    return out


# -- bounded distributive lattices -------------------------------------------

def dl2() -> FiniteAlgebra:
    return chain(2)


def dl_ego() -> AlterEgo:
    """The two-element order ⟨{0,1}, ≤⟩, which dualizes bounded distributive lattices."""
    X = FiniteStructure(ORDER_SIGNATURE, 2, {"≤": _LEQ})
    return AlterEgo(dl2(), X, "bounded-dl")


def chain(n: int) -> FiniteAlgebra:
    if n < 1:
        raise ValueError("a bounded lattice has at least one element")
    idx = np.arange(n)
    return FiniteAlgebra(BDL, n, {
        "meet": np.minimum.outer(idx, idx), "join": np.maximum.outer(idx, idx),
        "bot": 0, "top": n - 1}, [str(i) for i in range(n)])


def boolean_lattice(k: int) -> FiniteAlgebra:
    return power(dl2(), k)


def downset_lattice(order: set, n: int) -> FiniteAlgebra:
    """Lattice of down-sets of the poset ``(range(n), order)`` under ∩ and ∪."""
    downs = []
    for mask in range(1 << n):
        members = {i for i in range(n) if mask >> i & 1}
        if all(a in members for (a, b) in order if b in members):
            downs.append(frozenset(members))
    downs.sort(key=lambda s: (len(s), sorted(s)))
    pos = {d: i for i, d in enumerate(downs)}
    size = len(downs)
    meet = np.array([[pos[a & b] for b in downs] for a in downs], dtype=np.int64)
    join = np.array([[pos[a | b] for b in downs] for a in downs], dtype=np.int64)
    labels = ["{" + ",".join(str(i) for i in sorted(d)) + "}" for d in downs]
    return FiniteAlgebra(BDL, size, {"meet": meet, "join": join, "bot": 0,
                                     "top": pos[frozenset(range(n))]}, labels)


def _posets(n: int):
    # Every finite poset has a linear extension, so a < b only for a < b as integers.
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for bits in range(1 << len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if bits >> i & 1}
        if any((a, c) not in rel for (a, b) in rel for (b2, c) in rel if b == b2 and a != c):
            continue
        yield rel


@lru_cache(maxsize=None)
def bounded_dls(max_size: int = 6) -> tuple:
    """All bounded distributive lattices with at most ``max_size`` elements, up to isomorphism.

    Built as down-set lattices of finite posets; a lattice with m elements has
    at most m - 1 join-irreducibles, so posets up to that size suffice.
    """
    from .iso import canonical_form

    seen = {}
    for n in range(0, max_size):
        for rel in _posets(n):
            L = downset_lattice(rel, n)
            if L.size > max_size:
                continue
            key = canonical_form(L)
            seen.setdefault(key, L)
    return tuple(sorted(seen.values(), key=lambda L: (L.size, canonical_form(L))))


def is_bounded_dl(L: FiniteAlgebra) -> bool:
    meet, join = L.tables["meet"], L.tables["join"]
    bot, top = int(L.tables["bot"]), int(L.tables["top"])
    r = range(L.size)
    for x, y in itertools.product(r, repeat=2):
        if meet[x, y] != meet[y, x] or join[x, y] != join[y, x]:
            return False
        if meet[x, join[x, y]] != x or join[x, meet[x, y]] != x:
            return False
    for x, y, z in itertools.product(r, repeat=3):
        if meet[x, join[y, z]] != join[meet[x, y], meet[x, z]]:
            return False
        if meet[meet[x, y], z] != meet[x, meet[y, z]] or join[join[x, y], z] != join[x, join[y, z]]:
            return False
    return all(meet[bot, x] == bot and join[top, x] == top for x in r)
