"""Finite instances: Boolean powers of the median algebra 2, the two topologies on
natural extensions of bounded distributive lattices, and the median cover formula."""

from __future__ import annotations

import itertools

import numpy as np

from ..algebra import FiniteAlgebra
from ..duality import (check_duality, check_median_cover_formula, delta_basis,
                       natural_extension)
from ..library import BDL, dl_ego, is_bounded_dl, median2, median_ego, median_power


def _complement_point(D, x: tuple) -> tuple:
    # constant dual points keep their value so the result still preserves the constants
    fixed = set(D.structure.constants.values())
    return tuple(v if i in fixed else 1 - v for i, v in enumerate(x))


def boolean_reduct(A: FiniteAlgebra, base: int, complement: list) -> FiniteAlgebra:
    """B_(A,a): b ∧ d = (a,b,d), b ∨ d = (b,d,a^c), 0 = a, 1 = a^c."""
    m = A.tables["median"]
    n = A.size
    top = complement[base]
    meet = np.array([[m[base, b, d] for d in range(n)] for b in range(n)], dtype=np.int64)
    join = np.array([[m[b, d, top] for d in range(n)] for b in range(n)], dtype=np.int64)
    return FiniteAlgebra(BDL, n, {"meet": meet, "join": join, "bot": base, "top": top}, A.labels)


def is_boolean_algebra(B: FiniteAlgebra, complement: list) -> bool:
    if not is_bounded_dl(B):
        return False
    meet, join = B.tables["meet"], B.tables["join"]
    bot, top = int(B.tables["bot"]), int(B.tables["top"])
    return all(meet[b, complement[b]] == bot and join[b, complement[b]] == top
               for b in range(B.size))


def ternary_boolean_check(k: int) -> dict:
    """2^k as a median algebra: its natural extension is the full product, x^c exists
    pointwise, (x, z, x^c) = z, and every B_(A,a) is a Boolean algebra."""
    if not 1 <= k <= 4:
        raise ValueError("the Boolean power check takes 1 ≤ |X| ≤ 4")
    A = median_power(k)
    ego = median_ego()
    N = natural_extension(A, ego)
    D = N.dual
    report = check_duality(A, ego)
    index = {p: i for i, p in enumerate(N.points)}
    full_product = N.size == 2 ** k and report.holds
    complements = []
    for x in N.points:
        c = _complement_point(D, x)
        complements.append(index.get(c, -1))
    has_complement = -1 not in complements
    med = N.algebra.tables["median"]
    identity_fails = [(N.algebra.labels[x], N.algebra.labels[z])
                      for x in range(N.size) for z in range(N.size)
                      if not has_complement or int(med[x, z, complements[x]]) != z]
    # on A itself: a^c through the inverse of e
    inverse = report.inverse
    comp_in_a = [inverse[complements[N.embedding[a]]] for a in range(A.size)] if has_complement else []
    reducts = {}
    for a in range(A.size):
        if not comp_in_a:
            break
        reducts[A.labels[a]] = is_boolean_algebra(boolean_reduct(A, a, comp_in_a), comp_in_a)
    return {
        "k": k,
        "size": A.size,
        "extension_size": N.size,
        "full_product": full_product,
        "complement_exists": has_complement,
        "identity_checked": N.size * N.size,
        "identity_failures": identity_fails,
        "boolean_reducts": reducts,
        "holds": (full_product and has_complement and not identity_fails
                  and bool(reducts) and all(reducts.values())),
    }


def _down(D, S) -> frozenset:
    leq = D.structure.relations["≤"]
    return frozenset(p for p in range(D.size) for q in S if (p, q) in leq)


def _up(D, S) -> frozenset:
    leq = D.structure.relations["≤"]
    return frozenset(q for q in range(D.size) for p in S if (p, q) in leq)


def dl_delta_equals_delta_prime(L: FiniteAlgebra) -> dict:
    """Match each basic open O_f with the interval [f⁻¹(0)↓, −(f⁻¹(1)↑)] and check that every
    interval between two points of L^δ is a union of basic opens.

    Points of L^δ are compared through their zero sets, which are down-sets of L*.
    """
    if L.size > 8:
        raise ValueError("the δ = δ′ comparison takes lattices of at most 8 elements")
    B = delta_basis(L, dl_ego())
    N = B.extension
    D = N.dual
    zero = [frozenset(p for p, v in enumerate(x) if v == 0) for x in N.points]
    mismatched = []
    for f, opens in B.entries:
        low = _down(D, [d for d, v in zip(f.domain, f.mapping) if v == 0])
        high = frozenset(range(D.size)) - _up(D, [d for d, v in zip(f.domain, f.mapping) if v == 1])
        interval = frozenset(i for i, z in enumerate(zero) if low <= z <= high)
        if interval != opens:
            mismatched.append(f.as_dict())
    intervals = 0
    not_union = []
    for c, o in itertools.product(range(N.size), repeat=2):
        if not zero[c] <= zero[o]:
            continue
        intervals += 1
        members = frozenset(i for i, z in enumerate(zero) if zero[c] <= z <= zero[o])
        covered = set()
        for _, opens in B.entries:
            if opens <= members:
                covered |= opens
        if covered != members:
            not_union.append((N.algebra.labels[c], N.algebra.labels[o]))
    return {"size": L.size, "basis": len(B.entries), "intervals": intervals,
            "mismatched": mismatched, "not_union": not_union,
            "holds": not mismatched and not not_union}


def index_choices(size: int, max_len: int = 2) -> list:
    """Nonempty multisets of at most ``max_len`` elements."""
    return [c for r in range(1, max_len + 1)
            for c in itertools.combinations_with_replacement(range(size), r)]


def cover_formula_sweep(A: FiniteAlgebra, max_len: int = 2) -> dict:
    choices = index_choices(A.size, max_len)
    disagreements = []
    for I, J in itertools.product(choices, repeat=2):
        cover, formula = check_median_cover_formula(A, I, J)
        if cover != formula:
            disagreements.append({"a": [A.labels[i] for i in I], "b": [A.labels[j] for j in J],
                                  "cover": cover, "formula": formula})
    return {"size": A.size, "instances": len(choices) ** 2, "disagreements": disagreements,
            "holds": not disagreements}


def cover_formula_suite() -> list:
    return [cover_formula_sweep(median2()), cover_formula_sweep(median_power(2))]
