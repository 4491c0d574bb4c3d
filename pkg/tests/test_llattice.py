import itertools

import pytest

from natext.extension import (Neighborhood, check_smooth, check_strong, hom_violation,
                              localize, no_continuous_selection_demo, point_window,
                              upper_lower, verify_witness)
from natext.library import dl_ego
from natext.cases.llattice import (CO_SUPPORT_WITNESS, INF, OMEGA, EPSet, LDual, LSite,
                                   element_label, evaluate, join, l_case_functions,
                                   lattice_laws, meet, members, negated_point_map,
                                   pair_parity_map, parity, parity_map, realize,
                                   subset_point, u_subset_map)


EVENS = EPSet.evens()


# -- eventually periodic sets ----------------------------------------------------------

def test_epset_membership_and_parse():
    s = EPSet.parse("1(01)")
    assert [n in s for n in range(6)] == [True, False, True, False, True, False]
    assert s == EVENS and hash(s) == hash(EVENS)
    assert str(EPSet.parse("0(011)")) == "0(011)"
    with pytest.raises(ValueError):
        EPSet.parse("1(2)")
    with pytest.raises(ValueError):
        EPSet((), ())


def test_epset_finite_and_cofinite():
    f = EPSet.finite({0, 3})
    assert not f.is_infinite and f.as_finite() == 0b1001
    c = EPSet.cofinite({0, 3})
    assert c.is_infinite and not c.is_coinfinite
    assert [n in c for n in range(5)] == [False, True, True, False, True]
    assert EVENS.complement() == EPSet.odds()
    with pytest.raises(ValueError):
        EVENS.as_finite()
    assert EVENS.below(5) == 0b10101


# -- the lattice ----------------------------------------------------------------------

def test_lattice_laws():
    assert lattice_laws(3)


def test_meet_and_join_are_intersection_and_union():
    for x, y in itertools.product(range(16), repeat=2):
        assert meet(x, y) == x & y and join(x, y) == x | y
    assert join(5, OMEGA) == OMEGA and meet(5, OMEGA) == 5


def test_labels_and_members():
    assert element_label(OMEGA) == "ω" and element_label(0b101) == "{0,2}"
    assert element_label(0) == "{}" and members(0b1010) == [1, 3]


def test_parity():
    assert [parity(x) for x in (0, 1, 3, 7)] == [0, 1, 0, 1]
    assert parity(OMEGA) == 1


# -- the dual ---------------------------------------------------------------------

def test_dual_points_and_order():
    D = LDual()
    assert D.points(2) == [INF, ("φ", 0), ("φ", 1), ("φ", 2)]
    assert D.holds("≤", (INF, ("φ", 3)))
    assert not D.holds("≤", (("φ", 3), INF))
    assert not D.holds("≤", (("φ", 1), ("φ", 2)))
    assert D.label(("φ", 12)) == "φ₁₂"


def test_dual_points_are_lattice_homs():
    elems = LSite().elements(3)
    for p in LDual().points(4):
        for x, y in itertools.product(elems, repeat=2):
            assert evaluate(p, meet(x, y)) == min(evaluate(p, x), evaluate(p, y))
            assert evaluate(p, join(x, y)) == max(evaluate(p, x), evaluate(p, y))
        assert evaluate(p, 0) == 0 and evaluate(p, OMEGA) == 1


def test_infinity_is_below_every_phi_pointwise():
    for x in LSite().elements(4):
        for n in range(5):
            assert evaluate(INF, x) <= evaluate(("φ", n), x)


def test_finite_points_are_isolated_and_consistent():
    site = LSite()
    for X in range(16):
        e = site.embed(X)
        for k in range(6):
            assert all(e(("φ", n)) == (X >> n & 1) for n in range(k + 1))
        assert e(INF) == 0


def test_realize_covers_every_coherent_window():
    pts = LDual().points(3)
    for values in itertools.product((0, 1), repeat=len(pts)):
        assignment = dict(zip(pts, values))
        # order-preserving means ∞ ↦ 1 forces every φ ↦ 1
        monotone = assignment[INF] == 0 or all(v == 1 for v in values)
        x = realize(assignment)
        assert (x is not None) == monotone
        if x is not None:
            assert all(x(p) == v for p, v in assignment.items())


def test_subset_points():
    x = subset_point(EVENS)
    assert not x.is_algebra_point and x(INF) == 0 and x(("φ", 4)) == 1
    y = subset_point(EPSet.finite({2}))
    assert y.is_algebra_point and y.element == 0b100


def test_co_support_witness_domain():
    x = subset_point(EVENS)
    for n in range(6):
        assert verify_witness(LDual(), dl_ego(), CO_SUPPORT_WITNESS, x, n)
    assert CO_SUPPORT_WITNESS.contains(x, INF)
    assert CO_SUPPORT_WITNESS.contains(x, ("φ", 1))
    assert not CO_SUPPORT_WITNESS.contains(x, ("φ", 2))


def test_fast_neighbourhoods_match_the_generic_scan():
    site = LSite()
    for x in site.sample_points():
        for k in range(4):
            for ws in ((), site.applicable_witnesses(x)):
                nb = Neighborhood(x, k if not x.is_algebra_point else None, ws)
                fast = site.neighborhood_members(nb, k + site.margin)
                if nb.level is None:
                    assert fast == [x.element]
                    continue
                slow = [a for a in site.elements(k + site.margin)
                        if all(evaluate(p, a) == x(p) for p in site.dual_points(k))
                        and all(w.agrees(x, a) for w in ws)]
                assert sorted(fast) == sorted(slow)


# -- parity ----------------------------------------------------------------------------

def brute_parity_window(k, depth):
    """Parities of finite sets agreeing with the evens on 0..k, members ≤ depth."""
    base = [n for n in range(k + 1) if n % 2 == 0]
    free = range(k + 1, depth + 1)
    return {(len(base) + r) % 2 for r in range(len(free) + 1)}


def test_parity_window_by_brute_force():
    u = parity_map()
    x = subset_point(EVENS)
    for d in range(10):
        w = point_window(u, x, (0,), d)
        assert set(v[0] for v in w.history[-1]) == brute_parity_window(d, d + 3)


def test_parity_is_not_smooth():
    v = check_smooth(parity_map())
    assert not v.holds
    assert v.witness["point"] == "evens"
    assert v.witness["window"] == ("φ₀",)
    assert v.witness["values"] == ((0,), (1,))
    assert v.describe() == "NOT SMOOTH; witness: evens, window {φ₀}, values {0,1}"


def test_parity_lower_and_upper():
    r = upper_lower(parity_map(), subset_point(EVENS), (0,))
    assert r.lower == (0,) and r.upper == (1,)
    assert r.sandwich and r.matches_window


def test_parity_window_is_stable_at_every_depth():
    u = parity_map()
    w = point_window(u, subset_point(EVENS), (0,), 12)
    assert w.stabilized
    assert all(h == ((0,), (1,)) for h in w.history)


def test_parity_no_selection_demo():
    r = no_continuous_selection_demo(parity_map(), subset_point(EVENS), (0,))
    forced = {(x["choice"], x["forced"]) for x in r["refutations"]}
    assert forced == {((0,), 1), ((1,), 0)}
    even = [x for x in r["refutations"] if x["forced"] == 0][0]["algebra_point"]
    odd = [x for x in r["refutations"] if x["forced"] == 1][0]["algebra_point"]
    count = lambda label: len(label.strip("{}").split(","))
    assert count(even) % 2 == 0 and count(odd) % 2 == 1


# -- pair parity -----------------------------------------------------------------------

def test_pair_parity_window_and_bounds():
    u = pair_parity_map()
    x = subset_point(EVENS)
    assert point_window(u, x, (0, 1)).values == ((0, 1), (1, 0))
    r = upper_lower(u, x, (0, 1))
    assert r.lower == (0, 0) and r.upper == (1, 1)
    assert r.sandwich and r.matches_window


def test_pair_parity_first_coordinate_is_parity():
    u = pair_parity_map()
    first = localize(u, 0)
    second = localize(u, 1)
    for X in range(32):
        assert first(X) == parity(X) and second(X) == 1 - parity(X)
    assert first(OMEGA) == second(OMEGA) == 1


def test_pair_parity_no_selection_demo():
    r = no_continuous_selection_demo(pair_parity_map(), subset_point(EVENS), (0, 1))
    assert r["values"] == ((0, 1), (1, 0)) and len(r["refutations"]) == 2


# -- u_A and ¬∘φ₀ ------------------------------------------------------------------------

def test_u_evens_is_smooth_at_depth_12():
    v = check_smooth(u_subset_map(EVENS), depth=12)
    assert v.holds and v.depth == 12


def test_u_evens_window_uses_the_co_support_witness():
    u = u_subset_map(EVENS)
    w = point_window(u, subset_point(EVENS), (0,), 12)
    assert w.values == ((0,),) and w.witnesses == ("co-support",)
    bare = point_window(u, subset_point(EVENS), (0,), 12, use_witnesses=False)
    assert bare.values == ((0,), (1,))


def test_u_evens_is_not_strong():
    v = check_strong(u_subset_map(EVENS), depth=12)
    assert not v.holds
    w = v.witness
    assert w["point"] == "evens" and w["window"] == ("φ₀",) and w["values"] == ((0,),)
    # an escaping finite set at every level: it agrees with the evens up to k yet is not even
    assert [e[0] for e in w["escapes"]] == list(range(13))
    for k, label, trace in w["escapes"]:
        s = [int(v) for v in label.strip("{}").split(",")]
        assert trace == (1,)
        assert [n for n in s if n <= k] == [n for n in range(k + 1) if n % 2 == 0]
        assert any(n % 2 for n in s)


def test_u_subset_on_finite_sets():
    u = u_subset_map(EVENS)
    assert u(0b101) == 0 and u(0b110) == 1 and u(OMEGA) == 1
    assert u_subset_map(EPSet.parse("all"))(OMEGA) == 0


def test_negated_point_is_smooth_but_not_a_hom():
    u = negated_point_map(0)
    assert check_smooth(u).holds
    assert hom_violation(u, 3) == ("meet", ("{}", "{0}"))


def test_parity_is_not_a_hom():
    assert hom_violation(parity_map(), 3) is not None


# -- registered verdicts ------------------------------------------------------------------

def test_registry_names_and_expectations():
    cases = l_case_functions()
    assert list(cases) == ["l-parity", "l-pair-parity", "l-u-evens", "l-neg-phi0"]
    assert cases["l-parity"][1]["smooth"] is False
    assert cases["l-u-evens"][1] == {"smooth": True, "strong": False}
    assert cases["l-neg-phi0"][1] == {"smooth": True, "hom": False}
