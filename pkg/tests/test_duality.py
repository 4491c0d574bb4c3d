import itertools

import pytest

from natext.algebra import is_homomorphism
from natext.duality import (NonAlgebraicEgo, AlterEgo, basic_open, check_congruence_product,
                            check_delta_base, check_duality, check_median_cover_formula,
                            check_product_theorem, delta_basis, dual_of,
                            evaluation_is_embedding, injectivity_evidence, natural_extension,
                            structure_to_dot)
from natext.library import (BDL, boolean_lattice, chain, dl_ego, median2, median_ego,
                            median_power)
from natext.structure import FiniteStructure, StructureSignature, closed_substructures

from conftest import dl_suite, median_suite


def brute_dual_points(A, M):
    return [m for m in itertools.product(range(M.size), repeat=A.size)
            if is_homomorphism(A, M, m)]


def brute_bidual(A, ego):
    """Every map A* -> M preserving the ego's relations, operations and constants."""
    M, X = ego.algebra, ego.structure
    homs = brute_dual_points(A, M)
    out = []
    for x in itertools.product(range(M.size), repeat=len(homs)):
        ok = True
        for name, k in X.signature.relations:
            for t in itertools.product(range(len(homs)), repeat=k):
                inside = all(tuple(homs[j][a] for j in t) in X.relations[name]
                             for a in range(A.size))
                if inside and tuple(x[j] for j in t) not in X.relations[name]:
                    ok = False
        for name, k in X.signature.operations:
            table = X.operations[name]
            for t in itertools.product(range(len(homs)), repeat=k):
                image = tuple(int(table[tuple(homs[j][a] for j in t)]) for a in range(A.size))
                if x[homs.index(image)] != int(table[tuple(x[j] for j in t)]):
                    ok = False
        for name, c in X.constants.items():
            if x[homs.index((c,) * A.size)] != c:
                ok = False
        if ok:
            out.append(x)
    return out


# -- the dual of 2 ----------------------------------------------------------------

def test_dual_of_median2_points():
    D = dual_of(median2(), median_ego())
    assert [h.mapping for h in D.homs] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [D.zero_set_label(i) for i in range(4)] == ["{0,1}", "{0}", "{1}", "∅"]


def test_dual_of_median2_order_and_bullet():
    D = dual_of(median2(), median_ego())
    X = D.structure
    strict = {(p, q) for p, q in X.relations["≤"] if p != q}
    # pointwise order: constant 0 below everything, constant 1 above everything
    assert strict == {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
    assert X.operations["•"].tolist() == [3, 2, 1, 0]
    assert X.constants == {"0": 0, "1": 3}


def test_dual_dot_draws_ideal_inclusion():
    D = dual_of(median2(), median_ego())
    labels = [D.zero_set_label(i) for i in range(4)]
    dot = structure_to_dot(D.structure, "dual of 2", labels, converse=True)
    # ∅ at the bottom and the whole algebra at the top
    assert "n3 -> n1;" in dot and "n3 -> n2;" in dot
    assert "n1 -> n0;" in dot and "n2 -> n0;" in dot
    assert "n0 -> n3 [style=dashed, dir=none];" in dot
    assert "n1 -> n2 [style=dashed, dir=none];" in dot
    assert dot.count("->") == 6


def test_dot_default_direction_follows_the_order():
    D = dual_of(median2(), median_ego())
    dot = structure_to_dot(D.structure)
    assert "n0 -> n1;" in dot and "n1 -> n3;" in dot


def test_bidual_of_median2():
    r = check_duality(median2(), median_ego())
    assert r.holds and r.extension_size == 2 and r.inverse == (0, 1)
    assert evaluation_is_embedding(median2(), median_ego())


def test_bullet_is_needed_for_duality():
    r = check_duality(median2(), median_ego(with_bullet=False))
    assert not r.holds
    assert r.extension_size == 4
    assert r.missing == (0, 0, 0, 1)


# -- against brute force -------------------------------------------------------------

@pytest.mark.parametrize("A", [median2(), median_power(2)] + median_suite()[60:66])
def test_dual_points_match_brute_force_median(A):
    D = dual_of(A, median_ego())
    assert sorted(h.mapping for h in D.homs) == brute_dual_points(A, median2())


@pytest.mark.parametrize("A", dl_suite())
def test_natural_extension_matches_brute_force_dl(A):
    ego = dl_ego()
    N = natural_extension(A, ego)
    assert sorted(N.points) == sorted(brute_bidual(A, ego))


@pytest.mark.parametrize("A", [median2(), median_power(2), median_suite()[13]])
def test_natural_extension_matches_brute_force_median(A):
    ego = median_ego()
    assert sorted(natural_extension(A, ego).points) == sorted(brute_bidual(A, ego))


def test_median_suite_dualizes(medians):
    for A in medians:
        r = check_duality(A, median_ego())
        assert r.holds, A
        assert r.extension_size == A.size


def test_dl_suite_dualizes(dls):
    assert len(dls) == 13
    for L in dls:
        r = check_duality(L, dl_ego())
        assert r.holds and r.extension_size == L.size


def test_natural_extension_operations_are_pointwise():
    A = median_power(2)
    N = natural_extension(A, median_ego())
    med = N.algebra.tables["median"]
    for x, y, z in itertools.product(range(N.size), repeat=3):
        expect = tuple(sorted(v)[1] for v in zip(N.points[x], N.points[y], N.points[z]))
        assert N.points[int(med[x, y, z])] == expect


# -- alter ego validation -------------------------------------------------------------

def test_every_binary_relation_on_two_is_algebraic():
    # three distinct corners of the square always contain their median
    for r in range(1, 5):
        for rel in itertools.combinations(itertools.product((0, 1), repeat=2), r):
            X = FiniteStructure(StructureSignature(relations=(("r", 2),)), 2,
                                {"r": list(rel)}, {}, {}, {})
            dual_of(median2(), AlterEgo(median2(), X))


def test_non_algebraic_relation_is_rejected():
    X = FiniteStructure(StructureSignature(relations=(("r", 3),)), 2,
                        {"r": [(0, 0, 1), (0, 1, 0), (1, 0, 0)]}, {}, {}, {})
    with pytest.raises(NonAlgebraicEgo, match="'r'"):
        dual_of(median2(), AlterEgo(median2(), X))


def test_non_algebraic_operation_is_rejected():
    X = FiniteStructure(StructureSignature(operations=(("meet", 2),)), 2,
                        {}, {"meet": [[0, 0], [0, 1]]}, {}, {})
    with pytest.raises(NonAlgebraicEgo, match="'meet'"):
        dual_of(median2(), AlterEgo(median2(), X))


# -- the δ basis ---------------------------------------------------------------------

def test_delta_basis_of_median2():
    B = delta_basis(median2(), median_ego())
    entries = [(f.domain, f.mapping, sorted(o)) for f, o in B.entries]
    assert entries == [((0, 3), (0, 1), [0, 1]),
                       ((0, 1, 2, 3), (0, 0, 1, 1), [0]),
                       ((0, 1, 2, 3), (0, 1, 0, 1), [1])]


def test_basic_opens_by_brute_force(dls):
    for L in dls[:6]:
        B = delta_basis(L, dl_ego())
        N = B.extension
        for f, o in B.entries:
            assert o == {i for i, p in enumerate(N.points)
                         if all(p[d] == v for d, v in zip(f.domain, f.mapping))}
            assert basic_open(N, f) == o


def test_delta_base_report_median2():
    r = check_delta_base(median2(), median_ego())
    assert (r.holds, r.empty, r.union, r.other, r.discrete) == (True, 1, 5, 0, True)


def test_delta_base_on_suites(medians, dls):
    for A in medians[::7]:
        r = check_delta_base(A, median_ego())
        assert r.holds and r.other == 0 and r.discrete
    for L in dls:
        r = check_delta_base(L, dl_ego())
        assert r.holds and r.other == 0 and r.discrete


def test_algebra_points_are_isolated(dls):
    for L in dls:
        B = delta_basis(L, dl_ego())
        singletons = {o for _, o in B.entries if len(o) == 1}
        assert singletons == {frozenset([i]) for i in range(B.extension.size)}


def test_injectivity_is_finite_evidence():
    ego = median_ego()
    structures = [dual_of(A, ego).structure for A in (median2(), median_power(2))]
    r = injectivity_evidence(ego, structures)
    assert r["label"] == "finite-level evidence"
    assert r["holds"] and r["checked"] > 0


# -- products ---------------------------------------------------------------------

PAIRS = [(median2(), median2()), (median2(), median_power(2)),
         (chain(2), chain(3)), (boolean_lattice(2), chain(2)), (chain(3), chain(3))]


@pytest.mark.parametrize("A,B", PAIRS)
def test_product_theorem(A, B):
    ego = dl_ego() if A.signature == BDL else median_ego()
    r = check_product_theorem(A, B, ego)
    assert r.extension_holds and r.dual_holds and r.agree


@pytest.mark.parametrize("A,B", PAIRS)
def test_congruence_product(A, B):
    ok, table = check_congruence_product(A, B)
    assert ok
    assert len(table) == len(set(table.values()))


def test_dual_of_product_is_amalgamated_not_disjoint():
    ego = median_ego()
    P = median_power(2)
    # 2² has 6 homs into 2: 4 from the two factors with the constants shared
    assert dual_of(P, ego).size == 6
    assert dual_of(median2(), ego).size * 2 - 2 == 6


# -- the median cover formula ----------------------------------------------------------

def test_cover_formula_on_two():
    A = median2()
    for I in ([0], [1], [0, 1]):
        for J in ([0], [1], [0, 1]):
            cover, formula = check_median_cover_formula(A, I, J)
            assert cover == formula


def test_cover_formula_examples_on_two():
    A = median2()
    assert check_median_cover_formula(A, [1], [1]) == (True, True)
    assert check_median_cover_formula(A, [0], [1]) == (False, False)
    assert check_median_cover_formula(A, [0], [0, 1]) == (True, True)


def test_cover_formula_disagrees_on_the_square():
    A = median_power(2)
    # 00 and 11 with 01 strictly between them
    i, j = A.labels.index("00"), A.labels.index("11")
    k = A.labels.index("01")
    assert check_median_cover_formula(A, [i, j], [k]) == (True, False)


def test_closed_substructures_contain_constants():
    X = dual_of(median2(), median_ego()).structure
    for sub in closed_substructures(X):
        assert {0, 3} <= set(sub)
