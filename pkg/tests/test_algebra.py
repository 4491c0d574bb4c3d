import itertools

import numpy as np
import pytest

from natext.algebra import (Congruence, FiniteAlgebra, GuardExceeded, Signature,
                            SignatureMismatch, all_congruences, direct_product, enumerate_homs,
                            evaluate_term, generated_congruence, is_homomorphism, power,
                            quotient, subalgebra_generated)
from natext.library import (boolean_lattice, chain, dl2, majority_table, median2,
                            median_power)


def brute_homs(A, B):
    return [m for m in itertools.product(range(B.size), repeat=A.size)
            if is_homomorphism(A, B, m)]


def test_median2_has_four_endomorphisms():
    assert [h.mapping for h in enumerate_homs(median2(), median2())] == [
        (0, 0), (0, 1), (1, 0), (1, 1)]


def test_boolean_lattice_into_chain2():
    homs = enumerate_homs(boolean_lattice(2), dl2())
    assert len(homs) == 2
    assert len(homs) == len(brute_homs(boolean_lattice(2), dl2()))


@pytest.mark.parametrize("A", [median2(), median_power(2), chain(3), boolean_lattice(2)])
def test_identity_is_a_hom(A):
    assert tuple(range(A.size)) in [h.mapping for h in enumerate_homs(A, A)]


@pytest.mark.parametrize("A,B", [(median_power(2), median2()), (chain(3), chain(2)),
                                 (chain(4), chain(3)), (median_power(2), median_power(2))])
def test_enumeration_matches_brute_force(A, B):
    assert [h.mapping for h in enumerate_homs(A, B)] == brute_homs(A, B)


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        enumerate_homs(median2(), dl2())


def test_bad_tables_are_rejected():
    with pytest.raises(ValueError, match="out of range"):
        FiniteAlgebra(Signature.of(f=1), 2, {"f": [0, 2]})
    with pytest.raises(ValueError, match="shape"):
        FiniteAlgebra(Signature.of(f=2), 2, {"f": [0, 1]})
    with pytest.raises(ValueError, match="duplicate"):
        Signature((("f", 1), ("f", 2)))


def test_subalgebra_generation():
    P = median_power(2)
    S, inc = subalgebra_generated(P, [1, 2])
    # majority of 01 and 10 with either is itself, so the pair is already closed
    assert inc == (1, 2)
    full, inc_full = subalgebra_generated(P, range(P.size))
    assert inc_full == tuple(range(P.size))
    L = chain(3)
    consts, inc = subalgebra_generated(L, [])
    assert inc == (0, 2)


def test_direct_product():
    P, p1, p2 = direct_product(median2(), median2())
    assert P.size == 4
    assert np.array_equal(P.tables["median"], median_power(2).tables["median"])
    assert is_homomorphism(P, median2(), p1.mapping) and is_homomorphism(P, median2(), p2.mapping)
    assert len(enumerate_homs(P, median2())) == len(brute_homs(P, median2())) == 6


def test_congruences():
    assert [c.blocks for c in all_congruences(median2())] == [(0, 0), (0, 1)]
    cs = all_congruences(chain(3))
    assert Congruence((0, 1, 2)) in cs and Congruence((0, 0, 0)) in cs
    assert all(c.is_compatible(chain(3)) for c in cs)
    with pytest.raises(GuardExceeded):
        all_congruences(median_power(3), guard=4)


def test_congruence_brute_force():
    A = chain(4)

    def partitions(n):
        for labels in itertools.product(range(n), repeat=n):
            yield Congruence.from_labels(labels)
    brute = {c for c in partitions(A.size) if c.is_compatible(A)}
    assert set(all_congruences(A)) == brute


def test_generated_congruence_and_quotient():
    A = chain(3)
    theta = generated_congruence(A, [(0, 1)])
    assert theta.related(0, 1) and not theta.related(1, 2)
    Q, surj = quotient(A, theta)
    assert Q.size == 2 and is_homomorphism(A, Q, surj.mapping)


def test_power_and_terms():
    P = power(median2(), 3)
    assert P.labels[5] == "101"
    m = majority_table()
    assert evaluate_term(median2(), ("median", "x", "x", "y"), {"x": 1, "y": 0}) == 1
    assert int(m[0, 1, 1]) == 1
