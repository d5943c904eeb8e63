from __future__ import annotations

import itertools

import pytest

from agkit import (CapExceededError, Partition, builtin, cep_instance, check_sc,
                   classify, congruence_lattice, direct_product,
                   enumerate_embeddings, is_congruence, is_isomorphic,
                   principal_congruence, quotient)
from agkit.congruence import iter_partitions
from tests.conftest import brute_force_congruences


def oracle_principal(algebra, a, b):
    """Brute force: the refinement-least congruence containing (a, b)."""
    containing = [p for p in brute_force_congruences(algebra) if p.relates(a, b)]
    least = containing[0]
    for p in containing[1:]:
        least = least.meet(p)
    assert is_congruence(algebra, least)
    return least


def test_partition_canonical_form():
    assert Partition.from_assignment([5, 5, 7, 5]).blocks == (0, 0, 1, 0)
    assert Partition.identity(3).blocks == (0, 1, 2)
    assert Partition.total(3).blocks == (0, 0, 0)


def test_partition_meet_join_refine():
    p = Partition.from_assignment([0, 0, 1, 1])
    q = Partition.from_assignment([0, 1, 1, 0])
    assert p.meet(q).blocks == (0, 1, 2, 3)
    assert p.join(q).blocks == (0, 0, 0, 0)
    assert Partition.identity(4).refines(p)
    assert p.refines(Partition.total(4))
    assert not p.refines(q)


def test_principal_congruence_examples(builtins):
    dblst = builtins["3_dblst"]
    assert principal_congruence(dblst, 0, 1) == Partition.total(3)
    for algebra in builtins.values():
        for x in algebra.elements():
            assert principal_congruence(algebra, x, x) == Partition.identity(algebra.size)
    square = direct_product([builtins["2"], builtins["2"]])
    # identifying (0,0) with (0,1) collapses exactly the second coordinate
    assert principal_congruence(square, 0, 1).blocks == (0, 0, 1, 1)


def test_principal_congruence_matches_oracle_up_to_size_6(builtins):
    subjects = list(builtins.values())
    subjects.append(direct_product([builtins["2"], builtins["2"]]))
    subjects.append(direct_product([builtins["2"], builtins["3_dblst"]]))
    subjects.append(direct_product([builtins["2"], builtins["3_klst"]]))
    for algebra in subjects:
        assert algebra.size <= 6
        for a, b in itertools.combinations(range(algebra.size), 2):
            assert principal_congruence(algebra, a, b) == oracle_principal(algebra, a, b)


def test_congruence_lattice_examples(builtins):
    assert len(congruence_lattice(builtins["2"])) == 2
    assert len(congruence_lattice(builtins["3_klst"])) == 2
    assert len(congruence_lattice(builtins["3_dblst"])) == 2
    square = direct_product([builtins["2"], builtins["2"]])
    assert len(congruence_lattice(square)) == 4


def test_congruence_lattice_matches_oracle(builtins):
    for algebra in builtins.values():
        computed = set(congruence_lattice(algebra))
        assert computed == set(brute_force_congruences(algebra))


def test_congruence_lattice_entries_are_compatible(builtins):
    product = direct_product([builtins["3_dblst"], builtins["2"]])
    for theta in congruence_lattice(product):
        assert is_congruence(product, theta)


def test_congruence_lattice_cap():
    big = direct_product([builtin("3_klst")] * 4)
    with pytest.raises(CapExceededError):
        congruence_lattice(big)


def test_classify_builtins_all_irreducible(builtins):
    for algebra in builtins.values():
        result = classify(algebra)
        assert result.simple
        assert result.subdirectly_irreducible
        assert result.directly_indecomposable
        assert result.monolith == Partition.total(algebra.size)
        assert check_sc(algebra).sc


def test_classify_product_is_reducible(builtins):
    product = direct_product([builtins["3_dblst"], builtins["2"]])
    result = classify(product)
    assert not result.simple
    assert not result.subdirectly_irreducible
    assert not result.directly_indecomposable
    assert not check_sc(product).sc


def test_classify_trivial_algebra():
    from agkit.algebra import FiniteAlgebra
    trivial = FiniteAlgebra("1", 1, ("0",), ((0,),), ((0,),), (0,), (0,), 0, 0)
    result = classify(trivial)
    assert not (result.simple or result.subdirectly_irreducible
                or result.directly_indecomposable)


def test_di_iff_single_factor(builtins):
    names = sorted(builtins)
    for k in (1, 2):
        for combo in itertools.combinations_with_replacement(names, k):
            product = direct_product([builtins[n] for n in combo])
            assert classify(product).directly_indecomposable == (k == 1), combo
    triple = direct_product([builtins["2"], builtins["2"], builtins["3_klst"]])
    assert not classify(triple).directly_indecomposable


def test_check_sc_witness(builtins):
    product = direct_product([builtins["3_dblst"], builtins["3_klst"]])
    report = check_sc(product)
    assert not report.sc
    # (a, 1) is the least non-top element whose meet with its quote-star is nonzero
    assert product.labels[report.sc_witness] == "(a,1)"
    assert not report.join_variant


def test_sc_equivalence_on_small_members(builtins):
    # simplicity and (SC) agree on the builtins and fail together on products
    subjects = [builtins[n] for n in sorted(builtins)]
    subjects += [direct_product([builtins["2"], builtins[n]]) for n in sorted(builtins)]
    for algebra in subjects:
        assert classify(algebra).simple == check_sc(algebra).sc


def test_cep_instances(builtins):
    dmba = builtins["4_dmba"]
    for embedding in enumerate_embeddings(builtins["2"], dmba):
        assert cep_instance(builtins["2"], dmba, embedding)
    klst = builtins["3_klst"]
    square = direct_product([klst, klst])
    diagonal = next(e for e in enumerate_embeddings(klst, square)
                    if all(e(x) == x * klst.size + x for x in klst.elements()))
    assert cep_instance(klst, square, diagonal)
    from agkit.morphisms import identity_hom
    for algebra in builtins.values():
        assert cep_instance(algebra, algebra, identity_hom(algebra))


def test_cep_requires_embedding(builtins):
    from agkit.morphisms import Homomorphism
    collapse = Homomorphism(builtins["2"], builtins["2"], (0, 1))
    with pytest.raises(ValueError):
        cep_instance(builtins["3_klst"], builtins["2"], collapse)


def test_quotient_by_projection_kernel(builtins):
    square = direct_product([builtins["2"], builtins["2"]])
    kernel = principal_congruence(square, 0, 1)  # collapse second coordinate
    image = quotient(square, kernel)
    assert image.size == 2
    assert is_isomorphic(image, builtins["2"]) is not None


def test_quotient_rejects_non_congruence(builtins):
    bad = Partition.from_assignment([0, 0, 1])
    assert not is_congruence(builtins["3_dblst"], bad)
    with pytest.raises(ValueError):
        quotient(builtins["3_dblst"], bad)


def test_iter_partitions_counts():
    # Bell numbers 1, 2, 5, 15, 52
    for n, bell in ((1, 1), (2, 2), (3, 5), (4, 15), (5, 52)):
        assert sum(1 for _ in iter_partitions(n)) == bell
