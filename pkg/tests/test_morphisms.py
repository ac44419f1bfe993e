import pytest

from conceptcat import ClassError, Context
from conceptcat.errors import NotPurifiedError
from conceptcat.adjoints import is_complete_hom, is_isomorphism
from conceptcat.lattice import build_concept_lattice
from conceptcat.morphisms import (
    MappingPair,
    classify,
    compose,
    dense_embedding_theorem,
    factorize_through_unit,
    identity_pair,
    is_concept_continuous,
    is_conceptual,
    is_dense_embedding,
    is_extent_dense,
    is_extent_full,
    is_incidence_preserving,
    is_incidence_reflecting,
    is_intent_dense,
    is_residuated_pair,
    is_separately_continuous,
    lift_backward,
    lift_forward,
    lifts_commute_with_units,
    partner_reconstruction,
    residual_companion,
    residuated_identities,
    unit,
)
from conceptcat.oracle import (
    bf_concept_continuous,
    bf_conceptual,
    bf_separately_continuous,
    enumerate_contexts,
    enumerate_pairs,
)
from conceptcat.order import chain

from conftest import CHAIN, DIAG, FULL

ID2 = (0, 1)


def test_identity_pair_is_everything():
    for ctx in (DIAG, CHAIN, FULL):
        c = classify(identity_pair(ctx))
        assert c.ok
        for flag in ("separately_continuous", "conceptual", "concept_continuous", "embedding", "dense_embedding", "isomorphism"):
            assert c.flags[flag] is True


def test_diag_to_chain_classification():
    c = classify(MappingPair(DIAG, CHAIN, ID2, ID2))
    assert c.ok
    expected = {
        "incidence_preserving": True,
        "incidence_reflecting": False,
        "separately_continuous": True,
        "conceptual": True,
        "extent_dense": True,
        "intent_dense": True,
        "extent_full": False,
        "intent_full": False,
        "concept_continuous": False,
        "dense_embedding": False,
    }
    assert {k: c.flags[k] for k in expected} == expected


def test_chain_to_diag():
    p = MappingPair(CHAIN, DIAG, ID2, ID2)
    assert not is_incidence_preserving(p)
    assert is_incidence_reflecting(p)
    assert not is_concept_continuous(p)


def test_density_examples():
    assert not is_extent_dense(MappingPair(DIAG, DIAG, (0, 0), ID2))
    assert is_extent_dense(MappingPair(DIAG, CHAIN, ID2, ID2))
    assert is_intent_dense(identity_pair(CHAIN))


def test_fullness_examples():
    assert not is_extent_full(MappingPair(DIAG, CHAIN, ID2, ID2))
    sub = Context(["g1"], ["m1"], [1])
    assert is_extent_full(MappingPair(sub, DIAG, (0,), (0,)))


def test_unit_is_dense_embedding():
    for ctx in enumerate_contexts(2, 2):
        eta = unit(ctx)
        assert is_dense_embedding(eta)
        assert dense_embedding_theorem(eta).value


def test_lifts_of_diag_to_chain():
    p = MappingPair(DIAG, CHAIN, ID2, ID2)
    fa, fb = lift_forward(p)
    assert fa == fb and is_complete_hom(fa)
    assert lifts_commute_with_units(p)
    ba, bb = lift_backward(p)
    assert ba != bb


def test_lifts_of_unit_are_isomorphisms():
    eta = unit(DIAG)
    fa, fb = lift_forward(eta)
    ba, bb = lift_backward(eta)
    assert fa == fb and ba == bb and is_isomorphism(fa) and is_isomorphism(ba)


def test_backward_lift_needs_continuity():
    p = MappingPair(CHAIN, DIAG, ID2, ID2)
    if not is_separately_continuous(p):
        with pytest.raises(ClassError):
            lift_backward(p)


def test_factorization_through_unit():
    cl = build_concept_lattice(DIAG)
    eta = unit(DIAG)
    f = factorize_through_unit(eta, cl.lattice)
    assert f.unique and f.join_map == f.meet_map
    assert all(f.join_map(cl.gamma[g]) == cl.gamma[g] for g in range(2))
    with pytest.raises(ClassError):
        factorize_through_unit(eta, chain(2))


def test_fast_predicates_match_oracle():
    contexts = list(enumerate_contexts(2, 2))
    for k in contexts[::3]:
        for l in contexts[::2]:
            for p in enumerate_pairs(k, l):
                assert is_separately_continuous(p) == bf_separately_continuous(p)
                assert is_conceptual(p) == bf_conceptual(p)
                assert is_concept_continuous(p) == bf_concept_continuous(p)


def test_composition_of_conceptual_pairs():
    p = MappingPair(DIAG, CHAIN, ID2, ID2)
    q = identity_pair(CHAIN)
    assert compose(q, p) == p
    assert is_conceptual(compose(q, p))


def test_partner_reconstruction():
    p = MappingPair(DIAG, CHAIN, ID2, ID2)
    assert partner_reconstruction(p, "conceptual") == (ID2, ID2)
    assert partner_reconstruction(identity_pair(DIAG), "concept_continuous") == (ID2, ID2)
    with pytest.raises(ClassError):
        partner_reconstruction(MappingPair(CHAIN, DIAG, ID2, ID2), "concept_continuous")


def test_identity_is_residuated_with_identity_companion():
    p = identity_pair(DIAG)
    assert is_residuated_pair(p)
    assert residual_companion(p) == p
    assert all(residuated_identities(p).values())


def test_residuation_needs_purified_contexts():
    with pytest.raises(NotPurifiedError):
        is_residuated_pair(identity_pair(FULL))
