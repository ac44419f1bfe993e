import pytest

from conceptcat import ClassError, Context
from conceptcat.adjoints import MonoMap, identity, is_complete_hom, is_surjective, upper_adjoint
from conceptcat.functors import (
    apply_B,
    apply_B_contra,
    apply_C,
    apply_C_star,
    based_complete_homs,
    closed_relation_check,
    compatible_subcontext_check,
    complete_context_claims,
    complete_homs,
    subcontext_conceptual_check,
    verify_adjunction,
    verify_doubly_based_equivalence,
    verify_fundamental_theorem,
    verify_purified_equivalence,
    verify_reduced_equivalence,
    verify_reflection,
)
from conceptcat.lattice import DoublyBasedLattice, complete_context, doubly_based_of_context
from conceptcat.morphisms import MappingPair, identity_pair, is_concept_continuous, is_conceptual
from conceptcat.oracle import enumerate_lattices, enumerate_pairs
from conceptcat.order import boolean_lattice, chain, isomorphic

from conftest import CHAIN, DIAG, FULL

B2 = boolean_lattice(2)
C2 = chain(2)
PROJ = MonoMap(B2, C2, [0, 1, 0, 1])


def test_apply_C_identity_and_projection():
    assert apply_C(identity(B2)) == identity_pair(complete_context(B2))
    p = apply_C(PROJ)
    assert is_conceptual(p)
    assert (p.source.n_objects, p.target.n_objects) == (4, 2)
    with pytest.raises(ClassError):
        apply_C(MonoMap(B2, C2, [0, 1, 1, 1]))


def test_apply_C_star_on_upper_adjoint():
    psi = upper_adjoint(PROJ)
    assert is_concept_continuous(apply_C_star(psi))


def test_complete_context_claims_exhaustive():
    lats = list(enumerate_lattices(3))
    for k in lats:
        for l in lats:
            for p in enumerate_pairs(complete_context(k), complete_context(l)):
                for c in complete_context_claims(p, k, l):
                    assert c.consistent, c


def test_apply_B():
    assert apply_B(identity_pair(DIAG)) == identity(apply_B(identity_pair(DIAG)).source)
    phi = apply_B(MappingPair(DIAG, CHAIN, (0, 1), (0, 1)))
    assert is_complete_hom(phi) and is_surjective(phi)
    with pytest.raises(ClassError):
        apply_B(MappingPair(CHAIN, DIAG, (0, 1), (0, 1)))


def test_apply_B_contra_on_compatible_inclusion():
    # ({g1}, {m2}) is a compatible subcontext of the diagonal context
    sub = Context(["g1"], ["m2"], [0])
    p = MappingPair(sub, DIAG, (0,), (1,))
    phi = apply_B_contra(p)
    # trace map (C, D) -> (C & {g1}, D & {m1})
    assert is_complete_hom(phi) and phi.source.size == 4 and phi.target.size == 2


def test_complete_homs_counts():
    assert len(complete_homs(B2, C2)) == 2
    assert len(complete_homs(C2, B2)) == 1
    # two automorphisms and two projections onto a 2-chain inside B2
    assert len(complete_homs(B2, B2)) == 4
    assert all(is_complete_hom(f) for f in complete_homs(B2, B2))


def test_adjunction():
    for k in (DIAG, CHAIN, Context(["g"], ["m"], [1])):
        for l in (C2, B2, chain(1)):
            assert verify_adjunction(k, l).ok


def test_subcontext_corollaries():
    for ctx in (DIAG, CHAIN):
        assert subcontext_conceptual_check(ctx, ctx).value
        assert compatible_subcontext_check(ctx, ctx).value
        assert closed_relation_check(ctx, ctx).value
    assert subcontext_conceptual_check(Context(["g1"], ["m1"], [1]), DIAG).consistent
    assert compatible_subcontext_check(Context(["g1"], ["m2"], [1]), CHAIN).value
    assert not compatible_subcontext_check(Context(["g1"], ["m1"], [1]), DIAG).value
    with pytest.raises(ClassError):
        subcontext_conceptual_check(Context(["x"], ["m1"], [1]), DIAG)


def test_closed_relation_chain_into_diag():
    c = closed_relation_check(CHAIN, DIAG)
    assert c.consistent and not c.value


def test_purified_equivalence():
    assert verify_purified_equivalence(DIAG, (CHAIN,)).ok
    base = DoublyBasedLattice(B2, 0b0110, 0b0110)
    assert verify_doubly_based_equivalence(base).ok


def test_base_preserving_counts():
    kb = doubly_based_of_context(DIAG)
    conceptual = sum(1 for p in enumerate_pairs(DIAG, DIAG) if is_conceptual(p))
    assert conceptual == len(based_complete_homs(kb, kb))


def test_reduced_equivalence_and_reflection():
    assert verify_reduced_equivalence([DIAG, CHAIN, FULL]).ok
    for ctx in (DIAG, CHAIN, FULL):
        assert verify_reflection(ctx).ok
        assert verify_fundamental_theorem(ctx).ok


def test_doubly_based_of_full_is_trivial():
    kb = doubly_based_of_context(FULL)
    assert isomorphic(kb.lattice, chain(1))
