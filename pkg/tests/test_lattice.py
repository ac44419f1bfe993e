from conceptcat import bits
from conceptcat.adjoints import compose, identity, is_isomorphism
from conceptcat.context import Context, find_context_isomorphism, is_purified
from conceptcat.lattice import (
    DoublyBasedLattice,
    base_context,
    build_concept_lattice,
    complete_context,
    counit,
    dm_completion,
    doubly_based_of_context,
    iota,
    is_irreducibly_bigenerated,
    is_reduced,
    join_irreducibles,
    lectic_intents,
    meet_irreducibles,
    purify,
    reduce,
    standard_context,
)
from conceptcat.oracle import brute_force_concepts, enumerate_contexts, enumerate_lattices, random_contexts
from conceptcat.order import Poset, boolean_lattice, chain, isomorphic

from conftest import CHAIN, DIAG, EMPTY, FULL

B2 = boolean_lattice(2)
C2 = chain(2)
ONE = chain(1)


def concepts_of(ctx):
    return {(c.extent, c.intent) for c in build_concept_lattice(ctx).concepts}


def test_concepts_of_fixtures():
    assert concepts_of(DIAG) == {(0, 0b11), (0b01, 0b01), (0b10, 0b10), (0b11, 0)}
    assert concepts_of(FULL) == {(0b11, 0b11)}
    assert concepts_of(CHAIN) == {(0b01, 0b11), (0b11, 0b10)}
    assert concepts_of(EMPTY) == {(0, 0b11), (0b11, 0)}
    assert concepts_of(Context([], [], [])) == {(0, 0)}


def test_chain_fixture_order():
    cl = build_concept_lattice(CHAIN)
    lo = cl.concept_of_extent(0b01)
    hi = cl.concept_of_extent(0b11)
    assert cl.lattice.leq(lo, hi) and not cl.lattice.leq(hi, lo)


def test_lectic_order_is_increasing():
    for ctx in random_contexts(30, 4, 4, 3):
        intents = list(lectic_intents(ctx))
        # lectic order: reversed bit strings compare as integers
        keys = [int(format(b, f"0{ctx.n_attributes}b")[::-1] or "0", 2) for b in intents]
        assert keys == sorted(keys)


def test_matches_oracle_and_fundamental_facts():
    for ctx in [*enumerate_contexts(2, 2), *random_contexts(80, 4, 4, 11)]:
        cl = build_concept_lattice(ctx)
        assert cl.concept_set() == brute_force_concepts(ctx)
        assert len(cl.concepts) == len(set(cl.concepts))
        assert cl.lattice.is_join_dense(cl.gamma_image)
        assert cl.lattice.is_meet_dense(cl.mu_image)
        for g in range(ctx.n_objects):
            for m in range(ctx.n_attributes):
                assert ctx.incident(g, m) == cl.lattice.leq(cl.gamma[g], cl.mu[m])


def test_complete_context():
    assert find_context_isomorphism(complete_context(C2), CHAIN) is not None
    one = complete_context(ONE)
    assert one.n_objects == 1 and one.rows == (1,)
    assert len(build_concept_lattice(complete_context(B2))) == 4


def test_irreducibles():
    assert join_irreducibles(B2) == bits.mask([B2.index("{0}"), B2.index("{1}")])
    assert meet_irreducibles(B2) == join_irreducibles(B2)
    assert join_irreducibles(C2) == 0b10 and meet_irreducibles(C2) == 0b01
    assert join_irreducibles(ONE) == 0 and meet_irreducibles(ONE) == 0
    for lat in enumerate_lattices(5):
        assert is_irreducibly_bigenerated(lat)
        assert not join_irreducibles(lat) >> lat.bottom & 1
        assert not meet_irreducibles(lat) >> lat.top & 1


def test_standard_context():
    assert find_context_isomorphism(standard_context(B2), DIAG) is not None
    s = standard_context(C2)
    assert (s.n_objects, s.n_attributes, s.rows) == (1, 1, (0,))
    s = standard_context(ONE)
    assert (s.n_objects, s.n_attributes) == (0, 0)


def test_doubly_based_of_context():
    k = doubly_based_of_context(DIAG)
    assert isomorphic(k.lattice, B2)
    assert bits.count(k.join_base) == 2 and k.join_base == k.meet_base
    k = doubly_based_of_context(CHAIN)
    assert k.join_base == k.lattice.all and k.meet_base == k.lattice.all
    k = doubly_based_of_context(FULL)
    assert k.lattice.size == 1


def test_base_context():
    atoms = bits.mask([B2.index("{0}"), B2.index("{1}")])
    coatoms = atoms
    assert find_context_isomorphism(base_context(DoublyBasedLattice(B2, atoms, coatoms)), DIAG) is not None
    full = DoublyBasedLattice(B2, B2.all, B2.all)
    assert find_context_isomorphism(base_context(full), complete_context(B2)) is not None
    assert find_context_isomorphism(base_context(DoublyBasedLattice(C2, 0b11, 0b11)), CHAIN) is not None
    for lat in enumerate_lattices(4):
        assert is_purified(base_context(DoublyBasedLattice(lat, lat.all, lat.all)))


def test_counit_and_iota():
    for lat in (C2, ONE, B2, *enumerate_lattices(5)):
        eps = counit(lat)
        assert is_isomorphism(eps)
        k = DoublyBasedLattice(lat, lat.all, lat.all)
        i = iota(k)
        # with full bases the base context is the complete context, so iota inverts the counit
        assert compose(eps, i) == identity(lat)
        assert compose(i, eps) == identity(eps.source)
    eps = counit(C2)
    cl = build_concept_lattice(complete_context(C2))
    assert eps(cl.concept_of_extent(0b01)) == 0


def test_purify():
    p = purify(FULL)
    assert (p.n_objects, p.n_attributes, p.rows) == (1, 1, (1,))
    assert find_context_isomorphism(purify(DIAG), DIAG) is not None
    dup = Context(["a", "b", "c"], ["x", "y"], [0b01, 0b01, 0b10])
    p = purify(dup)
    assert p.n_objects == 2 and "a/b" in p.objects


def test_reduce():
    r = reduce(CHAIN)
    assert (r.n_objects, r.n_attributes, r.rows) == (1, 1, (0,))
    assert find_context_isomorphism(reduce(DIAG), DIAG) is not None
    r = reduce(FULL)
    assert (r.n_objects, r.n_attributes) == (0, 0)


def test_is_reduced():
    assert is_reduced(DIAG)
    assert not is_reduced(CHAIN)
    assert not is_reduced(FULL)


def test_purify_reduce_preserve_lattice():
    for ctx in enumerate_contexts(2, 2):
        lat = build_concept_lattice(ctx).lattice
        assert isomorphic(build_concept_lattice(purify(ctx)).lattice, lat)
        assert isomorphic(build_concept_lattice(reduce(ctx)).lattice, lat)
        assert is_purified(purify(ctx)) and is_reduced(reduce(ctx))


def test_dm_completion():
    anti = Poset(["a", "b"], [[True, False], [False, True]])
    assert len(dm_completion(anti)) == 4
    for lat in enumerate_lattices(5):
        assert isomorphic(dm_completion(lat).lattice, lat)
    assert len(dm_completion(Poset(["x"], [[True]]))) == 1
