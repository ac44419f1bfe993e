from conceptcat.adjoints import (
    MonoMap,
    classify_lattice_map,
    compose,
    identity,
    is_complete_hom,
    is_doubly_residuated,
    is_injective,
    is_join_preserving,
    is_lower_cut_continuous,
    is_meet_preserving,
    is_residuated,
    is_surjective,
    lower_adjoint,
    upper_adjoint,
)
from conceptcat.oracle import brute_force_join_preserving, brute_force_meet_preserving, enumerate_lattices, enumerate_maps
from conceptcat.order import Poset, boolean_lattice, chain, lower_cut, upper_cut

B2 = boolean_lattice(2)
C2 = chain(2)
BOT, A, B, TOP = (B2.index(x) for x in ("{}", "{0}", "{1}", "{0,1}"))


def collapse():
    # B2 -> 2-chain, bottom to bottom, everything else to top
    return MonoMap(B2, C2, [0, 1, 1, 1])


def test_identity_adjoints():
    for lat in (B2, C2, chain(1)):
        i = identity(lat)
        assert upper_adjoint(i) == i and lower_adjoint(i) == i
        assert classify_lattice_map(i).as_dict() == {k: True for k in classify_lattice_map(i).as_dict()}


def test_collapse_upper_adjoint():
    f = collapse()
    g = upper_adjoint(f)
    assert g is not None and g.table == (BOT, TOP)
    assert lower_adjoint(g) == f
    # a & b = bottom, but both atoms go to top
    assert is_join_preserving(f) and not is_meet_preserving(f)


def test_projection_is_surjective_complete_hom():
    c = classify_lattice_map(MonoMap(B2, C2, [0, 1, 0, 1]))
    assert c.surjective and not c.injective and c.complete_hom


def test_non_monotone_has_no_adjoint():
    swap = MonoMap(C2, C2, [1, 0])
    assert upper_adjoint(swap) is None and lower_adjoint(swap) is None


def test_constant_top():
    f = MonoMap(C2, C2, [1, 1])
    assert is_meet_preserving(f) and not is_join_preserving(f)


def test_chain_into_b2():
    f = MonoMap(C2, B2, [BOT, A])
    assert is_join_preserving(f) and not is_meet_preserving(f)


def test_antichain_embedding():
    anti = Poset(["a", "b"], [[True, False], [False, True]])
    f = MonoMap(anti, B2, [A, B])
    assert not is_residuated(f)
    assert is_lower_cut_continuous(f)
    assert not is_doubly_residuated(f)


def test_cuts():
    anti = Poset(["a", "b"], [[True, False], [False, True]])
    assert lower_cut(anti, 0b01) == 0b01
    assert lower_cut(anti, 0b11) == 0b11
    assert lower_cut(anti, 0) == 0
    assert upper_cut(anti, 0) == 0
    assert upper_cut(anti, 0b10) == 0b10
    assert set(anti.lower_cuts) == {0, 0b01, 0b10, 0b11}


def test_adjoint_laws_exhaustive():
    lats = list(enumerate_lattices(4))
    for p in lats:
        for q in lats:
            for f in enumerate_maps(p, q):
                assert is_join_preserving(f) == brute_force_join_preserving(f)
                assert is_meet_preserving(f) == brute_force_meet_preserving(f)
                g = upper_adjoint(f)
                assert (g is not None) == is_residuated(f) == is_join_preserving(f)
                if g is None:
                    continue
                assert lower_adjoint(g) == f
                assert is_injective(f) == is_surjective(g)
                assert is_surjective(f) == is_injective(g)
                for x in range(p.size):
                    for y in range(q.size):
                        assert q.leq(f(x), y) == p.leq(x, g(y))
                # doubly residuated iff the upper adjoint is a complete hom
                assert is_doubly_residuated(f) == is_complete_hom(g)


def test_compose():
    f = collapse()
    g = upper_adjoint(f)
    assert compose(f, g) == identity(C2)
