import pytest

from conceptcat import Context, DimensionError, OwnershipError
from conceptcat import bits
from conceptcat.context import (
    attr_specialization_leq,
    attribute_concept,
    down,
    extent_closure,
    find_context_isomorphism,
    is_concept,
    is_purified,
    obj_specialization_leq,
    object_concept,
    up,
)
from conceptcat.oracle import enumerate_contexts, random_contexts

from conftest import CHAIN, DIAG, EMPTY, FULL


def test_up_and_down_on_fixtures():
    assert up(DIAG, DIAG.objset(["g1"])).names() == ["m1"]
    assert up(CHAIN, CHAIN.objset(["g1", "g2"])).names() == ["m2"]
    assert down(DIAG, DIAG.attrset(["m2"])).names() == ["g2"]
    assert down(CHAIN, CHAIN.attrset(["m1", "m2"])).names() == ["g1"]


def test_empty_set_conventions():
    for ctx in (DIAG, CHAIN, FULL, EMPTY):
        assert ctx.up(0) == ctx.all_attributes
        assert ctx.down(0) == ctx.all_objects


def test_closures():
    assert extent_closure(DIAG, DIAG.objset(["g1"])).names() == ["g1"]
    assert FULL.extent_closure(0) == FULL.all_objects
    assert CHAIN.extent_closure(0b11) == 0b11


def test_object_and_attribute_concepts():
    assert object_concept(CHAIN, 1) == (0b11, 0b10)
    assert attribute_concept(CHAIN, 0) == (0b01, 0b11)
    for g in range(2):
        assert object_concept(FULL, g) == (0b11, 0b11)


def test_is_concept():
    assert is_concept(DIAG, DIAG.objset(["g1"]), DIAG.attrset(["m1"]))
    assert not is_concept(DIAG, DIAG.objset(["g1"]), DIAG.attrset(["m2"]))
    assert EMPTY.is_concept(0, 0b11)


def test_specialization_orders():
    assert obj_specialization_leq(CHAIN, 0, 1)
    assert not obj_specialization_leq(DIAG, 0, 1)
    assert all(obj_specialization_leq(c, 0, 0) and attr_specialization_leq(c, 1, 1) for c in (DIAG, CHAIN, FULL))


def test_is_purified():
    assert is_purified(DIAG)
    assert not is_purified(FULL)
    assert is_purified(Context(["g"], ["m"], [0]))


def test_dimension_and_ownership_errors():
    with pytest.raises(DimensionError):
        DIAG.up(0b100)
    with pytest.raises(DimensionError):
        object_concept(DIAG, 2)
    with pytest.raises(OwnershipError):
        up(DIAG, CHAIN.objset(["g1"]))
    with pytest.raises(DimensionError):
        Context(["g"], ["m"], [0b10])
    with pytest.raises(ValueError):
        Context(["g", "g"], ["m"], [0, 0])


def test_empty_shapes_allowed():
    c = Context([], [], [])
    assert c.up(0) == 0 and c.down(0) == 0
    assert c.is_concept(0, 0)


def _small_suite():
    yield from enumerate_contexts(2, 2)
    yield from random_contexts(60, 4, 4, 7)


def test_galois_property_and_closure_laws():
    for ctx in _small_suite():
        for a in bits.subsets(ctx.n_objects):
            ea = ctx.extent_closure(a)
            assert bits.is_subset(a, ea) and ctx.extent_closure(ea) == ea
            assert ctx.up(ea) == ctx.up(a)
            for b in bits.subsets(ctx.n_attributes):
                assert bits.is_subset(a, ctx.down(b)) == bits.is_subset(b, ctx.up(a))
            for a2 in bits.subsets(ctx.n_objects):
                if bits.is_subset(a, a2):
                    assert bits.is_subset(ctx.up(a2), ctx.up(a))
                    assert bits.is_subset(ea, ctx.extent_closure(a2))


def test_specialization_implication():
    # g <= j I m <= n implies g I n
    for ctx in _small_suite():
        G, M = ctx.n_objects, ctx.n_attributes
        for g in range(G):
            for j in range(G):
                if not obj_specialization_leq(ctx, g, j):
                    continue
                for m in bits.members(ctx.rows[j]):
                    for n in range(M):
                        if attr_specialization_leq(ctx, m, n):
                            assert ctx.incident(g, n)


def test_context_isomorphism_search():
    swapped = Context(["a", "b"], ["x", "y"], [0b10, 0b01])
    assert find_context_isomorphism(DIAG, swapped) is not None
    assert find_context_isomorphism(DIAG, CHAIN) is None
