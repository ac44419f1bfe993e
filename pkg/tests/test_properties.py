"""Hypothesis properties of the derivation operators and the concept lattice."""

from hypothesis import given, settings, strategies as st

from conceptcat import Context, bits
from conceptcat.lattice import build_concept_lattice, purify, reduce
from conceptcat.morphisms import MappingPair, is_concept_continuous, is_conceptual, is_dense_embedding
from conceptcat.oracle import brute_force_concepts
from conceptcat.order import isomorphic


@st.composite
def contexts(draw, max_g=4, max_m=4):
    g = draw(st.integers(0, max_g))
    m = draw(st.integers(0, max_m))
    rows = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=g, max_size=g))
    return Context([f"g{i}" for i in range(g)], [f"m{j}" for j in range(m)], rows)


@st.composite
def context_with_sets(draw):
    ctx = draw(contexts())
    a = draw(st.integers(0, (1 << ctx.n_objects) - 1))
    b = draw(st.integers(0, (1 << ctx.n_attributes) - 1))
    return ctx, a, b


@st.composite
def pairs(draw):
    k = draw(contexts(3, 3))
    # maps into an empty carrier exist only from an empty one
    l = draw(contexts(3, 3).filter(lambda c: (c.n_objects or not k.n_objects) and (c.n_attributes or not k.n_attributes)))
    alpha = [draw(st.integers(0, l.n_objects - 1)) for _ in range(k.n_objects)]
    beta = [draw(st.integers(0, l.n_attributes - 1)) for _ in range(k.n_attributes)]
    return MappingPair(k, l, alpha, beta)


@settings(max_examples=300, deadline=None)
@given(context_with_sets())
def test_galois_connection(args):
    ctx, a, b = args
    assert bits.is_subset(a, ctx.down(b)) == bits.is_subset(b, ctx.up(a))
    assert ctx.up(ctx.down(ctx.up(a))) == ctx.up(a)
    assert ctx.down(ctx.up(ctx.down(b))) == ctx.down(b)


@settings(max_examples=300, deadline=None)
@given(context_with_sets())
def test_closure_operator(args):
    ctx, a, _ = args
    c = ctx.extent_closure(a)
    assert bits.is_subset(a, c)
    assert ctx.extent_closure(c) == c
    assert ctx.is_concept(c, ctx.up(a))


@settings(max_examples=150, deadline=None)
@given(contexts())
def test_lattice_matches_brute_force(ctx):
    cl = build_concept_lattice(ctx)
    assert cl.concept_set() == brute_force_concepts(ctx)
    lat = cl.lattice
    for x in range(lat.size):
        for y in range(lat.size):
            j = lat.join_of(1 << x | 1 << y)
            assert lat.leq(x, j) and lat.leq(y, j)


@settings(max_examples=100, deadline=None)
@given(contexts())
def test_purify_and_reduce_keep_lattice(ctx):
    lat = build_concept_lattice(ctx).lattice
    assert isomorphic(build_concept_lattice(purify(ctx)).lattice, lat)
    assert isomorphic(build_concept_lattice(reduce(ctx)).lattice, lat)


@settings(max_examples=300, deadline=None)
@given(pairs())
def test_dense_embedding_theorem(p):
    assert is_dense_embedding(p) == (is_conceptual(p) and is_concept_continuous(p))
