"""Independent brute-force references and exhaustive enumerators.

The definitional oracles do not use the bitmask machinery of the rest of the
package: sets are frozensets of indices and every notion is evaluated straight
from its definition. The enumerators feed the verification suites.
"""

from __future__ import annotations

from itertools import chain, combinations, product
from typing import Iterator

from .adjoints import MonoMap
from .context import Concept, Context
from .errors import SizeLimitError
from .morphisms import MappingPair
from .order import FiniteLattice, Poset, canonical_form

CONCEPT_LIMIT = 16
CONTEXT_LIMIT = 4
LATTICE_LIMIT = 6
POSET_LIMIT = 5


def _powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def _mask(s) -> int:
    return sum(1 << i for i in s)


# ---------------------------------------------------------------------------
# definitional oracles on contexts


class _Ctx:
    """Incidence as a set of index pairs, with set-valued derivations."""

    def __init__(self, ctx: Context):
        self.G = frozenset(range(ctx.n_objects))
        self.M = frozenset(range(ctx.n_attributes))
        self.I = frozenset((g, m) for g in self.G for m in self.M if ctx.rows[g] >> m & 1)
        self._concepts = None

    def up(self, a):
        return frozenset(m for m in self.M if all((g, m) in self.I for g in a))

    def down(self, b):
        return frozenset(g for g in self.G if all((g, m) in self.I for m in b))

    def concepts(self) -> set:
        if self._concepts is None:
            out = set()
            for a in _powerset(self.G):
                a = frozenset(a)
                b = self.up(a)
                if self.down(b) == a:
                    out.add((a, b))
            self._concepts = out
        return self._concepts

    def extents(self):
        return {a for a, _ in self.concepts()}

    def intents(self):
        return {b for _, b in self.concepts()}

    def join(self, cs):
        b = self.M
        for c in cs:
            b = b & c[1]
        return (self.down(b), b)

    def meet(self, cs):
        a = self.G
        for c in cs:
            a = a & c[0]
        return (a, self.up(a))


def brute_force_concepts(ctx: Context) -> set[Concept]:
    """All ``(A, A^)`` with ``A = A^_``, by scanning every subset of the objects."""
    if ctx.n_objects > CONCEPT_LIMIT:
        raise SizeLimitError(f"powerset scan limited to {CONCEPT_LIMIT} objects")
    return {Concept(_mask(a), _mask(b)) for a, b in _Ctx(ctx).concepts()}


def _pre(f, s):
    return frozenset(x for x, y in enumerate(f) if y in s)


def _img(f, s):
    return frozenset(f[x] for x in s)


def bf_separately_continuous(p: MappingPair) -> bool:
    K, L = _Ctx(p.source), _Ctx(p.target)
    ext, itt = K.extents(), K.intents()
    return all(_pre(p.alpha, c) in ext for c in L.extents()) and all(_pre(p.beta, d) in itt for d in L.intents())


def bf_conceptual(p: MappingPair) -> bool:
    """Separately continuous and concept preserving, from the definitions."""
    K, L = _Ctx(p.source), _Ctx(p.target)
    lc = L.concepts()
    preserving = all((L.down(_img(p.beta, b)), L.up(_img(p.alpha, a))) in lc for a, b in K.concepts())
    return bf_separately_continuous(p) and preserving


def bf_concept_continuous(p: MappingPair) -> bool:
    K, L = _Ctx(p.source), _Ctx(p.target)
    kc = K.concepts()
    return all((_pre(p.alpha, c), _pre(p.beta, d)) in kc for c, d in L.concepts())


def bf_lifts(p: MappingPair) -> tuple[dict, dict]:
    """``a->`` and ``b->`` as dicts between concepts (pairs of frozensets)."""
    K, L = _Ctx(p.source), _Ctx(p.target)
    fa, fb = {}, {}
    for a, b in K.concepts():
        ia = L.up(_img(p.alpha, a))
        fa[(a, b)] = (L.down(ia), ia)
        eb = L.down(_img(p.beta, b))
        fb[(a, b)] = (eb, L.up(eb))
    return fa, fb


def bf_lift_is_complete_hom(p: MappingPair, f: dict) -> bool:
    """Every join and meet of every subset of source concepts is preserved."""
    K, L = _Ctx(p.source), _Ctx(p.target)
    for sub in _powerset(K.concepts()):
        if f[K.join(sub)] != L.join([f[c] for c in sub]):
            return False
        if f[K.meet(sub)] != L.meet([f[c] for c in sub]):
            return False
    return True


def bf_lifts_commute_with_units(p: MappingPair) -> bool:
    K, L = _Ctx(p.source), _Ctx(p.target)
    fa, fb = bf_lifts(p)

    def gamma(ctx, g):
        b = ctx.up({g})
        return (ctx.down(b), b)

    def mu(ctx, m):
        a = ctx.down({m})
        return (a, ctx.up(a))

    return all(fa[gamma(K, g)] == gamma(L, h) for g, h in enumerate(p.alpha)) and all(
        fb[mu(K, m)] == mu(L, n) for m, n in enumerate(p.beta)
    )


# ---------------------------------------------------------------------------
# maps between posets


def brute_force_join_preserving(f: MonoMap) -> bool:
    """Every existing join of every subset is sent to the join of the image."""
    p, q = f.source, f.target

    def sup(poset, s):
        ub = [y for y in range(poset.size) if all(poset.leq(x, y) for x in s)]
        least = [y for y in ub if all(poset.leq(y, z) for z in ub)]
        return least[0] if least else None

    for s in _powerset(range(p.size)):
        j = sup(p, s)
        if j is not None and sup(q, [f.table[x] for x in s]) != f.table[j]:
            return False
    return True


def brute_force_meet_preserving(f: MonoMap) -> bool:
    return brute_force_join_preserving(MonoMap(f.source.dual(), f.target.dual(), f.table))


# ---------------------------------------------------------------------------
# enumerators


def enumerate_contexts(g_max: int, m_max: int) -> Iterator[Context]:
    """Every context with at most ``g_max`` objects and ``m_max`` attributes.

    Shapes come in order of (|G|, |M|); relations of a shape in increasing
    order of their bit encoding. Objects are named g1.., attributes m1...
    """
    if g_max > CONTEXT_LIMIT or m_max > CONTEXT_LIMIT:
        raise SizeLimitError(f"exhaustive contexts limited to {CONTEXT_LIMIT}x{CONTEXT_LIMIT}")
    for g in range(g_max + 1):
        for m in range(m_max + 1):
            yield from enumerate_shape(g, m)


def enumerate_shape(g: int, m: int) -> Iterator[Context]:
    objs = [f"g{i + 1}" for i in range(g)]
    attrs = [f"m{i + 1}" for i in range(m)]
    for code in range(1 << (g * m)):
        rows = [(code >> (i * m)) & ((1 << m) - 1) for i in range(g)]
        yield Context(objs, attrs, rows)


def enumerate_pairs(k: Context, l: Context) -> Iterator[MappingPair]:
    """All ``|H|^|G| * |N|^|M|`` mapping pairs from ``k`` to ``l``."""
    for alpha in product(range(l.n_objects), repeat=k.n_objects):
        for beta in product(range(l.n_attributes), repeat=k.n_attributes):
            yield MappingPair(k, l, alpha, beta)


def enumerate_maps(p: Poset, q: Poset) -> Iterator[MonoMap]:
    """All functions (monotone or not) between the carriers."""
    for table in product(range(q.size), repeat=p.size):
        yield MonoMap(p, q, table)


def _triangular_orders(n: int, fixed_bottom_top: bool = False):
    """Transitive relations with ``x <= y`` only for ``x < y`` indexwise (plus reflexivity).

    Every finite poset is isomorphic to one of these (label along a linear
    extension). With ``fixed_bottom_top`` element 0 is below and element n-1
    above everything.
    """
    slots = [(x, y) for y in range(n) for x in range(y)]
    if fixed_bottom_top and n >= 2:
        forced = {(0, y) for y in range(1, n)} | {(x, n - 1) for x in range(n - 1)}
        free = [s for s in slots if s not in forced]
    else:
        forced, free = set(), slots
    for code in range(1 << len(free)):
        rel = set(forced)
        rel.update(s for i, s in enumerate(free) if code >> i & 1)
        downs = [1 << y for y in range(n)]
        for x, y in rel:
            downs[y] |= 1 << x
        ok = True
        for y in range(n):
            for x in range(n):
                if downs[y] >> x & 1 and downs[x] & ~downs[y]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield downs


def enumerate_posets(n: int) -> Iterator[Poset]:
    """Pairwise non-isomorphic posets on exactly ``n`` elements."""
    if n > POSET_LIMIT:
        raise SizeLimitError(f"poset enumeration limited to {POSET_LIMIT} elements")
    seen = set()
    for downs in _triangular_orders(n):
        p = Poset([str(i) for i in range(n)], downs=downs)
        key = canonical_form(p)
        if key not in seen:
            seen.add(key)
            yield p


def enumerate_lattices(n_max: int, n_min: int = 1) -> Iterator[FiniteLattice]:
    """Pairwise non-isomorphic lattices with ``n_min`` to ``n_max`` elements."""
    if n_max > LATTICE_LIMIT:
        raise SizeLimitError(f"lattice enumeration limited to {LATTICE_LIMIT} elements")
    for n in range(max(n_min, 1), n_max + 1):
        seen = set()
        for downs in _triangular_orders(n, fixed_bottom_top=True):
            p = Poset([str(i) for i in range(n)], downs=downs)
            if not _has_all_binary_bounds(p):
                continue
            key = canonical_form(p)
            if key not in seen:
                seen.add(key)
                yield FiniteLattice.from_poset(p)


def _has_all_binary_bounds(p: Poset) -> bool:
    n = p.size
    return all(
        p.sup((1 << x) | (1 << y)) is not None and p.inf((1 << x) | (1 << y)) is not None
        for x in range(n)
        for y in range(x + 1, n)
    )


# ---------------------------------------------------------------------------
# pseudo-random contexts


class SplitMix64:
    """The SplitMix64 generator (Steele, Lea, Flood 2014), 64-bit state."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def below(self, n: int) -> int:
        return self.next_u64() % n


def random_context(g_size: int, m_size: int, density: float, seed: int) -> Context:
    """Each cell is incident iff the next uniform draw is below ``density`` (row-major)."""
    rng = SplitMix64(seed)
    rows = []
    for _ in range(g_size):
        r = 0
        for m in range(m_size):
            if rng.random() < density:
                r |= 1 << m
        rows.append(r)
    return Context([f"g{i + 1}" for i in range(g_size)], [f"m{i + 1}" for i in range(m_size)], rows)


def random_contexts(count: int, g_max: int, m_max: int, seed: int) -> Iterator[Context]:
    """``count`` contexts with random shape (1..max) and density, from one seed."""
    rng = SplitMix64(seed)
    for _ in range(count):
        g = 1 + rng.below(g_max)
        m = 1 + rng.below(m_max)
        density = rng.random()
        yield random_context(g, m, density, rng.next_u64())
