"""Finite formal contexts, derivation operators and specialization orders.

All algebra is index based: object sets and attribute sets are ints used as
bit vectors over the context's objects (resp. attributes). Names only matter
at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence, Union

from . import bits
from .errors import DimensionError, OwnershipError


class Context:
    """A finite formal context ``(G, M, I)``.

    ``rows[g]`` is the attribute mask ``g^I``; ``cols[m]`` the object mask
    ``m_I``. Instances are immutable and compare by value.
    """

    __slots__ = ("objects", "attributes", "rows", "__dict__")

    def __init__(self, objects: Sequence[str], attributes: Sequence[str], rows: Sequence[int]):
        objects = tuple(objects)
        attributes = tuple(attributes)
        rows = tuple(int(r) for r in rows)
        if len(set(objects)) != len(objects):
            raise ValueError("object names must be pairwise distinct")
        if len(set(attributes)) != len(attributes):
            raise ValueError("attribute names must be pairwise distinct")
        if len(rows) != len(objects):
            raise DimensionError(f"{len(rows)} incidence rows for {len(objects)} objects")
        limit = 1 << len(attributes)
        for g, r in enumerate(rows):
            if r < 0 or r >= limit:
                raise DimensionError(f"row {g} does not fit {len(attributes)} attributes")
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        if name in Context.__slots__:
            raise AttributeError("Context is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def from_matrix(cls, objects, attributes, matrix: Iterable[Iterable[bool]]) -> "Context":
        matrix = [list(row) for row in matrix]
        if len(matrix) != len(objects) or any(len(row) != len(attributes) for row in matrix):
            raise DimensionError("incidence matrix must be |objects| x |attributes|")
        return cls(objects, attributes, [bits.mask(j for j, x in enumerate(row) if x) for row in matrix])

    @classmethod
    def from_pairs(cls, objects, attributes, pairs: Iterable[tuple[str, str]]) -> "Context":
        gi = {g: i for i, g in enumerate(objects)}
        mi = {m: j for j, m in enumerate(attributes)}
        rows = [0] * len(objects)
        for g, m in pairs:
            rows[gi[g]] |= 1 << mi[m]
        return cls(objects, attributes, rows)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Context):
            return NotImplemented
        return (self.objects, self.attributes, self.rows) == (other.objects, other.attributes, other.rows)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.objects, self.attributes, self.rows))

    def __repr__(self):
        rows = ", ".join(
            "".join("X" if r >> m & 1 else "." for m in range(self.n_attributes)) for r in self.rows
        )
        return f"Context({self.n_objects}x{self.n_attributes}: {rows})"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @cached_property
    def all_objects(self) -> int:
        return bits.full(len(self.objects))

    @cached_property
    def all_attributes(self) -> int:
        return bits.full(len(self.attributes))

    @cached_property
    def cols(self) -> tuple[int, ...]:
        cols = [0] * len(self.attributes)
        for g, r in enumerate(self.rows):
            for m in bits.members(r):
                cols[m] |= 1 << g
        return tuple(cols)

    @cached_property
    def transpose(self) -> "Context":
        """The dual context ``(M, G, I^-1)``; its extents are our intents."""
        t = Context(self.attributes, self.objects, self.cols)
        t.__dict__["transpose"] = self
        return t

    def incident(self, g: int, m: int) -> bool:
        return bool(self.rows[g] >> m & 1)

    def matrix(self) -> list[list[bool]]:
        return [[bool(r >> m & 1) for m in range(self.n_attributes)] for r in self.rows]

    def _check_objects(self, a: int) -> None:
        if a < 0 or a >> len(self.objects):
            raise DimensionError(f"object set {a:#b} outside {len(self.objects)} objects")

    def _check_attributes(self, b: int) -> None:
        if b < 0 or b >> len(self.attributes):
            raise DimensionError(f"attribute set {b:#b} outside {len(self.attributes)} attributes")

    # derivation operators on masks

    def up(self, a: int) -> int:
        """``A^I``: attributes shared by every object of ``a``."""
        self._check_objects(a)
        out = self.all_attributes
        rows = self.rows
        while a:
            low = a & -a
            out &= rows[low.bit_length() - 1]
            a ^= low
        return out

    def down(self, b: int) -> int:
        """``B_I``: objects having every attribute of ``b``."""
        self._check_attributes(b)
        out = self.all_objects
        cols = self.cols
        while b:
            low = b & -b
            out &= cols[low.bit_length() - 1]
            b ^= low
        return out

    def extent_closure(self, a: int) -> int:
        return self.down(self.up(a))

    def intent_closure(self, b: int) -> int:
        return self.up(self.down(b))

    def is_extent(self, a: int) -> bool:
        return self.extent_closure(a) == a

    def is_intent(self, b: int) -> bool:
        return self.intent_closure(b) == b

    def is_concept(self, a: int, b: int) -> bool:
        return self.down(b) == a and self.up(a) == b

    @cached_property
    def extents(self) -> tuple[int, ...]:
        from .lattice import build_concept_lattice

        return tuple(c.extent for c in build_concept_lattice(self).concepts)

    @cached_property
    def intents(self) -> tuple[int, ...]:
        from .lattice import build_concept_lattice

        return tuple(c.intent for c in build_concept_lattice(self).concepts)

    # convenience for named sets

    def objset(self, items: Iterable[Union[int, str]] = ()) -> "ObjSet":
        return ObjSet(self, _index_mask(items, self.objects))

    def attrset(self, items: Iterable[Union[int, str]] = ()) -> "AttrSet":
        return AttrSet(self, _index_mask(items, self.attributes))

    def restrict(self, objects: int, attributes: int) -> "Context":
        """The subcontext on the given object and attribute masks."""
        gs = list(bits.members(objects))
        ms = list(bits.members(attributes))
        rows = [bits.mask(j for j, m in enumerate(ms) if self.rows[g] >> m & 1) for g in gs]
        return Context([self.objects[g] for g in gs], [self.attributes[m] for m in ms], rows)

    def renamed(self, objects: Sequence[str], attributes: Sequence[str]) -> "Context":
        return Context(objects, attributes, self.rows)


def _index_mask(items, names) -> int:
    lookup = {n: i for i, n in enumerate(names)}
    out = 0
    for it in items:
        if isinstance(it, str):
            if it not in lookup:
                raise DimensionError(f"unknown name {it!r}")
            it = lookup[it]
        if not 0 <= it < len(names):
            raise DimensionError(f"index {it} out of range for {len(names)} elements")
        out |= 1 << it
    return out


@dataclass(frozen=True)
class _OwnedSet:
    context: Context
    bits: int

    def __post_init__(self):
        n = self._size()
        if self.bits < 0 or self.bits >> n:
            raise DimensionError(f"set {self.bits:#b} outside an index space of size {n}")

    def _size(self) -> int:
        raise NotImplementedError

    def __iter__(self):
        return bits.members(self.bits)

    def __len__(self):
        return bits.count(self.bits)

    def __contains__(self, i):
        return bool(self.bits >> i & 1)

    def __le__(self, other):
        _same_owner(self, other)
        return bits.is_subset(self.bits, other.bits)


class ObjSet(_OwnedSet):
    def _size(self):
        return self.context.n_objects

    def names(self) -> list[str]:
        return [self.context.objects[i] for i in self]


class AttrSet(_OwnedSet):
    def _size(self):
        return self.context.n_attributes

    def names(self) -> list[str]:
        return [self.context.attributes[i] for i in self]


def _same_owner(a: _OwnedSet, b: _OwnedSet) -> None:
    if type(a) is not type(b) or not (a.context is b.context or a.context == b.context):
        raise OwnershipError("sets belong to different contexts")


class Concept(NamedTuple):
    extent: int
    intent: int


def _objects_of(ctx: Context, a) -> int:
    if isinstance(a, ObjSet):
        if not (a.context is ctx or a.context == ctx):
            raise OwnershipError("object set belongs to a different context")
        return a.bits
    if isinstance(a, AttrSet):
        raise TypeError("expected an object set, got an attribute set")
    ctx._check_objects(a)
    return a


def _attributes_of(ctx: Context, b) -> int:
    if isinstance(b, AttrSet):
        if not (b.context is ctx or b.context == ctx):
            raise OwnershipError("attribute set belongs to a different context")
        return b.bits
    if isinstance(b, ObjSet):
        raise TypeError("expected an attribute set, got an object set")
    ctx._check_attributes(b)
    return b


def up(ctx: Context, a) -> AttrSet:
    return AttrSet(ctx, ctx.up(_objects_of(ctx, a)))


def down(ctx: Context, b) -> ObjSet:
    return ObjSet(ctx, ctx.down(_attributes_of(ctx, b)))


def extent_closure(ctx: Context, a) -> ObjSet:
    return ObjSet(ctx, ctx.extent_closure(_objects_of(ctx, a)))


def intent_closure(ctx: Context, b) -> AttrSet:
    return AttrSet(ctx, ctx.intent_closure(_attributes_of(ctx, b)))


def is_concept(ctx: Context, a, b) -> bool:
    return ctx.is_concept(_objects_of(ctx, a), _attributes_of(ctx, b))


def _check_index(i: int, n: int, what: str) -> None:
    if not 0 <= i < n:
        raise DimensionError(f"{what} index {i} out of range 0..{n - 1}")


def object_concept(ctx: Context, g: int) -> Concept:
    """``gamma(g) = (g^{I I}, g^I)``."""
    _check_index(g, ctx.n_objects, "object")
    intent = ctx.rows[g]
    return Concept(ctx.down(intent), intent)


def attribute_concept(ctx: Context, m: int) -> Concept:
    """``mu(m) = (m_I, m_{I I})``."""
    _check_index(m, ctx.n_attributes, "attribute")
    extent = ctx.cols[m]
    return Concept(extent, ctx.up(extent))


def obj_specialization_leq(ctx: Context, j: int, k: int) -> bool:
    """``j <= k`` iff ``k^I`` is contained in ``j^I``."""
    _check_index(j, ctx.n_objects, "object")
    _check_index(k, ctx.n_objects, "object")
    return bits.is_subset(ctx.rows[k], ctx.rows[j])


def attr_specialization_leq(ctx: Context, m: int, n: int) -> bool:
    """``m <= n`` iff ``m_I`` is contained in ``n_I``."""
    _check_index(m, ctx.n_attributes, "attribute")
    _check_index(n, ctx.n_attributes, "attribute")
    return bits.is_subset(ctx.cols[m], ctx.cols[n])


def _antisymmetric(n: int, leq) -> bool:
    return all(not (leq(i, j) and leq(j, i)) for i in range(n) for j in range(i + 1, n))


def is_purified(ctx: Context) -> bool:
    """True iff the object and attribute concept maps are injective.

    Computed both from the concept maps and from antisymmetry of the two
    specialization quasi-orders; the two must agree.
    """
    injective = len(set(ctx.rows)) == ctx.n_objects and len(set(ctx.cols)) == ctx.n_attributes
    gammas = {object_concept(ctx, g) for g in range(ctx.n_objects)}
    mus = {attribute_concept(ctx, m) for m in range(ctx.n_attributes)}
    injective_concepts = len(gammas) == ctx.n_objects and len(mus) == ctx.n_attributes
    partial = _antisymmetric(ctx.n_objects, lambda j, k: obj_specialization_leq(ctx, j, k)) and _antisymmetric(
        ctx.n_attributes, lambda m, n: attr_specialization_leq(ctx, m, n)
    )
    if not injective == injective_concepts == partial:
        from .errors import FalsificationError

        raise FalsificationError(
            "purified",
            {"distinct_rows_cols": injective, "concept_maps_injective": injective_concepts, "partial_orders": partial},
            ctx,
        )
    return injective


def find_context_isomorphism(k: Context, l: Context) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """A pair of bijections ``(alpha, beta)`` with ``g I m <=> alpha(g) J beta(m)``, or None.

    Object bijections are searched among those preserving row sizes; for each,
    the attribute bijection exists iff the column multisets agree.
    """
    if (k.n_objects, k.n_attributes) != (l.n_objects, l.n_attributes):
        return None
    if sorted(map(bits.count, k.rows)) != sorted(map(bits.count, l.rows)):
        return None
    if sorted(map(bits.count, k.cols)) != sorted(map(bits.count, l.cols)):
        return None
    n = k.n_objects
    k_deg = [bits.count(r) for r in k.rows]
    l_deg = [bits.count(r) for r in l.rows]
    candidates = [[h for h in range(n) if l_deg[h] == k_deg[g]] for g in range(n)]
    alpha = [0] * n
    used = [False] * n

    def attribute_bijection():
        # column of k mapped through alpha must equal some unused column of l
        l_cols: dict[int, list[int]] = {}
        for n_, c in enumerate(l.cols):
            l_cols.setdefault(c, []).append(n_)
        beta = []
        for c in k.cols:
            image = bits.image(tuple(alpha), c)
            pool = l_cols.get(image)
            if not pool:
                return None
            beta.append(pool.pop())
        return tuple(beta)

    def search(g):
        if g == n:
            return attribute_bijection()
        for h in candidates[g]:
            if not used[h]:
                used[h] = True
                alpha[g] = h
                found = search(g + 1)
                if found is not None:
                    return found
                used[h] = False
        return None

    beta = search(0)
    if beta is None:
        return None
    return tuple(alpha), beta


def contexts_isomorphic(k: Context, l: Context) -> bool:
    return find_context_isomorphism(k, l) is not None


def context_permutations(ctx: Context):
    """Every context obtained by permuting objects and attributes (small contexts only)."""
    for pg in permutations(range(ctx.n_objects)):
        for pm in permutations(range(ctx.n_attributes)):
            rows = [0] * ctx.n_objects
            for g, r in enumerate(ctx.rows):
                rows[pg[g]] = bits.image(pm, r)
            yield Context(ctx.objects, ctx.attributes, rows)
