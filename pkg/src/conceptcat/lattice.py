"""Concept lattices, standard and base contexts, doubly based lattices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import bits
from .adjoints import MonoMap, is_isomorphism
from .context import Concept, Context, is_purified
from .errors import ConceptCatError, LatticeError
from .order import FiniteLattice, Poset, lower_cut, upper_cut  # noqa: F401  (re-exported cuts)


def next_closure(ctx: Context, intent: int) -> int | None:
    """The lectically next intent after ``intent``, or None after the last one.

    Attribute 0 is the most significant position of the lectic order.
    """
    n = ctx.n_attributes
    for i in range(n - 1, -1, -1):
        bit = 1 << i
        if intent & bit:
            continue
        prefix = intent & (bit - 1)
        candidate = ctx.intent_closure(prefix | bit)
        if candidate & (bit - 1) == prefix:
            return candidate
    return None


def lectic_intents(ctx: Context):
    b = ctx.intent_closure(0)
    while b is not None:
        yield b
        b = next_closure(ctx, b)


@dataclass(frozen=True, eq=False)
class ConceptLattice:
    """The concepts of ``context`` in lectic order of their intents.

    ``lattice`` orders them by extent inclusion; ``gamma[g]`` and ``mu[m]``
    are the indices of the object and attribute concepts.
    """

    context: Context
    concepts: tuple[Concept, ...]
    lattice: FiniteLattice
    gamma: tuple[int, ...]
    mu: tuple[int, ...]

    def __len__(self):
        return len(self.concepts)

    @cached_property
    def by_extent(self) -> dict[int, int]:
        return {c.extent: i for i, c in enumerate(self.concepts)}

    @cached_property
    def by_intent(self) -> dict[int, int]:
        return {c.intent: i for i, c in enumerate(self.concepts)}

    @cached_property
    def gamma_image(self) -> int:
        return bits.mask(self.gamma)

    @cached_property
    def mu_image(self) -> int:
        return bits.mask(self.mu)

    def concept_of_extent(self, extent: int) -> int:
        return self.by_extent[extent]

    def concept_of_intent(self, intent: int) -> int:
        return self.by_intent[intent]

    def concept_set(self) -> frozenset[Concept]:
        return frozenset(self.concepts)


def _concept_label(ctx: Context, c: Concept) -> str:
    return "{" + ",".join(ctx.objects[g] for g in bits.members(c.extent)) + "}"


@lru_cache(maxsize=8192)
def build_concept_lattice(ctx: Context) -> ConceptLattice:
    concepts = tuple(Concept(ctx.down(b), b) for b in lectic_intents(ctx))
    n = len(concepts)
    by_extent = {c.extent: i for i, c in enumerate(concepts)}
    by_intent = {c.intent: i for i, c in enumerate(concepts)}
    downs = []
    for c in concepts:
        downs.append(bits.mask(i for i, d in enumerate(concepts) if bits.is_subset(d.extent, c.extent)))
    join = tuple(tuple(by_intent[concepts[x].intent & concepts[y].intent] for y in range(n)) for x in range(n))
    meet = tuple(tuple(by_extent[concepts[x].extent & concepts[y].extent] for y in range(n)) for x in range(n))
    labels = [_concept_label(ctx, c) for c in concepts]
    lattice = FiniteLattice(labels, downs=downs, _tables=(join, meet))
    gamma = tuple(by_intent[r] for r in ctx.rows)
    mu = tuple(by_extent[c] for c in ctx.cols)
    return ConceptLattice(ctx, concepts, lattice, gamma, mu)


def complete_context(lat: Poset) -> Context:
    """``(L, L, <=)``."""
    labels = [str(x) for x in lat.labels]
    return Context(labels, labels, lat.ups)


def join_irreducibles(lat: FiniteLattice) -> int:
    """Mask of the elements that are not the join of the elements strictly below them."""
    out = 0
    for x in range(lat.size):
        if lat.join_of(lat.downs[x] & ~(1 << x)) != x:
            out |= 1 << x
    return out


def meet_irreducibles(lat: FiniteLattice) -> int:
    out = 0
    for x in range(lat.size):
        if lat.meet_of(lat.ups[x] & ~(1 << x)) != x:
            out |= 1 << x
    return out


def is_irreducibly_bigenerated(lat: FiniteLattice) -> bool:
    return lat.is_join_dense(join_irreducibles(lat)) and lat.is_meet_dense(meet_irreducibles(lat))


def _restricted_context(lat: Poset, objs: list[int], attrs: list[int], obj_names=None, attr_names=None) -> Context:
    rows = [bits.mask(j for j, m in enumerate(attrs) if lat.leq(g, m)) for g in objs]
    if obj_names is None:
        obj_names = [str(lat.labels[g]) for g in objs]
    if attr_names is None:
        attr_names = [str(lat.labels[m]) for m in attrs]
    return Context(obj_names, attr_names, rows)


def standard_context(lat: FiniteLattice) -> Context:
    """``(J(L), M(L), <=)``."""
    return _restricted_context(lat, list(bits.members(join_irreducibles(lat))), list(bits.members(meet_irreducibles(lat))))


@dataclass(frozen=True, eq=False)
class DoublyBasedLattice:
    """A finite lattice with a join-dense and a meet-dense subset (as masks)."""

    lattice: FiniteLattice
    join_base: int
    meet_base: int

    def __post_init__(self):
        if not self.lattice.is_join_dense(self.join_base):
            raise LatticeError("join base is not join-dense")
        if not self.lattice.is_meet_dense(self.meet_base):
            raise LatticeError("meet base is not meet-dense")

    @property
    def join_list(self) -> list[int]:
        return list(bits.members(self.join_base))

    @property
    def meet_list(self) -> list[int]:
        return list(bits.members(self.meet_base))

    def __eq__(self, other):
        if not isinstance(other, DoublyBasedLattice):
            return NotImplemented
        return (self.lattice, self.join_base, self.meet_base) == (other.lattice, other.join_base, other.meet_base)

    def __hash__(self):
        return hash((self.lattice, self.join_base, self.meet_base))


def doubly_based_of_context(ctx: Context) -> DoublyBasedLattice:
    cl = build_concept_lattice(ctx)
    return DoublyBasedLattice(cl.lattice, cl.gamma_image, cl.mu_image)


def base_context(k: DoublyBasedLattice, object_names=None, attribute_names=None) -> Context:
    """``(J, M, <=)`` of a doubly based lattice; always purified."""
    return _restricted_context(k.lattice, k.join_list, k.meet_list, object_names, attribute_names)


def counit(lat: FiniteLattice) -> MonoMap:
    """The isomorphism from the concept lattice of ``(L, L, <=)`` back onto ``L``.

    Every concept of the complete context has extent ``down(x)`` and intent
    ``up(x)`` for a unique ``x``; it is sent to that ``x``.
    """
    cl = build_concept_lattice(complete_context(lat))
    index = {d: x for x, d in enumerate(lat.downs)}
    table = []
    for c in cl.concepts:
        x = index.get(c.extent)
        if x is None or lat.ups[x] != c.intent:
            raise ConceptCatError(f"concept {c} of the complete context is not of the form (down x, up x)")
        table.append(x)
    eps = MonoMap(cl.lattice, lat, table)
    if not is_isomorphism(eps):
        raise ConceptCatError("counit is not an isomorphism")
    return eps


def iota(k: DoublyBasedLattice) -> MonoMap:
    """``x -> (J & down(x), M & up(x))`` into the concept lattice of the base context."""
    ctx = base_context(k)
    cl = build_concept_lattice(ctx)
    lat = k.lattice
    js, ms = k.join_list, k.meet_list
    table = []
    for x in range(lat.size):
        extent = bits.mask(p for p, j in enumerate(js) if lat.leq(j, x))
        intent = bits.mask(q for q, m in enumerate(ms) if lat.leq(x, m))
        if not ctx.is_concept(extent, intent):
            raise ConceptCatError(f"iota({lat.labels[x]!r}) is not a concept")
        table.append(cl.concept_of_extent(extent))
    f = MonoMap(lat, cl.lattice, table)
    if not is_isomorphism(f):
        raise ConceptCatError("iota is not an isomorphism")
    if f.image(k.join_base) != cl.gamma_image or f.image(k.meet_base) != cl.mu_image:
        raise ConceptCatError("iota does not carry the bases onto the object/attribute concepts")
    return f


def _group_names(names, keys) -> dict[int, str]:
    groups: dict[int, list[str]] = {}
    for name, key in zip(names, keys):
        groups.setdefault(key, []).append(name)
    return {key: "/".join(v) for key, v in groups.items()}


def purify(ctx: Context) -> Context:
    """The base context of the doubly based concept lattice, with merged names."""
    k = doubly_based_of_context(ctx)
    cl = build_concept_lattice(ctx)
    obj_names = _group_names(ctx.objects, cl.gamma)
    attr_names = _group_names(ctx.attributes, cl.mu)
    out = base_context(k, [obj_names[j] for j in k.join_list], [attr_names[m] for m in k.meet_list])
    if len(set(out.objects)) != out.n_objects or len(set(out.attributes)) != out.n_attributes:
        out = base_context(k)
    return out


def reduce(ctx: Context) -> Context:
    """The standard context of the concept lattice, named after the original objects/attributes."""
    cl = build_concept_lattice(ctx)
    lat = cl.lattice
    js = list(bits.members(join_irreducibles(lat)))
    ms = list(bits.members(meet_irreducibles(lat)))
    obj_names = _group_names(ctx.objects, cl.gamma)
    attr_names = _group_names(ctx.attributes, cl.mu)
    try:
        return _restricted_context(lat, js, ms, [obj_names[j] for j in js], [attr_names[m] for m in ms])
    except (KeyError, ValueError):
        return _restricted_context(lat, js, ms)


def is_reduced(ctx: Context) -> bool:
    if not is_purified(ctx):
        return False
    cl = build_concept_lattice(ctx)
    ji = join_irreducibles(cl.lattice)
    mi = meet_irreducibles(cl.lattice)
    return bits.is_subset(cl.gamma_image, ji) and bits.is_subset(cl.mu_image, mi)


def dm_completion(p: Poset) -> ConceptLattice:
    """Dedekind-MacNeille completion as the concept lattice of ``(P, P, <=)``."""
    return build_concept_lattice(complete_context(p))
