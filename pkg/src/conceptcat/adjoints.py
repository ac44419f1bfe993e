"""Maps between finite posets and lattices: adjoints and their classification.

Adjoints are found as the max (resp. min) of preimage sets and then checked
against the full adjunction law ``f(p) <= q  <=>  p <= g(q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import cached_property
from typing import Sequence

from . import bits
from .errors import DimensionError
from .order import FiniteLattice, Poset


class MonoMap:
    """A total function between two finite posets given by an index table."""

    def __init__(self, source: Poset, target: Poset, table: Sequence[int]):
        table = tuple(table)
        if len(table) != source.size:
            raise DimensionError(f"map table has {len(table)} entries for {source.size} elements")
        for y in table:
            if not 0 <= y < target.size:
                raise DimensionError(f"map value {y} outside target of size {target.size}")
        self.source = source
        self.target = target
        self.table = table

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, MonoMap):
            return NotImplemented
        return self.table == other.table and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        pairs = ", ".join(f"{self.source.labels[x]}->{self.target.labels[y]}" for x, y in enumerate(self.table))
        return f"MonoMap({pairs})"

    @cached_property
    def preimages(self) -> tuple[int, ...]:
        return bits.preimage_table(self.table, self.target.size)

    def preimage(self, s: int) -> int:
        return bits.preimage(self.preimages, s)

    def image(self, s: int) -> int:
        return bits.image(self.table, s)

    @cached_property
    def range(self) -> int:
        return self.image(self.source.all)


LatticeMap = MonoMap


def identity(p: Poset) -> MonoMap:
    return MonoMap(p, p, range(p.size))


def compose(g: MonoMap, f: MonoMap) -> MonoMap:
    """``g . f``."""
    if f.target != g.source:
        raise DimensionError("maps are not composable")
    return MonoMap(f.source, g.target, [g.table[y] for y in f.table])


def is_monotone(f: MonoMap) -> bool:
    p, q = f.source, f.target
    return all(q.leq(f.table[x], f.table[y]) for y in range(p.size) for x in bits.members(p.downs[y]))


def is_order_reflecting(f: MonoMap) -> bool:
    p, q = f.source, f.target
    n = p.size
    return all(p.leq(x, y) for x in range(n) for y in range(n) if q.leq(f.table[x], f.table[y]))


def is_order_embedding(f: MonoMap) -> bool:
    return is_monotone(f) and is_order_reflecting(f)


def is_injective(f: MonoMap) -> bool:
    return len(set(f.table)) == len(f.table)


def is_surjective(f: MonoMap) -> bool:
    return f.range == f.target.all


def _law_holds(lower: MonoMap, upper: MonoMap) -> bool:
    p, q = lower.source, lower.target
    for x in range(p.size):
        for y in range(q.size):
            if q.leq(lower.table[x], y) != p.leq(x, upper.table[y]):
                return False
    return True


def upper_adjoint(f: MonoMap) -> MonoMap | None:
    """The map ``g`` with ``f(p) <= q  <=>  p <= g(q)``, or None if there is none."""
    p, q = f.source, f.target
    table = []
    for y in range(q.size):
        top = p.greatest(f.preimage(q.downs[y]))
        if top is None:
            return None
        table.append(top)
    g = MonoMap(q, p, table)
    return g if _law_holds(f, g) else None


def lower_adjoint(g: MonoMap) -> MonoMap | None:
    """The map ``f`` with ``f(p) <= q  <=>  p <= g(q)``, or None if there is none."""
    q, p = g.source, g.target
    table = []
    for x in range(p.size):
        bottom = q.least(g.preimage(p.ups[x]))
        if bottom is None:
            return None
        table.append(bottom)
    f = MonoMap(p, q, table)
    return f if _law_holds(f, g) else None


def _is_principal_ideal(p: Poset, s: int) -> bool:
    top = p.greatest(s)
    return top is not None and p.downs[top] == s


def _is_principal_filter(p: Poset, s: int) -> bool:
    bottom = p.least(s)
    return bottom is not None and p.ups[bottom] == s


def is_residuated(f: MonoMap) -> bool:
    """Preimages of principal ideals are principal ideals."""
    return all(_is_principal_ideal(f.source, f.preimage(d)) for d in f.target.downs)


def is_residual(f: MonoMap) -> bool:
    """Preimages of principal filters are principal filters."""
    return all(_is_principal_filter(f.source, f.preimage(u)) for u in f.target.ups)


def is_lower_cut_continuous(f: MonoMap) -> bool:
    cuts = set(f.source.lower_cuts)
    return all(f.preimage(c) in cuts for c in f.target.lower_cuts)


def is_upper_cut_continuous(f: MonoMap) -> bool:
    cuts = set(f.source.upper_cuts)
    return all(f.preimage(c) in cuts for c in f.target.upper_cuts)


def is_join_preserving(f: MonoMap) -> bool:
    """``f`` preserves every join that exists in its source (including the empty one).

    Between lattices, preserving the bottom and binary joins is equivalent to
    preserving all joins of a finite lattice. Between general posets every
    subset with a join is checked.
    """
    p, q = f.source, f.target
    t = f.table
    if isinstance(p, FiniteLattice) and isinstance(q, FiniteLattice):
        if t[p.bottom] != q.bottom:
            return False
        n = p.size
        for x in range(n):
            for y in range(x + 1, n):
                if t[p.join[x][y]] != q.join[t[x]][t[y]]:
                    return False
        return True
    for s in bits.subsets(p.size):
        j = p.sup(s)
        if j is not None and q.sup(f.image(s)) != t[j]:
            return False
    return True


def is_meet_preserving(f: MonoMap) -> bool:
    p, q = f.source, f.target
    t = f.table
    if isinstance(p, FiniteLattice) and isinstance(q, FiniteLattice):
        if t[p.top] != q.top:
            return False
        n = p.size
        for x in range(n):
            for y in range(x + 1, n):
                if t[p.meet[x][y]] != q.meet[t[x]][t[y]]:
                    return False
        return True
    for s in bits.subsets(p.size):
        m = p.inf(s)
        if m is not None and q.inf(f.image(s)) != t[m]:
            return False
    return True


def is_complete_hom(f: MonoMap) -> bool:
    return is_join_preserving(f) and is_meet_preserving(f)


def is_doubly_residuated(f: MonoMap) -> bool:
    g = upper_adjoint(f)
    return g is not None and upper_adjoint(g) is not None


def is_doubly_residual(f: MonoMap) -> bool:
    g = lower_adjoint(f)
    return g is not None and lower_adjoint(g) is not None


def double_upper_adjoint(f: MonoMap) -> MonoMap | None:
    g = upper_adjoint(f)
    return None if g is None else upper_adjoint(g)


def double_lower_adjoint(f: MonoMap) -> MonoMap | None:
    g = lower_adjoint(f)
    return None if g is None else lower_adjoint(g)


def has_join_dense_image(f: MonoMap) -> bool:
    q = f.target
    return all(q.sup(f.range & q.downs[y]) == y for y in range(q.size))


def has_meet_dense_image(f: MonoMap) -> bool:
    q = f.target
    return all(q.inf(f.range & q.ups[y]) == y for y in range(q.size))


def join_extension(source: FiniteLattice, target: FiniteLattice, anchors) -> MonoMap | None:
    """The join-preserving map sending each anchor ``x`` to ``y``, if there is one.

    ``anchors`` is a sequence of ``(x, y)``; the map is ``x -> sup {y : anchor x' <= x}``,
    which is the only candidate when the anchors are join-dense.
    """
    anchors = list(anchors)
    table = [target.join_all(y for a, y in anchors if source.leq(a, x)) for x in range(source.size)]
    f = MonoMap(source, target, table)
    if any(f.table[a] != y for a, y in anchors) or not is_join_preserving(f):
        return None
    return f


def is_isomorphism(f: MonoMap) -> bool:
    """Both adjoints exist and coincide; cross-checked against bijective order embedding."""
    up_ = upper_adjoint(f)
    low = lower_adjoint(f)
    by_adjoints = up_ is not None and low is not None and up_.table == low.table
    by_bijection = is_injective(f) and is_surjective(f) and is_order_embedding(f)
    if by_adjoints != by_bijection:
        from .errors import FalsificationError

        raise FalsificationError("isomorphism", {"adjoints_coincide": by_adjoints, "bijective_embedding": by_bijection}, f)
    return by_adjoints


@dataclass(frozen=True)
class MapClassification:
    monotone: bool
    order_reflecting: bool
    order_embedding: bool
    injective: bool
    surjective: bool
    join_preserving: bool
    meet_preserving: bool
    complete_hom: bool
    residuated: bool
    residual: bool
    lower_cut_continuous: bool
    upper_cut_continuous: bool
    doubly_residuated: bool
    doubly_residual: bool
    join_dense: bool
    meet_dense: bool
    isomorphism: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def classify_lattice_map(f: MonoMap) -> MapClassification:
    join_p = is_join_preserving(f)
    meet_p = is_meet_preserving(f)
    return MapClassification(
        monotone=is_monotone(f),
        order_reflecting=is_order_reflecting(f),
        order_embedding=is_order_embedding(f),
        injective=is_injective(f),
        surjective=is_surjective(f),
        join_preserving=join_p,
        meet_preserving=meet_p,
        complete_hom=join_p and meet_p,
        residuated=is_residuated(f),
        residual=is_residual(f),
        lower_cut_continuous=is_lower_cut_continuous(f),
        upper_cut_continuous=is_upper_cut_continuous(f),
        doubly_residuated=is_doubly_residuated(f),
        doubly_residual=is_doubly_residual(f),
        join_dense=has_join_dense_image(f),
        meet_dense=has_meet_dense_image(f),
        isomorphism=is_isomorphism(f),
    )
