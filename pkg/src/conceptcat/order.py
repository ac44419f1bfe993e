"""Finite posets and finite (hence complete) lattices over bitmask order rows."""

from __future__ import annotations

from functools import cached_property
from typing import Hashable, Iterable, Sequence

from . import bits
from .errors import DimensionError, LatticeError


class Poset:
    """A finite partial order.

    ``downs[x]`` is the mask of elements below or equal to ``x``; ``ups[x]``
    the mask of elements above or equal to it.
    """

    def __init__(self, labels: Sequence[Hashable], leq: Sequence[Sequence[bool]] | None = None, *, downs=None):
        self.labels = tuple(labels)
        n = len(self.labels)
        if downs is None:
            if leq is None:
                raise TypeError("need an order matrix or down masks")
            if len(leq) != n or any(len(row) != n for row in leq):
                raise DimensionError("order matrix must be |L| x |L|")
            # leq[x][y] means x <= y
            downs = [bits.mask(x for x in range(n) if leq[x][y]) for y in range(n)]
        self.downs = tuple(downs)
        if len(self.downs) != n:
            raise DimensionError("one down mask per element required")
        self._validate_order()
        ups = [0] * n
        for y, d in enumerate(self.downs):
            for x in bits.members(d):
                ups[x] |= 1 << y
        self.ups = tuple(ups)

    def _validate_order(self) -> None:
        n = len(self.labels)
        limit = 1 << n
        for x, d in enumerate(self.downs):
            if d < 0 or d >= limit:
                raise DimensionError(f"down mask of element {x} out of range")
            if not d >> x & 1:
                raise LatticeError(f"order is not reflexive at {self.labels[x]!r}")
            for y in bits.members(d):
                if y != x and self.downs[y] >> x & 1:
                    raise LatticeError(f"order is not antisymmetric at {self.labels[x]!r}, {self.labels[y]!r}")
                if not bits.is_subset(self.downs[y], d):
                    raise LatticeError(f"order is not transitive through {self.labels[y]!r}")

    @classmethod
    def from_relation(cls, labels: Sequence[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]):
        """Reflexive-transitive closure of the given ``x <= y`` pairs."""
        index = {v: i for i, v in enumerate(labels)}
        n = len(labels)
        downs = [1 << i for i in range(n)]
        for x, y in pairs:
            downs[index[y]] |= 1 << index[x]
        changed = True
        while changed:
            changed = False
            for y in range(n):
                d = downs[y]
                for x in bits.members(d):
                    d |= downs[x]
                if d != downs[y]:
                    downs[y] = d
                    changed = True
        return cls(labels, downs=downs)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and self.downs == other.downs

    def __hash__(self):
        return hash((self.labels, self.downs))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.labels)})"

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def all(self) -> int:
        return bits.full(len(self.labels))

    def leq(self, x: int, y: int) -> bool:
        return bool(self.downs[y] >> x & 1)

    def leq_matrix(self) -> list[list[bool]]:
        n = len(self.labels)
        return [[self.leq(x, y) for y in range(n)] for x in range(n)]

    def index(self, label) -> int:
        return self.labels.index(label)

    def upper_bounds(self, a: int) -> int:
        out = self.all
        for x in bits.members(a):
            out &= self.ups[x]
        return out

    def lower_bounds(self, b: int) -> int:
        out = self.all
        for x in bits.members(b):
            out &= self.downs[x]
        return out

    def least(self, s: int) -> int | None:
        """The least element of the set ``s`` if it has one."""
        for x in bits.members(s):
            if bits.is_subset(s, self.ups[x]):
                return x
        return None

    def greatest(self, s: int) -> int | None:
        for x in bits.members(s):
            if bits.is_subset(s, self.downs[x]):
                return x
        return None

    def sup(self, s: int) -> int | None:
        return self.least(self.upper_bounds(s))

    def inf(self, s: int) -> int | None:
        return self.greatest(self.lower_bounds(s))

    @cached_property
    def covers(self) -> tuple[int, ...]:
        """``covers[x]``: mask of upper covers of ``x``."""
        out = []
        for x in range(len(self.labels)):
            above = self.ups[x] & ~(1 << x)
            cov = 0
            for y in bits.members(above):
                between = above & self.downs[y] & ~(1 << y)
                if not between:
                    cov |= 1 << y
            out.append(cov)
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[int, ...]:
        out = [0] * len(self.labels)
        for x, c in enumerate(self.covers):
            for y in bits.members(c):
                out[y] |= 1 << x
        return tuple(out)

    def dual(self) -> "Poset":
        return Poset(self.labels, downs=self.ups)

    @cached_property
    def lower_cuts(self) -> tuple[int, ...]:
        """All sets ``A^{ul}`` (lower bounds of upper bounds), sorted by mask."""
        return _intersection_closure(self.downs, self.all)

    @cached_property
    def upper_cuts(self) -> tuple[int, ...]:
        return _intersection_closure(self.ups, self.all)


def _intersection_closure(generators: Sequence[int], top: int) -> tuple[int, ...]:
    family = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for s in frontier:
            for g in generators:
                t = s & g
                if t not in family:
                    family.add(t)
                    nxt.append(t)
        frontier = nxt
    return tuple(sorted(family))


def lower_cut(p: Poset, a: int) -> int:
    """The lower cut generated by ``a``: the intersection of all principal ideals containing it."""
    return p.lower_bounds(p.upper_bounds(a))


def upper_cut(p: Poset, b: int) -> int:
    return p.upper_bounds(p.lower_bounds(b))


class FiniteLattice(Poset):
    """A finite lattice with precomputed join and meet tables.

    Order validity and existence of every binary join and meet (plus bounds)
    are checked on construction.
    """

    def __init__(self, labels, leq=None, *, downs=None, _tables=None):
        super().__init__(labels, leq, downs=downs)
        n = len(self.labels)
        if n == 0:
            raise LatticeError("a complete lattice has at least one element")
        if _tables is not None:
            self.join, self.meet = _tables
        else:
            join = [[0] * n for _ in range(n)]
            meet = [[0] * n for _ in range(n)]
            for x in range(n):
                for y in range(x, n):
                    j = self.least(self.ups[x] & self.ups[y])
                    m = self.greatest(self.downs[x] & self.downs[y])
                    if j is None:
                        raise LatticeError(f"no join of {self.labels[x]!r} and {self.labels[y]!r}")
                    if m is None:
                        raise LatticeError(f"no meet of {self.labels[x]!r} and {self.labels[y]!r}")
                    join[x][y] = join[y][x] = j
                    meet[x][y] = meet[y][x] = m
            self.join = tuple(map(tuple, join))
            self.meet = tuple(map(tuple, meet))
        bottom = self.least(self.all)
        top = self.greatest(self.all)
        if bottom is None or top is None:
            raise LatticeError("lattice lacks a bottom or top")
        self.bottom = bottom
        self.top = top

    @classmethod
    def from_poset(cls, p: Poset) -> "FiniteLattice":
        return cls(p.labels, downs=p.downs)

    def join_of(self, s: int) -> int:
        out = self.bottom
        for x in bits.members(s):
            out = self.join[out][x]
        return out

    def meet_of(self, s: int) -> int:
        out = self.top
        for x in bits.members(s):
            out = self.meet[out][x]
        return out

    def join_all(self, xs: Iterable[int]) -> int:
        out = self.bottom
        for x in xs:
            out = self.join[out][x]
        return out

    def meet_all(self, xs: Iterable[int]) -> int:
        out = self.top
        for x in xs:
            out = self.meet[out][x]
        return out

    def dual(self) -> "FiniteLattice":
        return FiniteLattice(self.labels, downs=self.ups, _tables=(self.meet, self.join))

    def is_join_dense(self, s: int) -> bool:
        return all(self.join_of(s & self.downs[x]) == x for x in range(self.size))

    def is_meet_dense(self, s: int) -> bool:
        return all(self.meet_of(s & self.ups[x]) == x for x in range(self.size))

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        r = [0] * self.size
        order = sorted(range(self.size), key=lambda x: bits.count(self.downs[x]))
        for x in order:
            for y in bits.members(self.covers[x]):
                r[y] = max(r[y], r[x] + 1)
        return tuple(r)


def chain(n: int) -> FiniteLattice:
    labels = [str(i) for i in range(n)]
    return FiniteLattice(labels, downs=[bits.full(i + 1) for i in range(n)])


def boolean_lattice(k: int) -> FiniteLattice:
    """The lattice of subsets of a ``k``-element set, labelled by bit strings."""
    n = 1 << k
    labels = ["{" + ",".join(str(i) for i in bits.members(s)) + "}" for s in range(n)]
    downs = [bits.mask(t for t in range(n) if t & ~s == 0) for s in range(n)]
    return FiniteLattice(labels, downs=downs)


def _signature(p: Poset, x: int):
    return (
        bits.count(p.downs[x]),
        bits.count(p.ups[x]),
        bits.count(p.covers[x]),
        bits.count(p.lower_covers[x]),
    )


def find_isomorphism(p: Poset, q: Poset) -> tuple[int, ...] | None:
    """An order isomorphism ``p -> q`` as a table, or None.

    Backtracking over bijections restricted to elements with equal
    (down-set size, up-set size, Hasse degrees) signatures.
    """
    n = p.size
    if n != q.size:
        return None
    sp = [_signature(p, x) for x in range(n)]
    sq = [_signature(q, x) for x in range(n)]
    if sorted(sp) != sorted(sq):
        return None
    order = sorted(range(n), key=lambda x: (sum(1 for s in sq if s == sp[x]), sp[x]))
    table = [-1] * n
    used = [False] * n

    def consistent(x: int, y: int) -> bool:
        for x2 in range(n):
            y2 = table[x2]
            if y2 < 0:
                continue
            if p.leq(x, x2) != q.leq(y, y2) or p.leq(x2, x) != q.leq(y2, y):
                return False
        return True

    def search(i: int) -> bool:
        if i == n:
            return True
        x = order[i]
        for y in range(n):
            if not used[y] and sq[y] == sp[x] and consistent(x, y):
                used[y] = True
                table[x] = y
                if search(i + 1):
                    return True
                used[y] = False
                table[x] = -1
        return False

    if search(0):
        return tuple(table)
    return None


def isomorphic(p: Poset, q: Poset) -> bool:
    return find_isomorphism(p, q) is not None


def canonical_form(p: Poset) -> tuple:
    """An isomorphism-invariant key (lexicographically least relabelled order), for small posets."""
    from itertools import permutations

    n = p.size
    best = None
    sig = [_signature(p, x) for x in range(n)]
    for perm in permutations(range(n)):
        # perm[i] = element placed at position i; only signature-sorted placements
        if any(sig[perm[i]] > sig[perm[i + 1]] for i in range(n - 1)):
            continue
        pos = {x: i for i, x in enumerate(perm)}
        key = tuple(sorted((pos[x], pos[y]) for y in range(n) for x in bits.members(p.downs[y])))
        if best is None or key < best:
            best = key
    return (n, tuple(sorted(sig)), best)
