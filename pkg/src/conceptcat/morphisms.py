"""Mapping pairs between contexts and the predicates classifying them.

Every predicate is computed through each of its equivalent characterizations
separately. ``*_forms`` functions return a :class:`Characterization` holding
the per-form results; the ``is_*`` predicates return the consensus and raise
:class:`FalsificationError` when the forms disagree.

Notation in comments: ``K = (G, M, I)`` is the source, ``L = (H, N, J)`` the
target, ``A^`` / ``B_`` the derivation operators, ``a[.]`` images and
``a-[.]`` preimages under alpha.

Forms quantified over all subsets of a carrier are skipped when the carrier
has more than ``SUBSET_LIMIT`` elements; forms quantified over pairs of
subsets when it has more than ``PAIR_LIMIT``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import bits
from .adjoints import (
    MonoMap,
    is_complete_hom,
    is_injective,
    is_isomorphism,
    is_join_preserving,
    is_meet_preserving,
    is_surjective,
    join_extension,
    lower_adjoint,
    upper_adjoint,
)
from .context import Context, is_purified
from .errors import ClassError, DimensionError, FalsificationError, NotPurifiedError
from .lattice import build_concept_lattice, complete_context
from .order import FiniteLattice, Poset

SUBSET_LIMIT = 12
PAIR_LIMIT = 6


@dataclass(frozen=True, eq=False)
class MappingPair:
    """A pair of total maps ``alpha: G -> H`` and ``beta: M -> N``."""

    source: Context
    target: Context
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        if len(self.alpha) != self.source.n_objects:
            raise DimensionError("alpha must be defined on every source object")
        if len(self.beta) != self.source.n_attributes:
            raise DimensionError("beta must be defined on every source attribute")
        if any(not 0 <= h < self.target.n_objects for h in self.alpha):
            raise DimensionError("alpha value outside the target objects")
        if any(not 0 <= n < self.target.n_attributes for n in self.beta):
            raise DimensionError("beta value outside the target attributes")

    def __eq__(self, other):
        if not isinstance(other, MappingPair):
            return NotImplemented
        return (self.alpha, self.beta, self.source, self.target) == (other.alpha, other.beta, other.source, other.target)

    def __hash__(self):
        return hash((self.alpha, self.beta, self.source, self.target))

    def __repr__(self):
        return f"MappingPair(alpha={self.alpha}, beta={self.beta}, {self.source!r} -> {self.target!r})"

    @cached_property
    def _pre_alpha(self):
        return bits.preimage_table(self.alpha, self.target.n_objects)

    @cached_property
    def _pre_beta(self):
        return bits.preimage_table(self.beta, self.target.n_attributes)

    def img_a(self, a: int) -> int:
        return bits.image(self.alpha, a)

    def img_b(self, b: int) -> int:
        return bits.image(self.beta, b)

    def pre_a(self, c: int) -> int:
        return bits.preimage(self._pre_alpha, c)

    def pre_b(self, d: int) -> int:
        return bits.preimage(self._pre_beta, d)

    @cached_property
    def dual(self) -> "MappingPair":
        """The same pair read between the transposed contexts (objects and attributes swapped)."""
        d = MappingPair(self.source.transpose, self.target.transpose, self.beta, self.alpha)
        d.__dict__["dual"] = self
        return d


def identity_pair(ctx: Context) -> MappingPair:
    return MappingPair(ctx, ctx, range(ctx.n_objects), range(ctx.n_attributes))


def compose(q: MappingPair, p: MappingPair) -> MappingPair:
    """Componentwise ``q . p``."""
    if p.target != q.source:
        raise DimensionError("mapping pairs are not composable")
    return MappingPair(p.source, q.target, [q.alpha[h] for h in p.alpha], [q.beta[n] for n in p.beta])


@dataclass(frozen=True)
class Characterization:
    """Results of several equivalent characterizations of one property."""

    claim: str
    forms: dict = field(default_factory=dict)
    instance: object = None

    @property
    def consistent(self) -> bool:
        return len(set(self.forms.values())) <= 1

    @property
    def value(self) -> bool:
        if not self.consistent:
            raise FalsificationError(self.claim, self.forms, self.instance)
        return next(iter(self.forms.values()))


def _small(n: int) -> bool:
    return n <= SUBSET_LIMIT


def _tiny(n: int) -> bool:
    return n <= PAIR_LIMIT


# ---------------------------------------------------------------------------
# extent continuity (intent continuity is the same on the dual pair)


def _extent_continuous_forms(p: MappingPair) -> dict:
    K, L = p.source, p.target
    nG = K.n_objects
    forms = {}
    forms["preimages_of_extents"] = all(K.is_extent(p.pre_a(c)) for c in L.extents)
    forms["preimages_of_attribute_extents"] = all(K.is_extent(p.pre_a(col)) for col in L.cols)

    # a(g) nJ n  ==>  g nI m for some m with a-[n_] <= m_   (exists m per failing (g, n))
    def first_order():
        for g in range(nG):
            row = L.rows[p.alpha[g]]
            for n in range(L.n_attributes):
                if row >> n & 1:
                    continue
                pre = p.pre_a(L.cols[n])
                if not any(
                    not K.rows[g] >> m & 1 and bits.is_subset(pre, K.cols[m]) for m in range(K.n_attributes)
                ):
                    return False
        return True

    forms["first_order"] = first_order()
    if _small(nG):
        forms["closure_image_equation"] = all(
            L.up(p.img_a(K.extent_closure(a))) == L.up(p.img_a(a)) for a in bits.subsets(nG)
        )
        forms["closure_image_inclusion"] = all(
            bits.is_subset(p.img_a(K.extent_closure(a)), L.extent_closure(p.img_a(a))) for a in bits.subsets(nG)
        )
    if _tiny(nG):
        # A -> B entails a[A] -> a[B]; both arrows read as B <= A^_ (closure of A)
        forms["implication_transfer"] = all(
            bits.is_subset(p.img_a(b), L.extent_closure(p.img_a(a)))
            for a in bits.subsets(nG)
            for b in bits.submasks(K.extent_closure(a))
        )
    return forms


def extent_continuous_forms(p: MappingPair) -> Characterization:
    return Characterization("extent continuous", _extent_continuous_forms(p), p)


def intent_continuous_forms(p: MappingPair) -> Characterization:
    return Characterization("intent continuous", _extent_continuous_forms(p.dual), p)


def is_extent_continuous(p: MappingPair) -> bool:
    return extent_continuous_forms(p).value


def is_intent_continuous(p: MappingPair) -> bool:
    return intent_continuous_forms(p).value


def is_separately_continuous(p: MappingPair) -> bool:
    return is_extent_continuous(p) and is_intent_continuous(p)


# ---------------------------------------------------------------------------
# density


def _extent_dense_forms(p: MappingPair) -> dict:
    K, L = p.source, p.target
    nG = K.n_objects
    forms = {}
    if _small(nG):
        reached = {L.extent_closure(p.img_a(a)) for a in bits.subsets(nG)}
        forms["closure_images"] = all(c in reached for c in L.extents)
        reached_intents = {L.up(p.img_a(a)) for a in bits.subsets(nG)}
        forms["object_intents"] = all(r in reached_intents for r in L.rows)

    # h nJ n  ==>  a(g) nJ n for some g with h^ <= a(g)^
    def first_order():
        for h in range(L.n_objects):
            for n in range(L.n_attributes):
                if L.rows[h] >> n & 1:
                    continue
                if not any(
                    not L.rows[p.alpha[g]] >> n & 1 and bits.is_subset(L.rows[h], L.rows[p.alpha[g]])
                    for g in range(nG)
                ):
                    return False
        return True

    forms["first_order"] = first_order()
    # the object concepts of the image are join-dense among the extents
    image_extents = {L.extent_closure(1 << h) for h in bits.members(p.img_a(K.all_objects))}
    forms["join_dense_extents"] = all(
        _closure_of_union(L, [e for e in image_extents if bits.is_subset(e, c)]) == c for c in L.extents
    )
    return forms


def _closure_of_union(ctx: Context, sets) -> int:
    u = 0
    for s in sets:
        u |= s
    return ctx.extent_closure(u)


def extent_dense_forms(p: MappingPair) -> Characterization:
    return Characterization("extent dense", _extent_dense_forms(p), p)


def intent_dense_forms(p: MappingPair) -> Characterization:
    return Characterization("intent dense", _extent_dense_forms(p.dual), p)


def is_extent_dense(p: MappingPair) -> bool:
    return extent_dense_forms(p).value


def is_intent_dense(p: MappingPair) -> bool:
    return intent_dense_forms(p).value


def jointly_dense_forms(p: MappingPair) -> Characterization:
    """Both partners dense, against the single first-order condition for both."""
    K, L = p.source, p.target

    def joint():
        for h in range(L.n_objects):
            for n in range(L.n_attributes):
                if L.rows[h] >> n & 1:
                    continue
                found = False
                for g in range(K.n_objects):
                    ag = p.alpha[g]
                    if not bits.is_subset(L.rows[h], L.rows[ag]):
                        continue
                    for m in range(K.n_attributes):
                        bm = p.beta[m]
                        if not L.rows[ag] >> bm & 1 and bits.is_subset(L.cols[n], L.cols[bm]):
                            found = True
                            break
                    if found:
                        break
                if not found:
                    return False
        return True

    return Characterization(
        "both dense", {"separately": is_extent_dense(p) and is_intent_dense(p), "first_order_joint": joint()}, p
    )


# ---------------------------------------------------------------------------
# fullness


def _extent_full_forms(p: MappingPair) -> dict:
    K, L = p.source, p.target
    nG = K.n_objects
    forms = {}
    if _small(nG):
        forms["definition"] = all(
            bits.is_subset(p.pre_a(L.extent_closure(p.img_a(a))), K.extent_closure(a)) for a in bits.subsets(nG)
        )

    # g nI m  ==>  a(g) nJ n for some n with a[m_] <= n_
    def first_order():
        for g in range(nG):
            for m in range(K.n_attributes):
                if K.rows[g] >> m & 1:
                    continue
                img = p.img_a(K.cols[m])
                row = L.rows[p.alpha[g]]
                if not any(not row >> n & 1 and bits.is_subset(img, L.cols[n]) for n in range(L.n_attributes)):
                    return False
        return True

    forms["first_order"] = first_order()
    if _tiny(nG):
        # a[A] -> a[B] entails A -> B
        forms["implication_reflection"] = all(
            bits.is_subset(b, K.extent_closure(a))
            for a in bits.subsets(nG)
            for b in bits.subsets(nG)
            if bits.is_subset(p.img_a(b), L.extent_closure(p.img_a(a)))
        )
    preimages = {p.pre_a(c) for c in L.extents}
    forms["extents_are_preimages"] = all(e in preimages for e in K.extents)
    return forms


def extent_full_forms(p: MappingPair) -> Characterization:
    return Characterization("extent full", _extent_full_forms(p), p)


def intent_full_forms(p: MappingPair) -> Characterization:
    return Characterization("intent full", _extent_full_forms(p.dual), p)


def is_extent_full(p: MappingPair) -> bool:
    return extent_full_forms(p).value


def is_intent_full(p: MappingPair) -> bool:
    return intent_full_forms(p).value


def extent_initial_forms(p: MappingPair) -> Characterization:
    """Continuous and full, against the two set-level descriptions of initiality."""
    K, L = p.source, p.target
    nG = K.n_objects
    forms = {"continuous_and_full": is_extent_continuous(p) and is_extent_full(p)}
    forms["extents_are_exactly_preimages"] = {p.pre_a(c) for c in L.extents} == set(K.extents)
    if _tiny(nG):
        forms["implication_equivalence"] = all(
            bits.is_subset(b, K.extent_closure(a)) == bits.is_subset(p.img_a(b), L.extent_closure(p.img_a(a)))
            for a in bits.subsets(nG)
            for b in bits.subsets(nG)
        )
    return Characterization("extent initial", forms, p)


# ---------------------------------------------------------------------------
# incidence


def _preserves_elementwise(p: MappingPair) -> bool:
    K, L = p.source, p.target
    for g in range(K.n_objects):
        row = L.rows[p.alpha[g]]
        for m in bits.members(K.rows[g]):
            if not row >> p.beta[m] & 1:
                return False
    return True


def _reflects_elementwise(p: MappingPair) -> bool:
    K, L = p.source, p.target
    for g in range(K.n_objects):
        row = L.rows[p.alpha[g]]
        for m in range(K.n_attributes):
            if row >> p.beta[m] & 1 and not K.rows[g] >> m & 1:
                return False
    return True


def _preserve_extent_inclusion(p: MappingPair) -> bool | None:
    # a[A]^_ <= b[A^]_  for all A
    K, L = p.source, p.target
    if not _small(K.n_objects):
        return None
    return all(
        bits.is_subset(L.extent_closure(p.img_a(a)), L.down(p.img_b(K.up(a)))) for a in bits.subsets(K.n_objects)
    )


def _reflect_extent_inclusion(p: MappingPair) -> bool | None:
    # a-[C^_] <= b-[C^]_  for all C
    K, L = p.source, p.target
    if not _small(L.n_objects):
        return None
    return all(
        bits.is_subset(p.pre_a(L.extent_closure(c)), K.down(p.pre_b(L.up(c)))) for c in bits.subsets(L.n_objects)
    )


def _drop_none(forms: dict) -> dict:
    return {k: v for k, v in forms.items() if v is not None}


def incidence_preserving_forms(p: MappingPair) -> Characterization:
    return Characterization(
        "incidence preserving",
        _drop_none(
            {
                "elementwise": _preserves_elementwise(p),
                "extent_inclusion": _preserve_extent_inclusion(p),
                "intent_inclusion": _preserve_extent_inclusion(p.dual),
            }
        ),
        p,
    )


def incidence_reflecting_forms(p: MappingPair) -> Characterization:
    return Characterization(
        "incidence reflecting",
        _drop_none(
            {
                "elementwise": _reflects_elementwise(p),
                "extent_inclusion": _reflect_extent_inclusion(p),
                "intent_inclusion": _reflect_extent_inclusion(p.dual),
            }
        ),
        p,
    )


def is_incidence_preserving(p: MappingPair) -> bool:
    return incidence_preserving_forms(p).value


def is_incidence_reflecting(p: MappingPair) -> bool:
    return incidence_reflecting_forms(p).value


def is_embedding(p: MappingPair) -> bool:
    return is_incidence_preserving(p) and is_incidence_reflecting(p)


# ---------------------------------------------------------------------------
# conceptual pairs


def is_concept_preserving(p: MappingPair) -> bool:
    """Each concept ``(A, B)`` of K yields the concept ``(b[B]_, a[A]^)`` of L."""
    K, L = p.source, p.target
    return all(L.is_concept(L.down(p.img_b(c.intent)), L.up(p.img_a(c.extent))) for c in build_concept_lattice(K).concepts)


def _closure_equation_objects(p: MappingPair) -> bool | None:
    # a[A]^_ = b[A^]_  for all A
    K, L = p.source, p.target
    if not _small(K.n_objects):
        return None
    return all(L.extent_closure(p.img_a(a)) == L.down(p.img_b(K.up(a))) for a in bits.subsets(K.n_objects))


def _forced_inclusion_objects(p: MappingPair) -> bool:
    # b[a-[n_]^]_ <= n_  for every target attribute n
    K, L = p.source, p.target
    return all(bits.is_subset(L.down(p.img_b(K.up(p.pre_a(col)))), col) for col in L.cols)


def _conceptual_first_order(p: MappingPair) -> bool:
    # for h nJ n there are g nI m with a-[n_] <= m_ and b-[h^] <= g^
    K, L = p.source, p.target
    for h in range(L.n_objects):
        pre_row = p.pre_b(L.rows[h])
        gs = [g for g in range(K.n_objects) if bits.is_subset(pre_row, K.rows[g])]
        for n in range(L.n_attributes):
            if L.rows[h] >> n & 1:
                continue
            pre_col = p.pre_a(L.cols[n])
            ms = [m for m in range(K.n_attributes) if bits.is_subset(pre_col, K.cols[m])]
            if not any(not K.rows[g] >> m & 1 for g in gs for m in ms):
                return False
    return True


def conceptual_forms(p: MappingPair) -> Characterization:
    preserving = is_incidence_preserving(p)
    eq_a = _closure_equation_objects(p)
    eq_b = _closure_equation_objects(p.dual)
    forms = {
        "continuous_and_concept_preserving": is_separately_continuous(p) and is_concept_preserving(p),
        "closure_equations": None if eq_a is None or eq_b is None else eq_a and eq_b,
        "forced_inclusions": preserving and _forced_inclusion_objects(p) and _forced_inclusion_objects(p.dual),
        "first_order": preserving and _conceptual_first_order(p),
    }
    return Characterization("conceptual", _drop_none(forms), p)


def is_conceptual(p: MappingPair) -> bool:
    return conceptual_forms(p).value


# ---------------------------------------------------------------------------
# concept continuous pairs


def _is_concept_continuous_def(p: MappingPair) -> bool:
    K, L = p.source, p.target
    return all(K.is_concept(p.pre_a(c.extent), p.pre_b(c.intent)) for c in build_concept_lattice(L).concepts)


def _preimage_equation_objects(p: MappingPair) -> bool | None:
    # a-[C^_] = b-[C^]_  for all C within H
    K, L = p.source, p.target
    if not _small(L.n_objects):
        return None
    return all(p.pre_a(L.extent_closure(c)) == K.down(p.pre_b(L.up(c))) for c in bits.subsets(L.n_objects))


def _generator_equation_attributes(p: MappingPair) -> bool:
    # a-[n_] = b-[n_^]_  for every target attribute n
    K, L = p.source, p.target
    return all(p.pre_a(L.cols[n]) == K.down(p.pre_b(L.intent_closure(1 << n))) for n in range(L.n_attributes))


def _image_inclusion_attributes(p: MappingPair) -> bool:
    # a[b-[n_^]_] <= n_  for every target attribute n
    K, L = p.source, p.target
    return all(
        bits.is_subset(p.img_a(K.down(p.pre_b(L.intent_closure(1 << n)))), L.cols[n]) for n in range(L.n_attributes)
    )


def _continuous_first_order(p: MappingPair) -> bool:
    K, L = p.source, p.target
    # a(g) nJ n  ==>  g nI m for some m with n_ <= b(m)_
    for g in range(K.n_objects):
        row = L.rows[p.alpha[g]]
        for n in range(L.n_attributes):
            if row >> n & 1:
                continue
            if not any(
                not K.rows[g] >> m & 1 and bits.is_subset(L.cols[n], L.cols[p.beta[m]]) for m in range(K.n_attributes)
            ):
                return False
    # h nJ b(m)  ==>  g nI m for some g with h^ <= a(g)^
    for m in range(K.n_attributes):
        bm = p.beta[m]
        for h in range(L.n_objects):
            if L.rows[h] >> bm & 1:
                continue
            if not any(
                not K.rows[g] >> m & 1 and bits.is_subset(L.rows[h], L.rows[p.alpha[g]]) for g in range(K.n_objects)
            ):
                return False
    return True


def concept_continuous_forms(p: MappingPair) -> Characterization:
    reflecting = is_incidence_reflecting(p)
    eq_c = _preimage_equation_objects(p)
    eq_d = _preimage_equation_objects(p.dual)
    forms = {
        "definition": _is_concept_continuous_def(p),
        "closure_equations": None if eq_c is None or eq_d is None else eq_c and eq_d,
        "generator_equations": _generator_equation_attributes(p) and _generator_equation_attributes(p.dual),
        "image_inclusions": reflecting and _image_inclusion_attributes(p) and _image_inclusion_attributes(p.dual),
        "first_order": reflecting and _continuous_first_order(p),
    }
    return Characterization("concept continuous", _drop_none(forms), p)


def is_concept_continuous(p: MappingPair) -> bool:
    return concept_continuous_forms(p).value


# ---------------------------------------------------------------------------
# embeddings


def is_dense_embedding(p: MappingPair) -> bool:
    """Embedding with both partners dense; must coincide with conceptual and concept continuous."""
    c = dense_embedding_theorem(p)
    return c.value


def dense_embedding_theorem(p: MappingPair) -> Characterization:
    by_def = is_embedding(p) and is_extent_dense(p) and is_intent_dense(p)
    by_classes = is_conceptual(p) and is_concept_continuous(p)
    return Characterization("dense embedding", {"embedding_and_dense": by_def, "conceptual_and_continuous": by_classes}, p)


def is_context_isomorphism(p: MappingPair) -> bool:
    return (
        is_embedding(p)
        and sorted(p.alpha) == list(range(p.target.n_objects))
        and sorted(p.beta) == list(range(p.target.n_attributes))
    )


def transfer_checks(p: MappingPair) -> list[Characterization]:
    """Fullness/density transfer between the partners of a conceptual pair."""
    out = []
    embedding = is_embedding(p)
    if embedding:
        out.append(
            Characterization(
                "embedding implies full",
                {"embedding": True, "alpha_full": is_extent_full(p), "beta_full": is_intent_full(p)},
                p,
            )
        )
    if is_conceptual(p):
        out.append(
            Characterization(
                "conceptual: embedding iff full",
                {"embedding": embedding, "alpha_full": is_extent_full(p), "beta_full": is_intent_full(p)},
                p,
            )
        )
        joint = jointly_dense_forms(p).value
        out.append(
            Characterization(
                "conceptual: dense iff partner dense",
                {"both_dense": joint, "alpha_dense": is_extent_dense(p), "beta_dense": is_intent_dense(p)},
                p,
            )
        )
    return out


# ---------------------------------------------------------------------------
# lifted maps


def lift_forward(p: MappingPair) -> tuple[MonoMap, MonoMap]:
    """``a->(A, B) = (a[A]^_, a[A]^)`` and ``b->(A, B) = (b[B]_, b[B]_^)``."""
    bk = build_concept_lattice(p.source)
    bl = build_concept_lattice(p.target)
    L = p.target
    fa = [bl.concept_of_intent(L.up(p.img_a(c.extent))) for c in bk.concepts]
    fb = [bl.concept_of_extent(L.down(p.img_b(c.intent))) for c in bk.concepts]
    return MonoMap(bk.lattice, bl.lattice, fa), MonoMap(bk.lattice, bl.lattice, fb)


def lift_backward(p: MappingPair) -> tuple[MonoMap, MonoMap]:
    """``a<-(C, D) = (a-[C], a-[C]^)`` and ``b<-(C, D) = (b-[D]_, b-[D])``.

    Defined for separately continuous pairs, where they are the upper adjoint
    of ``a->`` and the lower adjoint of ``b->``.
    """
    if not is_separately_continuous(p):
        raise ClassError("backward lifts need a separately continuous pair")
    bk = build_concept_lattice(p.source)
    bl = build_concept_lattice(p.target)
    ga = [bk.concept_of_extent(p.pre_a(c.extent)) for c in bl.concepts]
    gb = [bk.concept_of_intent(p.pre_b(c.intent)) for c in bl.concepts]
    back_a = MonoMap(bl.lattice, bk.lattice, ga)
    back_b = MonoMap(bl.lattice, bk.lattice, gb)
    fa, fb = lift_forward(p)
    ua, lb = upper_adjoint(fa), lower_adjoint(fb)
    if ua is None or ua.table != back_a.table or lb is None or lb.table != back_b.table:
        raise FalsificationError(
            "backward lifts are the adjoints of the forward lifts",
            {"alpha_back_is_upper_adjoint": ua is not None and ua.table == back_a.table,
             "beta_back_is_lower_adjoint": lb is not None and lb.table == back_b.table},
            p,
        )
    return back_a, back_b


def lifts_commute_with_units(p: MappingPair) -> bool:
    """``a-> . gamma_K = gamma_L . a`` and ``b-> . mu_K = mu_L . b``."""
    bk = build_concept_lattice(p.source)
    bl = build_concept_lattice(p.target)
    fa, fb = lift_forward(p)
    return all(fa.table[bk.gamma[g]] == bl.gamma[h] for g, h in enumerate(p.alpha)) and all(
        fb.table[bk.mu[m]] == bl.mu[n] for m, n in enumerate(p.beta)
    )


def lift_law_forms(p: MappingPair, units: bool = False) -> list[Characterization]:
    """The pair classes against properties of the lifted maps.

    With ``units=False`` the lift side is exactly the stated property of
    ``a->`` and ``b->``. With ``units=True`` each lift side additionally
    requires :func:`lifts_commute_with_units`, as in the characterization
    through morphisms between the complete contexts of the concept lattices.
    """
    fa, fb = lift_forward(p)
    sq = lifts_commute_with_units(p) if units else True
    suffix = " (with unit squares)" if units else ""
    conceptual = is_conceptual(p)
    same = fa.table == fb.table
    complete = same and is_complete_hom(fa)
    ua = upper_adjoint(fa)
    uua = None if ua is None else upper_adjoint(ua)
    lb = lower_adjoint(fb)
    llb = None if lb is None else lower_adjoint(lb)
    out = [
        Characterization(
            "separately continuous iff lifts preserve joins/meets" + suffix,
            {"pair": is_separately_continuous(p), "lifts": sq and is_join_preserving(fa) and is_meet_preserving(fb)},
            p,
        ),
        Characterization(
            "conceptual iff equal lifts form a complete homomorphism" + suffix,
            {"pair": conceptual, "lifts": sq and complete},
            p,
        ),
        Characterization(
            "concept continuous iff the double upper adjoint of a-> is b->" + suffix,
            {
                "pair": is_concept_continuous(p),
                "double_upper_adjoint": sq and uua is not None and uua.table == fb.table,
                "double_lower_adjoint": sq and llb is not None and llb.table == fa.table,
            },
            p,
        ),
        Characterization(
            "dense conceptual iff surjective complete homomorphism" + suffix,
            {
                "pair": conceptual and is_extent_dense(p) and is_intent_dense(p),
                "lift": sq and complete and is_surjective(fa),
            },
            p,
        ),
        Characterization(
            "conceptual embedding iff complete embedding" + suffix,
            {"pair": conceptual and is_embedding(p), "lift": sq and complete and is_injective(fa)},
            p,
        ),
        Characterization(
            "dense embedding iff isomorphism" + suffix,
            {"pair": is_dense_embedding(p), "lift": sq and same and is_isomorphism(fa)},
            p,
        ),
    ]
    return out


# ---------------------------------------------------------------------------
# unit and factorization


def unit(ctx: Context) -> MappingPair:
    """``eta = (gamma, mu)`` into the complete context of the concept lattice."""
    cl = build_concept_lattice(ctx)
    return MappingPair(ctx, complete_context(cl.lattice), cl.gamma, cl.mu)


@dataclass(frozen=True)
class Factorization:
    join_map: MonoMap
    meet_map: MonoMap
    unique: bool


def _candidates_fixed_on(src: FiniteLattice, tgt: FiniteLattice, fixed: dict[int, int]):
    free = [x for x in range(src.size) if x not in fixed]
    from itertools import product

    for values in product(range(tgt.size), repeat=len(free)):
        table = [0] * src.size
        for x, y in fixed.items():
            table[x] = y
        for x, y in zip(free, values):
            table[x] = y
        yield MonoMap(src, tgt, table)


def factorize_through_unit(p: MappingPair, lat: FiniteLattice) -> Factorization:
    """Split a separately continuous ``p: K -> C(lat)`` as ``(a_v, b_^) . eta_K``.

    ``a_v(A, B) = sup a[A]`` and ``b_^(A, B) = inf b[B]``. Uniqueness is checked
    by enumerating every map agreeing with alpha on the object concepts
    (resp. with beta on the attribute concepts).
    """
    if p.target != complete_context(lat):
        raise ClassError("pair does not land in the complete context of the given lattice")
    if not is_separately_continuous(p):
        raise ClassError("factorization needs a separately continuous pair")
    cl = build_concept_lattice(p.source)
    jm = MonoMap(cl.lattice, lat, [lat.join_of(p.img_a(c.extent)) for c in cl.concepts])
    mm = MonoMap(cl.lattice, lat, [lat.meet_of(p.img_b(c.intent)) for c in cl.concepts])
    ok = (
        is_join_preserving(jm)
        and is_meet_preserving(mm)
        and all(jm.table[cl.gamma[g]] == p.alpha[g] for g in range(p.source.n_objects))
        and all(mm.table[cl.mu[m]] == p.beta[m] for m in range(p.source.n_attributes))
    )
    if not ok:
        raise FalsificationError("factorization through the unit", {"sup_inf_formulas": False}, p)
    fixed_j = {cl.gamma[g]: p.alpha[g] for g in range(p.source.n_objects)}
    fixed_m = {cl.mu[m]: p.beta[m] for m in range(p.source.n_attributes)}
    joins = [f for f in _candidates_fixed_on(cl.lattice, lat, fixed_j) if is_join_preserving(f)]
    meets = [f for f in _candidates_fixed_on(cl.lattice, lat, fixed_m) if is_meet_preserving(f)]
    unique = joins == [jm] and meets == [mm]
    return Factorization(jm, mm, unique)


# ---------------------------------------------------------------------------
# specialization orders and residuated pairs


def object_order(ctx: Context) -> Poset:
    """Objects ordered by ``j <= k`` iff ``k^ <= j^`` (requires a purified context)."""
    rows = ctx.rows
    downs = [bits.mask(j for j in range(ctx.n_objects) if bits.is_subset(rows[k], rows[j])) for k in range(ctx.n_objects)]
    return Poset(ctx.objects, downs=downs)


def attribute_order(ctx: Context) -> Poset:
    cols = ctx.cols
    downs = [
        bits.mask(m for m in range(ctx.n_attributes) if bits.is_subset(cols[m], cols[n])) for n in range(ctx.n_attributes)
    ]
    return Poset(ctx.attributes, downs=downs)


def _require_purified(*ctxs: Context) -> None:
    for c in ctxs:
        if not is_purified(c):
            raise NotPurifiedError("operation is defined for purified contexts only")


def _alpha_map(p: MappingPair) -> MonoMap:
    return MonoMap(object_order(p.source), object_order(p.target), p.alpha)


def _beta_map(p: MappingPair) -> MonoMap:
    return MonoMap(attribute_order(p.source), attribute_order(p.target), p.beta)


def _adjoint_companion(p: MappingPair) -> MappingPair | None:
    """``(a*, b_*)`` from L back to K when both adjoints exist."""
    ua = upper_adjoint(_alpha_map(p))
    lb = lower_adjoint(_beta_map(p))
    if ua is None or lb is None:
        return None
    return MappingPair(p.target, p.source, ua.table, lb.table)


def _lower_upper_companion(p: MappingPair) -> MappingPair | None:
    """``(a_*, b^*)`` from L back to K when both adjoints exist."""
    la = lower_adjoint(_alpha_map(p))
    ub = upper_adjoint(_beta_map(p))
    if la is None or ub is None:
        return None
    return MappingPair(p.target, p.source, la.table, ub.table)


def _residuated_def(p: MappingPair) -> bool:
    return (
        is_concept_continuous(p)
        and upper_adjoint(_alpha_map(p)) is not None
        and lower_adjoint(_beta_map(p)) is not None
    )


def _residual_def(p: MappingPair) -> bool:
    return is_conceptual(p) and lower_adjoint(_alpha_map(p)) is not None and upper_adjoint(_beta_map(p)) is not None


def _companion_by_intents(p: MappingPair):
    """``a.(h)`` with ``a.(h)^ = b-[h^]`` and ``b.(n)`` with ``b.(n)_ = a-[n_]``, if they exist."""
    K, L = p.source, p.target
    row_index = {r: g for g, r in enumerate(K.rows)}
    col_index = {c: m for m, c in enumerate(K.cols)}
    a_dot = [row_index.get(p.pre_b(L.rows[h])) for h in range(L.n_objects)]
    b_dot = [col_index.get(p.pre_a(L.cols[n])) for n in range(L.n_attributes)]
    if None in a_dot or None in b_dot:
        return None
    return MappingPair(L, K, a_dot, b_dot)


def _companion_by_preimages(p: MappingPair):
    """Companion solving ``a(j)^ = b.-[j^]`` and ``b(m)_ = a.-[m_]`` pointwise."""
    K, L = p.source, p.target
    b_dot = []
    for n in range(L.n_attributes):
        # n in a(j)^  <=>  b.(n) in j^, for every j
        options = [
            m for m in range(K.n_attributes)
            if all((L.rows[p.alpha[j]] >> n & 1) == (K.rows[j] >> m & 1) for j in range(K.n_objects))
        ]
        if not options:
            return None
        b_dot.append(options[0])
    a_dot = []
    for h in range(L.n_objects):
        # h in b(m)_  <=>  a.(h) in m_, for every m
        options = [
            g for g in range(K.n_objects)
            if all((L.rows[h] >> p.beta[m] & 1) == (K.rows[g] >> m & 1) for m in range(K.n_attributes))
        ]
        if not options:
            return None
        a_dot.append(options[0])
    return MappingPair(L, K, a_dot, b_dot)


def is_clr_morphism(phi: MonoMap, src_cl, tgt_cl) -> bool:
    """Complete homomorphism between concept lattices that preserves the object and
    attribute concepts, whose lower adjoint preserves object concepts and whose
    upper adjoint preserves attribute concepts."""
    if not is_complete_hom(phi):
        return False
    low, up_ = lower_adjoint(phi), upper_adjoint(phi)
    if low is None or up_ is None:
        return False
    return (
        bits.is_subset(phi.image(src_cl.gamma_image), tgt_cl.gamma_image)
        and bits.is_subset(phi.image(src_cl.mu_image), tgt_cl.mu_image)
        and bits.is_subset(low.image(tgt_cl.gamma_image), src_cl.gamma_image)
        and bits.is_subset(up_.image(tgt_cl.mu_image), src_cl.mu_image)
    )


def _residuated_by_lattice_hom(p: MappingPair) -> bool:
    # unique CLr phi: B L -> B K with gamma_L . a = phi_* . gamma_K and mu_L . b = phi^* . mu_K
    bk = build_concept_lattice(p.source)
    bl = build_concept_lattice(p.target)
    low = join_extension(bk.lattice, bl.lattice, [(bk.gamma[g], bl.gamma[h]) for g, h in enumerate(p.alpha)])
    if low is None:
        return False
    phi = upper_adjoint(low)
    if phi is None:
        return False
    up_ = upper_adjoint(phi)
    if up_ is None:
        return False
    if any(up_.table[bk.mu[m]] != bl.mu[n] for m, n in enumerate(p.beta)):
        return False
    return is_clr_morphism(phi, bl, bk)


def _residuated_by_lattice_hom_dual(p: MappingPair) -> bool:
    # unique CLr phi: B L -> B K with phi . gamma_L = gamma_K . a* and phi . mu_L = mu_K . b_*
    comp = _adjoint_companion(p)
    if comp is None:
        return False
    bk = build_concept_lattice(p.source)
    bl = build_concept_lattice(p.target)
    phi = join_extension(bl.lattice, bk.lattice, [(bl.gamma[h], bk.gamma[g]) for h, g in enumerate(comp.alpha)])
    if phi is None:
        return False
    if any(phi.table[bl.mu[n]] != bk.mu[m] for n, m in enumerate(comp.beta)):
        return False
    return is_clr_morphism(phi, bl, bk)


def residuated_forms(p: MappingPair) -> Characterization:
    _require_purified(p.source, p.target)
    comp = _adjoint_companion(p)
    by_intents = _companion_by_intents(p)
    by_preimages = _companion_by_preimages(p)
    reflecting = is_incidence_reflecting(p)
    forms = {
        "definition": _residuated_def(p),
        "adjoint_companion_residual": comp is not None and _residual_def(comp),
        "incidence_companion": reflecting and by_intents is not None and is_incidence_preserving(by_intents),
        "incidence_companion_dual": reflecting and by_preimages is not None and is_incidence_preserving(by_preimages),
        "lattice_hom": _residuated_by_lattice_hom(p),
        "lattice_hom_dual": _residuated_by_lattice_hom_dual(p),
    }
    return Characterization("residuated pair", forms, p)


def residual_forms(p: MappingPair) -> Characterization:
    _require_purified(p.source, p.target)
    comp = _lower_upper_companion(p)
    forms = {
        "definition": _residual_def(p),
        "adjoint_companion_residuated": comp is not None and _residuated_def(comp),
    }
    return Characterization("residual pair", forms, p)


def is_residuated_pair(p: MappingPair) -> bool:
    return residuated_forms(p).value


def is_residual_pair(p: MappingPair) -> bool:
    return residual_forms(p).value


def residual_companion(p: MappingPair) -> MappingPair | None:
    """``(a*, b_*)`` for a residuated pair, else None.

    Residuation is decided by its definition here, so the companion is
    available even where other characterizations disagree (see
    :func:`residuated_forms`).
    """
    _require_purified(p.source, p.target)
    if not _residuated_def(p):
        return None
    return _adjoint_companion(p)


def residuation_lemma_forms(p: MappingPair) -> Characterization | None:
    """For pairs whose alpha has an upper and beta a lower adjoint: four equivalent conditions."""
    _require_purified(p.source, p.target)
    comp = _adjoint_companion(p)
    if comp is None:
        return None
    K, L = p.source, p.target
    a_star, b_low = comp.alpha, comp.beta
    pre_a_star = bits.preimage_table(a_star, K.n_objects)
    pre_b_low = bits.preimage_table(b_low, K.n_attributes)
    c = all(L.rows[p.alpha[j]] == bits.preimage(pre_b_low, K.rows[j]) for j in range(K.n_objects)) and all(
        L.cols[p.beta[m]] == bits.preimage(pre_a_star, K.cols[m]) for m in range(K.n_attributes)
    )
    d = all(K.rows[a_star[h]] == p.pre_b(L.rows[h]) for h in range(L.n_objects)) and all(
        K.cols[b_low[n]] == p.pre_a(L.cols[n]) for n in range(L.n_attributes)
    )
    return Characterization(
        "residuation lemma",
        {"concept_continuous": is_concept_continuous(p), "companion_conceptual": is_conceptual(comp),
         "intents_via_companion": c, "companion_intents": d},
        p,
    )


def residuated_identities(p: MappingPair) -> dict[str, bool]:
    """The image/preimage identities linking a residuated pair and its companion."""
    comp = residual_companion(p)
    if comp is None:
        raise ClassError("identities are stated for residuated pairs")
    K, L = p.source, p.target
    out = {k: True for k in (
        "a*-[A^_] = b[A^]_", "b_*-[B_^] = a[B_]^",
        "a*[C]^_ = a-[C^_]", "a-[C^_] = b_*[C^]_", "b_*[C^]_ = b-[C^]_",
        "a*[D_]^ = a-[D_]^", "a-[D_]^ = b_*[D]_^", "b_*[D]_^ = b-[D_^]",
    )}
    for a in bits.subsets(K.n_objects):
        if comp.pre_a(K.extent_closure(a)) != L.down(p.img_b(K.up(a))):
            out["a*-[A^_] = b[A^]_"] = False
    for b in bits.subsets(K.n_attributes):
        if comp.pre_b(K.intent_closure(b)) != L.up(p.img_a(K.down(b))):
            out["b_*-[B_^] = a[B_]^"] = False
    for c in bits.subsets(L.n_objects):
        v1 = K.extent_closure(comp.img_a(c))
        v2 = p.pre_a(L.extent_closure(c))
        v3 = K.down(comp.img_b(L.up(c)))
        v4 = K.down(p.pre_b(L.up(c)))
        out["a*[C]^_ = a-[C^_]"] &= v1 == v2
        out["a-[C^_] = b_*[C^]_"] &= v2 == v3
        out["b_*[C^]_ = b-[C^]_"] &= v3 == v4
    for d in bits.subsets(L.n_attributes):
        v1 = K.up(comp.img_a(L.down(d)))
        v2 = K.up(p.pre_a(L.down(d)))
        v3 = K.intent_closure(comp.img_b(d))
        v4 = p.pre_b(L.intent_closure(d))
        out["a*[D_]^ = a-[D_]^"] &= v1 == v2
        out["a-[D_]^ = b_*[D]_^"] &= v2 == v3
        out["b_*[D]_^ = b-[D_^]"] &= v3 == v4
    return out


def partner_reconstruction(p: MappingPair, which: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Recompute each partner from the other via the max/min identities of purified contexts.

    ``which`` is ``"conceptual"`` or ``"concept_continuous"``. Returns the
    reconstructed ``(alpha, beta)``; raises FalsificationError if they differ
    from the stored maps and ClassError if a max/min does not exist.
    """
    _require_purified(p.source, p.target)
    K, L = p.source, p.target
    obj_l, att_l = object_order(L), attribute_order(L)
    if which == "conceptual":
        alpha = [obj_l.greatest(bits.mask(h for h in range(L.n_objects) if bits.is_subset(K.rows[g], p.pre_b(L.rows[h]))))
                 for g in range(K.n_objects)]
        beta = [att_l.least(bits.mask(n for n in range(L.n_attributes) if bits.is_subset(K.cols[m], p.pre_a(L.cols[n]))))
                for m in range(K.n_attributes)]
    elif which == "concept_continuous":
        alpha = [obj_l.least(bits.mask(h for h in range(L.n_objects) if bits.is_subset(p.pre_b(L.rows[h]), K.rows[g])))
                 for g in range(K.n_objects)]
        beta = [att_l.greatest(bits.mask(n for n in range(L.n_attributes) if bits.is_subset(p.pre_a(L.cols[n]), K.cols[m])))
                for m in range(K.n_attributes)]
    else:
        raise ValueError("which must be 'conceptual' or 'concept_continuous'")
    if None in alpha or None in beta:
        raise ClassError(f"no max/min in the reconstruction: pair is not {which}")
    alpha, beta = tuple(alpha), tuple(beta)
    if alpha != p.alpha or beta != p.beta:
        raise FalsificationError(f"partner reconstruction ({which})", {"alpha": alpha == p.alpha, "beta": beta == p.beta}, p)
    return alpha, beta


# ---------------------------------------------------------------------------
# classification record


FLAGS = (
    "extent_continuous", "intent_continuous", "extent_dense", "intent_dense", "extent_full", "intent_full",
    "incidence_preserving", "incidence_reflecting", "embedding", "separately_continuous", "concept_preserving",
    "conceptual", "concept_continuous", "dense_embedding", "isomorphism", "residuated_pair", "residual_pair",
)


@dataclass
class MorphismClassification:
    flags: dict[str, bool | None]
    characterizations: dict[str, dict[str, bool]]
    falsifications: list[str]

    @property
    def ok(self) -> bool:
        return not self.falsifications

    def as_dict(self) -> dict:
        return {"flags": self.flags, "characterizations": self.characterizations, "falsifications": self.falsifications}


def classify(p: MappingPair) -> MorphismClassification:
    """Every taxonomy flag with its per-characterization vector.

    Disagreeing characterizations are recorded as falsifications and the
    affected flag is set to None.
    """
    flags: dict[str, bool | None] = {}
    chars: dict[str, dict[str, bool]] = {}
    bad: list[str] = []

    def run(name, fn):
        try:
            c = fn(p)
        except FalsificationError as e:
            bad.append(str(e))
            flags[name] = None
            return None
        chars[name] = dict(c.forms)
        if not c.consistent:
            bad.append(f"{c.claim}: {c.forms}")
            flags[name] = None
            return None
        flags[name] = c.value
        return c.value

    run("extent_continuous", extent_continuous_forms)
    run("intent_continuous", intent_continuous_forms)
    run("extent_dense", extent_dense_forms)
    run("intent_dense", intent_dense_forms)
    run("extent_full", extent_full_forms)
    run("intent_full", intent_full_forms)
    run("incidence_preserving", incidence_preserving_forms)
    run("incidence_reflecting", incidence_reflecting_forms)

    def both(a, b):
        return None if flags.get(a) is None or flags.get(b) is None else flags[a] and flags[b]

    flags["embedding"] = both("incidence_preserving", "incidence_reflecting")
    flags["separately_continuous"] = both("extent_continuous", "intent_continuous")
    flags["concept_preserving"] = is_concept_preserving(p)
    run("conceptual", conceptual_forms)
    run("concept_continuous", concept_continuous_forms)
    run("dense_embedding", dense_embedding_theorem)
    try:
        flags["isomorphism"] = is_context_isomorphism(p)
    except FalsificationError as e:
        bad.append(str(e))
        flags["isomorphism"] = None
    try:
        for c in transfer_checks(p):
            chars[c.claim] = dict(c.forms)
            if not c.consistent:
                bad.append(f"{c.claim}: {c.forms}")
    except FalsificationError as e:
        bad.append(str(e))
    if is_purified(p.source) and is_purified(p.target):
        run("residuated_pair", residuated_forms)
        run("residual_pair", residual_forms)
    else:
        flags["residuated_pair"] = None
        flags["residual_pair"] = None
    return MorphismClassification({k: flags.get(k) for k in FLAGS}, chars, bad)
