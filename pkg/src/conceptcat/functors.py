"""Functor actions between contexts and lattices, and instance-level checks of
the adjunctions, equivalences and dualities they satisfy.

Nothing here is symbolic: every categorical statement is verified as a finite
universally quantified property over explicitly enumerated instances.
"""

from __future__ import annotations

from itertools import permutations, product

from . import bits
from .adjoints import (
    MonoMap,
    compose as compose_maps,
    double_lower_adjoint,
    double_upper_adjoint,
    identity,
    is_complete_hom,
    is_injective,
    is_isomorphism,
    is_meet_preserving,
    is_surjective,
    join_extension,
    lower_adjoint,
    upper_adjoint,
)
from .context import Context, find_context_isomorphism, is_purified
from .errors import ClassError, ConceptCatError, DimensionError, FalsificationError, NotPurifiedError
from .lattice import (
    DoublyBasedLattice,
    base_context,
    build_concept_lattice,
    complete_context,
    counit,
    doubly_based_of_context,
    iota,
    join_irreducibles,
    meet_irreducibles,
    standard_context,
)
from .morphisms import (
    Characterization,
    MappingPair,
    factorize_through_unit,
    identity_pair,
    is_clr_morphism,
    is_concept_continuous,
    is_conceptual,
    is_context_isomorphism,
    is_dense_embedding,
    is_embedding,
    is_extent_dense,
    is_intent_dense,
    is_separately_continuous,
    lift_backward,
    lift_forward,
    lifts_commute_with_units,
    partner_reconstruction,
    residual_forms,
    residuated_forms,
    residuated_identities,
    unit,
)
from .order import FiniteLattice
from .report import Report

# ---------------------------------------------------------------------------
# lattices to contexts


def apply_C(phi: MonoMap) -> MappingPair:
    """``(phi, phi)`` between the complete contexts; needs a complete homomorphism."""
    if not is_complete_hom(phi):
        raise ClassError("apply_C needs a complete homomorphism")
    p = MappingPair(complete_context(phi.source), complete_context(phi.target), phi.table, phi.table)
    if not is_conceptual(p):
        raise FalsificationError("complete homomorphisms give conceptual pairs", {"conceptual": False}, p)
    return p


def apply_C_lower(phi: MonoMap) -> MappingPair:
    """``(phi, phi**)`` for a doubly residuated ``phi``."""
    pp = double_upper_adjoint(phi)
    if pp is None:
        raise ClassError("apply_C_lower needs a doubly residuated map")
    p = MappingPair(complete_context(phi.source), complete_context(phi.target), phi.table, pp.table)
    if not is_concept_continuous(p):
        raise FalsificationError("doubly residuated maps give concept continuous pairs", {"concept_continuous": False}, p)
    return p


def apply_C_star(psi: MonoMap) -> MappingPair:
    """``(psi_**, psi)`` for a doubly residual ``psi``."""
    ll = double_lower_adjoint(psi)
    if ll is None:
        raise ClassError("apply_C_star needs a doubly residual map")
    p = MappingPair(complete_context(psi.source), complete_context(psi.target), ll.table, psi.table)
    if not is_concept_continuous(p):
        raise FalsificationError("doubly residual maps give concept continuous pairs", {"concept_continuous": False}, p)
    return p


def complete_context_claims(p: MappingPair, k: FiniteLattice, l: FiniteLattice) -> list[Characterization]:
    """The pair classes between complete contexts against properties of ``alpha`` and ``beta`` as lattice maps."""
    if p.source != complete_context(k) or p.target != complete_context(l):
        raise DimensionError("pair is not between the complete contexts of the given lattices")
    a = MonoMap(k, l, p.alpha)
    b = MonoMap(k, l, p.beta)
    same = p.alpha == p.beta
    hom = same and is_complete_hom(a)
    conceptual = is_conceptual(p)
    cc = is_concept_continuous(p)
    dense = is_extent_dense(p) and is_intent_dense(p)
    emb = is_embedding(p)
    aa = double_upper_adjoint(a)
    bb = double_lower_adjoint(b)
    a_up = aa is not None and aa.table == p.beta
    b_low = bb is not None and bb.table == p.alpha
    return [
        Characterization("(1) conceptual iff complete homomorphism", {"pair": conceptual, "maps": hom}, p),
        Characterization("(2) dense conceptual iff surjective", {"pair": conceptual and dense, "maps": hom and is_surjective(a)}, p),
        Characterization("(3) conceptual embedding iff injective", {"pair": conceptual and emb, "maps": hom and is_injective(a)}, p),
        Characterization("(4) dense embedding iff isomorphism", {"pair": is_dense_embedding(p), "maps": same and is_isomorphism(a)}, p),
        Characterization("(1*) concept continuous iff a** = b", {"pair": cc, "upper": a_up, "lower": b_low}, p),
        Characterization(
            "(2*) concept continuous and dense iff surjective",
            {"pair": cc and dense, "upper": a_up and is_surjective(b), "lower": b_low and is_surjective(a)},
            p,
        ),
        Characterization(
            "(3*) concept continuous embedding iff injective",
            {"pair": cc and emb, "upper": a_up and is_injective(b), "lower": b_low and is_injective(a)},
            p,
        ),
    ]


# ---------------------------------------------------------------------------
# contexts to lattices


def apply_B(p: MappingPair) -> MonoMap:
    """``a-> = b->`` for a conceptual pair."""
    if not is_conceptual(p):
        raise ClassError("apply_B needs a conceptual pair")
    fa, fb = lift_forward(p)
    if fa.table != fb.table:
        raise FalsificationError("lifts of a conceptual pair coincide", {"equal": False}, p)
    return fa


def apply_B_contra(p: MappingPair) -> MonoMap:
    """``(C, D) -> (a-[C], b-[D])`` from B L to B K for a concept continuous pair."""
    if not is_concept_continuous(p):
        raise ClassError("apply_B_contra needs a concept continuous pair")
    bk = build_concept_lattice(p.source)
    bl = build_concept_lattice(p.target)
    table = []
    for c in bl.concepts:
        a, b = p.pre_a(c.extent), p.pre_b(c.intent)
        if not p.source.is_concept(a, b):
            raise FalsificationError("preimages of concepts are concepts", {"concept": False}, p)
        table.append(bk.concept_of_extent(a))
    phi = MonoMap(bl.lattice, bk.lattice, table)
    back_a, back_b = lift_backward(p)
    if not (phi.table == back_a.table == back_b.table and is_complete_hom(phi)):
        raise FalsificationError(
            "contravariant image is a complete homomorphism equal to both backward lifts",
            {"equals_alpha_back": phi.table == back_a.table, "equals_beta_back": phi.table == back_b.table,
             "complete_hom": is_complete_hom(phi)},
            p,
        )
    return phi


def complete_homs(k: FiniteLattice, l: FiniteLattice) -> list[MonoMap]:
    """All complete homomorphisms ``k -> l``, via their values on the join-irreducibles."""
    js = list(bits.members(join_irreducibles(k)))
    out = []
    for values in product(range(l.size), repeat=len(js)):
        f = join_extension(k, l, list(zip(js, values)))
        if f is not None and is_meet_preserving(f):
            out.append(f)
    return out


def verify_adjunction(k: Context, l: FiniteLattice) -> Report:
    """Universal property of the unit for every separately continuous pair ``k -> C l``,
    naturality of the unit, and both triangle identities."""
    from .oracle import enumerate_pairs

    rep = Report(f"adjunction {k.n_objects}x{k.n_attributes} / |L|={l.size}")
    cl = complete_context(l)
    eta_l = unit(cl)
    for p in enumerate_pairs(k, cl):
        if not is_separately_continuous(p):
            continue
        try:
            fac = factorize_through_unit(p, l)
            rep.check(fac.unique, f"factorization not unique for {p}")
        except (ConceptCatError, AssertionError) as e:
            rep.fail(f"{p}: {e}")
            continue
        # C B (a, b) . eta_K = eta_{C L} . (a, b)
        fa, fb = lift_forward(p)
        bk = build_concept_lattice(k)
        left_a = [fa.table[bk.gamma[g]] for g in range(k.n_objects)]
        left_b = [fb.table[bk.mu[m]] for m in range(k.n_attributes)]
        right_a = [eta_l.alpha[h] for h in p.alpha]
        right_b = [eta_l.beta[n] for n in p.beta]
        rep.check(left_a == right_a and left_b == right_b, f"naturality square fails for {p}")
    eps = counit(l)
    rep.check(is_isomorphism(eps), "counit is not an isomorphism")
    # C(eps_L) . eta_{C L} = id_{C L}
    c_eps = apply_C(eps)
    tri = [c_eps.alpha[x] for x in eta_l.alpha], [c_eps.beta[x] for x in eta_l.beta]
    rep.check(tri == (list(range(l.size)), list(range(l.size))), "triangle C(eps) . eta != id")
    # eps_{B K} . B(eta_K) = id_{B K}
    bk = build_concept_lattice(k)
    b_eta = apply_B(unit(k))
    eps_bk = counit(bk.lattice)
    rep.check(compose_maps(eps_bk, b_eta).table == identity(bk.lattice).table, "triangle eps . B(eta) != id")
    return rep


# ---------------------------------------------------------------------------
# subcontexts and relations


def _inclusion(sub: Context, ctx: Context) -> MappingPair:
    try:
        alpha = [ctx.objects.index(g) for g in sub.objects]
        beta = [ctx.attributes.index(m) for m in sub.attributes]
    except ValueError:
        raise ClassError("not a subcontext: names missing from the larger context") from None
    for i, g in enumerate(alpha):
        for j, m in enumerate(beta):
            if sub.incident(i, j) != ctx.incident(g, m):
                raise ClassError("not a subcontext: incidence differs on the restriction")
    return MappingPair(sub, ctx, alpha, beta)


def _same_carriers(k: Context, l: Context) -> None:
    if k.objects != l.objects or k.attributes != l.attributes:
        raise DimensionError("relations must live on the same objects and attributes")


def _cover_hom(p: MappingPair) -> bool:
    """There is a complete homomorphism phi: B K -> B L with phi . eta_K = eta_L (on object and attribute concepts)."""
    bk = build_concept_lattice(p.source)
    bl = build_concept_lattice(p.target)
    phi = join_extension(bk.lattice, bl.lattice, [(bk.gamma[g], bl.gamma[h]) for g, h in enumerate(p.alpha)])
    if phi is None or not is_meet_preserving(phi):
        return False
    return all(phi.table[bk.mu[m]] == bl.mu[n] for m, n in enumerate(p.beta))


def _lift_map_well_defined_hom(p: MappingPair) -> bool:
    """``(A, B) -> (a[A]^_, a[A]^) = (b[B]_, b[B]_^)`` is well defined and a complete homomorphism."""
    fa, fb = lift_forward(p)
    return fa.table == fb.table and is_complete_hom(fa)


def subcontext_conceptual_check(sub: Context, ctx: Context) -> Characterization:
    """Conditions under which the inclusion of a subcontext is conceptual."""
    p = _inclusion(sub, ctx)
    L = ctx
    g_mask, m_mask = bits.mask(p.alpha), bits.mask(p.beta)
    forms = {"a_conceptual": is_conceptual(p)}
    b1 = all(
        bits.is_subset(L.down(L.up(p.img_a(a)) & m_mask), L.extent_closure(p.img_a(a)))
        for a in bits.subsets(sub.n_objects)
    )
    b2 = all(
        bits.is_subset(L.up(L.down(p.img_b(b)) & g_mask), L.intent_closure(p.img_b(b)))
        for b in bits.subsets(sub.n_attributes)
    )
    forms["b_inclusions"] = b1 and b2

    def c():
        for h in range(L.n_objects):
            for n in range(L.n_attributes):
                if L.rows[h] >> n & 1:
                    continue
                hm = L.rows[h] & m_mask
                ng = L.cols[n] & g_mask
                if not any(
                    not L.rows[g] >> m & 1 and bits.is_subset(hm, L.rows[g]) and bits.is_subset(ng, L.cols[m])
                    for g in p.alpha
                    for m in p.beta
                ):
                    return False
        return True

    forms["c_first_order"] = c()
    forms["d_lift_hom"] = _lift_map_well_defined_hom(p)
    forms["e_unit_hom"] = _cover_hom(p)
    return Characterization("subcontext inclusion conceptual", forms, p)


def coarser_relation_check(k: Context, l: Context) -> Characterization:
    """Conditions under which the identity pair ``(G, M, I) -> (G, M, J)`` is conceptual."""
    _same_carriers(k, l)
    p = identity_pair(k)
    p = MappingPair(k, l, p.alpha, p.beta)
    forms = {"a_conceptual": is_conceptual(p)}
    forms["b_equations"] = all(
        l.extent_closure(a) == l.down(k.up(a)) for a in bits.subsets(k.n_objects)
    ) and all(l.intent_closure(b) == l.up(k.down(b)) for b in bits.subsets(k.n_attributes))
    contained = all(bits.is_subset(r, s) for r, s in zip(k.rows, l.rows))

    def c():
        for h in range(l.n_objects):
            for n in range(l.n_attributes):
                if l.rows[h] >> n & 1:
                    continue
                if not any(
                    not k.rows[g] >> m & 1 and bits.is_subset(l.rows[h], k.rows[g]) and bits.is_subset(l.cols[n], k.cols[m])
                    for g in range(k.n_objects)
                    for m in range(k.n_attributes)
                ):
                    return False
        return True

    forms["c_first_order"] = contained and c()
    forms["d_lift_hom"] = _lift_map_well_defined_hom(p)
    forms["e_unit_hom"] = _cover_hom(p)
    return Characterization("identity pair conceptual", forms, p)


def coarser_relation_hom_surjective(k: Context, l: Context) -> bool | None:
    """For a conceptual identity pair, whether the induced homomorphism is onto (None if not conceptual)."""
    _same_carriers(k, l)
    p = MappingPair(k, l, range(k.n_objects), range(k.n_attributes))
    if not is_conceptual(p):
        return None
    return is_surjective(apply_B(p))


def compatible_subcontext_check(sub: Context, ctx: Context) -> Characterization:
    """Conditions under which the inclusion of a subcontext is concept continuous."""
    p = _inclusion(sub, ctx)
    L = ctx
    g_mask, m_mask = bits.mask(p.alpha), bits.mask(p.beta)
    forms = {"a_concept_continuous": is_concept_continuous(p)}
    b1 = all(
        bits.is_subset(L.down(L.up(c) & m_mask) & g_mask, L.extent_closure(c)) for c in bits.subsets(L.n_objects)
    )
    b2 = all(
        bits.is_subset(L.up(L.down(d) & g_mask) & m_mask, L.intent_closure(d)) for d in bits.subsets(L.n_attributes)
    )
    forms["b_compatible"] = b1 and b2

    def c():
        for g in p.alpha:
            for n in bits.members(L.all_attributes & ~L.rows[g]):
                if not any(
                    not L.rows[g] >> m & 1 and bits.is_subset(L.cols[n], L.cols[m]) for m in p.beta
                ):
                    return False
        for m in p.beta:
            for h in bits.members(L.all_objects & ~L.cols[m]):
                if not any(
                    not L.cols[m] >> g & 1 and bits.is_subset(L.rows[h], L.rows[g]) for g in p.alpha
                ):
                    return False
        return True

    forms["c_first_order"] = c()

    bk = build_concept_lattice(sub)
    bl = build_concept_lattice(ctx)

    def d():
        # trace (C, D) -> (C & G, D & M), re-indexed to the subcontext
        pre_g = {h: i for i, h in enumerate(p.alpha)}
        pre_m = {n: j for j, n in enumerate(p.beta)}
        table = []
        for con in bl.concepts:
            a = bits.mask(pre_g[h] for h in bits.members(con.extent & g_mask))
            b = bits.mask(pre_m[n] for n in bits.members(con.intent & m_mask))
            if not sub.is_concept(a, b):
                return False
            table.append(bk.concept_of_extent(a))
        return is_complete_hom(MonoMap(bl.lattice, bk.lattice, table))

    forms["d_trace_hom"] = d()

    def e():
        low = join_extension(bk.lattice, bl.lattice, [(bk.gamma[i], bl.gamma[h]) for i, h in enumerate(p.alpha)])
        if low is None:
            return False
        phi = upper_adjoint(low)
        if phi is None or not is_complete_hom(phi) or not is_surjective(phi):
            return False
        up_ = upper_adjoint(phi)
        return up_ is not None and all(up_.table[bk.mu[j]] == bl.mu[n] for j, n in enumerate(p.beta))

    forms["e_unit_hom"] = e()
    return Characterization("subcontext inclusion concept continuous", forms, p)


def closed_relation_check(k: Context, l: Context) -> Characterization:
    """Conditions under which the identity pair ``(G, M, I) -> (G, M, J)`` is concept continuous."""
    _same_carriers(k, l)
    p = MappingPair(k, l, range(k.n_objects), range(k.n_attributes))
    contained = all(bits.is_subset(s, r) for r, s in zip(k.rows, l.rows))
    forms = {"a_concept_continuous": is_concept_continuous(p)}
    forms["b_inclusions"] = (
        contained
        and all(bits.is_subset(k.down(l.up(a)), l.extent_closure(a)) for a in bits.subsets(k.n_objects))
        and all(bits.is_subset(k.up(l.down(b)), l.intent_closure(b)) for b in bits.subsets(k.n_attributes))
    )

    def c():
        for g in range(k.n_objects):
            for m in bits.members(k.rows[g] & ~l.rows[g]):
                if not any(not k.rows[h] >> m & 1 and bits.is_subset(l.rows[g], l.rows[h]) for h in range(k.n_objects)):
                    return False
                if not any(not k.rows[g] >> n & 1 and bits.is_subset(l.cols[m], l.cols[n]) for n in range(k.n_attributes)):
                    return False
        return True

    forms["c_first_order"] = contained and c()
    bk = build_concept_lattice(k)
    bl = build_concept_lattice(l)
    sub = bl.concept_set() <= bk.concept_set()
    forms["d_concepts_contained"] = sub

    def e():
        if not sub:
            return False
        inside = bits.mask(bk.by_extent[c.extent] for c in bl.concepts)
        lat = bk.lattice
        if not (inside >> lat.bottom & 1 and inside >> lat.top & 1):
            return False
        for x in bits.members(inside):
            for y in bits.members(inside):
                if not (inside >> lat.join[x][y] & 1 and inside >> lat.meet[x][y] & 1):
                    return False
        return True

    forms["e_complete_sublattice"] = e()
    return Characterization("closed relation", forms, p)


# ---------------------------------------------------------------------------
# purified contexts and doubly based lattices


def _eta_o(ctx: Context) -> MappingPair:
    """``K -> C^o B^o K``: each object to its object concept among the join base."""
    kb = doubly_based_of_context(ctx)
    cl = build_concept_lattice(ctx)
    jl, ml = kb.join_list, kb.meet_list
    return MappingPair(ctx, base_context(kb), [jl.index(x) for x in cl.gamma], [ml.index(x) for x in cl.mu])


def verify_purified_equivalence(ctx: Context, others=(), morphisms: bool = True) -> Report:
    """``eta`` is an isomorphism ``K -> C^o B^o K``, and ``C^o B^o`` returns every
    separately continuous pair out of ``K`` (into ``others``) up to these isomorphisms."""
    if not is_purified(ctx):
        raise NotPurifiedError("purified equivalence is stated for purified contexts")
    rep = Report(f"purified equivalence {ctx.n_objects}x{ctx.n_attributes}")
    eta = _eta_o(ctx)
    rep.check(is_context_isomorphism(eta), f"eta is not an isomorphism for {ctx!r}")
    try:
        iota(doubly_based_of_context(ctx))
        rep.check(True)
    except ConceptCatError as e:
        rep.fail(str(e))
    if not morphisms:
        return rep
    from .oracle import enumerate_pairs

    for other in dict.fromkeys((ctx, *others)):
        if not is_purified(other):
            continue
        bk = build_concept_lattice(ctx)
        bl = build_concept_lattice(other)
        for p in enumerate_pairs(ctx, other):
            if not is_separately_continuous(p):
                continue
            fa, fb = lift_forward(p)
            based = bits.is_subset(fa.image(bk.gamma_image), bl.gamma_image) and bits.is_subset(
                fb.image(bk.mu_image), bl.mu_image
            )
            rep.check(based and lifts_commute_with_units(p), f"round trip of {p}")
    return rep


def based_complete_homs(kb: DoublyBasedLattice, lb: DoublyBasedLattice) -> list[MonoMap]:
    """Complete homomorphisms preserving the join and the meet bases."""
    return [
        f
        for f in complete_homs(kb.lattice, lb.lattice)
        if bits.is_subset(f.image(kb.join_base), lb.join_base) and bits.is_subset(f.image(kb.meet_base), lb.meet_base)
    ]


def adjoint_based_complete_homs(lb: DoublyBasedLattice, kb: DoublyBasedLattice) -> list[MonoMap]:
    """Complete homomorphisms ``lb -> kb`` whose lower adjoint preserves join bases and
    whose upper adjoint preserves meet bases (both adjoints go ``kb -> lb``)."""
    out = []
    for f in complete_homs(lb.lattice, kb.lattice):
        low, up_ = lower_adjoint(f), upper_adjoint(f)
        if low is None or up_ is None:
            continue
        if bits.is_subset(low.image(kb.join_base), lb.join_base) and bits.is_subset(up_.image(kb.meet_base), lb.meet_base):
            out.append(f)
    return out


def restrict_to_bases(phi: MonoMap, kb: DoublyBasedLattice, lb: DoublyBasedLattice, psi: MonoMap | None = None) -> MappingPair:
    """``(phi|J, psi|M)`` between base contexts (``psi`` defaults to ``phi``)."""
    psi = phi if psi is None else psi
    jl, ml = lb.join_list, lb.meet_list
    try:
        alpha = [jl.index(phi.table[j]) for j in kb.join_list]
        beta = [ml.index(psi.table[m]) for m in kb.meet_list]
    except ValueError:
        raise ClassError("map does not carry bases into bases") from None
    return MappingPair(base_context(kb), base_context(lb), alpha, beta)


def verify_doubly_based_equivalence(kb: DoublyBasedLattice, others=()) -> Report:
    """``iota`` carries ``kb`` isomorphically onto ``B^o C^o kb``, the base context is
    purified, and ``B^o C^o`` returns every base-preserving complete homomorphism
    (and every homomorphism with base-preserving adjoints) up to ``iota``."""
    rep = Report(f"doubly based equivalence |L|={kb.lattice.size}")
    k = base_context(kb)
    rep.check(is_purified(k), "base context is not purified")
    try:
        i_k = iota(kb)
        rep.check(True)
    except ConceptCatError as e:
        rep.fail(str(e))
        return rep
    rep.check(is_context_isomorphism(_eta_o(k)), "eta of the base context is not an isomorphism")
    for lb in (kb, *others):
        i_l = iota(lb)
        for phi in based_complete_homs(kb, lb):
            p = restrict_to_bases(phi, kb, lb)
            if not rep.check(is_conceptual(p), f"restriction of {phi} is not conceptual"):
                continue
            lifted = apply_B(p)
            rep.check(compose_maps(lifted, i_k).table == compose_maps(i_l, phi).table, f"B C {phi} differs from {phi}")
        for phi in adjoint_based_complete_homs(lb, kb):
            low, up_ = lower_adjoint(phi), upper_adjoint(phi)
            p = restrict_to_bases(low, kb, lb, up_)
            if not rep.check(is_concept_continuous(p), f"adjoint restriction of {phi} is not concept continuous"):
                continue
            back = apply_B_contra(p)
            rep.check(compose_maps(back, i_l).table == compose_maps(i_k, phi).table, f"contravariant round trip of {phi}")
    return rep


def _db_key(kb: DoublyBasedLattice) -> tuple:
    """Isomorphism invariant of a small doubly based lattice (minimum over relabellings)."""
    lat = kb.lattice
    n = lat.size
    best = None
    for perm in permutations(range(n)):
        order = tuple(sorted((perm[x], perm[y]) for y in range(n) for x in bits.members(lat.downs[y])))
        key = (order, tuple(sorted(perm[j] for j in kb.join_list)), tuple(sorted(perm[m] for m in kb.meet_list)))
        if best is None or key < best:
            best = key
    return (n, best)


def doubly_based_catalog(lattices, j_max: int | None = None, m_max: int | None = None) -> list[DoublyBasedLattice]:
    """Pairwise non-isomorphic doubly based lattices over the given lattices, bases bounded in size."""
    out, seen = [], set()
    for lat in lattices:
        ji, mi = join_irreducibles(lat), meet_irreducibles(lat)
        for j in bits.submasks(lat.all & ~ji):
            jb = ji | j
            if j_max is not None and bits.count(jb) > j_max:
                continue
            for m in bits.submasks(lat.all & ~mi):
                mb = mi | m
                if m_max is not None and bits.count(mb) > m_max:
                    continue
                kb = DoublyBasedLattice(lat, jb, mb)
                key = _db_key(kb)
                if key not in seen:
                    seen.add(key)
                    out.append(kb)
    return out


def context_iso_classes(contexts) -> list[Context]:
    reps: list[Context] = []
    for c in contexts:
        if not any(find_context_isomorphism(c, r) is not None for r in reps):
            reps.append(c)
    return reps


def verify_isoclass_correspondence(g_max: int = 2, m_max: int = 2) -> Report:
    """Isomorphism classes of purified contexts within the size bound against doubly
    based lattices with bases of the same sizes, and the morphism counts between them."""
    from .oracle import enumerate_contexts, enumerate_lattices, enumerate_pairs

    rep = Report(f"iso classes and morphism counts, contexts <= {g_max}x{m_max}")
    purified = context_iso_classes(c for c in enumerate_contexts(g_max, m_max) if is_purified(c))
    lattices = list(enumerate_lattices(min(1 << min(g_max, m_max), 6)))
    catalog = doubly_based_catalog(lattices, g_max, m_max)
    rep.notes["purified_classes"] = len(purified)
    rep.notes["doubly_based_classes"] = len(catalog)
    rep.check(len(purified) == len(catalog), f"{len(purified)} purified classes vs {len(catalog)} doubly based")
    keys = {_db_key(doubly_based_of_context(c)) for c in purified}
    rep.check(keys == {_db_key(kb) for kb in catalog}, "purified contexts and doubly based lattices do not match up")
    for k in purified:
        kb = doubly_based_of_context(k)
        for l in purified:
            lb = doubly_based_of_context(l)
            pairs = list(enumerate_pairs(k, l))
            n_conc = sum(1 for p in pairs if is_conceptual(p))
            n_cc = sum(1 for p in pairs if is_concept_continuous(p))
            rep.check(n_conc == len(based_complete_homs(kb, lb)), f"conceptual count mismatch {k!r} -> {l!r}")
            rep.check(n_cc == len(adjoint_based_complete_homs(lb, kb)), f"concept continuous count mismatch {k!r} -> {l!r}")
    return rep


# ---------------------------------------------------------------------------
# reduced contexts


def _irreducibility_preserving(phi: MonoMap) -> bool:
    return bits.is_subset(phi.image(join_irreducibles(phi.source)), join_irreducibles(phi.target)) and bits.is_subset(
        phi.image(meet_irreducibles(phi.source)), meet_irreducibles(phi.target)
    )


def apply_S(phi: MonoMap) -> MappingPair:
    """Restriction of a complete homomorphism to join- and meet-irreducibles, between standard contexts."""
    if not is_complete_hom(phi):
        raise ClassError("apply_S needs a complete homomorphism")
    if not _irreducibility_preserving(phi):
        raise ClassError("homomorphism does not map irreducibles to irreducibles")
    src, tgt = phi.source, phi.target
    js, ms = list(bits.members(join_irreducibles(src))), list(bits.members(meet_irreducibles(src)))
    jt, mt = list(bits.members(join_irreducibles(tgt))), list(bits.members(meet_irreducibles(tgt)))
    return MappingPair(
        standard_context(src), standard_context(tgt), [jt.index(phi.table[j]) for j in js], [mt.index(phi.table[m]) for m in ms]
    )


def verify_reduced_equivalence(contexts) -> Report:
    """Conceptual pairs between reduced contexts against irreducibility-preserving complete
    homomorphisms, and concept continuous pairs against homomorphisms whose adjoints
    preserve irreducibles; both by counting and by the explicit correspondences."""
    from .oracle import enumerate_pairs

    rep = Report("reduced equivalence")
    reduced = [c for c in contexts if _is_reduced(c)]
    rep.notes["reduced_contexts"] = len(reduced)
    for k in reduced:
        bk = build_concept_lattice(k)
        for l in reduced:
            bl = build_concept_lattice(l)
            pairs = list(enumerate_pairs(k, l))
            conc = [p for p in pairs if is_conceptual(p)]
            homs = [f for f in complete_homs(bk.lattice, bl.lattice) if _irreducibility_preserving(f)]
            lifted = {apply_B(p).table for p in conc}
            rep.check(len(conc) == len(homs) == len(lifted), f"conceptual {len(conc)} vs homs {len(homs)}: {k!r} -> {l!r}")
            rep.check(lifted == {f.table for f in homs}, f"lifted conceptual pairs differ from homs: {k!r} -> {l!r}")
            for f in homs:
                s = apply_S(f)
                rep.check(is_conceptual(s), f"S({f}) is not conceptual")
            cc = [p for p in pairs if is_concept_continuous(p)]
            co = []
            for f in complete_homs(bl.lattice, bk.lattice):
                low, up_ = lower_adjoint(f), upper_adjoint(f)
                if low is None or up_ is None:
                    continue
                if bits.is_subset(low.image(join_irreducibles(bk.lattice)), join_irreducibles(bl.lattice)) and bits.is_subset(
                    up_.image(meet_irreducibles(bk.lattice)), meet_irreducibles(bl.lattice)
                ):
                    co.append(f)
            back = {apply_B_contra(p).table for p in cc}
            rep.check(len(cc) == len(co) == len(back), f"concept continuous {len(cc)} vs homs {len(co)}: {k!r} -> {l!r}")
            rep.check(back == {f.table for f in co}, f"contravariant images differ from homs: {k!r} -> {l!r}")
    return rep


def _is_reduced(ctx: Context) -> bool:
    from .lattice import is_reduced

    return is_reduced(ctx)


# ---------------------------------------------------------------------------
# residuated and residual pairs


def verify_duality_r(contexts) -> Report:
    """Residuated and residual pairs between purified contexts.

    Each claim is checked for every pair between the purified contexts given
    and counted separately in ``notes`` (failures per claim):

    - ``forms``: the characterizations of each class agree;
    - ``companion``: a pair is residuated iff its adjoints form a residual pair;
    - ``identities``: the preimage/image identities of residuated pairs;
    - ``contravariant``: a residuated pair gives a base-preserving and
      -reflecting homomorphism whose adjoints restrict back to the pair;
    - ``covariant``: likewise for residual pairs and the forward lift;
    - ``partners``: each partner of a conceptual or concept continuous pair
      is recovered from the other.
    """
    from .oracle import enumerate_pairs

    claims = ("forms", "companion", "identities", "contravariant", "covariant", "partners")
    parts = {c: Report(c) for c in claims}
    purified = [c for c in contexts if is_purified(c)]
    n_res = n_resl = 0
    for k in purified:
        bk = build_concept_lattice(k)
        for l in purified:
            bl = build_concept_lattice(l)
            for p in enumerate_pairs(k, l):
                rf, sf = residuated_forms(p), residual_forms(p)
                parts["forms"].check(rf.consistent, f"residuated forms disagree {rf.forms} on {p}")
                parts["forms"].check(sf.consistent, f"residual forms disagree {sf.forms} on {p}")
                residuated = rf.forms["definition"]
                residual = sf.forms["definition"]
                parts["companion"].check(
                    residuated == rf.forms["adjoint_companion_residual"],
                    f"residuated={residuated} but companion residual={rf.forms['adjoint_companion_residual']}: {p}",
                )
                if residuated:
                    n_res += 1
                    ident = residuated_identities(p)
                    parts["identities"].check(all(ident.values()), f"identities {[i for i, v in ident.items() if not v]} fail on {p}")
                    phi = apply_B_contra(p)
                    low, up_ = lower_adjoint(phi), upper_adjoint(phi)
                    parts["contravariant"].check(
                        is_clr_morphism(phi, bl, bk)
                        and all(low.table[bk.gamma[g]] == bl.gamma[h] for g, h in enumerate(p.alpha))
                        and all(up_.table[bk.mu[m]] == bl.mu[n] for m, n in enumerate(p.beta)),
                        f"contravariant image of {p}",
                    )
                if residual:
                    n_resl += 1
                    parts["covariant"].check(
                        is_clr_morphism(apply_B(p), bk, bl) and lifts_commute_with_units(p), f"covariant image of {p}"
                    )
                if is_conceptual(p):
                    parts["partners"].check(_round_trip(p, "conceptual"), f"partner reconstruction (conceptual) of {p}")
                if is_concept_continuous(p):
                    parts["partners"].check(
                        _round_trip(p, "concept_continuous"), f"partner reconstruction (concept continuous) of {p}"
                    )
    rep = Report("residuation duality")
    for c in claims:
        rep.merge(parts[c])
    rep.notes.update({f"{c}_failed": parts[c].failed for c in claims})
    rep.notes["residuated_pairs"] = n_res
    rep.notes["residual_pairs"] = n_resl
    return rep


def _round_trip(p: MappingPair, which: str) -> bool:
    try:
        partner_reconstruction(p, which)
        return True
    except (ClassError, FalsificationError):
        return False


# ---------------------------------------------------------------------------
# reflection and the fundamental theorem


def verify_reflection(ctx: Context) -> Report:
    rep = Report(f"reflection {ctx.n_objects}x{ctx.n_attributes}")
    eta = unit(ctx)
    rep.check(is_dense_embedding(eta), f"eta is not a dense embedding for {ctx!r}")
    rep.check(is_isomorphism(apply_B(eta)), f"B(eta) is not an isomorphism for {ctx!r}")
    return rep


def verify_fundamental_theorem(ctx: Context) -> Report:
    """With ``L`` the extents ordered by inclusion, ``g -> closure(g)`` is join-dense,
    ``m -> m_`` meet-dense, ``g I m`` iff ``gamma(g) <= mu(m)``, and ``B K -> L`` is an isomorphism."""
    rep = Report(f"fundamental theorem {ctx.n_objects}x{ctx.n_attributes}")
    exts = sorted(ctx.extents)
    index = {e: i for i, e in enumerate(exts)}
    lat = FiniteLattice([str(e) for e in exts], downs=[bits.mask(j for j, f in enumerate(exts) if bits.is_subset(f, e)) for e in exts])
    gamma = [index[ctx.extent_closure(1 << g)] for g in range(ctx.n_objects)]
    mu = [index[ctx.cols[m]] for m in range(ctx.n_attributes)]
    rep.check(lat.is_join_dense(bits.mask(gamma)), "gamma is not join-dense")
    rep.check(lat.is_meet_dense(bits.mask(mu)), "mu is not meet-dense")
    rep.check(
        all(ctx.incident(g, m) == lat.leq(gamma[g], mu[m]) for g in range(ctx.n_objects) for m in range(ctx.n_attributes)),
        "incidence is not the order between gamma and mu",
    )
    cl = build_concept_lattice(ctx)
    iso = MonoMap(cl.lattice, lat, [lat.join_of(bits.mask(gamma[g] for g in bits.members(c.extent))) for c in cl.concepts])
    rep.check(is_isomorphism(iso), "sup of gamma-images is not an isomorphism")
    return rep
