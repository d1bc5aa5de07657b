"""Group constructors: standard families, products, and the corpus stream.

Semidirect products follow one convention repo-wide: actions are right
actions (a^(b1*b2) = (a^b1)^b2) and the product of pairs is

    (a1, b1) * (a2, b2) = (a1 * a2^(b1^-1), b1 * b2)

so that the coset-action product H |x G/H built here agrees bit for bit
with the conjugation action it encodes.  Pair elements are flattened to
dense indices in lexicographic (acted, acting) order, which puts the
identity pair at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .core import (
    max_order_cap,
    GroupTable,
    InputError,
    LemmaViolation,
    PreconditionError,
    QuotientMap,
    SubgroupHandle,
    is_prime,
    prime_factors,
    quotient_group,
    subgroup_closure,
    conjugacy_classes,
)


# -- standard families -----------------------------------------------------


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise InputError(f"cyclic order must be positive, got {n}")
    table = (np.add.outer(np.arange(n), np.arange(n)) % n)
    return GroupTable(table, label=f"cyclic({n})")


def direct_product(A: GroupTable, B: GroupTable, label: str | None = None) -> GroupTable:
    if A.n * B.n > max_order_cap():
        raise InputError(
            f"refusing direct product of order {A.n * B.n} beyond cap {max_order_cap()}")
    a, b = np.divmod(np.arange(A.n * B.n), B.n)
    table = A.table[np.ix_(a, a)] * B.n + B.table[np.ix_(b, b)]
    return GroupTable(table, label=label or f"dp({A.label},{B.label})")


def abelian_group(factors) -> GroupTable:
    factors = tuple(int(f) for f in factors)
    if not factors:
        return GroupTable([[0]], label="cyclic(1)")
    if any(f < 1 for f in factors):
        raise InputError(f"cyclic factors must be positive, got {factors}")
    label = f"abelian({','.join(map(str, factors))})"
    G = cyclic(factors[0])
    for f in factors[1:]:
        G = direct_product(G, cyclic(f))
    return GroupTable(G.table, label=label, trusted=True)


def _perm_table(perms: list[tuple[int, ...]], label: str) -> GroupTable:
    index = {p: i for i, p in enumerate(perms)}
    deg = len(perms[0])
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(q[p[k]] for k in range(deg))]
    return GroupTable(table, label=label)


def symmetric(n: int) -> GroupTable:
    if not 1 <= n <= 6:
        raise InputError(f"symmetric group degree must be in 1..6, got {n}")
    return _perm_table(sorted(permutations(range(n))), f"sym({n})")


def _parity(p: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i) if p[j] > p[i])
    return inv % 2


def alternating(n: int) -> GroupTable:
    if not 1 <= n <= 6:
        raise InputError(f"alternating group degree must be in 1..6, got {n}")
    perms = sorted(p for p in permutations(range(n)) if _parity(p) == 0)
    return _perm_table(perms, f"alt({n})")


def quaternion8() -> GroupTable:
    # elements 1, -1, i, -i, j, -j, k, -k with the usual unit products
    units = "1ijk"
    base = {
        ("1", "1"): (0, "1"), ("1", "i"): (0, "i"), ("1", "j"): (0, "j"), ("1", "k"): (0, "k"),
        ("i", "1"): (0, "i"), ("j", "1"): (0, "j"), ("k", "1"): (0, "k"),
        ("i", "i"): (1, "1"), ("j", "j"): (1, "1"), ("k", "k"): (1, "1"),
        ("i", "j"): (0, "k"), ("j", "k"): (0, "i"), ("k", "i"): (0, "j"),
        ("j", "i"): (1, "k"), ("k", "j"): (1, "i"), ("i", "k"): (1, "j"),
    }
    elements = [(s, u) for u in units for s in (0, 1)]
    index = {e: i for i, e in enumerate(elements)}
    table = np.empty((8, 8), dtype=np.int64)
    for a, (sa, ua) in enumerate(elements):
        for b, (sb, ub) in enumerate(elements):
            s, u = base[(ua, ub)]
            table[a, b] = index[((sa + sb + s) % 2, u)]
    return GroupTable(table, label="quaternion8()")


def frobenius(p: int, q: int) -> GroupTable:
    """Faithful split extension of a cyclic group of prime order p by C_q."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if q < 2 or (p - 1) % q != 0:
        raise InputError(f"{q} does not divide {p}-1; no faithful action exists")
    r = next(r for r in range(2, p) if _mult_order(r, p) == q)
    action = np.empty((p, q), dtype=np.int64)
    rb = 1
    for b in range(q):
        action[:, b] = (np.arange(p) * rb) % p
        rb = (rb * r) % p
    spec = ActionSpec(acting=cyclic(q), acted=cyclic(p), action=action)
    return semidirect_product(spec, label=f"frobenius({p},{q})")


def _mult_order(r: int, p: int) -> int:
    k, x = 1, r % p
    while x != 1:
        x = (x * r) % p
        k += 1
    return k


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n (symmetries of the n-gon)."""
    if n < 1:
        raise InputError(f"dihedral parameter must be positive, got {n}")
    action = np.stack([np.arange(n), (-np.arange(n)) % n], axis=1)
    spec = ActionSpec(acting=cyclic(2), acted=cyclic(n), action=action)
    return semidirect_product(spec, label=f"dihedral({n})")


# -- semidirect products ----------------------------------------------------


@dataclass
class ActionSpec:
    """A right action of `acting` on `acted` by automorphisms.

    action[a, b] is the image of element a under acting element b, with
    action[a, b1*b2] == action[action[a, b1], b2].
    """

    acting: GroupTable
    acted: GroupTable
    action: np.ndarray

    def validate(self) -> None:
        act = np.asarray(self.action)
        na, nb = self.acted.n, self.acting.n
        if act.shape != (na, nb):
            raise InputError(f"action shape {act.shape} != ({na},{nb})")
        TA, TB = self.acted.table, self.acting.table
        for b in range(nb):
            col = act[:, b]
            if len(np.unique(col)) != na:
                raise InputError(f"acting element {b} does not act bijectively")
            if not np.array_equal(col[TA], TA[np.ix_(col, col)]):
                x, y = map(int, np.argwhere(col[TA] != TA[np.ix_(col, col)])[0])
                raise InputError(
                    f"acting element {b} is not an automorphism: breaks product ({x},{y})")
        # right-action law across the acting group
        comp = act[act, :]                      # [a, b1, b2] -> (a^b1)^b2
        direct = act[:, TB]                     # [a, b1, b2] -> a^(b1*b2)
        if not np.array_equal(comp, direct):
            a, b1, b2 = map(int, np.argwhere(comp != direct)[0])
            raise InputError(f"action is not a right action at (a={a}, b1={b1}, b2={b2})")


def semidirect_product(spec: ActionSpec, label: str | None = None) -> GroupTable:
    """Split extension on pairs (a, b) flattened as a * |acting| + b."""
    spec.validate()
    A, B, act = spec.acted, spec.acting, np.asarray(spec.action)
    if A.n * B.n > max_order_cap():
        raise InputError(
            f"refusing semidirect product of order {A.n * B.n} beyond cap {max_order_cap()}")
    binv = B.inverse_table
    twisted = act[:, binv].T                 # [b1, a2] -> a2^(b1^-1)
    left = A.table[:, twisted]               # [a1, b1, a2] -> a1 * a2^(b1^-1)
    table = (left[:, :, :, None] * B.n + B.table[None, :, None, :]).reshape(
        A.n * B.n, A.n * B.n)
    return GroupTable(table, label=label or f"sd({A.label},{B.label},?)")


@dataclass(frozen=True)
class SemidirectPair:
    """An element (h, gH) of a coset-action product."""

    h: int
    coset: int


@dataclass
class NaturalSemidirect:
    """H |x G/H for an abelian normal H, with pair bookkeeping."""

    group: GroupTable
    base: GroupTable
    subgroup: SubgroupHandle
    quotient: QuotientMap

    def pair_index(self, h: int, coset: int) -> int:
        return self.subgroup.position_of(h) * self.quotient.quotient.n + coset

    def pair_of(self, idx: int) -> SemidirectPair:
        pos, coset = divmod(int(idx), self.quotient.quotient.n)
        return SemidirectPair(int(self.subgroup.members[pos]), coset)


def natural_semidirect(G: GroupTable, H: SubgroupHandle) -> NaturalSemidirect:
    """The coset-conjugation product H |x G/H on pairs (h, gH).

    Needs H abelian and normal; the product is
    (h1, g1 H)(h2, g2 H) = (h1 * h2^(g1^-1), g1 g2 H), and abelianness makes
    the twist independent of the representative, which is asserted rather
    than trusted.
    """
    if not H.is_abelian:
        m = H.members
        cm = G.commute_matrix[np.ix_(m, m)]
        i, j = map(int, np.argwhere(~cm)[0])
        raise PreconditionError("H must be abelian",
                                {"a": int(m[i]), "b": int(m[j])})
    witness = H.normality_witness()
    if witness is not None:
        g, h = witness
        raise PreconditionError("H must be normal",
                                {"g": g, "h": h, "conjugate": G.conj(h, g)})
    q = quotient_group(G, H)
    nq = q.quotient.n
    h = H.order
    pos = np.full(G.n, -1, dtype=np.int64)
    pos[H.members] = np.arange(h)
    cj = G.conjugation_table
    inv = G.inverse_table
    # twist[c, i] = position of h_i^(rep(c)^-1); representative independence check
    twist = pos[cj[np.ix_(H.members, inv[q.section])]].T
    per_element = pos[cj[np.ix_(H.members, inv)]].T      # [g, i] = pos of h_i^(g^-1)
    if not np.array_equal(per_element, twist[q.projection]):
        g = int(np.argmax((per_element != twist[q.projection]).any(axis=1)))
        raise LemmaViolation(
            "coset action depends on the representative despite abelian H",
            {"element": g, "coset": int(q.projection[g])})
    ht = pos[G.table[np.ix_(H.members, H.members)]]
    left = ht[:, twist]                       # [i1, c1, i2]
    table = (left[:, :, :, None] * nq
             + q.quotient.table[None, :, None, :]).reshape(G.n, G.n)
    group = GroupTable(table, label=f"nsd({G.label},H{H.order})")
    return NaturalSemidirect(group, G, H, q)


# -- the two-step collapse isomorphism ---------------------------------------


@dataclass
class IsomorphismWitness:
    ok: bool
    detail: str
    mapping: np.ndarray | None = None
    source_label: str = ""
    target_label: str = ""


def embedded_coset_image(ns: NaturalSemidirect, members: np.ndarray) -> np.ndarray:
    """Indices of {(identity, gH) : g in members} inside the product group."""
    return np.unique(ns.quotient.projection[members])


def two_step_collapse_witness(G: GroupTable, H: SubgroupHandle,
                              N: SubgroupHandle) -> IsomorphismWitness:
    """Certify that collapsing H then the image of N equals collapsing HN.

    Builds G1 = H |x G/H, the copy N1 of N inside G1, G2 = N1 |x G1/N1 and
    G3 = HN |x G/HN, then verifies the explicit pairing

        (hn, g HN)  ->  ((1, nH), (h, gH) N1)

    is a bijective homomorphism.  Any failure is returned as a finding, not
    raised, because it would falsify the construction this package leans on.
    """
    for S, name in ((H, "H"), (N, "N")):
        if not S.is_abelian:
            raise PreconditionError(f"{name} must be abelian")
        if S.normality_witness() is not None:
            raise PreconditionError(f"{name} must be normal")
    if int((H.mask & N.mask).sum()) != 1:
        raise PreconditionError("H and N must intersect trivially")

    G1 = natural_semidirect(G, H)
    n1_members = embedded_coset_image(G1, N.members)
    N1 = SubgroupHandle(G1.group, n1_members)
    if len(n1_members) != N.order:
        raise LemmaViolation("embedded copy of N collapsed", {"N": N.members.tolist()})
    wit = N1.normality_witness()
    if wit is not None:
        return IsomorphismWitness(False, f"embedded N is not normal: witness {wit}")
    if not N1.is_abelian:
        return IsomorphismWitness(False, "embedded N is not abelian")

    G2 = natural_semidirect(G1.group, N1)
    HN = subgroup_closure(G, np.append(H.members, N.members))
    G3 = natural_semidirect(G, HN)

    # factor each m in HN uniquely as h * n
    inv = G.inverse_table
    h_of = {}
    for m in HN.members:
        for hh in H.members:
            nn = int(G.table[inv[hh], m])
            if N.mask[nn]:
                h_of[int(m)] = (int(hh), nn)
                break
        else:
            return IsomorphismWitness(False, f"element {int(m)} of HN does not factor as h*n")

    nq1 = G1.quotient.quotient.n
    nq2 = G2.quotient.quotient.n
    nq3 = G3.quotient.quotient.n
    phi = np.empty(G.n, dtype=np.int64)
    for idx in range(G3.group.n):
        pos3, c3 = divmod(idx, nq3)
        m = int(HN.members[pos3])
        g = int(G3.quotient.section[c3])
        hh, nn = h_of[m]
        first = N1.position_of(int(G1.quotient.projection[nn]))
        second = int(G2.quotient.projection[G1.pair_index(hh, int(G1.quotient.projection[g]))])
        phi[idx] = first * nq2 + second

    if len(np.unique(phi)) != G.n:
        return IsomorphismWitness(False, "pairing is not injective",
                                  source_label=G3.group.label, target_label=G2.group.label)
    lhs = phi[G3.group.table]
    rhs = G2.group.table[np.ix_(phi, phi)]
    if not np.array_equal(lhs, rhs):
        a, b = map(int, np.argwhere(lhs != rhs)[0])
        return IsomorphismWitness(False, f"pairing breaks the product at ({a},{b})",
                                  mapping=phi, source_label=G3.group.label,
                                  target_label=G2.group.label)
    return IsomorphismWitness(True, "verified on all pairs", mapping=phi,
                              source_label=G3.group.label, target_label=G2.group.label)


# -- automorphisms and action enumeration -------------------------------------


def _hom_extension(G: GroupTable, gen_images: dict[int, int],
                   target: GroupTable) -> np.ndarray:
    """Extend generator images to a full map via the BFS construction trace."""
    trace = _construction_trace(G)
    out = np.full(G.n, -1, dtype=np.int64)
    out[0] = 0
    for e, parent, g in trace:
        out[e] = target.table[out[parent], gen_images[g]]
    return out


def _construction_trace(G: GroupTable) -> list[tuple[int, int, int]]:
    cached = G._subgroup_cache.get("trace")
    if cached is not None:
        return cached
    gens = G.generators
    reached = {0}
    trace: list[tuple[int, int, int]] = []
    frontier = [0]
    while frontier:
        nxt = []
        for parent in frontier:
            for g in gens:
                e = int(G.table[parent, g])
                if e not in reached:
                    reached.add(e)
                    trace.append((e, parent, g))
                    nxt.append(e)
        frontier = nxt
    G._subgroup_cache["trace"] = trace
    return trace


_AUT_CANDIDATE_CAP = 1_000_000


def automorphisms(G: GroupTable) -> list[np.ndarray]:
    """All automorphisms as permutation arrays, lexicographically sorted."""
    cached = G._subgroup_cache.get("auts")
    if cached is not None:
        return cached
    gens = G.generators
    orders = G.element_orders
    cands = [np.flatnonzero(orders == orders[g]) for g in gens]
    total = 1
    for c in cands:
        total *= len(c)
    if total > _AUT_CANDIDATE_CAP:
        raise InputError(
            f"automorphism search space {total} too large for {G.label}")
    out = []
    from itertools import product as iproduct

    for images in iproduct(*cands):
        gen_images = dict(zip(gens, map(int, images)))
        mapping = _hom_extension(G, gen_images, G)
        if len(np.unique(mapping)) != G.n:
            continue
        if np.array_equal(mapping[G.table], G.table[np.ix_(mapping, mapping)]):
            out.append(mapping)
    out.sort(key=lambda m: m.tolist())
    G._subgroup_cache["auts"] = out
    return out


def automorphism_table(G: GroupTable) -> tuple[GroupTable, list[np.ndarray]]:
    """The automorphisms as a group table under apply-left-then-right."""
    auts = automorphisms(G)
    arr = np.stack(auts)
    index = {a.tobytes(): i for i, a in enumerate(arr)}
    k = len(auts)
    table = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        composed = arr[:, arr[i]]            # row j = auts[j] after auts[i]
        for j in range(k):
            table[i, j] = index[composed[j].tobytes()]
    return GroupTable(table, label=f"aut({G.label})"), auts


def action_homs(acted: GroupTable, acting: GroupTable) -> list[np.ndarray]:
    """Every right action of `acting` on `acted`, in generator-image order.

    Index k of the returned list is the recipe-level action selector: homs
    are ordered lexicographically by the images chosen for the minimal
    generating sequence of the acting group, so index 0 is the trivial
    action (direct product).
    """
    aut_group, auts = automorphism_table(acted)
    arr = np.stack(auts)
    gens = acting.generators
    if not gens:
        return [np.tile(np.arange(acted.n)[:, None], (1, acting.n))]
    g_orders = [acting.order_of(g) for g in gens]
    cands = [
        np.flatnonzero(np.array([g_orders[i] % int(o) == 0
                                 for o in aut_group.element_orders]))
        for i in range(len(gens))
    ]
    out = []
    from itertools import product as iproduct

    for images in iproduct(*cands):
        gen_images = dict(zip(gens, map(int, images)))
        mapping = _hom_extension(acting, gen_images, aut_group)
        if not np.array_equal(mapping[acting.table],
                              aut_group.table[np.ix_(mapping, mapping)]):
            continue
        action = arr[mapping].T              # [a, b] = auts[mapping[b]][a]
        out.append(action)
    return out


def semidirect_from_selector(acted: GroupTable, acting: GroupTable, k: int) -> GroupTable:
    homs = action_homs(acted, acting)
    if not 0 <= k < len(homs):
        raise InputError(
            f"action selector {k} out of range: {len(homs)} actions of "
            f"{acting.label} on {acted.label}")
    spec = ActionSpec(acting=acting, acted=acted, action=homs[k])
    return semidirect_product(spec, label=f"sd({acted.label},{acting.label},{k})")


# -- corpus -------------------------------------------------------------------

FAMILIES = ("abelian", "dihedral", "symmetric", "alternating",
            "quaternion", "frobenius", "products", "semidirect")

_SD_CATALOGUE_ACTED = (
    *[(m,) for m in range(3, 32)],
    (2, 2), (3, 3), (5, 5), (2, 4), (2, 2, 2), (4, 4), (3, 9),
)
_SD_CATALOGUE_ACTING = (*[(m,) for m in range(2, 13)], (2, 2))


def _abelian_types(n: int) -> list[tuple[int, ...]]:
    """Primary decompositions of every abelian group of order n."""

    def partitions(k: int):
        if k == 0:
            yield ()
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or first >= rest[0]:
                    yield (first, *rest)

    types: list[tuple[int, ...]] = [()]
    m = n
    for p in prime_factors(n):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        new = []
        for part in partitions(e):
            factors = tuple(p ** x for x in part)
            new.extend(t + factors for t in types)
        types = new
    return [tuple(sorted(t)) for t in types]


def _fingerprint(G: GroupTable) -> tuple:
    sizes = tuple(sorted(conjugacy_classes(G).sizes))
    orders = tuple(sorted(int(o) for o in G.element_orders))
    return (G.n, sizes, orders)


def corpus(max_order: int, families=None):
    """Deterministic stream of corpus groups, deduplicated by table identity.

    Isomorphic duplicates with different tables are allowed and harmless;
    the semidirect catalogue additionally drops repeats with an identical
    (order, class sizes, element orders) fingerprint to keep it small.
    """
    if max_order > max_order_cap():
        raise InputError(f"max_order {max_order} beyond cap {max_order_cap()}")
    chosen = FAMILIES if families is None else tuple(families)
    unknown = set(chosen) - set(FAMILIES)
    if unknown:
        raise InputError(f"unknown families: {sorted(unknown)}")
    seen: set[bytes] = set()

    def fresh(G: GroupTable) -> bool:
        key = G.key()
        if key in seen:
            return False
        seen.add(key)
        return True

    base_nonabelian: list[GroupTable] = []
    abelian_tables: list[GroupTable] = []

    if "abelian" in chosen:
        for n in range(1, max_order + 1):
            for typ in _abelian_types(n):
                G = abelian_group(typ) if typ else cyclic(1)
                abelian_tables.append(G)
                if fresh(G):
                    yield G
    if "dihedral" in chosen:
        for n in range(3, max_order // 2 + 1):
            G = dihedral(n)
            base_nonabelian.append(G)
            if fresh(G):
                yield G
    if "symmetric" in chosen:
        for n in range(3, 7):
            if _factorial(n) > max_order:
                break
            G = symmetric(n)
            base_nonabelian.append(G)
            if fresh(G):
                yield G
    if "alternating" in chosen:
        for n in range(4, 7):
            if _factorial(n) // 2 > max_order:
                break
            G = alternating(n)
            base_nonabelian.append(G)
            if fresh(G):
                yield G
    if "quaternion" in chosen and max_order >= 8:
        G = quaternion8()
        base_nonabelian.append(G)
        if fresh(G):
            yield G
    if "frobenius" in chosen:
        for p in range(3, max_order // 2 + 1):
            if not is_prime(p):
                continue
            for q in range(2, p):
                if (p - 1) % q == 0 and p * q <= max_order:
                    G = frobenius(p, q)
                    base_nonabelian.append(G)
                    if fresh(G):
                        yield G
    if "products" in chosen and base_nonabelian:
        factors = sorted(base_nonabelian + abelian_tables,
                         key=lambda g: (g.n, g.label))
        factors = [g for g in factors if g.n > 1]

        def chains(start: int, order_left: int, need_nonabelian: bool):
            for i in range(start, len(factors)):
                f = factors[i]
                if f.n > order_left:
                    continue
                still_need = need_nonabelian and f.is_abelian()
                if not still_need:
                    yield (f,)
                for rest in chains(i, order_left // f.n, still_need):
                    yield (f, *rest)

        for chain in chains(0, max_order, True):
            if len(chain) < 2:
                continue
            G = chain[0]
            for f in chain[1:]:
                G = direct_product(G, f)
            if fresh(G):
                yield G
    if "semidirect" in chosen:
        fingerprints: set[tuple] = set()
        for acted_type in _SD_CATALOGUE_ACTED:
            acted_order = int(np.prod(acted_type))
            if acted_order * 2 > max_order:
                continue
            acted = abelian_group(acted_type)
            for acting_type in _SD_CATALOGUE_ACTING:
                acting_order = int(np.prod(acting_type))
                if acted_order * acting_order > max_order:
                    continue
                acting = abelian_group(acting_type)
                for k, action in enumerate(action_homs(acted, acting)):
                    if k == 0:
                        continue  # trivial action: a direct product, already present
                    spec = ActionSpec(acting=acting, acted=acted, action=action)
                    G = semidirect_product(
                        spec, label=f"sd({acted.label},{acting.label},{k})")
                    fp = _fingerprint(G)
                    if fp in fingerprints:
                        continue
                    fingerprints.add(fp)
                    if fresh(G):
                        yield G


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out
