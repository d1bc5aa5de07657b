"""Exhaustive per-group checks and the corpus-wide counterexample scan.

Each check replays a verified statement over every admissible tuple inside
one group: quantifiers are enumerated outermost-first so that skipped tuples
are counted with the hypothesis they miss, and no check narrows its range
silently.  A FAIL always carries a witness that replays the failure from
the reported elements alone.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass, field

import numpy as np

from .core import (
    GroupTable,
    LemmaViolation,
    PreconditionError,
    SubgroupHandle,
    centralizer_sizes,
    derived_series,
    normal_subgroups,
    p_part,
    prime_factors,
    quotient_group,
    subgroup_closure,
    subgroups_of,
    trivial_subgroup,
)
from .indices import hypothesis_check, ind_rel, index_set, norms
from .structure import (
    ca_decompose,
    fitting_data,
    is_a_group,
    l4_decompose,
    p_core,
    sylow_subgroup,
)
from .constructions import natural_semidirect, two_step_collapse_witness

LEMMA_IDS = ("basic", "cl2", "go", "centre", "size", "l4",
             "bingo", "key", "ca", "cc", "theorem")
EXPLORE_IDS = ("perfect", "primeiro", "segundo")

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class VerificationReport:
    group_label: str
    group_order: int
    lemma_id: str
    status: str
    hypothesis_note: str = ""
    witness: dict = field(default_factory=dict)
    checked: int = 0
    skipped: int = 0
    millis: float = 0.0

    def record(self) -> dict:
        """Serializable record; timing stays out so report files are byte-stable."""
        return {
            "group": self.group_label,
            "order": self.group_order,
            "lemma": self.lemma_id,
            "status": self.status,
            "note": self.hypothesis_note,
            "witness": self.witness,
            "checked": self.checked,
            "skipped": self.skipped,
        }


def _report(G: GroupTable, lemma: str, status: str, note: str = "",
            witness: dict | None = None, checked: int = 0, skipped: int = 0,
            started: float = 0.0) -> VerificationReport:
    return VerificationReport(
        G.label, G.n, lemma, status, note, witness or {}, checked, skipped,
        millis=(time.perf_counter() - started) * 1000 if started else 0.0)


def _group_seed(seed: int, label: str) -> int:
    return zlib.crc32(f"{seed}:{label}".encode()) & 0x7FFFFFFF


# -- basic divisibility and centralizer facts ----------------------------------


def check_basic(G: GroupTable) -> list[VerificationReport]:
    """Divisibility of orbit sizes under normal subgroups and quotients,
    centralizers of commuting coprime products, and centralizer images
    in quotients (with equality in the coprime case)."""
    t0 = time.perf_counter()
    n = G.n
    cm = G.commute_matrix
    cg = centralizer_sizes(G)
    ind_g = n // cg
    orders = G.element_orders
    checked = 0
    for K in normal_subgroups(G):
        q = quotient_group(G, K)
        ck = cm[K.members, :].sum(axis=0)
        ind_k = K.order // ck
        qc = centralizer_sizes(q.quotient)
        ind_q = (q.quotient.n // qc)[q.projection]
        if np.any(ind_g % ind_k) or np.any(ind_g % ind_q):
            x = int(np.argmax((ind_g % ind_k) + (ind_g % ind_q)))
            return [_report(G, "basic", FAIL,
                            "orbit size fails to divide",
                            {"K": K.members.tolist(), "x": x,
                             "ind_K": int(ind_k[x]), "ind_Q": int(ind_q[x]),
                             "ind_G": int(ind_g[x])},
                            checked, 0, t0)]
        # image of C_G(x) in G/K sits inside the centralizer of xK ...
        img_ok = ~cm | q.quotient.commute_matrix[np.ix_(q.projection, q.projection)]
        if not img_ok.all():
            u, x = map(int, np.argwhere(~img_ok)[0])
            return [_report(G, "basic", FAIL, "centralizer image escapes",
                            {"K": K.members.tolist(), "x": x, "u": u},
                            checked, 0, t0)]
        # ... with equality when the element order is coprime to |K|
        coprime = np.gcd(orders, K.order) == 1
        img_size = cg // ck
        if np.any(coprime & (img_size != qc[q.projection])):
            x = int(np.argmax(coprime & (img_size != qc[q.projection])))
            return [_report(G, "basic", FAIL, "coprime centralizer image too small",
                            {"K": K.members.tolist(), "x": x,
                             "image": int(img_size[x]),
                             "quotient_centralizer": int(qc[q.projection[x]])},
                            checked, 0, t0)]
        checked += 1
    # commuting coprime pairs: C(xy) = C(x) n C(y)
    coprime_pairs = np.gcd.outer(orders, orders) == 1
    for x in range(n):
        ys = np.flatnonzero(cm[x, :] & coprime_pairs[x] & (np.arange(n) > x))
        if ys.size == 0:
            continue
        xy = G.table[x, ys]
        good = cm[:, xy] == (cm[:, x][:, None] & cm[:, ys])
        if not good.all():
            bad = int(np.argmax(~good.all(axis=0)))
            return [_report(G, "basic", FAIL,
                            "centralizer of commuting coprime product",
                            {"x": x, "y": int(ys[bad])}, checked, 0, t0)]
        checked += ys.size
    return [_report(G, "basic", PASS, "", None, checked, 0, t0)]


def replay_basic_pair(G: GroupTable, x: int, y: int) -> bool:
    cm = G.commute_matrix
    xy = G.mul(x, y)
    return bool(np.array_equal(cm[:, xy], cm[:, x] & cm[:, y]))


# -- regular orbits of coprime faithful abelian actions --------------------------


def regular_orbit_exists(G: GroupTable, V: SubgroupHandle, A: SubgroupHandle) -> bool:
    stab_sizes = G.commute_matrix[np.ix_(A.members, V.members)].sum(axis=0)
    return bool((stab_sizes == 1).any())


def check_cl2_action(spec) -> VerificationReport:
    """Regular-orbit check for one explicit action.

    Gated on the three hypotheses: abelian acting group, faithful action,
    coprime orders.  Any unmet hypothesis yields SKIP with its name.
    """
    t0 = time.perf_counter()
    label = f"{spec.acting.label} acting on {spec.acted.label}"
    order = spec.acted.n

    def rep(status, note="", witness=None, checked=0, skipped=0):
        return VerificationReport(label, order, "cl2", status, note,
                                  witness or {}, checked, skipped,
                                  (time.perf_counter() - t0) * 1000)

    spec.validate()
    if not spec.acting.is_abelian():
        return rep(SKIP, "acting group is not abelian", skipped=1)
    from math import gcd

    if gcd(spec.acting.n, spec.acted.n) != 1:
        return rep(SKIP, "orders are not coprime", skipped=1)
    act = np.asarray(spec.action)
    trivial_columns = (act == np.arange(spec.acted.n)[:, None]).all(axis=0)
    if trivial_columns.sum() != 1:
        return rep(SKIP, "action is not faithful", skipped=1)
    stab_sizes = (act == np.arange(spec.acted.n)[:, None]).sum(axis=1)
    regular = np.flatnonzero(stab_sizes == 1)
    if regular.size:
        return rep(PASS, f"regular orbit at element {int(regular[0])}", checked=1)
    return rep(FAIL, "no regular orbit",
               {"stabilizer_sizes": stab_sizes.tolist()}, checked=1)


def check_cl2(G: GroupTable) -> list[VerificationReport]:
    """Faithful coprime action of an abelian group on an abelian normal
    subgroup (by conjugation) always has a regular orbit."""
    t0 = time.perf_counter()
    cm = G.commute_matrix
    subgroups = subgroups_of(G)
    normals = [V for V in subgroups if V.is_abelian and V.is_normal]
    abelians = [A for A in subgroups if A.is_abelian]
    a_orders = np.array([A.order for A in abelians])
    checked = skipped = 0
    for V in normals:
        coprime = np.gcd(a_orders, V.order) == 1
        skipped += int((~coprime).sum())
        cent_v = cm[:, V.members].all(axis=1)
        for idx in np.flatnonzero(coprime):
            A = abelians[idx]
            if cent_v[A.members].sum() != 1:
                skipped += 1  # kernel of the action is nontrivial
                continue
            checked += 1
            if not regular_orbit_exists(G, V, A):
                return [_report(G, "cl2", FAIL, "no regular orbit",
                                {"V": V.members.tolist(), "A": A.members.tolist()},
                                checked, skipped, t0)]
    note = "skipped tuples miss faithfulness or coprimality" if skipped else ""
    return [_report(G, "cl2", PASS, note, None, checked, skipped, t0)]


# -- coprime action splitting -----------------------------------------------------


def _coprime_split_ok(G: GroupTable, P: SubgroupHandle, a_list: np.ndarray):
    """Check C_P(a) x [P,a] = P for each a; returns index of first failure."""
    cm = G.commute_matrix
    cj = G.conjugation_table
    inv = G.inverse_table
    m = P.members
    cent_sizes = cm[np.ix_(m, a_list)].sum(axis=0)
    raw = G.table[inv[m][:, None], cj[np.ix_(m, a_list)]]      # [i, j] = h_i^-1 h_i^a_j
    srt = np.sort(raw, axis=0)
    comm_sizes = 1 + (srt[1:] != srt[:-1]).sum(axis=0)
    cover = cent_sizes * comm_sizes == P.order
    nontriv = (raw != 0) & cm[raw, a_list[None, :]]
    disjoint = ~nontriv.any(axis=0)
    ok = cover & disjoint
    if ok.all():
        return None
    return int(np.argmax(~ok))


def check_go(G: GroupTable) -> list[VerificationReport]:
    """Every abelian normal p-subgroup splits as fixed points times
    commutators under each element of coprime order."""
    t0 = time.perf_counter()
    orders = G.element_orders
    checked = 0
    for P in subgroups_of(G):
        if P.order == 1 or not P.is_abelian or not P.is_normal:
            continue
        primes = prime_factors(P.order)
        if len(primes) != 1:
            continue
        p = primes[0]
        a_list = np.flatnonzero(orders % p != 0)
        if a_list.size == 0:
            continue
        bad = _coprime_split_ok(G, P, a_list)
        if bad is not None:
            a = int(a_list[bad])
            return [_report(G, "go", FAIL, "no splitting",
                            {"P": P.members.tolist(), "a": a}, checked, 0, t0)]
        checked += a_list.size
    return [_report(G, "go", PASS, "", None, checked, 0, t0)]


def replay_go(G: GroupTable, P_members: list[int], a: int) -> bool:
    P = SubgroupHandle(G, np.array(P_members))
    return _coprime_split_ok(G, P, np.array([a])) is None


# -- centralizer product rules in the presence of an abelian normal subgroup ------


def check_centre(G: GroupTable) -> list[VerificationReport]:
    """When the centralizer of g covers the coset centralizer of gH exactly,
    centralizers multiply: C(hg) = C(h) n C(g) for every h in H."""
    t0 = time.perf_counter()
    cm = G.commute_matrix
    cg = centralizer_sizes(G)
    checked = skipped = 0
    for H in normal_subgroups(G):
        if not H.is_abelian:
            continue
        q = quotient_group(G, H)
        qc = centralizer_sizes(q.quotient)
        central = cm[:, H.members].all(axis=1)          # g with H <= C_G(g)
        cond = central & (cg == H.order * qc[q.projection])
        for g in np.flatnonzero(cond):
            checked += 1
            hg = G.table[H.members, g]
            good = cm[:, hg] == (cm[:, H.members] & cm[:, g][:, None])
            if not good.all():
                h = int(H.members[int(np.argmax(~good.all(axis=0)))])
                return [_report(G, "centre", FAIL, "centralizer product rule",
                                {"H": H.members.tolist(), "g": int(g), "h": h},
                                checked, skipped, t0)]
        skipped += int(central.sum() - cond.sum())
    note = "skipped g where C(g)/H falls short of the coset centralizer" if skipped else ""
    return [_report(G, "centre", PASS, note, None, checked, skipped, t0)]


def check_size(G: GroupTable) -> list[VerificationReport]:
    """An order-preserving translate hg of a coprime element g by the abelian
    normal p-subgroup H is an H-conjugate of g, with |C(hg)| = |C(g)|."""
    t0 = time.perf_counter()
    orders = G.element_orders
    cg = centralizer_sizes(G)
    cj = G.conjugation_table
    checked = skipped = 0
    for H in normal_subgroups(G):
        if H.order == 1 or not H.is_abelian:
            continue
        primes = prime_factors(H.order)
        if len(primes) != 1:
            continue
        p = primes[0]
        p_prime = np.flatnonzero(np.array([p_part(int(o), p) == 1 for o in orders]))
        for g in p_prime:
            prods = G.table[H.members, g]
            keep = orders[prods] == orders[g]
            skipped += int((~keep).sum())
            if not keep.any():
                continue
            checked += int(keep.sum())
            conjugates = np.unique(cj[g, H.members])
            hits = np.isin(prods[keep], conjugates)
            sizes_ok = cg[prods[keep]] == cg[g]
            if not (hits & sizes_ok).all():
                h = int(H.members[np.flatnonzero(keep)[int(np.argmax(~(hits & sizes_ok)))]])
                return [_report(G, "size", FAIL, "translate is not an H-conjugate",
                                {"H": H.members.tolist(), "g": int(g), "h": h},
                                checked, skipped, t0)]
    note = "skipped h with |hg| != |g|" if skipped else ""
    return [_report(G, "size", PASS, note, None, checked, skipped, t0)]


def _normal_p_subgroups(G: GroupTable, p: int) -> list[SubgroupHandle]:
    """All normal p-subgroups: subgroups of the p-core that G normalizes."""
    core = p_core(G, p)
    return [H for H in subgroups_of(G, limit=core) if H.is_normal]


def check_l4(G: GroupTable) -> list[VerificationReport]:
    """The centralizer-controlled splitting of p-elements outside a normal
    p-subgroup, whenever the coset centralizer strictly exceeds C(g)."""
    t0 = time.perf_counter()
    orders = G.element_orders
    cg = centralizer_sizes(G)
    checked = trivial = 0
    for p in prime_factors(G.n):
        if not sylow_subgroup(G, p).is_abelian:
            continue
        p_elts = np.flatnonzero(np.array(
            [int(o) > 1 and p_part(int(o), p) == int(o) for o in orders]))
        for H in _normal_p_subgroups(G, p):
            q = quotient_group(G, H)
            qcm = q.quotient.commute_matrix
            for g in p_elts:
                if H.mask[g]:
                    continue
                t_size = int(qcm[:, q.projection[g]].sum()) * H.order
                if t_size == cg[g]:
                    trivial += 1
                    continue
                checked += 1
                try:
                    split = l4_decompose(G, H, int(g))
                except LemmaViolation as exc:
                    return [_report(G, "l4", FAIL, str(exc),
                                    {"H": H.members.tolist(), "g": int(g),
                                     **exc.witness},
                                    checked, 0, t0)]
                assert not split.trivial_case
    note = f"{trivial} tuples with C(g) already full are trivially split"
    return [_report(G, "l4", PASS, note if trivial else "", None,
                    checked + trivial, 0, t0)]


# -- index-set invariance under the coset-action product --------------------------


def bingo_compare(G: GroupTable, H: SubgroupHandle,
                  candidate: GroupTable) -> tuple[list[int], list[int]]:
    """Index-set differences (missing_from_candidate, extra_in_candidate)."""
    ng = index_set(G)
    nc = index_set(candidate)
    return ([s for s in ng if s not in nc], [s for s in nc if s not in ng])


def bingo_tuples(G: GroupTable) -> list[tuple[int, SubgroupHandle]]:
    """Admissible (prime, normal p-subgroup) pairs, deduplicated across primes."""
    tuples: list[tuple[int, SubgroupHandle]] = []
    seen_keys: set[bytes] = set()
    admissible_primes = [p for p in prime_factors(G.n)
                         if sylow_subgroup(G, p).is_abelian]
    for p in admissible_primes:
        for H in _normal_p_subgroups(G, p):
            if H.key() in seen_keys:
                continue
            seen_keys.add(H.key())
            tuples.append((p, H))
    if G.n == 1:
        tuples.append((2, trivial_subgroup(G)))
    return tuples


def check_bingo_pair(G: GroupTable, H: SubgroupHandle) -> list[VerificationReport]:
    """Index-set comparison for one (G, H) pair, gated on its hypotheses."""
    t0 = time.perf_counter()
    gate = None
    if H.normality_witness() is not None:
        gate = "H is not normal"
    else:
        primes = prime_factors(H.order)
        if len(primes) > 1:
            gate = "H is not a p-group"
        elif primes and not sylow_subgroup(G, primes[0]).is_abelian:
            gate = f"Sylow {primes[0]}-subgroup is not abelian"
        elif not primes and not any(sylow_subgroup(G, p).is_abelian
                                    for p in prime_factors(G.n)) and G.n > 1:
            gate = "no prime with an abelian Sylow subgroup"
    if gate is not None:
        return [_report(G, lemma, SKIP, gate, None, 0, 1, t0)
                for lemma in ("bingo1", "bingo2", "bingo")]
    ns = natural_semidirect(G, H)
    missing, extra = bingo_compare(G, H, ns.group)
    base = {"H": H.members.tolist()}
    out = [
        _report(G, "bingo1", FAIL if missing else PASS,
                "class size of G missing from the product" if missing else "",
                {**base, "missing": missing} if missing else None, 1, 0, t0),
        _report(G, "bingo2", FAIL if extra else PASS,
                "product has a class size G lacks" if extra else "",
                {**base, "extra": extra} if extra else None, 1, 0, t0),
        _report(G, "bingo", FAIL if (missing or extra) else PASS,
                "index sets differ" if (missing or extra) else "",
                {**base, "missing": missing, "extra": extra}
                if (missing or extra) else None, 1, 0, t0),
    ]
    return out


def check_bingo(G: GroupTable) -> list[VerificationReport]:
    """N(G) equals the index set of H |x G/H for every normal p-subgroup H
    at a prime with abelian Sylow subgroup; both inclusions reported."""
    t0 = time.perf_counter()
    tuples = bingo_tuples(G)
    if not tuples:
        note = "no prime with an abelian Sylow subgroup"
        return [_report(G, lemma, SKIP, note) for lemma in ("bingo1", "bingo2", "bingo")]
    missing_fail = extra_fail = None
    checked = 0
    for p, H in tuples:
        ns = natural_semidirect(G, H)
        missing, extra = bingo_compare(G, H, ns.group)
        checked += 1
        if missing and missing_fail is None:
            missing_fail = {"p": p, "H": H.members.tolist(), "missing": missing}
        if extra and extra_fail is None:
            extra_fail = {"p": p, "H": H.members.tolist(), "extra": extra}
    reports = []
    reports.append(_report(G, "bingo1",
                           FAIL if missing_fail else PASS,
                           "class size of G missing from the product" if missing_fail else "",
                           missing_fail, checked, 0, t0))
    reports.append(_report(G, "bingo2",
                           FAIL if extra_fail else PASS,
                           "product has a class size G lacks" if extra_fail else "",
                           extra_fail, checked, 0, t0))
    both = missing_fail or extra_fail
    reports.append(_report(G, "bingo", FAIL if both else PASS,
                           "index sets differ" if both else "",
                           both, checked, 0, t0))
    return reports


def replay_bingo(G: GroupTable, H_members: list[int]) -> bool:
    H = SubgroupHandle(G, np.array(H_members))
    ns = natural_semidirect(G, H)
    missing, extra = bingo_compare(G, H, ns.group)
    return not missing and not extra


def check_key(G: GroupTable, *, seed: int = 0) -> list[VerificationReport]:
    """Collapsing the Fitting subgroup preserves the index set, the iterated
    per-prime collapse agrees, the two-step pairings certify, and the
    collapse is abelian exactly when G is."""
    t0 = time.perf_counter()
    if not is_a_group(G):
        return [_report(G, "key", SKIP, "not an A-group: some Sylow subgroup is nonabelian"),
                _report(G, "key_iff", SKIP, "not an A-group")]
    fd = fitting_data(G)
    F = fd.fitting
    ng = index_set(G)
    single = natural_semidirect(G, F)
    n_single = index_set(single.group)
    checked = 1
    if n_single.sizes != ng.sizes:
        return [_report(G, "key", FAIL, "single collapse changed the index set",
                        {"F": F.members.tolist(),
                         "N_G": list(ng.sizes), "N_collapse": list(n_single.sizes)},
                        checked, 0, t0),
                _report(G, "key_iff", SKIP, "index-set mismatch")]
    primes = sorted(p for p, c in fd.p_cores.items() if c.order > 1)
    cur = G
    embed = np.arange(G.n)
    acc: SubgroupHandle | None = None
    for i, p in enumerate(primes):
        core_members = fd.p_cores[p].members
        image = np.unique(embed[core_members])
        if len(image) != len(core_members):
            return [_report(G, "key", FAIL, "iterated embedding collapsed a p-core",
                            {"p": p}, checked, 0, t0),
                    _report(G, "key_iff", SKIP, "iterated embedding failed")]
        try:
            ns = natural_semidirect(cur, SubgroupHandle(cur, image))
        except (PreconditionError, LemmaViolation) as exc:
            return [_report(G, "key", FAIL,
                            f"embedded p-core at prime {p} broke the construction: {exc}",
                            {"p": p}, checked, 0, t0),
                    _report(G, "key_iff", SKIP, "iterated collapse failed")]
        cur = ns.group
        embed = ns.quotient.projection[embed]
        checked += 1
        if index_set(cur).sizes != ng.sizes:
            return [_report(G, "key", FAIL,
                            f"iterated collapse at prime {p} changed the index set",
                            {"p": p, "N_G": list(ng.sizes),
                             "N_step": list(index_set(cur).sizes)},
                            checked, 0, t0),
                    _report(G, "key_iff", SKIP, "iterated collapse failed")]
        if acc is not None:
            wit = two_step_collapse_witness(G, acc, fd.p_cores[p])
            checked += 1
            if not wit.ok:
                return [_report(G, "key", FAIL, f"two-step pairing failed: {wit.detail}",
                                {"H": acc.members.tolist(),
                                 "N": fd.p_cores[p].members.tolist()},
                                checked, 0, t0),
                        _report(G, "key_iff", SKIP, "pairing failed")]
        acc_members = (core_members if acc is None
                       else subgroup_closure(G, np.append(acc.members, core_members)).members)
        acc = SubgroupHandle(G, acc_members)
    key_report = _report(G, "key", PASS, "", None, checked, 0, t0)
    iff_ok = G.is_abelian() == single.group.is_abelian()
    iff_report = _report(G, "key_iff", PASS if iff_ok else FAIL,
                         "" if iff_ok else "abelianness changed under the collapse",
                         None if iff_ok else {"F": F.members.tolist()}, 1, 0, t0)
    return [key_report, iff_report]


# -- Fitting complements -----------------------------------------------------------


def check_ca(G: GroupTable, *, seed: int = 0) -> list[VerificationReport]:
    """Fitting-complement splittings: fixed-point factorization of F under
    complement elements, conjugation into commuting (F, T) pairs, and the
    centralizer product rule with its index consequence."""
    t0 = time.perf_counter()
    if not is_a_group(G):
        return [_report(G, "ca", SKIP, "not an A-group")]
    fd = fitting_data(G, with_complement=True, seed=seed)
    if fd.complement is None:
        return [_report(G, "ca", SKIP,
                        "no Fitting complement found; splitting hypothesis unmet")]
    F, T = fd.fitting, fd.complement
    cm = G.commute_matrix
    cg = centralizer_sizes(G)
    checked = 0
    # (i) F = C_F(y) x [F, y]
    bad = _coprime_split_ok(G, F, T.members) if F.order > 1 else None
    if bad is not None:
        return [_report(G, "ca", FAIL, "no fixed-point splitting of F",
                        {"F": F.members.tolist(), "y": int(T.members[bad])},
                        checked, 0, t0)]
    checked += T.order
    # (ii) every element conjugates into a commuting pair
    for g in range(G.n):
        try:
            ca_decompose(G, F, T, g)
        except LemmaViolation as exc:
            return [_report(G, "ca", FAIL, str(exc), {"g": g, **exc.witness},
                            checked, 0, t0)]
        checked += 1
    # (iii) commuting pairs multiply centralizers
    for y in T.members:
        xs = F.members[cm[F.members, y]]
        if xs.size == 0:
            continue
        xy = G.table[xs, y]
        good = cm[:, xy] == (cm[:, xs] & cm[:, y][:, None])
        if not good.all():
            x = int(xs[int(np.argmax(~good.all(axis=0)))])
            return [_report(G, "ca", FAIL, "centralizer product rule for (F,T) pair",
                            {"x": x, "y": int(y)}, checked, 0, t0)]
        inter = (cm[:, xs] & cm[:, y][:, None]).sum(axis=0)
        covers = cg[xs] * cg[y] // inter == G.n
        lhs = G.n // cg[xy]
        rhs = (G.n // cg[xs]) * (G.n // cg[y])
        if np.any(covers & (lhs != rhs)):
            x = int(xs[int(np.argmax(covers & (lhs != rhs)))])
            return [_report(G, "ca", FAIL, "index does not multiply",
                            {"x": x, "y": int(y)}, checked, 0, t0)]
        checked += int(xs.size)
    return [_report(G, "ca", PASS, "", None, checked, 0, t0)]


def cc_predicate(G: GroupTable, F: SubgroupHandle) -> tuple[bool, dict]:
    """For each prime, some member of F has class size with full p-part |G/F|_p."""
    cg = centralizer_sizes(G)
    inds = G.n // cg[F.members]
    for p in prime_factors(G.n):
        target = p_part(G.n // F.order, p)
        if not any(p_part(int(i), p) == target for i in inds):
            return False, {"p": p, "target": target}
    return True, {}


def check_cc(G: GroupTable) -> list[VerificationReport]:
    """Existence, inside F, of class sizes realizing the full p-part of |G/F|.

    Asserted for solvable A-groups; for non-solvable A-groups the predicate
    is evaluated and recorded but never asserted.
    """
    t0 = time.perf_counter()
    if not is_a_group(G):
        return [_report(G, "cc", SKIP, "not an A-group")]
    F = fitting_data(G).fitting
    ok, wit = cc_predicate(G, F)
    if not derived_series(G).is_solvable:
        note = f"group not solvable; predicate observed: {'holds' if ok else 'fails'}"
        return [_report(G, "cc", SKIP, note, None, 0, 1, t0)]
    if not ok:
        return [_report(G, "cc", FAIL, "no member of F realizes the p-part",
                        {"F": F.members.tolist(), **wit},
                        len(prime_factors(G.n)), 0, t0)]
    return [_report(G, "cc", PASS, "", None, len(prime_factors(G.n)), 0, t0)]


# -- the theorem scan ---------------------------------------------------------------


def theorem_scan(groups) -> "ScanResult":
    """Hypothesis-implies-abelian over any stream of groups, with cell counts."""
    t0 = time.perf_counter()
    reports: list[VerificationReport] = []
    cells: dict[tuple[bool, bool, bool], int] = {}
    counterexamples: list[str] = []
    count = 0
    for G in groups:
        count += 1
        (r,) = check_theorem(G)
        reports.append(r)
        w = r.witness
        cell = (w["is_a_group"], w["satisfies"], w["abelian"])
        cells[cell] = cells.get(cell, 0) + 1
        if cell == (True, True, False):
            counterexamples.append(G.label)
    reports.sort(key=lambda r: (r.group_order, r.group_label, r.lemma_id))
    return ScanResult(reports, count, cells, sorted(counterexamples),
                      time.perf_counter() - t0)


def check_theorem(G: GroupTable) -> list[VerificationReport]:
    """A-group whose index set contains every p-norm and the total norm
    must be abelian."""
    t0 = time.perf_counter()
    hc = hypothesis_check(G)
    abelian = G.is_abelian()
    witness = {"is_a_group": hc.is_a_group,
               "contains_all_prime_norms": hc.contains_all_prime_norms,
               "contains_total_norm": hc.contains_total_norm,
               "satisfies": hc.satisfied,
               "abelian": abelian}
    if hc.satisfied and not abelian:
        return [_report(G, "theorem", FAIL,
                        "counterexample: hypothesis holds but the group is nonabelian",
                        witness, 1, 0, t0)]
    return [_report(G, "theorem", PASS, "", witness, 1, 0, t0)]


# -- exploratory predicates (never asserted) -----------------------------------------


def explore_minimal_lemmas(G: GroupTable, *, seed: int = 0) -> list[VerificationReport]:
    """Record statistics for the three statements that live inside the
    minimal-counterexample argument; they are observed on centerless
    A-groups with complements, never asserted."""
    t0 = time.perf_counter()
    out = []
    gate = None
    if not is_a_group(G):
        gate = "not an A-group"
    elif int(G.commute_matrix.all(axis=0).sum()) > 1:
        gate = "center is nontrivial"
    fd = None
    if gate is None:
        fd = fitting_data(G, with_complement=True, seed=seed)
        if fd.complement is None:
            gate = "no complement found"
    if gate is not None:
        return [_report(G, lemma, SKIP, f"exploratory; {gate}") for lemma in EXPLORE_IDS]
    F, T, F2 = fd.fitting, fd.complement, fd.second_fitting
    cg = centralizer_sizes(G)
    q = quotient_group(G, F)
    qc = centralizer_sizes(q.quotient)

    evaluated = holds = 0
    for g in F2.members:
        i2 = ind_rel(G, F2, int(g))
        if i2 == 1:
            continue
        facs = prime_factors(i2)
        if len(facs) != 1:
            continue
        p = facs[0]
        evaluated += 1
        ind_qg = q.quotient.n // int(qc[q.projection[g]])
        if p_part(ind_qg, p) == 1:
            holds += 1
    out.append(_report(G, "perfect", SKIP,
                       f"exploratory; evaluated={evaluated} holds={holds}",
                       None, 0, 1, t0))

    inds_f = (G.n // cg[F.members])
    notes = []
    for p in prime_factors(G.n):
        notes.append(f"p={p}:{'yes' if p_part(T.order, p) in set(map(int, inds_f)) else 'no'}")
    out.append(_report(G, "primeiro", SKIP,
                       "exploratory; witness found " + ",".join(notes), None, 0, 1, t0))

    nrm = norms(index_set(G))
    notes = []
    for p in prime_factors(G.n):
        best = max(p_part(ind_rel(G, F, int(g)), p) for g in range(G.n))
        in_t = any(G.n // int(cg[g]) == best for g in T.members)
        product_ok = nrm.per_prime[p] == p_part(T.order, p) * best
        notes.append(f"p={p}:{'yes' if (in_t and product_ok) else 'no'}")
    out.append(_report(G, "segundo", SKIP,
                       "exploratory; " + ",".join(notes), None, 0, 1, t0))
    return out


# -- orchestration -------------------------------------------------------------------


_CHECKS = {
    "basic": check_basic,
    "cl2": check_cl2,
    "go": check_go,
    "centre": check_centre,
    "size": check_size,
    "l4": check_l4,
    "bingo": check_bingo,
    "theorem": check_theorem,
    "cc": check_cc,
}


def check_centre_size_l4(G: GroupTable) -> list[VerificationReport]:
    return [*check_centre(G), *check_size(G), *check_l4(G)]


def check_ca_cc(G: GroupTable, *, seed: int = 0) -> list[VerificationReport]:
    return [*check_ca(G, seed=seed), *check_cc(G)]


def verify_group(G: GroupTable, lemmas=("all",), *, seed: int = 0,
                 explore: bool = False) -> list[VerificationReport]:
    wanted = set(lemmas)
    if "all" in wanted:
        wanted = set(LEMMA_IDS)
    unknown = wanted - set(LEMMA_IDS)
    if unknown:
        raise ValueError(f"unknown lemma ids: {sorted(unknown)}")
    gseed = _group_seed(seed, G.label)
    out: list[VerificationReport] = []
    for lemma in LEMMA_IDS:
        if lemma not in wanted:
            continue
        if lemma == "key":
            out.extend(check_key(G, seed=gseed))
        elif lemma == "ca":
            out.extend(check_ca(G, seed=gseed))
        else:
            out.extend(_CHECKS[lemma](G))
    if explore:
        out.extend(explore_minimal_lemmas(G, seed=gseed))
    return out


@dataclass
class ScanResult:
    reports: list[VerificationReport]
    group_count: int
    theorem_cells: dict[tuple[bool, bool, bool], int]
    counterexamples: list[str]
    seconds: float

    @property
    def fail_count(self) -> int:
        return sum(1 for r in self.reports if r.status == FAIL)

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for r in self.reports:
            out[r.status] += 1
        return out


def _scan_one(G: GroupTable, lemmas, seed: int, explore: bool):
    reports = verify_group(G, lemmas, seed=seed, explore=explore)
    cell = None
    for r in reports:
        if r.lemma_id == "theorem":
            w = r.witness
            cell = (w["is_a_group"], w["satisfies"], w["abelian"])
    return reports, cell


def _scan_worker(args):
    max_order, families, lemmas, seed, explore, worker, jobs = args
    from .constructions import corpus

    out = []
    for i, G in enumerate(corpus(max_order, families)):
        if i % jobs != worker:
            continue
        out.append(_scan_one(G, lemmas, seed, explore))
    return out


def scan(max_order: int, families=None, lemmas=("all",), *, seed: int = 7,
         jobs: int = 1, explore: bool = False) -> ScanResult:
    """Run the selected checks over the whole corpus, optionally in parallel.

    Reports come back sorted by (order, group, lemma) so output is identical
    however the work was partitioned.
    """
    from .constructions import corpus

    t0 = time.perf_counter()
    results = []
    if jobs <= 1:
        for G in corpus(max_order, families):
            results.append(_scan_one(G, lemmas, seed, explore))
    else:
        from concurrent.futures import ProcessPoolExecutor

        args = [(max_order, tuple(families) if families else None,
                 tuple(lemmas), seed, explore, w, jobs) for w in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_scan_worker, args):
                results.extend(chunk)
    reports = [r for group_reports, _ in results for r in group_reports]
    reports.sort(key=lambda r: (r.group_order, r.group_label, r.lemma_id))
    cells: dict[tuple[bool, bool, bool], int] = {}
    counterexamples = []
    for group_reports, cell in results:
        if cell is not None:
            cells[cell] = cells.get(cell, 0) + 1
            if cell == (True, True, False):
                counterexamples.append(group_reports[0].group_label)
    return ScanResult(reports, len(results), cells, sorted(counterexamples),
                      time.perf_counter() - t0)
