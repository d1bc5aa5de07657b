"""Finite groups as dense Cayley tables, with the elementary algorithms.

Every group handled by this package is an explicit n x n multiplication
table over element indices 0..n-1, with the identity normalized to index 0.
Desk-scale orders (a few hundred elements, hard cap 2000) keep the tables
cache friendly, and every derived computation is a table lookup.

Tables are immutable after construction and safe to share between workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_MAX_ORDER = 2000
_max_order_cap = DEFAULT_MAX_ORDER

_INDEX_DTYPE = np.int32


def max_order_cap() -> int:
    return _max_order_cap


def set_max_order_cap(n: int) -> None:
    """Override the desk-scale cap (the CLI wires --cap and AGROUPS_CAP here)."""
    global _max_order_cap
    if n < 1:
        raise InputError(f"cap must be positive, got {n}")
    _max_order_cap = n


class InputError(ValueError):
    """Malformed input: bad indices, broken table, invalid parameters."""


class PreconditionError(ValueError):
    """An operation's precondition failed; carries a witness when available."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class LemmaViolation(RuntimeError):
    """A verified mathematical claim failed on a concrete group.

    This never fires on a valid group; the verification harness converts it
    into a FAIL report with the witness attached.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


def _as_table(table) -> np.ndarray:
    arr = np.asarray(table, dtype=_INDEX_DTYPE)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"table must be square, got shape {arr.shape}")
    return arr


def generating_set(table: np.ndarray) -> list[int]:
    """Greedy generating set: repeatedly add the smallest uncovered element."""
    n = len(table)
    closed = np.zeros(n, dtype=bool)
    closed[0] = True
    members = np.array([0], dtype=np.int64)
    gens: list[int] = []
    while members.size < n:
        x = int(np.argmin(closed))  # first False
        gens.append(x)
        members = _close_members(table, np.append(members, x))
        closed[:] = False
        closed[members] = True
    return gens


def _close_members(table: np.ndarray, members: np.ndarray) -> np.ndarray:
    members = np.unique(members)
    while True:
        prods = np.unique(table[members[:, None], members])
        if prods.size == members.size:
            return prods
        members = prods


def find_identity(table: np.ndarray) -> int | None:
    n = len(table)
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            return e
    return None


def verify_group_axioms(table: np.ndarray) -> None:
    """Raise InputError naming the first violated group axiom, with indices.

    Associativity is verified exactly with Light's test: it is enough to
    check a * (g * b) == (a * g) * b for g in a generating set, which brings
    the cost down from n^3 to |gens| * n^2 without sampling.
    """
    table = _as_table(table)
    n = len(table)
    if n == 0:
        raise InputError("empty table")
    bad = np.argwhere((table < 0) | (table >= n))
    if bad.size:
        a, b = map(int, bad[0])
        raise InputError(
            f"closure violated at ({a},{b}): entry {int(table[a, b])} not in [0,{n})"
        )
    idx = np.arange(n)
    if not np.array_equal(table[0], idx):
        b = int(np.argmax(table[0] != idx))
        raise InputError(f"identity violated at (0,{b}): 0*{b} != {b}")
    if not np.array_equal(table[:, 0], idx):
        a = int(np.argmax(table[:, 0] != idx))
        raise InputError(f"identity violated at ({a},0): {a}*0 != {a}")
    zero_counts = (table == 0).sum(axis=1)
    if not np.all(zero_counts == 1):
        a = int(np.argmax(zero_counts != 1))
        raise InputError(f"inverses violated: row {a} has {int(zero_counts[a])} solutions of {a}*y=0")
    for g in generating_set(table):
        left = table[:, table[g, :]]   # [a,b] -> a*(g*b)
        right = table[table[:, g], :]  # [a,b] -> (a*g)*b
        if not np.array_equal(left, right):
            a, b = map(int, np.argwhere(left != right)[0])
            raise InputError(f"associativity violated at ({a},{g},{b})")


class GroupTable:
    """A finite group as an explicit multiplication table.

    The identity is element 0.  Axioms are verified exactly at construction
    unless ``trusted=True`` (reserved for tables produced from an
    already-verified construction, e.g. relabelled subgroups).
    """

    __slots__ = (
        "table", "n", "label",
        "_inv", "_orders", "_commute", "_conj", "_classes", "_gens",
        "_subgroup_cache",
    )

    def __init__(self, table, label: str = "", *, trusted: bool = False):
        arr = _as_table(table)
        if len(arr) > _max_order_cap:
            raise InputError(
                f"group order {len(arr)} exceeds the desk-scale cap {_max_order_cap}"
            )
        if not trusted:
            verify_group_axioms(arr)
        arr.setflags(write=False)
        self.table = arr
        self.n = len(arr)
        self.label = label or f"G{self.n}"
        self._inv = None
        self._orders = None
        self._commute = None
        self._conj = None
        self._classes = None
        self._gens = None
        self._subgroup_cache = {}

    # -- element arithmetic ------------------------------------------------

    def _check_index(self, *elements: int) -> None:
        for x in elements:
            if not 0 <= int(x) < self.n:
                raise InputError(f"element index {x} out of range [0,{self.n})")

    def mul(self, a: int, b: int) -> int:
        self._check_index(a, b)
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        self._check_index(a)
        return int(self.inverse_table[a])

    def conj(self, a: int, b: int) -> int:
        """Conjugate a^b = b^-1 * a * b."""
        self._check_index(a, b)
        return int(self.conjugation_table[a, b])

    def power(self, a: int, k: int) -> int:
        self._check_index(a)
        k %= self.order_of(a)
        result, base = 0, int(a)
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result

    def order_of(self, a: int) -> int:
        self._check_index(a)
        return int(self.element_orders[a])

    # -- cached derived data ------------------------------------------------

    @property
    def inverse_table(self) -> np.ndarray:
        if self._inv is None:
            inv = np.argmax(self.table == 0, axis=1).astype(_INDEX_DTYPE)
            inv.setflags(write=False)
            self._inv = inv
        return self._inv

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.n
            orders = np.zeros(n, dtype=np.int64)
            cur = np.arange(n)
            k = 1
            while np.any(orders == 0):
                orders[(cur == 0) & (orders == 0)] = k
                cur = self.table[cur, np.arange(n)]
                k += 1
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    @property
    def commute_matrix(self) -> np.ndarray:
        """Boolean matrix: entry [g, x] iff g and x commute."""
        if self._commute is None:
            m = self.table == self.table.T
            m.setflags(write=False)
            self._commute = m
        return self._commute

    @property
    def conjugation_table(self) -> np.ndarray:
        """Entry [x, g] = g^-1 * x * g."""
        if self._conj is None:
            n = self.n
            inv = self.inverse_table
            cj = np.empty((n, n), dtype=_INDEX_DTYPE)
            for g in range(n):
                cj[:, g] = self.table[self.table[inv[g], :], g]
            cj.setflags(write=False)
            self._conj = cj
        return self._conj

    @property
    def generators(self) -> list[int]:
        if self._gens is None:
            self._gens = generating_set(self.table)
        return self._gens

    def is_abelian(self) -> bool:
        return bool(self.commute_matrix.all())

    def key(self) -> bytes:
        return self.table.tobytes()

    def __repr__(self) -> str:
        return f"GroupTable({self.label!r}, order={self.n})"


# -- subgroups ---------------------------------------------------------------


class SubgroupHandle:
    """A subgroup as a sorted member list plus a boolean membership mask."""

    __slots__ = ("parent", "members", "mask", "_is_normal", "_is_abelian")

    def __init__(self, parent: GroupTable, members: np.ndarray,
                 *, is_normal: bool | None = None, is_abelian: bool | None = None):
        self.parent = parent
        members = np.unique(np.asarray(members, dtype=np.int64))
        mask = np.zeros(parent.n, dtype=bool)
        mask[members] = True
        mask.setflags(write=False)
        members.setflags(write=False)
        self.members = members
        self.mask = mask
        self._is_normal = is_normal
        self._is_abelian = is_abelian
        if members[0] != 0:
            raise PreconditionError("subgroup must contain the identity",
                                    {"members": members.tolist()})
        if parent.n % len(members) != 0:
            raise PreconditionError(
                f"|H| = {len(members)} does not divide |G| = {parent.n}",
                {"members": members.tolist()},
            )

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __len__(self) -> int:
        return len(self.members)

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            m = self.members
            self._is_abelian = bool(self.parent.commute_matrix[np.ix_(m, m)].all())
        return self._is_abelian

    @property
    def is_normal(self) -> bool:
        if self._is_normal is None:
            self._is_normal = self.normality_witness() is None
        return self._is_normal

    def normality_witness(self) -> tuple[int, int] | None:
        """Return (g, h) with h^g outside the subgroup, or None if normal."""
        cj = self.parent.conjugation_table
        for g in self.parent.generators:
            conj = cj[self.members, g]
            outside = ~self.mask[conj]
            if outside.any():
                h = int(self.members[int(np.argmax(outside))])
                return g, h
        return None

    def key(self) -> bytes:
        return self.mask.tobytes()

    def position_of(self, x: int) -> int:
        """Index of element x inside the sorted member list."""
        pos = int(np.searchsorted(self.members, x))
        if pos >= len(self.members) or self.members[pos] != x:
            raise InputError(f"element {x} is not a member")
        return pos

    def __repr__(self) -> str:
        return f"SubgroupHandle(order={self.order} of {self.parent.label!r})"


def subgroup_closure(G: GroupTable, gens) -> SubgroupHandle:
    """Smallest subgroup containing the generators (breadth-first closure)."""
    gens = list(gens)
    G._check_index(*gens)
    members = _close_members(G.table, np.array([0, *gens], dtype=np.int64))
    return SubgroupHandle(G, members)


def trivial_subgroup(G: GroupTable) -> SubgroupHandle:
    return SubgroupHandle(G, np.array([0]), is_normal=True, is_abelian=True)


def full_subgroup(G: GroupTable) -> SubgroupHandle:
    return SubgroupHandle(G, np.arange(G.n), is_normal=True)


def centralizer(G: GroupTable, elements) -> SubgroupHandle:
    """Subgroup of everything commuting with each of the given elements."""
    elements = list(elements)
    if not elements:
        raise InputError("centralizer of an empty set is not defined here; use the full group")
    G._check_index(*elements)
    mask = G.commute_matrix[:, elements].all(axis=1)
    return SubgroupHandle(G, np.flatnonzero(mask))


def centralizer_mask(G: GroupTable, x: int) -> np.ndarray:
    return G.commute_matrix[:, x]


def center(G: GroupTable) -> SubgroupHandle:
    mask = G.commute_matrix.all(axis=0)
    return SubgroupHandle(G, np.flatnonzero(mask), is_normal=True, is_abelian=True)


def normalizer(G: GroupTable, H: SubgroupHandle) -> SubgroupHandle:
    conj = G.conjugation_table[H.members, :]          # [i, g] = h_i^g
    mask = H.mask[conj].all(axis=0)
    return SubgroupHandle(G, np.flatnonzero(mask))


# -- conjugacy classes -------------------------------------------------------


@dataclass
class ClassPartition:
    """Conjugacy classes, ordered by their minimal element."""

    classes: list[np.ndarray]
    class_of: np.ndarray

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def conjugacy_classes(G: GroupTable) -> ClassPartition:
    n = G.n
    cj = G.conjugation_table
    class_of = np.full(n, -1, dtype=np.int64)
    classes: list[np.ndarray] = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        orbit = np.unique(cj[x, :])
        class_of[orbit] = len(classes)
        classes.append(orbit)
    return ClassPartition(classes, class_of)


def centralizer_sizes(G: GroupTable) -> np.ndarray:
    """|C_G(x)| for every x at once (column sums of the commuting matrix)."""
    return G.commute_matrix.sum(axis=0)


# -- quotients ---------------------------------------------------------------


@dataclass
class QuotientMap:
    """G -> G/N with a deterministic section (minimal coset representatives)."""

    source: GroupTable
    kernel: SubgroupHandle
    quotient: GroupTable
    projection: np.ndarray   # element of G  -> element of G/N
    section: np.ndarray      # element of G/N -> minimal representative in G

    def preimage(self, quotient_members) -> np.ndarray:
        mask = np.zeros(self.quotient.n, dtype=bool)
        mask[np.asarray(quotient_members, dtype=np.int64)] = True
        return np.flatnonzero(mask[self.projection])


def quotient_group(G: GroupTable, N: SubgroupHandle) -> QuotientMap:
    cached = G._subgroup_cache.get(("quot", N.key()))
    if cached is not None:
        return cached
    witness = N.normality_witness()
    if witness is not None:
        g, h = witness
        raise PreconditionError(
            f"subgroup is not normal: {h}^{g} = {G.conj(h, g)} lies outside",
            {"g": g, "h": h, "conjugate": G.conj(h, g)},
        )
    coset_min = G.table[:, N.members].min(axis=1)     # min of each left coset xN
    reps = np.unique(coset_min)
    projection = np.searchsorted(reps, coset_min)
    qtable = projection[G.table[np.ix_(reps, reps)]]
    # pi(xy) == pi(x) pi(y) everywhere: a surjective table homomorphism with
    # pi(0) = 0 forces every group axiom on the coset table, so the quotient
    # needs no separate axiom sweep.
    if not np.array_equal(projection[G.table], qtable[np.ix_(projection, projection)]):
        raise LemmaViolation("coset projection failed to be a homomorphism",
                             {"kernel": N.members.tolist()})
    quotient = GroupTable(qtable, label=f"{G.label}/N{N.order}", trusted=True)
    out = QuotientMap(G, N, quotient, projection.astype(np.int64), reps.astype(np.int64))
    G._subgroup_cache[("quot", N.key())] = out
    return out


def subgroup_as_table(G: GroupTable, H: SubgroupHandle) -> tuple[GroupTable, np.ndarray]:
    """Relabel a subgroup as a standalone GroupTable.

    Returns the table and the member list mapping new indices back to G.
    """
    m = H.members
    pos = np.full(G.n, -1, dtype=np.int64)
    pos[m] = np.arange(len(m))
    sub = pos[G.table[np.ix_(m, m)]]
    return GroupTable(sub, label=f"{G.label}|sub{H.order}", trusted=True), m


# -- derived series and solvability -------------------------------------------


@dataclass
class DerivedSeries:
    series: list[SubgroupHandle]
    is_solvable: bool


def commutator_subgroup(G: GroupTable, H: SubgroupHandle) -> SubgroupHandle:
    """Derived subgroup of H, computed inside G."""
    m = H.members
    inv = G.inverse_table
    left = G.table[np.ix_(inv[m], inv[m])]
    right = G.table[np.ix_(m, m)]
    comms = np.unique(G.table[left, right])
    members = _close_members(G.table, np.append(comms, 0))
    return SubgroupHandle(G, members)


def derived_series(G: GroupTable) -> DerivedSeries:
    series = [full_subgroup(G)]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
        if nxt.order == 1:
            break
    return DerivedSeries(series, series[-1].order == 1)


# -- coprime-part decomposition ------------------------------------------------


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def pp_decomposition(G: GroupTable, g: int, p: int) -> tuple[int, int]:
    """Split g = u*v = v*u into its p-part u and p'-part v.

    Writes |g| = p^k * m and takes u = g^a, v = g^(1-a) where a = 1 mod p^k
    and a = 0 mod m; the decomposition is unique so there is nothing to
    tie-break.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    G._check_index(g)
    o = G.order_of(g)
    pk = p_part(o, p)
    m = o // pk
    if pk == 1:
        return 0, g
    if m == 1:
        return g, 0
    a = (m * pow(m, -1, pk)) % o
    u = G.power(g, a)
    v = G.power(g, (1 - a) % o)
    return u, v


def commutator_with_element(G: GroupTable, H: SubgroupHandle, g: int) -> SubgroupHandle:
    """[H, g] for an abelian H normalized by g.

    In that situation the raw commutator set {h^-1 * h^g : h in H} is already
    a subgroup, which is asserted rather than re-closed.
    """
    G._check_index(g)
    if not H.is_abelian:
        m = H.members
        cm = G.commute_matrix[np.ix_(m, m)]
        i, j = map(int, np.argwhere(~cm)[0])
        raise PreconditionError(
            "subgroup is not abelian",
            {"a": int(m[i]), "b": int(m[j])},
        )
    conj = G.conjugation_table[H.members, g]
    if not H.mask[conj].all():
        bad = int(np.argmax(~H.mask[conj]))
        raise PreconditionError(
            "subgroup is not normalized by the element",
            {"g": g, "h": int(H.members[bad]), "conjugate": int(conj[bad])},
        )
    comms = np.unique(G.table[G.inverse_table[H.members], conj])
    closed = _close_members(G.table, comms)
    if closed.size != comms.size:
        raise LemmaViolation(
            "commutator set [H,g] failed to be a subgroup despite abelian normal H",
            {"H": H.members.tolist(), "g": g},
        )
    return SubgroupHandle(G, comms)


# -- subgroup enumeration -------------------------------------------------------


def _mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


def _elementary_abelian_subgroups(G: GroupTable, P: SubgroupHandle, p: int) -> list[np.ndarray]:
    """All subgroups of an elementary abelian p-subgroup, via echelon forms.

    Subgroups are F_p-subspaces; reduced row-echelon matrices enumerate each
    exactly once.  This sidesteps the closure walk, which is hopeless for
    something like rank 7 over F_2 (29212 subspaces).
    """
    m = P.members
    # greedy basis
    basis: list[int] = []
    span = np.array([0], dtype=np.int64)
    span_mask = np.zeros(G.n, dtype=bool)
    span_mask[0] = True
    for x in m:
        if not span_mask[x]:
            basis.append(int(x))
            span = _close_members(G.table, np.append(span, x))
            span_mask[:] = False
            span_mask[span] = True
    r = len(basis)
    # element index for every coordinate vector, built one basis digit at a time
    codes = np.zeros(p ** r, dtype=np.int64)
    block = 1
    for i, b in enumerate(basis):
        powers = [0]
        for _ in range(p - 1):
            powers.append(int(G.table[powers[-1], b]))
        for d in range(1, p):
            codes[d * block:(d + 1) * block] = G.table[codes[:block], powers[d]]
        block *= p
    weights = p ** np.arange(r)

    def span_codes(rows: list[np.ndarray]) -> np.ndarray:
        vecs = np.zeros((1, r), dtype=np.int64)
        for row in rows:
            vecs = np.concatenate([(vecs + c * row) % p for c in range(p)])
        return np.unique(vecs @ weights)

    from itertools import combinations, product as iproduct

    out: list[np.ndarray] = []
    for k in range(r + 1):
        for pivots in combinations(range(r), k):
            free_pos = [
                (i, j)
                for i, pc in enumerate(pivots)
                for j in range(pc + 1, r)
                if j not in pivots
            ]
            for fill in iproduct(range(p), repeat=len(free_pos)):
                mat = np.zeros((k, r), dtype=np.int64)
                for i, pc in enumerate(pivots):
                    mat[i, pc] = 1
                for (i, j), v in zip(free_pos, fill):
                    mat[i, j] = v
                rows = [mat[i] for i in range(k)]
                out.append(np.sort(codes[span_codes(rows)]))
    return out


def _abelian_subgroups(G: GroupTable, P: SubgroupHandle) -> list[np.ndarray]:
    """All subgroups of an abelian subgroup via prime-index extensions.

    In an abelian group every subgroup is reached by a chain of prime-index
    steps, so each extension is H together with at most p-1 cosets of a
    single element; no general closure is needed.
    """
    n = G.n
    T = G.table
    primes = prime_factors(P.order) or [2]
    # x -> x^p for each relevant prime
    pw = {}
    for p in primes:
        cur = np.zeros(n, dtype=np.int64)
        for _ in range(p):
            cur = T[cur, np.arange(n)]
        pw[p] = cur
    seen: dict[bytes, np.ndarray] = {}
    triv_mask = np.zeros(n, dtype=bool)
    triv_mask[0] = True
    seen[_mask_key(triv_mask)] = np.array([0], dtype=np.int64)
    frontier = [np.array([0], dtype=np.int64)]
    while frontier:
        nxt: list[np.ndarray] = []
        for mem in frontier:
            mask = np.zeros(n, dtype=bool)
            mask[mem] = True
            for p in primes:
                cands = np.flatnonzero(P.mask & ~mask & mask[pw[p]])
                if cands.size == 0:
                    continue
                # rows of new members: x^k * H for k = 1..p-1
                powers = cands.copy()
                blocks = [T[np.ix_(powers, mem)]]
                for _ in range(p - 2):
                    powers = T[powers, cands]
                    blocks.append(T[np.ix_(powers, mem)])
                rows = np.concatenate(blocks, axis=1)
                ext = np.zeros((len(cands), n), dtype=bool)
                ext[np.arange(len(cands))[:, None], rows] = True
                ext |= mask
                packed = np.packbits(ext, axis=1)
                for i in range(len(cands)):
                    key = packed[i].tobytes()
                    if key not in seen:
                        new_mem = np.flatnonzero(ext[i])
                        seen[key] = new_mem
                        nxt.append(new_mem)
        frontier = nxt
    return list(seen.values())


def _generic_subgroups(G: GroupTable, limit: SubgroupHandle | None = None) -> list[np.ndarray]:
    """Subgroup lattice walk: join each subgroup with each cyclic atom.

    Extending by whole cyclic subgroups instead of single elements cuts the
    number of closures roughly by the average element order, and seeding the
    closure with the union of two subgroups makes it converge in fewer
    rounds.
    """
    n = G.n
    within = limit.mask if limit is not None else np.ones(n, dtype=bool)
    # prime-power cyclic subgroups suffice as join atoms: a composite cyclic
    # subgroup is the join of the prime-power cyclics it contains
    orders = G.element_orders
    atoms: dict[bytes, np.ndarray] = {}
    for x in np.flatnonzero(within):
        if x == 0 or len(prime_factors(int(orders[x]))) != 1:
            continue
        powers = [0]
        y = int(x)
        while y != 0:
            powers.append(y)
            y = int(G.table[y, x])
        mem = np.unique(np.array(powers, dtype=np.int64))
        atoms.setdefault(mem.tobytes(), mem)
    atom_list = list(atoms.values())
    seen: dict[bytes, np.ndarray] = {}
    triv_mask = np.zeros(n, dtype=bool)
    triv_mask[0] = True
    seen[_mask_key(triv_mask)] = np.array([0], dtype=np.int64)
    frontier = [np.array([0], dtype=np.int64)]
    while frontier:
        nxt: list[np.ndarray] = []
        for mem in frontier:
            mask = np.zeros(n, dtype=bool)
            mask[mem] = True
            for atom in atom_list:
                if mask[atom].all():
                    continue
                new_mem = _close_members(G.table, np.concatenate([mem, atom]))
                if limit is not None and not within[new_mem].all():
                    continue
                mask2 = np.zeros(n, dtype=bool)
                mask2[new_mem] = True
                key = _mask_key(mask2)
                if key not in seen:
                    seen[key] = new_mem
                    nxt.append(new_mem)
        frontier = nxt
    return list(seen.values())


def subgroups_of(G: GroupTable, limit: SubgroupHandle | None = None) -> list[SubgroupHandle]:
    """Every subgroup of G (or of the given subgroup), deterministically ordered.

    Abelian scopes use the fast enumerations; anything else walks the lattice.
    Results are cached on the parent table.
    """
    scope = limit if limit is not None else full_subgroup(G)
    cache_key = ("subs", scope.key())
    cached = G._subgroup_cache.get(cache_key)
    if cached is None:
        if scope.is_abelian:
            orders = G.element_orders[scope.members]
            primes = prime_factors(scope.order)
            if len(primes) == 1 and bool((orders[orders > 1] == primes[0]).all()):
                raw = _elementary_abelian_subgroups(G, scope, primes[0])
            else:
                raw = _abelian_subgroups(G, scope)
        else:
            raw = _generic_subgroups(G, scope if limit is not None else None)
        raw.sort(key=lambda mem: (len(mem), mem.tolist()))
        cached = raw
        G._subgroup_cache[cache_key] = cached
    return [SubgroupHandle(G, mem) for mem in cached]


def normal_subgroups(G: GroupTable) -> list[SubgroupHandle]:
    return [H for H in subgroups_of(G) if H.is_normal]
