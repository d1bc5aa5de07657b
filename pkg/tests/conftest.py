"""Shared fixtures and independent brute-force oracles.

The oracles here are deliberately plain Python over list-of-list tables:
no numpy, no reuse of the library's algorithms.  Expected values frozen in
the tests were computed with these.
"""

from __future__ import annotations

from itertools import permutations

import pytest

from agroups import constructions as cons


# -- pure-python oracles -------------------------------------------------------


def table_rows(G) -> list[list[int]]:
    return [[int(v) for v in row] for row in G.table]


def oracle_assoc_violation(t: list[list[int]]):
    n = len(t)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    return (a, b, c)
    return None


def oracle_inverse(t: list[list[int]], x: int) -> int:
    return t[x].index(0)


def oracle_order(t: list[list[int]], x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = t[y][x]
        k += 1
    return k


def oracle_conj(t: list[list[int]], a: int, b: int) -> int:
    return t[t[oracle_inverse(t, b)][a]][b]


def oracle_centralizer(t: list[list[int]], xs) -> list[int]:
    return [g for g in range(len(t))
            if all(t[g][x] == t[x][g] for x in xs)]


def oracle_class_of(t: list[list[int]], x: int) -> set[int]:
    return {oracle_conj(t, x, g) for g in range(len(t))}


def oracle_class_sizes(t: list[list[int]]) -> list[int]:
    seen: set[int] = set()
    sizes = []
    for x in range(len(t)):
        if x in seen:
            continue
        cls = oracle_class_of(t, x)
        seen |= cls
        sizes.append(len(cls))
    return sorted(sizes)


def oracle_closure(t: list[list[int]], gens) -> frozenset[int]:
    members = {0, *gens}
    frontier = list(members)
    while frontier:
        nxt = []
        for a in list(members):
            for b in frontier:
                for prod in (t[a][b], t[b][a]):
                    if prod not in members:
                        members.add(prod)
                        nxt.append(prod)
        frontier = nxt
    return frozenset(members)


def oracle_subgroups(t: list[list[int]]) -> set[frozenset[int]]:
    """Full lattice by single-element extensions; small orders only."""
    n = len(t)
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for H in frontier:
            for x in range(n):
                if x in H:
                    continue
                J = oracle_closure(t, H | {x})
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return found


def oracle_is_normal(t: list[list[int]], members) -> bool:
    ms = set(members)
    return all(oracle_conj(t, h, g) in ms for h in ms for g in range(len(t)))


def is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def oracle_p_core_small(t: list[list[int]], p: int) -> frozenset[int]:
    """Largest normal p-subgroup via the full subgroup lattice."""
    best = frozenset({0})
    for H in oracle_subgroups(t):
        if len(H) > len(best) and is_p_power(len(H), p) and oracle_is_normal(t, H):
            best = H
    return best


def oracle_p_core_closures(t: list[list[int]], p: int) -> frozenset[int]:
    """Largest normal p-subgroup as the span of elements whose normal
    closure is a p-group; avoids the full lattice."""
    collected = []
    for x in range(len(t)):
        if not is_p_power(oracle_order(t, x), p):
            continue
        nc = oracle_closure(t, oracle_class_of(t, x))
        if is_p_power(len(nc), p):
            collected.append(x)
    return oracle_closure(t, collected)


def perm_mul(p, q):
    return tuple(q[p[i]] for i in range(len(p)))


def sorted_perm_group(gens) -> tuple[list[tuple[int, ...]], dict]:
    deg = len(gens[0])
    identity = tuple(range(deg))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = perm_mul(p, q)
                if r not in elements:
                    elements.add(r)
                    nxt.append(r)
        frontier = nxt
    perms = sorted(elements)
    return perms, {p: i for i, p in enumerate(perms)}


# -- fixtures -------------------------------------------------------------------


@pytest.fixture(scope="session")
def s3():
    return cons.symmetric(3)


@pytest.fixture(scope="session")
def a4():
    return cons.alternating(4)


@pytest.fixture(scope="session")
def s3_perms():
    return sorted(permutations(range(3)))


@pytest.fixture(scope="session")
def corpus_100():
    return list(cons.corpus(100))


@pytest.fixture(scope="session")
def corpus_200():
    return list(cons.corpus(200))


@pytest.fixture(scope="session")
def small_pool():
    """A varied pool for property tests: cheap to verify exhaustively."""
    return [
        cons.cyclic(1), cons.cyclic(6), cons.cyclic(8), cons.abelian_group((2, 2, 3)),
        cons.symmetric(3), cons.symmetric(4), cons.alternating(4), cons.quaternion8(),
        cons.dihedral(5), cons.dihedral(6), cons.frobenius(7, 3), cons.frobenius(5, 4),
        cons.direct_product(cons.symmetric(3), cons.cyclic(2)),
        cons.semidirect_from_selector(cons.abelian_group((3, 3)), cons.cyclic(2), 1),
    ]
