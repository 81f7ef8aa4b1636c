"""Permutation tuples in S_n: cycle types and product-one searches up to conjugation."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .groups import Group, make_group
from .hurwitz import BudgetExceeded

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """p then q."""
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if not seen[i]:
            L, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            parts.append(L)
    return tuple(sorted(parts, reverse=True))


def ind(p: Perm) -> int:
    return len(p) - len(cycle_type(p))


def orbits(perms: Sequence[Perm], n: int) -> list[list[int]]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in perms:
        for i in range(n):
            a, b = find(i), find(p[i])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def is_transitive(perms: Sequence[Perm], n: int) -> bool:
    return n <= 1 or len(orbits(perms, n)) == 1


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as nonincreasing tuples, lexicographically decreasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def partition_index(part: Sequence[int]) -> int:
    return sum(part) - len(part)


@lru_cache(maxsize=None)
def symmetric(n: int) -> tuple[Group, tuple[Perm, ...], dict]:
    """S_n with its element list (lexicographic) and the inverse lookup."""
    G = make_group(f"S{n}")
    perms = tuple(itertools.permutations(range(n)))
    return G, perms, {p: i for i, p in enumerate(perms)}


@lru_cache(maxsize=None)
def elements_of_type(n: int, part: tuple[int, ...]) -> tuple[int, ...]:
    G, perms, _ = symmetric(n)
    part = tuple(sorted(part, reverse=True))
    return tuple(i for i, p in enumerate(perms) if cycle_type(p) == part)


def search_sigma_tuples(
    n: int,
    allowed: Sequence[Sequence[int]],
    ind_total: int | None = None,
    min_ind: Sequence[int] | None = None,
    accept: Callable[[tuple[int, ...]], bool] | None = None,
    first_only: bool = False,
    budget: int = 10 ** 8,
    counter: list[int] | None = None,
) -> list[tuple[int, ...]]:
    """Product-one transitive tuples in S_n, one per simultaneous-conjugation orbit.

    ``allowed[i]`` lists element indices of S_n permitted at position i; each list must be a
    union of conjugacy classes.  With ``ind_total`` the indices of the entries must sum to it.
    Returned tuples are lexicographically minimal in their orbit.
    """
    G, perms, _ = symmetric(n)
    rows, inv = G.rows, G.inv
    k = len(allowed)
    if k == 0:
        return [()] if n <= 1 else []
    ind_of = [ind(p) for p in perms]
    allowed_sets = [frozenset(a) for a in allowed]
    if min_ind is None:
        min_ind = [min((ind_of[x] for x in a), default=0) for a in allowed]
    rest_min = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        rest_min[i] = rest_min[i + 1] + min_ind[i]
    nodes = counter if counter is not None else [0]
    found: list[tuple[int, ...]] = []

    first_choices = sorted({G.class_of_element(x).rep for x in allowed[0]})

    def canonical(t):
        g0 = t[0]
        for c in range(G.order):
            if rows[c][g0] != rows[g0][c]:
                continue
            ci = inv[c]
            if tuple(rows[rows[c][x]][ci] for x in t) < t:
                return False
        return True

    def finish(t):
        if ind_total is not None and sum(ind_of[x] for x in t) != ind_total:
            return False
        if not is_transitive([perms[x] for x in t], n):
            return False
        if accept is not None and not accept(t):
            return False
        return canonical(t)

    stack = [(1, g0, ind_of[g0], (g0,)) for g0 in reversed(first_choices)]
    while stack:
        i, p, s, pre = stack.pop()
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"sigma-tuple search exceeded budget {budget}")
        if ind_total is not None and s + rest_min[i] > ind_total:
            continue
        if i == k:
            if p == 0 and finish(pre):
                found.append(pre)
                if first_only:
                    return found
            continue
        if i == k - 1:
            g = inv[p]
            if g in allowed_sets[i]:
                stack.append((k, 0, s + ind_of[g], pre + (g,)))
            continue
        for g in reversed(allowed[i]):
            stack.append((i + 1, rows[p][g], s + ind_of[g], pre + (g,)))
    found.sort()
    return found
