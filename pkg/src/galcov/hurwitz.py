"""Ramification types, Nielsen classes and the Riemann-Hurwitz genus."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .groups import Group, make_group

DEFAULT_BUDGET = 10 ** 8


class BudgetExceeded(RuntimeError):
    pass


class UnrealizableType(ValueError):
    pass


@dataclass(frozen=True)
class RamificationType:
    group: Group
    classes: tuple[str, ...]

    def __post_init__(self):
        G = self.group
        ids = tuple(G.classes[G.resolve_class(c)].id for c in self.classes)
        if not ids:
            raise ValueError("a ramification type needs at least one branch point")
        if "1A" in ids:
            raise ValueError("the trivial class cannot be an inertia class")
        object.__setattr__(self, "classes", ids)

    @property
    def r(self) -> int:
        return len(self.classes)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.group.class_by_id(c).order for c in self.classes)

    def members(self, i: int) -> tuple[int, ...]:
        return self.group.class_by_id(self.classes[i]).members

    def sorted(self) -> "RamificationType":
        G = self.group
        return RamificationType(G, tuple(sorted(self.classes, key=G.resolve_class)))

    def multiset(self) -> tuple[str, ...]:
        return tuple(sorted(self.classes, key=self.group.resolve_class))

    def __str__(self) -> str:
        return format_type(self)


def format_type(T: RamificationType) -> str:
    return f"{T.group.name} : {','.join(T.classes)}"


def parse_type(text: str) -> RamificationType:
    spec, sep, cls = text.rpartition(":")
    if not sep or not spec.strip():
        raise ValueError(f"expected 'GROUPSPEC : classid,...', got {text!r}")
    G = make_group(spec.strip())
    return RamificationType(G, tuple(c.strip() for c in cls.split(",") if c.strip()))


def genus_from_orders(group_order: int, orders: Sequence[int]) -> int:
    """g - 1 = |G|/2 (r - 2 - sum 1/e_i); raises UnrealizableType unless a nonnegative integer."""
    r = len(orders)
    if all(group_order % e == 0 for e in orders):
        v = group_order * (r - 2) - sum(group_order // e for e in orders) + 2
        if v % 2 == 0 and v >= 0:
            return v // 2
    two_g_minus_2 = Fraction(group_order) * (r - 2 - sum(Fraction(1, e) for e in orders))
    g2 = two_g_minus_2 + 2
    if g2.denominator != 1 or g2.numerator % 2 or g2 < 0:
        raise UnrealizableType(f"genus formula gives g = {g2 / 2} for |G|={group_order}, e={tuple(orders)}")
    return g2.numerator // 2


def genus(T: RamificationType) -> int:
    return genus_from_orders(T.group.order, T.orders)


def _cycle_count_right_mult(G: Group, g: int) -> int:
    seen = [False] * G.order
    cycles = 0
    for x in range(G.order):
        if seen[x]:
            continue
        cycles += 1
        y = x
        while not seen[y]:
            seen[y] = True
            y = G.rows[y][g]
    return cycles


def genus_from_tuple(G: Group, tup: Sequence[int]) -> int:
    """Genus via the regular representation: 2 - 2g = 2|G| - sum of indices of the g_i."""
    ind = sum(G.order - _cycle_count_right_mult(G, g) for g in tup)
    val = ind - 2 * G.order + 2
    if val % 2 or val < 0:
        raise UnrealizableType("index sum incompatible with a connected cover")
    return val // 2


def _suffix_sets(G: Group, mems: list[tuple[int, ...]]) -> list[frozenset[int]]:
    r = len(mems)
    S: list[frozenset[int]] = [frozenset()] * (r + 1)
    S[r] = frozenset([0])
    rows = G.rows
    for i in range(r - 1, -1, -1):
        S[i] = frozenset(rows[c][s] for c in mems[i] for s in S[i + 1])
    return S


def _search(T: RamificationType, budget: int, first_only: bool) -> list[tuple[int, ...]]:
    G = T.group
    rows, inv = G.rows, G.inv
    mems = [T.members(i) for i in range(T.r)]
    S = _suffix_sets(G, mems)
    if 0 not in S[0]:
        return []
    g1 = mems[0][0]
    cent = [c for c in range(G.order) if rows[c][g1] == rows[g1][c]]
    nodes = 0
    gen_cache: dict[frozenset, bool] = {}
    found: list[tuple[int, ...]] = []
    r = T.r

    def canonical(t):
        best = t
        for c in cent:
            ci = inv[c]
            u = tuple(rows[rows[c][x]][ci] for x in t)
            if u < best:
                return False
        return best == t

    stack = [(1, rows[0][g1], (g1,))]
    while stack:
        i, p, pre = stack.pop()
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"Nielsen enumeration exceeded budget {budget}")
        if i == r:
            if p != 0:
                continue
            key = frozenset(pre)
            ok = gen_cache.get(key)
            if ok is None:
                ok = gen_cache[key] = G.generates(key)
            if ok and canonical(pre):
                found.append(pre)
                if first_only:
                    return found
            continue
        need = S[i + 1]
        if i == r - 1:
            g = inv[p]
            if g in mems[i]:
                stack.append((r, 0, pre + (g,)))
            continue
        for g in reversed(mems[i]):
            q = rows[p][g]
            if inv[q] in need:
                stack.append((i + 1, q, pre + (g,)))
    found.sort()
    return found


def nielsen_tuples(T: RamificationType, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """One lexicographically minimal tuple per simultaneous-conjugation orbit."""
    return _search(T, budget, first_only=False)


def nielsen_count(T: RamificationType, budget: int = DEFAULT_BUDGET) -> int:
    return len(nielsen_tuples(T, budget))


def is_ramification_type(T: RamificationType, budget: int = DEFAULT_BUDGET) -> bool:
    return bool(_search(T, budget, first_only=True))


def first_nielsen_tuple(T: RamificationType, budget: int = DEFAULT_BUDGET) -> tuple[int, ...] | None:
    res = _search(T, budget, first_only=True)
    return res[0] if res else None


def is_nielsen_tuple(T: RamificationType, tup: Sequence[int]) -> bool:
    G = T.group
    return (len(tup) == T.r
            and all(G.class_of_element(g).id == c for g, c in zip(tup, T.classes))
            and G.prod(tup) == 0
            and G.generates(tup))


def type_of_tuple(G: Group, tup: Iterable[int]) -> RamificationType:
    return RamificationType(G, tuple(G.class_of_element(g).id for g in tup if g != 0))


def k_rationalize(T: RamificationType, indices: Iterable[int]) -> RamificationType:
    """Replace each selected adjacent pair (C, C^-1) by (C, C^-1, C^2, C^-2, ..., C^(e-1), C^-(e-1)).

    ``indices`` are the positions of the first entry of each pair.
    """
    G = T.group
    starts = sorted(set(indices))
    for a, b in zip(starts, starts[1:]):
        if b - a < 2:
            raise ValueError("selected pairs overlap")
    out: list[str] = []
    i = 0
    sel = set(starts)
    while i < T.r:
        if i in sel:
            if i + 1 >= T.r:
                raise ValueError(f"position {i} has no partner")
            C = G.class_by_id(T.classes[i])
            if G.inverse_class(C).id != T.classes[i + 1]:
                raise ValueError(f"positions {i},{i + 1} are not a pair (C, C^-1)")
            for k in range(1, C.order):
                out += [G.class_power(C, k).id, G.class_power(C, -k).id]
            i += 2
        else:
            out.append(T.classes[i])
            i += 1
    return RamificationType(G, tuple(out))


def genus_upper_bound(G: Group, r0: int) -> int:
    """Floor of the largest genus allowed by r0 branch points: 2g <= 2 - 2|G| + r0 |G| (1 - 1/e_max)."""
    if r0 < 0:
        raise ValueError("r0 must be nonnegative")
    emax = max(G.orders)
    bound = 2 - 2 * G.order + r0 * G.order * (1 - Fraction(1, emax))
    return (bound / 2).__floor__()


def class_multisets(G: Group, r: int) -> Iterable[tuple[str, ...]]:
    ids = [c.id for c in G.classes[1:]]
    return itertools.combinations_with_replacement(ids, r)
