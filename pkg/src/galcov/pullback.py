"""Pullbacks of Galois covers along rational maps.

A rational map T0 of degree n is described by its ramification profile: one partition of n
over each branch point of f, plus partitions over extra points where only T0 ramifies.  The
inertia of the pullback over a preimage of index l above t_i is the class C_i^l, so the
pullback type follows from the profile alone.  ``fiber_product_oracle`` recomputes the same
data from explicit branch cycles and also decides connectivity.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groups import Group
from .hurwitz import RamificationType, UnrealizableType, genus_from_orders
from .perms import compose, cycle_type


def _norm(part) -> tuple[int, ...]:
    return tuple(sorted((int(x) for x in part), reverse=True))


@dataclass(frozen=True)
class PullbackProfile:
    degree: int
    over_branch: tuple[tuple[int, ...], ...]
    extra: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        ob = tuple(_norm(p) for p in self.over_branch)
        ex = tuple(sorted((_norm(p) for p in self.extra), reverse=True))
        for p in ob + ex:
            if sum(p) != self.degree or min(p, default=0) < 1:
                raise ValueError(f"{list(p)} is not a partition of {self.degree}")
        for p in ex:
            if max(p) == 1:
                raise ValueError("extra points must carry ramification")
        object.__setattr__(self, "over_branch", ob)
        object.__setattr__(self, "extra", ex)

    def index_sum(self) -> int:
        return sum(l - 1 for p in self.over_branch + self.extra for l in p)

    def satisfies_riemann_hurwitz(self) -> bool:
        return self.index_sum() == 2 * self.degree - 2

    def to_dict(self) -> dict:
        return {"degree": self.degree,
                "over_branch": [list(p) for p in self.over_branch],
                "extra": [list(p) for p in self.extra]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "PullbackProfile":
        return cls(int(d["degree"]), tuple(map(tuple, d["over_branch"])),
                   tuple(map(tuple, d.get("extra", []))))

    @classmethod
    def from_json(cls, text: str) -> "PullbackProfile":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class PullbackResult:
    group: Group
    classes: tuple[str, ...]
    r_t0: int
    genus: int | None
    connectivity: str  # "unknown" or "disconnected-suspect"

    @property
    def type(self) -> RamificationType | None:
        return RamificationType(self.group, self.classes) if self.classes else None

    def multiset(self) -> tuple[str, ...]:
        return tuple(sorted(self.classes, key=self.group.resolve_class))


def _formal_genus(G: Group, classes) -> int | None:
    try:
        return genus_from_orders(G.order, [G.class_by_id(c).order for c in classes])
    except UnrealizableType:
        return None


def pullback_classes(ftype: RamificationType, over_branch) -> list[str]:
    G = ftype.group
    out = []
    for cid, part in zip(ftype.classes, over_branch):
        C = G.class_by_id(cid)
        for l in part:
            if l % C.order:
                out.append(G.class_power(C, l).id)
    return out


def abhyankar_pullback_type(ftype: RamificationType, profile: PullbackProfile) -> PullbackResult:
    if len(profile.over_branch) != ftype.r:
        raise ValueError(f"profile lists {len(profile.over_branch)} branch points, type has {ftype.r}")
    if not profile.satisfies_riemann_hurwitz():
        raise ValueError(f"profile index sum {profile.index_sum()} != 2n-2 = {2 * profile.degree - 2}")
    cls = tuple(pullback_classes(ftype, profile.over_branch))
    g = _formal_genus(ftype.group, cls) if cls else None
    tag = "unknown" if cls and g is not None else "disconnected-suspect"
    return PullbackResult(ftype.group, cls, len(cls), g, tag)


def divisibility_counts(ftype: RamificationType, profile: PullbackProfile):
    """(a, b, usum) for a profile.

    a_i counts preimages of t_i whose index is divisible by e_i, b_i the others.  ``usum`` adds
    e(q)-1 over preimages of t_i whose index is not a multiple of e_i and over ramification
    points of T0 lying above no branch point of f.
    """
    a, b, usum = [], [], 0
    for e, part in zip(ftype.orders, profile.over_branch):
        div = [l for l in part if l % e == 0]
        nondiv = [l for l in part if l % e]
        a.append(len(div))
        b.append(len(nondiv))
        usum += sum(l - 1 for l in nondiv)
    usum += sum(l - 1 for p in profile.extra for l in p)
    return a, b, usum


def rt0_lower_bound(e, n: int, a: Sequence[int], usum: int) -> int:
    """(r-4) n + 4 + sum (e_i - 2) a_i + usum."""
    if isinstance(e, RamificationType):
        e = e.orders
    e = list(e)
    if a is None or (isinstance(a, int) and a == 0):
        a = [0] * len(e)
    if len(a) != len(e):
        raise ValueError("need one count per branch point")
    for ei, ai in zip(e, a):
        if ai < 0 or ai * ei > n:
            raise ValueError("counts must satisfy 0 <= a_i e_i <= n")
    return (len(e) - 4) * n + 4 + sum((ei - 2) * ai for ei, ai in zip(e, a)) + usum


def bound_equality_expected(ftype: RamificationType, profile: PullbackProfile) -> bool:
    """T0 unramified off the branch points of f, and every index over t_i divisible by e_i equals e_i."""
    if profile.extra:
        return False
    return all(l == e or l % e for e, part in zip(ftype.orders, profile.over_branch) for l in part)


def appendix_degree_feasible(e1: int, e2: int, e3: int, n: int) -> bool:
    """1/(2 e3) >= (1/2 - 1/n)(1 - 1/e1 - 1/e2)."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    lhs = Fraction(1, 2 * e3)
    rhs = (Fraction(1, 2) - Fraction(1, n)) * (1 - Fraction(1, e1) - Fraction(1, e2))
    return lhs >= rhs


def tbd_orbit_check(cycle_types: Sequence[Sequence[int]], e: Sequence[int], R: int, j: int) -> bool:
    """Whether sum o(sigma_i) <= d (s - 2) - j + 2 + R, with o the number of cycles."""
    if len(cycle_types) != len(e):
        raise ValueError("one exponent per cycle type")
    s = len(cycle_types)
    d = sum(cycle_types[0]) if s else 0
    for p in cycle_types:
        if sum(p) != d:
            raise ValueError("cycle types must be partitions of the same degree")
    actual = sum(1 for p, ei in zip(cycle_types, e) for l in p if l % ei)
    if actual != R:
        raise ValueError(f"R = {R} but {actual} parts are not divisible by their exponent")
    return sum(len(p) for p in cycle_types) <= d * (s - 2) - j + 2 + R


@dataclass(frozen=True)
class CoverCycles:
    group: Group
    base_points: tuple
    g_cycles: tuple[int, ...]
    t0_cycles: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = self.group
        k = len(self.base_points)
        if len(self.g_cycles) != k or len(self.t0_cycles) != k:
            raise ValueError("one branch cycle of each kind per base point")
        if G.prod(self.g_cycles) != 0:
            raise ValueError("branch cycles of f do not multiply to 1")
        if not G.generates(self.g_cycles):
            raise ValueError("branch cycles of f do not generate the group")
        n = self.degree
        if any(len(s) != n or sorted(s) != list(range(n)) for s in self.t0_cycles):
            raise ValueError("T0 cycles must be permutations of one degree")
        p = tuple(range(n))
        for s in self.t0_cycles:
            p = compose(p, s)
        if p != tuple(range(n)):
            raise ValueError("T0 cycles do not multiply to 1")
        from .perms import is_transitive
        if not is_transitive(self.t0_cycles, n):
            raise ValueError("T0 cycles are not transitive")

    @property
    def degree(self) -> int:
        return len(self.t0_cycles[0]) if self.t0_cycles else 1


@dataclass(frozen=True)
class OracleResult:
    connected: bool
    components: int
    branch: tuple[tuple[object, str], ...]
    r_t0: int
    genus: int | None
    ftype: RamificationType
    profile: PullbackProfile

    def classes(self) -> tuple[str, ...]:
        return tuple(c for _, c in self.branch)


def _count_orbits(size: int, gens: list[list[int]]) -> int:
    seen = bytearray(size)
    count = 0
    for s in range(size):
        if seen[s]:
            continue
        count += 1
        seen[s] = 1
        stack = [s]
        while stack:
            x = stack.pop()
            for img in gens:
                y = img[x]
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return count


def product_components(G: Group, g_cycles: Sequence[int], t0_cycles: Sequence[Sequence[int]]) -> int:
    """Orbits of the pairs (g_i, sigma_i) acting on G x {0..n-1} by (x, j) -> (x g_i, sigma_i(j))."""
    n = len(t0_cycles[0]) if t0_cycles else 1
    gens = []
    for g, s in zip(g_cycles, t0_cycles):
        if g == 0 and all(s[j] == j for j in range(n)):
            continue
        gens.append([G.rows[x][g] * n + s[j] for x in range(G.order) for j in range(n)])
    return _count_orbits(G.order * n, gens)


def fiber_product_oracle(cc: CoverCycles) -> OracleResult:
    return oracle_from_cycles(cc.group, cc.base_points, cc.g_cycles, cc.t0_cycles)


def oracle_from_cycles(G: Group, base_points, g_cycles, t0_cycles) -> OracleResult:
    """Oracle on unvalidated cycle data; ``fiber_product_oracle`` checks the invariants first."""
    n = len(t0_cycles[0]) if t0_cycles else 1
    comps = product_components(G, g_cycles, t0_cycles)
    branch = []
    over, extra = [], []
    for label, g, s in zip(base_points, g_cycles, t0_cycles):
        ct = cycle_type(s)
        if g != 0:
            over.append(ct)
        elif max(ct) > 1:
            extra.append(ct)
        for l in _cycle_lengths_in_order(s):
            h = G.power(g, l)
            if h != 0:
                branch.append((label, G.class_of_element(h).id))
    ftype = RamificationType(G, tuple(G.class_of_element(g).id for g in g_cycles if g != 0))
    profile = PullbackProfile(n, tuple(over), tuple(extra))
    connected = comps == 1
    genus = _formal_genus(G, [c for _, c in branch]) if connected else None
    return OracleResult(connected, comps, tuple(branch), len(branch), genus, ftype, profile)


def _cycle_lengths_in_order(s) -> list[int]:
    seen = [False] * len(s)
    out = []
    for i in range(len(s)):
        if not seen[i]:
            L, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = s[j]
                L += 1
            out.append(L)
    return out


def batch_connected(G: Group, g_cycles: Sequence[int], sigmas, chunk: int = 2048):
    """Connectivity of many fiber products sharing the same branch cycles of f.

    ``sigmas`` has shape (B, k, n): one T0 branch-cycle tuple per row.  Labels are propagated
    to the minimum over each orbit of the product action, with pointer jumping.
    """
    import numpy as np

    sig = np.asarray(sigmas, dtype=np.int32)
    B, k, n = sig.shape
    P = G.order * n
    out = np.empty(B, dtype=bool)
    cols = [(G.table[:, g].astype(np.int32) * n)[:, None] for g in g_cycles]
    for lo in range(0, B, chunk):
        s = sig[lo:lo + chunk]
        b = s.shape[0]
        imgs = [(cols[p][None, :, :] + s[:, p, None, :]).reshape(b, P) for p in range(k)]
        L = np.broadcast_to(np.arange(P, dtype=np.int32), (b, P)).copy()
        while True:
            M = L
            for img in imgs:
                M = np.minimum(M, np.take_along_axis(M, img, axis=1))
            M = np.take_along_axis(M, M, axis=1)
            if np.array_equal(M, L):
                break
            L = M
        out[lo:lo + b] = (L == 0).all(axis=1)
    return out
