"""Certificates that a ramification type is not a rational pullback of another.

A degree-n pullback of f has its type fixed by the ramification profile of T0 over the branch
points of f, so bounded exhaustion over profiles decides the question once the degree is
bounded.  Degrees are bounded through the genus when f has genus >= 2; genus-one sources are
handled by their unramified subcover; genus-zero sources stay inconclusive.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .groups import Group, Subgroup, format_cycles
from .hurwitz import (DEFAULT_BUDGET, BudgetExceeded, RamificationType, UnrealizableType,
                      first_nielsen_tuple, genus, genus_upper_bound, nielsen_tuples)
from .perms import elements_of_type, partition_index, partitions, search_sigma_tuples, symmetric
from .pullback import (CoverCycles, PullbackProfile, fiber_product_oracle, product_components,
                       pullback_classes)

WITNESS_MAX_DEGREE = 6


@dataclass
class Certificate:
    status: str
    degree_bound: int | None = None
    degrees_checked: list[int] = field(default_factory=list)
    profiles_checked: int = 0
    witness: dict | None = None
    reason: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"status": self.status, "degree_bound": self.degree_bound,
                "degrees_checked": list(self.degrees_checked),
                "profiles_checked": self.profiles_checked, "witness": self.witness,
                "reason": list(self.reason)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def pullback_degree_bound(genus_f: int, genus_target: int) -> int | None:
    """Largest d with d (g_f - 1) + 1 <= g_target, or None when g_f <= 1."""
    if genus_f < 0:
        raise ValueError("genus must be nonnegative")
    if genus_f <= 1:
        return None
    return max(0, (genus_target - 1) // (genus_f - 1))


# profiles


@lru_cache(maxsize=None)
def _nontrivial_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(p for p in partitions(n) if p[0] > 1)


def extra_multisets(n: int, rest: int, start: int = 0) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Multisets of nontrivial partitions of n whose indices sum to ``rest``."""
    if rest == 0:
        yield ()
        return
    parts = _nontrivial_partitions(n)
    for i in range(start, len(parts)):
        k = partition_index(parts[i])
        if k <= rest:
            for tail in extra_multisets(n, rest - k, i):
                yield (parts[i],) + tail


@lru_cache(maxsize=None)
def count_extra_multisets(n: int, rest: int, start: int = 0) -> int:
    if rest == 0:
        return 1
    parts = _nontrivial_partitions(n)
    total = 0
    for i in range(start, len(parts)):
        k = partition_index(parts[i])
        if k <= rest:
            total += count_extra_multisets(n, rest - k, i)
    return total


def over_branch_assignments(ftype: RamificationType, n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions over the branch points, up to permuting points that carry the same class."""
    groups: dict[str, list[int]] = {}
    for i, c in enumerate(ftype.classes):
        groups.setdefault(c, []).append(i)
    plist = list(partitions(n))
    blocks = list(groups.values())
    choices = [list(itertools.combinations_with_replacement(plist, len(b))) for b in blocks]
    for combo in itertools.product(*choices):
        out: list = [None] * ftype.r
        for pos, parts in zip(blocks, combo):
            for i, p in zip(pos, parts):
                out[i] = p
        yield tuple(out)


def _target_key(G: Group, classes) -> tuple[int, ...]:
    return tuple(sorted(G.resolve_class(c) for c in classes))


def scan_degree(ftype: RamificationType, n: int, target: RamificationType):
    """(profiles scanned, matching over-branch assignments with their free index)."""
    want = _target_key(ftype.group, target.classes)
    scanned = 0
    matches = []
    for ob in over_branch_assignments(ftype, n):
        rest = 2 * n - 2 - sum(partition_index(p) for p in ob)
        if rest < 0:
            continue
        scanned += count_extra_multisets(n, rest)
        cls = pullback_classes(ftype, ob)
        if len(cls) == len(want) and _target_key(ftype.group, cls) == want:
            matches.append((ob, rest))
    return scanned, matches


def enumerate_profiles(ftype: RamificationType, n: int, target: RamificationType) -> Iterator[PullbackProfile]:
    """Degree-n genus-0 profiles whose pullback type equals ``target`` as a multiset."""
    if n < 1:
        raise ValueError("degree must be positive")
    for ob, rest in scan_degree(ftype, n, target)[1]:
        for ex in extra_multisets(n, rest):
            yield PullbackProfile(n, ob, ex)


# witnesses


def find_witness(ftype: RamificationType, profile: PullbackProfile, tuples=None,
                 budget: int = DEFAULT_BUDGET, counter: list[int] | None = None):
    """A connected fiber product realizing ``profile``, or None.

    Returns (status, witness) with status "witness", "disconnected" or "profile-unrealizable".
    """
    G = ftype.group
    n = profile.degree
    tuples = tuples if tuples is not None else nielsen_tuples(ftype)
    _, perms, _ = symmetric(n)
    allowed = [elements_of_type(n, p) for p in profile.over_branch + profile.extra]
    k = len(allowed)
    hit: list = []

    def accept(t):
        sig = [perms[x] for x in t]
        for tup in tuples:
            g = tuple(tup) + (0,) * (k - ftype.r)
            if product_components(G, g, sig) == 1:
                hit.append((tup, sig))
                return True
        return False

    seen_any: list[bool] = [False]

    def accept_any(t):
        seen_any[0] = True
        return accept(t)

    if n == 1:
        sig = [(0,)] * ftype.r
        tup = tuples[0]
        hit.append((tup, sig))
    else:
        search_sigma_tuples(n, allowed, accept=accept_any, first_only=True, budget=budget, counter=counter)
    if not hit:
        return ("disconnected" if seen_any[0] else "profile-unrealizable"), None
    tup, sig = hit[0]
    labels = tuple(f"t{i + 1}" for i in range(ftype.r)) + tuple(f"u{j + 1}" for j in range(k - ftype.r))
    cc = CoverCycles(G, labels, tuple(tup) + (0,) * (k - ftype.r), tuple(sig))
    res = fiber_product_oracle(cc)
    ok = res.connected and res.profile == profile
    witness = {"degree": n, "profile": profile.to_dict(), "g_tuple": list(tup),
               "sigma": [format_cycles(s) for s in sig], "oracle_verified": bool(ok),
               "oracle_classes": sorted(res.classes(), key=G.resolve_class)}
    return ("witness" if ok else "disconnected"), witness


# closed-form rules


def translation_subgroup(ftype: RamificationType) -> Subgroup | None:
    """Elements acting without fixed points on a genus-one cover, with the identity.

    These are the elements outside every conjugate of a nontrivial inertia power.
    """
    G = ftype.group
    fixed = set()
    for cid in set(ftype.classes):
        C = G.class_by_id(cid)
        for k in range(1, C.order):
            fixed.update(G.class_power(C, k).members)
    mem = tuple(x for x in range(G.order) if x not in fixed)
    if 0 not in mem or len(G.closure(mem)) != len(mem):
        return None
    N = Subgroup(G, mem)
    if not N.is_normal():
        return None
    return N


def power_classes(ftype: RamificationType) -> set[str]:
    G = ftype.group
    out = set()
    for cid in ftype.classes:
        C = G.class_by_id(cid)
        for l in range(1, C.order):
            out.add(G.class_power(C, l).id)
    return out


def certify_not_pullback(ftype: RamificationType, target: RamificationType,
                         budget: int = DEFAULT_BUDGET, max_degree: int | None = None) -> Certificate:
    """Decide whether some cover of type ``target`` is a rational pullback of a cover of type ``ftype``.

    ``not_pullback`` is returned only when a closed-form rule applies or every degree up to the
    bound has been exhausted with every surviving profile refuted.
    """
    G = ftype.group
    if target.group is not G:
        raise ValueError("both types must live on the same group object")
    tuples = nielsen_tuples(ftype, budget)
    if not tuples:
        raise ValueError("source type has an empty Nielsen class")
    g_f = genus(ftype)
    cert = Certificate("inconclusive")
    # degree one: T0 is a Moebius map and the type is unchanged
    if _target_key(G, target.classes) == _target_key(G, ftype.classes):
        status, wit = find_witness(ftype, PullbackProfile(1, ((1,),) * ftype.r), tuples)
        cert.status, cert.witness, cert.reason = "witness", wit, ["degree-one"]
        cert.degrees_checked = [1]
        return cert
    if target.r < ftype.r:
        cert.status, cert.reason = "not_pullback", ["branch-count"]
        return cert
    try:
        g_t = genus(target)
    except UnrealizableType:
        cert.status, cert.reason = "not_pullback", ["target-unrealizable"]
        return cert
    if g_t < g_f:
        cert.status, cert.reason = "not_pullback", ["genus-monotonicity"]
        return cert
    if g_f == 1:
        N = translation_subgroup(ftype)
        if N is not None and N.order > 1:
            inside = [c for c in target.classes if set(G.class_by_id(c).members) <= set(N.members)]
            if inside:
                cert.status, cert.reason = "not_pullback", ["unramified-subcover"]
                return cert
    if g_f <= 1 and not set(target.classes) <= power_classes(ftype):
        # with no degree bound, fall back on inertia accounting
        cert.status, cert.reason = "not_pullback", ["class-accounting"]
        return cert
    if g_f <= 1:
        cert.reason = ["pgl2-regime" if g_f == 0 else "genus-one-open"]
        return cert

    bound = pullback_degree_bound(g_f, g_t)
    cert.degree_bound = bound
    cert.reason = ["degree-one"]
    top = bound if max_degree is None else min(bound, max_degree)
    counter = [0]
    unresolved = False
    try:
        for n in range(2, top + 1):
            scanned, matches = scan_degree(ftype, n, target)
            cert.degrees_checked.append(n)
            cert.profiles_checked += scanned
            counter[0] += scanned
            if counter[0] > budget:
                raise BudgetExceeded("profile scan exceeded budget")
            profs = sorted((PullbackProfile(n, ob, ex) for ob, rest in matches
                            for ex in extra_multisets(n, rest)), key=lambda p: p.to_json())
            for prof in profs:
                if n > WITNESS_MAX_DEGREE:
                    unresolved = True
                    continue
                status, wit = find_witness(ftype, prof, tuples, budget, counter)
                if status == "witness":
                    cert.status, cert.witness = "witness", wit
                    cert.reason = ["oracle-witness"]
                    return cert
    except BudgetExceeded:
        cert.reason = ["budget"]
        return cert
    if unresolved:
        cert.reason = ["witness-search-limit"]
        return cert
    if top < bound:
        cert.reason = ["degree-cap"]
        return cert
    cert.status = "not_pullback"
    cert.reason = ["degree-one", "exhaustion"]
    return cert


def build_Dy(G: Group, tup: Sequence[int], y: int) -> RamificationType:
    """Type of (y, y^-1 g_1, g_2, ..., g_r)."""
    if y == 0:
        raise ValueError("y must be nontrivial")
    z = G.rows[G.inv[y]][tup[0]]
    if z == 0:
        raise ValueError("y^-1 g_1 is trivial")
    elems = (y, z) + tuple(tup[1:])
    return RamificationType(G, tuple(G.class_of_element(x).id for x in elems))


def dy_obstruction_search(ftype: RamificationType, budget: int = DEFAULT_BUDGET):
    """First y (in index order) whose split type is certified not to be a pullback of ``ftype``."""
    G = ftype.group
    tup = first_nielsen_tuple(ftype, budget)
    if tup is None:
        raise ValueError("source type has an empty Nielsen class")
    for y in range(1, G.order):
        if y == tup[0]:
            continue
        D = build_Dy(G, tup, y)
        cert = certify_not_pullback(ftype, D, budget)
        if cert.status == "not_pullback":
            return y, D, cert
    return None


# numeric bounds


def thm1b_threshold(p1u1: int, pj: Sequence[int], elementary_abelian: bool = False) -> int:
    """Smallest degree excluded by N < 6 (p1 + u1 + sum p_j), or N < sum p_j for the 2-group branch."""
    if p1u1 < 0 or any(p < 0 for p in pj):
        raise ValueError("caps must be nonnegative")
    if elementary_abelian:
        return sum(pj)
    return 6 * (p1u1 + sum(pj))


def rationalized_caps(orders: Sequence[int]) -> list[int]:
    """Repetition caps 2 (e_i - 1) after replacing each pair by all its powers."""
    return [2 * (e - 1) for e in orders]


@dataclass(frozen=True)
class EquationBounds:
    g_bar: int
    D: int
    delta: int
    j: int
    R0: int
    j_auto: bool


def _ceil_log_term(c: int, order: int) -> int:
    # ceil(c * |G| * log2 |G|), exact for powers of two
    if order <= 1:
        return 0
    if order & (order - 1) == 0:
        return c * order * (order.bit_length() - 1)
    return math.ceil(c * order * math.log2(order))


def equation_space_bounds(G: Group, r0: int, j: int | None = None) -> EquationBounds:
    """D = ceil((2 gbar + 1)|G| log|G| / log 2), delta = (D + 1)(|G| + 1) - 1, R0 = 42 r0 (j - 3) + 1.

    ``j=None`` picks j = delta + 4.  A negative genus bound (no cover exists) is clamped to 0.
    """
    if r0 < 0:
        raise ValueError("r0 must be nonnegative")
    gbar = genus_upper_bound(G, r0)
    D = _ceil_log_term(2 * max(gbar, 0) + 1, G.order)
    delta = (D + 1) * (G.order + 1) - 1
    auto = j is None
    if auto:
        j = delta + 4
    if j <= 3:
        raise ValueError("j must exceed 3")
    return EquationBounds(gbar, D, delta, j, 42 * r0 * (j - 3) + 1, auto)
