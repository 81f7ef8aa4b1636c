"""Exhaustive sweeps behind the experiment scripts and the acceptance suite."""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .groups import Group, identify_family, make_group
from .hurwitz import (RamificationType, UnrealizableType, class_multisets, first_nielsen_tuple,
                      genus, genus_from_orders, nielsen_tuples)
from .perms import cycle_type, search_sigma_tuples, symmetric
from .pullback import (PullbackProfile, abhyankar_pullback_type, batch_connected, divisibility_counts,
                       bound_equality_expected, oracle_from_cycles, rt0_lower_bound)

FAMILIES = ("cyclic", "dihedral", "A4", "S4", "A5")


def genus0_groups(max_order: int = 60) -> list[str]:
    """Group specs of order <= max_order: the grammar families plus two-factor products."""
    out = [f"C{n}" for n in range(2, max_order + 1)]
    out += [f"D{n}" for n in range(2, max_order // 2 + 1)]
    out += [f"DC{n}" for n in range(2, max_order // 4 + 1)]
    out += ["S3", "S4", "A4", "A5"]
    for p in (2, 3, 5, 7):
        k = 2
        while p ** k <= max_order:
            out.append(f"E{p}^{k}")
            k += 1
    base = [f"C{n}" for n in range(2, 31)] + [f"D{n}" for n in range(2, 16)] + \
        [f"DC{n}" for n in range(2, 8)] + ["A4", "S4"]
    size = {s: make_group(s).order for s in base}
    for i, a in enumerate(base):
        for b in base[i:]:
            if size[a] * size[b] <= max_order:
                out.append(f"{a}x{b}")
    return [s for s in out if make_group(s).order <= max_order]


def family_of(G: Group, orders: tuple[int, ...]) -> str | None:
    e = tuple(sorted(orders))
    fam = identify_family(G)
    n = G.order
    if fam is None:
        return None
    if fam.startswith("C") and e == (n, n):
        return "cyclic"
    if fam.startswith("D") and e == (2, 2, n // 2):
        return "dihedral"
    if (fam, e) in {("A4", (2, 3, 3)), ("S4", (2, 3, 4)), ("A5", (2, 3, 5))}:
        return fam
    return None


@dataclass
class Genus0Report:
    groups: int = 0
    types_checked: int = 0
    genus0: list = field(default_factory=list)
    unmatched: list = field(default_factory=list)
    missing: list = field(default_factory=list)

    @property
    def families(self) -> set:
        return {f for _, _, f in self.genus0 if f}

    @property
    def ok(self) -> bool:
        return not self.unmatched and not self.missing and self.families == set(FAMILIES)


def genus0_sweep(specs: list[str] | None = None, max_r: int = 3) -> Genus0Report:
    """All realizable types of genus 0 over the given groups, matched against the five families.

    Types are class multisets; realizability does not depend on the order of the classes.
    With r >= 4 every e_i >= 2 gives 2g - 2 >= |G|(r - 2 - r/2) >= 0, so r <= 3 suffices.
    """
    rep = Genus0Report()
    specs = specs or genus0_groups()
    for spec in specs:
        G = make_group(spec)
        rep.groups += 1
        found_here = set()
        for r in range(1, max_r + 1):
            for ms in class_multisets(G, r):
                rep.types_checked += 1
                orders = [G.class_by_id(c).order for c in ms]
                try:
                    if genus_from_orders(G.order, orders) != 0:
                        continue
                except UnrealizableType:
                    continue
                T = RamificationType(G, ms)
                if first_nielsen_tuple(T) is None:
                    continue
                fam = family_of(G, T.orders)
                rep.genus0.append((spec, ms, fam))
                found_here.add(fam)
                if fam is None:
                    rep.unmatched.append((spec, ms))
        # every group in a family must show its family's type
        ident = identify_family(G)
        if ident is not None:
            expect = ("cyclic" if ident.startswith("C") else
                      "dihedral" if ident.startswith("D") else ident)
            if expect not in found_here:
                rep.missing.append((spec, expect))
    return rep


# oracle sweep


@lru_cache(maxsize=None)
def sigma_tuples(r: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Genus-0 branch cycles of degree n: r leading slots (identity allowed) then extra nontrivial slots."""
    G, _, _ = symmetric(n)
    allel = list(range(G.order))
    nontriv = list(range(1, G.order))
    out = []
    for m in range(0, 2 * n - 1):
        out += search_sigma_tuples(n, [allel] * r + [nontriv] * m, ind_total=2 * n - 2)
    return tuple(out)


@dataclass
class SweepReport:
    instances: int = 0
    connected: int = 0
    signatures: int = 0
    agreement_failures: list = field(default_factory=list)
    bound_violations: list = field(default_factory=list)
    equality_mismatches: list = field(default_factory=list)
    equality_cases: int = 0
    monotonicity_violations: list = field(default_factory=list)
    hurwitz_checked: int = 0
    hurwitz_violations: list = field(default_factory=list)
    per_group: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not (self.agreement_failures or self.bound_violations or self.equality_mismatches
                    or self.monotonicity_violations or self.hurwitz_violations)

    def summary(self) -> dict:
        return {"instances": self.instances, "connected": self.connected,
                "distinct_signatures": self.signatures,
                "agreement_failures": len(self.agreement_failures),
                "bound_violations": len(self.bound_violations),
                "equality_cases": self.equality_cases,
                "equality_mismatches": len(self.equality_mismatches),
                "monotonicity_violations": len(self.monotonicity_violations),
                "hurwitz_checked": self.hurwitz_checked,
                "hurwitz_violations": len(self.hurwitz_violations),
                "per_group": dict(sorted(self.per_group.items()))}


@lru_cache(maxsize=None)
def _sigma_batches(r: int, n: int):
    """Branch-cycle tuples grouped by length, with a cycle-type signature per tuple.

    The oracle's branch data for a connected fiber product only depends on the cycle type of
    each entry, so checks are evaluated once per (f tuple, signature).
    """
    _, perms, _ = symmetric(n)
    by_len: dict[int, list] = defaultdict(list)
    for t in sigma_tuples(r, n):
        by_len[len(t)].append(t)
    out = []
    for k, ts in sorted(by_len.items()):
        arr = np.array([[perms[x] for x in t] for t in ts], dtype=np.int32).reshape(len(ts), k, n)
        sigs = [tuple(cycle_type(perms[x]) for x in t[:r]) + tuple(sorted(cycle_type(perms[x]) for x in t[r:]))
                for t in ts]
        out.append((k, ts, arr, sigs))
    return tuple(out)


def _check(rep: SweepReport, G: Group, T: RamificationType, g_f: int, tup, sig, weight: int):
    n = len(sig[0])
    labels = tuple(range(len(sig)))
    g_cycles = tuple(tup) + (0,) * (len(sig) - len(tup))
    res = oracle_from_cycles(G, labels, g_cycles, sig)
    key = (G.name, T.classes, tuple(tup), tuple(sig))
    if not res.connected:
        rep.agreement_failures.append(key)
        return
    rep.signatures += 1
    prof = res.profile
    formal = abhyankar_pullback_type(T, prof)
    if (formal.r_t0 != res.r_t0 or formal.multiset() != tuple(sorted(res.classes(), key=G.resolve_class))
            or formal.genus != res.genus):
        rep.agreement_failures.append(key)
        return
    a, _, usum = divisibility_counts(T, prof)
    bound = rt0_lower_bound(T.orders, n, a, usum)
    if res.r_t0 < bound:
        rep.bound_violations.append(key)
    eq = res.r_t0 == bound
    rep.equality_cases += weight * eq
    if eq != bound_equality_expected(T, prof):
        rep.equality_mismatches.append(key)
    g_t = res.genus
    if T.r > res.r_t0 or g_f > g_t or (g_f > 1 and n > 1 and not g_f < g_t):
        rep.monotonicity_violations.append(key)
    for g in (g_f, g_t):
        if g >= 2:
            rep.hurwitz_checked += weight
            if G.order > 84 * (g - 1):
                rep.hurwitz_violations.append(key)


def oracle_sweep(specs=("S3", "S4", "DC2", "E3^2", "E2^3"), rs=(4, 5), max_degree: int = 4,
                 all_orbits: bool = False) -> SweepReport:
    """Fiber products of every realizable type against every genus-0 map of degree <= max_degree.

    Each class multiset of length r contributes its minimal Nielsen tuple (all orbit
    representatives with ``all_orbits``); the degree-n branch cycles are exhaustive.
    """
    rep = SweepReport()
    for spec in specs:
        G = make_group(spec)
        for r in rs:
            for ms in class_multisets(G, r):
                T = RamificationType(G, ms)
                tuples = nielsen_tuples(T) if all_orbits else [first_nielsen_tuple(T)]
                if not tuples or tuples[0] is None:
                    continue
                g_f = genus(T)
                for tup in tuples:
                    for n in range(1, max_degree + 1):
                        _, perms, _ = symmetric(n)
                        for k, ts, arr, sigs in _sigma_batches(r, n):
                            g_cycles = tuple(tup) + (0,) * (k - r)
                            conn = batch_connected(G, g_cycles, arr)
                            rep.instances += len(ts)
                            hits: dict = {}
                            for idx in np.flatnonzero(conn):
                                hits.setdefault(sigs[idx], [idx, 0])[1] += 1
                            for first, count in hits.values():
                                rep.connected += count
                                rep.per_group[spec] += count
                                _check(rep, G, T, g_f, tup, [perms[x] for x in ts[first]], count)
    return rep
