import itertools

from galcov.groups import make_group
from galcov.perms import cycle_type, is_transitive, symmetric
from galcov.sweeps import FAMILIES, family_of, genus0_groups, genus0_sweep, oracle_sweep, sigma_tuples


def test_genus0_groups_cover_grammar_families():
    specs = genus0_groups(24)
    assert {"C24", "D12", "DC6", "S4", "A4", "E2^4", "E3^2", "C2xC12"} <= set(specs)
    assert all(make_group(s).order <= 24 for s in specs)


def test_small_genus0_sweep():
    rep = genus0_sweep(["C5", "D4", "A4", "S4", "A5", "DC2", "E2^3", "C2xC4"])
    assert not rep.unmatched and not rep.missing
    assert rep.families == set(FAMILIES)
    # non-PGL2 groups never reach genus 0
    assert not any(s in ("DC2", "E2^3", "C2xC4") for s, _, _ in rep.genus0)


def test_family_of():
    assert family_of(make_group("C7"), (7, 7)) == "cyclic"
    assert family_of(make_group("D5"), (2, 2, 5)) == "dihedral"
    assert family_of(make_group("A5"), (2, 3, 5)) == "A5"
    assert family_of(make_group("DC2"), (4, 4, 4)) is None


def _brute_genus0_tuples(r, n, extra):
    """Conjugacy orbits of transitive product-one tuples with r free slots and `extra` nontrivial slots."""
    perms = list(itertools.permutations(range(n)))
    ident = tuple(range(n))
    raw = set()
    for t in itertools.product(perms, repeat=r + extra):
        if any(p == ident for p in t[r:]):
            continue
        acc = ident
        for p in t:
            acc = tuple(p[i] for i in acc)
        if acc != ident or not is_transitive(t, n):
            continue
        if sum(n - len(cycle_type(p)) for p in t) == 2 * n - 2:
            raw.add(t)
    count = 0
    while raw:
        t = raw.pop()
        count += 1
        for c in perms:
            ci = tuple(sorted(range(n), key=lambda i: c[i]))
            raw.discard(tuple(tuple(c[p[ci[i]]] for i in range(n)) for p in t))
    return count


def test_sigma_tuples_match_brute_force():
    for r, n in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        got = sigma_tuples(r, n)
        want = sum(_brute_genus0_tuples(r, n, m) for m in range(0, 2 * n - 1))
        assert len(got) == want
        _, perms, _ = symmetric(n)
        assert all(is_transitive([perms[x] for x in t], n) for t in got)


def test_small_oracle_sweep_all_orbits():
    rep = oracle_sweep(specs=("S3", "DC2"), rs=(4,), max_degree=2, all_orbits=True)
    assert rep.ok, rep.summary()
    assert rep.connected > 0 and rep.hurwitz_checked > 0
    s = rep.summary()
    assert s["agreement_failures"] == 0 and set(s["per_group"]) == {"S3", "DC2"}
