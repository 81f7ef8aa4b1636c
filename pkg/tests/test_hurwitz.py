import pytest
from hypothesis import given, settings, strategies as st

from galcov.groups import make_group
from galcov.hurwitz import (BudgetExceeded, RamificationType, UnrealizableType, class_multisets,
                            first_nielsen_tuple, genus, genus_from_orders, genus_from_tuple,
                            genus_upper_bound, is_nielsen_tuple, is_ramification_type, k_rationalize,
                            nielsen_count, nielsen_tuples, parse_type)

from brute import genus_by_fixed_points, nielsen_orbits, raw_nielsen_tuples


def T(spec, *ids):
    return RamificationType(make_group(spec), ids)


# Orbit counts produced by brute.nielsen_orbits (nested loops over C_1 x ... x C_r, then
# merging conjugation orbits), recorded before the search code existed.
FROZEN_NIELSEN = [
    (("S3", "2a", "2a", "3a"), 1),
    (("DC2", "4a", "4a", "4b", "4b"), 2),
    (("S4", "2a", "3a", "4a"), 1),
    (("A5", "2a", "3a", "5a"), 1),
    (("S3", "2a", "2a", "2a", "2a"), 4),
    (("E2^3", "2a", "2b", "2c", "2g"), 1),
    (("C2", "2a", "2a"), 1),
]


@pytest.mark.parametrize("args,count", FROZEN_NIELSEN)
def test_nielsen_counts_frozen(args, count):
    assert nielsen_count(T(*args)) == count


@pytest.mark.parametrize("args,_", FROZEN_NIELSEN)
def test_nielsen_counts_live_oracle(args, _):
    t = T(*args)
    G = t.group
    sets = [set(t.members(i)) for i in range(t.r)]
    assert nielsen_count(t) == nielsen_orbits(G.rows, sets)


@pytest.mark.parametrize("spec,ids", [("S3", ("2a", "2a", "3a")), ("S3", ("2a", "2a", "2a", "2a")),
                                      ("S4", ("2a", "3a", "4a")), ("S4", ("2b", "2b", "3a"))])
def test_ret_count_consistency_centerless(spec, ids):
    t = T(spec, *ids)
    G = t.group
    assert G.center.order == 1
    raw = raw_nielsen_tuples(G.rows, [set(t.members(i)) for i in range(t.r)])
    assert nielsen_count(t) * G.order == len(raw)


def test_returned_tuples_are_minimal_and_valid():
    t = T("DC2", "4a", "4a", "4b", "4b")
    G = t.group
    for tup in nielsen_tuples(t):
        assert G.prod(tup) == 0 and G.generates(tup) and is_nielsen_tuple(t, tup)
        orbit = {tuple(G.conj(x, g) for x in tup) for g in range(G.order)}
        assert tup == min(orbit)


def test_realizability():
    assert is_ramification_type(T("C2", "2a", "2a"))
    assert not is_ramification_type(T("C2", "2a", "2a", "2a"))
    E = make_group("E3^2")
    a, b = E.class_by_id("3a").rep, E.class_by_id("3b").rep
    tup = (a, b, E.inv[a], E.inv[b])
    t = RamificationType(E, ("3a", "3b", "3a2", "3b2"))
    assert is_nielsen_tuple(t, tup)
    assert is_ramification_type(t)


@pytest.mark.parametrize("spec,orders,g", [("S3", (2, 2, 3), 0), ("A5", (2, 3, 5), 0), ("DC2", (4, 4, 4, 4), 5),
                                           ("C2", (2, 2, 2, 2), 1), ("E3^2", (3, 3, 3, 3), 4)])
def test_genus_examples(spec, orders, g):
    assert genus_from_orders(make_group(spec).order, orders) == g


def test_genus_errors():
    with pytest.raises(UnrealizableType):
        genus_from_orders(6, (2, 2))
    with pytest.raises(UnrealizableType):
        genus_from_orders(5, (2, 3))


@pytest.mark.parametrize("spec", ["S3", "DC2", "E3^2", "E2^3", "D4", "A4", "C6", "S4"])
def test_genus_formula_equals_regular_representation(spec):
    G = make_group(spec)
    for r in (2, 3, 4):
        for ms in class_multisets(G, r):
            t = RamificationType(G, ms)
            tup = first_nielsen_tuple(t)
            if tup is None:
                continue
            g = genus(t)
            assert g == genus_from_tuple(G, tup) == genus_by_fixed_points(G.rows, tup)


def test_budget():
    with pytest.raises(BudgetExceeded):
        nielsen_tuples(T("S4", "2a", "2a", "2a", "2a", "2a", "2a"), budget=10)


def test_type_parsing_and_validation():
    t = parse_type("S3 : 2a,2a,3a")
    assert t.classes == ("2a", "2a", "3a") and t.r == 3
    assert str(t) == "S3 : 2a,2a,3a"
    with pytest.raises(ValueError):
        parse_type("2a,3a")
    with pytest.raises(ValueError):
        T("S3", "1A", "2a")
    with pytest.raises(ValueError):
        RamificationType(make_group("S3"), ())


def test_k_rationalize():
    C2 = make_group("C2")
    assert k_rationalize(RamificationType(C2, ("2a", "2a")), [0]).classes == ("2a", "2a")
    C3 = make_group("C3")
    assert k_rationalize(RamificationType(C3, ("3a", "3b")), [0]).classes == ("3a", "3b", "3b", "3a")
    C4 = make_group("C4")
    out = k_rationalize(RamificationType(C4, ("4a", "4b")), [0])
    assert out.r == 6 and out.classes == ("4a", "4b", "2a", "2a", "4b", "4a")
    with pytest.raises(ValueError):
        k_rationalize(RamificationType(C4, ("4a", "4a")), [0])


def test_genus_upper_bound():
    assert genus_upper_bound(make_group("S3"), 3) == 1
    assert genus_upper_bound(make_group("C2"), 2) == 0
    assert genus_upper_bound(make_group("S4"), 0) < 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["S3", "S4", "DC2", "D5", "A4", "C2xC4"]), st.integers(2, 5), st.data())
def test_genus_never_exceeds_upper_bound(spec, r, data):
    G = make_group(spec)
    ids = [c.id for c in G.classes[1:]]
    ms = data.draw(st.lists(st.sampled_from(ids), min_size=r, max_size=r))
    t = RamificationType(G, tuple(ms))
    try:
        g = genus(t)
    except UnrealizableType:
        return
    assert g <= genus_upper_bound(G, r)
    tup = first_nielsen_tuple(t)
    if tup is not None:
        assert genus_from_tuple(G, tup) == g
