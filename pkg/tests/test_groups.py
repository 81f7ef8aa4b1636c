import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from galcov.groups import (GroupParseError, OrderCapExceeded, find_isomorphism,
                           format_cycles, identify_family, is_isomorphic, load_table, make_group,
                           parse_cycles)

from brute import conj_classes, element_order, generated

SMALL_SPECS = ["C1", "C2", "C6", "C12", "D4", "D5", "D6", "DC2", "DC3", "S3", "S4", "A4", "A5",
               "E2^3", "E3^2", "C2xC4", "C3xS3", "D4xC2", "perm:(1,2,3);(1,2)", "C2x(C2xC2)"]


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_table_axioms(spec):
    G = make_group(spec)
    assert all(G.rows[0][x] == x == G.rows[x][0] for x in range(G.order))
    assert all(G.rows[x][G.inv[x]] == 0 == G.rows[G.inv[x]][x] for x in range(G.order))
    assert G.is_associative()


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_classes_match_brute_force(spec):
    G = make_group(spec)
    assert {frozenset(c.members) for c in G.classes} == set(conj_classes(G.rows))
    for c in G.classes:
        assert c.rep == min(c.members)
        assert c.order == element_order(G.rows, c.rep)
        assert G.order % c.size == 0
    assert sum(c.size for c in G.classes) == G.order
    assert G.classes[0].id == "1A"


def test_constructions():
    assert make_group("C3").order == 3 and make_group("C3").is_cyclic()
    Q = make_group("DC2")
    assert Q.order == 8 and sorted(Counter(Q.orders).items()) == [(1, 1), (2, 1), (4, 6)]
    E = make_group("E2^3")
    assert E.order == 8 and set(E.orders) == {1, 2} and E.is_abelian()


def test_element_orders():
    assert make_group("C6").element_order(1) == 6
    assert make_group("DC2").element_order(1) == 4
    S4 = make_group("S4")
    t = S4.class_by_id("2a").rep
    assert S4.element_order(t) == 2


def test_class_labels():
    assert [c.id for c in make_group("C3").classes] == ["1A", "3a", "3b"]
    S3 = make_group("S3")
    assert [(c.id, c.size) for c in S3.classes] == [("1A", 1), ("2a", 3), ("3a", 2)]
    Q = make_group("DC2")
    assert [(c.id, c.size) for c in Q.classes] == [("1A", 1), ("2a", 1), ("4a", 2), ("4b", 2), ("4c", 2)]


def test_power_suffix_ids():
    E = make_group("E3^2")
    assert [E.resolve_class(c) for c in ("3a", "3b", "3a2", "3b2")] == [1, 2, 3, 5]
    assert E.class_by_id("3a^-1") == E.class_by_id("3a2")
    with pytest.raises(KeyError):
        E.resolve_class("7q")


def test_class_power_examples():
    C5 = make_group("C5")
    assert C5.class_power("5a", 2).members == (2,)
    S3 = make_group("S3")
    assert S3.class_power("3a", 2).id == "3a"
    assert make_group("DC2").class_power("4a", 2).id == "2a"


@pytest.mark.parametrize("spec", ["C12", "S4", "DC3", "E3^2", "A5"])
def test_class_power_order(spec):
    G = make_group(spec)
    for c in G.classes:
        for m in range(-3, 8):
            assert G.class_power(c, m).order == c.order // math.gcd(m, c.order)


def test_generation():
    S3 = make_group("S3")
    t = S3.class_by_id("2a").rep
    r = S3.class_by_id("3a").rep
    assert S3.generates([t, r])
    assert not make_group("E2^2").generates([1])
    Q = make_group("DC2")
    assert Q.generates([Q.class_by_id("4a").rep, Q.class_by_id("4b").rep])


@pytest.mark.parametrize("spec,count", [("DC2", 3), ("E2^3", 7), ("S4", 3)])
def test_maximal_cyclic_class_count(spec, count):
    assert make_group(spec).maximal_cyclic_class_count() == count


def _brute_maximal_cyclic_count(G):
    cyc = {frozenset(generated(G.rows, [x])) for x in range(G.order)}
    maximal = [H for H in cyc if not any(H < K for K in cyc)]
    inv = G.inv
    classes = set()
    for H in maximal:
        classes.add(min(tuple(sorted(G.rows[G.rows[g][x]][inv[g]] for x in H)) for g in range(G.order)))
    return len(classes)


@pytest.mark.parametrize("spec", ["C8", "C2xC4", "D4", "D5", "DC2", "DC3", "S3", "S4", "A4", "E2^3", "C3xS3"])
def test_maximal_cyclic_count_brute(spec):
    G = make_group(spec)
    k = G.maximal_cyclic_class_count()
    assert k == _brute_maximal_cyclic_count(G)
    assert k <= len(G.classes)
    assert (k == 1) == G.is_cyclic()


def test_minimal_normal_subgroups():
    assert [N.order for N in make_group("S4").minimal_normal_subgroups()] == [4]
    assert [N.order for N in make_group("C6").minimal_normal_subgroups()] == [2, 3]
    assert [N.order for N in make_group("A5").minimal_normal_subgroups()] == [60]
    with pytest.raises(ValueError):
        make_group("C1").minimal_normal_subgroups()


def test_quotients():
    S4 = make_group("S4")
    (V,) = S4.minimal_normal_subgroups()
    Q, proj = S4.quotient(V)
    assert Q.order == 6 and is_isomorphic(Q, make_group("S3"))
    G = make_group("D5")
    Q, proj = G.quotient({0})
    assert Q.order == G.order and is_isomorphic(Q, G)
    C6 = make_group("C6")
    Q, _ = C6.quotient({0, 2, 4})
    assert Q.order == 2
    with pytest.raises(ValueError):
        make_group("S3").quotient({0, 3})


@pytest.mark.parametrize("spec", ["S4", "D6", "DC3", "C2xA4", "E2^3"])
def test_quotient_projection_is_homomorphism(spec):
    G = make_group(spec)
    for N in G.normal_subgroups():
        Q, proj = G.quotient(N)
        assert Q.order * N.order == G.order
        assert all(proj[G.rows[a][b]] == Q.rows[proj[a]][proj[b]] for a in range(G.order) for b in range(G.order))


def test_isomorphism():
    assert is_isomorphic(make_group("D3"), make_group("S3"))
    assert is_isomorphic(make_group("C2xC3"), make_group("C6"))
    assert not is_isomorphic(make_group("D4"), make_group("DC2"))
    phi = find_isomorphism(make_group("perm:(1,2,3);(1,2)"), make_group("S3"))
    assert phi is not None and sorted(phi) == list(range(6))


def test_identify_family():
    assert identify_family(make_group("D4")) == "D4"
    assert identify_family(make_group("C7")) == "C7"
    assert identify_family(make_group("E2^2")) == "D2"
    assert identify_family(make_group("DC2")) is None
    assert identify_family(make_group("A5")) == "A5"


def test_cycles_roundtrip():
    p = parse_cycles("(1,2,3)(4,5)")
    assert p == (1, 2, 0, 4, 3)
    assert parse_cycles("(123)") == (1, 2, 0)
    assert format_cycles(p) == "(1,2,3)(4,5)"
    assert parse_cycles("()", degree=3) == (0, 1, 2)
    with pytest.raises(GroupParseError):
        parse_cycles("(1,1)")


def test_parse_errors_and_caps():
    for bad in ["Z5", "C", "Cx", "E2^0", "C0", ""]:
        with pytest.raises((GroupParseError, ValueError)):
            make_group(bad)
    with pytest.raises(OrderCapExceeded):
        make_group("C20000")


def test_table_file(tmp_path):
    path = tmp_path / "c3.txt"
    path.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    G = make_group(f"table:{path}")
    assert G.order == 3 and G.is_cyclic()
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n0 1 2\n1 0 2\n2 1 0\n")
    with pytest.raises((GroupParseError, ValueError)):
        load_table(bad)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S4", "D6", "DC3", "A4", "C2xS3"]), st.data())
def test_subgroup_closure_is_subgroup(spec, data):
    G = make_group(spec)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = G.closure(gens)
    assert 0 in H and G.order % len(H) == 0
    assert all(G.rows[a][b] in H for a in H for b in H)
    assert set(H) == generated(G.rows, gens)
    assert G.center.is_normal()
