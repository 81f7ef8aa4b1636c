import pytest
from hypothesis import given, settings, strategies as st

from galcov.classify import (PRESETS, FieldDescriptor, generic_exists, generic_extension_conditions,
                             is_pgl2_subgroup, laurent_parametric_condition, parse_field)
from galcov.groups import make_group
from galcov.hurwitz import RamificationType

FIELDS = ("Q", "Q(i)", "C")

# cyclic of even order n needs zeta_n, cyclic of odd order n needs 2cos(2pi/n),
# dihedral of order 2n with n >= 3 odd needs 2cos(2pi/n); everything else is excluded
TABLE = {
    "C2": (True, True, True),
    "C3": (True, True, True),
    "C4": (False, True, True),
    "C6": (False, False, True),
    "S3": (True, True, True),
    "D5": (False, False, True),
    "A4": (False, False, False),
    "S4": (False, False, False),
    "A5": (False, False, False),
    "DC2": (False, False, False),
}


@pytest.mark.parametrize("spec", sorted(TABLE))
def test_generic_table(spec):
    G = make_group(spec)
    assert tuple(generic_exists(G, PRESETS[k]) for k in FIELDS) == TABLE[spec]


def test_pgl2_membership():
    assert is_pgl2_subgroup(make_group("D4"))
    assert not is_pgl2_subgroup(make_group("DC2"))
    assert is_pgl2_subgroup(make_group("C7"))
    assert is_pgl2_subgroup(make_group("A5"))
    assert not is_pgl2_subgroup(make_group("C2xC4"))


def test_field_descriptor_closure():
    k = parse_field("zeta:12")
    assert {1, 2, 3, 4, 6, 12} <= k.zeta
    assert {3, 4, 12} <= k.cos
    assert parse_field("zeta:5").has_zeta(10)
    assert parse_field("cos:5").has_cos(10) and not parse_field("cos:5").has_zeta(5)
    assert PRESETS["C"].has_zeta(97) and not PRESETS["Q"].has_zeta(4)
    assert parse_field("qbar") is PRESETS["Qbar"]
    for bad in ["", "roots:3", "zeta:x", "zeta:0"]:
        with pytest.raises(ValueError):
            parse_field(bad)


def test_generic_extension_conditions():
    Q = PRESETS["Q"]
    assert generic_extension_conditions(make_group("C2"), 2, True, Q)
    assert not generic_extension_conditions(make_group("C2"), 2, False, Q)
    assert generic_extension_conditions(make_group("C3"), 2, False, Q)
    assert generic_extension_conditions(make_group("S3"), 3, True, Q)
    assert not generic_extension_conditions(make_group("S3"), 3, False, Q)
    for r in (1, 2, 3, 4):
        for rat in (False, True):
            assert not generic_extension_conditions(make_group("S4"), r, rat, PRESETS["C"])
    with pytest.raises(ValueError):
        generic_extension_conditions(make_group("C2"), 0, True, Q)


def test_laurent_condition():
    C2 = make_group("C2")
    assert laurent_parametric_condition(RamificationType(C2, ("2a", "2a")))
    S4 = make_group("S4")
    assert not laurent_parametric_condition(RamificationType(S4, ("2a", "3a", "2b")))
    assert laurent_parametric_condition(RamificationType(S4, ("2a", "3a", "4a")))


SPECS = ["C1", "C2", "C5", "C8", "C12", "D3", "D4", "D5", "D6", "D7", "D9", "DC2", "DC3", "A4", "S4", "A5",
         "E2^3", "E3^2", "C2xC4", "C3xS3", "D4xC2", "C2xA4"]
FIELD_STRINGS = ["Q", "Q(i)", "C", "zeta:3", "cos:5", "cos:7", "zeta:8", "cos:9", "zeta:5;cos:7"]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SPECS), st.sampled_from(FIELD_STRINGS), st.integers(1, 5), st.booleans())
def test_classification_implications(spec, field, r, rational):
    G = make_group(spec)
    k = parse_field(field)
    if generic_extension_conditions(G, r, rational, k):
        assert generic_exists(G, k)
    if generic_exists(G, k):
        assert is_pgl2_subgroup(G)
        assert generic_exists(G, PRESETS["C"])


@pytest.mark.parametrize("spec", SPECS)
def test_pgl2_groups_have_few_maximal_cyclic_classes(spec):
    G = make_group(spec)
    if is_pgl2_subgroup(G):
        assert G.maximal_cyclic_class_count() <= 3


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["S3", "S4", "DC2", "A4", "D6", "C2xC4"]), st.data())
def test_laurent_condition_monotone(spec, data):
    G = make_group(spec)
    ids = [c.id for c in G.classes[1:]]
    base = data.draw(st.lists(st.sampled_from(ids), min_size=1, max_size=4))
    extra = data.draw(st.lists(st.sampled_from(ids), min_size=1, max_size=3))
    if laurent_parametric_condition(RamificationType(G, tuple(base))):
        assert laurent_parametric_condition(RamificationType(G, tuple(base + extra)))


def test_descriptor_str():
    assert str(PRESETS["Q(i)"]) == "Q(i)"
    assert str(FieldDescriptor(frozenset({5}))).startswith("zeta:1,2,5,10")
