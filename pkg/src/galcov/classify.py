"""Decision procedures for PGL2 membership, generic extensions and Laurent parametricity."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .groups import Group, identify_family
from .hurwitz import RamificationType

# 2 cos(2 pi / n) is rational exactly for these n
RATIONAL_COS = frozenset({1, 2, 3, 4, 6})
BASE_ZETA = frozenset({1, 2})


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _close(zeta: set[int], cos: set[int]) -> tuple[frozenset[int], frozenset[int]]:
    zeta = set(zeta) | BASE_ZETA
    cos = set(cos) | RATIONAL_COS
    while True:
        before = (len(zeta), len(cos))
        zeta |= {d for n in list(zeta) for d in _divisors(n)}
        zeta |= {2 * n for n in list(zeta) if n % 2}
        zeta |= {math.lcm(a, b) for a in list(zeta) for b in list(zeta)}
        cos |= zeta
        cos |= {d for n in list(cos) for d in _divisors(n)}
        cos |= {2 * n for n in list(cos) if n % 2}
        if (len(zeta), len(cos)) == before:
            return frozenset(zeta), frozenset(cos)


@dataclass(frozen=True)
class FieldDescriptor:
    """Declared cyclotomic data of a characteristic-zero field.

    ``zeta`` holds n with a primitive n-th root of unity in the field, ``cos`` holds n with
    2 cos(2 pi / n) in the field.  ``closed`` means every such element is present.
    """
    zeta: frozenset[int] = BASE_ZETA
    cos: frozenset[int] = RATIONAL_COS
    closed: bool = False
    name: str = ""

    def __post_init__(self):
        if any(n < 1 for n in self.zeta | self.cos):
            raise ValueError("root-of-unity orders must be positive")
        z, c = _close(self.zeta, self.cos)
        object.__setattr__(self, "zeta", z)
        object.__setattr__(self, "cos", c)

    def has_zeta(self, n: int) -> bool:
        return self.closed or n in self.zeta

    def has_cos(self, n: int) -> bool:
        return self.closed or n in self.cos

    def __str__(self) -> str:
        if self.name:
            return self.name
        return f"zeta:{','.join(map(str, sorted(self.zeta)))};cos:{','.join(map(str, sorted(self.cos)))}"


PRESETS = {
    "Q": FieldDescriptor(name="Q"),
    "Q(i)": FieldDescriptor(zeta=frozenset({4}), name="Q(i)"),
    "C": FieldDescriptor(closed=True, name="C"),
    "Qbar": FieldDescriptor(closed=True, name="Qbar"),
}


def parse_field(text: str) -> FieldDescriptor:
    """A preset name or 'zeta:3,4;cos:5,7' (either part may be omitted)."""
    t = text.strip()
    for key, fd in PRESETS.items():
        if t.lower() == key.lower():
            return fd
    zeta: set[int] = set()
    cos: set[int] = set()
    for part in filter(None, (p.strip() for p in t.split(";"))):
        key, sep, vals = part.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("zeta", "cos"):
            raise ValueError(f"bad field descriptor part {part!r}")
        try:
            nums = {int(v) for v in vals.split(",") if v.strip()}
        except ValueError as exc:
            raise ValueError(f"bad integer in {part!r}") from exc
        (zeta if key == "zeta" else cos).update(nums)
    if not t:
        raise ValueError("empty field descriptor")
    return FieldDescriptor(frozenset(zeta), frozenset(cos))


def is_pgl2_subgroup(G: Group) -> bool:
    return identify_family(G) is not None


def _odd_dihedral_n(G: Group) -> int | None:
    fam = identify_family(G)
    if fam and fam.startswith("D") and not G.is_cyclic():
        n = int(fam[1:])
        if n >= 3 and n % 2:
            return n
    return None


def generic_exists(G: Group, k: FieldDescriptor) -> bool:
    """Whether G has a k-regular generic extension of k(T).

    Cyclic of even order n needs zeta_n; cyclic of odd order n needs 2cos(2pi/n); dihedral of
    order 2n with n >= 3 odd needs 2cos(2pi/n).  Nothing else qualifies.
    """
    n = G.order
    if n == 1:
        return False
    if G.is_cyclic():
        return k.has_zeta(n) if n % 2 == 0 else k.has_cos(n)
    m = _odd_dihedral_n(G)
    return m is not None and k.has_cos(m)


def generic_extension_conditions(G: Group, r: int, branch_rational: bool, k: FieldDescriptor) -> bool:
    """Whether an extension with r branch points (all k-rational or not) can be generic."""
    if r < 1:
        raise ValueError("r must be positive")
    n = G.order
    if n == 1:
        return False
    if G.is_cyclic():
        if n % 2 == 0:
            return r == 2 and branch_rational and k.has_zeta(n)
        return r == 2 and k.has_cos(n)
    m = _odd_dihedral_n(G)
    return m is not None and r == 3 and branch_rational and k.has_cos(m)


def laurent_parametric_condition(T: RamificationType) -> bool:
    """Every element order of G divides the order of some class in the type."""
    orders = set(T.orders)
    return all(any(e % o == 0 for e in orders) for o in set(T.group.orders))
