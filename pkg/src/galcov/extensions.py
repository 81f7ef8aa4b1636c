"""Extensions of a finite group Q by an elementary abelian p-group F_p^u via 2-cocycles.

Vectors of F_p^u are encoded as integers in base p (coordinate i is digit i).  An action is a
homomorphism Q -> GL(u, p) acting on column vectors from the left, and the extension attached to
a normalized cocycle f is the set N x Q with (n, a)(m, b) = (n + a.m + f(a, b), ab).
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Sequence

import numpy as np

from .groups import Group, identify_family, is_isomorphic, make_group
from .hurwitz import BudgetExceeded

Matrix = tuple[tuple[int, ...], ...]

MAX_QUOTIENT_ORDER = 24
DEFAULT_EXTENSION_BUDGET = 10 ** 6


# matrices over F_p


def mat_mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    u = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(u)) % p for j in range(u)) for i in range(u))


def identity_matrix(u: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(u)) for i in range(u))


def _det(A: Matrix, p: int) -> int:
    M = [list(r) for r in A]
    u = len(M)
    det = 1
    for c in range(u):
        piv = next((r for r in range(c, u) if M[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for r in range(c + 1, u):
            f = M[r][c] * inv % p
            M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return det % p


class GeneralLinear:
    """GL(u, p) as a list of matrices with a lazily filled product table."""

    def __init__(self, u: int, p: int, cap: int = 20000):
        if u < 1:
            raise ValueError("rank must be positive")
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        size = 1
        for i in range(u):
            size *= p ** u - p ** i
        if size > cap:
            raise BudgetExceeded(f"|GL({u},{p})| = {size} exceeds cap {cap}")
        self.u, self.p = u, p
        mats = []
        for entries in itertools.product(range(p), repeat=u * u):
            A = tuple(tuple(entries[i * u:(i + 1) * u]) for i in range(u))
            if _det(A, p):
                mats.append(A)
        self.mats = mats
        self.index = {A: i for i, A in enumerate(mats)}
        self.identity = self.index[identity_matrix(u)]
        self._mul: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.mats)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            r = self._mul[key] = self.index[mat_mul(self.mats[i], self.mats[j], self.p)]
        return r

    @cached_property
    def inv(self) -> list[int]:
        out = [0] * len(self.mats)
        for i in range(len(self.mats)):
            x = i
            while True:
                y = self.mul(x, i)
                if y == self.identity:
                    out[i] = x
                    break
                x = y
        return out

    def order_of(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k


# actions


@dataclass(frozen=True)
class ActionSpec:
    quotient: Group
    p: int
    u: int
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        Q, p = self.quotient, self.p
        if len(self.matrices) != Q.order:
            raise ValueError("need one matrix per element of Q")
        if self.matrices[0] != identity_matrix(self.u):
            raise ValueError("identity must act trivially")
        for A in self.matrices:
            if _det(A, p) == 0:
                raise ValueError("action matrices must be invertible")
        for a in range(Q.order):
            for b in range(Q.order):
                if mat_mul(self.matrices[a], self.matrices[b], p) != self.matrices[Q.rows[a][b]]:
                    raise ValueError("action is not a homomorphism")

    @property
    def module_order(self) -> int:
        return self.p ** self.u

    @cached_property
    def vectors(self) -> list[tuple[int, ...]]:
        return [decode(v, self.p, self.u) for v in range(self.module_order)]

    @cached_property
    def act(self) -> list[list[int]]:
        """act[a][v] = code of a.v."""
        p, u = self.p, self.u
        out = []
        for A in self.matrices:
            out.append([encode([sum(A[i][j] * x[j] for j in range(u)) % p for i in range(u)], p)
                        for x in self.vectors])
        return out

    @cached_property
    def add(self) -> list[list[int]]:
        p = self.p
        V = self.vectors
        return [[encode([(a + b) % p for a, b in zip(x, y)], p) for y in V] for x in V]

    def is_trivial(self) -> bool:
        I = identity_matrix(self.u)
        return all(A == I for A in self.matrices)

    def line_orbits(self) -> list[frozenset[int]]:
        """Orbits of Q on one-dimensional subspaces, each line named by its smallest nonzero code."""
        p = self.p
        V = self.vectors

        def line(v):
            return min(encode([(c * x) % p for x in V[v]], p) for c in range(1, p))

        lines = sorted({line(v) for v in range(1, self.module_order)})
        seen: set[int] = set()
        out = []
        for L in lines:
            if L in seen:
                continue
            orb = frozenset(line(self.act[a][L]) for a in range(self.quotient.order))
            seen |= orb
            out.append(orb)
        return out

    def vector_orbits(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for v in range(1, self.module_order):
            if v not in seen:
                orb = frozenset(self.act[a][v] for a in range(self.quotient.order))
                seen |= orb
                out.append(orb)
        return out

    def transitive_on_lines(self) -> bool:
        return len(self.line_orbits()) == 1


def encode(vec: Sequence[int], p: int) -> int:
    return sum(int(x) * p ** i for i, x in enumerate(vec))


def decode(code: int, p: int, u: int) -> tuple[int, ...]:
    out = []
    for _ in range(u):
        code, d = divmod(code, p)
        out.append(d)
    return tuple(out)


def enumerate_actions(Q: Group, p: int, u: int, budget: int = DEFAULT_EXTENSION_BUDGET) -> list[ActionSpec]:
    """Homomorphisms Q -> GL(u, p), one per conjugacy class under GL(u, p)."""
    if Q.order > MAX_QUOTIENT_ORDER and budget <= DEFAULT_EXTENSION_BUDGET:
        raise BudgetExceeded(f"|Q| = {Q.order} exceeds the default cap {MAX_QUOTIENT_ORDER}")
    GL = GeneralLinear(u, p)
    gens = Q.generating_set()
    cands = [[i for i in range(len(GL)) if Q.orders[g] % GL.order_of(i) == 0] for g in gens]
    total = 1
    for c in cands:
        total *= len(c)
    if total > budget:
        raise BudgetExceeded(f"{total} generator assignments exceed budget {budget}")
    # BFS word for every element of Q
    word: list[tuple[int, int] | None] = [None] * Q.order
    seen = [False] * Q.order
    seen[0] = True
    order = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for k, s in enumerate(gens):
            y = Q.rows[x][s]
            if not seen[y]:
                seen[y] = True
                word[y] = (x, k)
                order.append(y)
                queue.append(y)
    reps: dict[tuple[int, ...], list[int]] = {}
    for images in itertools.product(*cands):
        phi = [GL.identity] * Q.order
        for y in order:
            x, k = word[y]
            phi[y] = GL.mul(phi[x], images[k])
        if not all(phi[Q.rows[a][b]] == GL.mul(phi[a], phi[b]) for a in range(Q.order) for b in gens):
            continue
        key = min(tuple(GL.mul(GL.mul(P, m), GL.inv[P]) for m in images) for P in range(len(GL)))
        if key not in reps:
            reps[key] = phi
    out = []
    for key in sorted(reps):
        out.append(ActionSpec(Q, p, u, tuple(GL.mats[i] for i in reps[key])))
    return out


def trivial_action(Q: Group, p: int, u: int) -> ActionSpec:
    return ActionSpec(Q, p, u, (identity_matrix(u),) * Q.order)


# linear algebra over F_p


def nullspace_mod_p(rows: Sequence[dict[int, int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : row . x = 0 for every row}, rows given sparsely as {column: coefficient}."""
    pivots = _echelon(rows, ncols, p)
    basis = []
    pcols = set(pivots)
    for f in range(ncols):
        if f in pcols:
            continue
        v = [0] * ncols
        v[f] = 1
        for c, row in pivots.items():
            coef = row[f] if p != 2 else (row >> f) & 1
            if coef:
                v[c] = (-coef) % p
        basis.append(v)
    return basis


def _echelon(rows, ncols: int, p: int) -> dict:
    """Fully reduced echelon form: pivot column -> row with a 1 there and 0 in other pivot columns."""
    if p == 2:
        piv: dict[int, int] = {}
        for r in rows:
            x = 0
            for c, a in r.items():
                if a % 2:
                    x ^= 1 << c
            while x:
                c = (x & -x).bit_length() - 1
                if c in piv:
                    x ^= piv[c]
                else:
                    piv[c] = x
                    break
        for c in sorted(piv, reverse=True):
            # clear column c from every other pivot row
            for d in piv:
                if d != c and (piv[d] >> c) & 1:
                    piv[d] ^= piv[c]
        return piv
    pivl: dict[int, list[int]] = {}
    for r in rows:
        x = [0] * ncols
        for c, a in r.items():
            x[c] = (x[c] + a) % p
        c = 0
        while True:
            c = next((j for j in range(c, ncols) if x[j]), None)
            if c is None:
                break
            if c in pivl:
                f = x[c]
                prow = pivl[c]
                x = [(a - f * b) % p for a, b in zip(x, prow)]
            else:
                inv = pow(x[c], -1, p)
                pivl[c] = [a * inv % p for a in x]
                break
    for c in sorted(pivl, reverse=True):
        for d in pivl:
            if d != c and pivl[d][c]:
                f = pivl[d][c]
                pivl[d] = [(a - f * b) % p for a, b in zip(pivl[d], pivl[c])]
    return pivl


def rank_mod_p(vectors: Sequence[Sequence[int]], p: int) -> int:
    rows = [{i: a for i, a in enumerate(v) if a % p} for v in vectors]
    ncols = len(vectors[0]) if vectors else 0
    return len(_echelon(rows, ncols, p))


# cocycles


@dataclass(frozen=True)
class Cocycle:
    """Normalized 2-cocycle; values[a][b] is the code of f(a, b)."""
    spec: ActionSpec
    values: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, spec: ActionSpec) -> "Cocycle":
        m = spec.quotient.order
        return cls(spec, tuple((0,) * m for _ in range(m)))

    def is_normalized(self) -> bool:
        m = self.spec.quotient.order
        return all(self.values[0][b] == 0 and self.values[b][0] == 0 for b in range(m))

    def satisfies_identity(self) -> bool:
        S = self.spec
        Q = S.quotient
        rows, act, add = Q.rows, S.act, S.add
        neg = _negation(S)
        f = self.values
        m = Q.order
        for a in range(m):
            for b in range(m):
                ab = rows[a][b]
                for c in range(m):
                    lhs = add[act[a][f[b][c]]][f[a][rows[b][c]]]
                    rhs = add[f[ab][c]][f[a][b]]
                    if add[lhs][neg[rhs]] != 0:
                        return False
        return True


def _negation(S: ActionSpec) -> list[int]:
    p = S.p
    return [encode([(-x) % p for x in v], p) for v in S.vectors]


def _var(a: int, b: int, k: int, m: int, u: int) -> int:
    return ((a - 1) * (m - 1) + (b - 1)) * u + k


def _cocycle_from_vector(spec: ActionSpec, vec: Sequence[int]) -> Cocycle:
    m, u, p = spec.quotient.order, spec.u, spec.p
    vals = [[0] * m for _ in range(m)]
    for a in range(1, m):
        for b in range(1, m):
            vals[a][b] = encode([vec[_var(a, b, k, m, u)] for k in range(u)], p)
    return Cocycle(spec, tuple(tuple(r) for r in vals))


@dataclass
class Cohomology:
    dim: int
    z2_dim: int
    b2_dim: int
    basis: list[Cocycle] = field(default_factory=list)


def second_cohomology(spec: ActionSpec) -> Cohomology:
    """Cocycle representatives of a basis of H^2(Q, F_p^u) for the given action."""
    Q, p, u = spec.quotient, spec.p, spec.u
    m = Q.order
    if m == 1:
        return Cohomology(0, 0, 0, [])
    ncols = (m - 1) * (m - 1) * u
    mats = spec.matrices
    rows_q = Q.rows
    eqs = []
    # a.f(b,c) - f(ab,c) + f(a,bc) - f(a,b) = 0; triples containing 1 hold for normalized f
    for a in range(1, m):
        A = mats[a]
        for b in range(1, m):
            ab = rows_q[a][b]
            for c in range(1, m):
                bc = rows_q[b][c]
                for k in range(u):
                    e: dict[int, int] = {}
                    for j in range(u):
                        if A[k][j]:
                            i = _var(b, c, j, m, u)
                            e[i] = (e.get(i, 0) + A[k][j]) % p
                    if ab:
                        i = _var(ab, c, k, m, u)
                        e[i] = (e.get(i, 0) - 1) % p
                    if bc:
                        i = _var(a, bc, k, m, u)
                        e[i] = (e.get(i, 0) + 1) % p
                    i = _var(a, b, k, m, u)
                    e[i] = (e.get(i, 0) - 1) % p
                    e = {i: x for i, x in e.items() if x}
                    if e:
                        eqs.append(e)
    Z = nullspace_mod_p(eqs, ncols, p)
    B = coboundaries(spec)
    b_rank = rank_mod_p(B, p) if B else 0
    basis = []
    cur = list(B)
    r = b_rank
    for z in Z:
        r2 = rank_mod_p(cur + [z], p)
        if r2 > r:
            cur.append(z)
            r = r2
            basis.append(_cocycle_from_vector(spec, z))
    return Cohomology(len(basis), len(Z), b_rank, basis)


def coboundaries(spec: ActionSpec) -> list[list[int]]:
    """Images of the normalized 1-cochains under (dh)(a, b) = a.h(b) - h(ab) + h(a)."""
    Q, p, u = spec.quotient, spec.p, spec.u
    m = Q.order
    ncols = (m - 1) * (m - 1) * u
    out = []
    for c in range(1, m):
        for k in range(u):
            vec = [0] * ncols
            for a in range(1, m):
                for b in range(1, m):
                    ab = Q.rows[a][b]
                    for i in range(u):
                        x = 0
                        if b == c:
                            x += spec.matrices[a][i][k]
                        if ab == c and i == k:
                            x -= 1
                        if a == c and i == k:
                            x += 1
                        vec[_var(a, b, i, m, u)] = x % p
            out.append(vec)
    return out


def cocycle_combinations(spec: ActionSpec, coh: Cohomology) -> Iterator[Cocycle]:
    """Every F_p-combination of the basis, the zero class first."""
    m, p = spec.quotient.order, spec.p
    for coeffs in itertools.product(range(p), repeat=coh.dim):
        vals = [[0] * m for _ in range(m)]
        for cf, z in zip(coeffs, coh.basis):
            if cf:
                for a in range(m):
                    for b in range(m):
                        v = z.values[a][b]
                        for _ in range(cf):
                            vals[a][b] = spec.add[vals[a][b]][v]
        yield Cocycle(spec, tuple(tuple(r) for r in vals))


def build_extension(spec: ActionSpec, c: Cocycle, name: str = "") -> Group:
    """The group on N x Q; element (n, a) has index a * p^u + n, so N is {0, ..., p^u - 1}."""
    if not c.is_normalized() or not c.satisfies_identity():
        raise ValueError("not a normalized 2-cocycle")
    Q = spec.quotient
    P = spec.module_order
    act, add = spec.act, spec.add
    f = c.values
    size = Q.order * P
    table = np.empty((size, size), dtype=np.int64)
    for a in range(Q.order):
        for n1 in range(P):
            x = a * P + n1
            for b in range(Q.order):
                ab = Q.rows[a][b]
                fab = f[a][b]
                base = ab * P
                for n2 in range(P):
                    table[x, b * P + n2] = base + add[add[n1][act[a][n2]]][fab]
    return Group(table, name or f"ext({Q.name},{spec.p}^{spec.u})")


def extensions(spec: ActionSpec) -> Iterator[Group]:
    coh = second_cohomology(spec)
    for c in cocycle_combinations(spec, coh):
        yield build_extension(spec, c)


# extension-family claims


def involution_class_count(G: Group) -> int:
    return sum(1 for c in G.classes if c.order == 2)


def class_count_of_order(G: Group, k: int) -> int:
    return sum(1 for c in G.classes if c.order == k)


def has_element_of_order(G: Group, k: int) -> bool:
    return k in G.orders


def is_submultiset(small: Sequence[int], big: Sequence[int]) -> bool:
    pool = list(big)
    for x in small:
        if x in pool:
            pool.remove(x)
        else:
            return False
    return True


_S4 = None


def _is_s4(G: Group) -> bool:
    global _S4
    if _S4 is None:
        _S4 = make_group("S4")
    return G.order == 24 and is_isomorphic(G, _S4)


PREDICATES: dict[str, Callable[[Group], bool]] = {
    "order-6": lambda G: has_element_of_order(G, 6),
    "order-4-or-6": lambda G: has_element_of_order(G, 4) or has_element_of_order(G, 6),
    "order-8-or-many-involution-or-order4-classes": lambda G: (
        has_element_of_order(G, 8) or involution_class_count(G) > 4 or class_count_of_order(G, 4) > 2),
    "many-involution-or-order4-classes": lambda G: (
        involution_class_count(G) > 4 or class_count_of_order(G, 4) > 2),
    "order-6-or-maximal-order-4": lambda G: (
        has_element_of_order(G, 6) or 4 in G.maximal_cyclic_orders()),
    "order-10": lambda G: has_element_of_order(G, 10),
    "order-div-6-or-S4": lambda G: any(o % 6 == 0 for o in G.orders) or _is_s4(G),
    # the maximal classes would have to be exactly three classes of orders 2, 4, 6
    "maximal-orders-not-246": lambda G: G.maximal_cyclic_orders() != [2, 4, 6],
}

ACTION_FILTERS: dict[str, Callable[[ActionSpec], bool]] = {
    "transitive-on-lines": ActionSpec.transitive_on_lines,
    "at-most-two-orbits": lambda S: len(S.vector_orbits()) <= 2,
    "any": lambda S: True,
}


@dataclass(frozen=True)
class Claim:
    claim_id: str
    quotients: tuple[str, ...]
    p: int
    ranks: tuple[int, ...]
    action_filter: str
    predicate: str
    exclude_pgl2: bool = False


CLAIMS: tuple[Claim, ...] = (
    Claim("3222-p3", ("E2^2",), 3, (1, 2), "transitive-on-lines", "order-6"),
    Claim("3222-p2", ("S3",), 2, (1, 2), "transitive-on-lines", "order-4-or-6"),
    Claim("4222-D4", ("D4",), 2, (1, 2), "transitive-on-lines", "order-8-or-many-involution-or-order4-classes"),
    # the surrounding argument assumes G is not a finite subgroup of PGL2
    Claim("4222-E2", ("C2", "E2^2"), 2, (1,), "transitive-on-lines", "many-involution-or-order4-classes", True),
    Claim("238", ("S4",), 2, (1, 2), "transitive-on-lines", "order-6-or-maximal-order-4"),
    Claim("245", ("C10", "D5"), 2, (1, 2, 3), "transitive-on-lines", "order-10"),
    Claim("334", ("S3", "C6"), 2, (1, 2), "transitive-on-lines", "order-div-6-or-S4"),
    Claim("246-p3", ("D4",), 3, (1, 2), "transitive-on-lines", "maximal-orders-not-246"),
    Claim("246-p2-A", ("S3",), 2, (1, 2, 3), "at-most-two-orbits", "maximal-orders-not-246"),
    Claim("246-p2-B", ("D6",), 2, (1, 2), "transitive-on-lines", "maximal-orders-not-246"),
    Claim("246-p2-C", ("S4",), 2, (1, 2), "transitive-on-lines", "maximal-orders-not-246"),
)


@dataclass
class ClaimResult:
    claim: Claim
    actions: int = 0
    extensions: int = 0
    excluded: int = 0
    failures: list = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.extensions == 0

    @property
    def verdict(self) -> str:
        return "FAIL" if self.failures else "PASS"

    def to_dict(self) -> dict:
        c = self.claim
        return {"claim": c.claim_id, "quotients": list(c.quotients), "p": c.p, "ranks": list(c.ranks),
                "filter": c.action_filter, "predicate": c.predicate, "exclude_pgl2": c.exclude_pgl2,
                "actions": self.actions, "extensions": self.extensions, "excluded": self.excluded,
                "failures": self.failures, "vacuous": self.vacuous, "verdict": self.verdict}


def check_claim(claim: Claim, budget: int = DEFAULT_EXTENSION_BUDGET) -> ClaimResult:
    pred = PREDICATES[claim.predicate]
    keep = ACTION_FILTERS[claim.action_filter]
    res = ClaimResult(claim)
    for qspec in claim.quotients:
        Q = make_group(qspec)
        for u in claim.ranks:
            for spec in enumerate_actions(Q, claim.p, u, budget):
                if not keep(spec):
                    continue
                res.actions += 1
                for idx, E in enumerate(extensions(spec)):
                    if claim.exclude_pgl2 and identify_family(E) is not None:
                        res.excluded += 1
                        continue
                    res.extensions += 1
                    if res.extensions > budget:
                        raise BudgetExceeded("extension enumeration exceeded budget")
                    if not pred(E):
                        res.failures.append({"quotient": qspec, "u": u, "class": idx,
                                             "maximal_orders": E.maximal_cyclic_orders(),
                                             "fingerprint": repr(E.fingerprint)})
    return res


def replicate_appendix_checks(claims: Sequence[Claim] = CLAIMS,
                              budget: int = DEFAULT_EXTENSION_BUDGET) -> list[ClaimResult]:
    return sorted((check_claim(c, budget) for c in claims), key=lambda r: r.claim.claim_id)


def format_report(results: Sequence[ClaimResult]) -> str:
    lines = [f"{'claim':<10} {'Q':<9} {'p':>2} {'u':<6} {'actions':>7} {'ext':>4} {'verdict':<15} predicate"]
    for r in results:
        c = r.claim
        verdict = r.verdict + (" (vacuous)" if r.vacuous else "")
        lines.append(f"{c.claim_id:<10} {'/'.join(c.quotients):<9} {c.p:>2} {','.join(map(str, c.ranks)):<6} "
                     f"{r.actions:>7} {r.extensions:>4} {verdict:<15} {c.predicate}")
    return "\n".join(lines)


def report_json(results: Sequence[ClaimResult]) -> str:
    return json.dumps([r.to_dict() for r in results], sort_keys=True, separators=(",", ":"))
