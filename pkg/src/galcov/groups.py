"""Finite groups as explicit Cayley tables.

Element 0 is always the identity.  Element orderings per family:

* ``C<n>``: index k is g^k.
* ``D<n>``: rotations r^k at index k, reflections r^k s at index n + k.
* ``DC<n>``: a^k at index k, a^k x at index 2n + k (a of order 2n, x^2 = a^n).
* ``S<n>``/``A<n>``: permutations of 0..n-1 in lexicographic order of image tuples.
* ``E<p>^<k>``: exponent vectors sorted by (coordinate sum, lexicographic), so the
  first k nonidentity elements form a basis.
* ``XxY``: pairs (x, y) at index x * |Y| + y.
* ``perm:`` generated groups: shortlex word order over the generators as given.

Permutations compose left to right: ``(p * q)[i] = q[p[i]]``.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

ORDER_CAP = 10_000


class GroupParseError(ValueError):
    pass


class OrderCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ConjClass:
    id: str
    rep: int
    members: tuple[int, ...]
    order: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Subgroup:
    parent: "Group"
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_normal(self) -> bool:
        G = self.parent
        s = self._set
        return all(G.conj(x, g) in s for x in self.members for g in range(G.order))


def _class_letters(k: int) -> str:
    # a..z, then aa, ab, ...
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(97 + r) + s
    return s


class Group:
    """A finite group given by its multiplication table."""

    def __init__(self, table, name: str = "", check: bool = True):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise ValueError("multiplication table must be square and nonempty")
        if n > ORDER_CAP:
            raise OrderCapExceeded(f"group order {n} exceeds cap {ORDER_CAP}")
        self.order = n
        self.name = name
        self.table = t
        self.rows: list[list[int]] = t.tolist()
        if check:
            self._check_basic()
        inv = [0] * n
        for x in range(n):
            inv[x] = self.rows[x].index(0)
        self.inv = inv

    def _check_basic(self) -> None:
        n = self.order
        t = self.table
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise ValueError("index 0 is not the identity")
        if np.any(t < 0) or np.any(t >= n):
            raise ValueError("table entries out of range")
        srt = np.sort(t, axis=1)
        if not np.all(srt == ar) or not np.all(np.sort(t, axis=0) == ar[:, None]):
            raise ValueError("table is not a Latin square")

    def __repr__(self) -> str:
        return f"Group({self.name or '?'}, order={self.order})"

    def mul(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def prod(self, xs) -> int:
        r = 0
        rows = self.rows
        for x in xs:
            r = rows[r][x]
        return r

    def power(self, x: int, m: int) -> int:
        if m < 0:
            x, m = self.inv[x], -m
        r, b = 0, x
        rows = self.rows
        while m:
            if m & 1:
                r = rows[r][b]
            b = rows[b][b]
            m >>= 1
        return r

    def conj(self, x: int, g: int) -> int:
        """g x g^-1."""
        return self.rows[self.rows[g][x]][self.inv[g]]

    def is_associative(self, sample: int | None = None, seed: int = 0) -> bool:
        t = self.table
        n = self.order
        if sample is None and n <= 256:
            for a in range(n):
                # (a b) c == a (b c) for all b, c
                lhs = t[t[a]]          # lhs[b, c] = (ab)c
                rhs = t[a][t]          # rhs[b, c] = a(bc)
                if not np.array_equal(lhs, rhs):
                    return False
            return True
        rng = np.random.default_rng(seed)
        trip = rng.integers(0, n, size=(sample or 20000, 3))
        a, b, c = trip.T
        return bool(np.all(t[t[a, b], c] == t[a, t[b, c]]))

    # element data

    @cached_property
    def orders(self) -> list[int]:
        out = [0] * self.order
        rows = self.rows
        for x in range(self.order):
            if out[x]:
                continue
            k, y = 1, x
            while y != 0:
                y = rows[y][x]
                k += 1
            out[x] = k
        return out

    def element_order(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise IndexError(x)
        return self.orders[x]

    @cached_property
    def classes(self) -> list[ConjClass]:
        n = self.order
        seen = [False] * n
        raw = []
        for x in range(n):
            if seen[x]:
                continue
            mem = sorted({self.conj(x, g) for g in range(n)})
            for y in mem:
                seen[y] = True
            raw.append(mem)
        raw.sort(key=lambda m: (self.orders[m[0]], m[0]))
        out = []
        counter: Counter = Counter()
        for mem in raw:
            o = self.orders[mem[0]]
            if o == 1:
                cid = "1A"
            else:
                cid = f"{o}{_class_letters(counter[o])}"
                counter[o] += 1
            out.append(ConjClass(cid, mem[0], tuple(mem), o))
        return out

    @cached_property
    def class_of(self) -> list[int]:
        """Position in ``classes`` for each element."""
        out = [0] * self.order
        for i, c in enumerate(self.classes):
            for x in c.members:
                out[x] = i
        return out

    @cached_property
    def class_index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.classes)}

    def class_by_id(self, cid: str) -> ConjClass:
        return self.classes[self.resolve_class(cid)]

    def class_of_element(self, x: int) -> ConjClass:
        return self.classes[self.class_of[x]]

    def resolve_class(self, cid: str) -> int:
        """Index of a class id; accepts power suffixes such as ``3a2`` or ``4a^-1``."""
        cid = cid.strip()
        if cid in self.class_index:
            return self.class_index[cid]
        m = re.fullmatch(r"(\d+[A-Za-z]+)\^?(-?\d+)", cid)
        if m and m.group(1) in self.class_index:
            base = self.classes[self.class_index[m.group(1)]]
            return self.class_of[self.power(base.rep, int(m.group(2)))]
        raise KeyError(f"unknown class id {cid!r} in {self.name or 'group'}")

    def class_power(self, C: ConjClass | str, m: int) -> ConjClass:
        if isinstance(C, str):
            C = self.class_by_id(C)
        return self.classes[self.class_of[self.power(C.rep, m)]]

    def inverse_class(self, C: ConjClass | str) -> ConjClass:
        return self.class_power(C, -1)

    # subgroups

    def closure(self, gens) -> frozenset[int]:
        gens = [g for g in set(gens) if g != 0]
        elems = {0}
        frontier = [0]
        rows = self.rows
        while frontier:
            nxt = []
            for x in frontier:
                row = rows[x]
                for g in gens:
                    y = row[g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def generates(self, S) -> bool:
        return len(self.closure(S)) == self.order

    def subgroup(self, gens) -> Subgroup:
        return Subgroup(self, tuple(sorted(self.closure(gens))))

    @cached_property
    def center(self) -> Subgroup:
        t = self.table
        z = [x for x in range(self.order) if np.array_equal(t[x], t[:, x])]
        return Subgroup(self, tuple(z))

    def commutator_subgroup(self, H: Subgroup | None = None) -> Subgroup:
        mem = range(self.order) if H is None else H.members
        rows, inv = self.rows, self.inv
        comms = {rows[rows[a][b]][rows[inv[a]][inv[b]]] for a in mem for b in mem}
        return self.subgroup(comms)

    @cached_property
    def derived_series(self) -> tuple[int, ...]:
        orders = [self.order]
        H = Subgroup(self, tuple(range(self.order)))
        while True:
            D = self.commutator_subgroup(H)
            if D.order == H.order:
                break
            orders.append(D.order)
            H = D
        return tuple(orders)

    @cached_property
    def cyclic_subgroups(self) -> list[frozenset[int]]:
        seen = {}
        for x in range(self.order):
            key = frozenset(self.power(x, k) for k in range(self.orders[x]))
            seen.setdefault(key, x)
        return list(seen)

    @cached_property
    def maximal_cyclic_classes(self) -> list[list[frozenset[int]]]:
        """Conjugacy classes of cyclic subgroups that are maximal among cyclic subgroups."""
        cyc = self.cyclic_subgroups
        maximal = [H for H in cyc if not any(len(K) > len(H) and H < K for K in cyc)]
        out = []
        done = set()
        for H in sorted(maximal, key=lambda s: (len(s), sorted(s))):
            if H in done:
                continue
            orbit = {frozenset(self.conj(x, g) for x in H) for g in range(self.order)}
            done |= orbit
            out.append(sorted(orbit, key=sorted))
        return out

    def maximal_cyclic_class_count(self) -> int:
        return len(self.maximal_cyclic_classes)

    def maximal_cyclic_orders(self) -> list[int]:
        return sorted(len(c[0]) for c in self.maximal_cyclic_classes)

    @cached_property
    def _normal_closures(self) -> list[frozenset[int]]:
        out = []
        for c in self.classes[1:]:
            N = self.closure(c.members)
            if N not in out:
                out.append(N)
        return out

    def minimal_normal_subgroups(self) -> list[Subgroup]:
        if self.order == 1:
            raise ValueError("the trivial group has no minimal normal subgroups")
        cands = self._normal_closures
        mins = [N for N in cands if not any(M < N for M in cands)]
        mins.sort(key=lambda s: (len(s), sorted(s)))
        return [Subgroup(self, tuple(sorted(N))) for N in mins]

    def normal_subgroups(self) -> list[Subgroup]:
        """All normal subgroups, as joins of normal closures of classes."""
        found = {frozenset([0])}
        frontier = list(found)
        base = self._normal_closures
        while frontier:
            nxt = []
            for H in frontier:
                for N in base:
                    if N <= H:
                        continue
                    J = self.closure(H | N)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
            frontier = nxt
        return [Subgroup(self, tuple(sorted(N))) for N in sorted(found, key=lambda s: (len(s), sorted(s)))]

    def quotient(self, N: Subgroup | frozenset | set):
        """Return (G/N, projection list).  Cosets are ordered by their minimal element."""
        mem = N.members if isinstance(N, Subgroup) else tuple(sorted(N))
        Nsub = N if isinstance(N, Subgroup) else Subgroup(self, mem)
        if 0 not in Nsub or len(self.closure(mem)) != len(mem):
            raise ValueError("not a subgroup")
        if not Nsub.is_normal():
            raise ValueError("subgroup is not normal")
        proj = [-1] * self.order
        reps = []
        for x in range(self.order):
            if proj[x] >= 0:
                continue
            k = len(reps)
            reps.append(x)
            for h in mem:
                proj[self.rows[x][h]] = k
        m = len(reps)
        tab = [[proj[self.rows[a][b]] for b in reps] for a in reps]
        Q = Group(tab, name=f"({self.name})/N{len(mem)}", check=False)
        return Q, proj

    # isomorphism

    @cached_property
    def fingerprint(self) -> tuple:
        cls = tuple(sorted((c.order, c.size) for c in self.classes))
        hist = tuple(sorted(Counter(self.orders).items()))
        return (self.order, cls, hist, self.derived_series)

    def generating_set(self) -> list[int]:
        gens: list[int] = []
        H = frozenset([0])
        for x in sorted(range(self.order), key=lambda x: (-self.orders[x], x)):
            if x not in H:
                gens.append(x)
                H = self.closure(gens)
                if len(H) == self.order:
                    break
        return gens

    def is_cyclic(self) -> bool:
        return self.order in self.orders

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)


def _word_tree(G: Group, gens: list[int]):
    """BFS spanning tree: list of (element, parent, generator position)."""
    seen = {0}
    order = [(0, -1, -1)]
    i = 0
    while i < len(order):
        x = order[i][0]
        for j, g in enumerate(gens):
            y = G.rows[x][g]
            if y not in seen:
                seen.add(y)
                order.append((y, x, j))
        i += 1
    return order


def find_isomorphism(G: Group, H: Group) -> list[int] | None:
    """An isomorphism G -> H as an image list, or None.  Exhaustive search over generator images."""
    if G.fingerprint != H.fingerprint:
        return None
    gens = G.generating_set()
    tree = _word_tree(G, gens)
    cands = []
    for g in gens:
        key = (G.orders[g], G.class_of_element(g).size)
        cands.append([h for h in range(H.order) if (H.orders[h], H.class_of_element(h).size) == key])
    for imgs in itertools.product(*cands):
        if not H.generates(imgs):
            continue
        phi = [-1] * G.order
        phi[0] = 0
        for x, parent, j in tree[1:]:
            phi[x] = H.rows[phi[parent]][imgs[j]]
        if len(set(phi)) != G.order:
            continue
        ok = all(phi[G.rows[x][g]] == H.rows[phi[x]][imgs[j]]
                 for x in range(G.order) for j, g in enumerate(gens))
        if ok:
            return phi
    return None


def is_isomorphic(G: Group, H: Group) -> bool:
    if G.fingerprint != H.fingerprint:
        return False
    if G.order > 256:
        return True
    return find_isomorphism(G, H) is not None


# constructions

def _cyclic(n: int) -> Group:
    a = np.arange(n)
    return Group((a[:, None] + a[None, :]) % n, name=f"C{n}", check=False)


def _dihedral(n: int) -> Group:
    # r^a s^b, index b*n + a; s r = r^-1 s
    N = 2 * n
    t = np.empty((N, N), dtype=np.int64)
    for x in range(N):
        b1, a1 = divmod(x, n)
        for y in range(N):
            b2, a2 = divmod(y, n)
            a = (a1 + (a2 if b1 == 0 else -a2)) % n
            t[x, y] = ((b1 + b2) % 2) * n + a
    return Group(t, name=f"D{n}", check=False)


def _dicyclic(n: int) -> Group:
    # a^k x^b, index b*2n + k; x a = a^-1 x, x^2 = a^n
    m = 2 * n
    N = 4 * n
    t = np.empty((N, N), dtype=np.int64)
    for x in range(N):
        b1, k1 = divmod(x, m)
        for y in range(N):
            b2, k2 = divmod(y, m)
            k = k1 + (k2 if b1 == 0 else -k2)
            if b1 == 1 and b2 == 1:
                k += n
            t[x, y] = ((b1 + b2) % 2) * m + (k % m)
    return Group(t, name=f"DC{n}", check=False)


def _perm_table(perms: list[tuple[int, ...]]) -> np.ndarray:
    index = {p: i for i, p in enumerate(perms)}
    P = np.array(perms, dtype=np.int64)
    N = len(perms)
    t = np.empty((N, N), dtype=np.int64)
    for i in range(N):
        # (p_i * p_j)[k] = p_j[p_i[k]]
        comp = P[:, P[i]]
        t[i] = [index[tuple(r)] for r in comp.tolist()]
    return t


def _sign(p) -> int:
    s, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, L = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            if L % 2 == 0:
                s = -s
    return s


def _symmetric(n: int, alternating: bool = False) -> Group:
    size = math.factorial(n) // (2 if alternating and n > 1 else 1)
    if size > ORDER_CAP:
        raise OrderCapExceeded(f"group order {size} exceeds cap {ORDER_CAP}")
    perms = [p for p in itertools.permutations(range(n)) if not alternating or _sign(p) == 1]
    return Group(_perm_table(perms), name=f"{'A' if alternating else 'S'}{n}", check=False)


def _elementary(p: int, k: int) -> Group:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise GroupParseError(f"E{p}^{k}: {p} is not prime")
    if p ** k > ORDER_CAP:
        raise OrderCapExceeded(f"group order {p ** k} exceeds cap {ORDER_CAP}")
    vecs = sorted(itertools.product(range(p), repeat=k), key=lambda v: (sum(v), v))
    index = {v: i for i, v in enumerate(vecs)}
    V = np.array(vecs, dtype=np.int64).reshape(len(vecs), k)
    N = len(vecs)
    t = np.empty((N, N), dtype=np.int64)
    for i in range(N):
        s = (V[i] + V) % p
        t[i] = [index[tuple(r)] for r in s.tolist()]
    return Group(t, name=f"E{p}^{k}", check=False)


def direct_product(G: Group, H: Group) -> Group:
    n, m = G.order, H.order
    if n * m > ORDER_CAP:
        raise OrderCapExceeded(f"group order {n * m} exceeds cap {ORDER_CAP}")
    t = (G.table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(n * m, n * m)
    return Group(t, name=f"{G.name}x{H.name}", check=False)


def parse_cycles(text: str, degree: int | None = None, base: int = 1) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1,2,3)(4,5)`` or ``(1 2)`` into an image tuple.

    Without separators each character is one point, so ``(123)`` is a 3-cycle.
    """
    text = text.strip()
    cycles = []
    if text not in ("", "()", "1", "id"):
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise GroupParseError(f"bad cycle notation {text!r}")
        for body in re.findall(r"\(([^()]*)\)", text):
            body = body.strip()
            if not body:
                continue
            if "," in body or " " in body:
                pts = [int(s) for s in re.split(r"[,\s]+", body) if s]
            else:
                pts = [int(ch) for ch in body]
            cycles.append([q - base for q in pts])
    mx = max((max(c) for c in cycles if c), default=-1) + 1
    n = degree if degree is not None else mx
    if mx > n:
        raise GroupParseError(f"cycle point exceeds degree {n}")
    img = list(range(n))
    for c in cycles:
        if len(set(c)) != len(c) or min(c) < 0:
            raise GroupParseError(f"bad cycle {c}")
        for i, q in enumerate(c):
            img[q] = c[(i + 1) % len(c)]
    return tuple(img)


def format_cycles(p, base: int = 1) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc, j = [], i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + base)
            j = p[j]
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def permutation_group(gens: list[tuple[int, ...]], name: str = "", cap: int = ORDER_CAP) -> tuple[Group, list[tuple[int, ...]]]:
    """Close permutation generators; elements are listed in shortlex word order."""
    if not gens:
        return Group([[0]], name=name, check=False), [()]
    n = max(len(g) for g in gens)
    gens = [tuple(g) + tuple(range(len(g), n)) for g in gens]
    e = tuple(range(n))
    elems = [e]
    index = {e: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = tuple(g[x[k]] for k in range(n))
            if y not in index:
                if len(elems) >= cap:
                    raise OrderCapExceeded(f"closure exceeds cap {cap}")
                index[y] = len(elems)
                elems.append(y)
        i += 1
    return Group(_perm_table(elems), name=name, check=False), elems


def load_table(path: str | Path, name: str | None = None) -> Group:
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    try:
        n = int(lines[0][0])
        rows = [[int(v) for v in ln] for ln in lines[1:n + 1]]
    except (ValueError, IndexError) as exc:
        raise GroupParseError(f"bad Cayley table file {path}") from exc
    if n > ORDER_CAP:
        raise OrderCapExceeded(f"group order {n} exceeds cap {ORDER_CAP}")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GroupParseError(f"Cayley table in {path} is not {n}x{n}")
    G = Group(rows, name=name or f"table:{path}", check=True)
    if not G.is_associative():
        raise GroupParseError(f"Cayley table in {path} is not associative")
    return G


_FAMILY = re.compile(r"(DC|C|D|S|A)(\d+)|E(\d+)\^(\d+)")


def _split_product(spec: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in spec:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


_cache: dict[str, Group] = {}


def make_group(spec: str) -> Group:
    """Build a group from a construction string (see module docstring)."""
    spec = spec.strip()
    if spec in _cache:
        return _cache[spec]
    G = _make(spec)
    G.name = spec
    _cache[spec] = G
    return G


def _make(spec: str) -> Group:
    if spec.startswith("table:"):
        return load_table(spec[6:], name=spec)
    if spec.startswith("perm:"):
        body = spec[5:]
        gens = [parse_cycles(s) for s in body.split(";") if s.strip()]
        return permutation_group(gens, name=spec)[0]
    if spec.startswith("(") and spec.endswith(")") and len(_split_product(spec[1:-1])) > 1:
        return _make(spec[1:-1])
    parts = _split_product(spec)
    if len(parts) > 1:
        if any(not p for p in parts):
            raise GroupParseError(f"bad product spec {spec!r}")
        G = make_group(parts[0])
        for p in parts[1:]:
            G = direct_product(G, make_group(p))
        return G
    m = _FAMILY.fullmatch(spec)
    if not m:
        raise GroupParseError(f"cannot parse group spec {spec!r}")
    if m.group(1):
        fam, n = m.group(1), int(m.group(2))
        if n < 1:
            raise GroupParseError(f"{spec}: index must be positive")
        size = {"C": n, "D": 2 * n, "DC": 4 * n}.get(fam)
        if size is not None and size > ORDER_CAP:
            raise OrderCapExceeded(f"group order {size} exceeds cap {ORDER_CAP}")
        if fam == "C":
            return _cyclic(n)
        if fam == "D":
            return _dihedral(n)
        if fam == "DC":
            return _dicyclic(n)
        if n > 8:
            raise OrderCapExceeded(f"{spec}: order exceeds cap {ORDER_CAP}")
        return _symmetric(n, alternating=(fam == "A"))
    p, k = int(m.group(3)), int(m.group(4))
    if k < 1:
        raise GroupParseError(f"{spec}: exponent must be positive")
    return _elementary(p, k)


def identify_family(G: Group) -> str | None:
    """Name of the finite subgroup of PGL2 that G is isomorphic to, else None."""
    n = G.order
    if G.is_cyclic():
        return f"C{n}"
    if n % 2 == 0 and n >= 4 and is_isomorphic(G, make_group(f"D{n // 2}")):
        return f"D{n // 2}"
    for s in ("A4", "S4", "A5"):
        H = make_group(s)
        if n == H.order and is_isomorphic(G, H):
            return s
    return None
