"""Finite irreducible root systems of types A-G with exact integer tables.

Roots are integer coordinate vectors over the simple roots (Bourbaki
numbering).  The invariant form is normalized so that the highest short
root has squared length 2, which keeps every Gram entry an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LiesphError, MismatchedSystems

_RANK_CONSTRAINTS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_WEYL_ORDER_EXC = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        check = _RANK_CONSTRAINTS.get(self.family)
        if check is None:
            raise LiesphError(f"unknown family {self.family!r}")
        if not check(self.rank):
            raise LiesphError(f"invalid rank {self.rank} for family {self.family}")

    @classmethod
    def parse(cls, name: str) -> "CartanType":
        name = name.strip()
        if len(name) < 2 or name[0].upper() not in _RANK_CONSTRAINTS:
            raise LiesphError(f"cannot parse Cartan type {name!r}")
        try:
            rank = int(name[1:])
        except ValueError:
            raise LiesphError(f"cannot parse Cartan type {name!r}") from None
        return cls(name[0].upper(), rank)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_simply_laced(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def is_doubly_laced(self) -> bool:
        return self.family in ("B", "C", "F")

    def num_positive_roots(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family in ("B", "C"):
            return n * n
        if self.family == "D":
            return n * (n - 1)
        if self.family == "F":
            return 24
        if self.family == "G":
            return 6
        return {6: 36, 7: 63, 8: 120}[n]

    def weyl_order(self) -> int:
        n = self.rank
        if self.family == "A":
            return _factorial(n + 1)
        if self.family in ("B", "C"):
            return (1 << n) * _factorial(n)
        if self.family == "D":
            return (1 << (n - 1)) * _factorial(n)
        return _WEYL_ORDER_EXC[self.name]


def _dynkin_data(ct: CartanType) -> tuple[list[tuple[int, int]], list[int]]:
    """Edges (0-based node pairs) and half squared norms d_i of the simple roots."""
    n = ct.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if ct.family == "A":
        return chain, [1] * n
    if ct.family == "B":
        return chain, [2] * (n - 1) + [1]
    if ct.family == "C":
        return chain, [1] * (n - 1) + [2]
    if ct.family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return edges, [1] * n
    if ct.family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        return edges, [1] * n
    if ct.family == "F":
        return chain, [2, 2, 1, 1]
    return [(0, 1)], [1, 3]  # G2, alpha1 short


class Root:
    """A root, as integer coordinates over the simple roots of its system."""

    __slots__ = ("system", "index", "coords")

    def __init__(self, system: "RootSystem", index: int, coords: tuple[int, ...]):
        self.system = system
        self.index = index
        self.coords = coords

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.index < self.system.num_positive

    @property
    def norm2(self) -> int:
        return self.system.norm2[self.index]

    @property
    def is_long(self) -> bool:
        return self.norm2 == self.system.long_norm2

    @property
    def is_short(self) -> bool:
        return self.norm2 == self.system.short_norm2

    def __neg__(self) -> "Root":
        return self.system.root(self.system.neg_index(self.index))

    def __eq__(self, other):
        return (
            isinstance(other, Root)
            and other.system is self.system
            and other.index == self.index
        )

    def __hash__(self):
        return hash((id(self.system), self.index))

    def __repr__(self):
        return f"Root({self.coords})"


class PosRootSet:
    """Subset of the positive roots of one system, as a fixed-width bit vector."""

    __slots__ = ("mask", "width")

    def __init__(self, mask: int, width: int):
        if mask < 0 or mask >> width:
            raise LiesphError("bit vector out of range for its width")
        self.mask = mask
        self.width = width

    @classmethod
    def from_indices(cls, indices, width: int) -> "PosRootSet":
        mask = 0
        for i in indices:
            if not 0 <= i < width:
                raise LiesphError(f"index {i} is not a positive-root index")
            mask |= 1 << i
        return cls(mask, width)

    def indices(self):
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return self.indices()

    def __eq__(self, other):
        return (
            isinstance(other, PosRootSet)
            and other.mask == self.mask
            and other.width == self.width
        )

    def __hash__(self):
        return hash((self.mask, self.width))

    def _check(self, other: "PosRootSet"):
        if self.width != other.width:
            raise MismatchedSystems("bit vectors of different widths")

    def union(self, other: "PosRootSet") -> "PosRootSet":
        self._check(other)
        return PosRootSet(self.mask | other.mask, self.width)

    def intersection(self, other: "PosRootSet") -> "PosRootSet":
        self._check(other)
        return PosRootSet(self.mask & other.mask, self.width)

    def difference(self, other: "PosRootSet") -> "PosRootSet":
        self._check(other)
        return PosRootSet(self.mask & ~other.mask, self.width)

    def complement(self) -> "PosRootSet":
        return PosRootSet(~self.mask & ((1 << self.width) - 1), self.width)

    def issubset(self, other: "PosRootSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"PosRootSet({sorted(self.indices())}, width={self.width})"


class RootSystem:
    """Immutable tables for one finite irreducible root system.

    Positive roots come first in ``roots``, sorted by height and then by
    descending lexicographic coordinates; ``roots[i + num_positive]`` is the
    negative of ``roots[i]``.

    Downstream modules stash memo tables on instances (parabolic planes,
    poset up-sets); those fill lazily and idempotently, so concurrent
    readers at worst duplicate work.
    """

    def __init__(self, cartan_type: CartanType, swap: bool = False):
        if swap and not (cartan_type.rank == 2 and cartan_type.family in ("B", "C", "G")):
            raise LiesphError("swap flag is only supported for rank-2 types B2/C2/G2")
        self.cartan_type = cartan_type
        self.rank = cartan_type.rank
        self.swapped = swap

        edges, d = _dynkin_data(cartan_type)
        if swap:
            relabel = {i: self.rank - 1 - i for i in range(self.rank)}
            edges = [(relabel[i], relabel[j]) for i, j in edges]
            d = list(reversed(d))
        adjacent = {frozenset(e) for e in edges}
        self.simple_norms = tuple(d)
        self.gram = tuple(
            tuple(
                2 * d[i] if i == j else (-max(d[i], d[j]) if frozenset((i, j)) in adjacent else 0)
                for j in range(self.rank)
            )
            for i in range(self.rank)
        )

        positives = self._generate_positive_roots()
        expected = cartan_type.num_positive_roots()
        if len(positives) != expected:
            raise LiesphError(
                f"closure produced {len(positives)} positive roots, expected {expected}"
            )
        positives.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
        self.num_positive = len(positives)
        coords_list = positives + [tuple(-x for x in c) for c in positives]
        self.roots = [Root(self, i, c) for i, c in enumerate(coords_list)]
        self.index_of = {c: i for i, c in enumerate(coords_list)}

        self.norm2 = [self._form(r.coords, r.coords) for r in self.roots]
        self.short_norm2 = min(self.norm2)
        self.long_norm2 = max(self.norm2)

        size = len(self.roots)
        self.pairing_table = [
            [2 * self._form(a.coords, b.coords) // self.norm2[b.index] for b in self.roots]
            for a in self.roots
        ]
        self.sum_table = []
        for a in self.roots:
            row = []
            for b in self.roots:
                s = tuple(x + y for x, y in zip(a.coords, b.coords))
                row.append(self.index_of.get(s))
            self.sum_table.append(row)

        self.theta = self._highest(range(self.num_positive))
        shorts = [i for i in range(self.num_positive) if self.norm2[i] == self.short_norm2]
        self.theta_s = self._highest(shorts)
        for i in range(self.rank):
            assert self.sum_table[self.theta.index][self._simple_index(i)] is None

        self.simple_perms = tuple(
            tuple(self._reflect_index(i, j) for j in range(size)) for i in range(self.rank)
        )

        # memo caches shared by downstream modules (read-only after fill)
        self._plane_cache: dict[tuple[int, int], tuple] = {}

    # -- construction helpers -------------------------------------------------

    def _form(self, a, b) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))

    def _generate_positive_roots(self) -> list[tuple[int, ...]]:
        simples = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
        known = set(simples)
        level = list(simples)
        out = list(simples)
        while level:
            nxt = []
            for beta in level:
                for i, alpha in enumerate(simples):
                    # beta + alpha_i is a root iff the alpha_i-string through
                    # beta extends upward: q = p - <beta, alpha_i> >= 1
                    p = 0
                    down = tuple(beta[j] - alpha[j] for j in range(self.rank))
                    while down in known or down == tuple([0] * self.rank):
                        if down == tuple([0] * self.rank):
                            break
                        p += 1
                        down = tuple(down[j] - alpha[j] for j in range(self.rank))
                    num = 2 * self._form(beta, alpha)
                    den = self._form(alpha, alpha)
                    assert num % den == 0
                    if p - num // den >= 1:
                        up = tuple(beta[j] + alpha[j] for j in range(self.rank))
                        if up not in known:
                            known.add(up)
                            nxt.append(up)
                            out.append(up)
            level = nxt
        return out

    def _simple_index(self, i: int) -> int:
        return self.index_of[tuple(1 if j == i else 0 for j in range(self.rank))]

    def _highest(self, indices) -> Root:
        best = max(indices, key=lambda i: (sum(self.roots[i].coords), self.roots[i].coords))
        return self.roots[best]

    def _reflect_index(self, i: int, j: int) -> int:
        a = self.roots[self._simple_index(i)]
        b = self.roots[j]
        pair = self.pairing_table[j][a.index]
        new = tuple(b.coords[k] - pair * a.coords[k] for k in range(self.rank))
        return self.index_of[new]

    # -- public accessors ------------------------------------------------------

    def root(self, index: int) -> Root:
        return self.roots[index]

    def root_from_coords(self, coords) -> Root:
        idx = self.index_of.get(tuple(coords))
        if idx is None:
            raise LiesphError(f"{tuple(coords)} is not a root of {self.cartan_type.name}")
        return self.roots[idx]

    def simple_root(self, i: int) -> Root:
        """Simple root alpha_i, 1-based Bourbaki index."""
        if not 1 <= i <= self.rank:
            raise LiesphError(f"simple index {i} out of range")
        return self.roots[self._simple_index(i - 1)]

    def neg_index(self, index: int) -> int:
        m = self.num_positive
        return index - m if index >= m else index + m

    @property
    def positive_roots(self) -> list[Root]:
        return self.roots[: self.num_positive]

    def posrootset(self, roots_or_indices) -> PosRootSet:
        idx = []
        for r in roots_or_indices:
            if isinstance(r, Root):
                if r.system is not self:
                    raise MismatchedSystems("root from another system")
                idx.append(r.index)
            else:
                idx.append(int(r))
        return PosRootSet.from_indices(idx, self.num_positive)

    def roots_of(self, ps: PosRootSet) -> list[Root]:
        if ps.width != self.num_positive:
            raise MismatchedSystems("bit vector from another system")
        return [self.roots[i] for i in ps.indices()]

    def to_json_dict(self) -> dict:
        return {
            "type": self.cartan_type.name,
            "rank": self.rank,
            "swapped": self.swapped,
            "positive_roots": [list(r.coords) for r in self.positive_roots],
            "gram": [list(row) for row in self.gram],
        }

    def __repr__(self):
        tag = "'" if self.swapped else ""
        return f"RootSystem({self.cartan_type.name}{tag})"


def build_root_system(t, swap: bool = False) -> RootSystem:
    """Construct the root system for a Cartan type (object or name like "F4")."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    return RootSystem(t, swap=swap)


def _check_roots(rs: RootSystem, *roots: Root):
    for r in roots:
        if r.system is not rs:
            raise MismatchedSystems("root does not belong to this system")


def pairing(rs: RootSystem, a: Root, b: Root) -> int:
    """Cartan pairing <a, b> = 2(a,b)/(b,b)."""
    _check_roots(rs, a, b)
    return rs.pairing_table[a.index][b.index]


def root_sum(rs: RootSystem, a: Root, b: Root):
    """a + b if it is a root, else None (never the zero vector)."""
    _check_roots(rs, a, b)
    idx = rs.sum_table[a.index][b.index]
    return None if idx is None else rs.roots[idx]


def root_string_p(rs: RootSystem, a: Root, b: Root) -> int:
    """Largest k >= 0 with b - k*a still a root."""
    _check_roots(rs, a, b)
    if b.index in (a.index, rs.neg_index(a.index)):
        raise LiesphError("root string requires a != +-b")
    p = 0
    cur = tuple(b.coords[i] - a.coords[i] for i in range(rs.rank))
    while cur in rs.index_of:
        p += 1
        cur = tuple(cur[i] - a.coords[i] for i in range(rs.rank))
    return p


def plane_solver(a_coords, b_coords):
    """Return a function solving x*a + y*b = c exactly, or None if no solution.

    Requires a, b linearly independent; returns None-returning solver entries
    as (x, y) Fractions.
    """
    n = len(a_coords)
    minor = None
    for k in range(n):
        for l in range(k + 1, n):
            det = a_coords[k] * b_coords[l] - a_coords[l] * b_coords[k]
            if det:
                minor = (k, l, det)
                break
        if minor:
            break
    if minor is None:
        return None

    k, l, det = minor

    def solve(c_coords):
        x = Fraction(c_coords[k] * b_coords[l] - c_coords[l] * b_coords[k], det)
        y = Fraction(a_coords[k] * c_coords[l] - a_coords[l] * c_coords[k], det)
        for i in range(n):
            if x * a_coords[i] + y * b_coords[i] != c_coords[i]:
                return None
        return x, y

    return solve


_RANK2_TAGS = {4: "A1xA1", 6: "A2", 8: "B2", 12: "G2"}


def rank2_parabolic(rs: RootSystem, a: Root, b: Root) -> tuple[list[Root], str]:
    """All roots in span{a, b}, with the isomorphism type of that rank-2 system."""
    _check_roots(rs, a, b)
    key = (min(a.index, b.index), max(a.index, b.index))
    cached = rs._plane_cache.get(key)
    if cached is not None:
        members, tag = cached
        return [rs.roots[i] for i in members], tag
    solve = plane_solver(a.coords, b.coords)
    if solve is None:
        raise LiesphError("rank2_parabolic requires linearly independent roots")
    members = [r.index for r in rs.roots if solve(r.coords) is not None]
    tag = _RANK2_TAGS[len(members)]
    rs._plane_cache[key] = (tuple(members), tag)
    return [rs.roots[i] for i in members], tag
