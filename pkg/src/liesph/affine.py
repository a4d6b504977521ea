"""Real affine roots, affine Weyl group words, and finite biconvex sets.

An affine root is a pair (finite root, delta level); only real roots are
representable.  Group elements are reduced words over {0, 1, .., rank} with
canonical equality through the images of the affine simple roots.
"""

from __future__ import annotations

from .errors import LiesphError, MismatchedSystems
from .roots import RootSystem, plane_solver


class AffineRoot:
    """finite + level * delta; positive iff level > 0, or level = 0 and finite > 0."""

    __slots__ = ("system", "findex", "level")

    def __init__(self, system: RootSystem, findex: int, level: int):
        self.system = system
        self.findex = findex
        self.level = level

    @property
    def is_positive(self) -> bool:
        return self.level > 0 or (self.level == 0 and self.findex < self.system.num_positive)

    @property
    def finite(self):
        return self.system.roots[self.findex]

    def key(self) -> tuple[int, int]:
        return (self.level, self.findex)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(self.system, self.system.neg_index(self.findex), -self.level)

    def __eq__(self, other):
        return (
            isinstance(other, AffineRoot)
            and other.system is self.system
            and other.findex == self.findex
            and other.level == self.level
        )

    def __hash__(self):
        return hash((self.findex, self.level))

    def __repr__(self):
        return f"AffineRoot({self.finite.coords} + {self.level}d)"


def affine_simple_root(rs: RootSystem, i: int) -> AffineRoot:
    """alpha_0 = delta - theta for i = 0, else the finite simple root."""
    if i == 0:
        return AffineRoot(rs, rs.neg_index(rs.theta.index), 1)
    return AffineRoot(rs, rs.simple_root(i).index, 0)


def affine_apply_simple(rs: RootSystem, i: int, r: AffineRoot) -> AffineRoot:
    if r.system is not rs:
        raise MismatchedSystems("affine root from another system")
    if not 0 <= i <= rs.rank:
        raise LiesphError(f"affine simple index {i} out of range")
    if i > 0:
        return AffineRoot(rs, rs.simple_perms[i - 1][r.findex], r.level)
    # s_0(a + n*delta) = (a - <a,theta>theta) + (n + <a,theta>)*delta
    pair = rs.pairing_table[r.findex][rs.theta.index]
    coords = tuple(
        rs.roots[r.findex].coords[k] - pair * rs.theta.coords[k] for k in range(rs.rank)
    )
    return AffineRoot(rs, rs.index_of[coords], r.level + pair)


def affine_pairing(a: AffineRoot, b: AffineRoot) -> int:
    """Pairing of real affine roots; delta lies in the kernel of the form."""
    if a.system is not b.system:
        raise MismatchedSystems("affine roots from different systems")
    return a.system.pairing_table[a.findex][b.findex]


def affine_sum(rs: RootSystem, a: AffineRoot, b: AffineRoot):
    """a + b when it is a real affine root, else None."""
    s = rs.sum_table[a.findex][b.findex]
    if s is None:
        return None
    return AffineRoot(rs, s, a.level + b.level)


class AffineRootSet:
    """Finite set of positive real affine roots, ordered by (level, root index)."""

    __slots__ = ("system", "keys")

    def __init__(self, system: RootSystem, roots):
        keys = set()
        for r in roots:
            if isinstance(r, AffineRoot):
                if r.system is not system:
                    raise MismatchedSystems("affine root from another system")
                key = r.key()
            else:
                key = (int(r[0]), int(r[1]))
            level, findex = key
            if not (level > 0 or (level == 0 and findex < system.num_positive)):
                raise LiesphError("affine root set members must be positive")
            keys.add(key)
        self.system = system
        self.keys = frozenset(keys)

    def roots(self) -> list[AffineRoot]:
        return [AffineRoot(self.system, f, l) for l, f in sorted(self.keys)]

    def __contains__(self, r) -> bool:
        key = r.key() if isinstance(r, AffineRoot) else (int(r[0]), int(r[1]))
        return key in self.keys

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self):
        return iter(self.roots())

    def __eq__(self, other):
        return (
            isinstance(other, AffineRootSet)
            and other.system is self.system
            and other.keys == self.keys
        )

    def __hash__(self):
        return hash(self.keys)

    def to_json_list(self) -> list[dict]:
        rs = self.system
        return [
            {"level": l, "coords": list(rs.roots[f].coords)} for l, f in sorted(self.keys)
        ]

    def __repr__(self):
        return f"AffineRootSet({[(l, self.system.roots[f].coords) for l, f in sorted(self.keys)]})"


def _act_letter(rs: RootSystem, i: int, keys: set[tuple[int, int]]) -> set:
    out = set()
    for l, f in keys:
        img = affine_apply_simple(rs, i, AffineRoot(rs, f, l))
        out.add(img.key())
    return out


class AffineWeylWord:
    """Affine Weyl group element as a reduced word over {0..rank}.

    Equality goes through the images of all affine simple roots, which
    determine the action on the whole affine root system."""

    __slots__ = ("system", "word", "canonical", "inv_keys")

    def __init__(self, system: RootSystem, word):
        word = tuple(int(i) for i in word)
        for i in word:
            if not 0 <= i <= system.rank:
                raise LiesphError(f"affine simple index {i} out of range")
        inv = _inversion_keys(system, word)
        if len(inv) != len(word):
            word = _peel_word(system, inv)
        self.system = system
        self.word = word
        self.inv_keys = frozenset(inv)
        self.canonical = tuple(
            self.apply(affine_simple_root(system, i)).key() for i in range(system.rank + 1)
        )

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, r: AffineRoot) -> AffineRoot:
        for i in reversed(self.word):
            r = affine_apply_simple(self.system, i, r)
        return r

    def is_identity(self) -> bool:
        return not self.word

    def __eq__(self, other):
        return (
            isinstance(other, AffineWeylWord)
            and other.system is self.system
            and other.canonical == self.canonical
        )

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"AffineWeylWord({list(self.word)})"


def _inversion_keys(rs: RootSystem, word) -> set[tuple[int, int]]:
    """Inversion set of an arbitrary word, built letter by letter."""
    keys: set[tuple[int, int]] = set()
    for i in word:
        alpha = affine_simple_root(rs, i).key()
        if alpha in keys:
            keys = _act_letter(rs, i, keys - {alpha})
        else:
            keys = _act_letter(rs, i, keys) | {alpha}
    return keys


def _peel_word(rs: RootSystem, keys) -> tuple[int, ...]:
    keys = set(keys)
    rev = []
    while keys:
        for i in range(rs.rank + 1):
            if affine_simple_root(rs, i).key() in keys:
                break
        else:
            raise LiesphError("finite biconvex set without an affine simple root")
        rev.append(i)
        keys = _act_letter(rs, i, keys - {affine_simple_root(rs, i).key()})
    return tuple(reversed(rev))


def affine_from_word(rs: RootSystem, word) -> AffineWeylWord:
    return AffineWeylWord(rs, word)


def affine_inversions(w: AffineWeylWord) -> AffineRootSet:
    return AffineRootSet(w.system, [(l, f) for l, f in w.inv_keys])


def is_biconvex_affine(S: AffineRootSet) -> bool:
    """Closure of S and of its complement under real-root addition."""
    rs = S.system
    keys = S.keys
    pairs = sorted(keys)
    for x, (la, fa) in enumerate(pairs):
        for lb, fb in pairs[x:]:
            s = rs.sum_table[fa][fb]
            if s is not None and (la + lb, s) not in keys:
                return False
    # a sum landing inside S with both summands positive and outside S
    # violates closure of the complement
    for lg, fg in pairs:
        gcoords = rs.roots[fg].coords
        for f in range(len(rs.roots)):
            rest = tuple(gcoords[k] - rs.roots[f].coords[k] for k in range(rs.rank))
            g2 = rs.index_of.get(rest)
            if g2 is None:
                continue
            for m in range(lg + 1):
                n = lg - m
                if m == 0 and f >= rs.num_positive:
                    continue
                if n == 0 and g2 >= rs.num_positive:
                    continue
                if (m, f) not in keys and (n, g2) not in keys:
                    return False
    return True


def element_from_biconvex_affine(S: AffineRootSet) -> AffineWeylWord:
    """The element whose inversion set is S; rejects non-biconvex input."""
    if not is_biconvex_affine(S):
        raise LiesphError("input set is not biconvex in the affine positive system")
    word = _peel_word(S.system, set(S.keys))
    w = AffineWeylWord(S.system, word)
    if affine_inversions(w) != S:
        raise LiesphError("peeling failed to reproduce the input set")
    return w


def is_commutative_affine(S: AffineRootSet) -> bool:
    """No two (not necessarily distinct) members sum to a real root."""
    rs = S.system
    pairs = sorted(S.keys)
    for x, (_, fa) in enumerate(pairs):
        for _, fb in pairs[x:]:
            if rs.sum_table[fa][fb] is not None:
                return False
    return True


def _affine_plane_data(rs: RootSystem, u: tuple[int, int], v: tuple[int, int]):
    """Parabolic of the plane spanned by two positive affine roots with
    independent finite parts: (irreducible, positive systems entirely made of
    positive affine roots, base-pair set)."""
    cache = getattr(rs, "_affine_plane_cache", None)
    if cache is None:
        cache = rs._affine_plane_cache = {}
    key = (u, v) if u <= v else (v, u)
    hit = cache.get(key)
    if hit is not None:
        return hit

    (lu, fu), (lv, fv) = key
    solve = plane_solver(rs.roots[fu].coords, rs.roots[fv].coords)
    members = []
    for f in range(len(rs.roots)):
        sol = solve(rs.roots[f].coords)
        if sol is None:
            continue
        level = sol[0] * lu + sol[1] * lv
        if level.denominator == 1:
            members.append((int(level), f))
    neg = rs.neg_index
    irreducible = any(
        rs.pairing_table[fa][fb] != 0
        for xi, (la, fa) in enumerate(members)
        for lb, fb in members[xi + 1 :]
        if not (fb == neg(fa) and lb == -la)
    )
    half = len(members) // 2
    psys = set()
    base_pairs = set()
    for xi, a in enumerate(members):
        for b in members[xi + 1 :]:
            if b[1] == neg(a[1]) and b[0] == -a[0]:
                continue
            bs = plane_solver(rs.roots[a[1]].coords, rs.roots[b[1]].coords)
            pos = []
            ok = True
            for m in members:
                sm = bs(rs.roots[m[1]].coords)
                if sm is None or sm[0] * a[0] + sm[1] * b[0] != m[0]:
                    ok = False
                    break
                if sm[0] >= 0 and sm[1] >= 0:
                    pos.append(m)
                elif not (sm[0] <= 0 and sm[1] <= 0):
                    ok = False
                    break
            if not ok or len(pos) != half:
                continue
            base_pairs.add(frozenset((a, b)))
            if all(l > 0 or (l == 0 and f < rs.num_positive) for l, f in pos):
                psys.add(frozenset(pos))
    data = (irreducible, tuple(sorted(psys, key=sorted)), base_pairs)
    cache[key] = data
    return data


def is_fc_affine(S: AffineRootSet) -> bool:
    """No irreducible rank-2 parabolic positive subsystem inside S.

    Planes through two members with proportional finite parts contain the
    imaginary direction; their parabolics have only infinite positive
    systems, which can never lie inside the finite set S, so they are
    skipped."""
    rs = S.system
    neg = rs.neg_index
    pairs = sorted(S.keys)
    for x, (la, fa) in enumerate(pairs):
        for lb, fb in pairs[x + 1 :]:
            if fb in (fa, neg(fa)):
                continue
            irreducible, psys, _ = _affine_plane_data(rs, (la, fa), (lb, fb))
            if not irreducible:
                continue
            for p in psys:
                if all(m in S.keys for m in p):
                    return False
    return True
