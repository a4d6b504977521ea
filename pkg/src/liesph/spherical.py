"""Sphericality of subspaces spanned by root vectors, and exhaustive verifiers.

The deterministic oracle decides whether ad(x)^4 = 0 identically on the span
of {e_a : a in Psi}.  Expanding (ad x)^4 for x = sum c_a e_a groups the
monomials by the multiset of the four roots involved; the coefficient
operator of each multiset is a sum over the distinct orderings of the
multiset, evaluated with unit coefficients.  In characteristic zero the
quartic vanishes identically iff every such operator vanishes, so the
decision is exact and needs no genericity assumption.  The nonvanishing
multisets depend only on the algebra and are computed once per algebra.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .chevalley import ChevalleyAlgebra, ad_matrix, ad_root_apply, build_chevalley, height
from .errors import LiesphError, MismatchedSystems
from .linalg import mat_is_zero, mat_mul, matrix_rank
from .roots import PosRootSet, Root, RootSystem
from . import weyl as _weyl


@dataclass
class SphericalReport:
    type: str
    subject: str
    pairing_ok: bool
    spherical: bool
    witness: Optional[dict] = field(default=None)

    def to_json_dict(self) -> dict:
        return {
            "type": self.type,
            "subject": self.subject,
            "pairing_ok": self.pairing_ok,
            "spherical": self.spherical,
            "witness": self.witness,
        }


# -- deterministic quartic oracle ------------------------------------------------


def _p_multiset_vanishes(L: ChevalleyAlgebra, multiset: tuple[int, ...]) -> bool:
    """Whether the summed chain operator of one size-4 root multiset is zero.

    Chains start only from basis weights mu with mu + sum(multiset) again a
    basis weight; every other start dies for weight reasons.
    """
    rs = L.rs
    rank = rs.rank
    sigma = [0] * rank
    for idx in multiset:
        c = rs.roots[idx].coords
        for k in range(rank):
            sigma[k] += c[k]
    sigma = tuple(sigma)
    zero = tuple([0] * rank)

    starts: list[int] = []
    if sigma in rs.index_of:  # from the Cartan space into g_sigma
        starts.extend(range(L.num_roots, L.dim))
    for b in range(L.num_roots):
        mu = rs.roots[b].coords
        target = tuple(mu[k] + sigma[k] for k in range(rank))
        if target == zero or target in rs.index_of:
            starts.append(b)
    if not starts:
        return True

    orderings = sorted(set(itertools.permutations(multiset)))
    for b in starts:
        acc: dict = {}
        for seq in orderings:
            v = {b: 1}
            for g in reversed(seq):
                v = ad_root_apply(L, g, v)
                if not v:
                    break
            for key, val in v.items():
                tot = acc.get(key, 0) + val
                if tot:
                    acc[key] = tot
                else:
                    acc.pop(key, None)
        if acc:
            return False
    return True


def quartic_obstructions(L: ChevalleyAlgebra) -> list[tuple[int, tuple[int, ...]]]:
    """All size-4 positive-root multisets whose chain operator is nonzero,
    as (support mask, multiset) pairs; computed once per algebra."""
    cached = getattr(L, "_quartic_bad", None)
    if cached is not None:
        return cached
    bad = []
    npos = L.rs.num_positive
    for multiset in itertools.combinations_with_replacement(range(npos), 4):
        if not _p_multiset_vanishes(L, multiset):
            mask = 0
            for i in multiset:
                mask |= 1 << i
            bad.append((mask, multiset))
    # small supports first: witnesses are found quickly on non-spherical sets
    bad.sort(key=lambda t: (t[0].bit_count(), t[1]))
    L._quartic_bad = bad
    return bad


def spherical_witness(L: ChevalleyAlgebra, ps: PosRootSet) -> Optional[tuple[int, ...]]:
    """A nonvanishing multiset supported in ps, or None when spherical."""
    if ps.width != L.rs.num_positive:
        raise MismatchedSystems("bit vector from another system")
    inv = ps.mask
    for mask, multiset in quartic_obstructions(L):
        if mask & ~inv == 0:
            return multiset
    return None


def is_spherical_subspace(L: ChevalleyAlgebra, ps: PosRootSet) -> bool:
    """True iff ad(x)^4 = 0 for every x supported on ps."""
    return spherical_witness(L, ps) is None


def make_report(L: ChevalleyAlgebra, ps: PosRootSet, subject: str) -> SphericalReport:
    rs = L.rs
    witness = spherical_witness(L, ps)
    wit_dict = None
    if witness is not None:
        wit_dict = {"multiset": [list(rs.roots[i].coords) for i in witness]}
    return SphericalReport(
        type=rs.cartan_type.name,
        subject=subject,
        pairing_ok=_weyl.pairing_nonneg(rs, ps),
        spherical=witness is None,
        witness=wit_dict,
    )


# -- randomized cross-checks ------------------------------------------------------


def generic_height(L: ChevalleyAlgebra, ps: PosRootSet, trials: int = 5, seed: int = 0) -> int:
    """Max height over random coefficient vectors supported on ps."""
    if trials < 1:
        raise LiesphError("trials must be >= 1")
    rng = random.Random(seed)
    support = sorted(ps.indices())
    best = 0
    for _ in range(trials):
        x = {i: rng.randint(1, 1 << 20) for i in support}
        best = max(best, height(L, x))
    return best


def orbit_fingerprint(L: ChevalleyAlgebra, ps: PosRootSet, trials: int = 5, seed: int = 0):
    """(orbit dimension, height, rank sequence of ad powers) of a generic sample.

    Ranks only drop on proper closed subsets, so the componentwise max over
    trials is the generic value up to sampling failure."""
    if trials < 1:
        raise LiesphError("trials must be >= 1")
    rng = random.Random(seed)
    support = sorted(ps.indices())
    dim_orbit = 0
    best_height = 0
    ranks: list[int] = []
    for _ in range(trials):
        x = {i: rng.randint(1, 1 << 20) for i in support}
        mat = ad_matrix(L, x)
        power = mat
        seq = []
        while not mat_is_zero(power):
            seq.append(matrix_rank(power))
            power = mat_mul(mat, power)
        dim_orbit = max(dim_orbit, seq[0] if seq else 0)
        best_height = max(best_height, len(seq))
        for k, r in enumerate(seq):
            if k < len(ranks):
                ranks[k] = max(ranks[k], r)
            else:
                ranks.append(r)
    return (dim_orbit, best_height, tuple(ranks))


# -- orthogonal-pattern classification --------------------------------------------


def strongly_orthogonal(rs: RootSystem, a: Root, b: Root) -> bool:
    """Neither a+b nor a-b is a root."""
    if a.system is not rs or b.system is not rs:
        raise MismatchedSystems("root from another system")
    if b.index in (a.index, rs.neg_index(a.index)):
        raise LiesphError("strong orthogonality needs a != +-b")
    if rs.sum_table[a.index][b.index] is not None:
        return False
    diff = tuple(a.coords[k] - b.coords[k] for k in range(rs.rank))
    return diff not in rs.index_of


def _half_sum_root(rs: RootSystem, coords_list) -> bool:
    total = [0] * rs.rank
    for c in coords_list:
        for k in range(rs.rank):
            total[k] += c[k]
    if any(v % 2 for v in total):
        return False
    return tuple(v // 2 for v in total) in rs.index_of


def classify_nonspherical_orthogonal(rs: RootSystem, gamma) -> str:
    """Match an orthogonal set of positive roots against the patterns that
    force a non-spherical orbit: D4, BF4, B3 (first match wins), else none."""
    roots = list(gamma)
    for r in roots:
        if r.system is not rs:
            raise MismatchedSystems("root from another system")
    for x, a in enumerate(roots):
        for b in roots[x + 1 :]:
            if rs.pairing_table[a.index][b.index] != 0:
                raise LiesphError("classification requires pairwise orthogonal roots")
    # (D4): four distinct roots with half-sum in Phi
    for quad in itertools.combinations(roots, 4):
        if _half_sum_root(rs, [r.coords for r in quad]):
            return "D4"
    # (BF4): four distinct long roots splitting into two pairs with root half-sums
    longs = [r for r in roots if r.is_long]
    for quad in itertools.combinations(longs, 4):
        q = list(quad)
        for splits in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
            (a1, a2), (b1, b2) = splits
            if _half_sum_root(rs, [q[a1].coords, q[a2].coords]) and _half_sum_root(
                rs, [q[b1].coords, q[b2].coords]
            ):
                return "BF4"
    # (B3): two distinct long roots and a short one with (g1+g2+2*g3)/2 in Phi
    shorts = [r for r in roots if r.is_short]
    if rs.short_norm2 != rs.long_norm2:
        for g1, g2 in itertools.combinations(longs, 2):
            for g3 in shorts:
                if _half_sum_root(rs, [g1.coords, g2.coords, g3.coords, g3.coords]):
                    return "B3"
    return "none"


# -- exhaustive verifiers -----------------------------------------------------------


def verify_lemma_quadruples(rs: RootSystem) -> dict:
    """Sweep all size-4 positive-root multisets with nonnegative pairwise
    pairings, non-orthogonal support, and total sum of the shape a - b with
    a, b roots; check the structural conclusions on every witness."""
    npos = rs.num_positive
    pt = rs.pairing_table
    witnesses = []
    violations = []
    for multiset in itertools.combinations_with_replacement(range(npos), 4):
        ok = True
        for x in range(4):
            for y in range(x + 1, 4):
                if pt[multiset[x]][multiset[y]] < 0:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        distinct = sorted(set(multiset))
        non_orth = any(
            pt[a][b] != 0 for i, a in enumerate(distinct) for b in distinct[i + 1 :]
        )
        if not non_orth:
            continue
        sigma = [0] * rs.rank
        for i in multiset:
            for k in range(rs.rank):
                sigma[k] += rs.roots[i].coords[k]
        sigma = tuple(sigma)
        decomps = []
        for a in rs.roots:
            bc = tuple(a.coords[k] - sigma[k] for k in range(rs.rank))
            bi = rs.index_of.get(bc)
            if bi is not None:
                decomps.append((a.index, bi))
        if not decomps:
            continue

        entry = {
            "multiset": [list(rs.roots[i].coords) for i in multiset],
            "decompositions": len(decomps),
        }
        if rs.cartan_type.is_simply_laced or rs.cartan_type.family == "G":
            violations.append({"multiset": entry["multiset"], "reason": "not doubly laced"})
        for a_idx, b_idx in decomps:
            if b_idx != rs.neg_index(a_idx):
                violations.append({"multiset": entry["multiset"], "reason": "sum not 2*alpha"})
            elif not rs.roots[a_idx].is_long:
                violations.append({"multiset": entry["multiset"], "reason": "alpha not long"})
        longs = [i for i in distinct if rs.roots[i].is_long]
        entry["long_members"] = len(longs)
        if len(longs) > 1:
            violations.append({"multiset": entry["multiset"], "reason": "two long members"})
        elif len(longs) == 1:
            rest = [i for i in multiset if i != longs[0]]
            if any(pt[longs[0]][j] != 0 for j in rest):
                violations.append(
                    {"multiset": entry["multiset"], "reason": "long member not orthogonal to rest"}
                )
        if not longs:
            coords = [rs.roots[i].coords for i in multiset]
            pairing_ok = any(
                tuple(coords[p[0]][k] + coords[p[1]][k] for k in range(rs.rank))
                == tuple(coords[p[2]][k] + coords[p[3]][k] for k in range(rs.rank))
                for p in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))
            )
            if not pairing_ok:
                violations.append(
                    {"multiset": entry["multiset"], "reason": "short quadruple has no equal-sum split"}
                )
        witnesses.append(entry)

    report = {
        "type": rs.cartan_type.name,
        "multisets_scanned": _count_multisets(npos),
        "witnesses": len(witnesses),
        "with_long_member": sum(1 for w in witnesses if w["long_members"] == 1),
        "all_short": sum(1 for w in witnesses if w["long_members"] == 0),
        "violations": violations,
    }
    if rs.cartan_type.name == "F4":
        target = [[1, 0, 0, 0], [1, 2, 2, 1], [1, 2, 3, 1], [1, 2, 3, 2]]
        report["f4_long_example_found"] = any(
            sorted(w["multiset"]) == sorted(target) for w in witnesses
        )
    return report


def _count_multisets(n: int) -> int:
    return n * (n + 1) * (n + 2) * (n + 3) // 24


def verify_subspace_theorem(rs: RootSystem, L: ChevalleyAlgebra | None = None,
                            budget: int | None = None) -> dict:
    """Sphericality of a_Psi iff all pairings >= 0, over every biconvex set
    and every combinatorial ideal (outside G2, where the biconditionals are
    commutativity-based instead)."""
    from . import ideals as _ideals

    L = L or build_chevalley(rs)
    is_g2 = rs.cartan_type.name == "G2"
    mismatches = []
    n_biconvex = 0
    for w in _weyl.enumerate_weyl(rs, budget):
        n_biconvex += 1
        sph = is_spherical_subspace(L, w.inv)
        ref = _weyl.is_commutative_inv(w) if is_g2 else _weyl.pairing_nonneg(rs, w.inv)
        if sph != ref:
            mismatches.append({"subject": "biconvex", "word": list(w.word)})
    ideal_list = _ideals.enumerate_ideals(rs)
    for ideal in ideal_list:
        sph = is_spherical_subspace(L, ideal.members)
        ref = _ideals.is_abelian(rs, ideal.members) if is_g2 else _weyl.pairing_nonneg(rs, ideal.members)
        if sph != ref:
            mismatches.append(
                {"subject": "ideal", "members": [list(rs.roots[i].coords) for i in ideal.members]}
            )
    return {
        "type": rs.cartan_type.name,
        "criterion": "commutative/abelian" if is_g2 else "pairing_nonneg",
        "biconvex_subjects": n_biconvex,
        "ideal_subjects": len(ideal_list),
        "mismatches": mismatches,
    }


# fork-inherited state for worker processes; set right before the pool starts
_WORKER_CTX: dict = {}


def _t1_check_words(words: list[tuple[int, ...]]):
    rs = _WORKER_CTX["rs"]
    L = _WORKER_CTX["L"]
    is_g2 = rs.cartan_type.name == "G2"
    simply = rs.cartan_type.is_simply_laced
    n_dec = n_sph = 0
    mismatches = []
    for word in words:
        w = _weyl.from_word(rs, word)
        sph = is_spherical_subspace(L, w.inv)
        dec = _weyl.is_commutative_inv(w) if is_g2 else _weyl.is_fc_inv_base_pair(w)
        n_dec += dec
        n_sph += sph
        if simply and _weyl.is_commutative_inv(w) != dec:
            mismatches.append({"word": list(word), "reason": "fc != commutative in simply laced type"})
        if dec != sph:
            mismatches.append(
                {
                    "word": list(word),
                    "decider": "commutative" if is_g2 else "fully_commutative",
                    "decider_value": dec,
                    "spherical": sph,
                }
            )
    return n_dec, n_sph, mismatches


def _parallel_chunks(fn, chunks, workers: int):
    """Run a module-level worker over chunks, forking when workers > 1.

    Falls back to serial execution if a pool cannot be created; results come
    back in submission order either way."""
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    try:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        with ctx.Pool(workers) as pool:
            return pool.map(fn, chunks)
    except Exception:
        return [fn(c) for c in chunks]


def _split(items, workers: int):
    n = max(1, min(len(items), workers * 4))
    size = (len(items) + n - 1) // n
    return [items[i : i + size] for i in range(0, len(items), size)]


def verify_theorem1(rs: RootSystem, L: ChevalleyAlgebra | None = None,
                    budget: int | None = None, workers: int = 1) -> dict:
    """Spherical a_w iff w fully commutative (commutative in G2), per element.

    In simply laced types the commutative decider must agree with the fully
    commutative one; disagreements are reported as mismatches too."""
    L = L or build_chevalley(rs)
    quartic_obstructions(L)  # materialize before any worker split
    words = [w.word for w in _weyl.enumerate_weyl(rs, budget)]
    _WORKER_CTX["rs"] = rs
    _WORKER_CTX["L"] = L
    results = _parallel_chunks(_t1_check_words, _split(words, workers), workers)
    mismatches = []
    n_dec = n_sph = 0
    for dec, sph, out in results:
        n_dec += dec
        n_sph += sph
        mismatches.extend(out)
    return {
        "type": rs.cartan_type.name,
        "decider": "commutative" if rs.cartan_type.name == "G2" else "fully_commutative",
        "elements": len(words),
        "decider_count": n_dec,
        "spherical_count": n_sph,
        "mismatches": mismatches,
    }
