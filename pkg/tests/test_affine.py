import pytest

from conftest import get_rs
from liesph import affine as A
from liesph import weyl as W
from liesph.errors import LiesphError


def test_affine_simple_roots():
    g2 = get_rs("G2")
    a0 = A.affine_simple_root(g2, 0)
    assert a0.finite == -g2.theta and a0.level == 1 and a0.is_positive
    assert A.affine_simple_root(g2, 1).finite == g2.simple_root(1)


def test_s0_reflection():
    g2 = get_rs("G2")
    a0 = A.affine_simple_root(g2, 0)
    assert A.affine_apply_simple(g2, 0, a0) == -a0
    # s_0(theta) = -theta + 2*delta
    th = A.AffineRoot(g2, g2.theta.index, 0)
    img = A.affine_apply_simple(g2, 0, th)
    assert img.finite == -g2.theta and img.level == 2
    # alpha1 is orthogonal to theta in G2, hence fixed by s_0
    a1 = A.AffineRoot(g2, g2.simple_root(1).index, 0)
    assert A.affine_apply_simple(g2, 0, a1) == a1


def test_affine_reflections_are_involutions():
    b2 = get_rs("B2")
    sample = [A.AffineRoot(b2, f, l) for f in range(len(b2.roots)) for l in (0, 1, 2)]
    for i in range(3):
        for r in sample:
            assert A.affine_apply_simple(b2, i, A.affine_apply_simple(b2, i, r)) == r


def test_affine_pairing():
    g2 = get_rs("G2")
    a0 = A.affine_simple_root(g2, 0)
    assert A.affine_pairing(a0, a0) == 2
    # <m*delta - a, n*delta - b> = <a, b>
    for m, n in [(1, 1), (2, 3), (5, 1)]:
        for a in g2.positive_roots:
            for b in g2.positive_roots:
                ma = A.AffineRoot(g2, g2.neg_index(a.index), m)
                nb = A.AffineRoot(g2, g2.neg_index(b.index), n)
                assert A.affine_pairing(ma, nb) == g2.pairing_table[a.index][b.index]
    # <delta - theta, alpha1> = 0 in G2
    a1 = A.AffineRoot(g2, g2.simple_root(1).index, 0)
    assert A.affine_pairing(a0, a1) == 0


def test_affine_pairing_invariance():
    g2 = get_rs("G2")
    sample = [A.AffineRoot(g2, f, l) for f in range(6) for l in (0, 1)]
    for i in range(3):
        for x in sample:
            for y in sample:
                assert A.affine_pairing(
                    A.affine_apply_simple(g2, i, x), A.affine_apply_simple(g2, i, y)
                ) == A.affine_pairing(x, y)


def test_word_canonical_equality():
    g2 = get_rs("G2")
    assert A.affine_from_word(g2, [0, 0]).is_identity()
    assert A.affine_from_word(g2, [0, 1, 1, 0]).is_identity()
    assert A.affine_from_word(g2, [1, 1, 2]).word == (2,)
    w = A.affine_from_word(g2, [0, 1, 2])
    assert w == A.affine_from_word(g2, [0, 1, 2]) and w.length == 3
    # alpha1 is orthogonal to theta, so s_0 and s_1 commute in affine G2
    assert A.affine_from_word(g2, [0, 1]) == A.affine_from_word(g2, [1, 0])
    assert A.affine_from_word(g2, [0, 2]) != A.affine_from_word(g2, [2, 0])


def test_finite_embedding():
    # finite elements inside the affine group keep their inversion sets at level 0
    for name in ["A2", "B2", "G2"]:
        rs = get_rs(name)
        for e in W.enumerate_weyl(rs):
            aw = A.affine_from_word(rs, e.word)
            assert aw.length == e.length
            assert {(l, f) for l, f in aw.inv_keys} == {(0, i) for i in e.inv}


def test_inversion_round_trip():
    g2 = get_rs("G2")
    words = [[0], [1], [0, 1], [1, 0, 2], [0, 1, 2, 0], [2, 0, 1, 2, 0], [0, 1, 0, 2, 1, 0]]
    for word in words:
        w = A.affine_from_word(g2, word)
        S = A.affine_inversions(w)
        assert len(S) == w.length
        assert A.is_biconvex_affine(S)
        assert A.element_from_biconvex_affine(S) == w


def test_inversion_round_trip_random_words():
    import random

    rng = random.Random(12)
    for name in ["B2", "B3", "G2"]:
        rs = get_rs(name)
        for _ in range(15):
            word = [rng.randrange(rs.rank + 1) for _ in range(rng.randint(1, 9))]
            w = A.affine_from_word(rs, word)
            S = A.affine_inversions(w)
            assert A.is_biconvex_affine(S)
            assert A.element_from_biconvex_affine(S) == w
            # applying the word to the inversion set lands in the negatives
            for r in S:
                assert not w.apply(r).is_positive


def test_biconvex_rejects_bad_sets():
    g2 = get_rs("G2")
    # {delta - alpha1} alone: complement-closure fails since
    # (delta - theta) + (2a1+a2 at level 0) = delta - alpha1 - ... is a sum
    # of two positive roots outside the set; concretely {2d - theta} fails
    S = A.AffineRootSet(g2, [(2, g2.neg_index(g2.theta.index))])
    assert not A.is_biconvex_affine(S)
    with pytest.raises(LiesphError):
        A.element_from_biconvex_affine(S)
    with pytest.raises(LiesphError):
        A.AffineRootSet(g2, [(0, g2.neg_index(g2.theta.index))])  # negative member


def test_empty_and_singleton():
    g2 = get_rs("G2")
    assert A.element_from_biconvex_affine(A.AffineRootSet(g2, [])).is_identity()
    a0 = A.affine_simple_root(g2, 0)
    s0 = A.element_from_biconvex_affine(A.AffineRootSet(g2, [a0]))
    assert s0.word == (0,)
    assert A.affine_inversions(s0) == A.AffineRootSet(g2, [a0])
    S = A.AffineRootSet(g2, [a0])
    assert A.is_commutative_affine(S) and A.is_fc_affine(S)


def test_g2_maximal_abelian_encoding():
    g2 = get_rs("G2")
    neg = g2.neg_index
    S = A.AffineRootSet(
        g2,
        [
            (1, neg(g2.root_from_coords((2, 1)).index)),
            (1, neg(g2.root_from_coords((3, 1)).index)),
            (1, neg(g2.root_from_coords((3, 2)).index)),
        ],
    )
    assert A.is_biconvex_affine(S)
    w = A.element_from_biconvex_affine(S)
    assert w.length == 3
    assert A.affine_inversions(w) == S
    assert A.is_commutative_affine(S)


def test_b2_full_ideal_not_fc():
    b2 = get_rs("B2")
    neg = b2.neg_index
    keys = [(1, neg(r.index)) for r in b2.positive_roots]
    keys += [
        (2, neg(b2.root_from_coords((1, 1)).index)),
        (2, neg(b2.root_from_coords((1, 2)).index)),
        (3, neg(b2.root_from_coords((1, 2)).index)),
    ]
    S = A.AffineRootSet(b2, keys)
    assert A.is_biconvex_affine(S)
    assert not A.is_fc_affine(S)
    assert not A.is_commutative_affine(S)


def test_a1_affine_all_fc():
    # the rank-1 affine group is infinite dihedral: every element is fully
    # commutative (planes through two inversions always hold the imaginary
    # direction), and the sum criterion also makes every element commutative,
    # since +-alpha +- alpha is never a root
    a1 = get_rs("A1")
    for word in [[0], [1], [0, 1], [1, 0], [0, 1, 0], [1, 0, 1], [0, 1, 0, 1, 0]]:
        w = A.affine_from_word(a1, word)
        S = A.affine_inversions(w)
        assert w.length == len(word)
        assert A.is_fc_affine(S)
        assert A.is_commutative_affine(S)


def test_every_nonempty_biconvex_contains_affine_simple():
    g2 = get_rs("G2")
    for word in [[0], [0, 1], [1, 0, 2], [0, 1, 2, 0, 1]]:
        keys = set(A.affine_from_word(g2, word).inv_keys)
        while keys:
            found = None
            for i in range(3):
                if A.affine_simple_root(g2, i).key() in keys:
                    found = i
                    break
            assert found is not None
            keys = A._act_letter(g2, found, keys - {A.affine_simple_root(g2, found).key()})
