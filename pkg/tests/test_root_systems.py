import json
import os

import pytest

from conftest import GOLDEN_DIR, get_rs
from liesph.errors import LiesphError, MismatchedSystems
from liesph.roots import (
    CartanType,
    PosRootSet,
    build_root_system,
    pairing,
    rank2_parabolic,
    root_string_p,
    root_sum,
)

ALL_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"]


def test_rank_constraints():
    for bad in [("A", 0), ("B", 1), ("C", 1), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3)]:
        with pytest.raises(LiesphError):
            CartanType(*bad)
    assert CartanType.parse("E6").name == "E6"
    with pytest.raises(LiesphError):
        CartanType.parse("H3")
    with pytest.raises(LiesphError):
        CartanType.parse("Bx")


def test_positive_root_counts():
    # classical counts: n(n+1)/2, n^2, n(n-1), exceptional constants
    for name in ALL_TYPES + ["E6"]:
        rs = get_rs(name)
        assert rs.num_positive == rs.cartan_type.num_positive_roots()
    assert get_rs("G2").num_positive == 6
    assert get_rs("F4").num_positive == 24
    assert get_rs("B4").num_positive == 16
    assert get_rs("A4").num_positive == 10


def test_g2_positive_roots_and_lengths():
    g2 = get_rs("G2")
    assert [r.coords for r in g2.positive_roots] == [
        (1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2),
    ]
    # alpha1 short, alpha2 long
    assert g2.simple_root(1).norm2 == 2 and g2.simple_root(2).norm2 == 6
    assert g2.theta.coords == (3, 2) and g2.theta_s.coords == (2, 1)


def test_a1_trivial():
    a1 = get_rs("A1")
    assert [r.coords for r in a1.positive_roots] == [(1,)]
    assert a1.theta == a1.theta_s == a1.simple_root(1)


def test_f4_theta_lengths():
    f4 = get_rs("F4")
    assert f4.theta.is_long and f4.theta_s.is_short
    assert f4.theta.coords == (2, 3, 4, 2)


def test_roots_never_mixed_sign():
    for name in ALL_TYPES:
        for r in get_rs(name).roots:
            assert all(c >= 0 for c in r.coords) or all(c <= 0 for c in r.coords)


def test_pairing_examples():
    g2 = get_rs("G2")
    a1, a2 = g2.simple_root(1), g2.simple_root(2)
    for r in g2.roots:
        assert pairing(g2, r, r) == 2
    assert pairing(g2, a2, a1) == -3
    assert pairing(g2, a1, a2) == -1
    assert pairing(g2, g2.theta_s, g2.theta) == 1


def test_pairing_products_bounded():
    for name in ALL_TYPES:
        rs = get_rs(name)
        for a in rs.roots:
            for b in rs.roots:
                if b.index in (a.index, rs.neg_index(a.index)):
                    continue
                assert abs(pairing(rs, a, b) * pairing(rs, b, a)) in (0, 1, 2, 3)


def test_pairing_mismatched_systems():
    g2a, g2b = get_rs("G2"), build_root_system("G2")
    with pytest.raises(MismatchedSystems):
        pairing(g2a, g2a.simple_root(1), g2b.simple_root(1))


def test_root_sum_examples():
    g2 = get_rs("G2")
    a1, a2 = g2.simple_root(1), g2.simple_root(2)
    assert root_sum(g2, a1, a2).coords == (1, 1)
    assert root_sum(g2, a1, a1) is None
    assert root_sum(g2, g2.root_from_coords((3, 1)), a2) == g2.theta
    # a + (-a) is never reported as a root
    assert root_sum(g2, a1, -a1) is None


def test_negative_pairing_forces_root_sum():
    for name in ALL_TYPES:
        rs = get_rs(name)
        for a in rs.positive_roots:
            for b in rs.positive_roots:
                if a.index != b.index and pairing(rs, a, b) < 0:
                    assert root_sum(rs, a, b) is not None


def test_root_sum_pairing_consistency():
    # a + b a root forces <a,b> <= 1 unless the lengths differ
    for name in ALL_TYPES:
        rs = get_rs(name)
        for a in rs.roots:
            for b in rs.roots:
                if root_sum(rs, a, b) is not None:
                    assert pairing(rs, a, b) <= 1 or a.norm2 != b.norm2


def test_root_strings():
    g2 = get_rs("G2")
    a1, a2 = g2.simple_root(1), g2.simple_root(2)
    assert root_string_p(g2, a1, a2) == 0
    assert root_string_p(g2, a1, g2.root_from_coords((2, 1))) == 2
    b2 = get_rs("B2")
    assert root_string_p(b2, b2.simple_root(2), b2.root_from_coords((1, 1))) == 1
    with pytest.raises(LiesphError):
        root_string_p(g2, a1, a1)
    with pytest.raises(LiesphError):
        root_string_p(g2, a1, -a1)


def test_root_string_intervals():
    # {k : b + k*a is a root} is an unbroken interval of length <= 4 (<= 3 outside G2)
    for name in ["A3", "B3", "C3", "F4", "G2"]:
        rs = get_rs(name)
        cap = 4 if name == "G2" else 3
        for a in rs.positive_roots:
            for b in rs.roots:
                if b.index in (a.index, rs.neg_index(a.index)):
                    continue
                ks = [
                    k
                    for k in range(-4, 5)
                    if tuple(b.coords[i] + k * a.coords[i] for i in range(rs.rank))
                    in rs.index_of
                ]
                assert ks == list(range(min(ks), max(ks) + 1))
                assert len(ks) <= cap


def test_theta_properties():
    for name in ALL_TYPES:
        rs = get_rs(name)
        for i in range(1, rs.rank + 1):
            assert root_sum(rs, rs.theta, rs.simple_root(i)) is None
        # theta_s is the highest short root
        shorts = [r for r in rs.positive_roots if r.norm2 == rs.short_norm2]
        assert rs.theta_s == max(shorts, key=lambda r: (r.height, r.coords))


def test_rank2_parabolic():
    g2 = get_rs("G2")
    members, tag = rank2_parabolic(g2, g2.simple_root(1), g2.simple_root(2))
    assert tag == "G2" and len(members) == 12
    b3 = get_rs("B3")
    members, tag = rank2_parabolic(b3, b3.simple_root(1), b3.simple_root(2))
    assert tag == "A2" and len(members) == 6
    # eps1 = a1+a2+a3, eps2 = a2+a3 in the Bourbaki B3 model
    e1 = b3.root_from_coords((1, 1, 1))
    e2 = b3.root_from_coords((0, 1, 1))
    members, tag = rank2_parabolic(b3, e1, e2)
    assert tag == "B2" and len(members) == 8
    # eps1 - eps2 and eps3 span an A1 x A1 plane (no other roots inside);
    # note span{eps1+eps2, eps1-eps2} would contain eps1, eps2 and be B2
    members, tag = rank2_parabolic(b3, b3.simple_root(1), b3.simple_root(3))
    assert tag == "A1xA1" and len(members) == 4
    members, tag = rank2_parabolic(b3, b3.root_from_coords((1, 2, 2)), b3.simple_root(1))
    assert tag == "B2" and len(members) == 8
    with pytest.raises(LiesphError):
        rank2_parabolic(g2, g2.theta, -g2.theta)


def test_swap_flag():
    b2s = get_rs("B2", swap=True)
    assert b2s.simple_root(1).norm2 == 2 and b2s.simple_root(2).norm2 == 4
    g2s = get_rs("G2", swap=True)
    assert g2s.simple_root(1).norm2 == 6 and g2s.simple_root(2).norm2 == 2
    assert g2s.num_positive == 6
    with pytest.raises(LiesphError):
        build_root_system("B3", swap=True)


def test_posrootset_basics():
    g2 = get_rs("G2")
    ps = g2.posrootset([g2.simple_root(1), g2.theta])
    assert len(ps) == 2 and g2.theta.index in ps
    assert ps.union(ps.complement()).mask == (1 << 6) - 1
    assert ps.issubset(PosRootSet((1 << 6) - 1, 6))
    with pytest.raises(LiesphError):
        PosRootSet(1 << 6, 6)
    with pytest.raises(MismatchedSystems):
        ps.union(PosRootSet(1, 4))


def test_serialization_goldens():
    for name in ["A2", "B2", "G2", "B3"]:
        with open(os.path.join(GOLDEN_DIR, f"rootsystem_{name}.json")) as fh:
            frozen = json.load(fh)
        assert get_rs(name).to_json_dict() == frozen
