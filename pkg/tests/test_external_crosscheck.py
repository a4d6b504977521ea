"""Cross-checks of the root-system layer against sympy's Lie algebra tables
(an independent implementation); skipped when sympy is unavailable."""

import pytest

sympy = pytest.importorskip("sympy")

from sympy.liealgebras.cartan_type import CartanType as SymCT  # noqa: E402

from conftest import get_rs  # noqa: E402

# sympy's type-A cartan_matrix is broken at rank 1 (writes m[0,1]
# unconditionally), so the matrix comparison starts at rank 2
TYPES = ["A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "E6"]


def test_cartan_matrices_match():
    for name in TYPES:
        rs = get_rs(name)
        theirs = SymCT(name).cartan_matrix().tolist()
        ours = [
            [
                rs.pairing_table[rs.simple_root(i).index][rs.simple_root(j).index]
                for j in range(1, rs.rank + 1)
            ]
            for i in range(1, rs.rank + 1)
        ]
        assert ours == theirs, name


def test_root_counts_match():
    for name in TYPES:
        rs = get_rs(name)
        assert 2 * rs.num_positive == SymCT(name).roots(), name
