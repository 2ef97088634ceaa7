import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgft import (
    DEFAULT_AXES,
    FiniteAbelianGroup,
    I,
    Quaternion,
    character_table,
    character_value,
)
from qgft.quat import qabs

coords3 = st.tuples(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))


@given(coords3, coords3, coords3)
def test_group_law_properties(a, b, c):
    g = FiniteAbelianGroup((2, 3, 5))
    x, y, z = g.element(a), g.element(b), g.element(c)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x + g.zero() == x
    assert x + (-x) == g.zero()
    assert 0 <= x.index < g.order and g.element_at(x.index) == x


def test_constructor_validation():
    with pytest.raises(ValueError):
        FiniteAbelianGroup(())
    with pytest.raises(ValueError):
        FiniteAbelianGroup((0,))
    assert FiniteAbelianGroup(6).moduli == (6,)
    assert FiniteAbelianGroup((3, 4)).order == 12


def test_group_law(z4):
    a = z4.element(3)
    b = z4.element(2)
    assert (a + b).coords == (1,)
    assert (-z4.zero()) == z4.zero()
    g = FiniteAbelianGroup((3, 5))
    assert (-g.element((1, 2))).coords == (2, 3)
    assert (g.element((1, 2)) - g.element((2, 4))).coords == (2, 3)


def test_cross_group_raises(z4, z8):
    with pytest.raises(ValueError, match="different groups"):
        z4.element(1) + z8.element(1)
    with pytest.raises(ValueError):
        z8.index_of(z4.element(1))


def test_enumeration_order():
    g = FiniteAbelianGroup((2, 2))
    assert [el.coords for el in g.elements()] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(FiniteAbelianGroup((3, 5)).elements()) == 15
    for i, el in enumerate(g.elements()):
        assert el.index == i
        assert g.element_at(i) == el
    with pytest.raises(IndexError):
        g.element_at(4)


def test_negation_is_an_index_involution(z8, z3x4):
    for g in (z8, z3x4):
        p = g.neg_perm
        assert sorted(p) == list(range(g.order))
        assert np.array_equal(p[p], np.arange(g.order))
        for el in g.elements():
            assert p[el.index] == (-el).index


def test_haar_weights():
    z2 = FiniteAbelianGroup((2,))
    assert z2.primal_weight == 1.0
    assert z2.dual_weight == 0.25
    assert FiniteAbelianGroup((8,)).dual_weight == 1.0 / 64.0
    for mods in [(8,), (15,), (3, 4), (7,)]:
        g = FiniteAbelianGroup(mods)
        # total dual mass is 1 up to one rounding of 1/|G|^2
        assert abs(g.dual_weight * g.order**2 - 1.0) <= np.finfo(float).eps
        assert g.primal_weight * g.order**2 == float(g.order**2)


def test_character_basic_values(z4):
    zero = z4.zero()
    for x in z4.elements():
        assert character_value(zero, x, I) == Quaternion(1.0)
    # frequency 1 at point 1 on Z_4: angle pi/2
    val = character_value(z4.element(1), z4.element(1), I)
    assert np.allclose(val.to_array(), I.to_array(), atol=1e-15)


def test_character_rejects_bad_axis(z4):
    with pytest.raises(ValueError, match="axis"):
        character_value(z4.zero(), z4.zero(), Quaternion(1, 1, 0, 0))


def test_character_multiplicative(rng, z3x4):
    g = z3x4
    axis = DEFAULT_AXES.mu2
    for _ in range(100):
        u = g.element_at(int(rng.integers(g.order)))
        x = g.element_at(int(rng.integers(g.order)))
        y = g.element_at(int(rng.integers(g.order)))
        lhs = character_value(u, x + y, axis)
        rhs = character_value(u, x, axis) * character_value(u, y, axis)
        assert np.allclose(lhs.to_array(), rhs.to_array(), atol=1e-12)


def test_character_conjugate_at_negation(rng, z8):
    for _ in range(50):
        u = z8.element_at(int(rng.integers(z8.order)))
        x = z8.element_at(int(rng.integers(z8.order)))
        lhs = character_value(u, -x, I)
        rhs = character_value(u, x, I).conj()
        assert np.allclose(lhs.to_array(), rhs.to_array(), atol=1e-12)


def test_character_orthogonality(z8, z3x4):
    # sum_x chi(u, x) vanishes for u != 0; this is what makes inversion exact
    for g in (z8, z3x4):
        table = character_table(g, I)
        sums = table.sum(axis=1)
        mags = qabs(sums)
        assert mags[0] == pytest.approx(g.order)
        assert mags[1:].max() <= 1e-9 * g.order


def test_character_table_matches_pointwise(rng, z3x4):
    g = z3x4
    axis = Quaternion(0, 0.6, 0.0, 0.8)
    table = character_table(g, axis)
    for _ in range(30):
        u = g.element_at(int(rng.integers(g.order)))
        x = g.element_at(int(rng.integers(g.order)))
        want = character_value(u, x, axis).to_array()
        assert np.allclose(table[u.index, x.index], want, atol=1e-15)
