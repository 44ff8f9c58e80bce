from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oracles import det, frac_rank, hom_count, invariant_factors
from strongmonads.linalg import (
    Complement,
    FPAbGroup,
    FPMorphism,
    Matrix,
    SmithForm,
    fp_direct_sum,
    fp_hom,
    fp_tensor,
    in_span,
    int_kernel,
    lattice_basis,
    rank,
    rref,
    smith_normal_form,
)

small_ints = st.integers(-6, 6)


@st.composite
def int_matrices(draw, max_side=4):
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    return draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m))


def test_smith_textbook_example():
    a = Matrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    s = SmithForm(a)
    assert s.diagonal == [2, 6, 12]
    assert s.U @ s.D @ s.V == a


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_smith_decomposition(rows):
    a = Matrix.from_rows(rows)
    u, d, v = smith_normal_form(a)
    assert u @ d @ v == a
    assert abs(det(u.to_rows())) == 1
    assert abs(det(v.to_rows())) == 1
    diag = SmithForm(a).diagonal
    assert all(x > 0 for x in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert diag == invariant_factors(rows)


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_agrees_with_fraction_elimination(rows):
    assert rank(Matrix.from_rows(rows)) == frac_rank(rows)


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_lattice_basis_spans_the_same_lattice(rows):
    a = Matrix.from_rows(rows)
    b = lattice_basis(a)
    assert b.ncols == rank(a)
    assert in_span(a, b, "Z") and in_span(b, a, "Z")


@given(int_matrices())
@settings(max_examples=40, deadline=None)
def test_integer_kernel_is_saturated(rows):
    a = Matrix.from_rows(rows)
    k = int_kernel(a)
    assert (a @ k).is_zero()
    assert k.ncols == a.ncols - rank(a)
    if k.ncols:
        assert SmithForm(k).diagonal == [1] * k.ncols


def test_rref_of_rank_two_matrix():
    rows, pivots = rref(Matrix.from_rows([[1, 2, 3], [2, 4, 7], [1, 2, 4]]))
    assert pivots == [0, 2]
    assert rows == [{0: 1, 1: 2}, {2: 1}]


def test_rational_entries_survive_json():
    m = Matrix.from_rows([[Fraction(1, 3), 0], [2, Fraction(-5, 7)]])
    assert Matrix.from_json(m.to_json()) == m


@pytest.mark.parametrize("ground", ["Q", "Z"])
def test_complement_splits_the_cokernel(ground):
    a = Matrix.from_rows([[1, 0], [1, 1], [0, 1], [2, 1]])
    c = Complement(a, ground)
    assert c.dim == 2
    assert (c.proj @ a).is_zero()
    assert c.proj @ c.section == Matrix.identity(2)


def test_integer_complement_rejects_torsion():
    with pytest.raises(ValueError):
        Complement(Matrix.from_rows([[2]]), "Z")


@pytest.mark.parametrize("a,b", [(2, 4), (4, 6), (3, 5), (6, 9)])
def test_cyclic_tensor_is_gcd(a, b):
    g = gcd(a, b)
    expected = (0, (g,)) if g > 1 else (0, ())
    assert fp_tensor(FPAbGroup.cyclic(a), FPAbGroup.cyclic(b)).canonical == expected


@pytest.mark.parametrize(
    "source,target",
    [((4,), (6,)), ((0, 2), (4, 4)), ((2, 2), (2, 4)), ((6,), (2, 3)), ((0,), (3, 5))],
)
def test_hom_group_order_matches_enumeration(source, target):
    def group(orders):
        return fp_direct_sum([FPAbGroup.cyclic(k) if k else FPAbGroup.free(1) for k in orders])

    assert fp_hom(group(source), group(target)).order() == hom_count(source, target)


def test_hom_into_free_part_has_rank():
    z = FPAbGroup.free(1)
    assert fp_hom(fp_direct_sum([z, FPAbGroup.cyclic(2)]), fp_direct_sum([z, z])).canonical == (2, ())


def test_morphism_must_respect_relations():
    with pytest.raises(ValueError):
        FPMorphism(FPAbGroup.cyclic(2), FPAbGroup.cyclic(3), Matrix.from_rows([[1]]))
    f = FPMorphism(FPAbGroup.cyclic(2), FPAbGroup.cyclic(4), Matrix.from_rows([[2]]))
    assert f.is_injective() and not f.is_surjective()
    assert f.cokernel().canonical == (0, (2,))


def test_canonical_form_of_mixed_group():
    g = FPAbGroup(Matrix.from_rows([[2, 0], [0, 4], [0, 0]]))
    assert g.canonical == (1, (2, 4))
    assert g.order() is None
    assert FPAbGroup.from_canonical(0, (2, 6)).order() == 12
