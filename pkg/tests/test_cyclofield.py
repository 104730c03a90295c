import pickle

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from freybound.arith import Poly, poly_discriminant
from freybound.cyclofield import (
    RealCycloField,
    char_poly,
    conjugate_bound_check,
    conjugates,
    field_norm,
    galois_conjugate,
    hplus_default,
    make_field,
    residue_degree,
)

mpmath.mp.dps = 50


def embeddings(e):
    """Numeric values of e at psi = 2 cos(2 pi k / r), k = 1..g."""
    fld = e.field
    out = []
    for k in range(1, fld.g + 1):
        psi = 2 * mpmath.cos(2 * mpmath.pi * k / fld.r)
        out.append(sum(c * psi**i for i, c in enumerate(e.vector)))
    return out


def small_elems(r):
    g = (r - 1) // 2
    return st.lists(st.integers(-5, 5), min_size=g, max_size=g).map(lambda c: make_field(r).elem(c))


@pytest.mark.parametrize("r", [3, 5, 7, 11, 13, 17, 19])
def test_discriminant_law(r):
    fld = make_field(r)
    assert fld.disc == r ** ((r - 3) // 2)
    assert poly_discriminant(fld.m_psi) == fld.disc


@pytest.mark.parametrize("r", [5, 7, 11])
def test_minimal_polynomial_roots(r):
    fld = make_field(r)
    assert fld.m_psi.degree == fld.g and fld.m_psi.lc == 1
    for k in range(1, fld.g + 1):
        psi = 2 * mpmath.cos(2 * mpmath.pi * k / r)
        assert abs(mpmath.polyval(list(reversed(fld.m_psi.coeffs)), psi)) < mpmath.mpf(10) ** -40


def test_r5_arithmetic():
    fld = make_field(5)
    assert fld.m_psi == Poly([-1, 1, 1])
    psi = fld.psi
    assert psi * psi == fld.elem([1, -1])
    assert galois_conjugate(psi, 2) == fld.elem([-1, -1])
    assert field_norm(psi) == -1
    assert field_norm(2 - psi) == 5
    assert field_norm(fld.elem([0])) == 0


def test_invalid_field():
    for r in (1, 2, 9, 15):
        with pytest.raises(ValueError):
            RealCycloField(r)


def test_trace_form_determinant():
    fld = make_field(7)
    t = fld.trace_form()
    m = mpmath.matrix(t)
    assert int(mpmath.nint(mpmath.det(m))) == fld.disc


@settings(max_examples=60, deadline=None)
@given(small_elems(7), st.sampled_from([1, 2, 3, 4, 5, 6]), st.sampled_from([1, 2, 3, 4, 5, 6]))
def test_conjugation_composes(e, a, b):
    assert galois_conjugate(galois_conjugate(e, b), a) == galois_conjugate(e, a * b % 7)


@settings(max_examples=60, deadline=None)
@given(small_elems(7), small_elems(7))
def test_norm_multiplicative(a, b):
    assert field_norm(a * b) == field_norm(a) * field_norm(b)


@settings(max_examples=40, deadline=None)
@given(small_elems(11))
def test_norm_is_product_of_embeddings(e):
    approx = mpmath.fprod(embeddings(e))
    assert abs(approx - field_norm(e)) < mpmath.mpf(10) ** -30


@settings(max_examples=40, deadline=None)
@given(small_elems(7))
def test_char_poly_roots_are_embeddings(e):
    cp = char_poly(e)
    assert cp.degree == 3 and cp.lc == 1
    coeffs = list(reversed(cp.coeffs))
    for v in embeddings(e):
        assert abs(mpmath.polyval(coeffs, v)) < mpmath.mpf(10) ** -30
    # conjugates share the characteristic polynomial
    assert all(char_poly(c) == cp for c in conjugates(e))


def test_conjugate_bound_check():
    fld = make_field(5)
    psi = fld.psi  # embeddings 0.618..., -1.618...
    assert conjugate_bound_check(psi, 2)
    assert not conjugate_bound_check(psi, 1)
    assert conjugate_bound_check(psi + 1, bound_sq=8)   # 1.618, -0.618
    assert not conjugate_bound_check(2 * psi + 2, bound_sq=8)
    with pytest.raises(ValueError):
        conjugate_bound_check(psi)
    with pytest.raises(ValueError):
        conjugate_bound_check(psi, 0)


def test_residue_degree():
    assert residue_degree(5, 2) == 2
    assert residue_degree(7, 2) == 3
    assert residue_degree(7, 13) == 1     # 13 = -1 mod 7
    assert residue_degree(11, 2) == 5
    with pytest.raises(ValueError):
        residue_degree(5, 5)


def test_hplus_table():
    value, note = hplus_default(5)
    assert value == 1 and note
    with pytest.raises(KeyError):
        hplus_default(1009)


def test_field_pickles():
    fld = make_field(13)
    assert pickle.loads(pickle.dumps(fld)) == fld
    e = fld.elem([1, 2, 3])
    assert pickle.loads(pickle.dumps(e)) == e
