import random

import pytest

from corpus import form, path, transform
from superform.expr import ONE, ZERO, sym
from superform.forms import FormError, LagrangianForm, Shape, check_all, dual_differential
from superform.parsing import parse_expr
from superform.stable import (
    ExcLayout,
    ExtensionError,
    PathForm,
    SignCertificateRequired,
    StableIndex,
    check_path_form,
    commuting_square_check,
    eta_map,
    exc_backward,
    exc_forward,
    iso_a_down,
    iso_a_up,
    iso_b_down,
    iso_b_up,
    path_differential,
    stable_representative,
)
from superform.symbols import SymbolTable


def E(shape, text):
    return parse_expr(text, shape.symbol_table())


# -- eliminating a row and column -------------------------------------------------

EVEN2 = ExcLayout.generic((0, 0), (0, 0), 1, 1)


def _table(layout):
    t = SymbolTable()
    for row in layout.entries:
        for s in row:
            t.add(s)
    return t


def M(layout, text):
    return parse_expr(text, _table(layout))


def test_exc_forward_scalar():
    # entries: p = m11, v = m21, w = m12, u = m22
    lam = M(EVEN2, "m[1][1]*m[2][2] - m[2][1]*m[1][2]")
    assert exc_forward(lam, EVEN2) == M(EVEN2, "m[1][1]")


def test_exc_backward_examples():
    assert exc_backward(M(EVEN2, "m[1][1]"), EVEN2) == M(EVEN2, "m[1][1]*m[2][2] - m[2][1]*m[1][2]")
    assert exc_backward(ONE, EVEN2) == M(EVEN2, "m[2][2]")
    assert exc_backward(ZERO, EVEN2).is_zero()


def test_exc_odd_row_divides():
    lay = ExcLayout.generic((0, 1), (0, 1), 1, 1)
    assert exc_backward(ONE, lay) == M(lay, "1/m[2][2]")
    with pytest.raises(SignCertificateRequired):
        exc_backward(ONE, lay, kind="second")
    assert exc_backward(ONE, lay, kind="second", odd_sign=-1) == M(lay, "-1/m[2][2]")


def test_exc_layout_parity_check():
    with pytest.raises(ValueError):
        ExcLayout.generic((0, 1), (0, 1), 0, 1)


def _random_star(rng, layout):
    # even p and v entries; the chosen row does not appear in Lambda*
    free = [s for i, row in enumerate(layout.entries) for s in row
            if i != layout.row and not s.is_odd]
    out = ZERO
    for _ in range(3):
        term = M(layout, str(rng.randint(-3, 3)))
        for s in rng.sample(free, min(2, len(free))):
            term = term * sym(s)
        out = out + term
    return out


def test_exc_roundtrips():
    rng = random.Random(7)
    layouts = [EVEN2, ExcLayout.generic((0, 0, 1), (0, 1), 1, 0), ExcLayout.generic((0, 1), (0, 0, 1), 1, 2)]
    for lay in layouts:
        for _ in range(4):
            star = _random_star(rng, lay)
            assert exc_forward(exc_backward(star, lay), lay) == star
            lam = exc_backward(star, lay)
            assert exc_backward(exc_forward(lam, lay), lay) == lam


def test_exc_recovers_determinant():
    lay = ExcLayout.generic((0, 0, 0), (0, 0, 0), 2, 2)
    det = M(lay, "m[1][1]*m[2][2]*m[3][3] - m[1][1]*m[2][3]*m[3][2] - m[1][2]*m[2][1]*m[3][3]"
                 " + m[1][2]*m[2][3]*m[3][1] + m[1][3]*m[2][1]*m[3][2] - m[1][3]*m[2][2]*m[3][1]")
    assert exc_backward(exc_forward(det, lay), lay) == det


# -- isomorphism (a) ------------------------------------------------------------------


def test_iso_a_trivial_block():
    lam = transform(2, 0, "x1*theta1*theta2", 2)
    assert iso_a_up(lam, 0, 0).body == lam.body
    assert iso_a_down(lam, 0, 0).body == lam.body


def test_iso_a_down_single_velocity():
    sh = Shape(1, 0, 1, 0, 1, 0)
    out = iso_a_down(form(sh, "w[1][1]"), 1, 0)
    assert out.codegree == (0, 0) and out.body == ONE


def test_iso_a_up_constant():
    c = form(Shape(1, 0, 0, 0), "x1 + 2")
    up = iso_a_up(c, 1, 0)
    assert up.codegree == (1, 0) and (up.shape.r, up.shape.s) == (1, 0)
    assert up.body == E(up.shape, "(x1 + 2)*w[1][1]")


def test_iso_a_roundtrip_and_checks():
    lam = transform(1, 1, "x1*theta1*theta2", 2)
    for k, l in [(1, 0), (0, 1)]:
        up = iso_a_up(lam, k, l)
        assert all(check_all(up))
        assert iso_a_down(up, k, l).body == lam.body


def test_iso_a_rejects_non_forms():
    with pytest.raises(ExtensionError):
        iso_a_up(form(Shape(1, 0, 1, 0), "p[1][1]^2"), 1, 0)
    with pytest.raises(FormError):
        iso_a_down(form(Shape(1, 0, 1, 0, 1, 0), "w[1][1]"), 2, 0)


def test_iso_a_second_kind_needs_sign():
    first = transform(1, 1, "x1*theta1*theta2", 2)
    lam = LagrangianForm(first.shape, first.body, "second", "dual")
    with pytest.raises(SignCertificateRequired):
        iso_a_up(lam, 0, 1)
    up = iso_a_up(lam, 0, 1, odd_sign=1)
    assert up.body == iso_a_up(first, 0, 1).body
    assert iso_a_up(lam, 0, 1, odd_sign=-1).body == -up.body
    # an even block needs no certificate
    assert iso_a_up(lam, 1, 0).body == iso_a_up(first, 1, 0).body


# -- isomorphism (b) ------------------------------------------------------------------


def test_iso_b_one_dimension():
    L = path(1, 0, 1, 0, "x1^2*w[1][1]")
    assert iso_b_up(L).body == E(iso_b_up(L).shape, "x1^2*w[1][1]")
    assert iso_b_down(iso_b_up(L)).body == L.body


def test_iso_b_one_form_uses_cofactors():
    L = path(2, 0, 1, 0, "x2*w[1][1] + x1^2*w[1][2]")
    up = iso_b_up(L)
    expected = "x2*(w[1][1]*p[2][2] - w[1][2]*p[2][1]) + x1^2*(w[1][2]*p[1][1] - w[1][1]*p[1][2])"
    assert up.body == E(up.shape, expected)


def test_iso_b_two_form_is_determinant():
    L = path(2, 0, 2, 0, "x1*(w[1][1]*w[2][2] - w[1][2]*w[2][1])")
    assert iso_b_up(L).body == L.body


def test_iso_b_down_requires_full_codegree():
    with pytest.raises(FormError):
        iso_b_down(form(Shape(2, 0, 1, 0, 1, 0), "w[1][1]"))


def test_iso_b_zero():
    assert iso_b_up(path(1, 1, 1, 0, "0")).body.is_zero()


# -- path forms -----------------------------------------------------------------------


def test_path_form_checks():
    good = path(2, 0, 1, 0, "x2*w[1][1] + x1^2*w[1][2]")
    assert all(check_path_form(good))
    assert not all(check_path_form(path(1, 0, 1, 0, "w[1][1]^2")))
    with pytest.raises(FormError):
        PathForm(1, 0, 1, 0, E(Shape(1, 0, 1, 0), "p[1][1]"))


def test_path_differential_is_exterior_derivative():
    # d(g1 dx1 + g2 dx2) = (d1 g2 - d2 g1) dx1 ^ dx2
    L = path(2, 0, 1, 0, "x2*w[1][1] + x1^2*w[1][2]")
    out = path_differential(L)
    assert (out.r, out.s) == (2, 0)
    area = "w[1][1]*w[2][2] - w[1][2]*w[2][1]"
    assert out.body in (E(out.shape, f"(2*x1 - 1)*({area})"), E(out.shape, f"(1 - 2*x1)*({area})"))
    assert path_differential(out).body.is_zero()


def test_path_differential_of_function():
    out = path_differential(path(2, 0, 0, 0, "x1^2*x2"))
    assert out.body == E(out.shape, "2*x1*x2*w[1][1] + x1^2*w[1][2]")


def test_commuting_square_b():
    assert commuting_square_check(path(2, 0, 1, 0, "x2*w[1][1] + x1^2*w[1][2]"), which="b")
    assert commuting_square_check(path(2, 0, 0, 0, "x1^2*x2"), which="b")


def test_commuting_square_a():
    lam = transform(2, 0, "x2*theta1 + x1^2*theta2", 1)
    assert commuting_square_check(lam, 1, 0)
    assert commuting_square_check(transform(1, 1, "x1^2*theta2", 1), 0, 1)
    with pytest.raises(ValueError):
        commuting_square_check(lam, which="c")


# -- stable index and eta ---------------------------------------------------------------


def test_stable_representative_examples():
    assert stable_representative(StableIndex(2, 1, 0, 0)) == (0, 0, 2, 1)
    assert stable_representative(StableIndex(2, 0, 3, 0)) == (1, 0, 0, 0)
    N, M_, p, q = stable_representative(StableIndex(2, 0, -1, 0))
    assert N == 0 and p == 3
    with pytest.raises(ValueError):
        StableIndex(1, 1, 0, 2)


def test_eta_of_closed_form_vanishes():
    closed = transform(1, 1, "theta1*theta2", 2)
    assert dual_differential(closed).body.is_zero()
    assert eta_map(closed).body.is_zero()


def test_eta_composite_and_linearity():
    a = transform(1, 1, "x1*theta1*theta2", 2)
    b = transform(1, 1, "x1^2*theta1*theta2", 2)
    direct = iso_b_down(iso_a_up(dual_differential(a), 0, 1))
    eta_a, eta_b = eta_map(a), eta_map(b)
    assert eta_a.body == direct.body and (eta_a.r, eta_a.s) == (0, 1)
    # the coefficient enters only through its derivative
    assert eta_b.body == eta_a.body * E(eta_a.shape, "2*x1")
    both = transform(1, 1, "(x1 + 3*x1^2)*theta1*theta2", 2)
    assert eta_map(both).body == eta_a.body + eta_b.body.scale(3)


def test_eta_rejects_wrong_codegree():
    with pytest.raises(FormError):
        eta_map(transform(1, 1, "x1*theta1", 1))
