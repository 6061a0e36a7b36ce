import random

import pytest

from superform.expr import ONE, ZERO, sym
from superform.parsing import parse_expr
from superform.supermatrix import (
    EvalPoint,
    ShapeError,
    SingularBlock,
    SuperMatrix,
    ber,
    ber_second_line,
    ber_variant,
    compose_changes,
    mat_mul,
    random_supermatrix,
    super_inverse,
    volume_factor,
)
from superform.symbols import Parity, SymbolTable, even, odd

T = SymbolTable()
for name in "abcdx":
    T.declare(name)
for name in ("beta", "gamma", "xi", "eta", "o1", "o2", "o3", "o4"):
    T.declare(name, Parity.ODD)
GENS = [T.lookup(f"o{i}") for i in range(1, 5)]


def P(text):
    return parse_expr(text, T)


def m11(a, b, c, d):
    return SuperMatrix((0, 1), (0, 1), ((P(a), P(b)), (P(c), P(d))))


GENERIC = m11("a", "beta", "gamma", "d")


def test_identity_product():
    A = random_supermatrix(random.Random(3), 2, 1, GENS)
    I = SuperMatrix.identity((0, 0, 1))
    assert I @ A == A and A @ I == A


def test_diagonal_product():
    A = SuperMatrix.diag([P("2")], [P("3")])
    B = SuperMatrix.diag([P("5")], [P("7")])
    assert A @ B == SuperMatrix.diag([P("10")], [P("21")])


def test_one_one_product_by_hand():
    A = m11("a", "beta", "gamma", "d")
    B = m11("b", "xi", "eta", "c")
    AB = A @ B
    assert AB[0, 0] == P("a*b + beta*eta")
    assert AB[0, 1] == P("a*xi + beta*c")
    assert AB[1, 0] == P("gamma*b + d*eta")
    assert AB[1, 1] == P("gamma*xi + d*c")


def test_parity_mismatch_rejected():
    with pytest.raises(ShapeError):
        SuperMatrix((0, 1), (0, 1), ((P("a"), P("b")), (P("gamma"), P("d"))))
    with pytest.raises(ShapeError):
        mat_mul(SuperMatrix.identity((0, 1)), SuperMatrix.identity((0, 0)))


def test_inverse_examples():
    I = SuperMatrix.identity((0, 1))
    assert super_inverse(I) == I
    assert super_inverse(SuperMatrix.diag([P("a")], [P("d")])) == SuperMatrix.diag([P("1/a")], [P("1/d")])
    inv = super_inverse(GENERIC)
    assert GENERIC @ inv == I and inv @ GENERIC == I


def test_singular_block():
    with pytest.raises(SingularBlock):
        super_inverse(m11("a", "beta", "gamma", "0"))


def test_berezinian_examples():
    assert ber(SuperMatrix.identity((0, 0, 1))) == ONE
    assert ber(SuperMatrix.diag([P("a")], [P("d")])) == P("a/d")
    assert ber(GENERIC, cross_check=True) == P("a/d - beta*gamma/d^2")


def test_sign_variants():
    assert ber_variant(GENERIC, 0, 0) == ber(GENERIC)
    neg = SuperMatrix.diag([P("-1")], [P("1")])
    assert ber(neg) == P("-1")
    assert ber_variant(neg, 1, 0) == ONE
    assert ber_variant(SuperMatrix.diag([P("1")], [P("-1")]), 0, 1) == ONE
    pt = EvalPoint({T.lookup("a"): 1, T.lookup("d"): -2})
    assert ber_variant(GENERIC, 0, 1, pt) == -ber(GENERIC)
    assert ber_variant(GENERIC, 1, 1, pt) == -ber(GENERIC)


def test_sign_undefined_at_zero_body():
    with pytest.raises(SingularBlock):
        ber_variant(GENERIC, 1, 0, EvalPoint({T.lookup("a"): 0, T.lookup("d"): 1}))


def test_inverse_of_product_reverses():
    rng = random.Random(11)
    for _ in range(10):
        A = random_supermatrix(rng, 2, 2, GENS)
        B = random_supermatrix(rng, 2, 2, GENS)
        assert super_inverse(A @ B) == super_inverse(B) @ super_inverse(A)


def test_symbolic_multiplicativity():
    B = m11("b", "xi", "eta", "c")
    assert ber(GENERIC @ B) == ber(GENERIC) * ber(B)


def test_both_lines_agree_symbolically():
    A = SuperMatrix((0, 0, 1), (0, 0, 1), (
        (P("a"), P("b"), P("beta")),
        (P("c"), P("x"), P("xi")),
        (P("gamma"), P("eta"), P("d")),
    ))
    assert ber(A) == ber_second_line(A)


# -- volume factors ---------------------------------------------------------------


def test_volume_factor_examples():
    x, xi = T.lookup("x"), T.lookup("xi")
    coords = [x, xi]
    assert volume_factor({}, coords) == ONE
    assert volume_factor({x: P("2*x")}, [x]) == P("2")
    assert volume_factor({xi: P("x*xi")}, coords) == P("1/x")


def test_volume_factor_sign_variant():
    x = T.lookup("x")
    assert volume_factor({x: P("-3*x")}, [x], 1, 0, EvalPoint({x: 1})) == P("3")


def test_composition_order():
    x, xi = even("x"), odd("xi")
    outer = {x: P("x + xi*eta")}
    inner = {x: P("2*x")}
    assert compose_changes(outer, inner, [x, xi])[x] == P("2*x + xi*eta")
    assert ZERO == compose_changes({}, {}, [x])[x] - sym(x)
