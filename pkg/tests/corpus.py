"""Mixed forms shared by the property and acceptance tests."""

from __future__ import annotations

from functools import lru_cache

from superform.berezin import IntegralForm, integral_transform, theta
from superform.forms import LagrangianForm, Shape, differential_D
from superform.parsing import parse_expr
from superform.stable import PathForm, iso_a_up, iso_b_up


def transform(n: int, m: int, sigma: str, p: int) -> LagrangianForm:
    table = Shape(n, m).symbol_table()
    for a in range(1, n + m + 1):
        table.add(theta(a, n))
    return integral_transform(IntegralForm(n, m, parse_expr(sigma, table)), p)


def path(n: int, m: int, r: int, s: int, body: str) -> PathForm:
    sh = Shape(n, m, n, m, r, s)
    return PathForm(n, m, r, s, parse_expr(body, sh.symbol_table()))


def form(shape: Shape, body: str, role: str | None = None) -> LagrangianForm:
    role = role or ("dual" if not (shape.r or shape.s) else "mixed")
    return LagrangianForm(shape, parse_expr(body, shape.symbol_table()), role=role)


# (label, n, m, sigma, p) for integral transforms with x-dependent coefficients
TRANSFORMS = [
    ("R2 x1*x2 th1th2", 2, 0, "x1*x2*theta1*theta2", 2),
    ("R2 vector field", 2, 0, "x2*theta1 + x1^2*theta2", 1),
    ("R11 x1 th1th2", 1, 1, "x1*theta1*theta2", 2),
    ("R11 xi1 th2^2", 1, 1, "xi1*theta2^2", 2),
    ("R11 x1^2 th2", 1, 1, "x1^2*theta2", 1),
    ("R22 x1*xi1 th1th2th3", 2, 2, "x1*xi1*theta1*theta2*theta3", 3),
    ("R22 x2 th1 th3^2", 2, 2, "x2*theta1*theta3^2", 3),
]

# (label, n, m, r, s, body) for path forms fed through iso_b_up
PATHS = [
    ("R2 1-form", 2, 0, 1, 0, "x2*w[1][1] + x1^2*w[1][2]"),
    ("R2 2-form", 2, 0, 2, 0, "x2*(w[1][1]*w[2][2] - w[1][2]*w[2][1])"),
    ("R11 g dxi", 1, 1, 1, 0, "x1*w[1][2]"),
    ("R11 mixed 1-form", 1, 1, 1, 0, "x1^2*w[1][1] + xi1*w[1][2]"),
]


def _lifts():
    out = []
    lifts = {
        "R2 x1*x2 th1th2": [(1, 0)],
        "R2 vector field": [(1, 0)],
        "R11 x1 th1th2": [(0, 1)],
        "R11 xi1 th2^2": [(1, 1)],
        "R11 x1^2 th2": [(0, 1)],
        "R22 x1*xi1 th1th2th3": [(1, 0)],
        "R22 x2 th1 th3^2": [(0, 1)],
    }
    for label, n, m, sigma, p in TRANSFORMS:
        base = transform(n, m, sigma, p)
        for k, l in lifts[label]:
            out.append((f"{label} up {k}|{l}", iso_a_up(base, k, l)))
    return out


@lru_cache(maxsize=None)
def mixed_corpus() -> tuple:
    """At least ten mixed forms on bases up to 2|2, additional degree up to 2|1."""
    items = _lifts()
    for label, n, m, r, s, body in PATHS:
        items.append((f"{label} iso_b", iso_b_up(path(n, m, r, s, body))))
    base = dict(items)
    items.append(("R11 xi1 th2^2 up 1|1 then D", differential_D(base["R11 xi1 th2^2 up 1|1"])))
    return tuple(items)


@lru_cache(maxsize=None)
def dual_corpus() -> tuple:
    return tuple((label, transform(n, m, sigma, p)) for label, n, m, sigma, p in TRANSFORMS)
