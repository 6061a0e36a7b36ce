"""Berezin integration over odd variables and the transform of integral forms."""

from __future__ import annotations

from dataclasses import dataclass

from .expr import ZERO, GrassmannExpr, graded_derivative, substitute
from .forms import LagrangianForm, Shape
from .symbols import Parity, Symbol, symbol


class NotPolynomial(ValueError):
    pass


def berezin_integral_odd(e: GrassmannExpr, variables: list[Symbol]) -> GrassmannExpr:
    """Integrate out odd ``variables`` with the convention ``int phi_1 ... phi_q = 1``.

    Implemented as iterated left derivatives, ``d/dphi_1`` applied first.
    """
    for v in variables:
        if v.parity is not Parity.ODD:
            raise ValueError(f"{v.name} is not odd")
    for v in variables:
        e = graded_derivative(e, v)
        if not e.terms:
            return ZERO
    return e


def theta(a: int, n: int) -> Symbol:
    """Auxiliary variable dual to ``x^A``; opposite parity to the coordinate."""
    return symbol(f"theta{a}", Parity.ODD if a <= n else Parity.EVEN, "generator")


def phi(k: int) -> Symbol:
    return symbol(f"phi{k}", Parity.ODD, "generator")


@dataclass(frozen=True)
class IntegralForm:
    """``sigma(x, theta)`` on ``R^{n|m}``, polynomial in the ``theta_A``."""

    n: int
    m: int
    sigma: GrassmannExpr

    def __post_init__(self):
        thetas = set(self.thetas())
        for mono, c in self.sigma.terms.items():
            if not c.is_poly() and c.den.symbols() & thetas:
                raise NotPolynomial("sigma must be polynomial in theta")

    def thetas(self) -> list[Symbol]:
        return [theta(a, self.n) for a in range(1, self.n + self.m + 1)]

    def theta_degree(self) -> set[int]:
        """Degrees in ``theta`` occurring in ``sigma``."""
        thetas = set(self.thetas())
        degs = set()
        for mono, c in self.sigma.terms.items():
            odd_deg = sum(1 for s in mono if s in thetas)
            for pm in c.num.terms:
                degs.add(odd_deg + sum(e for s, e in pm if s in thetas))
        return degs


def integral_transform(sigma: IntegralForm, p_count: int, kind: str = "first") -> LagrangianForm:
    """``Lambda(x, p) = int D(phi) sigma(x, p . phi)`` with ``p_count`` even columns."""
    if p_count < 0:
        raise ValueError("p_count must be non-negative")
    sh = Shape(sigma.n, sigma.m, p_count, 0)
    phis = [phi(k) for k in range(1, p_count + 1)]
    mapping = {}
    for a, th in enumerate(sigma.thetas(), start=1):
        acc = ZERO
        for k, ph in enumerate(phis, start=1):
            acc = acc + GrassmannExpr.from_symbol(sh.mom(a, k)) * GrassmannExpr.from_symbol(ph)
        mapping[th] = acc
    body = berezin_integral_odd(substitute(sigma.sigma, mapping), phis)
    return LagrangianForm(sh, body, kind, "dual")
