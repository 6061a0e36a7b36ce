"""Elimination of a row and column, the isomorphisms between mixed-form
spaces, stable indices and the map from dual forms to path forms."""

from __future__ import annotations

from dataclasses import dataclass

from .expr import INHOMOGENEOUS, ONE, ZERO, GrassmannExpr, graded_derivative, substitute
from .forms import CheckReport, FormError, LagrangianForm, Shape, differential_D, dual_differential
from .supermatrix import SuperMatrix, ber, super_inverse
from .symbols import Parity, Symbol, symbol


class ExtensionError(ArithmeticError):
    """The rational expression does not extend polynomially in the even entries."""


class SignCertificateRequired(ValueError):
    """Second-kind factors need the sign of an odd-odd body determinant."""


def _sym(s: Symbol) -> GrassmannExpr:
    return GrassmannExpr.from_symbol(s)


def _signed(e: GrassmannExpr, k: int) -> GrassmannExpr:
    return -e if k & 1 else e


# -- eliminating a chosen row and column ----------------------------------


@dataclass(frozen=True)
class ExcLayout:
    """A matrix of symbols with a chosen row and column of equal parity.

    ``entries[i][j]`` has parity ``row_parities[i] + col_parities[j]``.  The
    chosen row holds ``(w, u)``, the chosen column ``(v, u)``; everything
    else is ``p``.
    """

    entries: tuple
    row_parities: tuple
    col_parities: tuple
    row: int
    col: int

    def __post_init__(self):
        if self.row_parities[self.row] != self.col_parities[self.col]:
            raise ValueError("chosen row and column must have the same parity")

    @classmethod
    def generic(cls, row_parities, col_parities, row: int, col: int, prefix: str = "m") -> "ExcLayout":
        entries = tuple(tuple(symbol(f"{prefix}[{i + 1}][{j + 1}]", (ri + cj) % 2, "scalar")
                              for j, cj in enumerate(col_parities)) for i, ri in enumerate(row_parities))
        return cls(entries, tuple(row_parities), tuple(col_parities), row, col)

    @property
    def alpha(self) -> int:
        return int(self.row_parities[self.row])

    @property
    def u(self) -> Symbol:
        return self.entries[self.row][self.col]

    def w(self) -> dict:
        return {j: s for j, s in enumerate(self.entries[self.row]) if j != self.col}

    def v(self) -> dict:
        return {i: row[self.col] for i, row in enumerate(self.entries) if i != self.row}


def exc_forward(lam: GrassmannExpr, layout: ExcLayout) -> GrassmannExpr:
    """``Lambda*(p, v) = Lambda(p, 0, v, 1)``."""
    mapping = {s: ZERO for s in layout.w().values()}
    mapping[layout.u] = ONE
    return substitute(lam, mapping)


def exc_backward(lam_star: GrassmannExpr, layout: ExcLayout, kind: str = "first",
                 odd_sign: int | None = None) -> GrassmannExpr:
    """``Lambda = u^{(-1)^alpha} Lambda*(p - v w / u, v / u)``.

    For second-kind forms with an odd chosen row the factor ``u^{-1}`` becomes
    ``|u|^{-1}``, which needs ``odd_sign``, the sign of the body of ``u``.
    """
    u = _sym(layout.u)
    u_inv = u.inverse()
    mapping = {}
    w = layout.w()
    for i, vi in layout.v().items():
        v_over_u = _sym(vi) * u_inv
        mapping[vi] = v_over_u
        for j, wj in w.items():
            pij = layout.entries[i][j]
            mapping[pij] = _sym(pij) - v_over_u * _sym(wj)
    body = substitute(lam_star, mapping)
    if layout.alpha == 0:
        return u * body
    if kind == "second":
        if odd_sign not in (1, -1):
            raise SignCertificateRequired("second kind with an odd chosen row needs the sign of u")
        return body * u_inv if odd_sign > 0 else -(body * u_inv)
    return body * u_inv


# -- isomorphism (a): lifting by k|l rows and columns ----------------------


def _lift_shape(sh: Shape, k: int, l: int) -> Shape:
    return sh.with_(p=sh.p + k, q=sh.q + l, r=sh.r + k, s=sh.s + l)


def _index_maps(small: Shape, k: int, l: int):
    """Positions of the small-shape columns and rows inside the lifted shape,
    plus the lifted column/row lists (even block first)."""
    big = _lift_shape(small, k, l)
    col_of = {c: (c if c <= small.p else c + k) for c in small.cols}
    row_of = {f: (f if f <= small.r else f + k) for f in small.vrows}
    lifted_cols = list(range(small.p + 1, small.p + k + 1)) + list(range(big.p + big.q - l + 1, big.p + big.q + 1))
    lifted_rows = list(range(small.r + 1, small.r + k + 1)) + list(range(big.r + big.s - l + 1, big.r + big.s + 1))
    return big, col_of, row_of, lifted_cols, lifted_rows


def _check_extension(e: GrassmannExpr, allowed: set) -> None:
    for mono, c in e.terms.items():
        if c.is_poly():
            continue
        bad = [s.name for s in c.den.symbols() if s not in allowed and s.role not in ("coordinate", "scalar")]
        if bad:
            raise ExtensionError(f"denominator depends on {', '.join(sorted(set(bad)))}")


def _odd_odd_entries(sh: Shape) -> set:
    out = set()
    for a in range(sh.n + 1, sh.n + sh.m + 1):
        for c in range(sh.p + 1, sh.p + sh.q + 1):
            out.add(sh.mom(a, c))
    for f in range(sh.r + 1, sh.r + sh.s + 1):
        for c in range(sh.p + 1, sh.p + sh.q + 1):
            out.add(sh.vel(f, c))
    return out


def _ber_prime(m: SuperMatrix, kind: str, odd_sign: int | None) -> GrassmannExpr:
    b = ber(m)
    if kind == "second" and any(p is Parity.ODD for p in m.row_parities):
        if odd_sign not in (1, -1):
            raise SignCertificateRequired("second-kind factor needs the sign of the odd-odd body determinant")
        return b if odd_sign > 0 else -b
    return b


def iso_a_up(form: LagrangianForm, k: int, l: int, *, odd_sign: int | None = None) -> LagrangianForm:
    """Lift by ``k|l`` extra columns and velocity rows.

    ``Lambda(p, w) = Lambda*(p1 - p2 w22^-1 w21, w11 - w12 w22^-1 w21) Ber' w22``
    where the block ``2`` consists of the last ``k`` even and last ``l`` odd
    columns (and rows).  The result must be polynomial in every entry outside
    the odd-odd blocks; otherwise :class:`ExtensionError` is raised.
    """
    if k < 0 or l < 0:
        raise FormError("block sizes must be non-negative")
    small = form.shape
    if not k and not l:
        return form
    big, col_of, row_of, lcols, lrows = _index_maps(small, k, l)
    par = [0] * k + [1] * l
    w22 = SuperMatrix(par, par, tuple(tuple(_sym(big.vel(f, c)) for c in lcols) for f in lrows))
    w22_inv = super_inverse(w22)
    # M = w22^-1 w21 : lifted columns x small columns
    M = {}
    for i in range(k + l):
        for c in small.cols:
            acc = ZERO
            for j, f in enumerate(lrows):
                e = w22_inv[i, j]
                if e.terms:
                    acc = acc + e * _sym(big.vel(f, col_of[c]))
            M[i, c] = acc
    mapping = {}
    for a in small.rows:
        for c in small.cols:
            acc = _sym(big.mom(a, col_of[c]))
            for i, lc in enumerate(lcols):
                if M[i, c].terms:
                    acc = acc - _sym(big.mom(a, lc)) * M[i, c]
            mapping[small.mom(a, c)] = acc
    for f in small.vrows:
        for c in small.cols:
            acc = _sym(big.vel(row_of[f], col_of[c]))
            for i, lc in enumerate(lcols):
                if M[i, c].terms:
                    acc = acc - _sym(big.vel(row_of[f], lc)) * M[i, c]
            mapping[small.vel(f, c)] = acc
    body = substitute(form.body, mapping) * _ber_prime(w22, form.kind, odd_sign)
    _check_extension(body, _odd_odd_entries(big))
    return LagrangianForm(big, body, form.kind, "mixed")


def iso_a_down(form: LagrangianForm, k: int, l: int) -> LagrangianForm:
    """Restrict to ``p2 = 0, w12 = 0, w21 = 0, w22 = 1`` and renumber."""
    big = form.shape
    if k < 0 or l < 0 or k > min(big.p, big.r) or l > min(big.q, big.s):
        raise FormError(f"block {k}|{l} exceeds codegree {big.p}|{big.q} or additional degree {big.r}|{big.s}")
    if not k and not l:
        return form
    small = big.with_(p=big.p - k, q=big.q - l, r=big.r - k, s=big.s - l)
    _, col_of, row_of, lcols, lrows = _index_maps(small, k, l)
    mapping = {}
    for a in big.rows:
        for c in lcols:
            mapping[big.mom(a, c)] = ZERO
        for c in small.cols:
            mapping[big.mom(a, col_of[c])] = _sym(small.mom(a, c))
    for f in small.vrows:
        for c in lcols:
            mapping[big.vel(row_of[f], c)] = ZERO
        for c in small.cols:
            mapping[big.vel(row_of[f], col_of[c])] = _sym(small.vel(f, c))
    for i, f in enumerate(lrows):
        for j, c in enumerate(lcols):
            mapping[big.vel(f, c)] = ONE if i == j else ZERO
        for c in small.cols:
            mapping[big.vel(f, col_of[c])] = ZERO
    role = "dual" if not (small.r or small.s) else "mixed"
    return LagrangianForm(small, substitute(form.body, mapping), form.kind, role)


# -- isomorphism (b): path forms <-> mixed forms of full codegree ---------


@dataclass(frozen=True)
class PathForm:
    """``L(x, xdot)`` with velocities ``xdot_F^A`` stored as ``w[F][A]``."""

    n: int
    m: int
    r: int
    s: int
    body: GrassmannExpr
    kind: str = "first"

    def __post_init__(self):
        if self.body.terms and self.body.parity() == INHOMOGENEOUS:
            raise FormError("body is not parity-homogeneous")
        allowed = set(self.shape.coords() + self.shape.velocities())
        for s in self.body.symbols():
            if s.role in ("coordinate", "momentum", "velocity", "parameter", "jet2") and s not in allowed:
                raise FormError(f"symbol {s.name} does not belong to a path form of degree {self.r}|{self.s}")

    @property
    def shape(self) -> Shape:
        """Velocity layout: ``w[F][A]`` has parity ``F~ + A~``."""
        return Shape(self.n, self.m, self.n, self.m, self.r, self.s)

    def xdot(self, f: int, a: int) -> Symbol:
        return self.shape.vel(f, a)

    def __str__(self):
        return str(self.body)


def check_path_form(L: PathForm) -> list[CheckReport]:
    """Covariance ``L(h xdot) = Ber h L`` and the symmetrised second-derivative identity."""
    sh = L.shape
    cov = CheckReport("path-covariance")
    first = {}

    def d(z):
        if z not in first:
            first[z] = graded_derivative(L.body, z)
        return first[z]

    for f in sh.vrows:
        for g in sh.vrows:
            acc = ZERO
            for a in sh.rows:
                dz = d(L.xdot(f, a))
                if dz.terms:
                    acc = acc + _sym(L.xdot(g, a)) * dz
            if f == g:
                acc = acc - _signed(L.body, sh.vrow_parity(f))
            cov.record(f"F={f},G={g}", acc)
    fund = CheckReport("path-fundamental")
    for f in sh.vrows:
        for g in sh.vrows:
            if g < f:
                continue
            pf, pg = sh.vrow_parity(f), sh.vrow_parity(g)
            for a in sh.rows:
                for b in sh.rows:
                    t1 = graded_derivative(d(L.xdot(g, b)), L.xdot(f, a))
                    t2 = graded_derivative(d(L.xdot(f, b)), L.xdot(g, a))
                    fund.record(f"F={f},G={g},A={a},B={b}",
                                t1 + _signed(t2, pf * pg + sh.row_parity(b) * (pf + pg)))
    return [cov, fund]


def iso_b_up(L: PathForm, *, odd_sign: int | None = None) -> LagrangianForm:
    """``Lambda(p, w) = L(w p^-1) Ber' p`` on codegree ``n|m``."""
    sh = L.shape
    pars = tuple(sh.row_parity(a) for a in sh.rows)
    P = SuperMatrix(pars, pars, tuple(tuple(_sym(sh.mom(a, c)) for c in sh.cols) for a in sh.rows))
    P_inv = super_inverse(P)
    mapping = {}
    for f in sh.vrows:
        for a in sh.rows:
            acc = ZERO
            for c in sh.cols:
                e = P_inv[c - 1, a - 1]
                if e.terms:
                    acc = acc + _sym(sh.vel(f, c)) * e
            mapping[L.xdot(f, a)] = acc
    body = substitute(L.body, mapping) * _ber_prime(P, L.kind, odd_sign)
    _check_extension(body, _odd_odd_entries(sh))
    return LagrangianForm(sh, body, L.kind, "dual" if not (sh.r or sh.s) else "mixed")


def iso_b_down(form: LagrangianForm) -> PathForm:
    """``L(xdot) = Lambda(p = 1, w = xdot)``."""
    sh = form.shape
    if (sh.p, sh.q) != (sh.n, sh.m):
        raise FormError(f"codegree {sh.p}|{sh.q} must equal the dimension {sh.n}|{sh.m}")
    mapping = {sh.mom(a, c): (ONE if a == c else ZERO) for a in sh.rows for c in sh.cols}
    return PathForm(sh.n, sh.m, sh.r, sh.s, substitute(form.body, mapping), form.kind)


def path_differential(L: PathForm) -> PathForm:
    """``(-1)^r xdot_{r+1}^A (dL/dx^A - (-1)^{AF} xdot_F^B d/dx^B dL/dxdot_F^A)``.

    Odd velocity rows are renumbered up by one.
    """
    sh = L.shape
    new = sh.with_(r=sh.r + 1)
    acc = ZERO
    for a in sh.rows:
        inner = graded_derivative(L.body, sh.x(a))
        for f in sh.vrows:
            dv = graded_derivative(L.body, L.xdot(f, a))
            if not dv.terms:
                continue
            part = ZERO
            for b in sh.rows:
                dx = graded_derivative(dv, sh.x(b))
                if dx.terms:
                    part = part + _sym(L.xdot(f, b)) * dx
            inner = inner - _signed(part, sh.row_parity(a) * sh.vrow_parity(f))
        if inner.terms:
            acc = acc + _sym(new.vel(sh.r + 1, a)) * inner
    acc = _signed(acc, sh.r)
    ren = {sh.vel(f, a): _sym(new.vel(f + 1, a)) for f in range(sh.r + 1, sh.r + sh.s + 1) for a in sh.rows}
    if ren:
        acc = substitute(acc, ren)
    return PathForm(sh.n, sh.m, sh.r + 1, sh.s, acc, L.kind)


# -- stable indices and the sewing map ------------------------------------


@dataclass(frozen=True)
class StableIndex:
    n: int
    m: int
    r: int
    s: int

    def __post_init__(self):
        if not 0 <= self.s <= self.m:
            raise ValueError(f"s must lie in 0..{self.m}, got {self.s}")


def stable_representative(idx: StableIndex) -> tuple[int, int, int, int]:
    """Minimal ``(N, M, p, q)`` with ``Omega^{r|s} = Omega^{N|M}_{p|q}``."""
    N = max(0, idx.r - idx.n)
    M = max(0, idx.s - idx.m)
    return N, M, idx.n - idx.r + N, idx.m - idx.s + M


def eta_map(form: LagrangianForm) -> PathForm:
    """Dual form of codegree ``n+1|m-s`` to a path form of degree ``0|s``.

    Composite of the dual differential, the lift by ``0|s`` and restriction
    to unit momenta.
    """
    sh = form.shape
    if sh.r or sh.s or sh.p != sh.n + 1 or sh.q > sh.m:
        raise FormError(f"expected a dual form of codegree {sh.n + 1}|q with q <= {sh.m}")
    s = sh.m - sh.q
    return iso_b_down(iso_a_up(dual_differential(form), 0, s))


def commuting_square_check(form, k: int = 0, l: int = 0, which: str = "a") -> CheckReport:
    """Residual ``D(up X) - up(D X)`` for isomorphism (a) with block ``k|l``
    (``form`` a mixed form) or (b) (``form`` a :class:`PathForm`)."""
    rep = CheckReport(f"commuting-square-{which}")
    if which == "a":
        lhs = differential_D(iso_a_up(form, k, l))
        rhs = iso_a_up(differential_D(form), k, l)
        if lhs.shape != rhs.shape:
            raise FormError("shapes of the two routes differ")
        rep.record(f"D(iso_a_up)-iso_a_up(D) {k}|{l}", lhs.body - rhs.body)
    elif which == "b":
        lhs = differential_D(iso_b_up(form))
        rhs = iso_b_up(path_differential(form))
        rep.record("D(iso_b_up)-iso_b_up(D)", lhs.body - rhs.body)
    else:
        raise ValueError("which must be 'a' or 'b'")
    return rep
