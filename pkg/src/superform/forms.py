"""Dual and mixed Lagrangians, their property checkers, and the differentials.

Index conventions (1-based, even entries first in every block):

* coordinates ``x^A``: ``x1..xn`` are even, ``xi1..xim`` are odd and carry
  global indices ``n+1..n+m``;
* momenta ``p[A][K]`` with parity ``A~ + K~``, one column per copath slot;
* velocities ``w[F][K]`` with parity ``F~ + K~``, one row per parameter
  ``t^F``.

All partial derivatives are left derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

from .expr import INHOMOGENEOUS, ZERO, GrassmannExpr, graded_derivative, gsum, substitute
from .supermatrix import SuperMatrix, ber, ber_variant
from .symbols import Parity, Symbol, SymbolTable, symbol

KINDS = ("first", "second")
ROLES = ("dual", "mixed")


def _sign(k: int) -> int:
    return -1 if k & 1 else 1


def _signed(e: GrassmannExpr, k: int) -> GrassmannExpr:
    return -e if k & 1 else e


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class Shape:
    """Dimensions ``n|m`` of the base, codegree ``p|q`` and additional degree ``r|s``."""

    n: int
    m: int
    p: int = 0
    q: int = 0
    r: int = 0
    s: int = 0

    def __post_init__(self):
        if min(self.n, self.m, self.p, self.q, self.r, self.s) < 0:
            raise FormError(f"negative dimension in {self}")

    @property
    def dims(self):
        return self.n, self.m

    @property
    def codegree(self):
        return self.p, self.q

    @property
    def add_degree(self):
        return self.r, self.s

    @property
    def degree(self):
        return self.n + self.r - self.p, self.m + self.s - self.q

    @property
    def rows(self) -> range:
        return range(1, self.n + self.m + 1)

    @property
    def cols(self) -> range:
        return range(1, self.p + self.q + 1)

    @property
    def vrows(self) -> range:
        return range(1, self.r + self.s + 1)

    def row_parity(self, a: int) -> int:
        return int(a > self.n)

    def col_parity(self, k: int) -> int:
        return int(k > self.p)

    def vrow_parity(self, f: int) -> int:
        return int(f > self.r)

    def x(self, a: int) -> Symbol:
        return coordinate(a, self.n)

    def mom(self, a: int, k: int) -> Symbol:
        return symbol(f"p[{a}][{k}]", self.row_parity(a) ^ self.col_parity(k), "momentum")

    def vel(self, f: int, k: int) -> Symbol:
        return symbol(f"w[{f}][{k}]", self.vrow_parity(f) ^ self.col_parity(k), "velocity")

    def t(self, f: int) -> Symbol:
        return symbol(f"t{f}", self.vrow_parity(f), "parameter")

    def coords(self) -> list[Symbol]:
        return [self.x(a) for a in self.rows]

    def momenta(self) -> list[Symbol]:
        return [self.mom(a, k) for a in self.rows for k in self.cols]

    def velocities(self) -> list[Symbol]:
        return [self.vel(f, k) for f in self.vrows for k in self.cols]

    def params(self) -> list[Symbol]:
        return [self.t(f) for f in self.vrows]

    def symbol_table(self) -> SymbolTable:
        table = SymbolTable(dims=self.dims, codegree=self.codegree, add_degree=self.add_degree)
        for s in self.coords() + self.momenta() + self.velocities():
            table.add(s)
        return table

    def col_matrix_parities(self) -> tuple:
        return tuple(self.col_parity(k) for k in self.cols)

    def vrow_matrix_parities(self) -> tuple:
        return tuple(self.vrow_parity(f) for f in self.vrows)

    # Generalized rows: ("x", A) for coordinates, ("t", F) for parameters.
    def grows(self) -> list[tuple[str, int]]:
        return [("x", a) for a in self.rows] + [("t", f) for f in self.vrows]

    def grow_parity(self, g) -> int:
        kind, i = g
        return self.row_parity(i) if kind == "x" else self.vrow_parity(i)

    def entry(self, g, k: int) -> Symbol:
        kind, i = g
        return self.mom(i, k) if kind == "x" else self.vel(i, k)

    def jet(self, g1, g2, k: int):
        """Second-derivative symbol ``d_I d_J f^K`` as ``(sign, Symbol)``.

        Stored for ``I <= J`` only; the graded symmetry supplies the sign,
        and the diagonal of an odd row vanishes (returns ``None``).
        """
        order = {"x": 0, "t": 1}
        key1, key2 = (order[g1[0]], g1[1]), (order[g2[0]], g2[1])
        pi, pj = self.grow_parity(g1), self.grow_parity(g2)
        sign = 1
        if key1 > key2:
            g1, g2 = g2, g1
            sign = _sign(pi * pj)
        if g1 == g2 and pi:
            return None
        name = f"j{g1[0]}{g2[0]}[{g1[1]}][{g2[1]}][{k}]"
        return sign, symbol(name, pi ^ pj ^ self.col_parity(k), "jet2")

    def with_(self, **kw) -> "Shape":
        return replace(self, **kw)


def coordinate(a: int, n: int) -> Symbol:
    if a <= n:
        return symbol(f"x{a}", Parity.EVEN, "coordinate")
    return symbol(f"xi{a - n}", Parity.ODD, "coordinate")


@dataclass(frozen=True)
class LagrangianForm:
    """A function ``Lambda(x, p, w)`` together with its grading data."""

    shape: Shape
    body: GrassmannExpr
    kind: str = "first"
    role: str = "mixed"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FormError(f"kind must be one of {KINDS}")
        if self.role not in ROLES:
            raise FormError(f"role must be one of {ROLES}")
        sh = self.shape
        if self.role == "dual" and (sh.r or sh.s):
            raise FormError("a dual form has additional degree 0|0")
        if self.role == "mixed" and not sh.s <= sh.q <= sh.m + sh.s:
            raise FormError(f"odd codegree must satisfy s <= q <= m+s, got q={sh.q}")
        if self.body.terms and self.body.parity() == INHOMOGENEOUS:
            raise FormError("body is not parity-homogeneous")
        allowed = self._allowed
        for s in self.body.symbols():
            if s.role in ("coordinate", "momentum", "velocity", "jet2", "parameter") and s not in allowed:
                if s.role == "parameter":
                    raise FormError(f"explicit dependence on {s.name} is not allowed")
                if s.role != "jet2":
                    raise FormError(f"symbol {s.name} does not belong to shape {self.shape}")

    @cached_property
    def _allowed(self) -> frozenset:
        sh = self.shape
        return frozenset(sh.coords() + sh.momenta() + sh.velocities())

    @property
    def dims(self):
        return self.shape.dims

    @property
    def codegree(self):
        return self.shape.codegree

    @property
    def add_degree(self):
        return self.shape.add_degree

    @property
    def degree(self):
        return self.shape.degree

    @property
    def jet_terms(self) -> frozenset:
        """Second-derivative symbols left in the body (nonempty only for D of a non-form)."""
        return frozenset(s for s in self.body.symbols() if s.role == "jet2")

    def with_body(self, body: GrassmannExpr) -> "LagrangianForm":
        return replace(self, body=body)

    def __str__(self):
        return str(self.body)


@dataclass(frozen=True)
class CopathSpec:
    """Functions ``f^K(x, t)`` cutting out a copath; even slots first."""

    shape: Shape
    functions: tuple

    def __post_init__(self):
        sh = self.shape
        if len(self.functions) != sh.p + sh.q:
            raise FormError("number of copath functions must equal p+q")
        for k, f in zip(sh.cols, self.functions):
            par = f.parity()
            if f.terms and (par == INHOMOGENEOUS or int(par) != sh.col_parity(k)):
                raise FormError(f"f^{k} must have parity {sh.col_parity(k)}")

    def momenta_map(self) -> dict:
        sh = self.shape
        out = {}
        for k, f in zip(sh.cols, self.functions):
            for a in sh.rows:
                out[sh.mom(a, k)] = graded_derivative(f, sh.x(a))
            for g in sh.vrows:
                out[sh.vel(g, k)] = graded_derivative(f, sh.t(g))
        return out


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    residuals: list = field(default_factory=list)
    checked: int = 0

    def record(self, label: str, residual: GrassmannExpr) -> None:
        self.checked += 1
        if residual.terms:
            self.passed = False
            self.residuals.append((label, residual))

    def merge(self, other: "CheckReport") -> "CheckReport":
        out = CheckReport(f"{self.name}+{other.name}", self.passed and other.passed,
                          self.residuals + other.residuals, self.checked + other.checked)
        return out

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return f"{self.name}: {state} ({self.checked} identities, {len(self.residuals)} nonzero)"


# -- derivative cache ------------------------------------------------------


class _Derivs:
    """Memoised first and second left derivatives of one expression."""

    def __init__(self, e: GrassmannExpr):
        self.e = e
        self.first: dict = {}
        self.second: dict = {}

    def d(self, z: Symbol) -> GrassmannExpr:
        v = self.first.get(z)
        if v is None:
            v = self.first[z] = graded_derivative(self.e, z)
        return v

    def dd(self, z1: Symbol, z2: Symbol) -> GrassmannExpr:
        """``d_{z1}(d_{z2} e)``."""
        key = (z1, z2)
        v = self.second.get(key)
        if v is None:
            inner = self.d(z2)
            v = self.second[key] = graded_derivative(inner, z1) if inner.terms else ZERO
        return v


# -- checkers --------------------------------------------------------------


def check_right_covariance_inf(form: LagrangianForm) -> CheckReport:
    """Infinitesimal homogeneity under ``p -> p g``, ``w -> w g``.

    Residual per column pair ``(K, L)``::

        sum_A (-1)^{A(K+L)} p_A^L dL/dp_A^K + sum_F (-1)^{F(K+L)} w_F^L dL/dw_F^K - (-1)^K delta_KL L
    """
    sh, body = form.shape, form.body
    rep = CheckReport("right-covariance")
    D = _Derivs(body)
    for k in sh.cols:
        for l in sh.cols:
            kl = sh.col_parity(k) + sh.col_parity(l)
            acc = ZERO
            for a in sh.rows:
                d = D.d(sh.mom(a, k))
                if d.terms:
                    acc = acc + _signed(GrassmannExpr.from_symbol(sh.mom(a, l)) * d, sh.row_parity(a) * kl)
            for f in sh.vrows:
                d = D.d(sh.vel(f, k))
                if d.terms:
                    acc = acc + _signed(GrassmannExpr.from_symbol(sh.vel(f, l)) * d, sh.vrow_parity(f) * kl)
            if k == l:
                acc = acc - _signed(body, sh.col_parity(k))
            rep.record(f"K={k},L={l}", acc)
    return rep


def _row_transform(sh: Shape, g: SuperMatrix) -> dict:
    """Substitution ``p -> p g``, ``w -> w g`` for a column transformation ``g``."""
    out = {}
    rows = [(sh.mom, a) for a in sh.rows] + [(sh.vel, f) for f in sh.vrows]
    for make, i in rows:
        for k in sh.cols:
            acc = ZERO
            for l in sh.cols:
                e = g[l - 1, k - 1]
                if e.terms:
                    acc = acc + GrassmannExpr.from_symbol(make(i, l)) * e
            out[make(i, k)] = acc
    return out


def check_right_covariance_finite(form: LagrangianForm, g: SuperMatrix, point: dict | None = None) -> CheckReport:
    """``Lambda(p g, w g) = Lambda(p, w) * Ber' g`` with ``Ber'`` chosen by the kind."""
    sh = form.shape
    if g.row_parities != sh.col_matrix_parities() or g.col_parities != sh.col_matrix_parities():
        raise FormError("transformation must act on the codegree columns")
    factor = ber(g) if form.kind == "first" else ber_variant(g, 0, 1, point)
    lhs = substitute(form.body, _row_transform(sh, g))
    rep = CheckReport("right-covariance-finite")
    rep.record("Lambda(pg)-Lambda(p)Ber'g", lhs - form.body * factor)
    return rep


def check_left_covariance(form: LagrangianForm) -> CheckReport:
    """Infinitesimal homogeneity under ``w -> h w``.

    Residual per row pair ``(F, G)``: ``sum_K w_G^K dL/dw_F^K - (-1)^F delta_FG L``.
    """
    sh, body = form.shape, form.body
    rep = CheckReport("left-covariance")
    D = _Derivs(body)
    for f in sh.vrows:
        for g in sh.vrows:
            acc = ZERO
            for k in sh.cols:
                d = D.d(sh.vel(f, k))
                if d.terms:
                    acc = acc + GrassmannExpr.from_symbol(sh.vel(g, k)) * d
            if f == g:
                acc = acc - _signed(body, sh.vrow_parity(f))
            rep.record(f"F={f},G={g}", acc)
    return rep


def check_left_covariance_finite(form: LagrangianForm, h: SuperMatrix, point: dict | None = None) -> CheckReport:
    """``Lambda(p, h w) = Ber' h * Lambda(p, w)``."""
    sh = form.shape
    if h.row_parities != sh.vrow_matrix_parities() or h.col_parities != sh.vrow_matrix_parities():
        raise FormError("transformation must act on the velocity rows")
    mapping = {}
    for f in sh.vrows:
        for k in sh.cols:
            acc = ZERO
            for g in sh.vrows:
                e = h[f - 1, g - 1]
                if e.terms:
                    acc = acc + e * GrassmannExpr.from_symbol(sh.vel(g, k))
            mapping[sh.vel(f, k)] = acc
    factor = ber(h) if form.kind == "first" else ber_variant(h, 0, 1, point)
    rep = CheckReport("left-covariance-finite")
    rep.record("Lambda(hw)-Ber'h Lambda(w)", substitute(form.body, mapping) - factor * form.body)
    return rep


def check_admissible(form: LagrangianForm) -> CheckReport:
    """Invariance under ``p_A -> p_A + a_A^F w_F``; residual ``sum_K w_F^K dL/dp_A^K`` per ``(F, A)``."""
    sh = form.shape
    rep = CheckReport("admissibility")
    D = _Derivs(form.body)
    for f in sh.vrows:
        for a in sh.rows:
            acc = ZERO
            for k in sh.cols:
                d = D.d(sh.mom(a, k))
                if d.terms:
                    acc = acc + GrassmannExpr.from_symbol(sh.vel(f, k)) * d
            rep.record(f"F={f},A={a}", acc)
    return rep


def check_fundamental(form: LagrangianForm) -> CheckReport:
    """Graded-symmetrised second derivatives over all generalized rows.

    For rows ``I <= J`` (coordinates first, then parameters) and columns
    ``K, L``, with ``P_I^K`` the momentum or velocity entry::

        d_{P_I^K} d_{P_J^L} L + (-1)^{IJ + (I+J)L} d_{P_J^K} d_{P_I^L} L
    """
    sh = form.shape
    rep = CheckReport("fundamental")
    D = _Derivs(form.body)
    grows = sh.grows()
    for i, gi in enumerate(grows):
        pi = sh.grow_parity(gi)
        for gj in grows[i:]:
            pj = sh.grow_parity(gj)
            for k in sh.cols:
                for l in sh.cols:
                    t1 = D.dd(sh.entry(gi, k), sh.entry(gj, l))
                    t2 = D.dd(sh.entry(gj, k), sh.entry(gi, l))
                    res = t1 + _signed(t2, pi * pj + (pi + pj) * sh.col_parity(l))
                    rep.record(f"I={gi[0]}{gi[1]},J={gj[0]}{gj[1]},K={k},L={l}", res)
    return rep


def check_all(form: LagrangianForm) -> list[CheckReport]:
    return [check_right_covariance_inf(form), check_left_covariance(form),
            check_admissible(form), check_fundamental(form)]


# -- total derivatives -----------------------------------------------------


def total_derivative(e: GrassmannExpr, sh: Shape, g) -> GrassmannExpr:
    """Total derivative along generalized row ``g`` through the second-derivative symbols.

    ``d_I G = dG/dx^I + sum_{J,L} f_IJ^L dG/dP_J^L`` (the first term only for
    coordinate rows; forms have no explicit ``t`` dependence).
    """
    parts = [graded_derivative(e, sh.x(g[1]))] if g[0] == "x" else []
    syms = e.symbols()
    for gj in sh.grows():
        for l in sh.cols:
            z = sh.entry(gj, l)
            if z not in syms:
                continue
            jet = sh.jet(g, gj, l)
            if jet is None:
                continue
            sign, j = jet
            parts.append(_signed(GrassmannExpr.from_symbol(j) * graded_derivative(e, z), sign < 0))
    return gsum(parts)


def _new_row_renaming(sh: Shape) -> dict:
    """Shift odd velocity rows ``F > r`` to ``F + 1``, freeing even row ``r + 1``."""
    new = sh.with_(r=sh.r + 1)
    out = {}
    for f in range(sh.r + 1, sh.r + sh.s + 1):
        for k in sh.cols:
            out[sh.vel(f, k)] = GrassmannExpr.from_symbol(new.vel(f + 1, k))
    return out


def _differential_body(form: LagrangianForm, jet_free: bool) -> GrassmannExpr:
    sh, body = form.shape, form.body
    new = sh.with_(r=sh.r + 1)
    D = _Derivs(body)
    parts = []
    for k in sh.cols:
        pk = sh.col_parity(k)
        inner = []
        for a in sh.rows:
            d = D.d(sh.mom(a, k))
            if not d.terms:
                continue
            if jet_free:
                term = graded_derivative(d, sh.x(a))
            else:
                term = total_derivative(d, sh, ("x", a))
            inner.append(_signed(term, sh.row_parity(a) * pk))
        if not jet_free:
            for f in sh.vrows:
                d = D.d(sh.vel(f, k))
                if d.terms:
                    inner.append(_signed(total_derivative(d, sh, ("t", f)), sh.vrow_parity(f) * pk))
        inner = gsum(inner)
        if inner.terms:
            parts.append(GrassmannExpr.from_symbol(new.vel(sh.r + 1, k)) * inner)
    acc = gsum(parts)
    acc = _signed(acc, sh.r)
    ren = _new_row_renaming(sh)
    return substitute(acc, ren) if ren else acc


def differential_D(form: LagrangianForm, *, jet_free: bool = False) -> LagrangianForm:
    """The differential, adding an even velocity row ``w_{r+1}``.

    Odd velocity rows are renumbered up by one.  By default the total
    derivatives are expanded through second-derivative symbols of the
    copath; these cancel exactly when the fundamental equations hold, and
    otherwise remain in the body (see :attr:`LagrangianForm.jet_terms`).
    ``jet_free=True`` uses only partial ``x`` derivatives.
    """
    body = _differential_body(form, jet_free)
    return LagrangianForm(form.shape.with_(r=form.shape.r + 1), body, form.kind, "mixed")


def _drop_column(sh: Shape, k: int) -> dict:
    new = sh.with_(p=sh.p - 1) if k <= sh.p else sh.with_(q=sh.q - 1)
    out = {}
    for kk in sh.cols:
        if kk > k:
            for a in sh.rows:
                out[sh.mom(a, kk)] = GrassmannExpr.from_symbol(new.mom(a, kk - 1))
            for f in sh.vrows:
                out[sh.vel(f, kk)] = GrassmannExpr.from_symbol(new.vel(f, kk - 1))
    return out


def dual_differential(form: LagrangianForm) -> LagrangianForm:
    """``(-1)^{k-1} d/dx^A dL/dp_A^k`` for the last even column ``k = p``."""
    sh = form.shape
    if sh.r or sh.s:
        raise FormError("the dual differential acts on dual forms (additional degree 0|0)")
    k = sh.p
    if k < 1:
        raise FormError("even codegree must be at least 1")
    acc = ZERO
    for a in sh.rows:
        d = graded_derivative(form.body, sh.mom(a, k))
        if d.terms:
            acc = acc + graded_derivative(d, sh.x(a))
    acc = _signed(acc, k - 1)
    ren = _drop_column(sh, k)
    if ren:
        acc = substitute(acc, ren)
    return LagrangianForm(sh.with_(p=k - 1), acc, form.kind, "dual")


def check_closed(form: LagrangianForm) -> CheckReport:
    """``sum_A (-1)^{AK} d_A(dL/dp_A^K) = 0`` for each ``K``, as an identity in ``(x, p, f'')``."""
    sh = form.shape
    rep = CheckReport("closed")
    D = _Derivs(form.body)
    for k in sh.cols:
        acc = ZERO
        for a in sh.rows:
            d = D.d(sh.mom(a, k))
            if d.terms:
                acc = acc + _signed(total_derivative(d, sh, ("x", a)), sh.row_parity(a) * sh.col_parity(k))
        for f in sh.vrows:
            d = D.d(sh.vel(f, k))
            if d.terms:
                acc = acc + _signed(total_derivative(d, sh, ("t", f)), sh.vrow_parity(f) * sh.col_parity(k))
        rep.record(f"K={k}", acc)
    return rep


# -- variations ------------------------------------------------------------


def variation_integrand(form: LagrangianForm, f: CopathSpec, *, require_covariant: bool = True) -> list:
    """Euler-Lagrange brackets along a concrete copath, one per slot ``K``.

    Substitutes ``p = df/dx``, ``w = df/dt`` into the first derivatives and
    differentiates in ``x`` and ``t``::

        E_K = sum_A (-1)^{AK} d/dx^A (dL/dp_A^K) + sum_F (-1)^{FK} d/dt^F (dL/dw_F^K)
    """
    sh = form.shape
    if f.shape != sh:
        raise FormError("copath shape does not match the form")
    if require_covariant and not check_right_covariance_inf(form):
        raise FormError("variation formula requires a right-covariant Lagrangian")
    subs = f.momenta_map()
    out = []
    for k in sh.cols:
        acc = ZERO
        for a in sh.rows:
            d = graded_derivative(form.body, sh.mom(a, k))
            if d.terms:
                acc = acc + _signed(graded_derivative(substitute(d, subs), sh.x(a)), sh.row_parity(a) * sh.col_parity(k))
        for g in sh.vrows:
            d = graded_derivative(form.body, sh.vel(g, k))
            if d.terms:
                acc = acc + _signed(graded_derivative(substitute(d, subs), sh.t(g)), sh.vrow_parity(g) * sh.col_parity(k))
        out.append(acc)
    return out


def generic_frame(sh: Shape) -> SuperMatrix:
    """Matrix of free symbols ``z[L][K]`` with parity ``L~ + K~``."""
    pars = sh.col_matrix_parities()
    rows = tuple(tuple(GrassmannExpr.from_symbol(symbol(f"z[{l}][{k}]", sh.col_parity(l) ^ sh.col_parity(k)))
                       for k in sh.cols) for l in sh.cols)
    return SuperMatrix(pars, pars, rows)


def frame_variation(form: LagrangianForm, f: CopathSpec | None, Z: SuperMatrix) -> GrassmannExpr:
    """Variation under ``Y^K = f^L Z_L^K``: the covariance factor contracted with ``Z``.

    ``sum_{K,L} Z_L^K (-(-1)^K delta_KL L + sum_A (-1)^{A(K+L)} p_A^L dL/dp_A^K + (velocity terms))``.
    With ``f=None`` the momenta stay symbolic.
    """
    sh, body = form.shape, form.body
    D = _Derivs(body)
    total = ZERO
    for k in sh.cols:
        for l in sh.cols:
            z = Z[l - 1, k - 1]
            if not z.terms:
                continue
            kl = sh.col_parity(k) + sh.col_parity(l)
            acc = ZERO
            for a in sh.rows:
                d = D.d(sh.mom(a, k))
                if d.terms:
                    acc = acc + _signed(GrassmannExpr.from_symbol(sh.mom(a, l)) * d, sh.row_parity(a) * kl)
            for g in sh.vrows:
                d = D.d(sh.vel(g, k))
                if d.terms:
                    acc = acc + _signed(GrassmannExpr.from_symbol(sh.vel(g, l)) * d, sh.vrow_parity(g) * kl)
            if k == l:
                acc = acc - _signed(body, sh.col_parity(k))
            total = total + z * acc
    if f is not None:
        total = substitute(total, f.momenta_map())
    return total


def constant(sh: Shape, c=1, kind="first", role=None) -> LagrangianForm:
    role = role or ("dual" if not (sh.r or sh.s) else "mixed")
    return LagrangianForm(sh, GrassmannExpr.const(c), kind, role)


__all__ = [
    "Shape", "LagrangianForm", "CopathSpec", "CheckReport", "FormError", "coordinate",
    "check_right_covariance_inf", "check_right_covariance_finite", "check_left_covariance",
    "check_left_covariance_finite", "check_admissible", "check_fundamental", "check_all", "check_closed",
    "total_derivative", "differential_D", "dual_differential", "variation_integrand", "frame_variation",
    "generic_frame", "constant",
]
