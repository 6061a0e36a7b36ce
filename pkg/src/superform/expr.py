"""Canonical elements of a Grassmann algebra over rational functions.

A :class:`GrassmannExpr` is a finite sum ``sum_I c_I * theta_I`` where
``theta_I`` is a product of distinct odd symbols in increasing order and
``c_I`` is a reduced rational function of even symbols.  Every instance is
stored in this normal form, so ``==`` decides equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq, mpz

from .poly import ONE_Q, Poly, RatFunc, as_mpq, format_mono, format_poly, format_ratfunc, ratfunc_sum
from .symbols import Parity, Symbol, SymbolTable

INHOMOGENEOUS = "inhomogeneous"


class ParityError(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


def _odd_mul(a: tuple, b: tuple):
    """Product of two sorted odd monomials: ``(sign, mono)``; sign 0 if they share a factor."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    la, lb = len(a), len(b)
    if a[-1].key < b[0].key:
        return 1, a + b
    out = []
    i = j = 0
    swaps = 0
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x is y:
            return 0, None
        if x.key < y.key:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
            swaps += la - i
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if swaps & 1 else 1), tuple(out)


def _coerce(x) -> "GrassmannExpr":
    if isinstance(x, GrassmannExpr):
        return x
    if isinstance(x, Symbol):
        return GrassmannExpr.from_symbol(x)
    if isinstance(x, (int, mpz, mpq, Fraction, Rational)):
        return GrassmannExpr.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Grassmann expression")


class GrassmannExpr:
    __slots__ = ("terms", "_hash", "_syms")

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}
        self._hash = None
        self._syms = None

    # -- construction ---------------------------------------------------

    @staticmethod
    def const(c) -> "GrassmannExpr":
        c = as_mpq(c)
        return GrassmannExpr({(): RatFunc(Poly.const(c))}) if c else GrassmannExpr()

    @staticmethod
    def from_symbol(s: Symbol) -> "GrassmannExpr":
        if s.is_odd:
            return GrassmannExpr({(s,): RatFunc.const(1)})
        return GrassmannExpr({(): RatFunc.var(s)})

    @staticmethod
    def from_ratfunc(r: RatFunc) -> "GrassmannExpr":
        return GrassmannExpr({(): r}) if not r.is_zero() else GrassmannExpr()

    # -- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def body(self) -> RatFunc:
        """Coefficient of the empty odd monomial."""
        return self.terms.get((), RatFunc(Poly()))

    def is_even_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def symbols(self) -> frozenset:
        if self._syms is None:
            out = set()
            for mono, c in self.terms.items():
                out.update(mono)
                out.update(c.symbols())
            self._syms = frozenset(out)
        return self._syms

    def parity(self):
        """``Parity.EVEN``/``Parity.ODD``, or ``"inhomogeneous"``.  Zero counts as even."""
        ps = {len(m) & 1 for m in self.terms}
        if len(ps) > 1:
            return INHOMOGENEOUS
        return Parity(ps.pop()) if ps else Parity.EVEN

    def max_odd_degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, GrassmannExpr):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "GrassmannExpr":
        other = _coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m)
            if v is None:
                t[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del t[m]
                else:
                    t[m] = v
        return GrassmannExpr(t)

    __radd__ = __add__

    def __neg__(self) -> "GrassmannExpr":
        return GrassmannExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GrassmannExpr":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "GrassmannExpr":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "GrassmannExpr":
        other = _coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return GrassmannExpr()
        t: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                sign, m = _odd_mul(ma, mb)
                if not sign:
                    continue
                c = ca * cb
                t.setdefault(m, []).append(c if sign > 0 else -c)
        out = {}
        for m, cs in t.items():
            c = cs[0] if len(cs) == 1 else ratfunc_sum(cs)
            if not c.is_zero():
                out[m] = c
        return GrassmannExpr(out)

    def __rmul__(self, other) -> "GrassmannExpr":
        return _coerce(other) * self

    def scale(self, c) -> "GrassmannExpr":
        c = as_mpq(c)
        if not c:
            return GrassmannExpr()
        if c == ONE_Q:
            return self
        return GrassmannExpr({m: v.scale(c) for m, v in self.terms.items()})

    def scale_ratfunc(self, r: RatFunc) -> "GrassmannExpr":
        if r.is_zero():
            return GrassmannExpr()
        t = {}
        for m, c in self.terms.items():
            v = c * r
            if not v.is_zero():
                t[m] = v
        return GrassmannExpr(t)

    def inverse(self) -> "GrassmannExpr":
        """Inverse of an element whose body is a nonzero rational function.

        ``(b + n)^-1 = b^-1 * sum_k (-n b^-1)^k``; the series stops because
        ``n`` is nilpotent.
        """
        b = self.body()
        if b.is_zero():
            raise NotInvertible("division by an expression with zero even part")
        b_inv = RatFunc(b.den, b.num)
        nil = GrassmannExpr({m: c for m, c in self.terms.items() if m})
        if not nil.terms:
            return GrassmannExpr.from_ratfunc(b_inv)
        x = -(nil.scale_ratfunc(b_inv))
        total = GrassmannExpr.const(1)
        power = total
        while True:
            power = power * x
            if not power.terms:
                break
            total = total + power
        return total.scale_ratfunc(b_inv)

    def __truediv__(self, other) -> "GrassmannExpr":
        other = _coerce(other)
        if other.is_even_scalar() and other.terms:
            return self.scale_ratfunc(other.body().inverse())
        return self * other.inverse()

    def __rtruediv__(self, other) -> "GrassmannExpr":
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "GrassmannExpr":
        if n < 0:
            return self.inverse() ** (-n)
        result = GrassmannExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus --------------------------------------------------------

    def derivative(self, z: Symbol) -> "GrassmannExpr":
        return graded_derivative(self, z)

    def substitute(self, mapping: dict) -> "GrassmannExpr":
        return substitute(self, mapping)

    def body_value(self, point: dict) -> mpq:
        """Evaluate the body at a point given as ``{Symbol: rational}``."""
        return self.body().evaluate({s: as_mpq(v) for s, v in point.items()})

    # -- printing --------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]), [s.key for s in mc[0]]))

    def __str__(self):
        return format_expr(self)

    def __repr__(self):
        return f"GrassmannExpr({format_expr(self)})"


def _format_term(mono: tuple, coeff: RatFunc) -> str:
    if not mono:
        return format_ratfunc(coeff) if not coeff.is_poly() else format_poly(coeff.num)
    odd = "*".join(s.name for s in mono)
    if not coeff.is_poly():
        return f"({format_ratfunc(coeff)})*{odd}"
    p = coeff.num
    if len(p.terms) > 1:
        return f"({format_poly(p)})*{odd}"
    ((m, c),) = p.terms.items()
    neg = c < 0
    a = -c if neg else c
    parts = []
    if a != ONE_Q:
        parts.append(str(a))
    if m:
        parts.append(format_mono(m))
    parts.append(odd)
    return ("-" if neg else "") + "*".join(parts)


def format_expr(e: GrassmannExpr) -> str:
    if not e.terms:
        return "0"
    pieces = []
    for mono, coeff in e.sorted_terms():
        s = _format_term(mono, coeff)
        if not pieces:
            pieces.append(s)
        elif s.startswith("-"):
            pieces.append(" - " + s[1:])
        else:
            pieces.append(" + " + s)
    return "".join(pieces)


# -- operations exposed by the core ---------------------------------------


def gsum(exprs) -> GrassmannExpr:
    """Sum of many expressions, cancelling once per monomial and denominator."""
    t: dict = {}
    for e in exprs:
        for m, c in e.terms.items():
            t.setdefault(m, []).append(c)
    out = {}
    for m, cs in t.items():
        c = cs[0] if len(cs) == 1 else ratfunc_sum(cs)
        if not c.is_zero():
            out[m] = c
    return GrassmannExpr(out)


def mul(a, b) -> GrassmannExpr:
    return _coerce(a) * _coerce(b)


def parity_of(e: GrassmannExpr):
    return e.parity()


def graded_derivative(e: GrassmannExpr, z: Symbol) -> GrassmannExpr:
    """Left derivative with respect to ``z``.

    Odd ``z`` is anticommuted to the front of each monomial (one sign per odd
    factor passed) and stripped; even ``z`` differentiates the coefficients.
    """
    if z not in e.symbols():
        return GrassmannExpr()
    t: dict = {}
    if z.is_odd:
        for mono, c in e.terms.items():
            for i, s in enumerate(mono):
                if s is z:
                    t[mono[:i] + mono[i + 1:]] = -c if i & 1 else c
                    break
        return GrassmannExpr(t)
    for mono, c in e.terms.items():
        d = c.derivative(z)
        if not d.is_zero():
            t[mono] = d
    return GrassmannExpr(t)


def check_substitution(mapping: dict) -> None:
    for s, v in mapping.items():
        p = v.parity()
        if p == INHOMOGENEOUS:
            raise ParityError(f"value substituted for {s.name} is inhomogeneous")
        if v.terms and p is not s.parity:
            raise ParityError(f"value substituted for {s.name} has parity {p}, expected {s.parity}")


def _subst_poly(p: Poly, mapping: dict, cache: dict) -> GrassmannExpr:
    if not (p.symbols() & mapping.keys()):
        return GrassmannExpr.from_ratfunc(RatFunc(p))
    total = GrassmannExpr()
    for mono, c in p.terms.items():
        term = GrassmannExpr.const(c)
        keep = []
        for s, e in mono:
            if s in mapping:
                key = (s, e)
                v = cache.get(key)
                if v is None:
                    v = cache[key] = mapping[s] ** e
                term = term * v
            else:
                keep.append((s, e))
        if keep:
            term = term.scale_ratfunc(RatFunc(Poly({tuple(keep): ONE_Q})))
        total = total + term
    return total


def substitute(e: GrassmannExpr, mapping: dict, *, check: bool = True) -> GrassmannExpr:
    """Simultaneous substitution ``{Symbol: GrassmannExpr}`` (a ring homomorphism)."""
    mapping = {s: _coerce(v) for s, v in mapping.items()}
    if check:
        check_substitution(mapping)
    if not (e.symbols() & mapping.keys()):
        return e
    cache: dict = {}
    den_cache: dict = {}
    total = GrassmannExpr()
    for mono, c in e.terms.items():
        if c.symbols() & mapping.keys():
            coeff = _subst_poly(c.num, mapping, cache)
            if not c.is_poly():
                dk = c.den
                inv = den_cache.get(dk)
                if inv is None:
                    inv = den_cache[dk] = _subst_poly(c.den, mapping, cache).inverse()
                coeff = coeff * inv
        else:
            coeff = GrassmannExpr({(): c})
        if mono:
            odd_part = GrassmannExpr.const(1)
            plain = []
            for s in mono:
                if s in mapping:
                    if plain:
                        odd_part = odd_part * GrassmannExpr({tuple(plain): RatFunc.const(1)})
                        plain = []
                    odd_part = odd_part * mapping[s]
                else:
                    plain.append(s)
            if plain:
                odd_part = odd_part * GrassmannExpr({tuple(plain): RatFunc.const(1)})
            coeff = coeff * odd_part
        total = total + coeff
    return total


def rename(e: GrassmannExpr, mapping: dict) -> GrassmannExpr:
    """Substitution of symbols by symbols of the same parity."""
    return substitute(e, {s: GrassmannExpr.from_symbol(t) for s, t in mapping.items()}, check=True)


def normalize(tree, table: SymbolTable) -> GrassmannExpr:
    """Evaluate a raw expression tree (see :mod:`superform.parsing`) to normal form."""
    kind = tree[0]
    if kind == "num":
        return GrassmannExpr.const(tree[1])
    if kind == "sym":
        return GrassmannExpr.from_symbol(table.lookup(tree[1]))
    if kind == "neg":
        return -normalize(tree[1], table)
    if kind == "pow":
        return normalize(tree[1], table) ** tree[2]
    a = normalize(tree[1], table)
    b = normalize(tree[2], table)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown node {kind!r}")


def sym(s: Symbol) -> GrassmannExpr:
    return GrassmannExpr.from_symbol(s)


ZERO = GrassmannExpr()
ONE = GrassmannExpr.const(1)
