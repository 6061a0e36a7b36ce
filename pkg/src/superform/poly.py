"""Sparse multivariate polynomials and reduced rational functions over QQ.

Only even symbols ever appear here.  A monomial is a tuple of ``(Symbol, exp)``
pairs sorted by symbol key; a polynomial maps monomials to ``mpq``.

Rational functions are kept reduced: ``gcd(num, den) == 1`` and the
denominator has coprime integer coefficients with a positive leading
coefficient (graded order on monomials, natural order on symbols).  Two
rational functions are therefore equal iff their stored pairs are equal.
Multivariate gcds that cannot be settled by monomial shortcuts are delegated
to FLINT.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd as _igcd

from gmpy2 import mpq, mpz
from flint import fmpq, fmpq_mpoly_ctx

ZERO_Q = mpq(0)
ONE_Q = mpq(1)


def as_mpq(c) -> mpq:
    if isinstance(c, mpq):
        return c
    if isinstance(c, (int, mpz)):
        return mpq(c)
    num = getattr(c, "numerator", None)
    den = getattr(c, "denominator", None)
    if num is not None and den is not None:
        return mpq(int(num), int(den))
    raise TypeError(f"not a rational number: {c!r}")


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        sa, ea = a[i]
        sb, eb = b[j]
        if sa is sb:
            out.append((sa, ea + eb))
            i += 1
            j += 1
        elif sa.key < sb.key:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_degree(m: tuple) -> int:
    return sum(e for _, e in m)


def mono_order_key(m: tuple):
    return (mono_degree(m), tuple((s.key, e) for s, e in m))


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash", "_syms")

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}
        self._hash = None
        self._syms = None

    @staticmethod
    def const(c) -> "Poly":
        c = as_mpq(c)
        return Poly({(): c}) if c else Poly()

    @staticmethod
    def var(s) -> "Poly":
        return Poly({((s, 1),): ONE_Q})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and () in t)

    def const_value(self) -> mpq:
        return self.terms.get((), ZERO_Q)

    def is_one(self) -> bool:
        t = self.terms
        return len(t) == 1 and t.get(()) == ONE_Q

    def symbols(self) -> frozenset:
        if self._syms is None:
            self._syms = frozenset(s for m in self.terms for s, _ in m)
        return self._syms

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "Poly") -> "Poly":
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
                if v:
                    t[m] = v
                else:
                    del t[m]
        return Poly(t)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = as_mpq(c)
        if not c:
            return Poly()
        if c == ONE_Q:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) == 1 and () in a:
            return other.scale(a[()])
        if len(b) == 1 and () in b:
            return self.scale(b[()])
        t: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                v = t.get(m)
                t[m] = ca * cb if v is None else v + ca * cb
        return Poly({m: c for m, c in t.items() if c})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_mono(self, mono: tuple, c=ONE_Q) -> "Poly":
        return Poly({mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def derivative(self, s) -> "Poly":
        if s not in self.symbols():
            return Poly()
        t: dict = {}
        for m, c in self.terms.items():
            for i, (sym, e) in enumerate(m):
                if sym is s:
                    nm = m[:i] + ((s, e - 1),) + m[i + 1:] if e > 1 else m[:i] + m[i + 1:]
                    t[nm] = t.get(nm, ZERO_Q) + c * e
                    break
        return Poly({m: c for m, c in t.items() if c})

    def leading(self):
        m = max(self.terms, key=mono_order_key)
        return m, self.terms[m]

    def evaluate(self, values: dict) -> mpq:
        total = ZERO_Q
        for m, c in self.terms.items():
            v = c
            for s, e in m:
                v *= values[s] ** e
            total += v
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_order_key(mc[0]), reverse=True)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def format_mono(m: tuple) -> str:
    return "*".join(s.name if e == 1 else f"{s.name}^{e}" for s, e in m)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = str(a)
        elif a == ONE_Q:
            body = format_mono(m)
        else:
            body = f"{a}*{format_mono(m)}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- gcd --------------------------------------------------------------------


@lru_cache(maxsize=64)
def _ctx(nvars: int):
    return fmpq_mpoly_ctx.get(tuple(f"g{i}" for i in range(nvars)), "lex")


def _to_flint(p: Poly, index: dict, ctx):
    n = len(index)
    d = {}
    for m, c in p.terms.items():
        e = [0] * n
        for s, k in m:
            e[index[s]] = k
        d[tuple(e)] = fmpq(int(c.numerator), int(c.denominator))
    return ctx.from_dict(d)


def _from_flint(q, gens: list) -> Poly:
    t = {}
    for e, c in q.to_dict().items():
        m = tuple((gens[i], int(k)) for i, k in enumerate(e) if k)
        t[m] = mpq(int(c.p), int(c.q))
    return Poly(t)


def _monomial_content(p: Poly) -> dict:
    it = iter(p.terms)
    content = dict(next(it))
    for m in it:
        if not content:
            break
        md = dict(m)
        for s in list(content):
            e = md.get(s)
            if e is None:
                del content[s]
            elif e < content[s]:
                content[s] = e
    return content


def _divide_mono(p: Poly, content: dict) -> Poly:
    if not content:
        return p
    t = {}
    for m, c in p.terms.items():
        nm = []
        for s, e in m:
            k = e - content.get(s, 0)
            if k:
                nm.append((s, k))
        t[tuple(nm)] = c
    return Poly(t)


def _flint_pair(a: Poly, b: Poly):
    gens = sorted(a.symbols() | b.symbols(), key=lambda s: s.key)
    index = {s: i for i, s in enumerate(gens)}
    ctx = _ctx(len(gens))
    return _to_flint(a, index, ctx), _to_flint(b, index, ctx), gens


def _strip_common_monomial(a: Poly, b: Poly) -> tuple[Poly, Poly, dict]:
    ca = _monomial_content(a)
    cb = _monomial_content(b)
    common = {s: min(e, cb[s]) for s, e in ca.items() if s in cb}
    if common:
        a = _divide_mono(a, common)
        b = _divide_mono(b, common)
    return a, b, common


def _cancel(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Divide ``num`` and ``den`` by their gcd (up to a scalar)."""
    if num.is_const() or den.is_const():
        return num, den
    num, den, _ = _strip_common_monomial(num, den)
    if len(num.terms) == 1 or len(den.terms) == 1:
        return num, den
    if not num.symbols() & den.symbols():
        return num, den
    fn, fd, gens = _flint_pair(num, den)
    g = fn.gcd(fd)
    if g.is_constant():
        return num, den
    return _from_flint(fn / g, gens), _from_flint(fd / g, gens)


def _exact_div(a: Poly, b: Poly) -> Poly:
    if b.is_const():
        return a.scale(1 / b.const_value())
    fa, fb, gens = _flint_pair(a, b)
    return _from_flint(fa / fb, gens)


def _gcd_split(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """``(g, a/g, b/g)`` with ``g = gcd(a, b)`` up to a scalar."""
    if a.is_const() or b.is_const():
        return _POLY_ONE, a, b
    a2, b2, common = _strip_common_monomial(a, b)
    g = Poly({tuple(sorted(common.items(), key=lambda se: se[0].key)): ONE_Q}) if common else _POLY_ONE
    if len(a2.terms) > 1 and len(b2.terms) > 1 and a2.symbols() & b2.symbols():
        fa, fb, gens = _flint_pair(a2, b2)
        h = fa.gcd(fb)
        if not h.is_constant():
            g = g * _from_flint(h, gens)
            a2, b2 = _from_flint(fa / h, gens), _from_flint(fb / h, gens)
    return g, a2, b2


@lru_cache(maxsize=4096)
def _den_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    return _gcd_split(a, b)


@lru_cache(maxsize=8192)
def _derivative_parts(d: Poly, s) -> tuple[Poly, Poly, Poly, Poly]:
    """``(g, u, v, c)`` with ``g = gcd(d, dd/ds)``, ``d = g u``, ``dd/ds = g v`` and
    ``c`` the part of ``g`` coprime to ``u``."""
    g, u, v = _gcd_split(d, d.derivative(s))
    c = g
    while not c.is_const():
        h, c2, _ = _gcd_split(c, u)
        if h.is_const():
            break
        c = c2
    return g, u, v, c


@lru_cache(maxsize=8192)
def _den_factor(den: Poly) -> mpq:
    """Scalar making ``den`` integral, primitive, with positive leading coefficient."""
    lcm_den = mpz(1)
    g = mpz(0)
    for c in den.terms.values():
        d = c.denominator
        lcm_den = lcm_den * d // _igcd(lcm_den, d)
    for c in den.terms.values():
        g = _igcd(g, (c * lcm_den).numerator)
    factor = mpq(lcm_den, g)
    _, lc = den.leading()
    return -factor if lc < 0 else factor


def _normalize_den(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    factor = _den_factor(den)
    if factor == ONE_Q:
        return num, den
    return num.scale(factor), den.scale(factor)


@lru_cache(maxsize=8192)
def _irreducible_factors(den: Poly) -> tuple:
    """Distinct irreducible factors of ``den`` with their symbol sets."""
    gens = sorted(den.symbols(), key=lambda s: s.key)
    index = {s: i for i, s in enumerate(gens)}
    _, facs = _to_flint(den, index, _ctx(len(gens))).factor()
    return tuple((f, _from_flint(f, gens).symbols()) for f, _ in facs)


def _split_by_den(t: Poly, den: Poly) -> tuple[Poly, Poly, Poly]:
    """``_gcd_split(t, den)`` with a cheap exit when nothing can cancel."""
    if den.is_const() or not _may_share_factor(t, den):
        return _POLY_ONE, t, den
    return _gcd_split(t, den)


def _may_share_factor(t: Poly, den: Poly) -> bool:
    """False when no irreducible factor of ``den`` can divide ``t``.

    A nonzero multiple of ``P`` involves every variable of ``P``.
    """
    syms = t.symbols()
    return any(fs <= syms for _, fs in _irreducible_factors(den))


_POLY_ONE = Poly.const(1)
_POLY_ZERO = Poly()


class RatFunc:
    """Reduced quotient of polynomials in even symbols."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        if den is None or den.is_one():
            self.num, self.den = num, _POLY_ONE
        elif reduced:
            self.num, self.den = num, den
        else:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                self.num, self.den = _POLY_ZERO, _POLY_ONE
            elif den.is_const():
                self.num, self.den = num.scale(1 / den.const_value()), _POLY_ONE
            elif not _may_share_factor(num, den):
                self.num, self.den = _normalize_den(num, den)
            else:
                n, d = _cancel(num, den)
                if d.is_const():
                    self.num, self.den = n.scale(1 / d.const_value()), _POLY_ONE
                else:
                    self.num, self.den = _normalize_den(n, d)
        self._hash = None

    @staticmethod
    def _make(num: Poly, den: Poly) -> "RatFunc":
        """From a pair already known to be coprime."""
        if den.is_const():
            return RatFunc(num.scale(1 / den.const_value()))
        if num.is_zero():
            return RatFunc(_POLY_ZERO)
        n, d = _normalize_den(num, den)
        return RatFunc(n, d, reduced=True)

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly.const(c))

    @staticmethod
    def var(s) -> "RatFunc":
        return RatFunc(Poly.var(s))

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_poly(self) -> bool:
        return self.den is _POLY_ONE or self.den.is_one()

    def is_const(self) -> bool:
        return self.is_poly() and self.num.is_const()

    def symbols(self) -> frozenset:
        if self.is_poly():
            return self.num.symbols()
        return self.num.symbols() | self.den.symbols()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            if d1.is_one():
                return RatFunc(self.num + other.num)
            return RatFunc(self.num + other.num, d1)
        # Henrici: with g = gcd(d1, d2) only g can share factors with the new numerator
        g, d1r, d2r = _den_gcd(d1, d2)
        t = self.num * d2r + other.num * d1r
        if t.is_zero():
            return RatFunc(_POLY_ZERO)
        if g.is_const():
            return RatFunc._make(t, d1 * d2r)
        h, t, gr = _split_by_den(t, g)
        return RatFunc._make(t, d1r * d2r * gr)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero() or other.is_zero():
            return RatFunc(_POLY_ZERO)
        if self.is_poly() and other.is_poly():
            return RatFunc(self.num * other.num)
        if self.is_const():
            return RatFunc(other.num.scale(self.num.const_value()), other.den, reduced=True)
        if other.is_const():
            return RatFunc(self.num.scale(other.num.const_value()), self.den, reduced=True)
        # only the cross pairs can share factors
        _, n1, d2 = _split_by_den(self.num, other.den)
        _, n2, d1 = _split_by_den(other.num, self.den)
        return RatFunc._make(n1 * n2, d1 * d2)

    def scale(self, c) -> "RatFunc":
        c = as_mpq(c)
        if not c:
            return RatFunc(_POLY_ZERO)
        return RatFunc(self.num.scale(c), self.den, reduced=True)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def derivative(self, s) -> "RatFunc":
        if self.is_poly():
            return RatFunc(self.num.derivative(s))
        dn = self.num.derivative(s)
        d = self.den
        if s not in d.symbols():
            return RatFunc(dn, d) if dn.terms else RatFunc(_POLY_ZERO)
        # d = g u, d' = g v: (n'd - n d')/d^2 = (n'u - n v)/(d u), and only the
        # part c of g coprime to u can cancel
        g, u, v, c = _derivative_parts(d, s)
        t = dn * u - self.num * v
        if t.is_zero():
            return RatFunc(_POLY_ZERO)
        den = d * u
        if not c.is_const():
            h, t, _ = _split_by_den(t, c)
            if not h.is_const():
                den = _exact_div(den, h)
        return RatFunc._make(t, den)

    def evaluate(self, values: dict) -> mpq:
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(values) / d

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)})"


def ratfunc_sum(items) -> RatFunc:
    """Sum with one cancellation per distinct denominator."""
    groups: dict = {}
    for r in items:
        if r.is_zero():
            continue
        t = groups.get(r.den)
        if t is None:
            groups[r.den] = t = {}
        for m, c in r.num.terms.items():
            v = t.get(m)
            if v is None:
                t[m] = c
            else:
                v = v + c
                if v:
                    t[m] = v
                else:
                    del t[m]
    total = RatFunc(_POLY_ZERO)
    for den, t in groups.items():
        if t:
            total = total + RatFunc(Poly(t), den)
    return total


def format_ratfunc(r: RatFunc) -> str:
    if r.is_poly():
        return format_poly(r.num)
    num = format_poly(r.num)
    if len(r.num.terms) > 1:
        num = f"({num})"
    den = format_poly(r.den)
    if len(r.den.terms) > 1 or len(next(iter(r.den.terms))) > 1:
        den = f"({den})"
    return f"{num}/{den}"
