"""Parity-graded matrices over Grassmann expressions and their Berezinians."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from gmpy2 import mpq

from .expr import INHOMOGENEOUS, ONE, ZERO, GrassmannExpr, NotInvertible, graded_derivative, substitute
from .poly import as_mpq
from .symbols import Parity, Symbol


class ShapeError(ValueError):
    pass


class SingularBlock(NotInvertible):
    pass


class BerezinianMismatch(ArithmeticError):
    pass


def _par(p) -> Parity:
    return Parity(int(p))


@dataclass(frozen=True)
class SuperMatrix:
    row_parities: tuple
    col_parities: tuple
    entries: tuple

    def __post_init__(self):
        rows = tuple(_par(p) for p in self.row_parities)
        cols = tuple(_par(p) for p in self.col_parities)
        object.__setattr__(self, "row_parities", rows)
        object.__setattr__(self, "col_parities", cols)
        entries = tuple(tuple(GrassmannExpr.const(e) if not isinstance(e, GrassmannExpr) else e for e in row)
                        for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != len(rows) or any(len(r) != len(cols) for r in entries):
            raise ShapeError("entry grid does not match the declared parities")
        for i, row in enumerate(entries):
            for j, e in enumerate(row):
                if not e.terms:
                    continue
                p = e.parity()
                if p == INHOMOGENEOUS or p is not rows[i] + cols[j]:
                    raise ShapeError(f"entry ({i},{j}) has parity {p}, expected {rows[i] + cols[j]}")

    @classmethod
    def from_blocks(cls, a, b, c, d) -> "SuperMatrix":
        """Assemble ``[[a, b], [c, d]]`` with even rows/cols first."""
        p, q = len(a), len(d)
        pc = len(a[0]) if a else len(c[0]) if c else 0
        qc = len(d[0]) if d else len(b[0]) if b else 0
        rows = [list(a[i]) + list(b[i]) if b else list(a[i]) for i in range(p)]
        rows += [list(c[i]) + list(d[i]) if c else list(d[i]) for i in range(q)]
        return cls((0,) * p + (1,) * q, (0,) * pc + (1,) * qc, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, parities) -> "SuperMatrix":
        n = len(parities)
        return cls(tuple(parities), tuple(parities),
                   tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, even_entries, odd_entries) -> "SuperMatrix":
        vals = list(even_entries) + list(odd_entries)
        pars = (0,) * len(even_entries) + (1,) * len(odd_entries)
        n = len(vals)
        return cls(pars, pars, tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return len(self.row_parities), len(self.col_parities)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.row_parities == other.row_parities and self.col_parities == other.col_parities
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.row_parities, self.col_parities, self.entries))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def submatrix(self, rows, cols) -> "SuperMatrix":
        return SuperMatrix(tuple(self.row_parities[i] for i in rows), tuple(self.col_parities[j] for j in cols),
                           tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def blocks(self):
        """Return ``(a, b, c, d)`` as plain nested lists, plus the index lists used."""
        re_ = [i for i, p in enumerate(self.row_parities) if p is Parity.EVEN]
        ro = [i for i, p in enumerate(self.row_parities) if p is Parity.ODD]
        ce = [j for j, p in enumerate(self.col_parities) if p is Parity.EVEN]
        co = [j for j, p in enumerate(self.col_parities) if p is Parity.ODD]
        E = self.entries
        grab = lambda rs, cs: [[E[i][j] for j in cs] for i in rs]
        return grab(re_, ce), grab(re_, co), grab(ro, ce), grab(ro, co), (re_, ro, ce, co)

    def map(self, fn) -> "SuperMatrix":
        return SuperMatrix(self.row_parities, self.col_parities,
                           tuple(tuple(fn(e) for e in row) for row in self.entries))

    def substitute(self, mapping) -> "SuperMatrix":
        return self.map(lambda e: substitute(e, mapping))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


# -- plain (ungraded) helpers on lists of lists ----------------------------


def _mm(A, B):
    if not A or not B or not B[0]:
        return [[ZERO] * (len(B[0]) if B else 0) for _ in A]
    n = len(B)
    out = []
    for row in A:
        out_row = []
        for j in range(len(B[0])):
            acc = ZERO
            for k in range(n):
                a = row[k]
                if a.terms:
                    b = B[k][j]
                    if b.terms:
                        acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def _sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _neg(A):
    return [[-a for a in row] for row in A]


def even_det(M) -> GrassmannExpr:
    """Determinant of a square matrix with even (hence commuting) entries.

    Laplace expansion along rows, memoised on the set of used columns; no
    division is needed.
    """
    n = len(M)
    if n == 0:
        return ONE
    memo = {}

    def minor(row, cols):
        if row == n:
            return ONE
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = ZERO
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            e = M[row][j]
            if e.terms:
                sub = minor(row + 1, cols | (1 << j))
                if sub.terms:
                    t = e * sub
                    acc = acc + t if sign > 0 else acc - t
            sign = -sign
        memo[key] = acc
        return acc

    # the sign alternates over the still-free columns, which is what the loop does
    return minor(0, 0)


def even_inverse(M):
    """Inverse of an even square matrix via the adjugate."""
    n = len(M)
    if n == 0:
        return []
    det = even_det(M)
    if det.body().is_zero():
        raise SingularBlock("diagonal block is singular")
    inv_det = det.inverse()
    if n == 1:
        return [[inv_det]]
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = even_det(minor)
            if (i + j) & 1:
                cof = -cof
            out[j][i] = cof * inv_det
    return out


# -- graded operations -----------------------------------------------------


def mat_mul(A: SuperMatrix, B: SuperMatrix) -> SuperMatrix:
    if A.col_parities != B.row_parities:
        raise ShapeError("column parities of the left factor must match row parities of the right factor")
    return SuperMatrix(A.row_parities, B.col_parities, tuple(tuple(r) for r in _mm(A.entries, B.entries)))


def _is_square_graded(A: SuperMatrix):
    ne_r = sum(1 for p in A.row_parities if p is Parity.EVEN)
    ne_c = sum(1 for p in A.col_parities if p is Parity.EVEN)
    return len(A.row_parities) == len(A.col_parities) and ne_r == ne_c


def super_inverse(A: SuperMatrix) -> SuperMatrix:
    """Two-sided inverse via the Schur complement of the odd-odd block."""
    if not _is_square_graded(A):
        raise ShapeError("inverse needs a square supermatrix with matching block sizes")
    a, b, c, d, (re_, ro, ce, co) = A.blocks()
    d_inv = even_inverse(d)
    if b and c and d:
        schur = _sub(a, _mm(_mm(b, d_inv), c))
    else:
        schur = a
    s_inv = even_inverse(schur)
    if b and d:
        bd = _mm(b, d_inv)
        top_right = _neg(_mm(s_inv, bd))
    else:
        bd = [[ZERO] * len(co) for _ in re_]
        top_right = [[ZERO] * len(co) for _ in ce]
    if c and d:
        dc = _mm(d_inv, c)
        bottom_left = _neg(_mm(dc, s_inv))
        bottom_right = _add(d_inv, _mm(_mm(dc, s_inv), bd)) if b else d_inv
    else:
        bottom_left = [[ZERO] * len(re_) for _ in co]
        bottom_right = d_inv
    n = len(A.row_parities)
    out = [[ZERO] * n for _ in range(n)]
    # inverse has rows indexed like A's columns and columns like A's rows
    for bi, i in enumerate(ce):
        for bj, j in enumerate(re_):
            out[i][j] = s_inv[bi][bj]
        for bj, j in enumerate(ro):
            out[i][j] = top_right[bi][bj]
    for bi, i in enumerate(co):
        for bj, j in enumerate(re_):
            out[i][j] = bottom_left[bi][bj]
        for bj, j in enumerate(ro):
            out[i][j] = bottom_right[bi][bj]
    return SuperMatrix(A.col_parities, A.row_parities, tuple(tuple(r) for r in out))


def _ber_first_line(a, b, c, d) -> GrassmannExpr:
    if not d:
        return even_det(a)
    d_inv = even_inverse(d)
    schur = _sub(a, _mm(_mm(b, d_inv), c)) if a else a
    return even_det(schur) * even_det(d).inverse()


def _ber_second_line(a, b, c, d) -> GrassmannExpr:
    if not a:
        return even_det(d).inverse()
    a_inv = even_inverse(a)
    schur = _sub(d, _mm(_mm(c, a_inv), b)) if d else d
    return even_det(a) * even_det(schur).inverse()


def ber(A: SuperMatrix, *, cross_check: bool = False) -> GrassmannExpr:
    """Berezinian ``det(a - b d^-1 c) / det d``.

    With ``cross_check`` the form ``det a / det(d - c a^-1 b)`` is also
    evaluated (when ``a`` is invertible) and must agree.
    """
    if not _is_square_graded(A):
        raise ShapeError("Berezinian needs a square supermatrix with matching block sizes")
    a, b, c, d, _ = A.blocks()
    first = _ber_first_line(a, b, c, d)
    if cross_check and a and not even_det(a).body().is_zero():
        second = _ber_second_line(a, b, c, d)
        if first != second:
            raise BerezinianMismatch(f"{first} != {second}")
    return first


def ber_second_line(A: SuperMatrix) -> GrassmannExpr:
    if not _is_square_graded(A):
        raise ShapeError("Berezinian needs a square supermatrix with matching block sizes")
    return _ber_second_line(*A.blocks()[:4])


def _body_sign(e: GrassmannExpr, point: dict) -> int:
    v = e.body_value(point)
    if not v:
        raise SingularBlock("body determinant vanishes at the evaluation point; its sign is undefined")
    return 1 if v > 0 else -1


class EvalPoint(dict):
    """Assignment of rationals to even symbols; odd symbols evaluate to 0."""

    def __init__(self, values=None):
        super().__init__({s: as_mpq(v) for s, v in (values or {}).items()})


def block_signs(A: SuperMatrix, point: dict | None = None) -> tuple[int, int]:
    """Signs of the body determinants of the even-even and odd-odd blocks."""
    a, _, _, d, _ = A.blocks()
    point = point or {}
    return _body_sign(even_det(a), point), _body_sign(even_det(d), point)


def ber_variant(A: SuperMatrix, alpha: int, beta: int, point: dict | None = None) -> GrassmannExpr:
    """``Ber A * sign(det a)^alpha * sign(det d)^beta`` with signs read at ``point``."""
    b = ber(A)
    if not alpha and not beta:
        return b
    s0, s1 = block_signs(A, point)
    sign = (s0 if alpha else 1) * (s1 if beta else 1)
    return b if sign > 0 else -b


# -- coordinate changes ----------------------------------------------------


def jacobian(change: dict, coords: list) -> SuperMatrix:
    """Left-derivative Jacobian ``J[C][A] = d x^A / d x'^C``.

    ``change`` maps each coordinate symbol to its expression in the new
    coordinates (which reuse the same symbols).  Rows are indexed by the
    differentiation variable, columns by the component; this is a
    supertranspose of the usual layout and has the same Berezinian.
    """
    pars = tuple(s.parity for s in coords)
    rows = []
    for c in coords:
        rows.append(tuple(graded_derivative(change.get(a, GrassmannExpr.from_symbol(a)), c) for a in coords))
    return SuperMatrix(pars, pars, tuple(rows))


def compose_changes(outer: dict, inner: dict, coords: list) -> dict:
    """Coordinate change ``outer o inner`` (apply ``inner`` to the arguments of ``outer``)."""
    out = {}
    for a in coords:
        e = outer.get(a, GrassmannExpr.from_symbol(a))
        out[a] = substitute(e, inner)
    return out


def volume_factor(change: dict, coords: list, alpha: int = 0, beta: int = 0, point: dict | None = None):
    """Factor ``D_ab x / D_ab x'`` of a coordinate change."""
    return ber_variant(jacobian(change, coords), alpha, beta, point)


def random_supermatrix(rng, p: int, q: int, generators: list, *, max_num: int = 5) -> SuperMatrix:
    """Random invertible ``p|q`` supermatrix for tests and demos.

    Even entries are a rational body plus a quadratic nilpotent term, odd
    entries are rational linear combinations of the odd generators.  Bodies
    of the diagonal blocks are diagonally dominant, so the matrix is
    invertible.
    """

    def rat():
        return mpq(rng.randint(-max_num, max_num), rng.randint(1, 3))

    def odd_entry():
        acc = ZERO
        for g in generators:
            acc = acc + GrassmannExpr.from_symbol(g).scale(rat())
        return acc

    def even_entry(diag: bool, size: int):
        body = rat()
        if diag:
            body = mpq(size * max_num + rng.randint(1, max_num)) * (1 if rng.random() < 0.5 else -1)
        e = GrassmannExpr.const(body)
        if len(generators) >= 2:
            i, j = sorted(rng.sample(range(len(generators)), 2))
            e = e + (GrassmannExpr.from_symbol(generators[i]) * GrassmannExpr.from_symbol(generators[j])).scale(rat())
        return e

    pars = (0,) * p + (1,) * q
    rows = []
    for i in range(p + q):
        row = []
        for j in range(p + q):
            if pars[i] == pars[j]:
                size = p if pars[i] == 0 else q
                row.append(even_entry(i == j, size))
            else:
                row.append(odd_entry())
        rows.append(tuple(row))
    return SuperMatrix(pars, pars, tuple(rows))


def product(exprs) -> GrassmannExpr:
    return reduce(lambda a, b: a * b, exprs, ONE)
