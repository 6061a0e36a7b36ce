"""Reader for the text formats used by the command line.

Form files::

    # comments start with '#'
    dims 2|0
    codeg 2|0
    adddeg 0|0
    kind first
    role dual          # dual | mixed | path | integral
    even a b           # optional extra symbols
    odd eta
    body:
    p[1][1]*p[2][2] - p[1][2]*p[2][1]
    copath:            # optional, one function per line
    x1
    x2

Matrix files::

    shape 1|1
    even a d
    odd beta gamma
    matrix:
    a, beta
    gamma, d
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .berezin import IntegralForm, theta
from .expr import GrassmannExpr
from .forms import CopathSpec, LagrangianForm, Shape
from .parsing import parse_expr
from .stable import PathForm
from .supermatrix import SuperMatrix
from .symbols import Parity, SymbolTable

_PAIR = re.compile(r"^\s*(\d+)\s*\|\s*(\d+)\s*$")


class FormatError(ValueError):
    pass


def _pair(text: str, what: str) -> tuple[int, int]:
    m = _PAIR.match(text)
    if not m:
        raise FormatError(f"{what} must look like 'a|b', got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()[:16]


@dataclass
class FormFile:
    dims: tuple[int, int]
    codeg: tuple[int, int] | None
    adddeg: tuple[int, int]
    kind: str
    role: str
    body: str
    copath: list[str]
    extra_even: list[str]
    extra_odd: list[str]

    @property
    def shape(self) -> Shape:
        n, m = self.dims
        r, s = self.adddeg
        if self.role == "path":
            return Shape(n, m, n, m, r, s)
        p, q = self.codeg if self.codeg is not None else (0, 0)
        return Shape(n, m, p, q, r, s)

    def table(self) -> SymbolTable:
        table = self.shape.symbol_table()
        if self.role == "integral":
            for a in self.shape.rows:
                table.add(theta(a, self.dims[0]))
        if self.copath:
            for t in self.shape.params():
                table.add(t)
        for name in self.extra_even:
            table.declare(name, Parity.EVEN, "scalar")
        for name in self.extra_odd:
            table.declare(name, Parity.ODD, "generator")
        return table

    def expression(self) -> GrassmannExpr:
        return parse_expr(self.body, self.table())

    def form(self) -> LagrangianForm:
        if self.role not in ("dual", "mixed"):
            raise FormatError(f"role {self.role} is not a dual or mixed form")
        if self.codeg is None:
            raise FormatError("missing 'codeg' header")
        return LagrangianForm(self.shape, self.expression(), self.kind, self.role)

    def path_form(self) -> PathForm:
        if self.role != "path":
            raise FormatError("expected role path")
        n, m = self.dims
        r, s = self.adddeg
        return PathForm(n, m, r, s, self.expression(), self.kind)

    def integral_form(self) -> IntegralForm:
        if self.role != "integral":
            raise FormatError("expected role integral")
        return IntegralForm(*self.dims, self.expression())

    def copath_spec(self) -> CopathSpec:
        if not self.copath:
            raise FormatError("file has no copath section")
        table = self.table()
        return CopathSpec(self.shape, tuple(parse_expr(t, table) for t in self.copath))


def parse_form_file(text: str) -> FormFile:
    header: dict = {}
    extra_even: list = []
    extra_odd: list = []
    section = None
    body_lines: list = []
    copath_lines: list = []
    for raw in text.splitlines():
        line = _strip(raw)
        if not line:
            continue
        low = line.lower()
        if low in ("body:", "copath:"):
            section = low[:-1]
            continue
        if section == "body":
            body_lines.append(line)
            continue
        if section == "copath":
            copath_lines.append(line)
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("dims", "codeg", "adddeg"):
            header[key] = _pair(rest, key)
        elif key in ("kind", "role"):
            header[key] = rest
        elif key == "even":
            extra_even.extend(rest.split())
        elif key == "odd":
            extra_odd.extend(rest.split())
        else:
            raise FormatError(f"unknown header line {line!r}")
    if "dims" not in header:
        raise FormatError("missing 'dims' header")
    if not body_lines:
        raise FormatError("missing 'body:' section")
    kind = header.get("kind", "first")
    if kind not in ("first", "second"):
        raise FormatError(f"kind must be first or second, got {kind!r}")
    role = header.get("role", "dual")
    if role not in ("dual", "mixed", "path", "integral"):
        raise FormatError(f"unknown role {role!r}")
    return FormFile(header["dims"], header.get("codeg"), header.get("adddeg", (0, 0)), kind, role,
                    " ".join(body_lines), copath_lines, extra_even, extra_odd)


@dataclass
class MatrixFile:
    matrix: SuperMatrix
    table: SymbolTable


def parse_matrix_file(text: str) -> MatrixFile:
    table = SymbolTable()
    shape = None
    rows: list = []
    in_matrix = False
    for raw in text.splitlines():
        line = _strip(raw)
        if not line:
            continue
        if line.lower() == "matrix:":
            in_matrix = True
            continue
        if in_matrix:
            rows.append([c.strip() for c in line.split(",")])
            continue
        key, _, rest = line.partition(" ")
        if key == "shape":
            shape = _pair(rest, "shape")
        elif key == "even":
            for name in rest.split():
                table.declare(name, Parity.EVEN, "scalar")
        elif key == "odd":
            for name in rest.split():
                table.declare(name, Parity.ODD, "generator")
        else:
            raise FormatError(f"unknown header line {line!r}")
    if shape is None:
        raise FormatError("missing 'shape' header")
    p, q = shape
    if len(rows) != p + q or any(len(r) != p + q for r in rows):
        raise FormatError(f"matrix must be {p + q}x{p + q}")
    pars = (0,) * p + (1,) * q
    entries = tuple(tuple(parse_expr(c, table) for c in r) for r in rows)
    return MatrixFile(SuperMatrix(pars, pars, entries), table)


def parse_point(text: str | None, table: SymbolTable) -> dict:
    """``a=1,d=-2/3`` to ``{Symbol: rational}``."""
    from fractions import Fraction

    point: dict = {}
    if not text:
        return point
    for item in text.split(","):
        name, eq, value = item.partition("=")
        if not eq:
            raise FormatError(f"point entries look like name=value, got {item!r}")
        s = table.lookup(name.strip())
        if s.parity is not Parity.EVEN:
            raise FormatError(f"{s.name} is odd; odd symbols evaluate to 0")
        try:
            point[s] = Fraction(value.strip())
        except ValueError:
            raise FormatError(f"not a rational number: {value!r}") from None
    return point
