"""Graded symbols and symbol tables.

Symbols are interned: asking twice for the same ``(name, parity)`` returns the
same object, so identity comparison is equality.  Ordering uses a natural sort
key on the name (``x2 < x10``), which fixes the canonical order of odd
monomials and of printed output independently of creation order.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from enum import IntEnum


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    def __str__(self):
        return self.name.lower()


ROLES = (
    "coordinate",
    "parameter",
    "momentum",
    "velocity",
    "jet2",
    "generator",
    "scalar",
)

_NUM = re.compile(r"(\d+)")


def _natural_key(name: str) -> tuple:
    parts = _NUM.split(name)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


class Symbol:
    """An interned graded symbol.  Build with :func:`symbol`."""

    __slots__ = ("name", "parity", "role", "key", "__weakref__")

    def __lt__(self, other):
        return self.key < other.key

    def __gt__(self, other):
        return self.key > other.key

    def __le__(self, other):
        return self.key <= other.key

    def __ge__(self, other):
        return self.key >= other.key

    @property
    def is_odd(self) -> bool:
        return self.parity is Parity.ODD

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.parity})"

    def __str__(self):
        return self.name

    def __reduce__(self):
        return (symbol, (self.name, int(self.parity), self.role))


_registry: dict[tuple[str, int], Symbol] = {}
_lock = threading.Lock()


def symbol(name: str, parity=Parity.EVEN, role: str = "scalar") -> Symbol:
    """Return the unique symbol with this name and parity."""
    parity = Parity(int(parity))
    k = (name, int(parity))
    s = _registry.get(k)
    if s is not None:
        return s
    if role not in ROLES:
        raise ValueError(f"unknown role {role!r}")
    with _lock:
        s = _registry.get(k)
        if s is None:
            s = Symbol.__new__(Symbol)
            s.name = name
            s.parity = parity
            s.role = role
            s.key = (_natural_key(name), int(parity))
            _registry[k] = s
    return s


def even(name: str, role: str = "scalar") -> Symbol:
    return symbol(name, Parity.EVEN, role)


def odd(name: str, role: str = "generator") -> Symbol:
    return symbol(name, Parity.ODD, role)


class UndeclaredSymbol(KeyError):
    pass


@dataclass
class SymbolTable:
    """Name lookup for the expression parser.

    ``dims``, ``codegree`` and ``add_degree`` are informational; the form
    layer declares the coordinate, momentum and velocity symbols that go with
    them.
    """

    symbols: dict[str, Symbol] = field(default_factory=dict)
    dims: tuple[int, int] = (0, 0)
    codegree: tuple[int, int] = (0, 0)
    add_degree: tuple[int, int] = (0, 0)

    def declare(self, name: str, parity=Parity.EVEN, role: str = "scalar") -> Symbol:
        s = symbol(name, parity, role)
        old = self.symbols.get(name)
        if old is not None and old is not s:
            raise ValueError(f"symbol {name!r} already declared with parity {old.parity}")
        self.symbols[name] = s
        return s

    def add(self, s: Symbol) -> Symbol:
        return self.declare(s.name, s.parity, s.role)

    def lookup(self, name: str) -> Symbol:
        try:
            return self.symbols[name]
        except KeyError:
            raise UndeclaredSymbol(name) from None

    def __contains__(self, name):
        return name in self.symbols

    def merged(self, other: "SymbolTable") -> "SymbolTable":
        t = SymbolTable(dict(self.symbols), self.dims, self.codegree, self.add_degree)
        for s in other.symbols.values():
            t.add(s)
        return t
