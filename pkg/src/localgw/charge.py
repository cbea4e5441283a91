"""Charge lattice with antisymmetric pairing, central-charge constants and
the quadratic refinement.

Charges are plain integer tuples; a :class:`ChargeLattice` carries the
structure that gives them meaning.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Sequence

from .errors import InputError

Charge = tuple[int, ...]


def charge(*coords: int) -> Charge:
    return tuple(int(c) for c in coords)


def add(a: Charge, b: Charge) -> Charge:
    _check_len(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Charge, b: Charge) -> Charge:
    _check_len(a, b)
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Charge) -> Charge:
    return tuple(-x for x in a)


def scale(n: int, a: Charge) -> Charge:
    return tuple(n * x for x in a)


def degree(a: Charge) -> int:
    """Total degree: sum of absolute coordinates."""
    return sum(abs(x) for x in a)


def divisibility(a: Sequence[int]) -> int:
    """gcd of the coordinates; 0 for the zero charge."""
    return reduce(gcd, (abs(x) for x in a), 0)


def is_primitive(a: Sequence[int]) -> bool:
    return divisibility(a) == 1


def primitive_part(a: Charge) -> tuple[int, Charge]:
    """Split ``a = d * p`` with ``p`` primitive. Rejects the zero charge."""
    d = divisibility(a)
    if d == 0:
        raise InputError("zero charge has no primitive direction")
    return d, tuple(x // d for x in a)


def unit(rank: int, i: int) -> Charge:
    return tuple(1 if j == i else 0 for j in range(rank))


def _check_len(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise InputError(f"charge length mismatch: {len(a)} vs {len(b)}")


@dataclass(frozen=True)
class ChargeLattice:
    """Rank-``r`` lattice of relative classes.

    ``pairing[i][j]`` is the intersection pairing of generators i and j,
    ``charge_constants[i]`` the leading central-charge coefficient of
    generator i, ``thimble_flags[i]`` whether generator i is a Lefschetz
    thimble (quadratic refinement -1).
    """

    pairing: tuple[tuple[int, ...], ...]
    charge_constants: tuple[complex, ...] = ()
    thimble_flags: tuple[bool, ...] = ()
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        pairing = tuple(tuple(int(x) for x in row) for row in self.pairing)
        r = len(pairing)
        if r == 0 or any(len(row) != r for row in pairing):
            raise InputError("pairing must be a non-empty square matrix")
        for i in range(r):
            for j in range(r):
                if pairing[i][j] != -pairing[j][i]:
                    raise InputError(f"pairing not antisymmetric at ({i},{j})")
        object.__setattr__(self, "pairing", pairing)
        consts = tuple(complex(c) for c in self.charge_constants) or (0j,) * r
        flags = tuple(bool(f) for f in self.thimble_flags) or (True,) * r
        if len(consts) != r or len(flags) != r:
            raise InputError("charge_constants/thimble_flags must have length rank")
        object.__setattr__(self, "charge_constants", consts)
        object.__setattr__(self, "thimble_flags", flags)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"g{i + 1}" for i in range(r)))

    @property
    def rank(self) -> int:
        return len(self.pairing)

    def generators(self) -> list[Charge]:
        return [unit(self.rank, i) for i in range(self.rank)]

    def check(self, a: Sequence[int]) -> Charge:
        if len(a) != self.rank:
            raise InputError(f"charge {tuple(a)} has length {len(a)}, lattice rank is {self.rank}")
        return tuple(int(x) for x in a)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        a, b = self.check(a), self.check(b)
        p = self.pairing
        return sum(a[i] * p[i][j] * b[j]
                   for i in range(len(a)) if a[i]
                   for j in range(len(b)) if b[j])

    def quadratic_refinement(self, g: Sequence[int]) -> int:
        """Sign c(g) from the product rule, with c = -1 on thimble generators."""
        g = self.check(g)
        exponent = sum(n for n, flag in zip(g, self.thimble_flags) if flag)
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                exponent += g[i] * g[j] * self.pairing[i][j]
        return -1 if exponent % 2 else 1

    def central_charge_constant(self, g: Sequence[int]) -> complex:
        g = self.check(g)
        return sum((n * c for n, c in zip(g, self.charge_constants)), 0j)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "pairing": [list(row) for row in self.pairing],
            "charge_constants": [[c.real, c.imag] for c in self.charge_constants],
            "thimble_flags": list(self.thimble_flags),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ChargeLattice":
        known = {"rank", "pairing", "charge_constants", "thimble_flags", "names"}
        extra = set(data) - known
        if extra:
            raise InputError(f"unknown lattice keys: {sorted(extra)}")
        pairing = data["pairing"]
        if "rank" in data and data["rank"] != len(pairing):
            raise InputError("rank does not match pairing size")
        consts = [complex(re, im) for re, im in data.get("charge_constants", [])]
        return cls(pairing=pairing, charge_constants=tuple(consts),
                   thimble_flags=tuple(data.get("thimble_flags", ())),
                   names=tuple(data.get("names", ())))


def standard_rank2(pairing_value: int = 1, **kw) -> ChargeLattice:
    """Rank-2 lattice with <g1, g2> = pairing_value."""
    return ChargeLattice(pairing=((0, pairing_value), (-pairing_value, 0)), **kw)
