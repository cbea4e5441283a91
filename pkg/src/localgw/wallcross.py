"""Wall-crossing automorphisms of the truncated group ring.

An automorphism ``K`` attached to a wall of primitive direction ``g`` with
function ``f`` acts on monomials by ``z^m -> z^m f^<m, g>``. Every
automorphism used here sends ``z^m`` to ``z^m`` times a unit of the cone
ring, so endomorphisms are stored extensionally: one unit series per lattice
generator (:class:`Endomorphism`).

Products are written the usual way: ``compose([K1, K2])`` is ``K1 K2``,
meaning ``K2`` is applied first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .charge import Charge, ChargeLattice, add, degree, is_primitive, scale, unit
from .errors import InputError
from .series import TruncatedSeries, integer_power

# Sign of the pairing in the wall automorphism exponent, frozen so that the
# pentagon identity holds for <g1, g2> = 1 (see pentagon_check).
EXPONENT_SIGN = -1


@dataclass(frozen=True)
class WallAutomorphism:
    lattice: ChargeLattice
    direction: Charge
    function: TruncatedSeries

    def __post_init__(self):
        d = self.lattice.check(self.direction)
        if not is_primitive(d):
            raise InputError(f"wall direction {d} is not primitive")
        if self.function.rank != self.lattice.rank:
            raise InputError("wall function rank does not match lattice")
        if self.function.constant_term != 1:
            raise InputError("wall function must have constant term 1")
        for k in self.function:
            if any(k) and not _is_positive_multiple(k, d):
                raise InputError(f"wall function term {k} is not a multiple of {d}")
        object.__setattr__(self, "direction", d)

    @property
    def cutoff(self) -> int:
        return self.function.cutoff

    @classmethod
    def seed(cls, lattice: ChargeLattice, direction: Charge, cutoff: int, coeff=1):
        return cls(lattice, tuple(direction), TruncatedSeries.one_plus(tuple(direction), cutoff, coeff))

    def exponent(self, m: Charge) -> int:
        return EXPONENT_SIGN * self.lattice.pair(m, self.direction)

    def unit_for(self, m: Charge) -> TruncatedSeries:
        """The unit ``u`` with ``K(z^m) = z^m u``."""
        return integer_power(self.function, self.exponent(m))

    def inverse(self) -> "WallAutomorphism":
        return WallAutomorphism(self.lattice, self.direction, integer_power(self.function, -1))

    def as_endomorphism(self) -> "Endomorphism":
        return Endomorphism(self.lattice, self.cutoff,
                            tuple(self.unit_for(g) for g in self.lattice.generators()))


def _is_positive_multiple(k: Charge, d: Charge) -> bool:
    i = next(j for j, x in enumerate(d) if x)
    n, r = divmod(k[i], d[i])
    return r == 0 and n > 0 and all(a == n * b for a, b in zip(k, d))


def apply(k: WallAutomorphism, monomial_charge: Charge) -> TruncatedSeries:
    """``K(z^m)`` as a truncated series (keys in the window of degree <= cutoff)."""
    m = k.lattice.check(monomial_charge)
    if degree(m) > k.cutoff:
        from .errors import QueryError
        raise QueryError(f"monomial {m} is above the cutoff {k.cutoff}")
    return k.unit_for(m).shift(m)


class Endomorphism:
    """Ring endomorphism ``z^{e_i} -> z^{e_i} u_i`` with cone units ``u_i``."""

    __slots__ = ("lattice", "cutoff", "units", "_powers")

    def __init__(self, lattice: ChargeLattice, cutoff: int, units: Sequence[TruncatedSeries]):
        if len(units) != lattice.rank:
            raise InputError("one unit series per generator is required")
        for u in units:
            if u.cutoff != cutoff or u.rank != lattice.rank:
                raise InputError("unit series do not match lattice/cutoff")
        self.lattice = lattice
        self.cutoff = cutoff
        self.units = tuple(units)
        self._powers: dict[tuple[int, int], TruncatedSeries] = {}

    @classmethod
    def identity(cls, lattice: ChargeLattice, cutoff: int) -> "Endomorphism":
        one = TruncatedSeries.one(lattice.rank, cutoff)
        return cls(lattice, cutoff, (one,) * lattice.rank)

    def _unit_power(self, i: int, n: int) -> TruncatedSeries:
        key = (i, n)
        p = self._powers.get(key)
        if p is None:
            if n == 0:
                p = TruncatedSeries.one(self.lattice.rank, self.cutoff)
            elif n > 0:
                p = self._unit_power(i, n - 1) * self.units[i]
            else:
                p = integer_power(self.units[i], n)
            self._powers[key] = p
        return p

    def unit_for(self, m: Charge) -> TruncatedSeries:
        u = TruncatedSeries.one(self.lattice.rank, self.cutoff)
        for i, n in enumerate(m):
            if n:
                u = u * self._unit_power(i, n)
        return u

    def image(self, m: Charge) -> TruncatedSeries:
        """``phi(z^m)`` as a series in the degree window."""
        return self.unit_for(m).shift(m)

    def apply_series(self, s: TruncatedSeries) -> TruncatedSeries:
        """``phi(s)`` for a cone series ``s``."""
        out = TruncatedSeries.zero(self.lattice.rank, self.cutoff)
        for m, c in s.items():
            out = out + self.unit_for(m).shift(m).scale(c)
        return out

    def after(self, inner: "Endomorphism") -> "Endomorphism":
        """``self o inner``: ``inner`` is applied first."""
        if inner.lattice != self.lattice or inner.cutoff != self.cutoff:
            raise InputError("cannot compose endomorphisms over different lattices/cutoffs")
        # phi(z^e v) = z^e u_e phi(v)
        units = tuple(self.units[i] * self.apply_series(inner.units[i])
                      for i in range(self.lattice.rank))
        return Endomorphism(self.lattice, self.cutoff, units)

    def generator_images(self) -> list[TruncatedSeries]:
        return [self.image(g) for g in self.lattice.generators()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return (self.lattice, self.cutoff, self.units) == (other.lattice, other.cutoff, other.units)

    def __hash__(self):
        return hash((self.cutoff, self.units))

    def first_difference(self, other: "Endomorphism"):
        """First (generator, charge, lhs, rhs) where the units differ, or None."""
        for i, (a, b) in enumerate(zip(self.units, other.units)):
            if a != b:
                keys = sorted(set(a) | set(b), key=lambda k: (degree(k), k))
                for k in keys:
                    ca, cb = a.coefficient(k), b.coefficient(k)
                    if ca != cb:
                        return i, k, ca, cb
        return None

    def is_identity(self) -> bool:
        return all(u == TruncatedSeries.one(self.lattice.rank, self.cutoff) for u in self.units)


def compose(automorphisms: Sequence[WallAutomorphism | Endomorphism],
            lattice: ChargeLattice | None = None, cutoff: int | None = None) -> Endomorphism:
    """Product ``K1 K2 ... Kn`` (``Kn`` applied first), evaluated on generators."""
    if not automorphisms:
        if lattice is None or cutoff is None:
            raise InputError("empty composition needs an explicit lattice and cutoff")
        return Endomorphism.identity(lattice, cutoff)
    lat = automorphisms[0].lattice
    cut = automorphisms[0].cutoff
    for k in automorphisms:
        if k.lattice != lat or k.cutoff != cut:
            raise InputError("all automorphisms must share lattice and cutoff")
    result = Endomorphism.identity(lat, cut)
    for k in automorphisms:
        e = k.as_endomorphism() if isinstance(k, WallAutomorphism) else k
        result = result.after(e)
    return result


@dataclass
class CheckReport:
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def pentagon_check(lattice: ChargeLattice, cutoff: int, middle_coeff=1) -> CheckReport:
    """Check ``K1 K2 = K2 K12 K1`` for a rank-2 lattice with ``<g1, g2> = 1``."""
    if lattice.rank != 2 or lattice.pair((1, 0), (0, 1)) != 1:
        raise InputError("pentagon check needs a rank-2 lattice with <g1, g2> = 1")
    g1, g2, g12 = (1, 0), (0, 1), (1, 1)
    k1 = WallAutomorphism.seed(lattice, g1, cutoff)
    k2 = WallAutomorphism.seed(lattice, g2, cutoff)
    k12 = WallAutomorphism.seed(lattice, g12, cutoff, middle_coeff)
    lhs = compose([k1, k2])
    rhs = compose([k2, k12, k1])
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckReport(True)
    i, k, a, b = diff
    return CheckReport(False, f"generator {i}: coefficient of z^{k} is {a} vs {b}")


def commutation_check(k1: WallAutomorphism, k2: WallAutomorphism) -> bool:
    return compose([k1, k2]) == compose([k2, k1])


def inverse_list(automorphisms: Sequence[WallAutomorphism]) -> list[WallAutomorphism]:
    """Reversed list of inverses: ``compose(ks + inverse_list(ks))`` is the identity."""
    return [k.inverse() for k in reversed(automorphisms)]
