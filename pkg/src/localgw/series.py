"""Truncated formal power series over a charge lattice with exact rational
coefficients.

Keys are charges (integer tuples), the degree of a key is the sum of the
absolute values of its coordinates, and every term above the cutoff is
dropped. Series used as wall functions live in a positive cone, where the
degree is additive and truncation is compatible with multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .charge import Charge, degree
from .errors import DomainError, InputError, QueryError

Coeff = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise InputError("float coefficients are not allowed; use Fraction or 'p/q' strings")
    return Fraction(x)


class TruncatedSeries:
    """Immutable truncated series ``sum c_m z^m`` with ``degree(m) <= cutoff``."""

    __slots__ = ("rank", "cutoff", "_terms", "_hash")

    def __init__(self, rank: int, cutoff: int, terms: Mapping[Charge, object] | None = None):
        if cutoff < 0:
            raise InputError("cutoff must be non-negative")
        self.rank = rank
        self.cutoff = cutoff
        clean: dict[Charge, Fraction] = {}
        for k, v in (terms or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != rank:
                raise InputError(f"key {k} does not have length {rank}")
            if degree(k) > cutoff:
                continue
            v = _as_fraction(v)
            if v:
                clean[k] = clean.get(k, Fraction(0)) + v
                if not clean[k]:
                    del clean[k]
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, rank: int, cutoff: int, terms: dict) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s.rank, s.cutoff, s._terms, s._hash = rank, cutoff, terms, None
        return s

    @classmethod
    def zero(cls, rank: int, cutoff: int) -> "TruncatedSeries":
        return cls._raw(rank, cutoff, {})

    @classmethod
    def one(cls, rank: int, cutoff: int) -> "TruncatedSeries":
        return cls.monomial((0,) * rank, cutoff)

    @classmethod
    def monomial(cls, m: Charge, cutoff: int, coeff=1) -> "TruncatedSeries":
        return cls(len(m), cutoff, {tuple(m): coeff})

    @classmethod
    def one_plus(cls, m: Charge, cutoff: int, coeff=1) -> "TruncatedSeries":
        """``1 + coeff * z^m``, the seed wall function."""
        rank = len(m)
        return cls(rank, cutoff, {(0,) * rank: 1, tuple(m): coeff})

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self) -> dict[Charge, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.rank, self.cutoff, self._terms) == (other.rank, other.cutoff, other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, self.cutoff, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return f"TruncatedSeries(0, cutoff={self.cutoff})"
        parts = [f"{c}*z^{k}" for k, c in sorted(self._terms.items())]
        return f"TruncatedSeries({' + '.join(parts)}, cutoff={self.cutoff})"

    def coefficient(self, m: Charge) -> Fraction:
        m = tuple(m)
        if len(m) != self.rank:
            raise InputError(f"charge {m} does not have length {self.rank}")
        if degree(m) > self.cutoff:
            raise QueryError(f"degree {degree(m)} of {m} exceeds cutoff {self.cutoff}")
        return self._terms.get(m, Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.rank, Fraction(0))

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        if cutoff > self.cutoff:
            raise InputError("cannot raise the cutoff of a truncated series")
        return TruncatedSeries._raw(
            self.rank, cutoff, {k: v for k, v in self._terms.items() if degree(k) <= cutoff})

    def _compatible(self, other: "TruncatedSeries") -> None:
        if self.rank != other.rank or self.cutoff != other.cutoff:
            raise InputError(
                f"series mismatch: rank {self.rank}/{other.rank}, cutoff {self.cutoff}/{other.cutoff}")

    # -- ring operations --------------------------------------------------
    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._compatible(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TruncatedSeries._raw(self.rank, self.cutoff, out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.rank, self.cutoff, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = _as_fraction(c)
        if not c:
            return TruncatedSeries.zero(self.rank, self.cutoff)
        return TruncatedSeries._raw(self.rank, self.cutoff, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._compatible(other)
        lam = self.cutoff
        out: dict[Charge, Fraction] = {}
        b_items = [(k, degree(k), v) for k, v in other._terms.items()]
        for ka, va in self._terms.items():
            da = degree(ka)
            for kb, db, vb in b_items:
                if da + db > lam:
                    # mixed-sign keys can cancel; only skip when the sum is out of range
                    k = tuple(x + y for x, y in zip(ka, kb))
                    if degree(k) > lam:
                        continue
                else:
                    k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return TruncatedSeries._raw(self.rank, lam, {k: v for k, v in out.items() if v})

    def shift(self, m: Charge) -> "TruncatedSeries":
        """Multiply by the monomial ``z^m`` (terms leaving the window are dropped)."""
        out = {}
        for k, v in self._terms.items():
            nk = tuple(x + y for x, y in zip(k, m))
            if degree(nk) <= self.cutoff:
                out[nk] = v
        return TruncatedSeries._raw(self.rank, self.cutoff, out)

    def __pow__(self, n: int) -> "TruncatedSeries":
        return integer_power(self, n)

    def map_keys(self, fn, rank: int | None = None) -> "TruncatedSeries":
        """Push the series forward along a key map (e.g. a lattice morphism)."""
        rank = self.rank if rank is None else rank
        out: dict[Charge, Fraction] = {}
        for k, v in self._terms.items():
            nk = tuple(fn(k))
            if degree(nk) <= self.cutoff:
                out[nk] = out.get(nk, 0) + v
        return TruncatedSeries._raw(rank, self.cutoff, {k: v for k, v in out.items() if v})

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "terms": [{"charge": list(k), "coeff": _frac_str(v)}
                      for k, v in sorted(self._terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict, rank: int | None = None) -> "TruncatedSeries":
        terms = data["terms"] if isinstance(data, dict) else data
        cutoff = data["cutoff"] if isinstance(data, dict) else None
        if rank is None:
            if not terms:
                raise InputError("cannot infer rank of an empty series")
            rank = len(terms[0]["charge"])
        if cutoff is None:
            raise InputError("series JSON must record its cutoff")
        return cls(rank, cutoff, {tuple(t["charge"]): Fraction(t["coeff"]) for t in terms})


def _frac_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def coefficient(f: TruncatedSeries, g: Charge) -> Fraction:
    return f.coefficient(g)


def _min_positive_degree(f: TruncatedSeries) -> int:
    return min((degree(k) for k in f if any(k)), default=f.cutoff + 1)


def log_series(f: TruncatedSeries) -> TruncatedSeries:
    """``log f`` for ``f`` with constant term 1, as ``sum (-1)^(k-1) x^k / k``."""
    if f.constant_term != 1:
        raise DomainError(f"log needs constant term 1, got {f.constant_term}")
    x = f - TruncatedSeries.one(f.rank, f.cutoff)
    return _power_sum(x, lambda k: Fraction((-1) ** (k - 1), k))


def exp_series(g: TruncatedSeries) -> TruncatedSeries:
    """``exp g`` for ``g`` with zero constant term."""
    if g.constant_term != 0:
        raise DomainError(f"exp needs zero constant term, got {g.constant_term}")
    return TruncatedSeries.one(g.rank, g.cutoff) + _power_sum(g, lambda k: Fraction(1, factorial(k)))


def _power_sum(x: TruncatedSeries, coeff) -> TruncatedSeries:
    # x has no constant term; for cone-supported x, x^k vanishes once k * mindeg > cutoff
    total = TruncatedSeries.zero(x.rank, x.cutoff)
    if not len(x):
        return total
    mindeg = _min_positive_degree(x)
    power = x
    k = 1
    while len(power) and k * mindeg <= x.cutoff:
        total = total + power.scale(coeff(k))
        power = power * x
        k += 1
    return total


def integer_power(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """``f**n`` for any integer ``n``; negative powers need constant term 1."""
    one = TruncatedSeries.one(f.rank, f.cutoff)
    if n == 0:
        return one
    if n < 0:
        if f.constant_term != 1:
            raise DomainError("negative power needs constant term 1")
        x = f - one
        # (1+x)^-1 = sum (-x)^k
        inv = _power_sum(-x, lambda k: Fraction(1)) + one
        return integer_power(inv, -n)
    result, base = one, f
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def mobius(n: int) -> int:
    if n < 1:
        raise InputError("Mobius function is defined for n >= 1")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def series_sum(items: Iterable[TruncatedSeries], rank: int, cutoff: int) -> TruncatedSeries:
    total = TruncatedSeries.zero(rank, cutoff)
    for s in items:
        total = total + s
    return total
