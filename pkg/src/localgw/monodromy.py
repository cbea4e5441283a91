"""Integer 2x2 matrices: Picard-Lefschetz maps, Kodaira types of monodromies,
commutants and the small lemmas about type II and type IV monodromy.

Matrices act on column vectors in the basis of vanishing cycles. A product
of factors listed ``[M1, M2, ..., Mn]`` is ``M1 @ M2 @ ... @ Mn`` (``Mn``
acts first), which is how counterclockwise monodromy composes here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import ConsistencyError, InputError

# Sign s in the Picard-Lefschetz map v -> v + s <v, d> d. With s = +1 the
# type III factorization reproduces the published caption; see notes.
PL_SIGN = 1


@dataclass(frozen=True)
class IntegerMatrix2:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, rows) -> "IntegerMatrix2":
        if isinstance(rows, IntegerMatrix2):
            return rows
        (a, b), (c, d) = rows
        for x in (a, b, c, d):
            if isinstance(x, bool) or int(x) != x:
                raise InputError(f"matrix entries must be integers, got {x!r}")
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls) -> "IntegerMatrix2":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, o: "IntegerMatrix2") -> "IntegerMatrix2":
        return IntegerMatrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                              self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __neg__(self) -> "IntegerMatrix2":
        return IntegerMatrix2(-self.a, -self.b, -self.c, -self.d)

    def apply(self, v: Sequence[int]) -> tuple[int, int]:
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def inverse(self) -> "IntegerMatrix2":
        if self.det not in (1, -1):
            raise InputError(f"matrix {self.rows()} is not invertible over the integers")
        e = self.det
        return IntegerMatrix2(self.d * e, -self.b * e, -self.c * e, self.a * e)

    def __pow__(self, n: int) -> "IntegerMatrix2":
        base = self if n >= 0 else self.inverse()
        out = IntegerMatrix2.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def order(self, limit: int = 12) -> int | None:
        m = self
        for k in range(1, limit + 1):
            if m == IntegerMatrix2.identity():
                return k
            m = m @ self
        return None

    def __str__(self) -> str:
        return str(self.rows())


M2 = IntegerMatrix2.of

# Representatives of the finite-order fibre monodromies.
REPRESENTATIVES = {
    "II": M2([[1, 1], [-1, 0]]),
    "III": M2([[0, 1], [-1, 0]]),
    "IV": M2([[0, 1], [-1, -1]]),
    "IV*": M2([[-1, -1], [1, 0]]),
    "III*": M2([[0, -1], [1, 0]]),
    "II*": M2([[0, -1], [1, 1]]),
    "I0*": M2([[-1, 0], [0, -1]]),
}

EULER = {"II": 2, "III": 3, "IV": 4, "I0*": 6}


def pairing(v: Sequence[int], w: Sequence[int]) -> int:
    return v[0] * w[1] - v[1] * w[0]


def picard_lefschetz(vanishing_cycle: Sequence[int], sign: int = PL_SIGN) -> IntegerMatrix2:
    """Matrix of ``v -> v + sign <v, d> d`` for the vanishing cycle ``d``."""
    dx, dy = (int(x) for x in vanishing_cycle)
    if (dx, dy) == (0, 0):
        raise InputError("vanishing cycle must be nonzero")
    if gcd(dx, dy) != 1:
        raise InputError(f"vanishing cycle {(dx, dy)} is not primitive")
    if sign not in (1, -1):
        raise InputError("sign must be +1 or -1")
    # columns are the images of e1 and e2
    c1 = (1 + sign * pairing((1, 0), (dx, dy)) * dx, sign * pairing((1, 0), (dx, dy)) * dy)
    c2 = (sign * pairing((0, 1), (dx, dy)) * dx, 1 + sign * pairing((0, 1), (dx, dy)) * dy)
    return IntegerMatrix2(c1[0], c2[0], c1[1], c2[1])


def total_monodromy(factors: Sequence) -> IntegerMatrix2:
    if not factors:
        raise InputError("total_monodromy needs at least one factor")
    out = IntegerMatrix2.identity()
    for f in factors:
        out = out @ M2(f)
    return out


def _sense(m: IntegerMatrix2) -> int:
    # an elliptic element rotates one way or the other; the sign of c is
    # invariant under SL(2, Z) conjugation and separates M from M^-1
    return 1 if m.c > 0 else -1


def kodaira_classify(m) -> str:
    """Kodaira tag of an SL(2, Z) monodromy, up to SL(2, Z) conjugacy."""
    m = M2(m)
    if m.det != 1:
        raise InputError(f"monodromy must have determinant 1, got {m.det}")
    t = m.trace
    if m == IntegerMatrix2.identity():
        return "I0"
    if m == -IntegerMatrix2.identity():
        return "I0*"
    if abs(t) > 2:
        raise InputError(f"trace {t}: not a Kodaira fibre monodromy")
    if t == 2:
        return f"I{gcd(gcd(m.b, m.c), m.a - m.d)}"
    if t == -2:
        n = -m
        return f"I{gcd(gcd(n.b, n.c), n.a - n.d)}*"
    for tag, rep in REPRESENTATIVES.items():
        if rep.trace == t and tag != "I0*" and _sense(rep) == _sense(m):
            return tag
    raise ConsistencyError(f"no representative matches {m}")  # unreachable for det 1


def find_conjugator(m, r, bound: int = 6) -> IntegerMatrix2 | None:
    """Some G in SL(2, Z) with entries <= bound and G m G^-1 = r, or None."""
    m, r = M2(m), M2(r)
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if a * d - b * c != 1:
            continue
        g = IntegerMatrix2(a, b, c, d)
        if g @ m == r @ g:
            return g
    return None


def conjugate(m, r, bound: int = 6) -> bool:
    return find_conjugator(m, r, bound) is not None


def pairing_lemma_solutions(bound: int = 50) -> list[tuple[int, int]]:
    """Integer solutions of (2 l1 + l2) l2 = 1.

    l2 divides 1, so l2 = +-1 and then 2 l1 + l2 = l2; the search bound only
    confirms there is nothing else nearby.
    """
    out = [(l1, l2) for l2 in (1, -1) for l1 in range(-bound, bound + 1)
           if (2 * l1 + l2) * l2 == 1]
    extra = [(l1, l2) for l1 in range(-bound, bound + 1) for l2 in range(-bound, bound + 1)
             if (2 * l1 + l2) * l2 == 1 and (l1, l2) not in out]
    if extra:
        raise ConsistencyError(f"unexpected solutions {extra}")
    return sorted(out)


def commutant_finite(m, bound: int) -> list[IntegerMatrix2]:
    """All G with det +-1, entries in [-bound, bound], commuting with m."""
    m = M2(m)
    rng = range(-bound, bound + 1)
    out = []
    for a, b, c, d in itertools.product(rng, repeat=4):
        g = IntegerMatrix2(a, b, c, d)
        if g.det in (1, -1) and g @ m == m @ g:
            out.append(g)
    return out


def is_closed_under_product(ms: Iterable[IntegerMatrix2]) -> bool:
    s = set(ms)
    return all(x @ y in s for x in s for y in s)


A_TYPE_II = M2([[0, 1], [-1, 1]])
IV_TOTAL = M2([[-1, 1], [-1, 0]])


def type_iv_composition_solve(bound: int) -> IntegerMatrix2:
    """The A of type II with A @ B conjugate to the type IV total, B = A_TYPE_II.

    Two type II fibres merge into a type IV fibre; the second one is fixed to
    ``B`` and the first is searched among type II matrices with small entries.
    """
    if bound < 2:
        raise InputError("bound must be at least 2")
    b = A_TYPE_II
    rng = range(-bound, bound + 1)
    sols = []
    for e in itertools.product(rng, repeat=4):
        a = IntegerMatrix2(*e)
        if a.det != 1 or a.trace != 1 or kodaira_classify(a) != "II":
            continue
        p = a @ b
        if p.trace == IV_TOTAL.trace and kodaira_classify(p) == kodaira_classify(IV_TOTAL):
            sols.append(a)
    if len(sols) != 1:
        raise ConsistencyError(f"expected a unique solution, found {[s.rows() for s in sols]}")
    return sols[0]


def euler_characteristic(tag: str) -> int:
    if tag in EULER:
        return EULER[tag]
    if tag.startswith("I") and tag[1:].isdigit() and int(tag[1:]) > 0:
        return int(tag[1:])
    raise InputError(f"unsupported type {tag!r}")
