"""Weierstrass families ``y^2 = x^3 + a(t) x + b(t)``: discriminant, fibre types
from vanishing orders, and roots of the discriminant in a disc.

Polynomial arithmetic, factorization and root approximation are delegated to
sympy; exact work happens over the rationals and only the final root
locations are numeric.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from .errors import DegeneracyError, InputError

ROOT_DIGITS = 30
BOUNDARY_TOL = 1e-9
RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class WeierstrassFamily:
    a: sp.Expr
    b: sp.Expr
    var: sp.Symbol = sp.Symbol("t")
    param: sp.Symbol | None = None

    @classmethod
    def parse(cls, a: str, b: str, var: str = "t", param: str | None = None) -> "WeierstrassFamily":
        syms = {var: sp.Symbol(var)}
        if param:
            syms[param] = sp.Symbol(param)
        try:
            ea = sp.sympify(a.replace("^", "**"), locals=syms, rational=True)
            eb = sp.sympify(b.replace("^", "**"), locals=syms, rational=True)
        except (sp.SympifyError, SyntaxError, TypeError) as exc:
            raise InputError(f"cannot parse coefficients: {exc}") from exc
        allowed = {syms[var]} | ({syms[param]} if param else set())
        for e in (ea, eb):
            if not e.free_symbols <= allowed:
                raise InputError(f"unexpected symbols {e.free_symbols - allowed}")
        return cls(ea, eb, syms[var], syms.get(param) if param else None)

    def specialize(self, eps) -> "WeierstrassFamily":
        if self.param is None:
            return self
        e = sp.Rational(str(Fraction(eps))) if not isinstance(eps, sp.Basic) else eps
        return WeierstrassFamily(sp.expand(self.a.subs(self.param, e)),
                                 sp.expand(self.b.subs(self.param, e)), self.var, None)

    def poly(self, e: sp.Expr) -> sp.Poly:
        if self.param is not None:
            raise InputError("specialize the deformation parameter first")
        try:
            return sp.Poly(e, self.var, domain="QQ")
        except sp.PolynomialError as exc:
            raise InputError(f"coefficient is not a rational polynomial: {exc}") from exc


def discriminant(f: WeierstrassFamily) -> sp.Poly:
    """``4 a^3 + 27 b^2``."""
    pa, pb = f.poly(f.a), f.poly(f.b)
    d = 4 * pa ** 3 + 27 * pb ** 2
    if d.is_zero:
        raise DegeneracyError("discriminant vanishes identically")
    return d


def _order(p: sp.Poly, factor: sp.Poly) -> int:
    """Largest k with factor^k dividing p (p = 0 counts as infinite)."""
    if p.is_zero:
        return 10 ** 6
    k = 0
    while True:
        q, r = sp.div(p, factor)
        if not r.is_zero:
            return k
        p, k = q, k + 1


def _tate(oa: int, ob: int, od: int) -> str:
    if od == 0:
        return "I0"
    if oa == 0 or ob == 0:
        return f"I{od}"
    if oa >= 1 and ob == 1 and od == 2:
        return "II"
    if oa == 1 and ob >= 2 and od == 3:
        return "III"
    if oa >= 2 and ob == 2 and od == 4:
        return "IV"
    if oa >= 2 and ob >= 3 and od == 6:
        return "I0*"
    raise InputError(f"vanishing orders (a {oa}, b {ob}, disc {od}) are outside the supported table")


def _factor_at(d: sp.Poly, root: complex) -> sp.Poly:
    """Irreducible rational factor of ``d`` vanishing at ``root``."""
    best, best_val = None, None
    for fac, _ in d.factor_list()[1]:
        val = abs(complex(fac.eval(sp.nsimplify(0) + sp.Float(root.real, 30) + sp.I * sp.Float(root.imag, 30))))
        scale = max(1.0, float(max(abs(c) for c in fac.all_coeffs())))
        val /= scale
        if best_val is None or val < best_val:
            best, best_val = fac, val
    if best is None or best_val > 1e-6:
        raise InputError(f"{root} is not a root of the discriminant")
    return best


def vanishing_orders(f: WeierstrassFamily, root) -> tuple[int, int, int]:
    d = discriminant(f)
    if isinstance(root, sp.Basic):
        fac = sp.Poly(sp.minimal_polynomial(root, f.var), f.var, domain="QQ")
    else:
        fac = _factor_at(d, complex(root))
    return _order(f.poly(f.a), fac), _order(f.poly(f.b), fac), _order(d, fac)


def kodaira_type_at(f: WeierstrassFamily, root) -> str:
    return _tate(*vanishing_orders(f, root))


@dataclass(frozen=True)
class DiscRoot:
    value: complex
    multiplicity: int
    residual: float


def roots_in_disc(delta: sp.Poly, center: complex, radius: float) -> list[DiscRoot]:
    """Roots of ``delta`` inside the open disc, with multiplicities."""
    if radius <= 0:
        raise InputError("radius must be positive")
    if delta.is_zero:
        raise DegeneracyError("polynomial vanishes identically")
    out = []
    if delta.degree() <= 0:
        return out
    for fac, mult in delta.factor_list()[1]:
        for r in fac.nroots(n=ROOT_DIGITS, maxsteps=200):
            z = complex(r)
            dist = abs(z - complex(center))
            if abs(dist - radius) < BOUNDARY_TOL:
                raise InputError(f"root {z} lies on the boundary circle; reposition the disc")
            if dist < radius:
                res = abs(complex(fac.eval(r)))
                if res > RESIDUAL_TOL * max(1.0, float(max(abs(c) for c in fac.all_coeffs()))):
                    raise InputError(f"root refinement failed at {z} (residual {res})")
                out.append(DiscRoot(z, int(mult), res))
    out.sort(key=lambda r: (round(r.value.real, 12), round(r.value.imag, 12)))
    return out


@dataclass
class GenericReport:
    counts: list[int] = field(default_factory=list)
    degrees: list[int] = field(default_factory=list)

    @property
    def all_generic(self) -> bool:
        return all(c == d for c, d in zip(self.counts, self.degrees))


def squarefree_degree(d: sp.Poly) -> int:
    return sum(fac.degree() for fac, _ in d.sqf_list()[1])


def random_polynomial(var: sp.Symbol, deg: int, rng: random.Random, height: int = 20) -> sp.Expr:
    coeffs = [sp.Rational(rng.randint(-height, height), rng.randint(1, height)) for _ in range(deg)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-height, height)
    return sum(c * var ** i for i, c in enumerate(coeffs)) + sp.Rational(lead, rng.randint(1, height)) * var ** deg


def generic_k3_count(deg_a: int = 8, deg_b: int = 12, trials: int = 20, seed: int = 0) -> GenericReport:
    """Number of distinct discriminant roots for random (deg_a, deg_b) families."""
    rng = random.Random(seed)
    t = sp.Symbol("t")
    rep = GenericReport()
    for _ in range(trials):
        fam = WeierstrassFamily(random_polynomial(t, deg_a, rng), random_polynomial(t, deg_b, rng), t)
        d = discriminant(fam)
        rep.counts.append(squarefree_degree(d))
        rep.degrees.append(d.degree())
    return rep


# the two deformations used in the text
def family_iv_to_four_i1() -> WeierstrassFamily:
    return WeierstrassFamily.parse("s^2+2*e", "s^2+e", var="s", param="e")


def family_iv_to_two_ii() -> WeierstrassFamily:
    return WeierstrassFamily.parse("z^2+e", "z^2+e", var="z", param="e")
