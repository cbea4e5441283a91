"""Leading-order central charges ``Z_g(z) = c_g z^(a/k)`` near a singular fibre,
their BPS rays on the base disc, affine coordinates and the gradient flow of
``|Z_g|^2``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .charge import Charge, ChargeLattice, standard_rank2
from .errors import DegeneracyError, DomainError, InputError, NumericalError
from .monodromy import A_TYPE_II, IntegerMatrix2, picard_lefschetz, total_monodromy

TWO_PI = 2 * math.pi
RAY_TOL = 1e-9

# exponent a/k of the leading term for the finite-order types
EXPONENTS = {"II": (5, 6), "III": (3, 4), "IV": (4, 3)}


def default_monodromy(tag: str) -> IntegerMatrix2:
    """Boundary monodromy of the deformation models (vanishing cycles e1, e2)."""
    if tag == "II":
        return A_TYPE_II
    if tag == "III":
        e1, e2 = (1, 0), (0, 1)
        return total_monodromy([picard_lefschetz(e2), picard_lefschetz(e1), picard_lefschetz(e1)])
    if tag == "IV":
        return A_TYPE_II @ A_TYPE_II
    raise InputError(f"no model monodromy for type {tag!r}")


def _wrap(x: float, start: float = 0.0) -> float:
    """Representative of x mod 2pi in [start, start + 2pi)."""
    y = (x - start) % TWO_PI
    if y >= TWO_PI - 1e-15:
        y = 0.0
    return start + y


@dataclass(frozen=True)
class CentralChargeModel:
    k: int
    a: int
    lattice: ChargeLattice
    branch_cut_angle: float = math.pi
    monodromy: IntegerMatrix2 | None = None

    def __post_init__(self):
        if self.k < 1 or self.a < 1:
            raise InputError("k and a must be positive integers")
        if gcd(self.a, self.k) != 1:
            raise InputError(f"gcd(a, k) must be 1, got a={self.a}, k={self.k}")

    @property
    def exponent(self) -> float:
        return self.a / self.k

    def constant(self, g: Charge) -> complex:
        return self.lattice.central_charge_constant(g)

    def check_equivariance(self, tol: float = 1e-9) -> bool:
        """``c_{M g} = c_g e^(2 pi i a/k)`` on the generators."""
        if self.monodromy is None:
            return True
        w = cmath.exp(2j * math.pi * self.a / self.k)
        for g in self.lattice.generators():
            if abs(self.constant(self.monodromy.apply(g)) - w * self.constant(g)) > tol:
                return False
        return True


def eigen_constants(m: IntegerMatrix2, a: int, k: int) -> tuple[complex, complex]:
    """Generator constants (c1, c2) with c(M v) = e^(2 pi i a/k) c(v), c1 = 1."""
    w = cmath.exp(2j * math.pi * a / k)
    mat = np.array([[m.a, m.b], [m.c, m.d]], dtype=complex)
    # c is a row vector with c M = w c, i.e. M^T c^T = w c^T
    vals, vecs = np.linalg.eig(mat.T)
    i = int(np.argmin(np.abs(vals - w)))
    if abs(vals[i] - w) > 1e-9:
        raise InputError(f"e^(2 pi i {a}/{k}) is not an eigenvalue of {m.rows()}")
    v = vecs[:, i]
    if abs(v[0]) < 1e-12:
        raise DegeneracyError("eigen-covector vanishes on the first generator")
    v = v / v[0]
    return complex(v[0]), complex(v[1])


def model_for(tag: str, branch_cut_angle: float = math.pi,
              monodromy: IntegerMatrix2 | None = None) -> CentralChargeModel:
    """Model of a type II / III / IV fibre on its rank-2 boundary lattice."""
    if tag not in EXPONENTS:
        raise InputError(f"no central-charge exponent for type {tag!r}")
    a, k = EXPONENTS[tag]
    m = monodromy or default_monodromy(tag)
    c1, c2 = eigen_constants(m, a, k)
    lat = standard_rank2(charge_constants=(c1, c2))
    return CentralChargeModel(k, a, lat, branch_cut_angle, m)


def _arg_on_cut_disc(z: complex, cut: float) -> float:
    if z == 0:
        raise DomainError("z = 0 is the singular point")
    t = cmath.phase(z)
    if abs(math.remainder(t - cut, TWO_PI)) < 1e-15:
        raise DomainError(f"z = {z} lies on the branch cut")
    return _wrap(t, cut)


def evaluate(model: CentralChargeModel, g: Charge, z: complex) -> complex:
    alpha = _arg_on_cut_disc(complex(z), model.branch_cut_angle)
    r = abs(z) ** model.exponent
    return model.constant(g) * cmath.rect(r, model.exponent * alpha)


def ray_angles_of(model: CentralChargeModel, g: Charge, theta: float,
                  start: float | None = None) -> list[float]:
    """Angles alpha in [start, start + 2pi) with Arg c_g + (a/k) alpha = theta mod 2pi."""
    c = model.constant(g)
    if abs(c) < 1e-300:
        raise DegeneracyError(f"class {g} has vanishing central charge")
    start = model.branch_cut_angle if start is None else start
    lo, hi = start, start + TWO_PI
    base = (theta - cmath.phase(c)) / model.exponent
    step = TWO_PI / model.exponent
    n0 = math.ceil((lo - base) / step - 1e-12)
    out = []
    n = n0
    while base + n * step < hi - 1e-12:
        out.append(base + n * step)
        n += 1
    return out


def ray_angles(model: CentralChargeModel, classes: Sequence[Charge], theta: float
               ) -> list[tuple[float, tuple[Charge, ...]]]:
    """Distinct rays (angle, classes on it), sorted by angle on the cut disc."""
    hits: list[tuple[float, Charge]] = []
    for g in classes:
        g = model.lattice.check(g)
        if not any(g):
            raise InputError("zero class has no ray")
        hits.extend((t, g) for t in ray_angles_of(model, g, theta))
    hits.sort()
    rays: list[tuple[float, list[Charge]]] = []
    for t, g in hits:
        if rays and abs(t - rays[-1][0]) < RAY_TOL:
            for h in rays[-1][1]:
                if model.lattice.pair(g, h) != 0:
                    raise DegeneracyError(
                        f"rays of {g} and {h} coincide at angle {t:.12f}; perturb theta")
            rays[-1][1].append(g)
        else:
            rays.append((t, [g]))
    return [(t % TWO_PI, tuple(gs)) for t, gs in rays]


def consecutive_spacings(angles: Sequence[float]) -> list[float]:
    s = sorted(a % TWO_PI for a in angles)
    return [b - a for a, b in zip(s, s[1:])] + [s[0] + TWO_PI - s[-1]]


def monodromy_shift_ok(model: CentralChargeModel, classes: Sequence[Charge], theta: float,
                       tol: float = 1e-9) -> bool:
    """Going once around the singular point carries the rays of g to those of M g.

    On the sheet past the cut the phase of ``Z_g`` has gained 2 pi a/k, which
    is the phase of ``c_{Mg}``; so the rays of ``g`` on
    ``[cut + 2pi, cut + 4pi)`` shifted back by 2pi are the rays of ``M g``.
    """
    if model.monodromy is None:
        raise InputError("model has no monodromy")
    shift = TWO_PI * model.a / model.k
    cut = model.branch_cut_angle
    for g in classes:
        mg = model.monodromy.apply(g)
        dphi = cmath.phase(model.constant(mg)) - cmath.phase(model.constant(g))
        if abs(math.remainder(dphi - shift, TWO_PI)) > tol:
            return False
        next_sheet = [t - TWO_PI for t in ray_angles_of(model, g, theta, cut + TWO_PI)]
        own = ray_angles_of(model, mg, theta, cut)
        if len(next_sheet) != len(own) or any(abs(x - y) > tol for x, y in zip(next_sheet, own)):
            return False
    return True


def affine_coordinates(model: CentralChargeModel, basis: Sequence[Charge], theta: float,
                       z: complex) -> tuple[float, float]:
    g1, g2 = (model.lattice.check(b) for b in basis)
    if g1[0] * g2[1] - g1[1] * g2[0] == 0 and model.lattice.rank == 2:
        raise InputError("basis charges are dependent")
    rot = cmath.exp(-1j * theta)
    return ((rot * evaluate(model, g1, z)).real, (rot * evaluate(model, g2, z)).real)


@dataclass(frozen=True)
class PhaseRotation:
    theta: float

    @property
    def multiplier(self) -> complex:
        return cmath.exp(-1j * self.theta)

    def then(self, other: "PhaseRotation") -> "PhaseRotation":
        return PhaseRotation(math.remainder(self.theta + other.theta, TWO_PI))

    def apply(self, z: complex) -> complex:
        return self.multiplier * z


def rotate_phase(theta: float) -> PhaseRotation:
    return PhaseRotation(math.remainder(theta, TWO_PI))


# -- gradient flow -----------------------------------------------------------------

@dataclass
class FlowConfig:
    stop_modulus: float = 1e-8
    min_decrease: float = 1e-6
    max_decrease: float = 1e-2
    start_tol: float = 1e-6


@dataclass
class FlowLine:
    points: list[complex] = field(default_factory=list)
    moduli: list[float] = field(default_factory=list)
    max_phase_error: float = 0.0
    terminated: str = ""


def _velocity(model: CentralChargeModel, g: Charge, z: complex) -> complex:
    # gradient of |Z|^2 for holomorphic Z is 2 Z conj(Z')
    zz = evaluate(model, g, z)
    dz = zz * model.exponent / z
    return -2 * zz * dz.conjugate()


def trace_flow(model: CentralChargeModel, g: Charge, start: complex, theta: float,
               step: float = 1e-2, max_steps: int = 200_000,
               config: FlowConfig | None = None) -> FlowLine:
    """Integrate ``z' = -grad |Z_g|^2`` with RK4 and step control."""
    cfg = config or FlowConfig()
    z = complex(start)
    zs = evaluate(model, g, z)
    if abs(zs) == 0:
        raise DomainError("flow starts at a zero of Z")
    err = math.remainder(cmath.phase(zs) - theta, TWO_PI)
    if abs(err) > cfg.start_tol:
        raise InputError(f"start has Arg Z - theta = {err:.3g}, outside {cfg.start_tol}")
    line = FlowLine([z], [abs(zs)])
    h = step
    for _ in range(max_steps):
        if line.moduli[-1] < cfg.stop_modulus:
            line.terminated = "reached zero"
            return line
        while True:
            try:
                k1 = _velocity(model, g, z)
                k2 = _velocity(model, g, z + h / 2 * k1)
                k3 = _velocity(model, g, z + h / 2 * k2)
                k4 = _velocity(model, g, z + h * k3)
            except DomainError:
                h /= 2
                if h < 1e-300:
                    raise NumericalError(f"step underflow near z = {z}")
                continue
            znew = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            try:
                mod = abs(evaluate(model, g, znew))
            except DomainError:
                h /= 2
                continue
            old = line.moduli[-1]
            dec = 1 - (mod / old) ** 2
            if dec > cfg.max_decrease or dec <= 0:
                h /= 2
                if h < 1e-300:
                    raise NumericalError(
                        f"no decreasing step at z = {z}: |Z|^2 ratio {(mod / old) ** 2}")
                continue
            break
        if not mod < line.moduli[-1]:
            raise NumericalError(f"|Z| did not decrease at z = {z}")
        z = znew
        line.points.append(z)
        line.moduli.append(mod)
        e = abs(math.remainder(cmath.phase(evaluate(model, g, z)) - theta, TWO_PI))
        line.max_phase_error = max(line.max_phase_error, e)
        if dec < cfg.max_decrease / 10:
            h *= 2
    line.terminated = "max steps"
    return line


def angle_deviation(line: FlowLine, ray_angle: float) -> float:
    """Largest angular distance of the polyline vertices from the ray."""
    return max(abs(math.remainder(cmath.phase(p) - ray_angle, TWO_PI)) for p in line.points)
