"""Scattering diagrams: single-point completion, invariant extraction and the
local models of singular fibres.

A single-point diagram consists of *lines* (initial walls through the point,
crossed twice by a small loop) and *rays* (outgoing only). Ordering walls by
the angle of their outgoing direction, consistency around the point reads

    prod_{lines, increasing angle} K  =  prod_{all walls, decreasing angle} K

(leftmost factor applied last). Completion solves for the missing rays one
degree at a time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import charge as ch
from .charge import Charge, ChargeLattice
from .errors import ConsistencyError, DegeneracyError, InputError, StateError
from .series import TruncatedSeries, log_series, mobius
from .wallcross import EXPONENT_SIGN, Endomorphism, WallAutomorphism, compose

ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class Wall:
    direction: Charge
    function: TruncatedSeries
    base: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    line: bool = False
    angle: float | None = field(default=None, compare=False)  # cached phase

    def automorphism(self, lattice: ChargeLattice) -> WallAutomorphism:
        return WallAutomorphism(lattice, self.direction, self.function)


@dataclass(frozen=True)
class ScatteringDiagram:
    lattice: ChargeLattice
    walls: tuple[Wall, ...]
    cutoff: int
    kind: str = "single-point"
    consistent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "walls", tuple(self.walls))
        for w in self.walls:
            d = self.lattice.check(w.direction)
            if not ch.is_primitive(d):
                raise InputError(f"wall direction {d} is not primitive")
            if w.function.cutoff != self.cutoff:
                raise InputError("wall function cutoff does not match the diagram")

    def angle(self, d: Charge) -> float:
        return phase(self.lattice, d)

    def walls_in_direction(self, d: Charge) -> list[Wall]:
        d = tuple(d)
        return [w for w in self.walls if w.direction == d]

    def directions(self) -> list[Charge]:
        return sorted({w.direction for w in self.walls})


def phase(lattice: ChargeLattice, d: Charge) -> float:
    """Angle in [0, 2pi) of the central-charge constant of ``d``."""
    z = lattice.central_charge_constant(d)
    if abs(z) < 1e-300:
        raise DegeneracyError(f"class {d} has vanishing central charge")
    return math.atan2(z.imag, z.real) % (2 * math.pi)


def _ordered(lattice: ChargeLattice, items: Iterable[tuple[Charge, object]], decreasing: bool):
    """Sort (direction, payload) by phase; equal phases need commuting directions."""
    items = list(items)
    keyed = sorted(((phase(lattice, d), d, p) for d, p in items),
                   key=lambda t: (t[0], t[1]), reverse=decreasing)
    for (a1, d1, _), (a2, d2, _) in zip(keyed, keyed[1:]):
        if abs(a1 - a2) < ANGLE_TOL and d1 != d2 and lattice.pair(d1, d2) != 0:
            raise DegeneracyError(
                f"directions {d1} and {d2} share a phase but have pairing "
                f"{lattice.pair(d1, d2)}; perturb the central charges")
    _check_half_plane([a for a, _, _ in keyed])
    return [(d, p) for _, d, p in keyed]


def _check_half_plane(angles: Sequence[float]) -> None:
    if len(angles) < 2:
        return
    s = sorted(angles)
    gaps = [b - a for a, b in zip(s, s[1:])] + [s[0] + 2 * math.pi - s[-1]]
    if max(gaps) <= math.pi + 1e-12:
        raise DegeneracyError("wall phases do not fit in an open half-plane")


def _merge(lattice: ChargeLattice, walls: Iterable[Wall], cutoff: int) -> dict[Charge, TruncatedSeries]:
    funcs: dict[Charge, TruncatedSeries] = {}
    for w in walls:
        funcs[w.direction] = funcs[w.direction] * w.function if w.direction in funcs else w.function
    return funcs


def _product(lattice: ChargeLattice, funcs: dict[Charge, TruncatedSeries], cutoff: int,
             decreasing: bool) -> Endomorphism:
    order = _ordered(lattice, funcs.items(), decreasing)
    return compose([WallAutomorphism(lattice, d, f) for d, f in order], lattice, cutoff)


def _check_cone(lattice: ChargeLattice, walls: Sequence[Wall]) -> None:
    for w in walls:
        if any(x < 0 for x in w.direction):
            raise InputError(
                f"single-point walls must lie in the positive cone; got {w.direction}")


def complete_single_point(initial: ScatteringDiagram) -> ScatteringDiagram:
    """Add rays until the loop product around the point is the identity."""
    lat, lam = initial.lattice, initial.cutoff
    walls = list(initial.walls)
    if len({w.base for w in walls}) > 1:
        raise InputError("single-point completion needs a common base point")
    _check_cone(lat, walls)
    base = walls[0].base if walls else (Fraction(0), Fraction(0))
    lines = _merge(lat, (w for w in walls if w.line), lam)
    target = _product(lat, lines, lam, decreasing=False)
    funcs = _merge(lat, walls, lam)
    added: dict[Charge, TruncatedSeries] = {}
    for d in range(1, lam + 1):
        current = _product(lat, funcs, lam, decreasing=True)
        corrections = _degree_corrections(lat, target, current, d)
        for m, a in corrections.items():
            k, prim = ch.primitive_part(m)
            term = TruncatedSeries.one_plus(m, lam, a)
            funcs[prim] = funcs[prim] * term if prim in funcs else term
            added[prim] = added[prim] * term if prim in added else term
    final = _product(lat, funcs, lam, decreasing=True)
    if final != target:
        diff = final.first_difference(target)
        raise ConsistencyError(f"completion did not converge: {diff}")
    new_walls = tuple(walls) + tuple(
        Wall(direction=p, function=f, base=base, angle=phase(lat, p))
        for p, f in sorted(added.items()))
    return ScatteringDiagram(lat, new_walls, lam, initial.kind, consistent=True)


def _degree_corrections(lat: ChargeLattice, target: Endomorphism, current: Endomorphism,
                        d: int) -> dict[Charge, Fraction]:
    """Coefficients ``a_m`` (degree ``d``) of walls ``1 + a_m z^m`` fixing the defect."""
    defects: dict[Charge, list[Fraction]] = {}
    for i, (u, v) in enumerate(zip(target.units, current.units)):
        for m in set(u) | set(v):
            if ch.degree(m) != d:
                continue
            delta = u.coefficient(m) - v.coefficient(m)
            if delta:
                defects.setdefault(m, [Fraction(0)] * lat.rank)[i] = delta
    out: dict[Charge, Fraction] = {}
    for m, deltas in defects.items():
        _, prim = ch.primitive_part(m)
        a = None
        for i, g in enumerate(lat.generators()):
            e = EXPONENT_SIGN * lat.pair(g, prim)
            if e:
                cand = deltas[i] / e
                if a is None:
                    a = cand
                elif a != cand:
                    raise ConsistencyError(f"inconsistent defect at z^{m}: {deltas}")
            elif deltas[i]:
                raise ConsistencyError(f"defect at z^{m} on generator {i} cannot be absorbed")
        if a is None:
            raise ConsistencyError(f"defect at z^{m} lies in the kernel of the pairing")
        out[m] = a
    return out


def verify_consistency(d: ScatteringDiagram) -> bool:
    """Re-check the loop identity from scratch, at every joint of a planar diagram."""
    if d.kind == "planar" or len({w.base for w in d.walls}) > 1:
        return _verify_planar(d)
    lines = _merge(d.lattice, (w for w in d.walls if w.line), d.cutoff)
    funcs = _merge(d.lattice, d.walls, d.cutoff)
    return (_product(d.lattice, lines, d.cutoff, decreasing=False)
            == _product(d.lattice, funcs, d.cutoff, decreasing=True))


# -- invariants ---------------------------------------------------------------

@dataclass
class InvariantTable:
    """Rational invariants keyed by charge; ``omega_tilde`` and ``omega``."""

    lattice: ChargeLattice
    cutoff: int
    omega_tilde: dict[Charge, Fraction] = field(default_factory=dict)
    omega: dict[Charge, Fraction] = field(default_factory=dict)
    chamber: str = "asymptotic"

    def value(self, g: Charge, which: str = "omega") -> Fraction:
        g = tuple(g)
        if ch.degree(g) > self.cutoff:
            from .errors import QueryError
            raise QueryError(f"class {g} is above the cutoff {self.cutoff}")
        return getattr(self, which).get(g, Fraction(0))

    def support(self, which: str = "omega") -> dict[Charge, Fraction]:
        return {k: v for k, v in getattr(self, which).items() if v}

    def merge(self, other: "InvariantTable") -> "InvariantTable":
        out = InvariantTable(self.lattice, self.cutoff, dict(self.omega_tilde), dict(self.omega), self.chamber)
        for src, dst in ((other.omega_tilde, out.omega_tilde), (other.omega, out.omega)):
            for k, v in src.items():
                dst[k] = dst.get(k, Fraction(0)) + v
        return out

    def to_json(self) -> dict:
        def enc(d):
            return [{"charge": list(k), "value": _fstr(v)} for k, v in sorted(d.items()) if v]
        return {"cutoff": self.cutoff, "chamber": self.chamber,
                "omega_tilde": enc(self.omega_tilde), "omega": enc(self.omega)}

    @classmethod
    def from_json(cls, data: dict, lattice: ChargeLattice) -> "InvariantTable":
        def dec(items):
            return {tuple(t["charge"]): Fraction(t["value"]) for t in items}
        return cls(lattice, data["cutoff"], dec(data.get("omega_tilde", [])),
                   dec(data.get("omega", [])), data.get("chamber", "asymptotic"))


def _fstr(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def omega_from_tilde(lattice: ChargeLattice, prim: Charge, tilde: dict[int, Fraction],
                     cutoff_multiple: int) -> dict[int, Fraction]:
    """Moebius/quadratic-refinement repackaging of multiple-cover invariants.

    ``tilde[d]`` is the invariant of ``d * prim``; returns ``Omega(d * prim)``.
    """
    c = lattice.quadratic_refinement(prim)
    out = {}
    for d in range(1, cutoff_multiple + 1):
        total = Fraction(0)
        for k in range(1, d + 1):
            if d % k == 0:
                mu = mobius(k)
                if mu:
                    total += Fraction(c ** (d // k) * mu, k * k) * tilde.get(d // k, Fraction(0))
        out[d] = -total
    return out


def invariants_from_function(lattice: ChargeLattice, prim: Charge, f: TruncatedSeries,
                             cutoff: int) -> tuple[dict[Charge, Fraction], dict[Charge, Fraction]]:
    """Read the invariants of the multiples of ``prim`` off a wall function."""
    lg = log_series(f)
    tilde: dict[int, Fraction] = {}
    dmax = 0
    while ch.degree(ch.scale(dmax + 1, prim)) <= cutoff:
        dmax += 1
    for d in range(1, dmax + 1):
        tilde[d] = lg.coefficient(ch.scale(d, prim)) / d
    om = omega_from_tilde(lattice, prim, tilde, dmax)
    return ({ch.scale(d, prim): v for d, v in tilde.items()},
            {ch.scale(d, prim): v for d, v in om.items()})


def extract_invariants(d: ScatteringDiagram, query_direction: Charge | None = None,
                       reality: bool = True) -> InvariantTable:
    """Invariants of the walls in ``query_direction`` (all directions if None)."""
    if not d.consistent:
        raise StateError("extract_invariants needs a completed (consistent) diagram")
    lat, lam = d.lattice, d.cutoff
    if query_direction is not None:
        q = lat.check(query_direction)
        if not ch.is_primitive(q):
            raise InputError(f"query direction {q} is not primitive")
        dirs = [q]
    else:
        dirs = d.directions()
    table = InvariantTable(lat, lam)
    for p in dirs:
        ws = d.walls_in_direction(p)
        f = TruncatedSeries.one(lat.rank, lam)
        for w in ws:
            f = f * w.function
        tilde, om = invariants_from_function(lat, p, f, lam)
        for src, dst in ((tilde, table.omega_tilde), (om, table.omega)):
            for k, v in src.items():
                dst[k] = dst.get(k, Fraction(0)) + v
                if reality:
                    nk = ch.neg(k)
                    dst[nk] = dst.get(nk, Fraction(0)) + v
    table.omega_tilde = {k: v for k, v in table.omega_tilde.items() if v}
    table.omega = {k: v for k, v in table.omega.items() if v}
    return table


# -- planar diagrams -------------------------------------------------------------

Point = tuple[Fraction, Fraction]


def plane_vector(lattice: ChargeLattice, d: Charge) -> Point:
    """Exact plane direction of a class, read off the central-charge constant."""
    z = lattice.central_charge_constant(d)
    try:
        v = (Fraction(z.real), Fraction(z.imag))
    except (OverflowError, ValueError) as exc:
        raise InputError(f"central charge of {d} is not finite") from exc
    if v == (0, 0):
        raise DegeneracyError(f"class {d} has vanishing central charge")
    return v


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _param(lattice: ChargeLattice, w: Wall, q: Point) -> Fraction | None:
    """Parameter t with q = base + t v on the support of ``w``, else None."""
    v = plane_vector(lattice, w.direction)
    dx, dy = q[0] - w.base[0], q[1] - w.base[1]
    if _cross(v, (dx, dy)) != 0:
        return None
    t = (dx * v[0] + dy * v[1]) / (v[0] ** 2 + v[1] ** 2)
    if t < 0 and not w.line:
        return None
    return t


def _intersection(lattice: ChargeLattice, a: Wall, b: Wall) -> Point | None:
    va, vb = plane_vector(lattice, a.direction), plane_vector(lattice, b.direction)
    den = _cross(va, vb)
    if den == 0:
        if _cross(va, (b.base[0] - a.base[0], b.base[1] - a.base[1])) == 0 and \
                lattice.pair(a.direction, b.direction) != 0:
            raise DegeneracyError("overlapping walls with nonzero pairing; perturb the phase")
        return None
    dx, dy = b.base[0] - a.base[0], b.base[1] - a.base[1]
    ta = _cross((dx, dy), vb) / den
    tb = _cross((dx, dy), va) / den
    if (ta < 0 and not a.line) or (tb < 0 and not b.line):
        return None
    q = (a.base[0] + ta * va[0], a.base[1] + ta * va[1])
    if ta == 0 and tb == 0 and not a.line and not b.line:
        return None  # rays leaving a common joint
    return q


def _local_walls(lattice: ChargeLattice, walls: Sequence[Wall], q: Point) -> list[Wall]:
    out = []
    for w in walls:
        t = _param(lattice, w, q)
        if t is None:
            continue
        through = w.line or t > 0
        out.append(replace(w, base=q, line=through))
    return out


def complete_planar(initial: ScatteringDiagram, max_rounds: int = 10_000) -> ScatteringDiagram:
    """Complete a diagram whose walls start at several rational points.

    Every pairwise intersection of supports is a joint; at each joint the
    walls passing through act as lines and the walls starting there as rays,
    and the local single-point completion supplies the missing rays. Joints
    are revisited until no new wall appears.
    """
    lat, lam = initial.lattice, initial.cutoff
    walls = [replace(w, base=(Fraction(w.base[0]), Fraction(w.base[1]))) for w in initial.walls]
    _check_cone(lat, walls)
    for w in walls:
        plane_vector(lat, w.direction)
    done: dict[Point, frozenset] = {}
    for _ in range(max_rounds):
        joints: set[Point] = set()
        for i in range(len(walls)):
            for j in range(i + 1, len(walls)):
                if lat.pair(walls[i].direction, walls[j].direction) == 0:
                    continue
                q = _intersection(lat, walls[i], walls[j])
                if q is not None:
                    joints.add(q)
        changed = False
        for q in sorted(joints):
            local = _local_walls(lat, walls, q)
            key = frozenset((w.direction, w.line, w.function) for w in local)
            if done.get(q) == key:
                continue
            if any(w.line for w in local):
                fixed = complete_single_point(ScatteringDiagram(lat, local, lam))
                new = list(fixed.walls[len(local):])
                if new:
                    walls.extend(new)
                    changed = True
                    local = _local_walls(lat, walls, q)
                    key = frozenset((w.direction, w.line, w.function) for w in local)
            done[q] = key
        if not changed:
            return ScatteringDiagram(lat, tuple(walls), lam, "planar", consistent=True)
    raise ConsistencyError("planar completion did not terminate")


def _verify_planar(d: ScatteringDiagram) -> bool:
    lat, walls = d.lattice, list(d.walls)
    joints = set()
    for i in range(len(walls)):
        for j in range(i + 1, len(walls)):
            if lat.pair(walls[i].direction, walls[j].direction):
                q = _intersection(lat, walls[i], walls[j])
                if q is not None:
                    joints.add(q)
    for q in sorted(joints):
        local = _local_walls(lat, walls, q)
        if any(w.line for w in local) and \
                not verify_consistency(ScatteringDiagram(lat, tuple(local), d.cutoff)):
            return False
    return True


# -- local models ------------------------------------------------------------------

@dataclass(frozen=True)
class LocalModel:
    """Initial seed configuration of a deformed singular fibre.

    ``boundary[i]`` is the image of generator ``i`` in the rank-2 lattice of
    boundary classes, the basis used for reporting tables.
    """

    tag: str
    diagram: ScatteringDiagram
    boundary: tuple[Charge, ...]
    route: str = "default"

    def complete(self) -> ScatteringDiagram:
        if self.diagram.kind == "planar":
            return complete_planar(self.diagram)
        return complete_single_point(self.diagram)


def _seed_walls(lat: ChargeLattice, lam: int, bases: Sequence[tuple]) -> tuple[Wall, ...]:
    out = []
    for i, b in enumerate(bases):
        g = ch.unit(lat.rank, i)
        out.append(Wall(direction=g, function=TruncatedSeries.one_plus(g, lam),
                        base=(Fraction(b[0]), Fraction(b[1])), line=True, angle=phase(lat, g)))
    return tuple(out)


def _pulled_back(boundary: Sequence[Charge], names: Sequence[str], orientation: int = 1) -> ChargeLattice:
    pairing = [[orientation * (a[0] * b[1] - a[1] * b[0]) for b in boundary] for a in boundary]
    return ChargeLattice(pairing=pairing, charge_constants=[complex(*v) for v in boundary],
                         names=tuple(names))


# second type II cluster: on the gamma1 + gamma2 ray of the first, pushed off it
IV_SECOND_CLUSTER = (Fraction(22, 7), Fraction(20, 7))
IV_FOUR_I1_BASES = ((0, 0), (Fraction(1, 2), Fraction(-1, 3)), (Fraction(2, 5), Fraction(1, 7)),
                    (Fraction(-1, 11), Fraction(1, 13)))


def local_model(tag: str, cutoff: int, n: int | None = None, route: str = "default",
                orientation: int = 1) -> LocalModel:
    """Seeds of the deformation pictures of I_n, II, III and IV fibres.

    IV has two routes: ``"two-II"`` (default), two type II clusters with the
    same basis at distinct points, and ``"four-I1"``, four I_1 seeds whose
    vanishing cycles e1, e1, e1, e2 - e1 factor the IV monodromy.
    """
    lam = cutoff
    if lam < 1:
        raise InputError("cutoff must be at least 1")
    origin = (0, 0)
    if tag in ("In", "I_n") or (tag.startswith("I") and tag[1:].isdigit()):
        k = n if n is not None else int(tag[1:]) if tag[1:].isdigit() else None
        if not k or k < 1:
            raise InputError("I_n needs n >= 1")
        boundary = ((1, 0),) * k
        lat = _pulled_back(boundary, [f"g{i + 1}" for i in range(k)], orientation)
        d = ScatteringDiagram(lat, _seed_walls(lat, lam, [origin] * k), lam)
        return LocalModel(f"I{k}", d, boundary)
    if tag == "II":
        boundary = ((1, 0), (0, 1))
        lat = _pulled_back(boundary, ["g1", "g2"], orientation)
        return LocalModel(tag, ScatteringDiagram(lat, _seed_walls(lat, lam, [origin] * 2), lam), boundary)
    if tag == "III":
        boundary = ((1, 0), (1, 0), (0, 1))
        lat = _pulled_back(boundary, ["g1", "g2", "g3"], orientation)
        return LocalModel(tag, ScatteringDiagram(lat, _seed_walls(lat, lam, [origin] * 3), lam), boundary)
    if tag == "IV":
        if route in ("default", "two-II"):
            boundary = ((1, 0), (0, 1), (1, 0), (0, 1))
            lat = _pulled_back(boundary, ["a1", "a2", "b1", "b2"], orientation)
            bases = [origin, origin, IV_SECOND_CLUSTER, IV_SECOND_CLUSTER]
            d = ScatteringDiagram(lat, _seed_walls(lat, lam, bases), lam, "planar")
            return LocalModel(tag, d, boundary, "two-II")
        if route == "four-I1":
            boundary = ((1, 0), (1, 0), (1, 0), (-1, 1))
            lat = _pulled_back(boundary, ["l1", "l2", "l3", "c"], orientation)
            d = ScatteringDiagram(lat, _seed_walls(lat, lam, IV_FOUR_I1_BASES), lam, "planar")
            return LocalModel(tag, d, boundary, "four-I1")
        raise InputError(f"unknown route {route!r} for type IV")
    if tag in ("I0*", "I_0*"):
        raise InputError("I0* values are not computed; only the symmetry checker is provided")
    raise InputError(f"unsupported type {tag!r}")


def pushforward(table: InvariantTable, boundary: Sequence[Charge], cutoff: int | None = None
                ) -> dict[Charge, dict[str, Fraction]]:
    """Sum a lifted table over the fibres of the boundary map."""
    lam = table.cutoff if cutoff is None else cutoff
    out: dict[Charge, dict[str, Fraction]] = {}
    for which in ("omega_tilde", "omega"):
        for k, v in getattr(table, which).items():
            if not v:
                continue
            b = tuple(sum(k[i] * boundary[i][c] for i in range(len(k))) for c in range(2))
            if not any(b) or ch.degree(b) > lam:
                continue
            slot = out.setdefault(b, {"omega_tilde": Fraction(0), "omega": Fraction(0)})
            slot[which] += v
    return {k: v for k, v in out.items() if v["omega"] or v["omega_tilde"]}


def degree_functional(boundary: Sequence[Charge]) -> tuple[Fraction, Fraction]:
    """Linear form equal to 1 on every boundary vector.

    On the seed cone it turns boundary classes into lifted degrees, so it
    tells how far to complete to cover a boundary cutoff.
    """
    vs = list(dict.fromkeys(tuple(b) for b in boundary))
    if len(vs) == 1:
        a, b = vs[0]
        phi = (Fraction(1, a), Fraction(0)) if a else (Fraction(0), Fraction(1, b))
    else:
        (a, b), (c, d) = vs[0], vs[1]
        det = a * d - b * c
        if det == 0:
            raise DegeneracyError("boundary vectors are parallel")
        phi = (Fraction(d - b, det), Fraction(a - c, det))
    if any(phi[0] * v[0] + phi[1] * v[1] != 1 for v in vs):
        raise InputError("boundary vectors are not on one affine line")
    return phi


def lifted_cutoff(boundary: Sequence[Charge], cutoff: int) -> int:
    """Lifted cutoff covering every boundary class of degree <= cutoff."""
    phi = degree_functional(boundary)
    return max(1, math.ceil(cutoff * max(abs(phi[0]), abs(phi[1]))))


def boundary_table(model: LocalModel, cutoff: int, completed: ScatteringDiagram | None = None
                   ) -> InvariantTable:
    """Completed invariants of a model on the boundary lattice, degree <= cutoff.

    ``model`` must have been built with at least ``lifted_cutoff(boundary, cutoff)``.
    """
    need = lifted_cutoff(model.boundary, cutoff)
    if model.diagram.cutoff < need:
        raise InputError(f"model cutoff {model.diagram.cutoff} is below the needed {need}")
    d = completed or model.complete()
    pushed = pushforward(extract_invariants(d), model.boundary, cutoff)
    lat = _pulled_back(((1, 0), (0, 1)), ["g1", "g2"])
    return InvariantTable(lat, cutoff,
                          {k: v["omega_tilde"] for k, v in pushed.items() if v["omega_tilde"]},
                          {k: v["omega"] for k, v in pushed.items() if v["omega"]})


def boundary_invariants(tag: str, cutoff: int, n: int | None = None, route: str = "default",
                        orientation: int = 1) -> InvariantTable:
    """Build, complete and push forward a local model in one go."""
    probe = local_model(tag, 1, n, route)
    lam = lifted_cutoff(probe.boundary, cutoff)
    return boundary_table(local_model(tag, lam, n, route, orientation), cutoff)


def monodromy_invariance_check(table: InvariantTable, m, which: str = "omega_tilde") -> bool:
    """``table(M g) == table(g)`` for every rank-2 class where both are in range."""
    from .monodromy import M2
    m = M2(m)
    if table.lattice.rank != 2:
        raise InputError("monodromy invariance needs a rank-2 table")
    vals = getattr(table, which)
    lam = table.cutoff
    for a in range(-lam, lam + 1):
        for b in range(-lam, lam + 1):
            g = (a, b)
            if not any(g) or ch.degree(g) > lam:
                continue
            mg = m.apply(g)
            if ch.degree(mg) > lam:
                continue
            if vals.get(g, Fraction(0)) != vals.get(mg, Fraction(0)):
                return False
    return True


def deformation_agreement(route_a: InvariantTable, route_b: InvariantTable, cutoff: int) -> bool:
    """Two boundary tables agree on every class of degree <= cutoff."""
    if route_a.lattice.rank != route_b.lattice.rank:
        raise InputError("tables live on different lattices; supply a basis identification")
    for which in ("omega_tilde", "omega"):
        a, b = getattr(route_a, which), getattr(route_b, which)
        for k in set(a) | set(b):
            if ch.degree(k) <= cutoff and a.get(k, Fraction(0)) != b.get(k, Fraction(0)):
                return False
    return True


def table_difference(a: InvariantTable, b: InvariantTable, cutoff: int, which: str = "omega"
                     ) -> list[tuple[Charge, Fraction, Fraction]]:
    va, vb = getattr(a, which), getattr(b, which)
    return sorted((k, va.get(k, Fraction(0)), vb.get(k, Fraction(0)))
                  for k in set(va) | set(vb)
                  if ch.degree(k) <= cutoff and va.get(k, Fraction(0)) != vb.get(k, Fraction(0)))


# -- I_0* symmetry ------------------------------------------------------------------

@dataclass
class SymmetryReport:
    ok: bool
    violation: tuple[Charge, Charge] | None = None
    values: tuple[Fraction, Fraction] | None = None

    def __bool__(self) -> bool:
        return self.ok


_SL2_GENERATORS = (((0, -1), (1, 0)), ((1, 1), (0, 1)), ((1, -1), (0, 1)), ((0, 1), (-1, 0)))


def sl2_symmetry_check(values: dict[Charge, Fraction], bound: int) -> SymmetryReport:
    """A candidate rank-2 table must be constant on SL(2, Z) orbits.

    Checked on the generators S, T (and inverses) between classes of degree at
    most ``bound``; missing classes count as 0.
    """
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            g = (a, b)
            if not any(g) or ch.degree(g) > bound:
                continue
            for (p, q), (r, s) in _SL2_GENERATORS:
                h = (p * a + q * b, r * a + s * b)
                if ch.degree(h) > bound:
                    continue
                x, y = Fraction(values.get(g, 0)), Fraction(values.get(h, 0))
                if x != y:
                    return SymmetryReport(False, (g, h), (x, y))
    return SymmetryReport(True)


def divisibility_table(fn, bound: int) -> dict[Charge, Fraction]:
    """Table ``g -> fn(divisibility(g))`` on classes of degree <= bound."""
    return {(a, b): Fraction(fn(ch.divisibility((a, b))))
            for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)
            if (a, b) != (0, 0) and abs(a) + abs(b) <= bound}


# -- JSON ---------------------------------------------------------------------------

def diagram_to_json(d: ScatteringDiagram) -> dict:
    return {
        "lattice": d.lattice.to_json(),
        "cutoff": d.cutoff,
        "kind": d.kind,
        "consistent": d.consistent,
        "walls": [{"base": [_fstr(w.base[0]), _fstr(w.base[1])],
                   "direction": list(w.direction),
                   "line": w.line,
                   "function": w.function.to_json()["terms"]} for w in d.walls],
    }


def diagram_from_json(data: dict) -> ScatteringDiagram:
    known = {"lattice", "cutoff", "kind", "consistent", "walls"}
    extra = set(data) - known
    if extra:
        raise InputError(f"unknown diagram keys: {sorted(extra)}")
    try:
        lat = ChargeLattice.from_json(data["lattice"])
        lam = int(data["cutoff"])
        walls = []
        for w in data["walls"]:
            f = TruncatedSeries.from_json({"cutoff": lam, "terms": w["function"]}, lat.rank)
            walls.append(Wall(direction=tuple(w["direction"]), function=f,
                              base=(Fraction(w.get("base", [0, 0])[0]), Fraction(w.get("base", [0, 0])[1])),
                              line=bool(w.get("line", True))))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed diagram: {exc}") from exc
    kind = data.get("kind") or ("planar" if len({w.base for w in walls}) > 1 else "single-point")
    if kind not in ("single-point", "planar"):
        raise InputError(f"unknown diagram kind {kind!r}")
    return ScatteringDiagram(lat, walls, lam, kind, bool(data.get("consistent", False)))


def complete(d: ScatteringDiagram) -> ScatteringDiagram:
    return complete_planar(d) if d.kind == "planar" else complete_single_point(d)
