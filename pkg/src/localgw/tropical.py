"""Tropical discs and their weighted count, an independent check on the
scattering computation.

A singular configuration is a list of I_1 points, each with a thimble class
and a line through it (the wall it seeds). A disc is a rooted binary tree:
leaves run along seed lines, each internal vertex joins two edges and sends
out an edge whose class is the sum, and the root edge leaves towards infinity
in the direction of its class. A leaf of weight ``w`` on seed ``i`` carries
``w`` times the thimble class. Several leaves on one seed use distinct
parallel copies of the seed line, the usual way of making the count generic.
"""
from __future__ import annotations

import builtins
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from . import charge as ch
from .charge import Charge, ChargeLattice
from .errors import DegeneracyError, InputError, QueryError

Point = tuple[Fraction, Fraction]
_enumerate = builtins.enumerate


@dataclass(frozen=True)
class SingularPoint:
    position: Point
    thimble: Charge


@dataclass(frozen=True)
class TropicalModel:
    """I_1 points over a lattice whose generator constants are exact plane vectors."""

    name: str
    lattice: ChargeLattice
    points: tuple[SingularPoint, ...]
    # spacing of the parallel copies used for repeated leaves on one seed
    spread: Fraction = Fraction(1, 997)

    def direction(self, g: Charge) -> Point:
        z = self.lattice.central_charge_constant(g)
        v = (Fraction(z.real), Fraction(z.imag))
        if v == (0, 0):
            raise DegeneracyError(f"class {g} has no direction")
        return v


@dataclass(frozen=True)
class Leaf:
    seed: int
    copy: int
    weight: int


@dataclass(frozen=True)
class Vertex:
    children: tuple  # of Leaf | Vertex
    position: Point


@dataclass
class TropicalDisc:
    """A rooted tree with vertex positions; ``root`` is the last vertex (or a leaf)."""

    model: TropicalModel
    root: object
    weights: tuple[tuple[int, ...], ...] = ()

    def leaves(self) -> list[Leaf]:
        return list(_leaves(self.root))

    def vertices(self) -> list[Vertex]:
        return list(_vertices(self.root))


def _leaves(node) -> Iterator[Leaf]:
    if isinstance(node, Leaf):
        yield node
    else:
        for c in node.children:
            yield from _leaves(c)


def _vertices(node) -> Iterator[Vertex]:
    if isinstance(node, Vertex):
        for c in node.children:
            yield from _vertices(c)
        yield node


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def node_class(model: TropicalModel, node) -> Charge:
    if isinstance(node, Leaf):
        return ch.scale(node.weight, model.points[node.seed].thimble)
    parts = [node_class(model, c) for c in node.children]
    out = parts[0]
    for p in parts[1:]:
        out = ch.add(out, p)
    return out


def leaf_line(model: TropicalModel, leaf: Leaf) -> tuple[Point, Point]:
    """(point, direction) of the parallel copy carrying ``leaf``."""
    sp = model.points[leaf.seed]
    v = model.direction(sp.thimble)
    off = model.spread * leaf.copy
    return (sp.position[0] - off * v[1], sp.position[1] + off * v[0]), v


def disc_class(disc: TropicalDisc) -> Charge:
    report = validate(disc)
    if not report.ok:
        raise InputError(f"invalid disc: {report.violations}")
    return node_class(disc.model, disc.root)


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _edge_param(start: Point, v: Point, q: Point) -> Fraction | None:
    d = (q[0] - start[0], q[1] - start[1])
    if _cross(v, d) != 0:
        return None
    return (d[0] * v[0] + d[1] * v[1]) / (v[0] ** 2 + v[1] ** 2)


def validate(disc: TropicalDisc) -> ValidationReport:
    """Check tree shape, balancing and that every edge is a straight segment
    along the direction of its class."""
    m = disc.model
    bad: list[str] = []
    for lf in disc.leaves():
        if not 0 <= lf.seed < len(m.points):
            bad.append(f"leaf on unknown seed {lf.seed}")
        if lf.weight < 1:
            bad.append(f"leaf weight {lf.weight} is not positive")
    if bad:
        return ValidationReport(False, bad)

    def check(node) -> None:
        if isinstance(node, Leaf):
            return
        if len(node.children) < 2:
            bad.append(f"vertex at {node.position} has valency {len(node.children) + 1}")
        for c in node.children:
            check(c)
            cls = node_class(m, c)
            v = m.direction(cls)
            if isinstance(c, Leaf):
                start, _ = leaf_line(m, c)
                if _edge_param(start, v, node.position) is None:
                    bad.append(f"vertex {node.position} is off the line of leaf {c}")
            else:
                t = _edge_param(c.position, v, node.position)
                if t is None or t <= 0:
                    bad.append(f"edge {c.position} -> {node.position} is not along {cls}")
        total = node_class(m, node)
        if total != tuple(sum(x) for x in zip(*(node_class(m, c) for c in node.children))):
            bad.append(f"balancing fails at {node.position}")

    check(disc.root)
    return ValidationReport(not bad, bad)


def automorphism_order(weights: Sequence[Sequence[int]]) -> int:
    """prod_i prod_n (number of weight-n leaves on seed i)!"""
    out = 1
    for w in weights:
        for k in Counter(w).values():
            out *= factorial(k)
    return out


def multiplicity(disc: TropicalDisc) -> Fraction:
    m = disc.model
    mult = Fraction(1)
    for v in disc.vertices():
        if len(v.children) != 2:
            raise InputError("multiplicity needs trivalent vertices")
        a, b = (node_class(m, c) for c in v.children)
        mult *= abs(m.lattice.pair(a, b))
    for lf in disc.leaves():
        w = lf.weight
        mult *= Fraction((-1) ** (w - 1), w * w)
    if disc.weights:
        mult /= automorphism_order(disc.weights)
    return mult


# -- enumeration ---------------------------------------------------------------

def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-decreasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield rest + (first,)


def _decompositions(model: TropicalModel, target: Charge) -> Iterator[tuple[int, ...]]:
    """Multiplicities n_i >= 0 with sum n_i thimble_i = target."""
    k = len(model.points)
    bound = ch.degree(target)
    for ns in itertools.product(range(bound + 1), repeat=k):
        if sum(ns) == 0:
            continue
        tot = (0,) * model.lattice.rank
        for n, sp in zip(ns, model.points):
            tot = ch.add(tot, ch.scale(n, sp.thimble))
        if tot == tuple(target):
            yield ns


def _realizations(model: TropicalModel, leaves: tuple[Leaf, ...], memo: dict) -> list:
    """All tree realizations of a leaf set, as nodes (Leaf or Vertex)."""
    key = leaves
    if key in memo:
        return memo[key]
    if len(leaves) == 1:
        memo[key] = [leaves[0]]
        return memo[key]
    out = []
    first, rest = leaves[0], leaves[1:]
    # split into (part containing the first leaf, the rest), both nonempty
    for r in range(0, len(rest)):
        for combo in itertools.combinations(range(len(rest)), r):
            left = (first,) + tuple(rest[i] for i in combo)
            right = tuple(rest[i] for i in range(len(rest)) if i not in combo)
            for a in _realizations(model, left, memo):
                for b in _realizations(model, right, memo):
                    v = _join(model, a, b)
                    if v is not None:
                        out.append(v)
    memo[key] = out
    return out


def _edge(model: TropicalModel, node) -> tuple[Point, Point, bool]:
    """(start, direction, is_full_line) of the edge leaving ``node``."""
    if isinstance(node, Leaf):
        p, v = leaf_line(model, node)
        return p, v, True
    return node.position, model.direction(node_class(model, node)), False


def _join(model: TropicalModel, a, b) -> Vertex | None:
    ca, cb = node_class(model, a), node_class(model, b)
    if model.lattice.pair(ca, cb) == 0:
        return None
    pa, va, la = _edge(model, a)
    pb, vb, lb = _edge(model, b)
    den = _cross(va, vb)
    if den == 0:
        return None
    d = (pb[0] - pa[0], pb[1] - pa[1])
    ta = _cross(d, vb) / den
    tb = _cross(d, va) / den
    if (not la and ta <= 0) or (not lb and tb <= 0):
        return None
    q = (pa[0] + ta * va[0], pa[1] + ta * va[1])
    for node in (a, b):
        if isinstance(node, Vertex) and node.position == q:
            raise DegeneracyError(f"degenerate vertex at {q}")
    return Vertex((a, b), q)


def enumerate_discs(model: TropicalModel, target: Charge, cutoff: int,
                    theta: float = 0.0) -> list[TropicalDisc]:
    """All trivalent discs of class ``target`` with leaf degree at most ``cutoff``.

    ``theta`` only labels the query; the plane directions already encode the
    phase through the lattice constants.
    """
    target = model.lattice.check(target)
    if not any(target):
        raise InputError("target class must be nonzero")
    if ch.degree(target) > cutoff:
        raise QueryError(f"target {target} is above the cutoff {cutoff}")
    discs = []
    for ns in _decompositions(model, target):
        per_seed = [list(_partitions(n)) for n in ns]
        for weights in itertools.product(*per_seed):
            leaves = tuple(Leaf(i, j, w) for i, ws in _enumerate(weights)
                           for j, w in _enumerate(ws))
            for node in _realizations(model, leaves, {}):
                discs.append(TropicalDisc(model, node, tuple(weights)))
    return discs


enumerate = enumerate_discs  # noqa: A001  (name used by the command line)


def tropical_count(model: TropicalModel, target: Charge, cutoff: int,
                   theta: float = 0.0) -> Fraction:
    return sum((multiplicity(d) for d in enumerate_discs(model, target, cutoff, theta)),
               Fraction(0))


# -- models ----------------------------------------------------------------------

def _lattice(vectors: Sequence[tuple[int, int]], thimbles: Sequence[Charge]) -> ChargeLattice:
    pair = [[vectors[i][0] * vectors[j][1] - vectors[i][1] * vectors[j][0]
             for j in range(len(vectors))] for i in range(len(vectors))]
    return ChargeLattice(pairing=pair, charge_constants=[complex(*v) for v in vectors])


F = Fraction


def model(tag: str, n: int = 2) -> TropicalModel:
    """Deformed configuration of a type II / III / I_n fibre with generic positions.

    Boundary images of the thimbles: II (e1, e2), III (e1, e1, e2), I_n (e1 * n).
    """
    if tag == "II":
        vecs = [(1, 0), (0, 1)]
        pos = [(F(0), F(0)), (F(1), F(-1))]
    elif tag == "III":
        vecs = [(1, 0), (1, 0), (0, 1)]
        pos = [(F(0), F(0)), (F(0), F(2, 7)), (F(1), F(-1))]
    elif tag == "In":
        if n < 1:
            raise InputError("I_n needs n >= 1")
        vecs = [(1, 0)] * n
        pos = [(F(0), F(i, 5)) for i in range(n)]
    else:
        raise InputError(f"no tropical model for type {tag!r}")
    r = len(vecs)
    lat = _lattice(vecs, [])
    pts = tuple(SingularPoint(p, ch.unit(r, i)) for i, p in _enumerate(pos))
    return TropicalModel(tag if tag != "In" else f"I{n}", lat, pts)
