"""Command line: ``localgw <command> ...``.

Exit status: 0 success, 2 bad input, 3 degenerate configuration,
4 consistency failure, 5 numerical failure. JSON output has sorted keys and
rationals as strings; SVG coordinates use 9 significant digits.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import geometry, monodromy, scatter, svg, tropical, weierstrass
from .charge import ChargeLattice
from .errors import (ConsistencyError, DegeneracyError, InputError, LocalGWError,
                     NumericalError)
from .scatter import InvariantTable, _fstr

CUTOFF_ENV = "LOCALGW_CUTOFF"
FALLBACK_CUTOFF = 6
COMMANDS = ("scatter", "pentagon-check", "classify", "rays", "flow", "tropical", "weierstrass", "compare")

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE, EXIT_CONSISTENCY, EXIT_NUMERICAL = 0, 2, 3, 4, 5


def default_cutoff() -> int:
    raw = os.environ.get(CUTOFF_ENV)
    if raw is None or raw == "":
        return FALLBACK_CUTOFF
    try:
        v = int(raw)
    except ValueError:
        raise InputError(f"{CUTOFF_ENV}={raw!r} is not an integer") from None
    if v < 1:
        raise InputError(f"{CUTOFF_ENV} must be at least 1")
    return v


@dataclass
class RunConfig:
    command: str
    cutoff: int = FALLBACK_CUTOFF
    input: Path | None = None
    output: Path | None = None
    model: str | None = None
    theta: float = 0.0
    tolerances: dict[str, float] = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    KNOWN_TOLERANCES = ("start_tol", "stop_modulus", "min_decrease", "max_decrease")

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if not isinstance(self.cutoff, int) or self.cutoff < 1:
            raise InputError("cutoff must be an integer >= 1")
        if not math.isfinite(self.theta):
            raise InputError("theta must be finite")
        bad = set(self.tolerances) - set(self.KNOWN_TOLERANCES)
        if bad:
            raise InputError(f"unknown tolerance keys: {sorted(bad)}")
        if self.input is not None and not Path(self.input).is_file():
            raise InputError(f"input file {self.input} does not exist")
        for p in (self.output,):
            if p is not None and not Path(p).parent.exists():
                raise InputError(f"output directory of {p} does not exist")


# -- formatting ------------------------------------------------------------------

def _plain(x):
    if isinstance(x, Fraction):
        return _fstr(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, str) else k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2) + "\n"


def _emit(text: str, path: Path | None, out) -> None:
    if path is None:
        out.write(text)
    else:
        Path(path).write_text(text)


def table_json(table: InvariantTable, basis: str) -> dict:
    data = table.to_json()
    data["lattice"] = table.lattice.to_json()
    data["basis"] = basis
    return data


def table_from_json(data: dict) -> InvariantTable:
    known = {"lattice", "cutoff", "chamber", "omega_tilde", "omega", "basis", "model", "source"}
    extra = set(data) - known
    if extra:
        raise InputError(f"unknown table keys: {sorted(extra)}")
    try:
        lat = ChargeLattice.from_json(data["lattice"])
        return InvariantTable.from_json(data, lat)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed table: {exc}") from exc


def compare_tables(computed: InvariantTable, golden: InvariantTable) -> list[str]:
    """One line per class whose value differs; empty means agreement."""
    if computed.lattice.rank != golden.lattice.rank or computed.lattice.pairing != golden.lattice.pairing:
        raise InputError("tables are on different lattices")
    if computed.cutoff != golden.cutoff:
        raise InputError(f"cutoffs differ: {computed.cutoff} vs {golden.cutoff}")
    lines = []
    for which in ("omega", "omega_tilde"):
        a, b = getattr(computed, which), getattr(golden, which)
        if which == "omega_tilde" and not b:
            continue  # golden tables may quote only Omega
        for k in sorted(set(a) | set(b)):
            x, y = a.get(k, Fraction(0)), b.get(k, Fraction(0))
            if x != y:
                lines.append(f"{which} {list(k)}: computed {_fstr(x)}, golden {_fstr(y)}")
    return lines


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _floats(text: str, what: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{what} must be comma-separated numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise InputError(f"{what} must be finite")
    return vals


# -- commands --------------------------------------------------------------------

def model_table(tag: str, cutoff: int, n: int | None = None, route: str = "default"
                ) -> tuple[InvariantTable, str]:
    """Invariants of a local model: the seed lattice for I_n, II, III and the
    boundary lattice for IV (whose seed lattice is only an auxiliary lift)."""
    if tag == "IV":
        return scatter.boundary_invariants(tag, cutoff, n, route), "boundary"
    m = scatter.local_model(tag, cutoff, n, route)
    return scatter.extract_invariants(m.complete()), "seed"


def cmd_scatter(cfg: RunConfig, out) -> int:
    o = cfg.options
    if cfg.input is not None:
        try:
            data = json.loads(Path(cfg.input).read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{cfg.input}: {exc}") from exc
        d = scatter.complete(scatter.diagram_from_json(data))
        table, basis = scatter.extract_invariants(d), "seed"
    elif cfg.model:
        if cfg.model == "IV":
            m = scatter.local_model("IV", 1, route=o.get("route") or "default")
            lam = scatter.lifted_cutoff(m.boundary, cfg.cutoff)
            m = scatter.local_model("IV", lam, route=o.get("route") or "default")
            d = m.complete()
            table, basis = scatter.boundary_table(m, cfg.cutoff, d), "boundary"
        else:
            m = scatter.local_model(cfg.model, cfg.cutoff, o.get("n"), o.get("route") or "default")
            d = m.complete()
            table, basis = scatter.extract_invariants(d), "seed"
    else:
        raise InputError("scatter needs --model or --in")
    if not scatter.verify_consistency(d):
        raise ConsistencyError("completed diagram failed re-verification")
    if cfg.output is not None:
        Path(cfg.output).write_text(dumps(scatter.diagram_to_json(d)))
    if o.get("svg"):
        Path(o["svg"]).write_text(svg.diagram_svg(d))
    _emit(dumps(table_json(table, basis)), o.get("invariants"), out)
    return EXIT_OK


def cmd_pentagon(cfg: RunConfig, out) -> int:
    from .charge import standard_rank2
    from .wallcross import pentagon_check
    rep = pentagon_check(standard_rank2(), cfg.cutoff)
    out.write(dumps({"cutoff": cfg.cutoff, "ok": rep.ok, "detail": rep.detail}))
    return EXIT_OK if rep.ok else EXIT_CONSISTENCY


def cmd_classify(cfg: RunConfig, out) -> int:
    v = _ints(cfg.options["matrix"], "--matrix")
    if len(v) != 4:
        raise InputError("--matrix needs four integers a,b,c,d")
    m = monodromy.M2((v[:2], v[2:]))
    out.write(monodromy.kodaira_classify(m) + "\n")
    return EXIT_OK


# boundary classes carrying invariants, one per sign
DEFAULT_RAY_CLASSES = {
    "II": [(1, 0), (0, 1), (1, 1)],
    "III": [(1, 0), (0, 1), (1, 1), (2, 1)],
    "IV": [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)],
}


def _model(cfg: RunConfig) -> geometry.CentralChargeModel:
    cut = cfg.options.get("cut")
    return geometry.model_for(cfg.model or "II", math.pi if cut is None else cut)


def cmd_rays(cfg: RunConfig, out) -> int:
    model = _model(cfg)
    if cfg.options.get("classes"):
        classes = [_ints(c, "--classes") for c in cfg.options["classes"].split(";")]
    else:
        base = DEFAULT_RAY_CLASSES[cfg.model or "II"]
        classes = base + [(-a, -b) for a, b in base]
    rays = geometry.ray_angles(model, classes, cfg.theta)
    if cfg.options.get("svg"):
        Path(cfg.options["svg"]).write_text(svg.rays_svg(model, cfg.theta, classes))
    out.write(dumps({"type": cfg.model or "II", "theta": cfg.theta,
                     "rays": [{"angle": float(f"{a:.12g}"), "classes": [list(g) for g in gs]}
                              for a, gs in rays]}))
    return EXIT_OK


def cmd_flow(cfg: RunConfig, out) -> int:
    model = _model(cfg)
    g = _ints(cfg.options["class"], "--class")
    x, y = _floats(cfg.options["start"], "--start")
    z0 = complex(x, y)
    theta = cfg.options.get("theta_given")
    if theta is None:
        import cmath
        theta = cmath.phase(geometry.evaluate(model, g, z0))
    fcfg = geometry.FlowConfig(**cfg.tolerances)
    line = geometry.trace_flow(model, g, z0, theta, config=fcfg)
    stride = max(1, len(line.points) // 2000)
    pts = line.points[::stride] + ([line.points[-1]] if (len(line.points) - 1) % stride else [])
    if cfg.options.get("svg"):
        Path(cfg.options["svg"]).write_text(svg.flow_svg(pts))
    out.write(dumps({"class": list(g), "theta": theta, "steps": len(line.points) - 1,
                     "terminated": line.terminated, "max_phase_error": line.max_phase_error,
                     "points": [[float(f"{p.real:.12g}"), float(f"{p.imag:.12g}")] for p in pts]}))
    return EXIT_OK


def cmd_tropical(cfg: RunConfig, out) -> int:
    m = tropical.model(cfg.model or "II", cfg.options.get("n") or 2)
    g = _ints(cfg.options["class"], "--class")
    discs = tropical.enumerate_discs(m, g, cfg.cutoff, cfg.theta)
    total = sum((tropical.multiplicity(d) for d in discs), Fraction(0))

    def vertices(d):
        return [[_fstr(v.position[0]), _fstr(v.position[1])] for v in d.vertices()]

    if cfg.options.get("svg"):
        Path(cfg.options["svg"]).write_text(svg.discs_svg(m, discs))
    out.write(dumps({"model": m.name, "class": list(g), "cutoff": cfg.cutoff,
                     "count": total,
                     "discs": [{"multiplicity": tropical.multiplicity(d),
                                "leaves": [[lf.seed, lf.weight] for lf in d.leaves()],
                                "vertices": vertices(d)} for d in discs]}))
    return EXIT_OK


def cmd_weierstrass(cfg: RunConfig, out) -> int:
    o = cfg.options
    var, param = o.get("var") or "s", o.get("param") or "e"
    fam = weierstrass.WeierstrassFamily.parse(o["a"], o["b"], var=var, param=param)
    spec = fam.specialize(Fraction(o["eps"]) if o.get("eps") is not None else 0)
    cx, cy, r = _floats(o.get("disc") or "0,0,1", "--disc")
    delta = weierstrass.discriminant(spec)
    roots = weierstrass.roots_in_disc(delta, complex(cx, cy), r)
    types = [weierstrass.kodaira_type_at(spec, rt.value) for rt in roots]
    out.write(dumps({"discriminant_degree": delta.degree(),
                     "roots": [[float(f"{rt.value.real:.12g}"), float(f"{rt.value.imag:.12g}")]
                               for rt in roots],
                     "multiplicities": [rt.multiplicity for rt in roots],
                     "types": types}))
    return EXIT_OK


def cmd_compare(cfg: RunConfig, out) -> int:
    def load(p):
        try:
            return table_from_json(json.loads(Path(p).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{p}: {exc}") from exc
    computed = load(cfg.input)
    golden_path = cfg.options["golden"]
    if not Path(golden_path).is_file():
        raise InputError(f"golden file {golden_path} does not exist")
    golden = load(golden_path)
    diff = compare_tables(computed, golden)
    out.write("".join(line + "\n" for line in diff))
    return EXIT_OK if not diff else EXIT_CONSISTENCY


HANDLERS = {
    "scatter": cmd_scatter, "pentagon-check": cmd_pentagon, "classify": cmd_classify,
    "rays": cmd_rays, "flow": cmd_flow, "tropical": cmd_tropical,
    "weierstrass": cmd_weierstrass, "compare": cmd_compare,
}


def run(cfg: RunConfig, out=None) -> int:
    return HANDLERS[cfg.command](cfg, out or sys.stdout)


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="localgw", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def cutoff(sp):
        sp.add_argument("--cutoff", type=int, default=None,
                        help=f"degree cutoff (default ${CUTOFF_ENV} or {FALLBACK_CUTOFF})")

    s = sub.add_parser("scatter", help="complete a scattering diagram and extract invariants")
    cutoff(s)
    s.add_argument("--model", help="I_n as In with --n, II, III or IV")
    s.add_argument("--n", type=int)
    s.add_argument("--route", default="default", help="IV only: two-II or four-I1")
    s.add_argument("--in", dest="input")
    s.add_argument("--out", dest="output")
    s.add_argument("--invariants")
    s.add_argument("--svg")

    s = sub.add_parser("pentagon-check", help="verify the pentagon identity up to the cutoff")
    cutoff(s)

    s = sub.add_parser("classify", help="Kodaira type of an SL(2,Z) monodromy")
    s.add_argument("--matrix", required=True, help="a,b,c,d for [[a,b],[c,d]]")

    s = sub.add_parser("rays", help="BPS rays on the base disc")
    s.add_argument("--type", dest="model", default="II", choices=sorted(geometry.EXPONENTS))
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--cut", type=float, help="branch cut angle (default pi)")
    s.add_argument("--classes", help="semicolon-separated classes, e.g. '1,0;0,1'")
    s.add_argument("--svg")

    s = sub.add_parser("flow", help="gradient flow of |Z_g|^2 from a start point")
    s.add_argument("--type", dest="model", default="II", choices=sorted(geometry.EXPONENTS))
    s.add_argument("--start", required=True, help="x,y")
    s.add_argument("--class", dest="klass", required=True, help="a,b")
    s.add_argument("--theta", type=float, help="phase (default Arg Z at the start)")
    s.add_argument("--cut", type=float)
    s.add_argument("--tol", action="append", default=[], metavar="KEY=VALUE")
    s.add_argument("--svg")

    s = sub.add_parser("tropical", help="enumerate tropical discs of a class")
    cutoff(s)
    s.add_argument("--model", default="II", help="II, III or In with --n")
    s.add_argument("--n", type=int)
    s.add_argument("--class", dest="klass", required=True)
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--svg")

    s = sub.add_parser("weierstrass", help="discriminant roots and fibre types in a disc")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--eps", help="value of the deformation parameter (rational)")
    s.add_argument("--var", default="s")
    s.add_argument("--param", default="e")
    s.add_argument("--disc", help="cx,cy,r (default 0,0,1)")

    s = sub.add_parser("compare", help="diff a computed table against a golden one")
    s.add_argument("--computed", dest="input", required=True)
    s.add_argument("--golden", required=True)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = {k: v for k, v in vars(ns).items()
            if k not in ("command", "cutoff", "input", "output", "model", "theta", "tol")}
    if "klass" in opts:
        opts["class"] = opts.pop("klass")
    tolerances = {}
    for item in getattr(ns, "tol", []) or []:
        key, _, val = item.partition("=")
        try:
            tolerances[key] = float(val)
        except ValueError:
            raise InputError(f"bad tolerance {item!r}") from None
    theta = getattr(ns, "theta", None)
    if ns.command == "flow":
        opts["theta_given"] = theta
    if ns.command == "weierstrass" and ns.eps is not None:
        try:
            opts["eps"] = str(Fraction(ns.eps))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"--eps must be rational, got {ns.eps!r}") from None
    cut = getattr(ns, "cutoff", None)
    return RunConfig(command=ns.command,
                     cutoff=default_cutoff() if cut is None else cut,
                     input=Path(ns.input) if getattr(ns, "input", None) else None,
                     output=Path(ns.output) if getattr(ns, "output", None) else None,
                     model=getattr(ns, "model", None),
                     theta=0.0 if theta is None else theta,
                     tolerances=tolerances, options=opts)


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(config_from_args(ns), out)
    except InputError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except DegeneracyError as exc:
        err.write(f"degenerate configuration: {exc}\n")
        return EXIT_DEGENERATE
    except ConsistencyError as exc:
        err.write(f"consistency failure: {exc}\n")
        return EXIT_CONSISTENCY
    except (NumericalError, ArithmeticError) as exc:
        err.write(f"numerical error: {exc}\n")
        return EXIT_NUMERICAL
    except LocalGWError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
