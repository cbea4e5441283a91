"""Write the SVG drawings of the local models, rays and tropical discs."""
import argparse
from pathlib import Path

from localgw import svg
from localgw.geometry import model_for
from localgw.scatter import local_model
from localgw.tropical import enumerate_discs, model

ROOT = Path(__file__).resolve().parents[1]
RAY_CLASSES = {"II": [(1, 0), (0, 1), (1, 1)], "III": [(1, 0), (0, 1), (1, 1), (2, 1)],
               "IV": [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)]}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "docs" / "figures")
    ap.add_argument("--theta", type=float, default=0.3)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for tag, cut, route in (("II", 4, "default"), ("III", 4, "default"),
                            ("IV", 4, "two-II"), ("IV", 6, "four-I1")):
        d = local_model(tag, cut, route=route).complete()
        name = f"diagram-{tag.lower()}" + (f"-{route}" if route != "default" else "")
        (args.out / f"{name}.svg").write_text(svg.diagram_svg(d, f"{tag} ({route}), cutoff {cut}"))
    for tag, classes in RAY_CLASSES.items():
        cl = classes + [(-a, -b) for a, b in classes]
        (args.out / f"rays-{tag.lower()}.svg").write_text(svg.rays_svg(model_for(tag), args.theta, cl))
    m = model("III")
    (args.out / "discs-iii.svg").write_text(svg.discs_svg(m, enumerate_discs(m, (1, 1, 1), 3)))
    for p in sorted(args.out.glob("*.svg")):
        print(p.relative_to(ROOT) if p.is_relative_to(ROOT) else p)


if __name__ == "__main__":
    main()
