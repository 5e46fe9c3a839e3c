"""Command-line front end.

Subcommands
-----------
group         build a Delone triangulation (file or generator) and certify
              the average-area bound; optional SVG and class CSV
oracle        run one extremal-constant case or the whole registry
density       closed-form density for a packing family, with construction
              verification
construct     emit an explicit lattice/placement and verify it packs
planar-proof  certify the two-string-row translation argument
profile       analyze a ball-string/layer profile given as JSON

Exit status is 0 exactly when every requested certificate passes; the JSON
report is always written/printed, also on failure.  Identical (command, seed,
resolution) invocations produce byte-identical JSON.
"""

from __future__ import annotations

import argparse
import sys

from . import arcgeom, generators, grouping, oracles, packings, profiles
from .delone import Torus, Window, build_delone, load_points
from .reporting import canonical_json, write_csv

ORACLE_SCAN_RES = {"coarse": 24, "default": 40, "fine": 64}


def _emit(args, payload) -> None:
    text = canonical_json(payload)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _points_from_args(args):
    if args.points:
        pts = load_points(args.points)
        if args.torus:
            dom = Torus(*args.torus)
        else:
            span = pts.max(axis=0) - pts.min(axis=0)
            margin = args.margin if args.margin is not None else 0.15 * float(span.max())
            lo = pts.min(axis=0) + margin
            hi = pts.max(axis=0) - margin
            dom = Window((lo[0], lo[1], hi[0], hi[1]), margin=margin)
        return pts, dom
    side = args.side
    if args.lattice == "square":
        pts, dom = generators.square_lattice(side, args.nx, args.ny)
    elif args.lattice == "tri":
        pts, dom = generators.triangular_lattice(side, args.nx, args.ny)
    elif args.lattice == "rect":
        pts, dom = generators.rectangular_lattice(side, args.side_y or side, args.nx, args.ny)
    elif args.lattice == "poisson":
        pts, dom = generators.poisson_disk_torus(
            side, args.nx * side, args.ny * side, seed=args.seed
        )
    else:
        raise SystemExit(f"unknown lattice {args.lattice!r}")
    if args.jitter:
        pts = generators.jitter(pts, args.jitter, seed=args.seed, domain=dom)
    return pts, dom


def cmd_group(args) -> int:
    pts, dom = _points_from_args(args)
    t = build_delone(pts, dom)
    try:
        report = grouping.average_area_certificate(
            t, allow_ratio_exceeded=args.allow_ratio_exceeded
        )
    except grouping.RatioExceeded as exc:
        radii = grouping.rr_radii(t)
        _emit(
            args,
            {
                "pass": False,
                "error": "ratio-exceeded",
                "detail": str(exc),
                "r": radii.r,
                "R": radii.R,
                "ratio": radii.ratio,
                "n_points": int(t.n_points),
            },
        )
        return 1
    payload = report.to_json_dict()
    payload["n_points"] = int(t.n_points)
    _emit(args, payload)
    if args.csv:
        write_csv(
            args.csv,
            ["case", "size", "mean_area"],
            [(c["case"], c["size"], c["mean"]) for c in payload["classes"]],
        )
    if args.svg:
        from .figures import render_grouping

        g = grouping.build_obtuse_digraph(t)
        forest = grouping.form_groups(
            g, t, grouping.min_nonobtuse_area(t), collect_violations=[]
        )
        render_grouping(t, forest, args.svg)
    return 0 if report.passed else 1


def cmd_oracle(args) -> int:
    case = args.case_arg
    if case == "run":
        case = args.case
    if case is None:
        raise SystemExit("oracle: give a case id, 'all', or 'run --case ID'")
    kwargs = {}
    if args.radius_bound is not None:
        try:
            kwargs["radius_bound"] = float(args.radius_bound)
        except ValueError:
            kwargs["radius_bound"] = args.radius_bound
    if case == "all":
        summary = oracles.verify_all(resolution=args.resolution)
        _emit(args, summary)
        if args.csv:
            rows = []
            for cid, rep in summary["reports"].items():
                for part in rep["parts"]:
                    rows.append(
                        (
                            cid,
                            part["name"],
                            part["kind"],
                            part["found_min"],
                            part["claim"],
                            part["claim_delta"],
                            part["pass"],
                        )
                    )
            write_csv(
                args.csv,
                ["case", "part", "kind", "found_min", "claim", "claim_delta", "pass"],
                rows,
            )
        return 0 if summary["pass"] else 1
    report = oracles.run_case(case, resolution=args.resolution, **kwargs)
    _emit(args, report.to_json_dict())
    return 0 if report.passed else 1


def cmd_density(args) -> int:
    fam = args.family
    if fam == "string3d":
        d = args.d
        closed = packings.density_string_3d(d)
        basis = packings.lattice_string_3d(d)
        check = packings.verify_packing(basis, args.window_radius)
        payload = {
            "family": fam,
            "d": d,
            "density_closed_form": closed,
            "density_measured": packings.cell_density(basis),
            "packing_pass": check.passed,
            "min_distance": check.min_center_distance,
        }
        ok = check.passed
    elif fam == "planar":
        d = args.d
        closed = packings.density_planar_strings(d)
        place = packings.planar_construction(d)
        check = packings.verify_packing(place, args.window_radius)
        payload = {
            "family": fam,
            "d": d,
            "density_closed_form": closed,
            "density_measured": packings.measured_density(place, 30 * args.window_radius),
            "packing_pass": check.passed,
            "min_distance": check.min_center_distance,
        }
        ok = check.passed
    elif fam == "ball4d":
        val = packings.density_ball_4d()
        basis = packings.lattice_layer_4d()
        check = packings.verify_packing(basis, min(args.window_radius, 8.0))
        payload = {
            "family": fam,
            "density_closed_form": val.value,
            "expression": val.expr,
            "density_measured": packings.cell_density(basis),
            "packing_pass": check.passed,
            "min_distance": check.min_center_distance,
        }
        ok = check.passed
    else:
        raise SystemExit(f"unknown density family {fam!r}")
    _emit(args, payload)
    return 0 if ok else 1


def cmd_construct(args) -> int:
    fam = args.family
    if fam == "string3d":
        basis = packings.lattice_string_3d(args.d)
        check = packings.verify_packing(basis, args.window_radius)
        payload = {
            "family": fam,
            "d": args.d,
            "basis": basis.vectors.tolist(),
            "description": basis.description,
            "density": packings.cell_density(basis),
            "packing_pass": check.passed,
            "min_distance": check.min_center_distance,
        }
    elif fam == "conjecture210":
        delta, basis, density = packings.rhombic_prism_construction(args.d)
        check = packings.verify_packing(basis, args.window_radius)
        payload = {
            "family": fam,
            "conjecture": True,
            "status": "CONJECTURE: verified as a valid packing of the stated density, not as optimal",
            "d": args.d,
            "delta": delta,
            "basis": basis.vectors.tolist(),
            "density": density,
            "packing_pass": check.passed,
            "min_distance": check.min_center_distance,
        }
    elif fam == "planar":
        place = packings.planar_construction(args.d)
        check = packings.verify_packing(place, args.window_radius)
        payload = {
            "family": fam,
            "d": args.d,
            "generators": place.lattice.vectors.tolist(),
            "offsets": place.offsets.tolist(),
            "density": packings.cell_density(place),
            "packing_pass": check.passed,
            "min_distance": check.min_center_distance,
        }
        if args.svg:
            from .figures import render_packing_plane

            render_packing_plane(place, args.window_radius, args.svg)
    elif fam == "ball4d":
        basis = packings.lattice_layer_4d()
        check = packings.verify_packing(basis, min(args.window_radius, 8.0))
        payload = {
            "family": fam,
            "basis": basis.vectors.tolist(),
            "density": packings.cell_density(basis),
            "packing_pass": check.passed,
            "min_distance": check.min_center_distance,
        }
    else:
        raise SystemExit(f"unknown construction family {fam!r}")
    _emit(args, payload)
    return 0 if payload["packing_pass"] else 1


def cmd_planar_proof(args) -> int:
    try:
        cert = arcgeom.certify_planar_theorem(
            args.d,
            resolution=ORACLE_SCAN_RES[args.resolution],
            depth=args.depth,
            isolation=args.isolation,
        )
    except arcgeom.CertificationFailed as exc:
        _emit(args, {"d": args.d, "pass": False, "counterexample": exc.counterexample})
        return 1
    payload = cert.to_json_dict()
    _emit(args, payload)
    if args.svg:
        from .figures import render_planar_proof

        render_planar_proof(args.d, cert, args.svg)
    return 0 if cert.passed else 1


def cmd_profile(args) -> int:
    if args.spec:
        prof = profiles.profile_from_spec(args.spec)
    else:
        prof = profiles.StringProfile(kind=args.kind, d=args.d)
    res = {"coarse": 128, "default": 256, "fine": 512}[args.resolution]
    m, big_m = prof.m_M(resolution=2 * res)
    v0 = profiles.v0_of(prof, resolution=res)
    payload = {
        "kind": prof.kind,
        "d": prof.d,
        "m": m,
        "M": big_m,
        "v0": v0.value,
        "v0_bracket": list(v0.bracket),
        "v0_sides": list(v0.triple.sides),
        "fill_density": prof.fill_density().value,
        "fill_density_expr": prof.fill_density().expr,
        "density_lower_bound": profiles.density_lower_bound(prof),
    }
    _emit(args, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delonepack",
        description="Delone-triangulation area certificates, packing densities, "
        "and extremal-constant oracles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="triangulate and certify the average-area bound")
    g.add_argument("--points", help="CSV (header x,y) or JSON [[x,y],...] file")
    g.add_argument("--torus", nargs=2, type=float, metavar=("PX", "PY"))
    g.add_argument("--margin", type=float)
    g.add_argument("--lattice", choices=["square", "tri", "rect", "poisson"])
    g.add_argument("--side", type=float, default=2.0)
    g.add_argument("--side-y", type=float)
    g.add_argument("--nx", type=int, default=6)
    g.add_argument("--ny", type=int, default=6)
    g.add_argument("--jitter", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--allow-ratio-exceeded", action="store_true")
    g.add_argument("--out")
    g.add_argument("--csv")
    g.add_argument("--svg")
    g.set_defaults(fn=cmd_group)

    o = sub.add_parser("oracle", help="run extremal-constant cases")
    o.add_argument("case_arg", nargs="?", help="case id, 'all', or 'run'")
    o.add_argument("--case", help="case id when using the 'run' form")
    o.add_argument("--resolution", choices=sorted(oracles.RESOLUTIONS), default="default")
    o.add_argument("--radius-bound", help="sqrt2, sqrt5over2, or a number (4.4/4.6)")
    o.add_argument("--out")
    o.add_argument("--csv")
    o.set_defaults(fn=cmd_oracle)

    d = sub.add_parser("density", help="closed-form density plus construction check")
    d.add_argument("family", choices=["string3d", "planar", "ball4d"])
    d.add_argument("--d", type=float, default=1.0)
    d.add_argument("--window-radius", type=float, default=20.0)
    d.add_argument("--out")
    d.set_defaults(fn=cmd_density)

    c = sub.add_parser("construct", help="emit and verify an explicit construction")
    c.add_argument("family", choices=["string3d", "planar", "conjecture210", "ball4d"])
    c.add_argument("--d", type=float, default=1.0)
    c.add_argument("--window-radius", type=float, default=20.0)
    c.add_argument("--svg")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_construct)

    p = sub.add_parser("planar-proof", help="certify the two-row translation argument")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--resolution", choices=sorted(ORACLE_SCAN_RES), default="default")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--isolation", type=float, default=1e-3)
    p.add_argument("--svg")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_planar_proof)

    pr = sub.add_parser("profile", help="analyze a string/layer profile")
    pr.add_argument("--spec", help="JSON file {kind, d?, period?, f_samples?}")
    pr.add_argument("--kind", choices=["string", "square_layer", "tri_layer"])
    pr.add_argument("--d", type=float)
    pr.add_argument("--resolution", choices=["coarse", "default", "fine"], default="default")
    pr.add_argument("--out")
    pr.set_defaults(fn=cmd_profile)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
