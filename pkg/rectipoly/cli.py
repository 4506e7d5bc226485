"""Command line interface: build models, analyze and unfold OBJ files, sweep random links."""

import argparse
import logging
import sys

from rectipoly.errors import ConstructionSelfCheck, MeshValidationError, RectipolyError, UnrealizablePattern

logger = logging.getLogger("rectipoly")

MODELS = ["cube", "frame-torus", "octopus", "octopus-cubes", "star:<pattern>"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_INVALID_MESH = 4


def _build_model(args):
    from rectipoly import constructions

    model = args.model.lower()

    if model == "cube":
        return constructions.make_cube(args.size)
    if model == "frame-torus":
        return constructions.make_frame_torus(outer=3 * args.size, hole=args.size, height=args.size)
    if model == "octopus":
        return constructions.make_octopus(args.L)
    if model == "octopus-cubes":
        return constructions.make_octopus_cubes(args.L)
    if model.startswith("star:"):
        spec = constructions.StarGadgetSpec(model[len("star:") :], edge_length=args.size)
        mesh, link = constructions.make_star_gadget(spec, seed=args.seed)
        logger.info("star gadget with link colors %s", link.colors())
        return mesh

    raise ValueError(f"unknown model {args.model!r}, choose from {', '.join(MODELS)}")


def cmd_build(args):
    mesh = _build_model(args)

    if args.out:
        mesh.to_obj(args.out)
        print(f"wrote {args.out}: {mesh.n_vertices} vertices, {mesh.n_edges} edges, {mesh.n_faces} faces")
    else:
        sys.stdout.write(mesh.to_obj())

    return EXIT_OK


def cmd_analyze(args):
    from rectipoly.readers import read_obj
    from rectipoly.report import AnalysisReport

    mesh = read_obj(args.path)
    report = AnalysisReport.from_mesh(mesh, tol=args.tol)

    report.summary()
    if args.json:
        report.to_json(args.json)
        logger.info("wrote report to %s", args.json)

    return EXIT_OK


def cmd_unfold(args):
    from rectipoly.nets import overlap_status, refold, unfold
    from rectipoly.readers import read_obj

    mesh = read_obj(args.path)
    net = unfold(mesh, root_face=args.root, strategy=args.strategy)

    status = overlap_status(net)
    print(status.status)
    for f, g, kind, area in status.witnesses[: args.witnesses]:
        print(f"  panels {f} and {g}: {kind}" + (f" (area {area:.6g})" if kind == "overlap" else ""))
    print(f"{len(net.cuts)} cuts, cycle rank {net.cut_rank}")

    _, error = refold(net, mesh)
    logger.info("refold alignment error %.3g", error)

    if args.svg:
        net.to_svg(args.svg, scale=args.scale)
        logger.info("wrote net to %s", args.svg)

    return EXIT_OK


def cmd_lemma_sweep(args):
    from rectipoly.sweep import lemma_sweep, parse_degrees, red_count_histogram, sweep_violations
    from tabulate import tabulate

    degrees = parse_degrees(args.degrees)
    df = lemma_sweep(args.samples, degrees, seed=args.seed, tol=args.tol, nb_cpu=args.nb_cpu, green=args.green)

    histogram = red_count_histogram(df)
    print(tabulate(histogram, headers=["Degree"] + [f"red={c}" for c in histogram.columns], tablefmt="psql"))

    violations = sweep_violations(df)
    if not violations.empty:
        print(tabulate(violations, headers=violations.columns, tablefmt="psql", showindex=False))
        return EXIT_FAIL

    return EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(prog="rectipoly", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug records to stderr")

    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="Write a model as OBJ")
    build.add_argument("model", help=f"One of {', '.join(MODELS)}")
    build.add_argument("--L", type=float, default=3.0, help="Octopus prism length (default: 3)")
    build.add_argument("--size", type=float, default=1.0, help="Cube side, torus hole side or gadget arm length")
    build.add_argument("--seed", type=int, default=None, help="Seed of the star pattern solver")
    build.add_argument("--out", default=None, help="OBJ output path (default: stdout)")
    build.set_defaults(func=cmd_build)

    analyze = subparsers.add_parser("analyze", help="Analyze a closed mesh read from OBJ")
    analyze.add_argument("path")
    analyze.add_argument("--tol", type=float, default=None, help="Rectilinearity tolerance in radians")
    analyze.add_argument("--json", default=None, help="Write the analysis report to this path")
    analyze.set_defaults(func=cmd_analyze)

    unfold = subparsers.add_parser("unfold", help="Unfold a closed mesh read from OBJ into a net")
    unfold.add_argument("path")
    unfold.add_argument("--strategy", default="bfs", choices=["bfs", "dfs", "steepest"])
    unfold.add_argument("--root", type=int, default=0, help="Face kept in place")
    unfold.add_argument("--svg", default=None, help="Write the net as SVG to this path")
    unfold.add_argument("--scale", type=float, default=20.0, help="Millimeters per model unit in the SVG")
    unfold.add_argument("--witnesses", type=int, default=5, help="Panel pairs to list")
    unfold.set_defaults(func=cmd_unfold)

    sweep = subparsers.add_parser("lemma-sweep", help="Check the red-angle lemmas on random closed links")
    sweep.add_argument("--samples", type=int, default=1000)
    sweep.add_argument("--degrees", default="3..12", help="Link sizes as a..b")
    sweep.add_argument("--seed", type=int, default=None)
    sweep.add_argument("--tol", type=float, default=None)
    sweep.add_argument("--green", type=float, default=0.5, help="Probability of a rectilinear turn (default: 0.5)")
    sweep.add_argument("--nb-cpu", type=int, default=1, help="Requires ray when above 1")
    sweep.set_defaults(func=cmd_lemma_sweep)

    return parser


def _fail(code, e):
    print(f"rectipoly: error: {type(e).__name__}: {e}", file=sys.stderr)
    return code


def main(argv=None):
    parser = make_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )

    try:
        return args.func(args)
    except (ConstructionSelfCheck, UnrealizablePattern) as e:
        return _fail(EXIT_CONSTRUCTION, e)
    except MeshValidationError as e:
        return _fail(EXIT_INVALID_MESH, e)
    except (ValueError, IndexError, OSError) as e:
        return _fail(EXIT_USAGE, e)
    except RectipolyError as e:
        return _fail(EXIT_FAIL, e)


if __name__ == "__main__":
    sys.exit(main())
