"""Command-line surface: cloud I/O, pipeline runs, tables, SVG plots,
oracle verification, and a scaling benchmark.

Exit status: 0 on success, 1 on input errors, 2 on internal assertion
failures.
"""

from __future__ import annotations

import argparse
import json
import math
import subprocess
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .delaunay import Cloud, edges_sorted_desc, triangulate
from .diagrams import (
    Diagram,
    bottleneck_distance,
    hole_probabilities,
    infer_hole_count,
)
from .forest import sweep_pairs
from .oracles import verify_equivalence
from .plots import render_plots
from .samplers import ShapeSpec, load_polyline_csv, sample_shape


class CloudFormatError(ValueError):
    """Malformed cloud CSV; message carries the line number."""


def load_cloud_csv(path) -> Cloud:
    """Read one 'x,y' pair per line; '#' starts a comment line."""
    points = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if len(fields) != 2:
                raise CloudFormatError(
                    f"{path}:{lineno}: expected 'x,y', got {line!r}"
                )
            try:
                points.append((float(fields[0]), float(fields[1])))
            except ValueError:
                raise CloudFormatError(
                    f"{path}:{lineno}: non-numeric coordinate in {line!r}"
                ) from None
    if len(points) < 3:
        raise CloudFormatError(
            f"{path}: need at least 3 points, found {len(points)}"
        )
    return Cloud.from_points(np.asarray(points))


def save_cloud_csv(path, cloud: Cloud, comment: str = "") -> None:
    with open(path, "w") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        for x, y in cloud.points:
            fh.write(f"{x:.15g},{y:.15g}\n")


def load_pairs_csv(path) -> Diagram:
    """Read a 'birth,death' table (header required)."""
    pairs = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header.replace(" ", "") != "birth,death":
            raise CloudFormatError(f"{path}:1: expected header 'birth,death'")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 2:
                raise CloudFormatError(
                    f"{path}:{lineno}: expected 'birth,death', got {line!r}"
                )
            pairs.append((float(fields[0]), float(fields[1])))
    return Diagram.from_pairs(pairs)


def pairs_to_csv(diagram: Diagram) -> str:
    lines = ["birth,death"]
    for birth, death in diagram.pairs:
        lines.append(f"{birth:.15g},{death:.15g}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RunReport:
    """Full result of one pipeline run, with per-stage wall times."""

    diagram: Diagram
    probabilities: dict
    inferred_count: int
    inferred_gap: float
    timings: dict  # stage -> seconds
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "pairs": [[b, d] for b, d in self.diagram.pairs],
                "probabilities": {str(k): v for k, v in self.probabilities.items()},
                "inferred_count": self.inferred_count,
                "inferred_gap": self.inferred_gap,
                "timings": self.timings,
                "metadata": self.metadata,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        return cls(
            diagram=Diagram.from_pairs(data["pairs"]),
            probabilities={int(k): v for k, v in data["probabilities"].items()},
            inferred_count=data["inferred_count"],
            inferred_gap=data["inferred_gap"],
            timings=data["timings"],
            metadata=data["metadata"],
        )


def compute_report(cloud: Cloud, source: str = "") -> RunReport:
    """Run the pipeline stage by stage, timing each one."""
    t0 = time.perf_counter()
    tri = triangulate(cloud)
    t1 = time.perf_counter()
    order = edges_sorted_desc(tri)
    t2 = time.perf_counter()
    pairs, _ = sweep_pairs(tri, order)
    t3 = time.perf_counter()
    diagram = Diagram.from_pairs(pairs)
    count, gap = infer_hole_count(diagram)
    return RunReport(
        diagram=diagram,
        probabilities=hole_probabilities(diagram).probabilities,
        inferred_count=count,
        inferred_gap=gap,
        timings={
            "triangulate": t1 - t0,
            "sort": t2 - t1,
            "sweep": t3 - t2,
        },
        metadata={"n": cloud.n, "source": source},
    )


def _print_report(report: RunReport) -> None:
    pairs = report.diagram.off_diagonal()
    print(f"{len(pairs)} persistent hole(s)")
    for birth, death in pairs:
        print(f"  birth {birth:.15g}  death {death:.15g}")
    # every k with positive probability, most likely first
    entries = sorted(report.probabilities.items(), key=lambda kv: (-kv[1], kv[0]))
    for k, p in entries:
        print(f"  P({k} holes) = {p:.4f}")
    print(f"inferred hole count: {report.inferred_count}"
          f" (gap {report.inferred_gap:.15g})")


def _cmd_compute(args) -> int:
    cloud = load_cloud_csv(args.cloud)
    report = compute_report(cloud, source=str(args.cloud))
    if args.json:
        print(report.to_json())
    elif args.csv:
        sys.stdout.write(pairs_to_csv(report.diagram))
    else:
        _print_report(report)
    if args.svg_dir is not None:
        out = Path(args.svg_dir)
        out.mkdir(parents=True, exist_ok=True)
        for kind, svg in render_plots(report.diagram).items():
            (out / f"{kind}.svg").write_text(svg)
    return 0


def _cmd_synth(args) -> int:
    if args.shape == "wheel":
        if args.spokes is None:
            raise CloudFormatError("wheel needs --spokes")
        spec = ShapeSpec.wheel(args.spokes, args.radius)
    elif args.shape == "lattice":
        if args.rows is None or args.cols is None:
            raise CloudFormatError("lattice needs --rows and --cols")
        spec = ShapeSpec.lattice(args.rows, args.cols, args.cell)
    else:
        if args.poly is None:
            raise CloudFormatError("polygon needs --poly FILE")
        spec = load_polyline_csv(args.poly)
    cloud = sample_shape(spec, args.points, noise=args.noise, seed=args.seed)
    save_cloud_csv(
        args.out, cloud,
        comment=f"{args.shape} n={args.points} noise={args.noise} seed={args.seed}",
    )
    print(f"wrote {cloud.n} points to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    passed = 0
    for _ in range(args.trials):
        pts = rng.uniform(0.0, 1.0, size=(args.n, 2))
        report = verify_equivalence(Cloud.from_points(pts))
        passed += report.equal
    print(f"{passed}/{args.trials} oracle-equal")
    return 0 if passed == args.trials else 2


def _cmd_infer(args) -> int:
    cloud = load_cloud_csv(args.cloud)
    report = compute_report(cloud, source=str(args.cloud))
    print(f"inferred hole count: {report.inferred_count}"
          f" (gap {report.inferred_gap:.15g})")
    return 0


def _measure_child_memory(n: int, seed: int) -> int:
    """Peak RSS in bytes of a fresh interpreter running one pipeline pass."""
    code = (
        "import resource, sys\n"
        "import numpy as np\n"
        "from holecount import Cloud, hole_persistence\n"
        f"pts = np.random.default_rng({seed}).uniform(0, 1, ({n}, 2))\n"
        "hole_persistence(Cloud.from_points(pts))\n"
        "print(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, check=True
    )
    return int(out.stdout.strip()) * 1024  # ru_maxrss is in KiB on Linux


def _cmd_bench(args) -> int:
    sizes = [10 ** e for e in range(3, 8) if 10 ** e <= args.max_n]
    if not sizes:
        raise CloudFormatError("--max-n must be at least 1000")
    print(f"{'n':>9} {'triangulate':>12} {'sort':>9} {'sweep':>9} "
          f"{'total':>9} {'t/(n log2 n)':>13} {'peak RSS':>10}")
    for n in sizes:
        best = None
        for rep in range(args.repeats):
            rng = np.random.default_rng(args.seed + rep)
            cloud = Cloud.from_points(rng.uniform(0.0, 1.0, size=(n, 2)))
            report = compute_report(cloud)
            total = sum(report.timings.values())
            if best is None or total < sum(best.timings.values()):
                best = report
        t = best.timings
        total = sum(t.values())
        ratio = total / (n * math.log2(n))
        rss = _measure_child_memory(n, args.seed)
        print(f"{n:>9} {t['triangulate']:>11.3f}s {t['sort']:>8.3f}s "
              f"{t['sweep']:>8.3f}s {total:>8.3f}s {ratio:>13.3e} "
              f"{rss / 2 ** 20:>8.1f}MB")
    return 0


def _cmd_bottleneck(args) -> int:
    d1 = load_pairs_csv(args.d1)
    d2 = load_pairs_csv(args.d2)
    print(f"{bottleneck_distance(d1, d2):.15g}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argument errors are input errors, status 1
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="holecount",
        description="Count persistent holes in noisy planar point clouds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[], help="diagram of a cloud CSV")
    p.add_argument("cloud")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--svg-dir", default=None)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("synth", help="sample a known shape into a cloud CSV")
    p.add_argument("shape", choices=["wheel", "lattice", "polygon"])
    p.add_argument("--spokes", type=int, default=None)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--cell", type=float, default=1.0)
    p.add_argument("--poly", default=None)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("verify", help="compare the sweep against the oracle")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("infer", help="most prominent hole count of a cloud")
    p.add_argument("cloud")
    p.set_defaults(func=_cmd_infer)

    p = sub.add_parser("bench", help="timing and memory scaling table")
    p.add_argument("--max-n", type=int, default=10 ** 5)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("bottleneck", help="distance between two pair CSVs")
    p.add_argument("d1")
    p.add_argument("d2")
    p.set_defaults(func=_cmd_bottleneck)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CloudFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
