"""Command-line interface: geodesics, plans, verification campaigns and figures.

Every command writes one JSON document to stdout; progress lines go to stderr.
Exit codes: 0 success, 1 a verify instance failed, 2 invalid input.
"""

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import pyarrow.parquet as pq

from .altmetric import geodesic_alt, plan_alt
from .errors import GeometryError, InvalidVectorError
from .figures import FIGURES, FIXTURES, render_fixture, render_path
from .models import CampaignRecord
from .oracle import sample_f0_pair, verify_instance
from .ordered import GeodesicType, geodesic
from .planner import PlannerRegion, plan_ordered, plan_unordered, region_alt, region_ordered, region_unordered
from .settings import get_default_seed
from .testbed import get_test_bed
from .unordered import UnorderedConfig, geodesic_unordered
from .vecgeo import CLEARANCE, OrderedConfig, config_distance

SPACES = ("ordered", "unordered", "alt")
SIGNIFICANT_DIGITS = 10


@dataclass
class QuerySpec:
    """One query as given on the command line or as JSON on stdin."""

    space: str
    n: int
    P: list[float]
    Q: list[float]
    samples: int = 256
    w: list[float] | None = None
    scale_eps: float = CLEARANCE

    def __post_init__(self) -> None:
        if self.space not in SPACES:
            raise InvalidVectorError(f"space must be one of {', '.join(SPACES)}, got {self.space!r}")
        if self.n < 2:
            raise InvalidVectorError(f"n must be >= 2, got {self.n}")
        for name, coords in (("P", self.P), ("Q", self.Q)):
            if len(coords) != 2 * self.n:
                raise InvalidVectorError(f"{name} needs 2n = {2 * self.n} coordinates, got {len(coords)}")
        if self.w is not None and len(self.w) != self.n:
            raise InvalidVectorError(f"w needs n = {self.n} coordinates, got {len(self.w)}")
        if not self.scale_eps > 0.0:
            raise InvalidVectorError(f"scale_eps must be positive, got {self.scale_eps}")
        if self.samples < 2:
            raise InvalidVectorError(f"samples must be >= 2, got {self.samples}")

    @property
    def scale(self) -> float:
        """Factor from the clearance-2 working frame back to the caller's units."""
        return self.scale_eps / CLEARANCE

    def configs(self) -> tuple[OrderedConfig, OrderedConfig]:
        factor = 1.0 / self.scale
        return (
            OrderedConfig.from_array(np.asarray(self.P, dtype=np.float64) * factor),
            OrderedConfig.from_array(np.asarray(self.Q, dtype=np.float64) * factor),
        )

    @classmethod
    def from_json(cls, document: str) -> "QuerySpec":
        data = json.loads(document)
        options = data.get("options", {})
        return cls(
            space=data.get("space", "ordered"),
            n=int(data["n"]),
            P=_flatten(data["P"]),
            Q=_flatten(data["Q"]),
            samples=int(options.get("samples", 256)),
            w=_flatten(options["w"]) if options.get("w") is not None else None,
            scale_eps=float(options.get("scale_eps", CLEARANCE)),
        )

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "QuerySpec":
        if args.json:
            return cls.from_json(sys.stdin.read())
        if args.p is None or args.q is None or args.n is None:
            raise InvalidVectorError("--n, --p and --q are required unless --json is given")
        return cls(
            space=args.space,
            n=args.n,
            P=parse_coords(args.p),
            Q=parse_coords(args.q),
            samples=args.samples,
            w=parse_coords(args.w) if args.w else None,
            scale_eps=args.scale_eps,
        )


@dataclass
class PathReport:
    space: str
    path_class: str
    length: float
    beta_or_alpha: float | None
    samples: list
    straight_length: float | None = None
    contact: dict | None = None
    w: list[float] | None = None
    region: dict | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["class"] = out.pop("path_class")
        return _round(out)


@dataclass
class CampaignSummary:
    seed: int
    n: int
    waypoints: int
    instances: list[dict] = field(default_factory=list)
    test_bed: dict | None = None

    @property
    def all_pass(self) -> bool:
        return all(inst["status"] == "PASS" for inst in self.instances)

    def to_dict(self) -> dict:
        gaps = [inst["rel_gap"] for inst in self.instances]
        return _round(
            {
                **asdict(self),
                "count": len(self.instances),
                "max_rel_gap": max(gaps) if gaps else None,
                "min_rel_gap": min(gaps) if gaps else None,
                "all_pass": self.all_pass,
            }
        )


def parse_coords(text: str) -> list[float]:
    """Parse whitespace- or comma-separated numbers."""
    tokens = [tok for tok in re.split(r"[\s,]+", text.strip()) if tok]
    try:
        return [float(tok) for tok in tokens]
    except ValueError:
        raise InvalidVectorError(f"cannot parse coordinates {text!r}") from None


def _flatten(value) -> list[float]:
    return [float(x) for x in np.asarray(value, dtype=np.float64).ravel()]


def _round(value):
    if isinstance(value, bool) or value is None or isinstance(value, str | int):
        return value
    if isinstance(value, float | np.floating):
        return float(f"{float(value):.{SIGNIFICANT_DIGITS}g}")
    if isinstance(value, dict):
        return {key: _round(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return _round(value.tolist())
    if isinstance(value, list | tuple):
        return [_round(item) for item in value]
    return value


def _region_dict(region: PlannerRegion) -> dict:
    return {"space": region.space.value, "region_id": region.region_id, "descriptor": region.descriptor}


def _samples(path, spec: QuerySpec) -> list:
    return (path.sample(np.linspace(0.0, 1.0, spec.samples)) * spec.scale).tolist()


def build_report(spec: QuerySpec, plan: bool = False) -> PathReport:
    """Compute the path a query asks for and describe it in caller units."""
    P, Q = spec.configs()
    s = spec.scale

    if spec.space == "ordered":
        if plan:
            path = plan_ordered(P, Q)
            region = _region_dict(region_ordered(P, Q))
        else:
            w = np.asarray(spec.w, dtype=np.float64) if spec.w is not None else None
            path = geodesic(P, Q, w)
            region = None
        cls = path.geodesic_class
        assert cls is not None
        contact = None
        if cls.tag is not GeodesicType.TYPE_A:
            contact = {"u": cls.u, "v": cls.v, "x": cls.x * s, "y": cls.y * s}
        return PathReport(
            space=spec.space,
            path_class=cls.tag.value,
            length=path.total_length * s,
            beta_or_alpha=cls.beta if cls.beta is not None else 0.0,
            samples=_samples(path, spec),
            straight_length=config_distance(P, Q) * s,
            contact=contact,
            w=cls.w.tolist() if cls.w is not None else None,
            region=region,
        )

    if spec.space == "unordered":
        UP, UQ = UnorderedConfig(P), UnorderedConfig(Q)
        upath = plan_unordered(UP, UQ) if plan else geodesic_unordered(UP, UQ)
        return PathReport(
            space=spec.space,
            path_class="linear",
            length=upath.total_length * s,
            beta_or_alpha=None,
            samples=_samples(upath, spec),
            region=_region_dict(region_unordered(UP, UQ)) if plan else None,
        )

    apath = plan_alt(P, Q) if plan else geodesic_alt(P, Q)
    return PathReport(
        space=spec.space,
        path_class="alt",
        length=apath.total_length * s,
        beta_or_alpha=apath.alpha,
        samples=_samples(apath, spec),
        region=_region_dict(region_alt(P, Q)) if plan else None,
    )


def _emit(document: dict) -> None:
    print(json.dumps(document, indent=2))


def cmd_geodesic(args: argparse.Namespace) -> int:
    _emit(build_report(QuerySpec.from_args(args)).to_dict())
    return 0


def cmd_plan(args: argparse.Namespace) -> int:
    _emit(build_report(QuerySpec.from_args(args), plan=True).to_dict())
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else get_default_seed()
    if args.count < 1:
        raise InvalidVectorError(f"count must be >= 1, got {args.count}")

    if args.fixture:
        instances = [FIXTURES[args.fixture]]
    else:
        rng = np.random.default_rng(seed)
        instances = [sample_f0_pair(rng, args.n) for _ in range(args.count)]
    n = instances[0][0].dim

    if not args.quiet:
        print(f"ℹ️  Verifying {len(instances)} instance(s) in dimension {n} with K={args.K}", file=sys.stderr)

    summary = CampaignSummary(seed=seed, n=n, waypoints=args.K, test_bed=asdict(get_test_bed()))
    records = []
    for i, (P, Q) in enumerate(instances):
        report = verify_instance(P, Q, K=args.K, iters=args.iters, seed=seed + i)
        summary.instances.append({"instance_id": i, **report.to_dict()})
        records.append(
            CampaignRecord(
                instance_id=i,
                n=n,
                seed=seed + i,
                waypoints=args.K,
                start=P.as_array().ravel().tolist(),
                goal=Q.as_array().ravel().tolist(),
                report=report,
            )
        )
        if not args.quiet:
            glyph = "✓" if report.passed else "❌"
            print(f"  {glyph} [{i + 1}/{len(instances)}] type {report.tag} rel_gap={report.rel_gap:+.3e}", file=sys.stderr)

    if args.table_out:
        pq.write_table(CampaignRecord.to_arrow_table(records), args.table_out)
        if not args.quiet:
            print(f"  Saved {args.table_out}", file=sys.stderr)

    _emit(summary.to_dict())
    if summary.all_pass:
        print("✅ All instances PASS", file=sys.stderr)
        return 0
    failed = sum(inst["status"] != "PASS" for inst in summary.instances)
    print(f"⚠️ {failed} instance(s) FAIL", file=sys.stderr)
    return 1


def cmd_figure(args: argparse.Namespace) -> int:
    if args.name:
        out = render_fixture(args.name, args.out)
        _emit({"figure": args.name, "out": str(out)})
        return 0

    spec = QuerySpec.from_args(args)
    P, Q = spec.configs()
    if spec.space == "ordered":
        path = geodesic(P, Q, np.asarray(spec.w, dtype=np.float64) if spec.w is not None else None)
    elif spec.space == "alt":
        path = plan_alt(P, Q)
    else:
        path = geodesic_unordered(UnorderedConfig(P), UnorderedConfig(Q))
    out = render_path(P, Q, path, args.out, contact=spec.space == "ordered", scale=spec.scale)
    _emit({"figure": "query", "out": str(out)})
    return 0


def _add_query_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--space", choices=SPACES, default="ordered", help="Configuration space of the query")
    parser.add_argument("--n", type=int, default=None, help="Ambient dimension")
    parser.add_argument("--p", default=None, help="Start configuration: 2n numbers a then a'")
    parser.add_argument("--q", default=None, help="Goal configuration: 2n numbers b then b'")
    parser.add_argument("--w", default=None, help="Direction choosing one type (c) geodesic")
    parser.add_argument("--samples", type=int, default=256, help="Number of path samples to report")
    parser.add_argument("--scale-eps", type=float, default=CLEARANCE, help="Clearance of the input units")
    parser.add_argument("--json", action="store_true", help="Read the query as JSON from stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoconfig", description="Minimal geodesics for two balls in R^n")
    subparsers = parser.add_subparsers(dest="command", required=True)

    geodesic_parser = subparsers.add_parser("geodesic", help="Minimal geodesic between two configurations")
    _add_query_arguments(geodesic_parser)
    geodesic_parser.set_defaults(handler=cmd_geodesic)

    plan_parser = subparsers.add_parser("plan", help="Geodesic chosen by the motion-planning rule")
    _add_query_arguments(plan_parser)
    plan_parser.set_defaults(handler=cmd_plan)

    verify_parser = subparsers.add_parser("verify", help="Check closed-form lengths against the numerical oracle")
    verify_parser.add_argument("--count", type=int, default=100, help="Number of random instances")
    verify_parser.add_argument("--n", type=int, default=2, help="Ambient dimension")
    verify_parser.add_argument("--seed", type=int, default=None, help="Campaign seed (default: $GEOCONFIG_SEED or 7)")
    verify_parser.add_argument("--K", type=int, default=400, help="Oracle waypoints")
    verify_parser.add_argument("--iters", type=int, default=2000, help="Oracle iteration budget per start")
    verify_parser.add_argument("--fixture", choices=sorted(FIXTURES), default=None, help="Verify a fixed example instead")
    verify_parser.add_argument("--table-out", type=Path, default=None, help="Write per-instance results as Parquet")
    verify_parser.add_argument("--quiet", action="store_true", help="Suppress per-instance progress lines")
    verify_parser.set_defaults(handler=cmd_verify)

    figure_parser = subparsers.add_parser("figure", help="Render a planar geodesic as SVG")
    figure_parser.add_argument("name", nargs="?", choices=FIGURES, default=None, help="Fixed figure to render")
    figure_parser.add_argument("--out", type=Path, required=True, help="SVG file to write")
    _add_query_arguments(figure_parser)
    figure_parser.set_defaults(handler=cmd_figure)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, and turn input errors into exit code 2."""
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (GeometryError, ValueError, KeyError) as e:
        code = getattr(e, "code", "invalid_input")
        _emit({"error": {"code": code, "message": str(e)}})
        print(f"❌ {code}: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
