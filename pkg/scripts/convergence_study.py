#!/usr/bin/env python3
"""Tabulate how the oracle's chord-sum length approaches the closed form as K grows."""

import argparse
import sys
from pathlib import Path

# Add packages to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "packages"))

from geoconfig.figures import FIXTURES
from geoconfig.oracle import optimize_path
from geoconfig.ordered import geodesic_length
from geoconfig.vecgeo import OrderedConfig

DEFAULT_WAYPOINTS = (25, 50, 100, 200, 400, 800)


def study(P: OrderedConfig, Q: OrderedConfig, waypoints: list[int], iters: int, seed: int) -> list[dict]:
    """Run the oracle once per waypoint count.

    Returns:
        One row per K with the oracle length, relative gap and convergence flag
    """
    analytic = geodesic_length(P, Q)
    rows = []
    for K in waypoints:
        result = optimize_path(P, Q, K=K, iters=iters, seed=seed)
        rows.append(
            {
                "K": K,
                "oracle": result.length,
                "rel_gap": (result.length - analytic) / analytic,
                "converged": result.converged,
                "init": result.init,
            }
        )
    return rows


def format_table(name: str, analytic: float, rows: list[dict]) -> str:
    lines = [
        f"## {name} (closed form {analytic:.6f})",
        "",
        "| K | oracle | rel_gap | converged | start |",
        "|---:|---:|---:|:---:|:---|",
    ]
    for row in rows:
        mark = "✓" if row["converged"] else "⚠️"
        lines.append(f"| {row['K']} | {row['oracle']:.6f} | {row['rel_gap']:+.3e} | {mark} | {row['init']} |")
    return "\n".join(lines)


def main() -> None:
    parser = argparse.ArgumentParser(description="Oracle convergence in the number of waypoints")
    parser.add_argument(
        "--fixture",
        choices=sorted(FIXTURES),
        action="append",
        default=None,
        help="Fixed example to study (repeatable, default: all)",
    )
    parser.add_argument(
        "--waypoints",
        type=int,
        nargs="+",
        default=list(DEFAULT_WAYPOINTS),
        help="Waypoint counts K to run",
    )
    parser.add_argument("--iters", type=int, default=2000, help="Iteration budget per start")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the perturbed start")
    parser.add_argument("-o", "--output", type=Path, default=None, help="Write the tables to a markdown file")
    args = parser.parse_args()

    if any(K < 16 for K in args.waypoints):
        print("Error: every waypoint count must be >= 16", file=sys.stderr)
        sys.exit(1)

    tables = []
    for name in args.fixture or sorted(FIXTURES):
        P, Q = FIXTURES[name]
        print(f"Studying {name}...", file=sys.stderr)
        rows = study(P, Q, args.waypoints, args.iters, args.seed)
        tables.append(format_table(name, geodesic_length(P, Q), rows))

    report = "\n\n".join(tables)
    if args.output:
        args.output.write_text(report + "\n")
        print(f"\n✅ Tables saved to {args.output}", file=sys.stderr)
    else:
        print(report)


if __name__ == "__main__":
    main()
