"""Plot oracle-vs-closed-form gaps from a `geoconfig verify --table-out` Parquet file."""

import argparse
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib.pyplot as plt
import pyarrow.parquet as pq

TAG_COLORS = {"a": "#16a34a", "b": "#2563eb", "c": "#dc2626"}
PASS_THRESHOLD = -1e-3


def load_records(path: Path) -> dict[str, list[dict]]:
    """Load campaign rows and group them by geodesic type."""
    groups: dict[str, list[dict]] = defaultdict(list)
    for row in pq.read_table(path).to_pylist():
        report = row["report"]
        groups[report["tag"]].append(
            {
                "instance_id": row["instance_id"],
                "rel_gap": report["rel_gap"],
                "min_gap": report["min_gap"],
                "status": report["status"],
            }
        )
    return dict(groups)


def plot_campaign(groups: dict[str, list[dict]], title: str, output: Path | None) -> None:
    """Scatter rel_gap by instance, one color per geodesic type."""
    fig, ax = plt.subplots(figsize=(12, 5))

    for tag, rows in sorted(groups.items()):
        ax.scatter(
            [r["instance_id"] for r in rows],
            [r["rel_gap"] for r in rows],
            s=14,
            color=TAG_COLORS.get(tag, "#6b7280"),
            label=f"type {tag} ({len(rows)})",
        )
        failed = [r for r in rows if r["status"] != "PASS"]
        if failed:
            ax.scatter(
                [r["instance_id"] for r in failed],
                [r["rel_gap"] for r in failed],
                s=60,
                facecolors="none",
                edgecolors="#111827",
            )

    ax.axhline(0.0, color="#9ca3af", linewidth=0.8)
    ax.axhline(PASS_THRESHOLD, color="#dc2626", linestyle="--", linewidth=0.8, label="PASS threshold")
    ax.set_xlabel("Instance")
    ax.set_ylabel("(oracle - analytic) / analytic")
    ax.set_title(title)
    ax.legend(loc="upper right")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()

    if output:
        fig.savefig(output, dpi=150, bbox_inches="tight")
        print(f"  Saved {output}")
    else:
        plt.show()

    plt.close(fig)


def main() -> None:
    parser = argparse.ArgumentParser(description="Plot a geoconfig verify campaign table")
    parser.add_argument("table_path", type=Path, help="Parquet file written by `geoconfig verify --table-out`")
    parser.add_argument("-o", "--output", type=Path, default=None, help="Save the plot instead of showing it")
    parser.add_argument("--title", default="Oracle gap per instance", help="Plot title")
    args = parser.parse_args()

    if not args.table_path.exists():
        print(f"File not found: {args.table_path}", file=sys.stderr)
        sys.exit(1)

    groups = load_records(args.table_path)
    if not groups:
        print("No instances found in table", file=sys.stderr)
        sys.exit(1)

    print(f"Loaded {sum(len(v) for v in groups.values())} instances across {len(groups)} geodesic type(s)")
    plot_campaign(groups, args.title, args.output)


if __name__ == "__main__":
    main()
