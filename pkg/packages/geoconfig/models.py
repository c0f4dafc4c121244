"""Data models for verification reports."""

from collections.abc import Iterable
from dataclasses import asdict, dataclass

import pyarrow as pa


@dataclass
class TestBed:
    """The machine and numerical stack a verification campaign ran on."""

    __test__ = False  # not a pytest class

    name: str
    cpu: str
    cores: int
    memory_gb: float
    os: str
    python: str
    numpy: str
    scipy: str
    created_at: int


@dataclass
class VerifyReport:
    """Closed-form geodesic length checked against the numerical oracle."""

    analytic: float
    oracle: float
    feasible: bool
    rel_gap: float
    min_gap: float
    converged: bool
    tag: str

    @property
    def passed(self) -> bool:
        return self.feasible and self.rel_gap >= -1e-3

    def to_dict(self) -> dict:
        return {**asdict(self), "status": "PASS" if self.passed else "FAIL"}


@dataclass
class CampaignRecord:
    """One instance of a verify campaign."""

    instance_id: int
    n: int
    seed: int
    waypoints: int
    start: list[float]
    goal: list[float]
    report: VerifyReport

    @staticmethod
    def to_arrow_table(records: Iterable["CampaignRecord"]) -> pa.Table:
        """Convert campaign records to a PyArrow table.

        Args:
            records: Iterable of CampaignRecord instances

        Returns:
            PyArrow Table with one row per instance and the report as a struct column
        """
        records_list = list(records)

        report_type = pa.struct(
            [
                ("analytic", pa.float64()),
                ("oracle", pa.float64()),
                ("feasible", pa.bool_()),
                ("rel_gap", pa.float64()),
                ("min_gap", pa.float64()),
                ("converged", pa.bool_()),
                ("tag", pa.string()),
                ("status", pa.string()),
            ]
        )

        schema = pa.schema(
            [
                ("instance_id", pa.int64()),
                ("n", pa.int32()),
                ("seed", pa.int64()),
                ("waypoints", pa.int32()),
                ("start", pa.list_(pa.float64())),
                ("goal", pa.list_(pa.float64())),
                ("report", report_type),
            ]
        )

        if not records_list:
            return schema.empty_table()

        data = {
            "instance_id": [r.instance_id for r in records_list],
            "n": [r.n for r in records_list],
            "seed": [r.seed for r in records_list],
            "waypoints": [r.waypoints for r in records_list],
            "start": [r.start for r in records_list],
            "goal": [r.goal for r in records_list],
            "report": [r.report.to_dict() for r in records_list],
        }

        return pa.Table.from_pydict(data, schema=schema)
