"""JSON sample archives, membership polylines and CSV tables.

Archive layout (``format_version`` 1)::

    {
      "header": {"format": "lrfuzzy-sample-archive", "format_version": 1,
                 "generator": ..., "rng": ..., "mode": ..., "seed": ...,
                 "k": ..., "n": ..., "model": "[...]_k", "spec": "<spec file text>"},
      "records": [ {"o": ..., "c_l": ..., "c_r": ..., "s_l": ..., "s_r": ...,
                    piecewise: "k", "left_knots": [[x, mu], ...], "right_knots": [...],
                               "left_offsets": [...], "right_offsets": [...] (optional)
                    limit:     "left_arm": {"family", "params", "upper"} | null,
                               "right_arm": ... } ]
    }

Floats are written with Python's shortest round-trip representation, so a
loaded archive reproduces every binary64 value exactly.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from typing import Sequence

import numpy as np

from . import __version__
from .dist import TruncatedDistribution
from .fuzzy import FuzzyInterval, LimitLRFI, PiecewiseLRFI
from .simulate import RNG_ALGORITHM
from .specfile import ModelSpecFile, distribution_from_params, format_spec

__all__ = [
    "ARCHIVE_FORMAT",
    "ARCHIVE_VERSION",
    "ArchiveError",
    "record_to_dict",
    "record_from_dict",
    "dump_archive",
    "load_archive",
    "membership_polyline",
    "polylines_csv",
    "report_csv",
    "report_json",
    "write_atomic",
]

ARCHIVE_FORMAT = "lrfuzzy-sample-archive"
ARCHIVE_VERSION = 1


class ArchiveError(ValueError):
    pass


def _arm_to_dict(arm: TruncatedDistribution | None):
    if arm is None:
        return None
    return {"family": arm.base.name, "params": list(arm.base.params), "upper": arm.upper}


def _arm_from_dict(d):
    if d is None:
        return None
    return TruncatedDistribution(distribution_from_params(d["family"], d["params"]), float(d["upper"]))


def record_to_dict(f: FuzzyInterval) -> dict:
    rec = dict(zip(("o", "c_l", "c_r", "s_l", "s_r"), f.scalars))
    if isinstance(f, PiecewiseLRFI):
        rec["k"] = f.k
        rec["left_knots"] = f.left_knots.tolist()
        rec["right_knots"] = f.right_knots.tolist()
        rec["left_offsets"] = f.left_offsets.tolist()
        rec["right_offsets"] = f.right_offsets.tolist()
    elif isinstance(f, LimitLRFI):
        rec["left_arm"] = _arm_to_dict(f.left_arm)
        rec["right_arm"] = _arm_to_dict(f.right_arm)
    else:
        raise TypeError(f"cannot serialize {type(f).__name__}")
    return rec


def record_from_dict(rec: dict, mode: str) -> FuzzyInterval:
    try:
        scal = [float(rec[key]) for key in ("o", "c_l", "c_r", "s_l", "s_r")]
        if mode == "piecewise":
            return PiecewiseLRFI(
                *scal,
                np.asarray(rec["left_knots"], dtype=float).reshape(-1, 2),
                np.asarray(rec["right_knots"], dtype=float).reshape(-1, 2),
                int(rec["k"]),
                rec.get("left_offsets"),
                rec.get("right_offsets"),
            )
        if mode == "limit":
            return LimitLRFI(*scal, _arm_from_dict(rec["left_arm"]), _arm_from_dict(rec["right_arm"]))
    except KeyError as exc:
        raise ArchiveError(f"record is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ArchiveError(f"malformed record: {exc}") from None
    raise ArchiveError(f"unknown mode {mode!r}")


def dump_archive(doc: ModelSpecFile, records: Sequence[FuzzyInterval]) -> str:
    spec = doc.spec
    header = {
        "format": ARCHIVE_FORMAT,
        "format_version": ARCHIVE_VERSION,
        "generator": f"lrfuzzy {__version__}",
        "rng": RNG_ALGORITHM,
        "mode": doc.mode,
        "seed": spec.seed,
        "k": spec.k,
        "n": len(records),
        "model": spec.to_text(),
        "spec": format_spec(ModelSpecFile(spec, len(records), doc.mode)),
    }
    body = {"header": header, "records": [record_to_dict(r) for r in records]}
    return json.dumps(body, indent=1) + "\n"


def load_archive(text: str) -> tuple[dict, list[FuzzyInterval]]:
    try:
        body = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArchiveError(f"not valid JSON: {exc}") from None
    if not isinstance(body, dict) or "header" not in body or "records" not in body:
        raise ArchiveError("archive must be an object with 'header' and 'records'")
    header = body["header"]
    if header.get("format") != ARCHIVE_FORMAT:
        raise ArchiveError(f"unexpected archive format {header.get('format')!r}")
    if header.get("format_version") != ARCHIVE_VERSION:
        raise ArchiveError(f"unsupported archive version {header.get('format_version')!r}")
    mode = header.get("mode")
    records = []
    for i, rec in enumerate(body["records"]):
        try:
            records.append(record_from_dict(rec, mode))
        except ArchiveError as exc:
            raise ArchiveError(f"record {i}: {exc}") from None
    return header, records


def membership_polyline(f: FuzzyInterval, points: int = 64) -> np.ndarray:
    """Vertices ``(x, mu)`` tracing the membership function left to right.

    Piecewise intervals give their exact vertex list.  Limit intervals are
    sampled at ``points`` equispaced abscissae per arm, endpoints included.
    """
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    if isinstance(f, PiecewiseLRFI):
        return f.vertices()
    a1, a2, a3, a4 = f.trapezoid
    left = np.linspace(a1, a2, points) if f.s_l > 0 else np.array([a1, a2])
    right = np.linspace(a3, a4, points) if f.s_r > 0 else np.array([a3, a4])
    lmu = f.membership(left)
    rmu = f.membership(right)
    # the arm ends are exact vertices even when a spread is 0
    lmu[0], lmu[-1] = 0.0, 1.0
    rmu[0], rmu[-1] = 1.0, 0.0
    return np.column_stack((np.concatenate((left, right)), np.concatenate((lmu, rmu))))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def polylines_csv(polylines: Sequence[np.ndarray], element_column: bool = True) -> str:
    """CSV with header ``x,mu`` (single polyline) or ``element,x,mu``."""
    if not element_column:
        if len(polylines) != 1:
            raise ValueError("x,mu format holds exactly one polyline")
        return _csv(("x", "mu"), ((float(x), float(m)) for x, m in polylines[0]))
    rows = (
        (i, float(x), float(m)) for i, poly in enumerate(polylines) for x, m in poly
    )
    return _csv(("element", "x", "mu"), rows)


def report_csv(report) -> str:
    return _csv(("k", "replication", "sup_distance"), report.sup_distances)


def report_json(report) -> str:
    body = {
        "k_values": list(report.k_values),
        "replications": report.replications,
        "grid": report.grid_resolution,
        "medians": {str(k): v for k, v in report.medians().items()},
        "rows": report.rows(),
    }
    if report.pointwise is not None:
        body["pointwise"] = [
            {"x": x, "k": k, "replication": r, "gap": g} for x, k, r, g in report.pointwise
        ]
    return json.dumps(body, indent=1) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lrfuzzy-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

