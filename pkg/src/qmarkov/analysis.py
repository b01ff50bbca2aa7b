"""Distribution utilities: counts normalization, the Hellinger metric with
its fidelity complement, and run-comparison reports."""

import json
import math
from dataclasses import dataclass

from .core import Counts
from .errors import ValidationError

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

DIST_SUM_ATOL = 1e-9


def counts_to_distribution(counts: Counts) -> dict[str, float]:
    """Normalize a histogram by its shot count."""
    if counts.shots < 1:
        raise ValidationError("cannot normalize zero-shot counts")
    return {key: value / counts.shots for key, value in sorted(counts.counts.items())}


def validate_distribution(dist: dict[str, float], what: str = "distribution") -> None:
    """Check a bitstring->probability map: binary keys of one length,
    non-negative values summing to 1 within 1e-9."""
    width = _support_width(dist, what)
    if width is None:
        raise ValidationError(f"{what} is empty")
    for key in dist:
        if set(key) - {"0", "1"}:
            raise ValidationError(f"{what} has a malformed bitstring {key!r}")
    total = sum(dist.values())
    if abs(total - 1.0) > DIST_SUM_ATOL:
        raise ValidationError(f"{what} sums to {total}, expected 1 within {DIST_SUM_ATOL}")


def _support_width(dist: dict[str, float], what: str) -> int | None:
    width = None
    for key, value in dist.items():
        if width is None:
            width = len(key)
        elif len(key) != width:
            raise ValidationError(
                f"{what} mixes bitstring lengths {width} and {len(key)}"
            )
        if value < 0:
            raise ValidationError(f"{what} has a negative probability for {key!r}")
    return width


def hellinger_distance(p: dict[str, float], q: dict[str, float]) -> float:
    """(1/sqrt 2) times the L2 distance between the square-root vectors.

    Computed over the union of supports; absent keys count as probability
    zero.  Symmetric, and 0 exactly for identical inputs.
    """
    width_p = _support_width(p, "first distribution")
    width_q = _support_width(q, "second distribution")
    if width_p is not None and width_q is not None and width_p != width_q:
        raise ValidationError(f"bitstring lengths differ: {width_p} vs {width_q}")
    total = 0.0
    for key in sorted(set(p) | set(q)):
        diff = math.sqrt(p.get(key, 0.0)) - math.sqrt(q.get(key, 0.0))
        total += diff * diff
    return min(_INV_SQRT2 * math.sqrt(total), 1.0)


def hellinger_fidelity(p: dict[str, float], q: dict[str, float]) -> float:
    """1 minus the Hellinger distance."""
    return 1.0 - hellinger_distance(p, q)


@dataclass(frozen=True)
class FidelityReport:
    """Comparison of two runs; fidelity is exactly 1 - distance.

    ``diffs`` holds per-bitstring absolute probability differences over the
    union of supports; a shots field of 0 marks an exact (non-sampled) side.
    """

    hellinger_distance: float
    hellinger_fidelity: float
    diffs: dict[str, float]
    reference_shots: int
    observed_shots: int

    def to_json_dict(self) -> dict:
        return {
            "distance": self.hellinger_distance,
            "fidelity": self.hellinger_fidelity,
            "diffs": dict(sorted(self.diffs.items())),
        }


def _as_distribution(side) -> tuple[dict[str, float], int]:
    if isinstance(side, Counts):
        return counts_to_distribution(side), side.shots
    return dict(side), 0


def compare_runs(reference, observed) -> FidelityReport:
    """Build a fidelity report between two runs.

    Either side may be a ``Counts`` histogram (auto-normalized, shots
    recorded) or an already-normalized distribution (shots recorded as 0).
    """
    ref_dist, ref_shots = _as_distribution(reference)
    obs_dist, obs_shots = _as_distribution(observed)
    distance = hellinger_distance(ref_dist, obs_dist)
    diffs = {
        key: abs(ref_dist.get(key, 0.0) - obs_dist.get(key, 0.0))
        for key in sorted(set(ref_dist) | set(obs_dist))
    }
    return FidelityReport(distance, 1.0 - distance, diffs, ref_shots, obs_shots)


def to_json_text(value) -> str:
    """JSON text with floats rendered at 17 significant digits (lossless)."""
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (bool, int, str)) or value is None:
        return json.dumps(value)
    if isinstance(value, dict):
        body = ", ".join(
            f"{json.dumps(str(k))}: {to_json_text(v)}" for k, v in value.items()
        )
        return "{" + body + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(to_json_text(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")
