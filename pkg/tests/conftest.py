"""Shared chain builders and brute-force oracles."""

import numpy as np
import pytest

from qmarkov import BinaryMarkovChain


def worked_chain(steps: int = 3) -> BinaryMarkovChain:
    """Absorbing-in-0 chain with a 50/50 start and p11 = 0.5."""
    return BinaryMarkovChain((0.5, 0.5), ((1.0, 0.0), (0.5, 0.5)), steps)


def random_chain(rng: np.random.Generator, steps: int | None = None) -> BinaryMarkovChain:
    """Random valid chain; mixes in absorbing rows and endpoint probabilities."""
    steps = steps if steps is not None else int(rng.integers(1, 11))
    lam0 = float(rng.random())
    if rng.random() < 0.2:
        lam0 = float(rng.integers(0, 2))
    if rng.random() < 0.3:
        p01 = 0.0
    elif rng.random() < 0.15:
        p01 = float(rng.integers(0, 2))
    else:
        p01 = float(rng.random())
    if rng.random() < 0.15:
        p11 = float(rng.integers(0, 2))
    else:
        p11 = float(rng.random())
    return BinaryMarkovChain(
        (lam0, 1.0 - lam0), ((1.0 - p01, p01), (1.0 - p11, p11)), steps
    )


def brute_paths(chain: BinaryMarkovChain) -> dict[str, float]:
    """Slow per-path product oracle, independent of the library routines."""
    out = {}
    for i in range(2**chain.steps):
        key = format(i, f"0{chain.steps}b")
        bits = [int(b) for b in key]
        prob = chain.initial[bits[0]]
        for a, b in zip(bits, bits[1:]):
            prob *= chain.transition[a][b]
        if prob != 0.0:
            out[key] = prob
    return out


def assert_dist_close(actual: dict, expected: dict, atol: float) -> None:
    for key in set(actual) | set(expected):
        a = actual.get(key, 0.0)
        e = expected.get(key, 0.0)
        assert abs(a - e) <= atol, f"{key}: {a} vs {e}"


@pytest.fixture
def chain_spec_file(tmp_path):
    """Write a chain spec JSON file and return its path."""

    def write(
        steps=3, p0=0.5, p00=1.0, p01=0.0, p10=0.5, p11=0.5, name="chain.json"
    ):
        import json

        path = tmp_path / name
        path.write_text(
            json.dumps(
                {
                    "steps": steps,
                    "initial": {"p0": p0},
                    "transition": {"p00": p00, "p01": p01, "p10": p10, "p11": p11},
                }
            )
        )
        return str(path)

    return write
