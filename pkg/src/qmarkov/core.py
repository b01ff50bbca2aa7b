"""Exact statevector engine: gate kernels, circuit execution, sampling.

Basis index convention: the bit of qubit q0 is the most significant bit of
the amplitude index, so ``format(index, f"0{n}b")`` is the time-ordered
bitstring (leftmost character = q0).  Two-qubit kernels act on the sub-basis
|control target> = 00, 01, 10, 11 with the control as the more significant
bit of the pair.

Determinism: all randomness flows through numpy's PCG64 generator
(``np.random.default_rng``) seeded with a caller-supplied integer, and draws
happen in a fixed documented order, so noisy execution and sampling are
byte-for-byte reproducible per seed.  Kernels touch disjoint amplitude pairs
with no reductions, so results do not depend on BLAS thread counts.
"""

import math
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ValidationError
from .gates import GateOp, is_unitary

DEFAULT_MAX_QUBITS = 24
MAX_QUBITS_ENV = "QSIM_MAX_QUBITS"


def configured_max_qubits() -> int:
    """Capacity limit: the QSIM_MAX_QUBITS environment variable, else 24."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValidationError(f"{MAX_QUBITS_ENV} must be >= 1, got {value}")
    return value


def bitstring(index: int, num_qubits: int) -> str:
    """Time-ordered bitstring for a basis index (q0 leftmost)."""
    return format(index, f"0{num_qubits}b")


@dataclass
class Statevector:
    """Dense register state: 2**num_qubits complex amplitudes, unit L2 norm."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValidationError(f"num_qubits must be >= 1, got {self.num_qubits}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise ValidationError(
                f"expected {1 << self.num_qubits} amplitudes, got shape {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-10:
            raise ValidationError(f"state norm must be 1 within 1e-10, got {norm}")
        self.amplitudes = amps


def init_statevector(num_qubits: int, max_qubits: int | None = None) -> Statevector:
    """All-|0> register state; rejects registers outside [1, capacity]."""
    limit = configured_max_qubits() if max_qubits is None else max_qubits
    if num_qubits < 1 or num_qubits > limit:
        raise CapacityError(f"num_qubits must lie in [1, {limit}], got {num_qubits}")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(num_qubits, amps)


def _apply_single_raw(amps, gate, target, num_qubits):
    # q0 is the MSB, so qubit t splits the index as (2^t, 2, 2^(n-t-1)).
    view = amps.reshape(1 << target, 2, 1 << (num_qubits - target - 1))
    out = np.empty_like(view)
    out[:, 0, :] = gate[0, 0] * view[:, 0, :] + gate[0, 1] * view[:, 1, :]
    out[:, 1, :] = gate[1, 0] * view[:, 0, :] + gate[1, 1] * view[:, 1, :]
    return out.reshape(amps.shape)


def _apply_two_raw(amps, gate, control, target, num_qubits):
    lo, hi = (control, target) if control < target else (target, control)
    view = amps.reshape(
        1 << lo, 2, 1 << (hi - lo - 1), 2, 1 << (num_qubits - hi - 1)
    )
    out = np.zeros_like(view)
    for row in range(4):
        bc, bt = row >> 1, row & 1
        dst = (bc, bt) if control < target else (bt, bc)
        for col in range(4):
            entry = gate[row, col]
            if entry == 0:
                continue
            sc, st = col >> 1, col & 1
            src = (sc, st) if control < target else (st, sc)
            out[:, dst[0], :, dst[1], :] += entry * view[:, src[0], :, src[1], :]
    return out.reshape(amps.shape)


def apply_single(state: Statevector, gate: np.ndarray, target: int) -> Statevector:
    """Apply a 2x2 unitary to one qubit; returns a new state."""
    gate = np.asarray(gate, dtype=np.complex128)
    if gate.shape != (2, 2):
        raise ValidationError(f"expected a 2x2 gate, got shape {gate.shape}")
    if not is_unitary(gate):
        raise ValidationError("gate is not unitary within 1e-10")
    if not 0 <= target < state.num_qubits:
        raise IndexError(f"target {target} out of range for {state.num_qubits} qubits")
    return Statevector(
        state.num_qubits,
        _apply_single_raw(state.amplitudes, gate, target, state.num_qubits),
    )


def apply_two(
    state: Statevector, gate: np.ndarray, control: int, target: int
) -> Statevector:
    """Apply a 4x4 unitary over the (control, target) pair; returns a new state."""
    gate = np.asarray(gate, dtype=np.complex128)
    if gate.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 gate, got shape {gate.shape}")
    if not is_unitary(gate):
        raise ValidationError("gate is not unitary within 1e-10")
    for label, q in (("control", control), ("target", target)):
        if not 0 <= q < state.num_qubits:
            raise IndexError(f"{label} {q} out of range for {state.num_qubits} qubits")
    if control == target:
        raise ValidationError("control and target must differ")
    return Statevector(
        state.num_qubits,
        _apply_two_raw(state.amplitudes, gate, control, target, state.num_qubits),
    )


def probabilities(state: Statevector) -> dict[str, float]:
    """Born-rule distribution over time-ordered bitstrings.

    Bitstrings with exactly zero amplitude are omitted (absent keys read as
    probability zero everywhere in this package).
    """
    probs = np.abs(state.amplitudes) ** 2
    n = state.num_qubits
    return {bitstring(i, n): float(p) for i, p in enumerate(probs) if p != 0.0}


@dataclass(frozen=True)
class NoiseModel:
    """Stochastic bit-flip noise.

    ``gate_flip_prob`` applies an X to each touched qubit after each gate,
    independently; ``readout_flip_prob`` flips each measured classical bit.
    Both zero is exactly noiseless.
    """

    gate_flip_prob: float = 0.0
    readout_flip_prob: float = 0.0

    def __post_init__(self):
        for label, p in (
            ("gate_flip_prob", self.gate_flip_prob),
            ("readout_flip_prob", self.readout_flip_prob),
        ):
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"{label} must lie in [0, 1], got {p}")

    @property
    def is_noiseless(self) -> bool:
        return self.gate_flip_prob == 0.0 and self.readout_flip_prob == 0.0


@dataclass
class Circuit:
    """Ordered primitive gate applications over a fixed-width register.

    Ops execute strictly left to right (list order = time order).
    """

    num_qubits: int
    ops: list[GateOp] = field(default_factory=list)
    measure_all: bool = True

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValidationError(f"num_qubits must be >= 1, got {self.num_qubits}")
        for op in self.ops:
            for q in op.qubits:
                if not 0 <= q < self.num_qubits:
                    raise IndexError(
                        f"{op.text()} addresses qubit {q} in a "
                        f"{self.num_qubits}-qubit register"
                    )


_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _inplace_u1(amps, angle, target, num_qubits, scratch):
    view = amps.reshape(1 << target, 2, -1)
    view[:, 1, :] *= np.exp(1j * angle)


def _inplace_x(amps, target, num_qubits, scratch):
    view = amps.reshape(1 << target, 2, -1)
    half = scratch[: view[:, 0, :].size].reshape(view[:, 0, :].shape)
    np.copyto(half, view[:, 0, :])
    view[:, 0, :] = view[:, 1, :]
    view[:, 1, :] = half


def _inplace_h(amps, target, num_qubits, scratch):
    view = amps.reshape(1 << target, 2, -1)
    lower = view[:, 0, :]
    upper = view[:, 1, :]
    diff = scratch[: lower.size].reshape(lower.shape)
    np.subtract(lower, upper, out=diff)
    lower += upper
    lower *= _INV_SQRT2
    np.multiply(diff, _INV_SQRT2, out=upper)


def _inplace_cnot(amps, control, target, num_qubits, scratch):
    lo, hi = (control, target) if control < target else (target, control)
    view = amps.reshape(1 << lo, 2, 1 << (hi - lo - 1), 2, -1)
    if control < target:
        src = view[:, 1, :, 0, :]
        dst = view[:, 1, :, 1, :]
    else:
        src = view[:, 0, :, 1, :]
        dst = view[:, 1, :, 1, :]
    quarter = scratch[: src.size].reshape(src.shape)
    np.copyto(quarter, src)
    src[:] = dst
    dst[:] = quarter


def execute(
    circuit: Circuit,
    noise: NoiseModel | None = None,
    rng_seed: int | None = None,
    max_qubits: int | None = None,
) -> Statevector:
    """Run a circuit from the all-|0> state, gates in list order.

    Noiseless execution is deterministic and ignores the seed.  With gate
    noise enabled, one uniform draw per touched qubit per gate decides the
    stochastic X insertions (control first for CNOT), so the result is
    reproducible per seed.
    """
    limit = configured_max_qubits() if max_qubits is None else max_qubits
    if circuit.num_qubits > limit:
        raise CapacityError(
            f"circuit needs {circuit.num_qubits} qubits, capacity is {limit}"
        )
    if noise is not None and not noise.is_noiseless and rng_seed is None:
        raise ValidationError("rng_seed is required when noise is enabled")
    flip_prob = noise.gate_flip_prob if noise is not None else 0.0
    rng = np.random.default_rng(rng_seed) if flip_prob > 0.0 else None

    n = circuit.num_qubits
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    # In-place primitive kernels on the owned buffer; one shared scratch half.
    scratch = np.empty(max(1, amps.size // 2), dtype=np.complex128)
    for op in circuit.ops:
        if op.name == "H":
            _inplace_h(amps, op.qubits[0], n, scratch)
        elif op.name == "U1":
            _inplace_u1(amps, op.angle, op.qubits[0], n, scratch)
        elif op.name == "X":
            _inplace_x(amps, op.qubits[0], n, scratch)
        else:
            _inplace_cnot(amps, op.qubits[0], op.qubits[1], n, scratch)
        if rng is not None:
            for q in op.qubits:
                if rng.random() < flip_prob:
                    _inplace_x(amps, q, n, scratch)
    return Statevector(n, amps)


@dataclass
class Counts:
    """Measurement histogram: bitstring -> occurrences, totalling ``shots``."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        total = 0
        width = None
        for key, value in self.counts.items():
            if not key or set(key) - {"0", "1"}:
                raise ValidationError(f"malformed bitstring key {key!r}")
            if width is None:
                width = len(key)
            elif len(key) != width:
                raise ValidationError(
                    f"bitstring keys mix lengths {width} and {len(key)}"
                )
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValidationError(f"count for {key!r} must be a non-negative int")
            total += value
        if total != self.shots:
            raise ValidationError(f"counts sum to {total}, expected shots={self.shots}")

    def to_json_dict(self) -> dict:
        """Serialized form: {"shots": int, "counts": {bitstring: int}}."""
        return {"shots": self.shots, "counts": dict(sorted(self.counts.items()))}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Counts":
        if not isinstance(data, dict) or set(data) != {"shots", "counts"}:
            raise ValidationError("counts JSON needs exactly the keys 'shots' and 'counts'")
        shots = data["shots"]
        raw = data["counts"]
        if not isinstance(shots, int) or isinstance(shots, bool):
            raise ValidationError("'shots' must be an integer")
        if not isinstance(raw, dict):
            raise ValidationError("'counts' must be an object")
        return cls({str(k): v for k, v in raw.items()}, shots)


def sample_counts(
    state: Statevector,
    shots: int,
    rng_seed: int | None,
    noise: NoiseModel | None = None,
) -> Counts:
    """Multinomial sample of the state's distribution, with optional readout
    bit flips.

    Draw order per seed: the ``shots`` outcome draws first, then (only when
    readout_flip_prob > 0) one uniform per measured bit.
    """
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    if rng_seed is None:
        raise ValidationError("rng_seed is required for sampling")
    n = state.num_qubits
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(rng_seed)
    outcomes = rng.choice(probs.size, size=shots, p=probs)
    flip_prob = noise.readout_flip_prob if noise is not None else 0.0
    if flip_prob > 0.0:
        flips = rng.random((shots, n)) < flip_prob
        weights = 1 << np.arange(n - 1, -1, -1)  # q0 is the MSB
        outcomes = outcomes ^ (flips @ weights)
    tallies = Counter(int(i) for i in outcomes)
    return Counts({bitstring(i, n): c for i, c in sorted(tallies.items())}, shots)
