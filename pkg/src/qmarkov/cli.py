"""Command-line front end: compile, run, oracle, fidelity, gate-check.

Exit codes: 0 success, 2 validation/usage error, 3 capacity exceeded.
"""

import argparse
import json
import sys

import numpy as np

from .analysis import compare_runs, to_json_text
from .core import Counts, NoiseModel, execute, probabilities, sample_counts
from .errors import CapacityError, ValidationError
from .gates import (
    RotationOrder,
    compose_sequence,
    controlled_nth_root_x,
    controlled_nth_root_x_sequence,
    nth_root_x,
    nth_root_x_sequence,
    solve_rotation_order,
)
from .markov import compile_to_circuit, enumerate_paths, load_chain

DEFAULT_SHOTS = 8192
GATE_CHECK_TOL = 1e-12


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmarkov",
        description="Compile two-state Markov chains to quantum circuits, "
        "simulate them exactly or with sampling, and compare result "
        "distributions by Hellinger fidelity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compile_p = sub.add_parser(
        "compile", help="print the gate listing compiled from a chain spec"
    )
    compile_p.add_argument("--spec", required=True, help="chain spec JSON file")
    compile_p.set_defaults(func=cmd_compile)

    run_p = sub.add_parser(
        "run", help="execute a chain circuit; exact probabilities or sampled counts"
    )
    run_p.add_argument("--spec", required=True, help="chain spec JSON file")
    run_p.add_argument(
        "--shots",
        nargs="?",
        const=DEFAULT_SHOTS,
        type=int,
        default=None,
        help="sample this many shots (bare flag = 8192); omit for exact probabilities",
    )
    run_p.add_argument("--seed", type=int, default=None, help="RNG seed")
    run_p.add_argument("--noise-gate", type=float, default=None, metavar="P")
    run_p.add_argument("--noise-readout", type=float, default=None, metavar="P")
    run_p.add_argument("--bit-order", choices=("time", "reversed"), default="time")
    run_p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    run_p.set_defaults(func=cmd_run)

    oracle_p = sub.add_parser(
        "oracle", help="classical path enumeration for a chain spec"
    )
    oracle_p.add_argument("--spec", required=True, help="chain spec JSON file")
    oracle_p.add_argument("--bit-order", choices=("time", "reversed"), default="time")
    oracle_p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    oracle_p.set_defaults(func=cmd_oracle)

    fid_p = sub.add_parser(
        "fidelity", help="Hellinger comparison of two result files"
    )
    fid_p.add_argument("file_a", help="reference counts or distribution JSON")
    fid_p.add_argument("file_b", help="observed counts or distribution JSON")
    fid_p.set_defaults(func=cmd_fidelity)

    gate_p = sub.add_parser(
        "gate-check", help="verify the rotation decompositions for one angle"
    )
    group = gate_p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", type=float, help="angle in radians")
    group.add_argument("--p0", type=float, help="target probability of keeping |0>")
    gate_p.set_defaults(func=cmd_gate_check)

    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        print(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _reorder_keys(mapping: dict, order: str) -> dict:
    if order == "time":
        return mapping
    return {
        key[::-1]: value
        for key, value in sorted(mapping.items(), key=lambda kv: kv[0][::-1])
    }


def cmd_compile(args) -> int:
    circuit = compile_to_circuit(load_chain(args.spec))
    for op in circuit.ops:
        print(op.text())
    print(f"# qubits={circuit.num_qubits} gates={len(circuit.ops)}")
    return 0


def _noise_from_args(args) -> NoiseModel | None:
    if args.noise_gate is None and args.noise_readout is None:
        return None
    gate = args.noise_gate if args.noise_gate is not None else 0.0
    readout = args.noise_readout if args.noise_readout is not None else 0.0
    return NoiseModel(gate, readout)


def cmd_run(args) -> int:
    chain = load_chain(args.spec)
    circuit = compile_to_circuit(chain)
    noise = _noise_from_args(args)
    if noise is not None and not noise.is_noiseless and args.seed is None:
        raise ValidationError("--seed is required when noise is enabled")
    if args.shots is not None and args.seed is None:
        raise ValidationError("--seed is required when sampling")
    state = execute(circuit, noise=noise, rng_seed=args.seed)
    if args.shots is None:
        payload = _reorder_keys(probabilities(state), args.bit_order)
    else:
        counts = sample_counts(state, args.shots, args.seed, noise)
        payload = counts.to_json_dict()
        payload["counts"] = _reorder_keys(payload["counts"], args.bit_order)
    _emit(to_json_text(payload), args.out)
    return 0


def cmd_oracle(args) -> int:
    paths = enumerate_paths(load_chain(args.spec))
    _emit(to_json_text(_reorder_keys(paths, args.bit_order)), args.out)
    return 0


def _load_result(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    if set(data) == {"shots", "counts"}:
        return Counts.from_json_dict(data)
    dist = {}
    for key, value in data.items():
        if not key or set(key) - {"0", "1"}:
            raise ValidationError(f"{path}: malformed bitstring {key!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            raise ValidationError(f"{path}: bad probability for {key!r}")
        dist[key] = float(value)
    if not dist or abs(sum(dist.values()) - 1.0) > 1e-9:
        raise ValidationError(f"{path}: probabilities must sum to 1 within 1e-9")
    return dist


def cmd_fidelity(args) -> int:
    report = compare_runs(_load_result(args.file_a), _load_result(args.file_b))
    print(to_json_text(report.to_json_dict()))
    return 0


def cmd_gate_check(args) -> int:
    order = RotationOrder(args.lam) if args.lam is not None else solve_rotation_order(args.p0)
    single = nth_root_x(order)
    single_seq = nth_root_x_sequence(order)
    controlled = controlled_nth_root_x(order)
    controlled_seq = controlled_nth_root_x_sequence(order)
    enclosure_err = float(np.max(np.abs(compose_sequence(single_seq, 1) - single)))
    controlled_err = float(np.max(np.abs(compose_sequence(controlled_seq, 2) - controlled)))

    print(f"lambda: {order.lam:.17g}")
    print(f"n_equivalent: {order.n_equivalent:.17g}")
    print("matrix:")
    for row in single:
        print("  [" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row) + "]")
    print("sequence:")
    for op in single_seq:
        print(f"  {op.text()}")
    print("controlled sequence:")
    for op in controlled_seq:
        print(f"  {op.text()}")
    print(f"enclosure max error: {enclosure_err:.3e}")
    print(f"controlled max error: {controlled_err:.3e}")
    ok = enclosure_err < GATE_CHECK_TOL and controlled_err < GATE_CHECK_TOL
    print("status: ok" if ok else "status: FAILED")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
