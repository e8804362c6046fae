"""Command-line interface: reproducible estimation and experiment artifacts.

Subcommands
-----------
``gen``                  synthesize a noisy-sinusoid record -> signal CSV.
``est1d``                signal CSV -> AR model JSON (levinson | burg | burg-mod).
``est2d``                grid CSV -> model JSON + quarter-plane filter JSON
                         (wwra | burg2d | burg2d-mod).
``spectrum``             model/filter JSON -> spectrum CSV.
``experiment phase-sweep``   one spectrum row per swept phase (matrix CSV).
``experiment order-sweep``   one spectrum row per order on a fixed record.
``experiment mse-vs-order``  residual MSE per order for several methods.
``experiment equivalence``   lattice-vs-recursion agreement suites -> JSON
                             verdict (exit 1 if a suite exceeds tolerance).

Every run writes exactly one manifest JSON (default ``<out>.manifest.json``)
recording the subcommand, the full parameter set, the effective argv, the
seed, the library version, the output paths and the wall-clock duration.
Re-running the recorded argv reproduces the data outputs byte-for-byte; all
randomness flows from the explicit seed (``--seed`` beats the
``ARSPEC_SEED`` environment default).

Exit codes: 0 success, 1 failed equivalence verdict, 2 usage error,
3 numerical error. Errors are single machine-parsable lines on stderr:
``error: usage: ...`` or ``error: numerical: ...``.
"""

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .ar1d import ArModel1D, burg_classic, burg_modified, levinson, residual_mse
from .ar2d import burg2d_classic, burg2d_modified, extract_quarter_plane_filter, wwra
from .autocorr import estimate_autocorr_1d, estimate_block_autocorr_2d
from .errors import NumericalError
from .io import (
    filter_from_dict,
    filter_to_dict,
    model1d_from_dict,
    model1d_to_dict,
    model2d_from_dict,
    model2d_to_dict,
    read_json,
    read_signal_2d_csv,
    read_signal_csv,
    write_json,
    write_signal_csv,
    write_spectrum_csv,
)
from .linalg import max_rel_diff
from .siggen import Lcg32, SynthConfig, gen_noisy_sinusoid, phase_sweep
from .spectrum import ar_spectrum_1d, ar_spectrum_2d, frequency_grid

_METHODS_1D = ("levinson", "burg", "burg-mod")
_METHODS_2D = ("wwra", "burg2d", "burg2d-mod")


def _default_seed() -> int:
    return int(os.environ.get("ARSPEC_SEED", "1"))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(2)


def _estimate_1d(method: str, x, order: int) -> ArModel1D:
    if method == "levinson":
        return levinson(estimate_autocorr_1d(x, order), order)
    if method == "burg":
        return burg_classic(x, order)
    if method == "burg-mod":
        return burg_modified(x, order)
    raise ValueError(f"unknown 1D method {method!r}")


def _estimate_2d(method: str, x, n1: int, n2: int):
    if method == "wwra":
        blocks = estimate_block_autocorr_2d(x, n1, n2)
        return wwra(blocks, n1, sample_terms=x.shape[0] + n1)
    if method == "burg2d":
        return burg2d_classic(x, n1, n2)
    if method == "burg2d-mod":
        return burg2d_modified(x, n1, n2)
    raise ValueError(f"unknown 2D method {method!r}")


def _models_per_order(method: str, x, max_order: int) -> list[ArModel1D]:
    """One model per order 1..max_order, from a single recursion history."""
    full = _estimate_1d(method, x, max_order)
    return [
        ArModel1D(st.order, st.coeffs, st.error_power, [], False)
        for st in full.history
    ]


def _write_manifest(args, subcommand: str, params: dict, outputs: list, start: float):
    manifest_path = getattr(args, "manifest", None) or f"{outputs[0]}.manifest.json"
    write_json(
        manifest_path,
        {
            "subcommand": subcommand,
            "parameters": params,
            "argv": list(args.effective_argv),
            "seed": params.get("seed"),
            "version": __version__,
            "outputs": [str(p) for p in outputs],
            "duration_seconds": time.perf_counter() - start,
        },
    )


def _row_values(power: np.ndarray, use_log10: bool) -> np.ndarray:
    if not use_log10:
        return power
    with np.errstate(divide="ignore"):
        return np.log10(power)


def _write_matrix_csv(path, row_name, row_values, freqs, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(row_name + "," + ",".join(repr(float(f)) for f in freqs) + "\n")
        for label, values in zip(row_values, rows):
            fh.write(
                str(label) + "," + ",".join(repr(float(v)) for v in values) + "\n"
            )


def _cmd_gen(args) -> int:
    start = time.perf_counter()
    snr = None if args.noiseless else args.snr_db
    cfg = SynthConfig(args.n, args.freq, args.phase, snr, args.seed)
    x = gen_noisy_sinusoid(cfg, substream=args.substream)
    write_signal_csv(args.out, x)
    _write_manifest(
        args,
        "gen",
        {
            "n": args.n,
            "freq": args.freq,
            "phase": args.phase,
            "snr_db": snr,
            "seed": args.seed,
            "substream": args.substream,
            "out": args.out,
        },
        [args.out],
        start,
    )
    return 0


def _cmd_est1d(args) -> int:
    start = time.perf_counter()
    x = read_signal_csv(args.input)
    model = _estimate_1d(args.method, x, args.order)
    write_json(args.out, model1d_to_dict(model, args.method))
    _write_manifest(
        args,
        "est1d",
        {"method": args.method, "order": args.order, "in": args.input, "out": args.out},
        [args.out],
        start,
    )
    return 0


def _cmd_est2d(args) -> int:
    start = time.perf_counter()
    x = read_signal_2d_csv(args.input)
    model = _estimate_2d(args.method, x, args.n1, args.n2)
    filt = extract_quarter_plane_filter(model)
    filter_out = args.filter_out or f"{args.out}.filter.json"
    write_json(args.out, model2d_to_dict(model, args.method))
    write_json(filter_out, filter_to_dict(filt))
    _write_manifest(
        args,
        "est2d",
        {
            "method": args.method,
            "n1": args.n1,
            "n2": args.n2,
            "in": args.input,
            "out": args.out,
            "filter_out": filter_out,
        },
        [args.out, filter_out],
        start,
    )
    return 0


def _cmd_spectrum(args) -> int:
    start = time.perf_counter()
    obj = read_json(args.input)
    kind = obj.get("kind")
    if kind == "ar1d":
        grid = ar_spectrum_1d(model1d_from_dict(obj), args.nfreq)
    elif kind == "quarter_plane_filter":
        grid = ar_spectrum_2d(filter_from_dict(obj), args.nf1, args.nf2)
    elif kind == "ar2d":
        filt = extract_quarter_plane_filter(model2d_from_dict(obj))
        grid = ar_spectrum_2d(filt, args.nf1, args.nf2)
    else:
        raise ValueError(f"{args.input}: unsupported kind {kind!r}")
    write_spectrum_csv(args.out, grid)
    _write_manifest(
        args,
        "spectrum",
        {
            "in": args.input,
            "out": args.out,
            "nfreq": args.nfreq,
            "nf1": args.nf1,
            "nf2": args.nf2,
        },
        [args.out],
        start,
    )
    return 0


def _cmd_phase_sweep(args) -> int:
    start = time.perf_counter()
    snr = None if args.noiseless else args.snr_db
    cfg = SynthConfig(args.n, args.freq, 0.0, snr, args.seed)
    signals = phase_sweep(cfg, args.steps)
    freqs = frequency_grid(args.nfreq)
    phases = []
    rows = []
    for j, x in enumerate(signals):
        model = _estimate_1d(args.method, x, args.order)
        grid = ar_spectrum_1d(model, args.nfreq)
        phases.append(repr(2.0 * math.pi * j / args.steps))
        rows.append(_row_values(grid.power, args.log10))
    _write_matrix_csv(args.out, "phase", phases, freqs, rows)
    _write_manifest(
        args,
        "experiment phase-sweep",
        {
            "method": args.method,
            "order": args.order,
            "steps": args.steps,
            "nfreq": args.nfreq,
            "n": args.n,
            "freq": args.freq,
            "snr_db": snr,
            "seed": args.seed,
            "log10": args.log10,
            "out": args.out,
        },
        [args.out],
        start,
    )
    return 0


def _cmd_order_sweep(args) -> int:
    start = time.perf_counter()
    snr = None if args.noiseless else args.snr_db
    cfg = SynthConfig(args.n, args.freq, args.phase, snr, args.seed)
    x = gen_noisy_sinusoid(cfg)
    freqs = frequency_grid(args.nfreq)
    orders = []
    rows = []
    for model in _models_per_order(args.method, x, args.max_order):
        grid = ar_spectrum_1d(model, args.nfreq)
        orders.append(model.order)
        rows.append(_row_values(grid.power, args.log10))
    _write_matrix_csv(args.out, "order", orders, freqs, rows)
    _write_manifest(
        args,
        "experiment order-sweep",
        {
            "method": args.method,
            "max_order": args.max_order,
            "nfreq": args.nfreq,
            "n": args.n,
            "freq": args.freq,
            "phase": args.phase,
            "snr_db": snr,
            "seed": args.seed,
            "log10": args.log10,
            "out": args.out,
        },
        [args.out],
        start,
    )
    return 0


def _cmd_mse_vs_order(args) -> int:
    start = time.perf_counter()
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in _METHODS_1D:
            raise ValueError(f"unknown method {m!r}, expected one of {_METHODS_1D}")
    snr = None if args.noiseless else args.snr_db
    cfg = SynthConfig(args.n, args.freq, args.phase, snr, args.seed)
    x = gen_noisy_sinusoid(cfg)
    table = {}
    for method in methods:
        table[method] = [
            residual_mse(x, model, support=args.support)
            for model in _models_per_order(method, x, args.max_order)
        ]
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("order," + ",".join(f"mse_{m}" for m in methods) + "\n")
        for i in range(args.max_order):
            vals = ",".join(repr(table[m][i]) for m in methods)
            fh.write(f"{i + 1},{vals}\n")
    _write_manifest(
        args,
        "experiment mse-vs-order",
        {
            "methods": methods,
            "max_order": args.max_order,
            "support": args.support,
            "n": args.n,
            "freq": args.freq,
            "phase": args.phase,
            "snr_db": snr,
            "seed": args.seed,
            "out": args.out,
        },
        [args.out],
        start,
    )
    return 0


def equivalence_report(trials_1d: int, trials_2d: int, seed: int) -> dict:
    """Lattice-vs-recursion deviation suites over seeded random inputs."""
    sizes = (8, 20, 64)
    dev1 = 0.0
    for i in range(trials_1d):
        n = sizes[i % len(sizes)]
        x = Lcg32(seed, substream=1000 + i).complex_normal(n)
        max_order = n - 5
        lev = levinson(estimate_autocorr_1d(x, max_order), max_order)
        mod = burg_modified(x, max_order)
        for st_l, st_m in zip(lev.history, mod.history):
            dev1 = max(dev1, max_rel_diff(st_l.coeffs, st_m.coeffs))

    grid_sizes = (5, 8)
    dev2 = 0.0
    for i in range(trials_2d):
        n1_len = grid_sizes[i % 2]
        n2_len = grid_sizes[(i // 2) % 2]
        order = 1 + i % 3
        channel = (i // 3) % 3
        raw = Lcg32(seed, substream=2000 + i).complex_normal(n1_len * n2_len)
        x = raw.reshape(n1_len, n2_len)
        mod = burg2d_modified(x, order, channel)
        ww = wwra(
            estimate_block_autocorr_2d(x, order, channel),
            order,
            sample_terms=n1_len + order,
        )
        for st_w, st_m in zip(ww.history, mod.history[1:]):
            dev2 = max(dev2, max_rel_diff(st_w.coeffs, st_m.coeffs))

    tol1, tol2 = 1e-9, 1e-8
    report = {
        "equivalence_1d": {
            "trials": trials_1d,
            "max_rel_deviation": dev1,
            "tolerance": tol1,
            "pass": dev1 <= tol1,
        },
        "equivalence_2d": {
            "trials": trials_2d,
            "max_rel_deviation": dev2,
            "tolerance": tol2,
            "pass": dev2 <= tol2,
        },
    }
    report["pass"] = report["equivalence_1d"]["pass"] and report["equivalence_2d"]["pass"]
    return report


def _cmd_equivalence(args) -> int:
    start = time.perf_counter()
    report = equivalence_report(args.trials, args.trials_2d, args.seed)
    write_json(args.out, report)
    _write_manifest(
        args,
        "experiment equivalence",
        {
            "trials": args.trials,
            "trials_2d": args.trials_2d,
            "seed": args.seed,
            "out": args.out,
        },
        [args.out],
        start,
    )
    return 0 if report["pass"] else 1


def _add_manifest_arg(p) -> None:
    p.add_argument(
        "--manifest", default=None, help="manifest path (default <out>.manifest.json)"
    )


def _add_synth_args(p, with_phase: bool) -> None:
    p.add_argument("--n", type=int, default=20, help="record length")
    p.add_argument("--freq", type=float, default=0.25, help="normalized frequency")
    if with_phase:
        p.add_argument("--phase", type=float, default=0.0, help="phase in radians")
    p.add_argument("--snr-db", type=float, default=30.0, help="exact SNR in dB")
    p.add_argument("--noiseless", action="store_true", help="disable noise entirely")
    p.add_argument("--seed", type=int, default=_default_seed(), help="noise seed")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arspec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"arspec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="synthesize a noisy-sinusoid signal CSV")
    _add_synth_args(p, with_phase=True)
    p.add_argument("--substream", type=int, default=0, help="noise substream index")
    p.add_argument("--out", required=True, help="signal CSV path")
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("est1d", help="estimate a 1D AR model from a signal CSV")
    p.add_argument("--method", choices=_METHODS_1D, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--in", dest="input", required=True, help="signal CSV path")
    p.add_argument("--out", required=True, help="model JSON path")
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_est1d)

    p = sub.add_parser("est2d", help="estimate a 2D AR model from a grid CSV")
    p.add_argument("--method", choices=_METHODS_2D, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--in", dest="input", required=True, help="2D signal CSV path")
    p.add_argument("--out", required=True, help="model JSON path")
    p.add_argument("--filter-out", default=None, help="filter JSON path")
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_est2d)

    p = sub.add_parser("spectrum", help="evaluate an AR spectrum from model JSON")
    p.add_argument("--in", dest="input", required=True, help="model/filter JSON path")
    p.add_argument("--nfreq", type=int, default=1024, help="1D frequency bins")
    p.add_argument("--nf1", type=int, default=128, help="2D bins, first axis")
    p.add_argument("--nf2", type=int, default=128, help="2D bins, second axis")
    p.add_argument("--out", required=True, help="spectrum CSV path")
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_spectrum)

    pexp = sub.add_parser("experiment", help="batch experiment recipes")
    esub = pexp.add_subparsers(dest="experiment", required=True)

    p = esub.add_parser("phase-sweep", help="spectrum per swept phase")
    p.add_argument("--method", choices=_METHODS_1D, default="levinson")
    p.add_argument("--order", type=int, default=15)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--nfreq", type=int, default=1024)
    _add_synth_args(p, with_phase=False)
    p.add_argument("--log10", action="store_true", help="emit log10 power")
    p.add_argument("--out", required=True)
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_phase_sweep)

    p = esub.add_parser("order-sweep", help="spectrum per order on one record")
    p.add_argument("--method", choices=_METHODS_1D, default="levinson")
    p.add_argument("--max-order", type=int, default=19)
    p.add_argument("--nfreq", type=int, default=1024)
    _add_synth_args(p, with_phase=True)
    p.add_argument("--log10", action="store_true", help="emit log10 power")
    p.add_argument("--out", required=True)
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_order_sweep)

    p = esub.add_parser("mse-vs-order", help="residual MSE per order per method")
    p.add_argument("--methods", default="burg,burg-mod,levinson")
    p.add_argument("--max-order", type=int, default=19)
    p.add_argument(
        "--support",
        choices=("full", "window"),
        default="full",
        help="residual support: full zero-padded (monotone for burg-mod) "
        "or the bare data window",
    )
    _add_synth_args(p, with_phase=True)
    p.add_argument("--out", required=True)
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_mse_vs_order)

    p = esub.add_parser("equivalence", help="lattice-vs-recursion oracle suites")
    p.add_argument("--trials", type=int, default=200, help="1D suite size")
    p.add_argument("--trials-2d", type=int, default=50, help="2D suite size")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", required=True, help="verdict JSON path")
    _add_manifest_arg(p)
    p.set_defaults(func=_cmd_equivalence)

    return parser


def main(argv=None) -> int:
    effective = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(effective)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.effective_argv = effective
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
