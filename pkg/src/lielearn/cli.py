"""Command-line pipeline: generate pairs, train, evaluate, render a figure.

Every command is deterministic given its flags, input files, and seed.
Machine-readable results go to stdout as one JSON line; diagnostics go
to stderr. Exit code 0 on success, 2 on usage errors, 1 on runtime
failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .data import T_MAX_DEFAULT, generate_pairs, read_dataset, so2_generator, write_dataset
from .evaluate import evaluate_model, write_report
from .figure import FigureSpec, orbit_samples, render_svg, write_orbit_csv
from .linalg import as_square_matrix
from .serialize import dumps
from .trainer import TrainConfig, read_model, train, write_model


def _load_matrix_file(path: str) -> np.ndarray:
    """Accept a bare JSON 2-d array or an object with an "A" field."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if isinstance(payload, dict):
        if "A" not in payload:
            raise ValueError(f"{path}: expected a JSON array or an object with an 'A' field")
        payload = payload["A"]
    return as_square_matrix(payload, f"matrix from {path}")


def _resolve_generator(spec_value: str) -> np.ndarray:
    if spec_value == "so2":
        return so2_generator()
    return _load_matrix_file(spec_value)


def _emit(payload: dict) -> None:
    sys.stdout.write(dumps(payload) + "\n")


def cmd_gen(args, parser) -> int:
    if args.count < 1:
        parser.error("--count must be >= 1")
    if not args.t_min < args.t_max:
        parser.error("--t-min must be strictly below --t-max")
    if args.generator is not None:
        gen = _load_matrix_file(args.generator)
    else:
        gen = so2_generator()
    if args.dim is not None and args.dim != gen.shape[0]:
        parser.error(f"--dim {args.dim} does not match generator dimension {gen.shape[0]}")
    dataset = generate_pairs(gen, args.count, args.t_min, args.t_max, args.seed)
    write_dataset(dataset, args.output)
    _emit(
        {
            "dataset": str(args.output),
            "count": len(dataset),
            "n": dataset.n,
            "seed": args.seed,
            "t_min": args.t_min,
            "t_max": args.t_max,
        }
    )
    return 0


def cmd_train(args, parser) -> int:
    if args.lr is not None and not args.lr > 0:
        parser.error("--lr must be positive")
    if args.max_epochs is not None and args.max_epochs < 1:
        parser.error("--max-epochs must be >= 1")
    dataset = read_dataset(args.input)
    kwargs = {}
    if args.lr is not None:
        kwargs["learning_rate"] = args.lr
    if args.max_epochs is not None:
        kwargs["max_epochs"] = args.max_epochs
    if args.plateau_tol is not None:
        kwargs["plateau_tol"] = args.plateau_tol
    if args.plateau_window is not None:
        kwargs["plateau_window"] = args.plateau_window
    if args.init_scale is not None:
        kwargs["init_scale"] = args.init_scale
    if args.eps is not None:
        kwargs["eps"] = args.eps
    cfg = TrainConfig(seed=args.seed, renormalize=not args.no_renormalize, **kwargs)
    result = train(dataset, cfg)
    write_model(result, cfg, args.output)
    final = result.loss_history[-1] if result.loss_history else float("nan")
    _emit(
        {
            "model": str(args.output),
            "final_risk": final,
            "risk_per_used": final / (len(dataset) - result.skipped_final),
            "epochs_run": result.epochs_run,
            "stop_reason": result.stop_reason,
            "skipped": result.skipped_final,
        }
    )
    return 0


def cmd_eval(args, parser) -> int:
    a, _payload = read_model(args.model)
    dataset = read_dataset(args.input)
    if dataset.n != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: model is {a.shape[0]}x{a.shape[0]} but dataset has n={dataset.n}"
        )
    if args.holdout:
        if not 0.0 < args.holdout < 1.0:
            parser.error("--holdout must be in (0, 1)")
        count = int(len(dataset) * args.holdout)
        if count < 1:
            parser.error("--holdout keeps no rows")
        dataset = dataset.tail(count)
    a_true = _resolve_generator(args.true_generator) if args.true_generator else None
    report = evaluate_model(a, dataset, a_true, grid_points=args.grid_points)
    text = dumps(report.to_dict())
    if args.output:
        write_report(report, args.output)
    sys.stdout.write(text + "\n")
    return 0


def cmd_figure(args, parser) -> int:
    a, _payload = read_model(args.model)
    try:
        point = np.array([float(v) for v in args.point.split(",")])
    except ValueError:
        parser.error(f"--point must be comma-separated numbers, got {args.point!r}")
    spec = FigureSpec(
        source_point=point,
        orbit_grid_points=args.grid_points,
        include_true_orbit=not args.no_true_orbit,
    )
    samples = orbit_samples(a, spec)
    svg = render_svg(a, spec, samples)
    Path(args.output).write_text(svg, encoding="utf-8")
    csv_path = args.orbit_csv or str(Path(args.output).with_suffix("")) + ".orbit.csv"
    write_orbit_csv(samples, csv_path)
    _emit({"figure": str(args.output), "orbit_csv": str(csv_path), "grid_points": args.grid_points})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lielearn",
        description="Learn a one-parameter matrix group generator from before/after vector pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a synthetic pair dataset")
    p_gen.add_argument("--preset", choices=["so2"], default="so2", help="built-in generator preset")
    p_gen.add_argument("--generator", help="JSON file with a generator matrix (overrides --preset)")
    p_gen.add_argument("--dim", type=int, help="expected dimension (validated against the generator)")
    p_gen.add_argument("--count", type=int, default=1000, help="number of pairs")
    p_gen.add_argument("--t-min", type=float, default=0.0, help="excluded lower bound of the parameter")
    p_gen.add_argument("--t-max", type=float, default=T_MAX_DEFAULT, help="included upper bound of the parameter")
    p_gen.add_argument("--seed", type=int, default=0, help="RNG seed")
    p_gen.add_argument("-o", "--output", required=True, help="output CSV path")
    p_gen.set_defaults(func=cmd_gen)

    p_train = sub.add_parser("train", help="fit a generator to a dataset")
    p_train.add_argument("-i", "--input", required=True, help="dataset CSV")
    p_train.add_argument("-o", "--output", required=True, help="output model JSON path")
    p_train.add_argument("--seed", type=int, default=0, help="init seed")
    p_train.add_argument("--lr", type=float, help="learning rate (default 0.5)")
    p_train.add_argument("--max-epochs", type=int, help="epoch cap (default 2000)")
    p_train.add_argument("--plateau-tol", type=float, help="minimum best-loss improvement (default 1e-9)")
    p_train.add_argument("--plateau-window", type=int, help="epochs without improvement before stopping (default 20)")
    p_train.add_argument("--init-scale", type=float, help="stddev of the random start (default 1/n)")
    p_train.add_argument("--no-renormalize", action="store_true", help="skip per-step Frobenius renormalization")
    p_train.add_argument("--eps", type=float, help="degeneracy threshold (default 1e-12)")
    p_train.set_defaults(func=cmd_train)

    p_eval = sub.add_parser("eval", help="score a trained model against a dataset")
    p_eval.add_argument("--model", required=True, help="model JSON")
    p_eval.add_argument("-i", "--input", required=True, help="dataset CSV")
    p_eval.add_argument("--true-generator", help="'so2' or a JSON matrix file; enables alignment")
    p_eval.add_argument("--holdout", type=float, default=0.0, help="evaluate only this trailing fraction of rows")
    p_eval.add_argument("--grid-points", type=int, default=360, help="orbit deviation grid size")
    p_eval.add_argument("-o", "--output", help="also write the report JSON here")
    p_eval.set_defaults(func=cmd_eval)

    p_fig = sub.add_parser("figure", help="render the learned action as an SVG")
    p_fig.add_argument("--model", required=True, help="model JSON")
    p_fig.add_argument("--point", required=True, help="source point, e.g. '1,0'")
    p_fig.add_argument("--grid-points", type=int, default=360, help="orbit sample count")
    p_fig.add_argument("--no-true-orbit", action="store_true", help="omit the reference circle")
    p_fig.add_argument("--orbit-csv", help="override the orbit CSV path")
    p_fig.add_argument("-o", "--output", required=True, help="output SVG path")
    p_fig.set_defaults(func=cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # argparse exits separately with code 2
        print(f"lielearn: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
