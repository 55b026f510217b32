"""Command-line front end.

Subcommands: distortion | bounds | points | check | simulate |
search-discrete | sweep | compress | figures.  Every subcommand accepts
--config FILE (JSON experiment config), --seed INT and --out DIR; CSV and
JSON output is deterministic given config + seed, so reruns diff cleanly.
Exit codes: 0 success, 2 validation/config error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bounds as bounds_mod
from .compression import decomposition_check, waterfill_rate_bound
from .config import (
    GENERATORS,
    build_scheme,
    load_experiments,
    parse_experiment,
)
from .errors import ConfigError, NumericalError, SamplexError, ValidationError
from .estimator import mmse_bundle
from .figures import FIGURE_IDS, make_figure
from .montecarlo import run_sim
from .reports import dump_json, write_csv
from .schemes import (
    SamplingScheme,
    check_lemma1_conditions,
    check_prop4_condition,
    check_thm7_condition,
)
from .search import discrete_exhaustive, sweep_M, sweep_t2

_DIAG_RTOL = 1e-9


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="JSON experiment config file")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument("--out", help="output directory for CSV/figure files")


def _load_single(args, require_scheme=False, discrete=False):
    if not args.config:
        raise ConfigError("this subcommand requires --config FILE")
    experiments = load_experiments(
        args.config, discrete=discrete, require_scheme=require_scheme
    )
    if len(experiments) > 1:
        raise ConfigError("this subcommand takes a single config, not a batch")
    return experiments[0]


def _offdiag_ratio(matrix: np.ndarray) -> float:
    if matrix.shape[0] < 2:
        return 0.0
    off = matrix - np.diag(np.diagonal(matrix))
    return float(np.abs(off).max() / max(np.abs(np.diagonal(matrix)).max(), 1e-300))


def _cmd_distortion(args) -> int:
    exp = _load_single(args, require_scheme=True)
    bundle = mmse_bundle(exp.signal, exp.filt, exp.scheme)
    a = bundle.q @ bundle.l
    cx = exp.signal.variance_vector
    pi_inv = (a * cx[None, :]) @ a.T + exp.signal.noise_variance * np.eye(
        exp.scheme.m
    )
    gamma_gram = a.T @ a
    print(
        dump_json(
            {
                "D": bundle.d,
                "V": bundle.v,
                "Pi_diagonal": _offdiag_ratio(pi_inv) <= _DIAG_RTOL,
                "Gamma_diagonal": _offdiag_ratio(gamma_gram) <= _DIAG_RTOL,
            }
        )
    )
    return 0


def _cmd_bounds(args) -> int:
    exp = _load_single(args)
    if args.m is None:
        if exp.scheme is None:
            raise ConfigError("give --m or a scheme in the config")
        m = exp.scheme.m
    else:
        m = args.m
    print(dump_json(bounds_mod.regime_report(exp.signal, m).to_json()))
    return 0


def _verdicts(scheme, spec) -> dict:
    return {
        "lemma1": check_lemma1_conditions(scheme, spec).to_json(),
        "prop4": check_prop4_condition(scheme, spec).to_json(),
        "thm7": check_thm7_condition(scheme, spec).to_json(),
    }


def _cmd_points(args) -> int:
    exp = _load_single(args)
    scheme = build_scheme(exp.signal, args.generator, args.m, args.tau)
    print(
        dump_json(
            {
                "scheme": scheme.to_json(),
                "verdicts": _verdicts(scheme, exp.signal),
            }
        )
    )
    return 0


def _cmd_check(args) -> int:
    exp = _load_single(args)
    if args.points:
        instants = tuple(float(v) for v in args.points.split(","))
        scheme = SamplingScheme(instants, exp.signal.period)
    elif exp.scheme is not None:
        scheme = exp.scheme
    else:
        raise ConfigError("give --points or a scheme in the config")
    print(
        dump_json(
            {
                "scheme": scheme.to_json(),
                "verdicts": _verdicts(scheme, exp.signal),
            }
        )
    )
    return 0


def _cmd_simulate(args) -> int:
    if not args.config:
        raise ConfigError("simulate requires --config FILE")
    experiments = load_experiments(args.config, require_scheme=True)
    columns = [
        "config_id",
        "trials",
        "D_emp",
        "D_se",
        "Var_emp",
        "D_analytic",
        "V_analytic",
    ]
    rows = []
    for exp in experiments:
        result = run_sim(exp.signal, exp.filt, exp.scheme, args.trials, args.seed)
        row = result.to_row(exp.config_id)
        rows.append([row[c] for c in columns])
    if args.out:
        path = os.path.join(args.out, "simulate.csv")
        write_csv(path, columns, rows, {"seed": args.seed, "trials": args.trials})
        print(path)
    else:
        from .reports import format_number

        print(",".join(columns))
        for row in rows:
            print(",".join(format_number(v) for v in row))
    return 0


def _cmd_search_discrete(args) -> int:
    exp = _load_single(args, discrete=True)
    result = discrete_exhaustive(exp.signal, args.m)
    if args.out:
        rows = [[" ".join(str(v) for v in tie)] for tie in result.ties]
        path = os.path.join(args.out, "search_discrete.csv")
        write_csv(
            path,
            ["scheme"],
            rows,
            {"signal": exp.signal.to_json(), "M": args.m},
        )
    print(dump_json(result.to_json()))
    return 0


def _cmd_sweep(args) -> int:
    exp = _load_single(args)
    out_dir = args.out or "."
    if args.var == "t2":
        rows = sweep_t2(exp.signal, args.t1, args.grid_points)
        columns = ["t2", "D", "V"]
        config = {
            "signal": exp.signal.to_json(),
            "t1": args.t1,
            "grid_points": args.grid_points,
        }
        path = os.path.join(out_dir, "sweep_t2.csv")
    else:
        strategies = (
            set(args.strategies.split(",")) if args.strategies else None
        )
        columns, rows = sweep_M(exp.signal, args.m_max, strategies)
        config = {"signal": exp.signal.to_json(), "M_max": args.m_max}
        path = os.path.join(out_dir, "sweep_M.csv")
    write_csv(path, columns, rows, config)
    print(path)
    return 0


def _cmd_compress(args) -> int:
    exp = _load_single(args, require_scheme=True)
    report = waterfill_rate_bound(
        exp.signal, exp.filt, exp.scheme, args.dc_target
    )
    payload = report.to_json()
    if args.delta is not None:
        check = decomposition_check(
            exp.signal, exp.filt, exp.scheme, args.delta, args.trials, args.seed
        )
        payload["decomposition"] = {
            "trials": check.trials,
            "total_emp": check.total_emp,
            "Ds_analytic": check.ds_analytic,
            "Dc_emp": check.dc_emp,
            "residual": check.residual,
            "residual_se": check.residual_se,
        }
    print(dump_json(payload))
    return 0


def _cmd_figures(args) -> int:
    out_dir = args.out or "."
    for figure_id in args.figure:
        for path in make_figure(figure_id, out_dir):
            print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="samplex",
        description=(
            "Distortion analysis and optimal sampling-point design for "
            "noisy nonuniform sampling of bandlimited periodic signals"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distortion", help="analytic D and V for one config")
    _add_common(p)
    p.set_defaults(func=_cmd_distortion)

    p = sub.add_parser("bounds", help="bounds report for (signal, M)")
    _add_common(p)
    p.add_argument("--m", type=int, help="sample count (default: scheme size)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("points", help="generate a scheme and check it")
    _add_common(p)
    p.add_argument("--generator", required=True, choices=GENERATORS)
    p.add_argument("--m", type=int, help="number of points")
    p.add_argument("--tau", type=float, default=0.0, help="grid offset")
    p.set_defaults(func=_cmd_points)

    p = sub.add_parser("check", help="check explicit points for optimality")
    _add_common(p)
    p.add_argument("--points", help="comma-separated instants, e.g. 0,0.25,0.5")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("simulate", help="Monte Carlo validation runs")
    _add_common(p)
    p.add_argument("--trials", type=int, default=100_000)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "search-discrete", help="exhaustive search over integer instants"
    )
    _add_common(p)
    p.add_argument("--m", type=int, required=True, help="number of samples")
    p.set_defaults(func=_cmd_search_discrete)

    p = sub.add_parser("sweep", help="1-D parameter sweeps (CSV)")
    _add_common(p)
    p.add_argument("--var", required=True, choices=["t2", "M"])
    p.add_argument("--t1", type=float, default=0.0, help="fixed first instant")
    p.add_argument("--grid-points", type=int, default=1000)
    p.add_argument("--m-max", type=int, default=32)
    p.add_argument(
        "--strategies", help="comma list from uniform,bounds,thm6-upper"
    )
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("compress", help="rate bound and decomposition check")
    _add_common(p)
    p.add_argument("--dc-target", type=float, required=True)
    p.add_argument("--delta", type=float, help="quantizer step for the check")
    p.add_argument("--trials", type=int, default=20_000)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("figures", help="write figure CSVs, PNGs and plot script")
    _add_common(p)
    p.add_argument("figure", nargs="+", choices=list(FIGURE_IDS))
    p.set_defaults(func=_cmd_figures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except SamplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
