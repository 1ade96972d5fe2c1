"""Command-line entry points.

Single values print as bare 17-significant-digit numbers; profile and shoot
emit CSV (to stdout, or into the --out directory when given); verify and
report run the batch suites.  Exit status: 0 success, 1 suite failure,
2 configuration or usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config_io import ConfigError, SUITE_NAMES, default_config, fmt, load_config
from .euler import shoot
from .geometry import WeightPair
from .harness import full_report, run_suite, write_artifacts
from .optimal_set import compute_profile, mu_closed_form
from .spectral import EigenParams, cheeger_lower_bound, eigenvalue_lower_bound

__all__ = ["main"]


def _weights(args) -> WeightPair:
    return WeightPair(args.alpha, args.beta)


def _emit(text: str, out: str | None, filename: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        target = path / filename
        target.write_text(text)
        print(target)


def _cmd_mu(args) -> int:
    print(fmt(mu_closed_form(_weights(args))))
    return 0


def _cmd_profile(args) -> int:
    w = _weights(args)
    prof = compute_profile(w, args.n)
    lines = [f"# alpha={fmt(w.alpha)} beta={fmt(w.beta)} gamma={fmt(w.gamma)}", "y,f"]
    lines.extend(f"{fmt(y)},{fmt(f)}" for y, f in prof.samples)
    _emit("\n".join(lines) + "\n", args.out, "profile.csv")
    return 0


def _cmd_shoot(args) -> int:
    w = _weights(args)
    traj = shoot(w)
    lines = [
        f"# alpha={fmt(w.alpha)} beta={fmt(w.beta)} lambda={fmt(traj.lam)} "
        f"d={fmt(traj.d)} step_tol={fmt(1e-10)}",
        "s,x,y,theta,kappa",
    ]
    lines.extend(",".join(fmt(v) for v in state) for state in traj.states)
    _emit("\n".join(lines) + "\n", args.out, "trajectory.csv")
    return 0


def _cmd_cheeger(args) -> int:
    print(fmt(cheeger_lower_bound(_weights(args), args.area).h))
    return 0


def _cmd_eigen_bound(args) -> int:
    ep = EigenParams(p=args.p, gamma1=args.gamma1, gamma2=args.gamma2)
    print(fmt(eigenvalue_lower_bound(ep, args.area)))
    return 0


def _load(args):
    cfg = load_config(args.config) if args.config else default_config()
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    return cfg


def _summary_line(rep) -> str:
    s = rep.summary()
    return (
        f"{s['suite']}: cases={s['cases']} failures={s['failures']} "
        f"min_margin={fmt(s['min_margin'])} runtime_ms={s['runtime_ms']:.1f}"
    )


def _cmd_verify(args) -> int:
    cfg = _load(args)
    rep = run_suite(args.suite, cfg)
    if args.out is not None:
        write_artifacts([rep], args.out, args.format or cfg.format)
    print(_summary_line(rep))
    return 0 if rep.passed else 1


def _cmd_report(args) -> int:
    code, reports = full_report(args.config, out_dir=args.out, fmt=args.format)
    for rep in reports:
        print(_summary_line(rep))
    return code


def _add_weights(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, required=True, help="perimeter weight exponent")
    p.add_argument("--beta", type=float, required=True, help="area weight exponent")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfiso",
        description="Weighted isoperimetry on the upper half-plane: sharp constants, "
        "optimal sets, spectral bounds, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="sharp isoperimetric constant")
    _add_weights(p)
    p.set_defaults(func=_cmd_mu)

    p = sub.add_parser("profile", help="optimal-set half-width samples as CSV")
    _add_weights(p)
    p.add_argument("--n", type=int, default=1024, help="number of level intervals")
    p.add_argument("--out", help="directory for profile.csv (default: stdout)")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("shoot", help="integrate the boundary curve, emit trajectory CSV")
    _add_weights(p)
    p.add_argument("--out", help="directory for trajectory.csv (default: stdout)")
    p.set_defaults(func=_cmd_shoot)

    p = sub.add_parser("cheeger", help="Cheeger constant lower bound")
    _add_weights(p)
    p.add_argument("--area", type=float, default=1.0, help="target weighted area")
    p.set_defaults(func=_cmd_cheeger)

    p = sub.add_parser("eigen-bound", help="first-eigenvalue lower bound (h/p)^p")
    p.add_argument("--p", type=float, required=True, help="integrability exponent")
    p.add_argument("--gamma1", type=float, required=True, help="gradient weight exponent")
    p.add_argument("--gamma2", type=float, required=True, help="function weight exponent")
    p.add_argument("--area", type=float, default=1.0, help="target weighted area")
    p.set_defaults(func=_cmd_eigen_bound)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    p.add_argument("--config", help="JSON config path")
    p.add_argument("--seed", type=int, help="override the global seed")
    p.add_argument("--out", help="artifact directory (default: none)")
    p.add_argument("--format", choices=("csv", "json"), help="case file format")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="run all enabled suites and write artifacts")
    p.add_argument("--config", help="JSON config path")
    p.add_argument("--out", help="artifact directory (default: from config)")
    p.add_argument("--format", choices=("csv", "json"), help="case file format")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
