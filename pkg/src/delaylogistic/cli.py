"""Command-line surface.

Verbs: orbit, equilibria, stability, period2, detect-cycle, classify,
lyapunov, sweep, reproduce.  Complex flags accept a+bi / a-bi / bi / a and
the pair form (a, b).  A JSON config file can supply any flag (key = flag
name with dashes as underscores); explicit command-line values win.

Exit codes: 0 success, 1 recipe/assertion failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from .cycles import ClassifyBudgets, classify_parameter_point, detect_cycle
from .lyapunov import largest_lyapunov
from .mapcore import (
    DegenerateError,
    MapParameters,
    OrbitSpec,
    equilibria,
    generate_orbit,
    trap_ball_radius,
)
from .period2 import jacobian_t2, period_two_cycles, period_two_stability
from .recipes import RECIPE_NAMES, reproduce_recipe
from .serialize import (
    complex_pair,
    dumps_json,
    fmt,
    parse_complex,
    write_orbit_csv,
    write_orbit_json,
    write_points_csv,
    write_sweep_csv,
    write_trace_csv,
)
from .stability import stability_reports
from .sweep import GridSpec, run_sweep


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class UsageError(Exception):
    pass


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fp:
            data = json.load(fp)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return data


_CONVERTERS = {
    "alpha": parse_complex,
    "beta": parse_complex,
    "z0": parse_complex,
    "z_1": parse_complex,
    "fixed": parse_complex,
}


def _get(args, config, name, default):
    """CLI value if given, else config value, else default."""
    v = getattr(args, name, None)
    if v is not None:
        return v
    if name in config:
        raw = config[name]
        conv = _CONVERTERS.get(name)
        if conv and isinstance(raw, str):
            return conv(raw)
        return raw
    if default is _REQUIRED:
        raise UsageError(f"missing required value --{name.replace('_', '-')}")
    return default


_REQUIRED = object()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p: argparse.ArgumentParser, *, initial_pair: bool) -> None:
    p.add_argument("--alpha", type=_complex_arg, help="complex parameter alpha (a+bi or (a,b))")
    p.add_argument("--beta", type=_complex_arg, help="complex parameter beta")
    if initial_pair:
        p.add_argument("--z0", type=_complex_arg, help="initial value z[0]")
        p.add_argument("--z-1", dest="z_1", type=_complex_arg, help="initial value z[-1]")
        p.add_argument("--iters", type=int, help="iteration count")
        p.add_argument("--transient", type=int, help="leading iterations excluded from analysis")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), dest="fmt", help="output format")
    p.add_argument("--plot", metavar="PNG", help="also render a figure to this file")
    p.add_argument("--config", help="JSON config file mirroring the flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delaylogistic",
        description="Dynamics of the complex delay logistic map z[n+1] = alpha*z[n]/(1+beta*z[n-1])",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="iterate the map and export the trajectory")
    _add_common(p, initial_pair=True)
    p.add_argument("--guard-epsilon", type=float, help="forbidden-set guard (default 1e-12)")

    p = sub.add_parser("equilibria", help="fixed points and trap-ball radius")
    _add_common(p, initial_pair=False)

    p = sub.add_parser("stability", help="linear stability of both equilibria")
    _add_common(p, initial_pair=False)
    p.add_argument("--tol-hyp", type=float, help="hyperbolicity band around |root|=1 (default 1e-9)")

    p = sub.add_parser("period2", help="closed-form period-2 cycle and its stability")
    _add_common(p, initial_pair=False)

    p = sub.add_parser("detect-cycle", help="minimal-period detection on an orbit")
    _add_common(p, initial_pair=True)
    p.add_argument("--p-max", type=int, help="largest candidate period (default 2048)")
    p.add_argument("--match-tol", type=float, help="absolute match tolerance (default 1e-7)")
    p.add_argument("--window", type=int, help="comparisons per candidate (default 3*p_max)")

    p = sub.add_parser("classify", help="majority verdict over random initial pairs")
    _add_common(p, initial_pair=False)
    p.add_argument("--seeds", type=int, help="number of random initial pairs (default 10)")
    p.add_argument("--seed", type=int, help="RNG seed (default 0)")
    p.add_argument("--transient", type=int, help="transient per seed (default 100000)")
    p.add_argument("--p-max", type=int, help="largest candidate period (default 2048)")
    p.add_argument("--match-tol", type=float, help="absolute match tolerance (default 1e-7)")
    p.add_argument("--window", type=int, help="comparisons per candidate (default 3*p_max)")
    p.add_argument("--lyap-steps", type=int, help="tangent steps when no cycle found (default 100000)")
    p.add_argument("--chaos-tol", type=float, help="chaos threshold in nats/iter (default 1e-3)")

    p = sub.add_parser("lyapunov", help="largest Lyapunov exponent of one orbit")
    _add_common(p, initial_pair=True)
    p.add_argument("--renorm-interval", type=int, help="steps between renormalizations (default 1)")
    p.add_argument("--chaos-tol", type=float, help="chaos threshold in nats/iter (default 1e-3)")

    p = sub.add_parser("sweep", help="classify every cell of a parameter-plane grid")
    _add_common(p, initial_pair=False)
    p.add_argument("--target", choices=("alpha", "beta"), help="swept parameter (default alpha)")
    p.add_argument("--fixed", type=_complex_arg, help="value of the non-swept parameter")
    p.add_argument("--re-min", type=float)
    p.add_argument("--re-max", type=float)
    p.add_argument("--re-steps", type=int)
    p.add_argument("--im-min", type=float)
    p.add_argument("--im-max", type=float)
    p.add_argument("--im-steps", type=int)
    p.add_argument("--seeds", type=int, help="random initial pairs per cell (default 5)")
    p.add_argument("--seed", type=int, help="RNG seed (default 0)")
    p.add_argument("--workers", type=int, help="worker processes (default 1)")
    p.add_argument("--transient", type=int, help="transient per seed (default 100000)")
    p.add_argument("--p-max", type=int)
    p.add_argument("--match-tol", type=float)
    p.add_argument("--window", type=int)
    p.add_argument("--lyap-steps", type=int)
    p.add_argument("--chaos-tol", type=float)

    p = sub.add_parser("reproduce", help="re-run a published figure/table and check it")
    p.add_argument("name", choices=RECIPE_NAMES)
    p.add_argument("--out-dir", help="artifact directory (default artifacts/<name>)")
    p.add_argument("--seed", type=int, help="RNG seed for recipes with random seeds (default 42)")
    p.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    p.add_argument("--config", help="JSON config file mirroring the flags")

    return parser


def _budgets_from(args, config) -> ClassifyBudgets:
    return ClassifyBudgets(
        transient=_get(args, config, "transient", 100_000),
        p_max=_get(args, config, "p_max", 2048),
        match_tol=_get(args, config, "match_tol", 1e-7),
        window=_get(args, config, "window", None),
        lyapunov_steps=_get(args, config, "lyap_steps", 100_000),
        chaos_tol=_get(args, config, "chaos_tol", 1e-3),
    )


def _cmd_orbit(args, config) -> int:
    params = MapParameters(
        _get(args, config, "alpha", _REQUIRED), _get(args, config, "beta", _REQUIRED)
    )
    spec = OrbitSpec(
        z_minus1=_get(args, config, "z_1", _REQUIRED),
        z0=_get(args, config, "z0", _REQUIRED),
        n_iterations=_get(args, config, "iters", 1000),
        transient=_get(args, config, "transient", 0),
        guard_epsilon=_get(args, config, "guard_epsilon", 1e-12),
    )
    orbit = generate_orbit(params, spec)
    out = _get(args, config, "out", None)
    if _get(args, config, "fmt", "csv") == "json":
        buf = io.StringIO()
        write_orbit_json(params, orbit, buf)
        _emit(buf.getvalue(), out)
    else:
        buf = io.StringIO()
        write_orbit_csv(orbit, buf)
        _emit(buf.getvalue(), out)
    plot = _get(args, config, "plot", None)
    if plot:
        from . import plotting

        plotting.plot_trajectory(orbit.points, plot, title=f"orbit, status {orbit.status_text()}")
    return 0


def _cmd_equilibria(args, config) -> int:
    params = MapParameters(
        _get(args, config, "alpha", _REQUIRED), _get(args, config, "beta", _REQUIRED)
    )
    z1, z2 = equilibria(params)
    radius = trap_ball_radius(params)
    data = {
        "alpha": complex_pair(params.alpha),
        "beta": complex_pair(params.beta),
        "equilibria": [complex_pair(z1), None if z2 is None else complex_pair(z2)],
        "trap_ball_radius": radius,
        "trap_ball_hypothesis": "|alpha| < 1 and beta != 0",
    }
    _emit(dumps_json(data), _get(args, config, "out", None))
    return 0


def _cmd_stability(args, config) -> int:
    params = MapParameters(
        _get(args, config, "alpha", _REQUIRED), _get(args, config, "beta", _REQUIRED)
    )
    tol = _get(args, config, "tol_hyp", 1e-9)
    reports = []
    for rep in stability_reports(params, tol_hyp=tol):
        reports.append(
            {
                "equilibrium": complex_pair(rep.equilibrium),
                "roots": [complex_pair(r) for r in rep.roots],
                "root_moduli": list(rep.root_moduli),
                "classification": rep.classification,
                "paper_criterion_verdict": rep.paper_criterion_verdict,
                "agreement_flag": rep.agreement_flag,
            }
        )
    _emit(dumps_json(reports), _get(args, config, "out", None))
    return 0


def _cmd_period2(args, config) -> int:
    params = MapParameters(
        _get(args, config, "alpha", _REQUIRED), _get(args, config, "beta", _REQUIRED)
    )
    cycles = period_two_cycles(params)
    out = _get(args, config, "out", None)
    if cycles is None:
        _emit(dumps_json({"cycles": None, "reason": "no prime period-2 cycle exists"}), out)
        return 0
    cycle = cycles[0]
    jac = jacobian_t2(params, cycle)
    report = period_two_stability(jac)
    data = {
        "alpha": complex_pair(params.alpha),
        "beta": complex_pair(params.beta),
        "phi": complex_pair(cycle.phi),
        "psi": complex_pair(cycle.psi),
        "chi": complex_pair(jac.chi),
        "lambda_det": complex_pair(jac.lambda_det),
        "eigenvalues": [complex_pair(m) for m in jac.eigenvalues],
        "abs_chi": report.chi_abs,
        "abs_lambda": report.lambda_abs,
        "eigen_moduli": list(report.eigen_moduli),
        "paper_verdict": report.paper_verdict,
        "eigen_verdict": report.eigen_verdict,
        "agreement_flag": report.agreement_flag,
    }
    _emit(dumps_json(data), out)
    plot = _get(args, config, "plot", None)
    if plot:
        from . import plotting

        plotting.plot_cycle([cycle.phi, cycle.psi], plot, title="period-2 cycle")
    return 0


def _cmd_detect_cycle(args, config) -> int:
    params = MapParameters(
        _get(args, config, "alpha", _REQUIRED), _get(args, config, "beta", _REQUIRED)
    )
    transient = _get(args, config, "transient", 1000)
    p_max = _get(args, config, "p_max", 2048)
    window = _get(args, config, "window", None)
    eff_window = 3 * p_max if window is None else window
    iters = _get(args, config, "iters", transient + 2 * p_max + eff_window)
    spec = OrbitSpec(
        z_minus1=_get(args, config, "z_1", _REQUIRED),
        z0=_get(args, config, "z0", _REQUIRED),
        n_iterations=iters,
    )
    orbit = generate_orbit(params, spec)
    report = detect_cycle(
        orbit,
        transient=transient,
        p_max=p_max,
        match_tol=_get(args, config, "match_tol", 1e-7),
        window=window,
    )
    out = _get(args, config, "out", None)
    if _get(args, config, "fmt", "json") == "csv":
        buf = io.StringIO()
        write_points_csv(report.representative_points, buf)
        _emit(buf.getvalue(), out)
    else:
        data = {
            "detected": report.detected,
            "period": report.period,
            "residual": report.residual,
            "window_start": report.window_start,
            "classification": report.classification,
            "best_period": report.best_period,
            "representative_points": [complex_pair(z) for z in report.representative_points],
        }
        _emit(dumps_json(data), out)
    plot = _get(args, config, "plot", None)
    if plot and report.detected:
        from . import plotting

        plotting.plot_cycle(
            report.representative_points, plot, title=f"period-{report.period} cycle"
        )
    return 0


def _cmd_classify(args, config) -> int:
    params = MapParameters(
        _get(args, config, "alpha", _REQUIRED), _get(args, config, "beta", _REQUIRED)
    )
    res = classify_parameter_point(
        params,
        n_seeds=_get(args, config, "seeds", 10),
        rng_seed=_get(args, config, "seed", 0),
        budgets=_budgets_from(args, config),
    )
    data = {
        "alpha": complex_pair(params.alpha),
        "beta": complex_pair(params.beta),
        "verdict": res.verdict,
        "period": res.period,
        "agree_fraction": res.agree_fraction,
        "lambda_max": res.lambda_max,
        "seed_outcomes": [
            {"kind": o.kind, "period": o.period, "lambda_max": o.lambda_max}
            for o in res.seed_outcomes
        ],
    }
    _emit(dumps_json(data), _get(args, config, "out", None))
    return 0


def _cmd_lyapunov(args, config) -> int:
    params = MapParameters(
        _get(args, config, "alpha", _REQUIRED), _get(args, config, "beta", _REQUIRED)
    )
    spec = OrbitSpec(
        z_minus1=_get(args, config, "z_1", _REQUIRED),
        z0=_get(args, config, "z0", _REQUIRED),
        n_iterations=_get(args, config, "iters", 101_000),
        transient=_get(args, config, "transient", 1000),
    )
    report = largest_lyapunov(
        params,
        spec,
        renorm_interval=_get(args, config, "renorm_interval", 1),
        chaos_tol=_get(args, config, "chaos_tol", 1e-3),
    )
    out = _get(args, config, "out", None)
    stride = max(1, len(report.running_estimates) // 1000)
    if _get(args, config, "fmt", "json") == "csv":
        buf = io.StringIO()
        write_trace_csv(
            report.running_estimates[::stride],
            report.renorm_interval * stride,
            report.n_used,
            buf,
        )
        _emit(buf.getvalue(), out)
    else:
        trace = report.running_estimates[::stride]
        if report.running_estimates and trace[-1] != report.running_estimates[-1]:
            trace.append(report.running_estimates[-1])
        data = {
            "alpha": complex_pair(params.alpha),
            "beta": complex_pair(params.beta),
            "lambda_max": report.lambda_max,
            "n_used": report.n_used,
            "renorm_interval": report.renorm_interval,
            "verdict": report.verdict,
            "max_orbit_modulus": report.max_orbit_modulus,
            "running_estimates": trace,
        }
        _emit(dumps_json(data), out)
    plot = _get(args, config, "plot", None)
    if plot:
        from . import plotting

        plotting.plot_lyapunov_trace(
            report.running_estimates[::stride],
            report.renorm_interval * stride,
            plot,
            title=f"lambda_max = {fmt(report.lambda_max)}",
        )
    return 0


def _cmd_sweep(args, config) -> int:
    grid = GridSpec(
        re_min=_get(args, config, "re_min", _REQUIRED),
        re_max=_get(args, config, "re_max", _REQUIRED),
        re_steps=_get(args, config, "re_steps", _REQUIRED),
        im_min=_get(args, config, "im_min", _REQUIRED),
        im_max=_get(args, config, "im_max", _REQUIRED),
        im_steps=_get(args, config, "im_steps", _REQUIRED),
        fixed_other=_get(args, config, "fixed", _REQUIRED),
        target=_get(args, config, "target", "alpha"),
    )
    result = run_sweep(
        grid,
        n_seeds=_get(args, config, "seeds", 5),
        budgets=_budgets_from(args, config),
        rng_seed=_get(args, config, "seed", 0),
        worker_count=_get(args, config, "workers", 1),
    )
    buf = io.StringIO()
    write_sweep_csv(result.cells, buf)
    _emit(buf.getvalue(), _get(args, config, "out", None))
    plot = _get(args, config, "plot", None)
    if plot:
        from . import plotting

        plotting.plot_sweep(result, plot, title=f"sweep over {grid.target}")
    return 0


def _cmd_reproduce(args, config) -> int:
    name = args.name
    out_dir = _get(args, config, "out_dir", None) or str(Path("artifacts") / name)
    result = reproduce_recipe(
        name,
        out_dir,
        rng_seed=_get(args, config, "seed", 42),
        plot=not getattr(args, "no_plot", False),
    )
    for line in result.summary_lines():
        print(line)
    print(f"artifacts: {', '.join(result.files)}")
    return 0 if result.passed else 1


_HANDLERS = {
    "orbit": _cmd_orbit,
    "equilibria": _cmd_equilibria,
    "stability": _cmd_stability,
    "period2": _cmd_period2,
    "detect-cycle": _cmd_detect_cycle,
    "classify": _cmd_classify,
    "lyapunov": _cmd_lyapunov,
    "sweep": _cmd_sweep,
    "reproduce": _cmd_reproduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(getattr(args, "config", None))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _HANDLERS[args.command](args, config)
    except (UsageError, ValueError, DegenerateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
