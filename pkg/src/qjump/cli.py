"""Command-line front end.

Subcommands: delay | pde | mc | baseline | sweep | fig1.  Every output file
embeds the full configuration (and seed) in its header; pass --no-timestamp
for byte-identical reruns.  QJUMP_THREADS caps Monte Carlo parallelism.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import baseline, core, io, mc, pde, stats

FIG1_RATIOS = {"a": 3.33, "b": 1.0 / 6.0}
FIG1_SPANS = {"a": 30.0, "b": 600.0}


@dataclass
class RunConfig:
    command: str
    omega: float = 1.0
    gamma: float = 1.0
    theta0: float = 0.0
    n: int = 1000
    grid_n: int = pde.DEFAULT_N_CELLS
    horizon: float = 10.0
    dt: float | None = None
    seed: int = 0
    semantics: str = "literal"
    out_path: str = "out.csv"
    format: str = "csv"
    timestamp: bool = True
    panel: str = "both"
    gamma_min: float | None = None
    gamma_max: float | None = None
    sweep_points: int = 9

    def params(self) -> core.ModelParams:
        return core.ModelParams(self.omega, self.gamma, self.theta0)

    def jump_semantics(self) -> core.JumpSemantics:
        return (
            core.JumpSemantics.KOLMOGOROV_LITERAL
            if self.semantics == "literal"
            else core.JumpSemantics.EMISSION_ONLY
        )

    def header(self) -> dict:
        keys = (
            "command omega gamma theta0 n grid_n horizon dt seed "
            "semantics format".split()
        )
        return {k: getattr(self, k) for k in keys}


def _build_parser():
    p = argparse.ArgumentParser(
        prog="qjump",
        description="Pumped two-level atom laboratory: analytic waiting times, "
        "forward-equation solver, jump Monte Carlo, Lindblad baseline.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, seed=False, semantics=False):
        sp.add_argument("--omega", type=float, default=1.0, help="Rabi frequency")
        sp.add_argument("--gamma", type=float, default=1.0, help="emission coefficient")
        sp.add_argument("--theta0", type=float, default=0.0, help="initial angle (rad)")
        sp.add_argument("--out", dest="out_path", default="out.csv", help="output file")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument(
            "--no-timestamp",
            dest="timestamp",
            action="store_false",
            help="omit the timestamp header line (byte-identical reruns)",
        )
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if semantics:
            sp.add_argument(
                "--semantics", choices=["literal", "emission"], default="literal"
            )

    sp = sub.add_parser("delay", help="analytic inter-emission density curve")
    common(sp)
    sp.add_argument("--horizon", type=float, default=None, help="tau-grid span")
    sp.add_argument("--n", type=int, default=2000, help="tau-grid points")

    sp = sub.add_parser("pde", help="forward-equation solve (population series)")
    common(sp)
    sp.add_argument("--grid-n", dest="grid_n", type=int, default=pde.DEFAULT_N_CELLS)
    sp.add_argument("--horizon", type=float, default=10.0, help="end time")
    sp.add_argument("--dt", type=float, default=None, help="time step (default: stable)")

    sp = sub.add_parser("mc", help="Monte Carlo trajectory ensemble")
    common(sp, seed=True, semantics=True)
    sp.add_argument("--n", type=int, default=1000, help="number of trajectories")
    sp.add_argument("--horizon", type=float, default=20.0)

    sp = sub.add_parser("baseline", help="truncated-Lindblad delay function curve")
    common(sp)
    sp.add_argument("--horizon", type=float, default=None, help="tau-grid span")
    sp.add_argument("--n", type=int, default=2000, help="tau-grid points")

    sp = sub.add_parser("sweep", help="mean-delay scaling sweep over gamma")
    common(sp)
    sp.add_argument("--gamma-min", type=float, default=None, help="default 4*omega")
    sp.add_argument("--gamma-max", type=float, default=None, help="default 64*omega")
    sp.add_argument("--sweep-points", type=int, default=9)

    sp = sub.add_parser("fig1", help="waiting-time vs delay-function comparison curves")
    common(sp)
    sp.add_argument("--panel", choices=["a", "b", "both"], default="both")
    sp.add_argument("--n", type=int, default=4000, help="tau-grid points")
    return p


def parse_config(argv) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command)
    for key, val in vars(ns).items():
        if hasattr(cfg, key) and val is not None:
            setattr(cfg, key, val)
    if getattr(ns, "horizon", "absent") is None:
        cfg.horizon = -1.0  # sentinel: pick the span from the model's tail
    return cfg


def _delay_grid(cfg: RunConfig, params: core.ModelParams):
    span = cfg.horizon
    if span <= 0:
        span = core.waiting_time_tail_cutoff(params, mass_tol=1e-9)
    return np.linspace(0.0, span, cfg.n)


def _emit(cfg, columns_or_payload, as_csv=True):
    if as_csv:
        io.write_csv(cfg.out_path, columns_or_payload, cfg.header(), cfg.timestamp)
    else:
        io.write_json(cfg.out_path, columns_or_payload, cfg.header(), cfg.timestamp)


def _run_delay(cfg: RunConfig):
    params = cfg.params()
    tau = _delay_grid(cfg, params)
    dens = core.waiting_time_density(tau, params)
    if cfg.format == "csv":
        _emit(cfg, {"tau": tau, "density": dens})
    else:
        _emit(cfg, {"tau": tau.tolist(), "density": dens.tolist()}, as_csv=False)


def _run_pde(cfg: RunConfig):
    params = cfg.params()
    grid = pde.ThetaGrid(cfg.grid_n)
    dt = cfg.dt if cfg.dt is not None else pde.max_stable_dt(params, grid)
    result = pde.solve(params, grid, cfg.horizon, dt)
    if cfg.format == "csv":
        io.write_series_csv(result, cfg.out_path, cfg.header(), cfg.timestamp)
    else:
        _emit(
            cfg,
            {
                "t": result.times.tolist(),
                "rho0": result.rho0.tolist(),
                "rho1": result.rho1.tolist(),
            },
            as_csv=False,
        )


def _run_mc(cfg: RunConfig):
    params = cfg.params()
    records = mc.ensemble_records(
        params, cfg.jump_semantics(), cfg.horizon, cfg.seed, cfg.n
    )
    if cfg.format == "csv":
        io.write_emissions_csv(records, cfg.out_path, cfg.header(), cfg.timestamp)
        return
    gaps = mc.interarrival_samples(records)
    payload = {
        "n_trajectories": cfg.n,
        "semantics": cfg.semantics,
        "ever_emitted_fraction": mc.ever_emitted_fraction(records),
        "total_emissions": int(sum(r.times.size for r in records)),
        "interarrival_mean": float(np.mean(gaps)) if gaps.size else None,
        "interarrival_var": float(np.var(gaps)) if gaps.size else None,
    }
    _emit(cfg, payload, as_csv=False)


def _run_baseline(cfg: RunConfig):
    params = cfg.params()
    span = cfg.horizon
    if span <= 0:
        span = FIG1_SPANS["a" if params.omega >= params.gamma else "b"] / params.gamma
    dist = baseline.delay_function(params, np.linspace(0.0, span, cfg.n))
    if cfg.format == "csv":
        _emit(cfg, {"tau": dist.tau_grid, "ell_q": dist.density})
    else:
        _emit(
            cfg,
            {"tau": dist.tau_grid.tolist(), "ell_q": dist.density.tolist()},
            as_csv=False,
        )


def _run_sweep(cfg: RunConfig):
    omega = cfg.omega
    lo = cfg.gamma_min if cfg.gamma_min is not None else 4.0 * omega
    hi = cfg.gamma_max if cfg.gamma_max is not None else 64.0 * omega
    gammas = np.geomspace(lo, hi, cfg.sweep_points)
    means = np.array(
        [core.mean_waiting_time(core.ModelParams(omega, g)) for g in gammas]
    )
    exponent, r2 = stats.scaling_regression(np.column_stack([gammas, means]))
    tau_k = np.array(
        [core.weak_field_delay_scale(core.ModelParams(omega, g)) for g in gammas]
    )
    tau_q = np.array(
        [core.dressed_delay_scale(core.ModelParams(omega, g)) for g in gammas]
    )
    if cfg.format == "csv":
        header = cfg.header()
        header["fit_exponent"] = exponent
        header["fit_r_squared"] = r2
        io.write_csv(
            cfg.out_path,
            {"gamma": gammas, "mean_delay": means, "tau_k": tau_k, "tau_q": tau_q},
            header,
            cfg.timestamp,
        )
    else:
        _emit(
            cfg,
            {
                "gamma": gammas.tolist(),
                "mean_delay": means.tolist(),
                "tau_k": tau_k.tolist(),
                "tau_q": tau_q.tolist(),
                "fit_exponent": exponent,
                "fit_r_squared": r2,
            },
            as_csv=False,
        )


def fig1_panel_curves(panel: str, gamma: float = 1.0, n_points: int = 4000):
    """(tau, analytic density, baseline delay function) for one Fig.-1 panel."""
    omega = FIG1_RATIOS[panel] * gamma
    params = core.ModelParams(omega, gamma)
    tau = np.linspace(0.0, FIG1_SPANS[panel] / gamma, n_points)
    ell_k = core.waiting_time_density(tau, params)
    ell_q = baseline.delay_function(params, tau).density
    return tau, ell_k, ell_q


def _run_fig1(cfg: RunConfig):
    panels = ["a", "b"] if cfg.panel == "both" else [cfg.panel]
    for panel in panels:
        tau, ell_k, ell_q = fig1_panel_curves(panel, cfg.gamma, cfg.n)
        out = cfg.out_path
        if len(panels) > 1:
            stem, dot, ext = out.rpartition(".")
            out = f"{stem}_{panel}{dot}{ext}" if dot else f"{out}_{panel}"
        header = cfg.header()
        header["panel"] = panel
        header["omega_over_gamma"] = FIG1_RATIOS[panel]
        header["axis_note"] = "dimensionless axis is omega*tau"
        io.write_csv(
            out,
            {"tau": tau, "ell_kolmogorov": ell_k, "ell_baseline": ell_q},
            header,
            cfg.timestamp,
        )


_RUNNERS = {
    "delay": _run_delay,
    "pde": _run_pde,
    "mc": _run_mc,
    "baseline": _run_baseline,
    "sweep": _run_sweep,
    "fig1": _run_fig1,
}


def run(config: RunConfig) -> int:
    try:
        _RUNNERS[config.command](config)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"qjump {config.command}: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    config = parse_config(argv if argv is not None else sys.argv[1:])
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
