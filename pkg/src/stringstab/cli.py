"""Command-line entry point: config ingestion, dispatch and artifact emission.

Subcommands: check, cmin, chart, simulate, verify, export; each takes a JSON
config (--config) and an output directory (--out).  Exit codes: 0 success /
certified, 2 not certified, 3 configuration error, 4 numeric failure.
"""

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import certify, min_speed, stability_chart
from .lmi import SystemDescription, build_affine_system, build_blocks
from .sdp import Certificate, SolverOptions, export_sdpa, verify_certificate
from .wavesim import CompatibilityError, InitialCondition, simulate

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4


class ConfigError(ValueError):
    pass


def load_config(path):
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def build_system(cfg):
    blk = cfg.get("system")
    if blk is None:
        raise ConfigError("config is missing the 'system' block")
    try:
        return SystemDescription(blk["A"], blk["B"], blk["K"],
                                 float(blk["c"]), float(blk["c0"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"invalid system block: {exc}") from exc


def solver_params(cfg):
    blk = cfg.get("solver", {})
    eps = float(blk.get("eps", 1e-6))
    if eps <= 0:
        raise ConfigError("solver.eps must be positive")
    opts = SolverOptions(max_iter=int(blk.get("max_iter", 200)))
    return eps, opts


def order_param(cfg, default=1):
    N = int(cfg.get("order", default))
    if N < 0:
        raise ConfigError("order must be nonnegative")
    return N


def build_ic(cfg, sysd):
    blk = cfg.get("simulation", {}).get("ic", {"type": "zero"})
    kind = blk.get("type", "zero")
    if kind == "zero":
        return InitialCondition.zero(sysd.n)
    if kind == "cosine":
        if "X0" not in blk:
            raise ConfigError("cosine initial condition needs X0")
        return InitialCondition.cosine(sysd, blk["X0"])
    raise ConfigError(f"unknown initial condition type {kind!r}")


def write_manifest(out_dir, config_path, command, timings):
    digest = hashlib.sha256(Path(config_path).read_bytes()).hexdigest()
    manifest = {
        "tool": "stringstab",
        "version": __version__,
        "command": command,
        "config_sha256": digest,
        "timings_s": timings,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def certificate_to_json(cert, order):
    return {
        "order": order,
        "P": np.asarray(cert.P).tolist(),
        "S": np.asarray(cert.S).tolist(),
        "R": np.asarray(cert.R).tolist(),
        "t_star": cert.t_star,
        "iterations": cert.iterations,
        "eps": cert.eps,
    }


def certificate_from_json(data):
    return Certificate(P=np.array(data["P"]), S=np.array(data["S"]),
                       R=np.array(data["R"]), t_star=data["t_star"],
                       iterations=data["iterations"], eps=data["eps"]), \
        int(data["order"])


def cmd_check(cfg, out_dir):
    sysd = build_system(cfg)
    N = order_param(cfg)
    eps, opts = solver_params(cfg)
    report = certify(sysd, N, eps=eps, options=opts)
    if report.status == "feasible":
        (out_dir / "certificate.json").write_text(
            json.dumps(certificate_to_json(report.certificate, N), indent=2)
            + "\n")
        print(f"certified-stable (order {N}, slack "
              f"{report.certificate.t_star:.3g})")
        return EXIT_OK
    flag = report.diagnostics.get("flag")
    print(f"not-certified (order {N}"
          + (f", solver flag: {flag}" if flag else "") + ")")
    return EXIT_NOT_CERTIFIED


def cmd_cmin(cfg, out_dir):
    sysd = build_system(cfg)
    ana = cfg.get("analysis", {})
    N = order_param(cfg)
    eps, opts = solver_params(cfg)
    bracket = tuple(ana.get("bracket", (1.0, 20.0)))
    tol = float(ana.get("tol", 1e-2))
    val = min_speed(sysd, sysd.c0, N, bracket=bracket, tol=tol, eps=eps,
                    options=opts)
    result = {"c0": sysd.c0, "order": N, "c_min": val,
              "bracket": list(bracket), "tol": tol}
    (out_dir / "cmin.json").write_text(json.dumps(result, indent=2) + "\n")
    if val is None:
        print(f"no certifiable wave speed in [{bracket[0]}, {bracket[1]}]")
        return EXIT_NOT_CERTIFIED
    print(f"c_min = {val:.6g} (order {N}, c0 = {sysd.c0})")
    return EXIT_OK


def cmd_chart(cfg, out_dir):
    sysd = build_system(cfg)
    ana = cfg.get("analysis", {})
    orders = ana.get("orders")
    c0_grid = ana.get("c0_grid")
    if not orders or not c0_grid:
        raise ConfigError("chart needs analysis.orders and analysis.c0_grid")
    eps, opts = solver_params(cfg)
    chart = stability_chart(sysd, c0_grid, orders,
                            bracket=tuple(ana.get("bracket", (1.0, 20.0))),
                            tol=float(ana.get("tol", 1e-2)), eps=eps,
                            options=opts)
    (out_dir / "chart.csv").write_text(chart.to_csv())
    n_err = sum(1 for s in chart.status.values() if s == "error")
    print(f"chart: {len(chart.c0_grid)} x {len(chart.orders)} cells, "
          f"{n_err} errors -> chart.csv")
    return EXIT_OK if n_err == 0 else EXIT_NUMERIC


def cmd_simulate(cfg, out_dir):
    sysd = build_system(cfg)
    sim = cfg.get("simulation", {})
    ic = build_ic(cfg, sysd)
    try:
        traj = simulate(sysd, ic,
                        M=int(sim.get("M", 200)),
                        dt=sim.get("dt"),
                        T=sim.get("T"),
                        snapshot_stride=int(sim.get("snapshot_stride", 0)),
                        scheme=sim.get("scheme", "symplectic"))
    except (CompatibilityError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    (out_dir / "trajectory.csv").write_text(traj.to_csv())
    if traj.snapshots:
        (out_dir / "snapshots.csv").write_text(traj.snapshots_csv())
    print(f"simulation: {traj.classification} "
          f"(H(T)/H(0) = {traj.hnorm[-1] / max(traj.hnorm[0], 1e-300):.3g})")
    if traj.blowup_time is not None:
        print(f"divergence at t = {traj.blowup_time:.6g}")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_verify(cfg, out_dir):
    sysd = build_system(cfg)
    cert_path = out_dir / "certificate.json"
    if not cert_path.exists():
        raise ConfigError(f"no certificate at {cert_path}; run 'check' first")
    cert, N = certificate_from_json(json.loads(cert_path.read_text()))
    blocks = build_blocks(sysd, N)
    report = verify_certificate(blocks, cert)
    print("verification:", "pass" if report.passed else
          "fail (" + "; ".join(report.messages) + ")")
    print(f"  min eig P = {report.min_eig_P:.3g}, S = {report.min_eig_S:.3g},"
          f" R = {report.min_eig_R:.3g}, max eig Psi = {report.max_eig_psi:.3g}")
    return EXIT_OK if report.passed else EXIT_NOT_CERTIFIED


def cmd_export(cfg, out_dir):
    sysd = build_system(cfg)
    N = order_param(cfg)
    eps, _ = solver_params(cfg)
    system = build_affine_system(build_blocks(sysd, N), eps=eps)
    path = out_dir / "problem.dat-s"
    path.write_text(export_sdpa(
        system, comment=f"stability feasibility, order N={N}, "
        f"c={sysd.c}, c0={sysd.c0}"))
    print(f"wrote {path}")
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "cmin": cmd_cmin,
    "chart": cmd_chart,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "export": cmd_export,
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="stringstab",
        description="Stability certification of an ODE coupled with a "
                    "damped string equation")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", default="out", help="output directory")
    args = parser.parse_args(argv)

    started = time.perf_counter()
    try:
        cfg = load_config(args.config)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        code = COMMANDS[args.command](cfg, out_dir)
        write_manifest(out_dir, args.config, args.command,
                       {"total": time.perf_counter() - started})
        return code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
