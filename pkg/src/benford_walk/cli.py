"""Command-line entry point ``benford-walk``.

Exit codes: 0 success, 1 a check reported ``fails``, 2 configuration error,
3 I/O failure.
"""

import argparse
import json
import logging
import os
import sys

from .errors import BenfordWalkError, ConfigError
from .generators import make_stream
from .product_walk import accumulate, weyl_series, write_dump
from .scenario import parse_scenario
from .statistics import conformance, ensemble_fourier
from .theorem_checks import (
    FAILS,
    analytic_fourier_abs,
    applicable_checks,
    density_fourier_bound_check,
    invariance_suite,
)

log = logging.getLogger("benford_walk")

COMMANDS = ("simulate", "fourier", "weyl", "check", "invariance", "bound")
EXIT_OK, EXIT_FAILS, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


def _g(x):
    return "" if x is None else f"{x:.17g}"


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_verdicts(out_dir, verdicts):
    doc = [v.to_json() for v in verdicts]
    _write(os.path.join(out_dir, "verdicts.json"), json.dumps(doc, indent=2) + "\n")
    return EXIT_FAILS if any(v.status == FAILS for v in verdicts) else EXIT_OK


def _simulate(sc, out_dir, dump):
    traj = accumulate(make_stream(sc.generator, sc.seed), sc.length)
    rep = conformance(traj)
    dof = "" if rep.dof is None else str(rep.dof)
    _write(os.path.join(out_dir, "conformance.csv"),
           f"N,ks,dstar,chi2,dof\n{rep.N},{_g(rep.ks)},{_g(rep.dstar)},{_g(rep.chi2)},{dof}\n")
    if dump:
        with open(os.path.join(out_dir, "trajectory.csv"), "w", encoding="utf-8", newline="\n") as fh:
            write_dump(traj, fh)
    return EXIT_OK


def _fourier(sc, out_dir):
    ns = sc.fourier_indices()
    res = ensemble_fourier(sc.generator, ns, sc.harmonics, sc.trajectories, sc.seed)
    lines = ["h,n,re,im,abs,stderr,analytic_abs"]
    for h in sc.harmonics:
        ef = res[h]
        for n, est, se in ef.entries():
            lines.append(f"{h},{n},{_g(est.real)},{_g(est.imag)},{_g(abs(est))},{_g(se)},"
                         f"{_g(analytic_fourier_abs(sc.generator, h, n))}")
    _write(os.path.join(out_dir, "fourier.csv"), "\n".join(lines) + "\n")
    return EXIT_OK


def _weyl(sc, out_dir):
    traj = accumulate(make_stream(sc.generator, sc.seed), sc.length)
    lines = ["h,N,re,im,abs"]
    for h in sc.harmonics:
        vals = weyl_series(traj, h).values
        for N, t in enumerate(vals.tolist(), 1):
            lines.append(f"{h},{N},{_g(t.real)},{_g(t.imag)},{_g(abs(t))}")
    _write(os.path.join(out_dir, "weyl.csv"), "\n".join(lines) + "\n")
    return EXIT_OK


def _check(sc, out_dir):
    verdicts = applicable_checks(
        sc.generator, list(sc.harmonics), sc.trajectories, sc.seed,
        p=sc.p, L0=sc.cesaro_L0, delv_N_max=sc.delv_N_max, H=sc.lattice_H,
        lattice_tol=sc.lattice_tol, cesaro_tol=sc.cesaro_tol,
    )
    return _write_verdicts(out_dir, verdicts)


def _invariance(sc, out_dir):
    if sc.invariance is None:
        raise ConfigError("the invariance command needs an 'invariance' object", "invariance")
    params = {k: v for k, v in sc.invariance.items() if k != "mode"}
    params["base"] = sc.base
    params["source"] = sc.generator
    verdict = invariance_suite(sc.invariance["mode"], params, sc.trajectories, sc.seed)
    return _write_verdicts(out_dir, [verdict])


def _bound(sc, out_dir):
    if sc.density is None:
        raise ConfigError("the bound command needs a 'density' object", "density")
    return _write_verdicts(out_dir, [density_fourier_bound_check(sc.density, sc.h_max)])


def run(command, scenario, out_dir, *, dump=False):
    """Execute ``command`` for ``scenario`` writing into ``out_dir``; returns the exit status."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    try:
        os.makedirs(out_dir, exist_ok=True)
        if command == "simulate":
            return _simulate(scenario, out_dir, dump)
        if command == "fourier":
            return _fourier(scenario, out_dir)
        if command == "weyl":
            return _weyl(scenario, out_dir)
        if command == "check":
            return _check(scenario, out_dir)
        if command == "invariance":
            return _invariance(scenario, out_dir)
        return _bound(scenario, out_dir)
    except OSError as exc:
        log.error("I/O failure: %s", exc)
        return EXIT_IO


def build_parser():
    ap = argparse.ArgumentParser(prog="benford-walk", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--scenario", required=True, help="path to the JSON scenario file")
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--dump", action="store_true", help="simulate: also write trajectory.csv")
    ap.add_argument("--replicas", type=int, help="override the scenario's trajectories (M)")
    ap.add_argument("--length", type=int, help="override the scenario's length (N)")
    return ap


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        with open(args.scenario, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        log.error("cannot read scenario: %s", exc)
        return EXIT_IO
    try:
        doc_overrides = {}
        if args.replicas is not None:
            doc_overrides["trajectories"] = args.replicas
        if args.length is not None:
            doc_overrides["length"] = args.length
        if doc_overrides:
            doc = json.loads(text)
            if isinstance(doc, dict):
                doc.update(doc_overrides)
                text = json.dumps(doc)
        scenario = parse_scenario(text)
        return run(args.command, scenario, args.out, dump=args.dump)
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except BenfordWalkError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        log.error("configuration error: malformed JSON: %s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
