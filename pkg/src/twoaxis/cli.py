"""Command-line front end.

Every command prints a table as CSV (header row, LF endings) or as one JSON
object with ``config``, ``records`` and ``summary`` keys.  CSV columns:

=============  ==============================================================
sectors        kappa, mu1, mu2, lambda1, lambda2, dim, degeneracy, blocks,
               oracle_only
spectrum       kappa, mu1, mu2, eta, energy, degeneracy
polys          k, mu, eta, roots, factors, v0, energy
levels         mu, eta, energy, degeneracy
entanglement   mu, eta, parity, entropy, base_n
verify         check, passed, value, tolerance, detail
bench          k, dense_dim, largest_block, bethe_seconds, dense_seconds,
               speedup, max_deviation, dense_status
=============  ==============================================================

Energies are in units of chi unless ``--chi`` rescales them; ``v0`` is
always E/chi.  Exit codes: 0 success, 1 failed verification or internal
invariant violation, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import statistics
import sys
import time

import numpy as np
import scipy.linalg

from . import __version__
from .bethe import solve_sector, sector_levels, spectrum_levels
from .entanglement import sweep
from .errors import DomainError, InvariantViolation, SolverError
from .model import SpinPair, enumerate_sectors, equal_spin_sectors, sector_of_equal_spin
from .oracle import MAX_DIM, build_dense, compare_spectra
from .verify import DEFAULT_TOL, run_checks

MAX_K = 64
BENCH_DENSE_MAX_K = 40
MIN_REPEAT = 5

COLUMNS = {
    "sectors": ["kappa", "mu1", "mu2", "lambda1", "lambda2", "dim", "degeneracy",
                "blocks", "oracle_only"],
    "spectrum": ["kappa", "mu1", "mu2", "eta", "energy", "degeneracy"],
    "polys": ["k", "mu", "eta", "roots", "factors", "v0", "energy"],
    "levels": ["mu", "eta", "energy", "degeneracy"],
    "entanglement": ["mu", "eta", "parity", "entropy", "base_n"],
    "verify": ["check", "passed", "value", "tolerance", "detail"],
    "bench": ["k", "dense_dim", "largest_block", "bethe_seconds", "dense_seconds",
              "speedup", "max_deviation", "dense_status"],
}


class UsageError(Exception):
    pass


class Formatter:
    def __init__(self, precision: int):
        self.precision = precision

    def num(self, x: float) -> float:
        """Rounded value; negative zero folded to zero."""
        return round(float(x), self.precision) + 0.0

    def text(self, x: float) -> str:
        s = f"{float(x):.{self.precision}f}"
        return s[1:] if s.startswith("-") and float(s) == 0.0 else s


# -- argument handling ---------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="equal spins S1 = S2 = k/2")
    common.add_argument("--mu", type=int, help="restrict to one band")
    common.add_argument("--spins", type=int, nargs=2, metavar=("A", "B"),
                        help="doubled spins 2*S1 2*S2")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--chi", type=float, default=1.0, help="energy scale for output")
    common.add_argument("--precision", type=int, default=6, help="printed decimals")

    p = argparse.ArgumentParser(prog="twoaxis", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("sectors", parents=[common], help="conserved blocks")
    sub.add_parser("spectrum", parents=[common], help="all levels of a spin pair")
    sub.add_parser("polys", parents=[common], help="Heine-Stieltjes polynomials")
    sub.add_parser("levels", parents=[common], help="level diagram data")
    sub.add_parser("entanglement", parents=[common], help="entropy of every eigenstate")
    v = sub.add_parser("verify", parents=[common], help="invariant suite vs dense oracle")
    v.add_argument("--inject-fault", action="store_true",
                   help="perturb one Bethe level to exercise the failure path")
    b = sub.add_parser("bench", parents=[common], help="Bethe vs dense timing")
    b.add_argument("--ks", type=int, nargs="+", help="several k values")
    b.add_argument("--repeat", type=int, default=MIN_REPEAT)
    b.add_argument("--dense-max-k", type=int, default=BENCH_DENSE_MAX_K)
    return p


def _spins(args, allow_spins=True) -> SpinPair:
    if args.k is not None and args.spins is not None:
        raise UsageError("give either --k or --spins, not both")
    if args.k is not None:
        if args.k < 0:
            raise UsageError("--k must be nonnegative")
        return SpinPair.equal_spin(args.k)
    if args.spins is not None and allow_spins:
        a, b = args.spins
        if a < 0 or b < 0:
            raise UsageError("--spins must be nonnegative")
        return SpinPair(a, b)
    raise UsageError("--k is required" if not allow_spins else "--k or --spins is required")


def _k(args, limit=MAX_K) -> int:
    spins = _spins(args, allow_spins=False)
    if spins.two_s1 > limit:
        raise UsageError(f"--k must not exceed {limit}")
    return spins.two_s1


def _bands(args, k):
    if args.mu is None:
        return list(range(k + 1))
    if not 0 <= args.mu <= k:
        raise UsageError(f"--mu must lie in 0..{k}")
    return [args.mu]


# -- commands -----------------------------------------------------------------

def cmd_sectors(args, fmt):
    spins = _spins(args)
    rows = [{
        "kappa": s.kappa, "mu1": s.mu1, "mu2": s.mu2,
        "lambda1": str(s.lambda1), "lambda2": str(s.lambda2),
        "dim": s.dim, "degeneracy": s.degeneracy,
        "blocks": ";".join(str(b) for b in s.blocks),
        "oracle_only": s.oracle_only,
    } for s in enumerate_sectors(spins)]
    total = sum(r["dim"] * r["degeneracy"] for r in rows)
    return rows, {"sectors": len(rows), "total_dimension": total, "product_dimension": spins.dim}


def cmd_spectrum(args, fmt):
    spins = _spins(args)
    rows = [{
        "kappa": lv.sector.kappa, "mu1": lv.sector.mu1, "mu2": lv.sector.mu2,
        "eta": lv.eta, "energy": args.chi * lv.energy, "degeneracy": lv.degeneracy,
    } for lv in spectrum_levels(spins)]
    return rows, {"total_levels": sum(r["degeneracy"] for r in rows), "dimension": spins.dim}


def _factor(root: float) -> str:
    c = -root
    s = f"{abs(c):.4f}"
    sign = "-" if c < 0 and float(s) != 0.0 else "+"
    return f"(x{sign}{s})"


def cmd_polys(args, fmt):
    k = _k(args)
    rows = []
    for mu in _bands(args, k):
        for sol in solve_sector(sector_of_equal_spin(k, mu)):
            x = sol.roots.roots
            rows.append({
                "k": k, "mu": mu, "eta": sol.level.eta,
                "roots": [float(r) for r in x],
                "factors": "".join(_factor(r) for r in x[::-1]) or "1",
                "v0": sol.level.energy,
                "energy": args.chi * sol.level.energy,
            })
    return rows, {"polynomials": len(rows)}


def cmd_levels(args, fmt):
    k = _k(args, limit=MAX_DIM)
    rows, defects = [], {}
    for mu in _bands(args, k):
        lv = sector_levels(sector_of_equal_spin(k, mu))
        e = np.array([x.energy for x in lv])
        defects[str(mu)] = float(np.abs(e + e[::-1]).max())
        rows += [{"mu": mu, "eta": x.eta, "energy": args.chi * x.energy,
                  "degeneracy": x.degeneracy} for x in lv]
    scale = max(abs(r["energy"]) for r in rows) or 1.0
    zeros = sum(r["degeneracy"] for r in rows if abs(r["energy"]) <= 1e-9 * scale)
    summary = {
        "total_levels": sum(r["degeneracy"] for r in rows),
        "zero_energy_multiplicity": zeros,
        "mirror_symmetry_defect": {m: fmt.num(d) for m, d in defects.items()},
    }
    return rows, summary


def cmd_entanglement(args, fmt):
    k = _k(args)
    records = sweep(k) if k >= 1 else []
    if args.mu is not None:
        _bands(args, k)
        records = [r for r in records if r.mu == args.mu]
    rows = [{"mu": r.mu, "eta": r.eta, "parity": r.parity, "entropy": r.entropy,
             "base_n": r.base_n} for r in records]
    ent = [r["entropy"] for r in rows]
    return rows, {"records": len(rows),
                  "min_entropy": fmt.num(min(ent)) if ent else None,
                  "max_entropy": fmt.num(max(ent)) if ent else None}


def cmd_verify(args, fmt):
    spins = _spins(args)
    if spins.dim > MAX_DIM:
        raise UsageError(f"dense oracle capped at dimension {MAX_DIM}")
    checks = run_checks(spins, tol=args.tol, inject_fault=args.inject_fault)
    rows = [{"check": c.name, "passed": c.passed, "value": c.value,
             "tolerance": c.tolerance, "detail": c.detail} for c in checks]
    failed = [c.name for c in checks if not c.passed]
    return rows, {"passed": not failed, "failed": failed, "checks": len(checks)}


def _median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def cmd_bench(args, fmt):
    ks = args.ks if args.ks else [_k(args, limit=10**6)]
    if any(k < 0 for k in ks):
        raise UsageError("k values must be nonnegative")
    repeat = max(args.repeat, MIN_REPEAT)
    rows = []
    for k in ks:
        sectors = equal_spin_sectors(k)
        spins = SpinPair.equal_spin(k)
        row = {"k": k, "dense_dim": spins.dim, "largest_block": k + 1,
               "bethe_seconds": None, "dense_seconds": None, "speedup": None,
               "max_deviation": None, "dense_status": "skipped"}
        if k <= args.dense_max_k and spins.dim <= MAX_DIM:
            h = build_dense(spins)
            report = compare_spectra(spectrum_levels(spins), h)
            if not report.passed:
                raise InvariantViolation(f"Bethe spectrum disagrees with dense at k={k}")
            row["max_deviation"] = report.max_abs
            row["dense_seconds"] = _median_time(lambda: scipy.linalg.eigvalsh(h.matrix), repeat)
            row["dense_status"] = "ok"
        row["bethe_seconds"] = _median_time(
            lambda: [sector_levels(s) for s in sectors], repeat)
        if row["dense_seconds"] is not None and row["bethe_seconds"] > 0:
            row["speedup"] = row["dense_seconds"] / row["bethe_seconds"]
        rows.append(row)
    return rows, {"repeat": repeat, "dense_max_k": args.dense_max_k}


COMMANDS = {
    "sectors": cmd_sectors,
    "spectrum": cmd_spectrum,
    "polys": cmd_polys,
    "levels": cmd_levels,
    "entanglement": cmd_entanglement,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


# -- output ---------------------------------------------------------------------

SCI_FIELDS = {"value", "tolerance", "bethe_seconds", "dense_seconds", "max_deviation"}


def _cell(key, value, fmt: Formatter) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if key == "roots":
        return ";".join(fmt.text(x) for x in value)
    if key in SCI_FIELDS:
        return f"{float(value):.3e}"
    if isinstance(value, float):
        return fmt.text(value)
    return str(value)


def _json_value(key, value, fmt: Formatter):
    if key == "roots":
        return [fmt.num(x) for x in value]
    if isinstance(value, float) and key not in SCI_FIELDS:
        return fmt.num(value)
    return value


def render(command, rows, summary, config, fmt: Formatter, kind: str) -> str:
    columns = COLUMNS[command]
    if kind == "json":
        records = [{c: _json_value(c, r[c], fmt) for c in columns} for r in rows]
        doc = {"config": config, "records": records, "summary": summary}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(c, r[c], fmt) for c in columns])
    return buf.getvalue()


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}
    if cfg.get("spins") is not None:
        cfg["spins"] = list(cfg["spins"])
    return cfg


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    fmt = Formatter(args.precision)
    try:
        if args.precision < 0:
            raise UsageError("--precision must be nonnegative")
        rows, summary = COMMANDS[args.command](args, fmt)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"twoaxis: error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, SolverError) as exc:
        print(f"twoaxis: invariant violation: {exc}", file=sys.stderr)
        return 1

    text = render(args.command, rows, summary, _config(args), fmt, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.format == "csv" and summary:
        for key, value in summary.items():
            print(f"# {key}: {json.dumps(value)}", file=sys.stderr)
    if args.command == "verify" and not summary["passed"]:
        print("twoaxis: verification failed: " + ", ".join(summary["failed"]), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
