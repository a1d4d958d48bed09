"""Command-line driver.

Exit codes: 0 success, 2 input/I-O error, 3 non-convergence, 4 theorem
hypothesis violated, 5 identity contract breached.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .bounds import (
    RADIUS_CONTRACT_TOL,
    BOUND_CSV_COLUMNS,
    k_drury,
    k_rho,
    okubo_ando_bound,
    rho_f_constant,
    verify_cassier_suciu,
    verify_norm_bound,
    verify_zero_preservation,
)
from .errors import ConvergenceError, HypothesisError, InputError, RhoCalcError
from .funcalc import (
    BoundaryGrid,
    RationalFunction,
    eval_scalar,
    herglotz_residual,
    poisson_identity_residual,
)
from .linalg import complex_from_json, complex_to_json, matrix_from_json, matrix_to_json, op_norm
from .prng import SplitMix64, derive_seed
from .rho_core import (
    boundary_identity_residual,
    cayley_identity_residual,
    is_rho_contraction_boundary,
    is_rho_contraction_disk,
    rho_radius,
)
from .witness import figure1_grid, random_blaschke, random_blaschke_spec, random_contraction, random_gaussian, sharpness_scan

log = logging.getLogger("rhocalc")

COMMANDS = ("radius", "check", "bound", "sharpness", "scan", "identities")
FIGURE1_RHOS = (1.0, 1.25, 1.5, 1.75, 2.0)
SCAN_COLUMNS = (
    "sample", "seed", "dim", "degree", "kind", "verifier", "rho_eff",
    "abs_f0", "value", "bound", "slack", "pass",
)
SLACK_BUCKETS = (0.0, 1e-8, 1e-4, 1e-2, 1e-1, 1.0)
SCAN_RETRIES = 3

EXIT_OK, EXIT_INPUT, EXIT_NONCONV, EXIT_HYPOTHESIS, EXIT_IDENTITY = 0, 2, 3, 4, 5


@dataclass
class RunConfig:
    command: str
    rho: float = 2.0
    grid: int = 1024
    tol: float = 1e-8
    seed: int = 20240601
    samples: int = 100
    input_path: str | None = None
    function_path: str | None = None
    output_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if not (math.isfinite(self.rho) and self.rho >= 1):
            raise InputError(f"--rho must be >= 1, got {self.rho!r}")
        if not self.tol > 0:
            raise InputError(f"--tol must be positive, got {self.tol!r}")
        if self.grid < 16 or self.grid & (self.grid - 1):
            raise InputError(f"--grid must be a power of two >= 16, got {self.grid!r}")
        if self.samples < 1:
            raise InputError(f"--samples must be >= 1, got {self.samples!r}")
        if self.format not in ("json", "csv"):
            raise InputError(f"--format must be json or csv, got {self.format!r}")

    def comment(self) -> str:
        # the output location is not part of the computation; leaving it out keeps reruns byte-identical
        d = asdict(self)
        d.pop("output_path")
        return "# rhocalc " + json.dumps(d, sort_keys=True)


# -- I/O helpers ------------------------------------------------------------------------

def _load_json(path: str | None, what: str):
    if path is None:
        raise InputError(f"missing {what} file")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path} is not valid JSON: {exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(comment: str, header, rows) -> str:
    buf = io.StringIO()
    buf.write(comment + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([_fmt(v) for v in row] for row in rows)
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


# -- commands -----------------------------------------------------------------------------

def cmd_radius(cfg: RunConfig) -> int:
    A = matrix_from_json(_load_json(cfg.input_path, "matrix"))
    res = rho_radius(A, cfg.rho, tol=cfg.tol, grid_size=cfg.grid)
    if cfg.format == "csv":
        text = _csv_text(cfg.comment(), ("value", "lo", "hi", "iterations"),
                         [(res.value, *res.bracket, res.iterations)])
    else:
        text = _dump_json(res.to_json())
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    A = matrix_from_json(_load_json(cfg.input_path, "matrix"))
    b = is_rho_contraction_boundary(A, cfg.rho, cfg.grid)
    d = is_rho_contraction_disk(A, cfg.rho, angular_steps=cfg.grid)
    agree = b.verdict == d.verdict
    if cfg.format == "csv":
        rows = [
            (name, c.grid_size, c.worst_point.real, c.worst_point.imag, c.min_eig, c.tol, c.verdict, agree)
            for name, c in (("boundary", b), ("disk", d))
        ]
        text = _csv_text(cfg.comment(), ("characterization", "grid_size", "worst_re", "worst_im",
                                         "min_eig", "tol", "verdict", "agree"), rows)
    else:
        text = _dump_json({"boundary": b.to_json(), "disk": d.to_json(), "agree": agree})
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_bound(cfg: RunConfig) -> int:
    A = matrix_from_json(_load_json(cfg.input_path, "matrix"))
    f = RationalFunction.from_json(_load_json(cfg.function_path, "function"))
    rep = verify_norm_bound(A, cfg.rho, f)
    if cfg.format == "csv":
        text = _csv_text(cfg.comment(), BOUND_CSV_COLUMNS, [rep.csv_row()])
    else:
        out = rep.to_json()
        out["okubo_ando"] = okubo_ando_bound(cfg.rho)
        if cfg.rho == 2.0:
            out["drury_k"] = k_drury(min(rep.abs_f0, 1.0))
        text = _dump_json(out)
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_sharpness(cfg: RunConfig, rhos) -> int:
    outdir = Path(cfg.output_path or "figure1")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InputError(f"cannot create output directory {outdir}: {exc.strerror}") from None
    s_grid = figure1_grid()
    records = []
    for rho in rhos:
        curve = [(rho, float(s), k_rho(rho, s)) for s in s_grid]
        (outdir / f"figure1_rho_{rho:.2f}.csv").write_text(
            _csv_text(cfg.comment(), ("rho", "s", "k"), curve)
        )
        records.extend(sharpness_scan(rho, s_grid))
    (outdir / "sharpness.csv").write_text(
        _csv_text(cfg.comment(), ("rho", "s", "lhs", "rhs", "gap"), [r.csv_row() for r in records])
    )
    max_gap = max(r.gap for r in records)
    print(f"sharpness: {len(rhos)} curves, {len(records)} points, max gap {max_gap:.3e}")
    return EXIT_OK


def _scan_sample(rho: float, master: int, i: int):
    """Rows for one sample; redraws on hypothesis failure."""
    last = None
    for attempt in range(SCAN_RETRIES + 1):
        seed = derive_seed(master, i, attempt)
        g = SplitMix64(seed)
        dim = g.randint(2, 4)
        deg0, deg1 = g.randint(1, 5), g.randint(1, 5)
        s_a, s_f0, s_f1 = g.next_u64(), g.next_u64(), g.next_u64()
        try:
            A = random_contraction(rho, dim, s_a)
            f_zero = random_blaschke(deg0, s_f0, force_zero_at_origin=True)
            f_free = random_blaschke(deg1, s_f1, force_zero_at_origin=False)
            rows = []
            for kind, f, deg in (("zero", f_zero, deg0), ("free", f_free, deg1)):
                rep = verify_norm_bound(A, rho, f)
                rows.append((i, seed, dim, deg, kind, "norm_bound", rho, rep.abs_f0,
                             rep.norm_fA, rep.k_value, rep.slack, rep.passed))
            w0 = verify_zero_preservation(A, rho, f_zero)
            bound = 1 + RADIUS_CONTRACT_TOL
            rows.append((i, seed, dim, deg0, "zero", "zero_preservation", rho, 0.0,
                         w0, bound, bound - w0, w0 <= bound))
            # rho_f = rho when f(0) = 0, so the zero-preservation value doubles as this check
            rows.append((i, seed, dim, deg0, "zero", "cassier_suciu", rho, 0.0,
                         w0, bound, bound - w0, w0 <= bound))
            a1 = abs(eval_scalar(f_free, 0.0))
            w1 = verify_cassier_suciu(A, rho, f_free)
            rows.append((i, seed, dim, deg1, "free", "cassier_suciu", rho_f_constant(rho, a1), a1,
                         w1, bound, bound - w1, w1 <= bound))
            return rows
        except HypothesisError as exc:
            log.warning("sample %d attempt %d: %s; redrawing", i, attempt, exc)
            last = exc
    raise last


def scan_rows(rho: float, samples: int, seed: int) -> list[tuple]:
    rows = []
    for i in range(samples):
        rows.extend(_scan_sample(rho, seed, i))
    return rows


def scan_summary(rows) -> dict:
    violations = sum(1 for r in rows if not r[11])
    hist = [0] * (len(SLACK_BUCKETS) + 1)
    for r in rows:
        if r[5] == "norm_bound":
            hist[int(np.searchsorted(SLACK_BUCKETS, r[10], side="right"))] += 1
    labels = ["<0"] + [f"[{a:g},{b:g})" for a, b in zip(SLACK_BUCKETS, SLACK_BUCKETS[1:])] + [f">={SLACK_BUCKETS[-1]:g}"]
    per = {}
    for r in rows:
        per[r[5]] = max(per.get(r[5], -math.inf), r[8] if r[5] != "norm_bound" else -r[10])
    return {
        "rows": len(rows),
        "violations": violations,
        "slack_histogram": [[lab, n] for lab, n in zip(labels, hist)],
        "max_value_zero_preservation": per.get("zero_preservation"),
        "max_value_cassier_suciu": per.get("cassier_suciu"),
        "max_norm_excess": per.get("norm_bound"),
    }


def cmd_scan(cfg: RunConfig) -> int:
    rows = scan_rows(cfg.rho, cfg.samples, cfg.seed)
    summary = scan_summary(rows)
    if cfg.format == "json":
        text = _dump_json({"columns": list(SCAN_COLUMNS), "rows": [[_fmt(v) for v in r] for r in rows],
                           "summary": summary})
    else:
        text = _csv_text(cfg.comment(), SCAN_COLUMNS, rows)
    _emit(text, cfg.output_path)
    stream = sys.stdout if cfg.output_path else sys.stderr
    print("scan summary: " + json.dumps(summary, sort_keys=True), file=stream)
    return EXIT_OK


# -- identity regression ---------------------------------------------------------------------

IDENTITY_NAMES = ("boundary", "cayley", "poisson", "herglotz")


def identity_contract(name: str, A: np.ndarray) -> float:
    nA = op_norm(A)
    if name in ("boundary", "cayley"):
        return 1e-9 * max(1.0, nA**2)
    if name == "poisson":
        return 1e-8 * max(1.0, nA)
    return 1e-6


def identity_case(seed: int, i: int) -> dict:
    """Seeded random input for the ``i``-th identity sample (JSON-serializable)."""
    g = SplitMix64(derive_seed(seed, i))
    dim = g.randint(1, 5)
    G = random_gaussian(dim, g.next_u64())
    r = 0.05 + 0.85 * g.uniform()
    sr = float(np.max(np.abs(np.linalg.eigvals(G))))
    A = G * (r / sr) if sr > 0 else G * (r / op_norm(G))
    rho = 1.0 + 3.0 * g.uniform()
    t = 2 * math.pi * g.uniform()
    rz, tz = math.sqrt(g.uniform()), 2 * math.pi * g.uniform()
    tau = 2 * math.pi * g.uniform()
    spec_f = random_blaschke_spec(g.randint(1, 3), g.next_u64(), force_zero_at_origin=True)
    return {
        "A": matrix_to_json(A),
        "rho": rho,
        "sigma": complex_to_json(complex(math.cos(t), math.sin(t))),
        "z": complex_to_json(rz * complex(math.cos(tz), math.sin(tz))),
        "tau": complex_to_json(complex(math.cos(tau), math.sin(tau))),
        "f": spec_f.to_json(),
        "eps": 0.9,
        "grid": 4096,
    }


def identity_residuals(case: dict) -> dict:
    A = matrix_from_json(case["A"])
    rho = case["rho"]
    f = RationalFunction.from_json(case["f"])
    grid = BoundaryGrid(case["grid"])
    return {
        "boundary": boundary_identity_residual(A, rho, complex_from_json(case["sigma"])),
        "cayley": cayley_identity_residual(A, rho, complex_from_json(case["z"])),
        "poisson": poisson_identity_residual(f, A, grid),
        "herglotz": herglotz_residual(f, A, rho, complex_from_json(case["tau"]), case["eps"], grid),
    }


def run_identities(seed: int, samples: int, cases=None):
    """Return per-identity ``(max residual, worst ratio, worst case)``."""
    worst = {name: (0.0, 0.0, None) for name in IDENTITY_NAMES}
    cases = cases if cases is not None else (identity_case(seed, i) for i in range(samples))
    for case in cases:
        res = identity_residuals(case)
        A = matrix_from_json(case["A"])
        for name, val in res.items():
            ratio = val / identity_contract(name, A)
            m, r, c = worst[name]
            worst[name] = (max(m, val), max(r, ratio), case if ratio > r or c is None else c)
    return worst


def cmd_identities(cfg: RunConfig) -> int:
    cases = [_load_json(cfg.input_path, "replay case")] if cfg.input_path else None
    worst = run_identities(cfg.seed, cfg.samples, cases)
    breach = None
    for name in IDENTITY_NAMES:
        m, r, case = worst[name]
        status = "ok" if r <= 1 else "BREACH"
        print(f"{name:9s} max residual {m:.3e}  max residual/contract {r:.3e}  {status}")
        if r > 1 and breach is None:
            breach = (name, case)
    if breach:
        name, case = breach
        payload = _dump_json({"identity": name, **case})
        if cfg.output_path:
            Path(cfg.output_path).write_text(payload)
        print(f"identity contract breached: {name}; worst input:\n{payload}", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rhocalc", description="numerical rho-radius and functional-calculus checks")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    p.add_argument("--rho", type=float)
    p.add_argument("--grid", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--in", dest="input_path")
    p.add_argument("--fn", dest="function_path")
    p.add_argument("--out", dest="output_path")
    p.add_argument("--format", choices=("json", "csv"))
    return p


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Flags over config file over defaults."""
    values = {}
    if args.config:
        data = _load_json(args.config, "config")
        if not isinstance(data, dict):
            raise InputError("config file must hold a JSON object")
        known = {f.name for f in fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for name in ("rho", "grid", "tol", "seed", "samples", "input_path", "function_path", "output_path", "format"):
        v = getattr(args, name)
        if v is not None:
            values[name] = v
    values["command"] = args.command
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise InputError(f"bad configuration value: {exc}") from None


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if cfg.command == "radius":
            return cmd_radius(cfg)
        if cfg.command == "check":
            return cmd_check(cfg)
        if cfg.command == "bound":
            return cmd_bound(cfg)
        if cfg.command == "sharpness":
            explicit = args.rho is not None or (args.config and "rho" in _load_json(args.config, "config"))
            return cmd_sharpness(cfg, (cfg.rho,) if explicit else FIGURE1_RHOS)
        if cfg.command == "scan":
            return cmd_scan(cfg)
        return cmd_identities(cfg)
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ConvergenceError as exc:
        print(f"error: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_NONCONV
    except RhoCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
