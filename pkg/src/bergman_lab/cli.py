"""Command-line front end: ``bergman-lab <task> --config cfg.json [--out dir]``.

Exit status: 0 all checks pass, 1 computation error, 2 configuration
error, 3 checks ran but at least one failed (the report is still written).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import asymptotics as asy
from . import verification as ver
from .domain_model import DomainSpec, TheoremId, leading_constant
from .errors import BergmanLabError, ConfigError
from .kernels import kernel_from_moments
from .moments import AngularWeightSpec, RadialWeightSpec
from .sobolev_norms import NormVariant, coefficient_form, decade_drift
from .spectral_continuation import holomorphy_contour_test, lambda0_model, spectral_kernel

log = logging.getLogger("bergman_lab")

TASKS = ("kernel-eval", "kernel-asympt", "toeplitz-verify", "sobolev-table", "continuation-scan", "verify-all")
THREADS_ENV = "BERGMAN_LAB_THREADS"

SCHEMA = {
    "task": None,
    "seed": None,
    "domain": {"kind", "R", "n", "measure"},
    "weight": {"alpha", "g", "c", "radial_poly", "angular_poly"},
    "norm": {"variant", "variants", "m", "s"},
    "numeric": {"N", "N_ref", "d_max", "rho0", "count", "tol", "k_values", "k_lo", "decades", "n_nodes"},
    "points": None,
    "s_values": None,
    "x": None,
    "y": None,
    "rectangle": None,
    "criteria": None,
}


# ---------------------------------------------------------------- config

def load_config(path: str | os.PathLike) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a single JSON object")
    for key, val in cfg.items():
        if key not in SCHEMA:
            raise ConfigError(f"unknown config key {key!r}")
        allowed = SCHEMA[key]
        if allowed is not None:
            if not isinstance(val, dict):
                raise ConfigError(f"{key!r} must be an object")
            extra = set(val) - allowed
            if extra:
                raise ConfigError(f"unknown keys in {key!r}: {sorted(extra)}")
    return cfg


def _num(section: dict, key: str, default):
    return section.get(key, default)


def _complex(v, what: str) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(v[0], v[1])
    raise ConfigError(f"{what} must be a number or [re, im]")


def _point(v, n: int, what: str) -> np.ndarray:
    if n == 1:
        return np.array([_complex(v, what)])
    if not isinstance(v, list) or len(v) != n:
        raise ConfigError(f"{what} must be a list of {n} coordinates")
    return np.array([_complex(c, what) for c in v])


def build_domain(cfg: dict) -> DomainSpec:
    d = cfg.get("domain", {})
    kind = d.get("kind", "disc")
    try:
        if kind == "disc":
            return DomainSpec.disc(d.get("R", 1.0), d.get("measure", "lebesgue"))
        return DomainSpec.ball(d.get("n", 2), d.get("measure", "lebesgue"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_radial(cfg: dict, domain: DomainSpec) -> RadialWeightSpec:
    w = cfg.get("weight", {})
    alpha = float(w.get("alpha", 0.0))
    g = w.get("g", "none")
    try:
        if g == "none":
            if "radial_poly" in w:
                return RadialWeightSpec(alpha, [float(c) for c in w["radial_poly"]], domain, "poly")
            return RadialWeightSpec(alpha, None, domain)
        if g == "exp":
            return RadialWeightSpec.exp_radial(alpha, float(w.get("c", 1.0)), domain)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown weight tag g={g!r}")


def build_angular(cfg: dict, domain: DomainSpec) -> AngularWeightSpec:
    w = cfg.get("weight", {})
    radial = build_radial(cfg, domain)
    poly = {}
    for row in w.get("angular_poly", [[0, 0, 1.0, 0.0]]):
        if not (isinstance(row, list) and len(row) == 4):
            raise ConfigError("angular_poly rows are [a, b, re, im]")
        poly[(int(row[0]), int(row[1]))] = complex(row[2], row[3])
    try:
        return AngularWeightSpec(radial, poly)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------- output

def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def write_report(path: Path, checks: list[ver.Check]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([c.to_dict() for c in checks], fh, indent=2)
        fh.write("\n")


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _pmap(fn, items):
    n = _threads()
    if n == 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------- tasks

def task_kernel_eval(cfg: dict, out: Path) -> list[ver.Check]:
    dom = build_domain(cfg)
    num = cfg.get("numeric", {})
    tol = float(_num(num, "tol", 1e-12))
    K = kernel_from_moments(build_radial(cfg, dom), d_max=_num(num, "d_max", None))
    pts = cfg.get("points")
    if not pts:
        raise ConfigError("kernel-eval needs 'points': [[x, y], ...]")
    pairs = []
    for row in pts:
        if not (isinstance(row, list) and len(row) == 2):
            raise ConfigError("each point row is [x, y]")
        pairs.append((_point(row[0], dom.n, "x"), _point(row[1], dom.n, "y")))
    for x, y in pairs:
        dom.check_closed(x)
        dom.check_closed(y)

    def one(p):
        x, y = p
        v, b = K.evaluate(x, y, tol)
        return x, y, v, b

    rows = []
    for x, y, v, b in _pmap(one, pairs):
        rows.append([" ".join(repr(float(c.real)) for c in x), " ".join(repr(float(c.imag)) for c in x),
                     " ".join(repr(float(c.real)) for c in y), " ".join(repr(float(c.imag)) for c in y),
                     float(v.real), float(v.imag), float(b)])
    write_csv(out / "kernel_eval.csv", ["x_re", "x_im", "y_re", "y_im", "K_re", "K_im", "tail_bound"], rows)
    worst = max(r[6] for r in rows)
    return [ver._bound("kernel-eval-tail-bound", "certified tail bound", worst, tol)]


def task_kernel_asympt(cfg: dict, out: Path) -> list[ver.Check]:
    dom = build_domain(cfg)
    num = cfg.get("numeric", {})
    spec = build_radial(cfg, dom)
    K = kernel_from_moments(spec, d_max=_num(num, "d_max", None))
    S = ver.boundary_samples(K, float(_num(num, "rho0", 1e-2)), int(_num(num, "count", 14)))
    p, target, log_case = leading_constant(dom, TheoremId.weighted_bergman(spec.alpha, spec.g_boundary))
    fit = asy.fit_singularity(S, asy.SingularityBasis.standard(p, log_case or None))
    model = fit.model(S.rho)
    rows = [[float(r), float(v), float(m), float((v - m) / v)] for r, v, m in zip(S.rho, S.values, model)]
    write_csv(out / "kernel_asympt.csv", ["rho", "K_diag", "model_value", "residual"], rows)
    log.info("grid reach rho >= %.3g (%d of %d points)", S.reach, len(S.rho), S.requested)
    tol = 1e-4 if (spec.is_trivial or spec.is_polynomial) else 1e-2
    return [ver._rel("weighted-leading", "weighted leading constant", target, fit.leading, tol)]


def task_toeplitz_verify(cfg: dict, out: Path) -> list[ver.Check]:
    dom = build_domain(cfg)
    if dom.kind != "disc":
        raise ConfigError("toeplitz-verify runs on the disc")
    num = cfg.get("numeric", {})
    N = int(_num(num, "N", 60))
    N_ref = int(_num(num, "N_ref", 120))
    w = build_angular(cfg, dom)
    dev = ver.inverse_toeplitz_deviation(w, N)
    Ns = list(range(20, min(N_ref, 81), 10))
    devs = ver.section_deviations(w, Ns, N_ref)
    write_csv(out / "toeplitz_sections.csv", ["N", "max_deviation_vs_reference"],
              [[int(n), float(d)] for n, d in zip(Ns, devs)])
    rise = max([0.0] + [b - a for a, b in zip(devs[:-1], devs[1:])])
    mono = all(b <= a or max(a, b) <= ver.ROUNDOFF_FLOOR for a, b in zip(devs[:-1], devs[1:]))
    return [ver._bound(f"inverse-toeplitz-max-dev-N={N}", "inverse Toeplitz kernel vs Gram oracle", dev, 1e-8),
            ver.Check("inverse-toeplitz-monotone", f"finite-section convergence vs N={N_ref}", 0.0, rise,
                      ver.ROUNDOFF_FLOOR, bool(mono))]


def task_sobolev_table(cfg: dict, out: Path) -> list[ver.Check]:
    dom = build_domain(cfg)
    norm = cfg.get("norm", {})
    num = cfg.get("numeric", {})
    m, s = int(norm.get("m", 2)), float(norm.get("s", 0.6))
    tags = norm.get("variants", [norm["variant"]] if "variant" in norm else list("abcde"))
    k_lo, decades = int(_num(num, "k_lo", 10)), int(_num(num, "decades", 4))
    k_values = [int(k) for k in _num(num, "k_values", [0, 1, 2, 5, 10, 100, 1000, 10000])]
    k_top = max(max(k_values), k_lo * 10**decades)
    try:
        forms = {t: coefficient_form(NormVariant(t, m, s, R=dom.R), k_top) for t in tags}
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rows = [[k, t, float(forms[t].Q[k])] for k in k_values for t in tags]
    write_csv(out / "sobolev_table.csv", ["k", "variant", "Q_k"], rows)
    checks = []
    for i, a in enumerate(tags):
        for b in tags[i + 1:]:
            drift_rows = decade_drift(forms[a], forms[b], k_lo, decades)
            inf = min(r[1] for r in drift_rows)
            drift = max(r[3] for r in drift_rows)
            checks.append(ver.Check(f"equivalence-{a}-vs-{b}", "norm equivalence drift", 0.0, drift, 0.05,
                                    bool(inf > 0 and math.isfinite(drift) and drift < 0.05)))
    return checks


def task_continuation_scan(cfg: dict, out: Path) -> list[ver.Check]:
    model = lambda0_model()
    x = _complex(cfg.get("x", 0.4), "x")
    y = _complex(cfg.get("y", 0.4), "y")
    svals = [_complex(v, "s") for v in cfg.get("s_values", [[0.5, 0.0], [0.0, 0.0], [0.5, 2.0]])]
    num = cfg.get("numeric", {})

    def one(s):
        return s, spectral_kernel(model, s, x, y)

    rows, checks = [], []
    for s, v in _pmap(one, svals):
        rows.append([s.real, s.imag, v.real, v.imag])
        bound = math.sqrt(spectral_kernel(model, s.real, x, x).real * spectral_kernel(model, s.real, y, y).real)
        checks.append(ver.Check(f"modulus-bound-s={s}", "Cauchy-Schwarz modulus bound", bound, abs(v), 0.0,
                                bool(abs(v) <= bound * (1 + 1e-12))))
    write_csv(out / "continuation_scan.csv", ["s_re", "s_im", "K_re", "K_im"], rows)
    rect = cfg.get("rectangle", [[0.2, -0.3], [1.2, 0.3]])
    corners = (_complex(rect[0], "rectangle"), _complex(rect[1], "rectangle"))
    val = abs(holomorphy_contour_test(model, corners, x, y, int(_num(num, "n_nodes", 400))))
    checks.append(ver._bound("contour-integral", "holomorphy in s (Cauchy)", val, 1e-8))
    return checks


def task_verify_all(cfg: dict, out: Path) -> list[ver.Check]:
    crit = cfg.get("criteria")
    if crit is not None and (not isinstance(crit, list) or any(c not in ver.CRITERIA for c in crit)):
        raise ConfigError(f"criteria must be a list drawn from {sorted(ver.CRITERIA)}")
    ids = sorted(ver.CRITERIA) if crit is None else crit
    results = _pmap(lambda i: (i, ver.CRITERIA[i][0], ver.CRITERIA[i][1]()), ids)
    checks = []
    for i, name, cs in results:
        ok = all(c.passed for c in cs)
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {i}: {name}")
        checks.extend(cs)
    return checks


HANDLERS = {
    "kernel-eval": task_kernel_eval,
    "kernel-asympt": task_kernel_asympt,
    "toeplitz-verify": task_toeplitz_verify,
    "sobolev-table": task_sobolev_table,
    "continuation-scan": task_continuation_scan,
    "verify-all": task_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bergman-lab", description=__doc__.splitlines()[0])
    p.add_argument("task", choices=TASKS)
    p.add_argument("--config", required=True, help="JSON configuration file")
    p.add_argument("--out", default=".", help="output directory (created if missing)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    out = Path(args.out)
    try:
        cfg = load_config(args.config)
        if cfg.get("task", args.task) != args.task:
            raise ConfigError(f"config task {cfg['task']!r} does not match {args.task!r}")
        _threads()
        out.mkdir(parents=True, exist_ok=True)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        checks = HANDLERS[args.task](cfg, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (BergmanLabError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    write_report(out / "report.json", checks)
    failed = [c for c in checks if not c.passed]
    for c in checks:
        log.info("%s %s measured=%r target=%r tol=%r", "PASS" if c.passed else "FAIL",
                 c.check_id, c.measured, c.target, c.tolerance)
    return 3 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
