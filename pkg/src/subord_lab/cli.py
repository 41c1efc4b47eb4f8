"""Command-line runner: ``subord-lab <subcommand> [options]``.

Options come from flags or from a JSON file given with ``--config`` (keys
are the long option names, dashes or underscores); flags win.  With
``--out DIR`` a run writes ``summary.json`` (deterministic for a fixed
configuration), ``detail.csv`` and ``metadata.json`` (timing, worker count,
versions).  Exit status: 0 when every checked property holds, 2 when the
result is flagged inconclusive, 1 on errors or failed checks.
"""
from __future__ import annotations

import argparse
import json
import math
import platform
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .blaschke import ZeroSet, blaschke_pairing, class_separation, fiber_form_integral, lifted_zero_blaschke
from .carleson import DEFAULT_THRESHOLD, DiscreteMeasure, geometric_constant, lift_equivalence_check
from .corona import CoronaData, base_grid, corona_data_check, corona_transport, lifted_bezout, parse_polynomial
from .domain import Domain, parse_domain, unit_disc
from .errors import SubordLabError
from .functions import Polynomial
from .interp import (PointSequence, correspondence_check, dual_system, gram_matrix, interpolation_constant,
                     lift_sequence)
from .io import dumps, parse_space, read_atoms, read_points, read_zeros, write_csv, write_json
from .kernels import kernel_identity_check, random_ball_pairs
from .measures import bergman_norm, hardy_norm, shell_volume_rate, subordination_ratio, surface_integral
from .polydisc import PolydiscFamily, hg_scan, lifted_family
from .quadrature import QuadSpec
from .spaces import Bergman, Hardy, sphere_area, volume_unit_ball

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
EXIT = {PASS: 0, INCONCLUSIVE: 2, FAIL: 1}

_QUAD_KEYS = ("mc_samples", "shell_etas", "level_epsilons", "rel_tol", "radial_nodes", "replicates")
_INPUT_PATHS = ("measure", "points", "zeros")


class ConfigError(SubordLabError):
    pass


def _floats(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(float(x) for x in text)
    return tuple(float(x) for x in str(text).replace(";", ",").split(",") if x.strip())


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run")
    g.add_argument("--config", help="JSON file with option values (flags override)")
    g.add_argument("--seed", type=int, help="master seed (required)")
    g.add_argument("--out", help="output directory for summary.json, detail.csv, metadata.json")
    g.add_argument("--workers", type=int, help="worker count (does not change results)")
    q = p.add_argument_group("quadrature")
    q.add_argument("--mc-samples", type=int)
    q.add_argument("--replicates", type=int)
    q.add_argument("--radial-nodes", type=int)
    q.add_argument("--rel-tol", type=float)
    q.add_argument("--shell-etas", type=_floats)
    q.add_argument("--level-epsilons", type=_floats)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subord-lab", description=__doc__.splitlines()[0],
                                     argument_default=argparse.SUPPRESS)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_, argument_default=argparse.SUPPRESS)
        _common(p)
        return p

    p = add("kernel-identity", "weighted Bergman kernel vs lifted Szego kernel on the slice")
    p.add_argument("--domain", help="ball descriptor, e.g. ball:2")
    p.add_argument("--k", type=int)
    p.add_argument("--pairs", type=int)
    p.add_argument("--normalization", choices=("coarea", "reciprocal"))

    p = add("subordination", "monomial norm ratios between H^2 of the lift and A^2_(k-1)")
    p.add_argument("--domain")
    p.add_argument("--k", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--verify", type=int, help="number of monomials to re-check by quadrature")

    p = add("surface", "boundary integral of 1 by shell limits, both weightings")
    p.add_argument("--domain")

    p = add("shell", "first-order convergence of the shell volume rate")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=float)
    p.add_argument("--etas", type=_floats)

    p = add("check-carleson", "geometric (Bergman-)Carleson constant of an atomic measure")
    p.add_argument("--measure", help="CSV rows re(z1),im(z1),...,mass")
    p.add_argument("--domain")
    p.add_argument("--k", type=int)
    p.add_argument("--variant", choices=("carleson", "bergman", "shortcut"))
    p.add_argument("--rule", choices=("minimal", "mcneal"))
    p.add_argument("--delta0", type=float)
    p.add_argument("--threshold", type=float)
    p.add_argument("--lift", action="store_true", help="also compare with the lifted measure")

    p = add("hg-check", "window homogeneity along the slice of a lifted domain")
    p.add_argument("--domain", help="base domain; the check runs on its lift")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=_floats, help="candidate t values, comma separated")
    p.add_argument("--samples", type=int)
    p.add_argument("--rule", choices=("minimal", "mcneal"))
    p.add_argument("--delta0", type=float)

    p = add("interp", "Gram, dual and interpolation constants of a finite sequence")
    p.add_argument("--points", help="CSV rows re(z1),im(z1),...")
    p.add_argument("--space", help="hardy:ball:N or bergman:ball:n:k=K")

    p = add("corona", "lift polynomial Bezout data and restrict it to the slice")
    p.add_argument("--generators", help="polynomials in z separated by ';'")
    p.add_argument("--f", help="polynomial in z")
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=float, help="also check sum |g_j| >= delta on the disc")
    p.add_argument("--samples", type=int)

    p = add("blaschke", "Blaschke pairings and fibre-form integrals of a zero set")
    p.add_argument("--zeros", help="CSV rows re,im,multiplicity (omit for the class example)")
    p.add_argument("--k", type=int)

    p = add("lift-zeros", "Blaschke mass of a lifted zero set")
    p.add_argument("--zeros")
    p.add_argument("--k", type=int)
    return parser


DEFAULTS = {
    "kernel-identity": {"domain": "ball:1", "k": 2, "pairs": 50, "normalization": "coarea"},
    "subordination": {"domain": "ball:1", "k": 1, "max_degree": 6, "verify": 0},
    "surface": {"domain": "ball:2"},
    "shell": {"k": 2, "t": 0.5, "etas": (0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125)},
    "check-carleson": {"domain": "disc", "k": 1, "variant": "carleson", "rule": "minimal",
                       "delta0": 0.2, "threshold": DEFAULT_THRESHOLD, "lift": False},
    "hg-check": {"domain": "disc", "k": 1, "t": (1.0, 2.0, 4.0, 8.0), "samples": 200,
                 "rule": "minimal", "delta0": 0.2},
    "interp": {},
    "corona": {"generators": "z;(2-z)/2", "f": "1", "k": 1, "samples": 10_000},
    "blaschke": {"k": 1},
    "lift-zeros": {"k": 1},
}
_REQUIRED = {"check-carleson": ("measure",), "interp": ("points", "space"), "lift-zeros": ("zeros",)}


def resolve_config(args: argparse.Namespace) -> dict:
    """Defaults < JSON config < flags; validates seed and input paths."""
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    cmd = args.command
    cfg = {}
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config: file not found: {path}")
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON in {path}: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config: top level must be an object")
        cfg = {str(k).replace("-", "_"): v for k, v in raw.items()}
        cfg.pop("command", None)
        known = set(DEFAULTS[cmd]) | set(_QUAD_KEYS) | {"seed", "out", "workers"} | set(_REQUIRED.get(cmd, ())) \
            | ({"zeros"} if cmd == "blaschke" else set())
        unknown = sorted(set(cfg) - known)
        if unknown:
            raise ConfigError(f"config: unknown field(s) for {cmd}: {', '.join(unknown)}")
    conf = {**DEFAULTS[cmd], **cfg, **flags}
    conf["command"] = cmd
    if conf.get("seed") is None:
        raise ConfigError("seed: --seed is required")
    try:
        conf["seed"] = int(conf["seed"])
    except (TypeError, ValueError):
        raise ConfigError(f"seed: not an integer: {conf['seed']!r}") from None
    if conf["seed"] < 0:
        raise ConfigError("seed: must be non-negative")
    for key in _REQUIRED.get(cmd, ()):
        if conf.get(key) is None:
            raise ConfigError(f"{key}: --{key} is required for {cmd}")
    for key in _INPUT_PATHS:
        if conf.get(key) is not None and not Path(conf[key]).is_file():
            raise ConfigError(f"{key}: file not found: {conf[key]}")
    if "domain" in conf:
        conf["domain_obj"] = parse_domain(str(conf["domain"]))
    return conf


def quad_spec(conf: dict, **overrides) -> QuadSpec:
    kw = {k: conf[k] for k in _QUAD_KEYS if k in conf}
    for k in ("shell_etas", "level_epsilons"):
        if k in kw:
            kw[k] = _floats(kw[k])
    kw.update(overrides)
    return QuadSpec(seed=conf["seed"], workers=int(conf.get("workers", 1)), **kw)


def _ball_dim(dom: Domain) -> int:
    if not dom.is_ball:
        raise ConfigError(f"domain: {dom.descriptor} is not a ball")
    return dom.complex_dim


def _status(ok: bool, flags=()) -> str:
    if not ok:
        return FAIL
    return INCONCLUSIVE if flags else PASS


# ---------------------------------------------------------------- commands

def cmd_kernel_identity(conf):
    n, k = _ball_dim(conf["domain_obj"]), int(conf["k"])
    rep = kernel_identity_check(n, k, random_ball_pairs(n, int(conf["pairs"]), conf["seed"]),
                                conf["normalization"])
    rows = [(r["z"], r["a"], r["B"], r["S"], r["ratio"]) for r in rep["rows"]]
    ok = rep["max_rel_dev"] < 1e-12 and abs(rep["c_hat"] / rep["c_expected"] - 1) < 1e-12
    summary = {k_: rep[k_] for k_ in ("n", "k", "normalization", "c_hat", "c_expected", "max_rel_dev", "alternate")}
    summary["n_pairs"], summary["n_skipped"] = len(rows), len(rep["skipped"])
    return summary, ["z", "a", "B", "S", "ratio"], rows, _status(ok)


def _multi_indices(n: int, max_degree: int):
    out = [()]
    for _ in range(n):
        out = [a + (j,) for a in out for j in range(max_degree + 1)]
    return sorted((a for a in out if sum(a) <= max_degree), key=lambda a: (sum(a), a))


def cmd_subordination(conf):
    n, k = _ball_dim(conf["domain_obj"]), int(conf["k"])
    alphas = _multi_indices(n, int(conf["max_degree"]))
    rep = subordination_ratio(alphas, n, k)
    ok = rep["spread"] < 1e-12
    header = ["alpha", "hardy_closed", "bergman_closed", "ratio", "hardy_quad", "bergman_quad",
              "hardy_rel_err", "bergman_rel_err"]
    rows, flags, checks = [], set(), []
    n_verify = int(conf["verify"])
    quad = quad_spec(conf) if n_verify else None
    for i, r in enumerate(rep["rows"]):
        row = [r["alpha"], r["hardy"], r["bergman"], r["ratio"], "", "", "", ""]
        if i < n_verify:
            alpha = tuple(r["alpha"])
            f = Polynomial.monomial(alpha)
            hq = hardy_norm(f.lift(k), 2, parse_domain(f"ball:{n + k}"), quad)
            bq = bergman_norm(f, 2, k - 1, conf["domain_obj"], quad)
            he = abs(hq.value**2 / r["hardy"] - 1)
            be = abs(bq.value**2 / r["bergman"] - 1)
            flags.update(hq.flags + bq.flags)
            row[4:] = [hq.value**2, bq.value**2, he, be]
            checks.append(max(he, be))
        rows.append(row)
    summary = {"n": n, "k": k, "max_degree": int(conf["max_degree"]), "n_monomials": len(rows),
               "ratio_max": rep["max"], "ratio_min": rep["min"], "spread": rep["spread"],
               "n_verified": len(checks), "max_quad_rel_err": max(checks) if checks else None,
               "flags": sorted(flags)}
    if checks:
        ok = ok and max(checks) < 2e-3
        summary["mc_samples"] = quad.mc_samples
    return summary, header, rows, _status(ok, flags)


def cmd_surface(conf):
    dom = conf["domain_obj"]
    quad = quad_spec(conf)
    one = lambda z: np.ones(z.shape[:-1])
    est = {m: surface_integral(dom, one, m, quad) for m in ("coarea", "reciprocal")}
    ratio = est["reciprocal"].value / est["coarea"].value
    summary = {"domain": dom.descriptor, "coarea": est["coarea"].value, "coarea_stderr": est["coarea"].stderr,
               "reciprocal": est["reciprocal"].value, "reciprocal_stderr": est["reciprocal"].stderr,
               "reciprocal_over_coarea": ratio, "flags": sorted(set(est["coarea"].flags + est["reciprocal"].flags))}
    ok = True
    if dom.is_ball:
        ref = sphere_area(dom.complex_dim)
        summary["reference"] = ref
        summary["coarea_rel_err"] = abs(est["coarea"].value / ref - 1)
        summary["reciprocal_ratio_rel_err"] = abs(ratio / 0.25 - 1)
        ok = summary["coarea_rel_err"] < 1e-3 and summary["reciprocal_ratio_rel_err"] < 1e-3
    rows = []
    for mode, e in est.items():
        for sh in e.details["shells"]:
            rows.append((mode, sh["eta"], sh["value"], sh["stderr"]))
        rows.append((mode, 0.0, e.value, e.stderr))
    return summary, ["mode", "eta", "value", "stderr"], rows, _status(ok, summary["flags"])


def cmd_shell(conf):
    k, t = int(conf["k"]), float(conf["t"])
    etas = sorted(_floats(conf["etas"]), reverse=True)
    limit = k * volume_unit_ball(k) * t ** (k - 1)
    errs = [abs(shell_volume_rate(k, t, e) - limit) for e in etas]
    rows, halving = [], []
    for i, (e, err) in enumerate(zip(etas, errs)):
        h = errs[i - 1] / err if i and err > 0 and math.isclose(etas[i - 1], 2 * e) else None
        if h is not None:
            halving.append(h)
        rows.append((e, shell_volume_rate(k, t, e), err, "" if h is None else h))
    ok = bool(halving) and all(1.8 <= h <= 2.2 for h in halving)
    summary = {"k": k, "t": t, "limit": limit, "halving_ratios": halving,
               "band": [1.8, 2.2], "first_order": ok}
    if k == 1:
        # the rate is exact for k = 1, there is no error to halve
        ok = max(errs) < 1e-12
        summary["first_order"] = None
    return summary, ["eta", "rate", "abs_error", "halving_ratio"], rows, _status(ok)


def cmd_check_carleson(conf):
    dom = conf["domain_obj"]
    pts, masses = read_atoms(conf["measure"])
    if pts.shape[1] != dom.complex_dim:
        raise ConfigError(f"measure: atoms have {pts.shape[1]} coordinates, domain {dom.descriptor} "
                          f"has {dom.complex_dim}")
    mu = DiscreteMeasure(pts, masses)
    fam = PolydiscFamily(dom, conf["rule"], float(conf["delta0"]))
    quad = quad_spec(conf, mc_samples=int(conf.get("mc_samples", 2**16)))
    k, thr = int(conf["k"]), float(conf["threshold"])
    rep = geometric_constant(mu, fam, conf["variant"], k, quad=quad)
    summary = {"domain": dom.descriptor, "variant": rep["variant"], "k": k, "constant": rep["constant"],
               "worst_center": rep["worst_center"], "n_centers": rep["n_centers"],
               "n_charged": rep["n_charged"], "threshold": thr, "carleson": rep["constant"] <= thr,
               "flags": rep["flags"]}
    rows = [(r["center"], r["mass"], r["window"], r["ratio"]) for r in rep["rows"]]
    flags = list(rep["flags"])
    if conf.get("lift"):
        lq = lift_equivalence_check(mu, k, fam, quad, threshold=thr)
        summary["lift"] = {"base_constant": lq["base"]["constant"], "lifted_constant": lq["lifted"]["constant"],
                           "ratio": lq["ratio"], "agree": lq["agree"], "flags": lq["flags"]}
        flags += lq["flags"]
        if not lq["agree"]:
            return summary, ["center", "mass", "window", "ratio"], rows, FAIL
    return summary, ["center", "mass", "window", "ratio"], rows, _status(True, flags)


def cmd_hg_check(conf):
    base = conf["domain_obj"]
    k = int(conf["k"])
    fam = lifted_family(PolydiscFamily(base, conf["rule"], float(conf["delta0"])), k)
    quad = quad_spec(conf, mc_samples=int(conf.get("mc_samples", 2**16)))
    rep = hg_scan(fam, _floats(conf["t"]), int(conf["samples"]), conf["seed"], k, quad)
    rows = [(r["t"], r["n_valid"], r["ok_fraction"], r["C_hat"]) for r in rep["reports"]]
    flags = sorted({f for r in rep["reports"] for f in r["flags"]})
    summary = {"base_domain": base.descriptor, "k": k, "smallest_passing_t": rep["smallest_passing_t"],
               "reports": [{kk: r[kk] for kk in ("t", "n_valid", "ok_fraction", "C_hat", "worst_point")}
                           for r in rep["reports"]], "flags": flags}
    if rep["smallest_passing_t"] is None:
        flags = flags + ["no_passing_t"]
    return summary, ["t", "n_valid", "ok_fraction", "C_hat"], rows, _status(True, flags)


def cmd_interp(conf):
    space = parse_space(conf["space"])
    seq = PointSequence(read_points(conf["points"]), space)
    g = gram_matrix(seq)
    d = dual_system(seq)
    summary = {"space": space.label, "size": len(seq), "gram_cond": g.cond,
               "dual_const": d.constant, "interp_const": interpolation_constant(seq)}
    header = ["i", "j", "gram"]
    rows = [(i, j, g.gram[i, j]) for i in range(len(seq)) for j in range(len(seq))]
    ok = True
    if isinstance(space, Bergman):
        cmp = correspondence_check(seq)
        g1 = gram_matrix(lift_sequence(seq, cmp["k"]))
        summary["lifted"] = {key: cmp[key] for key in cmp if key not in ("n", "size")}
        summary["lifted"]["space"] = Hardy(space.dim + cmp["k"]).label
        header.append("gram_lifted")
        rows = [(i, j, g.gram[i, j], g1.gram[i, j]) for i, j, _ in rows]
        scale = lambda x: max(1.0, abs(x))
        ok = (cmp["gram_max_abs_diff"] < 1e-12
              and cmp["dual_const_diff"] < 1e-12 * scale(cmp["dual_const"])
              and cmp["interp_const_diff"] < 1e-12 * scale(cmp["interp_const"]))
    return summary, header, rows, _status(ok)


def cmd_corona(conf):
    gens = [parse_polynomial(s) for s in str(conf["generators"]).split(";") if s.strip()]
    f = parse_polynomial(str(conf["f"]))
    k = int(conf["k"])
    summary = {"generators": [g.descriptor for g in gens], "f": f.descriptor, "k": k}
    flags = []
    if conf.get("delta") is not None:
        chk = corona_data_check(CoronaData(tuple(gens), float(conf["delta"])), unit_disc(),
                                int(conf["samples"]), conf["seed"])
        summary["corona_data"] = {kk: chk[kk] for kk in ("min_sum", "argmin", "delta", "ok", "n_samples")}
    F, G, Ft = lifted_bezout(gens, f, k)
    rep = corona_transport(F, G, Ft, f, k, grid=base_grid(200), seed=conf["seed"])
    summary.update({kk: rep[kk] for kk in ("residual_lifted", "residual_base", "n_grid", "norm_ratios",
                                           "ratio_bound", "cofactors")})
    ok = rep["ok"] and rep["residual_base"] < 1e-12
    if "corona_data" in summary:
        ok = ok and summary["corona_data"]["ok"]
    rows = [(j + 1, c, r, rep["ratio_bound"]) for j, (c, r) in enumerate(zip(rep["cofactors"], rep["norm_ratios"]))]
    return summary, ["j", "restricted_solution", "norm_ratio", "ratio_bound"], rows, _status(ok, flags)


def _zeros(conf) -> ZeroSet:
    pts, mult = read_zeros(conf["zeros"])
    return ZeroSet(pts, mult)


def cmd_blaschke(conf):
    k = int(conf["k"])
    if conf.get("zeros") is None:
        cs = class_separation()
        rows = [(s, J, v) for s, rep in cs.items() for J, v in zip(rep["J"], rep["partial_sums"])]
        summary = {"example": "a_j = 1 - 1/j", "verdicts": {str(s): rep["verdict"] for s, rep in cs.items()},
                   "partial_sums": {str(s): rep["partial_sums"] for s, rep in cs.items()}}
        ok = cs[1]["verdict"] == "divergent" and cs[2]["verdict"] == "convergent"
        return summary, ["s", "J", "partial_sum"], rows, _status(ok)
    X = _zeros(conf)
    s_low, s_high = 1, k + 1
    p_low, p_high = blaschke_pairing(X, s_low), blaschke_pairing(X, s_high)
    rows, ok = [], p_high <= p_low
    for a, m in zip(X.points, X.multiplicities):
        t = 1.0 - abs(a) ** 2
        ff = fiber_form_integral(k, t)
        ok = ok and ff["within_bound"]
        rows.append((a.real, a.imag, m, t, m * t**s_low, m * t**s_high, ff["value"], ff["bound"]))
    summary = {"k": k, "n_zeros": len(X), "total_multiplicity": int(np.sum(X.multiplicities)),
               f"pairing_s{s_low}": p_low, f"pairing_s{s_high}": p_high,
               "monotone_in_s": p_high <= p_low,
               "fiber_form_ratio": (2 * k + 1) / (k + 1), "fiber_form_bound_ratio": 2.0}
    header = ["re", "im", "multiplicity", "depth", f"term_s{s_low}", f"term_s{s_high}", "fiber_form", "fiber_bound"]
    return summary, header, rows, _status(ok)


def cmd_lift_zeros(conf):
    k = int(conf["k"])
    X = _zeros(conf)
    rep = lifted_zero_blaschke(X, k)
    vk = volume_unit_ball(k)
    rows = [(a.real, a.imag, m, m * vk * (1 - abs(a) ** 2) ** (k + 1) / (k + 1), m * (1 - abs(a) ** 2) ** (k + 1))
            for a, m in zip(X.points, X.multiplicities)]
    return rep, ["re", "im", "multiplicity", "fiber_mass", "base_term"], rows, _status(rep["rel_dev"] < 1e-12)


COMMANDS = {
    "kernel-identity": cmd_kernel_identity, "subordination": cmd_subordination, "surface": cmd_surface,
    "shell": cmd_shell, "check-carleson": cmd_check_carleson, "hg-check": cmd_hg_check,
    "interp": cmd_interp, "corona": cmd_corona, "blaschke": cmd_blaschke, "lift-zeros": cmd_lift_zeros,
}


def _echo_config(conf: dict) -> dict:
    skip = {"domain_obj", "out", "workers", "config", "command"}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in conf.items() if k not in skip}


def run(conf: dict) -> tuple[int, dict]:
    """Dispatch one resolved configuration; write reports when ``out`` is set."""
    t0 = time.perf_counter()
    summary, header, rows, status = COMMANDS[conf["command"]](conf)
    report = {"command": conf["command"], "status": status, "config": _echo_config(conf), "result": summary}
    if conf.get("out"):
        out = Path(conf["out"])
        out.mkdir(parents=True, exist_ok=True)
        write_json(out / "summary.json", report)
        write_csv(out / "detail.csv", header, rows)
        write_json(out / "metadata.json", {
            "elapsed_s": time.perf_counter() - t0, "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "workers": int(conf.get("workers", 1)), "version": __version__,
            "python": platform.python_version(), "numpy": np.__version__, "argv": sys.argv[1:]})
    return EXIT[status], report


def _human(report: dict) -> str:
    lines = [f"{report['command']}: {report['status'].upper()}"]
    for key, val in report["result"].items():
        if isinstance(val, (int, float, str, bool)) or val is None:
            lines.append(f"  {key} = {val}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        conf = resolve_config(args)
        code, report = run(conf)
    except (SubordLabError, ValueError, ArithmeticError, NotImplementedError) as exc:
        print(f"subord-lab {args.command}: error: {exc}", file=sys.stderr)
        return 1
    print(_human(report))
    if not conf.get("out"):
        sys.stdout.write(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
