"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line."""
import itertools
import math
import time

import numpy as np
import pytest

from subord_lab.blaschke import ZeroSet, class_separation, fiber_form_integral, lifted_zero_blaschke
from subord_lab.carleson import DiscreteMeasure, lift_equivalence_check
from subord_lab.cli import main
from subord_lab.corona import corona_transport, lifted_bezout, parse_polynomial
from subord_lab.domain import unit_ball, unit_disc
from subord_lab.functions import Polynomial
from subord_lab.interp import PointSequence, correspondence_check, dual_system, gram_matrix, interpolation_constant
from subord_lab.io import write_points_csv
from subord_lab.kernels import kernel_identity_check, random_ball_pairs
from subord_lab.measures import bergman_norm, hardy_norm, shell_volume_rate, subordination_ratio, surface_integral
from subord_lab.polydisc import PolydiscFamily, window_surface_measure, window_weighted_volume
from subord_lab.quadrature import QuadSpec
from subord_lab.spaces import Bergman, Hardy, volume_unit_ball

LIFT_RATIO_BOUND = (1 / 64, 64)


def _multi_indices(n, max_degree):
    return [a for a in itertools.product(range(max_degree + 1), repeat=n) if sum(a) <= max_degree]


def test_criterion_1_kernel_identity(acceptance):
    t0 = time.perf_counter()
    worst, consts = 0.0, {}
    for n, k in itertools.product((1, 2, 3), (2, 3)):
        rep = kernel_identity_check(n, k, random_ball_pairs(n, 50, seed=100 * n + k))
        worst = max(worst, rep["max_rel_dev"])
        consts[(n, k)] = rep["c_hat"]
    disc = kernel_identity_check(1, 1, random_ball_pairs(1, 50, seed=1))
    elapsed = time.perf_counter() - t0
    ok = (worst < 1e-12 and all(abs(c - 2) < 1e-12 for c in consts.values())
          and abs(disc["c_hat"] - 2 * math.pi) < 1e-12 and disc["max_rel_dev"] < 1e-12 and elapsed < 1.0)
    acceptance(1, ok, f"max_rel_dev={worst:.2e} c(k>=2)=2 c(1)={disc['c_hat']:.15g} time={elapsed:.2f}s")
    assert ok


def test_criterion_2_subordination_ratio(acceptance):
    t0 = time.perf_counter()
    spread = 0.0
    for n, k in itertools.product((1, 2, 3), (1, 2, 3)):
        spread = max(spread, subordination_ratio(_multi_indices(n, 6), n, k)["spread"])
    q = QuadSpec(seed=2, mc_samples=10**6)
    worst = 0.0
    for n, k in ((1, 1), (1, 2), (2, 1)):
        for r in subordination_ratio(_multi_indices(n, 6), n, k)["rows"]:
            f = Polynomial.monomial(tuple(r["alpha"]))
            h = hardy_norm(f.lift(k), 2, unit_ball(n + k), q).value ** 2
            b = bergman_norm(f, 2, k - 1, unit_ball(n), q).value ** 2
            worst = max(worst, abs(h / r["hardy"] - 1), abs(b / r["bergman"] - 1))
    elapsed = time.perf_counter() - t0
    ok = spread < 1e-12 and worst < 2e-3 and elapsed < 60
    acceptance(2, ok, f"ratio_spread={spread:.2e} quad_rel_err={worst:.2e} (10^6 samples) time={elapsed:.1f}s")
    assert ok


def test_criterion_3_shell_and_surface(acceptance):
    t = 0.5
    etas = [0.1 * 2.0**-j for j in range(6)]
    halving = []
    exact_k1 = max(abs(shell_volume_rate(1, t, e) - math.pi) for e in etas)
    for k in (2, 3, 4):
        target = k * volume_unit_ball(k) * t ** (k - 1)
        err = [abs(shell_volume_rate(k, t, e) - target) for e in etas]
        halving += [a / b for a, b in zip(err, err[1:])]
    q = QuadSpec(seed=3, mc_samples=2**16)
    one = lambda z: np.ones(z.shape[:-1])
    co = surface_integral(unit_ball(2), one, "coarea", q).value
    pa = surface_integral(unit_ball(2), one, "reciprocal", q).value
    rel = abs(co / (2 * math.pi**2) - 1)
    quarter = abs(pa / co / 0.25 - 1)
    ok = min(halving) >= 1.8 and max(halving) <= 2.2 and exact_k1 < 1e-12 and rel < 1e-3 and quarter < 1e-3
    acceptance(3, ok, f"halving in [{min(halving):.3f},{max(halving):.3f}] S^3 rel_err={rel:.1e} "
                      f"reciprocal/coarea={pa / co:.6f}")
    assert ok


def _radial(depths, masses, angle=0.0):
    return DiscreteMeasure((1 - np.asarray(depths)) * np.exp(1j * angle), masses)


def carleson_corpus():
    """Five Carleson and five non-Carleson atomic measures on the disc, each
    at least a factor 10 away from the classification threshold."""
    d = 2.0 ** -np.arange(1, 21)
    ring = np.exp(2j * np.pi * np.arange(32) / 32)
    rr = (np.arange(10) + 0.5) / 10
    grid = (rr[:, None] * ring[None, :]).ravel()
    area = np.full(grid.size, np.pi / grid.size)
    return {
        "atom_origin": (DiscreteMeasure([0j], [1.0]), True),
        "radial_dyadic_sq": (_radial(d, d**2), True),
        "area_sample": (DiscreteMeasure(grid, area), True),
        "radial_dyadic_sq_x7": (_radial(d, 7 * d**2, 1.0), True),
        "ring_sq": (DiscreteMeasure(0.99 * ring, np.full(32, 1e-4)), True),
        "heavy_atom": (_radial([1e-3], [1.0]), False),
        "radial_dyadic_lin": (_radial(d, d), False),
        "radial_decimal_lin": (_radial(10.0 ** -np.arange(1, 8), 10.0 ** -np.arange(1, 8), 2.0), False),
        "heavy_on_area": (DiscreteMeasure(np.r_[grid, (1 - 1e-4) * np.exp(1j * np.pi / 3)], np.r_[area, 0.1]),
                          False),
        "ring_lin": (DiscreteMeasure((1 - 1e-4) * ring, np.full(32, 1e-2)), False),
    }


def test_criterion_4_carleson_lift(acceptance):
    t0 = time.perf_counter()
    fam = PolydiscFamily(unit_disc())
    q = QuadSpec(seed=11, mc_samples=2**16)
    lo, hi = LIFT_RATIO_BOUND
    ratios, bad = [], []
    for name, (mu, is_carleson) in carleson_corpus().items():
        rep = lift_equivalence_check(mu, 1, fam, q)
        ratios.append(rep["ratio"])
        if not (rep["agree"] and rep["base_carleson"] == is_carleson and lo <= rep["ratio"] <= hi):
            bad.append(name)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    acceptance(4, ok, f"10 measures classified identically, lifted/base ratio in "
                      f"[{min(ratios):.3f},{max(ratios):.3f}] within bound [1/64,64] time={elapsed:.0f}s"
               + (f" mismatches={bad}" if bad else ""))
    assert ok


def test_criterion_5_window_scaling(acceptance):
    B2 = unit_ball(2)
    n = 2
    spreads = []
    sig = []
    for j in range(3, 9):
        d = 2.0**-j
        sig.append(window_surface_measure(B2, [1 - d, 0.0]).value / d**n)
    spreads.append(max(sig) / min(sig))
    for k in (1, 2, 3):
        vol = [window_weighted_volume(B2, k, [1 - 2.0**-j, 0.0]).value / (2.0**-j) ** (n + k) for j in range(3, 9)]
        spreads.append(max(vol) / min(vol))
    ok = max(spreads) < 4
    acceptance(5, ok, "band widths sigma={:.2f} m_0={:.2f} m_1={:.2f} m_2={:.2f} (< 4)".format(*spreads))
    assert ok


def test_criterion_6_interpolation(acceptance):
    worst = 0.0
    for n, k in itertools.product((1, 2, 3), (1, 2, 3)):
        rng = np.random.Generator(np.random.Philox(key=[60 + n, k]))
        g = rng.standard_normal((8, 2 * n))
        z = g[:, :n] + 1j * g[:, n:]
        z *= (rng.uniform(0.05, 0.9, 8) / np.linalg.norm(z, axis=1))[:, None]
        rep = correspondence_check(PointSequence(z, Bergman(n, k - 1)))
        worst = max(worst, rep["gram_max_abs_diff"], rep["dual_const_diff"], rep["interp_const_diff"])
    two = PointSequence([0.0, 0.6], Hardy(1))
    off = gram_matrix(two).gram[0, 1].real
    ic = interpolation_constant(two)
    ok = worst < 1e-12 and abs(off - 0.8) < 1e-12 and abs(ic - math.sqrt(5)) < 1e-12
    acceptance(6, ok, f"max Gram/dual/interp difference={worst:.1e} off-diagonal={off:.15g} "
                      f"interp={ic:.15g} dual={dual_system(two).constant:.6g}")
    assert ok


def test_criterion_7_corona(acceptance):
    worst, ok = 0.0, True
    cases = [(["z", "(2-z)/2"], "1"), (["z", "(2-z)/2"], "1 + z**2"), (["z**2", "1 - z", "z + 3"], "2 - z")]
    for (gens, f_text), k in itertools.product(cases, (1, 2, 3)):
        f = parse_polynomial(f_text)
        F, G, Ft = lifted_bezout([parse_polynomial(s) for s in gens], f, k)
        rep = corona_transport(F, G, Ft, f, k)
        worst = max(worst, rep["residual_base"])
        ok = ok and rep["ok"] and rep["n_grid"] == 200
    ok = ok and worst < 1e-12
    acceptance(7, ok, f"base residual max={worst:.1e} on 200 points, norm bound 1/sqrt(c(k)) held for k=1..3")
    assert ok


def test_criterion_8_blaschke(acceptance):
    fiber_err, bound_ok = 0.0, True
    for k in range(1, 7):
        for t in (0.01, 0.3, 1.0):
            rep = fiber_form_integral(k, t)
            target = (2 * k + 1) / (k + 1) * volume_unit_ball(k) * t**k
            fiber_err = max(fiber_err, abs(rep["value"] / target - 1))
            bound_ok = bound_ok and rep["value"] <= 2 * volume_unit_ball(k) * t**k
    rng = np.random.Generator(np.random.Philox(key=[88, 0]))
    lift_err = 0.0
    for i in range(20):
        m = int(rng.integers(1, 40))
        z = np.sqrt(rng.uniform(0, 0.995, m)) * np.exp(2j * np.pi * rng.uniform(size=m))
        k = 1 + i % 4
        lift_err = max(lift_err, lifted_zero_blaschke(ZeroSet(z, rng.integers(1, 4, m)), k)["rel_dev"])
    sep = class_separation()
    sep_ok = sep[1]["verdict"] == "divergent" and sep[2]["verdict"] == "convergent"
    ok = fiber_err < 1e-12 and bound_ok and lift_err < 1e-12 and sep_ok
    acceptance(8, ok, f"fiber rel_err={fiber_err:.1e} bound held={bound_ok} lifted ratio rel_dev={lift_err:.1e} "
                      f"s=1 {sep[1]['verdict']} s=2 {sep[2]['verdict']}")
    assert ok


def test_criterion_9_determinism(acceptance, tmp_path):
    atoms = tmp_path / "atoms.csv"
    write_points_csv(atoms, [[0.5 + 0.1j], [0.9]], extra=[0.01, 0.001])
    pts = tmp_path / "points.csv"
    write_points_csv(pts, [[0.0], [0.6], [-0.3j]])
    zeros = tmp_path / "zeros.csv"
    zeros.write_text("re,im,multiplicity\n0.5,0,2\n0,0.3,1\n")
    commands = [
        ["kernel-identity"],
        ["subordination", "--verify", "2", "--mc-samples", "16384"],
        ["surface", "--mc-samples", "16384"],
        ["shell"],
        ["check-carleson", "--measure", str(atoms), "--lift", "--mc-samples", "4096"],
        ["hg-check", "--samples", "50"],
        ["interp", "--points", str(pts), "--space", "bergman:disc:k=1"],
        ["corona", "--samples", "500"],
        ["blaschke"],
        ["lift-zeros", "--zeros", str(zeros)],
    ]
    differing = []
    for argv in commands:
        blobs = []
        for tag, workers in (("a", 1), ("b", 3), ("c", 1)):
            out = tmp_path / f"{argv[0]}_{tag}"
            main([*argv, "--seed", "5", "--workers", str(workers), "--out", str(out)])
            blobs.append((out / "summary.json").read_bytes())
        if len(set(blobs)) != 1:
            differing.append(argv[0])
    ok = not differing
    acceptance(9, ok, f"{len(commands)} subcommands byte-identical across reruns and workers 1/3"
               + (f" differing={differing}" if differing else ""))
    assert ok
