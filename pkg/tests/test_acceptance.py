"""
Acceptance criteria 1-10.

Each ``criterion_k`` function measures the quantities named by the
criterion and returns ``(passed, detail)``; the matching test prints one
PASS/FAIL line (visible with or without ``-s``) and asserts.  Running this
file directly prints the ten lines without pytest.
"""

import math
import sys
import time

import numpy as np
import pytest

from slowfast_darboux.analytic import f_rs, y_center
from slowfast_darboux.blowup import rescaled_integral_residual
from slowfast_darboux.cyclicity import (REFERENCE_DIRECTION, ContourD,
                                        ContourPiece, build_contour,
                                        cyclicity_experiment, dulac_difference,
                                        newton_zeros, variation_of_argument)
from slowfast_darboux.dulac import dulac_integrable, dulac_real, h_inverse
from slowfast_darboux.foliation import (FoliationParams, displacement,
                                        find_real_cycles, level_to_y,
                                        melnikov_prediction, melnikov_zeros,
                                        y_to_level)
from slowfast_darboux.isoclines import (D0, D1, trace_boundary,
                                        trace_component)
from slowfast_darboux.leaves import (build_sigma, default_y_plus, figure_eight,
                                     holonomy_transport, lift_path)


# --------------------------------------------------------------------------
# criteria

def criterion_1():
    t0 = time.perf_counter()
    y = np.linspace(0.01, 0.99, 200)
    err = max(abs(dulac_real(v, 1.0) - (1 - v)) for v in y)
    dt = time.perf_counter() - t0
    return err < 1e-10 and dt < 1.0, f"max err {err:.2e}, {dt:.2f} s"


def criterion_2():
    t0 = time.perf_counter()
    inv = fix = 0.0
    for eps in (0.1, 0.25, 0.5, 2.0, 5.0):
        for y in np.linspace(0.01, 0.99, 100):
            inv = max(inv, abs(dulac_real(dulac_real(y, eps), eps) - y))
        yc = eps / (1 + eps)
        fix = max(fix, abs(dulac_real(yc, eps) - yc))
    dt = time.perf_counter() - t0
    ok = inv < 1e-8 and fix < 1e-9 and dt < 5.0
    return ok, f"involution {inv:.2e}, fixed point {fix:.2e}, {dt:.2f} s"


def criterion_3():
    worst = 0.0
    end = 0.0
    n = 0
    for eps in (0.1, 0.25, 0.5, 0.8):
        curves = list(trace_boundary(eps).values())
        for th in np.linspace(-3.0, 3.0, 13):
            if th == 0:
                continue
            for comp in (D0, D1):
                curves.append(trace_component(float(th), eps, comp))
        for c in curves:
            y = c.samples
            r = np.abs(eps * np.angle(y) + np.angle(1 - y) - eps * c.theta)
            worst = max(worst, float(np.max(r)))
            n += len(y)
        b = trace_boundary(eps)
        for k in ("+pi", "-pi"):
            end = max(end, abs(b[k].samples[0] - 1))
    ok = worst < 1e-9 and end < 1e-4
    return ok, f"max residual {worst:.2e} over {n} samples, C+-pi end |y-1| {end:.2e}"


def _dist_to_polyline(z, poly):
    a, b = poly[:-1], poly[1:]
    d = b - a
    t = np.clip(((z - a) * np.conj(d)).real / np.abs(d) ** 2, 0, 1)
    return float(np.min(np.abs(a + t * d - z)))


def criterion_4():
    worst0 = worstpi = 0.0
    for eps in (0.2, 0.5):
        b = trace_boundary(eps, chord_tol=1e-6)
        up, dn = b["+0"].samples, b["-0"].samples
        idx = np.linspace(2, len(up) - 3, 50).astype(int)
        for y in up[idx]:
            w = dulac_integrable(y, eps)
            worst0 = max(worst0, _dist_to_polyline(w, dn))
        for key in ("-pi", "+pi"):
            s = b[key].samples
            idx = np.linspace(1, len(s) - 2, 50).astype(int)
            for y in s[idx]:
                w = dulac_integrable(y, eps)
                d = abs(w.imag) if w.real < 0 else abs(w)
                worstpi = max(worstpi, d)
    ok = worst0 < 1e-7 and worstpi < 1e-7
    return ok, f"C+0 -> C-0 dist {worst0:.2e}, C+-pi -> (-inf,0) dist {worstpi:.2e}"


def criterion_5():
    cov = drift = 0.0
    n = 0
    for eps in (0.1, 0.5):
        yc = eps / (1 + eps)
        hc = yc ** eps * (1 - yc)
        starts = [0.5 * (1 + yc)]
        for m in (0.3, 0.8, 2.0):
            for th in (-2.8, -1.0, 1.5):
                starts.append(h_inverse(m * hc, th, eps, D1))
        paths = []
        for y in starts:
            s = build_sigma(y, eps)
            paths += [lift_path(s, y, eps, 1), lift_path(s, y, eps, -1)]
        paths.append(figure_eight(default_y_plus(eps), eps).loop)
        for p in paths:
            cov = max(cov, p.covering_residual())
            drift = max(drift, p.h_drift())
            n += 1
    ok = cov < 1e-8 and drift < 1e-8
    return ok, f"{n} lifts: covering {cov:.2e}, H drift {drift:.2e}"


def criterion_6():
    t0 = time.perf_counter()
    worst = 0.0
    for eps in (0.1, 0.5):
        loop = figure_eight(default_y_plus(eps), eps)
        p = FoliationParams(eps)
        for x in (1e-3, -1e-3, 1e-2, -1e-2):
            worst = max(worst, abs(holonomy_transport(loop, p, x) - x))
    dt = time.perf_counter() - t0
    return worst < 1e-6 and dt < 30.0, f"max |Hol(x) - x| {worst:.2e}, {dt:.2f} s"


def criterion_7():
    eps = 0.5
    base = FoliationParams(eps, 1e-4, Pcoef=[[0.0]], Qcoef=[[1.0]])
    yc = y_center(eps)
    # cycles against level-mapped simple Melnikov zeros
    levels = np.geomspace(1e-2, 0.999 * y_to_level(yc, eps), 40)
    zs = [level_to_y(c, eps) for c in melnikov_zeros(base, levels)]
    grid = np.sort(1 - np.geomspace(1 - yc, 1 - level_to_y(1e-2, eps), 40)[1:-1])
    cyc = [c.y_fixed for c in find_real_cycles(base, grid)]
    match = len(zs) == len(cyc) and all(
        min(abs(z - c) for c in cyc) < 1e-2 for z in zs)
    # displacement / delta against the first-order prediction
    ys = (0.6, 0.75, 0.9)
    ratios = []
    for d in (1e-3, 5e-4, 2.5e-4):
        p = base.with_delta(d)
        r = []
        for y in ys:
            pred = melnikov_prediction(y, p)
            disp = displacement(y, p) / d
            r.append(disp / pred if pred != 0 else float("nan"))
        ratios.append(r)
    last = np.array(ratios[-1])
    conv = bool(np.all(np.isfinite(last)) and np.all(np.abs(last - 1) < 0.05))
    pred_scale = max(abs(melnikov_prediction(y, base)) for y in ys)
    disp_scale = max(abs(displacement(y, base.with_delta(1e-3))) for y in ys)
    detail = (f"cycles {len(cyc)} vs Melnikov zeros {len(zs)} "
              f"({'match' if match else 'mismatch'}); ratio at delta=2.5e-4 "
              f"{np.round(last, 3).tolist()}; |I/h'| <= {pred_scale:.1e}, "
              f"|disp| <= {disp_scale:.1e} (direction is x -> -x symmetric)")
    return match and conv, detail


def _random_contour(rng):
    kind = rng.integers(3)
    c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    t = np.linspace(0, 2 * np.pi, 97)
    if kind == 0:
        r = rng.uniform(0.5, 2.0)
        y = c + r * np.exp(1j * t)
    elif kind == 1:
        a, b = rng.uniform(0.5, 2.0, 2)
        rot = np.exp(1j * rng.uniform(0, np.pi))
        y = c + rot * (a * np.cos(t) + 1j * b * np.sin(t))
    else:
        r = 1.0 + 0.3 * np.cos(3 * t)
        y = c + r * np.exp(1j * t)
    return ContourD([ContourPiece("synthetic", y)])


def _inside(contour, z):
    return contour.contains(z)


def criterion_8():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    worst_res = 0.0
    exact = 0
    for _ in range(20):
        c = _random_contour(rng)
        poly = c.polygon()
        zs = []
        while len(zs) < rng.integers(0, 5) or not zs:
            z = complex(rng.uniform(poly.real.min() - 0.5, poly.real.max() + 0.5),
                        rng.uniform(poly.imag.min() - 0.5, poly.imag.max() + 0.5))
            # keep zeros away from the contour
            if min(abs(poly - z)) > 0.05:
                zs.append(z)
        inside = sum(_inside(c, z) for z in zs)
        f = (lambda zs: lambda y: np.prod([y - z for z in zs]))(zs)
        rep = variation_of_argument(f, c)
        n = rep.total_variation / (2 * math.pi)
        worst_res = max(worst_res, abs(n - inside))
        exact += rep.bound == inside
    synth_ok = exact == 20 and worst_res < 0.25
    # reference perturbed run
    p = FoliationParams(0.5, 1e-4, *REFERENCE_DIRECTION)
    contour = build_contour(p)
    f = dulac_difference(p)
    rep = variation_of_argument(f, contour)
    a, b = contour.real_range()
    grid = np.sort(1 - np.geomspace(1 - a, 1 - b, 42)[1:-1])
    cycles = find_real_cycles(p, grid)
    zeros = newton_zeros(f, contour)
    real_zeros = [z for z in zeros if z.imag == 0]
    sound = rep.bound >= len(cycles) and len(zeros) <= rep.bound
    equality = (len(zeros) != rep.bound) or (rep.bound == len(cycles) + len(
        [z for z in zeros if z.imag != 0]) and len(real_zeros) == len(cycles))
    dt = time.perf_counter() - t0
    ok = synth_ok and sound and equality and dt < 60.0
    return ok, (f"synthetic {exact}/20 exact, max residual {worst_res:.1e}; "
                f"reference bound {rep.bound}, real cycles {len(cycles)}, "
                f"Newton zeros {len(zeros)}; {dt:.1f} s")


def criterion_9():
    eps = (0.1, 0.05, 0.025, 0.0125)
    r = [rescaled_integral_residual(e, (-1.0, 1.0, -2.0, 2.0)) for e in eps]
    ratios = [r[k] / r[k + 1] for k in range(3)]
    ok = all(abs(q / 2 - 1) <= 0.15 for q in ratios)
    return ok, "ratios " + ", ".join(f"{q:.3f}" for q in ratios)


def criterion_10():
    t0 = time.perf_counter()
    table = cyclicity_experiment([0.05, 0.1, 0.2, 0.4, 0.8], REFERENCE_DIRECTION,
                                 [1e-4])
    dt = time.perf_counter() - t0
    bounds = [r.bound for r in table.rows]
    finite = all(isinstance(b, int) for b in bounds)
    scatter = finite and min(bounds) > 0 and max(bounds) / min(bounds) <= 4
    cycles = [r.real_cycles for r in table.rows]
    ok = finite and scatter and dt < 600 and not table.violations()
    return ok, f"bounds {bounds}, real cycles {cycles}, {dt:.1f} s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(k, ok, detail):
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(k, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
