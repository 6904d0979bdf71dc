"""
Command-line front end.

Usage::

    python -m slowfast_darboux <command> config.yaml [--out DIR]

Commands: isoclines, dulac, portrait, cycles, bound, blowup.  The YAML
config is validated before any computation.  Exit codes: 0 success,
2 configuration error, 3 numerical failure; diagnostics are printed to
stderr as one JSON object.
"""

import argparse
from dataclasses import dataclass, field
import json
import math
import os
import sys

import numpy as np
import yaml

from . import blowup as bl
from . import cyclicity as cy
from . import export as ex
from .dulac import dulac_integrable, dulac_real, h_inverse
from .errors import ConfigError, DarbouxError
from .foliation import (FoliationParams, displacement, find_real_cycles,
                        integrate_orbit, level_to_y, melnikov_prediction)
from .isoclines import D0, D1, trace_boundary, trace_component, trace_singular_curve

COMMANDS = ("isoclines", "dulac", "portrait", "cycles", "bound", "blowup")

DEFAULTS = {
    "eps": [0.5],
    "delta": [],
    "direction": {"P": [[0.0, 1.0, -0.5]], "Q": [[0.0]]},
    "tolerances": {"cycle": 1e-10, "zero_on_boundary": 1e-12},
    "r_max": 10.0,
    "output": {"dir": "out", "formats": ["csv", "json", "svg"]},
    "isoclines": {"thetas": [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]},
    "dulac": {"n_real": 50, "n_modulus": 6, "n_theta": 6},
    "portrait": {"n_orbits": 6, "turns": 3},
    "cycles": {"n_grid": 40},
    "bound": {"n_grid": 40},
    "blowup": {"eps": [0.1, 0.05, 0.025, 0.0125],
               "region": [-1.0, 1.0, -2.0, 2.0], "n": 201},
}

FORMATS = ("csv", "json", "svg")


@dataclass
class ExperimentConfig:
    """Validated experiment configuration (see ``DEFAULTS`` for keys)."""

    eps: list
    delta: list
    Pcoef: list
    Qcoef: list
    tolerances: dict
    r_max: float
    out_dir: str
    formats: list
    sections: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def hash(self):
        return ex.config_hash(self.raw)

    def params(self, eps, delta):
        return FoliationParams(eps, delta, self.Pcoef, self.Qcoef)


def _merge(base, over):
    out = dict(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def _yaml_float(x):
    # PyYAML reads exponent forms without a dot (``1e-4``) as strings
    if isinstance(x, str):
        try:
            return float(x)
        except ValueError:
            return x
    return x


def _num_list(v, name, positive=False, allow_zero=True):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        v = [v]
    if not isinstance(v, list):
        raise ConfigError(f"{name} must be a number or a list of numbers")
    out = []
    for x in v:
        x = _yaml_float(x)
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ConfigError(f"{name} entries must be numbers, got {x!r}")
        x = float(x)
        if not math.isfinite(x):
            raise ConfigError(f"{name} entries must be finite")
        if positive and (x < 0 or (x == 0 and not allow_zero)):
            raise ConfigError(f"{name} entries must be positive, got {x}")
        out.append(x)
    return out


def _grid(v, name):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        v = [[v]]
    if not isinstance(v, list) or not v:
        raise ConfigError(f"{name} must be a nested list of coefficients")
    rows = [r if isinstance(r, list) else [r] for r in v]
    for r in rows:
        _num_list(r, name)
    width = max(len(r) for r in rows)
    return [[float(x) for x in r] + [0.0] * (width - len(r)) for r in rows]


def load_config(source):
    """
    Parse and validate a config (path, YAML text or dict).

    Raises
    ------
    ConfigError
        On unreadable files, YAML syntax errors and schema violations.
    """
    if isinstance(source, dict):
        user = source
    else:
        text = source
        if isinstance(source, str) and os.path.exists(source):
            try:
                with open(source) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
        elif isinstance(source, str) and source.endswith((".yaml", ".yml")):
            raise ConfigError(f"config file not found: {source}")
        try:
            user = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"YAML syntax error: {exc}") from None
        if user is None:
            user = {}
    if not isinstance(user, dict):
        raise ConfigError("config must be a mapping")
    unknown = set(user) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = _merge(DEFAULTS, user)
    eps = _num_list(cfg["eps"], "eps", positive=True, allow_zero=False)
    if not eps:
        raise ConfigError("eps list is empty")
    delta = _num_list(cfg["delta"], "delta", positive=True)
    d = cfg["direction"]
    if not isinstance(d, dict) or set(d) - {"P", "Q"}:
        raise ConfigError("direction must be a mapping with keys P and Q")
    P = _grid(d.get("P", [[0.0]]), "direction.P")
    Q = _grid(d.get("Q", [[0.0]]), "direction.Q")
    tol = cfg["tolerances"]
    if not isinstance(tol, dict):
        raise ConfigError("tolerances must be a mapping")
    tol = {k: _yaml_float(v) for k, v in tol.items()}
    for k, v in tol.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
            raise ConfigError(f"tolerance {k} must be positive, got {v!r}")
    r_max = _yaml_float(cfg["r_max"])
    if isinstance(r_max, bool) or not isinstance(r_max, (int, float)) or r_max <= 1:
        raise ConfigError("r_max must be a number > 1")
    out = cfg["output"]
    if not isinstance(out, dict) or not isinstance(out.get("dir"), str):
        raise ConfigError("output.dir must be a string")
    formats = out.get("formats", list(FORMATS))
    if not isinstance(formats, list) or set(formats) - set(FORMATS):
        raise ConfigError(f"output.formats must be a subset of {list(FORMATS)}")
    sections = {k: cfg[k] for k in COMMANDS if k in cfg}
    for k, v in sections.items():
        if not isinstance(v, dict):
            raise ConfigError(f"section {k} must be a mapping")
    _num_list(sections["isoclines"]["thetas"], "isoclines.thetas")
    _num_list(sections["blowup"]["eps"], "blowup.eps", positive=True,
              allow_zero=False)
    reg = _num_list(sections["blowup"]["region"], "blowup.region")
    if len(reg) != 4:
        raise ConfigError("blowup.region must be [x_min, x_max, y_min, y_max]")
    turns = sections["portrait"]["turns"]
    if isinstance(turns, bool) or not isinstance(turns, int) or turns < 1:
        raise ConfigError("portrait.turns must be a positive integer")
    for sec, key in (("dulac", "n_real"), ("dulac", "n_modulus"),
                     ("dulac", "n_theta"), ("portrait", "n_orbits"),
                     ("cycles", "n_grid"),
                     ("bound", "n_grid"), ("blowup", "n")):
        v = sections[sec][key]
        if isinstance(v, bool) or not isinstance(v, int) or v < 2:
            raise ConfigError(f"{sec}.{key} must be an integer >= 2")
    return ExperimentConfig(eps, delta, P, Q, dict(tol), float(r_max),
                            out["dir"], list(formats), sections, cfg)


# --------------------------------------------------------------------------
# commands

class _Writer:
    def __init__(self, config, cmd, out_dir=None):
        self.cfg = config
        self.cmd = cmd
        self.dir = out_dir or config.out_dir
        os.makedirs(self.dir, exist_ok=True)
        self.files = []

    def path(self, name, ext):
        return os.path.join(self.dir, f"{self.cmd}_{name}.{ext}")

    def csv(self, name, header, rows):
        if "csv" in self.cfg.formats:
            self.files.append(ex.write_csv(self.path(name, "csv"), header, rows,
                                           self.cfg.hash))

    def json(self, name, payload):
        if "json" in self.cfg.formats:
            self.files.append(ex.write_json(self.path(name, "json"), payload,
                                            self.cfg.hash, f"{self.cmd}/{name}"))

    def svg(self, name, canvas):
        if "svg" in self.cfg.formats:
            self.files.append(canvas.save(self.path(name, "svg"), self.cfg.hash))


def _tag(x):
    return ("%g" % x).replace(".", "p").replace("-", "m")


def cmd_isoclines(config, out_dir=None):
    """Boundary curves, a fan of isoclines and the singular curve per eps."""
    w = _Writer(config, "isoclines", out_dir)
    thetas = [float(t) for t in config.sections["isoclines"]["thetas"]]
    for eps in config.eps:
        curves = dict((c.name, c) for c in trace_boundary(eps, config.r_max).values())
        for t in thetas:
            if abs(t) >= math.pi:
                continue
            for comp in (D1, D0):
                c = trace_component(t, eps, comp, config.r_max,
                                    name=f"C_{t:g}_{comp}")
                curves[c.name] = c
        rows, canvas_items = [], []
        for name, c in curves.items():
            for phi, rho, re, im in c.rows():
                rows.append([name, eps, c.theta, c.component, phi, rho, re, im])
            canvas_items.append((name, c.samples))
        sing = trace_singular_curve(eps)
        for k, lobe in enumerate(sing.lobes):
            name = f"singular_{k}"
            for z in lobe:
                rows.append([name, eps, "", "", "", abs(z), z.real, z.imag])
            canvas_items.append((name, lobe))
        w.csv(f"eps{_tag(eps)}",
              ["curve", "eps", "theta", "component", "phi", "rho", "re", "im"], rows)
        svg = ex.SvgCanvas((-2.0, 3.0, -2.5, 2.5), title=f"isoclines eps={eps:g}")
        for name, z in canvas_items:
            width = 2.0 if name.startswith("C") and "_" not in name else 1.0
            svg.curve(z, label=name, width=width)
        svg.marker(eps / (1 + eps), 0.0, label="center")
        svg.marker(1.0, 0.0, color="#d62728", label="saddle")
        w.svg(f"eps{_tag(eps)}", svg)
        w.json(f"eps{_tag(eps)}", {
            "eps": eps,
            "max_isocline_residual": max(c.residual() for c in curves.values()),
            "curves": sorted(curves),
        })
    return w.files


def cmd_dulac(config, out_dir=None):
    """Real and complex Dulac tables with involution residuals."""
    w = _Writer(config, "dulac", out_dir)
    sec = config.sections["dulac"]
    report = []
    for eps in config.eps:
        yc = eps / (1 + eps)
        rows = []
        res_inv = 0.0
        for y in np.linspace(0.01, 0.99, sec["n_real"]):
            d = dulac_real(y, eps)
            r = abs(dulac_real(d, eps) - y)
            res_inv = max(res_inv, r)
            rows.append(["real", y, 0.0, d, 0.0, r])
        res_c = None
        if eps < 1:
            res_c = 0.0
            hc = yc ** eps * (1 - yc)
            for m in np.linspace(0.2, 0.9, sec["n_modulus"]) * hc:
                for t in np.linspace(-2.9, 2.9, sec["n_theta"]):
                    if abs(t) < 1e-12:
                        continue
                    y = h_inverse(m, t, eps, D1)
                    d = dulac_integrable(y, eps)
                    r = abs(dulac_integrable(d, eps) - y)
                    res_c = max(res_c, r)
                    rows.append(["complex", y.real, y.imag, d.real, d.imag, r])
        fixed = abs(dulac_real(yc, eps) - yc)
        w.csv(f"eps{_tag(eps)}",
              ["grid", "y_re", "y_im", "D_re", "D_im", "involution_residual"],
              rows)
        report.append({"eps": eps, "real_involution_residual": res_inv,
                       "complex_involution_residual": res_c,
                       "fixed_point_residual": fixed})
    w.json("report", report)
    return w.files


def cmd_portrait(config, out_dir=None):
    """Integrable ovals and perturbed spirals in the (x, y) plane."""
    w = _Writer(config, "portrait", out_dir)
    sec = config.sections["portrait"]
    for eps in config.eps:
        yc = eps / (1 + eps)
        starts = np.linspace(yc, 1.0, sec["n_orbits"] + 2)[1:-1]
        svg = ex.SvgCanvas((-1.1, 1.1, -0.05, 1.05), title=f"portrait eps={eps:g}")
        xs = np.linspace(-1.0, 1.0, 201)
        svg.polyline(xs, xs ** 2, color="#7f7f7f", label="parabola")
        svg.polyline([-1.1, 1.1], [1.0, 1.0], color="#7f7f7f", label="y = 1")
        rows = []
        for delta in [0.0] + list(config.delta):
            p = config.params(eps, delta)
            turns = 1 if delta == 0 else sec["turns"]
            for y0 in starts:
                try:
                    orb = integrate_orbit((0.0, y0), p, t_max=1e4,
                                          section_x=0.0, n_cross=2 * turns)
                except DarbouxError:
                    continue
                name = f"delta{delta:g}_y{y0:.4f}"
                svg.polyline(orb.x, orb.y, width=0.8, label=name,
                             color="#1f77b4" if delta == 0 else "#d62728")
                for t, x, y in zip(orb.t, orb.x, orb.y):
                    rows.append([eps, delta, y0, t, x, y])
        svg.marker(0.0, yc, label="center")
        w.svg(f"eps{_tag(eps)}", svg)
        w.csv(f"eps{_tag(eps)}", ["eps", "delta", "y0", "t", "x", "y"], rows)
    return w.files


def cmd_cycles(config, out_dir=None):
    """Displacement tables, cycle records and the Melnikov comparison."""
    w = _Writer(config, "cycles", out_dir)
    n = config.sections["cycles"]["n_grid"]
    records = []
    for eps in config.eps:
        for delta in config.delta or [0.0]:
            p = config.params(eps, delta)
            yc = eps / (1 + eps)
            y_hi = level_to_y(cy.truncation_level(eps), eps)
            grid = np.sort(1 - np.geomspace(1 - yc, 1 - y_hi, n + 2)[1:-1])
            rows = []
            for y in grid:
                try:
                    d = displacement(y, p)
                except DarbouxError:
                    d = float("nan")
                try:
                    m = melnikov_prediction(y, p) * delta
                except DarbouxError:
                    m = float("nan")
                rows.append([y, d, m])
            cycles = [] if delta == 0 else find_real_cycles(
                p, grid, tol=config.tolerances.get("cycle", 1e-10))
            w.csv(f"eps{_tag(eps)}_delta{_tag(delta)}",
                  ["y", "displacement", "melnikov_prediction"], rows)
            records.append({"eps": eps, "delta": delta,
                            "cycles": [{"y": c.y_fixed, "multiplicity_hint":
                                        c.multiplicity_hint, "residual": c.residual}
                                       for c in cycles]})
    w.json("records", records)
    return w.files


def cmd_bound(config, out_dir=None):
    """Contour, winding report and the bound-versus-cycles table."""
    w = _Writer(config, "bound", out_dir)
    n_grid = config.sections["bound"]["n_grid"]
    rows, reports = [], []
    for eps in config.eps:
        for delta in config.delta or [0.0]:
            p = config.params(eps, delta)
            row, rep, contour = cy.run_cell(
                p, r_max=config.r_max, n_grid=n_grid,
                tol_zero=config.tolerances.get("zero_on_boundary", cy.TOL_ZERO),
                tol_cycle=config.tolerances.get("cycle", 1e-10))
            rows.append(row)
            if rep is not None:
                reports.append({"eps": eps, "delta": delta, **rep.as_dict()})
                poly = contour.polygon()
                svg = ex.SvgCanvas(ex.bbox_of([poly]),
                                   title=f"contour eps={eps:g} delta={delta:g}")
                for piece in contour.pieces:
                    svg.curve(piece.y, label=piece.name, width=1.5)
                    if contour.symmetric:
                        svg.curve(np.conj(piece.y), label=piece.name + "*",
                                  width=1.5)
                svg.marker(contour.y_focus, 0.0, label="focus")
                w.svg(f"eps{_tag(eps)}_delta{_tag(delta)}", svg)
    table = cy.ExperimentTable(rows)
    cols = table.columns()
    w.csv("table", cols, [[r.as_dict()[c] for c in cols] for r in rows])
    w.json("table", {"rows": table.as_dicts(), "reports": reports})
    if table.violations():
        raise cy.BoundViolation("real cycles exceed the bound", table)
    return w.files


def cmd_blowup(config, out_dir=None):
    """Rescaled-chart residuals and rescaled boundary curves."""
    w = _Writer(config, "blowup", out_dir)
    sec = config.sections["blowup"]
    rows = []
    curves = {}
    for eps in sec["eps"]:
        r = bl.rescaled_integral_residual(eps, sec["region"], sec["n"])
        dmin = bl.min_rescaled_distance(eps) if eps < 1 else None
        rows.append([eps, r, dmin])
        if eps < 1:
            curves[eps] = bl.rescaled_boundary_curves(eps)
    ratios = [rows[k][1] / rows[k + 1][1] for k in range(len(rows) - 1)]
    w.csv("residuals", ["eps", "residual", "min_rescaled_distance"], rows)
    w.json("residuals", {"rows": rows, "ratios": ratios})
    if curves:
        svg = ex.SvgCanvas((-10.0, 10.0, -10.0, 10.0), title="rescaled C+-pi")
        for eps, cs in curves.items():
            for k, z in cs.items():
                svg.curve(z, label=f"C{k} eps={eps:g}")
        svg.marker(0.0, 0.0, label="turning point")
        w.svg("curves", svg)
    return w.files


HANDLERS = {
    "isoclines": cmd_isoclines, "dulac": cmd_dulac, "portrait": cmd_portrait,
    "cycles": cmd_cycles, "bound": cmd_bound, "blowup": cmd_blowup,
}


def main(argv=None):
    ap = argparse.ArgumentParser(prog="python -m slowfast_darboux",
                                 description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("config", help="YAML experiment configuration")
    ap.add_argument("--out", default=None, help="override output.dir")
    args = ap.parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        _diag("config_error", exc)
        return 2
    try:
        files = HANDLERS[args.command](config, args.out)
    except (DarbouxError, ArithmeticError) as exc:
        _diag("numeric_failure", exc)
        return 3
    print(json.dumps({"status": "ok", "command": args.command,
                      "config_hash": config.hash, "files": files}))
    return 0


def _diag(kind, exc):
    sys.stderr.write(json.dumps({"status": kind, "error": type(exc).__name__,
                                 "message": str(exc)}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
