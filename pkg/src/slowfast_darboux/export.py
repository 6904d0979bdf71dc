"""
Output writers: CSV with declared headers, versioned JSON and SVG 1.1.

Every file carries the hash of the configuration that produced it.  All
writers are deterministic: floats are printed with ``repr`` precision and
dictionary keys are sorted.
"""

import csv
import hashlib
import json
import math

import numpy as np

SCHEMA = "slowfast-darboux/1"


def config_hash(config):
    """SHA-256 of the canonical JSON form of ``config`` (first 16 hex digits)."""
    text = json.dumps(_plain(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _plain(obj):
    """Convert numpy scalars/arrays and complex numbers to JSON types."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _plain(obj.real), "im": _plain(obj.imag)}
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def write_json(path, payload, chash, kind):
    doc = {"schema": SCHEMA, "kind": kind, "config_hash": chash,
           "data": _plain(payload)}
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")
    return path


def read_json(path):
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unexpected schema tag {doc.get('schema')!r}")
    return doc


def write_csv(path, header, rows, chash):
    """CSV with a ``# config_hash=...`` comment line, then the header row."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema={SCHEMA} config_hash={chash}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(v) for v in r])
    return path


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v))
    if v is None:
        return ""
    return v


def read_csv(path):
    """Returns ``(header, rows)`` with string cells."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[0], rows[1:]


class SvgCanvas:
    """
    Minimal SVG 1.1 writer for polylines and markers in data coordinates.

    Parameters
    ----------
    bbox : (x_min, x_max, y_min, y_max)
    size : (width, height) in pixels
    """

    COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
              "#8c564b", "#17becf", "#7f7f7f")

    def __init__(self, bbox, size=(600, 600), title=""):
        x0, x1, y0, y1 = map(float, bbox)
        if not (x1 > x0 and y1 > y0):
            raise ValueError("empty bounding box")
        self.bbox = (x0, x1, y0, y1)
        self.w, self.h = size
        self.items = []
        self.title = title

    def _xy(self, x, y):
        x0, x1, y0, y1 = self.bbox
        px = (x - x0) / (x1 - x0) * self.w
        py = (y1 - y) / (y1 - y0) * self.h
        return px, py

    def polyline(self, x, y, color=None, width=1.0, label=""):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        ok = np.isfinite(x) & np.isfinite(y)
        if ok.sum() < 2:
            return
        pts = " ".join("%.2f,%.2f" % self._xy(a, b) for a, b in zip(x[ok], y[ok]))
        color = color or self.COLORS[len(self.items) % len(self.COLORS)]
        t = f"<title>{_esc(label)}</title>" if label else ""
        self.items.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="{width}" '
            f'points="{pts}">{t}</polyline>')

    def curve(self, z, **kw):
        """Polyline of complex samples in the (Re, Im) plane."""
        z = np.asarray(z, dtype=complex)
        self.polyline(z.real, z.imag, **kw)

    def marker(self, x, y, color="#000000", r=3.0, label=""):
        px, py = self._xy(float(x), float(y))
        t = f"<title>{_esc(label)}</title>" if label else ""
        self.items.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{r}" '
                          f'fill="{color}">{t}</circle>')

    def text(self, x, y, s, size=12):
        px, py = self._xy(float(x), float(y))
        self.items.append(f'<text x="{px:.2f}" y="{py:.2f}" font-size="{size}">'
                          f'{_esc(s)}</text>')

    def render(self, chash=""):
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{self.w}" height="{self.h}" '
                f'viewBox="0 0 {self.w} {self.h}">\n')
        meta = f"<desc>schema={SCHEMA} config_hash={chash}</desc>\n"
        title = f"<title>{_esc(self.title)}</title>\n" if self.title else ""
        bg = f'<rect width="{self.w}" height="{self.h}" fill="white"/>\n'
        return head + title + meta + bg + "\n".join(self.items) + "\n</svg>\n"

    def save(self, path, chash=""):
        with open(path, "w") as fh:
            fh.write(self.render(chash))
        return path


def bbox_of(arrays, pad=0.05):
    """Padded bounding box of a list of complex sample arrays."""
    z = np.concatenate([np.asarray(a, dtype=complex).ravel() for a in arrays])
    z = z[np.isfinite(z)]
    x0, x1 = z.real.min(), z.real.max()
    y0, y1 = z.imag.min(), z.imag.max()
    dx = max(x1 - x0, 1e-9) * pad
    dy = max(y1 - y0, 1e-9) * pad
    return x0 - dx, x1 + dx, y0 - dy, y1 + dy


def _esc(s):
    return (str(s).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))
