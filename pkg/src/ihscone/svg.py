"""Rank-3 cross-section plots.

The picture is the affine slice {x : pairing(x, ample) = norm(ample)} of the
positive cone, drawn in the chart ample + s*u1 + t*u2 where (u1, u2) is an
integer basis of the ample-orthogonal sublattice. On that slice the cone
boundary is an ellipse, every chamber wall cuts a chord, and every extremal
ray meets the plane in one point. All geometry is computed exactly and only
rendered to fixed-precision decimals at the very end.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .engine import ConeAnalysis, _ample_frame
from .errors import PreconditionError
from .lattice import Lattice, Vec, norm, pairing
from .polyhedra import invert_matrix

_FMT = "%.6f"


def _f(x: float) -> str:
    s = _FMT % x
    return "0.000000" if s == "-0.000000" else s


def _chart(lattice: Lattice, ample: Vec):
    _, _, kernel = _ample_frame(lattice, ample)
    u1, u2 = kernel
    p = [
        [-pairing(lattice, u1, u1), -pairing(lattice, u1, u2)],
        [-pairing(lattice, u2, u1), -pairing(lattice, u2, u2)],
    ]
    return u1, u2, p


def _ellipse_geometry(p, q_ample: int):
    """Center 0 ellipse {v : v^T p v = q_ample}: rotation angle and radii."""
    a, b, c = float(p[0][0]), float(p[0][1]), float(p[1][1])
    theta = 0.5 * math.atan2(2.0 * b, a - c) if (b or a != c) else 0.0
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    lam1 = a * cos_t * cos_t + 2.0 * b * cos_t * sin_t + c * sin_t * sin_t
    lam2 = a * sin_t * sin_t - 2.0 * b * cos_t * sin_t + c * cos_t * cos_t
    rx = math.sqrt(q_ample / lam1)
    ry = math.sqrt(q_ample / lam2)
    return theta, rx, ry


def _wall_chord(lattice: Lattice, ample: Vec, u1: Vec, u2: Vec, p, wall: Vec):
    """Endpoints of {pairing(x, wall) = 0} on the boundary ellipse.

    In chart coordinates the wall is w0 + s*w1 + t*w2 = 0 with w0 > 0; the
    line always crosses the ellipse interior because the wall hyperplane of a
    negative class meets the positive cone.
    """
    w0 = pairing(lattice, ample, wall)
    w1 = pairing(lattice, u1, wall)
    w2 = pairing(lattice, u2, wall)
    qa = norm(lattice, ample)
    # point on the line nearest the origin in the (s, t) chart, direction along it
    den = w1 * w1 + w2 * w2
    base = (Fraction(-w0 * w1, den), Fraction(-w0 * w2, den))
    direction = (Fraction(-w2), Fraction(w1))
    # quadratic A tau^2 + 2 B tau + C = 0 for base + tau*direction on the ellipse
    def form(x, y):
        return p[0][0] * x[0] * y[0] + p[0][1] * (x[0] * y[1] + x[1] * y[0]) + p[1][1] * x[1] * y[1]

    qa_f = Fraction(qa)
    a2 = form(direction, direction)
    b1 = form(base, direction)
    c0 = form(base, base) - qa_f
    disc = b1 * b1 - a2 * c0
    if disc <= 0:
        raise PreconditionError(
            f"wall {wall} does not cross the positive-cone section"
        )
    root = math.sqrt(float(disc))
    taus = ((-float(b1) - root) / float(a2), (-float(b1) + root) / float(a2))
    pts = [
        (float(base[0]) + tau * float(direction[0]), float(base[1]) + tau * float(direction[1]))
        for tau in taus
    ]
    return pts


def _ray_point(lattice: Lattice, ample: Vec, u1: Vec, u2: Vec, ray: Vec):
    """Chart coordinates where the ray meets the section plane."""
    pr = pairing(lattice, ray, ample)
    if pr <= 0:
        raise PreconditionError(f"ray {ray} does not meet the ample section")
    lam = Fraction(norm(lattice, ample), pr)
    diff = [lam * r - a for r, a in zip(ray, ample)]
    # solve diff = s*u1 + t*u2 via two independent coordinates
    for i in range(lattice.rank):
        for j in range(i + 1, lattice.rank):
            det = u1[i] * u2[j] - u1[j] * u2[i]
            if det:
                s = (diff[i] * u2[j] - diff[j] * u2[i]) / det
                t = (u1[i] * diff[j] - u1[j] * diff[i]) / det
                return float(s), float(t)
    raise PreconditionError("ample-orthogonal basis is degenerate")


def render_section(analysis: ConeAnalysis) -> str:
    """Deterministic SVG for a rank-3 analysis."""
    lattice = analysis.lattice
    if lattice.rank != 3:
        raise PreconditionError(
            f"section plots need rank 3, got rank {lattice.rank}; use analyze for reports"
        )
    ample = analysis.ample
    qa = norm(lattice, ample)
    u1, u2, p = _chart(lattice, ample)
    theta, rx, ry = _ellipse_geometry(p, qa)

    chords = [
        _wall_chord(lattice, ample, u1, u2, p, wall) for wall in analysis.chamber_walls
    ]
    points = [_ray_point(lattice, ample, u1, u2, ray) for ray in analysis.extremal_rays]

    r_max = max(rx, ry)
    xs = [-r_max, r_max] + [pt[0] for pt in points]
    ys = [-r_max, r_max] + [pt[1] for pt in points]
    pad = 0.15 * max(max(xs) - min(xs), max(ys) - min(ys))
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = (max(xs) - min(xs)) + 2 * pad, (max(ys) - min(ys)) + 2 * pad

    marker = 0.02 * max(w, h)
    stroke = 0.006 * max(w, h)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">',
        f'<ellipse cx="0.000000" cy="0.000000" rx="{_f(rx)}" ry="{_f(ry)}" '
        f'transform="rotate({_f(math.degrees(theta))})" '
        f'fill="none" stroke="#1f6f8b" stroke-width="{_f(stroke)}"/>',
    ]
    for (p1, p2) in chords:
        parts.append(
            f'<line x1="{_f(p1[0])}" y1="{_f(p1[1])}" x2="{_f(p2[0])}" y2="{_f(p2[1])}" '
            f'stroke="#9a3b3b" stroke-width="{_f(stroke)}"/>'
        )
    for (px, py) in points:
        parts.append(
            f'<circle cx="{_f(px)}" cy="{_f(py)}" r="{_f(marker)}" fill="#2d5d2a"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
