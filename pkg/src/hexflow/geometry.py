"""Small planar-geometry kernel shared by the network and flow modules.

Edges are handled as (anchor, tangent, extent) triples: segments have a
finite extent, half-lines an infinite one.  All routines are plain float
computations on 2-vectors; nothing here knows about the anisotropy.
"""

from __future__ import annotations

import math

import numpy as np


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = float(np.hypot(v[0], v[1]))
    if n == 0.0:
        raise ValueError("zero vector has no direction")
    return v / n


def cross2(a, b) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def angle_of(v) -> float:
    """Angle of a vector in degrees, normalised to [0, 360)."""
    a = math.degrees(math.atan2(v[1], v[0]))
    return a % 360.0


def angle_between(u, v) -> float:
    """Unsigned angle between two vectors in degrees, in [0, 180]."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = float(np.dot(u, v))
    s = abs(cross2(u, v))
    return math.degrees(math.atan2(s, c))


def intersect_lines(p1, t1, p2, t2) -> np.ndarray:
    """Intersection point of two non-parallel lines (point, direction)."""
    den = cross2(t1, t2)
    if abs(den) < 1e-14:
        raise ValueError("lines are parallel")
    s = cross2(np.asarray(p2, float) - np.asarray(p1, float), t2) / den
    return np.asarray(p1, float) + s * np.asarray(t1, float)


def point_line_distance(p, anchor, tangent) -> float:
    return abs(cross2(np.asarray(p, float) - np.asarray(anchor, float), tangent))


def project_param(p, anchor, tangent) -> float:
    return float((np.asarray(p, float) - np.asarray(anchor, float)) @ tangent)


def _clamp(x, lo, hi):
    return lo if x < lo else hi if x > hi else x


def point_edge_distance(p, anchor, tangent, extent) -> float:
    """Distance from a point to a segment/half-line (extent may be inf)."""
    t = _clamp(project_param(p, anchor, tangent), 0.0, extent)
    q = np.asarray(anchor, float) + t * np.asarray(tangent, float)
    d = np.asarray(p, float) - q
    return float(np.hypot(d[0], d[1]))


def edge_edge_distance(a1, t1, e1, a2, t2, e2, samples: int = 3) -> float:
    """Distance between two segments/half-lines.

    Exact for non-intersecting straight pieces: the minimum is attained at an
    endpoint of one piece projected on the other, or at a crossing (distance
    zero).  Infinite extents are clipped for endpoint generation but the
    projection step uses the true extent.
    """
    den = cross2(t1, t2)
    a1 = np.asarray(a1, float)
    a2 = np.asarray(a2, float)
    if abs(den) > 1e-14:
        s = cross2(a2 - a1, t2) / den
        u = cross2(a2 - a1, t1) / den
        if -1e-15 <= s <= e1 + 1e-15 and -1e-15 <= u <= e2 + 1e-15:
            return 0.0
    best = math.inf
    pts1 = [a1] + ([a1 + e1 * t1] if math.isfinite(e1) else [])
    pts2 = [a2] + ([a2 + e2 * t2] if math.isfinite(e2) else [])
    for p in pts1:
        best = min(best, point_edge_distance(p, a2, t2, e2))
    for p in pts2:
        best = min(best, point_edge_distance(p, a1, t1, e1))
    return best


def interiors_intersect(a1, t1, e1, a2, t2, e2, tol: float) -> bool:
    """True if the relative interiors of two straight pieces meet.

    Touching at shared endpoints (within ``tol``) is allowed; crossing,
    mid-edge touching and collinear overlap are not.
    """
    a1 = np.asarray(a1, float)
    a2 = np.asarray(a2, float)
    den = cross2(t1, t2)
    if abs(den) > 1e-12:
        s = cross2(a2 - a1, t2) / den
        u = cross2(a2 - a1, t1) / den
        inside1 = tol < s < e1 - tol
        inside2 = tol < u < e2 - tol
        on1 = -tol <= s <= e1 + tol
        on2 = -tol <= u <= e2 + tol
        return (inside1 and on2) or (inside2 and on1)
    # parallel: check collinearity, then 1-d overlap
    if point_line_distance(a2, a1, t1) > tol:
        return False
    sign = 1.0 if float(np.dot(t1, t2)) > 0 else -1.0
    lo2 = project_param(a2, a1, t1)
    hi2 = lo2 + sign * e2
    lo2, hi2 = min(lo2, hi2), max(lo2, hi2)
    lo = max(0.0, lo2)
    hi = min(e1, hi2)
    return hi - lo > tol
