"""The fixed hexagonal anisotropy and its derived tables.

The unit ball ``B`` of the anisotropy is the regular hexagon circumscribed to
the unit circle with two horizontal facets; the dual unit ball is the regular
hexagon inscribed in the unit circle with two vertical facets.  Everything in
this package is specialised to this single pair:

* facet outer normals ``U[k]`` sit at angles 30 + 60k degrees,
* hexagon vertices ``V[j]`` sit at angles 60j degrees with radius 2/sqrt(3),
* every facet has length ``D`` = 2/sqrt(3) and touches the unit circle at its
  midpoint.

Facet ``k`` is the closed segment from ``V[k]`` to ``V[k+1]``; its unit
tangent ``T[k]`` is the counterclockwise 90-degree rotation of ``U[k]``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NonAdmissibleDirection, ParamOutOfRange, UnboundedEdge

SQRT3 = math.sqrt(3.0)

#: Facet length of the unit hexagon (also the circumradius).
D = 2.0 / SQRT3

_HALF = 0.5
_S32 = SQRT3 / 2.0

#: Outer unit normals of the six facets, angles 30 + 60k degrees.
FACET_NORMALS = np.array(
    [
        [_S32, _HALF],
        [0.0, 1.0],
        [-_S32, _HALF],
        [-_S32, -_HALF],
        [0.0, -1.0],
        [_S32, -_HALF],
    ]
)

#: Vertices of the hexagon, angles 60j degrees, radius 2/sqrt(3).
WULFF_VERTICES = np.array(
    [
        [D, 0.0],
        [1.0 / SQRT3, 1.0],
        [-1.0 / SQRT3, 1.0],
        [-D, 0.0],
        [-1.0 / SQRT3, -1.0],
        [1.0 / SQRT3, -1.0],
    ]
)

#: Unit tangent of facet k, oriented from V[k] to V[k+1] (= ccw90 of U[k]).
FACET_TANGENTS = np.array(
    [
        [-_HALF, _S32],
        [-1.0, 0.0],
        [-_HALF, -_S32],
        [_HALF, -_S32],
        [1.0, 0.0],
        [_HALF, _S32],
    ]
)

#: Vertices of the dual unit ball (unit vectors at 30 + 60k degrees).
FRANK_VERTICES = FACET_NORMALS.copy()


def rot90(v):
    """Counterclockwise 90-degree rotation."""
    v = np.asarray(v, dtype=float)
    return np.array([-v[1], v[0]])


def phi(v) -> float:
    """Anisotropy value: support of the dual ball, max_k v . U[k]."""
    v = np.asarray(v, dtype=float)
    return float(np.max(FACET_NORMALS @ v))


def phi_dual(v) -> float:
    """Dual anisotropy value: support of the hexagon, max_j v . V[j]."""
    v = np.asarray(v, dtype=float)
    return float(np.max(WULFF_VERTICES @ v))


def facet_of_normal(nu, tol_angle: float = 1e-9) -> int:
    """Index k of the facet whose outer normal matches the unit vector nu.

    Raises NonAdmissibleDirection when nu is not (within ``tol_angle``
    radians) one of the six facet normals, or when nu is not a unit vector.
    """
    nu = np.asarray(nu, dtype=float)
    norm = float(np.hypot(nu[0], nu[1]))
    if abs(norm - 1.0) > 1e-12:
        raise NonAdmissibleDirection(f"normal must be a unit vector, |nu|={norm!r}")
    dots = FACET_NORMALS @ nu
    k = int(np.argmax(dots))
    # angle between unit vectors
    ang = math.atan2(
        abs(nu[0] * FACET_NORMALS[k, 1] - nu[1] * FACET_NORMALS[k, 0]),
        float(dots[k]),
    )
    if ang > tol_angle:
        raise NonAdmissibleDirection(
            f"direction {nu.tolist()} is {ang:.3e} rad from the nearest facet normal"
        )
    return k


def ch_point(k: int, s: float) -> np.ndarray:
    """Point of facet k at arc parameter s in [0, D], measured from V[k]."""
    if not 0 <= k <= 5:
        raise ParamOutOfRange(f"facet index {k} outside 0..5")
    if not -1e-12 <= s <= D + 1e-12:
        raise ParamOutOfRange(f"facet parameter {s!r} outside [0, {D}]")
    return WULFF_VERTICES[k] + s * FACET_TANGENTS[k]


def ch_param(k: int, point) -> float:
    """Inverse of :func:`ch_point`: arc parameter of a point on facet k."""
    p = np.asarray(point, dtype=float)
    rel = p - WULFF_VERTICES[k]
    s = float(rel @ FACET_TANGENTS[k])
    if not -1e-9 <= s <= D + 1e-9:
        raise ParamOutOfRange(f"point {p.tolist()} projects outside facet {k}")
    off = rel - s * FACET_TANGENTS[k]
    if float(np.hypot(off[0], off[1])) > 1e-9:
        raise ParamOutOfRange(f"point {p.tolist()} does not lie on facet {k}")
    return min(max(s, 0.0), D)


def opposite_facet(k: int) -> int:
    """Facet index with the opposite outer normal."""
    return (k + 3) % 6


def segment_phi_length(p, q) -> float:
    """Weighted length of the segment [p, q] (dual value of its normal)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    delta = q - p
    length = float(np.hypot(delta[0], delta[1]))
    if length == 0.0:
        return 0.0
    nu = rot90(delta / length)
    return phi_dual(nu) * length


def phi_length(segments) -> float:
    """Weighted length of a list of segments given as (p, q) point pairs.

    Each entry must be a finite segment; pass half-lines through a clipping
    step first (see :func:`hexflow.render.clip_halfline`).
    """
    total = 0.0
    for item in segments:
        p, q = item
        if q is None:
            raise UnboundedEdge("half-lines have infinite weighted length")
        total += segment_phi_length(p, q)
    return total
