"""Diagonal-length/folding-angle coordinates for equilateral polygons.

A hexagon with unit edges is parametrised, up to rigid motion, by the
lengths (d1, d2, d3) of the diagonals v1v3, v3v5, v5v1 and the dihedral
angles (theta1, theta2, theta3) around them. The admissible diagonal
triples form a polytope (half of the cube [0,2]^3) and sampling that
polytope and the angle torus uniformly induces the uniform measure on
hexagon space, which is what makes the Monte Carlo estimators honest.

Conventions, pinned by tests:
  * the planar configuration reads theta_i = pi for every i;
  * theta_i in (0, pi) lifts the apex vertex to positive z when the
    hexagon is in standard position (v1 at the origin, v3 on the
    positive x axis, v5 in the upper half of the xy plane).
"""

from __future__ import annotations

import numpy as np

from .geom import EPS_AREA, EPS_CONTACT, segment_distances

TWO_PI = 2.0 * np.pi

# Index pairs (i, j) of the 9 non-adjacent edge pairs of a hexagon,
# where edge i runs from vertex i to vertex i+1 (mod 6, 0-based).
NON_ADJACENT_EDGE_PAIRS = (
    (0, 2), (0, 3), (0, 4),
    (1, 3), (1, 4), (1, 5),
    (2, 4), (2, 5), (3, 5),
)

_MAX_REJECTIONS = 1000


class NotInteriorError(ValueError):
    """Diagonal triple outside the open moment polytope."""


class DegenerateFrameError(ValueError):
    """v1, v3, v5 are collinear; no frame can be extracted."""


class TriangleInequalityError(ValueError):
    """A fan triangle violates its strict triangle inequality."""


def in_moment_polytope(diagonals):
    """True where (d1, d2, d3) satisfies all six closed triangulation
    inequalities: 0 <= d_i <= 2 and each d_i <= d_j + d_k."""
    d = np.asarray(diagonals, dtype=float)
    d1, d2, d3 = d[..., 0], d[..., 1], d[..., 2]
    return (
        (d1 >= 0.0) & (d1 <= 2.0)
        & (d2 >= 0.0) & (d2 <= 2.0)
        & (d3 >= 0.0) & (d3 <= 2.0)
        & (d3 <= d1 + d2) & (d1 <= d2 + d3) & (d2 <= d1 + d3)
    )


def is_interior(diagonals):
    """True where all six inequalities hold strictly (open polytope)."""
    d = np.asarray(diagonals, dtype=float)
    d1, d2, d3 = d[..., 0], d[..., 1], d[..., 2]
    return (
        (d1 > 0.0) & (d1 < 2.0)
        & (d2 > 0.0) & (d2 < 2.0)
        & (d3 > 0.0) & (d3 < 2.0)
        & (d3 < d1 + d2) & (d1 < d2 + d3) & (d2 < d1 + d3)
    )


def sample_action(rng):
    """One diagonal triple uniform on the interior of the moment polytope.

    Rejection from the cube [0,2]^3; the polytope fills half the cube, so
    the expected number of draws is 2.
    """
    for _ in range(_MAX_REJECTIONS):
        d = rng.uniform(0.0, 2.0, 3)
        if is_interior(d):
            return d
    raise RuntimeError("rejection sampler failed to accept after "
                       f"{_MAX_REJECTIONS} draws")


def sample_action_batch(rng, n):
    """(n, 3) diagonal triples uniform on the interior of the polytope."""
    out = np.empty((n, 3))
    have = 0
    for _ in range(_MAX_REJECTIONS):
        if have >= n:
            return out
        deficit = n - have
        draw = rng.uniform(0.0, 2.0, (int(deficit * 2.2) + 16, 3))
        good = draw[is_interior(draw)]
        take = min(len(good), deficit)
        out[have:have + take] = good[:take]
        have += take
    raise RuntimeError("rejection sampler failed to fill the batch")


def sample_angles(rng):
    """Three independent angles uniform on [0, 2*pi)."""
    return rng.uniform(0.0, TWO_PI, 3)


def sample_angles_batch(rng, n):
    """(n, 3) angle triples uniform on [0, 2*pi)^3."""
    return rng.uniform(0.0, TWO_PI, (n, 3))


def triangle_area_scale(diagonals):
    """Four times the area of the triangle with side lengths (d1, d2, d3).

    This is the shared scale factor in the vertex formulas and in the
    closed-form trefoil predicates.
    """
    d = np.asarray(diagonals, dtype=float)
    a2, b2, c2 = d[..., 0] ** 2, d[..., 1] ** 2, d[..., 2] ** 2
    expr = 2.0 * (a2 * b2 + a2 * c2 + b2 * c2) - a2 ** 2 - b2 ** 2 - c2 ** 2
    return np.sqrt(np.maximum(expr, 0.0))


def build_hexagon(diagonals, angles):
    """Vertices of the unit-edge hexagon with the given coordinates.

    Parameters
    ----------
    diagonals, angles : array-like, trailing shape (3,)
        Leading axes broadcast; output has trailing shape (6, 3).

    The hexagon comes out in standard position: v1 at the origin, v3 at
    (d1, 0, 0), v5 in the upper half xy-plane. Each of v2, v4, v6 is the
    apex of a unit-edge isosceles triangle folded over its diagonal by
    the matching angle (pi = coplanar, pointing away from the centre).

    Raises NotInteriorError unless every diagonal triple is interior.
    """
    d = np.asarray(diagonals, dtype=float)
    th = np.asarray(angles, dtype=float)
    if not np.all(is_interior(d)):
        raise NotInteriorError("diagonals must lie in the open moment polytope")
    d, th = np.broadcast_arrays(d, th)

    d1, d2, d3 = d[..., 0], d[..., 1], d[..., 2]
    t1, t2, t3 = th[..., 0], th[..., 1], th[..., 2]
    dd = triangle_area_scale(d)
    r1 = np.sqrt(4.0 - d1 * d1)
    r2 = np.sqrt(4.0 - d2 * d2)
    r3 = np.sqrt(4.0 - d3 * d3)
    c1, s1 = np.cos(t1), np.sin(t1)
    c2, s2 = np.cos(t2), np.sin(t2)
    c3, s3 = np.cos(t3), np.sin(t3)
    zero = np.zeros_like(d1)
    x5 = (d1 * d1 - d2 * d2 + d3 * d3) / (2.0 * d1)
    y5 = dd / (2.0 * d1)

    v1 = np.stack([zero, zero, zero], axis=-1)
    v2 = np.stack([0.5 * d1, 0.5 * r1 * c1, 0.5 * r1 * s1], axis=-1)
    v3 = np.stack([d1, zero, zero], axis=-1)
    v4 = np.stack(
        [
            (3.0 * d1 * d1 - d2 * d2 + d3 * d3) / (4.0 * d1)
            - dd * r2 * c2 / (4.0 * d1 * d2),
            dd / (4.0 * d1)
            - (d1 * d1 + d2 * d2 - d3 * d3) * r2 * c2 / (4.0 * d1 * d2),
            0.5 * r2 * s2,
        ],
        axis=-1,
    )
    v5 = np.stack([x5, y5, zero], axis=-1)
    v6 = np.stack(
        [
            0.5 * x5 + dd * r3 * c3 / (4.0 * d1 * d3),
            dd / (4.0 * d1)
            - (d1 * d1 - d2 * d2 + d3 * d3) * r3 * c3 / (4.0 * d1 * d3),
            0.5 * r3 * s3,
        ],
        axis=-1,
    )
    return np.stack([v1, v2, v3, v4, v5, v6], axis=-2)


def _central_normal(vertices):
    v = np.asarray(vertices, dtype=float)
    return np.cross(v[..., 2, :] - v[..., 0, :], v[..., 4, :] - v[..., 0, :])


def _unit(u):
    return u / np.linalg.norm(u, axis=-1, keepdims=True)


def extract_action_angle(vertices):
    """Recover (diagonals, angles) from hexagon vertices.

    Inverse of :func:`build_hexagon` up to rigid motion: the diagonal
    lengths are |v1-v3|, |v3-v5|, |v5-v1| and each angle is read off the
    apex offset from its diagonal midpoint, so the planar configuration
    reads pi and angles land in [0, 2*pi).

    Raises DegenerateFrameError when (v1, v3, v5) is collinear within
    EPS_AREA.
    """
    v = np.asarray(vertices, dtype=float)
    n = _central_normal(v)
    nn = np.linalg.norm(n, axis=-1)
    if np.any(nn <= 2.0 * EPS_AREA):
        raise DegenerateFrameError("v1, v3, v5 are collinear")
    nhat = n / nn[..., None]

    diagonals = np.stack(
        [
            np.linalg.norm(v[..., 2, :] - v[..., 0, :], axis=-1),
            np.linalg.norm(v[..., 4, :] - v[..., 2, :], axis=-1),
            np.linalg.norm(v[..., 0, :] - v[..., 4, :], axis=-1),
        ],
        axis=-1,
    )

    angles = []
    # (diagonal endpoints, apex, opposite central vertex)
    for ip, iq, ix, ir in ((0, 2, 1, 4), (2, 4, 3, 0), (4, 0, 5, 2)):
        pp = v[..., ip, :]
        qq = v[..., iq, :]
        mid = 0.5 * (pp + qq)
        uhat = _unit(qq - pp)
        w = v[..., ix, :] - mid
        w = w - (w * uhat).sum(-1, keepdims=True) * uhat
        inward = v[..., ir, :] - mid
        inward = _unit(inward - (inward * uhat).sum(-1, keepdims=True) * uhat)
        theta = np.arctan2((w * nhat).sum(-1), (w * inward).sum(-1))
        angles.append(np.mod(theta, TWO_PI))
    return diagonals, np.stack(angles, axis=-1)


def standardize(vertices):
    """Rigid motion taking a hexagon to standard position: v1 at the
    origin, v3 on the positive x axis, v5 with positive y and zero z.

    Raises DegenerateFrameError when (v1, v3, v5) is collinear.
    """
    v = np.asarray(vertices, dtype=float)
    n = _central_normal(v)
    nn = np.linalg.norm(n, axis=-1)
    if np.any(nn <= 2.0 * EPS_AREA):
        raise DegenerateFrameError("v1, v3, v5 are collinear")
    ex = _unit(v[..., 2, :] - v[..., 0, :])
    ez = n / nn[..., None]
    ey = np.cross(ez, ex)
    frame = np.stack([ex, ey, ez], axis=-2)
    shifted = v - v[..., 0:1, :]
    return np.einsum("...ij,...kj->...ki", frame, shifted)


_PAIR_P1 = tuple(i for i, _ in NON_ADJACENT_EDGE_PAIRS)
_PAIR_Q1 = tuple((i + 1) % 6 for i, _ in NON_ADJACENT_EDGE_PAIRS)
_PAIR_P2 = tuple(j for _, j in NON_ADJACENT_EDGE_PAIRS)
_PAIR_Q2 = tuple((j + 1) % 6 for _, j in NON_ADJACENT_EDGE_PAIRS)


def is_embedded(vertices):
    """True where none of the 9 non-adjacent edge pairs come within
    EPS_CONTACT of each other."""
    v = np.asarray(vertices, dtype=float)
    dist = segment_distances(
        v[..., _PAIR_P1, :], v[..., _PAIR_Q1, :],
        v[..., _PAIR_P2, :], v[..., _PAIR_Q2, :],
    )
    return np.all(dist > EPS_CONTACT, axis=-1)


def build_fan_polygon(n, diagonals, angles):
    """Closed unit-edge n-gon from a fan triangulation rooted at v1.

    The n-3 diagonals all emanate from v1 (placed at the origin); the
    fan triangles are chained in space with the given dihedral angles
    around the diagonals, pi meaning coplanar. Returns an (n, 3) array
    with |v1 - v_{i+2}| equal to diagonals[i].

    Raises TriangleInequalityError (naming the offending triangle) when
    any fan triangle fails its strict triangle inequality.
    """
    if n < 4:
        raise ValueError("fan polygons need n >= 4")
    ds = [float(x) for x in np.asarray(diagonals, dtype=float).ravel()]
    ths = [float(x) for x in np.asarray(angles, dtype=float).ravel()]
    if len(ds) != n - 3 or len(ths) != n - 3:
        raise ValueError(f"expected {n - 3} diagonals and angles for n={n}")

    sides = [(1.0, 1.0, ds[0])]
    sides += [(ds[i], ds[i + 1], 1.0) for i in range(n - 4)]
    sides.append((1.0, 1.0, ds[-1]))
    for k, (x, y, z) in enumerate(sides):
        if not (x < y + z and y < x + z and z < x + y):
            raise TriangleInequalityError(
                f"fan triangle {k} with sides {(x, y, z)} is not strictly valid"
            )

    v = np.zeros((n, 3))
    v[2] = (ds[0], 0.0, 0.0)
    v[1] = (0.5 * ds[0], -np.sqrt(1.0 - 0.25 * ds[0] ** 2), 0.0)
    for j in range(1, n - 2):
        d_prev = ds[j - 1]
        d_next = ds[j] if j <= n - 4 else 1.0
        apex = v[j + 1]
        uhat = apex / d_prev
        alpha = (d_prev ** 2 + d_next ** 2 - 1.0) / (2.0 * d_prev)
        radius = np.sqrt(max(d_next ** 2 - alpha ** 2, 0.0))
        third = v[j]
        perp = third - np.dot(third, uhat) * uhat
        phat = perp / np.linalg.norm(perp)
        zhat = np.cross(uhat, phat)
        theta = ths[j - 1]
        v[j + 2] = alpha * uhat + radius * (np.cos(theta) * phat + np.sin(theta) * zhat)
    return v
