"""Knot invariants of equilateral hexagons.

A hexagon with unit edges is either an unknot or a trefoil, and its
component in hexagon space is pinned down by two integers: the common
sign of the three signed crossing counts through the disks spanned by
alternating vertex triples (chirality), and the side of the central
plane the second vertex folds to (curl). Everything here is pure and
safe to call concurrently.
"""

from __future__ import annotations

from enum import IntEnum
from typing import NamedTuple

import numpy as np

from .geom import DEGENERATE, EPS_PLANE, crossing_signs, triple_product
from .action_angle import is_embedded


class KnotClass(IntEnum):
    UNKNOT = 0
    TREFOIL_R_PLUS = 1
    TREFOIL_R_MINUS = 2
    TREFOIL_L_PLUS = 3
    TREFOIL_L_MINUS = 4
    DEGENERATE = 5


KNOT_CLASS_LABELS = {
    KnotClass.UNKNOT: "unknot",
    KnotClass.TREFOIL_R_PLUS: "trefoil_R+",
    KnotClass.TREFOIL_R_MINUS: "trefoil_R-",
    KnotClass.TREFOIL_L_PLUS: "trefoil_L+",
    KnotClass.TREFOIL_L_MINUS: "trefoil_L-",
    KnotClass.DEGENERATE: "degenerate",
}

KNOT_CLASS_FROM_LABEL = {label: cls for cls, label in KNOT_CLASS_LABELS.items()}

TREFOIL_CLASSES = (
    KnotClass.TREFOIL_R_PLUS,
    KnotClass.TREFOIL_R_MINUS,
    KnotClass.TREFOIL_L_PLUS,
    KnotClass.TREFOIL_L_MINUS,
)

# Disk index -> (triangle vertex rows, the two hexagon edges disjoint
# from those vertices). Edge j runs from vertex j to vertex j+1 mod 6.
# Only these two edges can pierce the open disk away from a
# measure-zero set, which the degenerate channel already discards.
DISK_TABLE = {
    2: ((0, 1, 2), ((3, 4), (4, 5))),
    4: ((2, 3, 4), ((5, 0), (0, 1))),
    6: ((4, 5, 0), ((1, 2), (2, 3))),
}


class JointChiralityCurl(NamedTuple):
    """Pair (chirality, curl part) classifying a hexagon's component."""

    chirality: int
    curl_part: int


_CLASS_BY_PAIR = {
    (0, 0): KnotClass.UNKNOT,
    (1, 1): KnotClass.TREFOIL_R_PLUS,
    (1, -1): KnotClass.TREFOIL_R_MINUS,
    (-1, 1): KnotClass.TREFOIL_L_PLUS,
    (-1, -1): KnotClass.TREFOIL_L_MINUS,
}


def curl(vertices):
    """Sign of (v3-v1) x (v5-v1) . (v2-v1): +1 when v2 folds to the side
    of the central plane its right-hand normal points to, -1 opposite,
    0 within EPS_PLANE of coplanar."""
    v = np.asarray(vertices, dtype=float)
    t = triple_product(
        v[..., 2, :] - v[..., 0, :],
        v[..., 4, :] - v[..., 0, :],
        v[..., 1, :] - v[..., 0, :],
    )
    return (np.where(np.abs(t) < EPS_PLANE, 0, np.sign(t))).astype(np.int8)


def _disk_crossing_signs(vertices, i):
    """Vectorised signed crossing count through disk i in {2, 4, 6}.

    Returns (count, degenerate) arrays; count sums the two transversal
    crossing signs of the disjoint edges.
    """
    v = np.asarray(vertices, dtype=float)
    (ia, ib, ic), edges = DISK_TABLE[i]
    a, b, c = v[..., ia, :], v[..., ib, :], v[..., ic, :]
    total = None
    degen = None
    for j0, j1 in edges:
        sign, bad = crossing_signs(v[..., j0, :], v[..., j1, :], a, b, c)
        total = sign.astype(np.int16) if total is None else total + sign
        degen = bad if degen is None else (degen | bad)
    return total, degen


def disk_crossings(vertices, i):
    """Signed crossing count of the hexagon through the open disk spanned
    by (v_{i-1}, v_i, v_{i+1}) for i in {2, 4, 6}, or DEGENERATE when a
    crossing test was within tolerance of a boundary."""
    if i not in DISK_TABLE:
        raise ValueError("disk index must be 2, 4 or 6")
    total, degen = _disk_crossing_signs(vertices, i)
    if degen:
        return DEGENERATE
    return int(total)


def joint_chirality_curl(vertices):
    """The pair (product of the three disk crossing counts, that
    product squared times curl), or DEGENERATE when any crossing test
    was degenerate or the product falls outside {-1, 0, 1}."""
    ds = []
    for i in (2, 4, 6):
        value = disk_crossings(vertices, i)
        if value is DEGENERATE:
            return DEGENERATE
        ds.append(value)
    chirality = ds[0] * ds[1] * ds[2]
    if chirality not in (-1, 0, 1):
        return DEGENERATE
    square = (ds[0] * ds[1] * ds[2]) ** 2
    return JointChiralityCurl(chirality, square * int(curl(vertices)))


def classify(vertices):
    """KnotClass of one hexagon.

    Non-embedded hexagons, degenerate crossing tests, and a zero curl
    paired with nonzero chirality all map to KnotClass.DEGENERATE.
    """
    if not bool(is_embedded(vertices)):
        return KnotClass.DEGENERATE
    j = joint_chirality_curl(vertices)
    if j is DEGENERATE:
        return KnotClass.DEGENERATE
    return _CLASS_BY_PAIR.get(tuple(j), KnotClass.DEGENERATE)


# Flattened (edge start, edge end, triangle rows) for the six crossing
# tests of classify_batch: two edges per disk, disks 2, 4, 6 in order.
_X_P = (3, 4, 5, 0, 1, 2)
_X_Q = (4, 5, 0, 1, 2, 3)
_X_A = (0, 0, 2, 2, 4, 4)
_X_B = (1, 1, 3, 3, 5, 5)
_X_C = (2, 2, 4, 4, 0, 0)


def classify_batch(vertices):
    """Vectorised :func:`classify` over an (..., 6, 3) vertex array.

    Returns an int8 array of KnotClass values.
    """
    v = np.asarray(vertices, dtype=float)
    lead = v.shape[:-2]
    v = v.reshape((-1, 6, 3))

    signs, bad = crossing_signs(
        v[:, _X_P, :], v[:, _X_Q, :],
        v[:, _X_A, :], v[:, _X_B, :], v[:, _X_C, :],
    )
    signs = signs.astype(np.int16)
    counts = (
        signs[:, 0] + signs[:, 1],
        signs[:, 2] + signs[:, 3],
        signs[:, 4] + signs[:, 5],
    )
    degen = bad.any(axis=-1)
    degen |= ~is_embedded(v)

    chi = counts[0] * counts[1] * counts[2]
    cc = curl(v).astype(np.int16)
    knotted = (np.abs(chi) == 1)
    degen |= np.abs(chi) > 1
    degen |= knotted & (cc == 0)

    codes = np.full(v.shape[0], int(KnotClass.UNKNOT), dtype=np.int8)
    codes[knotted & (chi == 1) & (cc == 1)] = int(KnotClass.TREFOIL_R_PLUS)
    codes[knotted & (chi == 1) & (cc == -1)] = int(KnotClass.TREFOIL_R_MINUS)
    codes[knotted & (chi == -1) & (cc == 1)] = int(KnotClass.TREFOIL_L_PLUS)
    codes[knotted & (chi == -1) & (cc == -1)] = int(KnotClass.TREFOIL_L_MINUS)
    codes[degen] = int(KnotClass.DEGENERATE)
    return codes.reshape(lead)


_SHIFT = (1, 2, 3, 4, 5, 0)
_REVERSE = (0, 5, 4, 3, 2, 1)


def shift(vertices):
    """Root shift: (v1,...,v6) -> (v2,...,v6,v1)."""
    v = np.asarray(vertices, dtype=float)
    return v[..., _SHIFT, :]


def reverse(vertices):
    """Orientation reversal: (v1,...,v6) -> (v1,v6,v5,v4,v3,v2)."""
    v = np.asarray(vertices, dtype=float)
    return v[..., _REVERSE, :]
