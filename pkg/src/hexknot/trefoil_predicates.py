"""Closed-form sign conditions for hexagonal trefoils.

For a hexagon given in diagonal/angle coordinates, each trefoil class
forces the signs of nine trigonometric functions of the coordinates
(three per pierced disk: a crossing-cone condition pair and one
plane-separation condition). The sign conditions are necessary and are
not assumed sufficient; estimators report the gap between predicate
hits and geometric classifications instead of assuming either way.
Coarser window filters on the angles and diagonals accompany them; see
FilterReport for how far each can be trusted.

All predicates evaluate strict inequalities with zero tolerance: the
boundary sets have measure zero under the sampling distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import NamedTuple

import numpy as np

from .action_angle import NotInteriorError, is_interior, triangle_area_scale
from .invariants import KNOT_CLASS_LABELS, JointChiralityCurl, KnotClass

TWO_PI = 2.0 * np.pi

_DISTINCT_TOL = 1e-9


class NineFunctions(NamedTuple):
    f1: np.ndarray
    g1: np.ndarray
    h1: np.ndarray
    f2: np.ndarray
    g2: np.ndarray
    h2: np.ndarray
    f3: np.ndarray
    g3: np.ndarray
    h3: np.ndarray


def _validate(diagonals, angles):
    d = np.asarray(diagonals, dtype=float)
    th = np.asarray(angles, dtype=float)
    if not np.all(is_interior(d)):
        raise NotInteriorError("diagonals must lie in the open moment polytope")
    return np.broadcast_arrays(d, th)


def nine_functions(diagonals, angles):
    """Evaluate the nine sign functions; broadcasts over leading axes.

    Index i pairs the two angle arguments it depends on: 1 -> (t2, t3),
    2 -> (t3, t1), 3 -> (t1, t2). Within each triple, f is antisymmetric
    under swapping its two (d, theta) argument pairs and g/h exchange
    under the same swap.
    """
    d, th = _validate(diagonals, angles)
    d1, d2, d3 = d[..., 0], d[..., 1], d[..., 2]
    t1, t2, t3 = th[..., 0], th[..., 1], th[..., 2]
    dd = triangle_area_scale(d)
    r1 = np.sqrt(4.0 - d1 * d1)
    r2 = np.sqrt(4.0 - d2 * d2)
    r3 = np.sqrt(4.0 - d3 * d3)
    c1, s1 = np.cos(t1), np.sin(t1)
    c2, s2 = np.cos(t2), np.sin(t2)
    c3, s3 = np.cos(t3), np.sin(t3)
    q1 = d1 * d1
    q2 = d2 * d2
    q3 = d3 * d3

    f1 = d2 * r2 * s2 * (d3 * dd - (q1 - q2 + q3) * r3 * c3) \
        - d3 * r3 * s3 * (d2 * dd - (q1 + q2 - q3) * r2 * c2)
    g1 = r2 * ((-q1 + q2 + q3) / (2.0 * d2 * d3) * c2 * s3 + s2 * c3) \
        - dd * s3 / (2.0 * d3)
    h1 = r3 * ((-q1 + q2 + q3) / (2.0 * d2 * d3) * c3 * s2 + s3 * c2) \
        - dd * s2 / (2.0 * d2)

    f2 = d3 * r3 * s3 * (d1 * dd - (q1 + q2 - q3) * r1 * c1) \
        - d1 * r1 * s1 * (d3 * dd - (-q1 + q2 + q3) * r3 * c3)
    g2 = r3 * ((q1 - q2 + q3) / (2.0 * d1 * d3) * c3 * s1 + s3 * c1) \
        - dd * s1 / (2.0 * d1)
    h2 = r1 * ((q1 - q2 + q3) / (2.0 * d1 * d3) * c1 * s3 + s1 * c3) \
        - dd * s3 / (2.0 * d3)

    f3 = d1 * r1 * s1 * (d2 * dd - (-q1 + q2 + q3) * r2 * c2) \
        - d2 * r2 * s2 * (d1 * dd - (q1 - q2 + q3) * r1 * c1)
    g3 = r1 * ((q1 + q2 - q3) / (2.0 * d1 * d2) * c1 * s2 + s1 * c2) \
        - dd * s2 / (2.0 * d2)
    h3 = r2 * ((q1 + q2 - q3) / (2.0 * d1 * d2) * c2 * s1 + s2 * c1) \
        - dd * s1 / (2.0 * d1)

    return NineFunctions(f1, g1, h1, f2, g2, h2, f3, g3, h3)


def _angles_in(th, lo, hi):
    return np.all((th > lo) & (th < hi), axis=-1)


def satisfies_R_plus(diagonals, angles):
    """Necessary condition for a right-handed trefoil with positive curl:
    every angle strictly inside (0, pi) and all nine functions strictly
    positive."""
    d, th = _validate(diagonals, angles)
    nf = nine_functions(d, th)
    pos = np.ones(np.broadcast_shapes(d.shape[:-1], th.shape[:-1]), dtype=bool)
    for value in nf:
        pos = pos & (value > 0.0)
    return _angles_in(th, 0.0, np.pi) & pos


def satisfies_L_plus(diagonals, angles):
    """Necessary condition for a left-handed trefoil with positive curl:
    angles in (0, pi), f_i < 0, g_i > 0 and h_i > 0 for all i."""
    d, th = _validate(diagonals, angles)
    nf = nine_functions(d, th)
    ok = (nf.f1 < 0.0) & (nf.f2 < 0.0) & (nf.f3 < 0.0)
    ok &= (nf.g1 > 0.0) & (nf.g2 > 0.0) & (nf.g3 > 0.0)
    ok &= (nf.h1 > 0.0) & (nf.h2 > 0.0) & (nf.h3 > 0.0)
    return _angles_in(th, 0.0, np.pi) & ok


def satisfies_negative_curl(diagonals, angles, chirality):
    """Necessary condition for a trefoil of the given chirality with
    negative curl, by the mirror reduction theta -> 2*pi - theta (which
    flips both chirality and curl)."""
    if chirality not in (-1, 1):
        raise ValueError("chirality must be +1 or -1")
    th = np.asarray(angles, dtype=float)
    mirrored = TWO_PI - th
    if chirality == 1:
        return satisfies_L_plus(diagonals, mirrored)
    return satisfies_R_plus(diagonals, mirrored)


def satisfies_class(diagonals, angles, knot_class):
    """Dispatch the class-specific predicate for one of the four
    trefoil classes."""
    cls = KnotClass(knot_class)
    if cls == KnotClass.TREFOIL_R_PLUS:
        return satisfies_R_plus(diagonals, angles)
    if cls == KnotClass.TREFOIL_L_PLUS:
        return satisfies_L_plus(diagonals, angles)
    if cls == KnotClass.TREFOIL_R_MINUS:
        return satisfies_negative_curl(diagonals, angles, 1)
    if cls == KnotClass.TREFOIL_L_MINUS:
        return satisfies_negative_curl(diagonals, angles, -1)
    raise ValueError(f"no trefoil predicate for {cls!r}")


def class_masks(diagonals, angles):
    """Predicate masks for all four trefoil classes at once.

    Every term of every one of the nine functions carries exactly one
    sine factor, so the whole vector is odd under theta -> 2*pi - theta;
    one evaluation therefore covers both curl signs. This is the hot
    path of the predicate-mode estimator.

    Returns a dict KnotClass -> bool array.
    """
    d, th = _validate(diagonals, angles)
    nf = nine_functions(d, th)
    up = _angles_in(th, 0.0, np.pi)
    down = _angles_in(th, np.pi, TWO_PI)
    f_pos = (nf.f1 > 0.0) & (nf.f2 > 0.0) & (nf.f3 > 0.0)
    f_neg = (nf.f1 < 0.0) & (nf.f2 < 0.0) & (nf.f3 < 0.0)
    gh_pos = ((nf.g1 > 0.0) & (nf.g2 > 0.0) & (nf.g3 > 0.0)
              & (nf.h1 > 0.0) & (nf.h2 > 0.0) & (nf.h3 > 0.0))
    gh_neg = ((nf.g1 < 0.0) & (nf.g2 < 0.0) & (nf.g3 < 0.0)
              & (nf.h1 < 0.0) & (nf.h2 < 0.0) & (nf.h3 < 0.0))
    return {
        KnotClass.TREFOIL_R_PLUS: up & f_pos & gh_pos,
        KnotClass.TREFOIL_L_PLUS: up & f_neg & gh_pos,
        KnotClass.TREFOIL_R_MINUS: down & f_pos & gh_neg,
        KnotClass.TREFOIL_L_MINUS: down & f_neg & gh_neg,
    }


@dataclass
class FilterReport:
    """Outcome of each window-constraint filter for a target class.

    curl_window, angle_sums and distinct_diagonals are necessary
    conditions for the target class. dominant_diagonal_window is the
    tighter window keyed to the largest diagonal; a rare fraction of
    genuine trefoils (a few per 10^7 samples, measured) falls outside
    it, so treat a False there as a strong but not airtight veto.
    """

    target: str
    curl_window: bool            # all angles on the curl side of pi
    angle_sums: bool             # pairwise angle sums on the curl side
    distinct_diagonals: bool     # no two diagonals within 1e-9
    dominant_diagonal_window: bool  # windows keyed to the largest diagonal

    def passes(self) -> bool:
        return (self.curl_window and self.angle_sums
                and self.distinct_diagonals and self.dominant_diagonal_window)

    def to_dict(self) -> dict:
        return asdict(self)


def _filter_masks(d, th, curl_sign):
    """Vectorised filter clauses; angles are mirrored first for the
    negative-curl case so every window is stated for positive curl."""
    if curl_sign == -1:
        th = TWO_PI - th
    t1, t2, t3 = th[..., 0], th[..., 1], th[..., 2]

    curl_window = _angles_in(th, 0.0, np.pi)
    angle_sums = (t1 + t2 < np.pi) & (t1 + t3 < np.pi) & (t2 + t3 < np.pi)

    gaps = np.stack(
        [
            np.abs(d[..., 0] - d[..., 1]),
            np.abs(d[..., 0] - d[..., 2]),
            np.abs(d[..., 1] - d[..., 2]),
        ],
        axis=-1,
    )
    distinct = np.all(gaps > _DISTINCT_TOL, axis=-1)

    big = np.argmax(d, axis=-1)
    t_big = np.take_along_axis(th, big[..., None], axis=-1)[..., 0]
    d_sq = d * d
    sq_sum = d_sq.sum(axis=-1)
    big_sq = np.take_along_axis(d_sq, big[..., None], axis=-1)[..., 0]
    obtuse = big_sq > sq_sum - big_sq
    others_small = np.ones_like(distinct)
    for k in range(3):
        is_other = big != k
        others_small &= np.where(is_other, (th[..., k] > 0.0) & (th[..., k] < 0.5 * np.pi), True)
    big_lo = np.where(obtuse, 0.5 * np.pi, 0.0)
    window = others_small & (t_big > big_lo) & (t_big < np.pi)
    return curl_window, angle_sums, distinct, window


def passes_window_filters(diagonals, angles, chirality, curl_sign):
    """Vectorised conjunction of all four filter clauses for the trefoil
    class (chirality, curl_sign)."""
    if chirality not in (-1, 1) or curl_sign not in (-1, 1):
        raise ValueError("chirality and curl_sign must be +1 or -1")
    d, th = _validate(diagonals, angles)
    masks = _filter_masks(d, th, curl_sign)
    out = masks[0]
    for m in masks[1:]:
        out = out & m
    return out


def window_filters(diagonals, angles, target):
    """FilterReport for one coordinate tuple against a target class.

    `target` is a JointChiralityCurl pair (chirality, curl) with both
    entries in {-1, +1}, or one of the four trefoil KnotClass values.
    """
    if isinstance(target, KnotClass):
        chirality, curl_sign = {
            KnotClass.TREFOIL_R_PLUS: (1, 1),
            KnotClass.TREFOIL_R_MINUS: (1, -1),
            KnotClass.TREFOIL_L_PLUS: (-1, 1),
            KnotClass.TREFOIL_L_MINUS: (-1, -1),
        }[target]
    else:
        chirality, curl_sign = int(target[0]), int(target[1])
    if chirality not in (-1, 1) or curl_sign not in (-1, 1):
        raise ValueError("target must name one of the four trefoil classes")
    d, th = _validate(diagonals, angles)
    masks = _filter_masks(d, th, curl_sign)
    label = KNOT_CLASS_LABELS[_class_for(chirality, curl_sign)]
    return FilterReport(label, *(bool(m) for m in masks))


def _class_for(chirality, curl_sign):
    return {
        (1, 1): KnotClass.TREFOIL_R_PLUS,
        (1, -1): KnotClass.TREFOIL_R_MINUS,
        (-1, 1): KnotClass.TREFOIL_L_PLUS,
        (-1, -1): KnotClass.TREFOIL_L_MINUS,
    }[(chirality, curl_sign)]


TARGET_PAIRS = {
    KnotClass.TREFOIL_R_PLUS: JointChiralityCurl(1, 1),
    KnotClass.TREFOIL_R_MINUS: JointChiralityCurl(1, -1),
    KnotClass.TREFOIL_L_PLUS: JointChiralityCurl(-1, 1),
    KnotClass.TREFOIL_L_MINUS: JointChiralityCurl(-1, -1),
}
