"""Fold unit-edge polygons from fan triangulations.

For any n >= 4, a closed unit-edge n-gon can be assembled from n-2
triangles sharing the root vertex: pick the n-3 diagonal lengths, then
chain the triangles in space with a dihedral angle around each
diagonal. All angles pi gives the flat polygon.
"""

import numpy as np

from hexknot import build_fan_polygon

phi = (1.0 + np.sqrt(5.0)) / 2.0  # regular pentagon diagonal

flat = build_fan_polygon(5, (phi, phi), (np.pi, np.pi))
print("flat regular pentagon:")
print(np.round(flat, 6))
edges = np.linalg.norm(np.roll(flat, -1, axis=0) - flat, axis=1)
print("edge lengths:", np.round(edges, 12))
centre = flat.mean(axis=0)
print("circumradius:", np.round(np.linalg.norm(flat - centre, axis=1), 6),
      " (1/(2 sin(pi/5)) =", round(1 / (2 * np.sin(np.pi / 5)), 6), ")")
print()

folded = build_fan_polygon(5, (phi, phi), (2.2, 4.0))
print("folded pentagon (same diagonals, bent along them):")
print(np.round(folded, 6))
print("edge lengths:", np.round(np.linalg.norm(
    np.roll(folded, -1, axis=0) - folded, axis=1), 12))
print()

rhombus = build_fan_polygon(4, (1.0,), (np.pi,))
print("flat unit rhombus:")
print(np.round(rhombus, 6))

heptagon = build_fan_polygon(7, (1.2, 1.8, 1.8, 1.2), (np.pi, 2.8, 3.3, 2.9))
print()
print("a folded 7-gon keeps unit edges:", np.round(np.linalg.norm(
    np.roll(heptagon, -1, axis=0) - heptagon, axis=1), 12))
