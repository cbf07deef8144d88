"""Brute-force Svetlichny maximisation used to cross-check the see-saw optimiser.

Each of the six measurement directions is restricted to a great circle in
one coordinate plane and sampled on a uniform angular grid; every
combination is evaluated exhaustively. The best grid points are then
polished with an unconstrained quasi-Newton search over all twelve
spherical angles.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

PLANES = ((0, 1), (0, 2), (1, 2))


def _grid_scores(t, plane, points):
    theta = np.linspace(0, 2 * np.pi, points, endpoint=False)
    dirs = np.zeros((points, 3))
    dirs[:, plane[0]] = np.cos(theta)
    dirs[:, plane[1]] = np.sin(theta)
    g = np.einsum("ijk,ai,bj,ck->abc", t, dirs, dirs, dirs)
    best = []
    # s[b, b', c, c'] for a fixed pair (a, a')
    for ia in range(points):
        ga = g[ia]
        plus = ga[:, None, :, None] + ga[:, None, None, :] + ga[None, :, :, None] - ga[None, :, None, :]
        for ia2 in range(points):
            gb = g[ia2]
            minus = (gb[:, None, :, None] - gb[:, None, None, :]
                     - gb[None, :, :, None] - gb[None, :, None, :])
            s = np.abs(plus + minus)
            k = int(np.argmax(s))
            idx = np.unravel_index(k, s.shape)
            best.append((float(s[idx]), (ia, ia2, *idx)))
    best.sort(key=lambda x: -x[0])
    return [(v, np.array([dirs[i] for i in ix])) for v, ix in best], dirs


def _angles(vectors):
    x, y, z = vectors[:, 0], vectors[:, 1], vectors[:, 2]
    return np.concatenate([np.arccos(np.clip(z, -1, 1)), np.arctan2(y, x)])


def _vectors(angles):
    th, ph = angles[:6], angles[6:]
    return np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=1)


def _value(t, v):
    a, a2, b, b2, c, c2 = v
    e = lambda x, y, w: np.einsum("ijk,i,j,k->", t, x, y, w)
    cp, cm = c + c2, c - c2
    return e(a, b, cp) + e(a, b2, cm) + e(a2, b, cm) - e(a2, b2, cp)


def grid_svetlichny_max(t, points: int = 20, polish: int = 6) -> float:
    """Exhaustive planar-grid maximum of ``|S|``, optionally polished locally."""
    t = np.asarray(t, dtype=float)
    candidates = []
    for plane in PLANES:
        scored, _ = _grid_scores(t, plane, points)
        candidates.extend(scored[: max(polish, 1)])
    candidates.sort(key=lambda x: -x[0])
    best = candidates[0][0]
    for value, vecs in candidates[:polish]:
        sign = 1.0 if _value(t, vecs) >= 0 else -1.0
        # nudge off the plane so the polish can leave it
        x0 = _angles(vecs) + 1e-3
        res = minimize(lambda ang: -sign * _value(t, _vectors(ang)), x0, method="BFGS",
                       options={"gtol": 1e-11, "maxiter": 2000})
        best = max(best, value, -res.fun)
    return float(best)
