"""Independent check of the dual-number derivatives by evaluation at concrete shifts.

Moving point ``i`` to ``p_i + t*direction`` for concrete ``t`` gives a matrix
over F_p.  Scaling its echelon kernel by ``det(M_P(t))`` (``M_P`` the pivot
columns fixed at ``t = 0``) turns the Plücker vector into a polynomial in
``t`` of degree at most ``k * R_i * e``, where ``R_i`` is the number of rows
of point ``i`` and ``e`` bounds the degree of those rows in ``t``.  With that
many random nodes plus ``t = 0``, Lagrange interpolation recovers the exact
derivative at 0, which must agree with the dual-number u-coefficient after
projective normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from ..errors import DimensionMismatch
from . import _backend
from .config import FatPointConfig
from .pipeline import (_kernel_from_rref, _point_rows, condition_matrix, deformation_matrix, kernel_basis, pluecker,
                       restrict_and_pluecker, restriction)


def _shifted(points, i, t, direction, p):
    pts = list(points)
    x, y, m = pts[i]
    pts[i] = ((x + t * direction[0]) % p, (y + t * direction[1]) % p, m)
    return pts


def _scaled_pluecker(config: FatPointConfig, points, i: int, t: int, pivots: list[int],
                     base: np.ndarray):
    """Polynomial Plücker vector at shift ``t``, or ``None`` if the fixed pivots fail."""
    a, b, p = config.a, config.b, config.p
    pts = _shifted(points, i, t, config.deformation, p)
    coords = [(x, y) for x, y, _ in pts]
    if len(set(coords)) != len(coords):
        return None
    M = base.copy()
    start = sum(comb(m + 1, 2) for _, _, m in points[:i])
    x, y, m = pts[i]
    M[start:start + comb(m + 1, 2)] = _point_rows(a, b, x, y, m, p)
    n = M.shape[1]
    if len(pivots) != M.shape[0]:
        raise DimensionMismatch("the oracle needs conditions of full row rank")
    rref, _, det_fn = _backend.kernels()
    det = int(det_fn(np.ascontiguousarray(M[:, pivots]) % p, p))
    if det == 0:
        return None
    R = np.ascontiguousarray(M % p)
    piv = rref(R, p)
    if piv != pivots:
        return None
    K = _kernel_from_rref(R, piv, n, p)
    Y = pluecker(restriction(K, b), p)
    k = K.shape[1]
    return (Y * pow(det, k, p)) % p


def _derivative_weights(nodes: list[int], p: int) -> list[int]:
    """``L_j'(0)`` for Lagrange basis polynomials on ``nodes`` (``nodes[0] == 0``)."""
    w = []
    for j, tj in enumerate(nodes):
        if j == 0:
            w.append(-sum(pow(t, -1, p) for t in nodes[1:]) % p)
            continue
        num, den = 1, 1
        for m, tm in enumerate(nodes):
            if m == j:
                continue
            den = den * (tj - tm) % p
            if m != 0:
                num = num * (-tm) % p
        w.append(num * pow(den, -1, p) % p)
    return w


def projective_derivative(Y0: np.ndarray, Y1: np.ndarray, p: int) -> np.ndarray:
    """Derivative of ``Y / Y[j0]`` at ``u = 0`` given value ``Y0`` and derivative ``Y1``."""
    j0 = int(np.flatnonzero(Y0)[0])
    inv = pow(int(Y0[j0]), -1, p)
    return ((Y1 * int(Y0[j0]) - Y0 * int(Y1[j0])) % p) * (inv * inv % p) % p


@dataclass
class OracleResult:
    draws: int
    points_checked: int
    mismatches: int

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def finite_difference_check(config: FatPointConfig, draws: int = 5, seed: int = 0,
                            point_indices=None) -> OracleResult:
    """Compare dual-number derivatives with exact interpolated derivatives.

    Each draw picks fresh random interpolation nodes for every checked point.
    """
    from .pipeline import run_attempts

    att, _ = run_attempts(config)
    points, p, b = att.points, config.p, config.b
    M0 = condition_matrix(config.a, b, points, p)
    rref, _, _ = _backend.kernels()
    R0 = np.ascontiguousarray(M0 % p)
    pivots = rref(R0, p)
    k = M0.shape[1] - len(pivots)
    e = config.a * (config.deformation[0] % p != 0) + b * (config.deformation[1] % p != 0)
    rng = np.random.default_rng(np.random.SeedSequence([seed, config.seed]))
    indices = range(len(points)) if point_indices is None else point_indices
    mismatches = 0
    checked = 0
    for _ in range(draws):
        for i in indices:
            rows_i = comb(points[i][2] + 1, 2)
            degree = k * rows_i * e
            M1i = deformation_matrix(config.a, b, points, p, i, config.deformation)
            Y0d, Y1d = restrict_and_pluecker(kernel_basis(M0, p, M1i), b, p)
            expected = projective_derivative(Y0d, Y1d, p)
            nodes, values = [0], [_scaled_pluecker(config, points, i, 0, pivots, M0)]
            while len(nodes) < degree + 1:
                t = int(rng.integers(1, p))
                if t in nodes:
                    continue
                val = _scaled_pluecker(config, points, i, t, pivots, M0)
                if val is None:
                    continue
                nodes.append(t)
                values.append(val)
            weights = _derivative_weights(nodes, p)
            deriv = np.zeros_like(values[0])
            for wj, vj in zip(weights, values):
                deriv = (deriv + wj * vj) % p
            got = projective_derivative(values[0], deriv, p)
            checked += 1
            if not np.array_equal(got, expected):
                mismatches += 1
    return OracleResult(draws, checked, mismatches)
