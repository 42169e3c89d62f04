"""Moving-curve verification over F_p with first-order (dual number) deformations.

For a configuration of fat points, the polynomials of bidegree ``(a, b)``
vanishing to the prescribed orders form a ``k``-dimensional space.  Restricting
them to the line ``x = 0`` gives a point of the Grassmannian ``G(k, b+1)``.
Moving one point to first order moves this Grassmannian point; the family is
moving when these tangent directions span the tangent space of the
Grassmannian.

Monomials are ordered x-degree major: ``x^i y^j`` has index ``i*(b+1) + j``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from ..errors import (DegeneratePivot, DimensionMismatch, DuplicatePoints, RankDeficit,
                      RetriesExhausted)
from . import _backend
from .config import FatPointConfig, Point


def monomial_basis(a: int, b: int) -> list[tuple[int, int]]:
    """Exponent pairs ``(i, j)`` of ``x^i y^j``, x-degree major."""
    if a < 1 or b < 1:
        raise ValueError("bidegree entries must be positive")
    return [(i, j) for i in range(a + 1) for j in range(b + 1)]


def derivative_orders(m: int) -> list[tuple[int, int]]:
    """Orders ``(s, t)`` with ``s + t < m``, by total order then s descending."""
    return [(s, n - s) for n in range(m) for s in range(n, -1, -1)]


def draw_points(n: int, m: int, p: int, rng: np.random.Generator) -> tuple[Point, ...]:
    """``n`` distinct uniform points of F_p^2, each with multiplicity ``m``."""
    if n > p * p:
        raise DuplicatePoints(f"cannot draw {n} distinct points from F_{p}^2")
    seen: set[tuple[int, int]] = set()
    out: list[Point] = []
    while len(out) < n:
        x, y = (int(v) for v in rng.integers(0, p, size=2))
        if (x, y) in seen:
            continue
        seen.add((x, y))
        out.append((x, y, m))
    return tuple(out)


def _point_rows(a: int, b: int, x: int, y: int, m: int, p: int,
                direction: tuple[int, int] | None = None) -> np.ndarray:
    """Hasse derivative rows at ``(x, y)``; with ``direction`` the rows'
    derivative along ``(x, y) + u*direction`` instead."""
    basis = monomial_basis(a, b)
    orders = derivative_orders(m)
    rows = np.zeros((len(orders), len(basis)), dtype=np.int64)
    for r, (s, t) in enumerate(orders):
        for c, (i, j) in enumerate(basis):
            if i < s or j < t:
                continue
            coeff = comb(i, s) * comb(j, t) % p
            ei, ej = i - s, j - t
            if direction is None:
                val = coeff * pow(x, ei, p) * pow(y, ej, p)
            else:
                dx, dy = direction
                val = 0
                if ei:
                    val += dx * ei * pow(x, ei - 1, p) * pow(y, ej, p)
                if ej:
                    val += dy * ej * pow(x, ei, p) * pow(y, ej - 1, p)
                val *= coeff
            rows[r, c] = val % p
    return rows


def condition_matrix(a: int, b: int, points: Sequence[Point], p: int,
                     deform: int | None = None, direction: tuple[int, int] = (1, 0)):
    """Vanishing conditions, one row per derivative of order below each multiplicity.

    With ``deform = i`` returns ``(M0, M1)``: the matrix ``M0 + u*M1`` imposes
    the conditions at point ``i`` moved to ``p_i + u*direction``.
    """
    coords = [(x % p, y % p) for x, y, _ in points]
    if len(set(coords)) != len(coords):
        raise DuplicatePoints("condition points must be distinct")
    blocks = [_point_rows(a, b, x % p, y % p, m, p) for x, y, m in points]
    M0 = np.ascontiguousarray(np.vstack(blocks)) if blocks else np.zeros((0, (a + 1) * (b + 1)), np.int64)
    if deform is None:
        return M0
    return M0, deformation_matrix(a, b, points, p, deform, direction)


def deformation_matrix(a: int, b: int, points: Sequence[Point], p: int, i: int,
                       direction: tuple[int, int] = (1, 0)) -> np.ndarray:
    """The ``u``-part ``M1`` of the conditions when point ``i`` moves along ``direction``."""
    n_rows = sum(comb(m + 1, 2) for _, _, m in points)
    M1 = np.zeros((n_rows, (a + 1) * (b + 1)), dtype=np.int64)
    start = sum(comb(m + 1, 2) for _, _, m in points[:i])
    x, y, m = points[i]
    M1[start:start + comb(m + 1, 2)] = _point_rows(a, b, x % p, y % p, m, p, direction)
    return M1


def _kernel_from_rref(R: np.ndarray, pivots: list[int], n: int, p: int, unit: int = 1) -> np.ndarray:
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for col, f in enumerate(free):
        K[f, col] = unit
        for row, pc in enumerate(pivots):
            K[pc, col] = (-R[row, f]) % p
    return K


def kernel_basis(M0: np.ndarray, p: int, M1: np.ndarray | None = None):
    """Kernel basis columns of ``M0`` (or of ``M0 + u*M1`` over F_p[u]/(u^2)).

    The basis comes from the reduced row echelon form, so it is canonical:
    the constant part of the deformed basis equals the undeformed basis.

    Raises:
        DegeneratePivot: the deformed matrix has no unit-pivot elimination
            (its rank over the dual numbers is not that of ``M0``).
    """
    rref, dual_rref, _ = _backend.kernels()
    n = M0.shape[1]
    if M1 is None:
        R = np.array(M0, dtype=np.int64, order="C") % p
        pivots = rref(R, p)
        return _kernel_from_rref(R, pivots, n, p)
    R0 = np.array(M0, dtype=np.int64, order="C") % p
    R1 = np.array(M1, dtype=np.int64, order="C") % p
    pivots, status = dual_rref(R0, R1, p)
    if status:
        raise DegeneratePivot("a row kept a non-unit leading entry after dual elimination")
    K0 = _kernel_from_rref(R0, pivots, n, p)
    K1 = _kernel_from_rref(R1, pivots, n, p, unit=0)
    return K0, K1


def rank_modp(M: np.ndarray, p: int) -> int:
    rref, _, _ = _backend.kernels()
    R = np.array(M, dtype=np.int64, order="C") % p
    if R.size == 0:
        return 0
    return len(rref(R, p))


def det_modp(A: np.ndarray, p: int) -> int:
    _, _, det = _backend.kernels()
    return int(det(np.array(A, dtype=np.int64, order="C") % p, p))


def restriction(K: np.ndarray, b: int) -> np.ndarray:
    """Rows of the kernel basis for the monomials ``y^j`` (the ``x^0`` block)."""
    return K[: b + 1]


def pluecker(V0: np.ndarray, p: int, V1: np.ndarray | None = None):
    """Maximal minors of ``V0`` (rows subsets in lexicographic order).

    With ``V1`` returns ``(Y0, Y1)``, the minors of ``V0 + u*V1``: each is
    ``det(A0) + u * Σ_j det(A0 with column j taken from A1)``.
    """
    rows, k = V0.shape
    if k > rows:
        raise DimensionMismatch(f"cannot take {k}x{k} minors of a {rows}x{k} matrix")
    Y0, Y1 = [], []
    for S in combinations(range(rows), k):
        A0 = V0[list(S)]
        Y0.append(det_modp(A0, p))
        if V1 is not None:
            A1 = V1[list(S)]
            acc = 0
            for j in range(k):
                B = A0.copy()
                B[:, j] = A1[:, j]
                acc += det_modp(B, p)
            Y1.append(acc % p)
    if V1 is None:
        return np.array(Y0, dtype=np.int64)
    return np.array(Y0, dtype=np.int64), np.array(Y1, dtype=np.int64)


def restrict_and_pluecker(K, b: int, p: int):
    """Plücker vector of the restricted kernel; ``K`` may be ``(K0, K1)``.

    Raises:
        RankDeficit: the restricted space has dimension below the kernel's.
    """
    if isinstance(K, tuple):
        K0, K1 = K
        out = pluecker(restriction(K0, b), p, restriction(K1, b))
        Y0 = out[0]
    else:
        out = pluecker(restriction(K, b), p)
        Y0 = out
    if not Y0.any():
        raise RankDeficit("restriction to x = 0 drops rank; the Plücker vector vanishes")
    return out


def normalized_derivative(Y0: np.ndarray, Y0d: np.ndarray, Y1d: np.ndarray, p: int) -> np.ndarray:
    """u-part of ``Y0d + u*Y1d`` after rescaling so its constant part is ``Y0``.

    The result is defined modulo ``Y0`` itself, which is why ranks are taken
    together with ``Y0``.
    """
    j0 = int(np.flatnonzero(Y0)[0])
    if Y0d[j0] == 0:
        raise DegeneratePivot("deformed Plücker vector lost its normalizing entry")
    w0 = pow(int(Y0d[j0]), -1, p)
    c0 = int(Y0[j0]) * w0 % p
    c1 = (-int(Y0[j0]) * int(Y1d[j0]) % p) * w0 % p * w0 % p
    const = (c0 * Y0d) % p
    if not np.array_equal(const, Y0 % p):
        raise DimensionMismatch("deformed Plücker vector is not a rescaling of the base vector")
    return (c0 * Y1d + c1 * Y0d) % p


@dataclass
class MovingCurveReport:
    name: str
    seed: int
    p: int
    a: int
    b: int
    d: int
    r: int
    n_points: int
    kernel_dim: int
    expected_kernel_dim: int
    rank: int | None
    expected_rank: int | None
    passed: bool
    attempts: int
    degenerate_draws: int
    backend: str
    points: list[list[int]] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        obj = asdict(self)
        obj["pass"] = obj.pop("passed")
        obj.pop("backend")  # keeps the report identical across machines
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


@dataclass
class _Attempt:
    points: tuple[Point, ...]
    kernel_dim: int
    base: np.ndarray | None
    derivatives: np.ndarray | None


def _attempt(config: FatPointConfig, points: tuple[Point, ...]) -> _Attempt:
    a, b, p = config.a, config.b, config.p
    M0 = condition_matrix(a, b, points, p)
    K0 = kernel_basis(M0, p)
    kdim = K0.shape[1]
    if kdim != config.expected_kernel_dim or kdim > b + 1 or kdim == 0:
        return _Attempt(points, kdim, None, None)
    Y0 = restrict_and_pluecker(K0, b, p)
    rows = []
    for i in range(len(points)):
        M1i = deformation_matrix(a, b, points, p, i, config.deformation)
        K = kernel_basis(M0, p, M1i)
        Y0d, Y1d = restrict_and_pluecker(K, b, p)
        rows.append(normalized_derivative(Y0, Y0d, Y1d, p))
    return _Attempt(points, kdim, Y0, np.array(rows, dtype=np.int64))


def point_streams(config: FatPointConfig) -> list[np.random.Generator]:
    """One independent generator per allowed draw, split from the config seed."""
    children = np.random.SeedSequence(config.seed).spawn(config.retries)
    return [np.random.default_rng(s) for s in children]


def run_attempts(config: FatPointConfig) -> tuple[_Attempt, int]:
    """First non-degenerate attempt and the number of degenerate draws before it."""
    if config.points is not None:
        return _attempt(config, config.points), 0
    n, m = config.random_points
    degenerate = 0
    for rng in point_streams(config):
        pts = draw_points(n, m, config.p, rng)
        try:
            return _attempt(config, pts), degenerate
        except (DegeneratePivot, RankDeficit):
            degenerate += 1
    raise RetriesExhausted(f"{degenerate} consecutive degenerate point draws (seed {config.seed})")


def moving_curve_check(config: FatPointConfig) -> MovingCurveReport:
    """Kernel dimension and differential rank for ``config``.

    The rank counts the span of the per-point derivative vectors together with
    the base Plücker vector, i.e. one more than the dimension of the image of
    the differential in the tangent space of the Grassmannian.
    """
    att, degenerate = run_attempts(config)
    rank = None
    if att.base is not None:
        rank = rank_modp(np.vstack([att.derivatives, att.base[None, :]]), config.p)
    passed = (att.kernel_dim == config.expected_kernel_dim and rank is not None
              and (config.expected_rank is None or rank == config.expected_rank))
    return MovingCurveReport(
        name=config.name, seed=config.seed, p=config.p, a=config.a, b=config.b,
        d=config.target_degree, r=att.kernel_dim - 1, n_points=len(att.points),
        kernel_dim=att.kernel_dim, expected_kernel_dim=config.expected_kernel_dim,
        rank=rank, expected_rank=config.expected_rank, passed=passed,
        attempts=degenerate + 1, degenerate_draws=degenerate, backend=_backend.BACKEND,
        points=[list(pt) for pt in att.points],
    )
