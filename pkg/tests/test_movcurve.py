import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablemaps.errors import (BadParameters, DegeneratePivot, DuplicatePoints, RankDeficit,
                               RetriesExhausted)
from stablemaps.movcurve import (DualNumber, FatPointConfig, _backend, condition_matrix,
                                 deformation_matrix, draw_points, finite_difference_check,
                                 kernel_basis, load_config, monomial_basis, moving_curve_check,
                                 pluecker, preset, rank_modp, restrict_and_pluecker)
from stablemaps.movcurve import pipeline
from stablemaps.movcurve.oracle import projective_derivative

P = 32003


def test_monomial_basis_order_and_size():
    assert len(monomial_basis(7, 4)) == 40
    assert len(monomial_basis(5, 4)) == 30
    assert monomial_basis(1, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_condition_matrix_shapes():
    rng = np.random.default_rng(0)
    assert condition_matrix(7, 4, draw_points(12, 2, P, rng), P).shape == (36, 40)
    assert condition_matrix(5, 4, draw_points(9, 2, P, rng), P).shape == (27, 30)
    M = condition_matrix(1, 1, [(3, 5, 2)], P)
    assert M.shape == (3, 4) and rank_modp(M, P) == 3


def test_duplicate_points():
    with pytest.raises(DuplicatePoints):
        condition_matrix(2, 2, [(1, 1, 2), (1, 1, 2)], P)
    with pytest.raises(DuplicatePoints):
        FatPointConfig(2, 2, points=((1, 1, 2), (1 + P, 1, 2)))


def test_zero_matrix_kernel():
    assert kernel_basis(np.zeros((3, 3), dtype=np.int64), P).shape == (3, 3)


def test_preset_kernel_dimensions():
    for name, k, length in (("c3", 4, 5), ("c2", 3, 10)):
        cfg = preset(name)
        pts = draw_points(*cfg.random_points, cfg.p, np.random.default_rng(1))
        M = condition_matrix(cfg.a, cfg.b, pts, cfg.p)
        K = kernel_basis(M, cfg.p)
        assert K.shape[1] == k
        assert not ((M @ K) % cfg.p).any()
        assert len(restrict_and_pluecker(K, cfg.b, cfg.p)) == length


def test_dual_kernel_is_a_kernel_mod_u2():
    cfg = preset("c3")
    pts = draw_points(12, 2, P, np.random.default_rng(3))
    M0 = condition_matrix(7, 4, pts, P)
    M1 = deformation_matrix(7, 4, pts, P, 5)
    K0, K1 = kernel_basis(M0, P, M1)
    assert not ((M0 @ K0) % P).any()
    assert not ((M0 @ K1 + M1 @ K0) % P).any()
    assert np.array_equal(K0, kernel_basis(M0, P))


def test_full_restriction_is_determinant():
    V = np.array([[1, 2], [3, 4]], dtype=np.int64)
    assert list(pluecker(V, P)) == [(1 * 4 - 2 * 3) % P]


def test_rank_deficit_on_degenerate_restriction():
    K = np.zeros((10, 2), dtype=np.int64)
    K[5, 0] = K[6, 1] = 1  # nothing survives on x = 0
    with pytest.raises(RankDeficit):
        restrict_and_pluecker(K, 4, P)


def test_dual_rref_flags_non_unit_rows():
    A0 = np.array([[1, 0], [0, 0]], dtype=np.int64)
    A1 = np.array([[0, 0], [0, 1]], dtype=np.int64)
    with pytest.raises(DegeneratePivot):
        kernel_basis(A0, P, A1)


def test_dual_numbers():
    a, b = DualNumber(3, 5, 7), DualNumber(2, 1, 7)
    assert (a * b) == DualNumber(6, 13, 7)
    assert (a / a) == DualNumber(1, 0, 7)
    assert (a ** 3).derivative == 3 * 9 * 5 % 7
    assert not DualNumber(0, 1, 7).is_unit()
    with pytest.raises(ZeroDivisionError):
        DualNumber(0, 1, 7).inverse()


@pytest.mark.parametrize("name,k,rank", [("c3", 4, 5), ("c2", 3, 7)])
def test_presets_pass(name, k, rank):
    rep = moving_curve_check(preset(name))
    assert (rep.kernel_dim, rep.rank, rep.passed) == (k, rank, True)
    assert (rep.d, rep.r) == (4, k - 1)


def test_wrong_expected_rank_fails():
    cfg = dataclasses.replace(preset("c2"), expected_rank=10)
    rep = moving_curve_check(cfg)
    assert rep.rank == 7 and not rep.passed


def test_report_is_deterministic_and_json():
    a = moving_curve_check(preset("c2").with_seed(11)).to_json()
    b = moving_curve_check(preset("c2").with_seed(11)).to_json()
    assert a == b
    assert json.loads(a)["pass"] is True


def test_rank_ignores_column_scaling():
    cfg = preset("c2")
    pts = draw_points(9, 2, P, np.random.default_rng(5))
    M0 = condition_matrix(5, 4, pts, P)
    K0 = kernel_basis(M0, P)
    scale = np.array([3, 17, 101], dtype=np.int64)
    Y0 = restrict_and_pluecker(K0, 4, P)
    Ys = restrict_and_pluecker((K0 * scale) % P, 4, P)
    rows, rows_s = [], []
    for i in range(9):
        M1 = deformation_matrix(5, 4, pts, P, i)
        K0d, K1d = kernel_basis(M0, P, M1)
        Y0d, Y1d = restrict_and_pluecker((K0d, K1d), 4, P)
        rows.append(pipeline.normalized_derivative(Y0, Y0d, Y1d, P))
        Y0s, Y1s = restrict_and_pluecker(((K0d * scale) % P, (K1d * scale) % P), 4, P)
        rows_s.append(pipeline.normalized_derivative(Ys, Y0s, Y1s, P))
    r1 = rank_modp(np.vstack([rows, Y0[None]]), P)
    r2 = rank_modp(np.vstack([rows_s, Ys[None]]), P)
    assert r1 == r2 == 7


def test_oracle_agrees_and_detects_tampering(monkeypatch):
    assert finite_difference_check(preset("c2"), draws=1).ok
    real = pipeline.restrict_and_pluecker

    def skewed(K, b, p):
        out = real(K, b, p)
        if isinstance(out, tuple):
            return out[0], (out[1] + out[0]) % p * 2 % p
        return out

    import stablemaps.movcurve.oracle as oracle
    monkeypatch.setattr(oracle, "restrict_and_pluecker", skewed)
    assert not finite_difference_check(preset("c2"), draws=1).ok


def test_retries_exhausted(monkeypatch):
    def always_degenerate(config, points):
        raise DegeneratePivot("forced")

    monkeypatch.setattr(pipeline, "_attempt", always_degenerate)
    with pytest.raises(RetriesExhausted):
        moving_curve_check(preset("c2"))


def test_retry_uses_next_stream(monkeypatch):
    real = pipeline._attempt
    calls = []

    def flaky(config, points):
        calls.append(points)
        if len(calls) == 1:
            raise RankDeficit("forced")
        return real(config, points)

    monkeypatch.setattr(pipeline, "_attempt", flaky)
    rep = moving_curve_check(preset("c2"))
    assert rep.attempts == 2 and rep.degenerate_draws == 1 and rep.passed
    assert calls[0] != calls[1]


def test_config_loading(tmp_path):
    toml = tmp_path / "c.toml"
    toml.write_text('a = 5\nb = 4\npoints = "random:9:2"\nexpected_rank = 7\n')
    cfg = load_config(toml)
    assert cfg.expected_kernel_dim == 3 and cfg.p == 32003
    js = tmp_path / "c.json"
    js.write_text(json.dumps(preset("c3").to_dict()))
    assert load_config(js) == preset("c3")
    bad = tmp_path / "bad.json"
    bad.write_text('{"a": 5, "b": 4, "points": "random:9", "zzz": 1}')
    with pytest.raises(BadParameters):
        load_config(bad)


def test_explicit_points_config():
    rng = np.random.default_rng(9)
    pts = draw_points(9, 2, P, rng)
    cfg = FatPointConfig(5, 4, points=pts, expected_rank=7)
    assert moving_curve_check(cfg).passed


def test_config_validation():
    with pytest.raises(BadParameters):
        FatPointConfig(5, 4, random_points=(9, 2), p=32000)
    with pytest.raises(BadParameters):
        FatPointConfig(5, 4, random_points=(9, 1))
    with pytest.raises(BadParameters):
        FatPointConfig(5, 4)


@pytest.mark.skipif(_backend.BACKEND != "cython", reason="compiled kernels not built")
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_backends_agree(m, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, P, (m, n))
    A[rng.random((m, n)) < 0.4] = 0
    B = rng.integers(0, P, (m, n))
    B[rng.random((m, n)) < 0.5] = 0
    outs = []
    for name in ("python", "cython"):
        rref, dual_rref, det = _backend.kernels(name)
        X = np.ascontiguousarray(A.copy())
        piv = rref(X, P)
        Y0, Y1 = np.ascontiguousarray(A.copy()), np.ascontiguousarray(B.copy())
        dual = dual_rref(Y0, Y1, P)
        k = min(m, n)
        d = det(np.ascontiguousarray(A[:k, :k].copy()), P)
        outs.append((X.tolist(), piv, Y0.tolist(), Y1.tolist(), dual, int(d)))
    assert outs[0] == outs[1]


def test_projective_derivative_kills_scaling():
    Y0 = np.array([2, 5, 7], dtype=np.int64)
    Y1 = np.array([1, 0, 3], dtype=np.int64)
    base = projective_derivative(Y0, Y1, P)
    # scaling by (c0 + c1 u) leaves the projective derivative unchanged
    c0, c1 = 9, 4
    assert np.array_equal(projective_derivative((c0 * Y0) % P, (c0 * Y1 + c1 * Y0) % P, P), base)
