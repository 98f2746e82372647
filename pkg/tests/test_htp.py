import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsepr.htp import (
    UnderdeterminedSupportError,
    htp_rounds,
    htp_solve,
    least_squares_on_support,
    top_s_indices,
)
from sparsepr.oracle import exhaustive_sparse_ls, rip_estimate


def sparse_vector(rng, n, s):
    x = np.zeros(n)
    x[rng.choice(n, s, replace=False)] = rng.standard_normal(s)
    return x


def test_top_s_examples():
    assert list(top_s_indices([3.0, -5.0, 2.0], 2)) == [0, 1]
    assert list(top_s_indices([1.0, 1.0, 0.0], 1)) == [0]
    assert list(top_s_indices([4.0, -1.0, 2.0], 3)) == [0, 1, 2]


@pytest.mark.parametrize("s", [0, 4])
def test_top_s_bad_s(s):
    with pytest.raises(ValueError):
        top_s_indices([1.0, 2.0, 3.0], s)


@settings(max_examples=200)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=12), st.data())
def test_top_s_matches_sort_oracle(values, data):
    s = data.draw(st.integers(1, len(values)))
    v = np.array(values, dtype=float)
    # oracle: rank by (-|v_i|, i) explicitly
    expected = sorted(sorted(range(len(v)), key=lambda i: (-abs(v[i]), i))[:s])
    assert list(top_s_indices(v, s)) == expected


def test_ls_zero_rhs(rng):
    A = rng.standard_normal((6, 4))
    assert np.array_equal(least_squares_on_support(A, np.zeros(6), [0, 2]), np.zeros(4))


def test_ls_orthonormal_columns(rng):
    Q, _ = np.linalg.qr(rng.standard_normal((8, 3)))
    A = np.hstack([Q, rng.standard_normal((8, 2))])
    b = rng.standard_normal(8)
    x = least_squares_on_support(A, b, [0, 1, 2])
    assert np.allclose(x[:3], Q.T @ b, atol=1e-12)
    assert np.all(x[3:] == 0)


def test_ls_matches_explicit_2x2_inverse(rng):
    A = rng.standard_normal((6, 4))
    b = rng.standard_normal(6)
    S = [0, 2]
    G = A[:, S].T @ A[:, S]
    det = G[0, 0] * G[1, 1] - G[0, 1] * G[1, 0]
    Ginv = np.array([[G[1, 1], -G[0, 1]], [-G[1, 0], G[0, 0]]]) / det
    z = Ginv @ (A[:, S].T @ b)
    x = least_squares_on_support(A, b, S)
    assert np.allclose(x[S], z, atol=1e-10)
    assert x[1] == 0 and x[3] == 0


def test_ls_singular_gram_falls_back_to_min_norm(rng):
    a = rng.standard_normal(6)
    A = np.column_stack([a, a, rng.standard_normal(6)])
    b = rng.standard_normal(6)
    x = least_squares_on_support(A, b, [0, 1])
    expected = np.linalg.pinv(A[:, :2]) @ b
    assert np.allclose(x[:2], expected, atol=1e-10)
    assert x[0] == pytest.approx(x[1])


def test_ls_underdetermined():
    with pytest.raises(UnderdeterminedSupportError):
        least_squares_on_support(np.ones((2, 5)), np.ones(2), [0, 1, 2])


def test_htp_exact_recovery_when_rip_holds(rng):
    # exactness is only promised for delta_3s < 1/3; screen for it empirically
    n, s, m = 60, 3, 400
    checked = 0
    for _ in range(20):
        x = sparse_vector(rng, n, s)
        A = rng.standard_normal((m, n))
        if rip_estimate(A, 3 * s, 100, 1 / m, rng).delta_hat >= 1 / 3:
            continue
        checked += 1
        assert np.linalg.norm(htp_solve(A, A @ x, s, 2 * s) - x) <= 1e-10
    assert checked >= 15


def test_htp_fixed_point_at_truth(rng):
    x = sparse_vector(rng, 30, 3)
    A = rng.standard_normal((40, 30))
    out, support, rounds = htp_rounds(A, A @ x, 3, 5, x, 1 / 40)
    assert np.allclose(out, x, atol=1e-12)
    assert rounds == 1
    assert list(support) == list(np.flatnonzero(x))


def test_htp_matches_exhaustive_oracle(rng):
    # with only 12 rows HTP can stall on a wrong support; the oracle never does worse
    n, s, m = 8, 2, 12
    matches = 0
    for _ in range(200):
        x = sparse_vector(rng, n, s)
        A = rng.standard_normal((m, n))
        b = A @ x
        h = htp_solve(A, b, s, 2 * s)
        o = exhaustive_sparse_ls(A, b, s)
        gap = np.linalg.norm(A @ h - b) - np.linalg.norm(A @ o - b)
        assert gap >= -1e-10
        matches += gap <= 1e-8
        assert np.count_nonzero(h) <= s
    assert matches >= 170


def test_exhaustive_dominates_htp_on_noisy_data(rng):
    n, s, m = 8, 2, 12
    for _ in range(30):
        A = rng.standard_normal((m, n))
        b = A @ sparse_vector(rng, n, s) + 0.3 * rng.standard_normal(m)
        h = htp_solve(A, b, s, 2 * s)
        o = exhaustive_sparse_ls(A, b, s)
        assert np.linalg.norm(A @ o - b) <= np.linalg.norm(A @ h - b) + 1e-12


def test_htp_early_exit_equals_full_rounds(rng):
    A = rng.standard_normal((20, 15))
    b = rng.standard_normal(20)
    x_early, _, rounds = htp_rounds(A, b, 3, 50, np.zeros(15), 1 / 20)
    # reference: the same rounds with no early exit
    x = np.zeros(15)
    for _ in range(50):
        g = x + (A.T @ (b - A @ x)) / 20
        x = least_squares_on_support(A, b, top_s_indices(g, 3))
    assert rounds < 50
    assert np.array_equal(x_early, x)


def test_htp_normal_equation_residual(rng):
    for _ in range(50):
        n = int(rng.integers(5, 40))
        s = int(rng.integers(1, 5))
        m = int(rng.integers(s + 1, 60))
        A = rng.standard_normal((m, n))
        b = rng.standard_normal(m)
        x = htp_solve(A, b, s, 3)
        S = np.flatnonzero(x)
        assert S.size <= s
        grad = A[:, S].T @ (b - A @ x)
        assert np.max(np.abs(grad), initial=0) <= 1e-8 * np.linalg.norm(A, 2) * np.linalg.norm(b)


def test_htp_bad_args(rng):
    A = rng.standard_normal((5, 4))
    with pytest.raises(ValueError):
        htp_solve(A, np.ones(5), 2, 0)
    with pytest.raises(ValueError):
        htp_solve(A, np.ones(5), 2, 2, step_scale=0.0)
    with pytest.raises(ValueError):
        htp_solve(A, np.ones(5), 2, 2, x_start=np.zeros(3))
