# -*- coding: utf-8 -*-

"""core-linalg 与 Lanczos 内核的测试。"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import haar_pair, random_hermitian, random_matrix
from malnormal.errors import ConvergenceError, DimensionError, InputError, SingularityError
from malnormal.lanczos import lanczos_largest
from malnormal.linalg import (
    check_unitary,
    commutator,
    general_eigvals,
    hs_inner,
    hs_norm,
    normalized_trace,
    operator_norm,
    polar_unitary,
    symmetric_eig,
    traceless_part,
    unitarity_defect,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_hs_inner_identity():
    assert hs_inner(np.eye(4), np.eye(4)) == pytest.approx(4.0)


def test_hs_inner_conjugates_second_argument():
    a = np.array([[1j, 0], [0, 0]])
    b = np.array([[1, 0], [0, 0]])
    assert hs_inner(a, b) == pytest.approx(1j)
    assert hs_inner(b, a) == pytest.approx(-1j)


def test_hs_inner_shape_mismatch():
    with pytest.raises(DimensionError):
        hs_inner(np.eye(2), np.eye(3))


@settings(max_examples=25, deadline=None)
@given(seed=seeds, n=st.integers(2, 8))
def test_hs_norm_adjoint_and_unitary_invariance(seed, n):
    a = random_matrix(n, seed)
    u, v = haar_pair(n, seed + 1)
    assert abs(hs_norm(a) - hs_norm(a.conj().T)) <= 1e-12
    assert abs(hs_norm(u @ a @ v) - hs_norm(a)) <= 1e-10


def test_commutator_with_identity_and_antisymmetry():
    x = random_matrix(5, 1)
    b = random_matrix(5, 2)
    np.testing.assert_allclose(commutator(x, np.eye(5)), 0.0, atol=1e-14)
    np.testing.assert_allclose(commutator(x, b), -commutator(b, x), atol=1e-14)


def test_commutator_dimension_error():
    with pytest.raises(DimensionError):
        commutator(np.eye(2), np.eye(3))
    with pytest.raises(DimensionError):
        commutator(np.ones((2, 3)), np.ones((2, 3)))


@settings(max_examples=25, deadline=None)
@given(seed=seeds, n=st.integers(2, 8))
def test_commutator_split_identity(seed, n):
    x = random_matrix(n, seed)
    b = random_hermitian(n, seed + 1)
    re_x = (x + x.conj().T) / 2
    im_x = (x - x.conj().T) / 2j
    lhs = hs_norm(commutator(x, b)) ** 2
    rhs = hs_norm(commutator(re_x, b)) ** 2 + hs_norm(commutator(im_x, b)) ** 2
    assert abs(lhs - rhs) <= 1e-9


def test_traceless_part_examples():
    np.testing.assert_allclose(traceless_part(np.eye(3)), 0.0, atol=1e-15)
    np.testing.assert_allclose(traceless_part(np.diag([2.0, 0.0])), np.diag([1.0, -1.0]))
    assert normalized_trace(np.diag([2.0, 0.0])) == pytest.approx(1.0)


def test_traceless_part_is_closest_scalar_shift():
    b = random_matrix(4, 3, complex_entries=False)
    best = hs_norm(traceless_part(b))
    assert abs(np.trace(traceless_part(b))) <= 1e-12
    for c in np.linspace(-3, 3, 241):
        assert best <= hs_norm(b - c * np.eye(4)) + 1e-12


def test_operator_norm_examples():
    assert operator_norm(np.diag([3.0, 1.0])) == pytest.approx(3.0, rel=1e-10)
    assert operator_norm(np.zeros((3, 3))) == 0.0
    u, _ = haar_pair(6, 4)
    assert operator_norm(u) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("seed", range(5))
def test_operator_norm_matches_svd(seed):
    x = random_matrix(6, seed)
    assert operator_norm(x) == pytest.approx(np.linalg.norm(x, 2), rel=1e-8)


def test_operator_norm_iteration_cap():
    with pytest.raises(ConvergenceError) as info:
        operator_norm(np.diag([3.0, 1.0]), max_iter=1)
    assert 1.0 < info.value.best < 3.0
    assert info.value.iterations == 1


def test_operator_norm_rejects_bad_tolerance():
    with pytest.raises(InputError):
        operator_norm(np.eye(2), tol=0.0)


def test_symmetric_eig_sorted_and_reconstructs():
    h = random_hermitian(7, 5).real
    eig = symmetric_eig(h, want_vectors=True)
    assert np.all(np.diff(eig.values) >= 0)
    q = eig.vectors
    np.testing.assert_allclose(q.T @ q, np.eye(7), atol=1e-10)
    residual = np.linalg.norm(h - q @ np.diag(eig.values) @ q.T, 2)
    assert residual <= 1e-8 * np.linalg.norm(h, 2)


def test_symmetric_eig_values_only():
    eig = symmetric_eig(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_allclose(eig.values, [-1.0, 2.0, 3.0])
    assert eig.vectors is None


def test_symmetric_eig_rejects_asymmetric():
    with pytest.raises(InputError):
        symmetric_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_general_eigvals_conjugate_pairs():
    a = random_matrix(9, 6, complex_entries=False)
    values = general_eigvals(a).values
    assert values.dtype == np.complex128
    np.testing.assert_array_equal(np.sort_complex(values), np.sort_complex(values.conj()))


@pytest.mark.parametrize("complex_entries", [True, False])
def test_polar_unitary_factor(complex_entries):
    y = random_matrix(6, 7, complex_entries=complex_entries)
    u = polar_unitary(y)
    assert unitarity_defect(u) <= 1e-10
    p = u.conj().T @ y
    np.testing.assert_allclose(p, p.conj().T, atol=1e-10)
    assert np.linalg.eigvalsh((p + p.conj().T) / 2).min() > 0
    assert np.isrealobj(u) == (not complex_entries)


def test_polar_unitary_singular_input():
    with pytest.raises(SingularityError):
        polar_unitary(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_polar_unitary_singular_iterate(monkeypatch):
    """迭代中途求逆失败也报告为 SingularityError。"""
    real_inv = np.linalg.inv
    calls = {"count": 0}

    def flaky_inv(a):
        calls["count"] += 1
        if calls["count"] > 1:
            raise np.linalg.LinAlgError("Singular matrix")
        return real_inv(a)

    monkeypatch.setattr(np.linalg, "inv", flaky_inv)
    y = np.array([[3.0, 1.0], [0.5, 2.0]])
    with pytest.raises(SingularityError):
        polar_unitary(y, tol=1e-300, max_iter=5)


def test_check_unitary():
    check_unitary(np.eye(3))
    with pytest.raises(InputError):
        check_unitary(2 * np.eye(3))


def test_lanczos_diagonal_operator():
    d = np.arange(1.0, 41.0)
    result = lanczos_largest(lambda b: d * b, 40, tol=1e-10, seed=3)
    assert result.converged
    assert result.value == pytest.approx(40.0, abs=1e-8)
    assert abs(abs(result.vector[-1]) - 1.0) <= 1e-6


def test_lanczos_invariant_subspace():
    result = lanczos_largest(lambda b: 2.0 * b, 10, tol=1e-12)
    assert result.value == pytest.approx(2.0)
    assert result.iterations == 1


def test_lanczos_iteration_cap():
    d = np.arange(1.0, 51.0)
    with pytest.raises(ConvergenceError) as info:
        lanczos_largest(lambda b: d * b, 50, tol=1e-14, max_iter=2, seed=0)
    assert not info.value.best.converged
    assert info.value.best.value <= 50.0


def test_lanczos_rejects_bad_arguments():
    with pytest.raises(InputError):
        lanczos_largest(lambda b: b, 0, tol=1e-8)
    with pytest.raises(InputError):
        lanczos_largest(lambda b: b, 3, tol=0.0)
