import math

import numpy as np
import pytest

from jacobilt.errors import UsageError
from jacobilt.trieig import SymTridiag, all_eigenvalues, eigenvalues_outside, sturm_count

from oracles import free_dirichlet_eigenvalues, random_tridiag, rotation_eigenvalues


class TestSturmCount:
    def test_diagonal_matrix(self):
        T = SymTridiag(np.array([0.0, 1.0, 2.0]), np.zeros(2))
        assert sturm_count(T, 1.5) == 2

    def test_two_by_two(self):
        T = SymTridiag(np.zeros(2), np.ones(1))  # eigenvalues -1, 1
        assert sturm_count(T, 0.0) == 1

    def test_free_laplacian_is_positive(self):
        T = SymTridiag(np.full(10, 2.0), np.full(9, -1.0))
        assert sturm_count(T, 0.0) == 0

    def test_monotone_and_saturates(self):
        rng = np.random.default_rng(10)
        for _ in range(50):
            T = SymTridiag(*random_tridiag(rng))
            lo, hi = T.gershgorin()
            shifts = np.linspace(lo - 1.0, hi + 1.0, 23)
            counts = [sturm_count(T, float(x)) for x in shifts]
            assert counts == sorted(counts)
            assert counts[0] == 0
            assert sturm_count(T, hi + 1e-9) == T.n


class TestAllEigenvalues:
    def test_singleton(self):
        assert all_eigenvalues(SymTridiag(np.array([5.0]), np.zeros(0))).tolist() == [5.0]

    def test_two_by_two(self):
        evs = all_eigenvalues(SymTridiag(np.zeros(2), np.ones(1)))
        np.testing.assert_allclose(evs, [-1.0, 1.0], atol=1e-12)

    def test_dirichlet_laplacian_closed_form(self):
        T = SymTridiag(np.full(5, 2.0), np.full(4, -1.0))
        np.testing.assert_allclose(all_eigenvalues(T), free_dirichlet_eigenvalues(5),
                                   atol=1e-12)

    def test_matches_rotation_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            diag, off = random_tridiag(rng)
            T = SymTridiag(diag, off)
            np.testing.assert_allclose(all_eigenvalues(T, 1e-12),
                                       rotation_eigenvalues(T.to_dense()), atol=1e-9)

    def test_offdiag_sign_flip_invariance(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            diag, off = random_tridiag(rng)
            if len(off) == 0:
                continue
            T = SymTridiag(diag, off)
            flipped = off.copy()
            flipped[rng.integers(0, len(off))] *= -1.0
            np.testing.assert_allclose(all_eigenvalues(T),
                                       all_eigenvalues(SymTridiag(diag, flipped)),
                                       atol=1e-10)

    def test_tol_validation(self):
        with pytest.raises(UsageError):
            all_eigenvalues(SymTridiag(np.array([1.0]), np.zeros(0)), tol=0.0)


class TestEigenvaluesOutside:
    def test_diagonal_example(self):
        T = SymTridiag(np.array([-3.0, 0.0, 3.0]), np.zeros(2))
        below, above = eigenvalues_outside(T, -2.0, 2.0)
        np.testing.assert_allclose(below, [-3.0], atol=1e-12)
        np.testing.assert_allclose(above, [3.0], atol=1e-12)

    @pytest.mark.parametrize("m", [1, 2, 5, 17, 60])
    def test_free_jacobi_has_no_bound_states(self, m):
        T = SymTridiag(np.zeros(m), np.ones(max(m - 1, 0)))
        below, above = eigenvalues_outside(T, -2.0, 2.0)
        assert len(below) == 0 and len(above) == 0

    def test_single_site_closed_form(self):
        margin = 30
        diag = np.zeros(2 * margin + 1)
        diag[margin] = 3.0
        T = SymTridiag(diag, np.ones(2 * margin))
        below, above = eigenvalues_outside(T, -2.0, 2.0, tol=1e-12)
        assert len(below) == 0
        assert above[0] == pytest.approx(math.sqrt(13.0), abs=1e-10)

    def test_counts_match_sturm_differences(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            T = SymTridiag(*random_tridiag(rng))
            below, above = eigenvalues_outside(T, -2.0, 2.0)
            assert len(below) == sturm_count(T, -2.0)
            assert len(above) == T.n - sturm_count(T, 2.0)

    def test_interval_validation(self):
        T = SymTridiag(np.array([0.0]), np.zeros(0))
        with pytest.raises(UsageError):
            eigenvalues_outside(T, 2.0, -2.0)


class TestGershgorin:
    def test_contains_spectrum(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            T = SymTridiag(*random_tridiag(rng))
            lo, hi = T.gershgorin()
            evs = all_eigenvalues(T)
            assert evs[0] >= lo - 1e-12
            assert evs[-1] <= hi + 1e-12
