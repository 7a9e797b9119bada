import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jacobilt.errors import DomainError
from jacobilt.specfun import beta_fn, constants_for, log_gamma, lt_classical

GAMMA_GRID = (0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0)
IMPROVEMENT = 2.0 * math.sqrt(3.0) / math.pi  # ~1.1026577908


class TestLogGamma:
    def test_gamma_of_one(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)

    def test_gamma_of_half_is_sqrt_pi(self):
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)

    def test_gamma_of_five_is_factorial(self):
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), abs=1e-13)

    def test_against_stdlib_on_dense_grid(self):
        # math.lgamma is itself ~1 ulp, so allow a hair beyond the 1e-13 contract
        for x in np.linspace(1e-3, 100.0, 7001):
            assert log_gamma(float(x)) == pytest.approx(math.lgamma(float(x)), abs=2e-13)

    def test_contract_accuracy_against_mpmath(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 40
        rng = np.random.default_rng(42)
        xs = np.concatenate([rng.uniform(1e-6, 100.0, 400), [0.5, 1.0, 13.0, 100.0]])
        for x in xs:
            true = float(mp.loggamma(mp.mpf(float(x))))
            assert abs(log_gamma(float(x)) - true) <= 1e-13

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
    def test_domain_error(self, bad):
        with pytest.raises(DomainError):
            log_gamma(bad)


class TestClassicalConstant:
    def test_three_halves(self):
        assert lt_classical(1.5) == pytest.approx(3.0 / 16.0, rel=1e-12)

    def test_one(self):
        # Gamma(2) = 1, Gamma(5/2) = (3/4) sqrt(pi)
        assert lt_classical(1.0) == pytest.approx(2.0 / (3.0 * math.pi), rel=1e-12)

    def test_half(self):
        # Gamma(3/2) = sqrt(pi)/2, Gamma(2) = 1
        assert lt_classical(0.5) == pytest.approx(0.25, rel=1e-12)

    def test_strictly_decreasing(self):
        grid = np.arange(0.5, 5.0 + 1e-9, 0.01)
        values = [lt_classical(float(g)) for g in grid]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_domain_error(self):
        with pytest.raises(DomainError):
            lt_classical(0.49)


class TestBeta:
    def test_unit_square(self):
        assert beta_fn(1.0, 1.0) == pytest.approx(1.0, rel=1e-12)

    def test_two_two(self):
        assert beta_fn(2.0, 2.0) == pytest.approx(1.0 / 6.0, rel=1e-12)

    def test_half_half_is_pi(self):
        assert beta_fn(0.5, 0.5) == pytest.approx(math.pi, rel=1e-12)

    @given(st.floats(0.05, 40.0), st.floats(0.05, 40.0))
    def test_symmetry(self, x, y):
        assert beta_fn(x, y) == pytest.approx(beta_fn(y, x), rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            beta_fn(0.0, 1.0)
        with pytest.raises(DomainError):
            beta_fn(1.0, -2.0)


class TestConstants:
    def test_gamma_one_values(self):
        c = constants_for(1.0)
        assert c.c_new_schrodinger == pytest.approx(2.0 / (3.0 * math.sqrt(3.0)), rel=1e-12)
        assert c.c_new_jacobi == pytest.approx(2.0 / 3.0, rel=1e-12)
        assert c.c_hs == pytest.approx(4.0 / (math.sqrt(3.0) * math.pi), rel=1e-12)

    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    def test_improvement_ratio_is_gamma_free(self, gamma):
        c = constants_for(gamma)
        assert c.improvement_ratio == pytest.approx(IMPROVEMENT, abs=1e-12)

    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    def test_all_positive_and_ordered(self, gamma):
        c = constants_for(gamma)
        for value in (c.l_classical, c.c_hs, c.c_new_schrodinger, c.c_new_jacobi):
            assert value > 0.0
        assert c.c_new_jacobi < c.c_hs

    def test_validity_flag(self):
        assert not constants_for(0.75).new_valid
        assert constants_for(1.0).new_valid

    def test_domain_error(self):
        with pytest.raises(DomainError):
            constants_for(0.3)
