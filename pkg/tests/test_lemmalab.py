import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobilt.errors import DomainError, RankDeficiencyError, UsageError
from jacobilt.lattice import CompactPerturbation, LatticeVector, delta, inner
from jacobilt.lemmalab import (
    OrthonormalSystem,
    check_agmon,
    check_al_lifting,
    check_dgsi,
    check_jensen,
    check_sandwich,
    check_unitary_equivalence,
    fuzz_lemmas,
    orthonormalize,
    random_system,
    random_vector,
    sandwich_2x2_gaps,
)


class TestOrthonormalize:
    def test_already_orthonormal(self):
        system = orthonormalize([delta(0), delta(1)])
        assert system.ortho_defect <= 1e-14
        assert inner(system.vectors[0], delta(0)) == pytest.approx(1.0)

    def test_one_projection_step(self):
        system = orthonormalize([delta(0), LatticeVector(0, [1.0, 1.0])])
        assert inner(system.vectors[1], delta(1)) == pytest.approx(1.0, abs=1e-14)
        assert inner(system.vectors[1], delta(0)) == pytest.approx(0.0, abs=1e-14)

    def test_random_batch_defect(self):
        rng = np.random.default_rng(50)
        for _ in range(50):
            system = orthonormalize([random_vector(rng) for _ in range(5)])
            assert system.ortho_defect <= 1e-10

    def test_rank_deficiency_names_index(self):
        with pytest.raises(RankDeficiencyError) as info:
            orthonormalize([delta(0), delta(1), LatticeVector(0, [0.5, -0.25])])
        assert info.value.index == 2


class TestAgmon:
    def test_delta(self):
        assert check_agmon(delta(0)) == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-12)

    def test_two_site_plateau(self):
        assert check_agmon(LatticeVector(0, [1.0, 1.0])) == pytest.approx(1.0, abs=1e-12)

    def test_zero_vector_rejected(self):
        with pytest.raises(UsageError):
            check_agmon(LatticeVector())

    def test_fuzz(self):
        rng = np.random.default_rng(51)
        for _ in range(500):
            assert check_agmon(random_vector(rng)) >= -1e-12

    @given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=15))
    def test_property(self, values):
        if not any(values):
            values = values + [1.0]
        assert check_agmon(LatticeVector(0, values)) >= -1e-12


class TestDgsi:
    def test_single_delta(self):
        assert check_dgsi(orthonormalize([delta(0)])) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_deltas_add(self):
        assert check_dgsi(orthonormalize([delta(0), delta(5)])) == pytest.approx(
            2.0, abs=1e-12)

    @pytest.mark.parametrize("site", [-7, 0, 3])
    def test_translation_invariance(self, site):
        assert check_dgsi(orthonormalize([delta(site)])) == pytest.approx(1.0, abs=1e-12)

    def test_fuzz(self):
        rng = np.random.default_rng(52)
        for _ in range(300):
            assert check_dgsi(random_system(rng)) >= -1e-10

    def test_defective_system_rejected(self):
        crooked = OrthonormalSystem([delta(0), LatticeVector(0, [1.0, 1e-3])], 1e-3)
        with pytest.raises(UsageError):
            check_dgsi(crooked)


class TestUnitaryEquivalence:
    def test_free_case(self):
        assert check_unitary_equivalence([]) <= 1e-12

    def test_given_example(self):
        assert check_unitary_equivalence([1.0, -2.0, 0.5]) <= 1e-12

    def test_fuzz(self):
        rng = np.random.default_rng(53)
        for _ in range(50):
            b = rng.uniform(-5.0, 5.0, int(rng.integers(1, 9)))
            assert check_unitary_equivalence(b) <= 1e-12


class TestLifting:
    def test_polynomial_case_is_machine_exact(self):
        assert check_al_lifting(1.0, 2.0) <= 1e-12

    def test_mu_two_gamma_three(self):
        # closed form: B(2,2) = 1/6 and the integral is 4/3, so the lift gives 8
        assert check_al_lifting(2.0, 3.0) <= 1e-12

    def test_fractional_gamma_at_64_nodes(self):
        assert check_al_lifting(1.0, 1.5, quad_points=64) <= 1e-8

    def test_fuzz(self):
        rng = np.random.default_rng(54)
        for _ in range(300):
            mu = rng.uniform(0.1, 10.0)
            gamma = rng.uniform(1.05, 4.0)
            assert check_al_lifting(mu, gamma) <= 1e-8

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            check_al_lifting(1.0, 1.0)
        with pytest.raises(DomainError):
            check_al_lifting(0.0, 2.0)


class TestJensen:
    def test_equality_at_equal_arguments(self):
        assert check_jensen(1.0, 1.0, 1.0, 2.0) == pytest.approx(0.0, abs=1e-14)

    def test_spread_arguments(self):
        assert check_jensen(1.0, 0.0, 0.0, 2.0) == pytest.approx(2.0, abs=1e-14)

    @given(st.floats(0, 50), st.floats(0, 50), st.floats(0, 50), st.floats(1, 4))
    @settings(max_examples=300)
    def test_property(self, a, b, c, q):
        assert check_jensen(a, b, c, q) >= -1e-12 * max(1.0, (a + b + c) ** q)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            check_jensen(-1.0, 0.0, 0.0, 2.0)
        with pytest.raises(DomainError):
            check_jensen(1.0, 1.0, 1.0, 0.5)


class TestSandwich:
    def test_free_couplings_collapse(self):
        gaps = check_sandwich(CompactPerturbation(0, [1.0]))
        assert gaps[0] >= -1e-12 and gaps[1] >= -1e-12
        assert max(gaps) <= 1e-10  # W^- = W = W^+

    def test_modified_coupling(self):
        gaps = check_sandwich(CompactPerturbation(0, [0.0], [2.0]))
        assert min(gaps) >= -1e-10

    def test_fuzz(self):
        rng = np.random.default_rng(55)
        for _ in range(100):
            k = int(rng.integers(1, 10))
            p = CompactPerturbation(int(rng.integers(-5, 6)),
                                    rng.uniform(-5, 5, k), rng.uniform(0.2, 3.0, k))
            assert min(check_sandwich(p)) >= -1e-10

    @pytest.mark.parametrize("a", [-1.0, 0.5, 3.0])
    def test_two_by_two_closed_form(self, a):
        lower_gap, upper_gap = sandwich_2x2_gaps(a)
        assert lower_gap == pytest.approx(0.0, abs=1e-15)
        assert upper_gap == pytest.approx(0.0, abs=1e-15)

    def test_two_by_two_matches_dense_eigenvalues(self):
        for a in (-1.0, 0.5, 3.0):
            dev = abs(a - 1.0)
            mid = np.array([[0.0, a], [a, 0.0]])
            lower = np.array([[-dev, 1.0], [1.0, -dev]])
            upper = np.array([[dev, 1.0], [1.0, dev]])
            assert np.linalg.eigvalsh(mid - lower).min() == pytest.approx(
                sandwich_2x2_gaps(a)[0], abs=1e-12)
            assert np.linalg.eigvalsh(upper - mid).min() == pytest.approx(
                sandwich_2x2_gaps(a)[1], abs=1e-12)


class TestFuzzDriver:
    def test_summary_shape_and_determinism(self):
        kwargs = dict(agmon=50, dgsi=20, unitary=5, jensen=50, lifting=20, sandwich=5)
        a = fuzz_lemmas(9, **kwargs)
        b = fuzz_lemmas(9, **kwargs)
        assert a == b
        assert a["predicates"]["agmon"]["min"] >= -1e-12
        assert a["predicates"]["unitary"]["max"] <= 1e-12
        assert a["predicates"]["lifting"]["max"] <= 1e-8

    def test_zero_counts_are_skipped(self):
        summary = fuzz_lemmas(0)
        assert summary["predicates"] == {}
