import json

import numpy as np
import pytest

from jacobilt.errors import UsageError
from jacobilt.lattice import (
    CompactPerturbation,
    LatticeVector,
    apply_d,
    apply_d_adjoint,
    apply_jacobi,
    apply_laplacian,
    delta,
    inner,
    norm,
)


def random_vector(rng, max_len=12):
    length = int(rng.integers(1, max_len + 1))
    return LatticeVector(int(rng.integers(-8, 9)), rng.standard_normal(length))


def as_pairs(v: LatticeVector):
    return {v.offset + i: x for i, x in enumerate(v.values) if x != 0.0}


class TestLatticeVector:
    def test_trimming(self):
        v = LatticeVector(3, [0.0, 0.0, 1.0, 2.0, 0.0])
        assert v.offset == 5
        assert v.values.tolist() == [1.0, 2.0]

    def test_zero_vector_canonical(self):
        v = LatticeVector(7, [0.0, 0.0])
        assert len(v) == 0 and v.offset == 0

    def test_norm_squared_is_sum_of_squares(self):
        v = LatticeVector(-2, [3.0, 4.0])
        assert norm(v) == pytest.approx(5.0)

    def test_value_at(self):
        v = LatticeVector(1, [2.0, 5.0])
        assert v.value_at(0) == 0.0
        assert v.value_at(2) == 5.0


class TestInnerNorm:
    def test_disjoint_deltas(self):
        assert inner(delta(0), delta(1)) == 0.0

    def test_delta_norm(self):
        assert norm(delta(0)) == 1.0

    def test_inner_self_is_norm_squared(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            u = random_vector(rng)
            assert inner(u, u) == pytest.approx(norm(u) ** 2, rel=1e-12)


class TestDifferenceOperator:
    def test_delta(self):
        d = apply_d(delta(0))
        assert as_pairs(d) == {-1: 1.0, 0: -1.0}

    def test_constant_window_telescopes(self):
        v = LatticeVector(2, np.full(6, 3.25))
        d = apply_d(v)
        assert as_pairs(d) == {1: 3.25, 7: -3.25}

    def test_zero_vector(self):
        assert len(apply_d(LatticeVector())) == 0

    def test_adjointness(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            u, v = random_vector(rng), random_vector(rng)
            assert inner(apply_d(u), v) == pytest.approx(
                inner(u, apply_d_adjoint(v)), abs=1e-12)


class TestLaplacian:
    def test_delta_stencil(self):
        lap = apply_laplacian(delta(0))
        assert as_pairs(lap) == {-1: -1.0, 0: 2.0, 1: -1.0}

    def test_linear_profile_vanishes_inside(self):
        v = LatticeVector(0, np.arange(1.0, 9.0))
        lap = apply_laplacian(v)
        for n in range(1, 7):  # interior sites of the window
            assert lap.value_at(n) == pytest.approx(0.0, abs=1e-14)

    def test_quadratic_form_matches_gradient_norm(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            phi = random_vector(rng)
            lhs = inner(apply_laplacian(phi), phi)
            rhs = norm(apply_d(phi)) ** 2
            assert lhs == pytest.approx(rhs, abs=1e-12 * max(1.0, rhs))

    def test_is_exactly_the_composition(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            phi = random_vector(rng)
            composed = apply_d_adjoint(apply_d(phi))
            direct = apply_laplacian(phi)
            assert direct.offset == composed.offset
            np.testing.assert_array_equal(direct.values, composed.values)


class TestCompactPerturbation:
    def test_validation(self):
        with pytest.raises(UsageError):
            CompactPerturbation(0, [1.0], [0.0])  # a must be positive
        with pytest.raises(UsageError):
            CompactPerturbation(0, [1.0, 2.0], [1.0])  # length mismatch

    def test_trims_free_margins(self):
        p = CompactPerturbation(0, [0.0, 1.0, 0.0], [1.0, 1.0, 2.0])
        assert p.offset == 1
        assert p.b.tolist() == [1.0, 0.0]
        assert p.a.tolist() == [1.0, 2.0]

    def test_lookup_outside_window(self):
        p = CompactPerturbation(2, [1.0])
        assert p.b_at(0) == 0.0 and p.a_at(0) == 1.0
        assert p.b_at(2) == 1.0

    def test_json_round_trip(self, tmp_path):
        p = CompactPerturbation(-1, [0.5, -2.0], [1.5, 1.0])
        path = tmp_path / "pert.json"
        path.write_text(json.dumps(p.to_json_dict()))
        q = CompactPerturbation.from_json_file(path)
        assert q.offset == p.offset
        np.testing.assert_array_equal(q.b, p.b)
        np.testing.assert_array_equal(q.a, p.a)

    def test_json_omitted_a_defaults_to_ones(self):
        q = CompactPerturbation.from_json_dict({"offset": 4, "b": [1.0, 2.0]})
        assert q.a.tolist() == [1.0, 1.0]

    def test_json_rejects_garbage(self):
        with pytest.raises(UsageError):
            CompactPerturbation.from_json_dict({"offset": 1})


class TestJacobiAction:
    def test_free_action_on_delta(self):
        out = apply_jacobi(CompactPerturbation(), delta(0))
        assert as_pairs(out) == {-1: 1.0, 1: 1.0}

    def test_single_site_potential(self):
        p = CompactPerturbation(0, [5.0])
        out = apply_jacobi(p, delta(0))
        assert as_pairs(out) == {-1: 1.0, 0: 5.0, 1: 1.0}

    def test_symmetry(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            k = int(rng.integers(1, 6))
            p = CompactPerturbation(int(rng.integers(-3, 4)),
                                    rng.uniform(-4, 4, k), rng.uniform(0.3, 2.5, k))
            u, v = random_vector(rng), random_vector(rng)
            assert inner(apply_jacobi(p, u), v) == pytest.approx(
                inner(u, apply_jacobi(p, v)), abs=1e-11)

    def test_empty_perturbation_is_free_shift_sum(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            u = random_vector(rng)
            out = apply_jacobi(CompactPerturbation(), u)
            for n in range(u.offset - 2, u.end + 2):
                assert out.value_at(n) == pytest.approx(
                    u.value_at(n - 1) + u.value_at(n + 1), abs=1e-14)
