import numpy as np
import pytest

from helpers import random_spd
from matcanon.core import fro
from matcanon.errors import PreconditionError
from matcanon.williamson import (
    involution,
    random_symplectic,
    symplectic_residual,
    symplectic_spectrum,
    symplectic_spectrum_oracle,
    uniqueness_check,
    williamson,
)


def williamson_residuals(a, form):
    n = form.half_dim
    j = involution(n)
    dd = np.diag(np.concatenate([form.d, form.d]))
    return {
        "reconstruction": fro(form.l.T @ dd @ form.l - a) / fro(a),
        "ltjl": fro(form.l.T @ j @ form.l - j),
        "ljlt": fro(form.l @ j @ form.l.T - j),
        "inverse": fro(np.linalg.inv(form.l) - (-j) @ form.l.T @ j) / fro(form.l),
    }


class TestInvolution:
    def test_exact_algebra(self):
        for n in (1, 2, 5):
            j = involution(n)
            np.testing.assert_array_equal(j @ j, -np.eye(2 * n))
            np.testing.assert_array_equal(j.T, -j)

    def test_rejects_zero(self):
        with pytest.raises(PreconditionError):
            involution(0)


class TestWilliamson:
    def test_identity(self):
        form = williamson(np.eye(6))
        np.testing.assert_array_equal(form.d, np.ones(3))
        res = williamson_residuals(np.eye(6), form)
        assert all(v <= 1e-12 for v in res.values())
        # L is orthogonal symplectic here
        assert fro(form.l @ form.l.T - np.eye(6)) <= 1e-12

    def test_two_by_two_closed_form(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            a1, a2 = rng.uniform(0.2, 5.0, size=2)
            form = williamson(np.diag([a1, a2]))
            # oracle: the eigenvalues of J a are +/- i sqrt(a1 a2)
            oracle = np.abs(np.linalg.eigvals(involution(1) @ np.diag([a1, a2])).imag)
            assert form.d[0] == pytest.approx(np.sqrt(a1 * a2), rel=1e-12)
            assert form.d[0] == pytest.approx(oracle[0], rel=1e-10)

    def test_construct_then_recover(self):
        target = np.array([3.0, 2.0, 0.5])
        n = random_symplectic(3, 17)
        a = n.T @ np.diag(np.concatenate([target, target])) @ n
        a = (a + a.T) / 2.0
        form = williamson(a)
        assert np.max(np.abs(form.d - target) / target) <= 1e-6
        res = williamson_residuals(a, form)
        assert res["reconstruction"] <= 1e-8
        assert res["ltjl"] <= 1e-8 and res["ljlt"] <= 1e-8

    def test_random_corpus_residuals(self):
        for seed in range(10):
            a = random_spd(seed, max_half=8)
            form = williamson(a)
            res = williamson_residuals(a, form)
            assert res["reconstruction"] <= 1e-8
            assert res["ltjl"] <= 1e-8
            assert res["ljlt"] <= 1e-8
            assert res["inverse"] <= 1e-7
            assert np.all(np.diff(form.d) <= 0)
            assert np.all(form.d > 0)

    def test_rejects_odd_dimension(self):
        with pytest.raises(PreconditionError, match="odd dimension"):
            williamson(np.eye(3))

    def test_rejects_asymmetric(self):
        with pytest.raises(PreconditionError):
            williamson(np.array([[2.0, 1.0], [0.0, 2.0]]))

    def test_rejects_indefinite(self):
        with pytest.raises(PreconditionError):
            williamson(np.diag([1.0, -1.0]))

    def test_rejects_singular(self):
        with pytest.raises(PreconditionError):
            williamson(np.diag([1.0, 0.0]))


class TestSymplecticResidual:
    def test_identity_and_j(self):
        assert symplectic_residual(np.eye(4)) == 0.0
        assert symplectic_residual(involution(2)) == 0.0

    def test_squeeze(self):
        assert symplectic_residual(np.diag([2.0, 0.5])) == 0.0

    def test_shears(self):
        rng = np.random.default_rng(1)
        c = rng.uniform(-1, 1, size=(3, 3))
        c = (c + c.T) / 2.0
        eye = np.eye(3)
        lower = np.block([[eye, np.zeros((3, 3))], [c, eye]])
        upper = np.block([[eye, c], [np.zeros((3, 3)), eye]])
        assert symplectic_residual(lower) <= 1e-14
        assert symplectic_residual(upper) <= 1e-14

    def test_rejects_odd(self):
        with pytest.raises(PreconditionError):
            symplectic_residual(np.eye(3))


class TestOracle:
    def test_identity(self):
        np.testing.assert_allclose(symplectic_spectrum_oracle(np.eye(4)), [1.0, 1.0])

    def test_diag_pair(self):
        d = symplectic_spectrum_oracle(np.diag([4.0, 1.0]))
        assert d[0] == pytest.approx(2.0, rel=1e-12)

    def test_matches_main_route(self):
        for seed in range(8):
            a = random_spd(seed, max_half=6)
            d1 = symplectic_spectrum(a)
            d2 = symplectic_spectrum_oracle(a)
            assert np.max(np.abs(d1 - d2) / d1) <= 1e-9

    def test_layout_example(self):
        # (q1, q2, p1, p2) layout: diag(1,2,3,4) pairs (1,3) and (2,4)
        d = symplectic_spectrum(np.diag([1.0, 2.0, 3.0, 4.0]))
        oracle = symplectic_spectrum_oracle(np.diag([1.0, 2.0, 3.0, 4.0]))
        np.testing.assert_allclose(d, oracle, rtol=1e-9)
        np.testing.assert_allclose(np.sort(d), [np.sqrt(3.0), np.sqrt(8.0)], rtol=1e-12)


class TestRandomSymplectic:
    def test_residuals(self):
        for n, seed in [(1, 0), (2, 5), (4, 9)]:
            s = random_symplectic(n, seed)
            assert symplectic_residual(s) <= 1e-10

    def test_two_by_two_determinant(self):
        s = random_symplectic(1, 3)
        assert np.linalg.det(s) == pytest.approx(1.0, rel=1e-12)

    def test_deterministic_in_seed(self):
        np.testing.assert_array_equal(random_symplectic(3, 7), random_symplectic(3, 7))
        assert not np.array_equal(random_symplectic(3, 7), random_symplectic(3, 8))


class TestUniquenessAndScaling:
    def test_identity(self):
        assert uniqueness_check(np.eye(4), trials=5, seed=0) <= 1e-8

    def test_block_constant(self):
        assert uniqueness_check(np.diag([3.0, 3.0, 2.0, 2.0]), trials=10, seed=1) <= 1e-6

    def test_random_spd(self):
        a = random_spd(2, max_half=3)
        assert uniqueness_check(a, trials=25, seed=2) <= 1e-6

    def test_scaling_covariance(self):
        a = random_spd(5, max_half=4)
        d = symplectic_spectrum(a)
        for c in (0.25, 3.0):
            dc = symplectic_spectrum(c * a)
            assert np.max(np.abs(dc - c * d) / (c * d)) <= 1e-9
