import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hermitian_eigenvalues, leibniz_det
from symnorm.blocks import BlockMatrix
from symnorm.counterexamples import (
    FamilySpec,
    build_family,
    det_commuting_blocks,
    example_Ny,
    example_Ny_eigenvalues,
    example_T,
    example_T_eigenvalues,
    quadratic_eigs,
    search_psd_violations,
    verify_violation,
)
from symnorm.errors import BlocksDoNotCommute, HypothesisNotMet, SignViolation
from symnorm.inequalities import Hypothesis, classify
from symnorm.numkernel import det, eigvalsh, is_psd
from symnorm.sampling import crandn, random_family_arrays, random_hermitian

seeds = st.integers(0, 2**32 - 1)
WORKED = FamilySpec([1, 2], [-0.5, -1], np.diag([1, 2]))


class TestFamily:
    def test_worked_spectrum(self):
        np.testing.assert_allclose(eigvalsh(build_family(WORKED).full), [3, 1.5, -1, -2], atol=1e-12)

    def test_trivial(self):
        n = build_family(FamilySpec([0], [-1], [0]))
        np.testing.assert_array_equal(n.full, np.diag([0, -1]))

    def test_single_against_determinant(self):
        roots = quadratic_eigs(FamilySpec([2], [-1], [3]))
        # det [[2-mu, 3], [3, -1-mu]] = mu^2 - mu - 11
        for mu in roots.pairs[0]:
            assert (2 - mu) * (-1 - mu) - 9 == pytest.approx(0, abs=1e-12)
        assert roots.x[0] + roots.y[0] == pytest.approx(1, abs=1e-12)
        assert roots.x[0] * roots.y[0] == pytest.approx(-11, abs=1e-12)

    def test_sign_violation(self):
        with pytest.raises(SignViolation):
            build_family(FamilySpec([-1], [-1], [1]))
        with pytest.raises(SignViolation):
            build_family(FamilySpec([1], [0], [1]))

    def test_flags_literal(self):
        # a = 0 and d = 0 give a*b - d = 0, which is not < 0
        spec = FamilySpec([0, 1], [-1, -0.5], [0, 1])
        np.testing.assert_array_equal(spec.prod_ok, [False, True])
        np.testing.assert_array_equal(spec.sum_ok, [False, True])
        assert not spec.valid


class TestQuadraticEigs:
    def test_worked(self):
        r = quadratic_eigs(WORKED)
        np.testing.assert_allclose(r.pairs, [(1.5, -1), (3, -2)], atol=1e-15)

    def test_zero_coupling(self):
        r = quadratic_eigs(FamilySpec([1, 4], [-2, -3], [0, 0]))
        np.testing.assert_array_equal(r.pairs, [(1, -2), (4, -3)])

    def test_tiny_coupling_no_cancellation(self):
        r = quadratic_eigs(FamilySpec([1.0], [-1.0], [1e-9]))
        # mu = +-sqrt(1 + 1e-18)
        assert r.x[0] * r.y[0] == pytest.approx(-1 - 1e-18, rel=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(seed=seeds, n=st.integers(1, 6))
    def test_vieta_and_spectrum(self, seed, n):
        rng = np.random.default_rng(seed)
        spec = FamilySpec(*random_family_arrays(rng, n))
        r = quadratic_eigs(spec)
        np.testing.assert_allclose(r.x + r.y, spec.a + spec.b, atol=1e-12)
        np.testing.assert_allclose(r.x * r.y, spec.a * spec.b - spec.d, atol=1e-12)
        np.testing.assert_allclose(r.eigenvalues(), eigvalsh(build_family(spec).full), atol=1e-10)
        assert np.all(r.x > 0) and np.all(r.y < 0)
        assert np.all(r.x >= np.abs(r.y))

    def test_against_charpoly_oracle(self, rng):
        for _ in range(5):
            spec = FamilySpec(*random_family_arrays(rng, 2))
            ref = hermitian_eigenvalues(build_family(spec).full.tolist())
            np.testing.assert_allclose(quadratic_eigs(spec).eigenvalues(), ref, atol=1e-10)


class TestVerifyViolation:
    def test_worked(self):
        rep = verify_violation(WORKED)
        assert rep.confirmed
        np.testing.assert_allclose(rep.dominance.lower.cumsum, [3, 5, 6.5, 7.5], atol=1e-10)
        np.testing.assert_allclose(rep.dominance.upper.cumsum, [1, 1.5, 1.5, 1.5], atol=1e-10)

    def test_single(self):
        rep = verify_violation(FamilySpec([5], [-1], [math.sqrt(6)]))
        x = 2 + math.sqrt(15)
        assert rep.roots.x[0] == pytest.approx(x, abs=1e-12)
        assert rep.roots.y[0] == pytest.approx(4 - x, abs=1e-12)
        assert rep.margins[0] == pytest.approx(x - 4, abs=1e-12)
        assert rep.confirmed

    def test_not_met(self):
        with pytest.raises(HypothesisNotMet):
            verify_violation(FamilySpec([1], [-2], [1]))

    @settings(max_examples=60, deadline=None)
    @given(seed=seeds, n=st.integers(1, 6))
    def test_random_valid(self, seed, n):
        spec = FamilySpec(*random_family_arrays(np.random.default_rng(seed), n))
        rep = verify_violation(spec)
        assert not rep.n_psd and not rep.minus_n_psd
        assert np.all(rep.margins > 0)


class TestDetShortcut:
    def test_diagonal_family(self):
        m = build_family(WORKED).full
        assert det_commuting_blocks(m) == pytest.approx(leibniz_det(m), rel=1e-12)
        # product of roots: (1.5)(-1)(3)(-2)
        assert det_commuting_blocks(m) == pytest.approx(9)

    def test_zero_c(self, rng):
        a, b, d = crandn(rng, 3, 3), crandn(rng, 3, 3), crandn(rng, 3, 3)
        m = np.block([[a, b], [np.zeros((3, 3)), d]])
        assert det_commuting_blocks(m) == pytest.approx(leibniz_det(a) * leibniz_det(d), rel=1e-10)

    def test_identity_a(self, rng):
        b, c, d = crandn(rng, 2, 2), crandn(rng, 2, 2), crandn(rng, 2, 2)
        m = np.block([[np.eye(2), b], [c, d]])
        assert det_commuting_blocks(m) == pytest.approx(leibniz_det(d - c @ b), rel=1e-10)
        assert det_commuting_blocks(m) == pytest.approx(leibniz_det(m), rel=1e-10)

    def test_polynomial_blocks(self, rng):
        z = crandn(rng, 3, 3)
        a = z @ z + 2 * z
        c = np.eye(3) - 0.5 * z
        b, d = crandn(rng, 3, 3), crandn(rng, 3, 3)
        m = np.block([[a, b], [c, d]])
        assert det_commuting_blocks(m) == pytest.approx(leibniz_det(m), rel=1e-8)

    def test_rejects(self, rng):
        m = crandn(rng, 4, 4)
        with pytest.raises(BlocksDoNotCommute):
            det_commuting_blocks(m)


class TestExamples:
    def test_T_entries(self):
        t = example_T()
        assert t.A[0, 0] == 0.3 and t.A[1, 1] == 5
        assert t.X[0, 1] == 1j / 11 and t.X[1, 0] == 1j
        np.testing.assert_allclose(eigvalsh(t.full), example_T_eigenvalues(), atol=1e-12)
        assert example_T_eigenvalues()[2] == pytest.approx(0.39, abs=0.01)
        assert example_T_eigenvalues()[3] == pytest.approx(0.21, abs=0.01)

    @pytest.mark.parametrize("y", [-2.0, -0.1, 0.0, 0.5, 0.99, 3.0])
    def test_Ny(self, y):
        n = example_Ny(y)
        np.testing.assert_allclose(eigvalsh(n.full), example_Ny_eigenvalues(y), atol=1e-12)
        np.testing.assert_allclose(eigvalsh(n.full), hermitian_eigenvalues(n.full.tolist()), atol=1e-10)
        assert bool(is_psd(n.full)) == (y >= 0)

    def test_Ny_matrix(self):
        expected = [[2, 0, 0, 2], [0, 0.5, 0, 0], [0, 0, 1, 0], [2, 0, 0, 2]]
        np.testing.assert_array_equal(example_Ny(0.5).full, expected)


class TestSearch:
    def test_zero_trials(self):
        assert search_psd_violations(2, 0, 42) == []

    def test_corpus(self):
        hits = search_psd_violations(2, 0, 0, corpus=[example_T(), example_Ny(-1)])
        assert len(hits) == 1
        assert hits[0].trial is None
        assert hits[0].first_violation == 1
        assert hits[0].min_margin == pytest.approx(-0.7, abs=1e-12)

    def test_deterministic_and_replayable(self):
        h1 = search_psd_violations(2, 200, 42)
        h2 = search_psd_violations(2, 200, 42)
        assert [h.trial for h in h1] == [h.trial for h in h2]
        assert h1, "no violators in 200 trials"
        for h in h1:
            assert is_psd(h.matrix.full)
            assert classify(h.matrix)[0] is Hypothesis.NONE
        replay = search_psd_violations(2, h1[0].trial + 1, 42)
        np.testing.assert_array_equal(replay[-1].matrix.full, h1[0].matrix.full)

    def test_classified_corpus_never_hits(self, rng):
        a = random_hermitian(rng, 2)
        m = BlockMatrix(a @ a + 3 * np.eye(2), np.eye(2), a @ a + 3 * np.eye(2))
        assert search_psd_violations(2, 0, 0, corpus=[m]) == []

    @pytest.mark.slow
    def test_ten_thousand(self):
        hits = search_psd_violations(2, 10_000, 42)
        assert all(h.trial is not None for h in hits)
        assert [h.trial for h in hits] == sorted(h.trial for h in hits)


def test_det_matches_kernel(rng):
    for _ in range(20):
        z = crandn(rng, 2, 2)
        m = np.block([[np.diag(crandn(rng, 2)), crandn(rng, 2, 2)], [np.diag(crandn(rng, 2)), z]])
        assert det_commuting_blocks(m) == pytest.approx(det(m), rel=1e-8)
