import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rsma_parga.errors import DimensionError
from rsma_parga.linalg import (
    hermitian_inner,
    null_space_basis,
    orthonormalize,
    project_onto_subspace,
)


def classical_gram_schmidt(vectors):
    """Independent oracle: plain classical Gram-Schmidt, no rank tricks."""
    basis = []
    for v in vectors:
        w = np.array(v, dtype=complex)
        for b in basis:
            w = w - np.vdot(b, w) * b
        n = np.linalg.norm(w)
        if n > 1e-10:
            basis.append(w / n)
    return basis


def complex_vectors(dim):
    finite = st.floats(min_value=-10, max_value=10, allow_nan=False)
    return arrays(np.float64, (2, dim), elements=finite).map(lambda a: a[0] + 1j * a[1])


class TestHermitianInner:
    def test_all_ones(self):
        assert hermitian_inner([1, 1, 1, 1], [1, 1, 1, 1]) == 4 + 0j

    def test_orthogonal_axes(self):
        assert hermitian_inner([1, 0], [0, 1]) == 0 + 0j

    def test_phase_ramp_geometric_sum(self):
        a = [cmath.exp(1j * n * math.pi / 9) for n in range(4)]
        expected = sum(cmath.exp(-1j * n * math.pi / 9) for n in range(4))
        assert hermitian_inner(a, [1, 1, 1, 1]) == pytest.approx(expected, abs=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            hermitian_inner([1, 0], [1, 0, 0])

    @given(complex_vectors(4), complex_vectors(4))
    def test_conjugate_symmetry(self, a, b):
        assert hermitian_inner(a, b) == pytest.approx(
            hermitian_inner(b, a).conjugate(), abs=1e-9
        )


class TestNullSpaceBasis:
    def test_axis_complement(self):
        basis = null_space_basis([[0, 1]])
        assert len(basis) == 1
        assert abs(hermitian_inner(basis[0], [1, 0])) == pytest.approx(1.0, abs=1e-12)

    def test_empty_rows_full_basis(self):
        basis = null_space_basis([], dim=2)
        assert len(basis) == 2
        for i, bi in enumerate(basis):
            for j, bj in enumerate(basis):
                assert abs(hermitian_inner(bi, bj) - (i == j)) < 1e-10

    def test_empty_rows_without_dim(self):
        with pytest.raises(DimensionError):
            null_space_basis([])

    def test_full_rank_square_input(self):
        assert null_space_basis([[1, 0], [0, 1]]) == []

    def test_scenario_channels(self):
        # h2, h3 of the three-user scenario at theta1=pi/9, theta2=2pi/9
        n = np.arange(4)
        h2 = np.exp(1j * n * math.pi / 9)
        h3 = np.exp(1j * n * 2 * math.pi / 9)
        basis = null_space_basis([h2, h3])
        assert len(basis) == 2
        for b in basis:
            assert abs(hermitian_inner(h2, b)) < 1e-10
            assert abs(hermitian_inner(h3, b)) < 1e-10
        # cross-check the subspace against an independent Gram-Schmidt oracle:
        # oracle null space = complement of GS(h2, h3) inside GS of the full basis
        row_basis = classical_gram_schmidt([h2, h3])
        eye = np.eye(4, dtype=complex)
        oracle = classical_gram_schmidt(row_basis + list(eye))[2:]
        for b in basis:
            proj = project_onto_subspace(b, oracle)
            assert np.linalg.norm(proj - b) < 1e-9

    def test_collinear_rows_counted_once(self):
        basis = null_space_basis([[1, 1, 0], [2, 2, 0]])
        assert len(basis) == 2

    @given(st.lists(complex_vectors(4), min_size=0, max_size=3))
    @settings(max_examples=50)
    def test_orthonormality_and_membership(self, rows):
        basis = null_space_basis(rows, dim=4)
        for i, bi in enumerate(basis):
            for j, bj in enumerate(basis):
                assert abs(hermitian_inner(bi, bj) - (i == j)) < 1e-10
        for r in rows:
            for b in basis:
                assert abs(hermitian_inner(r, b)) < 1e-8 * max(np.linalg.norm(r), 1.0)


class TestProjection:
    def test_in_span_identity(self):
        basis = orthonormalize([[1, 1j, 0], [0, 1, 1]])
        v = 2.0 * basis[0] - (1 + 1j) * basis[1]
        assert np.linalg.norm(project_onto_subspace(v, basis) - v) < 1e-10

    def test_orthogonal_gives_zero(self):
        assert np.linalg.norm(project_onto_subspace([0, 0, 1], [[1, 0, 0]])) == 0.0

    def test_coordinate_projection(self):
        out = project_onto_subspace([1, 1], [[1, 0]])
        assert np.allclose(out, [1, 0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            project_onto_subspace([1, 0, 0], [[1, 0]])

    @given(complex_vectors(4), st.lists(complex_vectors(4), min_size=1, max_size=3))
    @settings(max_examples=50)
    def test_idempotent_contractive_pythagoras(self, v, raw):
        basis = orthonormalize(raw)
        p = project_onto_subspace(v, basis)
        assert np.linalg.norm(project_onto_subspace(p, basis) - p) < 1e-9
        nv, np_, nr = np.linalg.norm(v), np.linalg.norm(p), np.linalg.norm(v - p)
        assert np_ <= nv + 1e-9
        assert nv**2 == pytest.approx(np_**2 + nr**2, rel=1e-9, abs=1e-9)
