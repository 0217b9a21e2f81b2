"""
Tests for dense linear algebra over F_q and the bit-packed kernels.
"""
import numpy as np
import pytest

from addequiv.core.fieldcore import InvalidFieldElement
from addequiv.core.linalg import (
    DimensionMismatch,
    GfMatrix,
    NoSolution,
    Singular,
    has_base_field_eigenvalue,
    hstack,
    invert,
    kron,
    null_space,
    nullity,
    quadratic_residual,
    rank,
    row_basis,
    row_space_contains,
    row_space_equal,
    row_space_intersection,
    rref,
    solve,
    unvec,
    vec,
    vstack,
)
from addequiv.core.packed import pack_bits, rank_bitrows, unpack_bits
from addequiv.services.addcode import random_invertible
from tests.helpers import matrix


def random_matrix(spec, rows, cols, rng):
    return GfMatrix.from_array(spec, rng.integers(0, spec.q, size=(rows, cols)))


class TestRref:
    """Tests for row reduction on both elimination paths."""

    def test_identity_is_reduced(self, gf4):
        """rref(I) = I with every column a pivot."""
        eye = GfMatrix.identity(gf4, 4)
        result = rref(eye)
        assert result.matrix == eye
        assert result.pivots == [0, 1, 2, 3]
        assert result.rank == 4

    def test_known_rank(self, gf9):
        """A matrix with a repeated row has rank 2."""
        m = matrix(gf9, [[1, 2, 0], [0, 1, 1], [1, 2, 0]])
        assert rank(m) == 2

    @pytest.mark.parametrize("fixture", ["gf4", "gf16"])
    def test_packed_matches_generic(self, fixture, request, rng):
        """Bit-packed and galois elimination give the same RREF and pivots."""
        spec = request.getfixturevalue(fixture)
        for rows, cols in [(5, 9), (12, 70), (70, 12), (33, 130)]:
            m = random_matrix(spec, rows, cols, rng)
            packed = rref(m, method="packed")
            generic = rref(m, method="generic")
            assert packed.matrix == generic.matrix
            assert packed.pivots == generic.pivots

    def test_packed_rejects_other_fields(self, gf9):
        """Packed elimination only exists for q in {2, 4}."""
        with pytest.raises(ValueError):
            rref(GfMatrix.identity(gf9, 2), method="packed")

    def test_empty_matrix(self, gf4):
        """A 0 x 5 matrix has rank 0."""
        assert rank(GfMatrix.zeros(gf4, 0, 5)) == 0


class TestPackedBits:
    """Tests for the uint64 bit-packing helpers."""

    def test_pack_unpack(self, rng):
        """Unpacking restores the original bits across word boundaries."""
        bits = rng.integers(0, 2, size=(7, 150), dtype=np.uint8)
        assert np.array_equal(unpack_bits(pack_bits(bits), 150), bits)

    def test_rank_bitrows(self):
        """0b011 is the XOR of the other two rows."""
        assert rank_bitrows([0b001, 0b010, 0b011]) == 2
        assert rank_bitrows([]) == 0


class TestNullSpaceAndSolve:
    """Tests for null spaces, inversion and linear systems."""

    @pytest.mark.parametrize("fixture", ["gf4", "gf9", "gf16"])
    def test_rank_plus_nullity(self, fixture, request, rng):
        """rank(m) + nullity(m) = cols, with a null-space basis of full rank."""
        spec = request.getfixturevalue(fixture)
        for _ in range(30):
            rows, cols = (int(v) for v in rng.integers(1, 9, size=2))
            m = random_matrix(spec, rows, cols, rng)
            basis = null_space(m)
            assert rank(m) + nullity(m) == cols
            assert basis.rows == nullity(m)
            assert rank(basis) == basis.rows

    @pytest.mark.parametrize("fixture", ["gf4", "gf9", "gf16"])
    def test_null_space_annihilates(self, fixture, request, rng):
        """m x^T = 0 for every basis row x, and dimensions add up."""
        spec = request.getfixturevalue(fixture)
        m = random_matrix(spec, 4, 7, rng)
        basis = null_space(m)
        assert basis.rows == m.cols - rank(m)
        assert (m @ basis.T).is_zero()
        assert rank(basis) == basis.rows

    def test_invert(self, gf9, rng):
        """m m^{-1} = I."""
        m = random_invertible(gf9, 5, rng)
        assert m @ invert(m) == GfMatrix.identity(gf9, 5)

    def test_invert_singular(self, gf4):
        """A rank-1 matrix has no inverse."""
        with pytest.raises(Singular):
            invert(matrix(gf4, [[1, 1], [1, 1]]))

    def test_invert_non_square(self, gf4):
        """Only square matrices are invertible."""
        with pytest.raises(DimensionMismatch):
            invert(GfMatrix.zeros(gf4, 2, 3))

    def test_solve(self, gf9, rng):
        """solve returns X with a X = b for a consistent system."""
        a = random_matrix(gf9, 6, 4, rng)
        x = random_matrix(gf9, 4, 2, rng)
        b = a @ x
        assert a @ solve(a, b) == b

    def test_solve_inconsistent(self, gf4):
        """b outside the column space raises NoSolution."""
        a = matrix(gf4, [[1, 0], [0, 0]])
        b = matrix(gf4, [[0], [1]])
        with pytest.raises(NoSolution):
            solve(a, b)

    def test_shape_mismatch(self, gf4):
        """Adding matrices of different shapes is rejected."""
        with pytest.raises(DimensionMismatch):
            GfMatrix.zeros(gf4, 2, 2) + GfMatrix.zeros(gf4, 2, 3)

    def test_invalid_entries(self, gf4):
        """Entries must encode elements of F_q."""
        with pytest.raises(InvalidFieldElement):
            matrix(gf4, [[0, 2]])


class TestKronecker:
    """Tests for kron / vec / unvec."""

    def test_vec_identity(self, gf9, rng):
        """vec(A X B) = (B^T (x) A) vec(X)."""
        A = random_matrix(gf9, 3, 4, rng)
        X = random_matrix(gf9, 4, 2, rng)
        B = random_matrix(gf9, 2, 5, rng)
        assert vec(A @ X @ B) == kron(B.T, A) @ vec(X)

    def test_unvec_inverts_vec(self, gf4, rng):
        """unvec(vec(m)) = m."""
        m = random_matrix(gf4, 3, 5, rng)
        assert unvec(vec(m), 3, 5) == m

    def test_kron_shape(self, gf4):
        """kron of 2x3 and 4x5 is 8x15."""
        assert kron(GfMatrix.zeros(gf4, 2, 3), GfMatrix.zeros(gf4, 4, 5)).shape == (8, 15)

    @pytest.mark.parametrize("fixture", ["gf4", "gf9", "gf16"])
    def test_kron_mixed_product(self, fixture, request, rng):
        """(A (x) B)(C (x) D) = (A C) (x) (B D)."""
        spec = request.getfixturevalue(fixture)
        for _ in range(10):
            A = random_matrix(spec, 2, 3, rng)
            B = random_matrix(spec, 3, 2, rng)
            C = random_matrix(spec, 3, 4, rng)
            D = random_matrix(spec, 2, 3, rng)
            assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)


class TestRowSpaces:
    """Tests for row-space comparisons and intersections."""

    def test_row_space_equal_under_basis_change(self, gf9, rng):
        """P G spans the same space as G for invertible P."""
        G = random_matrix(gf9, 3, 6, rng)
        P = random_invertible(gf9, 3, rng)
        assert row_space_equal(G, P @ G)
        assert row_basis(G) == row_basis(P @ G)

    def test_intersection(self, gf4):
        """Two planes in F_2^4 sharing one line intersect in dimension 1."""
        a = matrix(gf4, [[1, 0, 0, 0], [0, 1, 0, 0]])
        b = matrix(gf4, [[1, 1, 0, 0], [0, 0, 1, 0]])
        common = row_space_intersection(a, b)
        assert common.rows == 1
        assert common == matrix(gf4, [[1, 1, 0, 0]])

    @pytest.mark.parametrize("fixture", ["gf4", "gf9"])
    def test_intersection_dimension(self, fixture, request, rng):
        """dim(A ∩ B) = rank A + rank B - rank [A; B], and the basis lies in both."""
        spec = request.getfixturevalue(fixture)
        for _ in range(40):
            cols = int(rng.integers(2, 8))
            a = random_matrix(spec, int(rng.integers(1, cols + 1)), cols, rng)
            b = random_matrix(spec, int(rng.integers(1, cols + 1)), cols, rng)
            common = row_space_intersection(a, b)
            assert common.rows == rank(a) + rank(b) - rank(vstack([a, b]))
            assert rank(common) == common.rows
            if common.rows:
                assert row_space_contains(a, common)
                assert row_space_contains(b, common)

    def test_contains(self, gf4):
        """The sum of two rows lies in their span."""
        a = matrix(gf4, [[1, 0, 1], [0, 1, 1]])
        assert row_space_contains(a, matrix(gf4, [[1, 1, 0]]))
        assert not row_space_contains(a, matrix(gf4, [[0, 0, 1]]))

    def test_stacking(self, gf4):
        """hstack and vstack concatenate shapes."""
        a = GfMatrix.identity(gf4, 2)
        assert hstack([a, a]).shape == (2, 4)
        assert vstack([a, a]).shape == (4, 2)


class TestSpectral:
    """Tests for the eigenvalue and quadratic helpers."""

    @pytest.mark.parametrize("fixture", ["gf4", "gf9", "gf16"])
    def test_companion_roots(self, fixture, request):
        """M_omega satisfies the minimal polynomial and has no F_q eigenvalue."""
        spec = request.getfixturevalue(fixture)
        M = GfMatrix.from_array(spec, spec.companion)
        assert quadratic_residual(M).is_zero()
        assert not has_base_field_eigenvalue(M)

    def test_identity_has_eigenvalue(self, gf9):
        """I has eigenvalue 1."""
        assert has_base_field_eigenvalue(GfMatrix.identity(gf9, 3))

    def test_det(self, gf9):
        """det [[1, 2], [1, 1]] = 1 - 2 = -1 = 2 in F_3."""
        assert matrix(gf9, [[1, 2], [1, 1]]).det() == 2
