"""
Tests for minimum-distance enumeration.
"""
from unittest.mock import patch

import pytest

from addequiv.config import get_settings
from addequiv.core.linalg import GfMatrix
from addequiv.models.codes import AdditiveCode, CodeError
from addequiv.services.addcode import random_code, random_linear_code
from addequiv.services.distance import BudgetExceeded, min_distance
from tests.helpers import brute_force_distance, matrix


class TestMinDistance:
    """Tests for min_distance against exhaustive message enumeration."""

    @pytest.mark.parametrize("fixture", ["gf4", "gf9", "gf16"])
    def test_matches_brute_force(self, fixture, request, rng):
        """Gray-code enumeration finds the same minimum as plain enumeration."""
        spec = request.getfixturevalue(fixture)
        max_k = {2: 8, 3: 5, 4: 4}[spec.q]
        for _ in range(15):
            n = int(rng.integers(2, 7))
            k = int(rng.integers(1, min(2 * n, max_k) + 1))
            code = random_code(spec, n, k, rng)
            assert min_distance(code) == brute_force_distance(code)

    def test_small_low_block(self, gf9, rng):
        """A tiny DISTANCE_CHUNK forces long Gray walks with the same result."""
        code = random_code(gf9, 5, 5, rng)
        expected = brute_force_distance(code)
        with patch.object(get_settings(), "DISTANCE_CHUNK", 3):
            assert min_distance(code) == expected

    @pytest.mark.parametrize("workers", [2, 3, 7])
    def test_workers_agree(self, gf4, rng, workers):
        """Splitting the Gray walk across threads gives the same minimum."""
        code = random_linear_code(gf4, 10, 4, rng).to_additive()
        with patch.object(get_settings(), "DISTANCE_CHUNK", 8):
            assert min_distance(code, workers=workers) == min_distance(code, workers=1)

    def test_weight_one_codeword(self, gf4):
        """A unit vector gives distance 1."""
        code = AdditiveCode(spec=gf4, n=3, G=matrix(gf4, [[0, 1, 0, 0, 0, 0], [1, 1, 1, 0, 1, 1]]))
        assert min_distance(code) == 1

    def test_repetition_code(self, gf4):
        """phi of the F_4 repetition code has distance n."""
        code = AdditiveCode(spec=gf4, n=4, G=matrix(gf4, [[1, 0] * 4, [0, 1] * 4]))
        assert min_distance(code) == 4

    def test_budget_exceeded(self, gf4, rng):
        """2^12 codewords do not fit a budget of 2^10."""
        code = random_code(gf4, 8, 12, rng)
        with pytest.raises(BudgetExceeded) as exc:
            min_distance(code, budget=2 ** 10)
        assert exc.value.required == 2 ** 12
        assert exc.value.budget == 2 ** 10

    def test_zero_code(self, gf4):
        """The zero code has no nonzero codeword."""
        code = AdditiveCode(spec=gf4, n=2, G=GfMatrix.zeros(gf4, 0, 4))
        with pytest.raises(CodeError):
            min_distance(code)
