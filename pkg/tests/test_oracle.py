import itertools

import pytest

from conftest import EX1, random_matrices
from balindex.bruteforce import (
    FullModuleMatrix,
    oracle_bal,
    oracle_certificate,
    oracle_symmetric_image,
)
from balindex.errors import OracleCapExceeded
from balindex.intlinalg import Lattice, least_positive_multiple
from balindex.matrices import IntMatrix, Permutation, conjugate, mean_matrix


class TestOracleBal:
    def test_completely_symmetric(self):
        for n in (2, 3, 4, 5):
            assert oracle_bal(IntMatrix.completely_symmetric(n, 2, -1)) == 1

    def test_two_by_two_dichotomy(self):
        assert oracle_bal(IntMatrix([[0, 1], [0, 0]])) == 2
        assert oracle_bal(IntMatrix([[5, 2], [2, 5]])) == 1

    def test_worked_example(self):
        assert oracle_bal(EX1) == 3

    def test_order_one(self):
        assert oracle_bal(IntMatrix([[7]])) == 1

    def test_cap(self):
        with pytest.raises(OracleCapExceeded):
            oracle_bal(IntMatrix.zero(5), cap=100)

    def test_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("BALANCE_ORACLE_CAP", "10")
        with pytest.raises(OracleCapExceeded):
            oracle_bal(IntMatrix.zero(4))
        monkeypatch.setenv("BALANCE_ORACLE_CAP", "5040")
        assert oracle_bal(IntMatrix.zero(4)) == 1

    def test_relabeling_invariance(self):
        A = random_matrices(60, 1, 4, 2)[0]
        b = oracle_bal(A)
        for images in itertools.permutations(range(4)):
            assert oracle_bal(conjugate(A, Permutation(images))) == b

    def test_column_order_independence(self):
        # accumulate the column lattice in a scrambled order; same result
        A = EX1
        full = FullModuleMatrix(A)
        perm_order = list(range(len(full.columns)))
        perm_order = perm_order[1::2] + perm_order[0::2]
        lat = Lattice(17)
        for idx in perm_order:
            lat.add_generator(full.columns[idx])
        mean = mean_matrix(A)
        nums = tuple(mean.numerator.vec()) + (mean.denominator,)
        assert least_positive_multiple(lat, nums, mean.denominator) == 3


class TestSymmetricImage:
    def test_complete_graph(self):
        A = IntMatrix.completely_symmetric(4, -1, 1)
        b, image, ab = oracle_symmetric_image(A)
        assert b == 1 and image == A and ab == (-1, 1)

    def test_worked_example_image(self):
        b, image, ab = oracle_symmetric_image(EX1)
        assert b == 3
        assert image == IntMatrix.completely_symmetric(4, -5, 5)

    def test_diag_example(self):
        A = IntMatrix([[0, 0, 0], [0, 1, 0], [0, 0, 2]])
        b, image, ab = oracle_symmetric_image(A)
        assert b == 1 and image == IntMatrix.identity(3)


class TestOracleCertificate:
    def test_small_orders(self):
        for A in [
            IntMatrix([[0, 1], [0, 0]]),
            IntMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        ]:
            b = oracle_bal(A)
            cert = oracle_certificate(A)
            assert cert.coefficient_sum() == b
            assert cert.evaluate(A) == mean_matrix(A).scaled(b).to_int_matrix()

    def test_rejects_non_integral_target(self):
        A = EX1  # mean is (5/3)(J - I); 1 * mean is not integral
        with pytest.raises(ValueError):
            oracle_certificate(A, value=1)
