"""Companion-form construction, SISO and assembled MIMO."""

import random
from fractions import Fraction

import pytest

from realizer import (
    Matrix,
    Polynomial,
    RationalFunction,
    TransferMatrix,
    realize_mimo,
    realize_siso,
    transfer_matrix,
)
from realizer.errors import PropernessError

from helpers import rand_strictly_proper, rand_transfer

S = Polynomial.s()


def rf(num, den=1):
    return RationalFunction(num, den)


class TestSiso:
    def test_first_order_lag(self):
        r = realize_siso(rf(1, S + 1))
        assert r.A == Matrix([[-1]])
        assert r.b == Matrix([[1]])
        assert r.c == Matrix([[1]])
        assert r.n == 1
        assert r.source == rf(1, S + 1)

    def test_second_order_with_zero(self):
        r = realize_siso(rf(S, S * S - 1))
        assert r.A == Matrix([[0, 1], [1, 0]])
        assert r.b == Matrix([[0], [1]])
        assert r.c == Matrix([[0, 1]])

    def test_integrator(self):
        r = realize_siso(rf(1, S))
        assert r.A == Matrix([[0]])
        assert r.b == Matrix([[1]])
        assert r.c == Matrix([[1]])

    def test_rejects_non_strictly_proper(self):
        for g in (rf(S), rf(S + 1, S + 2), rf(1), rf(0)):
            with pytest.raises(PropernessError):
                realize_siso(g)

    def test_transfer_recovered(self):
        rng = random.Random(37)
        for _ in range(30):
            g = rand_strictly_proper(rng)
            r = realize_siso(g)
            ss = realize_mimo(TransferMatrix([[g]]))
            assert (ss.A, ss.B, ss.C) == (r.A, r.b, r.c)
            assert transfer_matrix(ss)[0, 0] == g

    def test_companion_structure(self):
        rng = random.Random(41)
        for _ in range(20):
            g = rand_strictly_proper(rng, max_degree=5)
            r = realize_siso(g)
            n = r.n
            assert n == g.den.degree
            for i in range(n - 1):
                for j in range(n):
                    want = 1 if j == i + 1 else 0
                    assert r.A[i, j] == want
            assert r.A.row(n - 1) == tuple(-c for c in g.den.coeffs[:n])
            assert r.b.column(0) == (0,) * (n - 1) + (1,)
            padded = g.num.coeffs + (Fraction(0),) * (n - len(g.num.coeffs))
            assert r.c.row(0) == padded


class TestMimo:
    def test_worked_example(self):
        G = TransferMatrix([[rf(1, S + 1), rf(S, S * S - 1)]])
        ss = realize_mimo(G)
        assert ss.A == Matrix([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
        assert ss.B == Matrix([[1, 0], [0, 0], [0, 1]])
        assert ss.C == Matrix([[1, 0, 1]])
        assert transfer_matrix(ss) == G

    def test_all_zero_matrix(self):
        ss = realize_mimo(TransferMatrix.zeros(2, 2))
        assert ss.n == 0
        assert ss.inputs == 2
        assert ss.outputs == 2
        assert transfer_matrix(ss) == TransferMatrix.zeros(2, 2)

    def test_diagonal_matrix(self):
        G = TransferMatrix([[rf(1, S + 1), rf(0)], [rf(0), rf(1, S + 2)]])
        ss = realize_mimo(G)
        assert ss.A == Matrix([[-1, 0], [0, -2]])
        assert ss.B == Matrix.identity(2)
        assert ss.C == Matrix.identity(2)

    def test_block_order_is_input_major(self):
        # Column 1 first (two blocks, rows 1 then 2), then column 2.
        G = TransferMatrix(
            [
                [rf(1, S + 1), rf(1, S + 3)],
                [rf(1, S + 2), rf(0)],
            ]
        )
        ss = realize_mimo(G)
        assert ss.A == Matrix([[-1, 0, 0], [0, -2, 0], [0, 0, -3]])
        assert ss.B == Matrix([[1, 0], [1, 0], [0, 1]])
        assert ss.C == Matrix([[1, 0, 1], [0, 1, 0]])

    def test_dimension_is_sum_of_entry_degrees(self):
        rng = random.Random(43)
        for _ in range(15):
            G = rand_transfer(rng)
            ss = realize_mimo(G)
            want = sum(
                G[i, j].den.degree
                for i in range(G.rows)
                for j in range(G.cols)
                if not G[i, j].is_zero
            )
            assert ss.n == want

    def test_round_trip(self):
        rng = random.Random(47)
        for _ in range(25):
            G = rand_transfer(rng)
            assert transfer_matrix(realize_mimo(G)) == G

    def test_error_names_offending_entry(self):
        G = TransferMatrix(
            [
                [rf(1, S + 1), rf(S + 1, S + 2)],
                [rf(1), rf(1, S)],
            ]
        )
        with pytest.raises(PropernessError) as exc:
            realize_mimo(G)
        # Input-major scan hits (2,1) before (1,2).
        assert exc.value.entry == (2, 1)
        assert "(2,1)" in str(exc.value)

    def test_error_position_in_row_scan(self):
        G = TransferMatrix([[rf(1, S + 1), rf(S, S + 1)]])
        with pytest.raises(PropernessError) as exc:
            realize_mimo(G)
        assert exc.value.entry == (1, 2)
