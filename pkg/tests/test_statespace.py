"""State-space core: characteristic polynomials, transfer recovery, simulation."""

import math
import random
from fractions import Fraction

import pytest

from realizer import (
    ImpulseRecord,
    Matrix,
    Polynomial,
    RationalFunction,
    StateSpace,
    TransferMatrix,
    char_poly,
    impulse_response,
    leverrier,
    similarity_transform,
    transfer_matrix,
)
from realizer.errors import DimensionError, JsonFormatError, SingularMatrixError

from helpers import (
    char_matrix,
    mat_poly_eval,
    poly_det,
    rand_matrix,
    rand_nonsingular,
    rand_statespace,
)

S = Polynomial.s()

GOLDEN = StateSpace(
    Matrix([[-1, 0, 0], [0, 0, 1], [0, 1, 0]]),
    Matrix([[1, 0], [0, 0], [0, 1]]),
    Matrix([[1, 0, 1]]),
)


class TestValidation:
    def test_nonsquare_a(self):
        with pytest.raises(DimensionError):
            StateSpace(Matrix([[1, 2]]), Matrix([[1], [1]]), Matrix([[1, 1]]))

    def test_b_row_mismatch(self):
        with pytest.raises(DimensionError):
            StateSpace(Matrix([[1]]), Matrix([[1], [1]]), Matrix([[1]]))

    def test_c_col_mismatch(self):
        with pytest.raises(DimensionError):
            StateSpace(Matrix([[1]]), Matrix([[1]]), Matrix([[1, 1]]))

    def test_dimensions_exposed(self):
        assert GOLDEN.n == 3
        assert GOLDEN.inputs == 2
        assert GOLDEN.outputs == 1


class TestJson:
    def test_round_trip(self):
        rng = random.Random(7)
        for _ in range(15):
            ss = rand_statespace(rng)
            assert StateSpace.from_json(ss.to_json()) == ss

    def test_zero_state_round_trip(self):
        ss = StateSpace(Matrix([], cols=0), Matrix([], cols=2), Matrix([[], []]))
        blob = ss.to_json()
        assert blob["inputs"] == 2
        back = StateSpace.from_json(blob)
        assert back == ss
        assert back.inputs == 2 and back.outputs == 2

    def test_minimal_keys_accepted(self):
        ss = StateSpace.from_json({"A": [[-1]], "B": [[1]], "C": [[1]]})
        assert ss.n == 1

    def test_error_taxonomy(self):
        with pytest.raises(JsonFormatError):
            StateSpace.from_json([1, 2])
        with pytest.raises(JsonFormatError):
            StateSpace.from_json({"A": [[1]], "B": [[1]]})
        with pytest.raises(JsonFormatError):
            StateSpace.from_json({"A": [[1]], "B": [[1]], "C": [[1]], "D": [[0]]})
        with pytest.raises(JsonFormatError):
            StateSpace.from_json({"A": [[1.5]], "B": [[1]], "C": [[1]]})
        with pytest.raises(DimensionError):
            StateSpace.from_json({"A": [[1, 0]], "B": [[1]], "C": [[1]]})


class TestCharPoly:
    def test_goldens(self):
        assert char_poly(Matrix([[-1]])) == S + 1
        assert char_poly(Matrix([[0, 1], [1, 0]])) == S * S - 1
        assert char_poly(Matrix.zeros(2, 2)) == S * S
        assert char_poly(GOLDEN) == S**3 + S**2 - S - 1

    def test_nonsquare_rejected(self):
        with pytest.raises(DimensionError):
            char_poly(Matrix([[1, 2]]))

    def test_empty_matrix(self):
        assert char_poly(Matrix([], cols=0)) == Polynomial.one()

    def test_matches_cofactor_determinant(self):
        rng = random.Random(11)
        for _ in range(20):
            n = rng.randint(1, 4)
            a = rand_matrix(rng, n, n, -3, 3)
            assert char_poly(a) == poly_det(char_matrix(a))

    def test_cayley_hamilton(self):
        rng = random.Random(13)
        for _ in range(30):
            n = rng.randint(1, 6)
            a = rand_matrix(rng, n, n, -2, 2)
            assert mat_poly_eval(char_poly(a), a).is_zero


class TestLeverrier:
    def test_golden_sequence(self):
        a = Matrix([[0, 1], [1, 0]])
        coeffs, mats = leverrier(a)
        assert coeffs == [Fraction(1), Fraction(0), Fraction(-1)]
        assert mats[0] == Matrix.identity(2)
        assert mats[1] == a

    def test_adjugate_identity(self):
        # (sI - A) * (N1 s^{n-1} + ... + Nn) = char(s) * I, entrywise in s.
        rng = random.Random(17)
        for _ in range(10):
            n = rng.randint(1, 4)
            a = rand_matrix(rng, n, n, -2, 2)
            coeffs, mats = leverrier(a)
            p = char_poly(a)
            smatrix = char_matrix(a)
            adj = [
                [
                    sum(
                        (
                            Polynomial([mats[k][i, j]]) * S ** (n - 1 - k)
                            for k in range(n)
                        ),
                        Polynomial.zero(),
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ]
            for i in range(n):
                for j in range(n):
                    got = sum(
                        (smatrix[i][k] * adj[k][j] for k in range(n)),
                        Polynomial.zero(),
                    )
                    want = p if i == j else Polynomial.zero()
                    assert got == want


class TestTransferMatrixRecovery:
    def test_one_state(self):
        ss = StateSpace(Matrix([[-1]]), Matrix([[1]]), Matrix([[1]]))
        g = transfer_matrix(ss)
        assert g[0, 0] == RationalFunction(1, S + 1)

    def test_worked_three_state_system(self):
        g = transfer_matrix(GOLDEN)
        assert g.rows == 1 and g.cols == 2
        assert g[0, 0] == RationalFunction(1, S + 1)
        assert g[0, 1] == RationalFunction(S, S * S - 1)

    def test_zero_state_system(self):
        ss = StateSpace(Matrix([], cols=0), Matrix([], cols=3), Matrix([[], []]))
        g = transfer_matrix(ss)
        assert g == TransferMatrix.zeros(2, 3)

    def test_degenerate_io_rejected(self):
        no_inputs = StateSpace(Matrix([[1]]), Matrix([[]], cols=0), Matrix([[1]]))
        with pytest.raises(DimensionError):
            transfer_matrix(no_inputs)
        no_outputs = StateSpace(Matrix([[1]]), Matrix([[1]]), Matrix([], cols=1))
        with pytest.raises(DimensionError):
            transfer_matrix(no_outputs)

    def test_strictly_proper_always(self):
        rng = random.Random(19)
        for _ in range(15):
            ss = rand_statespace(rng, max_n=4)
            if ss.n == 0:
                continue
            assert transfer_matrix(ss).is_strictly_proper


class TestSimilarity:
    def test_identity_is_noop(self):
        assert similarity_transform(GOLDEN, Matrix.identity(3)) == GOLDEN

    def test_scaling_transform(self):
        t = 2 * Matrix.identity(3)
        out = similarity_transform(GOLDEN, t)
        assert out.A == GOLDEN.A
        assert out.B == Matrix([[Fraction(1, 2), 0], [0, 0], [0, Fraction(1, 2)]])
        assert out.C == Matrix([[2, 0, 2]])
        assert transfer_matrix(out) == transfer_matrix(GOLDEN)

    def test_random_transform_preserves_transfer(self):
        rng = random.Random(23)
        for _ in range(10):
            ss = rand_statespace(rng, max_n=4)
            if ss.n == 0 or ss.inputs == 0 or ss.outputs == 0:
                continue
            t = rand_nonsingular(rng, ss.n)
            out = similarity_transform(ss, t)
            assert transfer_matrix(out) == transfer_matrix(ss)
            assert char_poly(out) == char_poly(ss)

    def test_singular_transform_rejected(self):
        with pytest.raises(SingularMatrixError):
            similarity_transform(GOLDEN, Matrix.zeros(3, 3))

    def test_wrong_shape_rejected(self):
        with pytest.raises(DimensionError):
            similarity_transform(GOLDEN, Matrix.identity(2))


class TestImpulseResponse:
    def test_first_channel_is_decaying_exponential(self):
        rec = impulse_response(GOLDEN, 0, 2.0, 1e-3)
        worst = max(
            abs(y - math.exp(-t)) for t, y in zip(rec.times, rec.outputs[0])
        )
        assert worst < 1e-8

    def test_second_channel_is_cosh(self):
        rec = impulse_response(GOLDEN, 1, 2.0, 1e-3)
        worst = max(
            abs(y - math.cosh(t)) for t, y in zip(rec.times, rec.outputs[0])
        )
        assert worst < 1e-8

    def test_zero_input_matrix_gives_zero_output(self):
        ss = StateSpace(Matrix([[-1]]), Matrix([[0]]), Matrix([[1]]))
        rec = impulse_response(ss, 0, 1.0, 0.01)
        assert all(v == 0.0 for series in rec.outputs for v in series)

    def test_scalar_family_matches_exponential(self):
        for a in (-2, -1, 0, 1, 2):
            ss = StateSpace(Matrix([[a]]), Matrix([[3]]), Matrix([[2]]))
            rec = impulse_response(ss, 0, 1.0, 1e-3)
            worst = max(
                abs(y - 6.0 * math.exp(a * t))
                for t, y in zip(rec.times, rec.outputs[0])
            )
            assert worst < 1e-8

    def test_channel_bounds(self):
        with pytest.raises(DimensionError):
            impulse_response(GOLDEN, 2, 1.0, 0.01)
        with pytest.raises(DimensionError):
            impulse_response(GOLDEN, -1, 1.0, 0.01)

    def test_step_validation(self):
        with pytest.raises(ValueError):
            impulse_response(GOLDEN, 0, 1.0, 0.0)
        with pytest.raises(ValueError):
            impulse_response(GOLDEN, 0, 1.0, -0.1)
        with pytest.raises(ValueError):
            impulse_response(GOLDEN, 0, 1.0, 1.0)

    def test_grid_layout(self):
        rec = impulse_response(GOLDEN, 0, 1.0, 0.25)
        assert rec.times == (0.0, 0.25, 0.5, 0.75, 1.0)
        assert rec.channel == 0
        assert len(rec.outputs) == GOLDEN.outputs
        assert all(len(series) == len(rec.times) for series in rec.outputs)


class TestImpulseRecord:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            ImpulseRecord(0, (0.0, 1.0), ((1.0,),))
        with pytest.raises(ValueError):
            ImpulseRecord(0, (0.5, 1.0), ((1.0, 2.0),))
        with pytest.raises(ValueError):
            ImpulseRecord(0, (0.0, 0.0), ((1.0, 2.0),))

    def test_csv_golden(self):
        rec = ImpulseRecord(0, (0.0, 0.5), ((1.0, 0.25), (2.0, -1.0)))
        assert rec.to_csv() == "t,y1,y2\n0,1,2\n0.5,0.25,-1\n"
