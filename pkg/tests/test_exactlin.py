from __future__ import annotations

from fractions import Fraction as F

import pytest

from qcalg.exactlin import (
    GF,
    QQ,
    FieldMismatchError,
    GFElement,
    Matrix,
    Subspace,
    echelonize,
    field_named,
    kernel,
    preimage,
    solve,
)


def vec(*entries):
    return {j: F(v) for j, v in enumerate(entries) if v}


def span(ambient, *vectors):
    return Subspace.span(QQ, ambient, [vec(*v) for v in vectors])


class TestFields:
    def test_rational_exactness(self):
        a, b = F(1, 3), F(7, 11)
        assert a / b * b == a

    def test_gf_arithmetic(self):
        f = GF(7)
        a, b = f.from_int(3), f.from_int(5)
        assert (a / b * b) == a
        assert (a + b).val == 1
        assert (-a).val == 4

    def test_gf_requires_prime(self):
        with pytest.raises(ValueError):
            GF(6)

    def test_gf_mismatch(self):
        with pytest.raises(FieldMismatchError):
            GFElement(1, 5) + GFElement(1, 7)

    def test_parse_and_format(self):
        assert QQ.parse("-3/4") == F(-3, 4)
        assert QQ.format(F(5, 2)) == "5/2"
        assert GF(7).parse("1/2").val == 4  # 2 * 4 = 8 = 1 mod 7

    def test_field_named(self):
        assert field_named("rational") == QQ
        assert field_named("gf(11)").p == 11
        assert field_named("gf:11").p == 11
        with pytest.raises(ValueError):
            field_named("real")


class TestEchelonize:
    def test_identity(self):
        m = Matrix.from_rows(3, [vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)])
        rank, basis = echelonize(m, QQ)
        assert rank == 3
        assert basis == Subspace.full(QQ, 3)

    def test_zero_matrix(self):
        rank, basis = echelonize(Matrix(2, 2, {}), QQ)
        assert rank == 0
        assert basis == Subspace.zero(QQ, 2)

    def test_dependent_rows(self):
        m = Matrix.from_rows(2, [vec(1, 2), vec(2, 4)])
        rank, basis = echelonize(m, QQ)
        assert rank == 1
        assert basis.basis == (((0, F(1)), (1, F(2))),)

    def test_canonical_uniqueness(self):
        a = span(3, (1, 2, 3), (0, 1, 1))
        b = span(3, (1, 1, 2), (2, 5, 7))
        assert a.basis == b.basis
        assert a == b


class TestLatticeOps:
    def test_complementary_lines(self):
        a, b = span(2, (1, 0)), span(2, (0, 1))
        assert a + b == Subspace.full(QQ, 2)
        assert a.intersect(b) == Subspace.zero(QQ, 2)

    def test_idempotence(self):
        a = span(3, (1, 2, 0), (0, 0, 1))
        assert a.intersect(a) == a
        assert a.contains(a)

    def test_membership_by_solving(self):
        a = span(3, (1, 1, 0), (0, 0, 1))
        b = span(3, (1, 1, 1))
        assert a.contains(b)
        assert not b.contains(a)

    def test_quotient_dim(self):
        a = span(3, (1, 0, 0), (0, 1, 0))
        b = span(3, (1, 1, 0))
        assert a.quotient_dim(b) == 1
        with pytest.raises(ValueError):
            b.quotient_dim(a)

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            span(2, (1, 0)) + span(3, (1, 0, 0))

    def test_coordinates_of(self):
        a = span(3, (1, 0, 1), (0, 1, 1))
        coords = a.coordinates_of(vec(2, 3, 5))
        assert coords == {0: F(2), 1: F(3)}
        with pytest.raises(ValueError):
            a.coordinates_of(vec(0, 0, 1))


class TestPerp:
    def test_zero_and_full(self):
        assert Subspace.zero(QQ, 3).perp() == Subspace.full(QQ, 3)
        assert Subspace.full(QQ, 3).perp() == Subspace.zero(QQ, 3)

    def test_hand_example(self):
        x = span(3, (1, 1, 0))
        assert x.perp() == span(3, (1, -1, 0), (0, 0, 1))

    def test_involution_and_dim(self):
        x = span(4, (1, 2, 0, 1), (0, 0, 1, 3))
        assert x.perp().dim == 4 - x.dim
        assert x.perp().perp() == x


class TestPreimage:
    def test_full_codomain(self):
        f = Matrix(1, 2, {(0, 0): F(1)})  # projection (x, y) -> x
        assert preimage(f, Subspace.full(QQ, 1), QQ) == Subspace.full(QQ, 2)

    def test_zero_gives_kernel(self):
        f = Matrix(1, 2, {(0, 0): F(1)})
        assert preimage(f, Subspace.zero(QQ, 1), QQ) == kernel(f, QQ)
        assert kernel(f, QQ) == span(2, (0, 1))

    def test_projection_onto_line(self):
        f = Matrix(1, 2, {(0, 0): F(1)})
        w = span(1, (1,))
        assert preimage(f, w, QQ) == Subspace.full(QQ, 2)

    def test_dimension_mismatch(self):
        f = Matrix(2, 2, {(0, 0): F(1)})
        with pytest.raises(ValueError):
            preimage(f, Subspace.full(QQ, 3), QQ)


class TestSolve:
    def test_unique_solution(self):
        m = Matrix(2, 2, {(0, 0): F(1), (0, 1): F(1), (1, 1): F(2)})
        assert solve(m, {0: F(3), 1: F(4)}, QQ) == {0: F(1), 1: F(2)}

    def test_inconsistent(self):
        assert solve(Matrix(1, 1, {}), {0: F(1)}, QQ) is None

    def test_underdetermined_picks_particular(self):
        m = Matrix(1, 2, {(0, 0): F(1), (0, 1): F(1)})
        s = solve(m, {0: F(5)}, QQ)
        assert s is not None
        assert m.apply(s) == {0: F(5)}


class TestMatrix:
    def test_compose(self):
        a = Matrix(2, 2, {(0, 1): F(1)})
        b = Matrix(2, 2, {(1, 0): F(2)})
        assert a.compose(b).entries == {(0, 0): F(2)}

    def test_vstack(self):
        a = Matrix(1, 2, {(0, 0): F(1)})
        b = Matrix(2, 2, {(1, 1): F(3)})
        s = Matrix.vstack([a, b])
        assert s.rows == 3 and s.entries == {(0, 0): F(1), (2, 1): F(3)}

    def test_no_zero_entries_stored(self):
        m = Matrix.from_entries(2, 2, {(0, 0): F(0), (1, 1): F(2)})
        assert m.entries == {(1, 1): F(2)}
