from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from qcalg.coalg import (
    Coalgebra,
    RadicalRangeError,
    check_axioms,
    coradical_filtration,
    dual_algebra,
    ideal_product,
    is_left_coideal,
    is_right_coideal,
    is_subcoalgebra,
    radical,
    skew_primitives,
    wedge,
)
from qcalg.exactlin import GF, QQ, Subspace
from qcalg.quiverlab import compile_truncation


def grouplike_coalgebra():
    return Coalgebra(field=QQ, dim=1, labels=("g",),
                     delta=(((0, 0, F(1)),),), epsilon=(F(1),))


def primitive_pair_coalgebra():
    # span{g, x} with x primitive over the grouplike g
    return Coalgebra(
        field=QQ, dim=2, labels=("g", "x"),
        delta=(((0, 0, F(1)),), ((0, 1, F(1)), (1, 0, F(1)))),
        epsilon=(F(1), F(0)))


def mutant_ex1(ex1_n1):
    """ex1 at bound 1 with the final splitting of p[1] rewired to b[1]."""
    c, basis = ex1_n1
    p, a, b1 = (basis.index_of_label(l) for l in ("p[1]", "a", "b[1]"))
    delta = list(c.delta)
    delta[p] = tuple((j, b1 if (j, k) == (p, a) else k, v) for j, k, v in delta[p])
    return Coalgebra(field=c.field, dim=c.dim, labels=c.labels,
                     delta=tuple(delta), epsilon=c.epsilon)


class TestAxioms:
    def test_grouplike_passes(self):
        assert check_axioms(grouplike_coalgebra()).ok

    def test_compiled_truncation_passes(self, ex1_n3):
        assert check_axioms(ex1_n3[0]).ok

    def test_mutant_fails_at_conflicting_entry(self, ex1_n1):
        report = check_axioms(mutant_ex1(ex1_n1))
        assert not report.ok
        positions = {(f.element, f.position) for f in report.failures
                     if f.law == "coassociativity"}
        # The two expansions disagree exactly where the last tensorand is
        # a respectively b[1].
        assert ("p[1]", ("x[1]", "y[1]", "a")) in positions
        assert ("p[1]", ("x[1]", "y[1]", "b[1]")) in positions

    def test_broken_counit_detected(self):
        c = Coalgebra(field=QQ, dim=1, labels=("g",),
                      delta=(((0, 0, F(1)),),), epsilon=(F(2),))
        report = check_axioms(c)
        assert not report.ok
        assert any(f.law.startswith("counit") for f in report.failures)


class TestDualAlgebra:
    def test_grouplike_dual_is_the_field(self):
        d = dual_algebra(grouplike_coalgebra())
        one = d.unit_dict()
        assert d.multiply(one, one) == one

    def test_primitive_dual_square_zero(self):
        d = dual_algebra(primitive_pair_coalgebra())
        x = {1: F(1)}
        assert d.multiply(x, x) == {}
        assert d.multiply(d.unit_dict(), x) == x

    def test_ex1_concatenation_convolution(self, ex1_n1):
        c, basis = ex1_n1
        d = dual_algebra(c)
        x1, y1, p1 = ({basis.index_of_label(l): F(1)} for l in ("x[1]", "y[1]", "p[1]"))
        assert d.multiply(x1, y1) == p1
        assert d.multiply(y1, x1) == {}

    def test_grouplike_idempotents_diagonal(self, ex1_n1):
        c, basis = ex1_n1
        d = dual_algebra(c)
        gls = c.grouplike_indices()
        for g in gls:
            for h in gls:
                prod = d.multiply({g: F(1)}, {h: F(1)})
                assert prod == ({g: F(1)} if g == h else {})

    def test_associativity_and_unit_on_random_vectors(self, ex1_n2):
        c, _ = ex1_n2
        d = dual_algebra(c)
        rng = random.Random(5)
        unit = d.unit_dict()
        for _ in range(60):
            def rv():
                out = {rng.randrange(c.dim): F(rng.randint(-3, 3)) for _ in range(3)}
                return {k: v for k, v in out.items() if v}
            f, g, h = rv(), rv(), rv()
            assert d.multiply(d.multiply(f, g), h) == d.multiply(f, d.multiply(g, h))
            assert d.multiply(unit, f) == f
            assert d.multiply(f, unit) == f


class TestRadical:
    def test_field_has_zero_radical(self):
        d = dual_algebra(grouplike_coalgebra())
        assert radical(d).dim == 0

    def test_primitive_dual_radical(self):
        d = dual_algebra(primitive_pair_coalgebra())
        assert radical(d) == Subspace.span(QQ, 2, [{1: F(1)}])

    def test_ex1_radical_is_coradical_perp(self, ex1_n1):
        c, _ = ex1_n1
        j = radical(dual_algebra(c))
        assert j.dim == 3
        assert j == c.span_of_labels(["a", "b[1]"]).perp()

    def test_out_of_range_characteristic_rejected(self):
        # GF(2) and dimension 2: the trace criterion is not valid there.
        c = Coalgebra(field=GF(2), dim=2, labels=("g", "h"),
                      delta=(((0, 0, GF(2).one),), ((1, 1, GF(2).one),)),
                      epsilon=(GF(2).one, GF(2).one))
        with pytest.raises(RadicalRangeError):
            radical(dual_algebra(c))

    def test_large_prime_field_works(self, ex1_spec):
        import dataclasses
        spec = dataclasses.replace(ex1_spec, field=GF(101))
        c, _ = compile_truncation(spec, 1)
        j = radical(dual_algebra(c))
        assert j.dim == 3


class TestCoradicalFiltration:
    def test_cosemisimple_stabilizes_immediately(self):
        c = Coalgebra(field=QQ, dim=2, labels=("g", "h"),
                      delta=(((0, 0, F(1)),), ((1, 1, F(1)),)),
                      epsilon=(F(1), F(1)))
        chain = coradical_filtration(c)
        assert chain.dims() == (2,)
        assert chain.stabilized_at == 0

    def test_ex1_dims(self, ex1_n3):
        chain = coradical_filtration(ex1_n3[0])
        assert chain.dims() == (4, 10, 13)
        assert chain.stabilized_at == 2

    def test_ex2_stabilizes_at_one(self, ex2_n3):
        chain = coradical_filtration(ex2_n3[0])
        assert chain.dims() == (4, 10)
        assert chain.stabilized_at == 1

    def test_terms_ascend_and_are_subcoalgebras(self, ex1_n2):
        c, _ = ex1_n2
        chain = coradical_filtration(c)
        for lo, hi in zip(chain.terms, chain.terms[1:]):
            assert hi.contains(lo)
        for term in chain.terms:
            assert is_subcoalgebra(term, c)

    def test_radical_powers_give_the_terms(self, ex1_n2):
        c, _ = ex1_n2
        d = dual_algebra(c)
        j = radical(d)
        power = j
        for term in coradical_filtration(c).terms:
            assert power.perp() == term
            power = ideal_product(power, j, d)


class TestWedge:
    def test_idempotent_on_the_v_subcoalgebras(self, ex1_n1):
        c, _ = ex1_n1
        v1 = Subspace.full(QQ, c.dim)
        assert wedge(v1, v1, c) == v1

    def test_no_loops_at_a_vertex(self, ex1_n1):
        c, _ = ex1_n1
        sa = c.span_of_labels(["a"])
        assert wedge(sa, sa, c) == sa

    def test_coradical_wedge_gives_next_term(self, ex1_n1):
        c, _ = ex1_n1
        c0 = c.span_of_labels(["a", "b[1]"])
        c1 = c.span_of_labels(["a", "b[1]", "x[1]", "y[1]"])
        assert wedge(c0, c0, c) == c1

    def test_monotone_and_contains_sum(self, ex1_n2):
        c, _ = ex1_n2
        chain = coradical_filtration(c)
        pieces = [c.span_of_labels(["a"]), chain.terms[0], chain.terms[1]]
        for u in pieces:
            for w in pieces:
                joined = wedge(u, w, c)
                assert joined.contains(u + w)
                for bigger in pieces:
                    if bigger.contains(w):
                        assert wedge(u, bigger, c).contains(joined)

    def test_ambient_mismatch(self, ex1_n1):
        c, _ = ex1_n1
        with pytest.raises(ValueError):
            wedge(Subspace.zero(QQ, 3), Subspace.zero(QQ, 3), c)


class TestIdealProduct:
    def test_unital_full_times_full(self, ex1_n1):
        c, _ = ex1_n1
        d = dual_algebra(c)
        full = Subspace.full(QQ, c.dim)
        assert ideal_product(full, full, d) == full

    def test_duality_with_wedge(self, ex1_n1):
        c, _ = ex1_n1
        d = dual_algebra(c)
        c0 = c.span_of_labels(["a", "b[1]"])
        c1 = c.span_of_labels(["a", "b[1]", "x[1]", "y[1]"])
        assert ideal_product(c0.perp(), c0.perp(), d) == c1.perp()
        assert ideal_product(c0.perp(), c0.perp(), d) == wedge(c0, c0, c).perp()

    def test_radical_square_annihilates_c1(self, ex1_n2):
        c, _ = ex1_n2
        d = dual_algebra(c)
        j = radical(d)
        c1 = coradical_filtration(c).terms[1]
        assert ideal_product(j, j, d) == c1.perp()


class TestCoidealPredicates:
    def test_grouplike_span_is_subcoalgebra(self, ex2_n3):
        c, _ = ex2_n3
        gl = c.span_of_labels([c.labels[g] for g in c.grouplike_indices()])
        assert is_subcoalgebra(gl, c)

    def test_mixed_span_verdicts(self, ex1_n1):
        c, _ = ex1_n1
        x = c.span_of_labels(["a", "x[1]"])
        assert is_right_coideal(x, c)
        assert not is_left_coideal(x, c)
        assert not is_subcoalgebra(x, c)

    def test_zero_subspace_satisfies_all(self, ex1_n1):
        c, _ = ex1_n1
        z = Subspace.zero(QQ, c.dim)
        assert is_subcoalgebra(z, c)
        assert is_left_coideal(z, c)
        assert is_right_coideal(z, c)


class TestSkewPrimitives:
    def test_no_loops_means_zero(self, ex1_n1):
        c, basis = ex1_n1
        a = basis.index_of_label("a")
        assert skew_primitives(a, a, c).dim == 0

    def test_ex1_pair(self, ex1_n1):
        c, basis = ex1_n1
        a, b1 = basis.index_of_label("a"), basis.index_of_label("b[1]")
        space = skew_primitives(a, b1, c)
        assert space.dim == 2
        x1 = basis.index_of_label("x[1]")
        assert space.contains_vector({x1: F(1)})
        assert space.contains_vector({a: F(1), b1: F(-1)})

    def test_ex2_parallel_arrows(self, ex2_n3):
        c, basis = ex2_n3
        a, b3 = basis.index_of_label("a"), basis.index_of_label("b[3]")
        space = skew_primitives(a, b3, c)
        assert space.dim == 4

    def test_rejects_non_grouplike(self, ex1_n1):
        c, basis = ex1_n1
        with pytest.raises(ValueError):
            skew_primitives(basis.index_of_label("x[1]"),
                            basis.index_of_label("a"), c)


def test_ideal_product_ambient_mismatch(ex1_n1):
    c, _ = ex1_n1
    d = dual_algebra(c)
    with pytest.raises(ValueError):
        ideal_product(Subspace.zero(QQ, 3), Subspace.zero(QQ, 3), d)
