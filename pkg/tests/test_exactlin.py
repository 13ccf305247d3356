from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tanerve.exactlin import (
    Field,
    LinearSystem,
    ModP,
    Q,
    RowReducer,
    SignConvention,
    add_into,
    apply_graded_op,
    field_from_spec,
    kernel_basis,
    rank,
    tensor,
)

F5 = Field(5)


def system(rows, ncols=None, field=Q):
    ncols = ncols if ncols is not None else max((len(r) for r in rows), default=0)
    S = LinearSystem(ncols, field)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if v:
                S.add(i, j, field(v))
    return S


class TestScalars:
    def test_rationals_lowest_terms(self):
        x = Q("6/4")
        assert x == Fraction(3, 2) and Q.format(x) == "3/2" and Q.format(Q(-2)) == "-2"

    def test_modp(self):
        assert F5(7) == 2 and F5(3) * F5(2) == 1 and F5(1) / F5(3) == 2
        assert F5("1/2") == 3 and F5.format(F5(-1)) == "4"
        assert not F5(10)

    def test_modp_errors(self):
        with pytest.raises(ZeroDivisionError):
            F5(1) / F5(0)
        with pytest.raises(ValueError):
            ModP(1, 5) + ModP(1, 7)

    @pytest.mark.parametrize("spec", ["Fp:4", "Fp:1", "R", "Fp:x"])
    def test_bad_field(self, spec):
        with pytest.raises(ValueError):
            field_from_spec(spec)

    def test_field_spec(self):
        assert field_from_spec("Q") is Q and field_from_spec("Fp:7") == Field(7)
        assert field_from_spec("Fp:7").name == "Fp:7"

    def test_bad_scalar(self):
        with pytest.raises(ValueError):
            Q.parse("1/0")
        with pytest.raises(ValueError):
            Q.parse("0.5x")

    @given(st.integers(), st.integers(), st.integers(1, 50))
    def test_modp_is_a_ring_hom(self, a, b, c):
        F = Field(7)
        assert F(a) + F(b) == F(a + b) and F(a) * F(b) == F(a * b)
        if c % 7:
            assert F(Fraction(a, c)) * F(c) == F(a)


class TestKernel:
    def test_zero_matrix(self):
        B = kernel_basis(LinearSystem(3))
        assert B == [{0: 1}, {1: 1}, {2: 1}]

    def test_identity(self):
        assert kernel_basis(system([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []

    def test_single_row(self):
        assert kernel_basis(system([[1, 1]])) == [{1: 1, 0: -1}]

    def test_fraction_entries(self):
        S = system([[2, 3, 0], [0, 0, 5]])
        (v,) = kernel_basis(S)
        assert v == {1: 1, 0: Fraction(-3, 2)} and S.apply(v) == {}

    @given(
        st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=5),
        st.sampled_from([Q, Field(3), Field(7)]),
    )
    def test_rank_nullity_exact(self, rows, field):
        S = system(rows, 4, field)
        B = kernel_basis(S)
        for v in B:
            assert S.apply(v) == {}
        assert rank(B, field) == len(B)
        assert len(B) + rank(S.nonzero_rows(), field) == 4

    def test_add_cancels(self):
        S = LinearSystem(2)
        S.add("r", 0, Q(1))
        S.add("r", 0, Q(-1))
        assert S.nonzero_rows() == []
        with pytest.raises(IndexError):
            S.add("r", 2, Q(1))

    def test_tracked_combination(self):
        red = RowReducer(Q, track=True)
        red.insert({0: Q(2), 1: Q(1)})
        red.insert({1: Q(1)})
        assert red.insert({0: Q(1)}) is None
        assert red.combos[0] == {0: Fraction(1, 2), 1: Fraction(-1, 2)}


class TestTensors:
    def test_unit(self):
        y = {("a", "b"): Q(3)}
        assert tensor({(): Q(1)}, y) == y

    def test_basis(self):
        assert tensor({("x",): 1}, {("y",): 1}) == {("x", "y"): 1}

    def test_bilinear(self):
        lhs = tensor({("x1",): 1, ("x2",): 2}, {("y",): 3})
        assert lhs == {("x1", "y"): 3, ("x2", "y"): 6}

    def test_add_into_drops_zeros(self):
        acc = {"a": 1}
        assert add_into(acc, {"a": 1, "b": 2}, -1) == {"b": -2}


def _op(labels):
    return {"z": 1}


DEG = {"p": 1, "q": 2, "r": 0, "z": 0}.__getitem__


class TestGradedOp:
    def test_first_slot_no_sign(self):
        x = {("p", "q"): 1}
        for conv in SignConvention:
            assert apply_graded_op(_op, 1, 0, 1, x, DEG, conv) == {("z", "q"): 1}

    def test_even_operator(self):
        x = {("p", "q"): 1}
        assert apply_graded_op(_op, 2, 1, 1, x, DEG) == {("p", "z"): 1}

    def test_odd_past_odd(self):
        x = {("p", "q"): 1}
        assert apply_graded_op(_op, 1, 1, 1, x, DEG) == {("p", "z"): -1}
        assert apply_graded_op(_op, 1, 1, 1, x, DEG, SignConvention.PLAIN) == {("p", "z"): 1}
        # a degree 1 factor counts 2 after suspension
        assert apply_graded_op(_op, 1, 1, 1, x, DEG, SignConvention.SHIFTED) == {("p", "z"): 1}

    def test_signs_compose(self):
        x = {("p", "p", "r"): 1}
        once = apply_graded_op(_op, 1, 2, 1, x, DEG)
        twice = apply_graded_op(_op, 1, 1, 1, {("p", "r"): 1}, DEG)
        assert once == {("p", "p", "z"): 1} and twice == {("p", "z"): -1}

    def test_too_short(self):
        with pytest.raises(ValueError):
            apply_graded_op(_op, 0, 1, 2, {("p", "q"): 1}, DEG)
