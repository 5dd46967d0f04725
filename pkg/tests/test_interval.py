# test_interval.py - 区間の標準形のテスト
import itertools

import pytest

from errors import ScopeError
from interval import (
    IvElem, IvJoin, IvMeet, IvOne, IvVar, IvZero,
    iv_eq, iv_normalize, join_all, meet_all, monotone_functions, random_terms,
)


def semantic(t, point):
    """区間項を点でそのまま評価する"""
    match t:
        case IvZero():
            return False
        case IvOne():
            return True
        case IvVar(index):
            return point[index]
        case IvMeet(left, right):
            return semantic(left, point) and semantic(right, point)
        case IvJoin(left, right):
            return semantic(left, point) or semantic(right, point)


i, j, k = IvVar(0), IvVar(1), IvVar(2)


class TestNormalForm:
    def test_constants(self):
        assert iv_normalize(IvZero(), 0).is_zero()
        assert iv_normalize(IvOne(), 0).is_one()
        assert iv_normalize(IvMeet(i, IvZero()), 1).is_zero()
        assert iv_normalize(IvJoin(i, IvOne()), 1).is_one()

    def test_absorption(self):
        assert iv_eq(IvMeet(i, IvJoin(i, j)), i, 2)
        assert iv_eq(IvJoin(i, IvMeet(i, j)), i, 2)

    def test_distributivity(self):
        lhs = IvMeet(i, IvJoin(j, k))
        rhs = IvJoin(IvMeet(i, j), IvMeet(i, k))
        assert iv_eq(lhs, rhs, 3)

    def test_commutativity_gives_same_form(self):
        assert iv_normalize(IvMeet(j, i), 2) == iv_normalize(IvMeet(i, j), 2)
        assert iv_normalize(IvJoin(j, i), 2).clauses == ((0,), (1,))

    def test_distinct_variables_are_distinct(self):
        assert not iv_eq(i, j, 2)
        assert not iv_eq(IvMeet(i, j), IvJoin(i, j), 2)

    def test_no_reversal(self):
        # 変数は定数にならない
        for t in random_terms(1, 2):
            elem = iv_normalize(t, 1)
            assert elem.as_const() is not None or elem.as_var() == 0

    def test_out_of_scope(self):
        with pytest.raises(ScopeError):
            iv_normalize(IvVar(2), 2)
        with pytest.raises(ScopeError):
            iv_normalize(IvElem.var(3), 1)

    def test_not_a_term(self):
        with pytest.raises(TypeError):
            iv_normalize("i", 1)

    def test_normal_form_is_sound(self):
        points = list(itertools.product((False, True), repeat=2))
        for t in random_terms(2, 1):
            elem = iv_normalize(t, 2)
            assert all(elem.evaluate(p) == semantic(t, p) for p in points), str(t)

    @pytest.mark.parametrize("n, depth", [
        (0, 2), (1, 2), (2, 2), (3, 2), (4, 1),
        pytest.param(4, 2, marks=pytest.mark.slow),
    ])
    def test_normal_form_matches_truth_table(self, n, depth):
        points = list(itertools.product((False, True), repeat=n))
        for t in random_terms(n, depth):
            elem = iv_normalize(t, n)
            table = tuple(semantic(t, p) for p in points)
            assert elem.truth_table(n) == table, str(t)
            assert elem == IvElem.from_truth_table(n, table), str(t)


class TestElem:
    def test_subst_constant(self):
        ij = IvElem.var(0).meet(IvElem.var(1))
        assert ij.subst({0: 1}) == IvElem.var(1)
        assert ij.subst({0: 0}).is_zero()
        assert ij.join(IvElem.var(2)).subst({2: 1}).is_one()

    def test_subst_term(self):
        elem = IvElem.var(0).subst({0: IvElem.var(1).join(IvElem.var(2))})
        assert elem.clauses == ((1,), (2,))

    def test_as_var_and_const(self):
        assert IvElem.var(4).as_var() == 4
        assert IvElem.var(0).meet(IvElem.var(1)).as_var() is None
        assert IvElem.const(1).as_const() == 1
        assert IvElem.var(0).as_const() is None

    def test_truth_table_round_trip(self):
        for elem in monotone_functions(3):
            assert IvElem.from_truth_table(3, elem.truth_table(3)) == elem

    def test_meet_join_all(self):
        assert meet_all([]).is_one()
        assert join_all([]).is_zero()
        elems = [IvElem.var(v) for v in range(3)]
        assert meet_all(elems).clauses == ((0, 1, 2),)
        assert join_all(elems).clauses == ((0,), (1,), (2,))

    def test_str(self):
        assert str(IvElem.zero()) == "0"
        assert str(IvElem.var(0).meet(IvElem.var(1))) == "i0 /\\ i1"


class TestMonotoneFunctions:
    @pytest.mark.parametrize("n, count", [(0, 2), (1, 3), (2, 6), (3, 20)])
    def test_dedekind_numbers(self, n, count):
        assert len(monotone_functions(n)) == count

    @pytest.mark.slow
    def test_dedekind_four(self):
        assert len(monotone_functions(4)) == 168

    def test_terms_cover_every_function(self):
        reached = {iv_normalize(t, 2) for t in random_terms(2, 2)}
        assert reached == set(monotone_functions(2))
