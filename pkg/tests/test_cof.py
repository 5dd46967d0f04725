# test_cof.py - Cof の正規化・含意・∀ のテスト
import itertools

import pytest

from cof import (
    Cof, CofAnd, CofBot, CofEq, CofOr, CofTop,
    cof_entails, cof_equiv, cof_forall, cof_forall_last, cof_normalize,
)
from errors import ScopeError
from interval import IvElem, IvJoin, IvMeet, IvOne, IvVar, IvZero

i, j = IvVar(0), IvVar(1)


class TestNormalize:
    def test_atoms(self):
        assert cof_normalize(CofEq(i, 0), 1) == Cof.eq(0, 0)
        assert cof_normalize(CofEq(IvZero(), 0), 0).is_top()
        assert cof_normalize(CofEq(IvOne(), 0), 0).is_bot()

    def test_meet_and_join_atoms(self):
        assert cof_normalize(CofEq(IvMeet(i, j), 1), 2) == Cof.eq(0, 1).conj(Cof.eq(1, 1))
        assert cof_normalize(CofEq(IvMeet(i, j), 0), 2).clauses == (((0, 0),), ((1, 0),))
        assert cof_normalize(CofEq(IvJoin(i, j), 0), 2).clauses == (((0, 0), (1, 0)),)

    def test_contradiction_is_bot(self):
        assert cof_normalize(CofAnd(CofEq(i, 0), CofEq(i, 1)), 1).is_bot()

    def test_absorption(self):
        phi = CofOr(CofEq(i, 0), CofAnd(CofEq(i, 0), CofEq(j, 1)))
        assert cof_normalize(phi, 2) == Cof.eq(0, 0)

    def test_boundary_is_not_top(self):
        boundary = cof_normalize(CofOr(CofEq(i, 0), CofEq(i, 1)), 1)
        assert not boundary.is_top()
        assert len(boundary.clauses) == 2

    def test_bad_endpoint(self):
        with pytest.raises(ValueError):
            cof_normalize(CofEq(i, 2), 1)

    def test_out_of_scope(self):
        with pytest.raises(ScopeError):
            cof_normalize(CofEq(j, 0), 1)

    def test_holds_at_agrees_with_atoms(self):
        phi = cof_normalize(CofOr(CofEq(IvMeet(i, j), 1), CofEq(i, 0)), 2)
        for p in itertools.product((0, 1), repeat=2):
            expected = (p[0] and p[1]) or p[0] == 0
            assert phi.holds_at(p) == bool(expected)

    def test_subst(self):
        phi = Cof.eq(0, 1).conj(Cof.eq(1, 0))
        assert phi.subst({0: 1}) == Cof.eq(1, 0)
        assert phi.subst({0: 0}).is_bot()
        assert phi.subst({0: IvElem.var(2)}) == Cof.eq(2, 1).conj(Cof.eq(1, 0))


class TestEntails:
    def test_top_does_not_entail_boundary(self):
        assert not cof_entails(CofTop(), CofOr(CofEq(i, 0), CofEq(i, 1)), 1)

    def test_bot_entails_everything(self):
        assert cof_entails(CofBot(), CofEq(i, 1), 1)

    def test_atom_entails_meet_zero(self):
        assert cof_entails(CofEq(i, 0), CofEq(IvMeet(i, j), 0), 2)
        assert not cof_entails(CofEq(IvMeet(i, j), 0), CofEq(i, 0), 2)

    def test_disjunction_cases(self):
        phi = CofOr(CofEq(i, 0), CofEq(j, 0))
        assert cof_entails(phi, CofEq(IvMeet(i, j), 0), 2)
        assert cof_equiv(phi, CofEq(IvMeet(i, j), 0), 2)

    def test_conjunction(self):
        assert cof_entails(CofAnd(CofEq(i, 1), CofEq(j, 1)), CofEq(IvMeet(i, j), 1), 2)


class TestForall:
    def test_drops_clauses_with_bound(self):
        phi = Cof.eq(0, 0).disj(Cof.eq(1, 1))
        assert cof_forall(phi, 1) == Cof.eq(0, 0)

    def test_boundary_of_bound_variable(self):
        phi = Cof.eq(1, 0).disj(Cof.eq(1, 1))
        assert cof_forall(phi, 1).is_bot()

    def test_forall_last(self):
        phi = CofOr(CofEq(i, 0), CofEq(j, 0))
        assert cof_forall_last(phi, 1) == Cof.eq(0, 0)
        assert cof_forall_last(CofTop(), 1).is_top()
