# test_cube_model.py - 立方体圏と有限前層のオラクルのテスト
import pytest

from cof import CofBot, CofEq, CofOr, CofTop
from cube_model import (
    BoxCat, brute_force_algebra_maps, check_case_split, cof_sieve, constant_poly,
    coproduct, coproduct_null_witness, count_nat_transformations, delta_const,
    eval_at0, exponential, fold, hcomp_algebra, hcomp_poly, interval_ops,
    interval_psh, is_cubical_prop, is_discrete, is_hereditarily_natural, is_null,
    is_sieve, is_well_supported, maximal_sieve, nabla, nat_algebra, nat_poly,
    product, reducible_heads, representable, sieve_leq, w_prime,
)
from errors import BoundExceeded, DepthExhausted
from interval import IvMeet, IvVar


@pytest.fixture(scope="module")
def box1():
    return BoxCat(1)


class TestBoxCat:
    @pytest.mark.parametrize("d", [-1, 4])
    def test_dimension_bound(self, d):
        with pytest.raises(BoundExceeded):
            BoxCat(d)

    def test_hom_sizes(self, box1, box2):
        assert len(box1.hom(0, 1)) == 2
        assert len(box1.hom(1, 1)) == 3
        assert box2.dedekind(2) == 6
        assert len(box2.hom(2, 2)) == 36
        assert len(box2.points(2)) == 4

    def test_laws(self, box1, box2):
        for box in (box1, box2):
            checked, failures = box.check_laws()
            assert checked > 0
            assert failures == []

    def test_compose_mismatch(self, box2):
        f = box2.hom(0, 1)[0]
        g = box2.hom(2, 1)[0]
        with pytest.raises(ValueError):
            box2.compose(g, f)

    def test_face_and_projection(self, box2):
        for eps in (0, 1):
            assert box2.compose(box2.projection(1), box2.face(1, eps)) == box2.identity(1)


class TestPresheaves:
    def test_functorial(self, box1):
        for psh in (
            representable(box1, 1), interval_psh(box1), delta_const(box1, [0, 1]),
            nabla(box1, [0, 1]), product(interval_psh(box1), delta_const(box1, ["a"])),
            coproduct(interval_psh(box1), delta_const(box1, ["a"])),
        ):
            _checked, failures = psh.check_functorial()
            assert failures == [], psh.name

    def test_nabla_carriers(self, box1):
        psh = nabla(box1, [0, 1])
        assert eval_at0(psh) == [(0,), (1,)]
        assert psh.sizes() == [2, 4]

    def test_interval_ops(self, box1):
        meet, join = interval_ops(box1, 1)
        by_kind = {f.comps[0].as_const(): f for f in box1.hom(1, 1)}
        zero, i, one = by_kind[0], by_kind[None], by_kind[1]
        assert meet(i, zero).comps[0].is_zero()
        assert meet(i, one) == i
        assert join(i, one).comps[0].is_one()

    def test_yoneda(self, box1):
        for psh in (interval_psh(box1), nabla(box1, [0, 1]), delta_const(box1, [0, 1, 2])):
            assert count_nat_transformations(representable(box1, 1), psh) == len(psh.carrier(1))

    def test_well_supported(self, box1):
        assert is_well_supported(interval_psh(box1))
        assert not is_well_supported(delta_const(box1, []))


class TestDiscreteAndNull:
    def test_delta_is_discrete(self, box1):
        assert is_discrete(delta_const(box1, [0, 1]))

    def test_interval_and_nabla_are_not_discrete(self, box1):
        assert not is_discrete(interval_psh(box1))
        assert not is_discrete(nabla(box1, [0, 1]))

    def test_exponential_of_discrete(self, box1):
        expo = exponential(interval_psh(box1), delta_const(box1, [0, 1]))
        assert len(expo.presheaf.carrier(0)) == 2

    def test_null_for_two_points(self, box1):
        two = delta_const(box1, [0, 1])
        assert is_null(two, delta_const(box1, ["a"]))
        assert not is_null(two, delta_const(box1, ["a", "b"]))

    def test_coproduct_null(self, box1):
        left, right = delta_const(box1, ["x"]), delta_const(box1, ["y"])
        assert coproduct_null_witness(interval_psh(box1), left, right) is None
        assert coproduct_null_witness(delta_const(box1, [0, 1]), left, right) is not None

    def test_cubical_prop(self, box1):
        assert is_cubical_prop(nabla(box1, [0, 1]))
        assert not is_cubical_prop(delta_const(box1, [0, 1]))

    def test_codiscrete_base_for_coproducts(self, box1):
        base = nabla(box1, [0, 1])
        assert is_well_supported(base)
        left, right = delta_const(box1, [0, 1]), delta_const(box1, [0])
        assert is_null(base, left) and is_null(base, right)
        assert coproduct_null_witness(base, left, right) is None


class TestSieves:
    def test_top_and_bot(self, box2):
        assert cof_sieve(CofTop(), 1, box2) == maximal_sieve(box2, 1)
        assert cof_sieve(CofBot(), 1, box2).members == frozenset()

    def test_closed_under_precomposition(self, box2):
        phi = CofOr(CofEq(IvVar(0), 0), CofEq(IvVar(1), 1))
        assert is_sieve(box2, cof_sieve(phi, 2, box2))

    def test_order_follows_entailment(self, box2):
        i, j = IvVar(0), IvVar(1)
        small = cof_sieve(CofEq(i, 0), 2, box2)
        large = cof_sieve(CofEq(IvMeet(i, j), 0), 2, box2)
        assert sieve_leq(small, large)
        assert not sieve_leq(large, small)

    def test_boundary_is_not_maximal(self, box2):
        boundary = cof_sieve(CofOr(CofEq(IvVar(0), 0), CofEq(IvVar(0), 1)), 1, box2)
        assert box2.identity(1) not in boundary.members
        assert not sieve_leq(maximal_sieve(box2, 1), boundary)

    def test_too_many_variables(self, box1):
        with pytest.raises(BoundExceeded):
            cof_sieve(CofTop(), 2, box1)


class TestWPrime:
    @pytest.mark.parametrize("depth", [0, 5])
    def test_depth_bound(self, box1, depth):
        with pytest.raises(BoundExceeded):
            w_prime(nat_poly(box1), depth)

    def test_nat_grows_with_depth(self, box1):
        w = w_prime(nat_poly(box1), 3)
        assert w.exhausted
        assert [len(w.elements[n]) for n in box1.levels] == [3, 3]
        with pytest.raises(DepthExhausted):
            w_prime(nat_poly(box1), 3, strict=True)

    def test_constants_close(self, box1):
        w = w_prime(constant_poly(box1, ["a", "b"]), 2)
        assert not w.exhausted
        assert len(w.elements[1]) == 2

    def test_hcomp_case_split(self, box1):
        w = w_prime(hcomp_poly(box1), 2)
        _checked, failures = check_case_split(w)
        assert failures == []
        assert reducible_heads(w) == []
        assert all(is_hereditarily_natural(w.poly, t) for n in box1.levels for t in w.elements[n])
        _checked, failures = w.presheaf().check_functorial()
        assert failures == []

    def test_fold_is_unique_algebra_map(self, box1):
        w = w_prime(nat_poly(box1), 3)
        algebra = nat_algebra(box1, 5)
        folded = fold(w, algebra)
        assert sorted(folded[t] for t in w.elements[0]) == [0, 1, 2]
        assert brute_force_algebra_maps(w, algebra) == [folded]

    def test_hcomp_algebra(self, box1):
        w = w_prime(hcomp_poly(box1), 2)
        maps = brute_force_algebra_maps(w, hcomp_algebra(box1))
        assert len(maps) == 1
        assert maps[0] == fold(w, hcomp_algebra(box1))
