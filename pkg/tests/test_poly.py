import math

import pytest

from hyperfield import poly
from hyperfield.errors import (
    ComponentNotZero,
    DegenerateElement,
    NotUnimodular,
    ZeroDivisor,
)
from hyperfield.poly import (
    I3,
    Poly,
    basis,
    conjugations,
    cr3_residual,
    dagger,
    ddagger,
    delta3_residual,
    exp_and_angles,
    exp_poly,
    holomorphy_class,
    indicatrix_and_d2,
    isotropic_to_j,
    j_to_isotropic,
    jbasis_unit,
    nproduct,
    nproduct_n,
    permanent,
    poly_arithmetic,
    poly_partials,
    poly_partials_jbasis,
    pseudonorm,
    tangent_metric,
    unit,
)


def random_nondegenerate(rng, n=3, lo=0.2, hi=3.0):
    comps = rng.uniform(lo, hi, size=n) * rng.choice([-1.0, 1.0], size=n)
    return Poly(tuple(float(c) for c in comps))


class TestArithmetic:
    def test_componentwise_product(self):
        assert Poly(1, 2, 3) * Poly(4, 5, 6) == Poly(4, 10, 18)

    def test_unity(self):
        a = Poly(1.5, -2.0, 0.25)
        assert a * I3 == a

    def test_degenerates_closed_under_multiplication(self):
        prod = Poly(1, 0, 2) * Poly(0, 5, 1)
        assert prod == Poly(0, 0, 2)
        assert prod.is_degenerate()

    def test_division_by_degenerate_raises(self):
        with pytest.raises(ZeroDivisor):
            Poly(1, 2, 3) / Poly(1, 0, 1)

    def test_named_dispatch(self):
        a, b = Poly(1, 2, 3), Poly(4, 5, 6)
        assert poly_arithmetic(a, b, "add") == Poly(5, 7, 9)
        assert poly_arithmetic(a, b, "mul") == a * b
        with pytest.raises(ValueError):
            poly_arithmetic(a, b, "pow")


class TestConjugations:
    def test_definitions(self):
        assert dagger(Poly(1, 2, 3)) == Poly(3, 1, 2)
        assert ddagger(Poly(1, 2, 3)) == Poly(2, 3, 1)

    def test_triple_product_is_real(self):
        a = Poly(1, 2, 4)
        d, dd = conjugations(a)
        assert a * d * dd == Poly(8, 8, 8)

    def test_angle_action(self, rng):
        # dagger sends (chi1, chi2, chi3) to (chi3, chi1, chi2)
        for _ in range(20):
            a = Poly(tuple(rng.uniform(0.2, 3.0, size=3)))
            chi = exp_and_angles(a).chi
            chi_d = exp_and_angles(dagger(a)).chi
            assert chi_d == pytest.approx((chi[2], chi[0], chi[1]), abs=1e-12)


class TestPseudonorm:
    def test_examples(self):
        assert pseudonorm(Poly(1, 2, 4)) == pytest.approx(2.0, rel=1e-15)
        assert pseudonorm(I3) == 1.0
        assert pseudonorm(Poly(1, 0, 5)) == 0.0

    def test_signed_cube_root(self):
        assert pseudonorm(Poly(-1, 2, 4)) == pytest.approx(-2.0, rel=1e-15)

    def test_multiplicative_on_1000_pairs(self, rng):
        for _ in range(1000):
            a = random_nondegenerate(rng)
            b = random_nondegenerate(rng)
            lhs = pseudonorm(a * b)
            rhs = pseudonorm(a) * pseudonorm(b)
            assert math.isclose(lhs, rhs, rel_tol=1e-12)


class TestExponentialAngles:
    def test_example(self):
        ea = exp_and_angles(Poly(1, 2, 4))
        assert ea.norm == pytest.approx(2.0, rel=1e-15)
        assert ea.chi == pytest.approx((math.log(0.5), 0.0, math.log(2.0)), abs=1e-15)

    def test_unity(self):
        ea = exp_and_angles(I3)
        assert ea.norm == 1.0
        assert ea.chi == (0.0, 0.0, 0.0)

    def test_negative_octant_reduction(self):
        pos = exp_and_angles(Poly(1, 2, 4))
        neg = exp_and_angles(Poly(-1, -2, -4))
        assert neg.octant == Poly(-1, -1, -1)
        assert neg.norm == pytest.approx(pos.norm)
        assert neg.chi == pytest.approx(pos.chi)

    def test_chi_sum_zero_1000(self, rng):
        for _ in range(1000):
            a = Poly(tuple(rng.uniform(0.05, 5.0, size=3)))
            assert abs(sum(exp_and_angles(a).chi)) < 1e-12

    def test_reconstruction(self, rng):
        for _ in range(100):
            a = random_nondegenerate(rng)
            back = exp_and_angles(a).reconstruct()
            for got, want in zip(back.a, a.a):
                assert math.isclose(got, want, rel_tol=1e-12)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateElement):
            exp_and_angles(Poly(1, 0, 2))


class TestExpPoly:
    def test_zero(self):
        assert exp_poly(Poly(0, 0, 0)) == I3

    def test_componentwise(self):
        got = exp_poly(Poly(1, 0, -1))
        assert got.a == pytest.approx((math.e, 1.0, 1 / math.e), rel=1e-15)

    def test_norm_of_exponential(self):
        got = pseudonorm(exp_poly(Poly(1, 2, 3)))
        assert got == pytest.approx(math.e**2, rel=1e-14)

    def test_partial_sums_converge(self):
        a = Poly(0.3, -0.2, 0.1)
        series = unit(3)
        term = unit(3)
        for k in range(1, 13):
            term = term * a / k
            series = series + term
        want = exp_poly(a)
        assert series.a == pytest.approx(want.a, abs=1e-12)


class TestNProduct:
    def test_unity_triple(self):
        assert nproduct(I3, I3, I3) == 6.0

    def test_basis_identity_matrix(self):
        assert nproduct(basis(0), basis(1), basis(2)) == 1.0

    def test_brute_force_value(self):
        assert nproduct(Poly(1, 2, 3), Poly(4, 5, 6), Poly(7, 8, 9)) == 450.0

    def test_total_symmetry(self, rng):
        import itertools

        a, b, c = (random_nondegenerate(rng) for _ in range(3))
        vals = {nproduct(*perm) for perm in itertools.permutations((a, b, c))}
        assert len({round(v, 9) for v in vals}) == 1

    def test_ryser_matches_direct(self, rng):
        m = rng.uniform(-2, 2, size=(5, 5))
        import itertools

        direct = sum(
            math.prod(m[i, s[i]] for i in range(5))
            for s in itertools.permutations(range(5))
        )
        assert permanent(m) == pytest.approx(direct, rel=1e-12)

    def test_pn_product(self, rng):
        vecs = [Poly(tuple(rng.uniform(0.5, 2.0, size=4))) for _ in range(4)]
        got = nproduct_n(vecs)
        assert got == pytest.approx(permanent([v.a for v in vecs]))


class TestTangentMetric:
    def test_lightcone_cross_term(self):
        assert tangent_metric(2, Poly(1, 0, 0), Poly(0, 1, 0)) == 1.0

    def test_null_direction(self):
        assert tangent_metric(2, Poly(1, 1, 0), Poly(1, 1, 0)) == 2.0

    def test_minkowski_signature(self):
        assert tangent_metric(2, Poly(1, -1, 0), Poly(1, -1, 0)) == -2.0

    def test_component_must_vanish(self):
        with pytest.raises(ComponentNotZero):
            tangent_metric(2, Poly(1, 0, 0.5), Poly(0, 1, 0))


class TestIndicatrix:
    def test_unimodular_action(self):
        on_ind, image = indicatrix_and_d2(I3, Poly(2.0, 0.5, 1.0))
        assert image == Poly(2.0, 0.5, 1.0)
        assert on_ind

    def test_identity_action(self):
        on_ind, image = indicatrix_and_d2(Poly(0.5, 1.0, 2.0), I3)
        assert image == Poly(0.5, 1.0, 2.0)
        assert on_ind

    def test_non_unimodular_raises(self):
        with pytest.raises(NotUnimodular):
            indicatrix_and_d2(I3, Poly(2.0, 1.0, 1.0))

    def test_transitivity_sample(self, rng):
        for _ in range(20):
            s = rng.uniform(0.3, 2.0, size=2)
            sigma = Poly(float(s[0]), float(s[1]), float(1.0 / (s[0] * s[1])))
            on_ind, _ = indicatrix_and_d2(I3, sigma)
            assert on_ind


class TestJBasis:
    def test_pure_j1(self):
        assert j_to_isotropic((1.0, 0.0, 0.0)) == Poly(1, -1, -1)

    def test_round_trip_exact(self, rng):
        for _ in range(1000):
            x = tuple(float(v) for v in rng.uniform(-5, 5, size=3))
            back = isotropic_to_j(j_to_isotropic(x))
            assert back == pytest.approx(x, abs=1e-14)

    def test_j1_j2_is_j3(self):
        prod = jbasis_unit(0) * jbasis_unit(1)
        assert isotropic_to_j(prod) == pytest.approx((0.0, 0.0, 1.0), abs=1e-15)

    def test_j_squared_is_unity_componentwise(self):
        # j1^2 = -(j1+j2+j3) expands to the algebra unit
        sq = jbasis_unit(0) * jbasis_unit(0)
        assert sq == I3
        minus_sum = -(jbasis_unit(0) + jbasis_unit(1) + jbasis_unit(2))
        assert minus_sum == I3


class TestPolyPartials:
    def test_identity_map(self):
        d_h, d_dag, d_ddag = poly_partials(lambda p: p, Poly(0.5, 1.0, 2.0))
        assert d_h.a == pytest.approx((1, 1, 1), abs=1e-9)
        assert d_dag.a == pytest.approx((0, 0, 0), abs=1e-9)
        assert d_ddag.a == pytest.approx((0, 0, 0), abs=1e-9)

    def test_square_map(self):
        d_h, d_dag, d_ddag = poly_partials(lambda p: p * p, Poly(1, 2, 3))
        assert d_h.a == pytest.approx((2, 4, 6), rel=1e-8)
        assert d_dag.a == pytest.approx((0, 0, 0), abs=1e-8)
        assert d_ddag.a == pytest.approx((0, 0, 0), abs=1e-8)

    def test_dagger_map(self):
        d_h, d_dag, d_ddag = poly_partials(dagger, Poly(0.3, 0.7, 1.1))
        assert d_dag.a == pytest.approx((1, 1, 1), abs=1e-9)
        assert d_h.a == pytest.approx((0, 0, 0), abs=1e-9)
        assert d_ddag.a == pytest.approx((0, 0, 0), abs=1e-9)

    def test_both_routes_agree(self, rng):
        # random smooth map built from componentwise polynomials + conjugations
        for _ in range(20):
            c = rng.uniform(-1, 1, size=4)

            def F(p, c=c):
                return (
                    Poly(tuple(c[0] * v**2 + c[1] * v for v in p.a))
                    + c[2] * dagger(p)
                    + c[3] * ddagger(p) * p
                )

            at = Poly(tuple(rng.uniform(0.4, 1.6, size=3)))

            def U(x, F=F):
                return isotropic_to_j(F(j_to_isotropic(x)))

            at_x = isotropic_to_j(at)
            iso = poly_partials(F, at, step=1e-5)
            jb = poly_partials_jbasis(U, at_x, step=1e-5)
            for a, b in zip(iso, jb):
                assert a.a == pytest.approx(b.a, abs=5e-8)


class TestHolomorphyClass:
    def make_samples(self, rng, k=12):
        return [Poly(tuple(rng.uniform(0.4, 1.8, size=3))) for _ in range(k)]

    def test_cube_is_h_holomorphic(self, rng):
        got = holomorphy_class(lambda p: p * p * p, self.make_samples(rng))
        assert got == {"h"}

    def test_dagger_class(self, rng):
        got = holomorphy_class(dagger, self.make_samples(rng))
        assert got == {"hdag"}

    def test_mixed_weak_class(self, rng):
        got = holomorphy_class(lambda p: p + dagger(p), self.make_samples(rng))
        assert got == {"h_hdag"}

    def test_generic_map_has_no_class(self, rng):
        def F(p):
            return Poly(p.a[0] * p.a[1], p.a[2] + p.a[0] ** 2, p.a[1] + p.a[2] ** 2)

        assert holomorphy_class(F, self.make_samples(rng)) == set()


class TestCr3Residual:
    @staticmethod
    def holo_U(F):
        """j-coordinates of the h-holomorphic map with scalar series F."""

        def U(x):
            a = x[1] - x[0] - x[2]
            b = x[2] - x[0] - x[1]
            c = x[0] - x[1] - x[2]
            return (F(a) + F(b), F(c) + F(b), F(c) + F(a))

        return U

    def test_general_solution_with_sin(self, rng):
        U = self.holo_U(math.sin)
        for _ in range(10):
            at = tuple(float(v) for v in rng.uniform(-1, 1, size=3))
            assert cr3_residual(U, at, step=1e-4) < 500 * 1e-8

    def test_general_solution_with_cubic(self, rng):
        U = self.holo_U(lambda u: u**3 - 2 * u)
        for _ in range(10):
            at = tuple(float(v) for v in rng.uniform(-1, 1, size=3))
            assert cr3_residual(U, at, step=1e-4) < 500 * 1e-8

    def test_square_map_converted(self, rng):
        def U(x):
            return isotropic_to_j(j_to_isotropic(x) * j_to_isotropic(x))

        for _ in range(10):
            at = tuple(float(v) for v in rng.uniform(-1, 1, size=3))
            assert cr3_residual(U, at, step=1e-4) < 100 * 1e-8

    def test_non_holomorphic_control(self):
        assert cr3_residual(lambda x: (x[0], 0.0, 0.0), (0.3, 0.1, -0.2)) > 0.1


class TestDelta3:
    def test_product_of_coordinates(self):
        got = delta3_residual(lambda x: x[0] * x[1] * x[2], (0.3, -0.5, 0.9))
        assert got == pytest.approx(-0.25, abs=1e-10)

    def test_constant(self):
        assert delta3_residual(lambda x: 4.2, (0.1, 0.2, 0.3)) == 0.0

    def test_holomorphic_cube(self, rng):
        def U1(x):
            return isotropic_to_j(
                j_to_isotropic(x) * j_to_isotropic(x) * j_to_isotropic(x)
            )[0]

        for _ in range(5):
            at = tuple(float(v) for v in rng.uniform(-0.8, 0.8, size=3))
            assert abs(delta3_residual(U1, at, step=1e-2)) < 1e-8


class TestPnGeneralization:
    def test_p4_norm_and_angles(self, rng):
        for _ in range(200):
            a = Poly(tuple(rng.uniform(0.1, 4.0, size=4)))
            norm = pseudonorm(a)
            assert norm == pytest.approx(math.prod(a.a) ** 0.25, rel=1e-13)
            chi = [math.log(c / norm) for c in a.a]
            assert abs(sum(chi)) < 1e-12

    def test_p4_norm_multiplicative(self, rng):
        for _ in range(100):
            a = Poly(tuple(rng.uniform(0.1, 4.0, size=4)))
            b = Poly(tuple(rng.uniform(0.1, 4.0, size=4)))
            assert pseudonorm(a * b) == pytest.approx(
                pseudonorm(a) * pseudonorm(b), rel=1e-12
            )
