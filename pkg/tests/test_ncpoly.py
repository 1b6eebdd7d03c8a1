from fractions import Fraction

import mpmath
import pytest

from qhaar import ncpoly
from qhaar.errors import ModelMismatchError, PolyParseError
from qhaar.ncpoly import GaussianRational, NCPolynomial


def x(i, j):
    return NCPolynomial.generator(i, j, "o+")


def vgen(i, j, star=False):
    return NCPolynomial.generator(i, j, "u+", star=star)


class TestGaussianRational:
    def test_arithmetic(self):
        a = GaussianRational(Fraction(1, 2), Fraction(1))
        b = GaussianRational(Fraction(1), Fraction(-2))
        assert (a * b).re == Fraction(1, 2) + 2
        assert (a + b).im == Fraction(-1)

    def test_conjugate_and_str(self):
        a = GaussianRational(Fraction(1, 3), Fraction(2))
        assert a.conjugate().im == -2
        assert str(GaussianRational(Fraction(3, 4))) == "3/4"


class TestAlgebra:
    def test_unit_law(self):
        one = NCPolynomial.constant(1)
        p = x(1, 1) + x(1, 2)
        assert one * p == p == p * one

    def test_monomial_concatenation(self):
        p = x(1, 1) * x(1, 2)
        ((word, h),) = p.terms.keys()
        assert word == ((1, 1, "1"), (1, 2, "1"))
        assert h == 0

    def test_square_distributes(self):
        p = (x(1, 1) + x(1, 2)) ** 2
        assert len(p.terms) == 4
        assert all(len(w) == 2 for w, _ in p.terms)

    def test_model_mismatch(self):
        with pytest.raises(ModelMismatchError):
            x(1, 1) * vgen(1, 1)

    def test_adjoint_orthogonal_self_adjoint(self):
        assert x(1, 1).adjoint() == x(1, 1)

    def test_adjoint_reverses_and_conjugates(self):
        p = (x(1, 1) * x(2, 2)).scale(ncpoly.I)
        q = p.adjoint()
        ((word, _),) = q.terms.keys()
        assert word == ((2, 2, "1"), (1, 1, "1"))
        assert list(q.terms.values())[0] == GaussianRational(Fraction(0), Fraction(-1))

    def test_adjoint_flips_star(self):
        p = vgen(1, 1)
        ((word, _),) = p.adjoint().terms.keys()
        assert word == ((1, 1, "*"),)

    def test_adjoint_involution(self):
        p = vgen(1, 1) * vgen(2, 3, True) + vgen(1, 2).scale(ncpoly.I)
        assert p.adjoint().adjoint() == p

    def test_degree_conventions(self):
        assert NCPolynomial("o+").degree == 0
        assert NCPolynomial.constant(3).degree == 0
        assert (x(1, 1) * x(1, 1)).degree == 2


class TestStateEval:
    def test_unital(self):
        assert ncpoly.state_eval(NCPolynomial.constant(1), 5).re == 1
        assert ncpoly.state_eval(NCPolynomial.constant(1), None).re == 1

    def test_scaled_square(self):
        s = ncpoly.scaled_generators(x(1, 1), 7)
        assert ncpoly.state_eval(s * s, 7).re == 1

    def test_scaled_fourth_power(self):
        for N in (3, 5, 8):
            s = ncpoly.scaled_generators(x(1, 1), N)
            assert ncpoly.state_eval((s * s) ** 2, N).re == Fraction(2 * N, N + 1)

    def test_limit_state(self):
        p = x(1, 1) ** 4
        assert ncpoly.state_eval(p, None).re == 2
        c = vgen(1, 1) * vgen(1, 1, True)
        assert ncpoly.state_eval(c * c, None).re == 2

    def test_trace_property(self):
        a = x(1, 1) * x(1, 2)
        b = x(2, 2) + x(2, 1) * x(1, 1)
        for N in (3, 4):
            assert ncpoly.state_eval(a * b, N) == ncpoly.state_eval(b * a, N)

    def test_positivity_of_squares(self):
        suite = [x(1, 1), x(1, 2) + x(2, 1), x(1, 1) * x(2, 2) - NCPolynomial.constant(1)]
        for N in (3, 5):
            for a in suite:
                for m in (1, 2):
                    val = ncpoly.state_eval((a.adjoint() * a) ** m, N)
                    assert val.is_real and val.re >= 0


class TestScaledGenerators:
    def test_prefactor_tracking(self):
        s = ncpoly.scaled_generators(x(1, 1) * x(1, 1), 4)
        ((_, h),) = s.terms.keys()
        assert h == 2

    def test_out_of_range_letters_drop(self):
        p = NCPolynomial.generator(5, 1, "o+")
        assert ncpoly.scaled_generators(p, 4).terms == {}
        kept = ncpoly.scaled_generators(p, 5)
        assert len(kept.terms) == 1


class TestLpNorm:
    def test_l2_of_scaled_generator(self):
        s = ncpoly.scaled_generators(x(1, 1), 6)
        assert ncpoly.lp_norm(s, 2, 6) == 1

    def test_l4_closed_form(self):
        N = 5
        s = ncpoly.scaled_generators(x(1, 1), N)
        got = ncpoly.lp_norm(s, 4, N)
        want = (2 * N / (N + 1)) ** 0.25
        assert abs(float(got) - want) < 1e-12

    def test_limit_norm_is_catalan_root(self):
        got = ncpoly.lp_norm(x(1, 1), 6, None)
        assert abs(float(got) - 5 ** (1 / 6)) < 1e-12

    def test_hoelder_monotone_in_m(self):
        for N in (4, 7):
            s = ncpoly.scaled_generators(x(1, 1) + x(1, 2), N)
            norms = [ncpoly.lp_norm(s, 2 * m, N) for m in range(1, 7)]
            assert all(a <= b + mpmath.mpf("1e-30") for a, b in zip(norms, norms[1:]))

    def test_limit_gap_shrinks(self):
        p = x(1, 1) ** 2
        lim = ncpoly.lp_norm(p, 4, None)
        gaps = []
        for N in (4, 8, 16):
            s = ncpoly.scaled_generators(p, N)
            gaps.append(abs(ncpoly.lp_norm(s, 4, N) - lim))
        assert gaps[0] > gaps[1] > gaps[2]

    def test_odd_p_rejected(self):
        with pytest.raises(ValueError):
            ncpoly.lp_norm(x(1, 1), 3, 4)


class TestParser:
    def test_example_from_docs(self):
        p = ncpoly.parse_poly("x[1,1]*x[1,2] - 1/2*x[2,2]")
        assert p.model == "o+"
        assert len(p.terms) == 2
        key = (((2, 2, "1"),), 0)
        assert p.terms[key] == GaussianRational(Fraction(-1, 2))

    def test_powers(self):
        assert ncpoly.parse_poly("x[1,1]^4") == x(1, 1) ** 4

    def test_unitary_letters(self):
        p = ncpoly.parse_poly("v[1,1]*v*[1,1]")
        assert p.model == "u+"
        ((word, _),) = p.terms.keys()
        assert word == ((1, 1, "1"), (1, 1, "*"))

    def test_imaginary_coefficient(self):
        p = ncpoly.parse_poly("3/2i*x[1,1]")
        ((_, _),) = p.terms.keys()
        assert list(p.terms.values())[0] == GaussianRational(Fraction(0), Fraction(3, 2))

    def test_mixed_models_rejected(self):
        with pytest.raises(PolyParseError):
            ncpoly.parse_poly("x[1,1]*v[1,1]")

    def test_garbage_rejected(self):
        for bad in ("", "x[1]", "x[1,1]+", "x[1,1]^1/2", "y[1,1]"):
            with pytest.raises(PolyParseError):
                ncpoly.parse_poly(bad)
