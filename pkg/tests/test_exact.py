from fractions import Fraction

import pytest

import geozeta.exact as exact
from geozeta.exact import (EXACT_IDENTITIES, FIXTURE_CLASSES, ExactClass,
                           GaussianRational, exact_battery, exact_identity_check,
                           identity_terms, to_length_spectrum)
from geozeta.identities import (verify_four_selberg_quotient,
                                verify_rho_selberg_quotient,
                                verify_ruelle_decomposition,
                                verify_selberg_rho_decomposition,
                                verify_zograf_ratio)
from geozeta.zeta import EvalParams

GR = GaussianRational.of


class TestGaussianRational:
    def test_field_arithmetic(self):
        a = GR(Fraction(3, 5), Fraction(4, 5))
        b = GR(Fraction(1, 2), Fraction(-1, 3))
        assert (a * b) / b == a
        assert a * a.conj() == GR(1)
        assert a ** 0 == GR(1)
        assert a ** -2 == GR(1) / (a * a)

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            GR(1) / GR(0)


class TestExactClass:
    def test_fixture_consistency(self):
        for cls in FIXTURE_CLASSES:
            assert cls.u_half * cls.u_half == cls.u
            assert cls.u.norm2() == 1
            assert 0 < cls.q < 1

    def test_from_q_checks_square(self):
        u_half = GR(Fraction(3, 5), Fraction(4, 5))
        u = u_half * u_half
        cls = ExactClass.from_q(Fraction(1, 4), u, u_half)
        assert cls.q_sqrt == Fraction(1, 2)
        with pytest.raises(ValueError, match="square"):
            ExactClass.from_q(Fraction(1, 3), u, u_half)
        with pytest.raises(ValueError, match="u_half"):
            ExactClass.from_q(Fraction(1, 4), u, GR(Fraction(5, 13), Fraction(12, 13)))

    def test_non_unit_half_rejected(self):
        # the analogue of (1+i)/sqrt(2) cannot be represented: any candidate
        # with |u_half| != 1 exactly is refused
        with pytest.raises(ValueError, match="unit modulus"):
            ExactClass(Fraction(1, 2), GR(Fraction(1, 2), Fraction(1, 2)))

    def test_floating_image_respects_branch(self):
        for cls in FIXTURE_CLASSES:
            e = cls.to_entry()
            lam = cls.u_half.to_complex() / float(cls.q_sqrt)
            import cmath
            lam_float = e.spin_sign * cmath.exp(0.5 * complex(e.length, e.angle))
            assert abs(lam - lam_float) <= 1e-12 * abs(lam)


class TestExactChecks:
    def test_vacuous_empty_class_list(self):
        result = exact_identity_check([], "four-selberg", 5, 6, m=2)
        assert result.passed
        assert result.first_failure is None

    def test_all_identities_one_point(self):
        for identity in EXACT_IDENTITIES:
            result = exact_identity_check(FIXTURE_CLASSES, identity, 5, 8, m=2, k=1, n=3)
            assert result.passed, identity

    def test_half_integer_s_for_odd_chain(self):
        result = exact_identity_check(FIXTURE_CLASSES, "zograf-G", Fraction(9, 2), 8, n=2)
        assert result.passed

    def test_non_exactable_s_rejected(self):
        with pytest.raises(ValueError, match="not exactable"):
            exact_identity_check(FIXTURE_CLASSES, "ruelle-dec", Fraction(1, 3), 4, m=1)

    def test_corrupted_character_exponent_caught(self, monkeypatch):
        # corrupt one side's character weight by one unit: the earliest
        # offending term must be (class 0, power 1)
        real_r_core = exact._r_core

        def corrupted(cls, mu, two_s, k, two_shift):
            return real_r_core(cls, mu, two_s, k + 1, two_shift)

        monkeypatch.setattr(exact, "_r_core", corrupted)
        result = exact_identity_check(FIXTURE_CLASSES, "ruelle-dec", 5, 6, m=1)
        assert not result.passed
        assert (result.first_failure.class_index, result.first_failure.power) == (0, 1)

    def test_ledger_deterministic(self):
        a = exact_identity_check(FIXTURE_CLASSES, "four-selberg", 4, 10, m=3)
        b = exact_identity_check(FIXTURE_CLASSES, "four-selberg", 4, 10, m=3)
        assert a.ledger == b.ledger
        assert len(a.ledger) == len(FIXTURE_CLASSES) * 10

    def test_battery_matrix(self):
        results = exact_battery(s_values=(4,), max_power=6)
        assert results and all(r.passed for r in results)


class TestFloatingAgreement:
    def test_identities_agree_with_float_pipeline(self):
        # map the exact classes to a floating spectrum and rerun each identity
        # there; whenever the exact check passes the float residual is noise
        spec = to_length_spectrum(FIXTURE_CLASSES, l_max=40.0)
        p = EvalParams(40.0)
        s = 4.0
        assert exact_identity_check(FIXTURE_CLASSES, "ruelle-dec", s, 12, m=2).passed
        assert verify_ruelle_decomposition(spec, 2, grid=[complex(s, 0)], p=p,
                                           tol=1e-10).passed
        assert exact_identity_check(FIXTURE_CLASSES, "selberg-rho-dec", s, 12, m=1).passed
        assert verify_selberg_rho_decomposition(spec, 1, 0, grid=[complex(s, 0)], p=p,
                                                tol=1e-10).passed
        assert exact_identity_check(FIXTURE_CLASSES, "four-selberg", s, 12, m=2).passed
        assert verify_four_selberg_quotient(spec, 2, grid=[complex(s, 0)], p=p,
                                            tol=1e-10).passed
        assert exact_identity_check(FIXTURE_CLASSES, "rho-selberg", s, 12, m=2).passed
        assert verify_rho_selberg_quotient(spec, 2, grid=[complex(s, 0)], p=p,
                                           tol=1e-10).passed
        assert exact_identity_check(FIXTURE_CLASSES, "zograf-F", s, 12, n=3).passed
        assert verify_zograf_ratio(spec, 3, "even", grid=[complex(s, 0)], p=p,
                                   tol=1e-10).passed
        assert exact_identity_check(FIXTURE_CLASSES, "zograf-G", s, 12, n=2).passed
        assert verify_zograf_ratio(spec, 2, "odd", grid=[complex(s, 0)], p=p,
                                   tol=1e-10).passed


def test_identity_terms_unknown_id():
    with pytest.raises(ValueError, match="unknown exact identity"):
        identity_terms("nope", FIXTURE_CLASSES[0], 1, 4)
