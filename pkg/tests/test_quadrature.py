from fractions import Fraction
from math import factorial

import mpmath
import pytest
from mpmath import mpf

from eulersums import (
    GSpec,
    LogMonomial,
    PrecisionConfig,
    expand_log_power,
    g_direct,
    integrate_monomials,
    mzsv,
    pi_value,
    precision,
    repeat,
)
from eulersums.quadrature import F1, F2, F3, F4, F5, _level_sum


def _unit(e1=0, e2=0, e3=0, e4=0, e5=0, coeff=Fraction(1)):
    return LogMonomial(coeff, (e1, e2, e3, e4, e5))


def test_monomial_validation():
    with pytest.raises(ValueError):
        LogMonomial(Fraction(0), (0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        LogMonomial(Fraction(1), (0, 0, 0, 0))
    with pytest.raises(ValueError):
        LogMonomial(Fraction(1), (7, 6, 0, 0, 0))


def test_expand_log_power_trivials():
    one = expand_log_power(F2, F1, -1, 0)
    assert len(one) == 1 and one[0].exponents == (0, 0, 0, 0, 0)
    lin = expand_log_power(F1, F3, -1, 1)
    assert [(m.coeff, m.exponents) for m in lin] == [
        (Fraction(1), (1, 0, 0, 0, 0)),
        (Fraction(-1), (0, 0, 1, 0, 0)),
    ]
    sq = expand_log_power(F1, F3, -1, 2)
    assert [(m.coeff, m.exponents) for m in sq] == [
        (Fraction(1), (2, 0, 0, 0, 0)),
        (Fraction(-2), (1, 0, 1, 0, 0)),
        (Fraction(1), (0, 0, 2, 0, 0)),
    ]


def test_expand_log_power_validation():
    with pytest.raises(ValueError):
        expand_log_power(F1, F1, -1, 2)
    with pytest.raises(ValueError):
        expand_log_power(F1, 6, -1, 2)
    with pytest.raises(ValueError):
        expand_log_power(F1, F3, 2, 2)


def test_measure_integral_is_zeta2(cfg):
    v = integrate_monomials([_unit()], cfg)
    with precision(cfg):
        true = pi_value(cfg) ** 2 / 6
        assert abs(v.value - true) <= v.err
        assert abs(v.value - true) < mpf("1e-10")


def test_eq23_easy_instance(cfg):
    # (p,q,n) = (0,1,0): integrand F2 with 1/1! -> G_2(0,1) = 2 zeta(3)
    v = integrate_monomials([_unit(e2=1)], cfg)
    with precision(cfg):
        want = 2 * mpmath.zeta(3)
        assert abs(v.value - want) < mpf("1e-10")


def test_eq34_odd_instances_vanish(cfg):
    with precision(cfg):
        for r in range(3):
            for n in (1, 3):
                terms = []
                scale = Fraction(1, factorial(r) * factorial(n))
                for mono in expand_log_power(F1, F3, -1, n):
                    e = list(mono.exponents)
                    e[3] += r
                    terms.append(LogMonomial(mono.coeff * scale, tuple(e)))
                v = integrate_monomials(terms, cfg)
                assert abs(v.value) < mpf("1e-4"), (r, n)


def test_eq34_even_instance_matches_star(cfg):
    with precision(cfg):
        r, n = 1, 2
        scale = Fraction(1, factorial(r) * factorial(n))
        terms = []
        for mono in expand_log_power(F1, F3, -1, n):
            e = list(mono.exponents)
            e[3] += r
            terms.append(LogMonomial(mono.coeff * scale, tuple(e)))
        v = integrate_monomials(terms, cfg)
        want = mzsv(repeat(3, 1, 2), cfg).value
        assert abs(v.value - want) < mpf("1e-8")


def test_f4_equals_f2_minus_f1(cfg):
    # integrate F4^2 F5 directly and via the expansion of (F2 - F1)^2
    direct = integrate_monomials([_unit(e4=2, e5=1)], cfg)
    expanded = []
    for mono in expand_log_power(F2, F1, -1, 2):
        e = list(mono.exponents)
        e[4] += 1
        expanded.append(LogMonomial(mono.coeff, tuple(e)))
    via = integrate_monomials(expanded, cfg)
    assert abs(direct.value - via.value) < mpf("1e-8")


def test_level_refinement_monotone_on_zeta2():
    errors = []
    with precision(PrecisionConfig()):
        true = float(pi_value(PrecisionConfig()) ** 2 / 6)
    for level in range(5, 12):
        got = _level_sum([_unit()], level)
        errors.append(abs(got - true))
    for lo, hi in zip(errors, errors[1:]):
        assert hi <= lo + 1e-13


def test_quad_route_against_direct(cfg):
    from eulersums import g_quad

    with precision(cfg):
        for spec in (GSpec(0, 1, 1), GSpec(2, 0, 0), GSpec(1, 1, 0)):
            a = g_quad(spec, cfg)
            b = g_direct(spec, cfg)
            rel = abs(a.value - b.value) / abs(b.value)
            assert rel < mpf("1e-4")
            assert abs(a.value - b.value) <= a.err + b.err


def test_empty_term_list(cfg):
    v = integrate_monomials([], cfg)
    assert v.value == 0 and v.err == 0
