from fractions import Fraction

import pytest
import sympy as sp

from localgw.errors import DegeneracyError, InputError
from localgw.weierstrass import (WeierstrassFamily, discriminant, family_iv_to_four_i1,
                                 family_iv_to_two_ii, generic_k3_count, kodaira_type_at,
                                 roots_in_disc, vanishing_orders)


def test_type_iv_degenerates_to_four_i1():
    fam = family_iv_to_four_i1()
    at0 = fam.specialize(0)
    assert vanishing_orders(at0, sp.Integer(0)) == (2, 2, 4)
    assert kodaira_type_at(at0, sp.Integer(0)) == "IV"
    eps = fam.specialize(Fraction(1, 100))
    roots = roots_in_disc(discriminant(eps), 0j, 0.5)
    assert len(roots) == 4
    assert all(r.multiplicity == 1 for r in roots)
    assert all(kodaira_type_at(eps, r.value) == "I1" for r in roots)


def test_type_iv_to_two_type_ii():
    fam = family_iv_to_two_ii()
    eps = Fraction(1, 100)
    spec = fam.specialize(eps)
    roots = roots_in_disc(discriminant(spec), 0j, 0.5)
    assert len(roots) == 2 and all(r.multiplicity == 2 for r in roots)
    for r in roots:
        assert abs(abs(r.value.imag) - 0.1) < 1e-12 and abs(r.value.real) < 1e-12
        assert kodaira_type_at(spec, r.value) == "II"
    assert kodaira_type_at(spec, sp.I * sp.sqrt(sp.Rational(1, 100))) == "II"


def test_generic_families_have_24_roots():
    rep = generic_k3_count(8, 12, trials=20, seed=7)
    assert rep.degrees == [24] * 20
    assert rep.all_generic


def test_tate_table_rows():
    z = sp.Symbol("z")
    cases = {("z", "0"): "III", ("z^2", "z^2"): "IV", ("z^2", "z^3"): "I0*", ("1", "z"): "I0"}
    for (a, b), tag in cases.items():
        fam = WeierstrassFamily.parse(a, b, var="z")
        assert kodaira_type_at(fam, sp.Integer(0)) == tag


def test_boundary_root_and_degenerate_discriminant():
    fam = WeierstrassFamily.parse("-3", "2-2*t", var="t")
    with pytest.raises(InputError):
        roots_in_disc(discriminant(fam), 0j, abs(complex(sp.nroots(discriminant(fam).as_expr())[0])))
    with pytest.raises(DegeneracyError):
        discriminant(WeierstrassFamily.parse("-3*t^2", "2*t^3", var="t"))


def test_parse_errors():
    with pytest.raises(InputError):
        WeierstrassFamily.parse("s^2+q", "s", var="s")
    with pytest.raises(InputError):
        WeierstrassFamily.parse("s^^2", "s", var="s")
    with pytest.raises(InputError):
        family_iv_to_four_i1().poly(sp.Symbol("s"))
