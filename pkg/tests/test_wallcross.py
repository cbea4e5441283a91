from fractions import Fraction

import pytest

from localgw.charge import ChargeLattice, standard_rank2
from localgw.errors import InputError, QueryError
from localgw.series import TruncatedSeries
from localgw.wallcross import (EXPONENT_SIGN, WallAutomorphism, apply, commutation_check, compose,
                               inverse_list, pentagon_check)


@pytest.mark.parametrize("cutoff", range(1, 9))
def test_pentagon(cutoff):
    assert pentagon_check(standard_rank2(), cutoff)


def test_pentagon_detects_wrong_middle_wall():
    rep = pentagon_check(standard_rank2(), 4, middle_coeff=2)
    assert not rep and "generator" in rep.detail


def test_apply_single_wall():
    lat = standard_rank2()
    k = WallAutomorphism.seed(lat, (1, 0), 4)
    # z^{g2} -> z^{g2} (1 + z^{g1})^{EXPONENT_SIGN <g2, g1>}
    img = apply(k, (0, 1))
    expect = (TruncatedSeries.one_plus((1, 0), 4) ** (EXPONENT_SIGN * lat.pair((0, 1), (1, 0)))).shift((0, 1))
    assert img == expect
    assert apply(k, (1, 0)) == TruncatedSeries.monomial((1, 0), 4)
    with pytest.raises(QueryError):
        apply(k, (3, 2))


def test_wall_validation():
    lat = standard_rank2()
    with pytest.raises(InputError):
        WallAutomorphism.seed(lat, (2, 0), 3)
    with pytest.raises(InputError):
        WallAutomorphism(lat, (1, 0), TruncatedSeries(2, 3, {(0, 0): 1, (0, 1): 1}))


def test_parallel_walls_commute():
    lat = ChargeLattice(pairing=[[0, 0, 1], [0, 0, 1], [-1, -1, 0]])
    k1 = WallAutomorphism.seed(lat, (1, 0, 0), 4)
    k2 = WallAutomorphism.seed(lat, (0, 1, 0), 4)
    assert commutation_check(k1, k2)
    k3 = WallAutomorphism.seed(lat, (0, 0, 1), 4)
    assert not commutation_check(k1, k3)


def test_i_n_composite():
    # n parallel thimble walls compose to e2 -> e2 * prod (1 + z^{g_i})^{sign}
    n = 3
    r = n + 1
    p = [[0] * r for _ in range(r)]
    for i in range(n):
        p[i][n], p[n][i] = 1, -1
    lat = ChargeLattice(pairing=p)
    ks = [WallAutomorphism.seed(lat, tuple(1 if j == i else 0 for j in range(r)), 4) for i in range(n)]
    e = compose(ks)
    unit = e.unit_for(tuple(1 if j == n else 0 for j in range(r)))
    expect = TruncatedSeries.one(r, 4)
    for i in range(n):
        g = tuple(1 if j == i else 0 for j in range(r))
        expect = expect * TruncatedSeries.one_plus(g, 4) ** (EXPONENT_SIGN * lat.pair(tuple(1 if j == n else 0 for j in range(r)), g))
    assert unit == expect


def test_inverse_list_gives_identity():
    lat = standard_rank2()
    ks = [WallAutomorphism.seed(lat, d, 5) for d in ((1, 0), (1, 1), (0, 1))]
    assert compose(ks + inverse_list(ks)).is_identity()


def test_compose_checks_inputs():
    lat = standard_rank2()
    with pytest.raises(InputError):
        compose([])
    with pytest.raises(InputError):
        compose([WallAutomorphism.seed(lat, (1, 0), 3), WallAutomorphism.seed(lat, (0, 1), 4)])


def test_wall_function_with_rational_coefficients():
    lat = standard_rank2()
    f = TruncatedSeries(2, 4, {(0, 0): 1, (1, 1): Fraction(1, 2), (2, 2): Fraction(-1, 3)})
    k = WallAutomorphism(lat, (1, 1), f)
    assert compose([k, k.inverse()]).is_identity()
