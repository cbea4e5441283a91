import cmath
import math

import pytest

from localgw.charge import standard_rank2
from localgw.errors import DegeneracyError, DomainError, InputError
from localgw.geometry import (CentralChargeModel, affine_coordinates, angle_deviation,
                              consecutive_spacings, eigen_constants, evaluate, model_for,
                              monodromy_shift_ok, ray_angles, ray_angles_of, rotate_phase,
                              trace_flow)
from localgw.monodromy import A_TYPE_II

CLASSES = {
    "II": [(1, 0), (0, 1), (1, 1)],
    "III": [(1, 0), (0, 1), (1, 1), (2, 1)],
    "IV": [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)],
}


def with_negatives(cs):
    return cs + [(-a, -b) for a, b in cs]


@pytest.mark.parametrize("tag, count, spacing", [("II", 5, 2 * math.pi / 5), ("III", 6, math.pi / 3)])
def test_ray_counts(tag, count, spacing):
    m = model_for(tag)
    rays = ray_angles(m, with_negatives(CLASSES[tag]), 0.3)
    assert len(rays) == count
    assert all(abs(s - spacing) < 1e-9 for s in consecutive_spacings([a for a, _ in rays]))


def test_type_iv_rays_per_group():
    m = model_for("IV")
    for group in (CLASSES["IV"][:3], CLASSES["IV"][3:]):
        rays = ray_angles(m, with_negatives(group), 0.3)
        assert len(rays) == 8
        assert all(abs(s - math.pi / 4) < 1e-9 for s in consecutive_spacings([a for a, _ in rays]))


@pytest.mark.parametrize("tag", ["II", "III", "IV"])
def test_monodromy_shift(tag):
    m = model_for(tag)
    assert m.check_equivariance()
    assert monodromy_shift_ok(m, with_negatives(CLASSES[tag]), 0.3)


def test_eigen_constants():
    c1, c2 = eigen_constants(A_TYPE_II, 5, 6)
    w = cmath.exp(2j * math.pi * 5 / 6)
    # c(M e1) = c(-e2) and c(M e2) = c(e1 + e2)
    assert abs(-c2 - w * c1) < 1e-12
    assert abs(c1 + c2 - w * c2) < 1e-12
    with pytest.raises(InputError):
        eigen_constants(A_TYPE_II, 1, 4)


def test_model_validation():
    with pytest.raises(InputError):
        CentralChargeModel(6, 4, standard_rank2(charge_constants=(1, 1j)))
    with pytest.raises(InputError):
        model_for("I0*")


def test_evaluate_domain():
    m = model_for("II")
    with pytest.raises(DomainError):
        evaluate(m, (1, 0), 0)
    with pytest.raises(DomainError):
        evaluate(m, (1, 0), -1.0)
    z = 0.5 + 0.2j
    assert abs(evaluate(m, (1, 1), z) - evaluate(m, (1, 0), z) - evaluate(m, (0, 1), z)) < 1e-12


def test_coincident_rays_with_pairing_raise():
    lat = standard_rank2(charge_constants=(1, 2))
    m = CentralChargeModel(1, 1, lat)
    with pytest.raises(DegeneracyError):
        ray_angles(m, [(1, 0), (0, 1)], 0.0)


def test_affine_coordinates_and_rotation():
    m = model_for("II")
    x, y = affine_coordinates(m, [(1, 0), (0, 1)], 0.0, 0.3 + 0.1j)
    assert abs(x - evaluate(m, (1, 0), 0.3 + 0.1j).real) < 1e-12
    r = rotate_phase(1.0).then(rotate_phase(2.0))
    assert abs(r.theta - 3.0) < 1e-12
    with pytest.raises(InputError):
        affine_coordinates(m, [(1, 0), (2, 0)], 0.0, 0.3 + 0.1j)


@pytest.mark.parametrize("a, k", [(1, 1), (5, 6), (3, 4), (4, 3)])
def test_flow_follows_ray(a, k):
    lat = standard_rank2(charge_constants=(cmath.rect(1, 0.4), 1j))
    m = CentralChargeModel(k, a, lat)
    theta = 0.9
    alpha = ray_angles_of(m, (1, 0), theta)[0]
    line = trace_flow(m, (1, 0), cmath.rect(0.8, alpha), theta)
    assert line.terminated == "reached zero"
    assert angle_deviation(line, alpha) < 1e-6
    assert all(b < a_ for a_, b in zip(line.moduli, line.moduli[1:]))


def test_flow_rejects_start_off_ray():
    m = model_for("II")
    with pytest.raises(InputError):
        trace_flow(m, (1, 0), 0.5 + 0.5j, 0.0)
