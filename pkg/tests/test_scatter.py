import json
from fractions import Fraction
from pathlib import Path

import pytest

from localgw import charge as ch
from localgw.charge import ChargeLattice, standard_rank2
from localgw.errors import DegeneracyError, InputError, StateError
from localgw.monodromy import A_TYPE_II, IV_TOTAL
from localgw.scatter import (InvariantTable, ScatteringDiagram, Wall, boundary_invariants, complete,
                             complete_planar, complete_single_point, deformation_agreement,
                             degree_functional, diagram_from_json, diagram_to_json,
                             divisibility_table, extract_invariants, lifted_cutoff, local_model,
                             monodromy_invariance_check, phase, sl2_symmetry_check,
                             table_difference, verify_consistency)
from localgw.series import TruncatedSeries

GOLDEN = Path(__file__).parent / "golden"


def seed(lat, g, cutoff, base=(0, 0)):
    return Wall(g, TruncatedSeries.one_plus(g, cutoff), base=base, line=True, angle=phase(lat, g))


def two_walls(cutoff=6):
    lat = standard_rank2(charge_constants=(1, 1j))
    return ScatteringDiagram(lat, (seed(lat, (1, 0), cutoff), seed(lat, (0, 1), cutoff)), cutoff)


def test_two_walls_add_exactly_one():
    d = complete_single_point(two_walls())
    new = d.walls[2:]
    assert len(new) == 1
    assert new[0].direction == (1, 1)
    assert new[0].function == TruncatedSeries.one_plus((1, 1), 6)


def test_type_iii_new_walls():
    d = local_model("III", 6).complete()
    new = {w.direction: w.function for w in d.walls[3:]}
    assert set(new) == {(1, 0, 1), (0, 1, 1), (1, 1, 1)}
    for g, f in new.items():
        assert f == TruncatedSeries.one_plus(g, 6)


def test_parallel_walls_produce_nothing():
    d = local_model("I4", 4).complete()
    assert len(d.walls) == 4


def test_equal_phase_with_pairing_is_rejected():
    lat = standard_rank2(charge_constants=(1, 2))
    d = ScatteringDiagram(lat, (seed(lat, (1, 0), 3), seed(lat, (0, 1), 3)), 3)
    with pytest.raises(DegeneracyError):
        complete_single_point(d)


def test_non_primitive_direction_rejected():
    lat = standard_rank2(charge_constants=(1, 1j))
    with pytest.raises(InputError):
        Wall((2, 0), TruncatedSeries.one_plus((2, 0), 3), line=True)
        ScatteringDiagram(lat, (Wall((2, 0), TruncatedSeries.one_plus((2, 0), 3)),), 3)


def test_extract_needs_completion():
    with pytest.raises(StateError):
        extract_invariants(two_walls())


def test_single_i1_wall():
    lat = ChargeLattice(pairing=[[0]], charge_constants=[1])
    d = complete_single_point(ScatteringDiagram(lat, (seed(lat, (1,), 8),), 8))
    t = extract_invariants(d, (1,))
    for k in range(1, 9):
        assert t.value((k,), "omega_tilde") == Fraction((-1) ** (k - 1), k * k)
        assert t.value((k,)) == (1 if k == 1 else 0)


def test_cutoff_coherence():
    hi = extract_invariants(local_model("III", 6).complete())
    lo = extract_invariants(local_model("III", 4).complete())
    assert {k: v for k, v in hi.omega_tilde.items() if ch.degree(k) <= 4} == lo.omega_tilde


def test_chamber_independence():
    # rotating every constant by the same phase keeps the chamber
    import cmath
    m = local_model("II", 5)
    lat = m.diagram.lattice
    turned = ChargeLattice(pairing=lat.pairing, charge_constants=[c * cmath.rect(1, 0.3) for c in lat.charge_constants])
    walls = tuple(seed(turned, w.direction, 5) for w in m.diagram.walls)
    a = extract_invariants(m.complete())
    b = extract_invariants(complete_single_point(ScatteringDiagram(turned, walls, 5)))
    assert a.omega == b.omega


def test_planar_matches_single_point_for_ii():
    lat = standard_rank2(charge_constants=(1, 1j))
    walls = (seed(lat, (1, 0), 5, (0, 0)), seed(lat, (0, 1), 5, (Fraction(1), Fraction(-1))))
    d = complete_planar(ScatteringDiagram(lat, walls, 5, "planar"))
    assert verify_consistency(d)
    assert extract_invariants(d).omega == extract_invariants(local_model("II", 5).complete()).omega


def test_four_i1_route_gives_type_iv_table():
    t = boundary_invariants("IV", 5, route="four-I1")
    golden = json.loads((GOLDEN / "iv.json").read_text())
    expect = {tuple(e["charge"]): Fraction(e["value"]) for e in golden["omega"]}
    assert t.omega == expect


def test_two_ii_route_differs_from_golden():
    """Same-basis two-cluster seeds give a different table; recorded, not patched."""
    two = boundary_invariants("IV", 5, route="two-II")
    four = boundary_invariants("IV", 5, route="four-I1")
    assert not deformation_agreement(two, four, 5)
    assert table_difference(two, four, 5)


def test_degree_functional():
    assert degree_functional([(1, 0), (0, 1)]) == (1, 1)
    assert degree_functional([(1, 0), (-1, 1)]) == (1, 2)
    assert lifted_cutoff([(1, 0), (-1, 1)], 5) == 10
    with pytest.raises(InputError):
        degree_functional([(1, 0), (0, 1), (1, 1)])


def test_monodromy_invariance():
    ii = boundary_invariants("II", 5)
    assert monodromy_invariance_check(ii, A_TYPE_II)
    iv = boundary_invariants("IV", 5, route="four-I1")
    assert monodromy_invariance_check(iv, IV_TOTAL)
    iv.omega_tilde[(1, 0)] += 1
    assert not monodromy_invariance_check(iv, IV_TOTAL)


def test_deformation_agreement_trivial_cases():
    i2 = extract_invariants(local_model("I2", 4).complete())
    lat = i2.lattice
    walls = tuple(reversed(local_model("I2", 4).diagram.walls))
    swapped = extract_invariants(complete_single_point(ScatteringDiagram(lat, walls, 4)))
    assert deformation_agreement(i2, swapped, 4)
    ii = boundary_invariants("II", 4)
    i1 = boundary_invariants("I1", 4)
    assert not deformation_agreement(ii, i1, 4)
    with pytest.raises(InputError):
        deformation_agreement(ii, extract_invariants(local_model("III", 4).complete()), 4)


def test_local_model_errors():
    with pytest.raises(InputError):
        local_model("I0*", 4)
    with pytest.raises(InputError):
        local_model("II*", 4)
    with pytest.raises(InputError):
        local_model("IV", 4, route="three-I1")


def test_sl2_symmetry_checker():
    good = divisibility_table(lambda d: Fraction(1, d * d), 6)
    assert sl2_symmetry_check(good, 6)
    bad = dict(good)
    bad[(1, 2)] = Fraction(5)
    rep = sl2_symmetry_check(bad, 6)
    assert not rep
    assert (1, 2) in rep.violation


def test_diagram_json_round_trip(tmp_path):
    d = local_model("IV", 3, route="four-I1").complete()
    data = json.loads(json.dumps(diagram_to_json(d)))
    back = diagram_from_json(data)
    assert back.walls == d.walls and back.kind == "planar" and back.cutoff == 3
    again = complete(diagram_from_json({**data, "consistent": False}))
    assert extract_invariants(again).omega == extract_invariants(d).omega
    with pytest.raises(InputError):
        diagram_from_json({**data, "extra": 1})


def test_table_json_round_trip():
    t = extract_invariants(local_model("III", 4).complete())
    back = InvariantTable.from_json(json.loads(json.dumps(t.to_json())), t.lattice)
    assert back.omega == t.omega and back.omega_tilde == t.omega_tilde
