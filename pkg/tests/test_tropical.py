import itertools
from fractions import Fraction

import pytest

from localgw.errors import InputError, QueryError
from localgw.scatter import extract_invariants, local_model
from localgw.tropical import (Leaf, TropicalDisc, Vertex, automorphism_order, enumerate_discs,
                              model, multiplicity, tropical_count, validate)


def positive_classes(rank, cutoff):
    return [g for g in itertools.product(range(cutoff + 1), repeat=rank) if 0 < sum(g) <= cutoff]


@pytest.mark.parametrize("tag, rank", [("II", 2), ("III", 3)])
def test_tropical_count_matches_scattering(tag, rank):
    m = model(tag)
    table = extract_invariants(local_model(tag, 3).complete())
    for g in positive_classes(rank, 3):
        assert tropical_count(m, g, 3) == table.value(g, "omega_tilde"), g


def test_single_vertex_disc():
    m = model("II")
    discs = enumerate_discs(m, (1, 1), 4)
    assert len(discs) == 1
    d = discs[0]
    assert validate(d)
    assert multiplicity(d) == 1
    assert d.vertices()[0].position == (Fraction(1), Fraction(0))


def test_multiple_cover_leaf():
    m = model("In", 3)
    # Omega~(2 g1) = -1/4 from one weight-2 leaf; the two weight-1 leaves cannot meet
    assert tropical_count(m, (2, 0, 0), 4) == Fraction(-1, 4)
    assert tropical_count(m, (1, 1, 0), 4) == 0


def test_validation_catches_bad_vertex():
    m = model("II")
    bad = TropicalDisc(m, Vertex((Leaf(0, 0, 1), Leaf(1, 0, 1)), (Fraction(3), Fraction(3))))
    rep = validate(bad)
    assert not rep and rep.violations


def test_automorphism_order():
    assert automorphism_order([(1, 1, 2), (1,)]) == 2
    assert automorphism_order([(1, 1, 1)]) == 6


def test_queries_above_cutoff_and_zero():
    m = model("II")
    with pytest.raises(QueryError):
        enumerate_discs(m, (3, 2), 4)
    with pytest.raises(InputError):
        enumerate_discs(m, (0, 0), 4)
    with pytest.raises(InputError):
        model("IV")
