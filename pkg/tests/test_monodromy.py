import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localgw.errors import InputError
from localgw.monodromy import (A_TYPE_II, IV_TOTAL, M2, REPRESENTATIVES, IntegerMatrix2,
                               commutant_finite, conjugate, euler_characteristic,
                               find_conjugator, is_closed_under_product, kodaira_classify,
                               pairing_lemma_solutions, picard_lefschetz, total_monodromy,
                               type_iv_composition_solve)

GOLDEN = json.loads((Path(__file__).parent / "golden" / "monodromies.json").read_text())


@pytest.mark.parametrize("tag", sorted(GOLDEN["representatives"]))
def test_representatives_classify(tag):
    assert kodaira_classify(GOLDEN["representatives"][tag]) == tag


def test_parabolic_types():
    assert kodaira_classify([[1, 0], [0, 1]]) == "I0"
    assert kodaira_classify([[1, 3], [0, 1]]) == "I3"
    assert kodaira_classify([[-1, -2], [0, -1]]) == "I2*"


def test_classify_rejects():
    with pytest.raises(InputError):
        kodaira_classify([[2, 0], [0, 1]])
    with pytest.raises(InputError):
        kodaira_classify([[2, 1], [1, 1]])


def test_picard_lefschetz_is_a_transvection():
    t = picard_lefschetz((1, 0))
    assert t.det == 1 and t.trace == 2
    assert t.apply((1, 0)) == (1, 0)
    with pytest.raises(InputError):
        picard_lefschetz((2, 0))


def test_figure_totals():
    e1, e2 = (1, 0), (0, 1)
    iii = total_monodromy([picard_lefschetz(e2), picard_lefschetz(e1), picard_lefschetz(e1)])
    assert iii == M2(GOLDEN["type_iii_total"])
    assert iii.apply(e1) == (1, 1) and iii.apply(e2) == (-2, -1)
    iv = total_monodromy([A_TYPE_II, A_TYPE_II])
    assert iv == M2(GOLDEN["type_iv_total"]) == IV_TOTAL
    assert iv.apply(e1) == (-1, -1) and iv.apply(e2) == (1, 0)
    assert kodaira_classify(iv) == "IV"


def test_type_ii_order_and_commutant():
    assert A_TYPE_II.order() == 6
    comm = commutant_finite(A_TYPE_II, 3)
    assert len(comm) == 6
    assert is_closed_under_product(comm)
    assert set(comm) == set(commutant_finite(A_TYPE_II, 5))


def test_pairing_lemma():
    assert pairing_lemma_solutions() == [(0, -1), (0, 1)]


@pytest.mark.parametrize("bound", [3, 5])
def test_type_iv_composition_is_unique(bound):
    assert type_iv_composition_solve(bound) == M2([[0, 1], [-1, 1]])


def test_conjugator_found_and_checked():
    g = find_conjugator(A_TYPE_II, REPRESENTATIVES["II"])
    assert g is not None and g.det == 1
    assert g @ A_TYPE_II == REPRESENTATIVES["II"] @ g
    assert not conjugate(REPRESENTATIVES["II"], REPRESENTATIVES["II*"])


def test_euler_characteristics():
    assert [euler_characteristic(t) for t in ("II", "III", "IV", "I0*")] == [2, 3, 4, 6]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from([(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]), min_size=1, max_size=6))
def test_products_of_transvections_are_in_sl2(cycles):
    m = total_monodromy([picard_lefschetz(c) for c in cycles])
    assert m.det == 1


WORD_LETTERS = [M2([[0, -1], [1, 0]]), M2([[1, 1], [0, 1]]), M2([[1, -1], [0, 1]])]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(range(3)), max_size=8), st.sampled_from(sorted(REPRESENTATIVES)))
def test_classification_is_conjugation_invariant(word, tag):
    g = IntegerMatrix2.identity()
    for i in word:
        g = g @ WORD_LETTERS[i]
    r = REPRESENTATIVES[tag]
    assert kodaira_classify(g @ r @ g.inverse()) == tag
