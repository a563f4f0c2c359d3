import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symdesign import (AxiomViolation, DesignParams, ParamViolation, ParseError, complement, make_design,
                       parse_design, serialize_design)
from symdesign.incidence import build_point_index, mask_of, points_of

from oracles import FANO, is_symmetric_design


def test_fano_is_valid(fano):
    assert is_symmetric_design(7, 3, 1, FANO)
    assert len(fano.blocks) == 7
    assert fano.block_sets() == sorted(FANO)


def test_duplicate_block_names_intersection_axiom():
    blocks = FANO[:-1] + [(1, 2, 3)]
    with pytest.raises(AxiomViolation) as exc:
        make_design(DesignParams(7, 3, 1), blocks)
    assert exc.value.axiom == 3
    assert exc.value.witness["meet"] == 3


@pytest.mark.parametrize("params", [(7, 7, 1), (7, 3, 3), (7, 3, -1), (8, 3, 1)])
def test_bad_params(params):
    with pytest.raises(ParamViolation):
        DesignParams(*params)


def test_counting_identity_can_be_disabled():
    p = DesignParams(8, 3, 1, check_counting=False)
    assert p.n == 2


def test_order():
    assert DesignParams(81, 16, 3).n == 13


def test_wrong_block_count_and_replication():
    with pytest.raises(AxiomViolation) as exc:
        make_design((7, 3, 1), FANO[:6])
    assert exc.value.axiom == 1
    with pytest.raises(AxiomViolation) as exc:
        make_design((7, 3, 1), FANO[:6] + [(1, 2)])
    assert exc.value.axiom == 0


def test_point_index_matches_rebuild(fano):
    assert fano.point_index == build_point_index(7, fano.blocks)
    for x in range(1, 8):
        assert [i for i, b in enumerate(fano.block_sets()) if x in b] == list(fano.point_index[x - 1])


def test_incidence_matrix_gram(fano):
    n = fano.incidence_matrix()
    assert np.array_equal(n @ n.T, 2 * np.eye(7, dtype=int) + 1)


def test_complement_of_fano():
    d = make_design((7, 3, 1), FANO)
    c = complement(d)
    assert c.params.as_tuple() == (7, 4, 2)
    assert is_symmetric_design(7, 4, 2, c.block_sets())
    assert complement(c) == d


def test_complement_params_81():
    c = DesignParams(81, 16, 3).complement()
    assert c.as_tuple() == (81, 65, 52)
    assert 65 * 64 == 52 * 80


def test_parse_and_serialize_round_trip(fano):
    text = "# comment\n7 3 1\n3 2 1\n5 4 1  # trailing\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n"
    d = parse_design(text)
    assert d == fano
    s = serialize_design(d)
    assert s.splitlines()[0] == "7 3 1"
    assert parse_design(s) == d
    assert serialize_design(parse_design(s)) == s


def test_parse_out_of_range_point():
    with pytest.raises(ParseError) as exc:
        parse_design("7 3 1\n1 2 9\n")
    assert exc.value.line == 2
    assert exc.value.position == 5


def test_parse_garbage():
    with pytest.raises(ParseError):
        parse_design("7 3 1\n1 two 3\n")
    with pytest.raises(ParseError):
        parse_design("")


def test_parse_forwards_axiom_violation():
    with pytest.raises(AxiomViolation):
        parse_design("7 3 1\n1 2 3\n1 2 3\n")


def test_mask_round_trip():
    assert points_of(mask_of([1, 5, 7])) == (1, 5, 7)


def _relabel(blocks, perm):
    return [tuple(perm[x - 1] for x in b) for b in blocks]


@st.composite
def block_lists(draw):
    """Relabelled Fano planes, sometimes with one point of one block moved."""
    perm = draw(st.permutations(range(1, 8)))
    blocks = [list(b) for b in _relabel(FANO, perm)]
    if draw(st.booleans()):
        i = draw(st.integers(0, 6))
        j = draw(st.integers(0, 2))
        blocks[i][j] = draw(st.integers(1, 7))
    return blocks


@settings(max_examples=200, deadline=None)
@given(block_lists())
def test_accepts_iff_gram_oracle_accepts(blocks):
    expected = is_symmetric_design(7, 3, 1, blocks)
    try:
        d = make_design((7, 3, 1), blocks)
    except AxiomViolation:
        assert not expected
    else:
        assert expected
        assert d.point_index == build_point_index(7, d.blocks)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(1, 7), min_size=3, max_size=3), min_size=7, max_size=7))
def test_random_block_lists(blocks):
    expected = is_symmetric_design(7, 3, 1, blocks)
    try:
        make_design((7, 3, 1), blocks)
        accepted = True
    except AxiomViolation:
        accepted = False
    assert accepted == expected


def test_complement_involution_random():
    rng = random.Random(3)
    for _ in range(20):
        perm = list(range(1, 8))
        rng.shuffle(perm)
        d = make_design((7, 3, 1), _relabel(FANO, perm))
        assert complement(complement(d)) == d
