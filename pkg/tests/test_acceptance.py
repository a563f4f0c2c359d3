"""Acceptance criteria 1-11, one test each.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion in the terminal summary.
"""

import time
from fractions import Fraction

from symdesign import (DesignParams, GroupSpec, analyze_prime, commuting_pair, fixed_structure, full_report,
                       lemma_suite, pgroup_integrality, replay_trace)
from symdesign.search import automorphism_group, cyclic_shift, develop, search_difference_sets, \
    search_invariant_designs

import oracles

P81 = DesignParams(81, 16, 3)


def test_criterion_01_prime_7_contradiction():
    rep = analyze_prime(P81, 7)
    assert rep.verdict == "contradiction"
    assert set(rep.candidate_f) == {4, 11, 18}
    assert set(rep.block_fixed_counts) == {9}
    assert replay_trace(rep)


def test_criterion_02_prime_11_contradiction():
    rep = analyze_prime(P81, 11)
    assert rep.verdict == "contradiction"
    assert set(rep.candidate_f) == {4, 15}
    assert set(rep.block_fixed_counts) == {5}
    assert replay_trace(rep)


def test_criterion_03_prime_5_single_fixed_point():
    rep = analyze_prime(P81, 5)
    assert set(rep.feasible) == {1}
    assert set(rep.eliminated()) == {6, 11, 16}


def test_criterion_04_prime_13_three_fixed_points():
    rep = analyze_prime(P81, 13)
    assert set(rep.feasible) == {3}
    step = rep.eliminated()[16]
    assert step.rule == "R4" and step.value == 16 + 16 * 13 == 224


def test_criterion_05_pgroup_integrality():
    r = pgroup_integrality(81, 2, 3, {2: 9})
    assert r.possible and r.r == 18
    assert not pgroup_integrality(81, 2, 4, {2: 9}).possible
    r = pgroup_integrality(81, 5, 2, {5: 1})
    assert not r.possible and r.r == Fraction(21, 5)
    r = pgroup_integrality(81, 13, 2, {13: 3})
    assert not r.possible and r.burnside.fixed_sum == 81 + 168 * 3
    assert any("168" in note for note in full_report(P81).notes)


def test_criterion_06_commuting_pairs():
    r10 = commuting_pair(81, 5, 2, 1, 9)
    assert not r10.possible and set(r10.p_on_fixed_q) == {4, 9} and not r10.cset
    r26 = commuting_pair(81, 13, 2, 3, 9)
    assert not r26.possible and r26.order == 26
    r65 = commuting_pair(81, 13, 5, 3, 1)
    assert not r65.possible and r65.order == 65
    assert {10, 26, 65} <= set(full_report(P81).forbidden_element_orders)


def test_criterion_07_full_report():
    rep = full_report(P81)
    assert set(rep.allowed_primes) == {2, 3, 5, 13}
    assert rep.exponent_caps[5] == 1 and rep.exponent_caps[13] == 1
    assert 2 ** rep.elementary_abelian_rank_caps[2] <= 8
    assert set(rep.forbidden_element_orders) == {7, 10, 11, 26, 65}
    bound = {p for p, why in rep.excluded_primes.items() if why.startswith("prime bound")}
    assert bound == {p for p in range(17, 80) if all(p % d for d in range(2, p))}
    rep.check_consistency()


def test_criterion_08_lemma_suite_on_corpus(corpus_prime_automorphisms):
    checked = 0
    for d, g, q in corpus_prime_automorphisms:
        if d.params.lam < q:
            rep = lemma_suite(d, g, q)
            assert rep.all_hold, rep.violations()
            checked += 1
    assert checked > 1000


def test_criterion_09_search_oracle_equivalence():
    params = DesignParams(7, 3, 1)
    found = search_invariant_designs(params, GroupSpec(7))
    assert {frozenset(d.block_sets()) for d in found} == oracles.brute_force_fano_planes()
    assert len(found) == 30
    cyclic = search_invariant_designs(params, GroupSpec(7, (cyclic_shift(7),)))
    sets = search_difference_sets(7, 3, 1)
    assert len(sets) == 14
    assert set(cyclic) == {develop(s, 7) for s in sets} and len(cyclic) == 2


def test_criterion_10_fano_automorphism_group(fano):
    t0 = time.perf_counter()
    res = automorphism_group(fano)
    elapsed = time.perf_counter() - t0
    assert res.order == 168 == len(oracles.brute_force_automorphisms(7, oracles.FANO))
    assert elapsed < 1.0


def test_criterion_11_analyzer_soundness(corpus_prime_automorphisms):
    checked = 0
    for d, g, q in corpus_prime_automorphisms:
        if d.params.lam >= q:
            continue
        rep = analyze_prime(d.params, q)
        fx = fixed_structure(d, g)
        assert fx.f in rep.feasible
        if fx.f >= 2 and rep.rules_apply:
            for i in fx.fixed_blocks:
                assert (d.blocks[i] & fx.point_mask).bit_count() in rep.surviving_gsets[fx.f]
        checked += 1
    assert checked > 1000
