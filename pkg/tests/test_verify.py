"""Quantum verification suite: exact passes, fast sampled mode, and mutation
sensitivity of every structure constant."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from singosc.opalg import (MUTABLE_CONSTANTS, QuadraticConstants, build_quantum,
                           commutator, verify_q3)
from singosc.opalg.verify import (_ProductCache, quadratic_ac_rhs, quadratic_bc_rhs)


def test_small_split_passes_symbolically():
    report = verify_q3(2, 1)
    assert report.all_passed, [r.name for r in report.failures()]
    assert report["casimir[generators-vs-central]"].passed
    assert report["quadratic[A,C]"].residual_terms == 0


def test_asymmetric_split_passes():
    report = verify_q3(4, 2)
    assert report.all_passed, [r.name for r in report.failures()]


def test_sampled_mode_passes():
    rng = random.Random(3)
    values = {"hbar": Fraction(rng.randrange(1, 20), 7),
              "omega": Fraction(5, 3),
              "c1": Fraction(9, 4), "c2": Fraction(2, 11)}
    report = verify_q3(4, 2, substitutions=values)
    assert report.all_passed, [r.name for r in report.failures()]


@pytest.mark.parametrize("field_name", MUTABLE_CONSTANTS)
def test_mutating_any_structure_constant_fails(field_name):
    N, n = 4, 2
    gens = build_quantum(N, n)
    cache = _ProductCache(gens)
    consts = QuadraticConstants.for_dims(N, n).bumped(field_name)
    ac = commutator(gens.A, cache.get("C")) - quadratic_ac_rhs(cache, consts)
    bc = commutator(gens.B, cache.get("C")) - quadratic_bc_rhs(cache, consts)
    assert not (ac.is_zero() and bc.is_zero()), field_name


def test_specific_mutation_from_4_to_3():
    # the B-coefficient N(N-4)/4 of the first relation, with N(N-4) -> N(N-3)
    N, n = 4, 2
    gens = build_quantum(N, n)
    cache = _ProductCache(gens)
    good = QuadraticConstants.for_dims(N, n)
    import dataclasses
    bad = dataclasses.replace(good, ac_b=Fraction(N * (N - 3), 4))
    assert (commutator(gens.A, cache.get("C")) - quadratic_ac_rhs(cache, good)).is_zero()
    residual = commutator(gens.A, cache.get("C")) - quadratic_ac_rhs(cache, bad)
    assert not residual.is_zero()
    assert residual.term_count() > 0


def test_report_is_name_ordered_and_serializable():
    report = verify_q3(2, 1, casimir=False)
    names = [r.name for r in report.results]
    assert names == sorted(names)
    recs = report.records()
    assert all("wall_time_s" not in r for r in recs)
    timed = report.records(include_timing=True)
    assert all("wall_time_s" in r for r in timed)
    assert report.total_time() >= 0
