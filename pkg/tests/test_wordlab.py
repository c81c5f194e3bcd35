"""Factor statistics against hand values and the quadratic slice oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import oracles
from cutseq.coding import SymbolicWord, cutting_word_2d, cutting_word_3d, Direction3
from cutseq.numfield import NumberField
from cutseq.wordlab import (
    CassaigneReport,
    ComplexityProfile,
    FactorIndex,
    Inconclusive,
    WordTooShort,
    cassaigne_check,
    complexity_profile,
    growth_fit,
    naive_factor_counts,
    period_detect,
    special_census,
)


def golden_word(length=10000):
    g = NumberField((-1, 1, 1), (Fraction(1, 2), 1)).theta()
    return cutting_word_2d(1, g, length=length)


def case5_word(length=20000):
    f = NumberField((1, 0, -10, 0, 1), (3, Fraction(13, 4)))
    s2 = f.from_coords((0, Fraction(-9, 2), 0, Fraction(1, 2)))
    s3 = f.from_coords((0, Fraction(11, 2), 0, Fraction(-1, 2)))
    return cutting_word_3d(Direction3(1, s2, s3), length=length)


# -- profiles ------------------------------------------------------------------

def test_profile_small_word():
    prof = complexity_profile("ababab", n_max=5)
    assert prof.counts == (2, 2, 2, 2, 2)
    assert prof.s(1) == 0
    assert prof.d2(1) == 0


def test_profile_matches_naive_random():
    rng = random.Random(31)
    for _ in range(12):
        letters = bytes(rng.choice((1, 2, 3)) for _ in range(rng.randint(40, 260)))
        n_max = min(len(letters) - 1, 30)
        prof = complexity_profile(letters, n_max=n_max)
        assert list(prof.counts) == naive_factor_counts(letters, n_max)
        assert list(prof.counts) == oracles.naive_factor_counts(letters, n_max)


def test_sturmian_profile():
    w = golden_word()
    prof = complexity_profile(w, n_max=60)
    assert prof.stable_up_to >= 60
    assert all(prof.p(n) == n + 1 for n in range(1, 61))


def test_profile_monotone_and_submultiplicative():
    w = case5_word(8000)
    prof = complexity_profile(w, n_max=30)
    for n in range(1, 30):
        assert prof.p(n + 1) >= prof.p(n)
    for m in range(1, 12):
        for n in range(1, 12):
            assert prof.p(m + n) <= prof.p(m) * prof.p(n)


def test_stability_detects_late_factors():
    w = bytes([1] * 50 + [2] + [1] * 49)
    prof = complexity_profile(w, n_max=10)
    assert prof.stable_up_to == 0
    w2 = bytes([1, 2] * 50)
    prof2 = complexity_profile(w2, n_max=10)
    assert prof2.stable_up_to == 10


def test_profile_validation():
    with pytest.raises(WordTooShort):
        complexity_profile("121", n_max=3)
    with pytest.raises(WordTooShort):
        FactorIndex(b"")


def test_profile_csv_and_json():
    prof = complexity_profile("abababab", n_max=4)
    csv = prof.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "n,p,s,d2,stable"
    assert lines[1] == "1,2,0,0,1"
    assert lines[-1].startswith("4,2,,")
    doc = prof.to_json()
    assert doc["p"] == [2, 2, 2, 2]
    assert doc["schema"] == 1


# -- censuses ---------------------------------------------------------------

def test_census_hand_check():
    census = special_census("ababab", 1)
    assert [(e.factor, e.position, e.m_l, e.m_r, e.m_b) for e in census.entries] == [
        ("2", 1, 1, 1, 1), ("1", 2, 1, 1, 1)]
    assert census.bilateral_sum() == 0


def test_census_matches_naive_random():
    rng = random.Random(77)
    for _ in range(10):
        letters = bytes(rng.choice((1, 2, 3)) for _ in range(rng.randint(30, 200)))
        for n in (1, 2, 3, 5):
            if n > len(letters) - 2:
                continue
            census = special_census(letters, n)
            got = [(e.position, e.factor.encode().translate(
                bytes.maketrans(b"123456789", bytes(range(1, 10)))),
                e.m_l, e.m_r, e.m_b) for e in census.entries]
            assert got == oracles.naive_census(letters, n)


def test_sturmian_special_factors():
    w = golden_word()
    idx = FactorIndex(w)
    for n in (1, 2, 5, 10, 20):
        census = special_census(w, n, index=idx)
        assert len(census.left_special()) == 1
        assert len(census.right_special()) == 1


def test_cassaigne_sturmian():
    w = golden_word()
    report = cassaigne_check(w, n_range=range(1, 40))
    assert isinstance(report, CassaigneReport)
    assert report.ok
    assert all(r.second_difference == 0 for r in report.rows)


def test_cassaigne_case5():
    w = case5_word()
    idx = FactorIndex(w)
    prof = complexity_profile(w, n_max=20, index=idx)
    assert prof.stable_up_to >= 14
    report = cassaigne_check(w, n_range=range(1, 13), index=idx, profile=prof)
    assert report.ok


def test_cassaigne_periodic():
    w = SymbolicWord.from_string("123" * 60, alphabet_size=3)
    report = cassaigne_check(w, n_range=range(1, 10))
    assert report.ok


# -- period detection -------------------------------------------------------------

def test_period_detect_cases():
    assert period_detect("abcabcabc") == (0, 3)
    assert period_detect("aaaa") == (0, 1)
    assert period_detect("dd" + "abc" * 4) == (2, 3)
    assert period_detect("1213121") is None
    # the golden-slope sample really does end in 3.07 repeats of a
    # Fibonacci-length block; the detector reports the sample fact
    assert period_detect(golden_word(2000)) == (843, 377)
    assert period_detect(golden_word(2000), min_coverage=0.9) is None
    assert period_detect("1" * 30 + "212" * 40, min_coverage=0.8) == (30, 3)


def test_period_detect_rational_word():
    d = Direction3(1, Fraction(2, 3), Fraction(5, 7))
    w = cutting_word_3d(d, length=500)
    pre, period = period_detect(w)
    assert period == 50
    assert pre == 0


# -- growth fitting ------------------------------------------------------------

def _profile_from_values(values):
    return ComplexityProfile(tuple(values), len(values), 10 ** 9)


def test_growth_fit_constant():
    prof = _profile_from_values([3, 5, 6, 7] + [8] * 26)
    fit = growth_fit(prof)
    assert fit.kind == "constant"
    assert fit.details["value"] == 8


def test_growth_fit_linear():
    prof = _profile_from_values([n + 1 for n in range(1, 41)])
    fit = growth_fit(prof)
    assert fit.kind == "linear"
    assert fit.details["slope"] == 1


def test_growth_fit_quadratic():
    prof = _profile_from_values([n * n + n + 1 for n in range(1, 41)])
    fit = growth_fit(prof)
    assert fit.kind == "quadratic"
    assert fit.details["nonzero_d2_density"] == 1


def test_growth_fit_mixed_quadratic():
    rng = random.Random(5)
    p, s = [2], 3
    for n in range(1, 40):
        s += rng.choice((0, 2))
        p.append(p[-1] + s)
    fit = growth_fit(_profile_from_values(p))
    assert fit.kind == "quadratic"


def test_growth_fit_inconclusive():
    prof = _profile_from_values([2 ** n for n in range(1, 22)])
    with pytest.raises(Inconclusive):
        growth_fit(prof)
    with pytest.raises(Inconclusive):
        growth_fit(_profile_from_values([2, 3, 4]))


def test_naive_counter_guard():
    with pytest.raises(WordTooShort):
        naive_factor_counts(bytes(200000), 5)
