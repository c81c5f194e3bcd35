"""Factor statistics of symbolic words.

Counts distinct factors per length (the complexity profile), collects
extension censuses feeding the bilateral-extension identity for second
differences, detects eventual periods, and names the growth regime a
measured profile obeys.  A profile is only trusted up to the length where
the half prefix already contains every factor of the full prefix; that
horizon is recorded as stable_up_to and all downstream checks respect it.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .coding import SymbolicWord


class WordTooShort(ValueError):
    """The word cannot support the requested factor length."""


class Inconclusive(ValueError):
    """No growth regime fits the measured profile."""


def _as_bytes(word) -> bytes:
    if isinstance(word, SymbolicWord):
        return word.letters
    if isinstance(word, (bytes, bytearray)):
        return bytes(word)
    if isinstance(word, str):
        return SymbolicWord.from_string(word).letters
    raise TypeError("expected SymbolicWord, bytes, or str")


class FactorIndex:
    """Reusable distinct-factor engine over one word (backend-selected)."""

    def __init__(self, word):
        self.letters = _as_bytes(word)
        if not self.letters:
            raise WordTooShort("empty word")
        self._engine = kernels.FactorEngine(np.frombuffer(self.letters, dtype=np.uint8))

    @property
    def length(self) -> int:
        return len(self.letters)

    def factor_counts(self, n_max: int) -> list[int]:
        return [int(x) for x in self._engine.factor_counts(n_max)]

    def census_arrays(self, n: int):
        return self._engine.census(n)


@dataclass
class ComplexityProfile:
    """Distinct-factor counts p(1..n_max) of one word prefix."""

    counts: tuple[int, ...]
    stable_up_to: int
    source_length: int

    @property
    def n_max(self) -> int:
        return len(self.counts)

    def p(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise ValueError("n out of profile range")
        return self.counts[n - 1]

    def s(self, n: int) -> int:
        """First difference p(n+1) - p(n), defined for 1 <= n <= n_max - 1."""
        return self.p(n + 1) - self.p(n)

    def d2(self, n: int) -> int:
        """Second difference s(n+1) - s(n), defined for 1 <= n <= n_max - 2."""
        return self.s(n + 1) - self.s(n)

    def rows(self):
        out = []
        for n in range(1, self.n_max + 1):
            s = self.s(n) if n <= self.n_max - 1 else None
            d2 = self.d2(n) if n <= self.n_max - 2 else None
            out.append((n, self.p(n), s, d2, n <= self.stable_up_to))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,p,s,d2,stable\n")
        for n, p, s, d2, stable in self.rows():
            buf.write("%d,%d,%s,%s,%d\n" % (
                n, p, "" if s is None else s, "" if d2 is None else d2, int(stable)))
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "source_length": self.source_length,
            "stable_up_to": self.stable_up_to,
            "p": list(self.counts),
        }


def complexity_profile(word, n_max: int = 100, index: FactorIndex | None = None) -> ComplexityProfile:
    """Measure p(1..n_max) and certify stability by the doubling criterion.

    stable_up_to is the largest n such that the first half of the word
    already contains every factor of length <= n of the full word.
    """
    idx = index if index is not None else FactorIndex(word)
    length = idx.length
    if n_max < 1 or n_max > length - 1:
        raise WordTooShort("need n_max between 1 and len(word) - 1")
    counts = idx.factor_counts(n_max)
    half_len = length // 2
    stable = 0
    if half_len >= 2:
        half = FactorIndex(idx.letters[:half_len])
        half_counts = half.factor_counts(min(n_max, half_len - 1))
        for full, part in zip(counts, half_counts):
            if full != part:
                break
            stable += 1
    return ComplexityProfile(tuple(counts), stable, length)


@dataclass(frozen=True)
class CensusEntry:
    """Extension counts of one factor, over occurrences with both neighbours."""

    factor: str
    position: int
    m_l: int
    m_r: int
    m_b: int

    @property
    def bilateral_weight(self) -> int:
        return self.m_b - self.m_l - self.m_r + 1


@dataclass
class SpecialFactorCensus:
    """All length-n factors having at least one interior occurrence."""

    n: int
    entries: list[CensusEntry]

    def left_special(self):
        return [e for e in self.entries if e.m_l >= 2]

    def right_special(self):
        return [e for e in self.entries if e.m_r >= 2]

    def bispecial(self):
        return [e for e in self.entries if e.m_l >= 2 and e.m_r >= 2]

    def bilateral_sum(self) -> int:
        # ordinary and one-sided-special factors contribute 0, so the sum
        # over all entries equals the sum over bispecial ones
        return sum(e.bilateral_weight for e in self.entries)


def special_census(word, n: int, index: FactorIndex | None = None) -> SpecialFactorCensus:
    """Census of extension counts at length n from both-neighbour occurrences."""
    idx = index if index is not None else FactorIndex(word)
    if n < 1 or n > idx.length - 2:
        raise WordTooShort("census needs 1 <= n <= len(word) - 2")
    rep, m_l, m_r, m_b = idx.census_arrays(n)
    text = idx.letters
    entries = []
    for i in range(len(rep)):
        pos = int(rep[i])
        factor = "".join(str(b) for b in text[pos:pos + n])
        entries.append(CensusEntry(factor, pos, int(m_l[i]), int(m_r[i]), int(m_b[i])))
    return SpecialFactorCensus(n, entries)


@dataclass
class CassaigneRow:
    n: int
    second_difference: int
    bilateral_sum: int

    @property
    def ok(self) -> bool:
        return self.second_difference == self.bilateral_sum


@dataclass
class CassaigneReport:
    rows: list[CassaigneRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self):
        return [r for r in self.rows if not r.ok]


def cassaigne_check(word, n_range=None, index: FactorIndex | None = None,
                    profile: ComplexityProfile | None = None) -> CassaigneReport:
    """Check s(n+1) - s(n) == sum of bilateral weights at each n.

    Defaults to the stable range of the profile (n up to stable_up_to - 2),
    where the prefix census reflects the underlying infinite word.
    """
    idx = index if index is not None else FactorIndex(word)
    if profile is None:
        top = max(3, min(idx.length - 1, (n_range[-1] + 2) if n_range else 100))
        profile = complexity_profile(word, n_max=top, index=idx)
    if n_range is None:
        n_range = range(1, max(profile.stable_up_to - 2, 0) + 1)
    rows = []
    for n in n_range:
        census = special_census(word, n, index=idx)
        rows.append(CassaigneRow(n, profile.d2(n), census.bilateral_sum()))
    return CassaigneReport(rows)


def period_detect(word, min_repeats: int = 3, min_coverage: float = 0.5):
    """Smallest period of a periodic tail of the sample, or None.

    The tail must repeat the period at least min_repeats times and cover at
    least min_coverage of the word.  This is a statement about the sample
    only: aperiodic words of low complexity contain long near-cubes (a
    golden-slope word of length 2000 has a 377-periodic tail covering more
    than half of it), so callers deciding eventual periodicity must
    corroborate, e.g. against exact rational data or the growth regime.
    Among tails realizing the minimal period the longest one is used,
    minimizing the preperiod.
    """
    letters = _as_bytes(word)
    t = len(letters)
    if t == 0:
        return None
    rev = letters[::-1]
    # failure function of the reversed word: borders of suffixes of the original
    pi = [0] * (t + 1)
    k = 0
    for i in range(1, t):
        while k and rev[i] != rev[k]:
            k = pi[k]
        if rev[i] == rev[k]:
            k += 1
        pi[i + 1] = k
    best = None
    for ell in range(1, t + 1):
        period = ell - pi[ell]
        if ell >= min_repeats * period and ell >= min_coverage * t:
            pre = t - ell
            if best is None or (period, pre) < best:
                best = (period, pre)
    if best is None:
        return None
    return (best[1], best[0])


@dataclass
class GrowthFit:
    """Named growth regime with the constants read off the stable range."""

    kind: str  # "constant" | "linear" | "quadratic"
    details: dict


def growth_fit(profile: ComplexityProfile) -> GrowthFit:
    """Classify a measured profile as constant, linear, or quadratic growth.

    Operates on the stable range only.  Thresholds (fixed): constant needs
    s == 0 on the whole second half; quadratic needs d2 in {0, 1, 2} with
    nonzero density >= 0.1 there; linear needs the second-half slope
    supremum to exceed the first-half one by at most 2.
    """
    n = profile.stable_up_to
    if n < 8:
        raise Inconclusive("stable range too short to classify (need >= 8)")
    half = n // 2
    s_first = [profile.s(k) for k in range(1, half)]
    s_second = [profile.s(k) for k in range(half, n)]
    d2_second = [profile.d2(k) for k in range(half, n - 1)]

    if all(v == 0 for v in s_second):
        return GrowthFit("constant", {"value": profile.p(n), "from_n": half})

    nonzero = sum(1 for v in d2_second if v != 0)
    if d2_second and all(v in (0, 1, 2) for v in d2_second) and \
            nonzero >= 0.1 * len(d2_second):
        leading = Fraction(profile.p(n), n * n)
        return GrowthFit("quadratic", {
            "leading": leading,
            "leading_decimal": "%.6f" % float(leading),
            "nonzero_d2_density": Fraction(nonzero, len(d2_second)),
        })

    if max(s_second) <= max(s_first, default=0) + 2:
        slope = Fraction(profile.p(n) - profile.p(half), n - half)
        return GrowthFit("linear", {
            "slope": slope,
            "slope_decimal": "%.6f" % float(slope),
            "max_s": max(s_second),
        })

    raise Inconclusive("profile fits no regime: max s %d, d2 values %s"
                       % (max(s_second), sorted(set(d2_second))))


def naive_factor_counts(word, n_max: int) -> list[int]:
    """Quadratic slice-hashing counter, the in-package oracle for small words."""
    letters = _as_bytes(word)
    if len(letters) > 100000:
        raise WordTooShort("naive counter is quadratic; use complexity_profile")
    out = []
    for n in range(1, n_max + 1):
        out.append(len({letters[i:i + n] for i in range(len(letters) - n + 1)}))
    return out


def profile_json_text(profile: ComplexityProfile) -> str:
    return json.dumps(profile.to_json(), sort_keys=True, indent=2) + "\n"
