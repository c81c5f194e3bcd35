"""Symbolic coding of straight-line flows on the 2- and 3-torus.

The ray m + t*w (t > 0, every direction coordinate positive) is coded by
recording letter i each time coordinate i crosses an integer level; by
unfolding, this is also the face-contact word of a billiard in the unit
square or cube.  Event times are merged through scaled integer bounds, so
the hot loop is branch-and-add; only when two bounds overlap does exact
field arithmetic decide the order, and an exact tie raises SingularOrbit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .numfield import (
    AlgebraicNumber,
    FieldMismatch,
    RATIONALS,
    dyadic_bounds,
)

_BITS = 52

DEFAULT_START3 = (Fraction(1, 7), Fraction(1, 11), Fraction(1, 13))
DEFAULT_START2 = (Fraction(1, 7), Fraction(1, 11))


class SingularOrbit(RuntimeError):
    """The ray meets two lattice hyperplanes at the same instant."""

    def __init__(self, time, families):
        self.time = time
        self.families = tuple(sorted(families))
        super().__init__(
            "orbit crosses families %s simultaneously at t = %s"
            % (self.families, time.decimal(12)))


class NonPositiveCoordinate(ValueError):
    """A direction coordinate is zero or negative."""


def common_field(values):
    """The shared NumberField of the inputs, coercing rationals as needed."""
    field = RATIONALS
    for v in values:
        if isinstance(v, AlgebraicNumber) and not v.is_rational():
            if field is not RATIONALS and field is not v.field and field != v.field:
                raise FieldMismatch("coordinates live in different fields")
            field = v.field
    return field, tuple(field.element(v) for v in values)


class Direction3:
    """A direction vector in the positive octant with exact coordinates."""

    __slots__ = ("w1", "w2", "w3")

    def __init__(self, w1, w2, w3):
        _, (a, b, c) = common_field((w1, w2, w3))
        for x in (a, b, c):
            if x.sign() <= 0:
                raise NonPositiveCoordinate("direction coordinates must be positive")
        self.w1, self.w2, self.w3 = a, b, c

    @property
    def field(self):
        return self.w1.field

    def coordinates(self):
        return (self.w1, self.w2, self.w3)

    @property
    def alpha(self) -> AlgebraicNumber:
        """w2 / w1, the first slope invariant."""
        return self.w2 / self.w1

    @property
    def beta(self) -> AlgebraicNumber:
        """w3 / w1, the second slope invariant."""
        return self.w3 / self.w1

    def permuted(self, perm) -> Direction3:
        cs = self.coordinates()
        return Direction3(*(cs[p] for p in perm))

    def scaled(self, factor) -> Direction3:
        return Direction3(self.w1 * factor, self.w2 * factor, self.w3 * factor)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coordinates())

    def __eq__(self, other):
        if not isinstance(other, Direction3):
            return NotImplemented
        return self.coordinates() == other.coordinates()

    def __repr__(self):
        return "Direction3(%s)" % ", ".join(c.decimal(12) for c in self.coordinates())


class SymbolicWord:
    """A finite coding prefix: letter i marks a crossing of coordinate i."""

    __slots__ = ("letters", "alphabet_size", "direction", "start")

    def __init__(self, letters: bytes, alphabet_size: int, direction=None, start=None):
        self.letters = bytes(letters)
        self.alphabet_size = alphabet_size
        self.direction = direction
        self.start = start

    @classmethod
    def from_string(cls, text: str, alphabet_size: int | None = None) -> SymbolicWord:
        """Build from digits '1'..'9' or letters 'a', 'b', ... mapped to 1, 2, ..."""
        vals = bytearray()
        for ch in text:
            if ch.isdigit():
                vals.append(int(ch))
            else:
                vals.append(ord(ch.lower()) - ord("a") + 1)
        if not all(1 <= v <= 9 for v in vals):
            raise ValueError("letters out of range")
        size = alphabet_size if alphabet_size is not None else (max(vals) if vals else 1)
        return cls(bytes(vals), size)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return SymbolicWord(self.letters[idx], self.alphabet_size,
                                self.direction, self.start)
        return self.letters[idx]

    def prefix(self, k: int) -> SymbolicWord:
        return self[:k]

    def text(self) -> str:
        return self.letters.decode("latin1").translate(
            str.maketrans({chr(v): str(v) for v in range(1, 10)}))

    def counts(self):
        arr = self.as_array()
        return tuple(int((arr == v).sum()) for v in range(1, self.alphabet_size + 1))

    def as_array(self):
        return np.frombuffer(self.letters, dtype=np.uint8)

    def __eq__(self, other):
        if not isinstance(other, SymbolicWord):
            return NotImplemented
        return self.letters == other.letters and self.alphabet_size == other.alphabet_size

    def __repr__(self):
        head = self.text()[:40]
        tail = "..." if len(self) > 40 else ""
        return "SymbolicWord(%r%s, length=%d)" % (head, tail, len(self))


def _stream_letters(omegas, start, length):
    """Merge per-family crossing times exactly; the workhorse behind both words."""
    field, oms = common_field(list(omegas) + list(start))
    nf = len(omegas)
    oms, ms = oms[:nf], oms[nf:]
    for om in oms:
        if om.sign() <= 0:
            raise NonPositiveCoordinate("direction coordinates must be positive")
    if length < 1:
        raise ValueError("length must be >= 1")

    inv = [om.inverse() for om in oms]
    k0 = [m.floor() + 1 for m in ms]
    # rescale time by the smallest coordinate's inverse so every scaled
    # increment lies in (0, 1] and the integer bounds cannot overflow
    scale = oms[0]
    for om in oms[1:]:
        if (om - scale).sign() < 0:
            scale = om

    def exact_time(i, c):
        return (k0[i] + c - ms[i]) * inv[i]

    counts = np.zeros(nf, dtype=np.int64)
    lo = np.zeros(nf, dtype=np.int64)
    hi = np.zeros(nf, dtype=np.int64)
    inc_lo = np.zeros(nf, dtype=np.int64)
    inc_hi = np.zeros(nf, dtype=np.int64)
    for i in range(nf):
        inc_lo[i], inc_hi[i] = dyadic_bounds(inv[i] * scale, _BITS)
        lo[i], hi[i] = dyadic_bounds(exact_time(i, 0) * scale, _BITS)

    out = np.empty(length, dtype=np.uint8)
    pos = 0
    while pos < length:
        pos, amb = kernels.merge_events(lo, hi, inc_lo, inc_hi, counts, out, pos, length)
        if amb is None:
            break
        times = [exact_time(i, int(counts[i])) for i in range(nf)]
        lead = [0]
        for j in range(1, nf):
            s = (times[j] - times[lead[0]]).sign()
            if s < 0:
                lead = [j]
            elif s == 0:
                lead.append(j)
        if len(lead) > 1:
            raise SingularOrbit(times[lead[0]], tuple(i + 1 for i in lead))
        w = lead[0]
        out[pos] = w + 1
        pos += 1
        counts[w] += 1
        times[w] = exact_time(w, int(counts[w]))
        base = times[0]
        for t in times[1:]:
            if (t - base).sign() < 0:
                base = t
        for i in range(nf):
            lo[i], hi[i] = dyadic_bounds((times[i] - base) * scale, _BITS)
    return out.tobytes()


def cutting_word_3d(direction: Direction3, start: Sequence | None = None,
                    length: int = 1000) -> SymbolicWord:
    """The first `length` letters of the coding of the ray start + t*direction."""
    if start is None:
        start = DEFAULT_START3
    if len(tuple(start)) != 3:
        raise ValueError("start must have 3 coordinates")
    letters = _stream_letters(direction.coordinates(), tuple(start), length)
    return SymbolicWord(letters, 3, direction=direction, start=tuple(start))


def cutting_word_2d(a, b, start: Sequence | None = None, length: int = 1000) -> SymbolicWord:
    """Two-coordinate analogue on the torus T^2, over the alphabet {1, 2}."""
    if start is None:
        start = DEFAULT_START2
    if len(tuple(start)) != 2:
        raise ValueError("start must have 2 coordinates")
    letters = _stream_letters((a, b), tuple(start), length)
    return SymbolicWord(letters, 2, direction=(a, b), start=tuple(start))


def orbit_letter_frequencies(word: SymbolicWord):
    """Empirical letter frequencies of the prefix, as exact Fractions."""
    if len(word) == 0:
        raise ValueError("empty word")
    return tuple(Fraction(c, len(word)) for c in word.counts())


def rational_period_word(omegas, start=None):
    """One exact period of the coding for an all-rational direction.

    Event times are enumerated as Fractions over one time period T (the
    smallest T > 0 with every T*omega_i an integer) and sorted globally,
    independent of the streaming generator.  Returns (word, T); the full
    coding is the infinite repetition of the word.
    """
    oms = [Fraction(x) for x in omegas]
    if any(om <= 0 for om in oms):
        raise NonPositiveCoordinate("direction coordinates must be positive")
    if start is None:
        start = DEFAULT_START3 if len(oms) == 3 else DEFAULT_START2
    sts = [Fraction(x) for x in start]
    den = math.lcm(*(om.denominator for om in oms))
    g = math.gcd(*(int(om * den) for om in oms))
    period_t = Fraction(den, g)
    events = []
    for i, (om, m) in enumerate(zip(oms, sts)):
        k = m.numerator // m.denominator + 1
        steps = int(period_t * om)
        for j in range(steps):
            events.append(((k + j - m) / om, i + 1))
    events.sort()
    for idx in range(len(events) - 1):
        if events[idx][0] == events[idx + 1][0]:
            t = events[idx][0]
            raise SingularOrbit(RATIONALS.element(t),
                                (events[idx][1], events[idx + 1][1]))
    letters = bytes(fam for _, fam in events)
    return SymbolicWord(letters, len(oms), direction=tuple(oms), start=tuple(sts)), period_t
