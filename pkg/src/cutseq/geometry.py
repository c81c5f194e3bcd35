"""Lattice geometry of straight lines through the unit grid in R^3.

A segment of direction w (all coordinates positive) that starts and ends
on grid edges, crossing n faces strictly in between, is the geometric
event behind jumps of the second difference of the factor count.  For a
minimal direction there are exactly two such segments per length n, and
they are found by exact arithmetic: candidate endpoints are indexed by
the face family k and the crossing level m with

    sum_r floor(m * w_r / w_k) = n + 1.

A candidate degenerates when the open segment meets a third edge; that
happens only when the reciprocals 1/w_i admit an integer relation whose
lone-signed coefficient sits at index k and divides m.

The same exact arithmetic settles occurrence questions directly: the
start points whose cutting word begins with a given letter block form an
open convex polytope, and factor_cylinder decides its emptiness.  This
distinguishes blocks the language truly forbids from blocks a finite
sample merely failed to reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .coding import Direction3, cutting_word_3d
from .numfield import AlgebraicNumber, rational_relations

__all__ = [
    "BoundaryAmbiguity",
    "NotMinimal",
    "NoTripleLine",
    "LatticeEdge",
    "DiagonalRecord",
    "TripleEdgeLine",
    "edge_combinatorial_length",
    "is_minimal",
    "reciprocal_relation",
    "count_diagonals",
    "edge_order_check",
    "zero_increment_prediction",
    "diagonal_to_dict",
    "CylinderWitness",
    "factor_cylinder",
    "rational_between",
]


class BoundaryAmbiguity(ValueError):
    """A coordinate sits exactly on a grid plane and no side was chosen."""


class NotMinimal(ValueError):
    """The direction coordinates admit an integer relation; orbits close up."""


class NoTripleLine(ValueError):
    """No line of this direction meets three pairwise non-parallel edges."""


def _is_exact_integer(value) -> bool:
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    if isinstance(value, AlgebraicNumber):
        return value.is_integer()
    raise TypeError("expected an exact coordinate, got %r" % type(value).__name__)


def _floor_exact(value) -> int:
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator // value.denominator
    return value.floor()


def edge_combinatorial_length(point, integer_side: str | None = None) -> int:
    """Number of grid faces between the base cell and the cell of `point`.

    Equals floor(b1) + floor(b2) + floor(b3): each face crossed on the way
    from the unit cube at the origin bumps exactly one floor.  Coordinates
    must be exact (int, Fraction or AlgebraicNumber).  A coordinate that is
    an exact integer lies on a face, so its floor depends on the side the
    point is approached from; pass integer_side="lower" or "upper" to pick,
    otherwise BoundaryAmbiguity is raised.
    """
    if integer_side not in (None, "lower", "upper"):
        raise ValueError("integer_side must be None, 'lower' or 'upper'")
    total = 0
    for value in point:
        if _is_exact_integer(value):
            if integer_side is None:
                raise BoundaryAmbiguity(
                    "coordinate %s is on a grid plane; pass integer_side" % (value,))
            total += _floor_exact(value) - (1 if integer_side == "lower" else 0)
        else:
            total += _floor_exact(value)
    return total


@dataclass(frozen=True)
class LatticeEdge:
    """A unit grid edge: free along axis `edge_type`, integer elsewhere.

    `base` holds the two integer coordinates in place; the entry at the
    free axis is the lower end of the unit interval the edge spans.
    """

    edge_type: int
    base: tuple

    def __post_init__(self):
        if self.edge_type not in (1, 2, 3):
            raise ValueError("edge_type must be 1, 2 or 3")
        if len(self.base) != 3 or not all(isinstance(b, int) for b in self.base):
            raise ValueError("base must be three integers")


@dataclass(frozen=True)
class DiagonalRecord:
    """A length-n segment of direction w between two non-parallel edges.

    `family` and `level` index the candidate: the end point lies on the
    face of family `family` at height `level`.  `passes_through` is the
    third edge met strictly inside the segment when the direction admits
    the degenerate coincidence, else None.  Points are exact coordinate
    triples; floors taken just inside the segment differ by exactly
    `combinatorial_length`.
    """

    start_edge: LatticeEdge
    end_edge: LatticeEdge
    passes_through: LatticeEdge | None
    combinatorial_length: int
    family: int
    level: int
    start_point: tuple
    end_point: tuple
    mid_point: tuple | None

    def __post_init__(self):
        if self.start_edge.edge_type == self.end_edge.edge_type:
            raise ValueError("diagonal endpoints lie on parallel edges")


@dataclass(frozen=True)
class TripleEdgeLine:
    """A line meeting one edge of every type, with the crossing order.

    `order` lists the edge types as met while moving along +w, joined by
    semicolons.  `lone_family` is the coordinate whose reciprocal carries
    the lone-signed coefficient; `divisor` is that coefficient's absolute
    value.  `points` holds (parameter, edge_type, point) sorted along the
    line; parameters are exact field elements.
    """

    order: str
    lone_family: int
    divisor: int
    relation: tuple
    points: tuple
    edges: tuple


def is_minimal(direction: Direction3) -> bool:
    """True when the coordinates admit no integer relation."""
    return not rational_relations(direction.coordinates())


def reciprocal_relation(direction: Direction3):
    """Primitive integer relation on (1/w1, 1/w2, 1/w3), lone sign negative.

    Returns None when the reciprocals are independent.  Raises NotMinimal
    when the relation lattice has rank two or a coefficient vanishes; both
    force a rational coordinate ratio, so the direction is not minimal.
    """
    recips = [c.inverse() for c in direction.coordinates()]
    rels = rational_relations(recips)
    if not rels:
        return None
    if len(rels) > 1:
        raise NotMinimal("reciprocal relations have rank %d" % len(rels))
    rel = rels[0]
    if any(c == 0 for c in rel):
        raise NotMinimal("relation %s makes a coordinate ratio rational" % (rel,))
    negatives = sum(1 for c in rel if c < 0)
    if negatives != 1:
        rel = tuple(-c for c in rel)
    return rel


def _floor_sum(cross, m: int) -> int:
    # m + sum over the other two axes of floor(m * w_r / w_k)
    return m + sum((r * m).floor() for r in cross)


def _locate_level(cross, target: int):
    """Smallest m with floor-sum(m) == target, or None.

    The floor sum is strictly increasing in m (the k-th term is m itself),
    so a binary search over 1..target suffices.
    """
    lo, hi = 1, target
    while lo < hi:
        mid = (lo + hi) // 2
        if _floor_sum(cross, mid) < target:
            lo = mid + 1
        else:
            hi = mid
    return lo if _floor_sum(cross, lo) == target else None


def _build_record(direction, n, k, m, i, j, rel):
    """The unique diagonal of length n from a type-i to a type-j edge."""
    w = direction.coordinates()
    one = direction.field.one()
    rho_i = w[i - 1] / w[k - 1]
    rho_j = w[j - 1] / w[k - 1]
    fi = (rho_i * m).floor()
    fj = (rho_j * m).floor()
    q_i = fi + 1
    p_i = -rho_i * m + q_i
    if not (0 < p_i < one):
        raise ArithmeticError("start offset left the unit interval")
    if n != q_i + fj + m - 2:
        raise ArithmeticError("length bookkeeping failed")

    coords = {i: p_i, j: direction.field.zero(), k: direction.field.zero()}
    start_point = tuple(coords[a] for a in (1, 2, 3))
    start_edge = LatticeEdge(i, (0, 0, 0))

    coords = {i: one * q_i, j: rho_j * m, k: one * m}
    end_point = tuple(coords[a] for a in (1, 2, 3))
    base = {i: q_i, j: fj, k: m}
    end_edge = LatticeEdge(j, tuple(base[a] for a in (1, 2, 3)))

    mid_edge = mid_point = None
    if rel is not None and rel[k - 1] < 0 and m % -rel[k - 1] == 0:
        # the open segment meets a type-k edge where coordinates i and j
        # are integer together; solve through the reciprocal relation
        r = m // rel[k - 1]
        v = -r * rel[j - 1]
        u = q_i + r * rel[i - 1]
        if not 1 <= v or not (rho_j * m - v).sign() > 0:
            raise ArithmeticError("third-edge parameter out of range")
        if p_i + (w[i - 1] / w[j - 1]) * v != one * u:
            raise ArithmeticError("third-edge incidence failed")
        mk = (w[k - 1] / w[j - 1]) * v
        coords = {i: one * u, j: one * v, k: mk}
        mid_point = tuple(coords[a] for a in (1, 2, 3))
        base = {i: u, j: v, k: mk.floor()}
        mid_edge = LatticeEdge(k, tuple(base[a] for a in (1, 2, 3)))

    return DiagonalRecord(
        start_edge=start_edge,
        end_edge=end_edge,
        passes_through=mid_edge,
        combinatorial_length=n,
        family=k,
        level=m,
        start_point=start_point,
        end_point=end_point,
        mid_point=mid_point,
    )


def count_diagonals(direction: Direction3, n: int):
    """All direction-w segments between two non-parallel edges, length n.

    Returns (count, records).  Length counts faces crossed strictly
    between the endpoints; each unordered segment appears once, oriented
    along +w.  For n = 0 the answer is empty by convention.  Records that
    meet a third edge mid-segment keep both endpoint edges and set
    passes_through; the count is the raw number of records, and callers
    reconcile it with measured factor data rather than the other way
    around.
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    if not is_minimal(direction):
        raise NotMinimal("diagonal counting needs independent coordinates")
    if n == 0:
        return 0, []
    w = direction.coordinates()
    rel = reciprocal_relation(direction)
    hits = []
    for k in (1, 2, 3):
        cross = [w[r] / w[k - 1] for r in range(3) if r != k - 1]
        m = _locate_level(cross, n + 1)
        if m is not None:
            hits.append((k, m))
    if len(hits) != 1:
        # one face crossing of the origin ray per integer, no ties
        raise ArithmeticError("expected one crossing at depth %d, got %r" % (n, hits))
    k, m = hits[0]
    i, j = [a for a in (1, 2, 3) if a != k]
    records = [
        _build_record(direction, n, k, m, i, j, rel),
        _build_record(direction, n, k, m, j, i, rel),
    ]
    return len(records), records


def edge_order_check(direction: Direction3, relation=None, ac_sign: int = 1):
    """Construct a line meeting all three edge types and read off the order.

    Solves the incidence system exactly: with the reciprocal relation
    normalized to lone negative coefficient -A at index L, the line meets
    a type-L edge between two others, and the crossing order along +w is
    fixed once the sign of the coordinate-L span (ac_sign) is chosen.
    Returns a TripleEdgeLine; raises NoTripleLine when the reciprocals
    are independent or a supplied relation fails to hold.
    """
    if ac_sign not in (1, -1):
        raise ValueError("ac_sign must be +1 or -1")
    w = direction.coordinates()
    if relation is None:
        rel = reciprocal_relation(direction)
        if rel is None:
            raise NoTripleLine("reciprocals admit no integer relation")
    else:
        rel = tuple(int(c) for c in relation)
        if len(rel) != 3 or any(c == 0 for c in rel):
            raise NoTripleLine("relation must be three nonzero integers")
        if gcd(gcd(rel[0], rel[1]), rel[2]) != 1:
            raise NoTripleLine("relation is not primitive")
        total = sum(c / w[r] for r, c in enumerate(rel))
        if not total.is_zero():
            raise NoTripleLine("relation does not annihilate the reciprocals")
        if sum(1 for c in rel if c < 0) != 1:
            rel = tuple(-c for c in rel)

    lone = 1 + min(r for r in range(3) if rel[r] < 0)
    u, v = [a for a in (1, 2, 3) if a != lone]
    A = -rel[lone - 1]
    B = rel[u - 1]
    C = rel[v - 1]
    wl, wu, wv = w[lone - 1], w[u - 1], w[v - 1]

    # span a - c = ac_sign * A across coordinate `lone`; the relation makes
    # the three incidences consistent
    s = ac_sign
    lam = (C * s) / wv
    mu = (-B * s) / wu
    t0 = wl * lam
    if t0.is_integer():
        raise NotMinimal("coordinate ratio w%d/w%d is rational" % (lone, v))
    a = t0.floor() + 1
    x = -t0 + a
    c = a - s * A

    coords = {lone: x, u: direction.field.zero(), v: direction.field.zero()}
    point_l = tuple(coords[a_] for a_ in (1, 2, 3))
    coords = {lone: x + wl * lam, u: wu * lam, v: wv * lam}
    point_u = tuple(coords[a_] for a_ in (1, 2, 3))
    coords = {lone: x + wl * mu, u: wu * mu, v: wv * mu}
    point_v = tuple(coords[a_] for a_ in (1, 2, 3))

    if point_u[lone - 1] != direction.field.one() * a:
        raise ArithmeticError("type-%d incidence failed" % u)
    if point_v[lone - 1] != direction.field.one() * c:
        raise ArithmeticError("type-%d incidence failed" % v)

    zero = direction.field.zero()
    marks = sorted(
        [(zero, lone, point_l), (lam, u, point_u), (mu, v, point_v)],
        key=lambda t: t[0],
    )
    if marks[0][0] == marks[1][0] or marks[1][0] == marks[2][0]:
        raise ArithmeticError("edge crossings collide on the line")
    edges = []
    for _, etype, pt in marks:
        base = []
        for axis in (1, 2, 3):
            val = pt[axis - 1]
            base.append(val.as_rational().numerator if val.is_integer()
                        else val.floor())
        edges.append(LatticeEdge(etype, tuple(base)))
    return TripleEdgeLine(
        order=";".join(str(t) for _, t, _ in marks),
        lone_family=lone,
        divisor=A,
        relation=(A, B, C),
        points=tuple(marks),
        edges=tuple(edges),
    )


def zero_increment_prediction(direction: Direction3, divisor: int,
                              n_max: int, family: int | None = None):
    """Lengths n at which the count increment is predicted to vanish.

    Walks the origin ray's crossing word: the crossing of coordinate
    `family` at a level divisible by `divisor` is the (n+1)-st face on
    the trajectory, and the two length-n segments through that face both
    degenerate through a third edge.  Returns the sorted list of such n
    in 1..n_max.  When the reciprocals admit no relation the prediction
    is empty; when they do, `divisor` and `family` must agree with it
    (family defaults to the relation's lone coordinate).
    """
    if divisor < 1:
        raise ValueError("divisor must be a positive integer")
    rel = reciprocal_relation(direction)
    if rel is None:
        return []
    lone = 1 + min(r for r in range(3) if rel[r] < 0)
    if family is None:
        family = lone
    if family != lone or divisor != -rel[lone - 1]:
        raise ValueError(
            "divisor %d / family %d disagree with the reciprocal relation %r"
            % (divisor, family, rel))
    origin = (Fraction(0), Fraction(0), Fraction(0))
    word = cutting_word_3d(direction, start=origin, length=n_max + 1)
    out = []
    level = 0
    for pos, letter in enumerate(word.letters, 1):
        if letter == family:
            level += 1
            if level % divisor == 0 and 1 <= pos - 1 <= n_max:
                out.append(pos - 1)
    return out


@dataclass(frozen=True)
class CylinderWitness:
    """Outcome of an exact occurrence test for a letter block.

    `feasible` is True when some start point in the open unit cube has a
    cutting word beginning with the block; `witness` is then a rational
    such point, chosen strictly inside the cylinder so the block can be
    replayed with cutting_word_3d.  Infeasible blocks carry witness None.
    """

    feasible: bool
    witness: tuple | None = None


def rational_between(low, high) -> Fraction:
    """Rational strictly between two exact values with low < high.

    Scans denominators q = 16^k for the first q with floor(low*q)+1 < high*q;
    floor(low*q)+1 > low*q always holds, so the returned fraction is interior.
    Terminates once q exceeds 1/(high-low).
    """
    diff = high - low
    if _sign_of(diff) <= 0:
        raise ValueError("need low < high, got %r >= %r" % (low, high))
    q = 1
    while True:
        numerator = _floor_exact(low * q) + 1
        candidate = Fraction(numerator, q)
        if candidate < high:
            return candidate
        q *= 16


def _sign_of(value) -> int:
    if isinstance(value, AlgebraicNumber):
        return value.sign()
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def _as_letter_bytes(letters) -> bytes:
    if isinstance(letters, str):
        try:
            seq = bytes(int(ch) for ch in letters)
        except ValueError:
            raise ValueError("letter string must consist of digits 1-3")
    else:
        seq = bytes(letters)
    if not seq:
        raise ValueError("letters must be nonempty")
    if any(ch not in (1, 2, 3) for ch in seq):
        raise ValueError("letters must use the alphabet {1, 2, 3}")
    return seq


def _dedupe_rows(rows):
    # identical coefficient vectors: only the smallest right side binds
    best = {}
    order = []
    for row in rows:
        key = row[:3]
        current = best.get(key)
        if current is None:
            best[key] = row[3]
            order.append(key)
        elif row[3] < current:
            best[key] = row[3]
    return [key + (best[key],) for key in order]


def _project_out(rows, var):
    """Fourier-Motzkin step: drop `var` from a strict system a.m < b."""
    pos, neg, kept = [], [], []
    for row in rows:
        s = _sign_of(row[var])
        if s > 0:
            pos.append(row)
        elif s < 0:
            neg.append(row)
        else:
            kept.append(row)
    out = kept
    for rp in pos:
        cp = rp[var]
        for rn in neg:
            cn = -rn[var]
            out.append(tuple(cn * rp[j] + cp * rn[j] for j in range(4)))
    return _dedupe_rows(out)


def _has_contradiction(rows) -> bool:
    for row in rows:
        if all(_sign_of(row[j]) == 0 for j in range(3)):
            if _sign_of(row[3]) <= 0:
                return True
    return False


def _pierce_interval(rows, var, fixed):
    """Exact open interval for `var` once the coordinates in `fixed` are set."""
    low = high = None
    for row in rows:
        s = _sign_of(row[var])
        if s == 0:
            continue
        rest = row[3]
        for j, value in fixed.items():
            rest = rest - row[j] * value
        bound = rest / row[var]
        if s > 0:
            if high is None or bound < high:
                high = bound
        else:
            if low is None or low < bound:
                low = bound
    if low is None or high is None:
        raise ArithmeticError("projected system lost its box bounds")
    return low, high


def factor_cylinder(direction: Direction3, letters) -> CylinderWitness:
    """Decide exactly whether a letter block occurs as a cutting word.

    The start points m in (0,1)^3 whose word begins with the block form an
    open convex polytope: consecutive event times must increase, and the
    first unused crossing of every family must land after the last event.
    Projecting the coordinates out one at a time decides emptiness exactly;
    a nonempty polytope yields a rational interior point by walking the
    projections back.  Occurring as a prefix of some start is the same as
    occurring somewhere in some word, and for a minimal direction the same
    as occurring in every word of the family.

    `letters` may be bytes, an int sequence, or a digit string over 1..3.
    """
    seq = _as_letter_bytes(letters)
    w = direction.coordinates()
    inv = tuple(1 / value if isinstance(value, AlgebraicNumber)
                else Fraction(1) / Fraction(value) for value in w)
    zero = Fraction(0)

    rows = []
    counts = [0, 0, 0]
    prev_fam = None
    prev_level = None
    for ch in seq:
        fam = ch - 1
        counts[fam] += 1
        if prev_fam is not None and prev_fam != fam:
            coef = [zero, zero, zero]
            coef[fam] = inv[fam]
            coef[prev_fam] = -inv[prev_fam]
            bound = counts[fam] * inv[fam] - prev_level * inv[prev_fam]
            rows.append((coef[0], coef[1], coef[2], bound))
        prev_fam = fam
        prev_level = counts[fam]
    for fam in range(3):
        if fam == prev_fam:
            continue
        coef = [zero, zero, zero]
        coef[fam] = inv[fam]
        coef[prev_fam] = -inv[prev_fam]
        bound = (counts[fam] + 1) * inv[fam] - prev_level * inv[prev_fam]
        rows.append((coef[0], coef[1], coef[2], bound))
    one = Fraction(1)
    for fam in range(3):
        coef = [zero, zero, zero]
        coef[fam] = one
        rows.append((coef[0], coef[1], coef[2], one))
        coef = [zero, zero, zero]
        coef[fam] = -one
        rows.append((coef[0], coef[1], coef[2], zero))

    system3 = _dedupe_rows(rows)
    system2 = _project_out(system3, 2)
    if _has_contradiction(system2):
        return CylinderWitness(False)
    system1 = _project_out(system2, 1)
    if _has_contradiction(system1):
        return CylinderWitness(False)
    low, high = _pierce_interval(system1, 0, {})
    if not _sign_of(high - low) > 0:
        return CylinderWitness(False)

    m1 = rational_between(low, high)
    low, high = _pierce_interval(system2, 1, {0: m1})
    m2 = rational_between(low, high)
    low, high = _pierce_interval(system3, 2, {0: m1, 1: m2})
    m3 = rational_between(low, high)
    point = (m1, m2, m3)
    for row in rows:
        value = row[0] * point[0] + row[1] * point[1] + row[2] * point[2]
        if not _sign_of(row[3] - value) > 0:
            raise ArithmeticError("backtracked point violates the system")
    return CylinderWitness(True, point)


def _edge_dict(edge: LatticeEdge):
    return {"type": edge.edge_type, "base": list(edge.base)}


def diagonal_to_dict(record: DiagonalRecord, digits: int = 12):
    """JSON-ready summary of one record; points rendered as decimals."""
    def render(pt):
        return [x.decimal(digits) for x in pt]
    out = {
        "length": record.combinatorial_length,
        "family": record.family,
        "level": record.level,
        "start_edge": _edge_dict(record.start_edge),
        "end_edge": _edge_dict(record.end_edge),
        "start_point": render(record.start_point),
        "end_point": render(record.end_point),
        "passes_through": None,
        "mid_point": None,
    }
    if record.passes_through is not None:
        out["passes_through"] = _edge_dict(record.passes_through)
        out["mid_point"] = render(record.mid_point)
    return out
