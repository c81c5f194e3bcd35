"""Command-line front end: exact direction expressions in, reports out.

Direction text is evaluated exactly, never through floats: rational
literals (13, 2/3, 0.6), sqrt(k) with integer k, root(poly, [lo, hi])
for a declared real root, the operators + - * / ^ and parentheses.  A
trailing `in field POLY @ [lo, hi]` clause declares the root once and
its variable is then usable in the coordinates.  sqrt2, sqrt3 and sqrt6
live together in one degree-4 field, so (1, sqrt2, sqrt3) needs no
declaration.  Commands emit versioned JSON (sorted keys) or CSV, write
output files atomically, and map failures to machine-readable error
JSON on stderr with exit codes 2 (bad input), 3 (singular orbit) and 4
(verification failure).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import re
import sys
import tempfile
from fractions import Fraction

from .classifier import classification_json_text, classify, report_json_text, verify
from .coding import (DEFAULT_START3, Direction3, NonPositiveCoordinate,
                     SingularOrbit, cutting_word_2d, cutting_word_3d)
from .geometry import count_diagonals, diagonal_to_dict
from .numfield import FieldMismatch, NumberField, rational_relations, render_element
from .wordlab import (ComplexityProfile, FactorIndex, complexity_profile,
                      naive_factor_counts, period_detect)

# the shared home of sqrt2, sqrt3 and their product
_QUARTIC_POLY = (1, 0, -10, 0, 1)
_QUARTIC_INTERVAL = (3, Fraction(13, 4))
_SQRT_COORDS = {
    2: (0, Fraction(-9, 2), 0, Fraction(1, 2)),
    3: (0, Fraction(11, 2), 0, Fraction(-1, 2)),
}


class ParseError(ValueError):
    """Rejected direction or start text, with the offending position."""

    def __init__(self, message, position, expected=None):
        self.position = position
        self.expected = expected
        tail = "" if expected is None else " (expected %s)" % expected
        super().__init__("%s at position %d%s" % (message, position, tail))


# ---------------------------------------------------------------------------
# tokenizing and parsing
# ---------------------------------------------------------------------------

_NUM_RE = re.compile(r"\d+(\.\d+)?")
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_OPS = set("+-*/^()[],@")


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            m = _NUM_RE.match(text, i)
            tokens.append(("num", m.group(0), i))
            i = m.end()
        elif ch.isalpha():
            m = _NAME_RE.match(text, i)
            tokens.append(("name", m.group(0), i))
            i = m.end()
        elif ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise ParseError("unexpected character %r" % ch, i,
                             expected="a number, a name, or an operator")
    tokens.append(("end", "", len(text)))
    return tokens


def _square_free_split(k):
    # k = s^2 * m with m square-free
    s, m, p = 1, k, 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1
    return s, m


class _Parser:
    """Recursive descent over one token list.

    Value mode evaluates to exact numbers; polynomial mode (used by the
    field clause and by root()) evaluates to rational coefficient tuples
    and records the single variable name it saw.
    """

    def __init__(self, tokens, env=None, field_declared=False,
                 rational_only=False):
        self.tokens = tokens
        self.i = 0
        self.env = env or {}
        self.field_declared = field_declared
        self.rational_only = rational_only
        self.source = None       # the one irrational origin allowed
        self.poly_var = None
        self._canonical = None

    # -- token plumbing ---------------------------------------------------------

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError("unexpected %s" % (repr(val) if val else "end of input"),
                             pos, expected="%r" % op)

    def expect_end(self):
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected trailing %r" % val, pos)

    def fail(self, message, expected=None):
        _, _, pos = self.peek()
        raise ParseError(message, pos, expected=expected)

    # -- value grammar ----------------------------------------------------------

    def parse_tuple(self, arity):
        self.expect_op("(")
        values = [self.expr()]
        for _ in range(arity - 1):
            self.expect_op(",")
            values.append(self.expr())
        self.expect_op(")")
        return tuple(values)

    def expr(self):
        value = self.term()
        while self.at_op("+", "-"):
            _, op, _ = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.at_op("*", "/"):
            _, op, pos = self.take()
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except ZeroDivisionError:
                    raise ParseError("division by zero", pos)
        return value

    def power(self):
        value = self.unary()
        if self.at_op("^"):
            _, _, pos = self.take()
            kind, text, epos = self.take()
            if kind != "num" or "." in text:
                raise ParseError("exponent must be a nonnegative integer", epos)
            value = value ** int(text)
        return value

    def unary(self):
        if self.at_op("-"):
            self.take()
            return -self.unary()
        return self.atom()

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Fraction(text)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == "name":
            return self.named(text, pos)
        raise ParseError("unexpected %s" % (repr(text) if text else "end of input"),
                         pos, expected="a number, a name, or '('")

    def named(self, name, pos):
        if name in self.env:
            return self.env[name]
        if self.rational_only:
            raise ParseError("coordinates here must be rational", pos)
        if self.field_declared:
            raise ParseError(
                "unknown name %r inside a field declaration" % name, pos,
                expected="the declared field variable")
        if name in ("sqrt2", "sqrt3", "sqrt6"):
            return self.sqrt_value(int(name[4:]), pos)
        if name == "sqrt" and self.at_op("("):
            self.take()
            kind, text, kpos = self.take()
            if kind != "num" or "." in text or int(text) < 1:
                raise ParseError("sqrt needs a positive integer", kpos)
            self.expect_op(")")
            return self.sqrt_value(int(text), pos)
        if name == "root" and self.at_op("("):
            self.take()
            return self.root_value(pos)
        raise ParseError("unknown name %r" % name, pos,
                         expected="sqrt2, sqrt3, sqrt(k), or root(poly, [lo, hi])")

    def claim_source(self, descriptor):
        if self.source is None:
            self.source = descriptor
        elif self.source != descriptor:
            raise FieldMismatch(
                "expression mixes irrational values from different fields")

    def canonical_sqrt(self, m):
        if self._canonical is None:
            field = NumberField(_QUARTIC_POLY, _QUARTIC_INTERVAL)
            s2 = field.from_coords(_SQRT_COORDS[2])
            s3 = field.from_coords(_SQRT_COORDS[3])
            self._canonical = {2: s2, 3: s3, 6: s2 * s3}
        return self._canonical[m]

    def sqrt_value(self, k, pos):
        scale, m = _square_free_split(k)
        if m == 1:
            return Fraction(scale)
        if m in (2, 3, 6):
            self.claim_source(("canonical",))
            return scale * self.canonical_sqrt(m)
        self.claim_source(("sqrt", m))
        return scale * NumberField((-m, 0, 1), (0, m)).theta()

    def root_value(self, pos):
        coeffs, _ = _parse_poly(self, stop_ops=(",",))
        self.expect_op(",")
        self.expect_op("[")
        lo = self.rational_literal()
        self.expect_op(",")
        hi = self.rational_literal()
        self.expect_op("]")
        self.expect_op(")")
        try:
            field = NumberField(coeffs, (lo, hi))
        except ValueError as exc:
            raise ParseError(str(exc), pos)
        self.claim_source(("root", coeffs, lo, hi))
        return field.theta()

    def rational_literal(self):
        sign = 1
        while self.at_op("-"):
            self.take()
            sign = -sign
        kind, text, pos = self.take()
        if kind != "num":
            raise ParseError("expected a number", pos)
        value = Fraction(text)
        if self.at_op("/"):
            self.take()
            kind, dtext, dpos = self.take()
            if kind != "num":
                raise ParseError("expected a denominator", dpos)
            value = value / Fraction(dtext)
        return sign * value


# polynomial values are ascending rational coefficient tuples

def _poly_add(a, b):
    n = max(len(a), len(b))
    a = a + (Fraction(0),) * (n - len(a))
    b = b + (Fraction(0),) * (n - len(b))
    return tuple(x + y for x, y in zip(a, b))


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _parse_poly(parser, stop_ops):
    """Parse a polynomial expression in place, returning (int coeffs, var).

    Runs the same grammar with polynomial operands; division is only by
    constants and ^ takes integer exponents.  The coefficient tuple is
    scaled primitive-integer, which leaves the root set unchanged.
    """
    var_name = [None]

    def expr():
        value = term()
        while parser.at_op("+", "-"):
            _, op, _ = parser.take()
            rhs = term()
            value = _poly_add(value, rhs if op == "+"
                              else tuple(-c for c in rhs))
        return value

    def term():
        value = power()
        while parser.at_op("*", "/"):
            _, op, pos = parser.take()
            rhs = power()
            if op == "*":
                value = _poly_mul(value, rhs)
            else:
                if len(rhs) != 1 or rhs[0] == 0:
                    raise ParseError("polynomial division is only by constants", pos)
                value = tuple(c / rhs[0] for c in value)
        return value

    def power():
        value = unary()
        if parser.at_op("^"):
            _, _, _ = parser.take()
            kind, text, epos = parser.take()
            if kind != "num" or "." in text:
                raise ParseError("exponent must be a nonnegative integer", epos)
            out = (Fraction(1),)
            for _ in range(int(text)):
                out = _poly_mul(out, value)
            return out
        return value

    def unary():
        if parser.at_op("-"):
            parser.take()
            return tuple(-c for c in unary())
        return atom()

    def atom():
        kind, text, pos = parser.take()
        if kind == "num":
            return (Fraction(text),)
        if kind == "op" and text == "(":
            value = expr()
            parser.expect_op(")")
            return value
        if kind == "name":
            if var_name[0] is None:
                var_name[0] = text
            elif var_name[0] != text:
                raise ParseError("polynomial uses two variables %r and %r"
                                 % (var_name[0], text), pos)
            return (Fraction(0), Fraction(1))
        raise ParseError("unexpected %s in polynomial"
                         % (repr(text) if text else "end of input"), pos)

    start_pos = parser.peek()[2]
    coeffs = expr()
    kind, val, _ = parser.peek()
    if not (kind == "end" or (kind == "op" and val in stop_ops)):
        parser.fail("unexpected %r after polynomial" % val)
    if var_name[0] is None:
        raise ParseError("field polynomial needs a variable", start_pos)
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    content = math.gcd(*ints) or 1
    return tuple(c // content for c in ints), var_name[0]


def parse_direction(text: str) -> Direction3:
    """Exact Direction3 from expression text; see the module docstring."""
    tokens = _tokenize(text)
    depth = 0
    split = None
    for idx, (kind, val, _) in enumerate(tokens):
        if kind == "op" and val in "([":
            depth += 1
        elif kind == "op" and val in ")]":
            depth -= 1
        elif kind == "name" and val == "in" and depth == 0:
            split = idx
            break
    env = {}
    declared = split is not None
    if declared:
        end_pos = tokens[split][2]
        clause = _Parser(tokens[split:], field_declared=True)
        clause.take()
        kind, val, pos = clause.take()
        if kind != "name" or val != "field":
            raise ParseError("expected 'field' after 'in'", pos)
        coeffs, var = _parse_poly(clause, stop_ops=("@",))
        clause.expect_op("@")
        clause.expect_op("[")
        lo = clause.rational_literal()
        clause.expect_op(",")
        hi = clause.rational_literal()
        clause.expect_op("]")
        clause.expect_end()
        try:
            field = NumberField(coeffs, (lo, hi))
        except ValueError as exc:
            raise ParseError(str(exc), end_pos)
        env = {var: field.theta()}
        tokens = tokens[:split] + [("end", "", end_pos)]
    parser = _Parser(tokens, env=env, field_declared=declared)
    values = parser.parse_tuple(3)
    parser.expect_end()
    return Direction3(*values)


def parse_start(text: str, arity: int = 3):
    """Rational start tuple like "(1/7, 0.25, 3)"."""
    parser = _Parser(_tokenize(text), rational_only=True)
    values = parser.parse_tuple(arity)
    parser.expect_end()
    return tuple(Fraction(v) for v in values)


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _write_atomic(path: str, text: str):
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".cutseq-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        _write_atomic(out, text)


def _fail(code: int, kind: str, message: str, **extra) -> int:
    payload = {"schema": 1, "error": kind, "message": message}
    payload.update(extra)
    sys.stderr.write(_json_text(payload))
    return code


def _warn(message: str):
    sys.stderr.write("warning: %s\n" % message)


def _rendered(direction: Direction3):
    return [render_element(c) for c in direction.coordinates()]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_classify(args) -> int:
    direction = parse_direction(args.direction)
    _emit(classification_json_text(classify(direction)), args.out)
    return 0


def _cmd_word(args) -> int:
    direction = parse_direction(args.direction)
    start = parse_start(args.start) if args.start else DEFAULT_START3
    if args.length < 1:
        raise ValueError("--length must be at least 1")
    word = cutting_word_3d(direction, start=start, length=args.length)
    detected = period_detect(word)
    payload = {
        "schema": 1,
        "direction": _rendered(direction),
        "start": [str(x) for x in start],
        "length": len(word),
        "letters": word.text(),
        "period": None if detected is None
        else {"preperiod": detected[0], "period": detected[1]},
    }
    _emit(_json_text(payload), args.out)
    return 0


def _profile_rows(direction, start, length, n_max, seed_points):
    word = cutting_word_3d(direction, start=start, length=length)
    profile = complexity_profile(word, n_max=n_max)
    if not seed_points:
        return profile
    # worst-case complexity over sampled starts; only non-minimal
    # directions actually depend on the start point
    rng = random.Random(97531)
    counts = list(profile.counts)
    stable = profile.stable_up_to
    for _ in range(seed_points):
        extra = None
        for _attempt in range(50):
            candidate = tuple(Fraction(rng.randrange(1, 9973), 9973)
                              for _ in range(3))
            try:
                extra = cutting_word_3d(direction, start=candidate,
                                        length=length)
                break
            except SingularOrbit:
                continue
        if extra is None:
            raise ValueError("no nonsingular sampled start found in 50 tries")
        sampled = complexity_profile(extra, n_max=n_max)
        counts = [max(a, b) for a, b in zip(counts, sampled.counts)]
        stable = min(stable, sampled.stable_up_to)
    return ComplexityProfile(tuple(counts), stable, length)


def _cmd_profile(args) -> int:
    direction = parse_direction(args.direction)
    start = parse_start(args.start) if args.start else DEFAULT_START3
    if args.length < 2:
        raise ValueError("--length must be at least 2")
    n_max = min(args.nmax, args.length - 1)
    if n_max < 1:
        raise ValueError("--nmax must be at least 1")
    profile = _profile_rows(direction, start, args.length, n_max,
                            args.seed_points)
    top = n_max
    if profile.stable_up_to < n_max:
        top = max(profile.stable_up_to, 1)
        _warn("nmax %d exceeds the certified horizon; reporting %d rows "
              "(stable_up_to=%d)" % (n_max, top, profile.stable_up_to))
    if args.format == "csv":
        lines = profile.to_csv().splitlines(keepends=True)
        _emit("".join(lines[:top + 1]), args.out)
    else:
        rows = [{"n": n, "p": p, "s": s, "d2": d2, "stable": bool(st)}
                for n, p, s, d2, st in profile.rows()[:top]]
        payload = {
            "schema": 1,
            "direction": _rendered(direction),
            "start": [str(x) for x in start],
            "length": args.length,
            "stable_up_to": profile.stable_up_to,
            "n_max": top,
            "rows": rows,
        }
        _emit(_json_text(payload), args.out)
    return 0


def _cmd_diagonals(args) -> int:
    direction = parse_direction(args.direction)
    if args.nmax < 1:
        raise ValueError("--nmax must be at least 1")
    entries = []
    for n in range(1, args.nmax + 1):
        count, records = count_diagonals(direction, n)
        entries.append({"n": n, "count": count,
                        "records": [diagonal_to_dict(r) for r in records]})
    payload = {
        "schema": 1,
        "direction": _rendered(direction),
        "n_max": args.nmax,
        "counts": entries,
    }
    _emit(_json_text(payload), args.out)
    return 0


def _cmd_verify(args) -> int:
    direction = parse_direction(args.direction)
    start = parse_start(args.start) if args.start else None
    partner = parse_direction(args.partner) if args.partner else None
    if args.length < 2:
        raise ValueError("--length must be at least 2")
    report = verify(direction, length=args.length,
                    n_max=min(args.nmax, args.length - 1), start=start,
                    partner=partner, diagonal_limit=args.diagonal_limit,
                    reconcile=args.reconcile)
    _emit(report_json_text(report), args.out)
    return 0 if report.ok else 4


# -- the built-in battery ---------------------------------------------------------

def _scenario_sturmian():
    golden = (NumberField((-5, 0, 1), (2, 3)).theta() - 1) / 2
    word = cutting_word_2d(1, golden, length=100000)
    profile = complexity_profile(word, n_max=200)
    failing = [n for n in range(1, 201) if profile.p(n) != n + 1]
    ok = profile.stable_up_to >= 200 and not failing
    return ok, {"law": "p(n) = n+1", "checked_to": 200,
                "stable_up_to": profile.stable_up_to, "failing_n": failing}


def _scenario_verify(text, **kwargs):
    def run():
        direction = parse_direction(text)
        options = dict(kwargs)
        partner = options.pop("partner_text", None)
        if partner is not None:
            options["partner"] = parse_direction(partner)
        report = verify(direction, **options)
        return report.ok, report.to_json()
    return run


def _scenario_engines():
    rng = random.Random(1306)
    worst = []
    for _ in range(10):
        length = rng.randrange(500, 2000)
        letters = bytes(rng.randrange(1, 4) for _ in range(length))
        fast = FactorIndex(letters).factor_counts(30)
        slow = naive_factor_counts(letters, 30)
        if fast != slow:
            worst.append({"length": length, "fast": fast, "slow": slow})
    return not worst, {"words": 10, "n_max": 30, "mismatches": worst}


def _scenario_kernel_relations():
    field = NumberField(_QUARTIC_POLY, _QUARTIC_INTERVAL)
    rng = random.Random(825)
    bad = []
    for _ in range(20):
        values = [field.from_coords([Fraction(rng.randrange(-3, 4))
                                     for _ in range(4)]) for _ in range(3)]
        if any(v.coords == (0, 0, 0, 0) for v in values):
            continue
        kernel = rational_relations(values)
        brute = []
        for c0 in range(-6, 7):
            for c1 in range(-6, 7):
                for c2 in range(-6, 7):
                    if (c0, c1, c2) == (0, 0, 0):
                        continue
                    combo = c0 * values[0] + c1 * values[1] + c2 * values[2]
                    if combo.coords == (0, 0, 0, 0):
                        brute.append((c0, c1, c2))
        spanned = all(_in_span(v, kernel) for v in brute)
        members = all(list(v) in [list(b) for b in brute] or max(map(abs, v)) > 6
                      for v in kernel)
        if not (spanned and members):
            bad.append({"kernel": [list(v) for v in kernel],
                        "brute": [list(v) for v in brute]})
    return not bad, {"triples": 20, "mismatches": bad}


def _in_span(vector, basis):
    # integer span membership for <= 2 basis vectors via exact elimination
    from fractions import Fraction as F
    rows = [list(map(F, b)) for b in basis]
    target = list(map(F, vector))
    for row in rows:
        pivot = next((j for j, x in enumerate(row) if x != 0), None)
        if pivot is None:
            continue
        if target[pivot] != 0:
            factor = target[pivot] / row[pivot]
            target = [t - factor * r for t, r in zip(target, row)]
    return all(t == 0 for t in target)


_SUITE = (
    ("sturmian_square", _scenario_sturmian),
    ("constant_regime", _scenario_verify("(1, 2/3, 5/7)", length=4000, n_max=60)),
    ("linear_one_ratio", _scenario_verify(
        "(1, sqrt2, 1/2)", length=30000, n_max=80,
        partner_text="(1, sqrt3, 1/2)")),
    ("linear_same_plane", _scenario_verify(
        "(1, sqrt2, 1 + sqrt2)", length=30000, n_max=80,
        partner_text="(1, sqrt3, 1 + sqrt3)")),
    ("quadratic_explicit_constant", _scenario_verify(
        "(1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]",
        length=60000, n_max=60)),
    ("full_square_law", _scenario_verify(
        "(1, sqrt2, sqrt3)", length=200000, n_max=25,
        diagonal_limit=12, reconcile=True)),
    ("engine_agreement", _scenario_engines),
    ("relation_kernel", _scenario_kernel_relations),
)


def _cmd_suite(args) -> int:
    results = []
    all_ok = True
    for name, runner in _SUITE:
        ok, payload = runner()
        all_ok = all_ok and ok
        entry = {"schema": 1, "scenario": name, "ok": ok, "report": payload}
        if args.out is not None:
            os.makedirs(args.out, exist_ok=True)
            _write_atomic(os.path.join(args.out, name + ".json"),
                          _json_text(entry))
        results.append(entry)
        sys.stdout.write("%-28s %s\n" % (name, "pass" if ok else "FAIL"))
    if args.out is None:
        sys.stdout.write(_json_text({"schema": 1, "ok": all_ok,
                                     "scenarios": results}))
    return 0 if all_ok else 4


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cutseq",
        description="exact cutting-sequence words: classify directions, "
                    "generate words, measure complexity, verify the "
                    "predicted growth laws")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide the growth regime of a direction")
    p.add_argument("direction")
    p.add_argument("--out")

    p = sub.add_parser("word", help="emit the letter sequence and any detected period")
    p.add_argument("direction")
    p.add_argument("--length", type=int, default=1000000)
    p.add_argument("--start")
    p.add_argument("--out")

    p = sub.add_parser("profile", help="emit p(n), s(n), d2(n) rows")
    p.add_argument("direction")
    p.add_argument("--length", type=int, default=1000000)
    p.add_argument("--nmax", type=int, default=100)
    p.add_argument("--start")
    p.add_argument("--seed-points", type=int, default=0,
                   help="extra sampled start points; rows report the maximum")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("diagonals", help="enumerate gap segments per length")
    p.add_argument("direction")
    p.add_argument("--nmax", type=int, default=100)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="test the measured profile against the theory")
    p.add_argument("direction")
    p.add_argument("--length", type=int, default=1000000)
    p.add_argument("--nmax", type=int, default=100)
    p.add_argument("--start")
    p.add_argument("--partner", help="second direction for the same-complexity checks")
    p.add_argument("--diagonal-limit", type=int, default=0)
    p.add_argument("--reconcile", action="store_true",
                   help="audit square-law shortfalls with exact cylinders")
    p.add_argument("--out")

    p = sub.add_parser("suite", help="run the built-in verification battery")
    p.add_argument("--out", help="directory for one JSON report per scenario")

    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "word": _cmd_word,
    "profile": _cmd_profile,
    "diagonals": _cmd_diagonals,
    "verify": _cmd_verify,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        return _fail(2, "parse", str(exc), position=exc.position)
    except SingularOrbit as exc:
        when = exc.time
        if hasattr(when, "decimal"):
            when = when.decimal(30)
        return _fail(3, "singular-orbit",
                     "two coordinates cross the grid at the same instant",
                     time=str(when), families=list(exc.families))
    except (NonPositiveCoordinate, FieldMismatch) as exc:
        return _fail(2, "direction", str(exc))
    except ValueError as exc:
        return _fail(2, "invalid-input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
