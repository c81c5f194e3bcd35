"""Command-line behavior: grammar, exit codes, file outputs."""

import json
import os
from fractions import Fraction

import pytest

from cutseq.cli import ParseError, main, parse_direction, parse_start
from cutseq.coding import NonPositiveCoordinate
from cutseq.numfield import FieldMismatch, NumberField

QUARTIC_POLY = (1, 0, -10, 0, 1)
CUBIC_POLY = (-1, 1, 0, 1)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- expression grammar --


def test_parse_canonical_pair():
    d = parse_direction("(1, sqrt2, sqrt3)")
    assert d.field.min_poly == QUARTIC_POLY
    assert d.w2 * d.w2 == d.field.element(2)
    assert d.w3 * d.w3 == d.field.element(3)
    assert d.w2 * d.w3 == parse_direction("(1, sqrt6, 2)").w2


def test_parse_square_part_reduction():
    # sqrt(8) must land in the same field as sqrt2, not a fresh quadratic
    d = parse_direction("(1, sqrt(8), sqrt3)")
    assert d.w2 == 2 * parse_direction("(1, sqrt2, sqrt3)").w2
    assert parse_direction("(1, sqrt(9), 2)").w2 == 3
    assert parse_direction("(1, sqrt(75), sqrt3)").w2.coords[1] != 0


def test_parse_arithmetic_is_exact():
    d = parse_direction("(2/3, 0.6, 1 + 1/4)")
    assert d.w1.as_rational() == Fraction(2, 3)
    assert d.w2.as_rational() == Fraction(3, 5)
    assert d.w3.as_rational() == Fraction(5, 4)
    e = parse_direction("(1, (sqrt2 + 1)^2 - 2*sqrt2, sqrt2/2)")
    assert e.w2.as_rational() == 3
    assert (e.w3 * 2) ** 2 == e.field.element(2)


def test_parse_field_clause():
    d = parse_direction("(1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]")
    theta = NumberField(CUBIC_POLY, (Fraction(1, 2), 1)).theta()
    assert d.field.min_poly == CUBIC_POLY
    assert d.alpha == theta.inverse()
    assert d.beta == (1 - theta).inverse()
    # the clause accepts rational-scaled polynomials: roots are unchanged
    e = parse_direction("(1, x, x^2) in field x^2/2 - 1 @ [1, 3/2]")
    assert e.w2 * e.w2 == e.field.element(2)


def test_parse_root_literal():
    d = parse_direction("(1, root(z^3 + z - 1, [0, 1]), 3)")
    assert d.field.min_poly == CUBIC_POLY
    assert d.w2 ** 3 + d.w2 == d.field.element(1)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_direction("(1, sqrt2")
    assert err.value.position == 9
    assert "','" in str(err.value)
    with pytest.raises(ParseError) as err:
        parse_direction("(1, 2, qux)")
    assert err.value.position == 7
    with pytest.raises(ParseError):
        parse_direction("(1, 2, 3) in field 5 @ [1, 2]")  # no variable
    with pytest.raises(ParseError):
        parse_direction("(1, sqrt2, t) in field t^2-2 @ [1, 2]")
    with pytest.raises(ParseError):
        parse_direction("(1, 1/0, 2)")
    with pytest.raises(ParseError):
        parse_direction("(1, 2, 3) extra")


def test_parse_rejects_bad_directions():
    with pytest.raises(NonPositiveCoordinate):
        parse_direction("(1, 0, 2)")
    with pytest.raises(FieldMismatch):
        parse_direction("(1, sqrt2 + sqrt(5), 2)")
    with pytest.raises(FieldMismatch):
        parse_direction("(1, sqrt(5), root(z^3+z-1, [0, 1]))")


def test_parse_start_is_rational_only():
    assert parse_start("(1/7, 0.25, 3/4)") == (
        Fraction(1, 7), Fraction(1, 4), Fraction(3, 4))
    with pytest.raises(ParseError):
        parse_start("(1/7, sqrt2, 1/2)")
    with pytest.raises(ParseError):
        parse_start("(1/7, 1/11)")


def test_parse_is_deterministic():
    a = parse_direction("(1, sqrt2, sqrt3)")
    b = parse_direction("(1, sqrt2, sqrt3)")
    assert a == b and a.field.min_poly == b.field.min_poly


def test_serialized_direction_round_trips():
    # the rendered report (field descriptor + coordinate vectors) carries
    # enough to rebuild the exact direction: reparse the polynomial text,
    # reattach the interval, and feed the coordinates back in
    from cutseq.coding import Direction3
    from cutseq.numfield import field_descriptor, render_element

    for text in ("(1, sqrt2, sqrt3)",
                 "(1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]",
                 "(3/2, sqrt(8), 1 + sqrt6)"):
        d = parse_direction(text)
        desc = field_descriptor(d.field)
        rebuilt_field = parse_direction(
            "(1, x, x^2) in field %s @ [%s, %s]" % (
                desc["min_poly"].replace("t", "x"),
                desc["root_interval"][0], desc["root_interval"][1])).field
        coords = [render_element(c)["coords"] for c in d.coordinates()]
        rebuilt = Direction3(*(rebuilt_field.from_coords(
            [Fraction(x) for x in row]) for row in coords))
        assert rebuilt == d
        assert rebuilt.field.min_poly == d.field.min_poly


# -- exit codes --


def test_exit_zero_and_two(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "(1, sqrt2, sqrt3)")
    assert code == 0
    assert json.loads(out)["case"] == 5

    code, out, err = run(capsys, "classify", "(1, sqrt2")
    assert code == 2 and out == ""
    payload = json.loads(err)
    assert payload["error"] == "parse" and payload["position"] == 9

    code, _, err = run(capsys, "classify", "(1, 0, 2)")
    assert code == 2 and json.loads(err)["error"] == "direction"

    code, _, err = run(capsys, "word", "(1, 2, 3)", "--length", "0")
    assert code == 2 and json.loads(err)["error"] == "invalid-input"


def test_exit_three_singular(capsys):
    code, _, err = run(capsys, "word", "(1, 1, 2)",
                       "--start", "(1/2, 1/2, 1/2)", "--length", "50")
    assert code == 3
    payload = json.loads(err)
    assert payload["error"] == "singular-orbit"
    assert sorted(payload["families"]) == [1, 2]


def test_exit_four_failed_verification(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "(1, sqrt2, 1/2)",
                     "--length", "20000", "--nmax", "60",
                     "--partner", "(1, sqrt3, 1/3)",
                     "--out", str(out_file))
    assert code == 4
    report = json.loads(out_file.read_text())   # written despite the failure
    assert report["ok"] is False
    failed = {c["name"] for c in report["checks"] if not c["passed"]}
    assert "partner_same_rational_ratio" in failed


# -- command outputs --


def test_word_payload_and_period(capsys):
    code, out, _ = run(capsys, "word", "(1, 2/3, 5/7)", "--length", "400")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert len(payload["letters"]) == 400
    assert set(payload["letters"]) <= {"1", "2", "3"}
    assert payload["period"] is not None
    assert payload["period"]["preperiod"] >= 0
    assert payload["period"]["period"] >= 1
    code, out, _ = run(capsys, "word", "(1, sqrt2, sqrt3)", "--length", "400")
    assert json.loads(out)["period"] is None


def test_profile_csv_shape(capsys):
    code, out, err = run(capsys, "profile", "(1, sqrt2, sqrt3)",
                         "--length", "3000", "--nmax", "8")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "n,p,s,d2,stable"
    assert len(lines) == 9
    first = lines[1].split(",")
    assert first == ["1", "3", "4", "2", "1"]


def test_profile_nmax_shrinks_to_stable(capsys):
    code, out, err = run(capsys, "profile", "(1, sqrt2, sqrt3)",
                         "--length", "2000", "--nmax", "60")
    assert code == 0
    assert "warning:" in err and "stable_up_to" in err
    rows = out.splitlines()[1:]
    assert 0 < len(rows) < 60
    assert all(row.endswith(",1") for row in rows)


def test_profile_json_and_seed_points(capsys):
    args = ("profile", "(1, sqrt2, sqrt3)", "--length", "2000",
            "--nmax", "10", "--format", "json", "--seed-points", "2")
    code, out, _ = run(capsys, *args)
    assert code == 0
    payload = json.loads(out)
    assert [r["n"] for r in payload["rows"]] == list(range(1, 11))
    assert all(r["p"] >= r["n"] + 1 for r in payload["rows"])
    code, again, _ = run(capsys, *args)
    assert again == out     # sampled starts are seeded


def test_diagonals_payload(capsys):
    code, out, _ = run(capsys, "diagonals", "(1, sqrt2, sqrt3)", "--nmax", "5")
    assert code == 0
    payload = json.loads(out)
    counts = [(e["n"], e["count"]) for e in payload["counts"]]
    assert counts == [(n, 2) for n in range(1, 6)]
    record = payload["counts"][0]["records"][0]
    assert {"length", "family", "level", "start_edge", "end_edge"} <= set(record)


def test_out_files_are_atomic_and_stable(capsys, tmp_path):
    target = tmp_path / "case.json"
    argv = ("classify", "(1, sqrt2, sqrt3)", "--out", str(target))
    assert run(capsys, *argv)[0] == 0
    first = target.read_bytes()
    assert run(capsys, *argv)[0] == 0
    assert target.read_bytes() == first
    assert json.loads(first)["case"] == 5
    assert os.listdir(tmp_path) == ["case.json"]    # no temp leftovers


def test_suite_battery(capsys, tmp_path):
    code, out, _ = run(capsys, "suite", "--out", str(tmp_path))
    assert code == 0
    names = {line.split()[0] for line in out.splitlines() if line}
    assert "sturmian_square" in names and "full_square_law" in names
    files = sorted(os.listdir(tmp_path))
    assert len(files) == 8
    for name in files:
        payload = json.loads((tmp_path / name).read_text())
        assert payload["ok"] is True
