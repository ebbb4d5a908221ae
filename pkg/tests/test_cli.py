import json
import random

import pytest

from ffintervals.cli import run_command
from ffintervals.errors import PolyParseError
from ffintervals.finite_field import make_extension, make_prime_field
from ffintervals.polynomial import random_monic
from ffintervals.polyparse import format_poly, parse_element, parse_poly, parse_shifts

F7 = make_prime_field(7)


# ---------------------------------------------------------------------------
# expression parsing


def test_parse_poly_reduces_mod_p():
    assert parse_poly("x^4-2*x^2", F7).raw_coeffs == (0, 0, 5, 0, 1)


def test_parse_poly_constant():
    assert parse_poly("3", F7).raw_coeffs == (3,)
    assert parse_poly("7", F7).is_zero


def test_parse_poly_leading_minus_and_spaces():
    assert parse_poly(" -x^2 + 3 ", F7).raw_coeffs == (3, 0, 6)


def test_parse_poly_coeff_star_mono():
    assert parse_poly("2*x", F7).raw_coeffs == (0, 2)
    assert parse_poly("x", F7).raw_coeffs == (0, 1)


def test_parse_poly_double_caret_offset():
    with pytest.raises(PolyParseError) as err:
        parse_poly("x^^2", F7)
    assert err.value.offset == 2


def test_parse_poly_junk():
    with pytest.raises(PolyParseError):
        parse_poly("", F7)
    with pytest.raises(PolyParseError):
        parse_poly("x+", F7)
    with pytest.raises(PolyParseError):
        parse_poly("2*", F7)
    with pytest.raises(PolyParseError):
        parse_poly("x^2 y", F7)


def test_format_parse_roundtrip_random():
    rng = random.Random("roundtrip")
    for _ in range(500):
        ctx = make_prime_field((5, 7, 13)[rng.randrange(3)])
        poly = random_monic(ctx, rng.randrange(0, 7), rng)
        assert parse_poly(format_poly(poly), ctx) == poly


def test_format_parse_roundtrip_extension_constants():
    # parsed polynomials over extensions carry prime-subfield coefficients,
    # which must format back to grammar-compatible integers
    F25 = make_extension(make_prime_field(5), 2, 0)
    rng = random.Random("ext-roundtrip")
    for _ in range(100):
        coeffs = [rng.randrange(5) for _ in range(rng.randrange(1, 6))]
        text = "+".join(f"{c}*x^{i}" if i else str(c) for i, c in enumerate(coeffs))
        poly = parse_poly(text, F25)
        assert parse_poly(format_poly(poly), F25) == poly


def test_parse_element_extension_tuple():
    F25 = make_extension(make_prime_field(5), 2, 0)
    assert parse_element("3:1", F25).raw == (3, 1)
    assert parse_element("2", F25).raw == (2, 0)
    shifts = parse_shifts("0,1,2:1", F25)
    assert [s.raw for s in shifts] == [(0, 0), (1, 0), (2, 1)]


def test_parse_shifts_rejects_duplicates():
    with pytest.raises(PolyParseError):
        parse_shifts("1,1", F7)


# ---------------------------------------------------------------------------
# command dispatch


def run_json(capsys, argv):
    code = run_command(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_sum_command_json(capsys):
    code, payload = run_json(
        capsys, ["sum", "--p", "7", "--f", "x^3", "--phi", "prime", "--out", "json"]
    )
    assert code == 0
    assert payload["command"] == "sum"
    assert payload["report"]["raw_sum"] == "4"
    assert payload["report"]["cycle_type_counts"]["3"] == 4


def test_unknown_flag_exits_2(capsys):
    assert run_command(["sum", "--p", "7", "--f", "x^3", "--phi", "prime", "--nope"]) == 2


def test_unknown_verb_exits_2(capsys):
    assert run_command(["frobnicate"]) == 2


def test_composite_p_exits_2(capsys):
    assert run_command(["sum", "--p", "6", "--f", "x^3", "--phi", "prime"]) == 2


def test_bad_poly_exits_2(capsys):
    assert run_command(["sum", "--p", "7", "--f", "x^^2", "--phi", "prime"]) == 2


def test_csv_output_has_header_row(capsys):
    code = run_command(["sum", "--p", "7", "--f", "x^3", "--phi", "prime", "--out", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert "raw_sum" in lines[0] and "cycle_type" in lines[0]
    assert len(lines) >= 3


def test_csv_and_json_encode_same_data(capsys):
    import csv as _csv
    import io

    code, payload = run_json(
        capsys, ["sum", "--p", "13", "--f", "x^3+x", "--phi", "mu", "--out", "json"]
    )
    assert code == 0
    run_command(["sum", "--p", "13", "--f", "x^3+x", "--phi", "mu", "--out", "csv"])
    csv_out = capsys.readouterr().out
    rows = list(_csv.DictReader(io.StringIO(csv_out)))
    assert {row["raw_sum"] for row in rows} == {payload["report"]["raw_sum"]}
    csv_counts = {row["cycle_type"]: int(row["count"]) for row in rows}
    assert csv_counts == payload["report"]["cycle_type_counts"]


def test_correlate_arity_mismatch_exits_2(capsys):
    code = run_command(
        [
            "correlate",
            "--p", "13",
            "--f", "x^3",
            "--shifts", "0,1",
            "--phi", "prime",
        ]
    )
    assert code == 2


def test_correlate_command(capsys):
    code, payload = run_json(
        capsys,
        [
            "correlate",
            "--p", "13",
            "--f", "x^3",
            "--shifts", "0,1",
            "--phi", "mu",
            "--phi", "mu",
        ],
    )
    assert code == 0
    assert payload["report"]["kind"] == "correlation_sum"


def test_field_info_extension(capsys):
    code, payload = run_json(capsys, ["field-info", "--p", "2", "--ext", "3"])
    assert code == 0
    assert payload["report"]["q"] == "8"
    assert payload["report"]["modulus"] in ([1, 1, 0, 1], [1, 0, 1, 1])


def test_factor_command(capsys):
    code, payload = run_json(capsys, ["factor", "--p", "7", "--f", "x^4-2*x^2"])
    assert code == 0
    assert payload["report"]["omega"] == 3


def test_classify_command(capsys):
    code, payload = run_json(capsys, ["classify", "--p", "7", "--f", "x^3"])
    assert code == 0
    assert payload["report"]["kind"] == "no-cancellation"
    assert payload["report"]["sign"] == -1


def test_gauss_command(capsys):
    code, payload = run_json(capsys, ["gauss", "--p", "3", "--d", "3"])
    assert code == 0
    assert payload["report"] == {"enumerated": 8, "formula": 8}
    assert payload["pass"] is True


def test_morse_command(capsys):
    code, payload = run_json(capsys, ["morse", "--p", "13", "--f", "x^4-2*x^2"])
    assert code == 0
    assert payload["report"]["is_morse"] is False
    assert payload["report"]["bad_set"] == ["1", "12"]


def test_scan_morse_command(capsys):
    code, payload = run_json(capsys, ["scan-morse", "--p", "13", "--f", "x^3"])
    assert code == 0
    assert payload["report"]["bad_count"] == 1


def test_census_command(capsys):
    code, payload = run_json(capsys, ["census", "--p", "13", "--f", "x^3", "--shifts", "0,1"])
    assert code == 0
    assert payload["pass"] is True


def test_chebotarev_command(capsys):
    code, payload = run_json(capsys, ["chebotarev", "--p", "11", "--f", "x^3"])
    assert code == 0
    assert payload["report"]["classes"]["2,1"]["frequency"] == "1"


def test_large_q_demo_command(capsys):
    code, payload = run_json(capsys, ["large-q-demo", "--p", "5", "--l-list", "1,2"])
    assert code == 0
    steps = payload["report"]["steps"]
    assert [s["q"] for s in steps] == [5, 25]
    assert all(s["multiset_multiplicity_two"] for s in steps)


def test_extension_sum_command(capsys):
    code, payload = run_json(
        capsys, ["sum", "--p", "5", "--ext", "2", "--f", "x^3+x", "--phi", "mu"]
    )
    assert code == 0
    assert payload["report"]["params"]["q"] == "25"


def test_custom_phi_from_file(capsys, tmp_path):
    # indicator of the 3-cycle class, written as a table file
    table = tmp_path / "phi.txt"
    table.write_text("3=1\n2,1=0\n1,1,1=0\n", encoding="utf-8")
    code, payload = run_json(
        capsys, ["sum", "--p", "7", "--f", "x^3", "--phi", f"file:{table}"]
    )
    assert code == 0
    assert payload["report"]["raw_sum"] == "4"  # same as the prime indicator


def test_divisor_phi_flag(capsys):
    code, payload = run_json(capsys, ["sum", "--p", "13", "--f", "x^3+x", "--phi", "dr:2"])
    assert code == 0
    assert payload["report"]["predicted_constant"] == "4"  # C(3+2-1, 2-1)

