import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from hypergeom_moments.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, format_decimal, run

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_single_noncentral():
    code, out, _ = call("--N", "6", "--n", "3", "--counts", "3,2", "--alpha", "1,1", "--kind", "noncentral")
    assert code == EXIT_OK
    assert out == '{"N": 6, "n": 3, "counts": [3, 2], "alpha": [1, 1], "kind": "noncentral", "value": "6/5"}\n'


def test_single_central_zero_order():
    code, out, _ = call("--N", "6", "--n", "3", "--counts", "3,2", "--alpha", "0,0", "--kind", "central")
    assert code == EXIT_OK
    assert out == '{"N": 6, "n": 3, "counts": [3, 2], "alpha": [0, 0], "kind": "central", "value": "1"}\n'


def test_verify_mode_golden():
    code, out, _ = call("--N", "6", "--n", "3", "--counts", "3,2", "--mode", "verify", "--max-order", "4")
    assert code == EXIT_OK
    recs = records(out)
    assert len(recs) == 15 * 3
    assert all(r["match"] and r["value"] == r["oracle"] for r in recs)
    assert out == (GOLDEN / "verify_6_3_counts_3_2_order4.jsonl").read_text()


def test_table_mode():
    code, out, _ = call("--N", "6", "--n", "3", "--counts", "3,2", "--mode", "table", "--max-order", "2",
                        "--kind", "central")
    assert code == EXIT_OK
    recs = records(out)
    assert [tuple(r["alpha"]) for r in recs] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert [r["value"] for r in recs] == ["1", "0", "2/5", "0", "-3/10", "9/20"]


def test_probs_source_matches_counts():
    a = call("--N", "6", "--n", "3", "--probs", "1/2,1/3", "--alpha", "2,1", "--kind", "central")
    b = call("--N", "6", "--n", "3", "--counts", "3,2", "--alpha", "2,1", "--kind", "central")
    assert a == b


def test_decimal_format():
    code, out, _ = call("--N", "6", "--n", "3", "--counts", "3,2", "--alpha", "2,0", "--format", "decimal:1")
    rec = records(out)[0]
    assert rec["value"] == "27/10" and rec["decimal"] == "2.7"
    assert Fraction(rec["value"]) == Fraction(27, 10)


@pytest.mark.parametrize(
    "value, digits, text",
    [
        (Fraction(1, 8), 2, "0.12"),
        (Fraction(3, 8), 2, "0.38"),
        (Fraction(5, 2), 0, "2"),
        (Fraction(7, 2), 0, "4"),
        (Fraction(-5, 2), 0, "-2"),
        (Fraction(-1, 3), 4, "-0.3333"),
        (Fraction(2, 3), 3, "0.667"),
        (Fraction(6, 5), 0, "1"),
        (Fraction(123456789, 1000), 1, "123456.8"),
    ],
)
def test_format_decimal_half_even(value, digits, text):
    assert format_decimal(value, digits) == text


@pytest.mark.parametrize(
    "argv, message",
    [
        (["--N", "6", "--n", "7", "--counts", "3,2", "--alpha", "1,1"], "sample size exceeds population"),
        (["--N", "6", "--n", "3", "--counts", "4,3", "--alpha", "1,1"], "subpopulation counts exceed population"),
        (["--N", "10", "--n", "2", "--probs", "1/3,1/3", "--alpha", "1,1"], "non-integral"),
        (["--N", "6", "--n", "3", "--counts", "3,2", "--alpha", "1"], "dimension"),
        (["--N", "6", "--n", "3", "--counts", "3,2"], "--alpha is required"),
        (["--N", "6", "--n", "3", "--counts", "3,2", "--mode", "table"], "requires --max-order"),
        (["--N", "6", "--n", "3", "--alpha", "1,1"], "one of --counts or --probs"),
        (["--grid", "--max-order", "2"], "only valid with --mode verify"),
    ],
)
def test_invalid_requests(argv, message):
    code, out, err = call(*argv)
    assert code == EXIT_INVALID
    assert out == ""
    assert message in err


def test_both_sources_rejected():
    code, _, _ = call("--N", "6", "--n", "3", "--counts", "3,2", "--probs", "1/2,1/3", "--alpha", "1,1")
    assert code == EXIT_INVALID


def test_verify_quiet_small_grid():
    code, out, err = call("--mode", "verify", "--grid", "--grid-dims", "1,2", "--grid-max-N", "4", "--max-order", "3")
    assert code == EXIT_OK
    assert out == ""
    assert "0 mismatches" in err


def test_verify_exit_status_on_mismatch(monkeypatch):
    import hypergeom_moments.verification as verify_module
    from hypergeom_moments.kinds import MomentKind

    monkeypatch.setitem(verify_module.FORMULAS, MomentKind.FACTORIAL, lambda params, alpha: Fraction(1))
    code, out, _ = call("--N", "6", "--n", "3", "--counts", "3,2", "--mode", "verify", "--max-order", "1",
                        "--kind", "factorial", "--quiet")
    assert code == EXIT_MISMATCH
    assert [r["alpha"] for r in records(out)] == [[1, 0]]


def test_monte_carlo_fields_are_deterministic():
    argv = ["--N", "6", "--n", "3", "--counts", "3,2", "--alpha", "1,1", "--mc-samples", "2000", "--seed", "9"]
    first, second = call(*argv), call(*argv)
    assert first == second
    rec = records(first[1])[0]
    assert abs(rec["mc_estimate"] - 1.2) <= 5 * rec["mc_std_error"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hypergeom_moments", "--N", "6", "--n", "3", "--counts", "3,2",
         "--alpha", "1,1", "--kind", "noncentral"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"N": 6, "n": 3, "counts": [3, 2], "alpha": [1, 1], "kind": "noncentral", "value": "6/5"}\n'
    proc = subprocess.run([sys.executable, "-m", "hypergeom_moments", "--N", "2", "--n", "3", "--counts", "1",
                           "--alpha", "1"], capture_output=True, text=True)
    assert proc.returncode == 1 and "sample size exceeds population" in proc.stderr
