from __future__ import annotations

import json
from fractions import Fraction

import pytest

from conftest import CORPUS_TEXTS
from formalpde import corpus
from formalpde.cli import (
    EXIT_CORPUS_MISMATCH,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    build_report,
    main,
)
from formalpde.parser import ParseError, parse, render


def test_parse_flagship_text():
    doc = parse(CORPUS_TEXTS["example7"])
    assert (doc.n, doc.m) == (4, 1)
    assert len(doc.system.equations) == 4
    assert doc.system.order == 2


def test_parse_fractional_coefficient():
    doc = parse("vars=3; eq: 1/2*y[1] = 0")
    assert list(doc.system.equations[0].terms.values()) == [Fraction(1, 2)]


def test_parse_order_zero_jet():
    doc = parse("vars=2; eq: y[] - y[1] = 0")
    orders = sorted(sum(jc.mu) for jc in doc.system.equations[0].terms)
    assert orders == [0, 1]


def test_parse_index_out_of_range():
    with pytest.raises(ParseError, match="out of range"):
        parse("vars=3; eq: y[5]")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse("vars=3;\neq: y[1,$]")
    assert err.value.line == 2


def test_round_trip_all_corpus_texts():
    for name, text in CORPUS_TEXTS.items():
        doc = parse(text)
        again = parse(render(doc))
        assert again.system == doc.system, name


def test_round_trip_multi_unknown():
    doc = parse("vars=3; unknowns=4; eq: z1[3]-z4[]; eq: z2[2]-2*z3[1]")
    assert doc.m == 4
    assert parse(render(doc)).system == doc.system


def test_cli_examples_single_entry(capsys):
    code = main(["examples", "run", "example7"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("PASS example7")
    assert "discrepancy" in out


def test_cli_examples_unknown_name(capsys):
    assert main(["examples", "run", "nosuch"]) == EXIT_PARSE_ERROR


def test_cli_examples_mismatch_exit_code(capsys, monkeypatch):
    def broken(seed=0):
        return corpus.CorpusResult(
            "broken",
            "synthetic",
            (corpus.Check("value", "trivial", 1, 2),),
            (),
        )

    monkeypatch.setitem(corpus.ENTRIES, "broken", broken)
    code = main(["examples", "run", "broken"])
    out = capsys.readouterr().out
    assert code == EXIT_CORPUS_MISMATCH
    assert "FAIL broken" in out
    assert "expected 1" in out


def test_cli_hilbert_series(capsys):
    code = main(["hilbert", "--vars", "3", "--degrees", "3,2", "--trunc", "6"])
    out = capsys.readouterr().out.strip()
    assert code == EXIT_OK
    assert out == "1,3,5,6,6,6,6"


def test_cli_analyze_empty_system(tmp_path, capsys):
    f = tmp_path / "empty.pde"
    f.write_text("vars=3;\n", encoding="utf-8")
    code = main(["--report", "json", "analyze", str(f)])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["codimension"] == 0
    assert report["purity"]["pure"] is True
    assert report["inverse"]["finite_dimension"] is None
    assert any("infinite dimensional" in note for note in report["notes"])


def test_cli_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.pde"
    f.write_text("vars=3; eq: y[9]\n", encoding="utf-8")
    assert main(["analyze", str(f)]) == EXIT_PARSE_ERROR


def test_cli_purity_example8(tmp_path, capsys):
    # the classical frame change is applied in the source text
    f = tmp_path / "ex8.pde"
    f.write_text("vars=3; eq: y[3,3]-y[1,3]=0; eq: y[2,3]=0\n", encoding="utf-8")
    code = main(["--report", "json", "purity", str(f)])
    report = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert report["pure"] is False
    assert report["torsion"] == ["z4"]
    assert report["localized_dimension"] == 1


def test_cli_involution(tmp_path, capsys):
    f = tmp_path / "ex4.pde"
    f.write_text(CORPUS_TEXTS["example4"], encoding="utf-8")
    code = main(["--report", "json", "involution", str(f)])
    report = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert report["involution"]["involutive"] is True
    assert report["involution"]["alpha"] == [3, 0, 0]


def test_report_json_deterministic():
    text = CORPUS_TEXTS["example3"]
    doc = parse(text)
    a = json.dumps(build_report(text, doc.system, seed=0), sort_keys=True, ensure_ascii=False)
    doc2 = parse(text)
    b = json.dumps(build_report(text, doc2.system, seed=0), sort_keys=True, ensure_ascii=False)
    assert a == b


def test_report_json_byte_identical_across_processes(tmp_path):
    import subprocess
    import sys as _sys

    f = tmp_path / "ex3.pde"
    f.write_text(CORPUS_TEXTS["example3"], encoding="utf-8")
    cmd = [_sys.executable, "-m", "formalpde.cli", "--report", "json", "analyze", str(f)]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]


def test_report_flagship_notes_and_values():
    text = CORPUS_TEXTS["example7"]
    doc = parse(text)
    report = build_report(text, doc.system, seed=0)
    assert report["completion"]["verdict"] == "formally_integrable"
    assert report["codimension"] == 4
    assert report["hilbert"]["function"][:5] == [1, 4, 6, 4, 1]
    assert report["hilbert"]["series_matches"] is True
    assert report["inverse"]["finite_dimension"] == 16
    assert report["purity"]["pure"] is True
    assert sorted(report["characteristic_ideal"]) == [
        "(χ_1)^2 - χ_2*χ_4",
        "(χ_2)^2 - χ_3*χ_4",
        "(χ_3)^2",
        "(χ_4)^2",
    ]


def test_corpus_provenance_tags_present():
    for name, fn in corpus.ENTRIES.items():
        result = fn(0)
        assert result.source
        for check in result.checks:
            assert check.provenance in ("literature", "derived", "trivial"), (name, check.key)
