import json

from ratmaps.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--json")
    return code, json.loads(out) if out else None, err


def test_gcd_text(capsys):
    code, out, _ = run_cli(capsys, "gcd", "(x1^2, x1*x2)")
    assert code == 0
    assert "gcd: x1" in out


def test_gcd_json_envelope(capsys):
    code, data, _ = run_json(capsys, "gcd", "(x1^2, x1*x2)")
    assert code == 0
    assert data == {"command": "gcd", "field": "q", "gcd": "x1"}


def test_fp_field_flag(capsys):
    code, data, _ = run_json(capsys, "gcd", "(x1^2+x2^2, x1+x2)", "--field", "fp:2")
    assert code == 0
    assert data["field"] == "fp:2"
    assert data["gcd"] == "x1 + x2"


def test_parse_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "gcd", "(x1^")
    assert code == 2
    assert "parse error" in err


def test_precondition_exit_code(capsys):
    code, out, err = run_cli(capsys, "gcd", "(0, 0)")
    assert code == 1
    assert "precondition" in err


def test_verdict_false_still_exits_zero(capsys):
    code, data, _ = run_json(capsys, "qt-check", "(1, x2/x1)")
    assert code == 0
    assert data["qt_condition"] is False
    assert data["jh_dot_h_zero"] is True


def test_infile(tmp_path, capsys):
    f = tmp_path / "inputs.txt"
    f.write_text("x1\n1 - x1\n")
    code, data, _ = run_json(capsys, "unit-combo", "--in", str(f))
    assert code == 0
    assert data["exists"] is True and data["lambda"] == "1"


def test_trdeg_char_p_fallback(capsys):
    code, data, _ = run_json(
        capsys, "trdeg", "(x1^2, x1*x2, x2^2)", "--field", "fp:2", "--bound", "2"
    )
    assert code == 0
    assert data["trdeg"] == 2 and data["certified"] is False


def test_member_kpq_bound_flag(capsys):
    code, data, _ = run_json(
        capsys, "member-kpq", "(x2^2)/(x1^2)", "x1", "x2", "--bound", "2"
    )
    assert code == 0
    assert data["found"] is True and data["f2"] == "y1^2"


def test_valuation_infinity(capsys):
    code, data, _ = run_json(capsys, "valuation", "y1^2+3*y1", "--theta", "inf")
    assert code == 0
    assert data["valuation"] == -2


def test_hmgrk2_witness_file(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text(
        json.dumps({"g": "1", "h": "(y1^2, y1*y2, y2^2)", "p": "x1", "q": "x2"})
    )
    code, data, _ = run_json(
        capsys, "hmgrk2-verify", "(x1^2, x1*x2, x2^2)", "--witness", str(w)
    )
    assert code == 0
    assert data["all_ok"] is True
    assert data["trdeg_tH"] == 2


def test_gn_classify_witness_file(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text(
        json.dumps(
            {"kind": "cond4", "g": "1", "f": "(0, 0, y1)", "p": "x1", "q": "x2"}
        )
    )
    code, data, _ = run_json(
        capsys, "gn-classify", "(0, 0, x1/x2)", "--witness", str(w)
    )
    assert code == 0
    assert data["qt_condition"] is True
    assert data["witnesses"][0]["verified"] is True


def test_pqtrans_flags(capsys):
    code, data, _ = run_json(
        capsys,
        "pqtrans",
        "x1",
        "1",
        "--g",
        "1;(y1-1)^2",
        "--mode",
        "invert",
        "--theta",
        "1",
    )
    assert code == 0
    assert data["pstar"] == "1" and data["qstar"] == "x1 - 1"
    assert data["f1star"] == "y1^2" and data["f2star"] == "1"


def test_json_deterministic_across_runs(capsys):
    outputs = []
    for _ in range(2):
        code, out, _ = run_cli(
            capsys, "gn-classify", "(0, 0, x1/x2)", "--json"
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_internal_alarm_exit_code(monkeypatch, capsys):
    # force a theorem-contradiction alarm to confirm the exit-code mapping
    import ratmaps.cli as cli_mod
    from ratmaps.errors import AssertionFailure

    def boom(*a, **kw):
        raise AssertionFailure("forced disagreement")

    monkeypatch.setattr(cli_mod.subfield, "gcd_subst_uni", boom)
    code, out, err = run_cli(capsys, "gcd-subst", "--mode", "uni", "(y1, y1^2)", "x1")
    assert code == 3
    assert "internal assertion" in err
