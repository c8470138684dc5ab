"""Command-line entry point: exit codes, file formats, determinism."""

import json
import math

import numpy as np
import pytest

from anomlab.cli import main
from anomlab.groupoid import axioms_check
from anomlab.instances import cyclic_group, point_groupoid
from anomlab.jsonio import (
    dump_json,
    groupoid_from_obj,
    groupoid_to_obj,
    load_json,
    matrix_from_obj,
    matrix_to_obj,
)


def _write_matrix(path, m):
    dump_json(matrix_to_obj(np.asarray(m, dtype=np.complex128)), path)
    return str(path)


def _read_lines(path):
    return [json.loads(line) for line in path.read_text().splitlines() if line]


def test_verify_json_report(tmp_path):
    out = tmp_path / "detp.jsonl"
    assert main(["verify", "--suite", "detp", "--seed", "3", "--out", str(out)]) == 0
    lines = _read_lines(out)
    summary = lines[-1]
    assert summary["kind"] == "summary"
    assert summary["suite"] == "detp"
    assert summary["pass"] is True
    assert summary["failures"] == 0
    assert summary["cases"] == len(lines) - 1
    assert all(rec["kind"] == "case" for rec in lines[:-1])


def test_verify_text_format(capsys):
    assert main(["verify", "--suite", "detp", "--seed", "1", "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("suite detp:")
    assert "PASS" in text


def test_verify_deterministic_up_to_timestamps(tmp_path):
    first = tmp_path / "one.jsonl"
    second = tmp_path / "two.jsonl"
    main(["verify", "--suite", "detp", "--seed", "9", "--out", str(first)])
    main(["verify", "--suite", "detp", "--seed", "9", "--out", str(second)])

    def strip(path):
        return [
            {k: v for k, v in rec.items() if k not in ("wall_time", "started")}
            for rec in _read_lines(path)
        ]

    assert strip(first) == strip(second)


def test_verify_exit_codes(tmp_path, capsys):
    # impossible tolerance: honest failures, exit 1
    out = tmp_path / "fail.jsonl"
    code = main(
        ["verify", "--suite", "detp", "--seed", "0",
         "--tolerance", "series=0", "--out", str(out)]
    )
    assert code == 1
    assert _read_lines(out)[-1]["pass"] is False
    # unknown suite is a usage error
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2
    # malformed tolerance syntax is a usage error
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "detp", "--tolerance", "series"])
    assert exc.value.code == 2
    capsys.readouterr()
    # unknown tolerance key is a domain error
    assert main(["verify", "--suite", "detp", "--tolerance", "bogus=1"]) == 4


def test_compute_detp_fixture(tmp_path, capsys):
    matrix = _write_matrix(tmp_path / "a.json", np.diag([0.5, 0.0]))
    assert main(["compute", "detp", "--p", "2", "--matrix", matrix]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "detp"
    assert payload["order"] == 2
    np.testing.assert_allclose(payload["value"], [1.5 * math.exp(-0.5), 0.0], atol=1e-12)


def test_compute_usage_format_and_domain_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "detp"])  # missing --matrix
    assert exc.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["compute", "detp", "--matrix", str(bad)]) == 3
    wrong = tmp_path / "wrong.json"
    dump_json({"rows": 1, "cols": 2, "data": [[1.0, 0.0]]}, wrong)
    assert main(["compute", "detp", "--matrix", str(wrong)]) == 3
    capsys.readouterr()
    matrix = _write_matrix(tmp_path / "a.json", np.diag([0.5, 0.0]))
    assert main(["compute", "detp", "--matrix", matrix, "--p", "0"]) == 4


def test_compute_omega(tmp_path, capsys):
    a = _write_matrix(tmp_path / "a.json", np.diag([0.1]))
    b = _write_matrix(tmp_path / "b.json", np.diag([0.1]))
    assert main(["compute", "omega", "--p", "2", "--matrix-a", a, "--matrix-b", b]) == 0
    payload = json.loads(capsys.readouterr().out)
    np.testing.assert_allclose(
        payload["value"], [1.1 * math.exp(-0.11), 0.0], atol=1e-12
    )


def test_compute_schwinger(tmp_path, capsys):
    r = np.array([[0.0, 1.0], [0.0, 0.0]])
    x = _write_matrix(tmp_path / "x.json", r - r.T)
    y = _write_matrix(tmp_path / "y.json", 1j * (r + r.T))
    pol = tmp_path / "pol.json"
    dump_json({"dim": 2, "plus_dim": 1}, pol)
    args = ["compute", "schwinger", "--matrix-x", x, "--matrix-y", y, "--pol", str(pol)]
    assert main(args) == 0
    payload = json.loads(capsys.readouterr().out)
    np.testing.assert_allclose(payload["value"], [0.0, -2.0], atol=1e-12)
    assert payload["residue"] <= 1e-9
    capsys.readouterr()
    assert main(args + ["--modes", "3"]) == 4


def test_compute_h2(tmp_path, capsys):
    gfile = tmp_path / "bz2.json"
    dump_json(groupoid_to_obj(point_groupoid(cyclic_group(2))), gfile)
    assert main(["compute", "h2", "--groupoid", str(gfile), "--modulus", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["orders"] == [2]
    assert payload["order"] == 2
    assert payload["trivial"] is False
    capsys.readouterr()
    assert main(["compute", "h2", "--groupoid", str(gfile), "--modulus", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["trivial"] is True


def test_generate_is_byte_deterministic(tmp_path):
    for kind in ("random-hermitian", "random-unital", "random-action-groupoid",
                 "refined-cover"):
        one = tmp_path / "one.json"
        two = tmp_path / "two.json"
        other = tmp_path / "other.json"
        assert main(["generate", kind, "--seed", "11", "--out", str(one)]) == 0
        assert main(["generate", kind, "--seed", "11", "--out", str(two)]) == 0
        assert main(["generate", kind, "--seed", "12", "--out", str(other)]) == 0
        assert one.read_bytes() == two.read_bytes()
        assert one.read_bytes() != other.read_bytes()


def test_generate_outputs_are_well_formed(tmp_path):
    hfile = tmp_path / "h.json"
    main(["generate", "random-hermitian", "--seed", "2", "--modes", "5", "--out", str(hfile)])
    h = matrix_from_obj(load_json(hfile))
    assert h.shape == (5, 5)
    np.testing.assert_allclose(h, h.conj().T)
    ufile = tmp_path / "u.json"
    main(["generate", "random-unital", "--seed", "2", "--modes", "5", "--out", str(ufile)])
    m = matrix_from_obj(load_json(ufile))
    assert np.max(np.abs(np.linalg.eigvals(m))) <= 0.5 + 1e-12
    gfile = tmp_path / "g.json"
    main(["generate", "random-action-groupoid", "--seed", "2", "--out", str(gfile)])
    assert axioms_check(groupoid_from_obj(load_json(gfile))) == []


def test_generate_capacity_errors(capsys):
    assert main(["generate", "random-hermitian", "--modes", "0"]) == 4
    assert main(["generate", "random-hermitian", "--modes", "65"]) == 4
    assert main(["generate", "refined-cover", "--modulus", "1"]) == 4


def test_compute_glue_roundtrip(tmp_path, capsys):
    cover = tmp_path / "cover.json"
    assert main(["generate", "refined-cover", "--seed", "5", "--out", str(cover)]) == 0
    file_modulus = load_json(cover)["modulus"]
    assert main(["compute", "glue", "--data", str(cover)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "glue"
    assert payload["modulus"] == file_modulus
    assert payload["centrality"] == 0.0
    assert payload["class_matches_source"] is True
    assert payload["class"]["orders"] == payload["source_class"]["orders"]
    capsys.readouterr()
    assert main(["compute", "glue", "--data", str(cover),
                 "--modulus", str(file_modulus + 1)]) == 4


def test_report_merges_and_propagates_failure(tmp_path, capsys):
    good_a = tmp_path / "a.jsonl"
    good_b = tmp_path / "b.jsonl"
    main(["verify", "--suite", "detp", "--seed", "1", "--out", str(good_a)])
    main(["verify", "--suite", "detp", "--seed", "2", "--out", str(good_b)])
    merged_out = tmp_path / "merged.jsonl"
    assert main(["report", str(good_a), str(good_b), "--out", str(merged_out)]) == 0
    records = _read_lines(merged_out)
    merged = records[-1]
    assert merged["kind"] == "merged"
    assert merged["pass"] is True
    assert len(merged["suites"]) == 2
    # both runs of the same suite are retained, with their timestamps
    assert [s["suite"] for s in merged["suites"]] == ["detp", "detp"]
    assert all("started" in s for s in merged["suites"])
    summaries = [r for r in records if r["kind"] == "summary"]
    assert merged["cases"] == sum(s["cases"] for s in summaries)

    bad = tmp_path / "bad.jsonl"
    main(["verify", "--suite", "detp", "--seed", "1",
          "--tolerance", "series=0", "--out", str(bad)])
    assert main(["report", str(good_a), str(bad)]) == 1
    capsys.readouterr()


def test_report_format_errors(tmp_path, capsys):
    junk = tmp_path / "junk.jsonl"
    junk.write_text("not json at all\n")
    assert main(["report", str(junk)]) == 3
    empty = tmp_path / "empty.jsonl"
    empty.write_text(json.dumps({"kind": "case"}) + "\n")
    assert main(["report", str(empty)]) == 3
    assert main(["report", str(tmp_path / "missing.jsonl")]) == 3
    capsys.readouterr()


def test_text_formats(tmp_path, capsys):
    matrix = _write_matrix(tmp_path / "a.json", np.diag([0.5, 0.0]))
    assert main(["compute", "detp", "--matrix", matrix, "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("kind: detp")
    report_file = tmp_path / "r.jsonl"
    main(["verify", "--suite", "detp", "--seed", "1", "--out", str(report_file)])
    assert main(["report", str(report_file), "--format", "text"]) == 0
    assert "merged:" in capsys.readouterr().out
