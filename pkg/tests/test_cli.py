import csv
import io
import json

import numpy as np

from mesphase.cli import main
from mesphase.states import Ket, is_mes


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


# -- gen-mub ----------------------------------------------------------------


def test_gen_mub_json_structure(capsys):
    code, out, _ = run(capsys, "gen-mub", "--d", "3")
    assert code == 0
    data = json.loads(out)
    assert data["d"] == 3
    assert len(data["bases"]) == 4
    for basis in data["bases"]:
        assert len(basis["states"]) == 3


def test_gen_mub_rejects_bad_dimensions(capsys):
    for bad in ("2", "9"):
        code, _, err = run(capsys, "gen-mub", "--d", bad)
        assert code == 2
        assert "odd prime" in err


def test_gen_mub_csv(capsys):
    code, out, _ = run(capsys, "gen-mub", "--d", "3", "--format", "csv")
    assert code == 0
    header, rows = parse_csv(out)
    assert header[:2] == ["b", "m"]
    assert len(rows) == 12  # d(d+1) states


# -- gen-mes ----------------------------------------------------------------


def test_gen_mes_emits_d_squared_states(capsys):
    code, out, _ = run(capsys, "gen-mes", "--d", "3", "--b", "cb", "--b-prime", "cb")
    assert code == 0
    data = json.loads(out)
    assert len(data["states"]) == 9
    assert data["b"] == "cb"


def test_gen_mes_round_trip_reverifies(capsys):
    # parse the emitted kets back and re-check the defining properties offline
    code, out, _ = run(capsys, "gen-mes", "--d", "3", "--b", "1", "--b-prime", "0")
    assert code == 0
    data = json.loads(out)
    kets = [Ket.from_json(s["ket"]) for s in data["states"]]
    vecs = np.array([k.amplitudes for k in kets])
    assert np.abs(vecs.conj() @ vecs.T - np.eye(9)).max() < 1e-10
    for k in kets:
        assert is_mes(k, 1e-10)


def test_gen_mes_rejects_bad_label(capsys):
    code, _, err = run(capsys, "gen-mes", "--d", "3", "--b", "7")
    assert code == 2
    assert "label" in err


# -- verify -----------------------------------------------------------------


def test_verify_single_dimension_passes(capsys):
    code, out, err = run(capsys, "verify", "--d", "3")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["check", "d", "params", "max_error", "pass"]
    assert all(row[-1] == "true" for row in rows)
    assert "checks passed" in err


def test_verify_lines_suite_row_count(capsys):
    code, out, _ = run(capsys, "verify", "--d", "5", "--suite", "lines")
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 30  # 6 orientations x 5 offsets


def test_verify_impossible_tolerance_fails(capsys):
    code, out, _ = run(capsys, "verify", "--d", "3", "--suite", "mub", "--tol", "1e-30")
    assert code == 1
    _, rows = parse_csv(out)
    failed = [row for row in rows if row[-1] == "false"]
    assert failed
    # reported errors sit near machine epsilon, far above the absurd tolerance
    for row in failed:
        assert 0.0 < float(row[3]) < 1e-12


def test_verify_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "--d", "3", "--suite", "collective")
    _, second, _ = run(capsys, "verify", "--d", "3", "--suite", "collective")
    assert first == second


def test_verify_json_format(capsys):
    code, out, _ = run(capsys, "verify", "--d", "3", "--suite", "mub", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["all_pass"] is True
    assert data["dims"] == [3]
    assert all("runtime_ms" not in row for row in data["rows"])


def test_verify_timing_flag_adds_column(capsys):
    code, out, _ = run(capsys, "verify", "--d", "3", "--suite", "mub", "--timing")
    assert code == 0
    header, _ = parse_csv(out)
    assert header[-1] == "runtime_ms"


def test_verify_env_var_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("MESPHASE_TOL", "1e-30")
    code, _, _ = run(capsys, "verify", "--d", "3", "--suite", "mub")
    assert code == 1
    # explicit flag wins over the environment
    code, _, _ = run(capsys, "verify", "--d", "3", "--suite", "mub", "--tol", "1e-10")
    assert code == 0


def test_verify_writes_file(tmp_path, capsys):
    out_file = tmp_path / "report.csv"
    code, out, _ = run(capsys, "verify", "--d", "3", "--suite", "mub", "--out", str(out_file))
    assert code == 0
    assert out == ""
    header, rows = parse_csv(out_file.read_text())
    assert header[0] == "check" and rows


# -- hop ----------------------------------------------------------------------


def test_hop_known_word(capsys):
    code, out, _ = run(capsys, "hop", "--d", "7", "--q", "1", "--p", "2", "--word", "Xc^2 Xr^6")
    assert code == 0
    header, rows = parse_csv(out)
    final = {row[0]: row for row in rows}
    assert final["symbolic"][2:5] == ["3", "2", "5"]
    assert final["dense"][2:5] == ["3", "2", "5"]
    assert final["dense"][6] == "true"


def test_hop_empty_word(capsys):
    code, out, _ = run(capsys, "hop", "--d", "5", "--q", "2", "--p", "3", "--word", "")
    assert code == 0
    _, rows = parse_csv(out)
    final = {row[0]: row for row in rows}
    assert final["symbolic"][2:5] == ["2", "3", "0"]


def test_hop_malformed_word(capsys):
    code, _, err = run(capsys, "hop", "--d", "7", "--q", "0", "--p", "0", "--word", "Xq^2")
    assert code == 2
    assert "bad factor" in err


def test_hop_json(capsys):
    code, out, _ = run(
        capsys, "hop", "--d", "7", "--q", "1", "--p", "2", "--word", "Xc^2 Xr^6",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["symbolic"] == {"q": 3, "p": 2, "phase_exponent": 5}
    assert data["agree"] is True


# -- lines ----------------------------------------------------------------------


def test_lines_table(capsys):
    code, out, _ = run(capsys, "lines", "--d", "5")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == [
        "d", "b", "m", "schmidt_rank_ok", "factor_label_b", "factor_label_m",
        "global_phase_exponent", "max_error",
    ]
    assert len(rows) == 30
    assert all(row[3] == "true" for row in rows)


def test_lines_alt_realization(capsys):
    code, out, _ = run(capsys, "lines", "--d", "3", "--alt-realization", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["realization"] == "alt"
    assert len(data["rows"]) == 12


# -- usage ------------------------------------------------------------------------


def test_usage_error_exit_code(capsys):
    assert main(["verify", "--suite", "nonsense"]) == 2
    assert main([]) == 2


def test_version_flag(capsys):
    assert main(["--version"]) == 0
