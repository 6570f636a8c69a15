import json
import subprocess
import sys

import pytest
from gmpy2 import mpq

from orbigw import __version__, cli, exactalg
from orbigw.exactalg import PuiseuxPoly


def _run(tmp_path, capsys, command, config=None):
    argv = [command]
    if config is not None:
        path = tmp_path / "config.json"
        path.write_text(config if isinstance(config, str) else json.dumps(config))
        argv.append(str(path))
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


LINE_GENUS1 = {"group": [], "action": [[]], "genus": 1, "insertions": [{"a": 0, "tag": "unit_bar_h", "label": []}]}


def test_correlator_document(tmp_path, capsys):
    code, doc, _ = _run(tmp_path, capsys, "correlator", LINE_GENUS1)
    assert code == 0
    assert doc["version"] == __version__
    assert doc["result"] == [{"exponents": ["-1"], "coeff": ["-1/24"]}]
    assert doc["graph_count"] == 3
    assert sum(doc["aut_histogram"].values()) == 3
    assert PuiseuxPoly.from_records(doc["result"], 1, 1) == PuiseuxPoly.variable(1, 1, 0, -1) * mpq(-1, 24)


def test_correlator_with_oracle_and_graphs(tmp_path, capsys):
    config = {
        "group": [3],
        "action": [[1], [1], [1]],
        "genus": 0,
        "insertions": [
            {"a": 0, "tag": "unit_bar_h", "label": [1]},
            {"series": [{"a": 1, "tag": "phi_bar", "label": [2], "coeff": "2/3"}, {"a": 0, "tag": "unit_h", "label": [2]}]},
        ],
        "unordered": {"count": 2, "series": [{"a": 0, "tag": "phi", "label": [0]}]},
        "verify_oracle": True,
        "emit_graphs": True,
    }
    code, doc, _ = _run(tmp_path, capsys, "correlator", config)
    assert code == 0
    assert doc["oracle"]["equal"] is True
    assert doc["oracle"]["result"] == doc["result"]
    assert len(doc["graphs"]) == doc["graph_count"]
    assert all("weight" in g and g["aut"] >= 1 for g in doc["graphs"])


def test_twisted_normalization(tmp_path, capsys):
    config = {
        "group": [3],
        "action": [[1], [1], [1]],
        "genus": 0,
        "normalization": "twisted",
        "insertions": [{"a": 0, "tag": "unit_h", "label": [1]}] * 3,
        "verify_oracle": True,
    }
    code, doc, _ = _run(tmp_path, capsys, "correlator", config)
    assert code == 0
    assert doc["result_text"] == "1/3"


def test_results_are_deterministic(tmp_path, capsys):
    first = _run(tmp_path, capsys, "correlator", LINE_GENUS1)[1]
    second = _run(tmp_path, capsys, "correlator", LINE_GENUS1)[1]
    assert first == second


def test_oracle_mismatch_exits_nonzero(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(cli, "oracle_value", lambda job: PuiseuxPoly.constant(1, 1, 7))
    code, doc, err = _run(tmp_path, capsys, "correlator", {**LINE_GENUS1, "verify_oracle": True})
    assert code != 0
    assert doc["oracle"]["equal"] is False
    assert "oracle mismatch" in err and "7" in err and "-1/24" in err


def test_graphs_command(tmp_path, capsys):
    config = {"group": [2], "action": [[1]], "genus": 0, "insertions": [{"a": 0, "tag": "phi", "label": [0]}] * 4}
    code, doc, _ = _run(tmp_path, capsys, "graphs", config)
    assert code == 0
    assert doc["version"] == __version__
    assert doc["graph_count"] == len(doc["graphs"])
    assert sum(doc["aut_histogram"].values()) == doc["graph_count"]


@pytest.mark.parametrize(
    "config, fragment",
    [
        ('{"group": [2], "action": [[1]], "genus": 0.5}', "floating-point"),
        ('{"group": [2], "action": [[1]]}', "genus"),
        ('{"group": [2], "action": [[1]], "genus": 0, "insertions": [{"a": 0, "tag": "psi", "label": [1]}]}', "tag"),
        ('{"group": [2], "action": [[1]], "genus": 0, "insertions": [{"a": 0, "tag": "phi", "label": [1, 1]}]}', "label"),
        ('{"group": [2], "action": [[1, 0]], "genus": 0}', "orbifold"),
        ('{"group": [2], "action": [[1]], "genus": 2, "insertions": [{"a": 4, "tag": "phi", "label": [0]}], "truncation": {"order": 1}}', "truncation"),
        ('{"group": [2], "action": [[1]], "genus": 1}', "unstable"),
        ("not json", "invalid JSON"),
    ],
)
def test_bad_configs_exit_2(tmp_path, capsys, config, fragment):
    code, doc, err = _run(tmp_path, capsys, "correlator", config)
    assert code == 2
    assert doc["version"] == __version__
    assert fragment in doc["error"]


def test_selfcheck_quick_passes(capsys):
    code = cli.main(["selfcheck"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["passed"] is True
    assert doc["version"] == __version__
    assert {c["name"] for c in doc["checks"]} >= {"oracle equality", "R symplecticity", "psi closed forms"}


def test_selfcheck_catches_corrupted_bernoulli_polynomial(capsys, monkeypatch):
    good = exactalg.bernoulli_coefficients(3)
    monkeypatch.setitem(exactalg._bernoulli_polys, 3, (good[0] + 1,) + good[1:])
    code = cli.main(["selfcheck"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 1
    failed = {c["name"] for c in doc["checks"] if not c["passed"]}
    # the corrupted polynomial breaks reflection directly and the edge numerators downstream
    assert "Bernoulli reflection" in failed and "oracle equality" in failed
    bad = next(c for c in doc["checks"] if c["name"] == "Bernoulli reflection")
    assert bad["failures"][0]["module"] == "exactalg"


def test_module_entry_point(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(LINE_GENUS1))
    done = subprocess.run([sys.executable, "-m", "orbigw", "correlator", str(path)], capture_output=True, text=True)
    assert done.returncode == 0
    assert json.loads(done.stdout)["result_text"] == "-1/24*w1^(-1)"
    version = subprocess.run([sys.executable, "-m", "orbigw", "--version"], capture_output=True, text=True)
    assert __version__ in version.stdout
