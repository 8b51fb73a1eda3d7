import json

import pytest

from qcanon import TensorModule
from qcanon.cli import load_config, main
from qcanon.qarith import RatQ
from qcanon.verify import vector_from_json

from _fixtures import SL3


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


SL3_ADJ = {"vertices": ["i", "j"], "edges": [["i", "j"]], "highest_weights": [{"i": 1, "j": 1}], "depth": 4}
SL3_PAIR = {"vertices": ["i", "j"], "edges": [["i", "j"]], "highest_weights": [{"i": 1}, {"j": 1}], "depth": 4}
SL2_PAIR = {"vertices": ["i"], "edges": [], "highest_weights": [{"i": 1}, {"i": 1}], "depth": 3}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_canon_counts(tmp_path, capsys):
    code, out, _ = run(capsys, "--config", write(tmp_path, "a.json", SL3_ADJ), "canon")
    data = json.loads(out)
    assert code == 0
    assert data["summary"] == {"elements": 8, "contents": 7, "certified": True}
    code, out, _ = run(capsys, "--config", write(tmp_path, "b.json", SL3_PAIR), "canon")
    assert json.loads(out)["summary"]["elements"] == 9


def test_canon_empty_sequence(tmp_path, capsys):
    cfg = dict(SL3_ADJ, highest_weights=[])
    code, out, _ = run(capsys, "--config", write(tmp_path, "e.json", cfg), "canon")
    assert code == 0 and json.loads(out)["summary"]["elements"] == 1


def test_canon_output_deterministic_and_roundtrips(tmp_path, capsys):
    path = write(tmp_path, "a.json", SL3_PAIR)
    _, first, _ = run(capsys, "--config", path, "canon")
    _, second, _ = run(capsys, "--config", path, "--oracle", "check", "canon")
    assert first == second
    _, again, _ = run(capsys, "--config", path, "canon")
    assert first == again
    cfg = load_config(SL3_PAIR)
    tm = cfg.module()
    for space in json.loads(first)["spaces"]:
        for entry in space["basis"]:
            v = vector_from_json(tm, entry["word_expansion"])
            assert json.loads(json.dumps(entry["word_expansion"])) == entry["word_expansion"]
            assert v.nu == SL3.weight(space["nu"])
            assert all(isinstance(RatQ.from_json(c), RatQ) for c in entry["standard_expansion"])


def test_verify_exit_codes(tmp_path, capsys):
    code, out, _ = run(capsys, "--config", write(tmp_path, "s.json", SL2_PAIR), "verify")
    assert code == 0 and json.loads(out)["summary"]["fail"] == 0
    bad = {"vertices": ["i", "j"], "matrix": [[2, -1], [-2, 2]], "highest_weights": []}
    code, _, err = run(capsys, "--config", write(tmp_path, "bad.json", bad), "verify")
    assert code == 2 and "matrix not symmetric" in err
    code, _, _ = run(capsys, "--config", write(tmp_path, "s.json", SL2_PAIR), "--depth", "0", "verify")
    assert code == 0


def test_gram_top_element(tmp_path, capsys):
    code, out, _ = run(capsys, "--config", write(tmp_path, "a.json", SL3_ADJ), "--format", "pretty", "gram", "--vector", "F_i F_j^(2) F_i")
    assert code == 0 and out.strip().splitlines()[-1] == "1"


def test_bar_shows_correction(tmp_path, capsys):
    code, out, _ = run(capsys, "--config", write(tmp_path, "s.json", SL2_PAIR), "--format", "pretty", "bar", "--vector", "eta x F_i eta")
    assert code == 0
    assert out.strip() == "Psi(η ⊗ F_iη) = η ⊗ F_iη + (-q + q^-1) F_iη ⊗ η"


def test_act_table(tmp_path, capsys):
    code, out, _ = run(capsys, "--config", write(tmp_path, "s.json", SL2_PAIR), "act", "--gen", "E_i", "--nu", "i=1")
    data = json.loads(out)
    assert code == 0
    exps = [[RatQ.from_json(c).pretty() for c in r["canonical_expansion"]] for r in data["results"]]
    assert exps == [["q + q^-1"], ["1"]]


def test_out_of_depth(tmp_path, capsys):
    code, _, err = run(capsys, "--config", write(tmp_path, "s.json", SL2_PAIR), "gram", "--nu", "i=5")
    assert code == 2 and "raise --depth" in err


@pytest.mark.parametrize("argv", [["gram", "--vector", "G_i"], ["gram", "--vector", "F_k"], ["gram"]])
def test_input_errors(tmp_path, capsys, argv):
    code, _, _ = run(capsys, "--config", write(tmp_path, "s.json", SL2_PAIR), *argv)
    assert code == 2


def test_out_file(tmp_path, capsys):
    out = tmp_path / "o.json"
    code, _, _ = run(capsys, "--config", write(tmp_path, "s.json", SL2_PAIR), "--out", str(out), "canon")
    assert code == 0 and json.loads(out.read_text())["summary"]["elements"] == 4


def test_module_from_config():
    tm = load_config(SL2_PAIR).module()
    assert isinstance(tm, TensorModule) and tm.length == 2
