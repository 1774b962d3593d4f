import json

import pytest

from kstrong import io as kio
from kstrong.cli import load_table1, main
from kstrong.constructions import build_P, two_strong_b5
from kstrong.pls import back_circulant


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def test_construct_text(capsys):
    code, out, _ = run(capsys, "construct", "--name", "P", "--n", "5")
    assert code == 0
    assert kio.pls_from_text(out) == build_P(5)


def test_construct_to_file(tmp_path, capsys):
    path = tmp_path / "q.txt"
    code, out, _ = run(capsys, "construct", "--name", "Q", "--n", "11", "--out", str(path))
    assert code == 0 and "40 triples" in out
    code, data = structured(capsys, "construct", "--name", "C", "--n", "6", "--k", "2")
    assert code == 0 and len(data["triples"]) == 18


def test_construct_errors(capsys):
    assert run(capsys, "construct", "--name", "Qk", "--n", "5")[0] == 2
    assert run(capsys, "construct", "--name", "C", "--n", "5")[0] == 2
    assert run(capsys, "construct", "--name", "Q", "--n", "2")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["construct", "--name", "Z", "--n", "3"])
    assert info.value.code == 2


def test_witness(capsys):
    code, data = structured(capsys, "witness", "--set", "P", "--n", "11", "--cell", "0,3")
    assert code == 0 and data["hits"] == 2
    code, data = structured(capsys, "witness", "--set", "Q", "--n", "11", "--cell", "5,9")
    assert code == 0 and data["hits"] == 1 and data["route"] == "two-row"
    assert run(capsys, "witness", "--set", "Q", "--n", "11", "--cell", "0,0")[0] == 2
    assert run(capsys, "witness", "--set", "P", "--n", "11", "--cell", "zz")[0] == 2


def test_verify_exit_codes(tmp_path, capsys):
    f = tmp_path / "f5.txt"
    kio.write_pls(two_strong_b5(), f)
    assert run(capsys, "verify", "k-strong", "--square", "Bn:5", "--set", str(f), "--k", "2")[0] == 0
    code, data = structured(capsys, "verify", "k-strong", "--square", "Bn:5", "--set", str(f), "--k", "3")
    assert code == 1 and data["verdict"] is False and "violating_trade" in data
    assert run(capsys, "verify", "defining-set", "--square", "Bn:5", "--set", str(f))[0] == 0
    assert run(capsys, "verify", "minimal", "--square", "Bn:5", "--set", str(f), "--k", "2")[0] == 0
    assert run(capsys, "verify", "minimal", "--square", "Bn:5", "--set", str(f), "--k", "3")[0] == 1
    assert run(capsys, "verify", "k-strong", "--square", "Bn:5", "--set", str(f))[0] == 2
    assert run(capsys, "verify", "k-strong", "--square", "Bn:4", "--set", str(f), "--k", "1")[0] == 2


def test_trades_commands(tmp_path, capsys):
    code, data = structured(capsys, "trades", "enumerate", "--square", "Bn:3", "--minimal")
    assert code == 0 and data["count"] > 0
    code, out, _ = run(capsys, "trades", "smallest", "--square", "Bn:5")
    assert code == 0 and out.strip() == "8"
    good = tmp_path / "t.json"
    run(capsys, "witness", "--set", "P", "--n", "7", "--cell", "0,1", "--out", str(good))
    assert run(capsys, "trades", "validate", str(good))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "T": [[0, 0, 0]], "T_mate": [[0, 0, 1]]}')
    assert run(capsys, "trades", "validate", str(bad))[0] == 1
    assert run(capsys, "trades", "smallest")[0] == 2


def test_tess_pipeline(tmp_path, capsys):
    tf = tmp_path / "e11.json"
    assert run(capsys, "tess", "build", "--kind", "e11", "--out", str(tf))[0] == 0
    assert run(capsys, "tess", "validate", str(tf))[0] == 0
    code, out, _ = run(capsys, "tess", "compile", str(tf))
    assert code == 0 and "(0,0) 0 -> 4" in out.splitlines()
    svg = tmp_path / "e11.svg"
    assert run(capsys, "tess", "render", str(tf), "--svg", str(svg))[0] == 0
    assert svg.read_text().count("<polygon") == 12
    assert run(capsys, "tess", "build", "--kind", "doubletool", "--m", "3")[0] == 2
    assert run(capsys, "tess", "build", "--kind", "doubletool", "--m", "3", "--n", "11")[0] == 2
    single = tmp_path / "one.json"
    single.write_text('{"region": {"kind": "En", "n": 2}, "triangles": [{"rv": [0, 0], "k": 2}]}')
    assert run(capsys, "tess", "validate", str(single))[0] == 0
    assert run(capsys, "tess", "compile", str(single))[0] == 2


def test_search_and_certificate(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, data = structured(capsys, "search", "--square", "Bn:4", "--k", "2", "--cert", str(cert))
    assert code == 0 and data["optimum"] == 8 and data["exact"]
    saved = json.loads(cert.read_text())
    assert saved["optimum"] == 8 and len(saved["witness"]["triples"]) == 8
    code, data = structured(capsys, "search", "--square", "Bn:5", "--k", "3", "--pool-only")
    assert code == 0 and data["lower_bound"] <= 12
    assert run(capsys, "search", "--square", "Bn:5", "--k", "1", "--budget", "1")[0] == 1


def test_chain_and_render(tmp_path, capsys):
    code, data = structured(capsys, "chain", "--square", "Bn:3")
    assert code == 0 and data["sizes"] == [3, 4, 6, 7, 8, 9]
    f = tmp_path / "p.txt"
    kio.write_pls(build_P(11), f)
    svg = tmp_path / "p.svg"
    assert run(capsys, "render", str(f), "--svg", str(svg))[0] == 0
    assert svg.read_text().count('fill="#d9d9d9"') == 55


def test_reproduce_table1_small(capsys):
    code, data = structured(capsys, "reproduce-table1", "--n-max", "4")
    assert code == 0 and data["mismatches"] == 0
    assert data["table"]["4"]["computed"] == [4, 8, 12, 16]
    assert load_table1()[5] == [6, 9, 12, 15, 19, 20, 24, 25]


def test_manifest_is_reproducible(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("KSTRONG_WORKERS", "3")
    digests = []
    for i in range(2):
        man = tmp_path / f"m{i}.json"
        run(capsys, "search", "--square", "Bn:3", "--k", "2", "--manifest", str(man))
        obj = json.loads(man.read_text())
        assert obj["workers"] == 3 and obj["inputs"] == {"Bn:3": "inline"}
        digests.append(obj["result_digest"])
    monkeypatch.setenv("KSTRONG_WORKERS", "1")
    man = tmp_path / "m2.json"
    run(capsys, "search", "--square", "Bn:3", "--k", "2", "--manifest", str(man))
    digests.append(json.loads(man.read_text())["result_digest"])
    assert len(set(digests)) == 1


def test_missing_file_is_usage_error(tmp_path, capsys):
    code, _, err = run(capsys, "render", str(tmp_path / "nope.txt"), "--svg", str(tmp_path / "x.svg"))
    assert code == 2 and "ParseError" in err
