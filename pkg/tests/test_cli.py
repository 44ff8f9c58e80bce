import json

import pytest

from strongmonads.cli import main
from strongmonads.simplicial import SimplicialChainComplex
from strongmonads.chain import ChainComplex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines()]


@pytest.mark.parametrize(
    "argv",
    [
        ["--suite", "laws", "--monad", "tensor:eps"],
        ["--suite", "laws", "--monad", "identity", "--context", "FPAb"],
        ["--suite", "bar", "--monad", "tensor:Lambda", "--trunc", "3"],
        ["--suite", "gabriel"],
        ["--suite", "morita"],
        ["--suite", "realize", "--preset", "bar-lambda", "--trunc", "3"],
    ],
)
def test_suites_pass(capsys, argv):
    code, records = run(capsys, *argv)
    assert code == 0
    *body, footer = records
    assert body and all(r["pass"] for r in body)
    assert set(body[0]) == {"suite", "check", "anchor", "instance", "bound", "pass", "witness"}
    assert footer["summary"]["failed"] == 0
    assert footer["summary"]["records"] == len(body)


def test_tensoralg_bar_reports_failure(capsys):
    code, records = run(capsys, "--suite", "bar", "--monad", "tensoralg")
    assert code == 1
    assert records[-1]["summary"]["failed"] >= 1


def test_empty_realization_is_zero(capsys):
    code, records = run(capsys, "--suite", "realize", "--preset", "empty", "--trunc", "3")
    assert code == 0
    real = next(r for r in records if r.get("check") == "geometric realization")
    assert real["witness"]["homology"] == [0, 0, 0]


def test_realize_from_file_matches_preset(tmp_path, capsys):
    path = tmp_path / "x.json"
    X = SimplicialChainComplex.constant(ChainComplex.point("Q", 0, 1), 3)
    path.write_text(json.dumps(X.to_json()))
    code, from_file = run(capsys, "--suite", "realize", "--input", str(path), "--trunc", "3")
    assert code == 0
    _, preset = run(capsys, "--suite", "realize", "--preset", "constant", "--trunc", "3")
    strip = lambda rs: [{k: v for k, v in r.items() if k != "instance"} for r in rs[:-1]]
    assert strip(from_file) == strip(preset)


@pytest.mark.parametrize(
    "argv",
    [
        ["--suite", "laws", "--monad", "tensor:nope"],
        ["--suite", "realize", "--preset", "nope"],
        ["--suite", "laws", "--trunc", "1"],
        ["--suite", "bar", "--monad", "tensor:C2"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    assert main(argv) == 2
    assert "strongmonads:" in capsys.readouterr().err


def test_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["--suite", "realize", "--input", str(path)]) == 2
    path.write_text(json.dumps({"N": 2}))
    assert main(["--suite", "realize", "--input", str(path)]) == 2


def test_argparse_rejects_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "nope"])
    assert exc.value.code == 2


def test_out_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    argv = ["--suite", "excisive", "--seed", "c0ffee"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text().splitlines()[-1])["summary"]["seed"] == "0xc0ffee"


def test_seed_changes_excisive_instances(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    main(["--suite", "excisive", "--seed", "1", "--out", str(a)])
    main(["--suite", "excisive", "--seed", "2", "--out", str(b)])
    assert a.read_text() != b.read_text()
