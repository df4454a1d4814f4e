import json

import pytest

from seqbin.cli import main

WORKED = '{"n":[2],"x":[[1,2],[1,2]],"C":{"kind":"eq"},"B":{"kind":"leq"}}'


@pytest.fixture
def write(tmp_path):
    def _write(text, name="inst.json"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_propagate_worked_file(capsys, write):
    code, out, _ = run(capsys, "propagate", write(WORKED))
    assert code == 0
    assert '"x":[[1],[2]]' in out
    assert json.loads(out)["status"] == "ok"


def test_propagate_infeasible(capsys, write):
    code, out, _ = run(capsys, "propagate", write(WORKED.replace('"n":[2]', '"n":[5]')))
    assert code == 1
    assert json.loads(out)["status"] == "fail"


@pytest.mark.parametrize("text", [
    '{"n":[2],"x":[[1,2]',
    '{"n":[],"x":[[1]],"C":{"kind":"eq"},"B":{"kind":"true"}}',
    '[1, 2]',
])
def test_propagate_malformed(capsys, write, text):
    code, out, err = run(capsys, "propagate", write(text))
    assert code == 2 and out == "" and "error" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "propagate", str(tmp_path / "nope.json"))[0] == 2


def test_non_monotonic_b(capsys, write):
    text = '{"n":[1],"x":[[1,2],[1,2]],"C":{"kind":"eq"},"B":{"kind":"neq"}}'
    code, _, err = run(capsys, "propagate", write(text))
    assert code == 2 and "monotonic" in err


def test_oracle(capsys, write):
    code, out, _ = run(capsys, "oracle", write(WORKED))
    assert code == 0 and json.loads(out) == {"status": "ok", "n": [2], "x": [[1], [2]]}


def test_oracle_cap_exceeded(capsys, write):
    code, _, err = run(capsys, "--cap", "2", "oracle", write(WORKED))
    assert code == 2 and "cap" in err


def test_global_flags_after_subcommand(capsys, write):
    code, out, _ = run(capsys, "oracle", write(WORKED), "--format", "text")
    assert code == 0 and "x[1]: [2]" in out


def test_catalog_file(capsys, write):
    text = '{"n":[1],"x":[[1,2],[1,2]],"constraint":"change","ctr":{"kind":"eq"}}'
    code, out, _ = run(capsys, "propagate", write(text))
    assert code == 0 and json.loads(out)["n"] == [1]
    code, out, _ = run(capsys, "check", write(text))
    assert code == 0 and json.loads(out)["verdicts"]["EQUAL"] == 1


def test_check_random_increasing_nvalue_all_equal(capsys):
    code, out, _ = run(capsys, "--seed", "7", "check", "--random", "--n", "4", "--d", "4",
                       "--family", "increasing_nvalue", "--count", "60")
    report = json.loads(out)
    assert code == 0 and report["verdicts"]["EQUAL"] == 60


def test_check_random_eq_never_unsound(capsys):
    code, out, _ = run(capsys, "--seed", "3", "check", "--random", "--n", "4", "--d", "4",
                       "--family", "eq", "--count", "60")
    report = json.loads(out)
    assert code == 0 and report["verdicts"]["UNSOUND"] == 0
    for item in report["details"]:
        assert item["verdict"] == "SOUND-SUPERSET" and item["diffs"]


def test_check_flags_unsound(capsys, write, monkeypatch):
    import seqbin.cli as cli
    real = cli._propagate

    def lossy(inst):
        out = real(inst)
        out.x_domains = (out.x_domains[0].remove(1),) + out.x_domains[1:]
        return out

    monkeypatch.setattr(cli, "_propagate", lossy)
    code, out, _ = run(capsys, "check", write(WORKED))
    report = json.loads(out)
    assert code == 1 and report["verdicts"]["UNSOUND"] == 1
    assert report["details"][0]["diffs"] == ["x[0]: removed supported values [1]"]


def test_check_cap_exceeded(capsys):
    code, _, _ = run(capsys, "--cap", "5", "check", "--random", "--count", "3")
    assert code == 2


def test_check_needs_input(capsys):
    assert run(capsys, "check")[0] == 2


def test_same_seed_same_bytes(capsys):
    # eq batches produce superset details, so the output depends on the seed
    argv = ["--seed", "11", "check", "--random", "--family", "eq", "--count", "100"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second and json.loads(first)["details"]
    assert run(capsys, "--seed", "12", *argv[2:])[1] != first


def test_classify(capsys, write):
    text = '{"n":[1],"x":[[1,2],[1,2],[1,2]],"C":{"kind":"eq"},"B":{"kind":"true"}}'
    code, out, _ = run(capsys, "classify", write(text))
    report = json.loads(out)
    assert code == 0
    assert report["b_monotonic"] and report["order"] == [1, 2]
    assert report["continuity"] == "not-guaranteed"
    assert report["exhaustive"]["witness"]["values"] == [1, 1, 1]


def test_classify_non_monotonic(capsys, write):
    text = '{"n":[1],"x":[[1,2],[1,2]],"C":{"kind":"eq"},"B":{"kind":"eq"}}'
    code, out, _ = run(capsys, "classify", write(text))
    assert code == 0 and json.loads(out)["order"] is None


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--n", "1,200", "--d", "20", "--reps", "1")
    rows = json.loads(out)
    assert code == 0 and [r["n"] for r in rows] == [1, 200]
    assert rows[0]["work"] == 0 and rows[0]["specialized"]
    assert rows[1]["work"] > 0 and rows[1]["status"] == "ok"


def test_bench_generic(capsys):
    code, out, _ = run(capsys, "bench", "--n", "50", "--d", "10", "--reps", "1", "--generic")
    assert code == 0 and json.loads(out)[0]["specialized"] is False


@pytest.mark.parametrize("argv", [
    ["bench", "--n", "0"],
    ["bench", "--n", "x"],
    ["bench", "--family", "nope"],
    ["nonsense"],
    [],
])
def test_bad_arguments(capsys, argv):
    assert run(capsys, *argv)[0] == 2
