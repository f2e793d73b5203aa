import json

import pytest

from bsdh import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_theorem_rank_three(capsys):
    code, out, _ = run(capsys, "theorem", "--n", "3")
    assert code == 0
    rows = [l for l in out.splitlines()[1:] if l.strip()]
    assert len(rows) == 4
    verdicts = {l.split()[1]: l.split()[2] for l in rows}
    assert verdicts == {"(1)": "H1-vanishes", "(3,1)": "H1-vanishes",
                        "(2,1)": "H1-nonzero", "(3,2,1)": "H1-nonzero"}


def test_theorem_single_shape(capsys):
    code, out, _ = run(capsys, "theorem", "--n", "3", "--shape", "2,1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [r["verdict"] for r in data["results"]] == ["H1-nonzero"]
    assert data["tool_version"] and data["config"]["seed"] == 0
    assert data["duality_twist"] == {"3": -1}
    assert set(data["trust_annotations"]) >= set(data["results"][0]["trusted"])


def test_theorem_rank_out_of_range(capsys):
    code, _, err = run(capsys, "theorem", "--n", "9")
    assert code == 64 and "outside supported range" in err


@pytest.mark.parametrize("argv", [
    ("theorem",),
    ("theorem", "--n", "3", "--shape", "2,3,1"),
    ("theorem", "--n", "3", "--format", "xml"),
    ("coh", "--n", "3", "--word", "2,3", "--module", "line:b3"),
    ("coh", "--n", "3", "--word", "2,7", "--module", "k1"),
    ("coh", "--n", "3", "--word", "2,3", "--module", "spinor"),
    ("oracles", "--n", "3", "--samples", "0"),
    ("lemmas", "--n", "3", "--shape", "1", "--lemma", "no-such-check"),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 64


def test_coh_examples(capsys):
    code, out, _ = run(capsys, "coh", "--n", "3", "--word", "2,3", "--module", "line:a3", "--degree", "1")
    assert code == 0 and out.splitlines()[0] == "{a2+a3: 1}"
    code, out, _ = run(capsys, "coh", "--n", "3", "--word", "1,2,3", "--module", "line:a3", "--degree", "1")
    assert code == 0 and out.splitlines()[0] == "0"
    code, out, _ = run(capsys, "coh", "--n", "3", "--word", "2,3", "--module", "line:a3", "--format", "json")
    data = json.loads(out)
    assert data["results"]["character"] == [["a2+a3", 1]]
    assert data["results"]["flag"] == "exact"


def test_coh_non_reduced(capsys):
    code, _, err = run(capsys, "coh", "--n", "3", "--word", "1,2,1,2,1,2,1", "--module", "k1")
    assert code == 65 and "[1, 2, 1, 2, 1, 2, 1]" not in err
    code, _, err = run(capsys, "coh", "--n", "3", "--word", "3,3", "--module", "k1")
    assert code == 65 and "failing prefix [3, 3]" in err


def test_coh_modules(capsys):
    for spec in ("k1", "adjoint", "gprime", "line:-a3-2a2", "line:w1+w2", "line:0"):
        code, _, _ = run(capsys, "coh", "--n", "3", "--word", "3,2", "--module", spec, "--degree", "0")
        assert code == 0


def test_weight_grammar():
    assert cli.parse_weight("a3", 3) == (0, 0, 2)
    assert cli.parse_weight("-a3-2a2", 3) == (0, -2, 0)
    assert cli.parse_weight("2w1 - a1", 3) == (1, 1, 0)
    assert cli.parse_weight("0", 4) == (0, 0, 0, 0)
    for bad in ("a", "a4", "3", "a1*2", "+"):
        with pytest.raises(cli.UsageError):
            cli.parse_weight(bad, 3)


def test_rank_ranges():
    assert cli.parse_ranks("3-5", (3, 6)) == [3, 4, 5]
    assert cli.parse_ranks("3,6", (3, 6)) == [3, 6]
    with pytest.raises(cli.UsageError):
        cli.parse_ranks("2", (3, 6))


def test_oracles(capsys):
    code, out, _ = run(capsys, "oracles", "--n", "3", "--samples", "25", "--seed", "7", "--format", "json")
    assert code == 0
    data = json.loads(out)
    res = data["results"][0]
    assert res["seed"] == 7 and data["config"]["seed"] == 7
    for suite in res["suites"].values():
        assert suite["passed"] == 25 and suite["failed"] == 0


def test_lemmas_filter(capsys):
    code, out, _ = run(capsys, "lemmas", "--n", "3", "--shape", "3,1", "--lemma", "mr-disjoint",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    ids = {c["id"] for row in data["results"] for c in row["lemmas"]}
    assert ids == {"mr-disjoint"}


def test_shapes(capsys):
    code, out, _ = run(capsys, "shapes", "--n", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["results"]) == 8
    assert sum(r["predicate_vanishes"] for r in data["results"]) == 4


def test_json_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["theorem", "--n", "3", "--format", "json", "--out", str(a)]) == 0
    assert cli.main(["theorem", "--n", "3", "--format", "json", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    c, d = tmp_path / "c.json", tmp_path / "d.json"
    for path in (c, d):
        assert cli.main(["oracles", "--n", "3", "--samples", "10", "--seed", "3", "--format", "json",
                         "--out", str(path)]) == 0
    assert c.read_bytes() == d.read_bytes()
