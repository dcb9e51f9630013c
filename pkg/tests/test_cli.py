import json

import pytest

from tubular import fixtures as fx
from tubular import registry
from tubular.cli import main
from tubular.registry import Check, Entry


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", list(registry.REGISTRY))
def test_every_example_verifies(capsys, name):
    code, out, _ = run(capsys, "example", name, "--verify", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["status"] == "pass"
    assert all({"name", "expected", "got", "provenance"} <= set(c) for c in report["checks"])


def test_verification_failure_exits_one(capsys, monkeypatch):
    bad = Entry("broken", "always fails", lambda: None, lambda _: [Check("x", 1, 2, "TRIVIAL")])
    monkeypatch.setitem(registry.REGISTRY, "broken", bad)
    code, out, _ = run(capsys, "example", "broken", "--verify")
    assert code == 1
    assert "FAIL" in out and "expected: 1" in out


@pytest.mark.parametrize("argv", [
    ["example", "nope"],
    ["tube", "build", "-p", "0", "-n", "1", "-m", "2"],
    ["algebra", "build", "--example", "nope"],
    ["zg", "closure", "-n", "1", "--subset", "{not json"],
    ["zg", "cover", "--family", "E1", "--type", "2,2,3"],
    ["cover", "check", "--example", "kronecker", "--levels", "0-2"],
    ["rep", "hom", "--example", "kronecker", "--module", '{"dims": {"c1": 1, "c2": 0}, "maps": {}}'],
])
def test_bad_input_exits_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_output_is_byte_identical(capsys):
    argvs = [
        ["tube", "build", "-p", "2", "-n", "3", "-m", "2", "--depth", "4", "--emit", "dot"],
        ["example", "trivext-333", "--emit", "json"],
        ["zg", "cover", "--period", "2"],
        ["cover", "lift", "--example", "kronecker", "--period", "2", "--levels", "0..1"],
    ]
    for argv in argvs:
        first = run(capsys, *argv)
        assert first[0] == 0
        assert run(capsys, *argv) == first


def test_tube_dot(capsys):
    _, out, _ = run(capsys, "tube", "build", "-p", "2", "-n", "3", "-m", "2", "--depth", "4", "--emit", "dot")
    assert out.startswith("digraph")
    assert '"Y1[1]" [shape=doubleoctagon' in out
    assert "style=dashed" in out and "constraint=false" in out


def test_tube_validate_and_rays(capsys):
    code, out, _ = run(capsys, "tube", "validate", "-p", "1", "-n", "2", "-m", "1", "--depth", "6")
    assert code == 0 and json.loads(out)["status"] == "pass"
    _, out, _ = run(capsys, "tube", "rays", "-p", "1", "-n", "2", "-m", "1", "--depth", "6")
    data = json.loads(out)
    assert (len(data["rays"]), len(data["corays"])) == (4, 3)


def test_zg_commands(capsys):
    sub = json.dumps({"ray_tails": [{"ray": "X0", "from": 3}]})
    _, out, _ = run(capsys, "zg", "isclosed", "-n", "2", "-m", "2", "--subset", sub)
    assert json.loads(out) == {"closed": False}
    _, out, _ = run(capsys, "zg", "closure", "-n", "2", "-m", "2", "--subset", sub)
    assert "generic" in json.loads(out)["points"]
    _, out, _ = run(capsys, "zg", "cbrank", "-n", "2", "-m", "2", "--point", "generic")
    assert json.loads(out)["rank"] == 2
    _, out, _ = run(capsys, "zg", "cbrank", "-n", "2", "-m", "2", "--point", "X0[3]")
    assert json.loads(out)["rank"] == 0
    _, out, _ = run(capsys, "zg", "cover")
    assert len(json.loads(out)["pieces"]) == 6


def test_cover_commands(capsys):
    code, out, _ = run(capsys, "cover", "check", "--example", "kronecker", "--period", "2")
    assert code == 0 and json.loads(out)["status"] == "pass"
    _, out, _ = run(capsys, "cover", "pushdown", "--example", "kronecker", "--levels", "0..0")
    totals = [x["total"] for x in json.loads(out)]
    assert totals == [4, 4]


def test_construct_and_rep(capsys):
    _, out, _ = run(capsys, "construct", "trivext", "--example", "canonical-333")
    assert json.loads(out)["dim"] == 2 * fx.canonical_333().dim
    _, out, _ = run(capsys, "construct", "repwindow", "--example", "kronecker", "--levels", "0..1")
    assert json.loads(out)["dim"] == 3 * fx.kronecker().dim
    mod = json.dumps({"dims": {"c1": 1, "c2": 1}, "maps": {"b1": [[1]], "b2": [[2]]}})
    _, out, _ = run(capsys, "rep", "tau", "--example", "kronecker", "--module", mod)
    assert json.loads(out)["dims"] == {"c1": 1, "c2": 1}
    bad = json.dumps({"dims": {"c1": 1, "c2": 1}, "maps": {"a": [[1]]}})
    assert main(["rep", "tau", "--example", "kronecker", "--module", bad]) == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "g.dot"
    assert main(["tube", "dot", "-n", "1", "--depth", "4", "--emit", "dot", "--out", str(target)]) == 0
    assert target.read_text().startswith("digraph")


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == list(registry.REGISTRY)
