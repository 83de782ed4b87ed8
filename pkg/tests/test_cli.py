import json
import subprocess
import sys
from pathlib import Path

import pytest

from coverlat.classical import gen_dowling_lattice, gen_subspace_lattice
from coverlat.cli import main
from coverlat.lattice import lattice_from_json

DATA = Path(__file__).resolve().parent.parent / "data"
P3 = str(DATA / "p3.json")
DOWLING = str(DATA / "dowling_q2.json")
SINGLETONS = str(DATA / "singletons4.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", P3, "--format", "json")
    assert code == 0 and out.endswith("\n")
    assert len(json.loads(out)["flats"]) == 5


def test_build_dot(capsys):
    code, out, _ = run(capsys, "build", P3, "--format", "dot")
    assert code == 0 and out.count("->") == 6


def test_build_empty(tmp_path, capsys):
    code, out, _ = run(capsys, "build", write(tmp_path, "e.json", {"ground": [], "blocks": []}))
    doc = json.loads(out)
    assert code == 0 and doc["flats"] == [[]] and doc["covers"] == []


def test_build_simplify(tmp_path, capsys):
    path = write(tmp_path, "c.json", {"ground": ["a", "b", "c"], "blocks": [["a", "b", "c"]]})
    _, plain, _ = run(capsys, "build", path)
    _, simple, _ = run(capsys, "build", path, "--simplify")
    assert json.loads(plain)["heights"] == json.loads(simple)["heights"] == [0, 1]
    assert json.loads(simple)["flats"][1] == ["a"]


@pytest.mark.parametrize(
    "doc,message",
    [
        ({"ground": ["a", "b"], "blocks": [["a"]]}, "NotACovering: b"),
        ({"ground": ["a", "a"], "blocks": [["a"]]}, "DuplicateLabel"),
        ({"ground": ["a"], "blocks": [["a", "z"]]}, "UnknownLabel"),
        ({"ground": ["a"], "blocks": [[], ["a"]]}, "EmptyBlock"),
        ({"ground": ["a"]}, "blocks"),
        ("not json", "InputError"),
    ],
)
def test_build_errors(tmp_path, capsys, doc, message):
    code, out, err = run(capsys, "build", write(tmp_path, "bad.json", doc))
    assert code == 2 and out == ""
    assert message in err and len(err.strip().splitlines()) == 1


def test_missing_file(capsys):
    code, _, err = run(capsys, "build", "/nonexistent/x.json")
    assert code == 2 and "cannot read" in err


def test_classify_all(capsys):
    code, out, _ = run(capsys, "classify", P3, "--family", "all")
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [(r["family"], r["verdict"]) for r in reports] == [
        ("partition", "yes"),
        ("subspace", "yes"),
        ("dowling", "yes"),
    ]
    assert reports[0]["parameters"] == {"n": 3}
    assert reports[1]["parameters"] == {"n": 2, "q": 2}
    assert reports[2]["parameters"] == {"group_order": 1, "n": 2}
    assert all(r["evidence"]["oracle_agrees"] is True for r in reports)


def test_classify_dowling(capsys):
    code, out, _ = run(capsys, "classify", DOWLING, "--family", "dowling")
    r = json.loads(out)
    assert code == 0 and r["verdict"] == "yes" and r["parameters"]["group_order"] == 2


def test_classify_negative(capsys):
    code, out, _ = run(capsys, "classify", SINGLETONS, "--family", "partition")
    assert code == 1 and json.loads(out)["verdict"] == "no"
    code, out, _ = run(capsys, "classify", SINGLETONS, "--no-cross-check")
    assert code == 1 and len(out.splitlines()) == 3


@pytest.mark.parametrize(
    "argv,nodes",
    [
        (["--family", "partition", "--n", "3"], 5),
        (["--family", "subspace", "--q", "3", "--n", "2"], 6),
        (["--family", "dowling", "--n", "2", "--group-order", "2"], 6),
    ],
)
def test_gen_dot(capsys, argv, nodes):
    code, out, _ = run(capsys, "gen", *argv, "--format", "dot")
    assert code == 0 and out.count("[label=") == nodes
    assert run(capsys, "gen", *argv, "--format", "dot")[1] == out


def test_gen_json_round_trip(capsys):
    code, out, _ = run(capsys, "gen", "--family", "subspace", "--q", "2", "--n", "3")
    assert code == 0
    again = lattice_from_json(out)
    lat = gen_subspace_lattice(2, 3)
    assert again.labels == lat.labels
    assert again.height == lat.height
    assert again.covers_up == lat.covers_up
    assert again.export_json() == out


def test_gen_cayley(capsys):
    code, out, _ = run(capsys, "gen", "--family", "dowling", "--n", "3", "--cayley", str(DATA / "klein4.json"))
    assert code == 0
    assert json.loads(out)["heights"].count(1) == 3 + 3 * 4
    _, cyclic, _ = run(capsys, "gen", "--family", "dowling", "--n", "3", "--group-order", "4")
    assert out != cyclic
    assert len(json.loads(out)["flats"]) == len(gen_dowling_lattice(3, 4))


@pytest.mark.parametrize(
    "argv",
    [
        ["--family", "partition", "--n", "0"],
        ["--family", "subspace", "--q", "6", "--n", "2"],
        ["--family", "subspace", "--n", "2"],
        ["--family", "dowling", "--n", "2"],
        ["--family", "dowling", "--n", "2", "--group-order", "0"],
    ],
)
def test_gen_errors(capsys, argv):
    assert run(capsys, "gen", *argv)[0] == 2


def test_gen_bad_cayley(tmp_path, capsys):
    path = write(tmp_path, "g.json", {"order": 2, "table": [[0, 1], [1, 1]]})
    code, _, err = run(capsys, "gen", "--family", "dowling", "--n", "2", "--cayley", path)
    assert code == 2 and "InvalidGroup" in err


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", P3, "partition:3")
    assert code == 0 and len(out.splitlines()) == 5
    assert run(capsys, "iso", P3, "partition:4")[:2] == (1, "not isomorphic\n")
    assert run(capsys, "iso", "partition:3", "dowling:2,1")[0] == 0
    assert run(capsys, "iso", DOWLING, "dowling:2,2")[0] == 0


def test_iso_lattice_file(tmp_path, capsys):
    _, doc, _ = run(capsys, "gen", "--family", "partition", "--n", "3")
    path = write(tmp_path, "lat.json", doc)
    assert run(capsys, "iso", path, P3)[0] == 0


@pytest.mark.parametrize("spec", ["partition:x", "cube:3", "subspace:3", "partition:1,2"])
def test_iso_bad_spec(capsys, spec):
    assert run(capsys, "iso", spec, "partition:3")[0] == 2


def test_iso_too_large(capsys):
    code, _, err = run(capsys, "iso", "partition:5", "partition:5", "--budget", "10")
    assert code == 3 and "TooLarge" in err


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--max-elements", "3", "--max-blocks", "2", "--target", "partition:3")
    found = json.loads(out)
    assert code == 0 and found
    code, out, _ = run(capsys, "search", "--max-elements", "2", "--max-blocks", "1", "--target", "partition:2")
    assert {"ground": ["a", "b"], "blocks": [["a", "b"]]} in json.loads(out)


def test_search_workers_same_output(capsys):
    argv = ["search", "--max-elements", "4", "--max-blocks", "3", "--target", "dowling:2,1"]
    _, one, _ = run(capsys, *argv)
    _, two, _ = run(capsys, *argv, "--workers", "2")
    assert one == two


def test_search_budget(capsys):
    argv = ["search", "--max-elements", "7", "--max-blocks", "4", "--target", "partition:4"]
    assert run(capsys, *argv)[0] == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coverlat", "iso", "partition:3", "subspace:2,2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
