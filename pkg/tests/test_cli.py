import csv
import json

import pytest

from wedgedeg.catalog import catalog_specs, dihedral_group, parse_group_spec
from wedgedeg.cli import main
from wedgedeg.degrees import exterior_degree_n
from wedgedeg.errors import ParseError
from wedgedeg.groups import conjugacy_classes
from wedgedeg.wedge import exterior_square


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_examples():
    D8 = parse_group_spec("D8")
    assert D8.order == 8 and len(conjugacy_classes(D8)) == 5
    Q8 = parse_group_spec("Q8")
    assert Q8.order == 8 and not Q8.is_abelian
    assert sum(1 for x in range(8) if Q8.element_order(x) == 2) == 1
    assert parse_group_spec("Z3xD8").order == 24
    assert parse_group_spec("Z2xZ2").order == 4
    assert parse_group_spec("Q4").is_cyclic


@pytest.mark.parametrize("bad", ["D7", "D2", "Q6", "X3", "", "Z2x", "xZ2", "Z0", "@/nonexistent.json"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_group_spec(bad)


@pytest.mark.parametrize("n", range(3, 9))
def test_dihedral_models_agree(n):
    from wedgedeg.catalog import dihedral_permutation_model
    A = dihedral_group(n)
    B = dihedral_permutation_model(n)
    SA, SB = exterior_square(A), exterior_square(B)
    for m in (1, 2, 3):
        assert exterior_degree_n(A, SA, m) == exterior_degree_n(B, SB, m)


def test_file_input(tmp_path):
    p = tmp_path / "s3.json"
    p.write_text(json.dumps({"type": "perm", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}))
    assert parse_group_spec(f"@{p}").order == 6
    q = tmp_path / "z3.json"
    q.write_text(json.dumps({"type": "cayley", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
    assert parse_group_spec(f"@{q}").is_cyclic
    r = tmp_path / "q8.json"
    r.write_text(json.dumps({"type": "presentation", "generators": 2,
                             "relators": [[1, 1, -2, -2], [2, 2, -2, -1, -2, -1]]}))
    assert parse_group_spec(f"@{r}").order == 8
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type": "cayley", "table": [[0, 1], [1, 1]]}))
    with pytest.raises(Exception):
        parse_group_spec(f"@{bad}")


def test_verify_d8(capsys):
    code, out, _ = run(capsys, "verify", "D8", "--max-n", "3")
    assert code == 0
    assert "OK D8" in out and "FAIL" not in out


def test_report_d8(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "report", "D8", "--max-n", "3", "--json", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["degrees"]["Dwedge"][:2] == ["7/16", "23/128"]
    assert doc["multiplier_order"] == 2 and doc["capable"] is True
    assert doc["parameter_n"] == 4 and doc["order"] == 8 and doc["classes"] == 5
    assert all(isinstance(v, str) and "/" in v for v in doc["degrees"]["d"])


def test_verify_q8_multiple_unidegree(capsys):
    code, out, _ = run(capsys, "verify", "Q8", "--max-n", "3")
    assert code == 0
    code, out, _ = run(capsys, "report", "Q8", "--max-n", "3")
    doc = json.loads(out)
    assert doc["degrees"]["d"] == doc["degrees"]["Dwedge"]
    assert doc["flags"]["multiple_unidegree"] is True and doc["parameter_n"] == 2


def test_table_dihedral(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "dihedral", "4..16", "--csv", str(path))
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    assert list(rows[0]) == ["family", "param", "m", "computed", "closed_form", "match"]
    assert len(rows) == 7 * 3 and all(r["match"] == "true" for r in rows)


def test_table_quaternion_stdout(capsys):
    code, out, _ = run(capsys, "table", "quaternion", "4..12", "--m", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 3 * 2


def test_exit_codes(capsys):
    assert run(capsys, "verify", "D7")[0] == 2
    assert run(capsys, "table", "dihedral", "9..3")[0] == 2
    assert run(capsys, "report", "Z2", "--max-n", "0")[0] == 2
    assert run(capsys, "verify", "D16", "--coset-limit", "50")[0] == 3
    assert run(capsys, "verify", "Z40")[0] == 3


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_deterministic_across_jobs(capsys):
    specs = ["S3", "D8", "Q8", "Z2xZ2", "A4"]
    a = run(capsys, "report", *specs, "--max-n", "2", "--jobs", "1")[1]
    b = run(capsys, "report", *specs, "--max-n", "2", "--jobs", "3")[1]
    assert a == b
    assert [d["group"] for d in json.loads(a)] == specs


def test_catalog_listing():
    specs = catalog_specs()
    assert "Z3xD8" in specs and "Q24" in specs and "D4" in specs
