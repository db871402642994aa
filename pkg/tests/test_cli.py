import json

import pytest

from cdhopf.cli import main
from cdhopf.hopf_zero import search_exhaustive, unit_alpha


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_verify_tilde_identities_example(capsys):
    code, doc, err = run(capsys, "verify", "--level", "4", "--seed", "7", "--samples", "200", "tilde-identities")
    assert code == 0
    assert doc["passed"] and doc["command"] == "verify"
    assert doc["config"]["seed"] == 7
    assert "PASS" in err and "FAIL" not in err


@pytest.mark.parametrize("level", [3, 4])
def test_verify_norm_chain(capsys, level):
    code, doc, _ = run(capsys, "verify", "--level", str(level), "norm-chain")
    assert code == 0
    has_witness = "witness" in doc["reports"][0].get("data", {})
    assert has_witness == (level == 4)


def test_verify_reports_failure_with_exit_one(capsys):
    code, doc, err = run(capsys, "verify", "--level", "4", "--samples", "3", "octonion-embedding")
    assert code == 1 and not doc["passed"]
    failing = [c for c in doc["reports"][0]["checks"] if not c["passed"]]
    assert failing and all("counterexample" in c for c in failing)
    assert "FAIL" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--level", "4", "nonsense"],
        ["verify", "--level", "4", "--mode", "float", "tilde-identities"],
        ["verify", "--level", "3", "zero-divisor-equivalences"],
        ["verify", "--level", "0", "norm-chain"],
        ["verify", "--level", "4", "--samples", "0", "norm-chain"],
        ["verify", "--level", "4"],
        ["table", "--level", "11"],
        ["orbit", "--g", "1,1,0,0"],
        ["retract", "--level", "3"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, doc, err = run(capsys, *argv)
    assert code == 2 and doc is None
    assert "error" in err


def test_search_examples(capsys):
    code, doc, _ = run(capsys, "search", "--level", "3", "--support", "2")
    assert code == 0 and doc["certificates"] == [] and doc["count"] == 0
    code, doc, _ = run(capsys, "search", "--level", "4", "--support", "2", "--method", "exhaustive")
    assert code == 0 and doc["count"] == 336
    assert all(c["residual"] == "0" for c in doc["certificates"])


def test_numeric_search(capsys):
    code, doc, _ = run(capsys, "search", "--level", "4", "--method", "numeric", "--samples", "3", "--seed", "2")
    assert code == 0 and len(doc["runs"]) == 3
    assert float(doc["min_residual"]) < 1e-10
    code, doc, _ = run(capsys, "search", "--level", "4", "--method", "numeric", "--samples", "2", "--mode", "float")
    assert code == 0 and "certificates" not in doc


def test_table_level_two_is_the_quaternion_table(capsys):
    code, doc, _ = run(capsys, "table", "--level", "2")
    cells = [[(c["sign"], c["index"]) for c in row] for row in doc["cells"]]
    assert code == 0
    assert cells == [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]


@pytest.fixture(scope="module")
def cert_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("certs")
    certs = search_exhaustive(4, 2)
    (d / "all.json").write_text(json.dumps({"certificates": [c.to_json() for c in certs]}))
    (d / "one.json").write_text(json.dumps(certs[5].to_json()))
    bad = certs[5].to_json()
    bad["b"] = list(reversed(bad["b"]))
    (d / "bad.json").write_text(json.dumps(bad))
    (d / "alpha.json").write_text(json.dumps({"alpha": unit_alpha(certs[5]).to_json()}))
    (d / "broken.json").write_bytes(b'{"level": 4,\n "a": [1,}')
    (d / "binary.json").write_bytes(b'{"a": "\xc3\xa9\xff"}')
    return d


def test_verify_cert_roundtrip(capsys, cert_files):
    code, doc, _ = run(capsys, "verify-cert", str(cert_files / "all.json"))
    assert code == 0 and doc["count"] == 336 and doc["passed"]
    code, doc, _ = run(capsys, "verify-cert", str(cert_files / "one.json"))
    assert code == 0 and doc["count"] == 1


def test_verify_cert_failure_exits_one(capsys, cert_files):
    code, doc, err = run(capsys, "verify-cert", str(cert_files / "bad.json"))
    assert code == 1 and not doc["passed"]
    assert "a*b == 0" in err


def test_malformed_input_names_byte_offset(capsys, cert_files):
    code, _, err = run(capsys, "verify-cert", str(cert_files / "broken.json"))
    assert code == 2 and "byte offset 22" in err
    code, _, err = run(capsys, "verify-cert", str(cert_files / "binary.json"))
    assert code == 2 and "byte offset 9" in err
    code, _, err = run(capsys, "verify-cert", str(cert_files / "missing.json"))
    assert code == 2


def test_table_for_alpha_flags_the_printed_cells(capsys, cert_files):
    code, doc, _ = run(capsys, "table", "--alpha", str(cert_files / "alpha.json"))
    checks = {c["name"]: c["passed"] for c in doc["report"]["checks"]}
    assert checks["multiplicative on basis pairs"] and checks["unital"]
    assert not checks["64 products match the printed O_alpha table"]
    assert len(doc["printed_table_disagreements"]) == 2
    assert code == 1


def test_retract_and_orbit(capsys, cert_files):
    code, doc, _ = run(capsys, "retract", str(cert_files / "alpha.json"))
    assert code == 0 and doc["passed"]
    code, doc, _ = run(capsys, "retract", "--level", "5", "--seed", "3")
    assert code == 0
    code, doc, _ = run(capsys, "orbit", "--alpha", str(cert_files / "alpha.json"), "--g", "0,3/5,4/5,0")
    assert code == 0 and doc["passed"]


def test_retract_rejects_collinear_input(capsys, tmp_path):
    a = ["0", "1"] + ["0"] * 14
    a_tilde = ["0"] * 9 + ["1"] + ["0"] * 6
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"level": 4, "a": a, "b": a_tilde}))
    code, doc, _ = run(capsys, "retract", str(p))
    assert code == 1 and not doc["passed"]


def test_output_identical_across_workers_and_runs(capsys, tmp_path):
    outs = []
    for workers in ("1", "3", "1"):
        out = tmp_path / f"r{len(outs)}.json"
        code = main(["verify", "--level", "4", "--samples", "5", "--workers", workers, "--out", str(out), "quaternion-tables", "dims", "module-and-sphere"])
        assert code == 0
        outs.append(out.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1] == outs[2]


def test_timings_only_on_request(capsys):
    _, doc, _ = run(capsys, "verify", "--level", "3", "--samples", "2", "norm-chain")
    assert "timings" not in doc["reports"][0]
    _, doc, _ = run(capsys, "verify", "--level", "3", "--samples", "2", "--timings", "norm-chain")
    assert "seconds" in doc["reports"][0]["timings"]
