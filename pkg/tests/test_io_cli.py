import json
import os
import subprocess
import sys
from importlib import resources

import pytest

from nqd import io, cli, corpus
from nqd.cdg import dualize, verify_cdg, reconstruct

from conftest import presentation

FIXTURES = sorted(p.name[:-5] for p in (resources.files("nqd") / "fixtures").iterdir()
                  if p.name.endswith(".json"))


def run(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_loads(name):
    ld = io.load_any(cli.fixture_path(name))
    assert ld.kind in ("nonhomogeneous", "quadratic", "cdg", "morphism")
    if ld.kind == "cdg":
        assert verify_cdg(ld.obj, 4).ok


@pytest.mark.parametrize("name", sorted(corpus.PRESENTATIONS))
def test_presentation_fixtures_match_corpus(name):
    p = io.load_any(cli.fixture_path(name)).obj
    q = presentation(name)
    assert (p.I, p.phi, p.hc) == (q.I, q.phi, q.hc)


def test_malformed_json_position():
    with pytest.raises(io.DocumentError) as e:
        io.load_any('{"kind": "nonhomogeneous",\n "generators": ["x"\n', is_text=True)
    assert e.value.line is not None and e.value.column is not None


def test_unknown_generator_position():
    text = ('{"kind": "nonhomogeneous", "generators": ["x", "y"],\n'
            ' "relations": [{"quadratic": [[1, "x", "w"]], "scalar": 1}]}')
    with pytest.raises(io.DocumentError) as e:
        io.load_any(text, is_text=True)
    assert "unknown generator" in str(e.value)
    line2 = text.split("\n")[1]
    assert (e.value.line, e.value.column) == (2, line2.index('"w"') + 1)


@pytest.mark.parametrize("bad", ['{"kind": "nonhomogeneous", "generators": ["x", "x"], "relations": []}',
                                 '{"kind": "nonhomogeneous", "generators": ["x"], '
                                 '"relations": [{"quadratic": [[0.5, "x", "x"]]}]}',
                                 '{"kind": "nonhomogeneous", "generators": ["x"], '
                                 '"relations": [{"quadratic": [["1/0", "x", "x"]]}]}',
                                 '{"kind": "banana"}', '[1, 2]'])
def test_invalid_documents(bad):
    with pytest.raises(io.DocumentError):
        io.load_any(bad, is_text=True)


def test_declared_basis_checked():
    doc = io.cdg_to_doc(dualize(presentation("weyl")))
    doc["basis"]["2"] = list(reversed(doc["basis"]["2"])) + ["zz"]
    with pytest.raises(io.DocumentError):
        io.load_any(json.dumps(doc), is_text=True)


def test_document_roundtrip(tmp_path):
    for name in ("weyl", "u_sl2", "lambda_clifford2"):
        p = presentation(name)
        text = io.dumps(io.presentation_to_doc(p))
        q = io.load_any(text, is_text=True).obj
        assert (q.I, q.phi, q.hc) == (p.I, p.phi, p.hc)
        psi = dualize(p)
        back = io.load_any(io.dumps(io.cdg_to_doc(psi)), is_text=True).obj
        assert back == psi


def test_cli_dualize_reconstruct_roundtrip(tmp_path, capsys):
    cdg = tmp_path / "dual.json"
    pres = tmp_path / "pres.json"
    assert run(capsys, "dualize", "fixture:u_sl2", "--document", str(cdg))[0] == 0
    assert run(capsys, "reconstruct", str(cdg), "--document", str(pres))[0] == 0
    p = io.load_any(str(pres)).obj
    q = presentation("u_sl2")
    assert (p.I, p.phi, p.hc) == (q.I, q.phi, q.hc)


def test_cli_exit_codes(tmp_path, capsys):
    assert run(capsys, "pbw", "fixture:u_heis3", "--max-degree", "3")[0] == 0
    status, out, _ = run(capsys, "pbw", "fixture:counterexample", "--max-degree", "3")
    assert status == 1 and "FAILS at degree 2" in out
    status, _, err = run(capsys, "chern", "fixture:weyl", "--n", "3", "--field", "5")
    assert status == 2 and "p = 5" in err
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"generators": ["x",]}')
    status, _, err = run(capsys, "verify", str(bad))
    assert status == 2 and "line 1" in err
    assert run(capsys, "koszul", "fixture:quadratic_S3")[0] == 0
    assert run(capsys, "bogus")[0] == 2


def test_cli_verify_rejects_non_jacobi(tmp_path, capsys):
    doc = io.presentation_to_doc(corpus.enveloping(corpus.non_jacobi()))
    path = tmp_path / "nj.json"
    path.write_text(io.dumps(doc))
    assert run(capsys, "verify", str(path))[0] == 1


def test_cli_reports(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run(capsys, "bar", "fixture:weyl_dual", "--max-degree", "4", "--output", str(out))[0] == 0
    data = json.loads(out.read_text())
    assert data["bar"]["filtered"][:3] == [1, 3, 6] and data["exit_status"] == 0
    assert run(capsys, "hilbert", "fixture:counterexample", "--max-degree", "3", "--output", str(out))[0] == 0
    assert json.loads(out.read_text())["filtration"]["F"][2] == 9


def test_cli_cs(capsys):
    status, out, _ = run(capsys, "cs", "--source", "fixture:weyl_dual", "--target", "fixture:weyl_total_space",
                         "--morphism", "fixture:weyl_total_space_morphism")
    assert status == 0 and "nonzero" in out
    status, out, _ = run(capsys, "cs", "--source", "fixture:matrix_connection",
                         "--target", "fixture:matrix_connection_twisted",
                         "--morphism", "fixture:matrix_connection_twist_morphism",
                         "--then", "fixture:matrix_connection_twist_morphism",
                         "--final", "fixture:matrix_connection_twisted2", "--n", "2")
    assert status == 0 and "CS(m2 o m1) = CS(m2) o CS(m1): True" in out
    # the twist morphism does not map the connection to itself
    status, _, err = run(capsys, "cs", "--source", "fixture:matrix_connection",
                         "--target", "fixture:matrix_connection",
                         "--morphism", "fixture:matrix_connection_twist_morphism")
    assert status == 2 and "does not verify" in err


def test_seeded_reports_are_byte_identical(tmp_path):
    out = tmp_path / "chern.json"
    blobs = []
    env = dict(os.environ, NQD_SEED="7")
    for _ in range(2):
        subprocess.run([sys.executable, "-m", "nqd.cli", "chern", "fixture:matrix_connection_symplectic",
                        "--twists", "3", "--output", str(out)], check=True, env=env,
                       stdout=subprocess.DEVNULL)
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]
    assert json.loads(blobs[0])["seed"] == 7
