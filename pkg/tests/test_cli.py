import json

import pytest

from linfext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check(capsys):
    code, out, _ = run(capsys, "check", "psi[1,1,0;3]", "--depth", "12")
    assert code == 0 and "codifferential: true" in out
    code, out, _ = run(capsys, "check", "psi[1,0,0;2] + psi[0,0,1;1]", "--depth", "4")
    assert code == 1 and "false" in out


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "psi[0,2,0;1]", "--n", "3")
    assert code == 0 and "dims 3|1" in out
    code, out, _ = run(capsys, "cohomology", "psi[0,2,0;1]", "--n", "3", "--json")
    data = json.loads(out)
    assert (data["even_dim"], data["odd_dim"]) == (3, 1)


def test_replicate_prodform(capsys):
    code, out, _ = run(capsys, "replicate", "prodform", "--k", "2", "--m", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "match"
    assert data["rows"][0]["computed"] == "-5/6*psi[1,0,6;3]"


def test_replicate_mismatch_exit_code(capsys):
    code, out, _ = run(capsys, "replicate", "case2.sub1")
    assert code == 1 and "MISMATCH" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "check", "psi[0,0,0;1]")
    assert code == 2 and "weight >= 1" in err
    code, _, err = run(capsys, "check", "c*psi[1,0,1;3]", "--field", "q")
    assert code == 2
    code, _, err = run(capsys, "cohomology", "psi[1,1,0;3] + psi[1,0,2;2]", "--n", "2")
    assert code == 2 and "filtered" in err
    code, _, err = run(capsys, "replicate", "nope")
    assert code == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_other_verbs(capsys):
    code, out, _ = run(capsys, "bracket", "phi[0,2,1;2]", "psi[1,0,0;2]")
    assert code == 0 and out.strip() == "2*psi[1,1,1;2]"
    code, out, _ = run(capsys, "filtered", "psi[0,2,0;1] + psi[0,0,3;1]", "--n", "4")
    assert code == 0 and "dims 2|0" in out
    code, out, _ = run(capsys, "act", "lin(2; 1,0,0,2)", "psi[1,1,0;3]")
    assert code == 0 and out.strip() == "psi[1,1,0;3]"
    code, out, _ = run(capsys, "reduce", "psi[1,1,0;3] + psi[1,0,2;2]", "psi[1,2,0;2] + 2*psi[1,0,3;2]", "--depth", "6")
    assert code == 0 and "normal form: 0" in out
    code, out, _ = run(capsys, "obstruct", "psi[0,2,0;1] + psi[0,0,4;1]", "--n", "5")
    assert code == 0
    code, out, _ = run(capsys, "eliminate", "psi[0,2,0;1] + psi[0,1,3;1]", "--k", "4")
    assert code == 0 and "exp(-1/2*phi[0,0,3;2])" in out
    code, out, _ = run(capsys, "search", "psi[1,1,0;2]+psi[1,0,2;3]+psi[1,0,3;3]", "psi[1,1,0;2]+psi[1,0,2;3]",
                       "--depth", "10")
    assert code == 1 and "exhausted at weight 4" in out


def test_json_outputs_round_trip(capsys):
    from linfext.expressions import parse_expression
    code, out, _ = run(capsys, "eliminate", "psi[0,2,0;1] + psi[0,1,3;1]", "--k", "4", "--json")
    data = json.loads(out)
    parse_expression(data["codifferential"])
    parse_expression(data["automorphism"])
