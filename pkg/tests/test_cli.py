from importlib import resources

import pytest

from fsscoword.cli import main

DATA = resources.files("fsscoword").joinpath("data")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", str(DATA / "m2.structure"))
    assert code == 0 and "ok" in out
    bad = tmp_path / "bad.structure"
    bad.write_text("type 1 arity 2 children 1 1\nsymbol e type 1 perm 1 2 restrict e e\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "Identities" in out


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope"))
    assert code == 2 and "error" in err


def test_partitions(capsys):
    code, out, _ = run(capsys, "partitions", "--instance", "m2", "--verify", "2")
    assert code == 0
    assert "big:   /1 /2" in out
    assert "small: /1/1 /1/2 /2/1 /2/2" in out


def test_decide_exit_codes(capsys):
    assert run(capsys, "decide", "--word", "σ σ")[0] == 0
    code, out, _ = run(capsys, "decide", "--word", "σ τ", "--oracle")
    assert code == 1 and "nontrivial" in out and "agrees" in out
    assert run(capsys, "decide", "--word", "")[0] == 0
    code, _, err = run(capsys, "decide", "--word", "σ ω")
    assert code == 2 and "ω" in err


def test_decide_with_files(capsys):
    code, out, _ = run(
        capsys,
        "decide",
        "--structure",
        str(DATA / "m2.structure"),
        "--generators",
        str(DATA / "m2.generators"),
        "--word",
        "μ ρ σ ρ",
    )
    assert code == 0 and out.strip() == "trivial"
    assert run(capsys, "decide", "--structure", str(DATA / "m2.structure"), "--word", "μ")[0] == 2


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--max-len", "2", "--simulate", "2")
    assert code == 0
    assert out.count("PASS") == 3 and "FAIL" not in out


def test_witness_build(capsys):
    code, out, _ = run(capsys, "witness", "build", "--b1", "/1", "--b2", "/2")
    assert code == 0 and "grammar" in out
    code, out, _ = run(capsys, "witness", "build", "--b1", "/1", "--b2", "/2", "--dump")
    assert "R --(σ | A(1,-) A(1,1) | A(1,-) A(1,2) [e])--> C" in out
    code, out, _ = run(capsys, "witness", "build", "--b1", "/1", "--b2", "/2", "--dot")
    assert out.startswith("digraph")


@pytest.mark.parametrize("simulate", [False, True])
def test_witness_member(capsys, simulate):
    extra = ["--simulate"] if simulate else []
    code, _, _ = run(capsys, "witness", "member", "--b1", "/1/1", "--b2", "/1/2", "--word", "τ", *extra)
    assert code == 0
    code, _, _ = run(capsys, "witness", "member", "--b1", "/1/1", "--b2", "/1/2", "--word", "σ", *extra)
    assert code == 1


def test_witness_bad_address(capsys):
    code, _, err = run(capsys, "witness", "build", "--b1", "/5", "--b2", "/2")
    assert code == 2 and err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--instance", "m2", "--word", "A(1,-) [s] A(1,2) #")
    assert code == 0
    assert out.splitlines() == ["A(1,-) A(1,1) #", "/1"]
