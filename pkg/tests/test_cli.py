"""Command-line behavior: outputs, exit codes, determinism."""

import json

import pytest

import shiftq.cli as cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_truncate_rank_one(capsys):
    code, out, _ = run(capsys, "truncate", "--type", "A1", "--params", "a,b",
                       "--neg", "Psi[1,a]", "--const", "b", "--order", "8")
    assert code == 0
    assert "Psi[1,q^2*a]" in out
    assert "truncatable: True" in out
    assert "u = -a" in out
    assert "v = -b^2/a" in out
    assert "intermediate descent: False" in out


def test_truncate_rank_two_json(capsys):
    code, out, _ = run(capsys, "truncate", "--type", "A2", "--params", "a",
                       "--neg", "Psi[1,a]", "--order", "8", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["t"] == ["1", "1"]
    assert d["parameter"] == "Psi[2,q^3*a]"
    assert d["scalars"]["p_degrees"] == [1, 1]


def test_truncate_trivial(capsys):
    code, out, _ = run(capsys, "truncate", "--type", "A1", "--order", "4")
    assert code == 0
    assert "truncatable: True" in out


def test_series_star_of_constant(capsys):
    code, out, _ = run(capsys, "series", "--type", "A1", "--params", "c",
                       "--lweight", "const(c)", "--what", "star",
                       "--node", "1", "--order", "5")
    assert code == 0
    assert out.strip().startswith("1 ")


def test_series_modified_a(capsys):
    code, out, _ = run(capsys, "series", "--type", "A1", "--params", "a",
                       "--lweight", "Psi[1,a]^-1", "--what", "sA+", "--node", "1",
                       "--aweight", "Psi[1,a*q^2]", "--order", "6")
    assert code == 0
    assert out.startswith("1 - a*z + O(z^7)")


def test_series_tminus_equals_star_shift(capsys):
    code1, out1, _ = run(capsys, "series", "--type", "A1", "--params", "c",
                         "--lweight", "Psi[1,c]", "--what", "t-",
                         "--order", "6", "--format", "json")
    code2, out2, _ = run(capsys, "series", "--type", "A1", "--params", "c",
                         "--lweight", "Psi[1,c*q^-2]", "--what", "star",
                         "--order", "6", "--format", "json")
    assert code1 == 0 and code2 == 0
    s1 = json.loads(out1)["series"]
    s2 = json.loads(out2)["series"]
    assert s1 == s2


def test_usage_errors(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 2 and "unknown suite" in err
    code, _, err = run(capsys, "series", "--type", "A1",
                       "--lweight", "Psi[1,undeclared]", "--what", "A+")
    assert code == 2 and "undeclared" in err
    code, _, err = run(capsys, "series", "--type", "A1", "--lweight", "Psi[1,q]",
                       "--what", "sA+")
    assert code == 2 and "aweight" in err
    code, _, err = run(capsys, "truncate", "--type", "Z9")
    assert code == 2
    code, _, err = run(capsys, "series", "--type", "A1", "--params", "a",
                       "--lweight", "Psi[1,a]^-1", "--what", "star")
    assert code == 2  # star needs a polynomial l-weight
    code, _, err = run(capsys, "truncate", "--type", "A2", "--params", "a",
                       "--neg", "Psi[1,a]", "--const", "a,a,a")
    assert code == 2
    code, _, err = run(capsys, "verify", "gklo", "--order", "0")
    assert code == 2


def test_verify_lemma_small_and_deterministic(capsys, tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    code1, _, _ = run(capsys, "verify", "lemma", "--order", "4",
                      "--format", "json", "--out", str(out1))
    code2, _, _ = run(capsys, "verify", "lemma", "--order", "4",
                      "--format", "json", "--out", str(out2))
    assert code1 == 0 and code2 == 0
    b1 = out1.read_bytes()
    assert b1 == out2.read_bytes()
    d = json.loads(b1)
    assert d["pass"] is True
    assert all(block["pass"] for block in d["checks"])


def test_verify_polynomiality_small(capsys):
    # the G2 pair needs degree 10, so the window must reach at least that far
    code, out, _ = run(capsys, "verify", "polynomiality", "--order", "12")
    assert code == 0
    assert "ALL PASS" in out


def test_verify_sl2_small(capsys):
    code, out, _ = run(capsys, "verify", "sl2", "--order", "8", "--depth", "3")
    assert code == 0
    assert "ALL PASS" in out


def test_mathematical_failure_exit_code(capsys, monkeypatch):
    import shiftq.engine as engine

    def fail_everything(f, order):
        report = engine.verify_gklo.__wrapped__(f, order) if hasattr(
            engine.verify_gklo, "__wrapped__") else None
        from shiftq.engine import NodeCheck, RelationReport
        return RelationReport("gklo", f.cartan.type_name, f.cartan.rank,
                              str(f), order, False,
                              (NodeCheck(1, False, 0),))

    monkeypatch.setattr(cli, "verify_gklo", fail_everything)
    code, out, _ = run(capsys, "verify", "gklo", "--order", "2")
    assert code == 1
    assert "FAILURES PRESENT" in out


def test_env_default_order(capsys, monkeypatch):
    monkeypatch.setenv("SHIFTQ_ORDER", "3")
    code, out, _ = run(capsys, "series", "--type", "A1", "--params", "a",
                       "--lweight", "Psi[1,a]", "--what", "T+", "--node", "1")
    assert code == 0
    assert "O(z^4)" in out
