import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from shtukalab import cli, selftest
from shtukalab.jobs import JobError, dumps, make_job, parse_spec
from shtukalab.samples import std_field
from shtukalab.shtuka import Shtuka

F4_BLOCK = {"p": 2, "r": 2, "m": 1, "modulus": [1, 1, 1]}


def job_text(**data):
    return json.dumps(data)


def write_job(tmp_path, data, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if isinstance(data, dict) else data)
    return str(path)


def machine_values(out):
    lines = out.split("--\n")[-1].strip().splitlines()
    return dict(line.split("=", 1) for line in lines)


# -- parse_spec ----------------------------------------------------------------------


def test_parse_example():
    job = parse_spec('{"field":{"p":2,"r":2,"m":1,"modulus":[1,1,1]},'
                     '"shtuka":{"dim":1,"matrix":[["0"]]},"cmd":"drinfeld"}')
    assert job.cmd == "drinfeld"
    assert job.field.q == 4 and job.q == 4
    assert job.shtuka.F.tolist() == [[0]]


def test_parse_missing_modulus():
    with pytest.raises(JobError) as exc:
        parse_spec(job_text(field={"p": 2, "r": 2, "m": 1}, cmd="drinfeld"))
    assert exc.value.kind == "UnknownKey"
    assert exc.value.where == "field" and "modulus" in str(exc.value)


def test_parse_bad_element():
    with pytest.raises(JobError) as exc:
        parse_spec(job_text(field=F4_BLOCK, shtuka={"dim": 2, "matrix": [["0", "1"], ["g", "h+1"]]},
                            cmd="drinfeld"))
    assert exc.value.kind == "BadElement"
    assert exc.value.where == "shtuka.matrix[1][1]"


def test_parse_syntax_error_has_position():
    with pytest.raises(JobError) as exc:
        parse_spec('{"cmd": "drinfeld",\n  "field": {"p": 2,,}}')
    assert exc.value.kind == "SyntaxError"
    assert exc.value.line == 2 and exc.value.col > 1


def test_parse_unknown_keys_and_commands():
    for data in ({"cmd": "drinfeld", "colour": 1}, {"cmd": "frobnicate"},
                 {"cmd": "lisa", "options": {"verbose": True}},
                 {"cmd": "drinfeld", "shtuka": {"dim": 1, "matrix": [["0"]]}}):
        with pytest.raises(JobError) as exc:
            parse_spec(json.dumps(data))
        assert exc.value.kind == "UnknownKey"


def test_parse_field_errors_are_reported():
    with pytest.raises(JobError) as exc:
        parse_spec(job_text(field={"p": 4, "r": 1, "m": 1, "modulus": [0, 1]}, cmd="drinfeld"))
    assert exc.value.kind == "NotPrime"
    with pytest.raises(JobError) as exc:
        parse_spec(job_text(field={"p": 2, "r": 2, "m": 1, "modulus": [1, 0, 1]}, cmd="drinfeld"))
    assert exc.value.kind == "ReducibleModulus"


def test_parse_presentation():
    pres = [{"name": "x", "weight": 1, "trunc": 4, "relation": {"x": "1"}}]
    job = parse_spec(job_text(field=F4_BLOCK, presentation=pres, cmd="balance"))
    g, = job.presentation.generators
    assert (g.trunc, g.relation) == (4, ((0, 1),))
    bad = [{"name": "x", "weight": 1, "trunc": 2, "relation": {"x": "1"}}]
    with pytest.raises(JobError) as exc:
        parse_spec(job_text(field=F4_BLOCK, presentation=bad, cmd="balance"))
    assert exc.value.kind == "WeightIncompatibleRelation"


def test_make_job_round_trips():
    k = std_field(9)
    M = Shtuka(k, [[k.gen, 1], [0, k.parse("g+2")]])
    job = parse_spec(dumps(make_job("roundtrip", k, M, m=2)))
    assert job.field == k
    assert job.shtuka.F.tolist() == M.F.tolist()
    assert job.options == {"m": 2}


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-5, 20) | st.text(max_size=5),
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(
        st.sampled_from(["cmd", "field", "shtuka", "p", "r", "m", "modulus", "dim", "matrix",
                         "presentation", "exponents", "q", "options", "name", "trunc", "weight"]),
        inner, max_size=5),
    max_leaves=20)


@given(st.text(max_size=200))
def test_parse_is_total_on_text(text):
    try:
        parse_spec(text)
    except JobError:
        pass


@given(json_values)
def test_parse_is_total_on_json(value):
    try:
        parse_spec(json.dumps(value))
    except JobError:
        pass


@given(st.binary(max_size=64))
def test_parse_is_total_on_bytes(data):
    try:
        parse_spec(data)
    except JobError:
        pass


# -- run ------------------------------------------------------------------------------------


def test_run_balance_on_alpha_q():
    pres = [{"name": "x", "weight": 1, "trunc": 4}]
    rep = cli.run(parse_spec(job_text(field=F4_BLOCK, presentation=pres, cmd="balance")))
    for key in ("cond_i", "cond_ii", "cond_iii", "cond_iv", "balanced"):
        assert rep.values[key] is True


def test_run_sseries():
    rep = cli.run(parse_spec(job_text(exponents=[1] * 6, q=4, cmd="sseries")))
    assert rep.values["ranks"] == (21, 21, 21)
    assert "ranks=21,21,21" in rep.render(machine_only=True)


def test_run_all_commands(capsys, tmp_path):
    sht = {"dim": 2, "matrix": [["1", "0"], ["0", "0"]]}
    pres = [{"name": "x", "weight": 1, "trunc": 4}]
    cases = {
        "drinfeld": dict(field=F4_BLOCK, shtuka=sht),
        "dieudonne": dict(field=F4_BLOCK, shtuka=sht),
        "roundtrip": dict(field=F4_BLOCK, shtuka=sht),
        "adjoint": dict(field=F4_BLOCK, shtuka={"dim": 1, "matrix": [["0"]]}, presentation=pres),
        "balance": dict(field=F4_BLOCK, presentation=pres),
        "quasibalance": dict(field=F4_BLOCK, presentation=pres),
        "sseries": dict(exponents=[2], q=4),
        "lisa": dict(exponents=[1, 1, 1], q=4),
        "classify": dict(field=F4_BLOCK, shtuka=sht),
        "pointcount": dict(field=F4_BLOCK, shtuka=sht, options={"m": 2}),
    }
    expected = {
        "drinfeld": {"order": "16"},
        "dieudonne": {"rank": "2"},
        "roundtrip": {"counit_iso": "true"},
        "adjoint": {"dim_grp_hom": "1", "dim_sht_hom": "1", "equal": "true"},
        "balance": {"balanced": "true"},
        "quasibalance": {"ranks": "1,1,1", "quasi_balanced": "true"},
        "sseries": {"ranks": "1,1,1"},
        "lisa": {"quasi_balanced": "false"},
        "classify": {"etale_order": "4", "connected_exponents": "1", "constancy_degree": "1"},
        "pointcount": {"points": "4", "m": "2"},
    }
    assert set(cases) == set(cli.COMMANDS)
    for cmd, data in cases.items():
        path = write_job(tmp_path, dict(data, cmd=cmd), f"{cmd}.json")
        assert cli.main(["--job", path]) == 0, cmd
        vals = machine_values(capsys.readouterr().out)
        assert vals["cmd"] == cmd
        for key, value in expected[cmd].items():
            assert vals[key] == value, (cmd, key)


def test_classify_prints_product_expression(capsys, tmp_path):
    path = write_job(tmp_path, {"field": F4_BLOCK, "cmd": "classify",
                                "shtuka": {"dim": 2, "matrix": [["1", "0"], ["0", "0"]]}})
    cli.main(["--job", path])
    assert "G ≅ (etale of order 4, constant over F_4) × alpha_q" in capsys.readouterr().out


def test_output_is_deterministic(capsys, tmp_path):
    path = write_job(tmp_path, {"field": F4_BLOCK, "cmd": "drinfeld",
                                "shtuka": {"dim": 2, "matrix": [["g", "1"], ["0", "g+1"]]}})
    outs = []
    for _ in range(2):
        cli.main(["--job", path, "--machine"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert "--" not in outs[0]
    proc = subprocess.run([sys.executable, "-m", "shtukalab", "--job", path, "--machine"],
                          capture_output=True, check=True)
    assert proc.stdout.decode() == outs[0]


def test_cmd_argument_overrides_job(capsys, tmp_path):
    path = write_job(tmp_path, {"field": F4_BLOCK, "cmd": "drinfeld", "shtuka": {"dim": 1, "matrix": [["0"]]}})
    assert cli.main(["dieudonne", "--job", path]) == 0
    assert "cmd=dieudonne" in capsys.readouterr().out


def test_exit_codes(capsys, tmp_path):
    bad = write_job(tmp_path, "{not json", "bad.json")
    assert cli.main(["--job", bad]) == 2
    assert "SyntaxError" in capsys.readouterr().err
    unbalanced = write_job(tmp_path, {"field": F4_BLOCK, "cmd": "roundtrip",
                                      "presentation": [{"name": "x", "weight": 1, "trunc": 2}]}, "u.json")
    assert cli.main(["--job", unbalanced]) == 0
    assert cli.main(["--job", unbalanced, "--expect-iso"]) == 1
    assert "unit_iso=false" in capsys.readouterr().out
    assert cli.main(["--job", str(tmp_path / "missing.json")]) == 2


def test_cap_flag(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SHTUKALAB_CAP", "4096")
    path = write_job(tmp_path, {"field": F4_BLOCK, "cmd": "drinfeld",
                                "shtuka": {"dim": 2, "matrix": [["0", "0"], ["0", "0"]]}})
    assert cli.main(["--job", path, "--cap", "8"]) == 2
    assert "exceeds the dimension cap" in capsys.readouterr().err


# -- selftest harness ------------------------------------------------------------------------


def test_selftest_serializes_counterexample(capsys, tmp_path, monkeypatch):
    k = std_field(4)
    witness = make_job("roundtrip", k, Shtuka(k, [[k.gen]]))

    def failing(seed):
        raise selftest._Fail("forced failure", witness)

    monkeypatch.setattr(selftest, "CRITERIA", [(1, "always passes", lambda seed: "ok"),
                                               (2, "always fails", failing),
                                               (3, "never reached", lambda seed: "ok")])
    assert cli.main(["selftest", "--seed", "3", "--out", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert "[PASS] criterion  1" in out and "[FAIL] criterion  2" in out
    assert "criterion  3" not in out
    path = tmp_path / "counterexample_criterion2.json"
    assert path.exists()
    assert cli.main(["--job", str(path), "--machine"]) == 0
    assert "counit_iso=true" in capsys.readouterr().out


def test_selftest_all_pass_with_stub(capsys, monkeypatch):
    monkeypatch.setattr(selftest, "CRITERIA", [(1, "stub", lambda seed: f"seed {seed}")])
    assert cli.main(["selftest", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "passed=1" in out and "seed 7" in out
