import json

import pytest

from symforms.cli import main
from symforms.modular import delta
from symforms.serialize import loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "E4", "--order", "3")
    assert code == 0 and json.loads(out) == [1, 240, 2160]
    code, out, _ = run(capsys, "expand", "delta", "--order", "3")
    assert json.loads(out) == [0, 1, -24]


def test_expand_json_round_trips(capsys):
    code, out, _ = run(capsys, "expand", "delta", "--order", "6", "--json")
    assert loads(out).agrees(delta(6))


def test_expand_jacobi_rows(capsys):
    code, out, _ = run(capsys, "expand", "E6,1", "--order", "2")
    assert code == 0 and "-88" in out and "-330" in out


def test_unknown_name_is_usage_error(capsys):
    code, _, err = run(capsys, "expand", "E8")
    assert code == 2 and "error" in err


def test_weight_mismatch_is_usage_error(capsys):
    code, _, _ = run(capsys, "map", "v", "E4", "--k", "14", "--n", "2", "--ell", "0")
    assert code == 2


def test_missing_flag(capsys):
    code, _, err = run(capsys, "map", "v", "delta", "--k", "14")
    assert code == 2 and "--n" in err


def test_bracket_pair_flags_z(capsys):
    code, out, _ = run(capsys, "bracket", "pair", "uhat(2)", "vhat(2)", "--w", "0", "--lam1", "-2", "--lam2", "-2")
    assert code == 1 and "ResidualZDependence" in out


def test_bracket_sv(capsys):
    code, out, _ = run(capsys, "bracket", "sv", "delta", "vhat(2)", "--w", "2", "--lam1", "12", "--lam2", "-2",
                       "--order", "5")
    assert code == 0 and "rank 3" in out


def test_map_chain(capsys, tmp_path):
    code, out, _ = run(capsys, "map", "v", "delta", "--k", "14", "--n", "2", "--ell", "0", "--order", "10", "--json")
    assert code == 0
    f = tmp_path / "v.json"
    f.write_text(out)
    code, out, _ = run(capsys, "map", "uinv", f"@{f}", "--k", "14", "--n", "2")
    assert code == 0 and "X^2" in out
    code, out, _ = run(capsys, "map", "decompose", f"@{f}", "--k", "14", "--n", "2")
    assert code == 0
    code, out, _ = run(capsys, "map", "w", f"@{f}", "--k", "14", "--n", "2", "--literal")
    assert code == 1


def test_map_polynomials(capsys):
    assert run(capsys, "map", "q", "E2^2*E4", "--m", "2")[0] == 0
    assert run(capsys, "map", "lambda", "MP(4;E4|E6)", "--m", "1", "--lam", "6")[0] == 0
    assert run(capsys, "map", "xi", "Q(1;E2*E4)", "--m", "1", "--lam", "6")[0] == 0
    assert run(capsys, "map", "u", "QP(4;E4|0)", "--k", "2", "--n", "2")[0] == 2


def test_lift_and_jl(capsys):
    assert run(capsys, "lift", "vhat", "--n", "2", "--order", "4")[0] == 0
    assert run(capsys, "lift", "scalar", "delta", "--order", "4", "--x-order", "2")[0] == 0
    assert run(capsys, "lift", "vhat")[0] == 2
    code, out, _ = run(capsys, "jl", "cross", "delta", "--k", "14", "--n", "2", "--ell", "0", "--order", "10")
    assert code == 0 and "PASS" in out
    assert run(capsys, "jl", "coeff", "vhat(2)", "--j", "9")[0] == 1


@pytest.mark.parametrize("argv", [
    ("verify", "scalar", "delta"),
    ("verify", "vv", "uhat(2)", "--rep", "dual"),
    ("verify", "vv", "uhatdual(3)", "--rep", "contra"),
    ("verify", "quasi", "E2*E4"),
    ("verify", "jacobi", "phi0,1"),
    ("verify", "jl", "vhat(2)"),
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_fails_on_wrong_rep(capsys):
    code, out, _ = run(capsys, "verify", "vv", "uhat(2)")
    assert code == 1 and out.strip().endswith("FAIL")


def test_verify_quasi_target_for_scalar(capsys):
    assert run(capsys, "verify", "scalar", "E2")[0] == 2


@pytest.mark.parametrize("argv", [
    ("roundtrip", "vu", "--k", "12", "--n", "2", "--order", "12"),
    ("roundtrip", "lambdaxi", "--lam", "12", "--m", "3"),
    ("roundtrip", "q", "--lam", "10", "--m", "3"),
])
def test_roundtrips(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "0 mismatches" in out


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "--order", "20")
    assert code == 0 and "PASS" in out


def test_demo_negative_control(capsys):
    code, out, _ = run(capsys, "demo", "--order", "20", "--perturb", "2,5,1")
    assert code == 1 and "first mismatch at q^5" in out


def test_cache_dir(capsys, tmp_path):
    args = ("expand", "E6", "--order", "4", "--cache-dir", str(tmp_path))
    assert run(capsys, *args)[1] == run(capsys, *args)[1]
    assert list(tmp_path.glob("*.json"))
