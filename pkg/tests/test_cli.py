import subprocess
import sys
from pathlib import Path

import pytest

from helpers import K3, enriques_tau, gamma_action, U_MOVES, e8_involution, tau_invariant_basis
from real_enriques.cli import main, run
from real_enriques.lattice import format_lattice, format_matrix_text
from real_enriques.surfaces import parse_surface_type
from real_enriques.table import bundled_table_text, load_bundled_table, parse_table

GOLDEN = Path(__file__).parent / "golden"


def golden(name):
    return (GOLDEN / name).read_text()


@pytest.mark.parametrize("args,name,code", [
    (["verify-table"], "verify_table.txt", 1),
    (["--format", "records", "verify-table"], "verify_table.records", 1),
    (["derive-types"], "derive_types.txt", 0),
    (["--format", "records", "derive-types"], "derive_types.records", 0),
    (["enumerate", "--theta", "6,4,1"], "enumerate_6_4_1.txt", 0),
])
def test_golden_outputs(args, name, code):
    out = run(args)
    assert out.stdout_payload == golden(name)
    assert out.exit_code == code


def test_k3_type():
    assert run(["k3-type", "--triple", "10,10,0"]) == (0, "empty\n")
    assert run(["k3-type", "--triple", "10,8,0"]) == (0, "2T1\n")
    bad = run(["k3-type", "--triple", "3,2,0"])
    assert bad.exit_code == 2 and bad.stdout_payload.startswith("error:")


def test_verify_summary_line():
    lines = run(["verify-table"]).stdout_payload.splitlines()
    assert lines[-1] == "rows=119 passed=117"
    assert sum(l.startswith("FAIL ") for l in lines) == 2


def test_derive_types_header():
    first = run(["derive-types"]).stdout_payload.splitlines()[0]
    assert first == "realized=59 unresolved=21"


def _passing_table(tmp_path):
    rows = [r for r in load_bundled_table() if r.row_id not in ("C15.R14", "C15.R20")]
    p = tmp_path / "good.txt"
    p.write_text("".join(f"{r}\n" for r in rows))
    return p


def test_exit_codes(tmp_path):
    good = _passing_table(tmp_path)
    out = run(["verify-table", "--table", str(good)])
    assert out.exit_code == 0
    assert out.stdout_payload.splitlines()[-1] == "rows=117 passed=117"

    corrupt = tmp_path / "corrupt.txt"
    corrupt.write_text(good.read_text().replace("Yts:U7/U7", "Yts:U7/U6", 1))
    assert run(["verify-table", "--table", str(corrupt)]).exit_code == 1

    malformed = tmp_path / "malformed.txt"
    malformed.write_text("# header\ntheta=(1,1,1); alpha=1; Xs=\n")
    out = run(["verify-table", "--table", str(malformed)])
    assert out.exit_code == 2 and "line 2" in out.stdout_payload

    flags = tmp_path / "flags.txt"
    flags.write_text(good.read_text().replace("fs=d:0", "fs=d:0,dS:1", 1))
    out = run(["derive-types", "--table", str(flags)])
    assert out.exit_code == 2 and "flag implication violated" in out.stdout_payload

    assert run(["verify-table", "--table", str(tmp_path / "missing.txt")]).exit_code == 2
    assert run(["verify-table", "--bogus"]).exit_code == 2
    assert run(["frobnicate"]).exit_code == 2
    assert run([]).exit_code == 2
    assert run(["enumerate", "--theta", "2,0,0"]).exit_code == 2


def test_records_round_trip():
    verify = run(["--format", "records", "verify-table"]).stdout_payload
    assert parse_table(verify) == load_bundled_table()
    derive = run(["--format", "records", "derive-types"]).stdout_payload
    types = [l for l in derive.splitlines() if not l.startswith("#")]
    assert len(types) == 80
    assert all(str(parse_surface_type(t)) == t for t in types)


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_invariants_command(tmp_path):
    lat = _write(tmp_path, "k3.txt", format_lattice(K3))
    tau = _write(tmp_path, "tau.txt", format_matrix_text(enriques_tau().matrix))
    assert run(["invariants", "--lattice", lat, "--involution", tau]) == (0, "(r, a, delta) = (10,10,0)\n")

    sigma, _, _ = gamma_action(U_MOVES["I"], U_MOVES["SW"], e8_involution(2, 2), False, True)
    sig = _write(tmp_path, "sigma.txt", format_matrix_text(sigma.matrix))
    sub = _write(tmp_path, "s.txt", format_matrix_text(tau_invariant_basis()))
    out = run(["--format", "records", "invariants", "--lattice", lat, "--involution", sig, "--sublattice", sub])
    assert out.exit_code == 0
    first, second = out.stdout_payload.splitlines()
    assert first.startswith("triple=(")
    assert second.startswith("h_plus=") and "alpha=" in second

    text = run(["invariants", "--lattice", lat, "--involution", sig, "--sublattice", sub]).stdout_payload
    assert "gamma =" in text and "delta_cap =" in text

    bad = _write(tmp_path, "bad.txt", "2\n1 1\n0 1\n")
    assert run(["invariants", "--lattice", lat, "--involution", bad]).exit_code == 2


def test_main_streams(capsys):
    assert main(["k3-type", "--triple", "1,1,1"]) == 0
    assert capsys.readouterr().out == "T10\n"
    assert main(["nope"]) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and "usage:" in captured.err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "real_enriques", "derive-types"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == golden("derive_types.txt")


def test_bundled_text_used_by_default(tmp_path):
    p = _write(tmp_path, "copy.txt", bundled_table_text())
    assert run(["derive-types", "--table", p]) == run(["derive-types"])
