"""Command line front end.

Exit codes: 0 when everything checks out, 1 when a verification fails,
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr
from pathlib import Path
from typing import NamedTuple, Sequence

from .classification import derive_type_lists, enumerate_candidates, verify_table
from .involution import (InvolutionError, K3Triple, extension_invariants, k3_triple,
                         validate_involution)
from .lattice import LatticeError, parse_lattice, parse_matrix_text
from .surfaces import NotK3TypeError, k3_real_type
from .table import FlagError, TableSyntaxError, bundled_table_text, parse_table


class CommandOutcome(NamedTuple):
    exit_code: int
    stdout_payload: str


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="real-enriques", description="Lattice invariants of involutions and real Enriques surfaces.")
    p.add_argument("--format", choices=("text", "records"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", help="(r,a,delta) of an involution, optionally with extension invariants")
    s.add_argument("--lattice", required=True)
    s.add_argument("--involution", required=True)
    s.add_argument("--sublattice")

    s = sub.add_parser("k3-type", help="real locus of a real K3 surface with given (r,a,delta)")
    s.add_argument("--triple", required=True)

    s = sub.add_parser("verify-table", help="check every row of a table of Gamma-actions")
    s.add_argument("--table")

    s = sub.add_parser("derive-types", help="realized and unresolved types of Y(R)")
    s.add_argument("--table")

    s = sub.add_parser("enumerate", help="candidate invariants of sigma and tau*sigma for a theta")
    s.add_argument("--theta", required=True)
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None


def _load_rows(path: str | None):
    return parse_table(_read(path) if path else bundled_table_text())


def _invariants(ns, out: list[str]) -> int:
    lattice = parse_lattice(_read(ns.lattice))
    inv = validate_involution(lattice, parse_matrix_text(_read(ns.involution)))
    t = k3_triple(inv)
    ext = None
    if ns.sublattice:
        ext = extension_invariants(inv, parse_matrix_text(_read(ns.sublattice)))
    if ns.format == "records":
        out.append(f"triple=({t.r},{t.a},{t.delta})")
        if ext:
            out.append(f"h_plus={ext.h_plus}; h_minus={ext.h_minus}; gamma={ext.gamma}; alpha={ext.alpha}; "
                       f"dS={ext.delta_sigma_S}; dCap={ext.delta_sigma_cap}")
    else:
        out.append(f"(r, a, delta) = {t}")
        if ext:
            out.append(f"h+ = {ext.h_plus}, h- = {ext.h_minus}, gamma = {ext.gamma}, alpha = {ext.alpha}")
            out.append(f"delta_S = {ext.delta_sigma_S}, delta_cap = {ext.delta_sigma_cap}")
            if ext.s_sigma_class is not None:
                out.append("s in S/2S: " + "".join(map(str, ext.s_sigma_class)))
    return 0


def _k3_type(ns, out: list[str]) -> int:
    out.append(str(k3_real_type(K3Triple.parse(ns.triple))))
    return 0


def _verify(ns, out: list[str]) -> int:
    rows = _load_rows(ns.table)
    summary = verify_table(rows)
    by_id = {r.row_id: r for r in rows}
    for rep in summary.reports:
        status = "PASS" if rep.passed else "FAIL"
        if ns.format == "records":
            out.append(f"# {status} {rep.row_id}")
            out.append(str(by_id[rep.row_id]))
            continue
        line = f"{status} {rep.row_id} theta={by_id[rep.row_id].theta}"
        if rep.derived:
            d = rep.derived
            line += f" sigma={d.sigma} tausigma={d.tausigma} gamma={d.gamma} alpha={d.alpha}"
        out.append(line)
        for c in rep.failures():
            out.append(f"    {c.name}: {c.detail}")
    out.append(f"{'# ' if ns.format == 'records' else ''}rows={summary.total} passed={summary.passed}")
    return 0 if summary.passed == summary.total else 1


def _derive(ns, out: list[str]) -> int:
    lists = derive_type_lists(_load_rows(ns.table))
    pre = "# " if ns.format == "records" else ""
    out.append(f"{pre}realized={len(lists.realized)} unresolved={len(lists.unresolved)}")
    for name, types in (("realized", lists.realized), ("unresolved", lists.unresolved)):
        out.append(f"{pre}{name}:")
        out += [str(t) if pre else f"  {t}" for t in types]
    return 0


def _enumerate(ns, out: list[str]) -> int:
    cands = enumerate_candidates(K3Triple.parse(ns.theta))
    for c in cands:
        out.append(f"sigma={c.sigma}; tausigma={c.tausigma}; gamma={c.gamma}; alpha={c.alpha}")
    out.append(f"# candidates={len(cands)}")
    return 0


_COMMANDS = {"invariants": _invariants, "k3-type": _k3_type, "verify-table": _verify,
             "derive-types": _derive, "enumerate": _enumerate}


def run(args: Sequence[str]) -> CommandOutcome:
    err = io.StringIO()
    try:
        with redirect_stderr(err):
            ns = _parser().parse_args(list(args))
    except _UsageError as exc:
        return CommandOutcome(2, str(exc))
    except SystemExit as exc:  # --help
        return CommandOutcome(0 if not exc.code else 2, err.getvalue())
    out: list[str] = []
    try:
        code = _COMMANDS[ns.command](ns, out)
    except (ValueError, LatticeError, InvolutionError, NotK3TypeError, TableSyntaxError, FlagError) as exc:
        return CommandOutcome(2, f"error: {exc}\n")
    return CommandOutcome(code, "\n".join(out) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    outcome = run(argv)
    stream = sys.stdout if outcome.exit_code != 2 else sys.stderr
    stream.write(outcome.stdout_payload)
    return outcome.exit_code
