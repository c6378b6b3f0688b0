"""Record format for the classification table of Gamma-actions.

One record per line::

    theta=(r,a,d); alpha=A; Xs=<surface>; fs=d:V[,dS:V][,dCap:V]; Xts=<surface>; fts=...; Y=Ys:<surface>/Yts:<surface>/<surface>[|...]

Flags that are left out are unstated.  Rows keep the flags exactly as written
so that printing a parsed table gives back the same text; the implications
between the three flags are applied by :meth:`Flags.closed`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from importlib import resources
from itertools import product
from typing import NamedTuple

from .involution import K3Triple
from .surfaces import SurfaceType, parse_surface_type

# allowed invariants of the real structure on the Enriques lattice, in the order
# the table is arranged
THETA_TRIPLES: tuple[K3Triple, ...] = tuple(K3Triple(*t) for t in (
    (1, 1, 1), (2, 2, 1), (3, 3, 1), (4, 4, 1), (5, 5, 1), (9, 1, 1), (8, 2, 1), (7, 3, 1),
    (6, 4, 1), (0, 0, 0), (8, 2, 0), (5, 3, 1), (6, 2, 1), (7, 1, 1), (4, 2, 0), (8, 0, 0),
))

_FLAG_NAMES = ("d", "dS", "dCap")


class TableSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class FlagError(ValueError):
    pass


class Flags(NamedTuple):
    """delta, delta_S and delta_cap; None means unstated.

    s in S_+ cap S_- (mod 2) implies s in S (mod 2), and s = 0 implies both, so
    the stated values must fit the chain delta_S <= delta_cap <= delta.
    """

    delta: int | None = None
    delta_S: int | None = None
    delta_cap: int | None = None

    def _chain(self) -> list[int | None]:
        return [self.delta_S, self.delta_cap, self.delta]

    @staticmethod
    def _from_chain(c) -> "Flags":
        return Flags(c[2], c[0], c[1])

    def closed(self) -> "Flags":
        c = self._chain()
        for i, v in enumerate(c):
            for j, w in enumerate(c):
                if i < j and v == 1 and w == 0:
                    raise FlagError(f"flag implication violated: {_describe(i, 1)} forces {_describe(j, 1)}")
        out = list(c)
        for i, v in enumerate(c):
            if v == 1:
                for j in range(i, 3):
                    out[j] = 1
            elif v == 0:
                for j in range(0, i + 1):
                    out[j] = 0
        return self._from_chain(out)

    def completions(self) -> list["Flags"]:
        """Every fully stated flag triple compatible with these flags, in a fixed order."""
        c = self.closed()._chain()
        out = []
        for fill in product((0, 1), repeat=sum(v is None for v in c)):
            it = iter(fill)
            full = [v if v is not None else next(it) for v in c]
            if full == sorted(full):
                out.append(self._from_chain(full))
        return out

    def is_complete(self) -> bool:
        return None not in self

    def __str__(self) -> str:
        return ",".join(f"{n}:{v}" for n, v in zip(_FLAG_NAMES, self) if v is not None)


def _describe(chain_index: int, value: int) -> str:
    name = ("delta_S", "delta_cap", "delta")[chain_index]
    return f"{name}={value}"


def parse_flags(text: str) -> Flags:
    vals: dict[str, int] = {}
    text = text.strip()
    if not text:
        return Flags()
    for part in text.split(","):
        key, sep, v = part.strip().partition(":")
        if not sep or key not in _FLAG_NAMES or v not in ("0", "1"):
            raise ValueError(f"bad flag {part.strip()!r}")
        if key in vals:
            raise ValueError(f"flag {key} given twice")
        vals[key] = int(v)
    return Flags(vals.get("d"), vals.get("dS"), vals.get("dCap"))


class Branch(NamedTuple):
    y_sigma: SurfaceType
    y_tausigma: SurfaceType
    y: SurfaceType

    def __str__(self) -> str:
        return f"Ys:{self.y_sigma}/Yts:{self.y_tausigma}/{self.y}"


@dataclass(frozen=True)
class TableRow:
    theta: K3Triple
    alpha: int
    x_sigma: SurfaceType
    flags_sigma: Flags
    x_tausigma: SurfaceType
    flags_tausigma: Flags
    branches: tuple[Branch, ...]
    row_id: str = field(default="", compare=False)

    def __str__(self) -> str:
        t = self.theta
        return (f"theta=({t.r},{t.a},{t.delta}); alpha={self.alpha}; Xs={self.x_sigma}; "
                f"fs={self.flags_sigma}; Xts={self.x_tausigma}; fts={self.flags_tausigma}; "
                f"Y={'|'.join(str(b) for b in self.branches)}")

    def with_changes(self, **kw) -> "TableRow":
        return replace(self, **kw)


_RECORD = re.compile(
    r"theta=\((?P<theta>[^)]*)\);\s*alpha=(?P<alpha>[^;]*);\s*Xs=(?P<xs>[^;]*);\s*fs=(?P<fs>[^;]*);"
    r"\s*Xts=(?P<xts>[^;]*);\s*fts=(?P<fts>[^;]*);\s*Y=(?P<y>.*)$")
_BRANCH = re.compile(r"Ys:(?P<ys>[^/]*)/Yts:(?P<yts>[^/]*)/(?P<y>.*)$")


def row_ids(rows: list[TableRow]) -> list[str]:
    """Ids like ``C11.R03``: position of theta in THETA_TRIPLES, then order within that theta."""
    seen: dict[K3Triple, int] = {}
    out = []
    for row in rows:
        seen[row.theta] = seen.get(row.theta, 0) + 1
        case = THETA_TRIPLES.index(row.theta) + 1 if row.theta in THETA_TRIPLES else 0
        out.append(f"C{case:02d}.R{seen[row.theta]:02d}")
    return out


def parse_record(line: str, lineno: int = 1) -> TableRow:
    m = _RECORD.match(line.strip())
    if not m:
        raise TableSyntaxError("expected 'theta=(r,a,d); alpha=A; Xs=..; fs=..; Xts=..; fts=..; Y=..'",
                               lineno)
    try:
        theta = K3Triple.parse(m["theta"])
        alpha = int(m["alpha"])
        if alpha not in (0, 1):
            raise ValueError(f"alpha must be 0 or 1, got {alpha}")
        xs = parse_surface_type(m["xs"])
        xts = parse_surface_type(m["xts"])
        fs = parse_flags(m["fs"])
        fts = parse_flags(m["fts"])
        branches = []
        for part in m["y"].split("|"):
            b = _BRANCH.match(part.strip())
            if not b:
                raise ValueError(f"bad branch {part.strip()!r}, expected Ys:../Yts:../..")
            branches.append(Branch(parse_surface_type(b["ys"]), parse_surface_type(b["yts"]),
                                   parse_surface_type(b["y"])))
    except ValueError as exc:
        raise TableSyntaxError(str(exc), lineno) from None
    for name, f in (("fs", fs), ("fts", fts)):
        try:
            f.closed()
        except FlagError as exc:
            raise FlagError(f"line {lineno}: {name}: {exc}") from None
    return TableRow(theta, alpha, xs, fs, xts, fts, tuple(branches))


def parse_table(text: str) -> list[TableRow]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        rows.append(parse_record(s, lineno))
    return [replace(r, row_id=i) for r, i in zip(rows, row_ids(rows))]


def format_table(rows: list[TableRow]) -> str:
    return "".join(f"{r}\n" for r in rows)


def bundled_table_text() -> str:
    return resources.files("real_enriques").joinpath("data/gamma_actions.txt").read_text()


def load_bundled_table() -> list[TableRow]:
    return parse_table(bundled_table_text())
