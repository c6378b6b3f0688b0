"""Relations between the invariants of a Gamma-action and checks on table rows.

For sigma, tau*sigma lifting the real structure theta of an Enriques surface:

    r(sigma) + r(tau sigma) = 12 + 2 r(theta)
    a(sigma) + a(tau sigma) = 10 + 2 a(theta) + 2 gamma + 2 alpha
    delta(sigma) + delta(tau sigma) = delta(theta)  (mod 2)

and the count of non-orientable components of Y(R) is
1 + alpha (2 delta_cap - 1) + gamma when both fixed loci are nonempty, and at
most 2 - alpha + gamma when X_sigma is empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .involution import K3Triple
from .surfaces import (NotK3TypeError, SurfaceType, euler, k3_real_type, nonorientable_count,
                       orientation_cover, triple_from_type)
from .table import THETA_TRIPLES, Flags, TableRow


class ClassificationError(ValueError):
    pass


def theta_triples() -> list[K3Triple]:
    return list(THETA_TRIPLES)


def partner_triple(sigma: K3Triple, theta: K3Triple, gamma: int, alpha: int) -> K3Triple:
    """Invariants of tau*sigma from those of sigma."""
    if gamma < 0 or alpha not in (0, 1):
        raise ClassificationError("gamma must be >= 0 and alpha 0 or 1")
    r = 12 + 2 * theta.r - sigma.r
    a = 10 + 2 * theta.a + 2 * gamma + 2 * alpha - sigma.a
    if r < 0 or a < 0:
        raise ClassificationError(f"relations unsatisfiable: partner would be ({r},{a},.)")
    return K3Triple(r, a, (theta.delta - sigma.delta) % 2)


def solve_gamma(a_sigma: int, a_tausigma: int, theta: K3Triple, alpha: int) -> int | None:
    """The gamma making the a-relation hold, or None if it is not a nonnegative integer."""
    twice = a_sigma + a_tausigma - 10 - 2 * theta.a - 2 * alpha
    if twice < 0 or twice % 2:
        return None
    return twice // 2


def s_nor_formula(alpha: int, delta_cap: int, gamma: int) -> int:
    return 1 + alpha * (2 * delta_cap - 1) + gamma


def s_nor_bound(alpha: int, gamma: int) -> int:
    return 2 - alpha + gamma


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


class Derived(NamedTuple):
    sigma: K3Triple
    tausigma: K3Triple
    gamma: int
    alpha: int


@dataclass(frozen=True)
class RowReport:
    row_id: str
    checks: tuple[Check, ...]
    derived: Derived | None = None
    completion: tuple[Flags, Flags] | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


CHECK_NAMES = ("theta", "k3-triples", "rank relation", "a relation", "delta relation",
               "cover", "s_nor formula", "s_nor bound", "euler")


def _checks_for(row: TableRow, fs: Flags, fts: Flags) -> tuple[list[Check], Derived | None]:
    out = [Check("theta", row.theta in THETA_TRIPLES,
                 "" if row.theta in THETA_TRIPLES else f"{row.theta} is not an allowed theta")]
    theta, alpha = row.theta, row.alpha

    try:
        ts = triple_from_type(row.x_sigma, fs.delta)
        tts = triple_from_type(row.x_tausigma, fts.delta)
        out.append(Check("k3-triples", True, f"sigma {ts}, tau*sigma {tts}"))
    except NotK3TypeError as exc:
        ts = tts = None
        out.append(Check("k3-triples", False, str(exc)))

    gamma = None
    if ts is None:
        skip = "not evaluated: no K3 triples"
        out += [Check(n, False, skip) for n in ("rank relation", "a relation", "delta relation")]
    else:
        want = 12 + 2 * theta.r
        out.append(Check("rank relation", ts.r + tts.r == want, f"{ts.r}+{tts.r} vs {want}"))
        gamma = solve_gamma(ts.a, tts.a, theta, alpha)
        out.append(Check("a relation", gamma is not None,
                         f"gamma={gamma}" if gamma is not None else
                         f"{ts.a}+{tts.a}-10-2*{theta.a}-2*{alpha} is not 2*gamma with gamma >= 0"))
        ok = (ts.delta + tts.delta - theta.delta) % 2 == 0
        out.append(Check("delta relation", ok, f"{ts.delta}+{tts.delta} vs {theta.delta} mod 2"))

    bad = []
    for i, b in enumerate(row.branches, 1):
        if orientation_cover(b.y_sigma) != row.x_sigma:
            bad.append(f"branch {i}: cover of {b.y_sigma} is {orientation_cover(b.y_sigma)}, not {row.x_sigma}")
        if orientation_cover(b.y_tausigma) != row.x_tausigma:
            bad.append(f"branch {i}: cover of {b.y_tausigma} is {orientation_cover(b.y_tausigma)}, "
                       f"not {row.x_tausigma}")
        if b.y_sigma + b.y_tausigma != b.y:
            bad.append(f"branch {i}: {b.y_sigma} + {b.y_tausigma} != {b.y}")
    out.append(Check("cover", not bad, "; ".join(bad)))

    both = bool(row.x_sigma) and bool(row.x_tausigma)
    if not both:
        out.append(Check("s_nor formula", True, "not applicable"))
    elif gamma is None:
        out.append(Check("s_nor formula", False, "not evaluated: no gamma"))
    else:
        want = s_nor_formula(alpha, fs.delta_cap, gamma)
        got = [nonorientable_count(b.y) for b in row.branches]
        out.append(Check("s_nor formula", all(g == want for g in got),
                         f"s_nor {got} vs 1+{alpha}*(2*{fs.delta_cap}-1)+{gamma} = {want}"))

    if row.x_sigma or not row.x_tausigma:
        out.append(Check("s_nor bound", True, "not applicable"))
    elif gamma is None:
        out.append(Check("s_nor bound", False, "not evaluated: no gamma"))
    else:
        bound = s_nor_bound(alpha, gamma)
        got = [nonorientable_count(b.y) for b in row.branches]
        ok = all(g <= bound for g in got) and fs.delta_cap == 0
        out.append(Check("s_nor bound", ok, f"s_nor {got} <= {bound}, delta_cap={fs.delta_cap}"))

    bad = [f"branch {i}: {euler(row.x_sigma)}+{euler(row.x_tausigma)} != 2*{euler(b.y)}"
           for i, b in enumerate(row.branches, 1)
           if euler(row.x_sigma) + euler(row.x_tausigma) != 2 * euler(b.y)]
    out.append(Check("euler", not bad, "; ".join(bad)))

    derived = Derived(ts, tts, gamma, alpha) if ts is not None and gamma is not None else None
    return out, derived


def check_row(row: TableRow) -> RowReport:
    """Run every check on each completion of the unstated flags.

    The row passes if some completion passes everything; otherwise the report
    shows the completion with the fewest failures.
    """
    try:
        cs = row.flags_sigma.completions()
        cts = row.flags_tausigma.completions()
    except ValueError as exc:
        return RowReport(row.row_id, (Check("flags", False, str(exc)),))
    results = []
    for fs in cs:
        for fts in cts:
            checks, derived = _checks_for(row, fs, fts)
            results.append((sum(not c.passed for c in checks), checks, derived, (fs, fts)))
    good = [r for r in results if r[0] == 0]
    best = good[0] if good else min(results, key=lambda r: r[0])
    note = ""
    if len(results) > 1:
        note = f"{len(good)} of {len(results)} flag completions pass"
    return RowReport(row.row_id, tuple(best[1]), best[2], best[3], note)


@dataclass(frozen=True)
class TableSummary:
    total: int
    passed: int
    reports: tuple[RowReport, ...] = field(default=())


def verify_table(rows: Iterable[TableRow]) -> TableSummary:
    reports = sorted((check_row(r) for r in rows), key=lambda rep: rep.row_id)
    return TableSummary(len(reports), sum(r.passed for r in reports), tuple(reports))


def type_sort_key(t: SurfaceType):
    return t.sort_key()


@dataclass(frozen=True)
class TypeLists:
    realized: tuple[SurfaceType, ...]
    unresolved: tuple[SurfaceType, ...]


def derive_type_lists(rows: Iterable[TableRow]) -> TypeLists:
    """Types forced by some row versus types that only occur as one of several alternatives."""
    realized: set[SurfaceType] = set()
    candidates: set[SurfaceType] = set()
    for row in rows:
        ys = {b.y for b in row.branches}
        candidates |= ys
        if len(ys) == 1:
            realized |= ys
    return TypeLists(tuple(sorted(realized, key=type_sort_key)),
                     tuple(sorted(candidates - realized, key=type_sort_key)))


def _admissible(t: K3Triple) -> bool:
    r, a, _ = t
    if not 1 <= r <= 20 or not 0 <= a <= min(r, 22 - r) or (r - a) % 2:
        return False
    try:
        k3_real_type(t)
    except NotK3TypeError:
        return False
    return True


def k3_candidates() -> list[K3Triple]:
    """Triples allowed by the fixed-locus formula with 1 <= r <= 20."""
    return [K3Triple(r, a, d) for r in range(1, 21) for a in range(0, min(r, 22 - r) + 1)
            for d in (0, 1) if _admissible(K3Triple(r, a, d))]


def enumerate_candidates(theta: K3Triple) -> list[Derived]:
    """Necessary conditions only: a superset of the actions that actually exist."""
    theta = K3Triple(*theta)
    if theta not in THETA_TRIPLES:
        raise ClassificationError(f"{theta} is not an allowed theta")
    out = []
    for sigma in k3_candidates():
        for gamma in range(0, 11):
            for alpha in (0, 1):
                try:
                    partner = partner_triple(sigma, theta, gamma, alpha)
                except ClassificationError:
                    continue
                if _admissible(partner):
                    out.append(Derived(sigma, partner, gamma, alpha))
    return out
