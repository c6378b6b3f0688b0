"""Topological types of closed surfaces: T_g (orientable) and U_g (non-orientable).

A :class:`SurfaceType` is a finite multiset of components written like
``U1+2U0+3T0``; ``empty`` is the empty surface.  Components are ordered
non-orientable first, then by descending genus.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .involution import K3Triple


class SurfaceSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotK3TypeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SurfaceComponent:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 1 - self.genus

    @property
    def homology_dim(self) -> int:
        """dim H_*(-; Z/2); U_g is a connected sum of g+1 projective planes."""
        return 2 + 2 * self.genus if self.orientable else 3 + self.genus

    def __str__(self) -> str:
        return f"{'T' if self.orientable else 'U'}{self.genus}"


def T(g: int) -> SurfaceComponent:
    return SurfaceComponent(True, g)


def Ug(g: int) -> SurfaceComponent:
    return SurfaceComponent(False, g)


def _sort_key(c: SurfaceComponent):
    return (c.orientable, -c.genus)


@dataclass(frozen=True)
class SurfaceType:
    components: tuple[SurfaceComponent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components, key=_sort_key)))

    @classmethod
    def of(cls, *parts: tuple[int, SurfaceComponent] | SurfaceComponent) -> "SurfaceType":
        comps = []
        for p in parts:
            if isinstance(p, SurfaceComponent):
                comps.append(p)
            else:
                m, c = p
                comps.extend([c] * m)
        return cls(tuple(comps))

    def counts(self) -> list[tuple[SurfaceComponent, int]]:
        c = Counter(self.components)
        return sorted(c.items(), key=lambda kv: _sort_key(kv[0]))

    def __add__(self, other: "SurfaceType") -> "SurfaceType":
        return SurfaceType(self.components + other.components)

    def __bool__(self) -> bool:
        return bool(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __str__(self) -> str:
        if not self.components:
            return "empty"
        return "+".join(f"{m if m > 1 else ''}{c}" for c, m in self.counts())

    def __repr__(self) -> str:
        return f"SurfaceType({str(self)!r})"

    @property
    def is_orientable(self) -> bool:
        return all(c.orientable for c in self.components)

    @property
    def total_genus(self) -> int:
        return sum(c.genus for c in self.components)

    def sort_key(self):
        return (nonorientable_count(self), self.total_genus, len(self), str(self))


EMPTY = SurfaceType()

_TERM = re.compile(r"(\d+)?([TU])(\d+)")


def parse_surface_type(text: str) -> SurfaceType:
    s = text.strip()
    if s == "empty":
        return EMPTY
    if not s:
        raise SurfaceSyntaxError("empty string", 0)
    comps: list[SurfaceComponent] = []
    pos = 0
    while True:
        m = _TERM.match(s, pos)
        if not m:
            raise SurfaceSyntaxError(f"expected a term like 2T0 or U3, got {s[pos:]!r}", pos)
        mult = 1
        if m.group(1) is not None:
            mult = int(m.group(1))
            if mult < 2:
                raise SurfaceSyntaxError("explicit multiplicity must be at least 2", pos)
        comps.extend([SurfaceComponent(m.group(2) == "T", int(m.group(3)))] * mult)
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "+":
            raise SurfaceSyntaxError(f"expected '+', got {s[pos]!r}", pos)
        pos += 1
    return SurfaceType(tuple(comps))


def format_surface_type(t: SurfaceType) -> str:
    return str(t)


def euler(t: SurfaceType) -> int:
    return sum(c.euler for c in t.components)


def homology_dim(t: SurfaceType) -> int:
    return sum(c.homology_dim for c in t.components)


def nonorientable_count(t: SurfaceType) -> int:
    return sum(1 for c in t.components if not c.orientable)


def k3_euler(r: int) -> int:
    """Euler characteristic of the real locus with fixed rank r, read off the fixed-locus type."""
    return 2 * r - 20


def k3_real_type(t: K3Triple) -> SurfaceType:
    """Real locus T_g + k T_0 of a real K3 surface with invariants (r, a, delta)."""
    r, a, delta = t
    if (r, a, delta) == (10, 10, 0):
        return EMPTY
    if (r, a, delta) == (10, 8, 0):
        return SurfaceType((T(1), T(1)))
    if 22 - r - a < 0 or r - a < 0 or (r - a) % 2:
        raise NotK3TypeError(f"triple not realizable by the fixed-locus formula: {t}")
    g = (22 - r - a) // 2
    k = (r - a) // 2
    out = SurfaceType((T(g),) + (T(0),) * k)
    if euler(out) != k3_euler(r):
        raise AssertionError(f"Euler characteristic mismatch for {t}")
    if homology_dim(out) != 24 - 2 * a:
        raise AssertionError(f"Z/2-homology mismatch for {t}")
    return out


def triple_from_type(t: SurfaceType, delta: int) -> K3Triple:
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    if not t:
        return K3Triple(10, 10, 0) if delta == 0 else _reject(t, "the empty locus has delta = 0")
    if not t.is_orientable:
        _reject(t, "contains a non-orientable component")
    if t == SurfaceType((T(1), T(1))):
        return K3Triple(10, 8, 0) if delta == 0 else _reject(t, "2T1 forces delta = 0")
    big = [c for c in t.components if c.genus > 0]
    if len(big) > 1:
        _reject(t, "more than one component of positive genus")
    g = big[0].genus if big else 0
    k = len(t) - 1
    r, a = 11 - g + k, 11 - g - k
    if delta == 0 and (r, a) in ((10, 10), (10, 8)):
        # (10,10,0) and (10,8,0) map to the special types empty and 2T1
        _reject(t, f"({r},{a},0) is reserved for {'empty' if a == 10 else '2T1'}")
    return K3Triple(r, a, delta)


def _reject(t: SurfaceType, why: str):
    raise NotK3TypeError(f"not a K3 real-locus type: {t} ({why})")


def orientation_cover(t: SurfaceType) -> SurfaceType:
    out: list[SurfaceComponent] = []
    for c in t.components:
        out.extend([c, c] if c.orientable else [T(c.genus)])
    return SurfaceType(tuple(out))


def quotient_candidates(x: SurfaceType) -> set[SurfaceType]:
    """Every y whose orientation cover is x (combinatorics only)."""
    if not x.is_orientable:
        raise ValueError(f"{x} has a non-orientable component")
    choices = []
    for comp, m in x.counts():
        g = comp.genus
        choices.append([(j, m - 2 * j, g) for j in range(m // 2 + 1)])
    out = set()
    for pick in product(*choices):
        comps: list[SurfaceComponent] = []
        for j, u, g in pick:
            comps += [T(g)] * j + [Ug(g)] * u
        out.add(SurfaceType(tuple(comps)))
    return out


def disjoint_union(parts: Iterable[SurfaceType]) -> SurfaceType:
    out = EMPTY
    for p in parts:
        out = out + p
    return out
