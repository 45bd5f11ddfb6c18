"""Planar-diagram (PD) codes for oriented knots and links.

A crossing is a 4-tuple of arc labels read counterclockwise, starting at the
incoming under-strand.  The under-strand therefore runs ``a -> c``; the
over-strand runs ``d -> b`` (positive crossing) or ``b -> d`` (negative).

The 0-smoothing joins arcs ``(a, b)`` and ``(c, d)``; the 1-smoothing joins
``(a, d)`` and ``(b, c)``.  For a positive crossing the 0-smoothing is the
oriented one.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Iterable, Sequence


class PDParseError(ValueError):
    """Malformed PD text or a PD code that does not describe a diagram."""


@dataclass(frozen=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if len(self.arcs) != 4:
            raise PDParseError(f"crossing needs four arcs, got {self.arcs}")
        if self.sign not in (1, -1):
            raise PDParseError(f"crossing sign must be +1 or -1, got {self.sign}")

    def smoothing_pairs(self, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = self.arcs
        return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))

    def flipped(self) -> "Crossing":
        """The same site with over and under exchanged."""
        a, b, c, d = self.arcs
        # the new under-strand is the old over-strand, read from its incoming end
        arcs = (d, a, b, c) if self.sign > 0 else (b, c, d, a)
        return Crossing(arcs, -self.sign)

    def render(self) -> str:
        return "X[{},{},{},{}]({})".format(*self.arcs, "+" if self.sign > 0 else "-")


@dataclass(frozen=True)
class PlanarDiagram:
    """Oriented diagram: crossings plus ``loops`` crossingless circles.

    Arc labels are ``1..2n``; free loop ``j`` (0-based) carries the reserved
    label ``2n + 1 + j`` so that a basepoint can sit on it.
    """

    crossings: tuple[Crossing, ...] = ()
    loops: int = 0
    basepoint: int | None = None
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.basepoint is not None and self.basepoint not in self.arc_labels():
            raise PDParseError(f"basepoint {self.basepoint} is not an arc label")

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def loop_labels(self) -> list[int]:
        return [2 * self.n + 1 + j for j in range(self.loops)]

    def arc_labels(self) -> list[int]:
        return list(range(1, 2 * self.n + 1)) + self.loop_labels()

    @property
    def components(self) -> int:
        return len(_trace(self.crossing_tuples())) + self.loops

    def crossing_tuples(self) -> list[tuple[int, int, int, int]]:
        return [x.arcs for x in self.crossings]

    def with_basepoint(self, arc: int | None) -> "PlanarDiagram":
        return replace(self, basepoint=arc)

    def default_basepoint(self) -> int:
        return min(self.arc_labels())

    def render(self) -> str:
        tokens = [x.render() for x in self.crossings] + ["O"] * self.loops
        if self.basepoint is not None:
            tokens.append(f"*{self.basepoint}")
        return " ".join(tokens)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class State:
    bits: tuple[int, ...]

    @classmethod
    def from_int(cls, value: int, n: int) -> "State":
        return cls(tuple((value >> k) & 1 for k in range(n)))

    def complement(self) -> "State":
        return State(tuple(1 - b for b in self.bits))

    def weight(self) -> int:
        return sum(self.bits)

    def __len__(self):
        return len(self.bits)


@dataclass(frozen=True)
class SmoothingResult:
    circle_count: int
    assignment: dict
    basepoint_circle: int | None = None

    def circles(self) -> list[list[int]]:
        out = [[] for _ in range(self.circle_count)]
        for arc, idx in sorted(self.assignment.items()):
            out[idx].append(arc)
        return out


# ---------------------------------------------------------------------------
# component tracing and orientation


def _slots(tuples: Sequence[Sequence[int]]) -> dict[int, list[tuple[int, int]]]:
    where: dict[int, list[tuple[int, int]]] = {}
    for x, arcs in enumerate(tuples):
        for p, arc in enumerate(arcs):
            where.setdefault(arc, []).append((x, p))
    return where


def _trace(tuples: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    """Split the strands into components.

    Each component is the cyclic list of ``(crossing, entry_slot)`` passes in
    one traversal direction (the one that enters its first pass at the lower
    slot of the strand pair).
    """
    where = _slots(tuples)
    seen: set[tuple[int, int]] = set()
    comps = []
    for x in range(len(tuples)):
        for p in (0, 1):
            if (x, p) in seen or (x, p + 2) in seen:
                continue
            comp = []
            cx, cp = x, p
            while (cx, cp) not in seen:
                seen.add((cx, cp))
                comp.append((cx, cp))
                out = (cp + 2) % 4
                arc = tuples[cx][out]
                ends = where[arc]
                cx, cp = ends[0] if ends[1] == (cx, out) else ends[1]
            comps.append(comp)
    return comps


def _orient(tuples, prefer=None, given_signs=None):
    """Choose a direction per component and return PD tuples and signs.

    Under-strand data decides a component's direction.  A component that only
    passes over others is oriented by ``prefer`` (component index -> +1 keeps
    the traced direction, -1 reverses it), else by the sign annotations in
    ``given_signs``, else by the increasing-label convention.
    Returns ``(new_tuples, signs, comps)``.
    """
    comps = _trace(tuples)
    direction = []
    for ci, comp in enumerate(comps):
        if prefer is not None and ci in prefer:
            direction.append(prefer[ci])
            continue
        votes = {1 if p == 0 else -1 for x, p in comp if p in (0, 2)}
        if not votes and given_signs is not None:
            # a marked sign says where the over-strand enters: slot 3 if positive
            votes = {1 if (p == 3) == (given_signs[x] > 0) else -1
                     for x, p in comp if given_signs[x] is not None}
        if len(votes) > 1:
            raise PDParseError("inconsistent orientation along a component")
        if votes:
            direction.append(votes.pop())
        else:
            x, p = comp[0]
            b, d = tuples[x][1], tuples[x][3]
            enters_d = (b - d == 1) or (d - b > 1)
            direction.append(1 if (p == 3) == enters_d else -1)
    entry: dict[tuple[int, int], int] = {}
    for comp, sgn in zip(comps, direction):
        for x, p in comp:
            q = p if sgn > 0 else (p + 2) % 4
            entry[(x, q % 2)] = q
    new_tuples, signs = [], []
    for x, arcs in enumerate(tuples):
        under_in = entry[(x, 0)]
        over_in = entry[(x, 1)]
        if under_in == 2:
            arcs = tuple(arcs[2:]) + tuple(arcs[:2])
            over_in = (over_in + 2) % 4
        new_tuples.append(tuple(arcs))
        signs.append(1 if over_in == 3 else -1)
    return new_tuples, signs, comps


def _check_labels(tuples, allow_any=False):
    where = _slots(tuples)
    for arc, ends in where.items():
        if len(ends) != 2:
            raise PDParseError(f"arc {arc} appears {len(ends)} times (needs 2)")
    if not allow_any and tuples:
        if set(where) != set(range(1, 2 * len(tuples) + 1)):
            raise PDParseError("arc labels must be exactly 1..2n")


def from_tuples(tuples: Iterable[Sequence[int]], loops: int = 0, basepoint=None,
                signs: Sequence[int | None] | None = None, name=None) -> PlanarDiagram:
    """Build a validated diagram from PD 4-tuples (signs derived from orientation)."""
    tuples = [tuple(int(v) for v in t) for t in tuples]
    for t in tuples:
        if len(t) != 4:
            raise PDParseError(f"crossing needs four arcs, got {t}")
        if any(v < 1 for v in t):
            raise PDParseError(f"arc labels must be positive: {t}")
    _check_labels(tuples)
    if signs is None:
        signs = [None] * len(tuples)
    oriented, derived, _ = _orient(tuples, given_signs=signs)
    if oriented != tuples:
        raise PDParseError("inconsistent orientation: a crossing does not start at its incoming under-strand")
    for t, given, got in zip(tuples, signs, derived):
        if given is not None and given != got:
            raise PDParseError(f"inconsistent orientation: X{list(t)} marked {given:+d}, derived {got:+d}")
    crossings = tuple(Crossing(t, s) for t, s in zip(tuples, derived))
    return PlanarDiagram(crossings, loops, basepoint, name)


_TOKEN = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\](?:\(([+-])\))?$")


def parse_pd(text: str, name: str | None = None) -> PlanarDiagram:
    """Parse one diagram: ``X[a,b,c,d](±)`` tokens, ``O`` loops, ``*a`` basepoint."""
    text = text.split("#", 1)[0]
    tuples, signs, loops, basepoint = [], [], 0, None
    for tok in text.replace(",X", " X").split():
        if tok == "O":
            loops += 1
        elif tok.startswith("*"):
            if basepoint is not None:
                raise PDParseError("more than one basepoint marker")
            try:
                basepoint = int(tok[1:])
            except ValueError:
                raise PDParseError(f"malformed basepoint token {tok!r}") from None
        else:
            m = _TOKEN.match(tok)
            if not m:
                raise PDParseError(f"malformed token {tok!r}")
            tuples.append(tuple(int(g) for g in m.groups()[:4]))
            signs.append({"+": 1, "-": -1, None: None}[m.group(5)])
    if not tuples and not loops:
        raise PDParseError("empty diagram")
    return from_tuples(tuples, loops, basepoint, signs, name)


def render_pd(d: PlanarDiagram) -> str:
    return d.render()


# ---------------------------------------------------------------------------
# smoothings


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def smooth(d: PlanarDiagram, s: State | Sequence[int]) -> SmoothingResult:
    """Resolve every crossing per ``s`` and index the circles by smallest arc."""
    bits = s.bits if isinstance(s, State) else tuple(s)
    if len(bits) != d.n:
        raise ValueError(f"state has length {len(bits)}, diagram has {d.n} crossings")
    labels = d.arc_labels()
    uf = _UnionFind(labels)
    for x, bit in zip(d.crossings, bits):
        for p, q in x.smoothing_pairs(bit):
            uf.union(p, q)
    roots = {}
    assignment = {}
    for arc in labels:  # ascending, so circle order follows smallest member
        r = uf.find(arc)
        if r not in roots:
            roots[r] = len(roots)
        assignment[arc] = roots[r]
    bp = assignment[d.basepoint] if d.basepoint is not None else None
    return SmoothingResult(len(roots), assignment, bp)


# ---------------------------------------------------------------------------
# diagram operations


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    return replace(d, crossings=tuple(x.flipped() for x in d.crossings),
                   name=f"mirror({d.name})" if d.name else None)


def flip_crossing(d: PlanarDiagram, k: int) -> PlanarDiagram:
    """Change crossing ``k`` (0-based) from over to under or back."""
    if not 0 <= k < d.n:
        raise IndexError(f"crossing index {k} out of range for {d.n} crossings")
    xs = list(d.crossings)
    xs[k] = xs[k].flipped()
    return replace(d, crossings=tuple(xs), name=None)


def with_sign(d: PlanarDiagram, k: int, sign: int) -> PlanarDiagram:
    return d if d.crossings[k].sign == sign else flip_crossing(d, k)


def disjoint_union(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    off = 2 * d1.n
    n_total = d1.n + d2.n
    xs = list(d1.crossings)
    xs += [Crossing(tuple(a + off for a in x.arcs), x.sign) for x in d2.crossings]

    def remap(d, arc, arc_off, loop_off):
        if arc is None:
            return None
        if arc <= 2 * d.n:
            return arc + arc_off
        return 2 * n_total + 1 + loop_off + (arc - 2 * d.n - 1)

    bp = remap(d1, d1.basepoint, 0, 0)
    if bp is None:
        bp = remap(d2, d2.basepoint, off, d1.loops)
    name = f"{d1.name} + {d2.name}" if d1.name and d2.name else None
    return PlanarDiagram(tuple(xs), d1.loops + d2.loops, bp, name)


def resolve(d: PlanarDiagram, k: int | Iterable[int], bit: int = 1) -> PlanarDiagram:
    """Replace crossing(s) ``k`` by their ``bit``-smoothing.

    The result is relabeled along its components and re-oriented where the
    smoothing is not orientation-compatible, so it is again a valid PD code.
    Newly closed circles become free loops, listed before the old ones.
    """
    ks = {k} if isinstance(k, int) else set(k)
    if any(not 0 <= j < d.n for j in ks):
        raise IndexError("crossing index out of range")
    labels = list(range(1, 2 * d.n + 1))
    uf = _UnionFind(labels)
    for j in ks:
        for p, q in d.crossings[j].smoothing_pairs(bit):
            uf.union(p, q)
    kept = [x for j, x in enumerate(d.crossings) if j not in ks]
    raw = [tuple(uf.find(a) for a in x.arcs) for x in kept]
    used = {a for t in raw for a in t}
    closed = sorted({uf.find(a) for a in labels} - used)
    loops = len(closed) + d.loops

    if raw:
        # keep the majority under-strand direction of each component
        comps = _trace(raw)
        prefer = {}
        for ci, comp in enumerate(comps):
            votes = [1 if p == 0 else -1 for _, p in comp if p in (0, 2)]
            prefer[ci] = 1 if votes.count(1) >= votes.count(-1) else -1
        oriented, signs, _ = _orient(raw, prefer)
        where = _slots(oriented)
        relabel: dict[int, int] = {}
        for comp in _trace(oriented):
            x, p = comp[0]
            cx, cp = (x, 0) if p in (0, 2) else (x, 3 if signs[x] > 0 else 1)
            while True:
                out = (cp + 2) % 4
                arc = oriented[cx][out]
                if arc in relabel:
                    break
                relabel[arc] = len(relabel) + 1
                ends = where[arc]
                cx, cp = ends[0] if ends[1] == (cx, out) else ends[1]
        tuples = [tuple(relabel[a] for a in t) for t in oriented]
    else:
        relabel, tuples, signs = {}, [], []

    first_loop = 2 * len(tuples) + 1
    bp = None
    if d.basepoint is not None:
        if d.basepoint > 2 * d.n:
            bp = first_loop + len(closed) + (d.basepoint - 2 * d.n - 1)
        elif uf.find(d.basepoint) in closed:
            bp = first_loop + closed.index(uf.find(d.basepoint))
        else:
            bp = relabel[uf.find(d.basepoint)]
    return from_tuples(tuples, loops, bp, signs)


# ---------------------------------------------------------------------------
# knot table


def _table_text(path: str | os.PathLike | None = None) -> str:
    if path is None:
        path = os.environ.get("KH_TABLE_PATH")
    if path:
        with open(path) as fh:
            return fh.read()
    return resources.files("kh_finite.data").joinpath("knots.pd").read_text()


def load_table(path: str | os.PathLike | None = None) -> dict[str, PlanarDiagram]:
    """Named diagrams from a ``name: tokens`` table (bundled one by default)."""
    table = {}
    for lineno, line in enumerate(_table_text(path).splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if ":" not in body:
            raise PDParseError(f"line {lineno}: expected 'name: PD code'")
        key, code = body.split(":", 1)
        key = key.strip()
        try:
            table[key] = parse_pd(code, name=key)
        except PDParseError as exc:
            raise PDParseError(f"line {lineno} ({key}): {exc}") from None
    return table


def get_knot(name: str, path=None) -> PlanarDiagram:
    table = load_table(path)
    if name not in table:
        raise KeyError(f"unknown diagram {name!r}")
    return table[name]
