"""Bigraded cochain complexes over Z.

A complex stores, per bidegree ``(i, j)``, an ordered list of generator labels
and the matrix of ``d: C^{i,j} -> C^{i+1,j}`` (column-vector convention, so
the matrix has ``rank C^{i+1,j}`` rows).

Sign conventions, fixed once for the whole package:

* ``shift(c, h, q)`` moves ``C^{i,j}`` to ``(i+h, j+q)`` and multiplies the
  differential by ``(-1)^h``.
* ``cone(f)`` for ``f: X -> Y`` is ``X ⊕ Y[1]`` with
  ``d(x, y) = (d_X x, f x - d_Y y)``; ``Y[1]`` is the subcomplex.
* ``tensor`` uses the Koszul sign ``d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy``.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .algebra import (AbelianGroup, ContractViolation, IntMatrix, LaurentPolynomial,
                      homology_of_pair)

Bidegree = tuple[int, int]


class BigradedComplex:
    """Free bigraded complex with labeled generators."""

    def __init__(self, groups: Mapping[Bidegree, list[Hashable]],
                 diffs: Mapping[Bidegree, IntMatrix] | None = None,
                 check: bool = True, meta: dict | None = None):
        self.groups: dict[Bidegree, list] = {k: list(v) for k, v in groups.items() if v}
        self.diffs: dict[Bidegree, IntMatrix] = {}
        for (i, j), m in (diffs or {}).items():
            if m.is_zero():
                continue
            src = len(self.groups.get((i, j), ()))
            tgt = len(self.groups.get((i + 1, j), ()))
            if m.shape != (tgt, src):
                raise ContractViolation(
                    f"differential at {(i, j)} has shape {m.shape}, expected {(tgt, src)}")
            self.diffs[(i, j)] = m
        self.meta = dict(meta or {})
        self._index = None
        if check:
            self.check()

    # -- basic access --------------------------------------------------------

    def rank(self, i: int, j: int) -> int:
        return len(self.groups.get((i, j), ()))

    def d(self, i: int, j: int) -> IntMatrix:
        m = self.diffs.get((i, j))
        if m is None:
            return IntMatrix.zero(self.rank(i + 1, j), self.rank(i, j))
        return m

    def bidegrees(self) -> list[Bidegree]:
        return sorted(self.groups)

    def total_rank(self) -> int:
        return sum(len(v) for v in self.groups.values())

    def index(self, key: Bidegree) -> dict:
        """label -> position, per bidegree (cached)."""
        if self._index is None:
            self._index = {k: {lab: n for n, lab in enumerate(v)} for k, v in self.groups.items()}
        return self._index.get(key, {})

    def check(self):
        """Raise ContractViolation unless d∘d = 0 in every bidegree."""
        for (i, j), m in self.diffs.items():
            nxt = self.diffs.get((i + 1, j))
            if nxt is not None and not (nxt @ m).is_zero():
                raise ContractViolation(f"d∘d != 0 starting at bidegree {(i, j)}")

    def is_zero(self) -> bool:
        return not self.groups

    def __repr__(self):
        return f"<BigradedComplex rank={self.total_rank()} bidegrees={len(self.groups)}>"


@dataclass
class ChainMap:
    """Blocks ``(i, j) -> IntMatrix`` from ``C^{i,j}`` to ``T^{i+h, j+q}``."""

    source: BigradedComplex
    target: BigradedComplex
    blocks: dict[Bidegree, IntMatrix] = field(default_factory=dict)
    homological_shift: int = 0
    quantum_shift: int = 0

    def __post_init__(self):
        h, q = self.homological_shift, self.quantum_shift
        for (i, j), m in list(self.blocks.items()):
            exp = (self.target.rank(i + h, j + q), self.source.rank(i, j))
            if m.shape != exp:
                raise ContractViolation(f"block at {(i, j)} has shape {m.shape}, expected {exp}")
            if m.is_zero():
                del self.blocks[(i, j)]
        self.check()

    def block(self, i: int, j: int) -> IntMatrix:
        m = self.blocks.get((i, j))
        if m is None:
            h, q = self.homological_shift, self.quantum_shift
            return IntMatrix.zero(self.target.rank(i + h, j + q), self.source.rank(i, j))
        return m

    def check(self):
        """Raise ContractViolation unless d_target ∘ f = f ∘ d_source everywhere."""
        h, q = self.homological_shift, self.quantum_shift
        keys = set(self.source.groups) | {(i - 1, j) for i, j in self.source.groups}
        for i, j in keys:
            left = self.target.d(i + h, j + q) @ self.block(i, j)
            right = self.block(i + 1, j) @ self.source.d(i, j)
            if left != right:
                raise ContractViolation(f"chain map fails to commute at bidegree {(i, j)}")


@dataclass(frozen=True)
class HomologyTable:
    """Nontrivial homology groups by bidegree."""

    entries: Mapping[Bidegree, AbelianGroup] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): g for k, g in dict(self.entries).items() if not g.is_trivial()}
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, key: Bidegree) -> AbelianGroup:
        return self.entries.get(tuple(key), AbelianGroup())

    def __eq__(self, other):
        if not isinstance(other, HomologyTable):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    def __add__(self, other: "HomologyTable") -> "HomologyTable":
        out = dict(self.entries)
        for k, g in other.entries.items():
            out[k] = out.get(k, AbelianGroup()) + g
        return HomologyTable(out)

    def is_zero(self) -> bool:
        return not self.entries

    def shifted(self, h: int, q: int) -> "HomologyTable":
        return HomologyTable({(i + h, j + q): g for (i, j), g in self.entries.items()})

    def scaled(self, k: int) -> "HomologyTable":
        return HomologyTable({key: g.scale(k) for key, g in self.entries.items()})

    def free_ranks(self) -> dict[Bidegree, int]:
        return {k: g.free_rank for k, g in self.entries.items() if g.free_rank}

    def torsion(self) -> dict[Bidegree, tuple[int, ...]]:
        return {k: g.torsion for k, g in self.entries.items() if g.torsion}

    def euler(self) -> LaurentPolynomial:
        out = LaurentPolynomial()
        for (i, j), g in self.entries.items():
            out = out + LaurentPolynomial.monomial(j, (-1) ** (i % 2) * g.free_rank)
        return out

    def to_json(self) -> dict:
        return {"entries": [[i, j, g.free_rank, list(g.torsion)]
                            for (i, j), g in self.entries.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyTable":
        return cls({(i, j): AbelianGroup(r, tuple(t)) for i, j, r, t in data["entries"]})

    def render(self) -> str:
        """Grid with homological degree across and quantum degree down."""
        if not self.entries:
            return "(zero)"
        i_vals = sorted({i for i, _ in self.entries})
        j_vals = sorted({j for _, j in self.entries}, reverse=True)
        cells = {k: str(g) for k, g in self.entries.items()}
        width = max(3, *(len(c) for c in cells.values()))
        head = "j\\i".rjust(5) + " " + " ".join(str(i).rjust(width) for i in i_vals)
        lines = [head]
        for j in j_vals:
            row = " ".join(cells.get((i, j), ".").rjust(width) for i in i_vals)
            lines.append(f"{j:5d} {row}")
        return "\n".join(lines)

    def __str__(self):
        return self.render()


# ---------------------------------------------------------------------------
# constructions


def zero_complex() -> BigradedComplex:
    return BigradedComplex({})


def unit_complex() -> BigradedComplex:
    """Z in bidegree (0, 0)."""
    return BigradedComplex({(0, 0): [()]})


def shift(c: BigradedComplex, h: int = 0, q: int = 0) -> BigradedComplex:
    sgn = -1 if h % 2 else 1
    groups = {(i + h, j + q): v for (i, j), v in c.groups.items()}
    diffs = {(i + h, j + q): (m if sgn > 0 else -m) for (i, j), m in c.diffs.items()}
    return BigradedComplex(groups, diffs, check=False, meta=c.meta)


def regrade(c: BigradedComplex, h: int = 0, q: int = 0) -> BigradedComplex:
    """Move bidegrees without the sign twist of :func:`shift`."""
    groups = {(i + h, j + q): v for (i, j), v in c.groups.items()}
    diffs = {(i + h, j + q): m for (i, j), m in c.diffs.items()}
    return BigradedComplex(groups, diffs, check=False, meta=c.meta)


def _block_diag(blocks: list[IntMatrix]) -> IntMatrix:
    ent = {}
    r0 = c0 = 0
    for m in blocks:
        for (r, c), v in m.entries.items():
            ent[(r0 + r, c0 + c)] = v
        r0 += m.rows
        c0 += m.cols
    return IntMatrix(r0, c0, ent)


def direct_sum(a: BigradedComplex, b: BigradedComplex) -> BigradedComplex:
    keys = set(a.groups) | set(b.groups)
    groups = {k: [(0, x) for x in a.groups.get(k, ())] + [(1, y) for y in b.groups.get(k, ())]
              for k in keys}
    diffs = {}
    for i, j in keys | {(i - 1, j) for i, j in keys}:
        m = _block_diag([a.d(i, j), b.d(i, j)])
        if not m.is_zero():
            diffs[(i, j)] = m
    return BigradedComplex(groups, diffs, check=False)


def cone(f: ChainMap, check: bool = True) -> BigradedComplex:
    """Mapping cone ``X ⊕ Y[1]``, regrading ``Y`` first so ``f`` has degree (0, 0)."""
    X = f.source
    Y = regrade(f.target, -f.homological_shift, -f.quantum_shift)
    keys = set(X.groups) | {(i + 1, j) for i, j in Y.groups}
    groups = {(i, j): [(0, x) for x in X.groups.get((i, j), ())]
                      + [(1, y) for y in Y.groups.get((i - 1, j), ())]
              for i, j in keys}
    diffs = {}
    for i, j in keys:
        nx0, ny0 = X.rank(i, j), Y.rank(i - 1, j)
        ent = {}
        for (r, c), v in X.d(i, j).entries.items():
            ent[(r, c)] = v
        nx1 = X.rank(i + 1, j)
        for (r, c), v in f.block(i, j).entries.items():
            ent[(nx1 + r, c)] = v
        for (r, c), v in Y.d(i - 1, j).entries.items():
            ent[(nx1 + r, nx0 + c)] = -v
        if ent:
            diffs[(i, j)] = IntMatrix(nx1 + Y.rank(i, j), nx0 + ny0, ent)
    return BigradedComplex(groups, diffs, check=check)


def tensor(a: BigradedComplex, b: BigradedComplex, check: bool = True) -> BigradedComplex:
    groups: dict[Bidegree, list] = {}
    for (i1, j1), ga in sorted(a.groups.items()):
        for (i2, j2), gb in sorted(b.groups.items()):
            key = (i1 + i2, j1 + j2)
            groups.setdefault(key, []).extend(((i1, j1), x, (i2, j2), y) for x in ga for y in gb)
    index = {k: {lab: n for n, lab in enumerate(v)} for k, v in groups.items()}
    diffs: dict[Bidegree, dict] = {}
    for (i1, j1), ga in a.groups.items():
        for (i2, j2), gb in b.groups.items():
            src = index[(i1 + i2, j1 + j2)]
            key = (i1 + i2, j1 + j2)
            tgt_key = (i1 + i2 + 1, j1 + j2)
            ent = diffs.setdefault(key, {})
            da = a.diffs.get((i1, j1))
            if da is not None:
                tgt = index[tgt_key]
                ga1 = a.groups[(i1 + 1, j1)]
                for (r, c), v in da.entries.items():
                    for y in gb:
                        k2 = (tgt[((i1 + 1, j1), ga1[r], (i2, j2), y)],
                              src[((i1, j1), ga[c], (i2, j2), y)])
                        ent[k2] = ent.get(k2, 0) + v
            db = b.diffs.get((i2, j2))
            if db is not None:
                tgt = index[tgt_key]
                gb1 = b.groups[(i2 + 1, j2)]
                sgn = -1 if i1 % 2 else 1
                for (r, c), v in db.entries.items():
                    for x in ga:
                        k2 = (tgt[((i1, j1), x, (i2 + 1, j2), gb1[r])],
                              src[((i1, j1), x, (i2, j2), gb[c])])
                        ent[k2] = ent.get(k2, 0) + sgn * v
    mats = {}
    for (i, j), ent in diffs.items():
        if ent:
            mats[(i, j)] = IntMatrix(len(groups.get((i + 1, j), ())), len(groups[(i, j)]), ent)
    return BigradedComplex(groups, mats, check=check)


def identity_map(c: BigradedComplex) -> ChainMap:
    return ChainMap(c, c, {k: IntMatrix.identity(len(v)) for k, v in c.groups.items()})


def zero_map(a: BigradedComplex, b: BigradedComplex, h: int = 0, q: int = 0) -> ChainMap:
    return ChainMap(a, b, {}, h, q)


# ---------------------------------------------------------------------------
# homology


def _homology_at(args):
    d_in, d_out = args
    return homology_of_pair(d_in, d_out, check=False)


def homology(c: BigradedComplex, jobs: int = 1) -> HomologyTable:
    """Integral homology per bidegree via Smith normal form."""
    keys = c.bidegrees()
    pairs = [(c.d(i - 1, j), c.d(i, j)) for i, j in keys]
    if jobs > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_homology_at, pairs))
    else:
        groups = [_homology_at(p) for p in pairs]
    return HomologyTable(dict(zip(keys, groups)))


def _rank_mod_p(m: IntMatrix, p: int) -> int:
    rows: dict[int, dict[int, int]] = {}
    for (r, c), v in m.entries.items():
        if v % p:
            rows.setdefault(r, {})[c] = v % p
    pivots: dict[int, dict[int, int]] = {}
    for row in rows.values():
        row = dict(row)
        while row:
            c = min(row)
            if c not in pivots:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                break
            k = row[c]
            for cc, v in pivots[c].items():
                nv = (row.get(cc, 0) - k * v) % p
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
    return len(pivots)


def betti_mod_p(c: BigradedComplex, p: int) -> dict[Bidegree, int]:
    """Dimensions of homology with coefficients in Z/p."""
    out = {}
    for i, j in c.bidegrees():
        b = c.rank(i, j) - _rank_mod_p(c.d(i, j), p) - _rank_mod_p(c.d(i - 1, j), p)
        if b:
            out[(i, j)] = b
    return out


def graded_euler(c: BigradedComplex) -> LaurentPolynomial:
    """Sum of (-1)^i q^j rank C^{i,j}."""
    out: dict[int, int] = {}
    for (i, j), v in c.groups.items():
        out[j] = out.get(j, 0) + (-1) ** (i % 2) * len(v)
    return LaurentPolynomial(out)


def euler_characteristic(c: BigradedComplex) -> int:
    return sum((-1) ** (i % 2) * len(v) for (i, _), v in c.groups.items())


def _as_table(x) -> HomologyTable:
    return x if isinstance(x, HomologyTable) else homology(x)


def table_shift(a, b, window: tuple[int, int] | None = None) -> tuple[int, int] | None:
    """A shift ``(h, q)`` with ``a.shifted(h, q) == b``, or None.

    Equal tables up to shift must align their smallest bidegrees, so the only
    candidate is read off directly; ``window`` bounds ``|h|`` and ``|q|``.
    """
    ta, tb = _as_table(a), _as_table(b)
    if ta.is_zero() and tb.is_zero():
        return (0, 0)
    if ta.is_zero() or tb.is_zero() or len(ta.entries) != len(tb.entries):
        return None
    (ia, ja), (ib, jb) = min(ta.entries), min(tb.entries)
    h, q = ib - ia, jb - ja
    if window is not None and (abs(h) > window[0] or abs(q) > window[1]):
        return None
    return (h, q) if ta.shifted(h, q) == tb else None


def same_homology(a, b, shift_tolerance: tuple[int, int] | None = None) -> tuple[int, int] | None:
    """Homology-level quasi-isomorphism test up to one bidegree shift."""
    return table_shift(a, b, shift_tolerance)


# ---------------------------------------------------------------------------
# JSON


def complex_to_json(c: BigradedComplex) -> dict:
    groups = [[i, j, len(v)] for (i, j), v in sorted(c.groups.items())]
    diffs = [[i, j, m.rows, m.cols, m.triplets()] for (i, j), m in sorted(c.diffs.items())]
    return {"groups": groups, "diffs": diffs}


def complex_from_json(data: dict) -> BigradedComplex:
    groups = {(i, j): [(i, j, n) for n in range(r)] for i, j, r in data["groups"]}
    diffs = {(i, j): IntMatrix(rows, cols, {(r, c): v for r, c, v in trip})
             for i, j, rows, cols, trip in data["diffs"]}
    return BigradedComplex(groups, diffs)


def dumps(obj) -> str:
    if isinstance(obj, BigradedComplex):
        obj = complex_to_json(obj)
    elif isinstance(obj, HomologyTable):
        obj = obj.to_json()
    return json.dumps(obj, sort_keys=True)
