"""Khovanov cube of resolutions.

Generators are labeled ``(state, mask)``: ``state`` is an integer whose bit k
is the smoothing of crossing k, and bit c of ``mask`` is set when circle c
(indexed by smallest arc, see :func:`diagram.smooth`) carries ``v_minus``.

Gradings: ``i = |s| - n_-`` and ``j = #v_plus - #v_minus + |s| + n_+ - 2 n_-``.
The edge ``s -> s + 2^k`` carries the sign ``(-1)^(number of 1-bits of s
below k)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import ContractViolation, IntMatrix, LaurentPolynomial
from .complex import BigradedComplex, HomologyTable, graded_euler, homology
from .diagram import PlanarDiagram, smooth

V_PLUS, V_MINUS = 0, 1


@dataclass(frozen=True)
class FrobeniusGenerator:
    label: int

    @property
    def degree(self) -> int:
        return 1 if self.label == V_PLUS else -1


def _merge(x: int, y: int) -> int | None:
    """m on basis bits; None stands for zero."""
    if x and y:
        return None
    return x | y


def _split(x: int) -> list[tuple[int, int]]:
    return [(0, 1), (1, 0)] if x == V_PLUS else [(1, 1)]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _vertex(d: PlanarDiagram, s: int, pinned: bool):
    res = smooth(d, [(s >> k) & 1 for k in range(d.n)])
    masks = range(1 << res.circle_count)
    if pinned:
        bp = 1 << res.basepoint_circle
        masks = [m for m in masks if m & bp]
    return res, list(masks)


def _edge(d, k, res_s, res_t, mask):
    """Image of generator ``mask`` at s under the edge map to t = s + 2^k."""
    a, b, c, _ = d.crossings[k].arcs
    ca, cc = res_s.assignment[a], res_s.assignment[c]
    rep = {}
    for arc, circ in res_s.assignment.items():
        rep.setdefault(circ, arc)
    base = 0
    for circ, arc in rep.items():
        if circ in (ca, cc):
            continue
        if (mask >> circ) & 1:
            base |= 1 << res_t.assignment[arc]
    if ca != cc:
        out = _merge((mask >> ca) & 1, (mask >> cc) & 1)
        if out is None:
            return []
        return [base | (out << res_t.assignment[a])]
    ta, tb = res_t.assignment[a], res_t.assignment[b]
    return [base | (x << ta) | (y << tb) for x, y in _split((mask >> ca) & 1)]


def khovanov_complex(d: PlanarDiagram, reduced: bool = False, basepoint: int | None = None,
                     check: bool = True) -> BigradedComplex:
    """Unreduced (default) or reduced Khovanov complex of ``d``.

    The reduced complex pins the basepoint circle to ``v_minus`` and shifts
    quantum degree by +1, so the unknot gives a single Z in (0, 0).
    """
    if reduced:
        if basepoint is None:
            basepoint = d.basepoint if d.basepoint is not None else d.default_basepoint()
        d = d.with_basepoint(basepoint)
    n, n_plus, n_minus = d.n, d.n_plus, d.n_minus
    qshift = 1 if reduced else 0
    vertices = {s: _vertex(d, s, reduced) for s in range(1 << n)}

    def bideg(s, res, mask):
        h = _popcount(s)
        return (h - n_minus,
                res.circle_count - 2 * _popcount(mask) + h + n_plus - 2 * n_minus + qshift)

    groups: dict = {}
    for s, (res, masks) in vertices.items():
        for m in masks:
            groups.setdefault(bideg(s, res, m), []).append((s, m))
    index = {key: {lab: pos for pos, lab in enumerate(v)} for key, v in groups.items()}

    entries: dict = {}
    for s, (res, masks) in vertices.items():
        for k in range(n):
            if (s >> k) & 1:
                continue
            t = s | (1 << k)
            res_t = vertices[t][0]
            sign = -1 if _popcount(s & ((1 << k) - 1)) % 2 else 1
            for m in masks:
                key = bideg(s, res, m)
                col = index[key][(s, m)]
                tgt = index.get((key[0] + 1, key[1]), {})
                ent = entries.setdefault(key, {})
                for m2 in _edge(d, k, res, res_t, m):
                    row = tgt.get((t, m2))
                    if row is None:
                        raise ContractViolation("edge map left the bidegree")
                    ent[(row, col)] = ent.get((row, col), 0) + sign
    diffs = {key: IntMatrix(len(groups.get((key[0] + 1, key[1]), ())), len(groups[key]), ent)
             for key, ent in entries.items()}
    meta = {"diagram": d.render(), "reduced": reduced,
            "basepoint": d.basepoint if reduced else None}
    return BigradedComplex(groups, diffs, check=check, meta=meta)


def reduced_complex(d: PlanarDiagram, basepoint: int | None = None) -> BigradedComplex:
    if basepoint is None:
        basepoint = d.basepoint
    if basepoint is None:
        raise ContractViolation("reduced complex needs a basepoint")
    return khovanov_complex(d, reduced=True, basepoint=basepoint)


def khovanov_homology(d: PlanarDiagram, reduced: bool = False, basepoint: int | None = None,
                      jobs: int = 1) -> HomologyTable:
    return homology(khovanov_complex(d, reduced, basepoint), jobs=jobs)


def khovanov_euler(d: PlanarDiagram, reduced: bool = False) -> LaurentPolynomial:
    return graded_euler(khovanov_complex(d, reduced, check=False))
