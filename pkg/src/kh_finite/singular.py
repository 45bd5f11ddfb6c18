"""Wall-crossing maps, singular-knot complexes and the finiteness checks.

Changing crossing k of ``D`` from over to under exchanges its 0- and
1-smoothings, so a state ``s`` of ``D`` with bit k = 0 has the same circles as
the state ``s + 2^k`` of the flipped diagram.  The wall-crossing map sends a
generator ``(s, mask)`` to ``ε(s) (s + 2^k, mask)`` and kills states with bit
k = 1.  The sign ``ε(s) = (-1)^(1-bits of s above k)`` makes it commute with
the cube differential, and makes the maps for two crossings anticommute.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .algebra import AbelianGroup, ContractViolation, IntMatrix, LaurentPolynomial
from .complex import (BigradedComplex, ChainMap, HomologyTable, betti_mod_p, cone, direct_sum,
                      homology, identity_map, regrade, shift, table_shift, tensor)
from .diagram import PlanarDiagram, flip_crossing, resolve
from .invariants import jones_oracle, tor2
from .khovanov import khovanov_complex, khovanov_homology

DEFAULT_WINDOW = (8, 16)


@dataclass(frozen=True)
class SingularDiagram:
    """A diagram whose crossings in ``doubled`` are double points."""

    base: PlanarDiagram
    doubled: frozenset = frozenset()

    def __post_init__(self):
        ks = frozenset(self.doubled)
        object.__setattr__(self, "doubled", ks)
        bad = [k for k in ks if not 0 <= k < self.base.n]
        if bad:
            raise IndexError(f"double points {bad} out of range for {self.base.n} crossings")

    @property
    def codimension(self) -> int:
        return len(self.doubled)

    def to_json(self) -> dict:
        return {"diagram": self.base.render(), "name": self.base.name,
                "doubled": sorted(self.doubled)}


def wall_crossing_degree(d: PlanarDiagram, k: int) -> tuple[int, int]:
    """Bidegree of the wall-crossing map at crossing k."""
    return (0, -2) if d.crossings[k].sign > 0 else (2, 4)


def _unwrap(label, depth):
    """Strip ``depth`` cone tags; return (number of target tags, cube label)."""
    tags = 0
    for _ in range(depth):
        t, label = label
        tags += t
    return tags, label


def _wrap_like(label, depth, inner):
    if depth == 0:
        return inner
    t, rest = label
    return (t, _wrap_like(rest, depth - 1, inner))


def wall_crossing(d: PlanarDiagram, k: int, source: BigradedComplex | None = None,
                  target: BigradedComplex | None = None, depth: int = 0,
                  reduced: bool = False) -> ChainMap:
    """The wall-crossing chain map ``C(D) -> C(D with crossing k flipped)``.

    ``source``/``target`` may be iterated cones of ``depth`` levels built over
    other crossings; the map then acts on each cube summand with the sign
    ``(-1)^(number of target tags)``.
    """
    if not 0 <= k < d.n:
        raise IndexError(f"crossing index {k} out of range for {d.n} crossings")
    if source is None:
        source = khovanov_complex(d, reduced=reduced)
    if target is None:
        target = khovanov_complex(flip_crossing(d, k), reduced=reduced)
    h, q = wall_crossing_degree(d, k)
    bit = 1 << k
    blocks = {}
    for (i, j), labels in source.groups.items():
        tgt = target.index((i + h, j + q))
        ent = {}
        for col, lab in enumerate(labels):
            tags, (s, mask) = _unwrap(lab, depth)
            if s & bit:
                continue
            eps = -1 if bin(s >> (k + 1)).count("1") % 2 else 1
            if tags % 2:
                eps = -eps
            row = tgt.get(_wrap_like(lab, depth, (s | bit, mask)))
            if row is None:
                raise ContractViolation(f"wall-crossing image missing at {(i + h, j + q)}")
            ent[(row, col)] = eps
        if ent:
            blocks[(i, j)] = IntMatrix(target.rank(i + h, j + q), len(labels), ent)
    return ChainMap(source, target, blocks, h, q)


def iterated_cone(d: PlanarDiagram, order, reduced: bool = False) -> BigradedComplex:
    """Cone over the crossings in ``order``, innermost first."""
    order = list(order)
    if not order:
        return khovanov_complex(d, reduced=reduced)
    *rest, k = order
    src = iterated_cone(d, rest, reduced)
    tgt = iterated_cone(flip_crossing(d, k), rest, reduced)
    return cone(wall_crossing(d, k, src, tgt, depth=len(rest), reduced=reduced))


def singular_complex(s: SingularDiagram, order=None, reduced: bool = False) -> BigradedComplex:
    return iterated_cone(s.base, sorted(s.doubled) if order is None else order, reduced)


def singular_homology(s: SingularDiagram, order=None, reduced: bool = False) -> HomologyTable:
    return homology(singular_complex(s, order, reduced))


# ---------------------------------------------------------------------------
# predictions


def binomial_pattern(x: HomologyTable, m: int) -> HomologyTable:
    """``⊕_l C(m, l)`` copies of ``x`` shifted by ``(2l, 0)``."""
    out = HomologyTable()
    for l in range(m + 1):
        if m and l:
            assert comb(m, l) == comb(m - 1, l - 1) + comb(m - 1, l)
        out = out + x.shifted(2 * l, 0).scaled(comb(m, l))
    return out


def prop4_predicted(d: PlanarDiagram, doubled) -> HomologyTable:
    ks = sorted(doubled)
    return binomial_pattern(khovanov_homology(resolve(d, ks, 1)) if ks else khovanov_homology(d),
                            len(ks))


def model_complex(n: int) -> BigradedComplex:
    """Rank ``C(n, l)`` in bidegree ``(2l, 0)`` and zero differential."""
    if n < 0:
        raise ValueError("n must be >= 0")
    groups = {}
    for mask in range(1 << n):
        l = bin(mask).count("1")
        groups.setdefault((2 * l, 0), []).append(mask)
    return BigradedComplex(groups)


# ---------------------------------------------------------------------------
# reports


@dataclass
class ConeReport:
    stratum: SingularDiagram
    computed: HomologyTable
    predicted: HomologyTable
    shift: tuple[int, int] | None
    notes: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "match" if self.shift is not None else "mismatch"

    def to_json(self) -> dict:
        out = {"stratum": self.stratum.to_json(), "computed": self.computed.to_json(),
               "predicted": self.predicted.to_json(),
               "shift": list(self.shift) if self.shift is not None else None,
               "verdict": self.verdict}
        if self.notes:
            out["notes"] = self.notes
        return out

    def render(self) -> str:
        name = self.stratum.base.name or self.stratum.base.render()
        lines = [f"{name} doubled={sorted(self.stratum.doubled)}: {self.verdict}"
                 + (f" shift={self.shift}" if self.shift is not None else ""),
                 "computed:", self.computed.render(), "predicted:", self.predicted.render()]
        for k, v in self.notes.items():
            lines.append(f"{k}: {v}")
        return "\n".join(lines)


def _f2_shift(computed_complex, x_complex, window):
    """Shift between dim H(cone; F2) and two copies of dim H(X; F2), if any."""
    a = betti_mod_p(computed_complex, 2)
    b = betti_mod_p(x_complex, 2)
    for h in range(-window[0], window[0] + 1):
        for q in range(-window[1], window[1] + 1):
            two = dict(b)
            for (i, j), r in b.items():
                two[(i + h, j + q)] = two.get((i + h, j + q), 0) + r
            if two == a:
                return [h, q]
    return None


def prop3_check(d: PlanarDiagram, k: int, window=DEFAULT_WINDOW,
                diagnostics: bool = False) -> ConeReport:
    """Compare ``H(cone(ω_k))`` with ``H(X) ⊕ H(X)[2]`` for X the 1-resolution at k."""
    c = cone(wall_crossing(d, k))
    computed = homology(c)
    x = resolve(d, k, 1)
    predicted = binomial_pattern(khovanov_homology(x), 1)
    report = ConeReport(SingularDiagram(d, frozenset({k})), computed, predicted,
                        table_shift(predicted, computed, window))
    if diagnostics:
        report.notes["f2_two_copies_shift"] = _f2_shift(c, khovanov_complex(x), window)
    return report


def prop4_check(d: PlanarDiagram, doubled, window=DEFAULT_WINDOW) -> ConeReport:
    s = SingularDiagram(d, frozenset(doubled))
    computed = singular_homology(s)
    predicted = prop4_predicted(d, s.doubled)
    m = len(s.doubled)
    column = [comb(m, i // 2) if i % 2 == 0 else 0 for i in range(2 * m + 1)]
    return ConeReport(s, computed, predicted, table_shift(predicted, computed, window),
                      {"rank_column": column})


def circles_pattern(d: PlanarDiagram) -> HomologyTable:
    """``C(n) ⊗ C(all crossings 1-resolved)`` in homology."""
    circles = khovanov_complex(resolve(d, range(d.n), 1)) if d.n else khovanov_complex(d)
    return homology(tensor(model_complex(d.n), circles))


# The claimed Hopf pattern, read as Z/2 torsion and as free rank 2, in
# consecutive homological degrees.
HOPF_CLAIM_TORSION = (AbelianGroup.cyclic(2), AbelianGroup(), AbelianGroup.cyclic(2))
HOPF_CLAIM_FREE = (AbelianGroup.free(2), AbelianGroup(), AbelianGroup.free(2))


def homological_profile(h: HomologyTable) -> tuple[AbelianGroup, ...]:
    """Groups summed over quantum degree, from the lowest to highest degree."""
    if h.is_zero():
        return ()
    by_i: dict[int, AbelianGroup] = {}
    for (i, _), g in h.entries.items():
        by_i[i] = by_i.get(i, AbelianGroup()) + g
    lo, hi = min(by_i), max(by_i)
    return tuple(by_i.get(i, AbelianGroup()) for i in range(lo, hi + 1))


@dataclass
class HopfReport:
    computed: HomologyTable
    matches_torsion_reading: bool
    matches_free_reading: bool
    torsion_free: bool

    def render(self, with_table: bool = True) -> str:
        head = ["Hopf link, computed from the cube:", self.computed.render()] if with_table else []
        return "\n".join(head + [
            "claimed pattern (Z2, 0, Z2) across homological degrees",
            f"  read as Z/2 torsion: {'agrees' if self.matches_torsion_reading else 'DISAGREES'}",
            f"  read as free rank 2: {'agrees' if self.matches_free_reading else 'DISAGREES'}",
            f"  computed homology torsion-free: {self.torsion_free}",
        ])

    def to_json(self) -> dict:
        return {"computed": self.computed.to_json(),
                "claim": "(Z2, 0, Z2)",
                "matches_torsion_reading": self.matches_torsion_reading,
                "matches_free_reading": self.matches_free_reading,
                "torsion_free": self.torsion_free}


def hopf_report(d: PlanarDiagram) -> HopfReport:
    h = khovanov_homology(d)
    prof = homological_profile(h)
    return HopfReport(h, prof == HOPF_CLAIM_TORSION, prof == HOPF_CLAIM_FREE,
                      tor2(h).is_zero() and h.torsion() == {})


@dataclass
class FinitenessReport:
    criterion: str
    n: int
    strata: list = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(r.verdict == "match" for r in self.strata)

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "n": self.n,
                "strata": [r.to_json() for r in self.strata]}


def _g_job(args):
    d, window = args
    s = SingularDiagram(d, frozenset(range(d.n)))
    computed = singular_homology(s)
    predicted = circles_pattern(d)
    return ConeReport(s, computed, predicted, table_shift(predicted, computed, window))


def _run(jobs, fn, items):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _strata(table, n):
    if isinstance(table, PlanarDiagram):
        table = {table.name or "diagram": table}
    return [d for _, d in sorted(table.items()) if d.n == n]


def finiteness_check_G(table, n: int, window=DEFAULT_WINDOW, jobs: int = 1) -> FinitenessReport:
    """Fully doubled strata of every n-crossing diagram against the binomial pattern."""
    reports = _run(jobs, _g_job, [(d, window) for d in _strata(table, n)])
    return FinitenessReport("G", n, reports)


def torsion_verdict(h: HomologyTable, hopf: HomologyTable | None = None) -> bool:
    """True when ``h`` is torsion-free and is not a Hopf pattern."""
    if not tor2(h).is_zero() or h.torsion():
        return False
    prof = homological_profile(h)
    if prof in (HOPF_CLAIM_TORSION, HOPF_CLAIM_FREE):
        return False
    if hopf is not None and table_shift(hopf, h) is not None:
        return False
    return True


def _t_job(args):
    d, hopf = args
    s = SingularDiagram(d, frozenset(range(d.n)))
    computed = singular_homology(s)
    t2 = tor2(computed)
    ok = torsion_verdict(computed, hopf)
    return ConeReport(s, computed, t2, (0, 0) if ok else None,
                      {"tor2": t2.to_json(), "torsion_free": t2.is_zero()})


def finiteness_check_T(table, n: int, hopf: HomologyTable | None = None,
                       jobs: int = 1) -> FinitenessReport:
    """Torsion-free and non-Hopf test on fully doubled n-crossing strata.

    Each report's ``predicted`` slot carries the 2-primary torsion table.
    """
    reports = _run(jobs, _t_job, [(d, hopf) for d in _strata(table, n)])
    return FinitenessReport("T", n, reports)


def cone_euler_formula(s: SingularDiagram, inv=None):
    """Graded Euler characteristic the iterated cone must have.

    Each cube summand ``e`` (the crossings in e flipped) enters with sign
    ``(-1)^(|e| + H_e)`` and quantum factor ``q^(-Q_e)``, where ``(H_e, Q_e)``
    is the total degree of the wall-crossing maps along e.  ``inv`` defaults to
    the state-sum Jones oracle.
    """
    inv = inv or jones_oracle
    ks = sorted(s.doubled)
    total = LaurentPolynomial()
    for r in range(len(ks) + 1):
        for e in combinations(ks, r):
            d = s.base
            hh = qq = 0
            for k in e:
                h, q = wall_crossing_degree(s.base, k)
                hh, qq = hh + h, qq + q
                d = flip_crossing(d, k)
            sign = (-1) ** ((r + hh) % 2)
            total = total + inv(d) * LaurentPolynomial.monomial(-qq, sign)
    return total


def random_model_combination(rng, n: int, steps: int = 4) -> BigradedComplex:
    """A random complex built from copies of ``model_complex(n)``.

    Uses direct sums, shifts, cones of random maps between sums of shifted
    model complexes, and cones of identity maps.
    """
    def shifted_model():
        return shift(model_complex(n), 2 * rng.randint(-2, 2), rng.randint(-3, 3))

    def random_map(x, y):
        blocks = {}
        for key, labels in x.groups.items():
            rows = y.rank(*key)
            if rows:
                ent = {(r, c): rng.randint(-3, 3) for r in range(rows) for c in range(len(labels))}
                blocks[key] = IntMatrix(rows, len(labels), ent)
        return ChainMap(x, y, blocks)

    c = shifted_model()
    for _ in range(steps):
        op = rng.choice(("sum", "shift", "cone", "identity"))
        if op == "sum":
            c = direct_sum(c, shifted_model())
        elif op == "shift":
            c = shift(c, rng.randint(-3, 3), rng.randint(-3, 3))
        elif op == "cone":
            x = direct_sum(shifted_model(), shifted_model())
            y = direct_sum(shifted_model(), regrade(x, 0, 0))
            c = direct_sum(c, cone(random_map(x, y)))
        else:
            c = cone(identity_map(c))
    return c
