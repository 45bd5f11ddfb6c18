"""Classical invariants and the checks that tie them to the homology.

Polynomials in a half-integer power of a variable are stored with doubled
exponents: ``V`` is kept as a Laurent polynomial in ``s = t**(1/2)``.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from .algebra import AbelianGroup, LaurentPolynomial, evaluate_series
from .complex import BigradedComplex, HomologyTable
from .diagram import PlanarDiagram, disjoint_union, resolve, with_sign

Q_PLUS_Q_INV = LaurentPolynomial({1: 1, -1: 1})


# ---------------------------------------------------------------------------
# Jones polynomial by a Kauffman state sum (no code shared with the cube)


def _circle_count(pairs: Iterable[tuple[int, int]], vertices: set[int]) -> int:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for p, q in pairs:
        adj[p].append(q)
        adj[q].append(p)
    seen: set[int] = set()
    count = 0
    for v in vertices:
        if v in seen:
            continue
        count += 1
        stack = [v]
        seen.add(v)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def kauffman_bracket(d: PlanarDiagram) -> LaurentPolynomial:
    """Unnormalized bracket ``Σ A^(#A - #B) δ^circles`` in the variable A.

    The A-smoothing of ``X[a,b,c,d]`` pairs ``(a,b)`` and ``(c,d)``, the arcs
    bounding the two regions swept when the over-strand turns counterclockwise.
    """
    tuples = [x.arcs for x in d.crossings]
    vertices = {a for t in tuples for a in t}
    delta = LaurentPolynomial({2: -1, -2: -1})
    total = LaurentPolynomial()
    for choice in product((0, 1), repeat=len(tuples)):
        pairs = []
        for (a, b, c, e), ch in zip(tuples, choice):
            pairs += [(a, b), (c, e)] if ch == 0 else [(a, e), (b, c)]
        circles = _circle_count(pairs, vertices) + d.loops
        n_b = sum(choice)
        total = total + LaurentPolynomial.monomial(len(tuples) - 2 * n_b) * delta ** circles
    return total


def jones_oracle(d: PlanarDiagram) -> LaurentPolynomial:
    """Unnormalized Jones polynomial in q, with the unknot sent to q + 1/q.

    Equals ``(q + 1/q) V(t)`` at ``t**(1/2) = -q``.  Uses ``A**2 = -1/q``.
    """
    w = sum(x.sign for x in d.crossings)
    bracket = kauffman_bracket(d) * LaurentPolynomial.monomial(-3 * w, (-1) ** (w % 2))
    out = {}
    for e, c in bracket.coeffs.items():
        if e % 2:
            raise AssertionError("odd power of A in a normalized bracket")
        m = e // 2
        out[-m] = out.get(-m, 0) + c * (-1) ** (m % 2)
    return LaurentPolynomial(out)


def jones_polynomial(d: PlanarDiagram) -> LaurentPolynomial:
    """``V`` with ``V(unknot) = 1``, as a polynomial in ``s = t**(1/2)``."""
    return jones_oracle(d).divide_exact(Q_PLUS_Q_INV).substitute_sign()


def format_doubled(p: LaurentPolynomial, var: str = "t") -> str:
    """Render a doubled-exponent polynomial with fractional powers where needed."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.items():
        pw = "" if e == 0 else (f"{var}^{e // 2}" if e % 2 == 0 else f"{var}^({e}/2)")
        if e == 2:
            pw = var
        mag = abs(c)
        term = str(mag) if not pw else (pw if mag == 1 else f"{mag}*{pw}")
        parts.append(("-" if c < 0 else "+", term))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return text + "".join(f" {sg} {t}" for sg, t in parts[1:])


# ---------------------------------------------------------------------------
# skein relation


@dataclass(frozen=True)
class SkeinTriple:
    plus: PlanarDiagram
    minus: PlanarDiagram
    zero: PlanarDiagram


def skein_triple(d: PlanarDiagram, k: int) -> SkeinTriple:
    """The triple at crossing ``k``; the zero diagram is the oriented smoothing."""
    plus = with_sign(d, k, 1)
    return SkeinTriple(plus, with_sign(d, k, -1), resolve(plus, k, 0))


def skein_polynomial(d: PlanarDiagram) -> LaurentPolynomial:
    """``(q + 1/q) V(q)`` in doubled exponents, the normalization used by the skein check."""
    v = jones_polynomial(d)
    return v * Q_PLUS_Q_INV.scale_exponents(2)


def skein_check(t: SkeinTriple) -> LaurentPolynomial:
    """Residual of ``q^-1 J+ - q J- - (q^(1/2) - q^(-1/2)) J0`` in doubled exponents."""
    if t.plus == t.minus:
        warnings.warn("degenerate skein triple: plus and minus diagrams coincide")
    jp, jm, j0 = (skein_polynomial(x) for x in (t.plus, t.minus, t.zero))
    return (LaurentPolynomial.monomial(-2) * jp - LaurentPolynomial.monomial(2) * jm
            - LaurentPolynomial({1: 1, -1: -1}) * j0)


# ---------------------------------------------------------------------------
# Vassiliev extension and Birman-Lin coefficients


def resolutions(s) -> list[tuple[int, PlanarDiagram]]:
    """All ``(sign, diagram)`` pairs obtained by resolving the double points of ``s``."""
    ks = sorted(s.doubled)
    out = []
    for signs in product((1, -1), repeat=len(ks)):
        d = s.base
        for k, sg in zip(ks, signs):
            d = with_sign(d, k, sg)
        out.append(((-1) ** signs.count(-1), d))
    return out


def vassiliev_extend(inv: Callable, s, minus_weight=None):
    """Alternating sum of ``inv`` over the positive and negative resolutions.

    ``minus_weight``, if given, multiplies the value once per negative choice
    (a regraded extension; the plain one uses 1).
    """
    total = None
    for sg, d in resolutions(s):
        v = inv(d)
        if minus_weight is not None:
            n_minus = sum(1 for k in s.doubled if d.crossings[k].sign < 0)
            for _ in range(n_minus):
                v = v * minus_weight
        term = v * sg
        total = term if total is None else total + term
    return total


def birman_lin_coefficients(d: PlanarDiagram, order: int) -> list[Fraction]:
    """Taylor coefficients ``u_0..u_order`` of ``V(e^x)``."""
    return evaluate_series(jones_polynomial(d), order, Fraction(1, 2))


def birman_lin_invariant(i: int) -> Callable[[PlanarDiagram], Fraction]:
    """The invariant ``u_i`` as a function of a diagram."""
    def u(d):
        return birman_lin_coefficients(d, i)[i]
    u.__name__ = f"u{i}"
    return u


def _is_zero(v) -> bool:
    if isinstance(v, LaurentPolynomial):
        return v.is_zero()
    return v == 0


@dataclass
class FiniteTypeVerdict:
    """Outcome on a finite list of singular diagrams: a certificate, not a proof."""

    order: int
    vanishes: bool
    checked: int
    failures: list = field(default_factory=list)


def finite_type_test(inv: Callable, order: int, strata: Iterable) -> FiniteTypeVerdict:
    strata = list(strata)
    failures = []
    for s in strata:
        if len(s.doubled) != order + 1:
            raise ValueError(f"expected {order + 1} double points, got {len(s.doubled)}")
        v = vassiliev_extend(inv, s)
        if not _is_zero(v):
            failures.append((s, v))
    return FiniteTypeVerdict(order, not failures, len(strata), failures)


# ---------------------------------------------------------------------------
# Poincare polynomials, torsion, Kunneth


def poincare_polynomial(c: BigradedComplex | HomologyTable) -> LaurentPolynomial:
    """``Σ β_k t^k`` with ``β_k`` the rational dimension in homological degree k.

    A complex contributes its chain groups, a homology table its free ranks.
    """
    out: dict[int, int] = {}
    if isinstance(c, HomologyTable):
        items = ((i, g.free_rank) for (i, _), g in c.entries.items())
    else:
        items = ((i, len(v)) for (i, _), v in c.groups.items())
    for i, r in items:
        out[i] = out.get(i, 0) + r
    return LaurentPolynomial(out)


def tor2(h: HomologyTable) -> HomologyTable:
    """2-primary torsion per bidegree."""
    out = {}
    for k, g in h.entries.items():
        part = AbelianGroup(0, g.torsion).primary_part(2)
        if not part.is_trivial():
            out[k] = part
    return HomologyTable(out)


def kunneth_predicted(h1: HomologyTable, h2: HomologyTable) -> HomologyTable:
    """Tensor terms in degree ``i + i'`` plus Tor terms in degree ``i + i' - 1``."""
    out: dict = {}
    for (i1, j1), g1 in h1.entries.items():
        for (i2, j2), g2 in h2.entries.items():
            j = j1 + j2
            for key, g in (((i1 + i2, j), g1.tensor(g2)), ((i1 + i2 - 1, j), g1.tor(g2))):
                if not g.is_trivial():
                    out[key] = out.get(key, AbelianGroup()) + g
    return HomologyTable(out)


@dataclass
class KunnethReport:
    computed: HomologyTable
    predicted: HomologyTable
    mismatches: list

    @property
    def match(self) -> bool:
        return not self.mismatches


def compare_tables(a: HomologyTable, b: HomologyTable) -> list:
    keys = sorted(set(a.entries) | set(b.entries))
    return [k for k in keys if a[k] != b[k]]


def kunneth_check(d1: PlanarDiagram, d2: PlanarDiagram) -> KunnethReport:
    from .khovanov import khovanov_homology
    computed = khovanov_homology(disjoint_union(d1, d2))
    predicted = kunneth_predicted(khovanov_homology(d1), khovanov_homology(d2))
    return KunnethReport(computed, predicted, compare_tables(computed, predicted))


# ---------------------------------------------------------------------------
# invariant tables


def torsion_summary(h: HomologyTable) -> str:
    tors = h.torsion()
    if not tors:
        return "none"
    return " ".join(f"({i},{j}):" + "+".join(f"Z/{t}" for t in ts)
                    for (i, j), ts in sorted(tors.items()))


def invariant_row(name: str, d: PlanarDiagram) -> dict:
    from .khovanov import khovanov_homology
    h = khovanov_homology(d)
    us = birman_lin_coefficients(d, 4)
    row = {"knot": name, "jones": format_doubled(jones_polynomial(d))}
    row.update({f"u{i}": str(u) for i, u in enumerate(us)})
    row["poincare"] = poincare_polynomial(h).to_string("t")
    row["torsion"] = torsion_summary(h)
    return row


INVARIANT_COLUMNS = ["knot", "jones", "u0", "u1", "u2", "u3", "u4", "poincare", "torsion"]


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=INVARIANT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, sort_keys=True)
