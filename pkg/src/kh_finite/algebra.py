"""Exact integer linear algebra and Laurent polynomials.

Everything here works over Python integers (arbitrary precision) or
``fractions.Fraction``; nothing touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, Mapping


class ContractViolation(ValueError):
    """Raised when an algebraic precondition (d∘d = 0, chain-map law, ...) fails."""


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix; ``entries`` maps ``(row, col)`` to a nonzero int."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in dict(self.entries).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v:
                clean[(r, c)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows: list[list[int]], ncols: int | None = None) -> "IntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, ent)

    @classmethod
    def diagonal(cls, values: Iterable[int], rows: int | None = None, cols: int | None = None):
        values = list(values)
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, {(i, i): v for i, v in enumerate(values)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {key: k * v for key, v in self.entries.items()})

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent.get(k, 0) + v
        return IntMatrix(self.rows, self.cols, ent)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        ent: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                ent[(r, c)] = ent.get((r, c), 0) + v * w
        return IntMatrix(self.rows, other.cols, ent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def triplets(self) -> list[list[int]]:
        return [[r, c, v] for (r, c), v in sorted(self.entries.items())]


def _dense_snf(a: list[list[int]], track: bool):
    """Dense Smith normal form; returns (diag, L, R) with L·A·R = diag."""
    m = len(a)
    n = len(a[0]) if m else 0
    a = [row[:] for row in a]
    left = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    right = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        ra, rs = a[dst], a[src]
        for c in range(n):
            if rs[c]:
                ra[c] += k * rs[c]
        if track:
            la, ls = left[dst], left[src]
            for c in range(m):
                if ls[c]:
                    la[c] += k * ls[c]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in a:
            if row[src]:
                row[dst] += k * row[src]
        if track:
            for row in right:
                if row[src]:
                    row[dst] += k * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        # smallest-magnitude pivot keeps entries small
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # a remainder smaller than the pivot becomes the new pivot
            rem = [(abs(a[i][t]), i, "r") for i in range(t + 1, m) if a[i][t]]
            rem += [(abs(a[t][j]), j, "c") for j in range(t + 1, n) if a[t][j]]
            if rem:
                _, idx, kind = min(rem)
                if kind == "r":
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            # enforce divisibility of the remaining block
            for i in range(t + 1, m):
                if any(a[i][j] % p for j in range(t + 1, n)):
                    add_row(t, i, 1)
                    done = False
                    break
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if track:
                left[t] = [-v for v in left[t]]
        diag.append(a[t][t])
        t += 1
    diag += [0] * (min(m, n) - len(diag))
    return diag, left, right


def smith_normal_form(m: IntMatrix):
    """Smith normal form of ``m``.

    Returns ``(diagonal, left, right)`` where ``left @ m @ right`` is the
    rectangular diagonal matrix with ``diagonal`` on its main diagonal,
    ``d_i | d_{i+1}``, all ``d_i >= 0``, and ``left``/``right`` unimodular.
    """
    if m.rows == 0 or m.cols == 0:
        return [], IntMatrix.identity(m.rows), IntMatrix.identity(m.cols)
    diag, left, right = _dense_snf(m.to_dense(), track=True)
    return diag, IntMatrix.from_dense(left, m.rows), IntMatrix.from_dense(right, m.cols)


def elementary_divisors(m: IntMatrix) -> list[int]:
    """Nonzero Smith diagonal of ``m`` (ascending), without transforms.

    Unit pivots are eliminated sparsely first (Markowitz-style choice of the
    sparsest unit), and only the leftover core goes through the dense routine.
    Khovanov differentials have mostly ±1 entries, so the core is tiny.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    ones = 0
    while True:
        pivot = None
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                if v == 1 or v == -1:
                    cost = (len(row) - 1) * (len(cols[c]) - 1)
                    if best is None or cost < best:
                        best, pivot = cost, (r, c)
                        if cost == 0:
                            break
            if best == 0:
                break
        if pivot is None:
            break
        pr, pc = pivot
        prow = rows.pop(pr)
        pv = prow[pc]
        for c in prow:
            cols[c].discard(pr)
        for r in list(cols[pc]):
            row = rows[r]
            k = row[pc] * pv  # pv = ±1, so row -= (row[pc]/pv) * prow
            for c, v in prow.items():
                nv = row.get(c, 0) - k * v
                if nv:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    cols[c].discard(r)
            if not row:
                del rows[r]
        del cols[pc]
        ones += 1
    rows = {r: row for r, row in rows.items() if row}
    if not rows:
        return [1] * ones
    rkeys = sorted(rows)
    ckeys = sorted({c for row in rows.values() for c in row})
    cidx = {c: j for j, c in enumerate(ckeys)}
    dense = [[0] * len(ckeys) for _ in rkeys]
    for i, r in enumerate(rkeys):
        for c, v in rows[r].items():
            dense[i][cidx[c]] = v
    diag, _, _ = _dense_snf(dense, track=False)
    return [1] * ones + [d for d in diag if d]


def rank(m: IntMatrix) -> int:
    return len(elementary_divisors(m))


# ---------------------------------------------------------------------------
# finitely generated abelian groups


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, p**e))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    by_prime: dict[int, list[int]] = {}
    for k in orders:
        k = abs(k)
        if k == 1:
            continue
        if k == 0:
            raise ValueError("a zero order is a free summand, not torsion")
        for p, q in _prime_powers(k):
            by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return ()
    for qs in by_prime.values():
        qs.sort(reverse=True)
    length = max(len(qs) for qs in by_prime.values())
    factors = []
    for i in range(length):
        f = 1
        for qs in by_prime.values():
            if i < len(qs):
                f *= qs[i]
        factors.append(f)
    return tuple(sorted(factors))


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk with t1 | t2 | ... | tk, all ti >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        canon = _invariant_factors(self.torsion)
        object.__setattr__(self, "torsion", canon)

    @classmethod
    def free(cls, r: int) -> "AbelianGroup":
        return cls(r, ())

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls(1, ()) if n == 0 else cls(0, (n,))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def tensor(self, other: "AbelianGroup") -> "AbelianGroup":
        free = self.free_rank * other.free_rank
        tors = [t for t in self.torsion for _ in range(other.free_rank)]
        tors += [t for t in other.torsion for _ in range(self.free_rank)]
        tors += [gcd(s, t) for s in self.torsion for t in other.torsion]
        return AbelianGroup(free, tuple(tors))

    def tor(self, other: "AbelianGroup") -> "AbelianGroup":
        """Tor_1^Z of two finitely generated groups (only torsion parts contribute)."""
        return AbelianGroup(0, tuple(gcd(s, t) for s in self.torsion for t in other.torsion))

    def primary_part(self, p: int) -> "AbelianGroup":
        parts = []
        for t in self.torsion:
            q = 1
            while t % p == 0:
                t //= p
                q *= p
            parts.append(q)
        return AbelianGroup(0, tuple(parts))

    def scale(self, k: int) -> "AbelianGroup":
        """Direct sum of ``k`` copies."""
        return AbelianGroup(self.free_rank * k, self.torsion * k)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology_of_pair(d_in: IntMatrix, d_out: IntMatrix, check: bool = True) -> AbelianGroup:
    """ker(d_out) / im(d_in) for ``d_in: Z^a -> Z^n`` and ``d_out: Z^n -> Z^b``."""
    if d_in.rows != d_out.cols:
        raise ContractViolation(f"pair not composable: {d_in.shape} then {d_out.shape}")
    if check and not (d_out @ d_in).is_zero():
        raise ContractViolation("d_out @ d_in != 0")
    n = d_out.cols
    divs_in = elementary_divisors(d_in)
    r_out = rank(d_out)
    return AbelianGroup(n - r_out - len(divs_in), tuple(d for d in divs_in if d > 1))


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPolynomial:
    """Integer Laurent polynomial in one variable, stored as ``{exponent: coeff}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def const(cls, c: int) -> "LaurentPolynomial":
        return cls({0: c})

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.const(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPolynomial) else -int(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: other * c for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({e * k: c ** (-k)})
        out = LaurentPolynomial.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale_exponents(self, k: int) -> "LaurentPolynomial":
        """Substitute ``x -> x**k``."""
        return LaurentPolynomial({k * e: c for e, c in self.coeffs.items()})

    def halve_exponents(self) -> "LaurentPolynomial":
        if any(e % 2 for e in self.coeffs):
            raise ValueError("odd exponent present")
        return LaurentPolynomial({e // 2: c for e, c in self.coeffs.items()})

    def substitute_sign(self) -> "LaurentPolynomial":
        """Substitute ``x -> -x``."""
        return LaurentPolynomial({e: c * (-1) ** (e % 2) for e, c in self.coeffs.items()})

    def evaluate(self, x):
        x = Fraction(x)
        return sum((c * x**e for e, c in self.coeffs.items()), Fraction(0))

    def divide_exact(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises ValueError if ``other`` does not divide ``self``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial()
        rem = dict(self.coeffs)
        lead_e = max(other.coeffs)
        lead_c = other.coeffs[lead_e]
        span = lead_e - min(other.coeffs)
        floor = min(self.coeffs)
        quot: dict[int, int] = {}
        while rem and max(rem) - span >= floor:
            e = max(rem)
            c = rem[e]
            if c % lead_c:
                raise ValueError("inexact division")
            qc, qe = c // lead_c, e - lead_e
            quot[qe] = qc
            for oe, oc in other.coeffs.items():
                k = qe + oe
                v = rem.get(k, 0) - qc * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if rem:
            raise ValueError("inexact division")
        return LaurentPolynomial(quot)

    @property
    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    @property
    def max_degree(self):
        return max(self.coeffs) if self.coeffs else None

    def items(self):
        return sorted(self.coeffs.items())

    def to_string(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        out = []
        for e, c in self.items():
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                pw = var if e == 1 else f"{var}^{e}"
                term = pw if mag == 1 else f"{mag}*{pw}"
            sign = "-" if c < 0 else "+"
            out.append((sign, term))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, term in out[1:]:
            text += f" {sign} {term}"
        return text

    def __repr__(self):
        return f"LaurentPolynomial({self.to_string()})"

    def __str__(self):
        return self.to_string()


def evaluate_series(p: LaurentPolynomial, order: int, exponent_scale=1) -> list[Fraction]:
    """Coefficients u_0..u_order of p(e^(s·x)) as a power series in x.

    ``exponent_scale`` is ``s``; pass ``Fraction(1, 2)`` when ``p`` is stored in
    doubled exponents (variable t^(1/2)).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    s = Fraction(exponent_scale)
    return [
        sum((c * (e * s) ** i for e, c in p.coeffs.items()), Fraction(0)) / factorial(i)
        for i in range(order + 1)
    ]


def clear_denominators(values: Iterable[Fraction]) -> tuple[list[int], int]:
    """Write rationals as integers over one positive common denominator."""
    values = [Fraction(v) for v in values]
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in values], den
