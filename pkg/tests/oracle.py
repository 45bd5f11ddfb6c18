"""Brute-force Khovanov homology used to produce the golden files.

Written separately from the package: circles are frozensets of arcs, chain
groups are dense sympy matrices, and homology comes from sympy's Smith form.
Only the grading and sign conventions are shared, since the tables must be
comparable.
"""

from itertools import product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def circles_of(pairs, arcs):
    comps = [frozenset([a]) for a in arcs]
    for p, q in pairs:
        cp = next(c for c in comps if p in c)
        cq = next(c for c in comps if q in c)
        if cp is not cq:
            comps.remove(cp)
            comps.remove(cq)
            comps.append(cp | cq)
    return frozenset(comps)


def cube(tuples, signs, loops=0, base_arc=None):
    """Generators and differential entries of the (optionally reduced) cube."""
    n = len(tuples)
    top = 2 * n
    arcs = list(range(1, top + loops + 1))
    n_minus = sum(1 for s in signs if s < 0)
    n_plus = n - n_minus

    def pairs(state):
        out = []
        for (a, b, c, d), bit in zip(tuples, state):
            out += [(a, b), (c, d)] if bit == 0 else [(a, d), (b, c)]
        return out

    gens = {}
    smoothing = {}
    for state in product((0, 1), repeat=n):
        circs = sorted(circles_of(pairs(state), arcs), key=min)
        smoothing[state] = circs
        for labels in product((1, -1), repeat=len(circs)):
            assign = dict(zip(circs, labels))
            if base_arc is not None:
                bc = next(c for c in circs if base_arc in c)
                if assign[bc] != -1:
                    continue
            i = sum(state) - n_minus
            j = sum(labels) + sum(state) + n_plus - 2 * n_minus + (1 if base_arc else 0)
            gens.setdefault((i, j), []).append((state, frozenset(assign.items())))

    def edge(state, k, assign):
        tgt = tuple(1 if m == k else b for m, b in enumerate(state))
        old, new = smoothing[state], smoothing[tgt]
        gone = [c for c in old if c not in new]
        born = [c for c in new if c not in old]
        keep = {c: v for c, v in assign.items() if c in new}
        if len(gone) == 2:
            x, y = assign[gone[0]], assign[gone[1]]
            if x == -1 and y == -1:
                return tgt, []
            return tgt, [{**keep, born[0]: min(x, y)}]
        x = assign[gone[0]]
        c1, c2 = born
        if x == 1:
            return tgt, [{**keep, c1: 1, c2: -1}, {**keep, c1: -1, c2: 1}]
        return tgt, [{**keep, c1: -1, c2: -1}]

    diffs = {}
    for (i, j), src in gens.items():
        tgt_list = gens.get((i + 1, j), [])
        where = {g: r for r, g in enumerate(tgt_list)}
        m = [[0] * len(src) for _ in tgt_list]
        for col, (state, assign) in enumerate(src):
            for k in range(n):
                if state[k]:
                    continue
                sign = (-1) ** sum(state[:k])
                tgt, images = edge(state, k, dict(assign))
                for img in images:
                    m[where[(tgt, frozenset(img.items()))]][col] += sign
        diffs[(i, j)] = m
    return gens, diffs


def _mat(rows, nrows, ncols):
    return Matrix(nrows, ncols, [v for r in rows for v in r]) if nrows and ncols else None


def homology(gens, diffs):
    """{(i, j): (free_rank, torsion)} with torsion as sorted invariant factors > 1."""
    out = {}
    for (i, j), src in gens.items():
        dim = len(src)
        d_out = _mat(diffs.get((i, j), []), len(gens.get((i + 1, j), [])), dim)
        n_in = len(gens.get((i - 1, j), []))
        d_in = _mat(diffs.get((i - 1, j), []), dim, n_in)
        r_out = d_out.rank() if d_out is not None else 0
        r_in = d_in.rank() if d_in is not None else 0
        tors = []
        if d_in is not None and r_in:
            tors = sorted(int(abs(f)) for f in invariant_factors(d_in, domain=ZZ) if abs(f) > 1)
        free = dim - r_out - r_in
        if free or tors:
            out[(i, j)] = (free, tors)
    return out


def table(tuples, signs, loops=0, base_arc=None):
    gens, diffs = cube(tuples, signs, loops, base_arc)
    for (i, j), m in diffs.items():
        nxt = diffs.get((i + 1, j))
        if nxt and m and _mat(nxt, len(nxt), len(m)) is not None:
            a = _mat(nxt, len(nxt), len(m)) * _mat(m, len(m), len(m[0]) if m else 0)
            assert a.is_zero_matrix, "oracle cube has d∘d != 0"
    return homology(gens, diffs)


def to_json(tab):
    return {"entries": [[i, j, f, t] for (i, j), (f, t) in sorted(tab.items())]}


def cone_table(tuples, signs, k):
    """Homology of the cone of the wall-crossing map at crossing k, by brute force."""
    a, b, c, d = tuples[k]
    flipped = list(tuples)
    flipped[k] = (d, a, b, c) if signs[k] > 0 else (b, c, d, a)
    fsigns = list(signs)
    fsigns[k] = -signs[k]
    gx, dx = cube(tuples, signs)
    gy, dy = cube(flipped, fsigns)
    h, q = (0, -2) if signs[k] > 0 else (2, 4)

    gens = {}
    for (i, j), lst in gx.items():
        gens.setdefault((i, j), []).extend(("x", g) for g in lst)
    for (i, j), lst in gy.items():
        gens.setdefault((i - h + 1, j - q), []).extend(("y", g) for g in lst)
    pos = {key: {g: r for r, g in enumerate(lst)} for key, lst in gens.items()}

    def entries(side, src_key, diffs, sign):
        glist = (gx if side == "x" else gy).get(src_key, [])
        tlist = (gx if side == "x" else gy).get((src_key[0] + 1, src_key[1]), [])
        m = diffs.get(src_key, [])
        for r, row in enumerate(m):
            for col, v in enumerate(row):
                if v:
                    yield (side, glist[col]), (side, tlist[r]), sign * v

    mats = {}
    for key, lst in gens.items():
        i, j = key
        tgt = pos.get((i + 1, j), {})
        m = [[0] * len(lst) for _ in range(len(tgt))]
        col_of = pos[key]
        for src, dst, v in entries("x", key, dx, 1):
            m[tgt[dst]][col_of[src]] += v
        for src, dst, v in entries("y", (i - 1 + h, j + q), dy, -1):
            m[tgt[dst]][col_of[src]] += v
        for side, (state, assign) in lst:
            if side == "x" and state[k] == 0:
                eps = (-1) ** sum(state[k + 1:])
                img = ("y", (tuple(1 if m_ == k else bit for m_, bit in enumerate(state)), assign))
                m[tgt[img]][col_of[(side, (state, assign))]] += eps
        mats[key] = m
    for key, m in mats.items():
        nxt = mats.get((key[0] + 1, key[1]))
        if nxt and m and m[0]:
            prod = _mat(nxt, len(nxt), len(m)) * _mat(m, len(m), len(m[0]))
            assert prod.is_zero_matrix, "oracle cone has d∘d != 0"
    return homology(gens, mats)
