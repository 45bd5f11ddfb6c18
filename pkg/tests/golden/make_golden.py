"""Regenerate the golden files from the brute-force oracle (needs sympy).

    python tests/golden/make_golden.py
"""

import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

import oracle  # noqa: E402
from sympy import exp, series, symbols  # noqa: E402

# PD tuples and signs written out by hand, independent of the package parser.
DIAGRAMS = {
    "0_1": ([], [], 1),
    "hopf": ([(1, 3, 2, 4), (3, 1, 4, 2)], [1, 1], 0),
    "3_1": ([(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)], [-1, -1, -1], 0),
    "3_1r": ([(4, 2, 5, 1), (6, 4, 1, 3), (2, 6, 3, 5)], [1, 1, 1], 0),
    "kink_pos": ([(1, 1, 2, 2)], [1], 0),
}
CONES = [("kink_pos", 0), ("hopf", 0), ("3_1r", 0), ("3_1", 0)]


def main():
    for name, (tuples, signs, loops) in DIAGRAMS.items():
        tab = oracle.table(tuples, signs, loops)
        (HERE / f"{name}.json").write_text(json.dumps(oracle.to_json(tab), indent=1) + "\n")
    tuples, signs, _ = DIAGRAMS["3_1r"]
    red = oracle.table(tuples, signs, base_arc=1)
    (HERE / "3_1r_reduced.json").write_text(json.dumps(oracle.to_json(red), indent=1) + "\n")
    cones = []
    for name, k in CONES:
        tuples, signs, _ = DIAGRAMS[name]
        cones.append({"knot": name, "crossing": k,
                      "homology": oracle.to_json(oracle.cone_table(tuples, signs, k))})
    (HERE / "wall_cones.json").write_text(json.dumps(cones, indent=1) + "\n")
    # Birman-Lin coefficients of the right trefoil: V = t + t^3 - t^4 at t = e^x
    x = symbols("x")
    ser = series(exp(x) + exp(3 * x) - exp(4 * x), x, 0, 5).removeO()
    coeffs = [str(ser.coeff(x, i)) for i in range(5)]
    (HERE / "birman_lin_3_1r.json").write_text(json.dumps(coeffs) + "\n")


if __name__ == "__main__":
    main()
