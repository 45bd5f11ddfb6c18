import json
import random
from itertools import combinations

import pytest

from kh_finite.algebra import AbelianGroup, LaurentPolynomial
from kh_finite.complex import (HomologyTable, euler_characteristic, graded_euler, homology,
                               same_homology, shift, tensor)
from kh_finite.diagram import flip_crossing
from kh_finite.invariants import jones_oracle, poincare_polynomial, vassiliev_extend
from kh_finite.khovanov import khovanov_complex
from kh_finite.singular import (ConeReport, SingularDiagram, binomial_pattern, cone_euler_formula,
                                finiteness_check_G, finiteness_check_T, hopf_report,
                                iterated_cone, model_complex, prop3_check, prop4_check,
                                prop4_predicted, random_model_combination, singular_complex,
                                singular_homology, torsion_verdict, wall_crossing,
                                wall_crossing_degree)
from kh_finite.complex import cone

from conftest import golden


def test_wall_crossing_commutes_everywhere(table):
    for d in table.values():
        if d.n > 6:
            continue
        for k in range(d.n):
            f = wall_crossing(d, k)  # ChainMap checks commutation on construction
            assert (f.homological_shift, f.quantum_shift) == wall_crossing_degree(d, k)


def test_wall_crossing_reduced(table):
    d = table["3_1r"]
    assert wall_crossing(d, 1, reduced=True).blocks


def test_wall_crossing_bad_index(table):
    with pytest.raises(IndexError):
        wall_crossing(table["hopf"], 5)


def test_cone_euler_is_source_minus_regraded_target(table):
    for name in ("kink_pos", "hopf", "3_1", "4_1"):
        d = table[name]
        for k in range(d.n):
            h, q = wall_crossing_degree(d, k)
            a = graded_euler(khovanov_complex(d))
            b = graded_euler(khovanov_complex(flip_crossing(d, k)))
            regraded = b * LaurentPolynomial.monomial(-q, (-1) ** (h % 2))
            assert graded_euler(cone(wall_crossing(d, k))) == a - regraded


def test_cone_homology_matches_oracle(table):
    for entry in golden("wall_cones"):
        computed = homology(cone(wall_crossing(table[entry["knot"]], entry["crossing"])))
        assert computed == HomologyTable.from_json(entry["homology"]), entry["knot"]


def test_no_double_points_is_khovanov(table):
    d = table["3_1r"]
    assert singular_homology(SingularDiagram(d)) == homology(khovanov_complex(d))


def test_one_double_point_is_the_cone(table):
    d = table["4_1"]
    s = SingularDiagram(d, frozenset({2}))
    assert singular_homology(s) == homology(cone(wall_crossing(d, 2)))


def test_order_independence(table):
    for name, d in table.items():
        if d.n > 5:
            continue
        for pair in combinations(range(d.n), 2):
            s = SingularDiagram(d, frozenset(pair))
            a = singular_homology(s, order=pair)
            b = singular_homology(s, order=pair[::-1])
            assert same_homology(a, b) == (0, 0), (name, pair)


def test_iterated_cone_euler_formula(table):
    for name in ("3_1r", "4_1", "5_2", "hopf"):
        d = table[name]
        for m in range(1, min(3, d.n) + 1):
            s = SingularDiagram(d, frozenset(range(m)))
            assert graded_euler(singular_complex(s)) == cone_euler_formula(s), (name, m)


def test_weighted_extension_for_positive_diagrams(table):
    d = table["3_1r"]
    s = SingularDiagram(d, frozenset({0, 2}))
    assert cone_euler_formula(s) == vassiliev_extend(jones_oracle, s, LaurentPolynomial.monomial(2))


def test_model_complex():
    assert homology(model_complex(0)) == HomologyTable({(0, 0): AbelianGroup.free(1)})
    ranks = [model_complex(2).rank(i, 0) for i in range(5)]
    assert ranks == [1, 0, 2, 0, 1]
    assert same_homology(tensor(model_complex(1), model_complex(1)), model_complex(2)) == (0, 0)
    for n in range(7):
        assert euler_characteristic(model_complex(n)) == 2 ** n
        assert poincare_polynomial(model_complex(n)) == LaurentPolynomial({2: 1, 0: 1}) ** n


def test_binomial_pattern():
    x = HomologyTable({(0, 0): AbelianGroup.free(1)})
    assert binomial_pattern(x, 1) == x + x.shifted(2, 0)
    two = binomial_pattern(x, 2)
    assert [two[(2 * l, 0)].free_rank for l in range(3)] == [1, 2, 1]


def test_prop4_m1_is_prop3_prediction(table):
    d = table["3_1r"]
    assert prop4_predicted(d, {1}) == prop3_check(d, 1).predicted


def test_prop3_report_shape(table):
    rep = prop3_check(table["hopf"], 1, diagnostics=True)
    data = json.loads(json.dumps(rep.to_json()))
    assert set(data) >= {"stratum", "computed", "predicted", "shift", "verdict"}
    assert data["verdict"] in ("match", "mismatch")
    assert "computed:" in rep.render() and "predicted:" in rep.render()


def test_kink_cone_has_torsion(table):
    # H(cone) = Z + Z/2 + Z: not two copies of the single-circle homology
    rep = prop3_check(table["kink_pos"], 0, diagnostics=True)
    assert rep.computed.torsion() == {(1, 1): (2,)}
    assert rep.verdict == "mismatch"
    assert rep.notes["f2_two_copies_shift"] == [1, 2]


def test_trefoil_third_cone(table):
    rep = prop4_check(table["3_1r"], {0, 1, 2})
    # all-1 state has three circles: rank 8 homology, times 2^3
    assert sum(g.free_rank for g in rep.predicted.entries.values()) == 64
    assert rep.computed.torsion()


def test_finiteness_reports(table):
    g = finiteness_check_G(table, 1)
    assert {r.stratum.base.name for r in g.strata} == {"kink_pos", "kink_neg"}
    t = finiteness_check_T(table, 2, homology(khovanov_complex(table["hopf"])))
    assert {r.stratum.base.name for r in t.strata} == {"hopf", "hopf_neg"}
    assert json.dumps(t.to_json())


def test_finiteness_parallel_matches_serial(table):
    a = finiteness_check_G(table, 2, jobs=2).to_json()
    assert a == finiteness_check_G(table, 2).to_json()


def test_torsion_verdicts():
    free = HomologyTable({(0, 0): AbelianGroup.free(1)})
    assert torsion_verdict(free)
    assert not torsion_verdict(HomologyTable({(0, 0): AbelianGroup(1, (2,))}))


def test_hopf_report(table):
    rep = hopf_report(table["hopf"])
    assert rep.matches_free_reading and not rep.matches_torsion_reading and rep.torsion_free
    assert "DISAGREES" in rep.render()


def test_random_combinations_divisible():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(0, 6)
        assert euler_characteristic(random_model_combination(rng, n)) % 2 ** n == 0


def test_iterated_cone_depth_labels(table):
    c = iterated_cone(table["hopf"], [0, 1])
    assert c.total_rank() == 4 * khovanov_complex(table["hopf"]).total_rank()
    assert isinstance(prop3_check(table["kink_pos"], 0), ConeReport)
    assert shift(c, 0, 0).total_rank() == c.total_rank()
