import pytest

from kh_finite.algebra import AbelianGroup, ContractViolation, LaurentPolynomial
from kh_finite.complex import HomologyTable, graded_euler, homology
from kh_finite.diagram import disjoint_union, mirror, parse_pd
from kh_finite.invariants import Q_PLUS_Q_INV, jones_oracle, kunneth_predicted
from kh_finite.khovanov import (FrobeniusGenerator, V_MINUS, V_PLUS, khovanov_complex,
                                khovanov_homology, reduced_complex)

from conftest import golden_table

UNKNOT_H = HomologyTable({(0, -1): AbelianGroup.free(1), (0, 1): AbelianGroup.free(1)})


def test_generator_degrees():
    assert FrobeniusGenerator(V_PLUS).degree == 1 and FrobeniusGenerator(V_MINUS).degree == -1


def test_unknot(table):
    c = khovanov_complex(table["0_1"])
    assert c.bidegrees() == [(0, -1), (0, 1)]
    assert homology(c) == UNKNOT_H
    assert graded_euler(c) == Q_PLUS_Q_INV


def test_reduced_unknot(table):
    c = khovanov_complex(table["0_1"], reduced=True)
    assert homology(c) == HomologyTable({(0, 0): AbelianGroup.free(1)})
    assert graded_euler(c) == LaurentPolynomial.const(1)


def test_hopf_chain_shape(table):
    c = khovanov_complex(table["hopf"])
    by_degree = {}
    for (i, _), v in c.groups.items():
        by_degree[i] = by_degree.get(i, 0) + len(v)
    assert by_degree == {0: 4, 1: 4, 2: 4}  # V⊗V -> V⊕V -> V⊗V


@pytest.mark.parametrize("name", ["0_1", "hopf", "3_1", "3_1r", "kink_pos"])
def test_matches_oracle_golden(table, name):
    assert khovanov_homology(table[name]) == golden_table(name)


def test_reduced_trefoil_golden(table):
    assert khovanov_homology(table["3_1r"], reduced=True, basepoint=1) == golden_table("3_1r_reduced")


def test_reduced_requires_basepoint(table):
    with pytest.raises(ContractViolation):
        reduced_complex(table["3_1r"])
    assert reduced_complex(table["3_1r"].with_basepoint(2)).total_rank() > 0


def test_reduced_halves_every_vertex(table):
    d = table["5_2"]
    full = khovanov_complex(d)
    red = khovanov_complex(d, reduced=True)
    assert 2 * red.total_rank() == full.total_rank()
    states_full, states_red = {}, {}
    for labels, acc in ((full.groups.values(), states_full), (red.groups.values(), states_red)):
        for lst in labels:
            for s, _ in lst:
                acc[s] = acc.get(s, 0) + 1
    assert all(2 * states_red[s] == states_full[s] for s in states_full)


def test_d_squared_zero_on_table(table):
    for d in table.values():
        khovanov_complex(d, check=True)
        khovanov_complex(d, reduced=True, check=True)


def test_euler_equals_state_sum(table):
    for name, d in table.items():
        assert graded_euler(khovanov_complex(d)) == jones_oracle(d), name


def test_reduced_euler_factor(table):
    for name, d in table.items():
        if d.components == 1:
            red = graded_euler(khovanov_complex(d, reduced=True))
            assert red * Q_PLUS_Q_INV == jones_oracle(d), name


def test_disjoint_unknot_multiplies_euler(table):
    d = table["5_2"]
    u = disjoint_union(d, table["0_1"])
    assert graded_euler(khovanov_complex(u)) == Q_PLUS_Q_INV * jones_oracle(d)


def test_mirror_duality_free_ranks(table):
    for name, d in table.items():
        if d.n > 6:
            continue
        h, hm = khovanov_homology(d), khovanov_homology(mirror(d))
        flipped = {(-i, -j): r for (i, j), r in h.free_ranks().items()}
        assert hm.free_ranks() == flipped, name


def test_suspension_by_unknot(table):
    for name, d in table.items():
        if d.n > 6:
            continue
        lhs = khovanov_homology(disjoint_union(d, table["0_1"]))
        assert lhs == kunneth_predicted(khovanov_homology(d), UNKNOT_H), name


def test_pd_with_loop_and_crossings():
    d = parse_pd("X[1,1,2,2](+) O")
    assert khovanov_homology(d) == kunneth_predicted(UNKNOT_H, UNKNOT_H)
