import pytest
from hypothesis import given, settings

from conftest import EX1, EX2, complete_bipartite, contingency_instance, small_instances
from latcount import (InvalidArgumentError, NotStableError, adjacency_matrix, count, count_auto,
                      count_partite, find_stable_set, validate, verify_stable_set)


def test_verify_blocks():
    inst = contingency_instance([2, 2], [2, 2])
    S = verify_stable_set(inst, [1, 0])
    assert S.members == (0, 1)
    assert S.block_map == (1, 1, 2, 2)
    assert S.block(1) == [0, 1] and S.block(0) == []


def test_not_stable_names_column():
    inst = validate(*EX1)
    with pytest.raises(NotStableError) as err:
        verify_stable_set(inst, [0, 1])
    assert err.value.column == 0
    assert "column 1" in str(err.value)


def test_out_of_range_row():
    with pytest.raises(InvalidArgumentError):
        verify_stable_set(validate(*EX1), [2])


def test_greedy_prefers_low_degree():
    # rows 0 and 2 share no column; row 1 meets everything
    inst = validate([[1, 0, 0], [1, 1, 1], [0, 0, 1]], [1, 2, 1])
    assert find_stable_set(inst).members == (0, 2)


@pytest.mark.parametrize("Ay", [EX1, EX2])
@pytest.mark.parametrize("S", [(), (0,), (1,)])
def test_every_stable_set_gives_same_polynomial(Ay, S):
    inst = validate(*Ay)
    rep = count_partite(inst, verify_stable_set(inst, S))
    plain = count(inst)
    assert rep.coefficients == plain.coefficients
    assert rep.count == plain.count
    assert rep.sweep_terms == inst.N ** (inst.n - len(S))
    assert rep.stable_set == [v + 1 for v in S]


def test_bipartite_outer_sweep():
    inst = adjacency_matrix(complete_bipartite(3, 3))
    S = verify_stable_set(inst, [0, 1, 2])
    rep = count_partite(inst, S)
    assert rep.count == 6
    assert rep.sweep_terms == 2 ** 3
    assert rep.coefficients == count(inst).coefficients


def test_auto_switches_on_stable_size():
    inst = adjacency_matrix(complete_bipartite(2, 2))
    assert count_auto(inst).method == "partite"
    assert count_auto(validate(*EX1)).method == "plain"


def test_infeasible():
    rep = count_partite(validate([[1, 0], [0, 1]], [1, -1]))
    assert rep.count == 0


def test_workers_deterministic():
    inst = contingency_instance([2, 1, 2], [1, 2, 2])
    a, b = count_partite(inst, None, 1), count_partite(inst, None, 3)
    assert a.coefficients == b.coefficients and a.count == b.count


@settings(max_examples=60, deadline=None)
@given(small_instances())
def test_partite_equals_plain(inst):
    rep = count_partite(inst)
    plain = count(inst)
    assert rep.coefficients == plain.coefficients
    assert rep.count == plain.count
    assert rep.peak_cells > 0
