"""Suspension pipeline: stacked copies, cones, and the tensor-model check."""

import pytest

from bpsing.dgcat import a_category, gauge_isomorphic, tensor, tensor_bp
from bpsing.suspension import (
    connector,
    directed_extension,
    fukaya_bp,
    suspend,
    suspension_tower,
    verify_suspension,
)


def test_directed_extension_structure():
    E = directed_extension(a_category(2), 2)
    assert E.objects == ((1, 2), (2, 2), (1, 1), (2, 1))
    gens = [f for f in E.morphisms() if not E.is_identity(f)]
    assert len(gens) == 5
    degree_counts = {}
    for f in gens:
        degree_counts[E.degree(f)] = degree_counts.get(E.degree(f), 0) + 1
    assert degree_counts == {0: 2, 1: 3}
    # no morphisms run up the stacking direction
    assert E.hom_by_labels((1, 1), (1, 2)) == ()
    assert E.hom_by_labels((1, 2), (1, 1)) == (0,)


def test_directed_extension_composition_squares_commute():
    E = directed_extension(a_category(2), 2)

    def ref(a, b):
        i, j = E.object_index(a), E.object_index(b)
        return [f for f in E.morphisms() if f.src == i and f.tgt == j][0]

    down_then_across = E.compose(ref((1, 1), (2, 1)), ref((1, 2), (1, 1)))
    across_then_down = E.compose(ref((2, 2), (2, 1)), ref((1, 2), (2, 2)))
    assert down_then_across == across_then_down == {0: 1}


def test_directed_extension_rejects_single_level():
    with pytest.raises(ValueError):
        directed_extension(a_category(2), 1)
    with pytest.raises(ValueError):
        directed_extension(a_category(2), 0)


def test_connector_lookup():
    E = directed_extension(a_category(3), 3)
    for x in (1, 2, 3):
        for j in (1, 2):
            e = connector(E, x, j)
            assert E.degree(e) == 0
            assert E.objects[e.src] == (x, j + 1)
            assert E.objects[e.tgt] == (x, j)
    with pytest.raises(KeyError):
        connector(E, 1, 3)


def test_suspend_rejects_small_k():
    with pytest.raises(ValueError):
        suspend(a_category(2), 1)


def test_suspend_agrees_with_tensor_model():
    for A in [a_category(2), a_category(3), tensor_bp((2, 3))]:
        for k in (2, 3, 4):
            report = verify_suspension(A, k)
            assert report.dims_ok, (A, k, report.messages)
            assert report.gauge_ok and report.audit_ok and report.ok


def test_suspend_small_examples():
    S = suspend(a_category(1), 3)
    assert gauge_isomorphic(S, a_category(2), {(1, 1): 1, (1, 2): 2}).ok
    T = suspend(a_category(2), 2)
    assert gauge_isomorphic(T, a_category(2), {(1, 1): 1, (2, 1): 2}).ok


def test_suspend_output_shape():
    A = a_category(2)
    S = suspend(A, 3)
    assert S.objects == ((1, 1), (1, 2), (2, 1), (2, 2))
    model = tensor(A, a_category(2))
    assert gauge_isomorphic(S, model, {x: x for x in S.objects}).ok
    for i in range(4):
        for j in range(4):
            assert S.graded_dims(i, j) == model.graded_dims(i, j)


def test_fukaya_bp_matches_tensor_model():
    for p in [(2, 2), (2, 3), (3, 3)]:
        C = fukaya_bp(p, verify=True)
        assert C.objects == tensor_bp(p).objects
        assert gauge_isomorphic(C, tensor_bp(p), {x: x for x in C.objects}).ok


def test_suspension_tower_stages():
    tower = suspension_tower((2, 3, 4))
    assert len(tower) == 3
    assert [len(stage.objects) for stage in tower] == [1, 2, 6]
    assert tower[-1] == fukaya_bp((2, 3, 4))


def test_swapping_two_exponents_relabels_the_category():
    C = fukaya_bp((2, 3))
    D = fukaya_bp((3, 2))
    swap = {(1, 1): (1, 1), (1, 2): (2, 1)}
    assert gauge_isomorphic(C, D, swap).ok
