"""End-to-end smoke tests for the Python bindings."""

import math

import pytest

import cutsel


def test_family_instance_and_lp():
    params = cutsel.FamilyParams(1.0, 0.5)
    inst = cutsel.make_instance(params)
    assert inst.n == 3
    assert inst.m == 4
    sol = cutsel.solve_lp(cutsel.RelaxedModel(inst))
    assert sol.status == cutsel.LpStatus.Optimal
    assert sol.x == pytest.approx([-0.5, 3.0, 0.5], abs=1e-9)
    assert sol.objective == pytest.approx(-32.5, abs=1e-9)


def test_window_midpoint_solves_in_one_round():
    gi = cutsel.good_cut_interval(0.5, 1.0)
    assert gi.lb < gi.ub
    mid = 0.5 * (gi.lb + gi.ub)
    out = cutsel.simulate_pure_cutting(cutsel.FamilyParams(gi.a, gi.d), mid, 50)
    assert out.status == cutsel.SimStatus.SolvedByGC
    assert out.solved_round == 1
    assert out.final_x == pytest.approx([1.0, 1.0, 0.0], abs=1e-6)


def test_instance_json_round_trip():
    inst = cutsel.make_instance(cutsel.FamilyParams(2.0, 0.25))
    text = cutsel.instance_to_json_text(inst)
    back = cutsel.instance_from_json_text(text)
    assert back.c == inst.c
    assert back.b == inst.b
    assert [t.value for t in back.coeffs] == [t.value for t in inst.coeffs]
    with pytest.raises(ValueError):
        cutsel.instance_from_json_text("{not json")


def test_encode_shapes():
    g = cutsel.encode(cutsel.make_instance(cutsel.FamilyParams(1.0, 0.0)))
    assert len(g.V) == 3
    assert len(g.C) == 4
    assert len(g.E) == 8
    assert g.V[0][0] == pytest.approx(0.1)


def test_policy_forward_and_checkpoint(tmp_path):
    g = cutsel.encode(cutsel.gen_packing(3))
    zeros = cutsel.PolicyParams.zeros(4)
    assert list(cutsel.forward(g, zeros)) == [0.0, 0.0, 0.0, 0.0]

    a = cutsel.PolicyParams.init(7, 5)
    b = cutsel.PolicyParams.init(7, 5)
    assert a.to_flat() == b.to_flat()

    path = str(tmp_path / "policy.ckpt")
    cutsel.save_checkpoint(a, path)
    loaded = cutsel.load_checkpoint(path)
    assert loaded.width == 5
    assert loaded.to_flat() == a.to_flat()


def test_gomory_cut_on_knapsack():
    inst = cutsel.MilpInstance()
    inst.name = "tiny-knapsack"
    inst.n = 1
    inst.m = 1
    inst.c = [-1.0]
    inst.lower = [0.0]
    inst.upper = [3.0]
    inst.vtype = [cutsel.VarType.Integer]
    inst.ctype = [cutsel.ConsType.Knapsack]
    inst.coeffs = [cutsel.Triplet(0, 0, 2.0)]
    inst.b = [3.0]
    inst.validate()

    model = cutsel.RelaxedModel(inst)
    sol = cutsel.solve_lp(model)
    assert sol.x == pytest.approx([1.5], abs=1e-9)
    cuts = cutsel.gomory_cuts(model, sol)
    assert len(cuts) == 1
    ratio = cuts[0].rhs / cuts[0].coeffs[0]
    assert ratio == pytest.approx(1.0, abs=1e-9)


def test_selector_collapses_duplicates():
    ctx = cutsel.SelectionContext([1.0, 1.0], [0.5, 0.5])
    cut = cutsel.Cut([1.0, 0.0], 0.25)
    weights = cutsel.ScoringWeights.simple(0.5)
    cfg = cutsel.SelectorConfig()
    res = cutsel.select_cuts([cut, cut, cut], [], weights, ctx,
                             [cutsel.VarType.Integer, cutsel.VarType.Continuous], cfg)
    assert res.n_selected == 1
    assert res.picked_indices == [0]


def test_grid_search_resolution_one():
    res = cutsel.grid_search(cutsel.gen_packing(4), 1, cutsel.RolloutConfig())
    assert len(res.table) == 4
    assert res.best_gap <= min(row.gap for row in res.table) + 1e-15


def test_adam_step_wrapper():
    state = cutsel.AdamState(2)
    theta = cutsel.adam_step([0.0, 1.0], [1.0, -2.0], state)
    expected = [-5e-4 * 1.0 / (1.0 + 1e-8), 1.0 + 5e-4 * 2.0 / (2.0 + 1e-8)]
    assert theta == pytest.approx(expected, abs=1e-12)
    assert state.t == 1


def test_exceptions_map_to_python():
    with pytest.raises(ValueError):
        cutsel.epsilon(0)
    with pytest.raises(RuntimeError):
        cutsel.load_checkpoint("/nonexistent/policy.ckpt")


def test_reproducible_rng():
    a = cutsel.SplitMix64(9)
    b = cutsel.SplitMix64(9)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    u = cutsel.SplitMix64(1).next_uniform()
    assert 0.0 <= u < 1.0
