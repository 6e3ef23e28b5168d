import math
import random

import pytest
from hypothesis import given, strategies as st

from committee_dp import (DeletionKind, Model, Objective, Profile, Rule, Structure, detect_sc,
                          detect_sp, find_deletion_set, oracle_cc, solve_cc_near_max,
                          solve_cc_nearsc_approval, solve_cc_nearsc_linear, solve_cc_nearsp_approval,
                          solve_cc_nearsp_linear, solve_cc_sc, solve_cc_sp, validate_solution)
from committee_dp.cc_solvers import NotStructuredError, ordered_partitions
from committee_dp.generators import generate
from conftest import approval

OBJECTIVES = st.sampled_from([Objective.SUM, Objective.MAX])


def model_of(p):
    return Model.APPROVAL_BINARY if p.kind.value == "approval" else Model.BORDA


def test_full_committee_is_free_under_borda():
    p = generate("sp-linear", 6, 4, 1)
    assert solve_cc_sp(p, detect_sp(p).order, 4).score == 0


def test_singletons():
    p = approval({1}, {2}, {3})
    assert solve_cc_sp(p, [1, 2, 3], 1).score == 2
    assert oracle_cc(p, None, 2, Objective.SUM).score == 1


def test_disjoint_cover():
    p = approval({1}, {1}, {2}, {2})
    assert solve_cc_sc(p, [1, 2, 3, 4], 2).score == 0


def test_rejects_unstructured_order():
    p = approval({1, 3}, {2}, m=3)
    with pytest.raises((NotStructuredError, ValueError)):
        solve_cc_sp(p, [1, 2, 3], 1)
    with pytest.raises(ValueError):
        solve_cc_sp(p, [1, 3, 2], 0)


def test_ordered_partitions_counts():
    # ordered set partitions of 3 items: Fubini number 13
    assert sum(1 for _ in ordered_partitions([1, 2, 3])) == 13
    for blocks in ordered_partitions([1, 2, 3, 4]):
        flat = [x for b in blocks for x in b]
        assert sorted(flat) == [1, 2, 3, 4] and all(blocks)


@given(st.sampled_from(["sp-approval", "sp-linear"]), st.integers(1, 7), st.integers(1, 7),
       st.integers(0, 10**6), OBJECTIVES)
def test_sp_matches_oracle(model, n, m, seed, objective):
    p = generate(model, n, m, seed)
    k = random.Random(seed).randint(1, m)
    sol = solve_cc_sp(p, detect_sp(p).order, k, objective)
    assert sol.score == oracle_cc(p, None, k, objective).score
    assert validate_solution(p, model_of(p), k, Rule.CC, objective, sol) == sol.score


@given(st.sampled_from(["sc-approval", "sc-linear"]), st.integers(1, 7), st.integers(1, 7),
       st.integers(0, 10**6), OBJECTIVES)
def test_sc_matches_oracle(model, n, m, seed, objective):
    p = generate(model, n, m, seed)
    k = random.Random(seed).randint(1, m)
    sol = solve_cc_sc(p, detect_sc(p).order, k, objective)
    assert sol.score == oracle_cc(p, None, k, objective).score
    assert validate_solution(p, model_of(p), k, Rule.CC, objective, sol) == sol.score


def _best_block_cost(p, order, members):
    """Cheapest split of ``order`` into consecutive blocks, block r going to members[r]."""
    from committee_dp.profile import cost_table
    costs = cost_table(p, model_of(p))
    n = len(order)
    best = [0] + [math.inf] * n
    for a in members:
        nxt = best[:]
        for end in range(1, n + 1):
            for start in range(end):
                c = best[start] + sum(costs[v][a] for v in order[start:end])
                nxt[end] = min(nxt[end], c)
        best = nxt
    return best[n]


def test_sc_optimum_has_contiguous_blocks():
    from committee_dp.cc_solvers import lemma_order
    for seed in range(40):
        p = generate("sc-approval", 7, 5, seed)
        order = list(detect_sc(p).order)
        k = 1 + seed % 3
        sol = solve_cc_sc(p, order, k)
        members = [a for a in lemma_order(p, order) if a in sol.committee]
        assert _best_block_cost(p, order, members) == sol.score


NEAR = {
    ("sp", "approval"): solve_cc_nearsp_approval,
    ("sp", "linear"): solve_cc_nearsp_linear,
    ("sc", "approval"): solve_cc_nearsc_approval,
    ("sc", "linear"): solve_cc_nearsc_linear,
}


def _near(shape, kind, n, m, seed, t):
    p = generate(f"{shape}-{kind}", n, m, seed, noise_voters=t)
    structure = Structure.SP if shape == "sp" else Structure.SC
    return p, find_deletion_set(p, DeletionKind.VOTERS, structure, t)


@given(st.sampled_from(sorted(NEAR)), st.integers(2, 8), st.integers(1, 6), st.integers(0, 10**6),
       st.integers(0, 2))
def test_nearly_matches_oracle(key, n, m, seed, t):
    shape, kind = key
    if kind == "linear":
        n, m = min(n, 6), min(m, 5)
    t = min(t, n - 1)
    p, cert = _near(shape, kind, n, m, seed, t)
    k = random.Random(seed).randint(1, m)
    sol = NEAR[key](p, cert, k)
    assert sol.score == oracle_cc(p, None, k, Objective.SUM).score


@pytest.mark.parametrize("key", sorted(NEAR))
def test_nearly_without_deletions_is_the_baseline(key):
    shape, kind = key
    base = solve_cc_sp if shape == "sp" else solve_cc_sc
    for seed in range(25):
        p, cert = _near(shape, kind, 6, 5, seed, 0)
        assert cert.t == 0
        k = 1 + seed % 5
        assert NEAR[key](p, cert, k).score == base(p, cert.witness if shape == "sc" else detect_sp(p).order, k).score


def test_universal_deleted_voter_is_free():
    p = approval({1}, {1, 2}, {2, 3}, {1, 2, 3}, {3})
    cert = find_deletion_set(p, DeletionKind.VOTERS, Structure.SC, 1)
    reduced = approval({1}, {1, 2}, {2, 3}, {3})
    for k in (1, 2, 3):
        assert solve_cc_nearsc_approval(p, cert, k).score == solve_cc_sc(reduced, [1, 2, 3, 4], k).score


@given(st.sampled_from(["sp", "sc"]), st.integers(2, 6), st.integers(2, 6), st.integers(0, 10**6),
       st.integers(0, 1))
def test_near_max_matches_oracle(shape, n, m, seed, t):
    p, cert = _near(shape, "linear", n, m, seed, t)
    k = random.Random(seed).randint(1, m)
    sol = solve_cc_near_max(p, cert, k)
    assert sol.score == oracle_cc(p, None, k, Objective.MAX).score
    assert sol.extra["probes"] <= math.ceil(math.log2(m)) + 1


def test_near_max_approval_short_circuit():
    p = approval({1}, {1, 2}, {2})
    cert = find_deletion_set(p, DeletionKind.VOTERS, Structure.SC, 0)
    assert solve_cc_near_max(p, cert, 2).score == 0
