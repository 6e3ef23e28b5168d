import itertools
import random

import pytest
from hypothesis import given, strategies as st

from committee_dp import (Model, Objective, Profile, Rule, detect_sc, oracle, solve_monroe_sc_max,
                          solve_monroe_sc_sum, validate_solution)
from committee_dp.generators import sc_approval
from committee_dp.monroe_sc import NEG, DPConfiguration, make_context, table_entry, violates
from committee_dp.structure import StructureError, build_index, from_solution, mnt_transform
from conftest import approval


def demo():
    # A(a)={1,2}, A(b)={3,4}, A(c)={2,3}
    return approval({1}, {1, 3}, {2, 3}, {2}, m=3)


def test_demo_instance():
    sol = solve_monroe_sc_sum(demo(), None, 2)
    assert sol.score == 0 and set(sol.committee) == {1, 2}
    assert sorted(sol.assignment.count(a) for a in sol.committee) == [2, 2]
    assert solve_monroe_sc_max(demo(), None, 2).score == 0


def test_gap_voter_is_unhappy():
    p = approval({1}, set(), {1}, m=1)
    order = detect_sc(p).order
    assert solve_monroe_sc_sum(p, order, 1).score == 1
    assert solve_monroe_sc_max(p, order, 1).score == 1


def test_voter_without_approvals_forces_max_one():
    p = approval({1}, {1, 2}, set(), {2}, m=2)
    assert solve_monroe_sc_max(p, detect_sc(p).order, 2).score == 1


def test_errors():
    with pytest.raises(ValueError):
        solve_monroe_sc_sum(demo(), None, 4)
    with pytest.raises(StructureError):
        solve_monroe_sc_sum(approval({1}, set(), {1}, m=1), [1, 2, 3], 1)


def test_table_entry_examples():
    ctx = make_context(demo(), None, 2)
    base = DPConfiguration(1, 1, 1, 2, 0, 0, 2, 2, 0, 0)
    assert table_entry(ctx, base).value == 2
    # range too small for the loads
    assert violates(ctx, DPConfiguration(1, 1, 1, 2, 0, 0, 2, 2, 1, 0).key()) == "CT3"
    assert table_entry(ctx, DPConfiguration(1, 1, 1, 2, 0, 0, 2, 2, 1, 0)).value == NEG
    # a != b with an empty load
    cfg = DPConfiguration(1, 3, 2, 3, 0, 0, 0, 1, 0, 0)
    assert violates(ctx, cfg.key()) == "CT7" and table_entry(ctx, cfg).value == NEG
    assert table_entry(ctx, cfg.key()[:13]).value == NEG


def _random_context(rng):
    n, m = rng.randint(2, 7), rng.randint(1, 5)
    prof = Profile.approval(sc_approval(n, m, rng), m)
    order = detect_sc(prof).order
    k = rng.randint(1, min(m, n))
    return prof, order, make_context(prof, order, k)


def test_entry_bounds_and_monotonicity():
    rng = random.Random(31)
    finite = 0
    for _ in range(60):
        _, _, ctx = _random_context(rng)
        idx = ctx.index
        alts = idx.alternatives
        if not alts:
            continue
        for _ in range(60):
            # mostly keys that respect CT1 and CT2
            a = rng.choice(alts)
            b = rng.choice([a, *sorted(idx.later[a])])
            lo, hi = idx.left[a], idx.right[b]
            if lo > hi:
                continue
            i = rng.randint(lo, hi)
            j = rng.randint(i, hi)
            kh, kl = rng.randint(0, 2), rng.randint(0, 2)
            na = rng.randint(0, ctx.hi)
            nb = na if a == b else rng.randint(0, ctx.hi)
            B = rng.randint(0, 1)
            prev = None
            for ns in range(0, j - i + 2):
                val = table_entry(ctx, DPConfiguration(a, b, i, j, kh, kl, na, nb, ns, B)).value
                if val != NEG:
                    finite += 1
                    assert na + (nb if a != b else 0) <= val <= j - i + 1 - ns
                if prev is not None:
                    assert val <= prev
                prev = val
    assert finite > 100


def _random_sc(rng, nmax=8, mmax=6):
    n, m = rng.randint(1, nmax), rng.randint(1, mmax)
    prof = Profile.approval(sc_approval(n, m, rng), m)
    return prof, detect_sc(prof).order


@given(st.integers(0, 10**9), st.sampled_from([Objective.SUM, Objective.MAX]))
def test_matches_oracle(seed, objective):
    rng = random.Random(seed)
    prof, order = _random_sc(rng)
    k = rng.randint(1, min(3, prof.m))
    solve = solve_monroe_sc_sum if objective is Objective.SUM else solve_monroe_sc_max
    sol = solve(prof, order, k)
    assert sol.score == oracle(prof, Rule.MONROE, k, objective).score
    assert validate_solution(prof, Model.APPROVAL_BINARY, k, Rule.MONROE, objective, sol) == sol.score
    assert sol.extra["table_score"] == sol.score


def test_reversed_order_same_score():
    rng = random.Random(32)
    for _ in range(40):
        prof, order = _random_sc(rng, 7, 5)
        k = rng.randint(1, min(3, prof.m))
        assert solve_monroe_sc_sum(prof, order, k).score == solve_monroe_sc_sum(prof, order[::-1], k).score


def test_mnt_witness_keeps_score():
    rng = random.Random(33)
    for _ in range(60):
        prof, order = _random_sc(rng, 7, 5)
        k = rng.randint(1, min(3, prof.m))
        sol = solve_monroe_sc_sum(prof, order, k)
        idx = build_index(prof, order)
        part = from_solution(idx, sol)
        out = mnt_transform(idx, part)
        assert out.misrepresentation(idx) == sol.score


def test_exhaustive_tiny():
    for m in range(1, 4):
        ballots_pool = [frozenset(s) for r in range(m + 1) for s in itertools.combinations(range(1, m + 1), r)]
        for ballots in itertools.product(ballots_pool, repeat=3):
            prof = Profile.approval(ballots, m)
            found = detect_sc(prof)
            if found is None:
                continue
            for k in range(1, m + 1):
                got = solve_monroe_sc_sum(prof, found.order, k).score
                assert got == oracle(prof, Rule.MONROE, k, Objective.SUM).score
