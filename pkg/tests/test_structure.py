import itertools
import random

import pytest

from committee_dp import Profile, build_index, inbet, inbet_hat, top_usable, usable_set
from committee_dp.structure import (PartialSolution, StructureError, all_good_collections,
                                    check_interval_lemmas, check_partial, is_good_collection,
                                    levels, maximally_good, mnt_transform, verify_mnt, verify_nt)
from conftest import random_partial, random_sc_index


def by_approvers(n, approvers):
    """Profile where alternative ``a`` is approved by the voters in ``approvers[a]``."""
    m = max(approvers)
    ballots = [{a for a, vs in approvers.items() if v in vs} for v in range(1, n + 1)]
    return build_index(Profile.approval(ballots, m))


def span(i, j):
    return set(range(i, j + 1))


def test_earlier_and_domination():
    idx = by_approvers(6, {1: span(1, 5), 2: span(2, 6), 3: span(1, 6), 4: span(1, 4)})
    assert 1 in idx.earlier[2] and 2 in idx.later[1]
    assert 3 in idx.dom[4] and 4 in idx.sub[3]
    assert idx.level[3] == 1 and idx.level[4] == 3 and idx.level[1] == 2


def test_inbet_example():
    idx = by_approvers(8, {1: {1, 2, 3}, 2: {4, 5, 6}, 3: span(2, 5), 4: {3, 4}, 5: {2, 3},
                           6: {6, 7, 8}})
    assert inbet(idx, 1, 2) == {3, 4}
    assert inbet_hat(idx, 1, 2) == {3}
    assert inbet(idx, 1, 1) == frozenset()


def test_usable_example():
    idx = by_approvers(8, {1: span(1, 6), 2: span(2, 8), 3: {2, 3, 4}, 4: span(4, 8), 5: {4, 5},
                           6: {5, 6}})
    assert usable_set(idx, 4, 6, 8, 2, 5, 8) == {6}
    assert top_usable(idx, 4, 6, 8, 2, 5, 8) == {6}
    # a promise that is not a dominator is rejected
    assert usable_set(idx, 4, 6, 8, 3, 5, 8) == frozenset()


def test_duplicate_sets_tie_break():
    idx = by_approvers(4, {1: span(1, 4), 2: span(1, 4)})
    assert idx.dom[2] == {1} and idx.dom[1] == frozenset()


def _indices(seed, count, nmax=7, mmax=5):
    rng = random.Random(seed)
    return [random_sc_index(rng, nmax, mmax) for _ in range(count)] , rng


def test_domination_is_a_strict_partial_order():
    (samples, _) = _indices(1, 150)
    for idx, _, _ in samples:
        for a in idx.alternatives:
            assert a not in idx.dom[a]
            for b in idx.dom[a]:
                assert a not in idx.dom[b]
                assert idx.dom[b] <= idx.dom[a]


def test_earlier_later_partition_incom():
    (samples, _) = _indices(2, 150)
    for idx, _, _ in samples:
        for a in idx.alternatives:
            assert idx.earlier[a] | idx.later[a] == idx.incom[a]
            assert not idx.earlier[a] & idx.later[a]
            for b in idx.earlier[a]:
                assert a in idx.later[b]


def test_levels_follow_chains():
    (samples, _) = _indices(3, 100)
    for idx, _, _ in samples:
        for a in idx.alternatives:
            assert idx.level[a] == 1 + max((idx.level[b] for b in idx.dom[a]), default=0)
        assert levels([], idx.dom) == {}


def _direct_usable(idx, c, i, j, c2, i2, j2):
    """Conditions (i)-(iii) spelled out over every subordinate."""
    out = set()
    for a in idx.sub[c]:
        la, ra = idx.left[a], idx.right[a]
        if ra < i or la > j:
            continue
        if i <= la:
            out.add(a)
            continue
        blockers_ii = idx.dom[a] & idx.sub[c2] & idx.earlier[c]
        ii = i2 <= la < i and all(idx.left[b] < i2 and any(x in idx.dom[b] for x in idx.earlier[c2])
                                  for b in blockers_ii)
        iii = la < i2 and all(c in idx.earlier[b] for b in idx.dom[a] & idx.incom[c])
        if ii or iii:
            out.add(a)
    return out


def _promises(idx, c):
    for c2 in [c, *sorted(idx.dom[c])]:
        for i2 in range(idx.left[c2], idx.left[c] + 1):
            for j2 in range(idx.right[c], idx.right[c2] + 1):
                yield c2, i2, j2


def test_usable_matches_direct_definition():
    rng = random.Random(4)
    checked = 0
    for _ in range(120):
        idx, _, _ = random_sc_index(rng, 7, 5)
        for c in idx.alternatives:
            for c2, i2, j2 in _promises(idx, c):
                for i in range(max(i2, idx.left[c]), idx.right[c] + 1):
                    for j in range(i, min(j2, idx.right[c]) + 1):
                        assert usable_set(idx, c, i, j, c2, i2, j2) == _direct_usable(idx, c, i, j, c2, i2, j2)
                        checked += 1
    assert checked > 1000


def test_usable_grows_under_widening():
    rng = random.Random(5)
    for _ in range(150):
        idx, _, _ = random_sc_index(rng, 7, 5)
        for c in idx.alternatives:
            lo, hi = idx.left[c], idx.right[c]
            for i, j in itertools.combinations_with_replacement(range(lo, hi + 1), 2):
                inner = usable_set(idx, c, i, j, 0, 0, 0)
                for i0 in range(lo, i + 1):
                    for j0 in range(j, hi + 1):
                        assert inner <= usable_set(idx, c, i0, j0, 0, 0, 0)


def test_usable_split():
    rng = random.Random(6)
    for _ in range(150):
        idx, _, _ = random_sc_index(rng, 7, 5)
        for c in idx.alternatives:
            for c2, i2, j2 in _promises(idx, c):
                for i in range(idx.left[c], idx.right[c] + 1):
                    for j in range(i + 1, idx.right[c] + 1):
                        whole = usable_set(idx, c, i, j, c2, i2, j2)
                        for cut in range(i, j):
                            assert whole == (usable_set(idx, c, i, cut, c2, i2, j2)
                                             | usable_set(idx, c, cut + 1, j, c2, i2, j2))


def test_usable_disjointness_counterexample_with_reversed_intervals():
    # y's interval before x's: the two sets can share a subordinate
    idx = by_approvers(5, {1: span(1, 5), 3: span(2, 4), 4: span(1, 4), 5: span(1, 2), 6: span(2, 5)})
    assert usable_set(idx, 4, 3, 3, 1, 1, 3) & usable_set(idx, 6, 2, 2, 1, 1, 3) == {3}


def test_usable_disjointness():
    rng = random.Random(7)
    nontrivial = 0
    for _ in range(200):
        idx, _, _ = random_sc_index(rng, 7, 6)
        for x, y in itertools.permutations(idx.alternatives, 2):
            if x not in idx.incom[y] or not idx.left[x] < idx.left[y]:
                continue
            for z in idx.dom[x]:
                for iz in range(idx.left[z], idx.left[x] + 1):
                    for jz in range(iz, idx.right[z] + 1):
                        for ix, jx in itertools.combinations_with_replacement(range(idx.left[x], idx.right[x] + 1), 2):
                            for iy, jy in itertools.combinations_with_replacement(range(idx.left[y], idx.right[y] + 1), 2):
                                if not (iz <= min(ix, iy) and max(jx, jy) <= jz):
                                    continue
                                if not jx < iy:
                                    continue
                                ux = usable_set(idx, x, ix, jx, z, iz, jz)
                                uy = usable_set(idx, y, iy, jy, z, iz, jz)
                                nontrivial += bool(ux and uy)
                                assert not ux & uy
    assert nontrivial > 0


def test_partial_solution_checks():
    idx = by_approvers(4, {1: span(1, 2), 2: span(3, 4)})
    ok = PartialSolution(frozenset({1, 2}), {1: 1, 2: 1, 3: 2, 4: 2}, (1, 4), 2)
    assert check_partial(idx, ok) == [] and verify_mnt(idx, ok).ok
    heavy = PartialSolution(frozenset({1, 2}), {1: 1, 2: 1, 3: 1, 4: 2}, (1, 4), 2)
    assert {v.clause for v in check_partial(idx, heavy)} == {"load"}
    holes = PartialSolution(frozenset({1, 2}), {1: 1, 3: 2}, (1, 4), 2)
    assert {v.clause for v in check_partial(idx, holes)} == {"domain"}
    with pytest.raises(StructureError):
        mnt_transform(idx, heavy)


def test_nt_violations_are_named():
    # 1 = {1,2,3} is earlier than 2 = {2,3,4}; serving 1 after 2 breaks nt-i
    idx = by_approvers(4, {1: span(1, 3), 2: span(2, 4)})
    bad = PartialSolution(frozenset({1, 2}), {1: 2, 2: 2, 3: 1, 4: 1}, (1, 4), 2)
    assert "nt-i" in verify_nt(idx, bad).clauses()
    fixed = mnt_transform(idx, bad)
    assert verify_mnt(idx, fixed).ok
    # dominator 1 = {1..4} happy inside the span of 2 = {2,3}
    idx = by_approvers(4, {1: span(1, 4), 2: {2, 3}})
    bad = PartialSolution(frozenset({1, 2}), {1: 2, 2: 1, 3: 2, 4: 1}, (1, 4), 2)
    assert "nt-ii" in verify_nt(idx, bad).clauses()
    assert verify_mnt(idx, mnt_transform(idx, bad)).ok


def test_mono_violations_are_named():
    idx = by_approvers(4, {1: span(1, 4), 2: span(1, 2)})
    sol = PartialSolution(frozenset({2}), {1: 2, 2: 2, 3: 2, 4: 2}, (1, 4), 1)
    assert "mono-i" in verify_mnt(idx, sol).clauses()
    fixed = mnt_transform(idx, sol)
    assert verify_mnt(idx, fixed).ok and fixed.committee == {1}


def _mnt_samples(seed, count, nmax=7, mmax=5):
    rng = random.Random(seed)
    for _ in range(count):
        idx, n, m = random_sc_index(rng, nmax, mmax)
        if not idx.alternatives:
            continue
        sol = random_partial(rng, idx, m, n)
        yield idx, sol, mnt_transform(idx, sol)


def test_mnt_transform_properties():
    for idx, sol, out in _mnt_samples(8, 400):
        assert verify_mnt(idx, out).ok, verify_mnt(idx, out).violations
        assert out.misrepresentation(idx) <= sol.misrepresentation(idx)
        assert len(out.committee) == len(sol.committee) and out.window == sol.window
        assert mnt_transform(idx, out) == out


def test_maximally_good_equals_exhaustive():
    for idx, _, out in _mnt_samples(9, 300, nmax=6):
        best = max(all_good_collections(idx, out), key=lambda c: c.signature)
        got = maximally_good(idx, out)
        assert is_good_collection(idx, out, got)
        assert got.signature == best.signature


def test_interval_lemmas_on_mnt_solutions():
    for idx, _, out in _mnt_samples(10, 400):
        report = check_interval_lemmas(idx, out)
        assert report.ok, report.violations


def test_good_collection_rejects_bad_shapes():
    idx = by_approvers(4, {1: span(1, 4), 2: {2, 3}})
    sol = PartialSolution(frozenset({1, 2}), {1: 1, 2: 2, 3: 2, 4: 1}, (1, 4), 2)
    assert verify_mnt(idx, sol).ok
    assert is_good_collection(idx, sol, {1: (1, 4), 2: (2, 3)})
    # the subordinate's interval overlaps its dominator's without lying inside it
    assert not is_good_collection(idx, sol, {1: (1, 2), 2: (2, 3)})
    assert not is_good_collection(idx, sol, {1: (1, 4)})
