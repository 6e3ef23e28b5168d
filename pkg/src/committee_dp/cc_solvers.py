"""Chamberlin-Courant winner determination on (nearly) structured profiles.

All dynamic programs here return the optimal committee; the assignment is then
recomputed by giving every voter its least-misrepresenting member (lowest id
on ties), which is optimal for CC and makes reconstruction trivial.

Tables carry ``(value, committee)`` pairs, so ties resolve toward the
lexicographically smallest committee.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from .oracle import oracle_cc
from .profile import (Kind, Model, Objective, Profile, Rule, Solution, cost_table,
                      reduce_max_to_approval, score_of, solve_max_via_reduction)
from .recognition import (DeletionCertificate, DeletionKind, Structure, check_sc, check_sp,
                          reduced_profile, validate_certificate)

INF = float("inf")
NONE = (INF, ())


class NotStructuredError(ValueError):
    pass


def _add(entry, delta, member=None):
    val, com = entry
    if val == INF:
        return NONE
    return (val + delta, com + (member,) if member is not None else com)


def cc_solution(profile: Profile, committee: Sequence[int], objective: Objective, method: str,
                model: Model | None = None, extra: dict | None = None) -> Solution:
    model = model or profile.default_model()
    costs = cost_table(profile, model)
    committee = tuple(sorted(committee))
    assignment = tuple(min(committee, key=lambda a: (costs[v][a], a)) for v in profile.voters)
    score = score_of(profile, model, objective, assignment)
    return Solution(Rule.CC, objective, len(committee), score, committee, assignment,
                    method_used=method, extra=extra or {})


def _check_k(profile: Profile, k: int):
    if not 1 <= k <= profile.m:
        raise ValueError(f"committee size {k} outside 1..{profile.m}")


# ---------------------------------------------------------------- deleted-voter types

def _types(profile: Profile, deleted: Sequence[int]):
    """Type bitmask of every alternative plus the list of distinct masks."""
    type_of = {}
    for a in profile.alternatives:
        mask = 0
        for idx, v in enumerate(deleted):
            if a in profile.ballot(v):
                mask |= 1 << idx
        type_of[a] = mask
    distinct = sorted(set(type_of.values()))
    return type_of, distinct


def _cost_fn(distinct, t):
    full = (1 << t) - 1

    @lru_cache(maxsize=None)
    def cost(tset: int) -> int:
        covered = 0
        for i, mask in enumerate(distinct):
            if tset >> i & 1:
                covered |= mask
        return bin(full & ~covered).count("1")

    return cost


# ---------------------------------------------------------------- A1: SP with type sets

def _table_a1(profile: Profile, axis: Sequence[int], k: int, rest: Sequence[int], deleted: Sequence[int]):
    """Min CC cost over the axis with committees tracked by their type set.

    ``rest`` are the structured voters, ``deleted`` the others (approval only
    when non-empty). Positions ``1..m`` follow ``axis``.
    """
    m = len(axis)
    costs = cost_table(profile)
    type_of, distinct = _types(profile, deleted)
    tidx = {mask: 1 << i for i, mask in enumerate(distinct)}
    cost = _cost_fn(distinct, len(deleted))
    rho = [0] * (m + 1)
    for p, a in enumerate(axis, start=1):
        rho[p] = sum(costs[v][a] for v in rest)

    def diff(p, q):
        a, b = axis[p - 1], axis[q - 1]
        return sum(max(costs[v][b] - costs[v][a], 0) for v in rest)

    diffs = {(p, q): diff(p, q) for p in range(1, m + 1) for q in range(1, p)}
    table = {}
    for p in range(1, m + 1):
        ty = tidx[type_of[axis[p - 1]]]
        table[p, 1, ty] = (rho[p] + cost(ty), (axis[p - 1],))
    for kk in range(2, k + 1):
        for p in range(kk, m + 1):
            ty = tidx[type_of[axis[p - 1]]]
            a = axis[p - 1]
            for tset in range(1, 1 << len(distinct)):
                if not tset & ty:
                    continue
                best = NONE
                for prev in {tset, tset & ~ty}:
                    if prev == 0:
                        continue
                    delta_cost = cost(tset) - cost(prev)
                    for q in range(kk - 1, p):
                        e = table.get((q, kk - 1, prev))
                        if e is None:
                            continue
                        cand = (e[0] - diffs[p, q] + delta_cost, tuple(sorted(e[1] + (a,))))
                        best = min(best, cand)
                if best[0] < INF:
                    table[p, kk, tset] = best
    finals = [e for (p, kk, ts), e in table.items() if kk == k]
    return min(finals) if finals else NONE


def solve_cc_sp(profile: Profile, sp_order: Sequence[int], k: int,
                objective: Objective = Objective.SUM) -> Solution:
    """Optimal CC on a single-peaked profile (approval or Borda)."""
    _check_k(profile, k)
    if not check_sp(profile, sp_order):
        raise NotStructuredError("profile is not single-peaked along the given axis")
    if objective is Objective.MAX:
        if profile.kind is Kind.LINEAR:
            return solve_max_via_reduction(
                profile, k, Rule.CC, lambda p, kk: solve_cc_sp(p, sp_order, kk, Objective.SUM))
        base = solve_cc_sp(profile, sp_order, k, Objective.SUM)
        return cc_solution(profile, base.committee, Objective.MAX, "sp-dp")
    _, committee = _table_a1(profile, list(sp_order), k, list(profile.voters), [])
    return cc_solution(profile, committee, objective, "sp-dp")


# ---------------------------------------------------------------- block DP for SC

def lemma_order(profile: Profile, voters: Sequence[int]):
    """Alternatives by first approving voter ascending, then last approving voter descending.

    Positions refer to the sequence ``voters``; alternatives without an
    approver there go last.
    """
    pos = {v: i for i, v in enumerate(voters, start=1)}

    def key(a):
        ps = [pos[v] for v in voters if a in profile.ballot(v)]
        if not ps:
            return (len(voters) + 1, 0, a)
        return (min(ps), -max(ps), a)

    return sorted(profile.alternatives, key=key)


def _table_b1(profile: Profile, voter_seq: Sequence[int], alt_seq: Sequence[int], k: int,
              deleted: Sequence[int]):
    """Block DP over the structured voters ``voter_seq`` with type sets for ``deleted``."""
    n, m = len(voter_seq), len(alt_seq)
    costs = cost_table(profile)
    type_of, distinct = _types(profile, deleted)
    tidx = {mask: 1 << i for i, mask in enumerate(distinct)}
    cost = _cost_fn(distinct, len(deleted))
    # prefix sums: pre[p][x] = cost of voters 1..x (in voter_seq) towards position p
    pre = [[0] * (n + 1) for _ in range(m + 1)]
    for p in range(1, m + 1):
        a = alt_seq[p - 1]
        for x in range(1, n + 1):
            pre[p][x] = pre[p][x - 1] + costs[voter_seq[x - 1]][a]

    def block(p, x, y):  # voters x..y inclusive
        return pre[p][y] - pre[p][x - 1] if x <= y else 0

    subsets = range(1, 1 << len(distinct))
    table = {}

    def get(j, kk, ts, nn):
        if j < kk or ts == 0:
            return NONE
        return table.get((j, kk, ts, nn), NONE)

    for j in range(1, m + 1):
        for nn in range(0, n + 1):
            for ts in subsets:
                best = NONE
                for p in range(1, j + 1):
                    if tidx[type_of[alt_seq[p - 1]]] == ts:
                        best = min(best, (block(p, 1, nn) + cost(ts), (alt_seq[p - 1],)))
                table[j, 1, ts, nn] = best
    for kk in range(2, k + 1):
        for j in range(kk, m + 1):
            for ts in subsets:
                if bin(ts).count("1") > kk:
                    continue
                for nn in range(0, n + 1):
                    best = NONE
                    for p in range(kk, j + 1):
                        a = alt_seq[p - 1]
                        ty = tidx[type_of[a]]
                        if not ts & ty:
                            continue
                        for prev in {ts, ts & ~ty}:
                            if prev == 0:
                                continue
                            dc = cost(ts) - cost(prev)
                            if nn == 0:
                                e = get(p - 1, kk - 1, prev, 0)
                                if e[0] < INF:
                                    best = min(best, (e[0] + dc, tuple(sorted(e[1] + (a,)))))
                                continue
                            for x in range(1, nn + 2):
                                e = get(p - 1, kk - 1, prev, x - 1)
                                if e[0] < INF:
                                    cand = (e[0] + block(p, x, nn) + dc, tuple(sorted(e[1] + (a,))))
                                    best = min(best, cand)
                    table[j, kk, ts, nn] = best
    return min((get(m, k, ts, n) for ts in subsets), default=NONE)


def _voter1_ranking(profile: Profile, first_voter: int):
    return list(profile.ballot(first_voter))


def _table_b2(profile: Profile, voter_seq: Sequence[int], k: int, groups: Sequence[Sequence[int]],
              costs=None):
    """Linear block DP; alternatives ordered by the first structured voter's ranking.

    ``groups`` is an ordered partition of the deleted voters; group ``g`` is
    represented by a single member and representatives increase along the order.
    """
    n = len(voter_seq)
    alt_seq = _voter1_ranking(profile, voter_seq[0])
    m = len(alt_seq)
    costs = costs or cost_table(profile)
    tt = len(groups)
    pre = [[0] * (n + 1) for _ in range(m + 1)]
    grp = [[0] * (tt + 1) for _ in range(m + 1)]
    for p in range(1, m + 1):
        a = alt_seq[p - 1]
        for x in range(1, n + 1):
            pre[p][x] = pre[p][x - 1] + costs[voter_seq[x - 1]][a]
        for g in range(1, tt + 1):
            grp[p][g] = sum(costs[v][a] for v in groups[g - 1])

    def block(p, x, y):  # voters x+1..y
        return pre[p][y] - pre[p][x]

    table = {}

    def get(j, kk, g, nn):
        if j < kk or kk < g or g < 0:
            return NONE
        return table.get((j, kk, g, nn), NONE)

    for j in range(1, m + 1):
        for nn in range(0, n + 1):
            for g in (0, 1):
                if g > tt:
                    continue
                best = NONE
                for p in range(1, j + 1):
                    val = block(p, 0, nn) + (grp[p][1] if g else 0)
                    best = min(best, (val, (alt_seq[p - 1],)))
                table[j, 1, g, nn] = best
    for kk in range(2, k + 1):
        for j in range(kk, m + 1):
            for g in range(0, min(kk, tt) + 1):
                for nn in range(0, n + 1):
                    best = NONE
                    if nn == 0:
                        if g == 0:
                            best = (0, tuple(sorted(alt_seq[:kk])))
                        else:
                            for p in range(g, j + 1):
                                e = get(p - 1, kk - 1, g - 1, 0)
                                if e[0] < INF:
                                    a = alt_seq[p - 1]
                                    best = min(best, (e[0] + grp[p][g], tuple(sorted(e[1] + (a,)))))
                        table[j, kk, g, nn] = best
                        continue
                    for p in range(1, j + 1):
                        a = alt_seq[p - 1]
                        for x in range(0, nn):
                            e = get(p - 1, kk - 1, g, x)
                            if e[0] < INF:
                                best = min(best, (e[0] + block(p, x, nn), tuple(sorted(e[1] + (a,)))))
                        if g >= 1:
                            for x in range(0, nn + 1):
                                e = get(p - 1, kk - 1, g - 1, x)
                                if e[0] < INF:
                                    val = e[0] + block(p, x, nn) + grp[p][g]
                                    best = min(best, (val, tuple(sorted(e[1] + (a,)))))
                        # a member that represents nobody
                        e = get(p - 1, kk - 1, g, nn)
                        if e[0] < INF:
                            best = min(best, (e[0], tuple(sorted(e[1] + (a,)))))
                    table[j, kk, g, nn] = best
    return get(m, k, tt, n)


def solve_cc_sc(profile: Profile, sc_order: Sequence[int], k: int,
                objective: Objective = Objective.SUM) -> Solution:
    """Optimal CC on a single-crossing profile via contiguous voter blocks."""
    _check_k(profile, k)
    if not check_sc(profile, sc_order):
        raise NotStructuredError("profile is not single-crossing along the given order")
    if objective is Objective.MAX:
        if profile.kind is Kind.LINEAR:
            return _cc_sc_linear_max(profile, sc_order, k)
        base = solve_cc_sc(profile, sc_order, k, Objective.SUM)
        return cc_solution(profile, base.committee, Objective.MAX, "sc-dp")
    order = list(sc_order)
    if profile.kind is Kind.APPROVAL:
        _, committee = _table_b1(profile, order, lemma_order(profile, order), k, [])
    else:
        _, committee = _table_b2(profile, order, k, [])
    return cc_solution(profile, committee, objective, "sc-dp")


def _cc_sc_linear_max(profile: Profile, sc_order: Sequence[int], k: int) -> Solution:
    """Binary search on the bound; each probe is a block DP on 0/1 excess costs.

    Thresholding a single-crossing linear profile need not stay single-crossing
    as an approval profile, but the contiguous-block structure still holds for
    the original linear order with any cost non-decreasing in rank, so the
    probe uses the linear block DP with costs ``[rank > bound]``.
    """
    lo, hi = 0, profile.m - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        committee = _linear_block_threshold(profile, list(sc_order), k, mid)
        if committee is not None:
            best, hi = committee, mid - 1
        else:
            lo = mid + 1
    return cc_solution(profile, best, Objective.MAX, "sc-dp")


def _linear_block_threshold(profile: Profile, order, k, bound):
    flags = [[0] * (profile.m + 1)] + [
        [0] + [int(profile.rank(v, a) > bound) for a in profile.alternatives] for v in profile.voters
    ]
    val, committee = _table_b2(profile, order, k, [], costs=flags)
    return committee if val == 0 else None


# ---------------------------------------------------------------- nearly structured CC

def _require(profile: Profile, cert: DeletionCertificate, structure: Structure):
    if cert.kind is not DeletionKind.VOTERS or cert.structure is not structure:
        raise ValueError(f"expected a voter-deletion certificate for {structure.value}")
    if not validate_certificate(profile, cert):
        raise NotStructuredError("certificate does not re-validate")


def ordered_partitions(items: Sequence[int], max_blocks: int | None = None):
    """All ordered partitions of ``items`` into non-empty blocks."""
    items = list(items)
    if not items:
        yield ()
        return
    for labels in itertools.product(range(len(items)), repeat=len(items)):
        used = sorted(set(labels))
        if used != list(range(len(used))):
            continue
        if max_blocks is not None and len(used) > max_blocks:
            continue
        yield tuple(tuple(x for x, lab in zip(items, labels) if lab == b) for b in used)


def solve_cc_nearsp_approval(profile: Profile, certificate: DeletionCertificate, k: int) -> Solution:
    """Approval CC when deleting ``t`` voters leaves a single-peaked profile."""
    _check_k(profile, k)
    _require(profile, certificate, Structure.SP)
    gone = set(certificate.deleted)
    rest = [v for v in profile.voters if v not in gone]
    _, committee = _table_a1(profile, list(certificate.witness), k, rest, list(certificate.deleted))
    return cc_solution(profile, committee, Objective.SUM, "near-sp")


def _table_a2(profile: Profile, axis, k, rest, groups):
    m = len(axis)
    costs = cost_table(profile)
    tt = len(groups)
    rho = [0] * (m + 1)
    grp = [[0] * (tt + 1) for _ in range(m + 1)]
    for p, a in enumerate(axis, start=1):
        rho[p] = sum(costs[v][a] for v in rest)
        for g in range(1, tt + 1):
            grp[p][g] = sum(costs[v][a] for v in groups[g - 1])
    diffs = {}
    for p in range(1, m + 1):
        for q in range(1, p):
            a, b = axis[p - 1], axis[q - 1]
            diffs[p, q] = sum(max(costs[v][b] - costs[v][a], 0) for v in rest)
    table = {}

    def get(a, b, kk, j):
        if a < kk or kk < j or b < j:
            return NONE
        return table.get((a, b, kk, j), NONE)

    for a in range(1, m + 1):
        table[a, 0, 1, 0] = (rho[a], (axis[a - 1],))
        if tt >= 1:
            table[a, a, 1, 1] = (rho[a] + grp[a][1], (axis[a - 1],))
    for kk in range(2, k + 1):
        for a in range(kk, m + 1):
            alt = axis[a - 1]
            best = NONE
            for q in range(1, a):
                e = get(q, 0, kk - 1, 0)
                if e[0] < INF:
                    best = min(best, (e[0] - diffs[a, q], tuple(sorted(e[1] + (alt,)))))
            table[a, 0, kk, 0] = best
            for j in range(1, min(kk, tt) + 1):
                # a represents group j
                best = NONE
                for q in range(1, a):
                    for bq in ([0] if j == 1 else range(1, q + 1)):
                        e = get(q, bq, kk - 1, j - 1)
                        if e[0] < INF:
                            val = e[0] - diffs[a, q] + grp[a][j]
                            best = min(best, (val, tuple(sorted(e[1] + (alt,)))))
                table[a, a, kk, j] = best
                for b in range(1, a):
                    best = NONE
                    for q in range(b, a):
                        e = get(q, b, kk - 1, j)
                        if e[0] < INF:
                            best = min(best, (e[0] - diffs[a, q], tuple(sorted(e[1] + (alt,)))))
                    table[a, b, kk, j] = best
    return min((e for (a, b, kk, j), e in table.items() if kk == k and j == tt), default=NONE)


def solve_cc_nearsp_linear(profile: Profile, certificate: DeletionCertificate, k: int) -> Solution:
    """Borda CC when deleting ``t`` voters leaves a single-peaked profile."""
    _check_k(profile, k)
    _require(profile, certificate, Structure.SP)
    gone = set(certificate.deleted)
    rest = [v for v in profile.voters if v not in gone]
    best = NONE
    guesses = 0
    for groups in ordered_partitions(certificate.deleted, max_blocks=k):
        guesses += 1
        best = min(best, _table_a2(profile, list(certificate.witness), k, rest, groups))
    return cc_solution(profile, best[1], Objective.SUM, "near-sp", extra={"guesses": guesses})


def solve_cc_nearsc_approval(profile: Profile, certificate: DeletionCertificate, k: int) -> Solution:
    """Approval CC when deleting ``t`` voters leaves a single-crossing profile."""
    _check_k(profile, k)
    _require(profile, certificate, Structure.SC)
    order = list(certificate.witness)
    _, committee = _table_b1(profile, order, lemma_order(profile, order), k, list(certificate.deleted))
    return cc_solution(profile, committee, Objective.SUM, "near-sc")


def solve_cc_nearsc_linear(profile: Profile, certificate: DeletionCertificate, k: int) -> Solution:
    """Borda CC when deleting ``t`` voters leaves a single-crossing profile."""
    _check_k(profile, k)
    _require(profile, certificate, Structure.SC)
    order = list(certificate.witness)
    best = NONE
    guesses = 0
    for groups in ordered_partitions(certificate.deleted, max_blocks=k):
        guesses += 1
        best = min(best, _table_b2(profile, order, k, groups))
    return cc_solution(profile, best[1], Objective.SUM, "near-sc", extra={"guesses": guesses})


def solve_cc_near_max(profile: Profile, certificate: DeletionCertificate, k: int) -> Solution:
    """Minimax CC for nearly structured profiles by thresholding and binary search.

    ``extra["paths"]`` records, per probed bound, whether the structured
    solver or the brute-force fallback ran.
    """
    _check_k(profile, k)
    structure = certificate.structure
    approval_solver = solve_cc_nearsp_approval if structure is Structure.SP else solve_cc_nearsc_approval
    if profile.kind is Kind.APPROVAL:
        base = approval_solver(profile, certificate, k)
        return cc_solution(profile, base.committee, Objective.MAX, base.method_used)
    _require(profile, certificate, structure)
    paths = []

    def probe(reduced: Profile, kk: int) -> Solution:
        if structure is Structure.SP or _still_sc(reduced, certificate):
            paths.append("dp")
            return approval_solver(reduced, certificate, kk)
        paths.append("brute")
        return oracle_cc(reduced, None, kk, Objective.SUM)

    sol = solve_max_via_reduction(profile, k, Rule.CC, probe)
    method = "near-" + structure.value
    return cc_solution(profile, sol.committee, Objective.MAX, method,
                       extra={"paths": paths, "probes": len(paths)})


def _still_sc(reduced: Profile, cert: DeletionCertificate) -> bool:
    gone = set(cert.deleted)
    keep = [v for v in reduced.voters if v not in gone]
    sub = reduced.restrict_voters(keep)
    renum = {v: i for i, v in enumerate(keep, start=1)}
    return check_sc(sub, [renum[v] for v in cert.witness])


__all__ = [
    "solve_cc_sp", "solve_cc_sc", "solve_cc_nearsp_approval", "solve_cc_nearsp_linear",
    "solve_cc_nearsc_approval", "solve_cc_nearsc_linear", "solve_cc_near_max", "cc_solution",
    "lemma_order", "ordered_partitions", "NotStructuredError", "reduce_max_to_approval",
    "reduced_profile",
]
