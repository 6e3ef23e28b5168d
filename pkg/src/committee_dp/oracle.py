"""Exact brute-force reference solvers.

Committees are enumerated in lexicographic order. For Monroe, each committee
is scored with an exact balanced assignment: every member gets ``floor(n/k)``
mandatory slots plus one optional slot when ``k`` does not divide ``n``, and
a rectangular linear assignment fills exactly ``n`` of them.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .profile import Model, Objective, Profile, Rule, Solution, cost_table, monroe_bounds


class OracleBudgetError(RuntimeError):
    pass


DEFAULT_MAX_COMMITTEES = math.comb(12, 6)


def _check_budget(m: int, k: int, max_committees: int):
    if k < 1 or k > m:
        raise ValueError(f"committee size {k} outside 1..{m}")
    if math.comb(m, k) > max_committees:
        raise OracleBudgetError(f"C({m},{k}) committees exceed the oracle budget {max_committees}")


def _cc_for_committee(costs, committee, objective):
    assignment = []
    for row in costs[1:]:
        best = min(committee, key=lambda a: (row[a], a))
        assignment.append(best)
    vals = [costs[v][a] for v, a in enumerate(assignment, start=1)]
    return (sum(vals) if objective is Objective.SUM else max(vals)), assignment


def oracle_cc(profile: Profile, model: Model | None, k: int, objective: Objective,
              max_committees: int = DEFAULT_MAX_COMMITTEES) -> Solution:
    model = model or profile.default_model()
    _check_budget(profile.m, k, max_committees)
    costs = cost_table(profile, model)
    best = None
    for committee in itertools.combinations(profile.alternatives, k):
        score, assignment = _cc_for_committee(costs, committee, objective)
        if best is None or score < best[0]:
            best = (score, committee, assignment)
    score, committee, assignment = best
    return Solution(Rule.CC, objective, k, score, committee, tuple(assignment), method_used="brute")


def balanced_assignment(cost_rows: Sequence[Sequence[int]], committee: Sequence[int], k: int):
    """Min-sum proportional assignment of all voters to ``committee``.

    ``cost_rows[v][a]`` for voters ``v = 0..n-1``. Returns ``(total, assignment)``
    with ``assignment[v]`` a committee member.
    """
    n = len(cost_rows)
    lo, _hi, r = monroe_bounds(n, k)
    slots = [a for a in committee for _ in range(lo)]
    mandatory = len(slots)
    if r:
        slots += list(committee)
    c = np.array([[cost_rows[v][a] for a in slots] for v in range(n)], dtype=np.int64)
    # a bonus larger than any total forces every mandatory slot to be filled
    bonus = int(c.max(initial=0)) * n + 1
    c[:, :mandatory] -= bonus
    rows, cols = linear_sum_assignment(c)
    assignment = [None] * n
    total = 0
    for v, s in zip(rows, cols):
        assignment[v] = slots[s]
        total += cost_rows[v][slots[s]]
    return total, assignment


def _monroe_max_for_committee(cost_rows, committee, k):
    values = sorted({cost_rows[v][a] for v in range(len(cost_rows)) for a in committee})
    lo, hi = 0, len(values) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        beta = values[mid]
        flags = [[0 if x <= beta else 1 for x in row] for row in cost_rows]
        bad, assignment = balanced_assignment(flags, committee, k)
        if bad == 0:
            best, hi = (beta, assignment), mid - 1
        else:
            lo = mid + 1
    return best


def oracle_monroe(profile: Profile, model: Model | None, k: int, objective: Objective,
                  max_committees: int = DEFAULT_MAX_COMMITTEES) -> Solution:
    model = model or profile.default_model()
    _check_budget(profile.m, k, max_committees)
    costs = cost_table(profile, model)
    rows = costs[1:]
    best = None
    for committee in itertools.combinations(profile.alternatives, k):
        if objective is Objective.SUM:
            score, assignment = balanced_assignment(rows, committee, k)
        else:
            score, assignment = _monroe_max_for_committee(rows, committee, k)
        if best is None or score < best[0]:
            best = (score, committee, assignment)
    score, committee, assignment = best
    return Solution(Rule.MONROE, objective, k, score, committee, tuple(assignment), method_used="brute")


def exhaustive_monroe_assignment(cost_rows, committee, k, objective: Objective = Objective.SUM):
    """Enumerate every voter->member map; used to meta-validate ``balanced_assignment``."""
    n = len(cost_rows)
    lo, hi, r = monroe_bounds(n, k)
    best = None
    for assignment in itertools.product(committee, repeat=n):
        loads = [assignment.count(a) for a in committee]
        if any(x < lo or x > hi for x in loads):
            continue
        if r and sum(1 for x in loads if x == hi) != r:
            continue
        vals = [cost_rows[v][a] for v, a in enumerate(assignment)]
        score = sum(vals) if objective is Objective.SUM else max(vals)
        if best is None or score < best:
            best = score
    return best


def oracle(profile: Profile, rule: Rule, k: int, objective: Objective, model: Model | None = None,
           max_committees: int = DEFAULT_MAX_COMMITTEES) -> Solution:
    fn = oracle_monroe if rule is Rule.MONROE else oracle_cc
    return fn(profile, model, k, objective, max_committees)
