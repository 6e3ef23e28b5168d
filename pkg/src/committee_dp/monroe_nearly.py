"""Monroe for nearly structured approval profiles.

* ``solve_monroe_nearsp``: voters deleted to reach single-peakedness.
  Guesses which deleted voters are happy and an ordered partition of them
  into groups, then runs an interval DP over the axis that consumes whole
  groups at member boundaries.
* ``solve_monroe_nearsc``: voters deleted to reach single-crossingness.
  Runs the single-crossing table with the deleted voters as a bitmask
  argument.
* ``solve_monroe_xp_alts``: alternatives deleted. Guesses the deleted
  alternatives in use and how many voters of each approval type they take,
  then solves the structured rest.

Every solver returns a full proportional assignment over all voters.
"""

from __future__ import annotations

import dataclasses
import itertools
import time
from typing import Sequence

from .monroe_sc import TableError, complete_assignment, run_table
from .profile import (Kind, Model, Objective, Profile, Rule, Solution, monroe_bounds, score_of,
                      solve_max_via_reduction)
from .recognition import (DeletionCertificate, DeletionKind, Structure, reduced_profile,
                          validate_certificate)
from .structure import build_index

DEFAULT_XP_CAP = 3


class NearlyError(ValueError):
    """Bad certificate or parameter outside the supported range."""


def _check(profile: Profile, cert: DeletionCertificate, kind: DeletionKind, k: int,
           structure: Structure | None = None, linear: bool = False):
    if profile.kind is not Kind.APPROVAL and not linear:
        raise NearlyError("Monroe on nearly structured profiles needs approval ballots")
    if not 1 <= k <= profile.m:
        raise NearlyError(f"committee size {k} outside 1..{profile.m}")
    if cert.kind is not kind:
        raise NearlyError(f"expected a certificate deleting {kind.value}")
    if structure is not None and cert.structure is not structure:
        raise NearlyError(f"expected a {structure.value} certificate")
    if not validate_certificate(profile, cert):
        raise NearlyError("certificate does not re-validate")


def _finish(profile: Profile, k: int, objective: Objective, happy: dict, method: str,
            start: float, extra: dict) -> Solution:
    committee, assignment = complete_assignment(profile, k, happy)
    score = score_of(profile, Model.APPROVAL_BINARY, objective, assignment)
    table_score = profile.n - len(happy)
    if objective is Objective.MAX:
        table_score = 0 if table_score == 0 else 1
    extra = dict(extra, table_score=table_score, happy=len(happy))
    return Solution(Rule.MONROE, objective, k, score, tuple(committee), tuple(assignment),
                    method_used=method, elapsed_ms=(time.perf_counter() - start) * 1000,
                    extra=extra)


def _linear_max(profile: Profile, k: int, approval_solver) -> Solution:
    start = time.perf_counter()
    probes: list = []
    sol = solve_max_via_reduction(profile, k, Rule.MONROE, approval_solver, probes)
    return dataclasses.replace(sol, method_used=sol.method_used + "+threshold",
                               elapsed_ms=(time.perf_counter() - start) * 1000,
                               extra={"probes": probes})


# ---------------------------------------------------------------- nearly SC, voters

def _exclusion_sets(index, extra_ballots, k):
    """Alternative sets worth dropping before running the table.

    A member serving a deleted voter cannot be traded for a dominator the
    deleted voter does not approve, so such dominators outside the committee
    have to be dropped explicitly. One guess per choice of at most ``t``
    such members and of which of their dominators leave the instance.
    """
    serving = sorted(a for a in index.alternatives
                     if index.dom[a] and any(a in b for b in extra_ballots))
    seen = {frozenset()}
    for size in range(1, min(len(extra_ballots), k) + 1):
        for special in itertools.combinations(serving, size):
            above = sorted(set().union(*(index.dom[s] for s in special)) - set(special))
            for r in range(1, len(above) + 1):
                for drop in itertools.combinations(above, r):
                    seen.add(frozenset(drop))
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def solve_monroe_nearsc(profile: Profile, certificate: DeletionCertificate, k: int,
                        objective: Objective = Objective.SUM) -> Solution:
    """Optimal Monroe when deleting the certificate's voters leaves an SC profile."""
    _check(profile, certificate, DeletionKind.VOTERS, k, Structure.SC)
    start = time.perf_counter()
    ordered, positions = reduced_profile(profile, certificate)
    deleted = list(certificate.deleted)
    extra_ballots = [profile.ballot(v) for v in deleted]
    index = build_index(ordered, None)
    best = None
    guesses = _exclusion_sets(index, extra_ballots, k)
    memo = 0
    for drop in guesses:
        sol = run_table(profile, ordered, positions, deleted, k, objective, "near-sc-dp",
                        exclude=drop)
        memo += sol.extra["memo_size"]
        if best is None or sol.extra["happy"] > best.extra["happy"]:
            best = sol
    elapsed = (time.perf_counter() - start) * 1000
    extra = dict(best.extra, memo_size=memo, guesses=len(guesses), t=len(deleted))
    return Solution(best.rule, objective, k, best.score, best.committee, best.assignment,
                    method_used="near-sc-dp", elapsed_ms=elapsed, extra=extra)


# ---------------------------------------------------------------- single-peaked, voters

NEG = float("-inf")


class _SpTable:
    """Interval DP for Monroe on an SP approval profile.

    Axis positions are ``1..m``; every regular voter approves a position
    interval ``[l, r]`` and voters are scanned by ``(l, r)``. Two optional
    extensions ride along:

    * ``groups``: ordered ``(size, positions)`` pairs. Group ``g`` goes whole
      to one member at an allowed position; group members appear left to
      right in list order.
    * ``types``/``ntypes``: voter -> type index for voters that may be
      reserved for members outside the axis; the last state component counts
      how many of each type the entry still has to reserve.

    ``value(i, x1, x2, kh, kl, b, g1, g2, res)`` is the most regular voters
    among those from index ``i`` on with ``r`` in ``[x1, x2]`` that are served
    by members inside ``[x1, x2]`` or reserved, where ``x1`` is a member with
    room ``b`` and ``kh`` ceil-sized plus ``kl`` floor-sized further members
    sit in ``(x1, x2]`` and host groups ``g1..g2-1``.

    The split step relies on an exchange argument: if the next voter ``u`` is
    served by ``x > x1``, a later voter still reaching ``x`` never needs a
    member left of ``x`` (swap it with ``u``), so voters divide by ``r < x``.
    """

    def __init__(self, intervals, m, k, n_total, groups=(), types=None, ntypes=0,
                 slots=(0, 0)):
        self.voters = sorted(intervals)
        self.m = m
        self.lo, self.hi, self.rem = monroe_bounds(n_total, k)
        self.k = k
        self.groups = list(groups)
        types = types or {}
        self.vtype = [types.get(v, -1) for _, _, v in self.voters]
        self.zero = (0,) * ntypes
        self.slots = slots
        self.memo: dict = {}
        self.place_memo: dict = {}

    def cap(self, high: bool) -> int:
        return self.hi if high else self.lo

    def hosts(self, g, x, high) -> bool:
        size, allowed = self.groups[g]
        return x in allowed and size <= self.cap(high)

    # members in (x1, x2] that only host groups or nothing
    def placeable(self, p, x2, kh, kl, g, g2) -> bool:
        if kh == 0 and kl == 0:
            return g == g2
        if p > x2 or x2 - p + 1 < kh + kl:
            return False
        key = (p, x2, kh, kl, g, g2)
        got = self.place_memo.get(key)
        if got is None:
            got = self.placeable(p + 1, x2, kh, kl, g, g2)
            for high, left in ((True, kh), (False, kl)):
                if got or not left:
                    continue
                nh, nl = (kh - 1, kl) if high else (kh, kl - 1)
                got = self.placeable(p + 1, x2, nh, nl, g, g2)
                if not got and g < g2 and self.hosts(g, p, high):
                    got = self.placeable(p + 1, x2, nh, nl, g + 1, g2)
            self.place_memo[key] = got
        return got

    def _next(self, i, x1, x2):
        vs = self.voters
        while i < len(vs) and not x1 <= vs[i][1] <= x2:
            i += 1
        return i

    def value(self, i, x1, x2, kh, kl, b, g1, g2, res):
        key = (i, x1, x2, kh, kl, b, g1, g2, res)
        got = self.memo.get(key)
        if got is not None:
            return got[0]
        j = self._next(i, x1, x2)
        if j == len(self.voters):
            ok = not any(res) and self.placeable(x1 + 1, x2, kh, kl, g1, g2)
            self.memo[key] = (0 if ok else NEG, ("end",))
            return self.memo[key][0]
        l, r = self.voters[j][:2]
        best = (self.value(j + 1, x1, x2, kh, kl, b, g1, g2, res), ("skip", j))
        t = self.vtype[j]
        if t >= 0 and res[t]:
            less = res[:t] + (res[t] - 1,) + res[t + 1:]
            val = 1 + self.value(j + 1, x1, x2, kh, kl, b, g1, g2, less)
            if val > best[0]:
                best = (val, ("reserve", j, less))
        if l <= x1 and b > 0:
            val = 1 + self.value(j + 1, x1, x2, kh, kl, b - 1, g1, g2, res)
            if val > best[0]:
                best = (val, ("first", j))
        for x in range(max(x1 + 1, l), min(r, x2) + 1):
            for high in (True, False):
                nh, nl = (kh - 1, kl) if high else (kh, kl - 1)
                if nh < 0 or nl < 0:
                    continue
                for gs in range(g1, g2 + 1):
                    opts = [(self.cap(high) - 1, gs)]
                    if gs < g2 and self.hosts(gs, x, high):
                        opts.append((self.cap(high) - 1 - self.groups[gs][0], gs + 1))
                    for room, gr in opts:
                        if room < 0:
                            continue
                        for hl in range(nh + 1):
                            for ll in range(nl + 1):
                                if x - x1 - 1 < hl + ll or x2 - x < nh - hl + nl - ll:
                                    continue
                                for r1 in itertools.product(*(range(c + 1) for c in res)):
                                    left = self.value(j + 1, x1, x - 1, hl, ll, b, g1, gs, r1)
                                    if left == NEG:
                                        continue
                                    r2 = tuple(c - d for c, d in zip(res, r1))
                                    right = self.value(j + 1, x, x2, nh - hl, nl - ll, room, gr,
                                                       g2, r2)
                                    if right == NEG:
                                        continue
                                    val = 1 + left + right
                                    if val > best[0]:
                                        best = (val, ("split", j, x, high, hl, ll, gs, room, gr,
                                                      r1, r2))
        self.memo[key] = best
        return best[0]

    def solve(self, inside=None):
        """Best ``(count, top choice)`` over the leftmost member and its class.

        ``inside(x1)`` lists ``(reserved inside, reserved behind x1)`` vector
        pairs for a leftmost member at ``x1``; by default nothing is reserved.
        """
        best = (NEG, None)
        dh, dl = self.slots
        kh0, kl0 = self.rem - dh, self.k - self.rem - dl
        g2 = len(self.groups)
        for x1 in range(1, self.m + 1):
            pairs = inside(x1) if inside else [(self.zero, self.zero)]
            for high in (True, False):
                nh, nl = (kh0 - 1, kl0) if high else (kh0, kl0 - 1)
                if nh < 0 or nl < 0 or self.m - x1 < nh + nl:
                    continue
                opts = [(self.cap(high), 0)]
                if g2 and self.hosts(0, x1, high):
                    opts.append((self.cap(high) - self.groups[0][0], 1))
                for room, g1 in opts:
                    for res, out in pairs:
                        val = self.value(0, x1, self.m, nh, nl, room, g1, g2, res)
                        if val != NEG and val + sum(out) > best[0]:
                            best = (val + sum(out), (x1, high, room, g1, res, nh, nl, out))
        return best

    def expand(self, top):
        """Member positions, voter index -> position, group -> position and reserved indices."""
        x1, high, room, g1, res, nh, nl, _ = top
        served, hosted, members, reserved = {}, {}, [x1], []
        if g1:
            hosted[0] = x1
        stack = [(0, x1, self.m, nh, nl, room, g1, len(self.groups), res)]
        while stack:
            key = stack.pop()
            i, x1, x2, kh, kl, b, ga, gb, res = key
            self.value(*key)
            step = self.memo[key][1]
            if step[0] == "end":
                members += self._place(x1 + 1, x2, kh, kl, ga, gb, hosted)
            elif step[0] == "skip":
                stack.append((step[1] + 1, x1, x2, kh, kl, b, ga, gb, res))
            elif step[0] == "reserve":
                reserved.append(step[1])
                stack.append((step[1] + 1, x1, x2, kh, kl, b, ga, gb, step[2]))
            elif step[0] == "first":
                served[step[1]] = x1
                stack.append((step[1] + 1, x1, x2, kh, kl, b - 1, ga, gb, res))
            else:
                _, j, x, hi_, hl, ll, gs, room, gr, r1, r2 = step
                nh, nl = (kh - 1, kl) if hi_ else (kh, kl - 1)
                served[j] = x
                members.append(x)
                if gr > gs:
                    hosted[gs] = x
                stack.append((j + 1, x1, x - 1, hl, ll, b, ga, gs, r1))
                stack.append((j + 1, x, x2, nh - hl, nl - ll, room, gr, gb, r2))
        return members, served, hosted, reserved

    def _place(self, p, x2, kh, kl, g, g2, hosted):
        out = []
        while kh or kl:
            if self.placeable(p + 1, x2, kh, kl, g, g2):
                p += 1
                continue
            for high, left in ((True, kh), (False, kl)):
                if not left:
                    continue
                nh, nl = (kh - 1, kl) if high else (kh, kl - 1)
                if self.placeable(p + 1, x2, nh, nl, g, g2):
                    break
                if g < g2 and self.hosts(g, p, high) and self.placeable(p + 1, x2, nh, nl, g + 1, g2):
                    hosted[g] = p
                    g += 1
                    break
            out.append(p)
            kh, kl, p = nh, nl, p + 1
        return out


def _intervals(profile: Profile, pos: dict, voters):
    """``(l, r, voter)`` for every voter with a non-empty approval interval."""
    out = []
    for v in voters:
        ps = sorted(pos[a] for a in profile.ballot(v))
        if ps:
            if ps[-1] - ps[0] + 1 != len(ps):
                raise NearlyError(f"voter {v} does not approve an interval of the axis")
            out.append((ps[0], ps[-1], v))
    return out


def _ordered_partitions(items):
    """Every sequence of disjoint non-empty blocks covering ``items``."""
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for r in range(len(rest) + 1):
        for others in itertools.combinations(rest, r):
            block = (first,) + others
            left = [x for x in rest if x not in others]
            for tail in _ordered_partitions(left):
                for at in range(len(tail) + 1):
                    yield tail[:at] + (block,) + tail[at:]


def _sp_guesses(profile: Profile, deleted, pos, k):
    """Happy groups of deleted voters in member order, pruned on common approval."""
    _, hi, _ = monroe_bounds(profile.n, k)
    for r in range(len(deleted), -1, -1):
        for happy in itertools.combinations(deleted, r):
            for blocks in _ordered_partitions(happy):
                if len(blocks) > k:
                    continue
                groups = []
                for block in blocks:
                    common = frozenset.intersection(*(frozenset(profile.ballot(v)) for v in block))
                    if not common or len(block) > hi:
                        break
                    groups.append((block, frozenset(pos[a] for a in common)))
                else:
                    yield groups


def _sp_run(profile: Profile, axis, regular, deleted, k):
    """Best happy map over all group guesses, plus guess and memo counts."""
    pos = {a: p for p, a in enumerate(axis, start=1)}
    intervals = _intervals(profile, pos, regular)
    best, guesses, memo = (NEG, None), 0, 0
    for groups in _sp_guesses(profile, deleted, pos, k):
        guesses += 1
        table = _SpTable(intervals, profile.m, k, profile.n,
                         [(len(block), allowed) for block, allowed in groups])
        val, top = table.solve()
        memo += len(table.memo)
        if val == NEG:
            continue
        total = val + sum(len(block) for block, _ in groups)
        if total > best[0]:
            best = (total, (table, top, groups))
    if best[1] is None:
        raise TableError("no feasible committee")
    table, top, groups = best[1]
    members, served, hosted, _ = table.expand(top)
    happy = {table.voters[j][2]: axis[p - 1] for j, p in served.items()}
    for g, p in hosted.items():
        for v in groups[g][0]:
            happy[v] = axis[p - 1]
    return happy, {"guesses": guesses, "memo_size": memo}


def _sp_axis(profile: Profile, axis):
    if axis is None:
        from .recognition import detect_sp
        found = detect_sp(profile)
        if found is None:
            raise NearlyError("profile is not single-peaked")
        axis = found.order
    axis = tuple(axis)
    if sorted(axis) != list(profile.alternatives):
        raise NearlyError("axis must list every alternative once")
    return axis


def solve_monroe_sp(profile: Profile, k: int, objective: Objective = Objective.SUM,
                    axis: Sequence[int] | None = None) -> Solution:
    """Optimal Monroe on an SP approval profile (axis detected when omitted)."""
    if not 1 <= k <= profile.m:
        raise NearlyError(f"committee size {k} outside 1..{profile.m}")
    if profile.kind is not Kind.APPROVAL:
        if objective is not Objective.MAX:
            raise NearlyError("SP Monroe with Borda sums is not supported; use the oracle")
        axis = _sp_axis(profile, axis)
        return _linear_max(profile, k, lambda prof, kk: solve_monroe_sp(prof, kk, axis=axis))
    start = time.perf_counter()
    axis = _sp_axis(profile, axis)
    happy, extra = _sp_run(profile, axis, list(profile.voters), [], k)
    return _finish(profile, k, objective, happy, "sp-dp", start, extra)


def solve_monroe_nearsp(profile: Profile, certificate: DeletionCertificate, k: int,
                        objective: Objective = Objective.SUM) -> Solution:
    """Optimal Monroe when deleting the certificate's voters leaves an SP profile.

    Linear ballots are accepted for the max objective: thresholding keeps the
    axis, so each bound is an approval instance with the same certificate.
    """
    if profile.kind is Kind.LINEAR and objective is Objective.MAX:
        _check(profile, certificate, DeletionKind.VOTERS, k, Structure.SP, linear=True)
        return _linear_max(profile, k, lambda prof, kk: solve_monroe_nearsp(prof, certificate, kk))
    _check(profile, certificate, DeletionKind.VOTERS, k, Structure.SP)
    start = time.perf_counter()
    gone = set(certificate.deleted)
    regular = [v for v in profile.voters if v not in gone]
    happy, extra = _sp_run(profile, tuple(certificate.witness), regular,
                           list(certificate.deleted), k)
    extra["t"] = len(gone)
    return _finish(profile, k, objective, happy, "near-sp-dp", start, extra)


# ---------------------------------------------------------------- deleted alternatives

def _class_guesses(deleted, k, rem):
    """Every way to put deleted alternatives in the committee with a load class.

    Yields ``{alternative: high?}``; with ``rem == 0`` there is one class only.
    """
    options = (None, False, True) if rem else (None, False)
    for choice in itertools.product(options, repeat=len(deleted)):
        used = {d: c for d, c in zip(deleted, choice) if c is not None}
        if len(used) <= k and sum(used.values()) <= rem:
            yield used


def _hall(total, type_sets, caps) -> bool:
    """Can ``total[t]`` voters of each type be routed into the used members?"""
    idx = [t for t, x in enumerate(total) if x]
    for r in range(1, len(idx) + 1):
        for sub in itertools.combinations(idx, r):
            reach = frozenset().union(*(type_sets[t] for t in sub))
            if sum(total[t] for t in sub) > sum(caps[d] for d in reach):
                return False
    return True


def _route(voters, approvals, caps) -> dict:
    """Match every voter to an approved member with room (augmenting paths)."""
    slots = [d for d in sorted(caps) for _ in range(caps[d])]
    owner: dict = {}

    def grow(v, seen):
        for s, d in enumerate(slots):
            if d in approvals[v] and s not in seen:
                seen.add(s)
                if s not in owner or grow(owner[s], seen):
                    owner[s] = v
                    return True
        return False

    for v in voters:
        if not grow(v, set()):
            raise TableError("reserved voters cannot be routed")
    return {v: slots[s] for s, v in owner.items()}


def _types(profile: Profile, used):
    """Type index per voter (``-1``: approves no used member) and the type sets."""
    sets, index, of = [], {}, {}
    for v in profile.voters:
        mine = frozenset(d for d in used if d in profile.ballot(v))
        if not mine:
            of[v] = -1
            continue
        if mine not in index:
            index[mine] = len(sets)
            sets.append(mine)
        of[v] = index[mine]
    return of, sets


def _totals(of, sets, caps):
    counts = [sum(1 for t in of.values() if t == s) for s in range(len(sets))]
    out = []
    for total in itertools.product(*(range(c + 1) for c in counts)):
        if _hall(total, sets, caps):
            out.append(total)
    return out


def _xp_sc(profile, reduced, ids, order, used, k, lo, hi):
    from .monroe_sc import make_context, set_reservations, solve_context
    caps = {d: hi if high else lo for d, high in used.items()}
    of, sets = _types(profile, used)
    ctx = make_context(reduced, order, k, total=profile.n)
    slots = (sum(used.values()), len(used) - sum(used.values()))
    pos_types = [of[v] for v in order]
    set_reservations(ctx, pos_types, len(sets), _totals(of, sets, caps), slots)
    count, by_pos, _, reserved = solve_context(ctx)
    happy = {order[p - 1]: ids[a - 1] for p, a in by_pos.items()}
    routed = [order[p - 1] for p in reserved]
    return count, happy, routed, caps, len(ctx.memo) + len(ctx.suffix)


def _xp_sp(profile, reduced, ids, used, k, lo, hi):
    caps = {d: hi if high else lo for d, high in used.items()}
    of, sets = _types(profile, used)
    totals = _totals(of, sets, caps)
    intervals = _intervals(reduced, {a: a for a in reduced.alternatives}, reduced.voters)
    # voters no member on the axis can reach from x1 on may still be reserved
    reach = {v: r for _, r, v in intervals}
    ntypes = len(sets)
    slots = (sum(used.values()), len(used) - sum(used.values()))
    table = _SpTable(intervals, reduced.m, k, profile.n, types=of, ntypes=ntypes, slots=slots)

    def behind(x1):
        return [v for v in profile.voters if of[v] >= 0 and reach.get(v, 0) < x1]

    def inside(x1):
        have = [0] * ntypes
        for v in behind(x1):
            have[of[v]] += 1
        pairs = []
        for total in totals:
            for out in itertools.product(*(range(min(c, b) + 1) for c, b in zip(total, have))):
                pairs.append((tuple(c - o for c, o in zip(total, out)), out))
        return pairs

    if len(used) == k:
        # every member is a deleted alternative: route as many voters as possible
        out = max(totals, key=sum)
        want, routed = list(out), []
        for v in behind(reduced.m + 1):
            if want[of[v]]:
                want[of[v]] -= 1
                routed.append(v)
        return sum(out), {}, routed, caps, 0
    count, top = table.solve(inside)
    if top is None:
        return NEG, {}, [], caps, len(table.memo)
    _, served, _, reserved = table.expand(top)
    happy = {table.voters[j][2]: ids[p - 1] for j, p in served.items()}
    routed = [table.voters[j][2] for j in reserved]
    want = list(top[7])
    for v in behind(top[0]):
        if want[of[v]]:
            want[of[v]] -= 1
            routed.append(v)
    return count, happy, routed, caps, len(table.memo)


def solve_monroe_xp_alts(profile: Profile, certificate: DeletionCertificate, k: int,
                         objective: Objective = Objective.SUM, structure: Structure | None = None,
                         cap: int = DEFAULT_XP_CAP) -> Solution:
    """Optimal Monroe when deleting the certificate's alternatives leaves an SP or SC profile.

    Deleted alternatives enter the committee by guess, together with a load
    class; voters sent to them are reserved by type inside the structured
    table. ``cap`` bounds the number of deleted alternatives.
    """
    _check(profile, certificate, DeletionKind.ALTERNATIVES, k, structure)
    if certificate.t > cap:
        raise NearlyError(f"{certificate.t} deleted alternatives exceed the cap {cap}")
    start = time.perf_counter()
    structure = certificate.structure
    reduced, ids = reduced_profile(profile, certificate)
    lo, hi, rem = monroe_bounds(profile.n, k)
    best, guesses, memo = None, 0, 0
    for used in _class_guesses(list(certificate.deleted), k, rem):
        kk = len(used)
        if k - kk > reduced.m:
            continue
        guesses += 1
        if structure is Structure.SC:
            got = _xp_sc(profile, reduced, ids, list(certificate.witness), used, k, lo, hi)
        else:
            got = _xp_sp(profile, reduced, ids, used, k, lo, hi)
        memo += got[4]
        if got[0] != NEG and (best is None or got[0] > best[0]):
            best = got
    if best is None:
        raise TableError("no feasible committee")
    count, happy, routed, caps, _ = best
    happy = dict(happy)
    approvals = {v: profile.ballot(v) for v in routed}
    happy.update(_route(routed, approvals, caps))
    if len(happy) != count:
        raise TableError("rebuilt happy count differs from the table value")
    method = "xp-alts-sc" if structure is Structure.SC else "xp-alts-sp"
    return _finish(profile, k, objective, happy, method, start,
                   {"guesses": guesses, "memo_size": memo, "t": certificate.t})
