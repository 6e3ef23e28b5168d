"""Structural layer for single-crossing approval profiles.

Voters are identified with their positions ``1..n`` in the single-crossing
order, so every approval set ``A(a)`` is an interval ``[l(a), r(a)]``.
Alternatives nobody approves are kept out of every relation and listed in
``StructureIndex.empty``.

Identical approval sets are ordered by id: among alternatives with the same
interval the smaller id dominates the larger one. This keeps domination a
strict partial order and lets two copies of the same set both sit in a
committee.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .profile import Kind, Profile, Violation, monroe_bounds
from .recognition import check_sc

SENTINEL = (0, 0, 0)


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class StructureIndex:
    """Relations between the approved alternatives of an SC approval profile.

    ``profile`` is renumbered so that voter ``p`` is the ``p``-th voter of the
    order; ``voter_ids[p-1]`` maps back to the caller's ids.
    """

    profile: Profile
    voter_ids: tuple
    left: Mapping[int, int]
    right: Mapping[int, int]
    alternatives: tuple
    empty: tuple
    dom: Mapping[int, frozenset]
    sub: Mapping[int, frozenset]
    incom: Mapping[int, frozenset]
    earlier: Mapping[int, frozenset]
    later: Mapping[int, frozenset]
    level: Mapping[int, int]
    canonical_order: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.profile.n

    def approvers(self, a: int) -> range:
        return range(self.left[a], self.right[a] + 1)

    def approves(self, v: int, a: int) -> bool:
        return a in self.left and self.left[a] <= v <= self.right[a]


def _dominates(la, ra, a, lb, rb, b) -> bool:
    if not (la <= lb and rb <= ra):
        return False
    return (la, ra) != (lb, rb) or a < b


def build_index(profile: Profile, sc_order: Sequence[int] | None = None) -> StructureIndex:
    """Index the profile along ``sc_order`` (identity when omitted)."""
    if profile.kind is not Kind.APPROVAL:
        raise StructureError("the structural layer needs an approval profile")
    order = list(sc_order) if sc_order is not None else list(profile.voters)
    if not check_sc(profile, order):
        raise StructureError("profile is not single-crossing along the given order")
    prof = profile.restrict_voters(order)
    left, right = {}, {}
    for a in prof.alternatives:
        ps = [v for v in prof.voters if a in prof.ballot(v)]
        if ps:
            left[a], right[a] = ps[0], ps[-1]
    alts = tuple(sorted(left))
    empty = tuple(a for a in prof.alternatives if a not in left)
    dom = {a: set() for a in alts}
    sub = {a: set() for a in alts}
    for a, b in itertools.permutations(alts, 2):
        if _dominates(left[a], right[a], a, left[b], right[b], b):
            dom[b].add(a)
            sub[a].add(b)
    incom = {a: frozenset(b for b in alts if b != a and b not in dom[a] and b not in sub[a]) for a in alts}
    earlier = {a: frozenset(b for b in incom[a] if left[b] < left[a]) for a in alts}
    later = {a: frozenset(b for b in incom[a] if left[b] > left[a]) for a in alts}
    level = levels(alts, dom)
    canonical = tuple(sorted(alts, key=lambda a: (level[a], left[a], a)))
    return StructureIndex(prof, tuple(order), left, right, alts, empty,
                          {a: frozenset(s) for a, s in dom.items()},
                          {a: frozenset(s) for a, s in sub.items()},
                          incom, earlier, later, level, canonical)


def levels(members: Iterable[int], dom: Mapping[int, Iterable[int]]) -> dict:
    """Level of each member relative to ``members``: 1 + the longest dominator chain inside it."""
    members = set(members)
    out: dict = {}

    def depth(a):
        if a not in out:
            above = [b for b in dom[a] if b in members]
            out[a] = 1 + max((depth(b) for b in above), default=0)
        return out[a]

    for a in members:
        depth(a)
    return out


def top_level(index: StructureIndex, members: Iterable[int]) -> frozenset:
    members = frozenset(members)
    return frozenset(a for a in members if not (index.dom[a] & members))


def canonical(index: StructureIndex, members: Iterable[int]) -> list:
    """Canonical ordering of ``members``: by level inside the set, then by first approver."""
    members = list(members)
    lv = levels(members, index.dom)
    return sorted(members, key=lambda a: (lv[a], index.left[a], a))


# ---------------------------------------------------------------- inbetween / usable

def inbet(index: StructureIndex, a: int, b: int) -> frozenset:
    key = ("inbet", a, b)
    if key not in index._cache:
        lo, hi = index.left[a], index.right[b]
        both = index.incom[a] & index.incom[b]
        index._cache[key] = frozenset(c for c in both if lo <= index.left[c] and index.right[c] <= hi)
    return index._cache[key]


def inbet_hat(index: StructureIndex, a: int, b: int) -> frozenset:
    key = ("inbet_hat", a, b)
    if key not in index._cache:
        index._cache[key] = top_level(index, inbet(index, a, b))
    return index._cache[key]


def _within(i, j, lo, hi) -> bool:
    return lo <= i and j <= hi


def usable_set(index: StructureIndex, c: int, i: int, j: int, c2: int, i2: int, j2: int) -> frozenset:
    """Subordinates of ``c`` usable inside ``[i, j]`` under the promise ``(c2, i2, j2)``.

    ``(0, 0, 0)`` is the empty promise and is evaluated as ``(c, i, j)``.
    Guard failures give the empty set.
    """
    key = ("U", c, i, j, c2, i2, j2)
    cache = index._cache
    if key in cache:
        return cache[key]
    result = frozenset()
    if (c2, i2, j2) == SENTINEL:
        c2, i2, j2 = c, i, j
        ok = True
    else:
        ok = (c2 == c or c2 in index.dom[c]) if c2 in index.left else False
    if ok and c in index.left and i <= j:
        ok = (_within(i, j, index.left[c], index.right[c]) and _within(i, j, i2, j2)
              and _within(i2, j2, index.left[c2], index.right[c2]))
    else:
        ok = False
    if ok:
        found = []
        for a in index.sub[c]:
            la, ra = index.left[a], index.right[a]
            if ra < i or la > j:
                continue
            if la >= i:
                found.append(a)
            elif i2 <= la <= i - 1 and _cond_ii(index, a, c, c2, i2):
                found.append(a)
            elif la < i2 and _cond_iii(index, a, c):
                found.append(a)
        result = frozenset(found)
    cache[key] = result
    return result


def _cond_ii(index, a, c, c2, i2) -> bool:
    for b in index.dom[a] & index.sub[c2] & index.earlier[c]:
        if not index.left[b] < i2:
            return False
        if not (index.earlier[c2] & index.dom[b]):
            return False
    return True


def _cond_iii(index, a, c) -> bool:
    return all(c in index.earlier[b] for b in index.dom[a] & index.incom[c])


def top_usable(index: StructureIndex, c: int, i: int, j: int, c2: int, i2: int, j2: int) -> frozenset:
    key = ("Uhat", c, i, j, c2, i2, j2)
    if key not in index._cache:
        index._cache[key] = top_level(index, usable_set(index, c, i, j, c2, i2, j2))
    return index._cache[key]


def f1(c1, c2, n1, n2, n, k) -> int:
    """How many of ``c1``, ``c2`` carry a full ``ceil(n/k)`` happy load."""
    lo, hi, _ = monroe_bounds(n, k)
    # the floor test goes first so that k | n never counts a member as oversized
    if n1 <= lo and n2 <= lo:
        return 0
    if c1 != c2 and n1 == n2 == hi:
        return 2
    return 1


def f2(c1, c2, n1, n2, n, k) -> int:
    return len({c1, c2}) - f1(c1, c2, n1, n2, n, k)


# ---------------------------------------------------------------- partial solutions

@dataclass(frozen=True)
class PartialSolution:
    """A committee with an assignment of the voters in ``window`` (index positions)."""

    committee: frozenset
    assignment: Mapping[int, int]
    window: tuple
    k: int

    def happy(self, index: StructureIndex) -> dict:
        """Voter -> member for the voters approving their member."""
        return {v: a for v, a in self.assignment.items() if index.approves(v, a)}

    def misrepresentation(self, index: StructureIndex) -> int:
        return sum(1 for v, a in self.assignment.items() if not index.approves(v, a))


def from_solution(index: StructureIndex, solution) -> PartialSolution:
    """Wrap a full :class:`Solution` given in the caller's voter ids."""
    pos = {v: p for p, v in enumerate(index.voter_ids, start=1)}
    assignment = {pos[v]: solution.assignment[v - 1] for v in index.voter_ids}
    return PartialSolution(frozenset(solution.committee), assignment, (1, index.n), solution.k)


def _spans(index: StructureIndex, sol: PartialSolution) -> dict:
    """Happy voters of every member, sorted."""
    spans = {a: [] for a in sol.committee}
    for v, a in sorted(sol.happy(index).items()):
        spans[a].append(v)
    return spans


def check_partial(index: StructureIndex, sol: PartialSolution) -> list:
    lo, hi = sol.window
    out = []
    if set(sol.assignment) != set(range(lo, hi + 1)):
        out.append(Violation("domain", f"assignment must cover exactly [{lo}, {hi}]"))
    stray = set(sol.assignment.values()) - set(sol.committee)
    if stray:
        out.append(Violation("committee", f"voters assigned outside the committee: {sorted(stray)}"))
    cap = -(-index.n // sol.k)
    loads: dict = {}
    for a in sol.assignment.values():
        loads[a] = loads.get(a, 0) + 1
    for a, c in sorted(loads.items()):
        if c > cap:
            out.append(Violation("load", f"{a} represents {c} > {cap} voters"))
    return out


# ---------------------------------------------------------------- monotone / neatly ordered

@dataclass(frozen=True)
class Report:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def clauses(self) -> set:
        return {v.clause for v in self.violations}


def _mono_violations(index, sol, alts, spans):
    out = []
    committee = sol.committee
    for c in sorted(committee):
        if c not in index.left:
            continue
        for a in sorted(index.dom[c] & alts):
            if a not in committee:
                out.append(Violation("mono-i", f"{a} dominates member {c} but is not in the committee"))
    for b in sorted(alts):
        if b not in index.left or not spans.get(b):
            continue
        for a in sorted(index.dom[b] & alts):
            if not spans.get(a):
                out.append(Violation("mono-ii", f"{b} has happy voters but its dominator {a} has none"))
    return out


def _nt_violations(index, spans):
    out = []
    used = sorted(a for a, s in spans.items() if s)
    for a, b in itertools.permutations(used, 2):
        sa, sb = spans[a], spans[b]
        if a in index.earlier[b] and sa[-1] >= sb[0]:
            out.append(Violation("nt-i", f"{a} is earlier than {b} but does not precede it"))
        elif a in index.dom[b]:
            inside = [v for v in sa if index.left[b] <= v <= sb[-1]]
            if inside:
                out.append(Violation("nt-ii", f"dominator {a} is happy at {inside[0]} inside [{index.left[b]}, {sb[-1]}] of {b}"))
    return out


def verify_mnt(index: StructureIndex, sol: PartialSolution, alternatives: Iterable[int] | None = None) -> Report:
    """Every violated clause of monotonicity wrt ``alternatives`` and of neat ordering."""
    alts = frozenset(index.alternatives if alternatives is None else alternatives) & frozenset(index.left)
    spans = _spans(index, sol)
    found = check_partial(index, sol) + _mono_violations(index, sol, alts, spans) + _nt_violations(index, spans)
    return Report(tuple(found))


def verify_nt(index: StructureIndex, sol: PartialSolution) -> Report:
    return Report(tuple(check_partial(index, sol) + _nt_violations(index, _spans(index, sol))))


# The repair steps below work on a mutable copy: `committee` (set) and `sigma` (dict).

def _happy_of(index, sigma, a):
    return sorted(v for v, b in sigma.items() if b == a and index.approves(v, a))


def _replace_step(index, committee, sigma, alts) -> bool:
    """Put a missing dominator in place of its subordinate."""
    for b in sorted(committee, key=lambda x: (-index.level.get(x, 0), x)):
        if b not in index.left:
            continue
        missing = [a for a in index.dom[b] & alts if a not in committee]
        if not missing:
            continue
        # a dominator of the missing one that is missing too would be picked first
        a = min((x for x in missing if not (index.dom[x] & alts) - committee), key=lambda x: (index.left[x], x))
        committee.discard(b)
        committee.add(a)
        for v, c in sigma.items():
            if c == b:
                sigma[v] = a
        return True
    return False


def _exchange_step(index, committee, sigma, alts) -> bool:
    """Swap the voters of a dominator without happy voters and of a subordinate with some."""
    for b in sorted(alts & committee, key=lambda x: (-index.level[x], x)):
        if not _happy_of(index, sigma, b):
            continue
        for a in sorted(index.dom[b] & alts, key=lambda x: (index.level[x], x)):
            if a in committee and not _happy_of(index, sigma, a):
                for v, c in sigma.items():
                    if c == a:
                        sigma[v] = b
                    elif c == b:
                        sigma[v] = a
                return True
    return False


def _incom_step(index, committee, sigma) -> bool:
    """Exchange the last happy voter of an earlier alternative with the first one of a later one."""
    used = [a for a in sorted(committee) if a in index.left and _happy_of(index, sigma, a)]
    for a in used:
        for b in used:
            if a in index.earlier[b]:
                ha, hb = _happy_of(index, sigma, a), _happy_of(index, sigma, b)
                if ha[-1] > hb[0]:
                    sigma[ha[-1]], sigma[hb[0]] = b, a
                    return True
    return False


def conflict_set(index, sigma, c) -> list:
    happy = _happy_of(index, sigma, c)
    if not happy:
        return []
    return [v for v in range(index.left[c], happy[-1] + 1)
            if v in sigma and sigma[v] in index.dom[c] and index.approves(v, c)]


def _dominator_step(index, committee, sigma) -> bool:
    members = [a for a in committee if a in index.left]
    busy = {a for a in members if conflict_set(index, sigma, a)}
    if not busy:
        return False

    def blocked(a):
        return any(b in busy for b in index.sub[a]) or any(c in busy for c in index.earlier[a])

    ranked = sorted(busy, key=lambda a: (-index.level[a], index.left[a], a))
    a = next((x for x in ranked if not blocked(x)), ranked[0])
    i = max(conflict_set(index, sigma, a))
    j = _happy_of(index, sigma, a)[-1]
    b = sigma[i]
    sigma[i], sigma[j] = a, b
    return True


def mnt_transform(index: StructureIndex, sol: PartialSolution, alternatives: Iterable[int] | None = None,
                  max_rounds: int = 100_000) -> PartialSolution:
    """Repair ``sol`` into a monotone (wrt ``alternatives``) and neatly ordered partial solution.

    Replacement and voter exchange come first, then incomparable pairs, then
    dominator conflicts; the phases repeat until nothing applies. No step
    makes a happy voter unhappy.
    """
    if check_partial(index, sol):
        raise StructureError("input is not a partial solution")
    alts = frozenset(index.alternatives if alternatives is None else alternatives) & frozenset(index.left)
    committee = set(sol.committee)
    sigma = dict(sol.assignment)
    phases = (lambda: _replace_step(index, committee, sigma, alts),
              lambda: _exchange_step(index, committee, sigma, alts),
              lambda: _incom_step(index, committee, sigma),
              lambda: _dominator_step(index, committee, sigma))
    rounds = 0
    while True:
        for step in phases:
            if step():
                break
        else:
            break
        rounds += 1
        if rounds > max_rounds:
            raise StructureError("mnt_transform did not settle")
    return PartialSolution(frozenset(committee), sigma, sol.window, sol.k)


# ---------------------------------------------------------------- good intervals

@dataclass(frozen=True)
class IntervalCollection:
    """One voter interval per committee member, ``None`` for the empty one."""

    members: tuple
    intervals: tuple

    @property
    def signature(self) -> tuple:
        js = tuple(iv[1] if iv else 0 for iv in self.intervals)
        iis = tuple(-iv[0] if iv else 0 for iv in self.intervals)
        return js + iis

    def of(self, a: int):
        return self.intervals[self.members.index(a)]


def member_order(index: StructureIndex, committee: Iterable[int]) -> tuple:
    """Committee members in canonical order; members nobody approves go last."""
    rank = {a: r for r, a in enumerate(index.canonical_order)}
    return tuple(sorted(committee, key=lambda a: (a not in rank, rank.get(a, 0), a)))


def _inside(x, y) -> bool:
    return x is None or (y is not None and y[0] <= x[0] and x[1] <= y[1])


def _disjoint(x, y) -> bool:
    return x is None or y is None or x[1] < y[0] or y[1] < x[0]


def _good_for(index, a, iv, spans, happy, window) -> bool:
    hs = spans.get(a, [])
    if not hs:
        return iv is None
    if iv is None or a not in index.left:
        return False
    i, j = iv
    if not (i <= hs[0] and hs[-1] <= j and index.left[a] <= i and j <= index.right[a]):
        return False
    if not (window[0] <= i and j <= window[1]):
        return False
    return all(happy[v] not in index.incom[a] for v in range(i, j + 1) if v in happy)


def _pair_ok(index, a, x, b, y) -> bool:
    if a not in index.left or b not in index.left:
        return True
    if b in index.incom[a]:
        return _disjoint(x, y)
    if b in index.dom[a]:
        return _inside(x, y) or _disjoint(x, y)
    if a in index.dom[b]:
        return _inside(y, x) or _disjoint(x, y)
    return True


def _collection_ok(index, members, ivs, spans, happy, window, only=None) -> bool:
    idxs = range(len(members)) if only is None else (only,)
    for p in idxs:
        if not _good_for(index, members[p], ivs[p], spans, happy, window):
            return False
        for q in range(len(members)):
            if q != p and (only is not None or q > p) and not _pair_ok(index, members[p], ivs[p], members[q], ivs[q]):
                return False
    return True


def is_good_collection(index: StructureIndex, sol: PartialSolution, intervals) -> bool:
    """Check conditions (i)-(vi) of good intervals.

    ``intervals`` is an :class:`IntervalCollection` or a mapping member -> interval.
    A dominated member's interval must lie inside its dominator's or miss it.
    """
    if isinstance(intervals, IntervalCollection):
        intervals = dict(zip(intervals.members, intervals.intervals))
    members = member_order(index, sol.committee)
    if set(intervals) != set(members):
        return False
    ivs = tuple(_norm(intervals[a]) for a in members)
    return _collection_ok(index, members, ivs, _spans(index, sol), sol.happy(index), sol.window)


def _norm(iv):
    if iv is None:
        return None
    i, j = iv
    return None if i > j else (i, j)


def happy_spans(index: StructureIndex, sol: PartialSolution) -> IntervalCollection:
    spans = _spans(index, sol)
    members = member_order(index, sol.committee)
    return IntervalCollection(members, tuple((spans[a][0], spans[a][-1]) if spans[a] else None for a in members))


def _greedy_good(index, members, spans, happy, window, base):
    ivs = list(base)
    lo, hi = window
    for side in (1, 0):
        for p, a in enumerate(members):
            if ivs[p] is None:
                continue
            i, j = ivs[p]
            if side:
                options = [(i, x) for x in range(min(hi, index.right[a]), j, -1)]
            else:
                options = [(x, j) for x in range(max(lo, index.left[a]), i)]
            for cand in options:
                trial = ivs[:p] + [cand] + ivs[p + 1:]
                if _collection_ok(index, members, trial, spans, happy, window, only=p):
                    ivs[p] = cand
                    break
    return ivs


def _partial_ok(index, members, core, reach, spans, happy, p) -> bool:
    """Necessary conditions once member ``p`` got a new endpoint.

    ``core`` is the part every completion covers, ``reach`` the widest it may become.
    """
    a, x = members[p], core[p]
    if x is None:
        return True
    if any(happy[v] in index.incom[a] for v in range(x[0], x[1] + 1) if v in happy):
        return False
    for q, b in enumerate(members):
        y = core[q]
        if q == p or y is None or b not in index.left or _disjoint(x, y):
            continue
        if b in index.incom[a]:
            return False
        if b in index.dom[a] and not _inside(x, reach[q]):
            return False
        if a in index.dom[b] and not _inside(y, reach[p]):
            return False
    return True


def maximally_good(index: StructureIndex, sol: PartialSolution) -> IntervalCollection:
    """The signature-maximal good collection of a neatly ordered partial solution.

    A greedy pass (right endpoints in canonical order, then left endpoints)
    gives a good collection to beat; a depth-first search over the signature
    components, largest value first, then finds the maximum. The greedy pass
    alone can stop short when a right endpoint is only reachable after
    another member's left endpoint moved.
    """
    if not verify_nt(index, sol).ok:
        raise StructureError("maximally_good needs a neatly ordered partial solution")
    spans = _spans(index, sol)
    happy = sol.happy(index)
    base = happy_spans(index, sol)
    members = base.members
    lo, hi = sol.window
    floor = _greedy_good(index, members, spans, happy, sol.window, base.intervals)
    live = [p for p, iv in enumerate(base.intervals) if iv is not None]
    comps = [(p, 1) for p in live] + [(p, 0) for p in live]
    target = [floor[p][side] for p, side in comps]

    def values(p, side):
        a, (i0, j0) = members[p], base.intervals[p]
        if side:
            return range(min(hi, index.right[a]), j0 - 1, -1)
        return range(max(lo, index.left[a]), i0 + 1)

    core = list(base.intervals)
    reach = [None if iv is None else (max(lo, index.left[a]), min(hi, index.right[a]))
             for a, iv in zip(members, base.intervals)]

    def search(c, tight):
        if c == len(comps):
            return _collection_ok(index, members, core, spans, happy, sol.window)
        p, side = comps[c]
        old_core, old_reach = core[p], reach[p]
        for val in values(p, side):
            better = val > target[c] if side else val < target[c]
            if tight and not better and val != target[c]:
                break
            if side:
                core[p], reach[p] = (old_core[0], val), (old_reach[0], val)
            else:
                core[p], reach[p] = (val, old_core[1]), (val, old_reach[1])
            if _partial_ok(index, members, core, reach, spans, happy, p) and search(c + 1, tight and not better):
                return True
        core[p], reach[p] = old_core, old_reach
        return False

    if not search(0, True):
        raise StructureError("no good collection found")
    return IntervalCollection(members, tuple(core))


def all_good_collections(index: StructureIndex, sol: PartialSolution):
    """Every good collection, by brute force; only for tiny instances."""
    spans = _spans(index, sol)
    happy = sol.happy(index)
    members = member_order(index, sol.committee)
    lo, hi = sol.window
    choices = []
    for a in members:
        hs = spans[a]
        if not hs:
            choices.append([None])
            continue
        l0, r0 = max(lo, index.left[a]), min(hi, index.right[a])
        choices.append([(i, j) for i in range(l0, hs[0] + 1) for j in range(hs[-1], r0 + 1)])
    for combo in itertools.product(*choices):
        if _collection_ok(index, members, combo, spans, happy, sol.window):
            yield IntervalCollection(members, combo)


# ---------------------------------------------------------------- interval lemmas

def check_interval_lemmas(index: StructureIndex, sol: PartialSolution) -> Report:
    """Coverage, containment and witness properties of the maximally good collection."""
    coll = maximally_good(index, sol)
    iv = dict(zip(coll.members, coll.intervals))
    spans = _spans(index, sol)
    lo, hi = sol.window
    used = [a for a in coll.members if spans.get(a)]
    found = []

    for v in range(lo, hi + 1):
        if any(index.approves(v, a) for a in used) and not any(iv[a] and iv[a][0] <= v <= iv[a][1] for a in used):
            found.append(Violation("coverage", f"h-assignable voter {v} lies in no interval"))

    members = [a for a in coll.members if a in index.left]
    for x in members:
        doms = [y for y in members if y in index.dom[x]]
        if any(iv[y] for y in doms) and not any(_inside(iv[x], iv[y]) for y in doms):
            found.append(Violation("containment", f"interval of {x} is inside none of its dominators'"))

    for x, y in itertools.permutations(used, 2):
        if y not in index.dom[x] or _inside(iv[x], iv[y]):
            continue
        (ix, jx), (iy, jy) = iv[x], iv[y]
        if jy < ix:
            gap = range(jy + 1, ix)
        elif jx < iy:
            gap = range(1, iy)
        else:
            gap = None
        ok = False
        for z in members:
            if z not in index.dom[x] or z in index.dom[y] or not _inside(iv[x], iv[z]) or not _disjoint(iv[z], iv[y]):
                continue
            if gap is None or any(v in gap for v in spans.get(z, [])):
                ok = True
                break
        if not ok:
            found.append(Violation("witness", f"no dominator of {x} separates it from {y}"))
    return Report(tuple(found))
