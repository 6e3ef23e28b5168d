"""Polynomial-time Monroe for single-crossing approval profiles.

The solver maximizes the number of happy voters with the thirteen-argument
table ``T(a, b, i, j, kh, kl, na, nb, ns, B, c2, i2, j2)``:

* ``a``/``b`` are the first and last undominated members, ``[i, j]`` the
  voter range (positions in the single-crossing order);
* ``kh``/``kl`` count members other than ``a`` and ``b`` carrying a full
  ``ceil(n/k)`` happy load, resp. at most ``floor(n/k)``;
* ``na``/``nb`` are the happy loads of ``a`` and ``b`` inside the range and
  ``ns`` a lower bound on the voters of the range left without a happy seat;
* ``B`` allows members whose first approver lies before ``i``;
* ``(c2, i2, j2)`` is the outer promise, ``(0, 0, 0)`` when there is none.

Keys carry a fourteenth component, a bitmask over voters that sit outside
the single-crossing order (see ``monroe_nearly``). Those voters must all be
seated happily by the entry, and ``na``/``nb`` then count them too. Without
such voters the mask is always ``0`` and the table is the plain one.

A fifteenth component reserves ordered voters for alternatives outside the
table: a vector of per-type counts, a voter's type being the set of those
outside alternatives it approves. Reserved voters count as happy; they are
taken from base blocks, from the gaps between split parts and from outside
the top-level range. Plain runs use the empty vector.

Entries are evaluated lazily and memoized; the memo size is reported in
``Solution.extra``. The score is ``n`` minus the best happy count; the
concrete assignment is rebuilt from stored argmax choices and completed so
loads meet the proportionality bounds exactly.
"""

from __future__ import annotations

import itertools
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from .profile import Model, Objective, Profile, Rule, Solution, monroe_bounds, score_of
from .structure import (SENTINEL, StructureIndex, build_index, f1, f2, inbet_hat, top_usable,
                        usable_set)

NEG = float("-inf")


class TableError(RuntimeError):
    """Raised when the stored choices do not rebuild into a valid assignment."""


@dataclass(frozen=True)
class DPConfiguration:
    a: int
    b: int
    i: int
    j: int
    kh: int
    kl: int
    na: int
    nb: int
    ns: int
    B: int
    c2: int = 0
    i2: int = 0
    j2: int = 0
    extra_voters: int = 0
    reserved: tuple = ()

    def key(self) -> tuple:
        return (self.a, self.b, self.i, self.j, self.kh, self.kl, self.na, self.nb, self.ns,
                self.B, self.c2, self.i2, self.j2, self.extra_voters, self.reserved)


@dataclass
class DPEntry:
    value: float
    choice: tuple = ()


@dataclass
class TableContext:
    index: StructureIndex
    k: int
    total: int
    lo: int
    hi: int
    rem: int
    # approvals of the off-order voters: alternative -> bitmask
    extra_approvals: dict = field(default_factory=dict)
    extra_count: int = 0
    memo: dict = field(default_factory=dict)
    suffix: dict = field(default_factory=dict)
    # give B=1 the same base entries as B=0 (see module notes)
    b1_base: bool = False
    # reservations: type index per position (-1: none), prefix counts per type,
    # admissible total vectors and the load classes of the outside members
    res_type: tuple = ()
    res_pref: tuple = ()
    res_totals: tuple = ((),)
    res_slots: tuple = (0, 0)

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def full_mask(self) -> int:
        return (1 << self.extra_count) - 1


def make_context(profile: Profile, sc_order: Sequence[int] | None, k: int, total: int | None = None,
                 extra_ballots: Sequence = (), **kw) -> TableContext:
    """Context for ``profile`` along ``sc_order``.

    ``total`` is the electorate size the loads are measured against (defaults
    to ``profile.n``); ``extra_ballots`` are approval sets of voters outside the
    order, counted in ``total``.
    """
    index = build_index(profile, sc_order)
    total = profile.n if total is None else total
    lo, hi, rem = monroe_bounds(total, k)
    approvals: dict = {}
    for bit, ballot in enumerate(extra_ballots):
        for a in ballot:
            approvals[a] = approvals.get(a, 0) | (1 << bit)
    return TableContext(index, k, total, lo, hi, rem, approvals, len(extra_ballots), **kw)


def set_reservations(ctx: TableContext, types: Sequence[int], ntypes: int, totals, slots):
    """Enable reservations: ``types[p-1]`` is the type of position ``p`` (``-1`` for none)."""
    n = ctx.n
    pref = []
    for t in range(ntypes):
        row = [0] * (n + 1)
        for p in range(1, n + 1):
            row[p] = row[p - 1] + (types[p - 1] == t)
        pref.append(tuple(row))
    ctx.res_type = (-1,) + tuple(types)
    ctx.res_pref = tuple(pref)
    ctx.res_totals = tuple(tuple(t) for t in totals)
    ctx.res_slots = tuple(slots)
    ctx.memo.clear()
    ctx.suffix.clear()


def _zero(ctx: TableContext) -> tuple:
    return (0,) * len(ctx.res_pref)


def _avail(ctx: TableContext, i: int, j: int, res: tuple) -> bool:
    """Positions ``i..j`` hold at least ``res[t]`` voters of every type ``t``."""
    for t, x in enumerate(res):
        if x and ctx.res_pref[t][j] - ctx.res_pref[t][i - 1] < x:
            return False
    return True


def _subvectors(res: tuple):
    return itertools.product(*(range(x + 1) for x in res))


def _minus(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ---------------------------------------------------------------- guards

def violates(ctx: TableContext, key: tuple) -> str | None:
    """Name of the first violated configuration condition, or ``None``."""
    a, b, i, j, kh, kl, na, nb, ns, B, c2, i2, j2, extra, res = key
    idx = ctx.index
    if a not in idx.left or b not in idx.left:
        return "domain"
    if not (1 <= i <= j <= ctx.n) or kh < 0 or kl < 0 or ns < 0:
        return "domain"
    if not (0 <= na <= ctx.hi and 0 <= nb <= ctx.hi) or B not in (0, 1):
        return "domain"
    if extra < 0 or extra & ~ctx.full_mask:
        return "domain"
    if len(res) != len(ctx.res_pref) or any(x < 0 for x in res):
        return "domain"
    if not (idx.left[a] <= i and j <= idx.right[b]):
        return "CT1"
    if a != b and a not in idx.earlier[b]:
        return "CT2"
    room = j - i + 1 + extra.bit_count()
    if a != b:
        if room < na + nb + ns:
            return "CT3"
    elif na != nb or room < na + ns:
        return "CT3"
    if res and (room < na + (nb if a != b else 0) + ns + sum(res) or not _avail(ctx, i, j, res)):
        return "CT10"
    if c2 != 0:
        if c2 not in idx.left or not (i2 <= i and j <= j2 and i2 <= idx.left[a]):
            return "CT4"
        if usable_set(idx, c2, i2, j2, c2, i2, j2) & idx.dom[a] & idx.earlier[b]:
            return "CT5"
    else:
        if i2 != 0 or j2 != 0:
            return "CT4"
        if idx.dom[a] & idx.earlier[b]:
            return "CT6"
    if a != b and (na == 0 or nb == 0):
        return "CT7"
    return None


# ---------------------------------------------------------------- table

def table_entry(ctx: TableContext, cfg) -> DPEntry:
    """Memoized value of one configuration (``DPConfiguration`` or raw key tuple)."""
    key = cfg.key() if isinstance(cfg, DPConfiguration) else tuple(cfg)
    if len(key) == 13:
        key = key + (0,)
    if len(key) == 14:
        key = key + (_zero(ctx),)
    val = _value(ctx, key)
    return DPEntry(val, ctx.memo.get(key, (NEG, ()))[1])


def _value(ctx: TableContext, key: tuple) -> float:
    hit = ctx.memo.get(key)
    if hit is not None:
        return hit[0]
    if violates(ctx, key) is not None:
        ctx.memo[key] = (NEG, ())
        return NEG
    a, b = key[0], key[1]
    if a == b:
        entry = _case_single(ctx, key)
    else:
        entry = _case_pair(ctx, key)
    ctx.memo[key] = entry
    return entry[0]


def upper(ctx: TableContext, key: tuple) -> int:
    """Cheap upper bound on an entry: free voters, and the loads the counted members can seat."""
    a, b, i, j, kh, kl, na, nb, ns = key[:9]
    seats = na + (nb if a != b else 0) + kh * ctx.hi + kl * ctx.lo + sum(key[14])
    return min(j - i + 1 - ns + key[13].bit_count(), seats)


def _count_splits(total_kh, total_kl):
    for kh1 in range(total_kh + 1):
        for kl1 in range(total_kl + 1):
            yield kh1, kl1, total_kh - kh1, total_kl - kl1


def _case_single(ctx: TableContext, key: tuple):
    a, _, i, j, kh, kl, na, _, ns, B, c2, i2, j2, extra, res = key
    idx, n, k, hi = ctx.index, ctx.total, ctx.k, ctx.hi
    best = (NEG, ())
    bound = upper(ctx, key)
    own = ctx.extra_approvals.get(a, 0)
    if (kh == 0 and kl == 0 and (B == 0 or ctx.b1_base) and not extra & ~own
            and extra.bit_count() <= na):
        best = (na + sum(res), ("base",))
        if best[0] == bound:
            return best
    # off-order voters seated with a itself
    if extra:
        for part in _submasks(extra & own):
            size = part.bit_count()
            if part == 0 or size > na:
                continue
            sub = (a, a, i, j, kh, kl, na - size, na - size, ns, B, c2, i2, j2, extra ^ part, res)
            if upper(ctx, sub) + size <= best[0]:
                continue
            v = _value(ctx, sub)
            if v != NEG and v + size > best[0]:
                best = (v + size, ("absorb", sub, part))
                if best[0] == bound:
                    return best
    # one more layer of subordinates below a
    cand = top_usable(idx, a, i, j, c2, i2, j2)
    for b in cand:
        if B == 0 and not i <= idx.left[b] <= j:
            continue
        for c in cand:
            if c != b and b not in idx.earlier[c]:
                continue
            for nb in range(1, hi + 1):
                for nc in range(1, hi + 1):
                    if b == c and nb != nc:
                        continue
                    kh2 = kh - f1(b, c, nb, nc, n, k)
                    kl2 = kl - f2(b, c, nb, nc, n, k)
                    if kh2 < 0 or kl2 < 0:
                        continue
                    for promise in {(c2, i2, j2), (a, i, j)}:
                        for inner_b in (0, 1):
                            sub = ((b, c, i, j, kh2, kl2, nb, nc, na + ns, inner_b) + promise
                                   + (extra, res))
                            if upper(ctx, sub) + na <= best[0]:
                                continue
                            v = _value(ctx, sub)
                            if v != NEG and v + na > best[0]:
                                best = (v + na, ("lift", sub))
                                if best[0] == bound:
                                    return best
    # two separated pieces of a's range
    for istar in range(i, j):
        for kh1, kl1, kh2, kl2 in _count_splits(kh, kl):
            for b1 in range(na + 1):
                for ns1 in range(ns + 1):
                    for x1 in _submasks(extra):
                        x2 = extra ^ x1
                        for r1 in _subvectors(res):
                            r2 = _minus(res, r1)
                            left = (a, a, i, istar, kh1, kl1, b1, b1, ns1, B, c2, i2, j2, x1, r1)
                            rcap = min(j - istar - (ns - ns1) + x2.bit_count(),
                                       na - b1 + kh2 * hi + kl2 * ctx.lo + sum(r2))
                            if upper(ctx, left) + rcap <= best[0]:
                                continue
                            lv = _value(ctx, left)
                            if lv == NEG or lv + rcap <= best[0]:
                                continue
                            right = _suffix_best(ctx, (a, istar + 1, j, kh2, kl2, na - b1, ns - ns1,
                                                       1, c2, i2, j2, x2, r2))
                            if right[0] != NEG and lv + right[0] > best[0]:
                                best = (lv + right[0], ("split", left, right))
                                if best[0] == bound:
                                    return best
    return best


def _suffix_best(ctx: TableContext, skey: tuple):
    """Best ``T(a, a, j*, j, ...)`` over ``j* >= s``; ``bmax`` bounds the flag.

    Both operands of a split only interact through ``j* > i*``, so the right
    operand is a suffix maximum over its start. Voters of the gap before
    ``j*`` may take part of the reservation vector. Returns
    ``(value, entry, reserved gap positions)``.
    """
    hit = ctx.suffix.get(skey)
    if hit is not None:
        return hit
    a, s, j, kh, kl, na, ns, bmax, c2, i2, j2, extra, res = skey
    best = (NEG, None, ())
    if s <= j:
        for flag in range(bmax):
            cand = (a, a, s, j, kh, kl, na, na, ns, flag, c2, i2, j2, extra, res)
            v = _value(ctx, cand)
            if v > best[0]:
                best = (v, cand, ())
        rest = _suffix_best(ctx, (a, s + 1, j, kh, kl, na, ns, bmax, c2, i2, j2, extra, res))
        if rest[0] > best[0]:
            best = rest
        t = ctx.res_type[s] if res else -1
        if t >= 0 and res[t]:
            less = res[:t] + (res[t] - 1,) + res[t + 1:]
            rest = _suffix_best(ctx, (a, s + 1, j, kh, kl, na, ns, bmax, c2, i2, j2, extra, less))
            if rest[0] != NEG and rest[0] + 1 > best[0]:
                best = (rest[0] + 1, rest[1], (s,) + rest[2])
    ctx.suffix[skey] = best
    return best


def _middle_counts(ctx, nc, kh, kl):
    """Counts left for the other members once a middle member with load ``nc`` is taken."""
    if nc <= ctx.lo:
        return kh, kl - 1
    if nc == ctx.hi:
        return kh - 1, kl
    return -1, -1


def _case_pair(ctx: TableContext, key: tuple):
    a, b, i, j, kh, kl, na, nb, ns, B, c2, i2, j2, extra, res = key
    idx, lo, hi = ctx.index, ctx.lo, ctx.hi
    best = (NEG, ())
    bound = upper(ctx, key)
    middles = [(c, nc) for c in sorted(inbet_hat(idx, a, b)) for nc in range(1, hi + 1)]
    # b seated only with off-order voters
    if extra:
        own = ctx.extra_approvals.get(b, 0)
        for part in _submasks(extra & own):
            if part == 0 or part.bit_count() != nb:
                continue
            rest = extra ^ part
            lefts = [(a, a, i, j, kh, kl, na, na, ns, B, c2, i2, j2, rest, res)]
            for c, nc in middles:
                kh1, kl1 = _middle_counts(ctx, nc, kh, kl)
                if kh1 >= 0 and kl1 >= 0:
                    lefts.append((a, c, i, j, kh1, kl1, na, nc, ns, B, c2, i2, j2, rest, res))
            for left in lefts:
                if upper(ctx, left) + nb <= best[0]:
                    continue
                lv = _value(ctx, left)
                if lv != NEG and lv + nb > best[0]:
                    best = (lv + nb, ("tail", left, b, part))
                    if best[0] == bound:
                        return best
    for istar in range(i, j):
        for ns1 in range(ns + 1):
            ns2 = ns - ns1
            for kh2 in range(kh + 1):
                for kl2 in range(kl + 1):
                    for x1 in _submasks(extra):
                        x2 = extra ^ x1
                        for r1 in _subvectors(res):
                            r2 = _minus(res, r1)
                            rcap = min(j - istar - ns2 + x2.bit_count(),
                                       nb + kh2 * hi + kl2 * lo + sum(r2))
                            lcap = min(istar - i + 1 - ns1 + x1.bit_count(),
                                       na + (kh - kh2) * hi + (kl - kl2) * lo + sum(r1))
                            if rcap + lcap <= best[0]:
                                continue
                            right = _suffix_best(ctx, (b, istar + 1, j, kh2, kl2, nb, ns2, 2,
                                                       c2, i2, j2, x2, r2))
                            rv = right[0]
                            if rv == NEG or rv + lcap <= best[0]:
                                continue
                            # a itself closes the left part
                            left = (a, a, i, istar, kh - kh2, kl - kl2, na, na, ns1, B, c2, i2, j2,
                                    x1, r1)
                            lv = _value(ctx, left) if upper(ctx, left) + rv > best[0] else NEG
                            if lv != NEG and lv + rv > best[0]:
                                best = (lv + rv, ("chain", left, right))
                            for c, nc in middles:
                                kh1, kl1 = _middle_counts(ctx, nc, kh - kh2, kl - kl2)
                                if kh1 < 0 or kl1 < 0:
                                    continue
                                left = (a, c, i, istar, kh1, kl1, na, nc, ns1, B, c2, i2, j2, x1, r1)
                                if upper(ctx, left) + rv <= best[0]:
                                    continue
                                lv = _value(ctx, left)
                                if lv != NEG and lv + rv > best[0]:
                                    best = (lv + rv, ("chain", left, right))
                            if best[0] == bound:
                                return best
    return best


# ---------------------------------------------------------------- top level

def _distinct_owners(blocks, candidates, taken=()):
    """Distinct alternatives approving each block, or ``None``."""
    if not blocks:
        return []
    first, rest = blocks[0], blocks[1:]
    for a in candidates[first]:
        if a in taken:
            continue
        tail = _distinct_owners(rest, candidates, taken + (a,))
        if tail is not None:
            return [a] + tail
    return None


def _set_partitions(mask: int):
    if mask == 0:
        yield []
        return
    low = mask & -mask
    rest = mask ^ low
    for sub in _submasks(rest):
        for tail in _set_partitions(rest ^ sub):
            yield [low | sub] + tail


def extra_only_options(ctx: TableContext, alternatives) -> dict:
    """For every mask: load-class counts ``(high, low)`` reachable by members from
    ``alternatives`` seated only with off-order voters, with a witness seating."""
    out: dict = {0: {(0, 0): []}}
    alternatives = sorted(alternatives)
    for mask in range(1, ctx.full_mask + 1):
        found: dict = {}
        for blocks in _set_partitions(mask):
            if any(b.bit_count() > ctx.hi for b in blocks):
                continue
            candidates = {b: [a for a in alternatives
                              if not b & ~ctx.extra_approvals.get(a, 0)] for b in blocks}
            owners = _distinct_owners(blocks, candidates)
            if owners is None:
                continue
            high = sum(1 for b in blocks if ctx.hi > ctx.lo and b.bit_count() == ctx.hi)
            found.setdefault((high, len(blocks) - high), list(zip(owners, blocks)))
        if found:
            out[mask] = found
    return out


def _outside_splits(ctx: TableContext, i: int, j: int):
    """``(inside, outside)`` splits of every admissible total reservation.

    ``outside`` is drawn from the positions before ``i`` and after ``j``.
    """
    n = ctx.n
    out = []
    for total in ctx.res_totals:
        for inside in _subvectors(total):
            rest = _minus(total, inside)
            if all(ctx.res_pref[t][i - 1] + ctx.res_pref[t][n] - ctx.res_pref[t][j] >= x
                   for t, x in enumerate(rest)):
                out.append((inside, rest))
    return out


def best_happy(ctx: TableContext):
    """Top-level aggregation.

    Returns ``(happy, key, seats, outside)``: ``key`` is the table entry used
    (``None`` when no ordered voter gets a table member), ``seats`` lists
    members seated only with off-order voters as ``(alternative, mask)``
    pairs and ``outside`` the reservation drawn from outside the entry's range.
    """
    idx, n, k, hi, rem = ctx.index, ctx.total, ctx.k, ctx.hi, ctx.rem
    full = ctx.full_mask
    dh, dl = ctx.res_slots
    tops = sorted(a for a in idx.alternatives if not idx.dom[a])
    # members outside the index never meet the table's members
    outside = extra_only_options(ctx, [a for a in idx.profile.alternatives if a not in idx.left])
    cands = []
    splits: dict = {}
    for a in tops:
        for b in tops:
            if a != b and a not in idx.earlier[b]:
                continue
            size = 1 if a == b else 2
            for i in range(idx.left[a], idx.right[b] + 1):
                for j in range(i, idx.right[b] + 1):
                    if (i, j) not in splits:
                        splits[(i, j)] = _outside_splits(ctx, i, j)
                    for na in range(1, hi + 1) if a != b else range(0, hi + 1):
                        for nb in (range(1, hi + 1) if a != b else (na,)):
                            cap = rem - dh - f1(a, b, na, nb, n, k)
                            if cap < 0:
                                continue
                            for x1 in range(full + 1):
                                for x2 in _submasks(full ^ x1):
                                    for (oh, ol), seats in outside.get(x2, {}).items():
                                        free = k - size - oh - ol - dh - dl
                                        for kh in range(0, min(cap - oh, free) + 1):
                                            for kl in range(0, free - kh + 1):
                                                for B in (0, 1):
                                                    for inside, rest in splits[(i, j)]:
                                                        key = ((a, b, i, j, kh, kl, na, nb, 0, B)
                                                               + SENTINEL + (x1, inside))
                                                        gain = x2.bit_count() + sum(rest)
                                                        cands.append((upper(ctx, key) + gain,
                                                                      key, seats, rest))
    # nobody from the order gets a table member: any alternatives may take the others
    best = (0, None, [], _zero(ctx))
    whole = [total for total in ctx.res_totals if _avail(ctx, 1, ctx.n, total)]
    for mask, found in extra_only_options(ctx, idx.profile.alternatives).items():
        for (oh, ol), seats in found.items():
            if oh + dh <= rem and oh + ol + dh + dl <= k:
                for total in whole:
                    if mask.bit_count() + sum(total) > best[0]:
                        best = (mask.bit_count() + sum(total), None, seats, total)
    # most promising first, so the bound cuts the tail
    cands.sort(key=lambda c: -c[0])
    for ub, key, seats, rest in cands:
        if ub <= best[0]:
            break
        v = _value(ctx, key)
        if v == NEG:
            continue
        total = v + sum(m.bit_count() for _, m in seats) + sum(rest)
        if total > best[0]:
            best = (total, key, seats, rest)
    return best


# ---------------------------------------------------------------- reconstruction

def _seat_extra(out: dict, a: int, mask: int):
    bit = 0
    while mask:
        if mask & 1:
            out[bit] = a
        mask >>= 1
        bit += 1


def _pick_reserved(ctx: TableContext, positions, res: tuple, taken=()) -> list:
    """First positions of each type among ``positions`` covering ``res``."""
    need = list(res)
    out = []
    for p in positions:
        t = ctx.res_type[p]
        if p not in taken and t >= 0 and need[t]:
            need[t] -= 1
            out.append(p)
    if any(need):
        raise TableError("reservation does not fit its range")
    return out


def expand(ctx: TableContext, key: tuple):
    """Happy seats of an entry.

    Returns ``(positions -> alternative, extra bit -> alternative, reserved
    positions)``.
    """
    value, choice = ctx.memo[key]
    a, _, i, j = key[:4]
    na, extra, res = key[6], key[13], key[14]
    kind = choice[0]
    if kind == "base":
        placed: dict = {}
        _seat_extra(placed, a, extra)
        reserved = _pick_reserved(ctx, range(i, j + 1), res) if any(res) else []
        own = [v for v in range(i, j + 1) if v not in reserved][: na - extra.bit_count()]
        return {v: a for v in own}, placed, reserved
    if kind == "absorb":
        inner, placed, reserved = expand(ctx, choice[1])
        _seat_extra(placed, a, choice[2])
        return inner, placed, reserved
    if kind == "lift":
        inner, placed, reserved = expand(ctx, choice[1])
        taken = set(reserved)
        free = [v for v in range(i, j + 1) if v not in inner and v not in taken]
        if len(free) < na:
            raise TableError("lift leaves too few free voters")
        inner.update({v: a for v in free[:na]})
        return inner, placed, reserved
    if kind == "tail":
        inner, placed, reserved = expand(ctx, choice[1])
        _seat_extra(placed, choice[2], choice[3])
        return inner, placed, reserved
    left, lx, lr = expand(ctx, choice[1])
    _, rkey, gap = choice[2]
    right, rx, rr = expand(ctx, rkey)
    if left.keys() & right.keys() or lx.keys() & rx.keys():
        raise TableError("overlapping parts")
    left.update(right)
    lx.update(rx)
    return left, lx, lr + list(gap) + rr


def solve_context(ctx: TableContext):
    """Run the table: ``(happy, positions -> alternative, extra bit -> alternative, reserved)``."""
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        happy_count, top, seats, rest = best_happy(ctx)
        if top is not None:
            by_pos, placed, reserved = expand(ctx, top)
            i, j = top[2], top[3]
            outside = [p for p in range(1, ctx.n + 1) if not i <= p <= j]
        else:
            by_pos, placed, reserved = {}, {}, []
            outside = range(1, ctx.n + 1)
    finally:
        sys.setrecursionlimit(limit)
    reserved = reserved + (_pick_reserved(ctx, outside, rest) if any(rest) else [])
    for a, mask in seats:
        _seat_extra(placed, a, mask)
    if len(by_pos) + len(placed) + len(reserved) != happy_count:
        raise TableError("rebuilt happy count differs from the table value")
    if set(by_pos) & set(reserved):
        raise TableError("reserved voter also seated in the table")
    return happy_count, by_pos, placed, reserved


def complete_assignment(profile: Profile, k: int, happy: dict):
    """Turn a happy assignment (voter -> member) into a full proportional one.

    Voters outside ``happy`` go to members with spare room, approved ones first.
    """
    n = profile.n
    lo, hi, rem = monroe_bounds(n, k)
    loads: dict = {}
    for v, a in happy.items():
        if a not in profile.ballot(v):
            raise TableError(f"voter {v} is not happy with {a}")
        loads[a] = loads.get(a, 0) + 1
    committee = sorted(loads)
    if len(committee) > k:
        raise TableError("more members than k")
    if any(x > hi for x in loads.values()):
        raise TableError("load above ceil(n/k)")
    for a in profile.alternatives:
        if len(committee) == k:
            break
        if a not in loads:
            committee.append(a)
            loads[a] = 0
    full = [a for a in committee if loads[a] == hi and hi > lo]
    if len(full) > rem:
        raise TableError("too many full members")
    rest = sorted((a for a in committee if a not in full), key=lambda a: (-loads[a], a))
    big = set(full) | set(rest[: rem - len(full)])
    target = {a: hi if a in big else lo for a in committee}
    if any(loads[a] > target[a] for a in committee):
        raise TableError("load above its target")
    assignment = dict(happy)
    for v in profile.voters:
        if v in assignment:
            continue
        # prefer a member this voter approves, then the first with room
        room = [a for a in committee if loads[a] < target[a]]
        pick = next((a for a in room if a in profile.ballot(v)), room[0])
        assignment[v] = pick
        loads[pick] += 1
    return sorted(committee), [assignment[v] for v in profile.voters]


def run_table(profile: Profile, ordered: Profile, positions: Sequence[int], extra_voters: Sequence[int],
              k: int, objective: Objective, method: str, b1_base: bool = False,
              exclude: frozenset = frozenset()) -> Solution:
    """Solve ``profile`` with the table over ``ordered`` (single-crossing along ``1..n'``).

    ``positions[p-1]`` is the voter of ``profile`` at position ``p``;
    ``extra_voters`` are the remaining voters of ``profile``. Alternatives in
    ``exclude`` take no happy voter (they may still fill the committee).
    """
    if not 1 <= k <= profile.m:
        raise ValueError(f"committee size {k} outside 1..{profile.m}")
    start = time.perf_counter()
    if exclude:
        ordered = Profile.approval([[a for a in b if a not in exclude] for b in ordered.ballots],
                                   ordered.m)
    extra_ballots = [[a for a in profile.ballot(v) if a not in exclude] for v in extra_voters]
    ctx = make_context(ordered, None, k, total=profile.n, extra_ballots=extra_ballots,
                       b1_base=b1_base)
    happy_count, by_pos, placed, _ = solve_context(ctx)
    happy = {positions[p - 1]: a for p, a in by_pos.items()}
    happy.update({extra_voters[bit]: a for bit, a in placed.items()})
    committee, assignment = complete_assignment(profile, k, happy)
    table_score = profile.n - happy_count
    if objective is Objective.MAX:
        table_score = 0 if table_score == 0 else 1
    score = score_of(profile, Model.APPROVAL_BINARY, objective, assignment)
    elapsed = (time.perf_counter() - start) * 1000
    return Solution(Rule.MONROE, objective, k, score, tuple(committee), tuple(assignment),
                    method_used=method, elapsed_ms=elapsed,
                    extra={"memo_size": len(ctx.memo) + len(ctx.suffix), "table_score": table_score,
                           "happy": happy_count})


def _solve(profile: Profile, sc_order: Sequence[int] | None, k: int, objective: Objective,
           b1_base: bool = False) -> Solution:
    order = list(sc_order) if sc_order is not None else list(profile.voters)
    index = build_index(profile, order)
    return run_table(profile, index.profile, order, (), k, objective, "sc-dp", b1_base)


def solve_monroe_sc_sum(profile: Profile, sc_order: Sequence[int] | None, k: int) -> Solution:
    """Optimal Monroe (sum of 0/1 misrepresentation) on an SC approval profile."""
    return _solve(profile, sc_order, k, Objective.SUM)


def solve_monroe_sc_max(profile: Profile, sc_order: Sequence[int] | None, k: int) -> Solution:
    """Minimax Monroe: 0 exactly when the sum optimum is 0."""
    return _solve(profile, sc_order, k, Objective.MAX)
