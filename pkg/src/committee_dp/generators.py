"""Seeded random profiles: structured bases plus optional unstructured noise.

Every generator takes a ``random.Random`` (or a seed) and is deterministic
for it. Noise arguments count towards ``n``/``m``: with ``noise_voters=T``
the structured base has ``n - T`` voters and ``T`` arbitrary ballots are
mixed in at random positions.
"""

from __future__ import annotations

import random
from typing import Sequence

from .profile import Profile

MODELS = ("sc-approval", "sp-approval", "sp-linear", "sc-linear")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _interval(rng: random.Random, size: int, allow_empty: bool = False):
    if allow_empty and rng.random() < 0.1:
        return ()
    i = rng.randrange(size)
    j = rng.randrange(size)
    i, j = min(i, j), max(i, j)
    return tuple(range(i, j + 1))


def sp_approval(n: int, m: int, seed=None) -> list:
    """Interval ballots over a hidden random axis."""
    rng = _rng(seed)
    axis = list(range(1, m + 1))
    rng.shuffle(axis)
    return [sorted(axis[p] for p in _interval(rng, m)) for _ in range(n)]


def sc_approval(n: int, m: int, seed=None) -> list:
    """Every alternative is approved by a contiguous run of a hidden voter order."""
    rng = _rng(seed)
    runs = [_interval(rng, n, allow_empty=True) for _ in range(m)]
    by_slot = [sorted(a for a in range(1, m + 1) if s in runs[a - 1]) for s in range(n)]
    rng.shuffle(by_slot)
    return by_slot


def sp_linear(n: int, m: int, seed=None) -> list:
    """Random-walk single-peaked rankings: start at a peak, extend left or right."""
    rng = _rng(seed)
    axis = list(range(1, m + 1))
    rng.shuffle(axis)
    ballots = []
    for _ in range(n):
        lo = hi = rng.randrange(m)
        ranking = [axis[lo]]
        while len(ranking) < m:
            go_left = hi == m - 1 or (lo > 0 and rng.random() < 0.5)
            if go_left:
                lo -= 1
                ranking.append(axis[lo])
            else:
                hi += 1
                ranking.append(axis[hi])
        ballots.append(ranking)
    return ballots


def sc_linear(n: int, m: int, seed=None) -> list:
    """A chain of rankings where each new voter swaps a few not-yet-swapped adjacent pairs."""
    rng = _rng(seed)
    first = list(range(1, m + 1))
    rng.shuffle(first)
    pos0 = {a: i for i, a in enumerate(first)}
    cur = list(first)
    chain = [list(cur)]
    for _ in range(n - 1):
        for _ in range(rng.choice((0, 1, 1, 2))):
            # adjacent pairs still in their original relative order
            cand = [i for i in range(m - 1) if pos0[cur[i]] < pos0[cur[i + 1]]]
            if not cand:
                break
            i = rng.choice(cand)
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
        chain.append(list(cur))
    rng.shuffle(chain)
    return chain


_BASES = {
    "sp-approval": (sp_approval, "approval"),
    "sc-approval": (sc_approval, "approval"),
    "sp-linear": (sp_linear, "linear"),
    "sc-linear": (sc_linear, "linear"),
}


def _random_ballot(rng: random.Random, kind: str, alternatives: Sequence[int]):
    alts = list(alternatives)
    if kind == "approval":
        return sorted(a for a in alts if rng.random() < 0.5)
    rng.shuffle(alts)
    return alts


def generate(model: str, n: int, m: int, seed=None, noise_voters: int = 0,
             noise_alts: int = 0) -> Profile:
    """Structured profile of the given model with optional noise."""
    if model not in _BASES:
        raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if noise_voters and noise_alts:
        raise ValueError("choose voter noise or alternative noise, not both")
    if noise_voters < 0 or noise_voters >= n:
        raise ValueError("voter noise must lie in 0..n-1")
    if noise_alts < 0 or noise_alts >= m:
        raise ValueError("alternative noise must lie in 0..m-1")
    rng = _rng(seed)
    make, kind = _BASES[model]
    base_m = m - noise_alts
    ballots = make(n - noise_voters, base_m, rng)
    for _ in range(noise_voters):
        ballots.insert(rng.randrange(len(ballots) + 1), _random_ballot(rng, kind, range(1, m + 1)))
    if noise_alts:
        extra = list(range(base_m + 1, m + 1))
        for v, ballot in enumerate(ballots):
            if kind == "approval":
                ballots[v] = sorted(list(ballot) + [a for a in extra if rng.random() < 0.5])
            else:
                ranking = list(ballot)
                for a in extra:
                    ranking.insert(rng.randrange(len(ranking) + 1), a)
                ballots[v] = ranking
        # hide the noise ids among the base ids
        perm = list(range(1, m + 1))
        rng.shuffle(perm)
        relabel = dict(zip(range(1, m + 1), perm))
        ballots = [[relabel[a] for a in b] for b in ballots]
        if kind == "approval":
            ballots = [sorted(b) for b in ballots]
    if kind == "approval":
        return Profile.approval(ballots, m)
    return Profile.linear(ballots)
