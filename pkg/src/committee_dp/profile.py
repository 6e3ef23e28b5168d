"""Preference profiles, misrepresentation, solutions and their validation.

Alternatives are ``1..m`` and voters are ``1..n``. An approval ballot is a
frozenset of alternatives; a linear ballot is a tuple listing alternatives
from most to least preferred.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence


class Kind(str, enum.Enum):
    APPROVAL = "approval"
    LINEAR = "linear"


class Model(str, enum.Enum):
    """Misrepresentation functions: 0/1 for approval, rank for Borda."""

    APPROVAL_BINARY = "approval"
    BORDA = "borda"


class Rule(str, enum.Enum):
    MONROE = "monroe"
    CC = "cc"


class Objective(str, enum.Enum):
    SUM = "sum"
    MAX = "max"


class ProfileError(ValueError):
    """Malformed profile input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Profile:
    kind: Kind
    n: int
    m: int
    ballots: tuple

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ProfileError("profile needs n >= 1 and m >= 1")
        if len(self.ballots) != self.n:
            raise ProfileError(f"expected {self.n} ballots, got {len(self.ballots)}")
        full = set(range(1, self.m + 1))
        for v, ballot in enumerate(self.ballots, start=1):
            if self.kind is Kind.APPROVAL:
                if not set(ballot) <= full:
                    raise ProfileError(f"voter {v} approves an alternative outside 1..{self.m}")
            elif sorted(ballot) != sorted(full) or len(ballot) != self.m:
                raise ProfileError(f"voter {v} ballot is not a permutation of 1..{self.m}")
        # rank lookup tables are cheap and make misrep O(1)
        if self.kind is Kind.LINEAR:
            ranks = []
            for ballot in self.ballots:
                r = [0] * (self.m + 1)
                for pos, a in enumerate(ballot):
                    r[a] = pos
                ranks.append(tuple(r))
            object.__setattr__(self, "_ranks", tuple(ranks))

    @classmethod
    def approval(cls, ballots: Iterable[Iterable[int]], m: int) -> "Profile":
        bs = tuple(frozenset(b) for b in ballots)
        return cls(Kind.APPROVAL, len(bs), m, bs)

    @classmethod
    def linear(cls, ballots: Iterable[Sequence[int]]) -> "Profile":
        bs = tuple(tuple(b) for b in ballots)
        m = len(bs[0]) if bs else 0
        return cls(Kind.LINEAR, len(bs), m, bs)

    @property
    def voters(self) -> range:
        return range(1, self.n + 1)

    @property
    def alternatives(self) -> range:
        return range(1, self.m + 1)

    def ballot(self, v: int):
        return self.ballots[v - 1]

    def approves(self, v: int, a: int) -> bool:
        if self.kind is not Kind.APPROVAL:
            raise TypeError("approves() needs an approval profile")
        return a in self.ballots[v - 1]

    def rank(self, v: int, a: int) -> int:
        """Number of alternatives voter ``v`` strictly prefers to ``a``."""
        if self.kind is not Kind.LINEAR:
            raise TypeError("rank() needs a linear profile")
        return self._ranks[v - 1][a]

    def approvers(self, a: int) -> frozenset:
        return frozenset(v for v in self.voters if a in self.ballots[v - 1])

    def default_model(self) -> Model:
        return Model.APPROVAL_BINARY if self.kind is Kind.APPROVAL else Model.BORDA

    def restrict_voters(self, keep: Sequence[int]) -> "Profile":
        """Sub-profile on ``keep`` (in that order), renumbered ``1..len(keep)``."""
        return Profile(self.kind, len(keep), self.m, tuple(self.ballots[v - 1] for v in keep))

    def restrict_alternatives(self, keep: Sequence[int]) -> "Profile":
        """Sub-profile on the alternatives ``keep``; alternative ``keep[i]`` becomes ``i+1``."""
        new_id = {a: i for i, a in enumerate(keep, start=1)}
        if self.kind is Kind.APPROVAL:
            bs = tuple(frozenset(new_id[a] for a in b if a in new_id) for b in self.ballots)
        else:
            bs = tuple(tuple(new_id[a] for a in b if a in new_id) for b in self.ballots)
        return Profile(self.kind, self.n, len(keep), bs)

    def rename_alternatives(self, mapping: dict) -> "Profile":
        """Apply a bijection ``old id -> new id`` to every ballot."""
        if self.kind is Kind.APPROVAL:
            bs = tuple(frozenset(mapping[a] for a in b) for b in self.ballots)
        else:
            bs = tuple(tuple(mapping[a] for a in b) for b in self.ballots)
        return Profile(self.kind, self.n, self.m, bs)


def misrep(profile: Profile, model: Model, voter: int, alternative: int) -> int:
    if not 1 <= voter <= profile.n:
        raise IndexError(f"voter {voter} out of range 1..{profile.n}")
    if not 1 <= alternative <= profile.m:
        raise IndexError(f"alternative {alternative} out of range 1..{profile.m}")
    if model is Model.APPROVAL_BINARY:
        if profile.kind is Kind.APPROVAL:
            return 0 if alternative in profile.ballots[voter - 1] else 1
        raise ValueError("approval misrepresentation needs an approval profile")
    if profile.kind is not Kind.LINEAR:
        raise ValueError("Borda misrepresentation needs a linear profile")
    return profile.rank(voter, alternative)


def cost_table(profile: Profile, model: Model | None = None) -> list[list[int]]:
    """``table[v][a]`` with a dummy row and column 0 so ids index directly."""
    model = model or profile.default_model()
    table = [[0] * (profile.m + 1)]
    for v in profile.voters:
        table.append([0] + [misrep(profile, model, v, a) for a in profile.alternatives])
    return table


def monroe_bounds(n: int, k: int) -> tuple[int, int, int]:
    """Return ``(floor, ceil, n mod k)`` of the proportional load window."""
    return n // k, -(-n // k), n % k


@dataclass(frozen=True)
class Solution:
    rule: Rule
    objective: Objective
    k: int
    score: int
    committee: tuple
    assignment: tuple  # assignment[v-1] is the member representing voter v
    method_used: str = ""
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "rule": self.rule.value,
            "objective": self.objective.value,
            "k": self.k,
            "score": self.score,
            "committee": list(self.committee),
            "assignment": list(self.assignment),
            "method_used": self.method_used,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str

    def __bool__(self):
        return False


def score_of(profile: Profile, model: Model, objective: Objective, assignment: Sequence[int]) -> int:
    vals = [misrep(profile, model, v, assignment[v - 1]) for v in profile.voters]
    return sum(vals) if objective is Objective.SUM else max(vals)


def validate_solution(profile: Profile, model: Model, k: int, rule: Rule, objective: Objective,
                      solution: Solution) -> int | Violation:
    """Recompute the score from raw ballots; report the first broken invariant."""
    committee = set(solution.committee)
    if len(committee) != k or len(solution.committee) != k:
        return Violation("size", f"committee has {len(committee)} distinct members, expected {k}")
    if not committee <= set(profile.alternatives):
        return Violation("size", "committee contains an unknown alternative")
    if len(solution.assignment) != profile.n:
        return Violation("image", f"assignment covers {len(solution.assignment)} of {profile.n} voters")
    stray = [a for a in solution.assignment if a not in committee]
    if stray:
        return Violation("image", f"voter assigned to non-member {stray[0]}")
    if rule is Rule.MONROE:
        lo, hi, r = monroe_bounds(profile.n, k)
        loads = {a: 0 for a in committee}
        for a in solution.assignment:
            loads[a] += 1
        for a in sorted(committee):
            if loads[a] > hi:
                return Violation("load", f"load {loads[a]} > ceil({profile.n}/{k})={hi} for {a}")
            if loads[a] < lo:
                return Violation("load", f"load {loads[a]} < floor({profile.n}/{k})={lo} for {a}")
        if r and sum(1 for a in committee if loads[a] == hi) != r:
            return Violation("load", f"expected exactly {r} members at load {hi}")
    score = score_of(profile, model, objective, solution.assignment)
    if score != solution.score:
        return Violation("score", f"claimed score {solution.score}, recomputed {score}")
    return score


def reduce_max_to_approval(profile: Profile, bound: int) -> Profile:
    """Voter ``v`` approves ``a`` iff ``rank_v(a) <= bound``."""
    if profile.kind is not Kind.LINEAR:
        raise ValueError("reduction needs a linear profile")
    if not 0 <= bound <= profile.m - 1:
        raise ValueError(f"bound must lie in 0..{profile.m - 1}")
    return Profile.approval((b[: bound + 1] for b in profile.ballots), profile.m)


def solve_max_via_reduction(profile: Profile, k: int, rule: Rule,
                            approval_solver: Callable[[Profile, int], Solution],
                            calls: list | None = None) -> Solution:
    """Binary search the smallest bound whose approval instance has sum score 0.

    ``approval_solver(approval_profile, k)`` must return an optimal sum solution.
    Each probed bound is appended to ``calls`` when given.
    """
    lo, hi = 0, profile.m - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        if calls is not None:
            calls.append(mid)
        sol = approval_solver(reduce_max_to_approval(profile, mid), k)
        if sol.score == 0:
            best, hi = sol, mid - 1
        else:
            lo = mid + 1
    # bound m-1 approves everything, so the search always succeeds
    assert best is not None
    score = score_of(profile, Model.BORDA, Objective.MAX, best.assignment)
    return Solution(rule, Objective.MAX, k, score, best.committee, best.assignment,
                    method_used=best.method_used)


def parse_profile(text: str) -> Profile:
    rows = [(no, line.strip()) for no, line in enumerate(text.splitlines(), start=1)]
    rows = [(no, line) for no, line in rows if not line.startswith("#")]
    if len(rows) < 2:
        raise ProfileError("missing header", rows[-1][0] if rows else 1)
    no, kind_s = rows[0]
    try:
        kind = Kind(kind_s.lower())
    except ValueError:
        raise ProfileError(f"unknown profile kind {kind_s!r}", no) from None
    no, dims = rows[1]
    parts = dims.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ProfileError(f"expected '<n> <m>', got {dims!r}", no)
    n, m = int(parts[0]), int(parts[1])
    if n < 1 or m < 1:
        raise ProfileError("n and m must be positive", no)
    body = rows[2:]
    # approval ballots may be blank, so only surplus trailing blanks are dropped
    if len(body) > n and all(line == "" for _, line in body[n:]):
        body = body[:n]
    if len(body) != n:
        raise ProfileError(f"expected {n} ballot lines, found {len(body)}", body[-1][0] if body else no)
    ballots = []
    for no, line in body:
        try:
            ids = [int(tok) for tok in line.split()]
        except ValueError:
            raise ProfileError(f"non-integer token in {line!r}", no) from None
        for a in ids:
            if not 1 <= a <= m:
                raise ProfileError(f"alternative id {a} outside 1..{m}", no)
        if len(set(ids)) != len(ids):
            raise ProfileError("repeated alternative id", no)
        if kind is Kind.LINEAR and len(ids) != m:
            raise ProfileError(f"linear ballot must list all {m} alternatives", no)
        ballots.append(ids)
    if kind is Kind.APPROVAL:
        return Profile.approval(ballots, m)
    return Profile(Kind.LINEAR, n, m, tuple(tuple(b) for b in ballots))


def load_profile(path: str | Path) -> Profile:
    return parse_profile(Path(path).read_text(encoding="utf-8"))


def dump_profile(profile: Profile) -> str:
    lines = [profile.kind.value, f"{profile.n} {profile.m}"]
    for b in profile.ballots:
        ids = sorted(b) if profile.kind is Kind.APPROVAL else b
        lines.append(" ".join(map(str, ids)))
    return "\n".join(lines) + "\n"


def format_solution(solution: Solution) -> str:
    d = solution.to_dict()
    width = max(map(len, d))
    return "\n".join(f"{key.ljust(width)} : {_fmt(val)}" for key, val in d.items()) + "\n"


def _fmt(val) -> str:
    if isinstance(val, list):
        return "[" + ", ".join(map(str, val)) + "]"
    return str(val)

