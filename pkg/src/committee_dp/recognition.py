"""Single-peaked / single-crossing checks, detection, and deletion certificates.

Detection reduces to the consecutive-ones property: find a linear order of a
ground set in which every member of a set family is contiguous.

* approval SP: ballots must be intervals of the alternative axis;
* linear SP: every top-``i`` prefix of every ballot must be an interval;
* approval SC: every approver set must be an interval of the voter order;
* linear SC: for each ordered pair ``(x, y)`` the voters preferring ``x`` must
  form an interval, and so must its complement, i.e. a prefix or a suffix.

The consecutive-ones solver groups sets into overlap components (two sets
overlap when they meet and neither contains the other). Inside a component
the arrangement is forced up to reversal and is built by partition
refinement. Component unions form a laminar family, and each nested
component fits inside a single class of its parent, so the blocks nest.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Sequence

from .profile import Kind, Profile, ProfileError


class Structure(str, enum.Enum):
    SP = "sp"
    SC = "sc"


class DeletionKind(str, enum.Enum):
    VOTERS = "voters"
    ALTERNATIVES = "alternatives"


@dataclass(frozen=True)
class StructureOrder:
    structure: Structure
    order: tuple


@dataclass(frozen=True)
class DeletionCertificate:
    """Deleting ``deleted`` leaves a profile structured along ``witness``.

    ``witness`` uses original ids: an axis over the surviving alternatives for
    SP, or an order of the surviving voters for SC.
    """

    kind: DeletionKind
    structure: Structure
    deleted: tuple
    witness: tuple

    @property
    def t(self) -> int:
        return len(self.deleted)


# ---------------------------------------------------------------- consecutive ones

def consecutive_ones_order(universe: Sequence[Hashable], family: Iterable[Iterable[Hashable]]):
    """Order ``universe`` so that every set of ``family`` is contiguous, or ``None``."""
    universe = list(universe)
    sets = {frozenset(s) for s in family}
    full = frozenset(universe)
    sets = [s for s in sets if 1 < len(s) < len(full)]
    sets.sort(key=lambda s: (-len(s), sorted(map(repr, s))))

    components = _overlap_components(sets)
    built = []
    for comp in components:
        classes = _refine(comp)
        if classes is None:
            return None
        union = frozenset().union(*classes)
        built.append((union, classes))

    # laminar nesting: parent is the smallest component with a class holding the union
    built.sort(key=lambda uc: (-len(uc[0]), len(uc[1])))
    children: dict = {}
    top = []
    for idx, (union, _classes) in enumerate(built):
        parent = None
        for jdx in range(idx - 1, -1, -1):
            for cdx, cls in enumerate(built[jdx][1]):
                if union <= cls:
                    parent = (jdx, cdx)
                    break
            if parent:
                break
        if parent is None:
            top.append(idx)
        else:
            children.setdefault(parent, []).append(idx)

    def block(idx):
        out = []
        for cdx, cls in enumerate(built[idx][1]):
            used = set()
            for ch in children.get((idx, cdx), []):
                out.extend(block(ch))
                used |= built[ch][0]
            out.extend(x for x in universe if x in cls and x not in used)
        return out

    order = []
    covered = set()
    for idx in top:
        order.extend(block(idx))
        covered |= built[idx][0]
    order.extend(x for x in universe if x not in covered)
    pos = {x: p for p, x in enumerate(order)}
    for s in sets:
        ps = sorted(pos[x] for x in s)
        if ps[-1] - ps[0] + 1 != len(ps):
            return None
    return order


def _overlaps(x: frozenset, y: frozenset) -> bool:
    return bool(x & y) and not x <= y and not y <= x


def _overlap_components(sets):
    seen = [False] * len(sets)
    comps = []
    for start in range(len(sets)):
        if seen[start]:
            continue
        seen[start] = True
        comp = [sets[start]]
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in range(len(sets)):
                if not seen[nxt] and _overlaps(sets[cur], sets[nxt]):
                    seen[nxt] = True
                    comp.append(sets[nxt])
                    queue.append(nxt)
        comps.append(comp)
    return comps


def _refine(comp):
    """Forced ordered partition of a connected overlap component (BFS order)."""
    classes = [comp[0]]
    for y in comp[1:]:
        union = frozenset().union(*classes)
        hit = [i for i, c in enumerate(classes) if c & y]
        s, e = hit[0], hit[-1]
        if hit != list(range(s, e + 1)):
            return None
        if any(not classes[i] <= y for i in range(s + 1, e)):
            return None
        new = y - union
        last = len(classes) - 1
        if new:
            right_ok = e == last and all(classes[i] <= y for i in range(s + 1, last + 1))
            left_ok = s == 0 and all(classes[i] <= y for i in range(0, e))
            if right_ok:
                c = classes[s]
                classes = classes[:s] + [c - y, c & y] + classes[s + 1:] + [new]
            elif left_ok:
                c = classes[e]
                classes = [new] + classes[:e] + [c & y, c - y] + classes[e + 1:]
            else:
                return None
        else:
            if s == e:
                return None
            cs, ce = classes[s], classes[e]
            classes = classes[:s] + [cs - y, cs & y] + classes[s + 1:e] + [ce & y, ce - y] + classes[e + 1:]
        classes = [c for c in classes if c]
    return classes


# ---------------------------------------------------------------- checks

def _is_interval(members, pos) -> bool:
    if not members:
        return True
    ps = [pos[x] for x in members]
    return max(ps) - min(ps) + 1 == len(ps)


def check_sp(profile: Profile, order: Sequence[int]) -> bool:
    """Single-peakedness along the alternative axis ``order``."""
    if sorted(order) != list(profile.alternatives):
        return False
    pos = {a: p for p, a in enumerate(order)}
    if profile.kind is Kind.APPROVAL:
        return all(_is_interval(b, pos) for b in profile.ballots)
    # on every axis triple the middle alternative is never the worst of the three
    for v in profile.voters:
        rk = [profile.rank(v, a) for a in order]
        for x, y, z in itertools.combinations(range(len(order)), 3):
            if rk[y] > rk[x] and rk[y] > rk[z]:
                return False
    return True


def check_sc(profile: Profile, order: Sequence[int]) -> bool:
    """Single-crossingness along the voter order ``order``."""
    if sorted(order) != list(profile.voters):
        return False
    if profile.kind is Kind.APPROVAL:
        pos = {v: p for p, v in enumerate(order)}
        return all(_is_interval(profile.approvers(a), pos) for a in profile.alternatives)
    for x, y in itertools.combinations(profile.alternatives, 2):
        signs = [profile.rank(v, x) < profile.rank(v, y) for v in order]
        switches = sum(1 for p, q in zip(signs, signs[1:]) if p != q)
        if switches > 1:
            return False
    return True


def check(profile: Profile, structure: Structure, order: Sequence[int]) -> bool:
    return check_sp(profile, order) if structure is Structure.SP else check_sc(profile, order)


# ---------------------------------------------------------------- detection

def _sp_family(profile: Profile):
    if profile.kind is Kind.APPROVAL:
        return list(profile.ballots)
    return [b[:i] for b in profile.ballots for i in range(2, profile.m)]


def _sc_family(profile: Profile):
    if profile.kind is Kind.APPROVAL:
        return [profile.approvers(a) for a in profile.alternatives]
    fam = []
    for x, y in itertools.permutations(profile.alternatives, 2):
        fam.append(frozenset(v for v in profile.voters if profile.rank(v, x) < profile.rank(v, y)))
    return fam


def detect_sp(profile: Profile) -> StructureOrder | None:
    order = consecutive_ones_order(list(profile.alternatives), _sp_family(profile))
    if order is None or not check_sp(profile, order):
        return None
    return StructureOrder(Structure.SP, tuple(order))


def detect_sc(profile: Profile) -> StructureOrder | None:
    order = consecutive_ones_order(list(profile.voters), _sc_family(profile))
    if order is None or not check_sc(profile, order):
        return None
    return StructureOrder(Structure.SC, tuple(order))


def detect(profile: Profile, structure: Structure) -> StructureOrder | None:
    return detect_sp(profile) if structure is Structure.SP else detect_sc(profile)


def brute_force_detect(profile: Profile, structure: Structure) -> StructureOrder | None:
    """Try every permutation; the reference for ``detect``."""
    ground = profile.alternatives if structure is Structure.SP else profile.voters
    for perm in itertools.permutations(ground):
        if check(profile, structure, perm):
            return StructureOrder(structure, perm)
    return None


# ---------------------------------------------------------------- deletion sets

def reduced_profile(profile: Profile, cert: DeletionCertificate):
    """Profile left after deletion, renumbered along the witness when useful.

    Returns ``(reduced, ids)`` where ``ids[i-1]`` is the original id of the new
    voter (voter deletion) or alternative (alternative deletion) ``i``. For SC
    voter deletion the surviving voters are renumbered in witness order, so the
    reduced profile is single-crossing along ``1..n'``. For alternative
    deletion under SP, survivors are renumbered along the witness axis.
    """
    if cert.kind is DeletionKind.VOTERS:
        if cert.structure is Structure.SC:
            keep = list(cert.witness)
        else:
            gone = set(cert.deleted)
            keep = [v for v in profile.voters if v not in gone]
        return profile.restrict_voters(keep), tuple(keep)
    if cert.structure is Structure.SP:
        keep = list(cert.witness)
    else:
        gone = set(cert.deleted)
        keep = [a for a in profile.alternatives if a not in gone]
    return profile.restrict_alternatives(keep), tuple(keep)


def validate_certificate(profile: Profile, cert: DeletionCertificate) -> bool:
    ground = profile.voters if cert.kind is DeletionKind.VOTERS else profile.alternatives
    gone = set(cert.deleted)
    if not gone <= set(ground) or len(gone) != len(cert.deleted):
        return False
    if cert.kind is DeletionKind.VOTERS:
        keep = [v for v in profile.voters if v not in gone]
        if not keep:
            return False
        sub = profile.restrict_voters(keep)
        renum = {v: i for i, v in enumerate(keep, start=1)}
        if cert.structure is Structure.SP:
            return check_sp(sub, cert.witness)
        if sorted(cert.witness) != keep:
            return False
        return check_sc(sub, [renum[v] for v in cert.witness])
    keep = [a for a in profile.alternatives if a not in gone]
    if not keep:
        return False
    sub = profile.restrict_alternatives(keep)
    renum = {a: i for i, a in enumerate(keep, start=1)}
    if cert.structure is Structure.SP:
        if sorted(cert.witness) != keep:
            return False
        return check_sp(sub, [renum[a] for a in cert.witness])
    return check_sc(sub, cert.witness)


def certificate_for(profile: Profile, kind: DeletionKind, structure: Structure,
                    deleted: Iterable[int]) -> DeletionCertificate | None:
    """Build a certificate for a given deletion set by detecting on the rest."""
    deleted = tuple(sorted(deleted))
    gone = set(deleted)
    if kind is DeletionKind.VOTERS:
        keep = [v for v in profile.voters if v not in gone]
        if not keep:
            return None
        found = detect(profile.restrict_voters(keep), structure)
        if found is None:
            return None
        witness = found.order if structure is Structure.SP else tuple(keep[i - 1] for i in found.order)
    else:
        keep = [a for a in profile.alternatives if a not in gone]
        if not keep:
            return None
        found = detect(profile.restrict_alternatives(keep), structure)
        if found is None:
            return None
        witness = tuple(keep[i - 1] for i in found.order) if structure is Structure.SP else found.order
    return DeletionCertificate(kind, structure, deleted, tuple(witness))


def find_deletion_set(profile: Profile, kind: DeletionKind, structure: Structure,
                      max_t: int) -> DeletionCertificate | None:
    """Smallest deletion set of size at most ``max_t`` by exhaustive search."""
    if max_t < 0:
        raise ValueError("max_t must be non-negative")
    ground = list(profile.voters if kind is DeletionKind.VOTERS else profile.alternatives)
    for t in range(0, min(max_t, len(ground) - 1) + 1):
        for deleted in itertools.combinations(ground, t):
            cert = certificate_for(profile, kind, structure, deleted)
            if cert is not None:
                return cert
    return None


def parse_certificate(text: str, profile: Profile, structure: Structure) -> DeletionCertificate:
    """Read a ``voters|alternatives`` + ids side file and attach a witness."""
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not rows:
        raise ProfileError("empty certificate file", 1)
    try:
        kind = DeletionKind(rows[0].lower())
    except ValueError:
        raise ProfileError(f"unknown deletion kind {rows[0]!r}", 1) from None
    try:
        ids = [int(tok) for tok in rows[1].split()] if len(rows) > 1 else []
    except ValueError:
        raise ProfileError("non-integer id", 2) from None
    limit = profile.n if kind is DeletionKind.VOTERS else profile.m
    for x in ids:
        if not 1 <= x <= limit:
            raise ProfileError(f"id {x} outside 1..{limit}", 2)
    cert = certificate_for(profile, kind, structure, ids)
    if cert is None:
        raise ProfileError("deleting the listed ids does not leave a structured profile", 2)
    return cert


def load_certificate(path: str | Path, profile: Profile, structure: Structure) -> DeletionCertificate:
    return parse_certificate(Path(path).read_text(encoding="utf-8"), profile, structure)
