import random

import pytest
from hypothesis import HealthCheck, settings

from committee_dp import Profile, build_index, detect_sc
from committee_dp.generators import sc_approval
from committee_dp.structure import PartialSolution

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

# acceptance lines collected by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])


def approval(*ballots, m=None):
    m = m or max((a for b in ballots for a in b), default=1)
    return Profile.approval(ballots, m)


def random_sc_index(rng: random.Random, nmax=7, mmax=5):
    n, m = rng.randint(1, nmax), rng.randint(1, mmax)
    prof = Profile.approval(sc_approval(n, m, rng), m)
    return build_index(prof, detect_sc(prof).order), n, m


def random_partial(rng: random.Random, index, m, n, full=False):
    """Random partial solution; most voters take an approved member with room."""
    k = rng.randint(1, min(m, n))
    committee = rng.sample(range(1, m + 1), k)
    lo = 1 if full or rng.random() < 0.5 else rng.randint(1, n)
    hi = n if full or lo == 1 else rng.randint(lo, n)
    cap = -(-n // k)
    load = {a: 0 for a in committee}
    sigma = {}
    for v in range(lo, hi + 1):
        room = [a for a in committee if load[a] < cap]
        liked = [a for a in room if index.approves(v, a)]
        a = rng.choice(liked) if liked and rng.random() < 0.8 else rng.choice(room)
        load[a] += 1
        sigma[v] = a
    return PartialSolution(frozenset(committee), sigma, (lo, hi), k)


@pytest.fixture
def rng():
    return random.Random(20240611)
