"""Scores frozen from the brute-force oracle; structured solvers must reproduce them."""

import pytest

from committee_dp import Objective, Rule, oracle
from committee_dp.cli import run_method
from committee_dp.generators import generate

# model, n, m, k, seed, rule, objective, noise_voters, noise_alts, score
FROZEN = [
    ("sc-approval", 8, 6, 3, 11, "monroe", "sum", 0, 0, 1),
    ("sc-approval", 7, 5, 2, 12, "monroe", "sum", 0, 0, 2),
    ("sc-approval", 8, 6, 2, 13, "monroe", "max", 0, 0, 1),
    ("sp-approval", 8, 6, 3, 14, "monroe", "sum", 0, 0, 0),
    ("sp-approval", 8, 5, 2, 15, "cc", "sum", 0, 0, 1),
    ("sp-linear", 7, 5, 2, 16, "cc", "sum", 0, 0, 2),
    ("sc-linear", 7, 5, 3, 17, "cc", "sum", 0, 0, 0),
    ("sp-linear", 6, 5, 2, 18, "cc", "max", 0, 0, 1),
    ("sp-linear", 6, 5, 2, 19, "monroe", "max", 0, 0, 2),
    ("sc-linear", 6, 4, 2, 20, "cc", "max", 0, 0, 1),
    ("sc-approval", 8, 6, 3, 21, "monroe", "sum", 1, 0, 1),
    ("sc-approval", 8, 6, 2, 22, "monroe", "sum", 2, 0, 1),
    ("sp-approval", 8, 6, 3, 23, "monroe", "sum", 2, 0, 0),
    ("sc-approval", 8, 6, 3, 24, "monroe", "sum", 0, 2, 0),
    ("sp-approval", 8, 6, 2, 25, "monroe", "sum", 0, 1, 0),
    ("sp-linear", 7, 5, 2, 26, "cc", "sum", 1, 0, 3),
    ("sc-linear", 7, 5, 2, 27, "cc", "sum", 2, 0, 0),
    ("sp-approval", 8, 6, 2, 28, "cc", "sum", 2, 0, 0),
    ("sc-approval", 8, 6, 3, 29, "cc", "sum", 1, 0, 1),
]


@pytest.mark.parametrize("case", FROZEN, ids=lambda c: f"{c[0]}-{c[5]}-{c[6]}-s{c[4]}")
def test_frozen_score(case):
    model, n, m, k, seed, rule, objective, nv, na, score = case
    p = generate(model, n, m, seed, noise_voters=nv, noise_alts=na)
    sol = run_method(p, Rule(rule), Objective(objective), k, "auto")
    assert sol.method_used != "brute"
    assert sol.score == score
    assert oracle(p, Rule(rule), k, Objective(objective)).score == score
