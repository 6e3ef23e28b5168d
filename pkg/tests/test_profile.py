import pytest
from hypothesis import given, strategies as st

from committee_dp import (Kind, Model, Objective, Profile, ProfileError, Rule, Solution, Violation,
                          dump_profile, misrep, oracle, parse_profile, reduce_max_to_approval,
                          solve_max_via_reduction, validate_solution)
from committee_dp.generators import generate


def test_parse_approval():
    p = parse_profile("approval\n3 4\n1 2\n2 3\n3 4\n")
    assert (p.kind, p.n, p.m) == (Kind.APPROVAL, 3, 4)
    assert p.approvers(2) == frozenset({1, 2})


def test_parse_linear_rank():
    p = parse_profile("linear\n2 3\n1 2 3\n3 2 1\n")
    assert p.rank(1, 3) == 2


def test_parse_out_of_range_reports_line():
    with pytest.raises(ProfileError) as err:
        parse_profile("approval\n2 3\n1 5\n2\n")
    assert err.value.line == 3


@pytest.mark.parametrize("text", ["", "approval\n", "ranked\n1 1\n1\n", "linear\n1 3\n1 2\n",
                                  "approval\n2 2\n1\n", "approval\n1 2\n1 1\n", "approval\nx 2\n1\n"])
def test_parse_rejects(text):
    with pytest.raises(ProfileError):
        parse_profile(text)


def test_empty_approval_ballot_and_comments():
    p = parse_profile("# hi\napproval\n2 2\n\n1 2\n")
    assert p.ballots[0] == frozenset()
    assert misrep(p, Model.APPROVAL_BINARY, 1, 1) == 1


def test_misrep_examples():
    p = Profile.approval([{2, 3}], 3)
    assert misrep(p, Model.APPROVAL_BINARY, 1, 2) == 0
    assert misrep(p, Model.APPROVAL_BINARY, 1, 1) == 1
    q = Profile.linear([(3, 1, 2, 4)])
    assert misrep(q, Model.BORDA, 1, 2) == 2


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_borda_ranks_are_a_permutation(n, m, seed):
    p = generate("sp-linear", n, m, seed)
    for v in p.voters:
        assert sorted(misrep(p, Model.BORDA, v, a) for a in p.alternatives) == list(range(m))


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_dump_parse_round_trip(n, m, seed):
    for model in ("sc-approval", "sc-linear"):
        p = generate(model, n, m, seed)
        assert parse_profile(dump_profile(p)) == p


def _monroe(profile, k, committee, assignment, score):
    return Solution(Rule.MONROE, Objective.SUM, k, score, tuple(committee), tuple(assignment))


def test_validate_balanced():
    p = Profile.approval([{1}, {1}, {2}, {2}], 2)
    assert validate_solution(p, Model.APPROVAL_BINARY, 2, Rule.MONROE, Objective.SUM,
                             _monroe(p, 2, (1, 2), (1, 1, 2, 2), 0)) == 0


def test_validate_load_violation():
    p = Profile.approval([{1}] * 5, 2)
    out = validate_solution(p, Model.APPROVAL_BINARY, 2, Rule.MONROE, Objective.SUM,
                            _monroe(p, 2, (1, 2), (1, 1, 1, 1, 2), 1))
    assert isinstance(out, Violation) and out.clause == "load"
    assert "4 > ceil(5/2)=3" in out.message


def test_validate_ceil_member():
    p = Profile.approval([{1}] * 5, 2)
    assert validate_solution(p, Model.APPROVAL_BINARY, 2, Rule.MONROE, Objective.SUM,
                             _monroe(p, 2, (1, 2), (1, 1, 1, 2, 2), 2)) == 2


def test_validate_score_and_size():
    p = Profile.approval([{1}, {2}], 2)
    bad = validate_solution(p, Model.APPROVAL_BINARY, 2, Rule.MONROE, Objective.SUM,
                            _monroe(p, 2, (1, 2), (1, 2), 1))
    assert bad.clause == "score"
    bad = validate_solution(p, Model.APPROVAL_BINARY, 1, Rule.CC, Objective.SUM,
                            Solution(Rule.CC, Objective.SUM, 1, 0, (1, 2), (1, 2)))
    assert bad.clause == "size"


def test_reduction_thresholds():
    p = Profile.linear([(3, 1, 2)])
    assert reduce_max_to_approval(p, 0).ballots[0] == frozenset({3})
    assert reduce_max_to_approval(p, 1).ballots[0] == frozenset({3, 1})
    assert reduce_max_to_approval(p, 2).ballots[0] == frozenset({1, 2, 3})
    with pytest.raises(ValueError):
        reduce_max_to_approval(Profile.approval([{1}], 1), 0)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_reduction_is_monotone_in_bound(n, m, seed):
    p = generate("sc-linear", n, m, seed)
    prev = None
    for beta in range(m):
        cur = reduce_max_to_approval(p, beta).ballots
        if prev is not None:
            assert all(a <= b for a, b in zip(prev, cur))
        prev = cur


@given(st.integers(1, 6), st.integers(1, 5), st.integers(0, 10**6), st.data())
def test_max_via_reduction_with_oracle_solver(n, m, seed, data):
    p = generate("sc-linear", n, m, seed)
    k = data.draw(st.integers(1, m))
    for rule in Rule:
        sol = solve_max_via_reduction(p, k, rule, lambda q, kk: oracle(q, rule, kk, Objective.SUM))
        assert sol.score == oracle(p, rule, k, Objective.MAX).score
