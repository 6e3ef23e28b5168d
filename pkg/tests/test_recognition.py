import random

import pytest
from hypothesis import given, strategies as st

from committee_dp import (DeletionKind, Profile, ProfileError, Structure, brute_force_detect,
                          check_sc, check_sp, detect, detect_sc, detect_sp, find_deletion_set,
                          parse_certificate, validate_certificate)
from committee_dp.generators import MODELS, generate


def test_check_sp_examples():
    assert check_sp(Profile.approval([{1, 2}, {2, 3}, {3}], 3), [1, 2, 3])
    assert not check_sp(Profile.approval([{1, 3}], 3), [1, 2, 3])
    assert check_sp(Profile.linear([(1, 2, 3), (3, 2, 1), (2, 1, 3)]), [1, 2, 3])


def test_check_sc_examples():
    assert check_sc(Profile.approval([{1}, {1, 2}, {1, 2}, {2}], 2), [1, 2, 3, 4])
    assert not check_sc(Profile.approval([{1}, set(), {1}], 1), [1, 2, 3])
    assert not check_sc(Profile.linear([(1, 2), (2, 1), (1, 2)]), [1, 2, 3])


def test_detect_examples():
    p = Profile.approval([{1, 2}, {2, 3}, {3}], 3)
    assert check_sp(p, detect_sp(p).order)
    assert detect_sp(Profile.approval([{1, 2}, {2, 3}, {1, 3}], 3)) is None
    assert detect_sp(Profile.approval([{2}], 3)) is not None
    assert detect_sc(Profile.approval([{1, 2}, {2, 3}, {1, 3}], 3)) is None
    # A(1) = {1, 3}, A(2) = {2}: voter 2 has to move to an end
    q = Profile.approval([{1}, {2}, {1}], 2)
    assert check_sc(q, detect_sc(q).order)


def test_find_deletion_set_examples():
    sc = Profile.approval([{1}, {1, 2}, {2, 3}, {3}], 3)
    cert = find_deletion_set(sc, DeletionKind.VOTERS, Structure.SC, 2)
    assert cert.deleted == ()
    spoiled = Profile.approval([{1, 2}, {2}, {2, 3}, {1, 3}], 3)
    assert detect_sp(spoiled) is None
    cert = find_deletion_set(spoiled, DeletionKind.VOTERS, Structure.SP, 1)
    assert cert.t == 1 and validate_certificate(spoiled, cert)
    assert find_deletion_set(spoiled, DeletionKind.VOTERS, Structure.SP, 0) is None


def test_certificate_file():
    p = Profile.approval([{1, 2}, {2}, {2, 3}, {1, 3}], 3)
    cert = parse_certificate("voters\n4\n", p, Structure.SP)
    assert cert.deleted == (4,)
    with pytest.raises(ProfileError):
        parse_certificate("voters\n9\n", p, Structure.SP)
    with pytest.raises(ProfileError):
        parse_certificate("voters\n\n", p, Structure.SP)


@given(st.sampled_from(MODELS), st.integers(1, 7), st.integers(1, 6), st.integers(0, 10**6))
def test_structured_generators_are_detected(model, n, m, seed):
    p = generate(model, n, m, seed)
    structure = Structure.SP if model.startswith("sp") else Structure.SC
    found = detect(p, structure)
    assert found is not None and (check_sp if structure is Structure.SP else check_sc)(p, found.order)


@given(st.sampled_from(MODELS), st.integers(2, 6), st.integers(2, 5), st.integers(0, 10**6),
       st.booleans())
def test_detect_agrees_with_brute_force(model, n, m, seed, noisy):
    nv = 1 if noisy and n > 1 else 0
    p = generate(model, n, m, seed, noise_voters=nv)
    for structure in Structure:
        fast, slow = detect(p, structure), brute_force_detect(p, structure)
        assert (fast is None) == (slow is None)


@given(st.sampled_from(MODELS), st.integers(1, 6), st.integers(1, 5), st.integers(0, 10**6))
def test_reversed_witness_is_a_witness(model, n, m, seed):
    p = generate(model, n, m, seed)
    for structure, chk in ((Structure.SP, check_sp), (Structure.SC, check_sc)):
        found = detect(p, structure)
        if found is not None:
            assert chk(p, found.order[::-1])


@given(st.sampled_from(MODELS), st.integers(3, 7), st.integers(2, 5), st.integers(0, 10**6),
       st.integers(1, 2))
def test_noise_voters_fixed_by_search(model, n, m, seed, t):
    p = generate(model, n, m, seed, noise_voters=t)
    structure = Structure.SP if model.startswith("sp") else Structure.SC
    cert = find_deletion_set(p, DeletionKind.VOTERS, structure, t)
    assert cert is not None and cert.t <= t and validate_certificate(p, cert)
