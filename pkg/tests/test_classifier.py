import json

import pytest

from equibrane.classifier import (
    classify,
    classify_all,
    cyclic_certificate,
    klein_candidates,
    klein_classification,
    prime_obstruction_survey,
    z4_exclusion,
    z4_genus,
)
from equibrane.surfaces import cyclic_cover_genus


def test_z3_rejection_certificate():
    cert = cyclic_certificate(3, 2, 0)
    assert cert.candidate.g == 4
    assert not cert.admitted
    # both sides evaluated: 6p(gamma-1) = 18 against 12(gamma-1) = 12
    assert (cert.lhs, cert.rhs) == (18, 12)


def test_lhs_is_full_dimension():
    # the left side is always dim_flat(g) = 6g - 6
    for p in (2, 3, 5, 7):
        for gamma in range(4):
            for n in range(12):
                cert = cyclic_certificate(p, gamma, n)
                if cert is not None:
                    assert cert.lhs == 6 * cert.candidate.g - 6
                    assert cert.candidate.g == cyclic_cover_genus(p, gamma, n)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19])
def test_odd_primes_never_halve(p):
    assert prime_obstruction_survey(p, 10, 40) == []


def test_survey_rejects_even_prime():
    with pytest.raises(ValueError):
        prime_obstruction_survey(2, 3, 3)


def test_z4_unique_survivor():
    certs = z4_exclusion(10, 20, 20)
    assert len(certs) == 1
    c = certs[0].candidate
    assert (c.gamma, c.n1, c.n2, c.g) == (0, 2, 1, 1)
    assert "g=1" in certs[0].reason and not certs[0].admitted


def test_z4_genus_formula():
    assert z4_genus(0, 2, 1) == 1
    assert z4_genus(0, 4, 0) == 3


def test_classification_to_seven():
    certs = classify(7)
    assert sorted(c.candidate.g for c in certs if c.case == "I") == [3, 5, 7]
    (k,) = [c for c in certs if c.case == "II"]
    assert k.candidate.g == 3 and k.candidate.gamma == 0
    assert {k.candidate.n_psi, k.candidate.n_rho} == {8, 4}
    assert "diag(1,-1)" in k.monodromy_note


def test_case_one_is_free_involution():
    for c in classify(9):
        if c.case == "I":
            assert c.candidate.n == 0 and c.candidate.p == 2
            assert c.candidate.gamma == (c.candidate.g + 1) // 2


def test_klein_unique_with_evidence():
    best = klein_classification(12)
    assert best.candidate.g == 3
    assert best.evidence and all(not c.admitted for c in best.evidence)
    assert sum(c.admitted for c in klein_candidates(12)) == 1


def test_genus_two_klein_rejected_by_divisibility():
    (g2,) = [c for c in klein_candidates(4) if c.candidate.g == 2]
    assert not g2.admitted and "divisible by 4" in g2.reason


def test_every_rejection_has_reason():
    for c in classify_all(6):
        assert c.reason
        if not c.admitted:
            assert c.lhs != c.rhs or "fails" in c.reason or "outside" in c.reason


def test_parallel_matches_serial():
    serial = [c.to_json() for c in classify_all(8, jobs=1)]
    parallel = [c.to_json() for c in classify_all(8, jobs=4)]
    assert json.dumps(serial) == json.dumps(parallel)


def test_bad_bound():
    with pytest.raises(ValueError):
        classify_all(1)
