from fractions import Fraction

import pytest

import prodset


def test_free_group_arithmetic():
    assert prodset.multiply("kind=free,rank=2", "ab", "Ba") == "aa"
    assert prodset.inverse("kind=free,rank=2", "ab") == "BA"
    assert len(prodset.ball("kind=free,rank=2", 3)) == 53
    assert prodset.ball("kind=free,rank=2", 1) == ["e", "a", "A", "b", "B"]


def test_descriptor_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        prodset.multiply("kind=torus", "a", "b")
    with pytest.raises(prodset.ResourceCapExceeded):
        prodset.ball("kind=free,rank=2", 30)


def test_periodic_sets():
    a = prodset.PeriodicIntSet(2, [0])
    b = prodset.PeriodicIntSet(3, [0])
    s = a + b
    assert s == prodset.PeriodicIntSet(1, [0])
    assert a.density == Fraction(1, 2)
    assert 4 in a and 3 not in a
    assert prodset.syndeticity_index(prodset.PeriodicIntSet(3, [0])) == (3, [0, 1, 2])
    assert prodset.syndeticity_index(prodset.PeriodicIntSet(4, [])) is None


def test_theorem2_audit():
    audit = prodset.theorem2_audit("kind=cyclic,moduli=12", [0, 2, 4, 6, 8, 10], [0, 1, 2, 3])
    assert audit["bound"] == 6
    assert audit["passed"] is True
    assert len(audit["F"]) <= 6
    cover = prodset.exact_min_cover("kind=cyclic,moduli=6", [5, 0, 1, 2])
    assert len(cover) == 2
    assert {(f + u) % 6 for f in cover for u in (5, 0, 1, 2)} == set(range(6))


def test_cylinder_harmonic():
    lo, hi = prodset.cylinder_harmonic("a", "a")
    assert lo <= 0.75 <= hi
    assert hi - lo <= 1e-6


def test_circle_certificate_round_trip():
    cert = prodset.refute_syndeticity(1)
    assert cert is not None
    assert prodset.verify_certificate(cert)
    cert["g"] = "e"
    assert not prodset.verify_certificate(cert)


def test_run_experiment():
    record = prodset.run_experiment("experiment = selftest\n", jobs=2)
    assert record["verdict"] == "pass"
    assert record["tool_version"] == prodset.version()
    with pytest.raises(ValueError):
        prodset.run_experiment("experiment = nope\n")
