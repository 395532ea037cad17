import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CATALAN, naive_contains
from permgrid.bijections import (
    BIJECTIONS,
    BijectionError,
    BijectionReport,
    lam,
    lam_inverse,
    lambda_inverse_path,
    lambda_path,
    phi,
    phi_decorated,
    phi_inverse,
    psi,
    theta,
    theta_inverse,
    verify_bijection,
)
from permgrid.dyck import (
    DecoratedDyckPath,
    DyckPath,
    all_paths,
    articulation_231,
    articulation_321,
    convention,
    excursions,
    gridded_to_decorated,
    perm231_to_dyck,
    perm321_to_dyck,
    staircase,
    tent,
)
from permgrid.juxtaposition import canonical_gridding, enumerate_members, juxt
from permgrid.perm import Av, ExhaustionBoundError, Permutation, enumerate_class, standardize

LAMBDA_SOURCE = Permutation("1,5,2,4,3,6,14,8,7,9,11,10,13,12")
LAMBDA_TARGET = Permutation("1,4,2,5,3,6,8,12,7,9,13,10,11,14")
LONG_EXAMPLE = Permutation("1,11,2,10,3,12,27,17,13,18,24,19,26,25,23,22,21,20,16,15,14,9,8,7,6,5,4")


# --- lambda ------------------------------------------------------------------

def test_lambda_worked_example():
    assert lam(LAMBDA_SOURCE) == LAMBDA_TARGET
    assert lam_inverse(LAMBDA_TARGET) == LAMBDA_SOURCE
    a = articulation_231(perm231_to_dyck(LAMBDA_SOURCE))
    b = articulation_321(perm321_to_dyck(LAMBDA_TARGET))
    assert a.grid == b.grid == (12, 10)


def test_lambda_degenerate_case():
    # the decreasing 231-avoider has no articulation point; neither has the
    # identity among 321-avoiders, and these two correspond
    for n in range(7):
        assert lambda_path(tent(n)) == staircase(n)
        assert lam(Permutation(range(n, 0, -1))) == Permutation(range(1, n + 1))


@pytest.mark.parametrize("n", range(10))
def test_lambda_bijective(n):
    images = [lam(p) for p in enumerate_class(Av("231"), n)]
    assert len(set(images)) == CATALAN[n]
    assert all(not naive_contains((3, 2, 1), q) for q in images)


@pytest.mark.parametrize("m", range(10))
def test_lambda_paths_fix_articulation(m):
    for p in all_paths(m):
        q = lambda_path(p)
        assert lambda_inverse_path(q) == p
        a, b = articulation_231(p), articulation_321(q)
        assert (a is None) == (b is None)
        if a is not None:
            assert a.grid == b.grid and a.index == b.index
            # everything below the articulation point is shared
            assert p.steps[a.index:] == q.steps[b.index:]


def test_lambda_rejects_non_avoider():
    with pytest.raises(ValueError):
        lam(Permutation("231"))


# --- theta / psi -------------------------------------------------------------

def test_theta_worked_example():
    g = theta(LONG_EXAMPLE)
    assert g.split == 14
    assert tuple(sorted(g.lhs)) == tuple(sorted(canonical_gridding(juxt("231|12"), LONG_EXAMPLE).lhs))
    assert standardize(g.lhs) == LAMBDA_TARGET
    assert g.rhs == LONG_EXAMPLE[14:]
    assert theta_inverse(g.perm).perm == LONG_EXAMPLE


def test_theta_zero_decoration_is_lambda():
    for p in enumerate_class(Av("231"), 6):
        assert theta(p).perm == lam(p)
        assert psi(p).perm == lam(p)


def test_theta_preserves_h_and_split():
    for p in enumerate_members(juxt("231|12"), 6):
        src = canonical_gridding(juxt("231|12"), p)
        dst = theta(p)
        assert dst.split == src.split
        assert gridded_to_decorated(dst, "321|12").h == gridded_to_decorated(src, "231|12").h


def test_bijections_reject_non_members():
    with pytest.raises(BijectionError):
        theta(Permutation("2413"))


# --- phi ---------------------------------------------------------------------

def test_phi_zero_decoration_is_identity():
    for p in enumerate_class(Av("312"), 6):
        assert phi(p).perm == p


def test_phi_single_excursion_reverses_decorations():
    path = DyckPath("VVHVHH")
    d = DecoratedDyckPath(path, (0, 2, 1), "above")
    image = phi_decorated(d)
    assert image.path == path and image.h == (1, 2, 0)
    assert image.placement == convention("312|12").placement


@pytest.mark.parametrize("n", range(1, 7))
def test_phi_single_excursion_membership_by_oracle(n):
    target = set(enumerate_members(juxt("312|12"), n, method="naive"))
    checked = 0
    for p in enumerate_members(juxt("312|21"), n):
        d = gridded_to_decorated(canonical_gridding(juxt("312|21"), p), "C")
        if sum(d.h) and len(excursions(d.path)) == 1:
            assert phi(p).perm in target
            checked += 1
    assert checked or n < 3


def test_phi_preserves_decoration_multiset():
    for p in enumerate_members(juxt("312|21"), 6):
        src = gridded_to_decorated(canonical_gridding(juxt("312|21"), p), "312|21")
        dst = gridded_to_decorated(phi(p), "312|12")
        assert sorted(src.h) == sorted(dst.h)
        assert phi_inverse(phi(p).perm).perm == p


# --- verification harness ----------------------------------------------------

@pytest.mark.parametrize("name", sorted(BIJECTIONS))
@pytest.mark.parametrize("n", range(8))
def test_verify_bijection(name, n):
    report = verify_bijection(name, n)
    assert report.failures == []
    assert report.bijective


def test_report_json():
    report = verify_bijection("theta", 4)
    data = json.loads(report.to_json())
    assert data == {"name": "theta", "n": 4, "domain_size": 21, "image_size": 21,
                    "target_size": 21, "failures": [], "bijective": True}


def test_report_not_bijective_with_failures():
    r = BijectionReport("x", 3, 6, 6, 6, [("123", "boom")])
    assert not r.bijective
    assert json.loads(r.to_json())["failures"] == [["123", "boom"]]


def test_verify_errors():
    with pytest.raises(BijectionError, match="unknown"):
        verify_bijection("omega", 3)
    with pytest.raises(ExhaustionBoundError):
        verify_bijection("theta", 11)


@given(st.integers(0, 9).flatmap(lambda n: st.sampled_from(enumerate_class(Av("231"), n)) if n else st.just(Permutation(""))))
@settings(max_examples=100, deadline=None)
def test_lambda_roundtrip_property(p):
    assert lam_inverse(lam(p)) == p
