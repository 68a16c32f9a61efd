import random
from fractions import Fraction

import pytest

from holonomy import berger
from holonomy.berger import (
    absorbability_check,
    candidate_ideals,
    curvature_span,
    first_criterion,
    first_criterion_by_ideals,
    ideal_closure,
    is_ideal,
    jacobi_holds,
    second_criterion,
    symmetric_pairing_space,
)
from holonomy.linalg import Matrix
from holonomy.representations import (
    add_center,
    classical_algebra,
    functor,
    lambda_id_plus_j,
    realify,
    sl2_irrep,
)
from holonomy.spencer import curvature_prolongation, curvature_space

from conftest import random_conjugate


def small_algebras():
    """Every matrix Lie algebra here has dim h <= 4."""
    out = [sl2_irrep(k) for k in range(1, 7)]
    out.append(functor("direct_sum", sl2_irrep(1), sl2_irrep(1)))
    out.append(functor("direct_sum", sl2_irrep(1), sl2_irrep(2)))
    out.append(functor("direct_sum", sl2_irrep(2), sl2_irrep(2)))
    out += [add_center(sl2_irrep(k), Matrix.identity(k + 1)) for k in (1, 2, 3, 4, 5)]
    out += [classical_algebra("so", p=2, q=0), classical_algebra("so", p=3, q=0), classical_algebra("so", p=2, q=1)]
    out += [classical_algebra("gl", n=2), classical_algebra("u", p=2, q=0), classical_algebra("su", p=1, q=1)]
    out.append(add_center(classical_algebra("so", p=3, q=0), Matrix.identity(3)))
    r = realify(sl2_irrep(1))
    out += [add_center(r, r.structures["J"]), add_center(r, lambda_id_plus_j(r, 1))]
    # a Borel subalgebra of sl(2) on V2: solvable, first criterion fails
    v2 = sl2_irrep(2)
    out.append(v2.with_generators(v2.generators[:2], "borel on V2"))
    # an abelian diagonal algebra on Q^3
    out.append(v2.with_generators([Matrix.diagonal([1, 0, -1]), Matrix.diagonal([1, 1, 1])], "diagonal torus"))
    assert all(h.dim <= 4 for h in out)
    return out


ALGEBRAS = small_algebras()


@pytest.mark.parametrize("h", ALGEBRAS, ids=[h.name for h in ALGEBRAS])
def test_span_criterion_matches_ideal_enumeration(h):
    hc = h.canonical()
    k = curvature_space(hc)
    assert first_criterion(hc, k) == first_criterion_by_ideals(hc, k.dim)


def test_both_outcomes_are_exercised():
    verdicts = {first_criterion(h.canonical(), curvature_space(h.canonical())) for h in ALGEBRAS}
    assert verdicts == {True, False}


def test_span_criterion_under_basis_change():
    rng = random.Random(17)
    for h in ALGEBRAS[:12]:
        a = first_criterion(h.canonical(), curvature_space(h.canonical()))
        c = random_conjugate(rng, h).canonical()
        assert first_criterion(c, curvature_space(c)) == a


def test_curvature_span_is_an_ideal():
    for h in ALGEBRAS:
        hc = h.canonical()
        assert is_ideal(hc, curvature_span(hc, curvature_space(hc)))


def test_ideal_closure():
    h = classical_algebra("gl", n=2).canonical()
    everything = ideal_closure(h, [{0: Fraction(1)}])
    assert is_ideal(h, everything)
    ideals = candidate_ideals(h)
    assert {g.dim for g in ideals} >= {0, 1, 3}


def test_sl2_second_criterion():
    for k, want in ((1, True), (2, True), (3, True), (4, False)):
        h = sl2_irrep(k).canonical()
        kk = curvature_space(h)
        assert second_criterion(curvature_prolongation(h, kk)) is want


# ----------------------------------------------------------------------------
# symmetric pairings
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("h", [classical_algebra("so", p=3, q=0), sl2_irrep(2), sl2_irrep(4)], ids=lambda h: h.name)
def test_symmetric_pairings_exist_and_satisfy_jacobi(h):
    space, witnesses = symmetric_pairing_space(h)
    assert space.dim == 1
    (w,) = witnesses
    assert w.surjective and w.jacobi


def test_no_pairing_for_v3():
    space, witnesses = symmetric_pairing_space(sl2_irrep(3))
    assert space.dim == 0 and witnesses == []


def test_jacobi_detects_a_bad_pairing():
    h = sl2_irrep(2)
    space, _ = symmetric_pairing_space(h)
    good = space.basis_rows()[0]
    assert jacobi_holds(h, good)
    # a pairing that is not h-equivariant breaks Jacobi
    bad = dict(good)
    bad[0] = bad.get(0, 0) + 1
    assert not jacobi_holds(h, bad)


# ----------------------------------------------------------------------------
# absorbability
# ----------------------------------------------------------------------------


def _absorb(h):
    hc = h.canonical()
    k = curvature_space(hc)
    return absorbability_check(hc, k, curvature_prolongation(hc, k))


def test_absorbability_on_examples():
    res = _absorb(sl2_irrep(3))
    assert res.verdict == "yes"
    assert res.q_unique_modulo == 1
    assert res.obstruction_rank_checked == 6  # pairs i <= j of a 3-dim K


def test_absorbability_with_zero_curvature():
    res = _absorb(sl2_irrep(6))
    assert res.verdict == "yes" and res.note == "K = 0"


def test_absorbability_reports_no_for_an_unabsorbable_obstruction(monkeypatch):
    """Self-test of the negative path: inject an obstruction outside the image."""
    h = sl2_irrep(3).canonical()
    k = curvature_space(h)
    k1 = curvature_prolongation(h, k)
    real = berger.quadratic_obstructions

    def perturbed(hh, kk, rho):
        for key, vec in real(hh, kk, rho):
            yield key, vec
        # K (x) Lambda^2 m* has dimension 3 * 6; the image of K^1 (x) m* has dimension 4 * 4 - 1
        yield (0, 0), {idx: Fraction(1) for idx in range(k.dim * 6)}

    monkeypatch.setattr(berger, "quadratic_obstructions", perturbed)
    res = absorbability_check(h, k, k1)
    assert res.verdict == "no"
    assert "not absorbed" in res.note


def test_absorbability_inconclusive_when_action_fails(monkeypatch):
    h = sl2_irrep(3).canonical()
    k = curvature_space(h)
    k1 = curvature_prolongation(h, k)
    monkeypatch.setattr(berger, "_is_homomorphism", lambda *a: False)
    assert absorbability_check(h, k, k1).verdict == "inconclusive"
