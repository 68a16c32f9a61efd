import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from holonomy import spencer
from holonomy.linalg import Matrix, Subspace, intersect, kernel_of_rows
from holonomy.representations import classical_algebra, realify, sl2_irrep, add_center, lambda_id_plus_j
from holonomy.representations.core import Representation, _flat, dual_action, wedge_action
from holonomy.spencer import (
    CharacterSequence,
    Tableau,
    adjoint,
    cartan_characters,
    curvature_delta_matrix,
    curvature_prolongation,
    curvature_space,
    flag_characters,
    generality,
    involutivity_test,
    kron_sum,
    least_possible_bound,
    prolongation_delta_matrix,
    prolongation_dim,
    random_flag,
    rho_k,
    tableau_prolongation,
    torsion_delta_matrix,
)

from conftest import random_conjugate, small_representations


def fifty_random_representations():
    rng = random.Random(1234)
    pool = small_representations()
    return [random_conjugate(rng, pool[i % len(pool)]) for i in range(50)]


RANDOM_REPS = fifty_random_representations()


def _equivariant(delta: Matrix, src: list[Matrix], tgt: list[Matrix]) -> bool:
    return all(delta @ a == b @ delta for a, b in zip(src, tgt))


@pytest.mark.parametrize("rep", RANDOM_REPS, ids=[f"{i}-{r.name}" for i, r in enumerate(RANDOM_REPS)])
def test_delta_maps_are_equivariant(rep):
    gens = rep.generators
    ad = adjoint(rep)
    dual = [dual_action(x) for x in gens]
    w2 = [wedge_action(d, 2) for d in dual]
    w3 = [wedge_action(d, 3) for d in dual]

    t = torsion_delta_matrix(rep)
    assert _equivariant(t, [kron_sum(a, d) for a, d in zip(ad, dual)], [kron_sum(x, w) for x, w in zip(gens, w2)])

    c = curvature_delta_matrix(rep)
    assert _equivariant(c, [kron_sum(a, w) for a, w in zip(ad, w2)], [kron_sum(x, w) for x, w in zip(gens, w3)])

    k = curvature_space(rep)
    assert k.is_invariant()
    if k.dim:
        rho = rho_k(rep, k)
        p = prolongation_delta_matrix(rep, k.space)
        assert _equivariant(p, [kron_sum(r, d) for r, d in zip(rho, dual)], [kron_sum(a, w) for a, w in zip(ad, w3)])
        assert curvature_prolongation(rep, k).is_invariant()


def test_dims_are_invariant_under_change_of_basis():
    rng = random.Random(99)
    def dims(rep):
        k = curvature_space(rep, with_action=False)
        return k.dim, curvature_prolongation(rep, k, with_action=False).dim

    for base in small_representations()[:10]:
        assert dims(base) == dims(random_conjugate(rng, base))


# ----------------------------------------------------------------------------
# K(g) = K(h) intersected with g (x) Lambda^2 m*
# ----------------------------------------------------------------------------


def _subalgebra_closure(rep: Representation, mats: list[Matrix], limit: int = 4) -> list[Matrix] | None:
    n = rep.n
    basis = Subspace.span([_flat(m) for m in mats], n * n)
    while True:
        mats = [Matrix.from_entries(n, n, ((k // n, k % n, v) for k, v in row.items())) for row in basis.basis_rows()]
        if len(mats) > limit:
            return None
        new = Subspace.span(basis.basis_rows() + [_flat(a.commutator(b)) for a, b in itertools.combinations(mats, 2)], n * n)
        if new.dim == basis.dim:
            return mats
        basis = new


def _random_subalgebras(rng: random.Random):
    out = []
    for rep in small_representations():
        for size in (1, 2, 2, 3):
            mats = []
            for _ in range(size):
                m = Matrix.zeros(rep.n, rep.n)
                for g in rep.generators:
                    if rng.random() < 0.4:
                        m = m + g.scale(rng.randint(-2, 2))
                mats.append(m)
            mats = [m for m in mats if not m.is_zero()]
            if not mats:
                continue
            sub = _subalgebra_closure(rep, mats)
            if sub is not None and len(sub) < rep.dim:
                out.append((rep, sub))
    return out


def test_curvature_space_restricts_to_subalgebras():
    rng = random.Random(42)
    cases = _random_subalgebras(rng)
    assert len(cases) >= 20
    for rep, sub in cases:
        g = Representation(sub, "sub", n=rep.n)
        npairs = comb(rep.n, 2)
        # coordinates of the subalgebra basis inside h
        coords = [rep.coordinates(x) for x in sub]
        kg_rows = []
        for row in curvature_space(g, with_action=False).space.basis_rows():
            v: dict[int, Fraction] = {}
            for idx, x in row.items():
                i, p = divmod(idx, npairs)
                for a, c in enumerate(coords[i]):
                    if c:
                        v[a * npairs + p] = v.get(a * npairs + p, 0) + c * x
            kg_rows.append({k: x for k, x in v.items() if x})
        kg = Subspace.span(kg_rows, rep.dim * npairs)
        g_tensor = Subspace.span(
            [{a * npairs + p: c for a, c in enumerate(co) if c} for co in coords for p in range(npairs)],
            rep.dim * npairs,
        )
        kh = curvature_space(rep, with_action=False).space
        assert kg == intersect(kh, g_tensor)


# ----------------------------------------------------------------------------
# characters
# ----------------------------------------------------------------------------


def _k1_tableau(rep: Representation) -> Tableau:
    hc = rep.canonical()
    k = curvature_space(hc)
    k1 = curvature_prolongation(hc, k)
    return Tableau(k.dim, hc.n, k1.space)


CHARACTER_CASES = [
    sl2_irrep(3),
    classical_algebra("so", p=3, q=0),
    classical_algebra("u", p=2, q=0),
    add_center(realify(sl2_irrep(1)), realify(sl2_irrep(1)).structures["J"]),
]


def test_characters_invariant_under_basis_change():
    rng = random.Random(2024)
    for i in range(20):
        base = CHARACTER_CASES[i % len(CHARACTER_CASES)]
        a = cartan_characters(_k1_tableau(base))
        b = cartan_characters(_k1_tableau(random_conjugate(rng, base)))
        assert a.s == b.s


def test_cartan_bound_holds_for_every_sampled_flag():
    rng = random.Random(8)
    tabs = [_k1_tableau(r) for r in CHARACTER_CASES]
    # random tableaux inside W (x) m*
    for _ in range(15):
        w, n = rng.randint(1, 3), rng.randint(2, 4)
        rows = [{j: rng.randint(-2, 2) for j in range(w * n) if rng.random() < 0.5} for _ in range(rng.randint(1, w * n))]
        tabs.append(Tableau(w, n, Subspace.span(rows, w * n)))
    for t in tabs:
        a1 = prolongation_dim(t)
        for _ in range(12):
            s = flag_characters(t, random_flag(rng, t.n))
            assert sum(s) == t.dim
            assert sum((k + 1) * v for k, v in enumerate(s)) >= a1
        chars = cartan_characters(t, seed=3)
        assert chars.discarded == 0
        assert chars.cartan_bound >= a1
        assert least_possible_bound(t) <= chars.cartan_bound


def test_prolongation_dimension_matches_ambient_construction():
    t = _k1_tableau(sl2_irrep(3))
    assert tableau_prolongation(t).dim == prolongation_dim(t) == 1


def test_full_and_zero_tableaux():
    # the full tableau W (x) m* is involutive with characters (W, ..., W)
    t = Tableau.full(2, 3)
    chars = cartan_characters(t)
    assert chars.s == (2, 2, 2)
    assert prolongation_dim(t) == 2 * comb(4, 2)
    assert involutivity_test(t, chars).verdict == "involutive"
    z = Tableau.zero(2, 3)
    assert cartan_characters(z).s == (0, 0, 0)
    assert generality(cartan_characters(z), "involutive") == (0, 0)


def test_v3_characters_and_certificate():
    t = _k1_tableau(sl2_irrep(3))
    chars = cartan_characters(t)
    assert chars.s == (3, 1, 0, 0)
    verdict = involutivity_test(t, chars)
    assert verdict.verdict == "not_involutive"
    assert verdict.certificate == "below-every-flag-bound"
    with pytest.raises(ValueError):
        generality(chars, verdict)


def test_characters_are_weakly_decreasing():
    with pytest.raises(ValueError):
        CharacterSequence((1, 2), 1, 0)


def test_seed_determinism():
    t = _k1_tableau(classical_algebra("so", p=3, q=0))
    assert cartan_characters(t, seed=5, trials=3) == cartan_characters(t, seed=5, trials=3)


# ----------------------------------------------------------------------------
# sl(2) weight-multiplicity oracle
# ----------------------------------------------------------------------------


def sl2_decomposition(rho_h: Matrix, dim: int) -> dict[int, int]:
    """Multiplicities of V_k from the eigenvalue multiplicities of a diagonalizable H."""
    mult = {}
    total = 0
    for w in range(-2 * dim - 2, 2 * dim + 3):
        shifted = rho_h - Matrix.identity(dim).scale(w)
        m = kernel_of_rows(shifted.row_dicts(), dim).dim
        if m:
            mult[w] = m
            total += m
    assert total == dim, "H is not diagonalizable with integer weights"
    return {k: mult.get(k, 0) - mult.get(k + 2, 0) for k in range(0, max(mult) + 1) if mult.get(k, 0) - mult.get(k + 2, 0)}


def _h_action(rep: Representation, rho: list[Matrix], h_mat: Matrix) -> Matrix:
    coords = rep.coordinates(h_mat)
    out = Matrix.zeros(rho[0].nrows, rho[0].ncols)
    for c, r in zip(coords, rho):
        if c:
            out = out + r.scale(c)
    return out


@pytest.mark.parametrize(
    "center, k_decomp, k1_decomp",
    [
        ("J", {4: 1, 2: 1, 0: 1}, {5: 2, 3: 2, 1: 2}),
        (Fraction(1), {4: 1, 2: 1}, {5: 2, 3: 2}),
    ],
)
def test_leftover_modules_by_weights(center, k_decomp, k1_decomp):
    base = realify(sl2_irrep(1))
    z = base.structures["J"] if center == "J" else lambda_id_plus_j(base, center)
    rep = add_center(base, z).canonical()
    h_mat = base.generators[0]  # realified H = diag(1, -1, 1, -1)
    k = curvature_space(rep)
    rho = rho_k(rep, k)
    assert sl2_decomposition(_h_action(rep, rho, h_mat), k.dim) == k_decomp
    k1 = curvature_prolongation(rep, k)
    # action of H on K (x) m*, restricted to K^1
    act = spencer.induced_action_on(k1.space, list(k1.action))
    assert act is not None
    assert sl2_decomposition(_h_action(rep, act, h_mat), k1.dim) == k1_decomp
    assert k.dim == sum((j + 1) * m for j, m in k_decomp.items())
    assert k1.dim == sum((j + 1) * m for j, m in k1_decomp.items())
