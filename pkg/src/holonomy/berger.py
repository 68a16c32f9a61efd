"""Berger's criteria, absorbability of torsion and symmetric-pair pairings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Subspace, kernel_of_rows
from .representations.core import Representation
from .spencer import (
    ModuleSubspace,
    Tableau,
    _add,
    adjoint,
    curvature_space,
    curvature_values,
    induced_action_on,
    pair_index,
    symmetrization_matrix,
    tensor_actions,
    wedge_dual,
)


def _ad_apply(h: Representation, i: int, v: dict[int, Fraction]) -> dict[int, Fraction]:
    """[X_i, sum_a v_a X_a] in generator coordinates."""
    c = h.structure_constants()
    out: dict[int, Fraction] = {}
    for a, x in v.items():
        for k, y in enumerate(c[i][a]):
            if y:
                _add(out, k, x * y)
    return out


def ideal_closure(h: Representation, vectors) -> Subspace:
    """Smallest ideal of h containing the given coordinate vectors."""
    sp = Subspace.span(vectors, h.dim)
    while True:
        new = [_ad_apply(h, i, row) for row in sp.basis_rows() for i in range(h.dim)]
        bigger = Subspace.span(sp.basis_rows() + new, h.dim)
        if bigger.dim == sp.dim:
            return sp
        sp = bigger


def is_ideal(h: Representation, sp: Subspace) -> bool:
    return all(sp.contains(_ad_apply(h, i, row)) for row in sp.basis_rows() for i in range(h.dim))


def curvature_span(h: Representation, k: ModuleSubspace) -> Subspace:
    """Span in h (generator coordinates) of all curvature values R(x, y), R in K(h).

    The result is checked to be an ideal of h.
    """
    span = Subspace.span(curvature_values(h, k.space), h.dim)
    if not is_ideal(h, span):
        raise ArithmeticError("curvature span is not an ideal; the curvature space is inconsistent")
    return span


def first_criterion(h: Representation, k: ModuleSubspace) -> bool:
    return curvature_span(h, k).dim == h.dim


def second_criterion(k1: ModuleSubspace) -> bool:
    return k1.dim > 0


# ----------------------------------------------------------------------------
# absorbability
# ----------------------------------------------------------------------------


def _is_homomorphism(h: Representation, mats: list[Matrix]) -> bool:
    c = h.structure_constants()
    d = h.dim
    for i in range(d):
        for j in range(i + 1, d):
            lhs = mats[i].commutator(mats[j])
            rhs = Matrix.zeros(lhs.nrows, lhs.ncols)
            for k, v in enumerate(c[i][j]):
                if v:
                    rhs = rhs + mats[k].scale(v)
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class Absorbability:
    verdict: str  # "yes" | "no" | "inconclusive"
    obstruction_rank_checked: int
    q_unique_modulo: int  # dim K^2: Q is unique up to K^2-valued terms
    note: str = ""

    def __str__(self) -> str:
        return self.verdict


def quadratic_obstructions(h: Representation, k: ModuleSubspace, rho: list[Matrix]):
    """Yield 2 c(R_i, R_j) for i <= j as sparse vectors in K (x) Lambda^2 m*.

    2 c(R_i, R_j)(x, y) = rho(R_i(x, y)) R_j + rho(R_j(x, y)) R_i.
    """
    npairs = len(pair_index(h.n))
    basis = k.space.basis_rows()
    # values[i] = list of (a, pair, R_i[a, pair])
    values = [[(*divmod(idx, npairs), v) for idx, v in row.items()] for row in basis]
    # column j of rho_a as a list of (b, value)
    cols = []
    for m in rho:
        col: dict[int, list] = {}
        for b, j, v in m.items():
            col.setdefault(j, []).append((b, v))
        cols.append(col)

    def half(i: int, j: int, out: dict[int, Fraction]) -> None:
        for a, p, v in values[i]:
            for b, w in cols[a].get(j, ()):
                _add(out, b * npairs + p, v * w)

    for i in range(len(basis)):
        for j in range(i, len(basis)):
            out: dict[int, Fraction] = {}
            half(i, j, out)
            half(j, i, out)
            yield (i, j), out


def absorbability_check(h: Representation, k: ModuleSubspace, k1: ModuleSubspace) -> Absorbability:
    """Does a quadratic Q: K -> K^1 (x) m* exist that absorbs the obstruction?

    Exactly: every polarized obstruction c(R_i, R_j) must lie in the image
    of the antisymmetrization K^1 (x) m* -> K (x) Lambda^2 m*.  The kernel of
    that map is K^2, so Q is then unique modulo K^2-valued terms.
    """
    if k.dim == 0:
        return Absorbability("yes", 0, 0, "K = 0")
    action = k.action or tuple(tensor_actions(adjoint(h), wedge_dual(h, 2)))
    rho = induced_action_on(k.space, action)
    if rho is None or not _is_homomorphism(h, rho):
        return Absorbability("inconclusive", 0, 0, "induced action on K failed its self-check")
    sigma = symmetrization_matrix(Tableau(k.dim, h.n, k1.space))
    columns: dict[int, dict[int, Fraction]] = {}
    for r, c, v in sigma.items():
        columns.setdefault(c, {})[r] = v
    image = Subspace.span(columns.values(), sigma.nrows)
    k2 = sigma.ncols - image.dim
    checked = 0
    for (i, j), vec in quadratic_obstructions(h, k, rho):
        checked += 1
        if vec and not image.contains(vec):
            return Absorbability("no", checked, k2, f"obstruction c(R_{i}, R_{j}) is not absorbed")
    return Absorbability("yes", checked, k2)


# ----------------------------------------------------------------------------
# symmetric pairs
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PairingWitness:
    pairing: dict[int, Fraction]  # coordinates in h (x) Lambda^2 m*
    surjective: bool
    jacobi: bool


def _bracket_on_sum(h: Representation, pairing: dict[int, Fraction]):
    """Bracket on g = h + m; elements are (h-coordinates dict, m-vector dict)."""
    n = h.n
    npairs = len(pair_index(n))
    pidx = pair_index(n)
    c = h.structure_constants()
    gens = h.generators
    table: dict[int, dict[int, Fraction]] = {}
    for idx, v in pairing.items():
        a, p = divmod(idx, npairs)
        table.setdefault(p, {})[a] = v

    def b_pair(u: dict, w: dict) -> dict:
        out: dict[int, Fraction] = {}
        for i, x in u.items():
            for j, y in w.items():
                if i == j:
                    continue
                sgn = 1 if i < j else -1
                for a, v in table.get(pidx[(min(i, j), max(i, j))], {}).items():
                    _add(out, a, sgn * x * y * v)
        return out

    def act(xh: dict, w: dict) -> dict:
        out: dict[int, Fraction] = {}
        for a, s in xh.items():
            for i, j, v in gens[a].items():
                if j in w:
                    _add(out, i, s * v * w[j])
        return out

    def bracket(x, y):
        xh, xm = x
        yh, ym = y
        hh: dict[int, Fraction] = {}
        for a, s in xh.items():
            for b, t in yh.items():
                for k, v in enumerate(c[a][b]):
                    if v:
                        _add(hh, k, s * t * v)
        for a, v in b_pair(xm, ym).items():
            _add(hh, a, v)
        mm = act(xh, ym)
        for i, v in act(yh, xm).items():
            _add(mm, i, -v)
        return hh, mm

    return bracket


def jacobi_holds(h: Representation, pairing: dict[int, Fraction]) -> bool:
    """Expand the Jacobi identity on all triples of basis elements of h + m."""
    bracket = _bracket_on_sum(h, pairing)
    basis = [({a: Fraction(1)}, {}) for a in range(h.dim)] + [({}, {i: Fraction(1)}) for i in range(h.n)]
    for x, y, z in itertools.combinations(basis, 3):
        total_h: dict[int, Fraction] = {}
        total_m: dict[int, Fraction] = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            th, tm = bracket(p, bracket(q, r))
            for k, v in th.items():
                _add(total_h, k, v)
            for k, v in tm.items():
                _add(total_m, k, v)
        if total_h or total_m:
            return False
    return True


def symmetric_pairing_space(h: Representation) -> tuple[Subspace, list[PairingWitness]]:
    """h-equivariant maps Lambda^2 m -> h, with a surjectivity and Jacobi verdict per basis element."""
    npairs = len(pair_index(h.n))
    rows = [row for act in tensor_actions(adjoint(h), wedge_dual(h, 2)) for row in act.row_dicts() if row]
    space = kernel_of_rows(rows, h.dim * npairs)
    witnesses = []
    for row in space.basis_rows():
        values: dict[int, dict[int, Fraction]] = {}
        for idx, v in row.items():
            a, p = divmod(idx, npairs)
            values.setdefault(p, {})[a] = v
        surjective = Subspace.span(values.values(), h.dim).dim == h.dim
        witnesses.append(PairingWitness(row, surjective, jacobi_holds(h, row)))
    return space, witnesses


# ----------------------------------------------------------------------------
# definitional first criterion (small oracle)
# ----------------------------------------------------------------------------


def subalgebra_rep(h: Representation, sub: Subspace, name: str = "") -> Representation:
    n = h.n
    gens = []
    for row in sub.basis_rows():
        m = Matrix.zeros(n, n)
        for a, v in row.items():
            m = m + h.generators[a].scale(v)
        gens.append(m)
    return Representation(gens, name or f"{h.name}|sub", n=n, validate=False)


def candidate_ideals(h: Representation) -> set[Subspace]:
    """Ideals of h reachable from a pool of simple generators (exhaustive enough for dim h <= 4)."""
    d = h.dim
    pool: list[dict[int, Fraction]] = []
    for coeffs in itertools.product((-1, 0, 1), repeat=d):
        if any(coeffs):
            pool.append({a: Fraction(v) for a, v in enumerate(coeffs) if v})
    # center and derived algebra
    c = h.structure_constants()
    center_rows = []
    for i in range(d):
        for k in range(d):
            row = {a: c[a][i][k] for a in range(d) if c[a][i][k]}
            if row:
                center_rows.append(row)
    center = kernel_of_rows(center_rows, d)
    derived = Subspace.span([{k: v for k, v in enumerate(c[i][j]) if v} for i in range(d) for j in range(i + 1, d)], d)
    ideals = {Subspace.zero(d), center, derived}
    seeds = [[v] for v in pool]
    if d <= 4:
        seeds += [[u, v] for u, v in itertools.combinations(pool, 2)]
    for s in seeds:
        ideals.add(ideal_closure(h, s))
    return {g for g in ideals if g.dim < d and is_ideal(h, g)}


def first_criterion_by_ideals(h: Representation, k_dim: int | None = None) -> bool:
    """True iff no proper ideal g found has dim K(g) = dim K(h) (K(g) is a subspace of K(h))."""
    if k_dim is None:
        k_dim = curvature_space(h, with_action=False).dim
    for g in candidate_ideals(h):
        if g.dim == 0:
            kg = 0
        else:
            kg = curvature_space(subalgebra_rep(h, g), with_action=False).dim
        if kg == k_dim:
            return False
    return True
