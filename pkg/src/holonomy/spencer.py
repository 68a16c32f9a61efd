"""Spencer maps of h in gl(m): torsion, curvature, prolongations, characters.

Coordinate conventions (fixed once, used everywhere):

* m = Q^n with basis e_0..e_{n-1}, dual basis e^0..e^{n-1}.
* h has basis X_0..X_{d-1} (the generators of the Representation).
* Lambda^k m* uses increasing index tuples in lexicographic order; the
  coordinate of a k-form phi at (i_1 < ... < i_k) is phi(e_{i_1}, ..., e_{i_k}).
* A tensor space U (x) V has coordinate u * dim V + v.

With these, h (x) Lambda^2 m* holds curvature tensors R with R(e_i, e_j)
= sum_a R[a, (i, j)] X_a, and K (x) m* holds R' with
R'(e_w) = sum_b R'[b, w] K_b for the canonical basis K_b of K.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .linalg import Matrix, Subspace, LinearMap, echelon, kernel_of_rows
from .representations.core import Representation, dual_action, wedge_action, wedge_basis


def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {t: k for k, t in enumerate(wedge_basis(n, 2))}


def triple_index(n: int) -> dict[tuple[int, int, int], int]:
    return {t: k for k, t in enumerate(wedge_basis(n, 3))}


def _add(row: dict, col: int, v) -> None:
    w = row.get(col, 0) + v
    if w:
        row[col] = w
    else:
        row.pop(col, None)


def _rows_to_matrix(rows: dict[int, dict[int, object]], nrows: int, ncols: int) -> Matrix:
    return Matrix.from_dict(nrows, ncols, {i: r for i, r in rows.items() if r})


# ----------------------------------------------------------------------------
# module subspaces and induced actions
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleSubspace:
    """An h-invariant subspace ``space`` of a tensor space built from h and m.

    ``action`` holds the induced action of each generator on the ambient
    space (may be empty when not needed).
    """

    ambient: str
    space: Subspace
    action: tuple[Matrix, ...] = ()

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def ambient_dim(self) -> int:
        return self.space.ambient_dim

    def is_invariant(self) -> bool:
        for a in self.action:
            for row in self.space.basis_rows():
                if not self.space.contains(_apply(a, row)):
                    return False
        return True


def _apply(m: Matrix, v: dict) -> dict:
    """m @ v for a sparse vector v (dict)."""
    out: dict[int, Fraction] = {}
    cols = _columns(m)
    for j, x in v.items():
        for i, y in cols.get(j, ()):
            _add(out, i, x * y)
    return out


_COLS_CACHE: dict[int, tuple[Matrix, dict]] = {}


def _columns(m: Matrix) -> dict[int, list]:
    key = id(m)
    hit = _COLS_CACHE.get(key)
    if hit is not None and hit[0] is m:
        return hit[1]
    cols: dict[int, list] = {}
    for i, j, v in m.items():
        cols.setdefault(j, []).append((i, v))
    if len(_COLS_CACHE) > 4096:
        _COLS_CACHE.clear()
    _COLS_CACHE[key] = (m, cols)
    return cols


def kron_sum(a: Matrix, b: Matrix) -> Matrix:
    """a (x) 1 + 1 (x) b, the induced action on a tensor product."""
    na, nb = a.nrows, b.nrows
    entries = [(i * nb + k, j * nb + k, v) for i, j, v in a.items() for k in range(nb)]
    entries += [(i * nb + k, i * nb + l, v) for k, l, v in b.items() for i in range(na)]
    return Matrix.from_entries(na * nb, na * nb, entries)


def wedge_dual(h: Representation, k: int) -> list[Matrix]:
    """Induced action of each generator on Lambda^k m*."""
    return [wedge_action(dual_action(x), k) for x in h.generators]


def tensor_actions(left: Sequence[Matrix], right: Sequence[Matrix]) -> list[Matrix]:
    return [kron_sum(a, b) for a, b in zip(left, right)]


def adjoint(h: Representation) -> list[Matrix]:
    return [h.ad(i) for i in range(h.dim)]


# ----------------------------------------------------------------------------
# torsion
# ----------------------------------------------------------------------------


def torsion_delta_matrix(h: Representation) -> Matrix:
    """delta: h (x) m* -> m (x) Lambda^2 m*, (X (x) xi)(x, y) = X(x) xi(y) - X(y) xi(x)."""
    n, d = h.n, h.dim
    pidx = pair_index(n)
    npairs = len(pidx)
    rows: dict[int, dict[int, object]] = {}
    for a, x in enumerate(h.generators):
        for (j, l), p in pidx.items():
            for c in range(n):
                # k = l contributes X e_j, k = j contributes -X e_l
                v = x[c, j]
                if v:
                    _add(rows.setdefault(c * npairs + p, {}), a * n + l, v)
                v = x[c, l]
                if v:
                    _add(rows.setdefault(c * npairs + p, {}), a * n + j, -v)
    return _rows_to_matrix(rows, n * npairs, d * n)


@dataclass(frozen=True)
class TorsionData:
    map: LinearMap
    h1: ModuleSubspace
    coker_dim: int


def delta_torsion(h: Representation) -> TorsionData:
    """The torsion map, its kernel h^(1) and the dimension of its cokernel."""
    m = torsion_delta_matrix(h)
    ker = kernel_of_rows(m.row_dicts(), m.ncols)
    rank = m.ncols - ker.dim
    return TorsionData(LinearMap.from_matrix(m), ModuleSubspace("h (x) m*", ker), m.nrows - rank)


# ----------------------------------------------------------------------------
# curvature
# ----------------------------------------------------------------------------


def _cyclic_terms(i: int, j: int, k: int):
    """(pair, remaining index, sign) for the three terms of a cyclic sum over i < j < k."""
    return (((j, k), i, 1), ((i, k), j, -1), ((i, j), k, 1))


def curvature_delta_matrix(h: Representation) -> Matrix:
    """delta: h (x) Lambda^2 m* -> m (x) Lambda^3 m*, the first Bianchi cyclic sum."""
    n, d = h.n, h.dim
    pidx, tidx = pair_index(n), triple_index(n)
    npairs, ntrip = len(pidx), len(tidx)
    rows: dict[int, dict[int, object]] = {}
    for a, x in enumerate(h.generators):
        cols = _columns(x)
        for (i, j, k), t in tidx.items():
            for pair, r, sgn in _cyclic_terms(i, j, k):
                for c, v in cols.get(r, ()):
                    _add(rows.setdefault(c * ntrip + t, {}), a * npairs + pidx[pair], sgn * v)
    return _rows_to_matrix(rows, n * ntrip, d * npairs)


def curvature_space(h: Representation, with_action: bool = True) -> ModuleSubspace:
    """K(h): curvature tensors in h (x) Lambda^2 m* satisfying the first Bianchi identity."""
    m = curvature_delta_matrix(h)
    space = kernel_of_rows(m.row_dicts(), m.ncols)
    action = tuple(tensor_actions(adjoint(h), wedge_dual(h, 2))) if with_action else ()
    return ModuleSubspace("h (x) L2 m*", space, action)


def curvature_values(h: Representation, k_space: Subspace) -> list[dict[int, Fraction]]:
    """All values R(e_i, e_j) for R in the basis of K, as coordinate vectors in h."""
    npairs = comb(h.n, 2)
    out = []
    for row in k_space.basis_rows():
        vals: dict[int, dict[int, Fraction]] = {}
        for idx, v in row.items():
            a, p = divmod(idx, npairs)
            vals.setdefault(p, {})[a] = v
        out.extend(vals.values())
    return out


def induced_action_on(space: Subspace, ambient_action: Sequence[Matrix]) -> list[Matrix] | None:
    """Matrices of the ambient action restricted to ``space`` (canonical-basis coordinates).

    Returns None if some generator does not preserve the space.
    """
    k = space.dim
    basis = space.basis_rows()
    mats = []
    for a in ambient_action:
        entries = []
        for j, row in enumerate(basis):
            coords = space.coordinates(_apply(a, row))
            if coords is None:
                return None
            entries += [(i, j, v) for i, v in enumerate(coords) if v]
        mats.append(Matrix.from_entries(k, k, entries))
    return mats


def rho_k(h: Representation, k: ModuleSubspace) -> list[Matrix]:
    """The induced action of h on K(h), in the canonical basis of K."""
    action = k.action or tuple(tensor_actions(adjoint(h), wedge_dual(h, 2)))
    mats = induced_action_on(k.space, action)
    if mats is None:
        raise ValueError("K(h) is not invariant under the induced action")
    return mats


def prolongation_delta_matrix(h: Representation, k_space: Subspace) -> Matrix:
    """delta: K (x) m* -> h (x) Lambda^3 m*, the second Bianchi cyclic sum.

    (R' (x) xi) -> [(x, y, z) -> R'(x)(y, z) + R'(y)(z, x) + R'(z)(x, y)].
    """
    n, d = h.n, h.dim
    pidx, tidx = pair_index(n), triple_index(n)
    npairs, ntrip = len(pidx), len(tidx)
    # by_pair[p] = list of (b, a, value) with K_b[a, p] = value
    by_pair: dict[int, list] = {}
    for b, row in enumerate(k_space.basis_rows()):
        for idx, v in row.items():
            a, p = divmod(idx, npairs)
            by_pair.setdefault(p, []).append((b, a, v))
    rows: dict[int, dict[int, object]] = {}
    for (i, j, l), t in tidx.items():
        for pair, r, sgn in _cyclic_terms(i, j, l):
            for b, a, v in by_pair.get(pidx[pair], ()):
                _add(rows.setdefault(a * ntrip + t, {}), b * n + r, sgn * v)
    return _rows_to_matrix(rows, d * ntrip, k_space.dim * n)


def curvature_prolongation(h: Representation, k: ModuleSubspace, with_action: bool = True) -> ModuleSubspace:
    """K^1(h) inside K (x) m*: derivatives of curvature obeying the second Bianchi identity."""
    m = prolongation_delta_matrix(h, k.space)
    space = kernel_of_rows(m.row_dicts(), m.ncols)
    action: tuple[Matrix, ...] = ()
    if with_action and k.dim:
        action = tuple(tensor_actions(rho_k(h, k), [dual_action(x) for x in h.generators]))
    return ModuleSubspace("K (x) m*", space, action)


# ----------------------------------------------------------------------------
# tableaux
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """A subspace A of W (x) m*, coordinate b * n + w."""

    w_dim: int
    n: int
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.w_dim * self.n:
            raise ValueError(f"tableau ambient {self.space.ambient_dim} != {self.w_dim} * {self.n}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @classmethod
    def full(cls, w_dim: int, n: int) -> "Tableau":
        return cls(w_dim, n, Subspace.full(w_dim * n))

    @classmethod
    def zero(cls, w_dim: int, n: int) -> "Tableau":
        return cls(w_dim, n, Subspace.zero(w_dim * n))


def symmetrization_matrix(t: Tableau) -> Matrix:
    """sigma: A (x) m* -> W (x) Lambda^2 m*, P -> [(v, u) -> P(e_u)(e_v) - P(e_v)(e_u)].

    A (x) m* is coordinatized by (beta, u) -> beta * n + u over the canonical
    basis of A.  The kernel of sigma is the prolongation A^(1).
    """
    n = t.n
    pidx = pair_index(n)
    npairs = len(pidx)
    rows: dict[int, dict[int, object]] = {}
    for beta, row in enumerate(t.space.basis_rows()):
        for idx, v in row.items():
            b, w = divmod(idx, n)
            # A_beta[b, w] feeds P[b, w, u] for every u
            for u in range(n):
                if u == w:
                    continue
                if w < u:
                    _add(rows.setdefault(b * npairs + pidx[(w, u)], {}), beta * n + u, v)
                else:
                    _add(rows.setdefault(b * npairs + pidx[(u, w)], {}), beta * n + u, -v)
    return _rows_to_matrix(rows, t.w_dim * npairs, t.dim * n)


def prolongation_coefficients(t: Tableau) -> Subspace:
    """A^(1) in the coordinates of A (x) m* over the canonical basis of A."""
    m = symmetrization_matrix(t)
    return kernel_of_rows(m.row_dicts(), m.ncols)


def prolongation_dim(t: Tableau) -> int:
    if t.dim == 0:
        return 0
    m = symmetrization_matrix(t)
    return m.ncols - len(echelon(m.row_dicts(), m.ncols))


def tableau_prolongation(t: Tableau) -> Subspace:
    """A^(1) = (A (x) m*) meet (W (x) S^2 m*) inside W (x) m* (x) m*, coordinate (b * n + w) * n + u."""
    n = t.n
    coeff = prolongation_coefficients(t)
    basis = t.space.basis_rows()
    vecs = []
    for row in coeff.basis_rows():
        vec: dict[int, Fraction] = {}
        for idx, c in row.items():
            beta, u = divmod(idx, n)
            for j, v in basis[beta].items():
                _add(vec, j * n + u, c * v)
        vecs.append(vec)
    return Subspace.span(vecs, t.w_dim * n * n)


# ----------------------------------------------------------------------------
# Cartan characters and involutivity
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterSequence:
    s: tuple[int, ...]
    trials_used: int
    seed: int
    discarded: int = 0

    def __post_init__(self):
        if any(self.s[i] < self.s[i + 1] for i in range(len(self.s) - 1)):
            raise ValueError(f"characters {self.s} are not weakly decreasing")

    @property
    def cartan_bound(self) -> int:
        return sum((k + 1) * v for k, v in enumerate(self.s))

    def __iter__(self):
        return iter(self.s)


def flag_characters(t: Tableau, flag: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Characters of A along the flag spanned by v_1, ..., v_n.

    s_1 + ... + s_k is the rank of a -> (a(v_1), ..., a(v_k)) on A.
    """
    n, wd = t.n, t.w_dim
    rows = []
    for row in t.space.basis_rows():
        vec: dict[int, Fraction] = {}
        for idx, x in row.items():
            b, w = divmod(idx, n)
            for k, v in enumerate(flag):
                if v[w]:
                    _add(vec, k * wd + b, x * v[w])
        rows.append(vec)
    piv = echelon(rows, wd * n)
    s = [0] * n
    for c in piv:
        s[c // wd] += 1
    return tuple(s)


def random_flag(rng: random.Random, n: int, bound: int = 7) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def cartan_characters(t: Tableau, seed: int = 0, trials: int = 5, prolongation: int | None = None) -> CharacterSequence:
    """Lexicographically largest character sequence over seeded random integer flags.

    Sampling stops early once a flag reaches the Cartan bound dim A^(1).
    A flag whose Cartan bound falls below dim A^(1) cannot occur for exact
    arithmetic; such flags are discarded and resampled (at most ``trials``
    extra times) rather than trusted.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = t.n
    if t.dim == 0:
        return CharacterSequence((0,) * n, 0, seed)
    if prolongation is None:
        prolongation = prolongation_dim(t)
    rng = random.Random(seed)
    best: tuple[int, ...] | None = None
    used = discarded = 0
    while used < trials and discarded <= trials:
        s = flag_characters(t, random_flag(rng, n))
        if sum((k + 1) * v for k, v in enumerate(s)) < prolongation:
            discarded += 1
            continue
        used += 1
        if best is None or s > best:
            best = s
        if sum((k + 1) * v for k, v in enumerate(s)) == prolongation:
            # equality is only possible at a generic flag, so nothing can beat it
            break
    if best is None:
        raise ArithmeticError("every sampled flag violated the Cartan bound")
    return CharacterSequence(best, used, seed, discarded)


def least_possible_bound(t: Tableau) -> int:
    """Smallest value sum k * s_k can take over all flags.

    Partial sums s_1 + ... + s_k never exceed min(dim A, k * dim W), and the
    bound only decreases as they grow, so the largest admissible partial
    sums give the minimum.
    """
    total = bound = 0
    for k in range(1, t.n + 1):
        s = min(t.dim, k * t.w_dim) - total
        total += s
        bound += k * s
    return bound


@dataclass(frozen=True)
class InvolutivityVerdict:
    verdict: str  # "involutive" | "not_involutive" | "inconclusive"
    certificate: str
    prolongation_dim: int
    cartan_bound: int
    characters: CharacterSequence

    def __str__(self) -> str:
        return self.verdict


def involutivity_test(t: Tableau, chars: CharacterSequence, prolongation: int | None = None, extra_trials: int | None = None) -> InvolutivityVerdict:
    """Cartan's test: dim A^(1) equals the bound sum k * s_k exactly when A is involutive.

    Equality certifies involution for any flag.  A gap is trusted as
    non-involution when dim A^(1) is below the bound of every conceivable
    flag, or when a second batch of flags reproduces the characters.
    """
    if prolongation is None:
        prolongation = prolongation_dim(t)
    bound = chars.cartan_bound
    if prolongation > bound:
        raise ArithmeticError(f"Cartan bound violated: dim A^(1) = {prolongation} > {bound}")
    if prolongation == bound:
        return InvolutivityVerdict("involutive", "cartan-equality", prolongation, bound, chars)
    if prolongation < least_possible_bound(t):
        return InvolutivityVerdict("not_involutive", "below-every-flag-bound", prolongation, bound, chars)
    more = extra_trials if extra_trials is not None else 4 * max(chars.trials_used, 1)
    again = cartan_characters(t, seed=chars.seed + 1_000_003, trials=more, prolongation=prolongation)
    if again.s > chars.s:
        if again.cartan_bound == prolongation:
            return InvolutivityVerdict("involutive", "cartan-equality", prolongation, again.cartan_bound, again)
        return InvolutivityVerdict("inconclusive", "characters-unstable", prolongation, again.cartan_bound, again)
    return InvolutivityVerdict("not_involutive", "stable-under-extra-trials", prolongation, bound, chars)


def generality(chars: CharacterSequence | Sequence[int], verdict: InvolutivityVerdict | str | None = None) -> tuple[int, int]:
    """(s_q, q) for the last nonzero character s_q; (0, 0) for the zero tableau."""
    if verdict is not None and str(verdict) != "involutive":
        raise ValueError("generality is only meaningful for an involutive tableau")
    s = tuple(chars.s if isinstance(chars, CharacterSequence) else chars)
    for q in range(len(s), 0, -1):
        if s[q - 1] > 0:
            return (s[q - 1], q)
    return (0, 0)
