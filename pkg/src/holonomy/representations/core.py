"""Matrix Lie algebras h in gl(m), m = Q^n, and forms on m."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Mapping, Sequence

from ..linalg import Matrix, Subspace, as_scalar, kernel_of_rows


class RepresentationError(ValueError):
    """A generator set that is not a valid matrix Lie algebra."""


def _flat(m: Matrix) -> dict[int, Fraction]:
    n = m.ncols
    return {i * n + j: v for i, j, v in m.items()}


class Representation:
    """A Lie algebra h given by a basis of n x n rational matrices.

    ``structures`` holds named matrices that commute with h, e.g. a complex
    structure ``"J"`` or quaternionic ``"I"``, ``"J"``, ``"K"``.  ``meta`` is
    free-form provenance (labels of gamma products, metric signs, ...).
    """

    def __init__(
        self,
        generators: Sequence[Matrix],
        name: str = "",
        structures: Mapping[str, Matrix] | None = None,
        meta: Mapping | None = None,
        n: int | None = None,
        validate: bool = True,
    ):
        gens = tuple(generators)
        if n is None:
            if not gens:
                raise RepresentationError("cannot infer n for an empty generator list")
            n = gens[0].nrows
        self.n = n
        self.generators = gens
        self.name = name
        self.structures = dict(structures or {})
        self.meta = dict(meta or {})
        self._span = None
        self._consts = None
        if validate:
            self.validate()

    # --- basic data ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"Representation({self.name or '?'}: dim h={self.dim}, dim m={self.n})"

    def span(self) -> Subspace:
        """h as a subspace of Q^(n*n) (row-major matrix coordinates)."""
        if self._span is None:
            self._span = Subspace.span([_flat(g) for g in self.generators], self.n * self.n)
        return self._span

    def coordinates(self, x: Matrix) -> list[Fraction] | None:
        """Coefficients of ``x`` in the generator basis, or None if x is not in h."""
        from ..linalg import solve_in_span

        return solve_in_span([_flat(g) for g in self.generators], _flat(x), self.n * self.n)

    def validate(self) -> None:
        for g in self.generators:
            if g.shape != (self.n, self.n):
                raise RepresentationError(f"generator of shape {g.shape}, expected {(self.n, self.n)}")
        if self.span().dim != self.dim:
            raise RepresentationError(f"{self.name}: generators are linearly dependent")
        if not self.is_bracket_closed():
            raise RepresentationError(f"{self.name}: generators are not closed under the bracket")
        for key, s in self.structures.items():
            if any(not g.commutator(s).is_zero() for g in self.generators):
                raise RepresentationError(f"{self.name}: structure {key} does not commute with h")

    def is_bracket_closed(self) -> bool:
        sp = self.span()
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not sp.contains(_flat(gens[i].commutator(gens[j]))):
                    return False
        return True

    def structure_constants(self) -> list[list[list[Fraction]]]:
        """c[i][j][k] with [X_i, X_j] = sum_k c[i][j][k] X_k."""
        if self._consts is None:
            d = self.dim
            c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
            for i in range(d):
                for j in range(i + 1, d):
                    coords = self.coordinates(self.generators[i].commutator(self.generators[j]))
                    if coords is None:
                        raise RepresentationError("bracket leaves the algebra")
                    c[i][j] = coords
                    c[j][i] = [-x for x in coords]
            self._consts = c
        return self._consts

    def ad(self, i: int) -> Matrix:
        """Matrix of ad(X_i) on h in the generator basis."""
        c = self.structure_constants()
        d = self.dim
        return Matrix.from_entries(d, d, ((k, j, c[i][j][k]) for j in range(d) for k in range(d) if c[i][j][k]))

    # --- derived representations -------------------------------------------

    def canonical(self) -> "Representation":
        """Same algebra with the reduced row-echelon basis of h as generators.

        That basis is homogeneous for every diagonal grading that h
        respects, which lets the Spencer maps split into blocks.
        """
        n = self.n
        gens = [Matrix.from_entries(n, n, ((k // n, k % n, v) for k, v in row.items())) for row in self.span().basis_rows()]
        return Representation(gens, self.name, self.structures, self.meta, n=n, validate=False)

    def change_basis(self, g: Matrix, g_inv: Matrix | None = None) -> "Representation":
        """Conjugate everything by g: X -> g X g^-1 (a change of basis of m)."""
        if g_inv is None:
            g_inv = inverse(g)
        gens = [g @ x @ g_inv for x in self.generators]
        st = {k: g @ s @ g_inv for k, s in self.structures.items()}
        return Representation(gens, self.name, st, self.meta, n=self.n, validate=False)

    def with_generators(self, gens: Sequence[Matrix], name: str | None = None) -> "Representation":
        return Representation(gens, name or self.name, self.structures, self.meta, n=self.n)

    def is_complex_algebra(self) -> bool:
        """True when a tagged J exists and h is closed under X -> JX (h is a complex Lie algebra)."""
        j = self.structures.get("J")
        if j is None:
            return False
        sp = self.span()
        return all(sp.contains(_flat(j @ x)) for x in self.generators)


def inverse(g: Matrix) -> Matrix:
    n = g.nrows
    if g.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    from ..linalg import dense_rref

    rows = [list(r) + [Fraction(int(i == k)) for k in range(n)] for i, r in enumerate(g.tolist())]
    red, piv = dense_rref(rows)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return Matrix.from_rows([r[n:] for r in red[:n]], n).to_sparse()


# ----------------------------------------------------------------------------
# induced actions on tensor spaces
# ----------------------------------------------------------------------------


def wedge_basis(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))


def sym_basis(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(n), k))


def _sort_sign(t: list[int]) -> tuple[tuple[int, ...], int]:
    t = list(t)
    sign = 1
    for i in range(1, len(t)):
        j = i
        while j > 0 and t[j - 1] > t[j]:
            t[j - 1], t[j] = t[j], t[j - 1]
            sign = -sign
            j -= 1
    return tuple(t), sign


def wedge_action(m: Matrix, k: int) -> Matrix:
    """Derivation action of ``m`` (acting on V) on Lambda^k V, basis of increasing tuples."""
    n = m.nrows
    basis = wedge_basis(n, k)
    index = {t: i for i, t in enumerate(basis)}
    cols: dict[int, list[tuple[int, Fraction]]] = {}
    for i, j, v in m.items():
        cols.setdefault(j, []).append((i, v))
    entries = []
    for c, t in enumerate(basis):
        for p, j in enumerate(t):
            for i, v in cols.get(j, ()):
                if i != j and i in t:
                    continue
                new = list(t)
                new[p] = i
                s, sign = _sort_sign(new)
                entries.append((index[s], c, sign * v))
    return Matrix.from_entries(len(basis), len(basis), entries)


def sym_action(m: Matrix, k: int) -> Matrix:
    """Derivation action of ``m`` on S^k V with the (unnormalized) monomial basis."""
    n = m.nrows
    basis = sym_basis(n, k)
    index = {t: i for i, t in enumerate(basis)}
    cols: dict[int, list[tuple[int, Fraction]]] = {}
    for i, j, v in m.items():
        cols.setdefault(j, []).append((i, v))
    entries = []
    for c, t in enumerate(basis):
        for p, j in enumerate(t):
            for i, v in cols.get(j, ()):
                new = list(t)
                new[p] = i
                entries.append((index[tuple(sorted(new))], c, v))
    return Matrix.from_entries(len(basis), len(basis), entries)


def dual_action(m: Matrix) -> Matrix:
    return m.transpose().scale(-1)


# ----------------------------------------------------------------------------
# forms
# ----------------------------------------------------------------------------


class FormTensor:
    """A covariant k-form on Q^n, alternating or symmetric.

    Components are stored on sorted index tuples: strictly increasing for
    alternating forms, nondecreasing for symmetric ones.  The stored value is
    the value of the form on the corresponding basis vectors.
    """

    def __init__(self, degree: int, n: int, components: Mapping[tuple[int, ...], object], symmetric: bool = False):
        self.degree = degree
        self.n = n
        self.symmetric = symmetric
        comps = {}
        for idx, v in components.items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 0 <= i < n for i in idx):
                raise ValueError(f"index {idx} inconsistent with degree {degree} on Q^{n}")
            if symmetric:
                key = tuple(sorted(idx))
                sign = 1
            else:
                if len(set(idx)) < len(idx):
                    raise ValueError(f"repeated index {idx} in an alternating form")
                key, sign = _sort_sign(list(idx))
            v = as_scalar(v) * sign
            if v:
                comps[key] = comps.get(key, 0) + v
        self.components = {k: v for k, v in comps.items() if v}

    def __call__(self, *idx: int) -> Fraction:
        if self.symmetric:
            return self.components.get(tuple(sorted(idx)), Fraction(0))
        if len(set(idx)) < len(idx):
            return Fraction(0)
        key, sign = _sort_sign(list(idx))
        return sign * self.components.get(key, Fraction(0))

    def index_set(self) -> list[tuple[int, ...]]:
        return sym_basis(self.n, self.degree) if self.symmetric else wedge_basis(self.n, self.degree)

    @classmethod
    def from_matrix(cls, b: Matrix) -> "FormTensor":
        """Bilinear form with Gram matrix ``b`` (must be symmetric or skew)."""
        n = b.nrows
        if b == b.transpose():
            return cls(2, n, {(i, j): b[i, j] for i in range(n) for j in range(i, n)}, symmetric=True)
        if b == b.transpose().scale(-1):
            return cls(2, n, {(i, j): b[i, j] for i in range(n) for j in range(i + 1, n)})
        raise ValueError("Gram matrix is neither symmetric nor skew")

    def annihilator_equations(self) -> list[dict[int, Fraction]]:
        """Rows expressing A.phi = 0 as linear conditions on the entries A[m][j] (index m*n+j)."""
        n = self.n
        rows = []
        for idx in self.index_set():
            row: dict[int, Fraction] = {}
            for p, j in enumerate(idx):
                for m in range(n):
                    t = list(idx)
                    t[p] = m
                    v = self(*t)
                    if v:
                        key = m * n + j
                        row[key] = row.get(key, 0) - v
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
        return rows


def annihilator_algebra(forms: Sequence[FormTensor], n: int, commuting_with: Sequence[Matrix] = ()) -> list[Matrix]:
    """Basis of {A in gl(n) : A.phi = 0 for each form, [A, C] = 0 for each C}."""
    rows = []
    for f in forms:
        if f.n != n:
            raise ValueError("form dimension mismatch")
        rows.extend(f.annihilator_equations())
    for c in commuting_with:
        # (AC - CA)[i][j] = sum_k A[i][k] C[k][j] - C[i][k] A[k][j]
        for i in range(n):
            for j in range(n):
                row: dict[int, Fraction] = {}
                for k in range(n):
                    if c[k, j]:
                        row[i * n + k] = row.get(i * n + k, 0) + c[k, j]
                    if c[i, k]:
                        row[k * n + j] = row.get(k * n + j, 0) - c[i, k]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    sol = kernel_of_rows(rows, n * n)
    return [Matrix.from_entries(n, n, ((k // n, k % n, v) for k, v in r.items())) for r in sol.basis_rows()]
