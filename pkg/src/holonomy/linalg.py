"""Exact rational linear algebra.

Everything here works over Q with arbitrary-precision integers.  Matrices
come in a dense mode (list of rows of ``Fraction``) and a sparse mode
(dict of row dicts, no stored zeros).  The workhorse is an incremental
Gauss-Jordan elimination on primitive integer rows, run independently on
each connected block of the sparse matrix.  A plain dense ``Fraction``
elimination is kept separately as a cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Scalar = Fraction


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


class DimensionError(ValueError):
    """Raised when operands live in spaces of different dimension."""


# ----------------------------------------------------------------------------
# Matrix
# ----------------------------------------------------------------------------


class Matrix:
    """Immutable rational matrix.

    ``mode`` is ``"sparse"`` (row -> {col: value}) or ``"dense"``.  Both
    modes expose the same interface and compare equal entrywise.
    """

    __slots__ = ("nrows", "ncols", "mode", "_rows")

    def __init__(self, nrows: int, ncols: int, rows, mode: str = "sparse"):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix shape")
        self.nrows = nrows
        self.ncols = ncols
        self.mode = mode
        if mode == "sparse":
            clean = {}
            for i, row in rows.items():
                if not 0 <= i < nrows:
                    raise IndexError(f"row {i} out of range")
                r = {}
                for j, v in row.items():
                    if not 0 <= j < ncols:
                        raise IndexError(f"column {j} out of range")
                    if v:
                        r[j] = as_scalar(v)
                if r:
                    clean[i] = r
            self._rows = clean
        elif mode == "dense":
            rows = [[as_scalar(v) for v in row] for row in rows]
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError("dense rows do not match declared shape")
            self._rows = rows
        else:
            raise ValueError(f"unknown matrix mode {mode!r}")

    # construction -----------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows, mode="dense")

    @classmethod
    def from_dict(cls, nrows: int, ncols: int, rows: Mapping[int, Mapping[int, object]]) -> "Matrix":
        return cls(nrows, ncols, dict(rows), mode="sparse")

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]) -> "Matrix":
        rows: dict[int, dict[int, Fraction]] = {}
        for i, j, v in entries:
            r = rows.setdefault(i, {})
            r[j] = r.get(j, 0) + as_scalar(v)
        return cls(nrows, ncols, rows, mode="sparse")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols, {}, mode="sparse")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: 1} for i in range(n)}, mode="sparse")

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, {i: {i: v} for i, v in enumerate(values)}, mode="sparse")

    # access ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError((i, j))
        if self.mode == "dense":
            return self._rows[i][j]
        return self._rows.get(i, {}).get(j, Fraction(0))

    def row_dict(self, i: int) -> dict[int, Fraction]:
        """Nonzero entries of row ``i`` (a fresh dict)."""
        if self.mode == "dense":
            return {j: v for j, v in enumerate(self._rows[i]) if v}
        return dict(self._rows.get(i, {}))

    def row_dicts(self) -> list[dict[int, Fraction]]:
        return [self.row_dict(i) for i in range(self.nrows)]

    def items(self):
        """Yield ``(i, j, value)`` for every nonzero entry, row-major."""
        if self.mode == "dense":
            for i, row in enumerate(self._rows):
                for j, v in enumerate(row):
                    if v:
                        yield i, j, v
        else:
            for i in sorted(self._rows):
                row = self._rows[i]
                for j in sorted(row):
                    yield i, j, row[j]

    @property
    def nnz(self) -> int:
        return sum(1 for _ in self.items())

    def to_dense(self) -> "Matrix":
        if self.mode == "dense":
            return self
        return Matrix(self.nrows, self.ncols, self.tolist(), mode="dense")

    def to_sparse(self) -> "Matrix":
        if self.mode == "sparse":
            return self
        return Matrix(self.nrows, self.ncols, {i: self.row_dict(i) for i in range(self.nrows)})

    def tolist(self) -> list[list[Fraction]]:
        if self.mode == "dense":
            return [list(r) for r in self._rows]
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return list(self.items()) == list(other.items())

    def __hash__(self):
        return hash((self.shape, tuple(self.items())))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz}, mode={self.mode})"

    # arithmetic -------------------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix.from_entries(self.ncols, self.nrows, ((j, i, v) for i, j, v in self.items()))

    T = property(transpose)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix.from_entries(self.nrows, self.ncols, [*self.items(), *other.items()])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix.from_entries(self.nrows, self.ncols, ((i, j, c * v) for i, j, v in self.items()))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        right = {i: other.row_dict(i) for i in range(other.nrows)}
        rows: dict[int, dict[int, Fraction]] = {}
        for i in range(self.nrows):
            acc: dict[int, Fraction] = {}
            for k, a in self.row_dict(i).items():
                for j, b in right[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            if acc:
                rows[i] = acc
        return Matrix(self.nrows, other.ncols, rows)

    def apply(self, vec: Sequence) -> list[Fraction]:
        """Matrix-vector product with a dense vector."""
        if len(vec) != self.ncols:
            raise DimensionError("vector length mismatch")
        out = [Fraction(0)] * self.nrows
        for i, j, v in self.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def flatten(self) -> list[Fraction]:
        """Row-major coordinates of the matrix as a vector in Q^(rows*cols)."""
        out = [Fraction(0)] * (self.nrows * self.ncols)
        for i, j, v in self.items():
            out[i * self.ncols + j] = v
        return out

    @classmethod
    def unflatten(cls, vec: Sequence, nrows: int, ncols: int) -> "Matrix":
        return cls.from_entries(nrows, ncols, ((k // ncols, k % ncols, v) for k, v in enumerate(vec) if v))

    def is_zero(self) -> bool:
        return not any(True for _ in self.items())


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    entries = []
    r0 = c0 = 0
    for b in blocks:
        entries.extend((r0 + i, c0 + j, v) for i, j, v in b.items())
        r0 += b.nrows
        c0 += b.ncols
    return Matrix.from_entries(r0, c0, entries)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return Matrix.from_entries(
        a.nrows * b.nrows,
        a.ncols * b.ncols,
        ((i * b.nrows + k, j * b.ncols + l, u * v) for i, j, u in a.items() for k, l, v in b.items()),
    )


# ----------------------------------------------------------------------------
# Sparse fraction-free Gauss-Jordan
# ----------------------------------------------------------------------------


def _primitive(row: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row (content 1)."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    g = 0
    for j, v in row.items():
        if v:
            iv = int(v * den) if den != 1 or isinstance(v, Fraction) else int(v)
            out[j] = iv
            g = gcd(g, iv)
    if g > 1:
        for j in out:
            out[j] //= g
    return out


def _eliminate(row: dict[int, int], piv: dict[int, int], col: int) -> dict[int, int]:
    """Return a primitive integer combination of ``row`` and ``piv`` with ``col`` cleared."""
    a = piv[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {j: a * v for j, v in row.items()} if a != 1 else dict(row)
    for j, v in piv.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    c = 0
    for v in out.values():
        c = gcd(c, v)
        if c == 1:
            break
    if c > 1:
        for j in out:
            out[j] //= c
    return out


def _components(rows: list[dict[int, int]], ncols: int) -> list[tuple[list[int], list[int]]]:
    """Group rows and columns into connected blocks of the bipartite support graph."""
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        it = iter(row)
        first = next(it, None)
        if first is None:
            continue
        r0 = find(first)
        for j in it:
            rj = find(j)
            if rj != r0:
                parent[rj] = r0
    row_groups: dict[int, list[int]] = {}
    for k, row in enumerate(rows):
        if row:
            row_groups.setdefault(find(next(iter(row))), []).append(k)
    col_groups: dict[int, list[int]] = {}
    for j in range(ncols):
        col_groups.setdefault(find(j), []).append(j)
    return [(row_groups.get(root, []), cols) for root, cols in col_groups.items()]


def _gauss_jordan_block(rows: list[dict[int, int]], reverse: bool) -> dict[int, dict[int, int]]:
    """Fully reduced echelon form of integer rows, keyed by pivot column.

    The pivot of each row is its smallest column (or largest when
    ``reverse``), so the result is the unique reduced row-echelon form for
    that column order, up to positive scaling of each row.
    """
    pivots: dict[int, dict[int, int]] = {}
    occurs: dict[int, set[int]] = {}  # column -> pivot columns whose rows touch it
    lead = max if reverse else min
    for row in sorted(rows, key=len):
        r = dict(row)
        for c in [c for c in r if c in pivots]:
            if c in r:
                r = _eliminate(r, pivots[c], c)
        if not r:
            continue
        c = lead(r)
        if r[c] < 0:
            r = {j: -v for j, v in r.items()}
        for pc in list(occurs.get(c, ())):
            old = pivots[pc]
            new = _eliminate(old, r, c)
            if new[pc] < 0:
                new = {j: -v for j, v in new.items()}
            for j in old:
                if j not in new and j != pc:
                    occurs[j].discard(pc)
            for j in new:
                if j != pc and j not in old:
                    occurs.setdefault(j, set()).add(pc)
            pivots[pc] = new
        occurs.pop(c, None)
        pivots[c] = r
        for j in r:
            if j != c:
                occurs.setdefault(j, set()).add(c)
    return pivots


def echelon(rows: Sequence[Mapping[int, object]], ncols: int, reverse: bool = False) -> dict[int, dict[int, int]]:
    """Integer reduced echelon form of sparse rational rows, pivot column -> row.

    Work is split across connected blocks of the support graph; each block
    is reduced independently, which is exact because blocks share no
    columns.
    """
    irows = [_primitive(r) for r in rows]
    irows = [r for r in irows if r]
    if not irows:
        return {}
    out: dict[int, dict[int, int]] = {}
    comps = _components(irows, ncols)
    for row_ids, _cols in comps:
        if row_ids:
            out.update(_gauss_jordan_block([irows[k] for k in row_ids], reverse))
    return out


def _normalize(piv: dict[int, dict[int, int]]) -> list[tuple[int, dict[int, Fraction]]]:
    out = []
    for c in sorted(piv):
        row = piv[c]
        p = row[c]
        out.append((c, {j: Fraction(v, p) for j, v in row.items()}))
    return out


# ----------------------------------------------------------------------------
# Dense oracle
# ----------------------------------------------------------------------------


def dense_rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Textbook Gauss-Jordan over ``Fraction``; returns (rref rows, pivot columns)."""
    m = [[as_scalar(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def dense_rank(rows: Sequence[Sequence]) -> int:
    return len(dense_rref(rows)[1])


def dense_kernel(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Kernel basis of a dense matrix (one vector per free column)."""
    red, pivots = dense_rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


# ----------------------------------------------------------------------------
# Subspace and LinearMap
# ----------------------------------------------------------------------------


class Subspace:
    """A linear subspace of Q^ambient_dim in canonical reduced row-echelon form.

    Two subspaces are equal exactly when their basis matrices are identical.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, rref_rows: Sequence[tuple[int, Mapping[int, Fraction]]]):
        # trusted constructor: rows must already be canonical
        self.ambient_dim = ambient_dim
        self._rows = tuple(dict(r) for _, r in rref_rows)
        self._pivots = tuple(c for c, _ in rref_rows)

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if isinstance(v, Mapping):
                rows.append(v)
            else:
                if len(v) != ambient_dim:
                    raise DimensionError(f"vector of length {len(v)} in ambient {ambient_dim}")
                rows.append({j: x for j, x in enumerate(v) if x})
        return cls(ambient_dim, _normalize(echelon(rows, ambient_dim)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [(i, {i: Fraction(1)}) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def basis(self) -> Matrix:
        return Matrix(len(self._rows), self.ambient_dim, dict(enumerate(self._rows)))

    def basis_rows(self) -> list[dict[int, Fraction]]:
        return [dict(r) for r in self._rows]

    def vectors(self) -> list[list[Fraction]]:
        out = []
        for r in self._rows:
            v = [Fraction(0)] * self.ambient_dim
            for j, x in r.items():
                v[j] = x
            out.append(v)
        return out

    def coordinates(self, v) -> list[Fraction] | None:
        """Coordinates of ``v`` in the canonical basis, or None if ``v`` is not in the space."""
        vd = dict(v) if isinstance(v, Mapping) else {j: as_scalar(x) for j, x in enumerate(v) if x}
        coeffs = [vd.get(c, Fraction(0)) for c in self._pivots]
        resid = dict(vd)
        for a, row in zip(coeffs, self._rows):
            if a:
                for j, x in row.items():
                    w = resid.get(j, 0) - a * x
                    if w:
                        resid[j] = w
                    else:
                        resid.pop(j, None)
        if resid:
            return None
        return coeffs

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other._rows)

    def annihilator(self) -> "Subspace":
        """Vectors y with y . v = 0 for every v in the space."""
        return kernel_of_rows(self._rows, self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._pivots == other._pivots and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient_dim, self._pivots, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class LinearMap:
    """A linear map Q^domain_dim -> Q^codomain_dim given by its matrix."""

    __slots__ = ("domain_dim", "codomain_dim", "matrix")

    def __init__(self, domain_dim: int, codomain_dim: int, matrix: Matrix):
        if matrix.shape != (codomain_dim, domain_dim):
            raise DimensionError(f"matrix shape {matrix.shape} != ({codomain_dim}, {domain_dim})")
        self.domain_dim = domain_dim
        self.codomain_dim = codomain_dim
        self.matrix = matrix

    @classmethod
    def from_matrix(cls, matrix: Matrix) -> "LinearMap":
        return cls(matrix.ncols, matrix.nrows, matrix)

    def __call__(self, v):
        return self.matrix.apply(v)

    def __repr__(self) -> str:
        return f"LinearMap({self.domain_dim} -> {self.codomain_dim})"


def kernel_of_rows(rows: Sequence[Mapping[int, object]], ncols: int) -> Subspace:
    """Solution space of {x : r . x = 0 for all rows r}, canonical.

    Eliminating with the largest column as pivot leaves the free columns as
    the leading positions of the solution vectors, so the basis read off is
    already the reduced row-echelon form.
    """
    piv = echelon(rows, ncols, reverse=True)
    occurs: dict[int, list[int]] = {}
    for pc, row in piv.items():
        for j in row:
            if j != pc:
                occurs.setdefault(j, []).append(pc)
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: Fraction(1)}
        for pc in occurs.get(f, ()):
            row = piv[pc]
            v[pc] = Fraction(-row[f], row[pc])
        basis.append((f, v))
    return Subspace(ncols, basis)


def rank(f) -> int:
    m = f.matrix if isinstance(f, LinearMap) else f
    return len(echelon(m.row_dicts(), m.ncols))


def kernel(f) -> Subspace:
    m = f.matrix if isinstance(f, LinearMap) else f
    return kernel_of_rows(m.row_dicts(), m.ncols)


def image(f) -> Subspace:
    m = f.matrix if isinstance(f, LinearMap) else f
    cols: dict[int, dict[int, Fraction]] = {}
    for i, j, v in m.items():
        cols.setdefault(j, {})[i] = v
    return Subspace.span(cols.values(), m.nrows)


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("ambient dimension mismatch")
    return Subspace.span(a.basis_rows() + b.basis_rows(), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    eqs = a.annihilator().basis_rows() + b.annihilator().basis_rows()
    return kernel_of_rows(eqs, a.ambient_dim)


def restrict(f: LinearMap, dom: Subspace) -> LinearMap:
    """The map on coordinates of ``dom``'s canonical basis."""
    if dom.ambient_dim != f.domain_dim:
        raise DimensionError(f"subspace ambient {dom.ambient_dim} != domain {f.domain_dim}")
    cols = {}
    m = f.matrix
    mcols: dict[int, dict[int, Fraction]] = {}
    for i, j, v in m.items():
        mcols.setdefault(j, {})[i] = v
    for k, row in enumerate(dom.basis_rows()):
        acc: dict[int, Fraction] = {}
        for j, x in row.items():
            for i, v in mcols.get(j, {}).items():
                acc[i] = acc.get(i, 0) + x * v
        cols[k] = {i: v for i, v in acc.items() if v}
    entries = ((i, k, v) for k, col in cols.items() for i, v in col.items())
    return LinearMap(dom.dim, f.codomain_dim, Matrix.from_entries(f.codomain_dim, dom.dim, entries))


def solve_in_span(vectors: Sequence[Mapping[int, object]], target: Mapping[int, object], ncols: int):
    """Coefficients c with sum c_i v_i = target, or None."""
    rows = [dict(v) for v in vectors]
    cols: dict[int, dict[int, object]] = {}
    for i, v in enumerate(rows):
        for j, x in v.items():
            cols.setdefault(j, {})[i] = x
    # augmented system: unknown index len(rows) holds -1 * target
    aug = len(rows)
    eqs = []
    for j in set(cols) | set(target):
        e = dict(cols.get(j, {}))
        t = target.get(j, 0)
        if t:
            e[aug] = -as_scalar(t)
        eqs.append(e)
    sol = kernel_of_rows(eqs, aug + 1)
    for row in sol.basis_rows():
        if aug in row:
            s = row[aug]
            return [row.get(i, Fraction(0)) / s for i in range(aug)]
    return None
