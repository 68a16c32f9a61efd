"""Explicit rational models of the candidate holonomy algebras."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from ..linalg import Matrix, Subspace, block_diagonal, kernel_of_rows, kron
from .core import (
    FormTensor,
    Representation,
    RepresentationError,
    _flat,
    annihilator_algebra,
    dual_action,
    sym_action,
    wedge_action,
)


def _unit(n: int, i: int, j: int, v=1) -> Matrix:
    return Matrix.from_entries(n, n, [(i, j, v)])


def _J(n: int) -> Matrix:
    """Complex structure on Q^(2n) = C^n, coordinates (real parts, imaginary parts)."""
    return Matrix.from_entries(2 * n, 2 * n, [(i + n, i, 1) for i in range(n)] + [(i, i + n, -1) for i in range(n)])


def realify_complex(re: Matrix, im: Matrix) -> Matrix:
    """The real 2n x 2n matrix of the complex matrix re + i*im."""
    n = re.nrows
    entries = []
    for i, j, v in re.items():
        entries += [(i, j, v), (i + n, j + n, v)]
    for i, j, v in im.items():
        entries += [(i + n, j, v), (i, j + n, -v)]
    return Matrix.from_entries(2 * n, 2 * n, entries)


# ----------------------------------------------------------------------------
# sl(2)
# ----------------------------------------------------------------------------


def sl2_irrep(k: int) -> Representation:
    """sl(2) = span{H, E, F} acting on binary forms of degree k.

    Basis x^(k-i) y^i, i = 0..k; E = x d/dy, F = y d/dx, H = [E, F].
    """
    if not isinstance(k, int) or k < 1:
        raise RepresentationError("sl2_irrep needs k >= 1 (V_0 is a trivial summand)")
    n = k + 1
    h = Matrix.diagonal([k - 2 * i for i in range(n)])
    e = Matrix.from_entries(n, n, [(i - 1, i, i) for i in range(1, n)])
    f = Matrix.from_entries(n, n, [(i + 1, i, k - i) for i in range(n - 1)])
    return Representation([h, e, f], f"sl(2,R) on V_{k}", meta={"basis": ("H", "E", "F")})


# ----------------------------------------------------------------------------
# classical families
# ----------------------------------------------------------------------------


def _so_pq(p: int, q: int) -> list[Matrix]:
    m = p + q
    eta = [1] * p + [-1] * q
    return [
        Matrix.from_entries(m, m, [(i, j, eta[i]), (j, i, -eta[j])]) for i in range(m) for j in range(i + 1, m)
    ]


def _sp(n: int) -> list[Matrix]:
    # A = Omega S with S symmetric, Omega = [[0, I], [-I, 0]]
    m = 2 * n
    omega = symplectic_matrix(n)
    out = []
    for i in range(m):
        for j in range(i, m):
            s = Matrix.from_entries(m, m, [(i, j, 1), (j, i, 1)] if i != j else [(i, i, 1)])
            out.append(omega @ s)
    return out


def symplectic_matrix(n: int) -> Matrix:
    return Matrix.from_entries(2 * n, 2 * n, [(i, i + n, 1) for i in range(n)] + [(i + n, i, -1) for i in range(n)])


def _sl(n: int) -> list[Matrix]:
    gens = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    gens += [Matrix.from_entries(n, n, [(i, i, 1), (i + 1, i + 1, -1)]) for i in range(n - 1)]
    return gens


def _u_pq(p: int, q: int, special: bool) -> list[Matrix]:
    """u(p,q) (or su(p,q)) as complex matrices A with A* eta + eta A = 0, realified."""
    m = p + q
    eta = [1] * p + [-1] * q
    z = Matrix.zeros(m, m)
    gens = []
    for i in range(m):
        for j in range(i + 1, m):
            # real part eta*(E_ij - E_ji); imaginary part eta*(E_ij + E_ji)
            gens.append(realify_complex(Matrix.from_entries(m, m, [(i, j, eta[i]), (j, i, -eta[j])]), z))
            gens.append(realify_complex(z, Matrix.from_entries(m, m, [(i, j, eta[i]), (j, i, eta[j])])))
    if special:
        gens += [realify_complex(z, Matrix.from_entries(m, m, [(i, i, 1), (i + 1, i + 1, -1)])) for i in range(m - 1)]
    else:
        gens += [realify_complex(z, _unit(m, i, i)) for i in range(m)]
    return gens


def _so_star(n: int) -> tuple[list[Matrix], dict[str, Matrix]]:
    """so*(2n) = so(n, H) acting on C^(2n) = R^(4n).

    Cut out of gl(4n, R) as the complex-linear maps preserving the complex
    bilinear form z^T w and the sesquilinear form z^* Jn w, where
    Jn = [[0, -I], [I, 0]] on C^(2n).
    """
    m = 2 * n
    big = 2 * m
    jc = _J(m)
    forms = []
    # z^T w = (x + iy)^T (u + iv): real part x.u - y.v, imaginary part x.v + y.u
    re_b = {(i, i): 1 for i in range(m)}
    re_b.update({(i + m, i + m): -1 for i in range(m)})
    forms.append(FormTensor(2, big, re_b, symmetric=True))
    forms.append(FormTensor(2, big, {(i, i + m): 1 for i in range(m)}, symmetric=True))
    # h(z, w) = z^* Jn w with Jn e_{k+n} = e_k, Jn e_k = -e_{k+n}
    jn = Matrix.from_entries(m, m, [(k, k + n, -1) for k in range(n)] + [(k + n, k, 1) for k in range(n)])
    re_h = {}
    im_h = {}
    # z^* Jn w = (x - iy)^T Jn (u + iv): real x^T Jn u + y^T Jn v, imaginary x^T Jn v - y^T Jn u
    for a, b, v in jn.items():
        re_h[(a, b)] = re_h.get((a, b), 0) + v
        re_h[(a + m, b + m)] = re_h.get((a + m, b + m), 0) + v
        im_h[(a, b + m)] = im_h.get((a, b + m), 0) + v
        im_h[(a + m, b)] = im_h.get((a + m, b), 0) - v
    forms.append(_bilinear(big, re_h))
    forms.append(_bilinear(big, im_h))
    return annihilator_algebra(forms, big, commuting_with=[jc]), {"J": jc}


def quaternion_right(a: int, copies: int = 1) -> Matrix:
    """Right multiplication by i, j or k (a = 1, 2, 3) on H^copies = Q^(4 copies), basis (1, i, j, k)."""
    phi = g2_form()
    block = [(a, 0, 1), (0, a, -1)]
    for b in range(1, 4):
        if b != a:
            for c in range(1, 4):
                v = phi(b - 1, a - 1, c - 1)
                if v:
                    block.append((c, b, v))
    return Matrix.from_entries(4 * copies, 4 * copies, [(4 * t + i, 4 * t + j, v) for t in range(copies) for i, j, v in block])


def _sp_quaternionic(p: int, q: int) -> tuple[list[Matrix], dict[str, Matrix]]:
    """sp(p,q): quaternion-linear maps of H^(p+q) skew for the form of signature (4p, 4q)."""
    big = 4 * (p + q)
    eta = FormTensor(2, big, {(i, i): (1 if i < 4 * p else -1) for i in range(big)}, symmetric=True)
    st = {"I": quaternion_right(1, p + q), "J": quaternion_right(2, p + q), "K": quaternion_right(3, p + q)}
    gens = annihilator_algebra([eta], big, commuting_with=[st["I"], st["J"]])
    return gens, st


def _bilinear(n: int, entries: dict[tuple[int, int], object]) -> FormTensor:
    gram = Matrix.from_entries(n, n, [(a, b, v) for (a, b), v in entries.items()])
    return FormTensor.from_matrix(gram)


def classical_algebra(family: str, **params) -> Representation:
    """Standard representation of a classical family.

    Families: ``so`` (p, q), ``sp`` (n), ``sl`` (n), ``gl`` (n),
    ``u`` (p, q), ``su`` (p, q), ``so_star`` (n), ``so_complex`` (n).
    The unitary and complex families come realified with their J.
    """
    def need(*names):
        for k in names:
            v = params.get(k)
            if not isinstance(v, int) or v < 0:
                raise RepresentationError(f"{family}: parameter {k} must be a nonnegative integer, got {v!r}")
        return [params[k] for k in names]

    if family == "so":
        p, q = need("p", "q")
        if p + q < 2:
            raise RepresentationError("so(p,q) needs p + q >= 2")
        return Representation(_so_pq(p, q), f"so({p},{q})", meta={"form": "quadratic"})
    if family == "sp":
        (n,) = need("n")
        if n < 1:
            raise RepresentationError("sp(n) needs n >= 1")
        return Representation(_sp(n), f"sp({n},R)", meta={"form": "symplectic"})
    if family in ("sl", "gl"):
        (n,) = need("n")
        if n < 1 or (family == "sl" and n < 2):
            raise RepresentationError(f"{family}(n) needs n >= {2 if family == 'sl' else 1}")
        gens = _sl(n) if n > 1 else []
        if family == "gl":
            gens = gens + [Matrix.identity(n)]
        return Representation(gens, f"{family}({n},R)", n=n)
    if family in ("u", "su"):
        p, q = need("p", "q")
        if p + q < 1 or (family == "su" and p + q < 2):
            raise RepresentationError(f"{family}(p,q) needs p + q >= {1 if family == 'u' else 2}")
        return Representation(_u_pq(p, q, family == "su"), f"{family}({p},{q})", structures={"J": _J(p + q)})
    if family == "so_star":
        (n,) = need("n")
        if n < 2:
            raise RepresentationError("so*(2n) needs n >= 2")
        gens, st = _so_star(n)
        if len(gens) != n * (2 * n - 1):
            raise RepresentationError(f"so*({2 * n}) came out with dimension {len(gens)}")
        return Representation(gens, f"so*({2 * n})", structures=st)
    if family == "so_complex":
        (n,) = need("n")
        if n < 2:
            raise RepresentationError("so(n,C) needs n >= 2")
        z = Matrix.zeros(n, n)
        gens = []
        for a in _so_pq(n, 0):
            gens += [realify_complex(a, z), realify_complex(z, a)]
        return Representation(gens, f"so({n},C)", structures={"J": _J(n)})
    if family in ("sp_quaternionic", "sp_sp1"):
        p, q = need("p", "q")
        if p + q < 1:
            raise RepresentationError(f"{family} needs p + q >= 1")
        gens, st = _sp_quaternionic(p, q)
        name = f"sp({p},{q})"
        if family == "sp_sp1":
            gens = gens + [st["I"], st["J"], st["K"]]
            name += ".sp(1)"
            st = {}
        return Representation(gens, name, structures=st)
    raise RepresentationError(f"unknown classical family {family!r}")


# ----------------------------------------------------------------------------
# forms and stabilizers
# ----------------------------------------------------------------------------

# e123 + e145 + e167 + e246 - e257 - e347 - e356, indices shifted to 0..6
G2_TERMS = [((0, 1, 2), 1), ((0, 3, 4), 1), ((0, 5, 6), 1), ((1, 3, 5), 1), ((1, 4, 6), -1), ((2, 3, 6), -1), ((2, 4, 5), -1)]


def g2_form(split: bool = False) -> FormTensor:
    """The associative 3-form on Q^7 with coefficients +-1.

    ``split=True`` gives the form obtained by e_j -> i e_j for j = 4..7
    (1-based), a real form whose stabilizer is the split real form of G2.
    """
    terms = {}
    for t, v in G2_TERMS:
        if split and sum(1 for i in t if i >= 3) == 2:
            v = -v
        terms[t] = v
    return FormTensor(3, 7, terms)


def stabilizer_algebra(phi, name: str = "") -> Representation:
    """Annihilator {A in gl(n) : A.phi = 0} of one form or a list of forms."""
    forms = phi if isinstance(phi, (list, tuple)) else [phi]
    n = forms[0].n
    gens = annihilator_algebra(forms, n)
    rep = Representation(gens, name or f"stab(deg {forms[0].degree} form on Q^{n})", n=n, validate=False)
    if not rep.is_bracket_closed():
        raise RepresentationError("stabilizer failed the bracket-closure check")
    rep.validate()
    return rep


# ----------------------------------------------------------------------------
# Clifford algebras and spin representations
# ----------------------------------------------------------------------------


def octonion_left(a: int) -> Matrix:
    """Left multiplication by the imaginary unit e_a (a = 1..7) on O = Q^8, basis (1, e_1..e_7).

    Multiplication table from the G2 form: e_i e_j = sum_k phi(i,j,k) e_k.
    """
    phi = g2_form()
    entries = [(a, 0, 1), (0, a, -1)]
    for b in range(1, 8):
        if b == a:
            continue
        for c in range(1, 8):
            v = phi(a - 1, b - 1, c - 1)
            if v:
                entries.append((c, b, v))
    return Matrix.from_entries(8, 8, entries)


def _restrict_block(m: Matrix, k: int) -> Matrix:
    return Matrix.from_entries(k, k, [(i, j, v) for i, j, v in m.items() if i < k and j < k])


def _clifford_base(p: int, q: int):
    """Real Clifford modules for Cl(p,0) and Cl(0,q) (one of p, q zero).

    Returns (dim, gammas, signs) or None when no base model is available.
    """
    if p == 0 and q == 0:
        return 1, [], []
    if p == 0:
        if q == 1:
            return 2, [_restrict_block(octonion_left(1), 2)], [-1]
        if q <= 3:
            # quaternions span{1, e1, e2, e3} (e1 e2 = e3)
            return 4, [_restrict_block(octonion_left(a), 4) for a in range(1, q + 1)], [-1] * q
        if q <= 7:
            return 8, [octonion_left(a) for a in range(1, q + 1)], [-1] * q
        return None
    if q == 0:
        if p == 1:
            return 1, [Matrix.identity(1)], [1]
        if p == 2:
            return 2, [Matrix.from_entries(2, 2, [(0, 1, 1), (1, 0, 1)]), Matrix.diagonal([1, -1])], [1, 1]
        if p <= 9:
            gam = []
            for a in range(1, 8):
                la = octonion_left(a)
                gam.append(Matrix.from_entries(16, 16, [(i, j + 8, v) for i, j, v in la.items()] + [(i + 8, j, -v) for i, j, v in la.items()]))
            gam.append(Matrix.from_entries(16, 16, [(i, i + 8, 1) for i in range(8)] + [(i + 8, i, 1) for i in range(8)]))
            gam.append(Matrix.diagonal([1] * 8 + [-1] * 8))
            return 16, gam[:p], [1] * p
        return None
    return None


def _double(gammas: list[Matrix], signs: list[int]):
    """Cl(p,q) module on Q^N -> Cl(p+1,q+1) module on Q^2N."""
    s3 = Matrix.diagonal([1, -1])
    s1 = Matrix.from_entries(2, 2, [(0, 1, 1), (1, 0, 1)])
    eps = Matrix.from_entries(2, 2, [(0, 1, 1), (1, 0, -1)])
    n = gammas[0].nrows if gammas else 1
    ident = Matrix.identity(n)
    return [kron(g, s3) for g in gammas] + [kron(ident, s1), kron(ident, eps)], signs + [1, -1]


def clifford_module(p: int, q: int):
    """Real gamma matrices for Cl(p,q): (gammas, signs) with gamma_a^2 = signs[a] Id.

    Built from a small base model by (1,1)-periodicity.  Returns None when the
    base signature has no model here.
    """
    k = min(p, q)
    base = _clifford_base(p - k, q - k)
    if base is None:
        return None
    dim, gam, signs = base
    if not gam and k:
        gam, signs = [], []
    for _ in range(k):
        if not gam:
            s1 = Matrix.from_entries(2, 2, [(0, 1, 1), (1, 0, 1)])
            eps = Matrix.from_entries(2, 2, [(0, 1, 1), (1, 0, -1)])
            gam, signs = [s1, eps], [1, -1]
        else:
            gam, signs = _double(gam, signs)
    # order: positive-square gammas first
    order = sorted(range(len(gam)), key=lambda a: -signs[a])
    return [gam[a] for a in order], [signs[a] for a in order]


def _volume_square(signs: list[int]) -> int:
    n = len(signs)
    s = (-1) ** (n * (n - 1) // 2)
    for x in signs:
        s *= x
    return s


def clifford_spin_rep(p: int, q: int) -> Representation:
    """spin(p,q) = span{gamma_a gamma_b : a < b} on a small real spinor module.

    Uses whichever of Cl(p,q), Cl(q,p) has the smaller real module and
    passes to a half-spin space (volume element eigenspace) when the
    dimension is even and the volume element squares to +1.
    """
    if p < 0 or q < 0 or p + q < 2:
        raise RepresentationError(f"unsupported spin signature ({p},{q}): need p + q >= 2")
    best = None
    for pp, qq in ((p, q), (q, p)):
        mod = clifford_module(pp, qq)
        if mod is None:
            continue
        gam, signs = mod
        dim = gam[0].nrows
        half = (pp + qq) % 2 == 0 and _volume_square(signs) == 1
        size = dim // 2 if half else dim
        if best is None or size < best[0]:
            best = (size, gam, signs, half, (pp, qq))
    if best is None:
        raise RepresentationError(f"unsupported spin signature ({p},{q}): no rational Clifford model")
    _, gam, signs, half, used = best
    n = gam[0].nrows
    gens = []
    labels = []
    for a in range(len(gam)):
        for b in range(a + 1, len(gam)):
            gens.append(gam[a] @ gam[b])
            labels.append((a, b))
    meta = {"signature_used": used, "metric": tuple(signs), "labels": tuple(labels)}
    if half:
        vol = gam[0]
        for g in gam[1:]:
            vol = vol @ g
        sub = kernel_of_rows((vol - Matrix.identity(n)).row_dicts(), n)
        gens = [restrict_to_subspace(g, sub) for g in gens]
        meta["half_spin"] = True
    return Representation(gens, f"spin({p},{q})", meta=meta)


def restrict_to_subspace(x: Matrix, sub: Subspace) -> Matrix:
    """Matrix of x on an invariant subspace, in the coordinates of its canonical basis."""
    k = sub.dim
    entries = []
    for j, row in enumerate(sub.basis_rows()):
        img: dict[int, Fraction] = {}
        for c, v in row.items():
            for i in range(x.nrows):
                w = x[i, c]
                if w:
                    img[i] = img.get(i, 0) + v * w
        coords = sub.coordinates({i: v for i, v in img.items() if v})
        if coords is None:
            raise RepresentationError("subspace is not invariant")
        entries += [(i, j, v) for i, v in enumerate(coords) if v]
    return Matrix.from_entries(k, k, entries)


def subrepresentation(rep: Representation, sub: Subspace, name: str | None = None) -> Representation:
    gens = [restrict_to_subspace(g, sub) for g in rep.generators]
    basis = Subspace.span([_flat(g) for g in gens], sub.dim * sub.dim)
    if basis.dim != len(gens):
        raise RepresentationError("action on the submodule is not faithful")
    return Representation(gens, name or f"{rep.name}|sub{sub.dim}", n=sub.dim)


# ----------------------------------------------------------------------------
# functors
# ----------------------------------------------------------------------------


def _independent(mats: Sequence[Matrix], n: int) -> list[Matrix]:
    sp = None
    out: list[Matrix] = []
    for m in mats:
        trial = Subspace.span([_flat(x) for x in out + [m]], n * n)
        if sp is None or trial.dim > sp.dim:
            out.append(m)
            sp = trial
    return out


def trivial(n: int, like: Representation) -> Representation:
    """The trivial module Q^n for the same abstract algebra as ``like`` (zero matrices)."""
    return Representation([Matrix.zeros(n, n)] * like.dim, f"trivial^{n}", n=n, validate=False)


def functor(op: str, *inputs: Representation, k: int | None = None) -> Representation:
    """Build a new module from existing ones.

    ``dual``, ``sym_power``, ``wedge_power`` act on one input; ``direct_sum``
    pairs generators of inputs of the same algebra; ``tensor_product`` of two
    inputs gives the commuting sum h1 + h2 acting on m1 (x) m2.
    """
    if op in ("dual", "sym_power", "wedge_power"):
        if len(inputs) != 1:
            raise RepresentationError(f"{op} takes one representation")
        (rep,) = inputs
        if op == "dual":
            gens = [dual_action(g) for g in rep.generators]
            return Representation(gens, f"({rep.name})*", n=rep.n, structures={k_: dual_action(s).scale(-1) for k_, s in rep.structures.items()})
        if k is None or k < 1:
            raise RepresentationError(f"{op} needs a power k >= 1")
        act = sym_action if op == "sym_power" else wedge_action
        if op == "wedge_power" and k > rep.n:
            raise RepresentationError(f"wedge power {k} exceeds dimension {rep.n}")
        gens = [act(g, k) for g in rep.generators]
        dim = comb(rep.n + k - 1, k) if op == "sym_power" else comb(rep.n, k)
        label = "S" if op == "sym_power" else "L"
        return Representation(gens, f"{label}^{k}({rep.name})", n=dim)
    if op == "direct_sum":
        if len(inputs) < 2:
            raise RepresentationError("direct_sum takes at least two representations")
        d = inputs[0].dim
        if any(r.dim != d for r in inputs):
            raise RepresentationError("direct_sum needs representations of the same algebra (equal generator counts)")
        gens = [block_diagonal([r.generators[i] for r in inputs]) for i in range(d)]
        n = sum(r.n for r in inputs)
        return Representation(gens, " + ".join(r.name for r in inputs), n=n)
    if op == "tensor_product":
        if len(inputs) != 2:
            raise RepresentationError("tensor_product takes two representations")
        a, b = inputs
        ia, ib = Matrix.identity(a.n), Matrix.identity(b.n)
        gens = [kron(x, ib) for x in a.generators] + [kron(ia, y) for y in b.generators]
        n = a.n * b.n
        return Representation(_independent(gens, n), f"{a.name}.{b.name}", n=n)
    raise RepresentationError(f"unknown functor {op!r}")


def primitive_wedge3(rep: Representation, omega: Matrix) -> Representation:
    """Restriction of Lambda^3 of a symplectic module to the kernel of contraction with omega.

    ``omega`` is the Gram matrix of the invariant 2-form; the contraction
    sends e_i^e_j^e_k to omega_ij e_k - omega_ik e_j + omega_jk e_i.
    """
    from .core import wedge_basis

    n = rep.n
    basis = wedge_basis(n, 3)
    cols = []
    for (i, j, k) in basis:
        v: dict[int, Fraction] = {}
        for coef, t in ((omega[i, j], k), (-omega[i, k], j), (omega[j, k], i)):
            if coef:
                v[t] = v.get(t, 0) + coef
        cols.append(v)
    rows: dict[int, dict[int, Fraction]] = {}
    for c, v in enumerate(cols):
        for t, x in v.items():
            if x:
                rows.setdefault(t, {})[c] = x
    sub = kernel_of_rows(list(rows.values()), len(basis))
    big = functor("wedge_power", rep, k=3)
    return subrepresentation(big, sub, f"L^3_0({rep.name})")


def realify(rep: Representation) -> Representation:
    """View the complexification m (x) C as a real module: X -> diag(X, X) with J."""
    gens = [block_diagonal([g, g]) for g in rep.generators]
    return Representation(gens, f"{rep.name} realified", structures={"J": _J(rep.n)}, n=2 * rep.n)


def complexify(rep: Representation) -> Representation:
    """The complex Lie algebra h (x) C acting on m (x) C, realified: X -> diag(X, X) and J diag(X, X)."""
    j = _J(rep.n)
    base = [block_diagonal([g, g]) for g in rep.generators]
    return Representation(base + [j @ g for g in base], f"{rep.name} complexified", structures={"J": j}, n=2 * rep.n)


def add_center(rep: Representation, z: Matrix, name: str | None = None) -> Representation:
    """Extend h by a central element z (must commute with h and be new)."""
    if z.shape != (rep.n, rep.n):
        raise RepresentationError("center generator has the wrong shape")
    if any(not g.commutator(z).is_zero() for g in rep.generators):
        raise RepresentationError("center generator does not commute with h")
    if rep.span().contains(_flat(z)):
        raise RepresentationError("center generator already lies in h")
    return Representation(list(rep.generators) + [z], name or f"{rep.name} + center", rep.structures, rep.meta, n=rep.n)


def commutant(rep: Representation) -> Subspace:
    """{C in gl(n) : [C, X] = 0 for all generators X}, as a subspace of Q^(n*n)."""
    n = rep.n
    rows = []
    for x in rep.generators:
        for i in range(n):
            for j in range(n):
                row: dict[int, Fraction] = {}
                for k in range(n):
                    if x[k, j]:
                        row[i * n + k] = row.get(i * n + k, 0) + x[k, j]
                    if x[i, k]:
                        row[k * n + j] = row.get(k * n + j, 0) - x[i, k]
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    return kernel_of_rows(rows, n * n)


def invariant_vectors(rep: Representation) -> Subspace:
    rows = [row for g in rep.generators for row in g.row_dicts() if row]
    return kernel_of_rows(rows, rep.n)


def lambda_id_plus_j(rep: Representation, lam) -> Matrix:
    j = rep.structures.get("J")
    if j is None:
        raise RepresentationError("representation has no complex structure J")
    return Matrix.identity(rep.n).scale(Fraction(lam)) + j
