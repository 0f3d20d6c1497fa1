"""Plane-filling curves of degree q+2 from 3x3 matrices.

A matrix A over GF(q) determines the curve
``(x,y,z) A (U,V,W)^t = 0`` with U = y^q z - y z^q, V = z^q x - z x^q,
W = x^q y - x y^q.  This module builds that polynomial, computes the
characteristic and minimal polynomials of A, sorts A into the eight
splitting cases, emits the predicted decomposition in the canonical
coordinates of each case together with the similarity transform that
realizes it, and computes a complete projective-equivalence key.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldElement, FieldSpec, _coerce
from .homog import (
    HomogPoly,
    _mat3_det,
    _mat3_inv,
    _mat3_mul,
    _mat3_transpose,
    _mat3_vec,
)
from .poly import (
    CUBIC_DOUBLE_PLUS_SIMPLE,
    CUBIC_IRREDUCIBLE,
    CUBIC_LINEAR_TIMES_QUADRATIC,
    CUBIC_THREE_DISTINCT,
    CUBIC_TRIPLE,
    UniPoly,
    cubic_shape,
)

CASE_NONSINGULAR = "nonsingular"
CASE_1 = "1"
CASE_2 = "2"
CASE_3_1 = "3.1"
CASE_3_2 = "3.2"
CASE_4_1 = "4.1"
CASE_4_2 = "4.2"
CASE_4_3 = "4.3"

RESIDUAL_AFFINE_FILLING = "affine_filling"
RESIDUAL_MAX_Q_PLUS_1 = "maximal_q_plus_1"
RESIDUAL_MAX_Q = "maximal_q"
RESIDUAL_MAX_Q_MINUS_1 = "maximal_q_minus_1"

CONCURRENT_ALL = "all"
CONCURRENT_ALL_BUT_ONE = "all_but_one"
NOT_CONCURRENT = "not_concurrent"


@dataclass(frozen=True)
class Matrix3:
    """A 3x3 matrix over GF(q), stored as integer-encoded rows."""

    spec: FieldSpec
    rows_int: tuple

    @classmethod
    def from_ints(cls, spec: FieldSpec, values) -> "Matrix3":
        vals = [int(v) for v in values]
        if len(vals) != 9:
            raise ValueError("expected 9 entries, row major")
        if any(not 0 <= v < spec.q for v in vals):
            raise ValueError(f"entries must be encodings in [0, {spec.q})")
        return cls(spec, (tuple(vals[0:3]), tuple(vals[3:6]), tuple(vals[6:9])))

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows) -> "Matrix3":
        return cls(spec, tuple(tuple(_coerce(spec, v) for v in row) for row in rows))

    @classmethod
    def identity(cls, spec: FieldSpec) -> "Matrix3":
        return cls(spec, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def diagonal(cls, spec: FieldSpec, a, b, c) -> "Matrix3":
        av, bv, cv = (_coerce(spec, v) for v in (a, b, c))
        return cls(spec, ((av, 0, 0), (0, bv, 0), (0, 0, cv)))

    @property
    def entries(self) -> tuple:
        e = self.spec._elems
        return tuple(tuple(e[v] for v in row) for row in self.rows_int)

    def entry(self, i: int, j: int) -> FieldElement:
        return self.spec._elems[self.rows_int[i][j]]

    def to_ints(self) -> list[int]:
        return [v for row in self.rows_int for v in row]

    def det(self) -> FieldElement:
        return self.spec._elems[_mat3_det(self.rows_int, self.spec)]

    def transpose(self) -> "Matrix3":
        return Matrix3(self.spec, _mat3_transpose(self.rows_int))

    def inverse(self) -> "Matrix3":
        return Matrix3(self.spec, _mat3_inv(self.rows_int, self.spec))

    def __matmul__(self, other: "Matrix3") -> "Matrix3":
        if other.spec != self.spec:
            raise ValueError("matrices over different fields")
        return Matrix3(self.spec, _mat3_mul(self.rows_int, other.rows_int, self.spec))

    def __add__(self, other: "Matrix3") -> "Matrix3":
        if other.spec != self.spec:
            raise ValueError("matrices over different fields")
        add = self.spec._add
        return Matrix3(
            self.spec,
            tuple(
                tuple(add[a][b] for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows_int, other.rows_int)
            ),
        )

    def __sub__(self, other: "Matrix3") -> "Matrix3":
        return self + other.scale(self.spec._neg[1])

    def scale(self, c) -> "Matrix3":
        cv = _coerce(self.spec, c)
        mul = self.spec._mul[cv]
        return Matrix3(
            self.spec, tuple(tuple(mul[v] for v in row) for row in self.rows_int)
        )

    def apply(self, v) -> tuple:
        return _mat3_vec(self.rows_int, v, self.spec)

    def is_scalar(self) -> bool:
        r = self.rows_int
        return (
            r[0][1] == r[0][2] == r[1][0] == r[1][2] == r[2][0] == r[2][1] == 0
            and r[0][0] == r[1][1] == r[2][2]
        )


# ---------------------------------------------------------------------------
# the curve polynomial


_FA_BASIS: dict = {}


def build_UVW(spec: FieldSpec) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    """The three two-term generators of the ideal of all rational points."""
    q = spec.q
    n1 = spec._neg[1]
    u = HomogPoly._raw(spec, q + 1, {(0, q, 1): 1, (0, 1, q): n1})
    v = HomogPoly._raw(spec, q + 1, {(1, 0, q): 1, (q, 0, 1): n1})
    w = HomogPoly._raw(spec, q + 1, {(q, 1, 0): 1, (1, q, 0): n1})
    return u, v, w


def _fa_basis(spec: FieldSpec):
    cached = _FA_BASIS.get(spec)
    if cached is not None:
        return cached
    uvw = build_UVW(spec)
    basis = []
    for i in range(3):
        row = []
        for j in range(3):
            terms = {}
            for (a, b, c), v in uvw[j].terms.items():
                key = [a, b, c]
                key[i] += 1
                terms[tuple(key)] = v
            row.append(terms)
        basis.append(tuple(row))
    basis = tuple(basis)
    _FA_BASIS[spec] = basis
    return basis


def build_FA(A: Matrix3) -> HomogPoly:
    """The degree-(q+2) curve polynomial of A; zero exactly for scalar A."""
    spec = A.spec
    basis = _fa_basis(spec)
    add, mul = spec._add, spec._mul
    acc: dict = {}
    for i in range(3):
        arow = A.rows_int[i]
        for j in range(3):
            c = arow[j]
            if not c:
                continue
            crow = mul[c]
            for key, v in basis[i][j].items():
                s = add[acc.get(key, 0)][crow[v]]
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
    return HomogPoly._raw(spec, spec.q + 2, acc)


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials


def charpoly(A: Matrix3) -> UniPoly:
    """det(tE - A), monic of degree 3."""
    spec = A.spec
    (a, b, c), (d, e, f), (g, h, i) = A.rows_int
    add, sub, mul, neg = spec._add, spec._sub, spec._mul, spec._neg
    tr = add[add[a][e]][i]
    minors = add[
        add[sub[mul[e][i]][mul[f][h]]][sub[mul[a][i]][mul[c][g]]]
    ][sub[mul[a][e]][mul[b][d]]]
    det = _mat3_det(A.rows_int, spec)
    return UniPoly(spec, (neg[det], minors, neg[tr], 1))


def minpoly(A: Matrix3) -> UniPoly:
    """Monic minimal polynomial, found by testing degrees 1 and 2.

    Degree 2 asks whether A^2 lies in the span of E and A; if not, by
    Cayley-Hamilton the minimal polynomial is the characteristic one.
    """
    spec = A.spec
    if A.is_scalar():
        return UniPoly(spec, (spec._neg[A.rows_int[0][0]], 1))
    a2 = A @ A
    ident = Matrix3.identity(spec)
    ve = ident.to_ints()
    va = A.to_ints()
    vt = a2.to_ints()
    rows = [[ve[i], va[i], vt[i]] for i in range(9)]
    sub, mul, inv = spec._sub, spec._mul, spec._inv
    pivots = []
    r = 0
    for col in range(2):
        prow = None
        for i in range(r, 9):
            if rows[i][col]:
                prow = i
                break
        if prow is None:
            continue
        rows[r], rows[prow] = rows[prow], rows[r]
        iv = inv[rows[r][col]]
        rows[r] = [mul[iv][x] for x in rows[r]]
        for i in range(9):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [sub[x][mul[c][y]] for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if pivots == [0, 1] and all(rows[i][2] == 0 for i in range(2, 9)):
        c0, c1 = rows[0][2], rows[1][2]
        return UniPoly(spec, (spec._neg[c0], spec._neg[c1], 1))
    return charpoly(A)


# ---------------------------------------------------------------------------
# case classification


@dataclass(frozen=True)
class CaseLabel:
    """Which splitting case a matrix falls in, with the witnessing data.

    roots carries the relevant eigenvalues: (alpha,) for case 1 together
    with the irreducible quadratic cofactor, the three distinct eigenvalues
    for case 2, (double, simple) for cases 3.x and (alpha,) for cases 4.x.
    """

    tag: str
    roots: tuple[FieldElement, ...]
    quad: UniPoly | None = None


def classify(A: Matrix3, f: UniPoly | None = None, mp: UniPoly | None = None) -> CaseLabel:
    """Sort A by the factor shape of its characteristic polynomial and the
    degree of its minimal polynomial.

    Both polynomials may be passed in when the caller already has them.
    """
    shape = cubic_shape(f if f is not None else charpoly(A))
    if shape.tag == CUBIC_IRREDUCIBLE:
        return CaseLabel(CASE_NONSINGULAR, ())
    if shape.tag == CUBIC_LINEAR_TIMES_QUADRATIC:
        return CaseLabel(CASE_1, shape.roots, shape.quad)
    if shape.tag == CUBIC_THREE_DISTINCT:
        return CaseLabel(CASE_2, shape.roots)
    mdeg = (mp if mp is not None else minpoly(A)).degree
    if shape.tag == CUBIC_DOUBLE_PLUS_SIMPLE:
        alpha, beta = shape.roots[0], shape.roots[2]
        return CaseLabel(CASE_3_1 if mdeg == 3 else CASE_3_2, (alpha, beta))
    alpha = shape.roots[0]
    if mdeg == 3:
        return CaseLabel(CASE_4_1, (alpha,))
    if mdeg == 2:
        return CaseLabel(CASE_4_2, (alpha,))
    return CaseLabel(CASE_4_3, (alpha,))


# ---------------------------------------------------------------------------
# similarity to the case-canonical form


def _kernel_basis(rows, spec: FieldSpec):
    m = [list(r) for r in rows]
    sub, mul, inv = spec._sub, spec._mul, spec._inv
    piv_cols = []
    r = 0
    for col in range(3):
        prow = None
        for i in range(r, 3):
            if m[i][col]:
                prow = i
                break
        if prow is None:
            continue
        m[r], m[prow] = m[prow], m[r]
        iv = inv[m[r][col]]
        m[r] = [mul[iv][x] for x in m[r]]
        for i in range(3):
            if i != r and m[i][col]:
                c = m[i][col]
                m[i] = [sub[x][mul[c][y]] for x, y in zip(m[i], m[r])]
        piv_cols.append(col)
        r += 1
    basis = []
    for fc in (c for c in range(3) if c not in piv_cols):
        v = [0, 0, 0]
        v[fc] = 1
        for rr, pc in enumerate(piv_cols):
            v[pc] = spec._neg[m[rr][fc]]
        basis.append(tuple(v))
    return basis


def _kernel_vectors(rows, spec: FieldSpec):
    """Nonzero kernel vectors, ascending by base-q enumeration index."""
    basis = _kernel_basis(rows, spec)
    d = len(basis)
    if d == 0:
        return []
    q = spec.q
    add, mul = spec._add, spec._mul
    seen = set()
    for n in range(1, q**d):
        v = [0, 0, 0]
        x = n
        for bvec in basis:
            c = x % q
            x //= q
            if c:
                crow = mul[c]
                v = [add[a][crow[b]] for a, b in zip(v, bvec)]
        seen.add(tuple(v))
    return sorted(seen, key=lambda v: v[0] + q * v[1] + q * q * v[2])


def _first_vector(spec: FieldSpec, pred):
    q = spec.q
    for n in range(1, q**3):
        v = (n % q, (n // q) % q, n // (q * q))
        if pred(v):
            return v
    raise AssertionError("no vector satisfies the predicate")


def _proportional(u, v, spec: FieldSpec) -> bool:
    sub, mul = spec._sub, spec._mul
    return (
        sub[mul[u[0]][v[1]]][mul[u[1]][v[0]]] == 0
        and sub[mul[u[0]][v[2]]][mul[u[2]][v[0]]] == 0
        and sub[mul[u[1]][v[2]]][mul[u[2]][v[1]]] == 0
    )


def _shifted(A: Matrix3, alpha: int) -> Matrix3:
    if not alpha:
        return A
    neg = A.spec._neg[alpha]
    return A + Matrix3.diagonal(A.spec, neg, neg, neg)


def _companion(f: UniPoly) -> Matrix3:
    spec = f.spec
    neg = spec._neg
    f0, f1, f2 = f.coeffs[0], f.coeffs[1], f.coeffs[2]
    return Matrix3(
        spec, ((0, 0, neg[f0]), (1, 0, neg[f1]), (0, 1, neg[f2]))
    )


def _case_canonical(spec: FieldSpec, label: CaseLabel, f: UniPoly) -> Matrix3:
    if label.tag == CASE_NONSINGULAR:
        return _companion(f)
    if label.tag == CASE_1:
        alpha = label.roots[0].val
        g = label.quad
        a, b = spec._neg[g.coeffs[0]], spec._neg[g.coeffs[1]]
        return Matrix3(spec, ((0, a, 0), (1, b, 0), (0, 0, alpha)))
    if label.tag == CASE_2:
        a1, a2, a3 = (r.val for r in label.roots)
        return Matrix3.diagonal(spec, a1, a2, a3)
    if label.tag == CASE_3_1:
        alpha, beta = label.roots[0].val, label.roots[1].val
        return Matrix3(spec, ((alpha, 1, 0), (0, alpha, 0), (0, 0, beta)))
    if label.tag == CASE_3_2:
        alpha, beta = label.roots[0].val, label.roots[1].val
        return Matrix3.diagonal(spec, alpha, alpha, beta)
    alpha = label.roots[0].val
    if label.tag == CASE_4_1:
        return Matrix3(spec, ((alpha, 1, 0), (0, alpha, 1), (0, 0, alpha)))
    if label.tag == CASE_4_2:
        return Matrix3(spec, ((alpha, 1, 0), (0, alpha, 0), (0, 0, alpha)))
    return Matrix3.diagonal(spec, alpha, alpha, alpha)


def rcf_similarity(
    A: Matrix3, label: CaseLabel | None = None, f: UniPoly | None = None
) -> tuple[Matrix3, Matrix3]:
    """(C, S) with S A S^-1 = C, the canonical matrix of A's case.

    The basis vectors are chosen by cyclic-vector and eigenvector
    construction, always taking the first suitable vector in base-q
    enumeration order, so the output is deterministic and a matrix already
    in canonical form returns S = E.
    """
    spec = A.spec
    if f is None:
        f = charpoly(A)
    if label is None:
        label = classify(A, f=f)
    C = _case_canonical(spec, label, f)
    if label.tag == CASE_4_3:
        return A, Matrix3.identity(spec)

    def eigvec(alpha: int):
        shifted = _shifted(A, alpha)
        return _kernel_vectors(shifted.rows_int, spec)[0]

    if label.tag == CASE_NONSINGULAR:
        v1 = (1, 0, 0)
        v2 = A.apply(v1)
        v3 = A.apply(v2)
    elif label.tag == CASE_1:
        g = label.quad
        a2 = A @ A
        gA = a2 + A.scale(g.coeffs[1]) + Matrix3.identity(spec).scale(g.coeffs[0])
        v1 = _kernel_vectors(gA.rows_int, spec)[0]
        v2 = A.apply(v1)
        v3 = eigvec(label.roots[0].val)
    elif label.tag == CASE_2:
        v1, v2, v3 = (eigvec(r.val) for r in label.roots)
    elif label.tag == CASE_3_1:
        alpha, beta = label.roots[0].val, label.roots[1].val
        n = _shifted(A, alpha)
        n2 = n @ n
        v2 = next(
            v for v in _kernel_vectors(n2.rows_int, spec) if any(n.apply(v))
        )
        v1 = n.apply(v2)
        v3 = eigvec(beta)
    elif label.tag == CASE_3_2:
        alpha, beta = label.roots[0].val, label.roots[1].val
        kern = _kernel_vectors(_shifted(A, alpha).rows_int, spec)
        v1 = kern[0]
        v2 = next(v for v in kern if not _proportional(v1, v, spec))
        v3 = eigvec(beta)
    elif label.tag == CASE_4_1:
        n = _shifted(A, label.roots[0].val)
        n2 = n @ n
        v3 = _first_vector(spec, lambda v: any(n2.apply(v)))
        v2 = n.apply(v3)
        v1 = n.apply(v2)
    else:  # CASE_4_2
        n = _shifted(A, label.roots[0].val)
        v2 = _first_vector(spec, lambda v: any(n.apply(v)))
        v1 = n.apply(v2)
        v3 = next(
            v
            for v in _kernel_vectors(n.rows_int, spec)
            if not _proportional(v1, v, spec)
        )
    p_rows = tuple(tuple(col[i] for col in (v1, v2, v3)) for i in range(3))
    s = Matrix3(spec, _mat3_inv(p_rows, spec))
    return C, s


# ---------------------------------------------------------------------------
# predicted decomposition


@dataclass(frozen=True)
class ResidualSpec:
    """The nonlinear part of a predicted decomposition, in canonical
    coordinates."""

    degree: int
    kind: str
    expected_points: int
    equation: HomogPoly


@dataclass(frozen=True)
class DecompositionPlan:
    """Predicted splitting of the curve of A.

    Lines and the residual equation are written in the canonical
    coordinates of A's case; ``transform`` is the similarity S with
    S A S^-1 = canonical, which lets a verifier transport everything back
    to the original coordinates.
    """

    case: CaseLabel
    lines: tuple
    residual: ResidualSpec | None
    concurrency: str | None
    canonical: Matrix3
    transform: Matrix3
    zero_polynomial: bool = False


def _line(spec: FieldSpec, a, b, c) -> HomogPoly:
    return HomogPoly.linear_form(spec, (a, b, c))


def predicted_decomposition(
    A: Matrix3, label: CaseLabel | None = None, f: UniPoly | None = None
) -> DecompositionPlan:
    """The splitting the case analysis predicts for the curve of A.

    Scalar matrices get the zero-polynomial plan; the irreducible
    (nonsingular) case is rejected since there is nothing to decompose.
    """
    spec = A.spec
    q = spec.q
    if label is None:
        label = classify(A, f=f)
    if label.tag == CASE_NONSINGULAR:
        raise ValueError("the curve of a matrix with irreducible characteristic polynomial does not split")
    C, S = rcf_similarity(A, label=label, f=f)
    neg = spec._neg
    x = _line(spec, 1, 0, 0)
    y = _line(spec, 0, 1, 0)
    z = _line(spec, 0, 0, 1)

    if label.tag == CASE_4_3:
        return DecompositionPlan(label, (), None, None, C, S, zero_polynomial=True)

    if label.tag == CASE_1:
        alpha = label.roots[0].val
        g = label.quad
        a, b = neg[g.coeffs[0]], neg[g.coeffs[1]]
        eq = HomogPoly(
            spec,
            q + 1,
            {
                (0, q + 1, 0): 1,
                (0, 2, q - 1): neg[1],
                (2, 0, q - 1): a,
                (q + 1, 0, 0): neg[a],
                (1, 1, q - 1): b,
                (q, 1, 0): spec._sub[alpha][b],
                (1, q, 0): neg[alpha],
            },
        )
        residual = ResidualSpec(q + 1, RESIDUAL_AFFINE_FILLING, q * q, eq)
        return DecompositionPlan(label, ((z, 1),), residual, None, C, S)

    if label.tag == CASE_2:
        a1, a2, a3 = (r.val for r in label.roots)
        eq = HomogPoly(
            spec,
            q - 1,
            {
                (q - 1, 0, 0): spec._sub[a3][a2],
                (0, q - 1, 0): spec._sub[a1][a3],
                (0, 0, q - 1): spec._sub[a2][a1],
            },
        )
        residual = ResidualSpec(q - 1, RESIDUAL_MAX_Q_MINUS_1, (q - 2) * q + 1, eq)
        return DecompositionPlan(
            label, ((x, 1), (y, 1), (z, 1)), residual, NOT_CONCURRENT, C, S
        )

    if label.tag == CASE_3_1:
        beta_p = spec._sub[label.roots[1].val][label.roots[0].val]
        eq = HomogPoly(
            spec,
            q,
            {
                (1, 0, q - 1): 1,
                (q, 0, 0): neg[1],
                (q - 1, 1, 0): beta_p,
                (0, q, 0): neg[beta_p],
            },
        )
        residual = ResidualSpec(q, RESIDUAL_MAX_Q, (q - 1) * q + 1, eq)
        return DecompositionPlan(label, ((x, 1), (z, 1)), residual, None, C, S)

    if label.tag == CASE_3_2:
        lines = [(z, 1), (x, 1), (y, 1)]
        for lam in range(1, q):
            lines.append((_line(spec, 1, neg[lam], 0), 1))
        return DecompositionPlan(
            label, tuple(lines), None, CONCURRENT_ALL_BUT_ONE, C, S
        )

    if label.tag == CASE_4_1:
        eq = HomogPoly(
            spec,
            q + 1,
            {
                (1, 0, q): 1,
                (q, 0, 1): neg[1],
                (q - 1, 2, 0): 1,
                (0, q + 1, 0): neg[1],
            },
        )
        residual = ResidualSpec(q + 1, RESIDUAL_MAX_Q_PLUS_1, q * q + 1, eq)
        return DecompositionPlan(label, ((x, 1),), residual, None, C, S)

    # CASE_4_2: a double line and q simple lines through one point
    lines = [(x, 2), (z, 1)]
    for lam in range(1, q):
        lines.append((_line(spec, neg[lam], 0, 1), 1))
    return DecompositionPlan(label, tuple(lines), None, CONCURRENT_ALL, C, S)


# ---------------------------------------------------------------------------
# projective-equivalence key


@dataclass(frozen=True)
class EquivKey:
    """Canonical invariant of the projective-equivalence class of a curve.

    Two non-scalar matrices share a key exactly when one is
    rho * tB A tB^-1 + mu E for some invertible B, nonzero rho and any mu.
    All scalar matrices share the distinguished scalar key.
    """

    scalar: bool
    key: tuple | None


def _pair_key(f: UniPoly, m: UniPoly) -> tuple:
    spec = f.spec
    best = None
    for rho in range(1, spec.q):
        for mu in range(spec.q):
            ft = f.affine_transform(rho, mu)
            mt = m.affine_transform(rho, mu)
            cand = (len(mt.coeffs), ft.coeffs, mt.coeffs)
            if best is None or cand < best:
                best = cand
    return best


def equiv_key(A: Matrix3) -> EquivKey:
    if A.is_scalar():
        return EquivKey(True, None)
    return EquivKey(False, _pair_key(charpoly(A), minpoly(A)))


# ---------------------------------------------------------------------------
# one representative matrix per equivalence class


def _case_variants(spec: FieldSpec, f: UniPoly, shape):
    """(tag, minpoly, canonical matrix) for every similarity type with
    characteristic polynomial f, scalars excluded."""
    if shape.tag == CUBIC_IRREDUCIBLE:
        yield CASE_NONSINGULAR, f, _companion(f)
        return
    if shape.tag == CUBIC_LINEAR_TIMES_QUADRATIC:
        label = CaseLabel(CASE_1, shape.roots, shape.quad)
        yield CASE_1, f, _case_canonical(spec, label, f)
        return
    if shape.tag == CUBIC_THREE_DISTINCT:
        label = CaseLabel(CASE_2, shape.roots)
        yield CASE_2, f, _case_canonical(spec, label, f)
        return
    if shape.tag == CUBIC_DOUBLE_PLUS_SIMPLE:
        alpha, beta = shape.roots[0], shape.roots[2]
        yield CASE_3_1, f, _case_canonical(spec, CaseLabel(CASE_3_1, (alpha, beta)), f)
        m = UniPoly.from_roots(spec, (alpha, beta))
        yield CASE_3_2, m, _case_canonical(spec, CaseLabel(CASE_3_2, (alpha, beta)), f)
        return
    alpha = shape.roots[0]
    yield CASE_4_1, f, _case_canonical(spec, CaseLabel(CASE_4_1, (alpha,)), f)
    m = UniPoly.from_roots(spec, (alpha, alpha))
    yield CASE_4_2, m, _case_canonical(spec, CaseLabel(CASE_4_2, (alpha,)), f)


def _class_size(spec: FieldSpec, tag: str) -> int:
    """Number of matrices similar to a given one, per case.

    |GL(3,q)| divided by the order of the centralizer of the canonical
    form; the centralizer orders depend only on the elementary-divisor
    type.  Cross-checked exhaustively at small q in the test suite.
    """
    q = spec.q
    gl = (q**3 - 1) * (q**3 - q) * (q**3 - q**2)
    centralizers = {
        CASE_NONSINGULAR: q**3 - 1,
        CASE_1: (q**2 - 1) * (q - 1),
        CASE_2: (q - 1) ** 3,
        CASE_3_1: q * (q - 1) ** 2,
        CASE_3_2: (q**2 - 1) * (q**2 - q) * (q - 1),
        CASE_4_1: q**2 * (q - 1),
        CASE_4_2: q**3 * (q - 1) ** 2,
    }
    return gl // centralizers[tag]


@dataclass(frozen=True)
class ClassRepresentative:
    key: EquivKey
    matrix: Matrix3
    tag: str
    orbit_size: int


def equivalence_representatives(spec: FieldSpec) -> list[ClassRepresentative]:
    """One canonical matrix per equivalence class of non-scalar matrices.

    Classes are enumerated through (characteristic, minimal) polynomial
    pairs rather than by sweeping all q^9 matrices; the orbit size is the
    similarity-class size times the number of distinct scaled-and-shifted
    polynomial pairs.  Orbit sizes over all entries sum to q^9 - q.
    """
    q = spec.q
    out = []
    seen = set()
    for n in range(q**3):
        c0, c1, c2 = n % q, (n // q) % q, n // (q * q)
        f = UniPoly(spec, (c0, c1, c2, 1))
        shape = cubic_shape(f)
        for tag, m, C in _case_variants(spec, f, shape):
            key = EquivKey(False, _pair_key(f, m))
            if key in seen:
                continue
            seen.add(key)
            images = set()
            for rho in range(1, q):
                for mu in range(q):
                    images.add(
                        (
                            f.affine_transform(rho, mu).coeffs,
                            m.affine_transform(rho, mu).coeffs,
                        )
                    )
            out.append(
                ClassRepresentative(key, C, tag, _class_size(spec, tag) * len(images))
            )
    return out
