"""Sparse homogeneous polynomials in x, y, z over GF(q).

Terms live in a dict mapping exponent triples (i, j, k) with i+j+k = degree
to nonzero coefficient encodings.  Because every stored polynomial is
homogeneous, graded-lex order on monomials is plain tuple order, so
``max(terms)`` is the leading monomial.  The zero polynomial keeps a
declared degree and an empty term map.
"""

from __future__ import annotations

from .gf import FieldElement, FieldSpec, _coerce


class ProjPoint:
    """A point of P^2(F_q), normalized so the first nonzero coordinate is 1."""

    __slots__ = ("spec", "key")

    def __init__(self, spec: FieldSpec, coords):
        vals = [_coerce(spec, c) for c in coords]
        if len(vals) != 3 or not any(vals):
            raise ValueError("a projective point needs three coordinates, not all zero")
        lead = next(v for v in vals if v)
        if lead != 1:
            inv = spec._inv[lead]
            mul = spec._mul[inv]
            vals = [mul[v] for v in vals]
        self.spec = spec
        self.key = tuple(vals)

    @property
    def coords(self) -> tuple[FieldElement, ...]:
        return tuple(self.spec._elems[v] for v in self.key)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.key == other.key and self.spec == other.spec

    def __hash__(self):
        return hash((self.spec.q, self.key))

    def __repr__(self):
        return "({}:{}:{})".format(*self.key)


class HomogPoly:
    """A homogeneous trivariate polynomial of a declared degree."""

    __slots__ = ("spec", "degree", "terms")

    def __init__(self, spec: FieldSpec, degree: int, terms=None):
        cleaned: dict[tuple[int, int, int], int] = {}
        for key, c in (terms or {}).items():
            cv = _coerce(spec, c)
            if not cv:
                continue
            i, j, k = key
            if i < 0 or j < 0 or k < 0 or i + j + k != degree:
                raise ValueError(f"exponents {key} do not sum to degree {degree}")
            cleaned[(i, j, k)] = cv
        self.spec = spec
        self.degree = degree
        self.terms = cleaned

    @classmethod
    def _raw(cls, spec: FieldSpec, degree: int, terms: dict) -> "HomogPoly":
        out = object.__new__(cls)
        out.spec = spec
        out.degree = degree
        out.terms = terms
        return out

    @classmethod
    def zero(cls, spec: FieldSpec, degree: int) -> "HomogPoly":
        return cls._raw(spec, degree, {})

    @classmethod
    def variable(cls, spec: FieldSpec, index: int) -> "HomogPoly":
        key = [0, 0, 0]
        key[index] = 1
        return cls._raw(spec, 1, {tuple(key): 1})

    @classmethod
    def linear_form(cls, spec: FieldSpec, coeffs) -> "HomogPoly":
        a, b, c = (_coerce(spec, v) for v in coeffs)
        terms = {}
        if a:
            terms[(1, 0, 0)] = a
        if b:
            terms[(0, 1, 0)] = b
        if c:
            terms[(0, 0, 1)] = c
        return cls._raw(spec, 1, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: int, j: int, k: int) -> FieldElement:
        return self.spec._elems[self.terms.get((i, j, k), 0)]

    def leading_key(self) -> tuple[int, int, int]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return max(self.terms)

    def line_coeffs(self) -> tuple[int, int, int]:
        if self.degree != 1:
            raise ValueError("not a linear form")
        return (
            self.terms.get((1, 0, 0), 0),
            self.terms.get((0, 1, 0), 0),
            self.terms.get((0, 0, 1), 0),
        )

    def normalized(self) -> "HomogPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        if lead == 1:
            return self
        return self.scaled(self.spec._inv[lead])

    def scaled(self, c) -> "HomogPoly":
        cv = _coerce(self.spec, c)
        if not cv:
            return HomogPoly._raw(self.spec, self.degree, {})
        mul = self.spec._mul[cv]
        return HomogPoly._raw(
            self.spec, self.degree, {k: mul[v] for k, v in self.terms.items()}
        )

    def _same(self, other: "HomogPoly") -> FieldSpec:
        if not isinstance(other, HomogPoly) or other.spec != self.spec:
            raise ValueError("operands must live over the same field")
        return self.spec

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        spec = self._same(other)
        if self.degree != other.degree:
            raise ValueError("cannot add homogeneous polynomials of different degrees")
        add = spec._add
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = add[out.get(k, 0)][v]
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HomogPoly._raw(spec, self.degree, out)

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def __neg__(self) -> "HomogPoly":
        neg = self.spec._neg
        return HomogPoly._raw(
            self.spec, self.degree, {k: neg[v] for k, v in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scaled(other)
        spec = self._same(other)
        out: dict[tuple[int, int, int], int] = {}
        add, mul = spec._add, spec._mul
        for (i1, j1, k1), c1 in self.terms.items():
            row = mul[c1]
            for (i2, j2, k2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                s = add[out.get(key, 0)][row[c2]]
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return HomogPoly._raw(spec, self.degree + other.degree, out)

    def __pow__(self, n: int) -> "HomogPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = HomogPoly._raw(self.spec, 0, {(0, 0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def eval(self, point) -> FieldElement:
        """Value at a projective point (or raw coordinate triple)."""
        spec = self.spec
        if isinstance(point, ProjPoint):
            if point.spec != spec:
                raise ValueError("point from a different field")
            a, b, c = point.key
        else:
            a, b, c = (_coerce(spec, v) for v in point)
        powf, mul, add = spec.pow_int, spec._mul, spec._add
        acc = 0
        for (i, j, k), cf in self.terms.items():
            v = mul[powf(a, i)][powf(b, j)]
            v = mul[v][powf(c, k)]
            acc = add[acc][mul[v][cf]]
        return spec._elems[acc]

    def to_list(self) -> list[list[int]]:
        """Serialized terms [i, j, k, coeff], graded-lex leading term first."""
        return [[i, j, k, c] for (i, j, k), c in sorted(self.terms.items(), reverse=True)]

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.degree == other.degree
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"0[deg {self.degree}]"
        parts = []
        for (i, j, k), c in sorted(self.terms.items(), reverse=True):
            mono = "".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip("xyz", (i, j, k))
                if e
            ) or "1"
            parts.append(mono if c == 1 and mono != "1" else f"{c}*{mono}")
        return " + ".join(parts)


def scalar_ratio(f: HomogPoly, g: HomogPoly):
    """The constant c with f == c*g, or None if the two are not proportional."""
    if f.spec != g.spec or f.degree != g.degree:
        return None
    if f.is_zero() or g.is_zero():
        return f.spec.one if f.is_zero() and g.is_zero() else None
    if f.terms.keys() != g.terms.keys():
        return None
    spec = f.spec
    lead = max(f.terms)
    c = spec.div(f.terms[lead], g.terms[lead])
    mul = spec._mul[c]
    for k, v in g.terms.items():
        if f.terms[k] != mul[v]:
            return None
    return spec._elems[c]


# ---------------------------------------------------------------------------
# 3x3 matrix helpers on raw integer rows (shared by the matrix front ends)


def _as_int_rows(b, spec: FieldSpec):
    rows = getattr(b, "rows_int", None)
    if rows is not None:
        return rows
    out = []
    for row in b:
        out.append(tuple(_coerce(spec, v) for v in row))
    if len(out) != 3 or any(len(r) != 3 for r in out):
        raise ValueError("expected a 3x3 matrix")
    return tuple(out)


def _mat3_det(rows, spec: FieldSpec) -> int:
    (a, b, c), (d, e, f), (g, h, i) = rows
    mul, sub, add = spec._mul, spec._sub, spec._add
    t1 = mul[a][sub[mul[e][i]][mul[f][h]]]
    t2 = mul[b][sub[mul[d][i]][mul[f][g]]]
    t3 = mul[c][sub[mul[d][h]][mul[e][g]]]
    return add[sub[t1][t2]][t3]


def _mat3_transpose(rows):
    return tuple(tuple(rows[i][j] for i in range(3)) for j in range(3))


def _mat3_mul(a, b, spec: FieldSpec):
    mul, add = spec._mul, spec._add
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            s = 0
            for k in range(3):
                s = add[s][mul[a[i][k]][b[k][j]]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _mat3_vec(rows, v, spec: FieldSpec):
    mul, add = spec._mul, spec._add
    out = []
    for i in range(3):
        s = 0
        for k in range(3):
            s = add[s][mul[rows[i][k]][v[k]]]
        out.append(s)
    return tuple(out)


def _mat3_inv(rows, spec: FieldSpec):
    det = _mat3_det(rows, spec)
    if det == 0:
        raise ValueError("matrix is singular")
    (a, b, c), (d, e, f), (g, h, i) = rows
    mul, sub = spec._mul, spec._sub
    cof = (
        (sub[mul[e][i]][mul[f][h]], sub[mul[c][h]][mul[b][i]], sub[mul[b][f]][mul[c][e]]),
        (sub[mul[f][g]][mul[d][i]], sub[mul[a][i]][mul[c][g]], sub[mul[c][d]][mul[a][f]]),
        (sub[mul[d][h]][mul[e][g]], sub[mul[b][g]][mul[a][h]], sub[mul[a][e]][mul[b][d]]),
    )
    dinv = spec._inv[det]
    mrow = spec._mul[dinv]
    return tuple(tuple(mrow[v] for v in row) for row in cof)


# ---------------------------------------------------------------------------
# substitution, exact division, derivatives


def _row_power(row, n: int, spec: FieldSpec, cache: dict):
    """Sparse expansion of (r0*x + r1*y + r2*z)^n.

    For n >= q the Frobenius split (L^q has the original coefficients on
    x^q, y^q, z^q) keeps the expansion sparse instead of dense.
    """
    got = cache.get(n)
    if got is not None:
        return got
    q = spec.q
    if n == 0:
        out = {(0, 0, 0): 1}
    elif n == 1:
        out = {}
        for idx, c in enumerate(row):
            if c:
                key = [0, 0, 0]
                key[idx] = 1
                out[tuple(key)] = c
    elif n >= q:
        m, r = divmod(n, q)
        base = _row_power(row, m, spec, cache)
        frob = {(i * q, j * q, k * q): c for (i, j, k), c in base.items()}
        out = _dict_mul(frob, _row_power(row, r, spec, cache), spec)
    else:
        out = _dict_mul(
            _row_power(row, n - 1, spec, cache), _row_power(row, 1, spec, cache), spec
        )
    cache[n] = out
    return out


def _dict_mul(a: dict, b: dict, spec: FieldSpec) -> dict:
    add, mul = spec._add, spec._mul
    out: dict = {}
    for (i1, j1, k1), c1 in a.items():
        row = mul[c1]
        for (i2, j2, k2), c2 in b.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            s = add[out.get(key, 0)][row[c2]]
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def linear_substitute(f: HomogPoly, b) -> HomogPoly:
    """f composed with the invertible substitution (x,y,z) = B(x',y',z')."""
    spec = f.spec
    rows = _as_int_rows(b, spec)
    if _mat3_det(rows, spec) == 0:
        raise ValueError("substitution matrix is singular")
    if f.is_zero():
        return HomogPoly._raw(spec, f.degree, {})
    caches = ({}, {}, {})
    add, mul = spec._add, spec._mul
    acc: dict = {}
    for (i, j, k), c in f.terms.items():
        prod = _row_power(rows[0], i, spec, caches[0])
        prod = _dict_mul(prod, _row_power(rows[1], j, spec, caches[1]), spec)
        prod = _dict_mul(prod, _row_power(rows[2], k, spec, caches[2]), spec)
        row = mul[c]
        for key, v in prod.items():
            s = add[acc.get(key, 0)][row[v]]
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    return HomogPoly._raw(spec, f.degree, acc)


def divide_exact(f: HomogPoly, g: HomogPoly):
    """The quotient f/g when g divides f exactly, else None.

    Standard multivariate division under graded-lex order: on an exact
    input the leading term of the running remainder is always divisible by
    the leading term of g, so the first failure certifies non-divisibility.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    spec = f._same(g)
    if f.is_zero():
        return HomogPoly._raw(spec, max(f.degree - g.degree, 0), {})
    if g.degree > f.degree:
        return None
    gl = max(g.terms)
    gli, glj, glk = gl
    inv_lead = spec._inv[g.terms[gl]]
    sub, mul = spec._sub, spec._mul
    rest = [(k, v) for k, v in g.terms.items() if k != gl]
    r = dict(f.terms)
    quot: dict = {}
    while r:
        m = max(r)
        i, j, k = m
        if i < gli or j < glj or k < glk:
            return None
        c = mul[r.pop(m)][inv_lead]
        t = (i - gli, j - glj, k - glk)
        quot[t] = c
        crow = mul[c]
        for (gi, gj, gk), gv in rest:
            key = (t[0] + gi, t[1] + gj, t[2] + gk)
            s = sub[r.get(key, 0)][crow[gv]]
            if s:
                r[key] = s
            else:
                r.pop(key, None)
    return HomogPoly._raw(spec, f.degree - g.degree, quot)


def partials(f: HomogPoly) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    """Formal partial derivatives; exponent multipliers are taken mod p."""
    if f.degree < 1:
        raise ValueError("needs degree at least 1")
    spec = f.spec
    p = spec.p
    mul = spec._mul
    outs = []
    for var in range(3):
        terms: dict = {}
        for key, c in f.terms.items():
            e = key[var]
            m = e % p
            if not m:
                continue
            new = list(key)
            new[var] = e - 1
            # m < p, so m is its own element encoding
            terms[tuple(new)] = mul[c][m]
        outs.append(HomogPoly._raw(spec, f.degree - 1, terms))
    return tuple(outs)
