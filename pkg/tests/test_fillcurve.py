import random

import pytest

from planefill import fillcurve as fc
from planefill.homog import HomogPoly, linear_substitute, scalar_ratio
from planefill.poly import UniPoly
from support import field, rand_invertible3, rand_matrix3


def test_build_UVW_term_counts_and_char2_collapse():
    for q in (2, 3, 4, 5):
        spec = field(q)
        u, v, w = fc.build_UVW(spec)
        assert all(len(g.terms) == 2 for g in (u, v, w))
        assert all(g.degree == q + 1 for g in (u, v, w))
    spec2 = field(2)
    u = fc.build_UVW(spec2)[0]
    assert u == HomogPoly(spec2, 3, {(0, 2, 1): 1, (0, 1, 2): 1})


def test_W_antisymmetric_under_swap():
    spec = field(3)
    w = fc.build_UVW(spec)[2]
    swap = fc.Matrix3.from_ints(spec, [0, 1, 0, 1, 0, 0, 0, 0, 1])
    assert linear_substitute(w, swap) == -w


def test_build_FA_kernel_is_scalar():
    for q in (2, 3):
        spec = field(q)
        for mu in range(q):
            a = fc.Matrix3.diagonal(spec, mu, mu, mu)
            assert fc.build_FA(a).is_zero()


def test_build_FA_examples():
    spec = field(3)
    bprime = spec.element(2)
    a = fc.Matrix3.diagonal(spec, 0, 0, 2)
    z = HomogPoly.variable(spec, 2)
    w = fc.build_UVW(spec)[2]
    assert fc.build_FA(a) == (z * w).scaled(bprime)

    e12 = fc.Matrix3.from_ints(spec, [0, 1, 0, 0, 0, 0, 0, 0, 0])
    x = HomogPoly.variable(spec, 0)
    v = fc.build_UVW(spec)[1]
    assert fc.build_FA(e12) == x * v


def test_build_FA_linear_in_matrix():
    rng = random.Random(31)
    for q in (2, 3, 4):
        spec = field(q)
        for _ in range(25):
            a = rand_matrix3(spec, rng)
            b = rand_matrix3(spec, rng)
            assert fc.build_FA(a) + fc.build_FA(b) == fc.build_FA(a + b)


def test_charpoly_examples():
    spec = field(5)
    zero = fc.Matrix3.from_ints(spec, [0] * 9)
    assert fc.charpoly(zero) == UniPoly(spec, (0, 0, 0, 1))

    # companion of g = t^2 - bt - a glued with the eigenvalue alpha
    a, b, alpha = 2, 1, 3
    m = fc.Matrix3.from_ints(spec, [0, a, 0, 1, b, 0, 0, 0, alpha])
    g = UniPoly(spec, (spec.neg(a), spec.neg(b), 1))
    lin = UniPoly(spec, (spec.neg(alpha), 1))
    assert fc.charpoly(m) == g * lin

    d = fc.Matrix3.diagonal(spec, 1, 2, 4)
    assert fc.charpoly(d) == UniPoly.from_roots(spec, (1, 2, 4))


def test_minpoly_examples():
    spec = field(5)
    assert fc.minpoly(fc.Matrix3.diagonal(spec, 3, 3, 3)) == UniPoly(spec, (2, 1))

    jordan = fc.Matrix3.from_ints(spec, [2, 1, 0, 0, 2, 0, 0, 0, 2])
    assert fc.minpoly(jordan) == UniPoly.from_roots(spec, (2, 2))

    nilp = fc.Matrix3.from_ints(spec, [0, 1, 0, 0, 0, 1, 0, 0, 0])
    assert fc.minpoly(nilp) == UniPoly(spec, (0, 0, 0, 1))


def test_minpoly_divides_and_annihilates():
    rng = random.Random(37)
    for q in (2, 3, 4):
        spec = field(q)
        for _ in range(40):
            a = rand_matrix3(spec, rng)
            mp = fc.minpoly(a)
            from planefill.poly import divrem

            assert divrem(fc.charpoly(a), mp)[1].is_zero()
            acc = fc.Matrix3.from_ints(spec, [0] * 9)
            power = fc.Matrix3.identity(spec)
            for c in mp.coeffs:
                acc = acc + power.scale(c)
                power = power @ a
            assert all(v == 0 for row in acc.rows_int for v in row)


def test_classify_examples():
    spec2 = field(2)
    comp = fc._companion(UniPoly(spec2, (1, 1, 0, 1)))  # t^3 + t + 1, irreducible
    assert fc.classify(comp).tag == fc.CASE_NONSINGULAR

    spec7 = field(7)
    assert fc.classify(fc.Matrix3.diagonal(spec7, 0, 1, 2)).tag == fc.CASE_2

    assert fc.classify(fc.Matrix3.identity(spec7)).tag == fc.CASE_4_3


def test_classify_invariant_under_equivalence():
    rng = random.Random(41)
    for q in (2, 3, 4):
        spec = field(q)
        for _ in range(40):
            a = rand_matrix3(spec, rng)
            b = rand_invertible3(spec, rng)
            rho = rng.randrange(1, q)
            mu = rng.randrange(q)
            bt = b.transpose()
            other = (bt @ a @ bt.inverse()).scale(rho) + fc.Matrix3.identity(spec).scale(mu)
            assert fc.classify(a).tag == fc.classify(other).tag


def canonical_samples(spec):
    """One canonical matrix per case present over the field."""
    out = []
    seen = set()
    for rep in fc.equivalence_representatives(spec):
        if rep.tag not in seen:
            seen.add(rep.tag)
            out.append((rep.tag, rep.matrix))
    return out


def test_rcf_similarity_fixes_canonical_forms():
    for q in (2, 3, 4, 5):
        spec = field(q)
        ident = fc.Matrix3.identity(spec)
        for tag, c in canonical_samples(spec):
            got_c, got_s = fc.rcf_similarity(c)
            assert got_c.rows_int == c.rows_int
            assert got_s.rows_int == ident.rows_int


def test_rcf_similarity_random_sweep():
    rng = random.Random(43)
    for q in (2, 3, 4, 5):
        spec = field(q)
        for _ in range(60):
            a = rand_matrix3(spec, rng)
            c, s = fc.rcf_similarity(a)
            assert (s @ a @ s.inverse()).rows_int == c.rows_int
            # conjugates land on the same canonical form
            p = rand_invertible3(spec, rng)
            conj = p @ a @ p.inverse()
            c2, s2 = fc.rcf_similarity(conj)
            assert c2.rows_int == c.rows_int
            assert (s2 @ conj @ s2.inverse()).rows_int == c2.rows_int


def test_case2_residual_coefficients_sum_to_zero():
    spec = field(5)
    a = fc.Matrix3.diagonal(spec, 1, 2, 4)
    plan = fc.predicted_decomposition(a)
    eq = plan.residual.equation
    coeffs = [eq.terms.get((4, 0, 0), 0), eq.terms.get((0, 4, 0), 0), eq.terms.get((0, 0, 4), 0)]
    assert all(coeffs)
    total = 0
    for c in coeffs:
        total = spec.add(total, c)
    assert total == 0
    assert plan.residual.kind == fc.RESIDUAL_MAX_Q_MINUS_1
    assert plan.residual.expected_points == (5 - 2) * 5 + 1


def test_case41_residual_matches_the_degree_qplus1_maximal_curve():
    for q in (2, 3, 4):
        spec = field(q)
        nilp = fc.Matrix3.from_ints(spec, [0, 1, 0, 0, 0, 1, 0, 0, 0])
        plan = fc.predicted_decomposition(nilp)
        g = plan.residual.equation
        assert g == HomogPoly(
            spec, q + 1,
            {(1, 0, q): 1, (q, 0, 1): spec.neg(1), (q - 1, 2, 0): 1, (0, q + 1, 0): spec.neg(1)},
        )
        # -g(-z, x, y) is the canonical maximal curve of degree q+1
        to_zxy = fc.Matrix3.from_ints(spec, [0, 0, spec.neg(1), 1, 0, 0, 0, 1, 0])
        image = -linear_substitute(g, to_zxy)
        maximal = HomogPoly(
            spec, q + 1,
            {(q + 1, 0, 0): 1, (2, 0, q - 1): spec.neg(1), (0, q, 1): 1, (0, 1, q): spec.neg(1)},
        )
        assert image == maximal


def test_case42_plan_is_double_line_plus_fan():
    spec = field(3)
    a = fc.Matrix3.from_ints(spec, [0, 1, 0, 0, 0, 0, 0, 0, 0])
    plan = fc.predicted_decomposition(a)
    assert plan.residual is None
    assert plan.concurrency == fc.CONCURRENT_ALL
    mults = sorted(m for _, m in plan.lines)
    assert mults == [1] * 3 + [2]


def test_plan_components_multiply_to_curve():
    for q in (2, 3, 4):
        spec = field(q)
        for tag, c in canonical_samples(spec):
            if tag == fc.CASE_NONSINGULAR:
                continue
            plan = fc.predicted_decomposition(c)
            product = HomogPoly(spec, 0, {(0, 0, 0): 1})
            for line, mult in plan.lines:
                for _ in range(mult):
                    product = product * line
            if plan.residual is not None:
                product = product * plan.residual.equation
            assert scalar_ratio(fc.build_FA(c), product) is not None
            total = sum(m for _, m in plan.lines) + (
                plan.residual.degree if plan.residual else 0
            )
            assert total == q + 2


def test_predicted_decomposition_rejects_irreducible_case():
    spec = field(2)
    comp = fc._companion(UniPoly(spec, (1, 1, 0, 1)))
    with pytest.raises(ValueError):
        fc.predicted_decomposition(comp)


def test_scalar_matrix_gets_zero_plan():
    spec = field(3)
    plan = fc.predicted_decomposition(fc.Matrix3.identity(spec).scale(2))
    assert plan.zero_polynomial and not plan.lines and plan.residual is None


def test_equiv_key_scalars():
    spec = field(3)
    e = fc.Matrix3.identity(spec)
    assert fc.equiv_key(e) == fc.equiv_key(e.scale(2))
    assert fc.equiv_key(e).scalar


def test_equiv_key_invariance():
    rng = random.Random(47)
    for q in (2, 3, 4):
        spec = field(q)
        ident = fc.Matrix3.identity(spec)
        for _ in range(50):
            a = rand_matrix3(spec, rng)
            if a.is_scalar():
                continue
            b = rand_invertible3(spec, rng)
            rho = rng.randrange(1, q)
            mu = rng.randrange(q)
            bt = b.transpose()
            other = (bt @ a @ bt.inverse()).scale(rho) + ident.scale(mu)
            assert fc.equiv_key(a) == fc.equiv_key(other)


def test_equiv_key_cross_ratio_orbit():
    spec = field(5)
    keys = {
        fc.equiv_key(fc.Matrix3.diagonal(spec, 0, 1, lam)).key for lam in (2, 3, 4)
    }
    assert len(keys) == 1


def test_representatives_against_brute_force_q2():
    spec = field(2)
    reps = fc.equivalence_representatives(spec)
    brute: dict = {}
    for n in range(2**9):
        a = fc.Matrix3.from_ints(spec, [(n >> i) & 1 for i in range(9)])
        if a.is_scalar():
            continue
        k = fc.equiv_key(a)
        brute[k] = brute.get(k, 0) + 1
    assert len(reps) == len(brute)
    for rep in reps:
        assert brute[rep.key] == rep.orbit_size


@pytest.mark.parametrize("q", (2, 3))
def test_class_sizes_match_brute_force(q):
    spec = field(q)
    counts: dict = {}
    for n in range(q**9):
        vals = []
        m = n
        for _ in range(9):
            vals.append(m % q)
            m //= q
        a = fc.Matrix3.from_ints(spec, vals)
        key = (fc.charpoly(a).coeffs, fc.minpoly(a).coeffs)
        counts[key] = counts.get(key, 0) + 1
    for rep in fc.equivalence_representatives(spec):
        f = fc.charpoly(rep.matrix)
        m = fc.minpoly(rep.matrix)
        assert counts[(f.coeffs, m.coeffs)] == fc._class_size(spec, rep.tag)


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_orbit_sizes_partition_nonscalar_matrices(q):
    spec = field(q)
    total = sum(rep.orbit_size for rep in fc.equivalence_representatives(spec))
    assert total == q**9 - q
