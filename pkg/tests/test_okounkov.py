import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcinterp.exactnum import DomainError
from bcinterp.okounkov import (
    EXPAND_WEIGHT_GUARD,
    Params,
    SymEvenPoly,
    column_poly,
    column_poly_gf,
    det_formula_tau1,
    interpolate_from_values,
    k_constant,
    k_constant_alt,
    okounkov_eval,
    okounkov_eval_scaled,
    okounkov_expand,
    rank1_poly,
    rectangle_poly,
    verify_characterization,
)
from bcinterp.partitions import (
    cells,
    enumerate_Lambda,
    normalize,
    psi_tableau,
    reverse_tableaux,
    weight,
)

P_HALF = Params(2, Fraction(1), Fraction(1, 2))


def naive_eval(lam, pt, p):
    """Direct tableau sum written against the partitions primitives only."""
    lam = normalize(lam)
    total = Fraction(0)
    for t in reverse_tableaux(lam, p.n):
        term = psi_tableau(t, p.tau)
        for i, j in cells(lam):
            k = t.entry(i, j)
            c = (j - 1) + p.tau * (p.n - k - (i - 1)) + p.alpha
            term = term * (pt[k - 1] ** 2 - c * c)
        total += term
    return total


def rational_points(n, count, seed):
    rng = random.Random(seed)
    return [
        tuple(Fraction(rng.randint(-20, 20), rng.choice((1, 2, 3, 4))) for _ in range(n))
        for _ in range(count)
    ]


coords_st = st.fractions(min_value=-8, max_value=8, max_denominator=4)


# ---------------------------------------------------------------- params


def test_rho_and_node():
    assert P_HALF.rho == (Fraction(3, 2), Fraction(1, 2))
    assert P_HALF.node((1,)) == (Fraction(5, 2), Fraction(1, 2))
    assert P_HALF.node(()) == P_HALF.rho


def test_params_rejects_bad_rank():
    with pytest.raises(DomainError):
        Params(0, Fraction(1), Fraction(1, 2))


def test_node_rejects_long_partition():
    with pytest.raises(DomainError):
        P_HALF.node((1, 1, 1))


# ---------------------------------------------------------------- evaluation


def test_empty_partition_is_one():
    assert okounkov_eval((), (Fraction(7, 3), Fraction(1)), P_HALF) == 1


def test_single_box_values():
    # P_(1) = (x1^2 - (tau+alpha)^2) + (x2^2 - alpha^2) here
    assert okounkov_eval((1,), P_HALF.rho, P_HALF) == 0
    assert okounkov_eval((1,), (Fraction(2), Fraction(1)), P_HALF) == Fraction(5, 2)


def test_eval_rejects_bad_shapes():
    with pytest.raises(DomainError):
        okounkov_eval((1, 1, 1), (Fraction(1), Fraction(2)), P_HALF)
    with pytest.raises(DomainError):
        okounkov_eval((1,), (Fraction(1),), P_HALF)


@settings(max_examples=60, deadline=None)
@given(
    lam=st.sampled_from([(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2)]),
    ta=st.sampled_from([(1, Fraction(1, 2)), (Fraction(1, 2), 1), (2, 1)]),
    x1=coords_st,
    x2=coords_st,
)
def test_eval_matches_naive_tableau_sum(lam, ta, x1, x2):
    p = Params(2, Fraction(ta[0]), Fraction(ta[1]))
    assert okounkov_eval(lam, (x1, x2), p) == naive_eval(lam, (x1, x2), p)


def test_eval_matches_naive_rank3():
    p = Params(3, Fraction(1, 2), Fraction(3, 2))
    for lam in [(2, 1), (2, 2, 1), (3, 1, 1)]:
        for pt in rational_points(3, 4, seed=11):
            assert okounkov_eval(lam, pt, p) == naive_eval(lam, pt, p)


@settings(max_examples=40, deadline=None)
@given(x1=coords_st, x2=coords_st)
def test_symmetric_and_even(x1, x2):
    p = Params(2, Fraction(1, 2), Fraction(1))
    v = okounkov_eval((2, 1), (x1, x2), p)
    assert okounkov_eval((2, 1), (x2, x1), p) == v
    assert okounkov_eval((2, 1), (-x1, x2), p) == v


def test_scaled_agrees_and_bounds():
    for pt in rational_points(2, 6, seed=3):
        v, scale = okounkov_eval_scaled((2, 1), pt, P_HALF)
        assert v == okounkov_eval((2, 1), pt, P_HALF)
        assert scale >= abs(float(v)) * (1 - 1e-12)
    fv, fscale = okounkov_eval_scaled((2, 1), (1.5, 0.25), P_HALF)
    ev = okounkov_eval((2, 1), (Fraction(3, 2), Fraction(1, 4)), P_HALF)
    assert abs(fv - float(ev)) <= 1e-12 * fscale + 1e-15


# ---------------------------------------------------------------- closed forms


def test_rank1_poly_values():
    assert rank1_poly(0, Fraction(5), Fraction(1, 2)) == 1
    assert rank1_poly(2, Fraction(0), Fraction(1, 2)) == Fraction(9, 16)
    with pytest.raises(DomainError):
        rank1_poly(-1, Fraction(1), Fraction(1, 2))


def test_rank1_is_the_n1_interpolation_poly():
    # a single row in rank 1 does not see tau
    for tau in (Fraction(1), Fraction(1, 2), Fraction(3)):
        p = Params(1, tau, Fraction(3, 4))
        for l in range(5):
            for (x,) in rational_points(1, 3, seed=l):
                assert okounkov_eval((l,), (x,), p) == rank1_poly(l, x, Fraction(3, 4))


def test_det_formula_tau1_matches_eval():
    rng = random.Random(7)
    for n in (2, 3):
        for alpha in (Fraction(1, 2), Fraction(1)):
            p = Params(n, Fraction(1), alpha)
            for lam in enumerate_Lambda(n, 3):
                done = 0
                while done < 5:
                    pt = tuple(
                        Fraction(rng.randint(-20, 20), rng.choice((1, 2, 3))) for _ in range(n)
                    )
                    try:
                        d = det_formula_tau1(lam, pt, alpha)
                    except DomainError:
                        continue
                    assert d == okounkov_eval(lam, pt, p)
                    done += 1


def test_det_formula_rejects_coinciding_squares():
    with pytest.raises(DomainError):
        det_formula_tau1((1,), (Fraction(2), Fraction(-2)), Fraction(1, 2))


def test_column_poly_matches_eval():
    for n in (2, 3):
        for tau, alpha in ((Fraction(1), Fraction(1, 2)), (Fraction(1, 2), Fraction(3, 2))):
            p = Params(n, tau, alpha)
            for j in range(1, n + 1):
                col = (1,) * j
                for pt in rational_points(n, 6, seed=10 * n + j):
                    v = okounkov_eval(col, pt, p)
                    assert column_poly(j, pt, p) == v
                    assert column_poly_gf(j, pt, p) == v


def test_column_poly_rejects_bad_height():
    with pytest.raises(DomainError):
        column_poly(0, (Fraction(1), Fraction(2)), P_HALF)
    with pytest.raises(DomainError):
        column_poly_gf(3, (Fraction(1), Fraction(2)), P_HALF)


def test_rectangle_poly_matches_eval():
    for n in (1, 2):
        for tau, alpha in ((Fraction(1), Fraction(1, 2)), (Fraction(2), Fraction(1))):
            p = Params(n, tau, alpha)
            for l in range(4):
                for pt in rational_points(n, 5, seed=n + l):
                    assert rectangle_poly(l, pt, p) == okounkov_eval((l,) * n, pt, p)


# ---------------------------------------------------------------- the k constant


def test_k_constant_small_values():
    assert k_constant((), Fraction(1, 2)) == 1
    assert k_constant((1, 1), Fraction(1, 2)) == Fraction(3, 2)
    tau = Fraction(5, 3)
    assert k_constant((2, 1), tau) == tau + 2


def test_k_constant_alt_agrees():
    for n in (1, 2, 3):
        for d in (1, 2, 4):
            for mu in enumerate_Lambda(n, 4):
                assert k_constant_alt(mu, d, n) == k_constant(mu, Fraction(d, 2))


def test_k_constant_alt_rejects():
    with pytest.raises(DomainError):
        k_constant_alt((1,), 0, 2)
    with pytest.raises(DomainError):
        k_constant_alt((1, 1, 1), 2, 2)


# ---------------------------------------------------------------- characterization


def test_characterization_reports_clean():
    for n, tau, alpha in ((1, Fraction(1), Fraction(1, 2)), (2, Fraction(1), Fraction(1, 2)), (2, Fraction(1, 2), Fraction(1))):
        p = Params(n, tau, alpha)
        for lam in enumerate_Lambda(n, 3):
            rep = verify_characterization(lam, p)
            assert rep["ok"], rep
            assert rep["zero_failures"] == []
            assert rep["extra_failures"] == []
            assert rep["self_nonzero"]
            assert rep["zero_checked"] == sum(1 for mu in enumerate_Lambda(n, weight(lam))) - 1


def test_characterization_guard():
    with pytest.raises(DomainError):
        verify_characterization((5, 4), P_HALF)


# ---------------------------------------------------------------- expansion


def test_expand_single_box_json():
    poly = okounkov_expand((1,), P_HALF)
    assert poly.to_json() == {
        "n": 2,
        "terms": [{"exp": [1, 0], "coeff": "1"}, {"exp": [0, 0], "coeff": "-5/2"}],
    }


def test_expand_evaluates_like_eval():
    for lam in [(2,), (2, 1), (2, 2)]:
        poly = okounkov_expand(lam, P_HALF)
        assert poly.degree() == weight(lam)
        for pt in rational_points(2, 5, seed=17):
            assert poly.evaluate(pt) == okounkov_eval(lam, pt, P_HALF)


def test_expand_top_coefficient_is_one():
    poly = okounkov_expand((2, 1), P_HALF)
    assert poly.coefficient((2, 1)) == 1


def test_expand_guard():
    assert EXPAND_WEIGHT_GUARD == 8
    with pytest.raises(DomainError):
        okounkov_expand((5, 4), P_HALF)


# ---------------------------------------------------------------- interpolation


def test_interpolate_round_trip():
    target = SymEvenPoly(2, {(2, 0): Fraction(3), (1, 1): Fraction(-1, 2), (0, 0): Fraction(7, 5)})
    vals = {mu: target.evaluate(P_HALF.node(mu)) for mu in enumerate_Lambda(2, 2)}
    got = interpolate_from_values(vals, 2, P_HALF)
    assert got.coeffs == target.coeffs


def test_interpolate_missing_values():
    vals = {(): Fraction(1)}
    with pytest.raises(DomainError):
        interpolate_from_values(vals, 1, P_HALF)


def test_interpolate_detects_non_generic_tau():
    # tau = -1, alpha = 1/2 collapses the node of (1) onto a zero of P_(1)
    p = Params(2, Fraction(-1), Fraction(1, 2))
    vals = {mu: Fraction(0) for mu in enumerate_Lambda(2, 1)}
    with pytest.raises(DomainError):
        interpolate_from_values(vals, 1, p)


# ---------------------------------------------------------------- SymEvenPoly


def test_sym_poly_closes_under_permutation():
    poly = SymEvenPoly(2, {(1, 0): Fraction(2)})
    assert poly.coefficient((0, 1)) == 2


def test_sym_poly_drops_zero_coeffs():
    poly = SymEvenPoly(2, {(1, 1): Fraction(0)})
    assert poly.coeffs == {}
    assert poly.degree() == 0


def test_sym_poly_rejects_asymmetry():
    with pytest.raises(DomainError):
        SymEvenPoly(2, {(1, 0): Fraction(1), (0, 1): Fraction(2)})


def test_sym_poly_rejects_bad_exponents():
    with pytest.raises(DomainError):
        SymEvenPoly(2, {(1,): Fraction(1)})
    with pytest.raises(DomainError):
        SymEvenPoly(2, {(-1, 0): Fraction(1)})


def test_sym_poly_evaluate_checks_length():
    poly = SymEvenPoly(2, {(1, 0): Fraction(1)})
    with pytest.raises(DomainError):
        poly.evaluate((Fraction(1),))
