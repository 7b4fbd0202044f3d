import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcinterp.exactnum import DomainError
from bcinterp.okounkov import Params, k_constant, okounkov_eval
from bcinterp.partitions import enumerate_Lambda
from bcinterp.shimura import (
    GroupData,
    Verdict,
    group_params,
    in_A_certified,
    in_G,
    in_U0_knapp_speh,
    in_square,
    phi_j,
    q_poly,
    q_poly_scaled,
    shimura_eigenvalue,
)

SU22 = GroupData(2, 2, 0)
P22 = group_params(SU22)

coords_st = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def rational_points(n, count, seed):
    rng = random.Random(seed)
    return [
        tuple(Fraction(rng.randint(-12, 12), rng.choice((1, 2, 3, 4))) for _ in range(n))
        for _ in range(count)
    ]


# ---------------------------------------------------------------- dictionary


def test_group_params_u_m_2():
    # U(m,2): n=2, d=2, b=m-2 gives rho = ((m+1)/2, (m-1)/2)
    for m in (2, 3, 4, 7):
        p = group_params(GroupData(2, 2, m - 2))
        assert p.tau == 1
        assert p.rho == (Fraction(m + 1, 2), Fraction(m - 1, 2))


def test_group_params_twist():
    p = group_params(GroupData(2, 2, 0, p=1))
    assert p.alpha == 1
    assert group_params(GroupData(3, 4, 2)).tau == 2


def test_group_data_validation():
    with pytest.raises(DomainError):
        GroupData(0, 2, 0)
    with pytest.raises(DomainError):
        GroupData(2, -1, 0)
    with pytest.raises(DomainError):
        GroupData(2, 2, -1)


# ---------------------------------------------------------------- eigenvalues


def test_eigenvalue_normalization():
    for pt in rational_points(2, 4, seed=1):
        assert shimura_eigenvalue((), pt, SU22) == 1


def test_eigenvalue_vanishes_below_own_node():
    for mu in ((1,), (1, 1), (2,)):
        assert shimura_eigenvalue(mu, P22.rho, SU22) == 0
    assert shimura_eigenvalue((1, 1), P22.node((1,)), SU22) == 0


def test_eigenvalue_is_scaled_interpolation_value():
    g = GroupData(2, 4, 1)
    p = group_params(g)
    for mu in enumerate_Lambda(2, 3):
        for pt in rational_points(2, 3, seed=5):
            expect = k_constant(mu, p.tau) * okounkov_eval(mu, pt, p)
            assert shimura_eigenvalue(mu, pt, g) == expect


# ---------------------------------------------------------------- signed values


def test_q_poly_sign_convention():
    for pt in rational_points(2, 5, seed=9):
        assert q_poly((1,), pt, P22) == -okounkov_eval((1,), pt, P22)
        assert q_poly((1, 1), pt, P22) == okounkov_eval((1, 1), pt, P22)
        v, scale = q_poly_scaled((2, 1), pt, P22)
        assert v == q_poly((2, 1), pt, P22)
        assert scale >= 0.0


def test_q_poly_positive_on_origin():
    origin = (Fraction(0), Fraction(0))
    for lam in enumerate_Lambda(2, 4):
        assert q_poly(lam, origin, P22) > 0


@settings(max_examples=50, deadline=None)
@given(j=st.sampled_from([1, 2]), x1=coords_st, x2=coords_st)
def test_phi_j_is_q_of_column(j, x1, x2):
    assert phi_j(j, (x1, x2), P22) == q_poly((1,) * j, (x1, x2), P22)


def test_phi_j_rank3():
    p = group_params(GroupData(3, 2, 1))
    for j in (1, 2, 3):
        for pt in rational_points(3, 4, seed=j):
            assert phi_j(j, pt, p) == q_poly((1,) * j, pt, p)


def test_phi_j_rejects_bad_height():
    with pytest.raises(DomainError):
        phi_j(0, (Fraction(1), Fraction(1)), P22)
    with pytest.raises(DomainError):
        phi_j(3, (Fraction(1), Fraction(1)), P22)


# ---------------------------------------------------------------- membership


def test_in_G_accepts_interior_point():
    v = in_G((Fraction(1, 2), Fraction(1, 4)), P22)
    assert v.member
    assert v.witness is None
    assert v.degree_checked == 2
    assert v.witness_str() is None


def test_in_G_first_failing_column():
    # phi_1(1.6, 0.2) = -1/10 here, so the witness is j=1 (phi_2 fails too)
    v = in_G((1.6, 0.2), P22)
    assert not v.member
    assert v.witness == 1
    assert v.to_json() == {"member": False, "witness": "1", "degree_checked": 2}
    exact = in_G((Fraction(8, 5), Fraction(1, 5)), P22)
    assert not exact.member and exact.witness == 1


def test_in_G_boundary_is_member():
    assert in_G(P22.rho, P22).member
    assert in_G((1.5, 0.5), P22).member


def test_in_A_certified_small_square():
    v = in_A_certified((Fraction(1, 2), Fraction(1, 4)), P22, 4)
    assert v.member and v.degree_checked == 4
    bad = in_A_certified((1.6, 0.2), P22, 4)
    assert not bad.member
    assert bad.witness == (1,)
    assert bad.witness_str() == "1"
    with pytest.raises(DomainError):
        in_A_certified((1.6, 0.2), P22, 0)


def test_in_A_subset_of_in_G_on_grid():
    p = group_params(GroupData(2, 2, 2))
    top = p.rho[0] + 1
    for i in range(9):
        for k in range(i + 1):
            pt = (top * i / 8, top * k / 8)
            if in_A_certified(pt, p, 4).member:
                assert in_G(pt, p).member


def test_in_square():
    assert in_square((Fraction(1, 2), Fraction(1, 4)), P22)
    assert in_square((Fraction(1, 2), Fraction(1, 2)), P22)
    assert not in_square((Fraction(1, 4), Fraction(1, 2)), P22)  # increasing
    assert not in_square((Fraction(3, 2), Fraction(1, 2)), P22)  # above rho_2
    assert not in_square((Fraction(1, 2), Fraction(-1, 4)), P22)


def test_in_U0_base_triangle_and_clamp():
    assert in_U0_knapp_speh((Fraction(3, 10), Fraction(1, 10)), 0)
    # the b=0 box is [0,1/2]^2, so the printed triangle corner is cut off
    assert not in_U0_knapp_speh((0.9, 0.05), 0)
    assert not in_U0_knapp_speh((Fraction(4, 5), Fraction(2, 5)), 1)


def test_in_U0_shifted_triangles_and_segments():
    assert in_U0_knapp_speh((Fraction(3, 2), Fraction(1, 2)), 5)
    assert not in_U0_knapp_speh((Fraction(2), Fraction(1, 2)), 5)
    assert in_U0_knapp_speh((Fraction(5, 2), Fraction(1, 2)), 5)
    # the j=1 segment for b=3 extends past the j=1 triangle
    assert in_U0_knapp_speh((Fraction(7, 4), Fraction(3, 4)), 3)
    assert not in_U0_knapp_speh((Fraction(7, 4), Fraction(5, 8)), 3)
    with pytest.raises(DomainError):
        in_U0_knapp_speh((Fraction(0), Fraction(0)), -1)


def test_u0_inside_certified_set():
    # spot check the embedding on the b=3 family
    g = GroupData(2, 2, 3)
    p = group_params(g)
    for pt in [
        (Fraction(1, 2), Fraction(1, 4)),
        (Fraction(3, 2), Fraction(1, 2)),
        (Fraction(7, 4), Fraction(3, 4)),
    ]:
        assert in_U0_knapp_speh(pt, 3)
        assert in_A_certified(pt, p, 4).member


def test_verdict_json_roundtrip():
    v = Verdict(True, None, 6)
    assert v.to_json() == {"member": True, "witness": None, "degree_checked": 6}
    w = Verdict(False, (2, 1), 6)
    assert w.witness_str() == "2,1"
