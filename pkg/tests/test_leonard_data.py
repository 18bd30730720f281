from fractions import Fraction

import pytest

from leonard.certifier import certify
from leonard.exact_algebra import Field
from leonard.families import krawtchouk, racah_example
from leonard.leonard_data import (
    ConditionFailure,
    DataError,
    Ext,
    LeonardData,
    P,
    ai_cond1_residuals,
    ai_cond2_residuals,
    delta_star,
    delta_star_term,
    derive_beta_gamma_star,
    derive_omega_eta_star,
    extend_dual_eigenvalues,
    extended,
)

Q = Field.rational()
F = Fraction


def _ext(data, consts):
    return extended(data.theta_star, consts.theta_star_m1, consts.theta_star_dp1)


def test_beta_gamma_star_racah(racah):
    assert derive_beta_gamma_star(racah.theta_star) == (2, F(-12, 35))


def test_beta_gamma_star_krawtchouk():
    assert derive_beta_gamma_star(krawtchouk(5).theta_star) == (2, 0)


def test_beta_gamma_star_q_racah():
    q, b, d = F(2), F(5), 4
    ts = [b * q ** (2 * i - d) + q ** (d - 2 * i) / b for i in range(d + 1)]
    beta, gamma_star = derive_beta_gamma_star(ts)
    assert beta == q ** 2 + q ** -2 == F(17, 4)
    assert gamma_star == 0


def test_beta_small_d_needs_override():
    with pytest.raises(DataError):
        derive_beta_gamma_star([Q(2), Q(0), Q(-2)])
    assert derive_beta_gamma_star([Q(2), Q(0), Q(-2)], Q(2)) == (2, 0)
    # d = 2: any beta is acceptable, gamma* follows from it
    assert derive_beta_gamma_star([Q(2), Q(0), Q(-2)], Q(5)) == (5, 0)
    with pytest.raises(DataError, match="gamma_star"):
        derive_beta_gamma_star([Q(1), Q(-1)], Q(2))
    assert derive_beta_gamma_star([Q(1), Q(-1)], Q(2), Q(0)) == (2, 0)


def test_inconsistent_beta_reports_index():
    ts = [Q(x) for x in (4, 2, 0, -2, -3)]
    with pytest.raises(ConditionFailure) as info:
        derive_beta_gamma_star(ts)
    assert info.value.condition == "iii"
    assert info.value.index == 3
    assert info.value.residual == 1


def test_override_conflict_for_large_d():
    with pytest.raises(ConditionFailure, match="beta"):
        derive_beta_gamma_star(krawtchouk(4).theta_star, Q(3))


def test_extend_dual_eigenvalues(racah):
    assert extend_dual_eigenvalues(racah.theta_star, 2, F(-12, 35)) == (3, F(-21, 5))
    assert extend_dual_eigenvalues(krawtchouk(5).theta_star, 2, 0) == (7, -7)
    assert extend_dual_eigenvalues([Q(i) for i in range(4)], 2, 0)[0] == -1


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8])
def test_delta_star_krawtchouk(d):
    ts = krawtchouk(d).theta_star
    m1, dp1 = extend_dual_eigenvalues(ts, Q(2), Q(0))
    # with beta = 2, gamma* = 0 the form is the square of a consecutive difference
    assert delta_star(extended(ts, m1, dp1), Q(2), Q(0)) == (m1 - ts[0]) ** 2 == 4


def test_delta_star_racah(racah):
    ts = racah.theta_star
    beta, gs = Q(2), F(-12, 35)
    m1, dp1 = extend_dual_eigenvalues(ts, beta, gs)
    full = [m1, *ts, dp1]
    # direct evaluation at every index, written out independently
    values = {x * x - 2 * x * y + y * y + F(12, 35) * (x + y) for x, y in zip(full, full[1:])}
    assert values == {F(72, 35)}
    assert delta_star(extended(ts, m1, dp1), beta, gs) == F(72, 35)


@pytest.mark.parametrize("s", [1, 3, F(2, 7), -5])
def test_delta_star_arithmetic_progression(s):
    ts = [Q(s) * i for i in range(6)]
    m1, dp1 = extend_dual_eigenvalues(ts, Q(2), Q(0))
    assert delta_star(extended(ts, m1, dp1), Q(2), Q(0)) == Q(s) ** 2


def test_delta_star_detects_nonconstant():
    ext = Ext([Q(x) for x in (3, 2, 1, 0, 7)], first=-1)
    with pytest.raises(ConditionFailure) as info:
        delta_star(ext, Q(2), Q(0))
    assert info.value.condition == "delta_star"
    assert info.value.index == 3


def test_omega_eta_star_krawtchouk():
    data = krawtchouk(4)
    ts = extended(data.theta_star, Q(6), Q(-6))
    omega, eta = derive_omega_eta_star(data, gamma=Q(0), gamma_star=Q(0), a0_star=Q(0), Omega=Q(0),
                                       theta_star_ext=ts)
    assert (omega, eta) == (0, 0)
    # the diagonal quadratic vanishes identically at i = 0, 1
    for i in (0, 1):
        assert data.a[i] * (ts[i] - ts[i - 1]) * (ts[i] - ts[i + 1]) == 0


def test_omega_eta_star_racah(racah):
    ts = extended(racah.theta_star, Q(3), F(-21, 5))
    th0, thm1, t = Q(3), Q(3), racah.theta_star
    # Omega straight from the (vii) expression at i = 1, with c_1 = 1, b_0 = 3
    Omega = 1 * (t[0] - t[2]) - 3 * (ts[-1] - t[1]) - (th0 - thm1) * (t[0] + t[1])
    assert Omega == 0
    omega, eta = derive_omega_eta_star(racah, gamma=F(-12, 35), gamma_star=F(-12, 35), a0_star=Q(0),
                                       Omega=Omega, theta_star_ext=ts)
    assert omega == F(72, 35)
    assert eta == F(-108, 35)
    # brute-force constancy of the eta* expression
    for i in range(6):
        expr = (racah.a[i] * (t[i] - ts[i - 1]) * (t[i] - ts[i + 1])
                + F(12, 35) * t[i] ** 2 - F(72, 35) * t[i])
        assert expr == F(-108, 35)


def test_wrong_Omega_breaks_eta_star_when_a_vanishes():
    data = krawtchouk(3)
    ts = extended(data.theta_star, Q(5), Q(-5))
    # a = 0 makes the eta* expression equal to -omega * theta*_i = Omega * theta*_i
    with pytest.raises(ConditionFailure) as info:
        derive_omega_eta_star(data, gamma=Q(0), gamma_star=Q(0), a0_star=Q(0), Omega=Q(7),
                              theta_star_ext=ts)
    assert info.value.residual == 7 * (ts[1] - ts[0]) == -14


def test_eta_star_nonconstant_raises(racah):
    ts = extended(racah.theta_star, Q(3), F(-21, 5))
    with pytest.raises(ConditionFailure) as info:
        derive_omega_eta_star(racah, gamma=Q(0), gamma_star=F(-12, 35), a0_star=Q(0), Omega=Q(0),
                              theta_star_ext=ts)
    assert info.value.condition == "eta_star"


def test_diagonal_identities_hold(instance):
    cert = certify(instance)
    c = cert.constants
    ts = _ext(instance, c)
    assert not any(ai_cond1_residuals(instance, ts, c.gamma, c.omega, c.eta_star))
    assert not any(ai_cond2_residuals(instance, ts, c.gamma, c.omega))


def test_delta_star_terms_agree_pairwise(instance):
    c = certify(instance).constants
    ts = _ext(instance, c)
    terms = [delta_star_term(ts, c.beta, c.gamma_star, i) for i in range(instance.d + 2)]
    assert len(set(terms)) == 1


def test_polynomial_P_identities(instance):
    c = certify(instance).constants
    ts = _ext(instance, c)
    for i in range(instance.d + 1):
        assert P(ts[i], ts[i + 1], c.beta, c.gamma_star, c.delta_star) == 0
        assert (P(ts[i], ts[i], c.beta, c.gamma_star, c.delta_star)
                == (ts[i] - ts[i - 1]) * (ts[i] - ts[i + 1]))


def test_leonard_data_validation():
    with pytest.raises(DataError):
        LeonardData.build(Q, 2, theta_star=[1, 2], a=[0, 0, 0], b=[1, 1], c=[1, 1])
    with pytest.raises(DataError):
        LeonardData.build(Q, 0, theta_star=[1], a=[0], b=[], c=[])
    with pytest.raises(DataError):
        LeonardData(d=1, theta=None, theta_star=(Q(1), Q(2)), a=(Q(0), Q(0)), b=(Q(1),), c=(1,), field=Q)


def test_boundary_values_are_zero():
    data = krawtchouk(3)
    assert data.c_at(0) == 0 and data.b_at(3) == 0
    assert data.b_at(0) == 3 and data.c_at(3) == 3
