"""Certification of Leonard-system data from intersection numbers.

:func:`certify` checks the eight conditions (i)-(viii) on a
:class:`LeonardData` and, when all hold, returns a :class:`Certificate`
carrying every derived recurrence constant.  :func:`infer_eigenvalues`
fills in the eigenvalue sequence when only ``theta_star``, ``a``, ``b``
and ``c`` are known.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .leonard_data import (
    ConditionFailure,
    ConditionReport,
    DataError,
    Ext,
    LeonardData,
    RecurrenceConstants,
    delta_star,
    derive_beta_gamma_star,
    derive_omega_eta_star,
    extend_dual_eigenvalues,
    extended,
    recurrence_residuals,
    solve_beta_gamma_star,
)

log = logging.getLogger(__name__)


class InferenceError(ValueError):
    """Eigenvalue inference failed; ``stage`` names the step that broke."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.message = message


@dataclass(frozen=True)
class Certificate:
    data: LeonardData
    constants: RecurrenceConstants
    report: ConditionReport

    @property
    def passed(self) -> bool:
        return True


def row_sums(data: LeonardData) -> list:
    return [data.c_at(i) + data.a[i] + data.b_at(i) for i in range(data.d + 1)]


def bici_lhs(data: LeonardData, ts: Ext, i: int):
    """``c_i(t_{i-1} - t_i) - b_i(t_i - t_{i+1})``."""
    return data.c_at(i) * (ts[i - 1] - ts[i]) - data.b_at(i) * (ts[i] - ts[i + 1])


def bici_residuals(data: LeonardData, ts: Ext, theta0, theta1, a0_star) -> list:
    return [bici_lhs(data, ts, i) - (theta1 - theta0) * (ts[i] - a0_star)
            for i in range(data.d + 1)]


def solve_a0_star(data: LeonardData, ts: Ext, theta0, theta1):
    # the i = 0 instance of (vi); c_0 = 0 leaves a single b-term
    return ts[0] + data.b[0] * (ts[0] - ts[1]) / (theta1 - theta0)


def omega_expression(data: LeonardData, ts: Ext, theta0, theta_m1, i: int):
    """The expression of condition (vii) at index ``1 <= i <= d``."""
    return (data.c_at(i) * (ts[i - 1] - ts[i + 1]) - data.b_at(i - 1) * (ts[i - 2] - ts[i])
            - (theta0 - theta_m1) * (ts[i - 1] + ts[i]))


def solve_theta_m1(data: LeonardData, ts: Ext, theta0, theta1, beta, gamma_star):
    """Pick theta_{-1} so the condition (vii) expression agrees at i = 1 and i = 2.

    The expression is affine in theta_{-1} with slope ``t_{i-1} + t_i``,
    so the two instances differ by ``(t_0 - t_2) * theta_{-1}`` plus a
    constant.  With ``d = 1`` there is only one instance and theta_{-1} is
    unconstrained; we then take the value that makes gamma equal gamma*.
    """
    if data.d == 1:
        return gamma_star + beta * theta0 - theta1
    zero = data.field.zero
    k1 = omega_expression(data, ts, theta0, zero, 1)
    k2 = omega_expression(data, ts, theta0, zero, 2)
    # expression(i) = k_i + theta_{-1} (t_{i-1} + t_i)
    return (k2 - k1) / (ts[0] - ts[2])


def certify(data: LeonardData) -> Certificate | ConditionReport:
    """Check conditions (i)-(viii) and derive all recurrence constants.

    Returns a :class:`Certificate` on success and otherwise a
    :class:`ConditionReport` listing every violation found.  Cheap
    pointwise conditions are all checked; the derivation chain stops
    only where a needed divisor vanishes.
    """
    if data.theta is None:
        raise DataError("theta is missing; run infer_eigenvalues first")
    d, th, tstar = data.d, data.theta, data.theta_star
    rep = ConditionReport()

    for i in range(d + 1):
        for j in range(i + 1, d + 1):
            if th[i] == th[j]:
                rep.add("i", j, f"theta_{i} = theta_{j}")
    for i in range(1, d + 1):
        if tstar[i] == tstar[0]:
            rep.add("ii", i, f"theta*_{i} = theta*_0")
    for i in range(1, d + 1):
        if not data.b[i - 1] * data.c[i - 1]:
            rep.add("iv", i, f"b_{i - 1} c_{i} = 0")
    for i, s in enumerate(row_sums(data)):
        if s != th[0]:
            rep.add("v", i, f"c_{i} + a_{i} + b_{i} != theta_0", s - th[0])

    try:
        beta, gamma_star = solve_beta_gamma_star(tstar, data.beta_override, data.gamma_star_override)
    except ConditionFailure as exc:
        rep.add(exc.condition, exc.index, exc.message, exc.residual)
        return rep
    for i, r in enumerate(recurrence_residuals(tstar, beta, gamma_star), start=1):
        if r:
            rep.add("iii", i, f"theta* three-term recurrence fails at i={i}", r)
    for name, given, derived in (("beta", data.beta_override, beta),
                                 ("gamma*", data.gamma_star_override, gamma_star)):
        if given is not None and given != derived:
            rep.add("iii", None, f"supplied {name} disagrees with the one forced by theta*", given - derived)

    ts_m1, ts_dp1 = extend_dual_eigenvalues(tstar, beta, gamma_star)
    ts = extended(tstar, ts_m1, ts_dp1)
    try:
        dstar = delta_star(ts, beta, gamma_star)
    except ConditionFailure as exc:
        rep.add(exc.condition, exc.index, exc.message, exc.residual)
        dstar = None

    if th[1] == th[0]:
        # already recorded under (i); a0* has no defining equation
        return rep
    a0_star = solve_a0_star(data, ts, th[0], th[1])
    for i, r in enumerate(bici_residuals(data, ts, th[0], th[1], a0_star)):
        if r:
            rep.add("vi", i, f"condition (vi) identity fails at i={i}", r)

    if d >= 2 and ts[0] == ts[2]:
        rep.add("iii", 2, "theta*_0 = theta*_2; theta_{-1} cannot be solved")
        return rep
    theta_m1 = solve_theta_m1(data, ts, th[0], th[1], beta, gamma_star)
    Omega = omega_expression(data, ts, th[0], theta_m1, 1)
    for i in range(2, d + 1):
        r = omega_expression(data, ts, th[0], theta_m1, i) - Omega
        if r:
            rep.add("vii", i, f"condition (vii) expression differs from its i=1 value at i={i}", r)

    gamma = theta_m1 - beta * th[0] + th[1]
    for i, r in enumerate(recurrence_residuals(th, beta, gamma), start=1):
        if r:
            rep.add("viii", i, f"theta three-term recurrence fails at i={i}", r)

    try:
        omega, eta_star = derive_omega_eta_star(
            data, gamma=gamma, gamma_star=gamma_star, a0_star=a0_star, Omega=Omega, theta_star_ext=ts)
    except ConditionFailure as exc:
        rep.add(exc.condition, exc.index, exc.message, exc.residual)

    if not rep.passed:
        return rep
    consts = RecurrenceConstants(
        beta=beta, gamma=gamma, gamma_star=gamma_star, delta_star=dstar, omega=omega,
        eta_star=eta_star, Omega=Omega, a0_star=a0_star, theta_m1=theta_m1,
        theta_dp1=gamma + beta * th[d] - th[d - 1],
        theta_star_m1=ts_m1, theta_star_dp1=ts_dp1,
    )
    return Certificate(data=data, constants=consts, report=rep)


def infer_eigenvalues(data: LeonardData) -> LeonardData:
    """Complete ``data`` with the eigenvalue sequence forced by the other scalars.

    theta_0 is the common row sum.  Condition (vi) at ``i = 0, 1`` is a
    linear system in ``X = theta_1 - theta_0`` and ``Y = X a0*``; the
    rest of the sequence follows from theta_{-1} and the recurrence.
    Any ``theta`` already present is ignored.  Raises
    :class:`InferenceError`.
    """
    d, f = data.d, data.field
    tstar = data.theta_star
    sums = row_sums(data)
    for i, s in enumerate(sums):
        if s != sums[0]:
            raise InferenceError("condition (v)", f"row sum at i={i} is {f.render(s)}, "
                                                  f"expected {f.render(sums[0])}")
    theta0 = sums[0]

    if d >= 2:
        try:
            beta, gamma_star = derive_beta_gamma_star(tstar, data.beta_override, data.gamma_star_override)
        except ConditionFailure as exc:
            raise InferenceError("condition (iii)", exc.message) from exc
        ts = extended(tstar, *extend_dual_eigenvalues(tstar, beta, gamma_star))
    else:
        beta = gamma_star = None
        ts = extended(tstar, f.zero, f.zero)  # boundary terms carry zero coefficients

    # condition (vi) at i reads  L_i = X t_i - Y
    L0, L1 = bici_lhs(data, ts, 0), bici_lhs(data, ts, 1)
    if tstar[0] == tstar[1]:
        raise InferenceError("condition (vi)", "theta*_0 = theta*_1 makes the system for theta_1 singular")
    X = (L0 - L1) / (tstar[0] - tstar[1])
    if not X:
        raise InferenceError("condition (i)", "inferred theta_1 equals theta_0")
    Y = X * tstar[0] - L0
    theta1 = theta0 + X
    log.debug("inferred theta_0=%s theta_1=%s a0*=%s", theta0, theta1, Y / X)
    theta = [theta0, theta1]
    if d >= 2:
        if ts[0] == ts[2]:
            raise InferenceError("condition (vii)", "theta*_0 = theta*_2; theta_{-1} cannot be solved")
        theta_m1 = solve_theta_m1(data, ts, theta0, theta1, beta, gamma_star)
        gamma = theta_m1 - beta * theta0 + theta1
        for i in range(1, d):
            theta.append(gamma + beta * theta[i] - theta[i - 1])
    return data.with_theta(theta)
