"""Scalar data of a prospective Leonard system and its recurrence constants.

Index conventions follow the usual ones for intersection numbers: ``a``
and the two eigenvalue sequences run over ``0..d``, ``b`` over
``0..d-1`` and ``c`` over ``1..d``.  The boundary values ``c_0`` and
``b_d`` are the zero scalar and are never stored; use
:meth:`LeonardData.b_at` / :meth:`LeonardData.c_at` to read them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Sequence

from .exact_algebra import Field, Scalar


class DataError(ValueError):
    """Malformed input, such as a wrong sequence length or a scalar from another field."""


class ConditionFailure(ValueError):
    """A derivation step found a violated identity.

    ``condition`` is one of ``"i"``..``"viii"``, ``"delta_star"`` or
    ``"eta_star"``; ``index`` is the first offending index (or ``None``)
    and ``residual`` the exact amount by which the identity misses.
    """

    def __init__(self, condition: str, index: int | None, message: str, residual=None):
        super().__init__(message)
        self.condition = condition
        self.index = index
        self.message = message
        self.residual = residual


@dataclass(frozen=True)
class Violation:
    condition: str
    index: int | None
    message: str
    residual: Scalar | None = None

    @classmethod
    def from_failure(cls, exc: ConditionFailure) -> Violation:
        return cls(exc.condition, exc.index, exc.message, exc.residual)


@dataclass
class ConditionReport:
    violations: list[Violation] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, condition: str, index: int | None, message: str, residual=None) -> None:
        self.violations.append(Violation(condition, index, message, residual))

    def conditions(self) -> list[str]:
        """Distinct violated condition ids, in first-seen order."""
        return list(dict.fromkeys(v.condition for v in self.violations))

    def __bool__(self):
        return self.passed


class Ext:
    """Read-only view of a sequence indexed from ``first`` instead of 0."""

    __slots__ = ("values", "first")

    def __init__(self, values: Sequence, first: int = -1):
        self.values = tuple(values)
        self.first = first

    def __getitem__(self, i: int):
        k = i - self.first
        if not 0 <= k < len(self.values):
            raise IndexError(f"index {i} outside {self.first}..{self.first + len(self.values) - 1}")
        return self.values[k]

    def __len__(self):
        return len(self.values)


def _coerce_seq(f: Field, xs, name: str, length: int) -> tuple:
    if xs is None:
        raise DataError(f"{name} is missing")
    xs = tuple(f(x) for x in xs)
    if len(xs) != length:
        raise DataError(f"{name} must have {length} entries, got {len(xs)}")
    return xs


@dataclass(frozen=True)
class LeonardData:
    """The scalars ``(d, theta, theta_star, a, b, c)`` over one field.

    ``theta`` may be ``None`` for data awaiting eigenvalue inference.
    ``expected`` carries constants a family generator believes in; it is
    for golden tests only and never read by the certifier.
    """

    d: int
    theta: tuple | None
    theta_star: tuple
    a: tuple
    b: tuple
    c: tuple
    field: Field
    beta_override: Scalar | None = None
    gamma_star_override: Scalar | None = None
    expected: dict = dc_field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise DataError(f"d must be an integer >= 1, got {self.d!r}")
        n = self.d + 1
        for name, length in (("theta_star", n), ("a", n), ("b", self.d), ("c", self.d)):
            seq = getattr(self, name)
            if len(seq) != length:
                raise DataError(f"{name} must have {length} entries, got {len(seq)}")
        if self.theta is not None and len(self.theta) != n:
            raise DataError(f"theta must have {n} entries, got {len(self.theta)}")
        seqs = [self.theta_star, self.a, self.b, self.c] + ([self.theta] if self.theta else [])
        extras = [x for x in (self.beta_override, self.gamma_star_override) if x is not None]
        for x in [x for s in seqs for x in s] + extras:
            if not self.field.contains(x):
                raise DataError(f"scalar {x!r} does not belong to {self.field}")

    @classmethod
    def build(cls, field: Field, d: int, *, theta_star, a, b, c, theta=None,
              beta=None, gamma_star=None, expected=None) -> LeonardData:
        """Coerce ints, Fractions or scalar strings into ``field``."""
        n = d + 1
        return cls(
            d=d,
            theta=None if theta is None else _coerce_seq(field, theta, "theta", n),
            theta_star=_coerce_seq(field, theta_star, "theta_star", n),
            a=_coerce_seq(field, a, "a", n),
            b=_coerce_seq(field, b, "b", d),
            c=_coerce_seq(field, c, "c", d),
            field=field,
            beta_override=None if beta is None else field(beta),
            gamma_star_override=None if gamma_star is None else field(gamma_star),
            expected=dict(expected or {}),
        )

    def b_at(self, i: int):
        return self.b[i] if 0 <= i < self.d else self.field.zero

    def c_at(self, i: int):
        return self.c[i - 1] if 1 <= i <= self.d else self.field.zero

    def with_theta(self, theta) -> LeonardData:
        theta = None if theta is None else tuple(self.field(x) for x in theta)
        return replace(self, theta=theta)

    def replace(self, **changes) -> LeonardData:
        f = self.field
        for k in ("theta", "theta_star", "a", "b", "c"):
            if changes.get(k) is not None:
                changes[k] = tuple(f(x) for x in changes[k])
        for k in ("beta_override", "gamma_star_override"):
            if changes.get(k) is not None:
                changes[k] = f(changes[k])
        return replace(self, **changes)


@dataclass(frozen=True)
class RecurrenceConstants:
    beta: Scalar
    gamma: Scalar
    gamma_star: Scalar
    delta_star: Scalar
    omega: Scalar
    eta_star: Scalar
    Omega: Scalar
    a0_star: Scalar
    theta_m1: Scalar
    theta_dp1: Scalar
    theta_star_m1: Scalar
    theta_star_dp1: Scalar

    NAMES = ("beta", "gamma", "gamma_star", "delta_star", "omega", "eta_star", "Omega",
             "a0_star", "theta_m1", "theta_dp1", "theta_star_m1", "theta_star_dp1")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.NAMES}


def solve_beta_gamma_star(theta_star: Sequence, beta_override=None, gamma_star_override=None):
    """Candidate ``(beta, gamma_star)`` from the lowest recurrence instances.

    No consistency check is made; see :func:`recurrence_residuals`.
    For ``d >= 3`` beta comes from ``i = 1, 2`` and an override is
    ignored; for ``d <= 2`` it must be supplied, and for ``d = 1`` so
    must gamma_star.
    """
    ts = tuple(theta_star)
    d = len(ts) - 1
    if d >= 3:
        den = ts[2] - ts[1]
        if not den:
            raise ConditionFailure("iii", 1, "theta*_1 = theta*_2; beta cannot be solved")
        beta = (ts[1] + ts[3] - ts[0] - ts[2]) / den
    elif beta_override is None:
        raise DataError("beta must be supplied when d <= 2")
    else:
        beta = beta_override
    if d == 1:
        if gamma_star_override is None:
            raise DataError("gamma_star must be supplied when d = 1")
        return beta, gamma_star_override
    return beta, ts[0] - beta * ts[1] + ts[2]


def recurrence_residuals(seq: Sequence, beta, gamma) -> list:
    """``s_{i-1} - beta s_i + s_{i+1} - gamma`` for ``1 <= i <= d-1``."""
    return [seq[i - 1] - beta * seq[i] + seq[i + 1] - gamma for i in range(1, len(seq) - 1)]


def derive_beta_gamma_star(theta_star: Sequence, beta_override=None, gamma_star_override=None):
    """Find ``(beta, gamma_star)`` for the three-term recurrence of ``theta_star``.

    For ``d >= 3`` beta is forced: it is solved from the recurrence at
    ``i = 1, 2`` and then checked at every ``1 <= i <= d-1``.  For
    ``d <= 2`` beta is free and must be supplied; for ``d = 1`` the
    recurrence has no instances at all, so gamma_star must be supplied
    too.  Raises :class:`ConditionFailure` (condition ``"iii"``) or
    :class:`DataError` for missing overrides.
    """
    beta, gamma_star = solve_beta_gamma_star(theta_star, beta_override, gamma_star_override)
    for i, r in enumerate(recurrence_residuals(theta_star, beta, gamma_star), start=1):
        if r:
            raise ConditionFailure("iii", i, f"theta* three-term recurrence fails at i={i}", r)
    for name, given, derived in (("beta", beta_override, beta), ("gamma*", gamma_star_override, gamma_star)):
        if given is not None and given != derived:
            raise ConditionFailure("iii", None, f"supplied {name} disagrees with the one forced by theta*",
                                   given - derived)
    return beta, gamma_star


def extend_dual_eigenvalues(theta_star: Sequence, beta, gamma_star):
    """Return ``(theta*_{-1}, theta*_{d+1})`` continuing the recurrence."""
    ts = tuple(theta_star)
    d = len(ts) - 1
    return gamma_star + beta * ts[0] - ts[1], gamma_star + beta * ts[d] - ts[d - 1]


def extended(seq: Sequence, before, after) -> Ext:
    return Ext((before, *seq, after), first=-1)


def delta_star_term(ts: Ext, beta, gamma_star, i: int):
    x, y = ts[i - 1], ts[i]
    return x * x - beta * x * y + y * y - gamma_star * (x + y)


def delta_star(theta_star_ext: Ext, beta, gamma_star):
    """Common value of the quadratic form over ``i = 0..d+1``.

    The extended sequence must be indexed ``-1..d+1``.
    """
    d = len(theta_star_ext) - 3
    value = delta_star_term(theta_star_ext, beta, gamma_star, 0)
    for i in range(1, d + 2):
        r = delta_star_term(theta_star_ext, beta, gamma_star, i) - value
        if r:
            raise ConditionFailure("delta_star", i, f"delta* expression not constant at i={i}", r)
    return value


def P(lam, mu, beta, gamma_star, delta_star_value):
    return lam * lam - beta * lam * mu + mu * mu - gamma_star * (lam + mu) - delta_star_value


def eta_star_term(data: LeonardData, ts: Ext, gamma, omega, i: int):
    t = ts[i]
    return data.a[i] * (t - ts[i - 1]) * (t - ts[i + 1]) - gamma * t * t - omega * t


def derive_omega_eta_star(data: LeonardData, *, gamma, gamma_star, a0_star, Omega, theta_star_ext: Ext):
    """Return ``(omega, eta_star)`` from the already-derived constants.

    omega comes straight from the identity linking it to Omega; eta* is
    the common value of the diagonal quadratic, checked at every
    ``0 <= i <= d``.
    """
    th0, th1 = data.theta[0], data.theta[1]
    omega = 2 * th0 * (a0_star - gamma_star) - 2 * th1 * a0_star - Omega
    eta = eta_star_term(data, theta_star_ext, gamma, omega, 0)
    for i in range(1, data.d + 1):
        r = eta_star_term(data, theta_star_ext, gamma, omega, i) - eta
        if r:
            raise ConditionFailure("eta_star", i, f"eta* expression not constant at i={i}", r)
    return omega, eta


def ai_cond1_residuals(data: LeonardData, ts: Ext, gamma, omega, eta_star) -> list:
    """``a_i(t_i - t_{i-1})(t_i - t_{i+1}) - (gamma t_i^2 + omega t_i + eta*)`` for each i."""
    return [eta_star_term(data, ts, gamma, omega, i) - eta_star for i in range(data.d + 1)]


def ai_cond2_residuals(data: LeonardData, ts: Ext, gamma, omega) -> list:
    """Residuals of the first-order diagonal identity for ``1 <= i <= d``."""
    out = []
    for i in range(1, data.d + 1):
        lhs = (data.a[i] * (ts[i] - ts[i + 1]) + data.a[i - 1] * (ts[i - 1] - ts[i - 2])
               - gamma * (ts[i - 1] + ts[i]))
        out.append(lhs - omega)
    return out
