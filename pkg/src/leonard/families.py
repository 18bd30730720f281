"""Generators for the Krawtchouk, q-Racah and d=5 Racah examples.

Each generator returns a :class:`LeonardData` whose ``expected`` mapping
holds the recurrence constants the family is known to have; tests
compare those against what :func:`leonard.certifier.certify` derives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .exact_algebra import Field, Scalar
from .leonard_data import LeonardData


class FamilyError(ValueError):
    """Parameters outside the admissible range of a family."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or [message]


def krawtchouk(d: int, field: Field | None = None) -> LeonardData:
    field = field or Field.rational()
    if d < 1:
        raise FamilyError(f"d must be >= 1, got {d}")
    p = field.characteristic
    if p != 0 and p <= d:
        raise FamilyError(f"characteristic {p} must be zero or an odd prime greater than d={d}")
    seq = [d - 2 * i for i in range(d + 1)]
    expected = {
        "beta": field(2), "gamma": field(0), "gamma_star": field(0),
        "theta_m1": field(d + 2), "theta_star_m1": field(d + 2),
        "theta_star_dp1": field(-d - 2), "a0_star": field(0),
    }
    return LeonardData.build(
        field, d,
        theta=seq, theta_star=seq,
        a=[0] * (d + 1), b=[d - i for i in range(d)], c=list(range(1, d + 1)),
        beta=2 if d <= 2 else None,
        gamma_star=0 if d == 1 else None,
        expected=expected,
    )


@dataclass(frozen=True)
class QRacahParams:
    d: int
    a: Scalar
    b: Scalar
    c: Scalar
    q: Scalar

    @classmethod
    def of(cls, field: Field, d: int, a, b, c, q) -> QRacahParams:
        return cls(d, field(a), field(b), field(c), field(q))


def q_racah_violations(params: QRacahParams) -> list[str]:
    """Every admissibility constraint that fails, as readable strings.

    The membership tests are evaluated literally in the field, so an
    accidental ``q^(2i) = 1`` modulo p is caught like any other.
    """
    d, a, b, c, q = params.d, params.a, params.b, params.c, params.q
    out = []
    for name, x in (("a", a), ("b", b), ("c", c), ("q", q)):
        if not x:
            out.append(f"{name} must be nonzero")
    if out:
        return out
    for i in range(1, d + 1):
        if q ** (2 * i) == 1:
            out.append(f"q^(2i) = 1 at i={i}")
    forbidden2 = {2 * d - 2 - 2 * k: q ** (2 * d - 2 - 2 * k) for k in range(2 * d - 1)}
    for name, x in (("a^2", a * a), ("b^2", b * b)):
        for e, v in forbidden2.items():
            if x == v:
                out.append(f"{name} is among q^(2d-2), ..., q^(2-2d): {name} = q^{e}")
    forbidden1 = {d - 1 - 2 * k: q ** (d - 1 - 2 * k) for k in range(d)}
    for name, x in (("abc", a * b * c), ("a^-1bc", b * c / a), ("ab^-1c", a * c / b), ("abc^-1", a * b / c)):
        for e, v in forbidden1.items():
            if x == v:
                out.append(f"{name} is among q^(d-1), ..., q^(1-d): {name} = q^{e}")
    return out


def q_racah(params: QRacahParams, field: Field) -> LeonardData:
    bad = q_racah_violations(params)
    if bad:
        raise FamilyError("; ".join(bad), bad)
    try:
        return _q_racah(params, field)
    except ZeroDivisionError as exc:
        raise FamilyError(f"degenerate q-Racah parameters: {exc}") from exc


def _q_racah(params: QRacahParams, field: Field) -> LeonardData:
    d, a, b, c, q = params.d, params.a, params.b, params.c, params.q
    ai, bi, ci = 1 / a, 1 / b, 1 / c

    def Q(n):
        return q ** n

    theta = [a * Q(2 * i - d) + ai * Q(d - 2 * i) for i in range(d + 1)]
    theta_star = [b * Q(2 * i - d) + bi * Q(d - 2 * i) for i in range(d + 1)]

    bs = [(Q(d) - Q(-d)) * (c * q - ai * bi * Q(d)) * (1 / q - a * b * ci * Q(-d))
          / (b * Q(1 - d) - bi * Q(d - 1))]
    for i in range(1, d):
        num = ((Q(d - i) - Q(i - d)) * (b * Q(i - d) - bi * Q(d - i))
               * (c * Q(i + 1) - ai * bi * Q(d - i)) * (Q(-i - 1) - a * b * ci * Q(i - d)))
        den = (b * Q(2 * i - d) - bi * Q(d - 2 * i)) * (b * Q(2 * i - d + 1) - bi * Q(d - 2 * i - 1))
        bs.append(num / den)
    cs = []
    for i in range(1, d):
        num = ((Q(i) - Q(-i)) * (b * Q(i) - bi * Q(-i))
               * (ai * Q(i - d - 1) - bi * ci * Q(-i)) * (b * Q(i) - a * c * Q(d - i + 1)))
        den = (b * Q(2 * i - d - 1) - bi * Q(d - 2 * i + 1)) * (b * Q(2 * i - d) - bi * Q(d - 2 * i))
        cs.append(num / den)
    cs.append((Q(d) - Q(-d)) * (ai / q - bi * ci * Q(-d)) * (b * Q(d) - a * c * q)
              / (b * Q(d - 1) - bi * Q(1 - d)))

    zero = field.zero
    a_seq = [theta[0] - (bs[i] if i < d else zero) - (cs[i - 1] if i > 0 else zero)
             for i in range(d + 1)]
    beta = q * q + 1 / (q * q)
    expected = {
        "beta": beta, "gamma": zero, "gamma_star": zero,
        "theta_m1": a * Q(-d - 2) + ai * Q(d + 2),
        "theta_star_m1": b * Q(-d - 2) + bi * Q(d + 2),
        "theta_star_dp1": b * Q(d + 2) + bi * Q(-d - 2),
        "a0_star": ((b + bi) * (a * q - ai / q) - (c + ci) * (Q(d) - Q(-d)))
                   / (a * Q(1 - d) - ai * Q(d - 1)),
        "Omega": (q * q - 1 / (q * q)) * ((Q(d + 1) - Q(-d - 1)) * (c + ci) - (a - ai) * (b + bi)),
    }
    return LeonardData.build(
        field, d, theta=theta, theta_star=theta_star, a=a_seq, b=bs, c=cs,
        beta=beta if d <= 2 else None,
        gamma_star=zero if d == 1 else None,
        expected=expected,
    )


def search_q_racah(field: Field, d: int, limit: int | None = None) -> Iterator[QRacahParams]:
    """Admissible q-Racah parameters with small representatives, in a fixed order."""
    p = field.characteristic
    bound = limit or (p if p else 12)
    values = range(2, bound)
    for q, a, b, c in itertools.product(values, repeat=4):
        params = QRacahParams.of(field, d, a, b, c, q)
        if not q_racah_violations(params):
            yield params


RACAH_THETA_STAR = ("3", "93/35", "69/35", "33/35", "-3/7", "-15/7")
RACAH_B = ("3", "64/35", "243/175", "48/49", "11/21")
RACAH_C = ("1", "192/175", "243/245", "16/21", "3/7")
RACAH_A = ("0", "6/35", "18/35", "36/35", "12/7", "18/7")


def racah_example(with_theta: bool = True) -> LeonardData:
    """The d = 5 Racah-type example over the rationals.

    With ``with_theta=False`` the eigenvalues are left for
    :func:`leonard.certifier.infer_eigenvalues` to recover.
    """
    field = Field.rational()
    expected = {
        "beta": Fraction(2), "gamma": Fraction(-12, 35), "gamma_star": Fraction(-12, 35),
        "theta_m1": Fraction(3), "theta_star_m1": Fraction(3),
        "theta_star_dp1": Fraction(-21, 5), "a0_star": Fraction(0),
    }
    return LeonardData.build(
        field, 5,
        theta=RACAH_THETA_STAR if with_theta else None,
        theta_star=RACAH_THETA_STAR, a=RACAH_A, b=RACAH_B, c=RACAH_C,
        expected=expected,
    )
