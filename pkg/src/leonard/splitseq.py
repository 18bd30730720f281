"""First and second split sequences from intersection numbers."""

from __future__ import annotations

from dataclasses import dataclass

from .exact_algebra import Field
from .families import QRacahParams
from .leonard_data import LeonardData


class SplitError(ValueError):
    pass


@dataclass(frozen=True)
class SplitSequences:
    varphi: tuple
    phi: tuple


def split_sequences(data: LeonardData) -> SplitSequences:
    d, ts = data.d, data.theta_star
    for i in range(d + 1):
        for j in range(i + 1, d + 1):
            if ts[i] == ts[j]:
                raise SplitError(f"theta*_{i} = theta*_{j}; split sequences are undefined")

    varphi = [data.b[0] * (ts[1] - ts[0])]
    for i in range(2, d + 1):
        num = data.field.one
        for k in range(i):
            num = num * (ts[i] - ts[k])
        den = data.field.one
        for k in range(i - 1):
            den = den * (ts[i - 1] - ts[k])
        varphi.append(data.b[i - 1] * num / den)

    phi = []
    for i in range(1, d):
        num = data.field.one
        for k in range(i, d + 1):
            num = num * (ts[i - 1] - ts[k])
        den = data.field.one
        for k in range(i + 1, d + 1):
            den = den * (ts[i] - ts[k])
        phi.append(data.c[i - 1] * num / den)
    phi.append(data.c[d - 1] * (ts[d - 1] - ts[d]))
    return SplitSequences(tuple(varphi), tuple(phi))


def _check_index(d: int, i: int):
    if not 1 <= i <= d:
        raise SplitError(f"index {i} outside 1..{d}")


def krawtchouk_split_closed_form(d: int, i: int, field: Field | None = None):
    field = field or Field.rational()
    _check_index(d, i)
    v = 2 * i * (d - i + 1)
    return field(-v), field(v)


def q_racah_split_closed_form(params: QRacahParams, i: int):
    d, a, b, c, q = params.d, params.a, params.b, params.c, params.q
    _check_index(d, i)
    common = q ** (d + 1) * (q ** i - q ** -i) * (q ** (i - d - 1) - q ** (d - i + 1))
    t = q ** (i - d - 1)
    varphi = (common / (a * b) * (q ** -i - a * b * c * t) * (q ** -i - a * b / c * t))
    phi = (common * a / b * (q ** -i - b * c / a * t) * (q ** -i - b / (a * c) * t))
    return varphi, phi
