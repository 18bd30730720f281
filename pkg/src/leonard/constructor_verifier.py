"""Concrete matrix realisation and brute-force verification.

Nothing here trusts the certifier: :func:`verify_leonard_system` works
from the matrices alone, building primitive idempotents with the
Lagrange product formula and checking the two tridiagonality patterns
entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_algebra import Field, Matrix, MatrixError
from .leonard_data import ConditionReport, LeonardData, RecurrenceConstants


class SpectrumError(ValueError):
    """The claimed eigenvalues are not the spectrum of the matrix."""


@dataclass(frozen=True)
class MatrixPair:
    A: Matrix
    A_star: Matrix
    d: int

    @property
    def field(self) -> Field:
        return self.A.field

    def E_star(self, i: int) -> Matrix:
        return Matrix.unit(self.field, self.d + 1, i)


@dataclass(frozen=True)
class IdempotentSystem:
    E: tuple
    eigenvalues: tuple

    def __getitem__(self, i: int) -> Matrix:
        return self.E[i]

    def __len__(self):
        return len(self.E)


@dataclass(frozen=True)
class DualForm:
    B_star: Matrix
    B: Matrix
    a_star: tuple
    b_star: tuple
    c_star: tuple
    row_sums: tuple
    row_sums_ok: bool


def build_pair(source) -> MatrixPair:
    """Tridiagonal ``A`` from (a, b, c) and diagonal ``A*`` from theta*.

    Accepts a :class:`~leonard.certifier.Certificate` or raw
    :class:`LeonardData`; the latter is allowed so that mutated,
    uncertified data can still be handed to the verifier.
    """
    data: LeonardData = getattr(source, "data", source)
    f, n = data.field, data.d + 1
    rows = [[f.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = data.a[i]
        if i < data.d:
            rows[i][i + 1] = data.b[i]
            rows[i + 1][i] = data.c[i]
    return MatrixPair(A=Matrix(f, rows), A_star=Matrix.diag(f, data.theta_star), d=data.d)


def vanishing_product(X: Matrix, roots: Sequence, skip: int | None = None) -> Matrix:
    """``prod_i (X - r_i I)`` over all roots except index ``skip``."""
    eye = Matrix.identity(X.field, X.rows)
    out = eye
    for k, r in enumerate(roots):
        if k != skip:
            out = out @ (X - eye.scale(r))
    return out


def primitive_idempotents(A: Matrix, theta: Sequence) -> IdempotentSystem:
    """Lagrange-product idempotents of ``A`` for the claimed spectrum ``theta``.

    Every idempotent-system identity is checked before returning; a
    failure raises :class:`SpectrumError` naming the identity.
    """
    f = A.field
    theta = tuple(f(t) for t in theta)
    n = len(theta)
    if A.shape != (n, n):
        raise SpectrumError(f"{len(theta)} eigenvalues for a {A.shape} matrix")
    for i in range(n):
        for j in range(i + 1, n):
            if theta[i] == theta[j]:
                raise SpectrumError(f"claimed eigenvalues repeat: theta_{i} = theta_{j}")
    eye = Matrix.identity(f, n)
    if not vanishing_product(A, theta).is_zero():
        raise SpectrumError("claimed eigenvalues are not the spectrum of A: prod (A - theta_i I) != 0")
    E = []
    for i in range(n):
        Ei = eye
        for j in range(n):
            if j != i:
                Ei = Ei @ (A - eye.scale(theta[j])).scale(1 / (theta[i] - theta[j]))
        E.append(Ei)

    total = Matrix.zeros(f, n)
    spectral = Matrix.zeros(f, n)
    for i in range(n):
        total = total + E[i]
        spectral = spectral + E[i].scale(theta[i])
        if E[i].rank() != 1:
            raise SpectrumError(f"claimed eigenvalues are not the spectrum of A: rank E_{i} != 1")
        if A @ E[i] != E[i].scale(theta[i]):
            raise SpectrumError(f"claimed eigenvalues are not the spectrum of A: A E_{i} != theta_{i} E_{i}")
        for j in range(n):
            want = E[i] if i == j else Matrix.zeros(f, n)
            if E[i] @ E[j] != want:
                raise SpectrumError(f"claimed eigenvalues are not the spectrum of A: E_{i} E_{j} wrong")
    if total != eye:
        raise SpectrumError("claimed eigenvalues are not the spectrum of A: sum E_i != I")
    if spectral != A:
        raise SpectrumError("claimed eigenvalues are not the spectrum of A: sum theta_i E_i != A")
    return IdempotentSystem(E=tuple(E), eigenvalues=theta)


def minimal_polynomial_is_full(X: Matrix, roots: Sequence) -> bool:
    """True when ``prod (X - r_i)`` kills ``X`` but no product omitting one root does."""
    if not vanishing_product(X, roots).is_zero():
        return False
    return all(not vanishing_product(X, roots, skip=k).is_zero() for k in range(len(roots)))


def _pattern_violations(E: Sequence[Matrix], M: Matrix) -> list[tuple[int, int, str]]:
    bad = []
    n = len(E)
    for i in range(n):
        for j in range(n):
            gap = abs(i - j)
            if gap < 1:
                continue
            zero = (E[i] @ M @ E[j]).is_zero()
            if gap > 1 and not zero:
                bad.append((i, j, "nonzero although |i-j| > 1"))
            elif gap == 1 and zero:
                bad.append((i, j, "zero although |i-j| = 1"))
    return bad


def verify_leonard_system(pair: MatrixPair, theta: Sequence, theta_star: Sequence) -> ConditionReport:
    """Check the five defining clauses of a Leonard system directly.

    Violations are tagged ``"ls(i)"`` .. ``"ls(v)"``.  When the claimed
    spectrum of ``A`` is wrong, clauses (ii) and (v) both fail since the
    idempotents needed for (v) do not exist.
    """
    rep = ConditionReport()
    f = pair.field
    theta = tuple(f(t) for t in theta)
    theta_star = tuple(f(t) for t in theta_star)
    for name, seq in (("theta", theta), ("theta*", theta_star)):
        for i in range(len(seq)):
            for j in range(i + 1, len(seq)):
                if seq[i] == seq[j]:
                    rep.add("ls(i)", j, f"{name}_{i} = {name}_{j}: not multiplicity-free")

    try:
        E = primitive_idempotents(pair.A, theta)
    except (SpectrumError, MatrixError, ZeroDivisionError) as exc:
        E = None
        rep.add("ls(ii)", None, str(exc))
        if "ls(i)" not in rep.conditions():
            rep.add("ls(i)", None, "A is not multiplicity-free with the claimed eigenvalues")
    try:
        E_star = primitive_idempotents(pair.A_star, theta_star)
    except (SpectrumError, MatrixError, ZeroDivisionError) as exc:
        E_star = None
        rep.add("ls(iii)", None, str(exc))

    if E_star is not None:
        for i, j, msg in _pattern_violations(E_star.E, pair.A):
            rep.add("ls(iv)", i, f"E*_{i} A E*_{j} {msg}")
    else:
        rep.add("ls(iv)", None, "no idempotent system for A*")
    if E is not None:
        for i, j, msg in _pattern_violations(E.E, pair.A_star):
            rep.add("ls(v)", i, f"E_{i} A* E_{j} {msg}")
    else:
        rep.add("ls(v)", None, "no idempotent system for A")
    return rep


def askey_wilson_check(pair: MatrixPair, consts: RecurrenceConstants) -> Matrix:
    """Left side minus right side of the cubic relation tying A and A*."""
    A, As = pair.A, pair.A_star
    As2 = As @ As
    lhs = (As2 @ A - (As @ A @ As).scale(consts.beta) + A @ As2
           - (A @ As + As @ A).scale(consts.gamma_star) - A.scale(consts.delta_star))
    rhs = (As2.scale(consts.gamma) + As.scale(consts.omega)
           + Matrix.identity(pair.field, pair.d + 1).scale(consts.eta_star))
    return lhs - rhs


def dualize(pair: MatrixPair, E: IdempotentSystem) -> DualForm:
    """Re-express the pair in the basis ``E_i e_0``.

    In that basis ``A`` is ``diag(theta)`` and ``A*`` becomes an
    irreducible tridiagonal matrix whose entries are the dual
    intersection numbers; its row sums all equal theta*_0.
    """
    f, n = pair.field, pair.d + 1
    cols = []
    for i in range(n):
        w = E[i].column(0)
        if not any(w):
            raise SpectrumError(f"E_{i} e_0 = 0; the input is not a Leonard system")
        cols.append(w)
    W = Matrix(f, zip(*cols))
    W_inv = W.inverse()
    B_star = W_inv @ pair.A_star @ W
    B = W_inv @ pair.A @ W
    if B != Matrix.diag(f, E.eigenvalues):
        raise SpectrumError("A is not diagonal in the basis E_i e_0")
    a_star = tuple(B_star[i, i] for i in range(n))
    b_star = tuple(B_star[i, i + 1] for i in range(n - 1))
    c_star = tuple(B_star[i + 1, i] for i in range(n - 1))
    sums = tuple(sum(B_star.row(i), f.zero) for i in range(n))
    theta_star0 = pair.A_star[0, 0]
    return DualForm(B_star=B_star, B=B, a_star=a_star, b_star=b_star, c_star=c_star,
                    row_sums=sums, row_sums_ok=all(s == theta_star0 for s in sums))


def is_irreducible_tridiagonal(X: Matrix) -> bool:
    n = X.rows
    for i in range(n):
        for j in range(n):
            if abs(i - j) > 1 and X[i, j]:
                return False
            if abs(i - j) == 1 and not X[i, j]:
                return False
    return True


def witness_vectors(pair: MatrixPair, a0_star) -> tuple[tuple, tuple]:
    f = pair.field
    v0 = tuple(f.one for _ in range(pair.d + 1))
    v1 = tuple(pair.A_star[i, i] - f(a0_star) for i in range(pair.d + 1))
    return v0, v1


def check_witness_vectors(pair: MatrixPair, a0_star, theta0, theta1) -> ConditionReport:
    """Verify ``A v0 = theta0 v0``, ``A v1 = theta1 v1``, ``A* v0 - v1 = a0* v0``.

    The componentwise form of ``A v1 = theta1 v1`` is also reported per
    row under ``"stail"``.
    """
    f = pair.field
    a0_star, theta0, theta1 = f(a0_star), f(theta0), f(theta1)
    rep = ConditionReport()
    v0, v1 = witness_vectors(pair, a0_star)
    if not any(v1):
        rep.add("v1", None, "v1 is the zero vector")
    for i, (x, y) in enumerate(zip(pair.A.apply(v0), v0)):
        if x != theta0 * y:
            rep.add("Av0", i, "A v0 != theta0 v0", x - theta0 * y)
    for i, (x, y) in enumerate(zip(pair.A.apply(v1), v1)):
        if x != theta1 * y:
            rep.add("Av1", i, "A v1 != theta1 v1", x - theta1 * y)
    for i, (x, y, z) in enumerate(zip(pair.A_star.apply(v0), v1, v0)):
        if x - y != a0_star * z:
            rep.add("A*v0", i, "A* v0 - v1 != a0* v0", x - y - a0_star * z)
    A, ts = pair.A, [pair.A_star[i, i] for i in range(pair.d + 1)]
    n = pair.d + 1
    for i in range(n):
        c = A[i, i - 1] if i > 0 else f.zero
        b = A[i, i + 1] if i < n - 1 else f.zero
        lhs = A[i, i] * (ts[i] - a0_star)
        if i > 0:
            lhs = lhs + c * (ts[i - 1] - a0_star)
        if i < n - 1:
            lhs = lhs + b * (ts[i + 1] - a0_star)
        r = lhs - theta1 * (ts[i] - a0_star)
        if r:
            rep.add("stail", i, f"row identity for v1 fails at i={i}", r)
    return rep
