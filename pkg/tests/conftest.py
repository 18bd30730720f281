import pytest

from leonard.certifier import certify
from leonard.exact_algebra import Field
from leonard.families import QRacahParams, krawtchouk, q_racah, racah_example

Q = Field.rational()

# criterion id -> (passed, detail); filled by test_acceptance, printed at the end
ACCEPTANCE = {}


def family_instances():
    """(label, data) pairs covering every family the package can generate."""
    out = [("racah", racah_example())]
    for d in range(1, 7):
        out.append((f"krawtchouk-{d}-Q", krawtchouk(d, Q)))
    for p in (11, 101):
        for d in (1, 3, 8):
            out.append((f"krawtchouk-{d}-GF{p}", krawtchouk(d, Field.prime(p))))
    for d in (1, 2, 3, 4):
        out.append((f"q-racah-{d}", q_racah(QRacahParams.of(Q, d, 3, 5, 7, 2), Q)))
    F = Field.prime(29)
    out.append(("q-racah-3-GF29", q_racah(QRacahParams.of(F, 3, 3, 3, 2, 2), F)))
    return out


INSTANCES = family_instances()


@pytest.fixture(params=INSTANCES, ids=[label for label, _ in INSTANCES])
def instance(request):
    return request.param[1]


@pytest.fixture
def racah():
    return racah_example()


@pytest.fixture
def racah_cert():
    return certify(racah_example())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {key}"
        terminalreporter.write_line(line if ok else f"{line}: {detail}")
