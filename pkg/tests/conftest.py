import random
from fractions import Fraction

import pytest

from holonomy.linalg import Matrix
from holonomy.representations import classical_algebra, functor, sl2_irrep
from holonomy.representations.core import Representation, inverse


def random_invertible(rng: random.Random, n: int, bound: int = 2) -> Matrix:
    """Unipotent-times-permutation integer matrix: always invertible, small entries."""
    while True:
        m = Matrix.from_rows([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        try:
            inverse(m)
        except ValueError:
            continue
        return m


def small_representations() -> list[Representation]:
    """A fixed pool of small matrix Lie algebras (dim m <= 6)."""
    pool = [sl2_irrep(k) for k in range(1, 5)]
    pool += [classical_algebra("so", p=p, q=q) for p, q in ((2, 0), (1, 1), (3, 0), (2, 1), (2, 2))]
    pool += [classical_algebra("sp", n=1), classical_algebra("sp", n=2), classical_algebra("gl", n=2)]
    pool += [classical_algebra("u", p=2, q=0), classical_algebra("su", p=1, q=1), classical_algebra("sl", n=3)]
    pool.append(functor("direct_sum", sl2_irrep(1), sl2_irrep(1)))
    pool.append(functor("direct_sum", sl2_irrep(1), sl2_irrep(2)))
    pool.append(functor("tensor_product", sl2_irrep(1), classical_algebra("so", p=2, q=0)))
    return pool


def random_conjugate(rng: random.Random, rep: Representation) -> Representation:
    g = random_invertible(rng, rep.n)
    return rep.change_basis(g)


def random_combination(rng: random.Random, rep: Representation, bound: int = 3) -> Matrix:
    out = Matrix.zeros(rep.n, rep.n)
    for g in rep.generators:
        out = out + g.scale(Fraction(rng.randint(-bound, bound)))
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def pool():
    return small_representations()


# ----------------------------------------------------------------------------
# one PASS/FAIL line per acceptance criterion
# ----------------------------------------------------------------------------

_criteria: dict[int, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    if report.failed:
        _criteria[num] = "FAIL"
    elif report.skipped:
        _criteria.setdefault(num, "SKIP")
    elif report.when == "call":
        _criteria.setdefault(num, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for num, desc in CRITERIA.items():
        terminalreporter.write_line(f"criterion {num}: {_criteria.get(num, 'NOT RUN'):7} {desc}")
