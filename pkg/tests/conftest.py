import pytest

from qrep.fields import field_from_spec
from qrep.fixtures import named_quiver
from qrep.quiver import build_quiver
from qrep.rng import Stream

ACYCLIC_FIXTURES = ["a2", "a3", "kronecker:2", "kronecker:3", "subspace:3"]


def random_acyclic_quiver(stream: Stream, max_vertices: int = 4, max_arrows: int = 5):
    n = stream.integers(max_vertices - 1) + 2
    arrows = []
    for _ in range(stream.integers(max_arrows) + 1):
        s = stream.integers(n - 1)
        t = s + 1 + stream.integers(n - 1 - s)
        arrows.append((s + 1, t + 1))
    return build_quiver(n, arrows)


def random_dims(stream: Stream, n: int, top: int = 2):
    return tuple(stream.integers(top + 1) for _ in range(n))


@pytest.fixture(scope="session")
def F2():
    return field_from_spec("fq:2")


@pytest.fixture(scope="session")
def F3():
    return field_from_spec("fq:3")


@pytest.fixture(scope="session")
def F5():
    return field_from_spec("fq:5")


@pytest.fixture(scope="session")
def F101():
    return field_from_spec("fq:101")


@pytest.fixture(scope="session")
def QQ():
    return field_from_spec("rat")


@pytest.fixture(scope="session")
def A2():
    return named_quiver("a2")


@pytest.fixture(scope="session")
def K2():
    return named_quiver("kronecker:2")


@pytest.fixture(scope="session")
def K3():
    return named_quiver("kronecker:3")


@pytest.fixture(scope="session")
def jordan():
    return named_quiver("jordan")


def random_family_maps(Q, dims, K, stream: Stream):
    """Integral matrices over k(t): low-degree numerators, unit denominators, constant terms often zero."""
    B = K.base
    maps = []
    for s, t in Q.arrows:
        rows = []
        for _ in range(dims[t]):
            row = []
            for _ in range(dims[s]):
                num = [B.zero if stream.integers(4) else B.sample(stream),
                       B.zero if stream.integers(2) else B.sample(stream), B.sample(stream)]
                den = [B.one, B.sample(stream)]
                row.append(K.from_poly(num, den))
            rows.append(row)
        maps.append(rows)
    return maps
