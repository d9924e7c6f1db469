"""Fixtures for testing."""

import pytest

from kahler_poisson.kernel.kahler import KPAlgebra
from kahler_poisson.kernel.ring import Ring
from kahler_poisson.language.document import Document, parse_input

TRIVIAL = """
algebra A {
  generators: x, y;
  bracket {x, y} = 1;
}
metric g on A = [[1, 0], [0, 1]];
kahler K = (A, g);
kahler K2 = (A, g) eta = 2;
"""

CHANGE_OF_GENERATORS = """
algebra A {
  generators: x, y;
  bracket {x, y} = 1;
}
algebra B {
  generators: u, v;
  bracket {u, v} = -2;
}
metric g on A = [[2, 1], [1, 3]];
metric h on B = [[7/4, -1/4], [-1/4, 3/4]];
kahler K = (A, g) eta = 1/5;
kahler L = (B, h) eta = 1/5;
kahler L2 = (B, h) eta = 6/5;
hom phi : K -> L {
  x -> (u + v)/2;
  y -> (u - v)/2;
  inverse {
    u -> x + y;
    v -> x - y;
  }
}
hom shifted : K -> L2 {
  x -> (u + v)/2;
  y -> (u - v)/2;
}
"""

FACTORS = """
algebra A {
  generators: x, y;
  bracket {x, y} = 1;
}
metric g on A = [[2, 1], [1, 3]];
kahler K = (A, g) eta = 1/5;

algebra B {
  generators: u, v;
  bracket {u, v} = u;
  localize: u;
}
metric e on B = [[1, 0], [0, 1]];
kahler L = (B, e) eta = 1/u^2;

algebra C {
  generators: x, y;
  bracket {x, y} = x;
  localize: x;
}
metric f on C = [[1, 0], [0, 1]];
kahler Square = (C, f) eta = 1/x^2;

algebra D {
  generators: s, t;
  bracket {s, t} = 1;
}
metric i on D = [[1, 0], [0, 1]];
kahler Unit = (D, i) eta = 1;

algebra E {
  generators: x, y;
  bracket {x, y} = 1;
  localize: x;
}
metric k on E = [[1/x, 0], [0, 1]];
kahler NoRoot = (E, k) eta = x;
"""


@pytest.fixture(name="ring")
def ring_fixture() -> Ring:
    """Provide the polynomial ring in x and y."""
    return Ring.polynomial("x", "y")


@pytest.fixture(name="product_ring")
def product_ring_fixture() -> Ring:
    """Provide the product of the rings in x, y and in u, v."""
    return Ring((("x", "y"), ("u", "v")))


@pytest.fixture(name="trivial")
def trivial_fixture() -> Document:
    """Provide the constant bracket with the identity metric."""
    return parse_input(TRIVIAL)


@pytest.fixture(name="change_of_generators")
def change_of_generators_fixture() -> Document:
    """Provide the linear change of generators u = x + y, v = x - y."""
    return parse_input(CHANGE_OF_GENERATORS)


@pytest.fixture(name="factors")
def factors_fixture() -> Document:
    """Provide verified factors for direct sums and tensor products."""
    return parse_input(FACTORS)


@pytest.fixture(name="kahler")
def kahler_fixture(change_of_generators: Document) -> KPAlgebra:
    """Provide {x, y} = 1 with g = [[2, 1], [1, 3]] and eta = 1/5."""
    return change_of_generators.kahler("K")
