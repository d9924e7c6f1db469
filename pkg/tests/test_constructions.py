"""Test direct sums, tensor products and subalgebras."""

import pytest

from kahler_poisson.kernel import ConstructionException, UnsupportedException
from kahler_poisson.kernel.constructions import (
    Side,
    SumSpec,
    TensorSpec,
    check_subalgebra,
    direct_sum,
    disjoint_names,
    embed_factor,
    factor_subalgebra,
    inclusion_hom,
    sqrt_ratfunc,
    tensor_product,
)
from kahler_poisson.kernel.kahler import Derivation, metric_on_derivations, verify_kp
from kahler_poisson.kernel.morphism import check_kp_morphism
from kahler_poisson.kernel.ring import Ring
from kahler_poisson.kernel.verdict import Status
from kahler_poisson.language.document import Document, parse_input

from .common import elem

SUBALGEBRAS = """
algebra Amb {
  generators: x, y, z, w;
  bracket {x, y} = 1;
  bracket {z, w} = 1;
}
metric G on Amb = [[2, 1, 0, 0], [1, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 5]];
kahler M = (Amb, G) eta = 1/5;

algebra S {
  generators: x, y;
  bracket {x, y} = 1;
}
metric gs on S = [[2, 1], [1, 3]];
metric perturbed on S = [[2, 1], [1, 4]];
kahler Sub = (S, gs) eta = 1/5;
kahler Bad = (S, perturbed);

algebra Doubled {
  generators: x, y;
  bracket {x, y} = 2;
}
metric gd on Doubled = [[2, 1], [1, 3]];
kahler Twice = (Doubled, gd);
"""


@pytest.fixture(name="subalgebras")
def subalgebras_fixture() -> Document:
    """Provide a four generator algebra with two candidate subalgebras."""
    return parse_input(SUBALGEBRAS)


def test_direct_sum(factors: Document):
    """eta of the sum is the pair of etas."""
    algebra = direct_sum(SumSpec(factors.kahler("K"), factors.kahler("L")))
    assert algebra.ring.components == (("x", "y"), ("u", "v"))
    assert str(algebra.eta) == "(1/5, 1/u^2)"
    assert verify_kp(algebra).status is Status.PASS
    assert algebra.uses_generators
    for side in Side:
        assert check_kp_morphism(embed_factor(algebra, side)).status is Status.PASS


def test_direct_sum_derivation_metric(factors: Document):
    """Derivations of one summand keep their metric, padded with zero."""
    left = factors.kahler("K")
    algebra = direct_sum(SumSpec(left, factors.kahler("L")))
    ring = algebra.ring
    alpha = Derivation((elem("x", left.ring), elem("1", left.ring)))
    beta = Derivation((elem("y^2", left.ring), elem("x + y", left.ring)))

    def lifted(derivation: Derivation) -> Derivation:
        return Derivation(
            tuple(ring.inject(value, 0) for value in derivation.coefficients) + (ring.zero,) * 2
        )

    expected = ring.inject(metric_on_derivations(left, alpha, beta), 0)
    assert not expected.is_zero
    assert metric_on_derivations(algebra, lifted(alpha), lifted(beta)) == expected


def test_direct_sum_renames(factors: Document):
    """Clashing generator names of the right summand are primed."""
    algebra = direct_sum(SumSpec(factors.kahler("K"), factors.kahler("Square")))
    assert algebra.ring.names == ("x", "y", "x'", "y'")
    assert str(algebra.eta) == "(1/5, 1/x'^2)"


def test_factor_subalgebra(factors: Document):
    """A summand is a subalgebra of the sum."""
    algebra = direct_sum(SumSpec(factors.kahler("K"), factors.kahler("L")))
    sub = factor_subalgebra(algebra, Side.RIGHT)
    assert verify_kp(sub).passed
    assert str(sub.eta) == "(1, 1/u^2)"
    with pytest.raises(ConstructionException) as excinfo:
        factor_subalgebra(factors.kahler("K"), Side.LEFT)
    assert excinfo.value.args[0] == "Expected an algebra built by direct_sum"


@pytest.mark.parametrize("side", list(Side))
def test_factor_subalgebra_of_sum(factors: Document, side: Side):
    """Each summand passes the subalgebra check against the sum it came from."""
    algebra = direct_sum(SumSpec(factors.kahler("K"), factors.kahler("L")))
    sub = factor_subalgebra(algebra, side)
    assert inclusion_hom(sub, algebra).is_identity
    assert check_subalgebra(sub, algebra).status is Status.PASS


@pytest.mark.parametrize(
    ("eta", "message"),
    [
        (None, "Expected eta on the left factor, got none"),
        ("1", "Expected verified left factor, got residual (1, 2): -4"),
    ],
)
def test_sum_requires_verified(factors: Document, eta: str | None, message: str):
    """Summands must carry an eta that satisfies the condition."""
    left = factors.kahler("K")
    left = left.with_eta(None if eta is None else left.ring.constant(int(eta)))
    with pytest.raises(ConstructionException) as excinfo:
        SumSpec(left, factors.kahler("L"))
    assert excinfo.value.args[0] == message


def test_tensor_product(factors: Document):
    """Metrics scaled by rho and rho' give eta = 1."""
    spec = TensorSpec.from_square_roots(factors.kahler("Square"), factors.kahler("Unit"))
    assert str(spec.rho_left) == "1/x"
    assert str(spec.rho_right) == "1"
    algebra = tensor_product(spec)
    assert algebra.ring.names == ("x", "y", "s", "t")
    assert algebra.eta == algebra.ring.one
    assert verify_kp(algebra).status is Status.PASS
    assert algebra.roots is not None
    assert str(algebra.roots[0]) == "1/x"


def test_tensor_product_without_root(factors: Document):
    """eta = x has no rational square root."""
    with pytest.raises(UnsupportedException) as excinfo:
        TensorSpec.from_square_roots(factors.kahler("NoRoot"), factors.kahler("Unit"))
    assert excinfo.value.args[0] == "no square root of eta = x"


def test_tensor_spec_validation(factors: Document):
    """rho must square to eta and the factors must not be product rings."""
    square = factors.kahler("Square")
    unit = factors.kahler("Unit")
    with pytest.raises(ConstructionException) as excinfo:
        TensorSpec(square, unit, square.ring.one, unit.ring.one)
    assert excinfo.value.args[0] == "Expected rho^2 = 1/x^2 on the left factor, got 1"

    summed = direct_sum(SumSpec(factors.kahler("K"), factors.kahler("L")))
    with pytest.raises(UnsupportedException):
        TensorSpec(summed, unit, summed.ring.one, unit.ring.one)


@pytest.mark.parametrize(
    ("value", "root"),
    [
        ("1/x^2", "1/x"),
        ("4*x^2*y^4", "2*x*y^2"),
        ("x^2 - 2*x*y + y^2", "x - y"),
        ("9/4", "3/2"),
        ("(x + 1)^2/(4*y^2)", "(x + 1)/(2*y)"),
        ("0", "0"),
        ("x", None),
        ("-1", None),
        ("2", None),
        ("1/(5*x^2)", None),
    ],
)
def test_sqrt_ratfunc(ring: Ring, value: str, root: str | None):
    """Square roots of rational functions, normalized to a positive leading coefficient."""
    result = sqrt_ratfunc(elem(value, ring))
    if root is None:
        assert result is None
    else:
        assert result == elem(root, ring)


@pytest.mark.parametrize(
    ("taken", "names", "expected"),
    [
        (["x", "y"], ["u", "v"], ("u", "v")),
        (["x", "y"], ["x", "z"], ("x'", "z")),
        (["x", "x'"], ["x"], ("x''",)),
        (["a"], ["b", "b"], ("b", "b'")),
    ],
)
def test_disjoint_names(taken: list[str], names: list[str], expected: tuple[str, ...]):
    """Clashing names get primes until they are fresh."""
    assert disjoint_names(taken, names) == expected


def test_check_subalgebra(subalgebras: Document):
    """The sub metric agrees with the ambient one on the brackets of x and y."""
    ambient = subalgebras.kahler("M")
    assert check_subalgebra(subalgebras.kahler("Sub"), ambient).status is Status.PASS

    verdict = check_subalgebra(subalgebras.kahler("Bad"), ambient)
    assert verdict.status is Status.FAIL
    assert str(verdict.witness) == "(1, 1): 1"


def test_check_subalgebra_inclusion(subalgebras: Document):
    """An explicit inclusion onto z, w compares against the other metric block."""
    sub = subalgebras.kahler("Sub")
    ambient = subalgebras.kahler("M")
    assert inclusion_hom(sub, ambient, [2, 3]).images == ambient.ring.generators[2:]
    verdict = check_subalgebra(sub, ambient, [2, 3])
    assert verdict.status is Status.FAIL
    assert str(verdict.witness) == "(1, 1): -2"

    with pytest.raises(ConstructionException) as excinfo:
        check_subalgebra(sub, ambient, [0, 0])
    assert excinfo.value.args[0] == "Expected injective map of 2 generators, got [0, 0]"


def test_check_subalgebra_brackets(subalgebras: Document):
    """The inclusion must preserve brackets."""
    with pytest.raises(ConstructionException) as excinfo:
        check_subalgebra(subalgebras.kahler("Twice"), subalgebras.kahler("M"))
    assert (
        excinfo.value.args[0]
        == "Expected inclusion to preserve brackets, got {e^1, e^2} = 1 instead of 2"
    )
