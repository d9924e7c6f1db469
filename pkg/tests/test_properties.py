"""Property-based tests of the algebraic laws behind the checks."""

from hypothesis import assume, given, settings, strategies as st

from kahler_poisson.kernel.constructions import (
    Side,
    SumSpec,
    TensorSpec,
    check_subalgebra,
    direct_sum,
    embed_factor,
    factor_subalgebra,
    sqrt_ratfunc,
    tensor_product,
)
from kahler_poisson.kernel.kahler import (
    KPAlgebra,
    Metric,
    check_projector,
    d_vector,
    kp_tensors,
    lower,
    p_vector,
    solve_eta,
    verify_kp,
)
from kahler_poisson.kernel.matrix import Matrix
from kahler_poisson.kernel.morphism import (
    Hom,
    check_kp_morphism,
    check_poisson_hom,
    compose,
    jacobian,
    pullback_metric,
)
from kahler_poisson.kernel.poisson import PoissonStructure
from kahler_poisson.kernel.ring import Ring, RingElem, normalize, partial, substitute
from kahler_poisson.kernel.verdict import Status

RING = Ring.polynomial("x", "y")
THREE = Ring.polynomial("x", "y", "z")
IMAGES = Ring.polynomial("s", "t")

coefficients = st.integers(min_value=-3, max_value=3)


def polynomials(ring: Ring, max_terms: int = 3, max_degree: int = 2) -> st.SearchStrategy[RingElem]:
    """Sums of small integer multiples of monomials."""
    terms = st.tuples(
        coefficients,
        st.lists(
            st.integers(min_value=0, max_value=max_degree),
            min_size=ring.ngens,
            max_size=ring.ngens,
        ),
    )

    def build(items: list[tuple[int, list[int]]]) -> RingElem:
        total = ring.zero
        for coefficient, exponents in items:
            term = ring.constant(coefficient)
            for generator, exponent in zip(ring.generators, exponents, strict=True):
                term = term * generator**exponent
            total = total + term
        return total

    return st.lists(terms, max_size=max_terms).map(build)


def rational_functions(ring: Ring) -> st.SearchStrategy[RingElem]:
    """Quotients of small polynomials."""
    return st.tuples(polynomials(ring), polynomials(ring, max_terms=2)).filter(
        lambda pair: bool(pair[1])
    ).map(lambda pair: pair[0] / pair[1])


nonzero = polynomials(RING).filter(bool)
elements = rational_functions(RING)
metrics = st.tuples(coefficients, coefficients, coefficients).filter(
    lambda abc: abc[0] * abc[2] != abc[1] ** 2
)


def _structure(bracket: RingElem) -> PoissonStructure:
    return PoissonStructure.from_brackets(RING, {(0, 1): bracket})


def _metric(abc: tuple[int, int, int]) -> Metric:
    a, b, c = (RING.constant(value) for value in abc)
    return Metric(Matrix.of([[a, b], [b, c]]))


def _algebra(bracket: RingElem, abc: tuple[int, int, int]) -> KPAlgebra:
    structure = _structure(bracket)
    metric = _metric(abc)
    return KPAlgebra(structure, metric, solve_eta(structure, metric).eta)


@st.composite
def kp_algebras(draw: st.DrawFn) -> KPAlgebra:
    """Verified algebras on two generators, or on three with z a Casimir."""
    if draw(st.booleans()):
        return _algebra(draw(nonzero), draw(metrics))
    bracket = draw(polynomials(THREE, max_terms=2).filter(bool))
    a, b, c, d, e, f = (
        THREE.constant(value)
        for value in draw(
            st.tuples(*[coefficients] * 6).filter(lambda v: v[0] * v[2] != v[1] ** 2)
        )
    )
    structure = PoissonStructure.from_brackets(THREE, {(0, 1): bracket})
    metric = Metric(Matrix.of([[a, b, d], [b, c, e], [d, e, f]]))
    return KPAlgebra(structure, metric, solve_eta(structure, metric).eta)


@settings(max_examples=100, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(a: RingElem, b: RingElem, c: RingElem):
    """Associativity, commutativity and distributivity hold on canonical forms."""
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert str(a * (b + c)) == str(a * b + a * c)


@settings(max_examples=100, deadline=None)
@given(elements, elements, st.integers(min_value=0, max_value=1))
def test_partial_leibniz(a: RingElem, b: RingElem, index: int):
    """d(ab) = d(a) b + a d(b)."""
    assert partial(a * b, index) == partial(a, index) * b + a * partial(b, index)


@settings(max_examples=100, deadline=None)
@given(polynomials(RING), nonzero)
def test_normalize_idempotent(numerator: RingElem, denominator: RingElem):
    """Normalizing a normalized quotient changes nothing."""
    value = normalize(numerator, denominator)
    again = normalize(value, RING.one)
    assert again == value
    assert str(again) == str(value)


@settings(max_examples=100, deadline=None)
@given(
    polynomials(RING),
    polynomials(RING),
    polynomials(IMAGES),
    polynomials(IMAGES),
)
def test_substitute_homomorphism(a: RingElem, b: RingElem, f: RingElem, g: RingElem):
    """Substitution respects sums, products and 1."""
    images = (f, g)
    assert substitute(a + b, images) == substitute(a, images) + substitute(b, images)
    assert substitute(a * b, images) == substitute(a, images) * substitute(b, images)
    assert substitute(RING.one, images) == IMAGES.one


@settings(max_examples=100, deadline=None)
@given(nonzero, elements, elements)
def test_antisymmetry(bracket: RingElem, a: RingElem, b: RingElem):
    """{a, b} = -{b, a}."""
    structure = _structure(bracket)
    assert structure.bracket(a, b) == -structure.bracket(b, a)


@settings(max_examples=100, deadline=None)
@given(nonzero, elements, elements, elements)
def test_leibniz(bracket: RingElem, a: RingElem, b: RingElem, c: RingElem):
    """{a, bc} = {a, b} c + b {a, c}."""
    structure = _structure(bracket)
    assert structure.bracket(a, b * c) == structure.bracket(a, b) * c + b * structure.bracket(a, c)


@settings(max_examples=100, deadline=None)
@given(nonzero, elements, elements, elements)
def test_jacobi_two_generators(bracket: RingElem, a: RingElem, b: RingElem, c: RingElem):
    """Every bracket on two generators satisfies Jacobi on arbitrary elements."""
    structure = _structure(bracket)
    total = (
        structure.bracket(a, structure.bracket(b, c))
        + structure.bracket(b, structure.bracket(c, a))
        + structure.bracket(c, structure.bracket(a, b))
    )
    assert total.is_zero


@settings(max_examples=100, deadline=None)
@given(polynomials(THREE), polynomials(THREE), polynomials(THREE))
def test_jacobi_rotations(a: RingElem, b: RingElem, c: RingElem):
    """The rotation algebra satisfies Jacobi on arbitrary polynomials."""
    x, y, z = THREE.generators
    structure = PoissonStructure.from_brackets(THREE, {(0, 1): z, (1, 2): x, (2, 0): y})
    total = (
        structure.bracket(a, structure.bracket(b, c))
        + structure.bracket(b, structure.bracket(c, a))
        + structure.bracket(c, structure.bracket(a, b))
    )
    assert total.is_zero


@settings(max_examples=100, deadline=None)
@given(nonzero, metrics)
def test_two_generator_formula(bracket: RingElem, abc: tuple[int, int, int]):
    """eta = 1/({x, y}^2 det g) and it satisfies the condition."""
    algebra = _algebra(bracket, abc)
    determinant = abc[0] * abc[2] - abc[1] ** 2
    assert algebra.eta == RING.one / (bracket * bracket * determinant)
    assert verify_kp(algebra).status is Status.PASS


@settings(max_examples=100, deadline=None)
@given(nonzero, metrics, elements)
def test_derived_vectors(bracket: RingElem, abc: tuple[int, int, int], a: RingElem):
    """D^ij P_j(a) = P^i(a) and P^ij D_j(a) = P^i(a)."""
    algebra = _algebra(bracket, abc)
    p = p_vector(algebra, a)
    tensors = kp_tensors(algebra)
    assert tensors.d_upper.apply(lower(algebra, p)) == p
    assert algebra.poisson_matrix.apply(lower(algebra, d_vector(algebra, a))) == p


@settings(max_examples=100, deadline=None)
@given(nonzero, metrics)
def test_projector(bracket: RingElem, abc: tuple[int, int, int]):
    """D^i_j is a projector fixing the brackets."""
    assert check_projector(_algebra(bracket, abc)).status is Status.PASS


def _unit(ring: Ring) -> KPAlgebra:
    return KPAlgebra(
        PoissonStructure.from_brackets(ring, {(0, 1): ring.one}),
        Metric(Matrix.identity(ring, 2)),
        ring.one,
    )


SOURCE = _unit(RING)
MIDDLE = _unit(Ring.polynomial("u", "v"))
TARGET = _unit(Ring.polynomial("s", "t"))


def _only(element: RingElem, index: int) -> RingElem:
    """Restrict a polynomial to one generator by sending the others to zero."""
    ring = element.ring
    images = tuple(
        generator if position == index else ring.zero
        for position, generator in enumerate(ring.generators)
    )
    return substitute(element, images)


def _pulled_back(source: KPAlgebra, images: tuple[RingElem, ...]) -> Hom:
    """Map onto a unit bracket whose metric is the pullback A^T phi(g) A."""
    provisional = Hom(source, _unit(images[0].ring), images)
    target = KPAlgebra(provisional.target.structure, Metric(pullback_metric(provisional)))
    return Hom(source, target, images)


@settings(max_examples=100, deadline=None)
@given(polynomials(MIDDLE.ring, max_degree=3), polynomials(TARGET.ring, max_degree=3))
def test_composition_closure(f: RingElem, h: RingElem):
    """Shears x -> u + f(v) and v -> t + h(s) onto pulled back metrics compose to a morphism."""
    u, v = MIDDLE.ring.generators
    s, t = TARGET.ring.generators
    first = _pulled_back(SOURCE, (u + _only(f, 1), v))
    second = _pulled_back(first.target, (s, t + _only(h, 0)))
    composite = compose(second, first)
    for hom in (first, second, composite):
        assert check_poisson_hom(hom).status is Status.PASS
        assert check_kp_morphism(hom).status is Status.PASS


@settings(max_examples=100, deadline=None)
@given(
    polynomials(MIDDLE.ring),
    polynomials(MIDDLE.ring),
    polynomials(TARGET.ring),
    polynomials(TARGET.ring),
)
def test_jacobian_chain_rule(f: RingElem, g: RingElem, h: RingElem, k: RingElem):
    """J(psi o phi) = psi(J(phi)) J(psi)."""
    first = Hom(SOURCE, MIDDLE, (f, g))
    second = Hom(MIDDLE, TARGET, (h, k))
    expected = second.apply_matrix(jacobian(first)) @ jacobian(second)
    assert jacobian(compose(second, first)) == expected


@settings(max_examples=100, deadline=None)
@given(kp_algebras(), kp_algebras())
def test_direct_sum_closure(left: KPAlgebra, right: KPAlgebra):
    """Sums of verified algebras verify, and each summand embeds as a morphism and a subalgebra."""
    algebra = direct_sum(SumSpec(left, right))
    assert verify_kp(algebra).status is Status.PASS
    for side in Side:
        assert check_kp_morphism(embed_factor(algebra, side)).status is Status.PASS
        sub = factor_subalgebra(algebra, side)
        assert check_subalgebra(sub, algebra).status is Status.PASS


@settings(max_examples=100, deadline=None)
@given(nonzero, nonzero)
def test_tensor_closure(left: RingElem, right: RingElem):
    """With eta = 1/p^2 the tensor product exists and has eta = 1."""
    identity = (1, 0, 1)
    spec = TensorSpec.from_square_roots(_algebra(left, identity), _algebra(right, identity))
    algebra = tensor_product(spec)
    assert algebra.eta == algebra.ring.one
    assert verify_kp(algebra).status is Status.PASS


@settings(max_examples=100, deadline=None)
@given(elements)
def test_square_root(a: RingElem):
    """sqrt_ratfunc recovers a up to sign."""
    assume(a)
    root = sqrt_ratfunc(a * a)
    assert root is not None
    assert root in (a, -a)
