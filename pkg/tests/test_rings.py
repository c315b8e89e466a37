import numpy as np
import pytest
from hypothesis import given

from fqplab.errors import AxiomError, ResourceCapError, RingStructureError
from fqplab.rings import (
    FiniteRing,
    axiom_violation,
    check_axioms,
    find_ring_isomorphism,
    is_ring_isomorphism,
    local_factors,
    make_poly_quot,
    make_product,
    make_zmod,
    monomial_element,
    primitive_idempotents,
    quotient_ring,
    ring_fingerprint,
    rings_isomorphic,
    structure,
)
from fqplab.ideals import ideal_generated
from fqplab.specparse import build_ring

from conftest import mutate
from strategies import rings


def test_zmod_tables():
    R = make_zmod(12)
    assert R.size == 12 and R.zero == 0 and R.one == 1
    assert R.mul[5, 7] == 35 % 12
    assert R.add[9, 8] == 5
    assert axiom_violation(R) is None


def test_zero_ring_is_a_ring():
    R = make_zmod(1)
    assert R.size == 1 and R.zero == R.one
    assert axiom_violation(R) is None


def test_ex32_elements(ex32):
    assert ex32.size == 8
    assert set(ex32.labels) == {"0", "1", "x", "y", "1+x", "1+y", "x+y", "1+x+y"}
    x, y = ex32.elem("x"), ex32.elem("y")
    assert (x * x).index == ex32.zero
    assert (x * y).index == ex32.zero
    assert (x + x).index == ex32.zero


def test_ex33_size_and_relations(ex33):
    assert ex33.size == 16
    y = ex33.elem("y")
    assert repr(y ** 2) == "y^2"
    assert (y ** 3).index == ex33.zero


def test_poly_rejects_non_prime_and_infinite():
    with pytest.raises(ValueError, match="not prime"):
        make_poly_quot(4, ["x"], ["x^2"])
    with pytest.raises(ValueError, match="infinite"):
        make_poly_quot(2, ["x", "y"], ["x^2"])


def test_poly_with_unit_monomial_is_zero_ring():
    R = make_poly_quot(3, ["x"], ["1"])
    assert R.size == 1


def test_monomial_element(ex33):
    assert ex33.labels[monomial_element(ex33, "y^2")] == "y^2"
    assert monomial_element(ex33, "x*y") == ex33.zero


def test_size_cap():
    with pytest.raises(ResourceCapError, match="resource cap"):
        make_zmod(100, cap=64)
    with pytest.raises(ResourceCapError):
        make_poly_quot(3, ["x", "y"], ["x^3", "y^3"], cap=100)


def test_product_labels_and_order():
    P = make_product(make_zmod(2), make_zmod(3))
    assert P.size == 6
    assert P.labels[P.one] == "(1,1)"
    assert axiom_violation(P) is None


def test_z12_local_factor_sizes():
    dec = local_factors(make_zmod(12))
    assert sorted(dec.sizes) == [3, 4]


def test_primitive_idempotents_of_z30():
    R = make_zmod(30)
    prim = primitive_idempotents(R)
    assert len(prim) == 3
    assert (sum(prim)) % 30 == 1


def test_structure_of_z8():
    s = structure(make_zmod(8))
    assert s.units == (1, 3, 5, 7)
    assert s.zero_divisors == (0, 2, 4, 6)  # 0 * 1 = 0 with 1 nonzero
    assert s.nilradical == (0, 2, 4, 6)
    assert s.idempotents == (0, 1)


def test_quotient_ring_by_ideal(ex33):
    Q, proj = quotient_ring(ex33, ideal_generated(ex33, ["x", "y^2"]))
    assert Q.size == 4
    assert axiom_violation(Q) is None
    assert is_ring_isomorphism(Q, build_ring("Poly(2,[y],[y^2])"),
                               find_ring_isomorphism(Q, build_ring("Poly(2,[y],[y^2])")))
    assert proj[ex33.one] == Q.one


def test_axiom_violation_messages(ex32):
    bad = FiniteRing(ex32.size, ex32.add, mutate(ex32.mul, 2, 4, 1), ex32.zero, ex32.one)
    assert "commutative" in axiom_violation(bad)
    with pytest.raises(AxiomError):
        check_axioms(bad)


def test_out_of_range_table_rejected():
    with pytest.raises(AxiomError):
        FiniteRing(2, [[0, 1], [1, 2]], [[0, 0], [0, 1]], 0, 1)


def test_non_local_factor_detected():
    # F2 x F2 with the identity declared as a factor idempotent: fake a ring whose
    # only nonzero idempotent is 1 but which has two maximal ideals is impossible,
    # so instead corrupt a product so that its idempotents do not sum to one.
    P = make_product(make_zmod(2), make_zmod(2))
    bad = FiniteRing(P.size, P.add, P.mul, P.zero, 1)  # "one" is (0,1)
    with pytest.raises(RingStructureError):
        local_factors(bad)


def test_isomorphism_z6_vs_product():
    A = make_zmod(6)
    B = make_product(make_zmod(2), make_zmod(3))
    phi = find_ring_isomorphism(A, B)
    assert phi is not None and is_ring_isomorphism(A, B, phi)
    assert not rings_isomorphic(make_zmod(4), build_ring("Poly(2,[x],[x^2])"))


def test_ex46_vs_ex32_not_isomorphic(ex46, ex32):
    assert ring_fingerprint(ex46) != ring_fingerprint(ex32)
    assert not rings_isomorphic(ex46, ex32)


def test_trivext_square_zero(ex46):
    assert ex46.size == 8
    assert len(local_factors(ex46).factors) == 1
    e = ex46.index("(2,1)")
    assert ex46.mul[e, e] == ex46.zero
    f = ex46.index("(0,1)")
    assert ex46.mul[f, f] == ex46.zero


@given(rings())
def test_constructed_rings_satisfy_axioms(R):
    assert axiom_violation(R) is None


@given(rings())
def test_units_and_zero_divisors_partition(R):
    if R.size == 1:
        return
    assert not (R.unit_mask & R.zero_divisor_mask).any()
    assert (R.unit_mask | R.zero_divisor_mask).all()


@given(rings())
def test_local_factors_reassemble(R):
    dec = local_factors(R)
    P = dec.product_ring()
    assert is_ring_isomorphism(P, R, dec.embedding)
    for f in dec.factors:
        assert axiom_violation(f.ring) is None
        assert f.ring.unit_mask.sum() + (~f.ring.unit_mask).sum() == f.ring.size


@given(rings(max_size=32))
def test_isomorphism_found_after_relabeling(R):
    rng = np.random.default_rng(R.size)
    perm = np.arange(R.size)
    rest = [i for i in range(R.size) if i not in (R.zero,)]
    perm[rest] = rng.permutation(rest)
    inv = np.argsort(perm)
    add = perm[R.add[np.ix_(inv, inv)]]
    mul = perm[R.mul[np.ix_(inv, inv)]]
    S = FiniteRing(R.size, add, mul, int(perm[R.zero]), int(perm[R.one]))
    phi = find_ring_isomorphism(R, S)
    assert phi is not None and is_ring_isomorphism(R, S, phi)
