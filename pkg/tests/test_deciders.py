import itertools

import pytest
from hypothesis import given

from fqplab.config import Config
from fqplab.deciders import (
    Dichotomy,
    Wdim,
    classify,
    fqp_check,
    fqp_dichotomy,
    gaussian_content_witness,
    implication_violations,
    incomparable_pair,
    is_arithmetical,
    is_chained,
    is_fqp,
    is_gaussian,
    is_local,
    is_prufer,
    is_reduced,
    is_total_quotient_ring,
    is_von_neumann_regular,
    lemma38_inspect,
    wdim_classify,
)
from fqplab.errors import ResourceCapError
from fqplab.ideals import all_ideals, contains, ideal_generated, ideal_product
from fqplab.rings import make_product, make_zmod
from fqplab.specparse import build_ring

from strategies import rings


def brute_chained(R):
    ideals = all_ideals(R)
    return all(contains(I, J) or contains(J, I) for I, J in itertools.combinations(ideals, 2))


def content(R, coeffs):
    return ideal_generated(R, coeffs)


def poly_mul(R, f, g):
    out = [R.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = int(R.add[out[i + j], R.mul[a, b]])
    return out


def test_locality_and_chains(ex32):
    for k in (1, 2, 3, 5):
        assert is_chained(make_zmod(2 ** k))
    assert not is_chained(make_zmod(6))
    assert is_local(ex32) and not is_chained(ex32)
    assert incomparable_pair(ex32) is not None


@pytest.mark.parametrize("n", range(1, 40))
def test_zmod_arithmetical(n):
    assert is_arithmetical(make_zmod(n))


def test_paper_fixtures(ex32, ex33, ex45, ex46):
    assert is_fqp(ex32) and not is_arithmetical(ex32) and is_gaussian(ex32)
    assert is_gaussian(ex33) and not is_fqp(ex33)
    assert is_gaussian(ex45) and not is_fqp(ex45) and is_total_quotient_ring(ex45)
    assert is_fqp(ex46) and not is_arithmetical(ex46)


def test_fqp_witness_is_m(ex33):
    res = fqp_check(ex33)
    assert not res.holds
    assert res.witness == ideal_generated(ex33, ["x", "y"])
    assert res.oracle_verified


def test_chained_rings_are_gaussian():
    assert is_gaussian(make_zmod(8))


def test_cube_is_not_gaussian(cube):
    assert not is_gaussian(cube)


def test_content_witness_on_cube(cube):
    w = gaussian_content_witness(cube, 1, Config(content_pairs=20_000_000))
    assert w is not None
    # recompute the contents directly
    assert content(cube, w.f) * content(cube, w.g) == w.content_product
    assert content(cube, poly_mul(cube, w.f, w.g)) == w.content_of_product
    assert w.content_product != w.content_of_product
    x, y = cube.index("x"), cube.index("y")
    assert (w.f, w.g) == ((x, y), (x, y))  # f = g = x + yT
    assert w.content_product == ideal_generated(cube, ["x^2", "x*y", "y^2"])
    assert w.content_of_product == ideal_generated(cube, ["x^2", "y^2"])


def test_content_cap(cube):
    with pytest.raises(ResourceCapError):
        gaussian_content_witness(cube, 1, Config(content_pairs=1000))


@pytest.mark.parametrize("spec", ["Z(12)", "Poly(2,[x,y],[x^2,x*y,y^3])", "TrivExt(Z(8),[2],1)"])
def test_degree_zero_content_never_fails(spec):
    assert gaussian_content_witness(build_ring(spec), 0) is None


@pytest.mark.parametrize("spec", ["Poly(2,[x,y],[x^2,x*y,y^2])", "TrivExt(Z(4),[2],1)", "Z(8)"])
def test_gaussian_rings_have_no_low_degree_content_witness(spec):
    R = build_ring(spec)
    for d in (0, 1, 2):
        if R.size ** (2 * (d + 1)) <= 20_000_000:
            assert gaussian_content_witness(R, d, Config(content_pairs=20_000_000)) is None


def test_prufer_and_total_quotient_on_zero_ring():
    R = make_zmod(1)
    assert is_prufer(R) and is_total_quotient_ring(R)


def test_reduced_and_regular():
    assert is_reduced(make_zmod(30)) and is_von_neumann_regular(make_zmod(30))
    assert not is_reduced(make_zmod(12)) and not is_von_neumann_regular(make_zmod(12))


def test_wdim_examples(ex32, ex33):
    assert wdim_classify(make_zmod(6)).value is Wdim.ZERO
    w = wdim_classify(ex32)
    assert w.value is Wdim.INFINITE and w.cases == ("NilSquareZero",)
    assert wdim_classify(ex33).value is Wdim.NOT_APPLICABLE
    assert wdim_classify(make_zmod(8)).cases == ("Chained",)


def test_lemma38_examples(ex32, ex33):
    r = lemma38_inspect(ex32, "x", "y")
    assert r.status == "holds" and all(r.conclusions.values())
    assert lemma38_inspect(ex32, "x", "x").status == "not_applicable"
    r = lemma38_inspect(ex33, "x", "y")
    assert r.status == "hypothesis_fails"
    assert r.squares_zero is False
    with pytest.raises(ValueError):
        lemma38_inspect(ex32, "0", "x")
    with pytest.raises(ValueError):
        lemma38_inspect(make_zmod(6), 2, 3)


def test_dichotomy_examples(ex32, ex46, ex33):
    assert fqp_dichotomy(ex32) is Dichotomy.NIL_SQUARE_ZERO
    assert fqp_dichotomy(make_zmod(8)) is Dichotomy.CHAINED
    assert fqp_dichotomy(ex46) is Dichotomy.NIL_SQUARE_ZERO
    assert fqp_dichotomy(make_zmod(4)) is Dichotomy.BOTH
    with pytest.raises(ValueError):
        fqp_dichotomy(ex33)
    with pytest.raises(ValueError):
        fqp_dichotomy(make_zmod(6))


def test_classify_zero_ring():
    rec = classify(make_zmod(1)).to_record()
    hierarchy = ("chained", "arithmetical", "fqp", "gaussian", "prufer")
    assert all(rec["flags"][k] for k in hierarchy)
    assert rec["wdim"] == "Zero"


def test_classify_record_shape(ex45):
    rec = classify(ex45).to_record()
    assert list(rec) == ["schema", "ring", "size", "flags", "wdim", "witnesses",
                         "oracle_verified", "stats"]
    assert rec["stats"]["elapsed_ms"] is None
    assert rec["flags"]["gaussian"] and not rec["flags"]["fqp"]
    for flag in ("chained", "arithmetical", "fqp"):
        assert flag in rec["witnesses"]
    assert classify(ex45).to_record(timings=True)["stats"]["elapsed_ms"] >= 0


def test_classify_without_oracle(ex33):
    rep = classify(ex33, oracle=False)
    assert not rep.oracle_verified and not rep.flags["fqp"]


def test_implication_violations_helper():
    assert implication_violations({"arithmetical": True, "fqp": False}) == ["arithmetical => fqp"]
    assert implication_violations({"fqp": True, "gaussian": True, "prufer": True}) == []


@given(rings(max_size=32))
def test_chained_matches_ideal_comparability(R):
    assert is_chained(R) == brute_chained(R)


@given(rings())
def test_hierarchy_chain(R):
    rep = classify(R, oracle=False)
    assert implication_violations(rep.flags) == []
    assert rep.flags["prufer"] and rep.flags["total_quotient_ring"]


@given(rings())
def test_every_false_hierarchy_flag_has_a_witness(R):
    rep = classify(R, oracle=False)
    for k in ("local", "chained", "arithmetical", "fqp", "gaussian", "prufer", "reduced",
              "von_neumann_regular", "total_quotient_ring"):
        if not rep.flags[k]:
            assert k in rep.witnesses


@given(rings(max_size=24))
def test_gaussian_content_consistency(R):
    if is_gaussian(R):
        assert gaussian_content_witness(R, 1) is None


@given(rings())
def test_wdim_values(R):
    w = wdim_classify(R)
    if is_fqp(R):
        assert w.value in (Wdim.ZERO, Wdim.INFINITE)
        assert (w.value is Wdim.ZERO) == is_reduced(R)
    else:
        assert w.value is Wdim.NOT_APPLICABLE


@given(rings())
def test_fqp_descends_to_local_factors(R):
    from fqplab.rings import local_factors
    if is_fqp(R):
        assert all(is_fqp(f.ring) for f in local_factors(R).factors)


@given(rings(max_size=32))
def test_lemma38_never_violated(R):
    if not is_local(R):
        return
    P = R.principal
    for a in range(R.size):
        for b in range(a + 1, R.size):
            if not (P[a, b] or P[b, a]):
                assert lemma38_inspect(R, a, b).status != "violated"


def test_product_of_fqp_rings_is_fqp(ex32, ex46):
    assert is_fqp(make_product(ex32, ex46))
    assert not is_fqp(make_product(make_zmod(2), build_ring("TrivExt(Z(8),[2],1)")))


def test_m_squared_zero_local_rings_are_fqp():
    for k in (1, 2, 3):
        xs = [f"x{i}" for i in range(k)]
        monos = [f"{a}*{b}" if a != b else f"{a}^2" for a, b in itertools.combinations_with_replacement(xs, 2)]
        R = build_ring(f"Poly(2,[{','.join(xs)}],[{','.join(monos)}])")
        from fqplab.ideals import maximal_ideal
        m = maximal_ideal(R)
        assert ideal_product(m, m).size == 1
        assert is_fqp(R)
