"""Acceptance criteria 1-10.

Each test carries ``@pytest.mark.criterion(n, title)``; conftest prints one
PASS/FAIL line per criterion at the end of the run.
"""

import time

import numpy as np
import pytest

from fqplab.config import Config
from fqplab.deciders import (
    Wdim,
    classify,
    fqp_check,
    is_chained,
    is_fqp,
    is_prufer,
    is_reduced,
    is_total_quotient_ring,
    wdim_classify,
)
from fqplab.harness import (
    CorpusEntry,
    load_corpus,
    run_suites,
    search_strictness,
    verify_axioms,
    verify_base_change,
    verify_chain,
    verify_dichotomy,
    verify_lemma38,
    verify_localization,
    verify_oracle_equivalence,
    verify_split_identity,
    verify_structure,
    verify_trivext,
    verify_wdim,
    verify_zanardo,
)
from fqplab.ideals import all_ideals, annihilator, ideal_generated, maximal_ideal
from fqplab.rings import FiniteRing, local_factors, make_product, quotient_ring, rings_isomorphic
from fqplab.specparse import build_ring

from conftest import EX32, EX33, EX45, EX46, as_set, ideal_of

criterion = pytest.mark.criterion


def fresh_corpus():
    return load_corpus()


def all_names(hits):
    return {h.name for h in hits} | {a for h in hits for a in h.aliases}


@criterion(1, "worked examples classify exactly, each under 1 s")
def test_fixture_classification():
    classify(build_ring("Poly(3,[t],[t^2])"))  # compile kernels once
    want = {
        EX32: dict(local=True, fqp=True, arithmetical=False, gaussian=True),
        EX33: dict(gaussian=True, fqp=False),
        EX45: dict(gaussian=True, fqp=False),
        EX46: dict(fqp=True, arithmetical=False),
    }
    for spec, flags in want.items():
        t0 = time.perf_counter()
        R = build_ring(spec)
        rep = classify(R)
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0, f"{spec}: {elapsed:.2f}s"
        assert rep.oracle_verified
        for k, v in flags.items():
            assert rep.flags[k] is v, (spec, k)
        if spec == EX32:
            assert rep.wdim == Wdim.INFINITE.value
            assert R.size == 8
        if spec == EX33:
            assert R.size == 16
            assert rep.witnesses["fqp"] == {"ideal": ["x", "y"]}
            assert fqp_check(R).witness == maximal_ideal(R)
    assert build_ring(EX45).size == 16 and build_ring(EX46).size == 8


@criterion(2, "ideal lattice of ex3.2, Ann(m) and R/Ann(m) for ex3.3")
def test_ideal_ground_truth():
    R = build_ring(EX32)
    x, y = R.index("x"), R.index("y")
    xy = int(R.add[x, y])
    expected = {ideal_of(R, []), ideal_of(R, [x]), ideal_of(R, [y]), ideal_of(R, [xy]),
                ideal_of(R, [x, y]), frozenset(range(R.size))}
    got = [as_set(I) for I in all_ideals(R)]
    assert len(got) == 6 and set(got) == expected

    S = build_ring(EX33)
    m = maximal_ideal(S)
    ann = annihilator(S, m)
    assert as_set(ann) == as_set(ideal_generated(S, ["x", "y^2"]))
    Q, _ = quotient_ring(S, ann)
    assert Q.size == 4 and is_chained(Q)
    assert rings_isomorphic(Q, build_ring("Poly(2,[y],[y^2])"))


@criterion(3, "oracle agrees with the criterion on every ideal, >= 200 over >= 30 rings, < 60 s")
def test_oracle_equivalence():
    t0 = time.perf_counter()
    rep = verify_oracle_equivalence(fresh_corpus(), Config())
    elapsed = time.perf_counter() - t0
    assert rep.failures == []
    assert rep.instances >= 200 and rep.rings >= 30
    assert elapsed < 60.0, f"{elapsed:.1f}s"


@criterion(4, "arithmetical => fqp => gaussian on the full corpus; forbidden searches empty")
def test_hierarchy_chain():
    corpus = fresh_corpus()
    names = {e.name for e in corpus}
    assert {f"zmod{n}" for n in range(1, 65)} <= names
    tags = {t for e in corpus for t in e.tags}
    assert {"truncation", "trivext", "product"} <= tags
    rep = verify_chain(corpus, Config())
    assert rep.failures == [] and rep.rings == len(corpus)
    for q in ("arithmetical & !fqp", "fqp & !gaussian"):
        hits, _ = search_strictness(corpus, Config().ring_size, q, Config())
        assert hits == [], q


@criterion(5, "strictness witnesses for fqp & !arithmetical and gaussian & !fqp")
def test_strictness_witnesses():
    corpus = fresh_corpus()
    hits, _ = search_strictness(corpus, 8, "fqp & !arithmetical", Config())
    assert hits and {"ex3.2", "ex4.6"} <= all_names(hits)
    hits, _ = search_strictness(corpus, 16, "gaussian & !fqp", Config())
    assert hits and {"ex3.3", "ex4.5"} <= all_names(hits)


@criterion(6, "A x (A/m)^j is fqp iff m^2 = 0, and fqp passes down to A")
def test_trivial_extension_criterion():
    rep = verify_trivext(fresh_corpus(), Config(), j_max=2, size_max=16)
    assert rep.failures == [] and rep.caps_hit == []
    assert rep.rings >= 10 and rep.instances == 2 * rep.rings


@criterion(7, "lemma suites pass on the default corpus")
def test_lemma_suites():
    corpus = fresh_corpus()
    for suite in (verify_lemma38, verify_dichotomy, verify_zanardo, verify_base_change,
                  verify_localization, verify_split_identity):
        rep = suite(corpus, Config())
        assert rep.failures == [], (rep.suite, rep.failures[:3])
        assert rep.instances > 0, rep.suite


@criterion(8, "fqp rings get wdim Zero or Infinite, matching reducedness")
def test_wdim():
    corpus = fresh_corpus()
    rep = verify_wdim(corpus, Config())
    assert rep.failures == []
    for e in corpus:
        R = e.build()
        if is_fqp(R):
            w = wdim_classify(R).value
            assert w in (Wdim.ZERO, Wdim.INFINITE)
            assert (w is Wdim.ZERO) == is_reduced(R)


@criterion(9, "Prüfer, total quotient ring, unit/zero-divisor split, local factors reassemble")
def test_structural_invariants():
    corpus = fresh_corpus()
    rep = verify_structure(corpus, Config())
    assert rep.failures == []
    for e in corpus:
        R = e.build()
        assert is_prufer(R) and is_total_quotient_ring(R)
        assert not (R.unit_mask & R.zero_divisor_mask).any()
        assert (R.unit_mask | R.zero_divisor_mask).all()
        factors = [f.ring for f in local_factors(R).factors]
        if not factors:  # the zero ring
            assert R.size == 1
            continue
        P = factors[0]
        for F in factors[1:]:
            P = make_product(P, F)
        assert rings_isomorphic(P, R), e.name


@criterion(10, "every single-entry change to the ex3.2 multiplication table fails the axiom suite")
def test_mutant_sensitivity():
    R = build_ring(EX32)
    mutants = 0
    for a in range(R.size):
        for b in range(R.size):
            for v in range(R.size):
                if v == R.mul[a, b]:
                    continue
                mul = np.array(R.mul)
                mul[a, b] = v
                bad = FiniteRing(R.size, R.add, mul, R.zero, R.one, name=f"mul[{a},{b}]={v}")
                entry = CorpusEntry(bad.name, EX32, {}, (), bad)
                rep = verify_axioms([entry], Config())
                assert not rep.passed, bad.name
                mutants += 1
    assert mutants == R.size ** 2 * (R.size - 1)
    reps = run_suites(["chain"], [CorpusEntry("m", EX32, {}, (), bad)], Config())
    assert reps[1].skipped
