import pytest

from fqplab.config import Config
from fqplab.errors import SpecSyntaxError
from fqplab.harness import (
    SUITES,
    CorpusEntry,
    load_corpus,
    paper_fixtures,
    parse_corpus,
    parse_query,
    run_suites,
    search_strictness,
    verify_chain,
    verify_oracle_equivalence,
)
from fqplab.rings import FiniteRing
from fqplab.specparse import build_ring

from conftest import EX32, mutate

SMALL = parse_corpus("""
@tags small
z4: Z(4) expect{chained=true}
z6: Z(6) expect{chained=false, arithmetical=true}
ex3.2: Poly(2,[x,y],[x^2,x*y,y^2]) expect{fqp=true, arithmetical=false}
ex4.6: TrivExt(Z(4),[2],1) expect{fqp=true}
""".splitlines())


def corrupted_entry():
    R = build_ring(EX32)
    bad = FiniteRing(R.size, R.add, mutate(R.mul, 1, 2, 3), R.zero, R.one, name="broken")
    return CorpusEntry("broken", EX32, {}, (), bad)


def test_corpus_contents(corpus):
    names = [e.name for e in corpus]
    assert len(names) == len(set(names))
    assert len(corpus) >= 100
    assert {"ex3.2", "ex3.3", "ex4.5", "ex4.6", "cube2"} <= set(names)
    fixtures = {e.name: e for e in paper_fixtures()}
    assert set(fixtures) == {"ex3.2", "ex3.3", "ex4.5", "ex4.6"}
    assert fixtures["ex3.3"].expected["fqp"] is False


def test_parse_corpus_tags_and_comments():
    entries = parse_corpus(["# comment", "", "@tags a b", "Z(3)", "@tags", "n: Z(5)"])
    assert [(e.name, e.tags) for e in entries] == [("Z(3)", ("a", "b")), ("n", ())]


def test_parse_corpus_error_names_line():
    with pytest.raises(SpecSyntaxError) as err:
        parse_corpus(["Z(3)", "Z(3"], "f.ring")
    assert "f.ring:2" in str(err.value)


def test_load_corpus_from_file(tmp_path):
    p = tmp_path / "mine.ring"
    p.write_text("a: Z(7)\nb: Prod(Z(2),Z(2))\n", encoding="utf-8")
    assert [e.name for e in load_corpus([p])] == ["a", "b"]


@pytest.mark.parametrize("suite", list(SUITES))
def test_empty_corpus_passes_vacuously(suite):
    rep = SUITES[suite]([], Config())
    assert rep.passed and rep.instances == 0 and rep.rings == 0


@pytest.mark.parametrize("suite", list(SUITES))
def test_small_corpus_passes(suite):
    rep = SUITES[suite](SMALL, Config())
    assert rep.passed, [f.message for f in rep.failures]


def test_chain_counts():
    rep = verify_chain(SMALL, Config())
    assert rep.rings == 4 and rep.instances >= 4


def test_oracle_counts():
    rep = verify_oracle_equivalence(SMALL, Config())
    # one instance per ideal: 3 + 4 + 6 + 6
    assert rep.instances == 19 and rep.passed


def test_corrupted_table_blocks_other_suites():
    reps = run_suites(["chain", "oracle"], [corrupted_entry()], Config())
    assert [r.suite for r in reps] == ["axioms", "chain", "oracle"]
    assert not reps[0].passed
    assert "broken" in reps[0].failures[0].ring
    assert all(r.skipped and not r.passed for r in reps[1:])


def test_inverted_expectation_fails_chain():
    entries = parse_corpus(["z6: Z(6) expect{chained=true}"])
    rep = verify_chain(entries, Config())
    assert not rep.passed
    f = rep.failures[0]
    assert f.ring == "z6" and f.expected is True and f.got is False


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suites(["nope"], SMALL, Config())


def test_report_record_is_deterministic():
    a = verify_chain(SMALL, Config()).to_record()
    b = verify_chain(SMALL, Config()).to_record()
    assert a == b and a["elapsed_ms"] is None


def test_query_parsing():
    q = parse_query("gaussian & !fqp")
    assert q({"gaussian": True, "fqp": False})
    assert not q({"gaussian": True, "fqp": True})
    q2 = parse_query("(chained or not local) ∧ ¬reduced")
    assert q2({"chained": False, "local": False, "reduced": False})
    assert parse_query("fqp | gaussian & chained").tree[0] == "|"


@pytest.mark.parametrize("text", ["fqp &", "unknown", "fqp)", "(fqp", "fqp $ gaussian"])
def test_query_errors(text):
    with pytest.raises(SpecSyntaxError):
        parse_query(text)


@pytest.mark.parametrize("text, forbidden", [
    ("arithmetical & !fqp", True),
    ("fqp & !gaussian", True),
    ("chained & !gaussian", True),
    ("!prufer", True),
    ("reduced & !von_neumann_regular", True),
    ("gaussian & !fqp", False),
    ("fqp & !arithmetical", False),
    ("local & !chained", False),
])
def test_forbidden_queries(text, forbidden):
    assert parse_query(text).forbidden is forbidden


def test_search_finds_gaussian_not_fqp():
    hits, caps = search_strictness(load_corpus(), 16, "gaussian & !fqp", Config())
    names = {h.name for h in hits}
    assert {"ex3.3", "ex4.5"} <= names
    assert not caps
    for h in hits:
        assert h.size <= 16


def test_search_dedupes_isomorphic_entries():
    entries = parse_corpus(["a: Prod(Z(4),Z(3))", "b: Z(12)", "c: Prod(Z(3),Z(4))"])
    hits, _ = search_strictness(entries, 16, "arithmetical", Config())
    assert len(hits) == 1 and hits[0].name == "a" and hits[0].aliases == ["b", "c"]


def test_forbidden_query_has_no_hits():
    hits, _ = search_strictness(load_corpus(), 32, "arithmetical & !fqp", Config())
    assert hits == []
