"""Corpus handling, theorem-checking suites and the strictness search.

Suites never stop at the first failure: every instance is checked and all
failures are collected.  Cap hits are recorded separately and are not
failures unless the caller asks for strict behaviour.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import product as iproduct
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import DEFAULT, Config
from .deciders import (
    FLAG_NAMES,
    ConsistencyError,
    Wdim,
    classify,
    fqp_dichotomy,
    gaussian_content_witness,
    ideal_is_quasi_projective,
    implication_violations,
    is_fqp,
    is_gaussian,
    is_local,
    is_prufer,
    is_total_quotient_ring,
    lemma38_inspect,
    wdim_classify,
)
from .errors import FqpLabError, ResourceCapError, SpecSyntaxError
from .ideals import (
    all_ideals,
    annihilator,
    ideal_product,
    maximal_ideal,
    minimal_generators,
)
from .modules import (
    are_isomorphic,
    base_change,
    cyclic_module,
    direct_power,
    end_count,
    is_quasi_projective,
    is_relatively_projective,
    local_component,
    module_from_ideal,
    module_generators,
    scalar_ideal_times,
    split_identity,
    unliftable_witness,
)
from .rings import (
    FiniteRing,
    axiom_violation,
    is_ring_isomorphism,
    local_factors,
    make_product,
    make_trivial_extension,
    ring_fingerprint,
    rings_isomorphic,
)
from .specparse import build_ring, parse_spec_line, print_spec

DATA_FILES = ("paper.ring", "zmod.ring", "truncations.ring", "trivext.ring", "products.ring")


@dataclass
class CorpusEntry:
    name: str
    spec: str
    expected: dict = field(default_factory=dict)
    tags: tuple[str, ...] = ()
    ring: FiniteRing | None = None  # prebuilt (e.g. a corrupted table)

    def build(self, config: Config = DEFAULT) -> FiniteRing:
        if self.ring is None:
            self.ring = build_ring(self.spec, config.ring_size)
        return self.ring


def parse_corpus(lines: Iterable[str], source: str = "<corpus>") -> list[CorpusEntry]:
    """Read ``name: SPEC expect{...}`` lines; ``@tags a b`` sets tags for what follows."""
    out = []
    tags: tuple[str, ...] = ()
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@tags"):
            tags = tuple(line[len("@tags"):].split())
            continue
        try:
            parsed = parse_spec_line(line)
        except SpecSyntaxError as exc:
            raise SpecSyntaxError(f"{source}:{lineno}: {exc.message}", exc.text, exc.pos) from None
        spec = print_spec(parsed.spec)
        out.append(CorpusEntry(parsed.name or spec, spec, parsed.expected, tags))
    return out


def load_corpus(paths: Sequence[str | Path] | None = None) -> list[CorpusEntry]:
    """Entries from the given files, or from the packaged data files."""
    out = []
    if paths is None:
        pkg = resources.files("fqplab") / "data"
        for fname in DATA_FILES:
            out.extend(parse_corpus((pkg / fname).read_text(encoding="utf-8").splitlines(), fname))
        return out
    for p in paths:
        out.extend(parse_corpus(Path(p).read_text(encoding="utf-8").splitlines(), str(p)))
    return out


def corpus_paper() -> list[CorpusEntry]:
    """The packaged corpus: worked examples first, then the families."""
    return load_corpus()


def paper_fixtures() -> list[CorpusEntry]:
    return [e for e in corpus_paper() if "paper-example" in e.tags]


@dataclass
class Failure:
    ring: str
    message: str
    witness: object = None
    expected: object = None
    got: object = None

    def to_record(self) -> dict:
        return {"ring": self.ring, "message": self.message, "witness": self.witness,
                "expected": self.expected, "got": self.got}


@dataclass
class VerificationReport:
    suite: str
    instances: int = 0
    rings: int = 0
    failures: list[Failure] = field(default_factory=list)
    caps_hit: list[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures and not self.skipped

    def fail(self, ring: str, message: str, **kw):
        self.failures.append(Failure(ring, message, **kw))

    def cap(self, ring: str, exc: ResourceCapError):
        self.caps_hit.append(f"{ring}: {exc}")

    def to_record(self, timings: bool = False) -> dict:
        return {"suite": self.suite, "passed": self.passed, "skipped": self.skipped,
                "rings": self.rings, "instances": self.instances,
                "failures": [f.to_record() for f in self.failures],
                "caps_hit": list(self.caps_hit),
                "elapsed_ms": round(self.elapsed_ms, 3) if timings else None}


def _rings(corpus: Sequence[CorpusEntry], config: Config, report: VerificationReport):
    """Build each entry; cap hits and unparsable rings are reported, not yielded."""
    for e in corpus:
        try:
            R = e.build(config)
        except ResourceCapError as exc:
            report.cap(e.name, exc)
            continue
        except (FqpLabError, ValueError) as exc:
            report.fail(e.name, f"construction failed: {exc}")
            continue
        report.rings += 1
        yield e, R


def _timed(fn):
    def wrapper(corpus, config: Config = DEFAULT, **kw) -> VerificationReport:
        t0 = time.perf_counter()
        rep = fn(corpus, config, **kw)
        rep.elapsed_ms = (time.perf_counter() - t0) * 1000.0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def verify_axioms(corpus, config: Config = DEFAULT) -> VerificationReport:
    """Every ring's tables satisfy the commutative-ring axioms."""
    rep = VerificationReport("axioms")
    for e, R in _rings(corpus, config, rep):
        if R.size > config.axiom_size:
            rep.caps_hit.append(f"{e.name}: axiom check skipped above size {config.axiom_size}")
            continue
        rep.instances += 1
        msg = axiom_violation(R)
        if msg:
            rep.fail(e.name, "ring axioms fail", witness=msg)
    return rep


def _expected_mismatch(rep, name: str, expected: dict, record: dict):
    for key, want in expected.items():
        if key in record["flags"]:
            got = record["flags"][key]
        elif key in record:
            got = record[key]
        else:
            rep.fail(name, f"unknown expectation {key!r}")
            continue
        if got != want:
            rep.fail(name, f"expected {key}={want}", expected=want, got=got)


@_timed
def verify_chain(corpus, config: Config = DEFAULT, oracle: bool = False) -> VerificationReport:
    """Hierarchy implications hold and declared expectations match."""
    rep = VerificationReport("chain")
    for e, R in _rings(corpus, config, rep):
        rep.instances += 1
        try:
            record = classify(R, config, oracle=oracle, name=e.name).to_record()
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        except ConsistencyError as exc:
            rep.fail(e.name, str(exc))
            continue
        for v in implication_violations(record["flags"]):
            rep.fail(e.name, f"implication {v} violated", witness=record["witnesses"])
        _expected_mismatch(rep, e.name, e.expected, record)
    return rep


@_timed
def verify_oracle_equivalence(corpus, config: Config = DEFAULT) -> VerificationReport:
    """Brute-force quasi-projectivity agrees with the projective-over-R/Ann criterion.

    Principal ideals are cyclic and must pass both tests.
    """
    rep = VerificationReport("oracle")
    for e, R in _rings(corpus, config, rep):
        try:
            ideals = all_ideals(R, config.ideal_count)
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        principal = {bytes(np.packbits(R.principal[x])) for x in range(R.size)}
        for I in ideals:
            fast = ideal_is_quasi_projective(I)
            try:
                found = unliftable_witness(module_from_ideal(I), config)
            except ResourceCapError as exc:
                rep.cap(f"{e.name} {I.describe()}", exc)
                continue
            rep.instances += 1
            if (found is None) != fast:
                rep.fail(e.name, "oracle disagrees with criterion", witness=I.describe(),
                         expected=fast, got=found is None)
            if I.key in principal and not fast:
                rep.fail(e.name, "cyclic ideal is not quasi-projective", witness=I.describe())
    return rep


@_timed
def verify_direct_sum(corpus, config: Config = DEFAULT, max_pairs: int = 400) -> VerificationReport:
    """For ideals I, J with I ∩ J = 0: I + J quasi-projective iff I, J are
    mutually and self relatively projective."""
    rep = VerificationReport("direct_sum")
    for e, R in _rings(corpus, config, rep):
        try:
            ideals = [I for I in all_ideals(R, config.ideal_count) if I.size > 1]
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        masks = np.array([I.members for I in ideals], dtype=np.int32).reshape(len(ideals), R.size)
        meet = np.triu(masks @ masks.T == 1, k=1)
        pairs = [(ideals[a], ideals[b]) for a, b in np.argwhere(meet)]
        if len(pairs) > max_pairs:
            rep.caps_hit.append(f"{e.name}: {len(pairs)} pairs, checked first {max_pairs}")
            pairs = pairs[:max_pairs]
        for I, J in pairs:
            S = I + J
            MI, MJ = module_from_ideal(I), module_from_ideal(J)
            try:
                rel = all(is_relatively_projective(V, W, config)
                          for V, W in ((MI, MI), (MI, MJ), (MJ, MI), (MJ, MJ)))
            except ResourceCapError as exc:
                rep.cap(f"{e.name} {I.describe()}+{J.describe()}", exc)
                continue
            rep.instances += 1
            qp = ideal_is_quasi_projective(S)
            if qp != rel:
                rep.fail(e.name, "direct-sum law fails", witness=[I.describe(), J.describe()],
                         expected=rel, got=qp)
    return rep


@_timed
def verify_lemma38(corpus, config: Config = DEFAULT) -> VerificationReport:
    """Incomparable a, b with (a, b) quasi-projective satisfy all three conclusions."""
    rep = VerificationReport("lemma38")
    for e, R in _rings(corpus, config, rep):
        if not is_local(R):
            continue
        P = R.principal
        pairs = np.argwhere(np.triu(~(P | P.T)))
        for a, b in pairs:
            rep.instances += 1
            r = lemma38_inspect(R, int(a), int(b))
            if r.status == "violated":
                bad = [k for k, v in r.conclusions.items() if not v]
                rep.fail(e.name, "conclusion fails for a quasi-projective (a, b)",
                         witness=[R.labels[a], R.labels[b], bad])
    return rep


@_timed
def verify_dichotomy(corpus, config: Config = DEFAULT) -> VerificationReport:
    """Each local factor of an fqp ring has Nil^2 = 0 or is chained."""
    rep = VerificationReport("dichotomy")
    for e, R in _rings(corpus, config, rep):
        try:
            if not is_fqp(R, config):
                continue
            for k, f in enumerate(local_factors(R).factors):
                rep.instances += 1
                try:
                    fqp_dichotomy(f.ring, config)
                except (ConsistencyError, ValueError) as exc:
                    rep.fail(e.name, f"factor {k}: {exc}")
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
    return rep


@_timed
def verify_zanardo(corpus, config: Config = DEFAULT) -> VerificationReport:
    """Over a local ring a quasi-projective ideal I is (R/Ann(I))^n, n = μ(I)."""
    rep = VerificationReport("zanardo")
    for e, R in _rings(corpus, config, rep):
        if not is_local(R):
            continue
        try:
            ideals = all_ideals(R, config.ideal_count)
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        for I in ideals:
            if not ideal_is_quasi_projective(I):
                continue
            n = len(minimal_generators(R, I))
            M = module_from_ideal(I)
            F = direct_power(cyclic_module(R, annihilator(R, I)), n)
            try:
                iso = are_isomorphic(M, F, config.candidates)
            except ResourceCapError as exc:
                rep.cap(f"{e.name} {I.describe()}", exc)
                continue
            rep.instances += 1
            if not iso:
                rep.fail(e.name, "quasi-projective ideal is not (R/Ann)^n",
                         witness=I.describe(), expected=n)
    return rep


@_timed
def verify_base_change(corpus, config: Config = DEFAULT) -> VerificationReport:
    """M quasi-projective over R gives M/KM quasi-projective over R/K, for all ideals K."""
    rep = VerificationReport("base_change")
    for e, R in _rings(corpus, config, rep):
        try:
            ideals = all_ideals(R, config.ideal_count)
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        for I in ideals:
            if not ideal_is_quasi_projective(I):
                continue
            M = module_from_ideal(I)
            # (R/K)/Ann(M/KM) is R/Ann(M/KM), so the verdict depends on KM alone
            verdict: dict[bytes, bool] = {}
            for K in ideals:
                rep.instances += 1
                KM = scalar_ideal_times(M, K).tobytes()
                if KM not in verdict:
                    verdict[KM] = is_quasi_projective(base_change(M, K))
                if not verdict[KM]:
                    rep.fail(e.name, "base change loses quasi-projectivity",
                             witness=[I.describe(), K.describe()])
    return rep


@_timed
def verify_localization(corpus, config: Config = DEFAULT) -> VerificationReport:
    """fqp passes to local factors, and |End(M)| factors over the local components."""
    rep = VerificationReport("localization")
    for e, R in _rings(corpus, config, rep):
        dec = local_factors(R)
        try:
            fqp = is_fqp(R, config)
            parts = [is_fqp(f.ring, config) for f in dec.factors]
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        rep.instances += 1
        if fqp and not all(parts):
            rep.fail(e.name, "fqp ring with a non-fqp local factor", got=parts)
        if fqp != all(parts):
            rep.fail(e.name, "fqp is not the conjunction over local factors",
                     expected=all(parts), got=fqp)
        if len(dec.factors) < 2:
            continue
        for I in all_ideals(R, config.ideal_count):
            M = module_from_ideal(I)
            try:
                whole = end_count(M, config.candidates)
                pieces = [end_count(local_component(M, i), config.candidates)
                          for i in range(len(dec.factors))]
            except ResourceCapError as exc:
                rep.cap(f"{e.name} {I.describe()}", exc)
                continue
            rep.instances += 1
            if whole != int(np.prod(pieces)):
                rep.fail(e.name, "End count does not factor", witness=I.describe(),
                         expected=pieces, got=whole)
    return rep


@_timed
def verify_split_identity(corpus, config: Config = DEFAULT) -> VerificationReport:
    """A quasi-projective ideal split into cyclic parts admits f_i summing to 1."""
    rep = VerificationReport("split_identity")
    for e, R in _rings(corpus, config, rep):
        try:
            ideals = all_ideals(R, config.ideal_count)
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        for I in ideals:
            if not ideal_is_quasi_projective(I):
                continue
            M = module_from_ideal(I)
            gens = module_generators(M)
            if len(gens) < 2:
                continue
            parts = [M.cyclic[g] for g in gens]
            try:
                found = split_identity(M, parts, config.candidates)
            except ResourceCapError as exc:
                rep.cap(f"{e.name} {I.describe()}", exc)
                continue
            rep.instances += 1
            if found is None:
                rep.fail(e.name, "no splitting of the identity", witness=I.describe())
    return rep


@_timed
def verify_structure(corpus, config: Config = DEFAULT) -> VerificationReport:
    """Finite-ring facts: Prüfer, total quotient ring, unit/zero-divisor split,
    and the local decomposition reassembles the ring."""
    rep = VerificationReport("structure")
    for e, R in _rings(corpus, config, rep):
        rep.instances += 1
        if not is_prufer(R, config):
            rep.fail(e.name, "not Prüfer")
        if not is_total_quotient_ring(R):
            rep.fail(e.name, "not a total quotient ring")
        both = R.unit_mask & R.zero_divisor_mask
        neither = ~(R.unit_mask | R.zero_divisor_mask)
        if both.any() or neither.any():
            rep.fail(e.name, "unit/zero-divisor dichotomy fails")
        dec = local_factors(R)
        P = dec.product_ring()
        if not is_ring_isomorphism(P, R, dec.embedding):
            rep.fail(e.name, "local factors do not reassemble the ring")
        if len(dec.factors) > 1:
            # the reassembly must also match a product in the other factor order
            Q = dec.factors[-1].ring
            for f in dec.factors[-2::-1]:
                Q = make_product(Q, f.ring)
            if not rings_isomorphic(Q, R):
                rep.fail(e.name, "product of local factors is not isomorphic to the ring")
    return rep


@_timed
def verify_wdim(corpus, config: Config = DEFAULT) -> VerificationReport:
    """fqp rings get Zero exactly when reduced, else Infinite; others NotApplicable."""
    rep = VerificationReport("wdim")
    for e, R in _rings(corpus, config, rep):
        rep.instances += 1
        try:
            fqp = is_fqp(R, config)
            w = wdim_classify(R, fqp=fqp, config=config)
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        except ConsistencyError as exc:
            rep.fail(e.name, str(exc))
            continue
        if not fqp:
            want = Wdim.NOT_APPLICABLE
        else:
            want = Wdim.ZERO if int(R.nil_mask.sum()) == 1 else Wdim.INFINITE
        if w.value != want:
            rep.fail(e.name, "wdim class mismatch", expected=want.value, got=w.value.value)
    return rep


@_timed
def verify_content(corpus, config: Config = DEFAULT) -> VerificationReport:
    """Bounded content search never refutes a ring the pairwise test calls Gaussian."""
    rep = VerificationReport("content")
    for e, R in _rings(corpus, config, rep):
        try:
            found = gaussian_content_witness(R, config.content_degree, config)
        except ResourceCapError as exc:
            rep.cap(e.name, exc)
            continue
        rep.instances += 1
        if found is not None and is_gaussian(R):
            rep.fail(e.name, "content witness in a Gaussian ring", witness=found.describe(R))
    return rep


def local_bases(corpus, config: Config = DEFAULT, size_max: int = 16) -> list[tuple[str, FiniteRing]]:
    out = []
    for e in corpus:
        try:
            R = build_ring(e.spec, size_max) if e.ring is None else e.ring
        except ResourceCapError:
            continue
        if R.size <= size_max and is_local(R):
            out.append((e.name, R))
    return out


def trivial_extension_over_residue(A: FiniteRing, j: int, config: Config = DEFAULT) -> FiniteRing:
    """``A ⋉ (A/m)^j`` for a local ring ``A``."""
    E = direct_power(cyclic_module(A, maximal_ideal(A)), j)
    R = make_trivial_extension(A, E, config.ring_size)
    quot = "A/m" if j == 1 else f"(A/m)^{j}"
    object.__setattr__(R, "name", f"{A.name} ⋉ {quot}")
    return R


def verify_trivext(corpus, config: Config = DEFAULT, j_max: int = 2,
                   size_max: int = 16) -> VerificationReport:
    """``A ⋉ (A/m)^j`` is fqp iff m^2 = 0 in A; fqp passes down to A; in the
    non-chained fqp case zero-divisors are exactly the nilpotents."""
    t0 = time.perf_counter()
    rep = VerificationReport("trivext")
    seen = set()
    for name, A in local_bases(corpus, config, size_max):
        key = A.spec or name
        if key in seen:
            continue
        seen.add(key)
        rep.rings += 1
        m = maximal_ideal(A)
        m2_zero = ideal_product(m, m).size == 1
        for j in range(1, j_max + 1):
            try:
                R = trivial_extension_over_residue(A, j, config)
                fqp = is_fqp(R, config)
                base_fqp = is_fqp(A, config)
            except ResourceCapError as exc:
                rep.cap(f"{name} j={j}", exc)
                continue
            rep.instances += 1
            label = f"{name} ⋉ (A/m)^{j}"
            if fqp != m2_zero:
                rep.fail(label, "fqp does not match m^2 = 0", expected=m2_zero, got=fqp)
            if fqp and not base_fqp:
                rep.fail(label, "fqp extension over a non-fqp base")
            if fqp and not is_local(R):
                rep.fail(label, "extension of a local ring is not local")
            if fqp and incomparable(R) and not np.array_equal(R.zero_divisor_mask, R.nil_mask):
                rep.fail(label, "zero-divisors differ from the nilradical")
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return rep


def incomparable(R: FiniteRing) -> bool:
    P = R.principal
    return bool((~(P | P.T)).any())


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "axioms": verify_axioms,
    "structure": verify_structure,
    "chain": verify_chain,
    "oracle": verify_oracle_equivalence,
    "direct_sum": verify_direct_sum,
    "lemma38": verify_lemma38,
    "dichotomy": verify_dichotomy,
    "zanardo": verify_zanardo,
    "base_change": verify_base_change,
    "localization": verify_localization,
    "split_identity": verify_split_identity,
    "wdim": verify_wdim,
    "content": verify_content,
    "trivext": verify_trivext,
}


def run_suites(names: Sequence[str], corpus, config: Config = DEFAULT) -> list[VerificationReport]:
    """Run suites in order; the axiom suite, if it fails, blocks the rest."""
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)} or all")
    names = list(names)
    if "axioms" not in names:
        names.insert(0, "axioms")
    out = []
    blocked = False
    for n in names:
        if blocked:
            out.append(VerificationReport(n, skipped=True))
            continue
        rep = SUITES[n](corpus, config)
        out.append(rep)
        if n == "axioms" and not rep.passed:
            blocked = True
    return out


# -- strictness search -------------------------------------------------------

_QTOKEN = re.compile(r"\s*(?:(?P<flag>[A-Za-z_]+)|(?P<op>[&|!~()∧∨¬]))")
_OPS = {"and": "&", "∧": "&", "or": "|", "∨": "|", "not": "!", "¬": "!", "~": "!"}

# consistent flag assignments for a finite ring
_IMPLIED = [("arithmetical", "fqp"), ("fqp", "gaussian"), ("gaussian", "prufer"),
            ("chained", "arithmetical"), ("von_neumann_regular", "reduced"),
            ("reduced", "von_neumann_regular")]
_ALWAYS = ("prufer", "total_quotient_ring")


@dataclass(frozen=True)
class Query:
    text: str
    tree: tuple

    def __call__(self, flags: dict[str, bool]) -> bool:
        return _evaluate(self.tree, flags)

    @property
    def forbidden(self) -> bool:
        """No finite ring can satisfy the query under the proven implications."""
        for bits in iproduct((False, True), repeat=len(FLAG_NAMES)):
            flags = dict(zip(FLAG_NAMES, bits))
            if any(not flags[a] for a in _ALWAYS):
                continue
            if any(flags[a] and not flags[b] for a, b in _IMPLIED):
                continue
            if self(flags):
                return False
        return True


def _evaluate(tree, flags):
    op = tree[0]
    if op == "flag":
        return flags[tree[1]]
    if op == "!":
        return not _evaluate(tree[1], flags)
    if op == "&":
        return _evaluate(tree[1], flags) and _evaluate(tree[2], flags)
    return _evaluate(tree[1], flags) or _evaluate(tree[2], flags)


def parse_query(text: str) -> Query:
    """Boolean formula over flag names with &, |, ! (or ∧, ∨, ¬, and, or, not)."""
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _QTOKEN.match(text, pos)
        if not m:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r} in query", text, pos)
        if m.group("flag"):
            word = m.group("flag")
            toks.append((_OPS[word], m.start("flag")) if word in _OPS else (("flag", word), m.start("flag")))
        else:
            sym = m.group("op")
            toks.append((_OPS.get(sym, sym), m.start("op")))
        pos = m.end()
    toks.append(("end", len(text)))
    i = 0

    def peek():
        return toks[i][0]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def disj():
        left = conj()
        while peek() == "|":
            take()
            left = ("|", left, conj())
        return left

    def conj():
        left = unary()
        while peek() == "&":
            take()
            left = ("&", left, unary())
        return left

    def unary():
        tok, p = take()
        if tok == "!":
            return ("!", unary())
        if tok == "(":
            inner = disj()
            if take()[0] != ")":
                raise SpecSyntaxError("expected ')'", text, toks[i - 1][1])
            return inner
        if isinstance(tok, tuple):
            if tok[1] not in FLAG_NAMES:
                raise SpecSyntaxError(f"unknown flag {tok[1]!r}", text, p)
            return tok
        raise SpecSyntaxError("expected a flag name", text, p)

    tree = disj()
    if peek() != "end":
        raise SpecSyntaxError("trailing input in query", text, toks[i][1])
    return Query(text, tree)


@dataclass
class SearchHit:
    name: str
    spec: str
    size: int
    aliases: list[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return {"ring": self.name, "spec": self.spec, "size": self.size, "aliases": self.aliases}


def _dedupe_key(R: FiniteRing):
    return ring_fingerprint(R)


def search_strictness(corpus, size_max: int, query: str | Query,
                      config: Config = DEFAULT) -> tuple[list[SearchHit], list[str]]:
    """Corpus rings of size <= size_max satisfying ``query``, one per isomorphism class.

    Returns the hits and the cap messages met along the way.
    """
    q = parse_query(query) if isinstance(query, str) else query
    classes: list[tuple[tuple, FiniteRing, SearchHit | None, str]] = []
    hits: list[SearchHit] = []
    caps: list[str] = []
    for e in corpus:
        try:
            R = e.build(config.replace(ring_size=min(size_max, config.ring_size))) \
                if e.ring is None else e.ring
        except ResourceCapError:
            continue
        if R.size > size_max:
            continue
        key = _dedupe_key(R)
        dup = next((c for c in classes if c[0] == key and rings_isomorphic(c[1], R)), None)
        if dup is not None:
            if dup[2] is not None:
                dup[2].aliases.append(e.name)
            continue
        try:
            flags = classify(R, config, oracle=False, name=e.name).flags
        except ResourceCapError as exc:
            caps.append(f"{e.name}: {exc}")
            continue
        hit = SearchHit(e.name, e.spec, R.size) if q(flags) else None
        classes.append((key, R, hit, e.name))
        if hit is not None:
            hits.append(hit)
    return hits, caps
