"""Prüfer-hierarchy predicates on finite rings.

Every ``*_witness`` function returns None when the property holds and some
evidence otherwise; the ``is_*`` predicates are thin wrappers.  All witnesses
are the first ones met in canonical (index) order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from . import kernels
from .config import DEFAULT, Config
from .errors import FqpLabError, ResourceCapError
from .ideals import (
    Ideal,
    all_ideals,
    annihilator,
    ideal_generated,
    ideal_product,
    intersect,
    minimal_generators,
    nilradical,
    principal_ideal,
)
from .modules import is_projective, is_quasi_projective, module_from_ideal, unliftable_witness
from .rings import FiniteRing, local_factors

SCHEMA_VERSION = 1

FLAG_NAMES = (
    "local",
    "chained",
    "arithmetical",
    "fqp",
    "gaussian",
    "prufer",
    "reduced",
    "von_neumann_regular",
    "total_quotient_ring",
)


class ConsistencyError(FqpLabError):
    """Two independent computations disagree; indicates a bug or corrupt tables."""


class Wdim(str, Enum):
    ZERO = "Zero"
    INFINITE = "Infinite"
    NOT_APPLICABLE = "NotApplicable"


class Dichotomy(str, Enum):
    NIL_SQUARE_ZERO = "NilSquareZero"
    CHAINED = "Chained"
    BOTH = "Both"


def is_local(R: FiniteRing) -> bool:
    return len(local_factors(R).factors) == 1


def incomparable_pair(R: FiniteRing) -> tuple[int, int] | None:
    """First ``(a, b)`` with ``a`` not in ``(b)`` and ``b`` not in ``(a)``."""
    P = R.principal
    bad = np.triu(~(P | P.T))
    if not bad.any():
        return None
    a, b = np.argwhere(bad)[0]
    return int(a), int(b)


def is_chained(R: FiniteRing) -> bool:
    # comparable principal ideals force comparable ideals
    return incomparable_pair(R) is None


def arithmetical_witness(R: FiniteRing) -> tuple[int, int, int] | None:
    """``(factor, a, b)``: an incomparable pair inside a local factor, in R's indices."""
    for k, f in enumerate(local_factors(R).factors):
        pair = incomparable_pair(f.ring)
        if pair is not None:
            return k, int(f.elements[pair[0]]), int(f.elements[pair[1]])
    return None


def is_arithmetical(R: FiniteRing) -> bool:
    return arithmetical_witness(R) is None


def gaussian_witness(R: FiniteRing) -> tuple[int, int] | None:
    """A pair failing the local criterion on ``(a,b)^2`` in some local factor."""
    for f in local_factors(R).factors:
        F = f.ring
        a, b = kernels.gaussian_violation(F.mul, F.principal, F.zero)
        if a >= 0:
            return int(f.elements[a]), int(f.elements[b])
    return None


def is_gaussian(R: FiniteRing) -> bool:
    return gaussian_witness(R) is None


@dataclass(frozen=True)
class ContentWitness:
    f: tuple[int, ...]  # coefficients, constant term first
    g: tuple[int, ...]
    content_product: Ideal
    content_of_product: Ideal

    def describe(self, R: FiniteRing) -> dict:
        def poly(c):
            terms = []
            for i, x in enumerate(c):
                if x == R.zero:
                    continue
                lab = R.labels[x]
                lab = f"({lab})" if "+" in lab and i else lab
                terms.append(lab if i == 0 else f"{lab}*T" if i == 1 else f"{lab}*T^{i}")
            return " + ".join(terms) or "0"
        return {"f": poly(self.f), "g": poly(self.g),
                "c(f)c(g)": self.content_product.describe(),
                "c(fg)": self.content_of_product.describe()}


def _ideal_sum_table(R: FiniteRing, cap: int):
    def compute():
        ideals = all_ideals(R, cap)
        ids = {I.key: i for i, I in enumerate(ideals)}
        pid = np.array([ids[Ideal(R, R.principal[x]).key] for x in range(R.size)], dtype=np.int32)
        L = len(ideals)
        isum = np.empty((L, L), dtype=np.int32)
        for i in range(L):
            for j in range(i, L):
                T = kernels.sumset(R.add, ideals[i].elements, ideals[j].elements)
                isum[i, j] = isum[j, i] = ids[Ideal(R, T).key]
        return ideals, pid, isum
    return R.cached("ideal_sum_table", compute)


def gaussian_content_witness(R: FiniteRing, d: int, config: Config = DEFAULT) -> ContentWitness | None:
    """Search polynomial pairs of degree <= d for ``c(fg) != c(f)c(g)``.

    Only refutes: finding nothing says nothing about higher degrees.
    """
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    space = R.size ** (2 * (d + 1))
    if space > config.content_pairs:
        raise ResourceCapError("content search pairs", space, config.content_pairs)
    ideals, pid, isum = _ideal_sum_table(R, config.ideal_count)
    F, G = kernels.content_search(R.mul, R.add, pid, isum, R.zero, d, 0)
    if F < 0:
        return None
    n = R.size

    def decode(code):
        out = []
        for _ in range(d + 1):
            out.append(code % n)
            code //= n
        return tuple(int(x) for x in reversed(out))

    f, g = decode(F), decode(G)
    prods = [R.mul[a, b] for a in f for b in g]
    fg = []
    for t in range(2 * d + 1):
        h = R.zero
        for i in range(max(0, t - d), min(d, t) + 1):
            h = R.add[h, R.mul[f[i], g[t - i]]]
        fg.append(h)
    return ContentWitness(f, g, ideal_generated(R, prods), ideal_generated(R, fg))


def ideal_is_quasi_projective(I: Ideal) -> bool:
    """Fast criterion for an ideal, memoized on its ring."""
    return I.ring.cached(("qp", I.key), lambda: is_quasi_projective(module_from_ideal(I)))


@dataclass
class FqpResult:
    holds: bool
    witness: Ideal | None
    oracle_verified: bool
    ideals_checked: int
    oracle_checked: int
    oracle_skipped: int


def fqp_check(R: FiniteRing, config: Config = DEFAULT, oracle: bool = True) -> FqpResult:
    """Test every ideal with the fast criterion; cross-check with the oracle within caps."""
    ideals = all_ideals(R, config.ideal_count)
    witness = None
    checked = skipped = 0
    for I in ideals:
        fast = ideal_is_quasi_projective(I)
        if oracle:
            try:
                found = unliftable_witness(module_from_ideal(I), config)
            except ResourceCapError:
                skipped += 1
            else:
                checked += 1
                if (found is None) != fast:
                    raise ConsistencyError(
                        f"{R.name}: oracle and criterion disagree on ideal {I.describe()}")
        if not fast and witness is None:
            witness = I
    return FqpResult(witness is None, witness, oracle and skipped == 0, len(ideals),
                     checked, skipped)


def fqp_witness(R: FiniteRing, config: Config = DEFAULT) -> Ideal | None:
    """First ideal that is not quasi-projective (fast criterion only)."""
    for I in all_ideals(R, config.ideal_count):
        if not ideal_is_quasi_projective(I):
            return I
    return None


def is_fqp(R: FiniteRing, config: Config = DEFAULT, oracle: bool = False) -> bool:
    if oracle:
        return fqp_check(R, config, oracle=True).holds
    return fqp_witness(R, config) is None


def regular_ideal_witness(R: FiniteRing, config: Config = DEFAULT) -> Ideal | None:
    """First ideal containing a non-zero-divisor that is not projective."""
    regular = ~R.zero_divisor_mask
    for I in all_ideals(R, config.ideal_count):
        if (I.members & regular).any() and not is_projective(module_from_ideal(I)):
            return I
    return None


def is_prufer(R: FiniteRing, config: Config = DEFAULT) -> bool:
    return regular_ideal_witness(R, config) is None


def is_total_quotient_ring(R: FiniteRing) -> bool:
    return bool((R.unit_mask | R.zero_divisor_mask).all())


def is_reduced(R: FiniteRing) -> bool:
    return int(R.nil_mask.sum()) == 1


def von_neumann_witness(R: FiniteRing) -> int | None:
    """First ``a`` with no ``x`` such that ``a x a = a``."""
    idx = np.arange(R.size)
    axa = R.mul[idx[:, None], R.mul.T]  # axa[a, x] = a * (x * a)
    bad = np.flatnonzero(~(axa == idx[:, None]).any(axis=1))
    return int(bad[0]) if len(bad) else None


def is_von_neumann_regular(R: FiniteRing) -> bool:
    return von_neumann_witness(R) is None


def nil_square_zero(R: FiniteRing) -> bool:
    N = nilradical(R)
    return ideal_product(N, N).size == 1


@dataclass(frozen=True)
class WdimResult:
    value: Wdim
    cases: tuple[str, ...] = ()  # per local factor: Field, NilSquareZero, Chained, Both


def wdim_classify(R: FiniteRing, fqp: bool | None = None, config: Config = DEFAULT) -> WdimResult:
    """Weak global dimension of an fqp ring: Zero when reduced, else Infinite.

    Non-reduced local factors are sorted into the square-zero-nilradical case
    or the chained case.  The value 1 needs an infinite ring and never occurs.
    """
    if fqp is None:
        fqp = is_fqp(R, config)
    if not fqp:
        return WdimResult(Wdim.NOT_APPLICABLE)
    cases = []
    for f in local_factors(R).factors:
        F = f.ring
        if F.unit_mask.sum() == F.size - 1:
            cases.append("Field")
            continue
        nsz, ch = nil_square_zero(F), is_chained(F)
        if not (nsz or ch):
            raise ConsistencyError(f"{F.name}: local fqp factor is neither chained nor Nil^2 = 0")
        cases.append("Both" if nsz and ch else "NilSquareZero" if nsz else "Chained")
    if is_reduced(R):
        if any(c != "Field" for c in cases):
            raise ConsistencyError(f"{R.name}: reduced but not a product of fields")
        return WdimResult(Wdim.ZERO, tuple(cases))
    return WdimResult(Wdim.INFINITE, tuple(cases))


def fqp_dichotomy(R: FiniteRing, config: Config = DEFAULT) -> Dichotomy:
    """For a local fqp ring: Nil(R)^2 = 0, chained, or both."""
    if not is_local(R):
        raise ValueError(f"{R.name} is not local")
    if not is_fqp(R, config):
        raise ValueError(f"{R.name} is not an fqp-ring")
    nsz, ch = nil_square_zero(R), is_chained(R)
    if nsz and ch:
        return Dichotomy.BOTH
    if nsz:
        return Dichotomy.NIL_SQUARE_ZERO
    if ch:
        return Dichotomy.CHAINED
    raise ConsistencyError(f"{R.name}: local fqp ring is neither chained nor Nil^2 = 0")


@dataclass(frozen=True)
class Lemma38Report:
    status: str  # not_applicable | holds | violated | hypothesis_fails
    hypothesis: bool | None
    intersection_zero: bool | None = None
    squares_zero: bool | None = None
    annihilators_equal: bool | None = None

    @property
    def conclusions(self) -> dict[str, bool | None]:
        return {"intersection_zero": self.intersection_zero,
                "squares_zero": self.squares_zero,
                "annihilators_equal": self.annihilators_equal}


def lemma38_inspect(R: FiniteRing, a, b) -> Lemma38Report:
    """Inspect an incomparable pair: is ``(a,b)`` quasi-projective, and do
    ``(a)∩(b)=0``, ``a²=b²=ab=0`` and ``Ann(a)=Ann(b)`` hold?"""
    if not is_local(R):
        raise ValueError(f"{R.name} is not local")
    a, b = R.index(a), R.index(b)
    if a == R.zero or b == R.zero:
        raise ValueError("elements must be nonzero")
    P = R.principal
    if P[b, a] or P[a, b]:
        return Lemma38Report("not_applicable", None)
    hyp = ideal_is_quasi_projective(ideal_generated(R, [a, b]))
    inter = intersect(principal_ideal(R, a), principal_ideal(R, b)).size == 1
    sq = R.mul[a, a] == R.zero and R.mul[b, b] == R.zero and R.mul[a, b] == R.zero
    ann = annihilator(R, [a]) == annihilator(R, [b])
    if hyp:
        status = "holds" if inter and sq and ann else "violated"
    else:
        status = "hypothesis_fails"
    return Lemma38Report(status, hyp, bool(inter), bool(sq), bool(ann))


@dataclass
class PropertyReport:
    ring: str
    size: int
    flags: dict[str, bool]
    wdim: str
    witnesses: dict[str, Any]
    oracle_verified: bool
    stats: dict[str, Any] = field(default_factory=dict)

    def to_record(self, timings: bool = False) -> dict:
        stats = dict(self.stats)
        if not timings:
            stats["elapsed_ms"] = None
        return {
            "schema": SCHEMA_VERSION,
            "ring": self.ring,
            "size": self.size,
            "flags": {k: self.flags[k] for k in FLAG_NAMES},
            "wdim": self.wdim,
            "witnesses": self.witnesses,
            "oracle_verified": self.oracle_verified,
            "stats": stats,
        }


def _labels(R: FiniteRing, idx) -> list[str]:
    return [R.labels[i] for i in idx]


def classify(R: FiniteRing, config: Config = DEFAULT, oracle: bool = True,
             name: str | None = None) -> PropertyReport:
    """Run every decider on ``R``."""
    t0 = time.perf_counter()
    wit: dict[str, Any] = {}
    flags: dict[str, bool] = {}

    dec = local_factors(R)
    flags["local"] = len(dec.factors) == 1
    if not flags["local"]:
        wit["local"] = {"factors": len(dec.factors)}

    pair = incomparable_pair(R)
    flags["chained"] = pair is None
    if pair is not None:
        wit["chained"] = _labels(R, pair)

    aw = arithmetical_witness(R)
    flags["arithmetical"] = aw is None
    if aw is not None:
        wit["arithmetical"] = {"factor": aw[0], "pair": _labels(R, aw[1:])}

    fq = fqp_check(R, config, oracle=oracle)
    flags["fqp"] = fq.holds
    if fq.witness is not None:
        wit["fqp"] = {"ideal": _labels(R, minimal_generators(R, fq.witness))}

    gw = gaussian_witness(R)
    flags["gaussian"] = gw is None
    if gw is not None:
        wit["gaussian"] = _labels(R, gw)
    try:
        cw = gaussian_content_witness(R, config.content_degree, config)
    except ResourceCapError:
        cw = None
        content_checked = False
    else:
        content_checked = True
    if cw is not None:
        if flags["gaussian"]:
            raise ConsistencyError(f"{R.name}: content witness found in a Gaussian ring")
        wit["gaussian_content"] = cw.describe(R)

    rw = regular_ideal_witness(R, config)
    flags["prufer"] = rw is None
    if rw is not None:
        wit["prufer"] = {"ideal": _labels(R, minimal_generators(R, rw))}

    flags["reduced"] = is_reduced(R)
    if not flags["reduced"]:
        nil = np.flatnonzero(R.nil_mask)
        wit["reduced"] = _labels(R, [int(nil[nil != R.zero][0])])

    vw = von_neumann_witness(R)
    flags["von_neumann_regular"] = vw is None
    if vw is not None:
        wit["von_neumann_regular"] = _labels(R, [vw])

    flags["total_quotient_ring"] = is_total_quotient_ring(R)
    if not flags["total_quotient_ring"]:
        bad = np.flatnonzero(~(R.unit_mask | R.zero_divisor_mask))
        wit["total_quotient_ring"] = _labels(R, bad[:1])

    wd = wdim_classify(R, fqp=fq.holds, config=config)
    if wd.cases:
        wit["wdim"] = {"cases": list(wd.cases)}

    elapsed = (time.perf_counter() - t0) * 1000.0
    stats = {"ideal_count": fq.ideals_checked, "oracle_checked": fq.oracle_checked,
             "oracle_skipped": fq.oracle_skipped,
             "content_degree": config.content_degree if content_checked else None,
             "elapsed_ms": round(elapsed, 3)}
    return PropertyReport(name or R.name, R.size, flags, wd.value.value, wit,
                          fq.oracle_verified, stats)


def implication_violations(flags: dict[str, bool]) -> list[str]:
    """Hierarchy implications that a flag set breaks."""
    rules = [("arithmetical", "fqp"), ("fqp", "gaussian"), ("gaussian", "prufer"),
             ("chained", "arithmetical"), ("von_neumann_regular", "reduced")]
    return [f"{a} => {b}" for a, b in rules if flags.get(a) and not flags.get(b)]
