"""Finite commutative rings stored as explicit addition and multiplication tables.

Elements are the indices ``0 .. size-1``.  Constructors cover the families
needed here: integers mod n, monomial quotients of polynomial rings over
prime fields, direct products, trivial extensions and quotients.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import AxiomError, ResourceCapError, RingStructureError

if TYPE_CHECKING:
    from .modules import FiniteModule

DEFAULT_CAP = 4096

_AXIOM_TEXT = {
    kernels._numpy.ZERO_NOT_IDENTITY: "zero is not an additive identity at {a}",
    kernels._numpy.ADD_NOT_COMMUTATIVE: "addition not commutative at ({a}, {b})",
    kernels._numpy.NO_NEGATIVE: "element {a} has no additive inverse",
    kernels._numpy.ADD_NOT_ASSOCIATIVE: "addition not associative at ({a}, {b}, {c})",
    kernels._numpy.ONE_NOT_IDENTITY: "one is not a multiplicative identity at {a}",
    kernels._numpy.MUL_NOT_COMMUTATIVE: "multiplication not commutative at ({a}, {b})",
    kernels._numpy.MUL_NOT_ASSOCIATIVE: "multiplication not associative at ({a}, {b}, {c})",
    kernels._numpy.NOT_DISTRIBUTIVE: "distributivity fails at ({a}, {b}, {c})",
    kernels._numpy.ZERO_EQUALS_ONE: "zero equals one in a ring with more than one element",
}


def _frozen_table(table, n: int, what: str) -> np.ndarray:
    arr = np.ascontiguousarray(table, dtype=np.int32)
    if arr.shape != (n, n):
        raise AxiomError(f"{what} table has shape {arr.shape}, expected {(n, n)}")
    if n and (arr.min() < 0 or arr.max() >= n):
        raise AxiomError(f"{what} table has entries outside 0..{n - 1}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite commutative unital ring given by its tables.

    Instances are treated as immutable; derived data (principal ideals,
    units, local factors, ...) is computed lazily and cached on the object.
    """

    size: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    name: str = ""
    spec: str = ""
    labels: tuple[str, ...] | None = None
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        n = int(self.size)
        if n < 1:
            raise AxiomError("a ring needs at least one element")
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "add", _frozen_table(self.add, n, "addition"))
        object.__setattr__(self, "mul", _frozen_table(self.mul, n, "multiplication"))
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise AxiomError("zero/one index out of range")
        labels = self.labels
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        elif len(labels) != n:
            raise AxiomError("labels must name every element")
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "_cache", {})

    def __repr__(self) -> str:
        return f"FiniteRing({self.name or self.spec or '?'}, size={self.size})"

    def cached(self, key, compute):
        """Memoize ``compute()`` on this ring under ``key``."""
        cache = self._cache
        if key not in cache:
            cache[key] = compute()
        return cache[key]

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1).astype(np.int32)

    @cached_property
    def principal(self) -> np.ndarray:
        """``principal[a, x]`` is true iff ``x`` lies in ``(a)``."""
        n = self.size
        out = np.zeros((n, n), dtype=np.bool_)
        cols = np.broadcast_to(np.arange(n, dtype=np.int32)[None, :], (n, n))
        out[cols, self.mul] = True
        out.setflags(write=False)
        return out

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return (self.mul == self.one).any(axis=1)

    @cached_property
    def zero_divisor_mask(self) -> np.ndarray:
        nonzero = np.arange(self.size) != self.zero
        return ((self.mul == self.zero) & nonzero[None, :]).any(axis=1)

    @cached_property
    def nil_mask(self) -> np.ndarray:
        cur = np.arange(self.size, dtype=np.int32)
        for _ in range(self.size.bit_length()):
            cur = self.mul[cur, cur]
        return cur == self.zero

    @cached_property
    def idempotents(self) -> np.ndarray:
        return np.flatnonzero(np.diagonal(self.mul) == np.arange(self.size))

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def elem(self, x) -> "RingElement":
        if isinstance(x, RingElement):
            if x.ring is not self:
                raise ValueError("element belongs to a different ring")
            return x
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < self.size:
                raise IndexError(f"element index {x} out of range")
            return RingElement(self, int(x))
        return RingElement(self, self.label_index[str(x)])

    def index(self, x) -> int:
        return self.elem(x).index

    @property
    def elements(self) -> list["RingElement"]:
        return [RingElement(self, i) for i in range(self.size)]


@dataclass(frozen=True, eq=False)
class RingElement:
    ring: FiniteRing
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ring.size:
            raise IndexError(f"element index {self.index} out of range")

    def _other(self, other) -> int:
        return self.ring.elem(other).index

    def __add__(self, other):
        return RingElement(self.ring, int(self.ring.add[self.index, self._other(other)]))

    def __sub__(self, other):
        o = self.ring.neg[self._other(other)]
        return RingElement(self.ring, int(self.ring.add[self.index, o]))

    def __neg__(self):
        return RingElement(self.ring, int(self.ring.neg[self.index]))

    def __mul__(self, other):
        return RingElement(self.ring, int(self.ring.mul[self.index, self._other(other)]))

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one
        for _ in range(k):
            out = self.ring.mul[out, self.index]
        return RingElement(self.ring, int(out))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring is other.ring and self.index == other.index
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.index))

    def __index__(self):
        return self.index

    def __repr__(self):
        return self.ring.labels[self.index]


@dataclass(frozen=True)
class RingStructure:
    units: tuple[int, ...]
    zero_divisors: tuple[int, ...]
    nilradical: tuple[int, ...]
    idempotents: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class LocalFactor:
    ring: FiniteRing
    idempotent: int
    projection: np.ndarray
    elements: np.ndarray  # indices in the parent ring, sorted


@dataclass(frozen=True, eq=False)
class LocalDecomposition:
    """``R`` as the product of its local factors ``e_i R``.

    ``embedding`` maps the product ring (big-endian mixed radix, the order
    produced by folding :func:`make_product` from the left) back into ``R``.
    """

    factors: tuple[LocalFactor, ...]
    embedding: np.ndarray

    def product_ring(self) -> FiniteRing:
        if not self.factors:
            return make_zmod(1)
        out = self.factors[0].ring
        for f in self.factors[1:]:
            out = make_product(out, f.ring)
        return out

    @property
    def sizes(self) -> list[int]:
        return [f.ring.size for f in self.factors]


def _check_cap(size: int, cap: int | None, what: str = "ring size"):
    cap = DEFAULT_CAP if cap is None else cap
    if size > cap:
        raise ResourceCapError(what, size, cap)


def make_zmod(n: int, cap: int | None = None) -> FiniteRing:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"modulus must be a positive integer, got {n!r}")
    n = int(n)
    _check_cap(n, cap)
    i = np.arange(n, dtype=np.int64)
    add = (i[:, None] + i[None, :]) % n
    mul = (i[:, None] * i[None, :]) % n
    return FiniteRing(n, add, mul, 0, 1 % n, name=f"Z/{n}", spec=f"Z({n})",
                      meta={"kind": "zmod", "modulus": n})


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


_MONO_RE = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*")


def parse_monomial(mono, variables: Sequence[str]) -> tuple[int, ...]:
    """Exponent vector of a monomial given as text, pairs or exponents.

    Text form is ``x^2*y`` (``1`` is the empty monomial).
    """
    nv = len(variables)
    if isinstance(mono, str):
        text = mono.strip()
        exps = [0] * nv
        if text == "1":
            return tuple(exps)
        for part in text.split("*"):
            m = _MONO_RE.fullmatch(part)
            if not m:
                raise ValueError(f"bad monomial {mono!r}")
            var, e = m.group(1), int(m.group(2) or 1)
            if var not in variables:
                raise ValueError(f"unknown variable {var!r} in {mono!r}")
            exps[list(variables).index(var)] += e
        return tuple(exps)
    mono = tuple(mono)
    if all(isinstance(t, (int, np.integer)) for t in mono):
        if len(mono) != nv:
            raise ValueError(f"exponent vector {mono} needs {nv} entries")
        return tuple(int(e) for e in mono)
    exps = [0] * nv
    for var, e in mono:
        if var not in variables:
            raise ValueError(f"unknown variable {var!r}")
        exps[list(variables).index(var)] += int(e)
    return tuple(exps)


def monomial_label(exps: Sequence[int], variables: Sequence[str]) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exps) if e]
    return "*".join(parts) or "1"


def _divides(g, e) -> bool:
    return all(gi <= ei for gi, ei in zip(g, e))


def make_poly_quot(p: int, variables: Sequence[str], mono_gens, cap: int | None = None) -> FiniteRing:
    """``F_p[variables] / (mono_gens)`` for a monomial ideal with finite quotient."""
    if not is_prime(p):
        raise ValueError(f"coefficient modulus {p} is not prime")
    variables = list(variables)
    if len(set(variables)) != len(variables):
        raise ValueError("repeated variable name")
    gens = [parse_monomial(g, variables) for g in mono_gens]
    nv = len(variables)
    bounds = []
    for v in range(nv):
        pure = [g[v] for g in gens if all(e == 0 for i, e in enumerate(g) if i != v)]
        if not pure:
            raise ValueError(f"infinite quotient: no power of {variables[v]} lies in the ideal")
        bounds.append(max(1, min(pure)) if any(pure) else 1)
    basis = [e for e in itertools.product(*(range(b) for b in bounds))
             if not any(_divides(g, e) for g in gens)]
    basis.sort(key=lambda e: (sum(e), [-x for x in e]))
    nb = len(basis)
    size = p ** nb
    _check_cap(size, cap)
    pos = {e: k for k, e in enumerate(basis)}
    # structure constants: basis i * basis j -> basis k, or -1 when in the ideal
    target = np.full((nb, nb), -1, dtype=np.int64)
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            s = tuple(a + b for a, b in zip(ei, ej))
            target[i, j] = pos.get(s, -1)
    radix = p ** np.arange(nb, dtype=np.int64)
    idx = np.arange(size, dtype=np.int64)
    digits = (idx[:, None] // radix[None, :]) % p  # (size, nb)
    add = np.empty((size, size), dtype=np.int32)
    mul = np.empty((size, size), dtype=np.int32)
    chunk = max(1, (1 << 22) // max(1, size * max(nb, 1)))
    for lo in range(0, size, chunk):
        hi = min(size, lo + chunk)
        a = digits[lo:hi]
        add[lo:hi] = (((a[:, None, :] + digits[None, :, :]) % p) @ radix)
        prod = np.zeros((hi - lo, size, nb), dtype=np.int64)
        for i in range(nb):
            for j in range(nb):
                k = target[i, j]
                if k >= 0:
                    prod[:, :, k] += a[:, i][:, None] * digits[None, :, j]
        mul[lo:hi] = (prod % p) @ radix
    labels = []
    names = [monomial_label(e, variables) for e in basis]
    for row in digits:
        terms = [nm if c == 1 else f"{c}*{nm}" for c, nm in zip(row, names) if c]
        labels.append("+".join(terms) or "0")
    one = pos.get(tuple([0] * nv))
    one_idx = int(radix[one]) if one is not None else 0
    gen_text = ",".join(monomial_label(g, variables) for g in gens)
    spec = f"Poly({p},[{','.join(variables)}],[{gen_text}])"
    name = f"F{p}[{','.join(variables)}]/({gen_text})"
    return FiniteRing(size, add, mul, 0, one_idx, name=name, spec=spec, labels=tuple(labels),
                      meta={"kind": "poly", "p": p, "vars": tuple(variables),
                            "basis": tuple(basis), "gens": tuple(gens)})


def monomial_element(R: FiniteRing, mono) -> int:
    """Index of a monomial (text or exponents) in a ring from :func:`make_poly_quot`."""
    if R.meta.get("kind") != "poly":
        raise ValueError("monomial lookup needs a polynomial quotient ring")
    e = parse_monomial(mono, R.meta["vars"])
    basis = list(R.meta["basis"])
    if e in basis:
        return int(R.meta["p"] ** basis.index(e))
    return R.zero


def make_product(A: FiniteRing, B: FiniteRing, cap: int | None = None) -> FiniteRing:
    na, nb = A.size, B.size
    n = na * nb
    _check_cap(n, cap)
    add = (A.add[:, None, :, None].astype(np.int64) * nb + B.add[None, :, None, :]).reshape(n, n)
    mul = (A.mul[:, None, :, None].astype(np.int64) * nb + B.mul[None, :, None, :]).reshape(n, n)
    labels = tuple(f"({a},{b})" for a in A.labels for b in B.labels)
    wrap = lambda s: f"({s})" if " " in s else s
    return FiniteRing(n, add, mul, A.zero * nb + B.zero, A.one * nb + B.one,
                      name=f"{wrap(A.name)} x {wrap(B.name)}", spec=f"Prod({A.spec},{B.spec})",
                      labels=labels, meta={"kind": "product", "factors": (A, B)})


def make_trivial_extension(A: FiniteRing, E: "FiniteModule", cap: int | None = None) -> FiniteRing:
    """``A ⋉ E``: carrier ``A x E`` with ``(a1,e1)(a2,e2) = (a1 a2, a1 e2 + a2 e1)``."""
    if E.ring is not A:
        raise ValueError("module is over a different ring")
    na, ne = A.size, E.size
    n = na * ne
    _check_cap(n, cap)
    add = (A.add[:, None, :, None].astype(np.int64) * ne + E.add[None, :, None, :]).reshape(n, n)
    left = E.action[:, None, None, :]          # a1 * e2
    right = E.action.T[None, :, :, None]       # a2 * e1
    mul = (A.mul[:, None, :, None].astype(np.int64) * ne + E.add[left, right]).reshape(n, n)
    labels = tuple(f"({a},{e})" for a in A.labels for e in E.labels)
    return FiniteRing(n, add, mul, A.zero * ne + E.zero, A.one * ne + E.zero,
                      name=f"{A.name} ⋉ {E.name}", spec="", labels=labels,
                      meta={"kind": "trivext", "base": A, "module": E})


def _mask_of(I, n: int) -> np.ndarray:
    mask = np.asarray(getattr(I, "members", I))
    if mask.dtype != np.bool_:
        out = np.zeros(n, dtype=np.bool_)
        out[mask] = True
        mask = out
    if mask.shape != (n,):
        raise ValueError("ideal mask has the wrong length")
    return mask


def coset_representatives(add: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Minimal element index of each coset ``x + N`` (as an array over x)."""
    members = np.flatnonzero(mask)
    return add[:, members].min(axis=1)


def quotient_ring(R: FiniteRing, I) -> tuple[FiniteRing, np.ndarray]:
    """``R/I`` and the canonical projection (an array over R's elements)."""
    mask = _mask_of(I, R.size)
    if not mask[R.zero]:
        raise ValueError("not an ideal: zero missing")
    if mask.sum() == 1:
        return R, np.arange(R.size, dtype=np.int32)
    return R.cached(("quotient", np.packbits(mask).tobytes()), lambda: _quotient_ring(R, mask))


def _quotient_ring(R: FiniteRing, mask: np.ndarray) -> tuple[FiniteRing, np.ndarray]:
    reps_of = coset_representatives(R.add, mask)
    reps = np.unique(reps_of)
    proj = np.searchsorted(reps, reps_of).astype(np.int32)
    proj.setflags(write=False)
    add = proj[R.add[np.ix_(reps, reps)]]
    mul = proj[R.mul[np.ix_(reps, reps)]]
    labels = tuple(R.labels[r] for r in reps)
    Q = FiniteRing(len(reps), add, mul, int(proj[R.zero]), int(proj[R.one]),
                   name=f"({R.name})/I", spec="", labels=labels,
                   meta={"kind": "quotient", "parent": R, "reps": reps})
    return Q, proj


def structure(R: FiniteRing) -> RingStructure:
    def idx(mask):
        return tuple(int(i) for i in np.flatnonzero(mask))
    return RingStructure(units=idx(R.unit_mask), zero_divisors=idx(R.zero_divisor_mask),
                         nilradical=idx(R.nil_mask),
                         idempotents=tuple(int(i) for i in R.idempotents))


def primitive_idempotents(R: FiniteRing) -> list[int]:
    def compute():
        E = [int(e) for e in R.idempotents if e != R.zero]
        prim = []
        for e in E:
            below = [f for f in E if f != e and R.mul[f, e] == f]
            if not below:
                prim.append(e)
        return prim
    return R.cached("primitive_idempotents", compute)


def _factor(R: FiniteRing, e: int, k: int) -> LocalFactor:
    elements = np.unique(R.mul[e])
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[elements] = np.arange(len(elements))
    add = pos[R.add[np.ix_(elements, elements)]]
    mul = pos[R.mul[np.ix_(elements, elements)]]
    if (add < 0).any() or (mul < 0).any():
        raise RingStructureError(f"e{k}R is not closed under the ring operations")
    labels = tuple(R.labels[i] for i in elements)
    F = FiniteRing(len(elements), add, mul, int(pos[R.zero]), int(pos[e]),
                   name=f"{R.name}[e{k}]", labels=labels,
                   meta={"kind": "factor", "parent": R, "idempotent": e})
    nonunits = np.flatnonzero(~F.unit_mask)
    if not kernels.sumset(F.add, nonunits, nonunits)[F.unit_mask].sum() == 0:
        raise RingStructureError(f"factor e{k}R is not local")
    proj = pos[R.mul[e]].astype(np.int32)
    proj.setflags(write=False)
    return LocalFactor(F, e, proj, elements)


def local_factors(R: FiniteRing) -> LocalDecomposition:
    def compute():
        prim = primitive_idempotents(R)
        total = R.zero
        for i, e in enumerate(prim):
            total = R.add[total, e]
            for f in prim[i + 1:]:
                if R.mul[e, f] != R.zero:
                    raise RingStructureError("primitive idempotents are not orthogonal")
        if total != R.one:
            raise RingStructureError("primitive idempotents do not sum to one")
        factors = tuple(_factor(R, e, k) for k, e in enumerate(prim))
        emb = np.array([R.zero], dtype=np.int64)
        for f in factors:
            emb = R.add[emb[:, None], f.elements[None, :]].ravel()
        if np.prod([f.ring.size for f in factors], dtype=np.int64) != R.size:
            raise RingStructureError("factor sizes do not multiply to the ring size")
        emb = emb.astype(np.int32)
        emb.setflags(write=False)
        return LocalDecomposition(factors, emb)
    return R.cached("local_factors", compute)


def axiom_violation(R: FiniteRing) -> str | None:
    """Describe the first failed ring axiom, or None if the tables are a ring."""
    code, a, b, c = kernels.axiom_violation(R.add, R.mul, R.zero, R.one)
    if code == 0:
        return None
    return _AXIOM_TEXT[code].format(a=a, b=b, c=c)


def check_axioms(R: FiniteRing) -> None:
    msg = axiom_violation(R)
    if msg:
        raise AxiomError(f"{R.name or R.spec}: {msg}")


def is_ring_isomorphism(A: FiniteRing, B: FiniteRing, phi) -> bool:
    phi = np.asarray(phi)
    if A.size != B.size or phi.shape != (A.size,):
        return False
    if len(np.unique(phi)) != A.size or phi[A.one] != B.one:
        return False
    return bool((phi[A.add] == B.add[phi[:, None], phi[None, :]]).all()
                and (phi[A.mul] == B.mul[phi[:, None], phi[None, :]]).all())


def additive_orders(R: FiniteRing) -> np.ndarray:
    order = np.zeros(R.size, dtype=np.int64)
    cur = np.full(R.size, R.zero, dtype=np.int32)
    idx = np.arange(R.size)
    for k in range(1, R.size + 1):
        cur = R.add[cur, idx]
        hit = (cur == R.zero) & (order == 0)
        order[hit] = k
        if (order > 0).all():
            break
    return order


def _element_invariants(R: FiniteRing) -> np.ndarray:
    nil_index = np.zeros(R.size, dtype=np.int64)
    cur = np.full(R.size, R.one, dtype=np.int32)
    idx = np.arange(R.size)
    for k in range(1, R.size + 1):
        cur = R.mul[cur, idx]
        hit = (cur == R.zero) & (nil_index == 0)
        nil_index[hit] = k
    return np.stack([
        additive_orders(R),
        R.principal.sum(axis=1),
        (R.mul == R.zero).sum(axis=1),
        R.unit_mask.astype(np.int64),
        nil_index,
        (np.diagonal(R.mul) == idx).astype(np.int64),
    ], axis=1)


def ring_fingerprint(R: FiniteRing) -> tuple:
    """Isomorphism invariant: size, unit count and the multiset of element invariants."""
    def compute():
        inv = _element_invariants(R)
        rows = tuple(sorted(map(tuple, inv.tolist())))
        return (R.size, int(R.unit_mask.sum()), rows)
    return R.cached("fingerprint", compute)


def _generated_subring(R: FiniteRing, gens) -> np.ndarray:
    mask = np.zeros(R.size, dtype=np.bool_)
    mask[R.one] = True
    mask[list(gens)] = True
    while True:
        idx = np.flatnonzero(mask)
        prod = np.zeros(R.size, dtype=np.bool_)
        prod[R.mul[np.ix_(idx, idx)].ravel()] = True
        nxt = kernels.additive_closure(R.add, mask | prod, R.zero)
        if np.array_equal(nxt, mask):
            return mask
        mask = nxt


def ring_generators(R: FiniteRing) -> list[int]:
    gens: list[int] = []
    sub = _generated_subring(R, gens)
    for x in range(R.size):
        if not sub[x]:
            gens.append(x)
            sub = _generated_subring(R, gens)
    return gens


def _extend(A, B, phi, frontier) -> bool:
    while len(frontier):
        known = np.flatnonzero(phi >= 0)
        nxt = []
        for ta, tb in ((A.add, B.add), (A.mul, B.mul)):
            src = ta[np.ix_(frontier, known)].ravel()
            img = tb[np.ix_(phi[frontier], phi[known])].ravel()
            have = phi[src]
            if ((have >= 0) & (have != img)).any():
                return False
            free = have < 0
            src, img = src[free], img[free]
            if len(src):
                u, first, inv = np.unique(src, return_index=True, return_inverse=True)
                if (img != img[first][inv]).any():
                    return False
                phi[u] = img[first]
                nxt.append(u)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.zeros(0, dtype=np.int64)
    return True


def find_ring_isomorphism(A: FiniteRing, B: FiniteRing) -> np.ndarray | None:
    """An explicit isomorphism ``A -> B`` as an index array, or None."""
    if A.size != B.size or ring_fingerprint(A) != ring_fingerprint(B):
        return None
    inv_a = _element_invariants(A)
    inv_b = _element_invariants(B)
    gens = ring_generators(A)
    cands = [np.flatnonzero((inv_b == inv_a[g]).all(axis=1)) for g in gens]

    def search(i, phi):
        if i == len(gens):
            return phi if (phi >= 0).all() and len(np.unique(phi)) == A.size else None
        g = gens[i]
        for c in cands[i]:
            trial = phi.copy()
            if trial[g] >= 0:
                if trial[g] != c:
                    continue
                found = search(i + 1, trial)
            else:
                trial[g] = c
                if not _extend(A, B, trial, np.array([g])):
                    continue
                found = search(i + 1, trial)
            if found is not None:
                return found
        return None

    phi = np.full(A.size, -1, dtype=np.int64)
    phi[A.zero] = B.zero
    phi[A.one] = B.one
    if not _extend(A, B, phi, np.array(sorted({A.zero, A.one}))):
        return None
    found = search(0, phi)
    if found is None or not is_ring_isomorphism(A, B, found):
        return None
    return found.astype(np.int32)


def rings_isomorphic(A: FiniteRing, B: FiniteRing) -> bool:
    return find_ring_isomorphism(A, B) is not None
