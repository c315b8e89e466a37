"""Finite modules over finite rings.

Homomorphisms are enumerated from generator images; projectivity is decided
factor by factor through Nakayama ranks; quasi-projectivity has both a fast
criterion (projective over ``R/Ann(M)``) and a brute-force oracle that checks
lifting through every quotient ``M -> M/N`` directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Mapping, Sequence

import numpy as np

from . import kernels
from .config import DEFAULT, Config
from .errors import AxiomError, ResourceCapError
from .ideals import Ideal, annihilator as ring_annihilator, lattice_closure, unit_ideal
from .rings import FiniteRing, coset_representatives, local_factors, quotient_ring


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """A finite module: additive table plus an action table ``ring x module``."""

    ring: FiniteRing
    size: int
    add: np.ndarray
    action: np.ndarray
    zero: int
    name: str = ""
    labels: tuple[str, ...] | None = None
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        n = int(self.size)
        add = np.ascontiguousarray(self.add, dtype=np.int32)
        act = np.ascontiguousarray(self.action, dtype=np.int32)
        if add.shape != (n, n) or act.shape != (self.ring.size, n):
            raise AxiomError("module tables have the wrong shape")
        if n and (add.min() < 0 or add.max() >= n or act.min() < 0 or act.max() >= n):
            raise AxiomError("module tables have entries out of range")
        add.setflags(write=False)
        act.setflags(write=False)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "action", act)
        labels = self.labels if self.labels is not None else tuple(str(i) for i in range(n))
        object.__setattr__(self, "labels", tuple(labels))

    def __repr__(self):
        return f"FiniteModule({self.name or '?'}, size={self.size})"

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1).astype(np.int32)

    @cached_property
    def cyclic(self) -> np.ndarray:
        """``cyclic[x]`` is the mask of the cyclic submodule ``R x``."""
        n = self.size
        out = np.zeros((n, n), dtype=np.bool_)
        cols = np.broadcast_to(np.arange(n, dtype=np.int32)[None, :], self.action.shape)
        out[cols, self.action] = True
        return out

    @cached_property
    def full(self) -> np.ndarray:
        return np.ones(self.size, dtype=np.bool_)

    def mask(self, elems) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.bool_)
        out[list(elems)] = True
        return out


@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FiniteModule
    target: FiniteModule
    map: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def is_valid(self) -> bool:
        return is_homomorphism(self.source, self.target, self.map)

    def image(self) -> np.ndarray:
        return self.target.mask(np.unique(self.map))

    def __eq__(self, other):
        if not isinstance(other, ModuleHom):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and np.array_equal(self.map, other.map))

    def __hash__(self):
        return hash(self.map.tobytes())


def is_homomorphism(M: FiniteModule, N: FiniteModule, f) -> bool:
    f = np.asarray(f)
    if f.shape != (M.size,) or M.ring is not N.ring:
        return False
    additive = (f[M.add] == N.add[f[:, None], f[None, :]]).all()
    scalar = (f[M.action] == N.action[:, f]).all()
    return bool(additive and scalar)


def module_axiom_violation(M: FiniteModule) -> str | None:
    R = M.ring
    n = M.size
    idx = np.arange(n)
    if not (M.add[M.zero] == idx).all():
        return "zero is not an additive identity"
    if not (M.add == M.add.T).all():
        return "addition not commutative"
    if not (M.add == M.zero).any(axis=1).all():
        return "missing additive inverse"
    for a in range(n):
        if not (M.add[M.add[a]] == M.add[a][M.add]).all():
            return "addition not associative"
    act = M.action
    if not (act[R.one] == idx).all():
        return "one does not act as identity"
    for r in range(R.size):
        if not (act[r][M.add] == M.add[act[r][:, None], act[r][None, :]]).all():
            return "action not additive in the module argument"
    if not (act[R.add] == M.add[act[:, None, :], act[None, :, :]]).all():
        return "action not additive in the ring argument"
    if not (act[R.mul] == act[np.arange(R.size)[:, None, None], act[None, :, :]]).all():
        return "action not associative"
    return None


def check_module(M: FiniteModule) -> None:
    msg = module_axiom_violation(M)
    if msg:
        raise AxiomError(f"{M.name}: {msg}")


def zero_module(R: FiniteRing) -> FiniteModule:
    return FiniteModule(R, 1, np.zeros((1, 1)), np.zeros((R.size, 1)), 0, name="0",
                        labels=("0",))


def module_from_ideal(I: Ideal) -> FiniteModule:
    """``I`` as an ``R``-module; one shared object per ideal."""
    return I.ring.cached(("module", I.key), lambda: _module_from_ideal(I))


def _module_from_ideal(I: Ideal) -> FiniteModule:
    R = I.ring
    el = I.elements
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[el] = np.arange(len(el))
    add = pos[R.add[np.ix_(el, el)]]
    act = pos[R.mul[:, el]]
    return FiniteModule(R, len(el), add, act, int(pos[R.zero]), name=I.describe(),
                        labels=tuple(R.labels[i] for i in el),
                        meta={"embedding": el, "ideal": I})


def ring_as_module(R: FiniteRing) -> FiniteModule:
    return module_from_ideal(unit_ideal(R))


def cyclic_module(R: FiniteRing, J: Ideal) -> FiniteModule:
    """The module ``R/J``."""
    reps_of = coset_representatives(R.add, J.members)
    reps = np.unique(reps_of)
    proj = np.searchsorted(reps, reps_of)
    add = proj[R.add[np.ix_(reps, reps)]]
    act = proj[R.mul[:, reps]]
    return FiniteModule(R, len(reps), add, act, int(proj[R.zero]), name=f"R/{J.describe()}",
                        labels=tuple(R.labels[r] for r in reps),
                        meta={"reps": reps, "projection": proj})


def direct_sum(M: FiniteModule, N: FiniteModule) -> FiniteModule:
    if M.ring is not N.ring:
        raise ValueError("modules over different rings")
    nm, nn = M.size, N.size
    n = nm * nn
    add = (M.add[:, None, :, None].astype(np.int64) * nn + N.add[None, :, None, :]).reshape(n, n)
    act = (M.action[:, :, None].astype(np.int64) * nn + N.action[:, None, :]).reshape(M.ring.size, n)
    labels = tuple(f"({a},{b})" for a in M.labels for b in N.labels)
    return FiniteModule(M.ring, n, add, act, M.zero * nn + N.zero,
                        name=f"{M.name} + {N.name}", labels=labels)


def direct_power(M: FiniteModule, k: int) -> FiniteModule:
    if k == 0:
        return zero_module(M.ring)
    out = M
    for _ in range(k - 1):
        out = direct_sum(out, M)
    return out


def submodule_generated(M: FiniteModule, elems) -> np.ndarray:
    mask = np.zeros(M.size, dtype=np.bool_)
    mask[M.zero] = True
    for x in elems:
        mask = kernels.sumset(M.add, np.flatnonzero(mask), np.flatnonzero(M.cyclic[x]))
    return mask


def submodule_sum(M: FiniteModule, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return kernels.sumset(M.add, np.flatnonzero(A), np.flatnonzero(B))


def is_submodule_mask(M: FiniteModule, mask) -> bool:
    mask = np.asarray(mask, dtype=np.bool_)
    idx = np.flatnonzero(mask)
    return bool(mask[M.zero] and mask[M.add[np.ix_(idx, idx)]].all()
                and mask[M.action[:, idx]].all())


def submodules(M: FiniteModule, cap: int = DEFAULT.ideal_count) -> list[np.ndarray]:
    """Every submodule as a mask, ordered by size then member indices."""
    found = M.__dict__.get("_submodules")
    if found is None:
        masks = lattice_closure(M.add, M.zero, M.cyclic, cap, "submodule count")
        found = sorted(masks, key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m).tolist())))
        M.__dict__["_submodules"] = found
    if len(found) > cap:
        raise ResourceCapError("submodule count", len(found), cap)
    return found


def submodule(M: FiniteModule, mask) -> FiniteModule:
    mask = np.asarray(mask, dtype=np.bool_)
    el = np.flatnonzero(mask)
    pos = np.full(M.size, -1, dtype=np.int64)
    pos[el] = np.arange(len(el))
    add = pos[M.add[np.ix_(el, el)]]
    act = pos[M.action[:, el]]
    if (add < 0).any() or (act < 0).any():
        raise ValueError("mask is not a submodule")
    return FiniteModule(M.ring, len(el), add, act, int(pos[M.zero]), name=f"sub({M.name})",
                        labels=tuple(M.labels[i] for i in el), meta={"embedding": el})


def quotient_module(M: FiniteModule, N) -> tuple[FiniteModule, np.ndarray]:
    """``M/N`` (coset representative = minimal index) and the projection."""
    mask = np.asarray(N, dtype=np.bool_)
    cache = M.__dict__.setdefault("_quotients", {})
    key = np.packbits(mask).tobytes()
    if key not in cache:
        cache[key] = _quotient_module(M, mask)
    return cache[key]


def _quotient_module(M: FiniteModule, mask: np.ndarray) -> tuple[FiniteModule, np.ndarray]:
    reps_of = coset_representatives(M.add, mask)
    reps = np.unique(reps_of)
    proj = np.searchsorted(reps, reps_of).astype(np.int32)
    proj.setflags(write=False)
    add = proj[M.add[np.ix_(reps, reps)]]
    act = proj[M.action[:, reps]]
    Q = FiniteModule(M.ring, len(reps), add, act, int(proj[M.zero]), name=f"{M.name}/N",
                     labels=tuple(M.labels[r] for r in reps), meta={"reps": reps})
    return Q, proj


def module_annihilator(M: FiniteModule) -> Ideal:
    R = M.ring
    return Ideal(R, (M.action == M.zero).all(axis=1))


def over_quotient(M: FiniteModule, Q: FiniteRing, proj: np.ndarray) -> FiniteModule:
    """Regard ``M`` as a module over ``Q = R/K`` when ``K`` kills ``M``."""
    reps = np.zeros(Q.size, dtype=np.int64)
    reps[proj[::-1]] = np.arange(len(proj))[::-1]  # first preimage of each class
    act = M.action[reps]
    if not (act[proj] == M.action).all():
        raise ValueError("kernel of the projection does not annihilate the module")
    return FiniteModule(Q, M.size, M.add, act, M.zero, name=M.name, labels=M.labels,
                        meta=dict(M.meta))


def scalar_ideal_times(M: FiniteModule, K: Ideal) -> np.ndarray:
    """Mask of the submodule ``K M``."""
    vals = np.zeros(M.size, dtype=np.bool_)
    vals[M.action[K.elements].ravel()] = True
    return kernels.additive_closure(M.add, vals, M.zero)


def base_change(M: FiniteModule, K: Ideal) -> FiniteModule:
    """``M / K M`` as a module over ``R / K``."""
    Q, _ = quotient_module(M, scalar_ideal_times(M, K))
    QR, rproj = quotient_ring(M.ring, K)
    return over_quotient(Q, QR, rproj)


@dataclass(frozen=True)
class _FactorPart:
    idempotent: int
    ring_elements: np.ndarray   # e R inside R
    maximal: np.ndarray         # non-units of e R, as R indices
    component: np.ndarray       # mask of e M
    gens: tuple[int, ...]       # Nakayama generators of e M


def _factor_parts(M: FiniteModule) -> list[_FactorPart]:
    cache = M.__dict__.setdefault("_parts", [])
    if cache:
        return cache[0]
    parts = []
    for f in local_factors(M.ring).factors:
        e = f.idempotent
        maximal = f.elements[~f.ring.unit_mask]
        comp = np.zeros(M.size, dtype=np.bool_)
        comp[M.action[e]] = True
        vals = np.zeros(M.size, dtype=np.bool_)
        if len(maximal):
            vals[M.action[np.ix_(maximal, np.flatnonzero(comp))].ravel()] = True
        span = kernels.additive_closure(M.add, vals, M.zero)
        gens = []
        for x in np.flatnonzero(comp):
            if (span == comp).all():
                break
            if not span[x]:
                gens.append(int(x))
                span = kernels.sumset(M.add, np.flatnonzero(span), np.flatnonzero(M.cyclic[x]))
        parts.append(_FactorPart(e, f.elements, maximal, comp, tuple(gens)))
    cache.append(parts)
    return parts


def module_generators(M: FiniteModule) -> list[int]:
    """A minimal generating set, built factorwise by Nakayama and summed across factors."""
    parts = _factor_parts(M)
    k = max((len(p.gens) for p in parts), default=0)
    gens = []
    for j in range(k):
        g = M.zero
        for p in parts:
            if j < len(p.gens):
                g = M.add[g, p.gens[j]]
        gens.append(int(g))
    return gens


def local_ranks(M: FiniteModule) -> list[int | None]:
    """Per local factor: the free rank of ``e_i M``, or None when it is not free."""
    out = []
    for p in _factor_parts(M):
        k = len(p.gens)
        free = int(p.component.sum()) == len(p.ring_elements) ** k
        out.append(k if free else None)
    return out


def is_projective(M: FiniteModule) -> bool:
    """Projective iff every local component is free of its Nakayama rank."""
    return all(k is not None for k in local_ranks(M))


def is_quasi_projective(M: FiniteModule) -> bool:
    """Fast criterion: ``M`` is projective over ``R / Ann(M)``."""
    A = module_annihilator(M)
    if A.size == 1:
        return is_projective(M)
    Q, proj = quotient_ring(M.ring, A)
    return is_projective(over_quotient(M, Q, proj))


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, n: int):
        self.used += n
        if self.used > self.cap:
            raise ResourceCapError("hom search candidates", self.used, self.cap)


@dataclass(frozen=True)
class _Presentation:
    gens: tuple[int, ...]
    coef: np.ndarray
    orbit: np.ndarray
    cyc: np.ndarray


def _presentation(M: FiniteModule) -> _Presentation:
    cached = M.__dict__.get("_presentation")
    if cached is not None:
        return cached
    R = M.ring
    gens = module_generators(M)
    k = len(gens)
    coef = np.full((M.size, k), -1, dtype=np.int32)
    coef[M.zero] = R.zero
    reached = np.zeros(M.size, dtype=np.bool_)
    reached[M.zero] = True
    for j, g in enumerate(gens):
        if not reached[g]:
            coef[g] = R.zero
            coef[g, j] = R.one
            reached[g] = True
        src = np.flatnonzero(reached)
        tgt = M.add[src[:, None], M.action[:, g][None, :]].ravel()
        order, first = np.unique(tgt, return_index=True)
        for t, pos in zip(order, first):
            if reached[t]:
                continue
            s, r = divmod(int(pos), R.size)
            coef[t] = coef[src[s]]
            coef[t, j] = r
            reached[t] = True
    if not reached.all():
        raise AxiomError("generators do not span the module")
    orbit = np.ascontiguousarray(M.action[:, gens].T, dtype=np.int32).reshape(k, R.size)
    cyc_mask = np.zeros(M.size, dtype=np.bool_)
    for g in gens:
        cyc_mask |= M.cyclic[g]
    pres = _Presentation(tuple(gens), coef, orbit, np.flatnonzero(cyc_mask).astype(np.int32))
    M.__dict__["_presentation"] = pres
    return pres


def hom_table(M: FiniteModule, N: FiniteModule, cap: int = DEFAULT.candidates,
              budget: _Budget | None = None, first_bijective: bool = False) -> np.ndarray:
    """All homomorphisms ``M -> N`` as rows of an int array (lexicographic in generator images)."""
    if M.ring is not N.ring:
        raise ValueError("modules over different rings")
    pres = _presentation(M)
    candidates = N.size ** len(pres.gens)
    if candidates > cap:
        raise ResourceCapError("hom search candidates", candidates, cap)
    if budget is not None:
        budget.spend(candidates)
    return kernels.hom_search(pres.coef, pres.orbit, pres.cyc, M.add, N.add, N.action,
                              N.zero, first_bijective)


def homs(M: FiniteModule, N: FiniteModule, cap: int = DEFAULT.candidates) -> list[ModuleHom]:
    return [ModuleHom(M, N, row) for row in hom_table(M, N, cap)]


def end_count(M: FiniteModule, cap: int = DEFAULT.candidates) -> int:
    return len(hom_table(M, M, cap))


def identity_map(M: FiniteModule) -> np.ndarray:
    return np.arange(M.size, dtype=np.int32)


def _oracle_caps(M: FiniteModule, config: Config):
    if M.size > config.oracle_module_size:
        raise ResourceCapError("oracle module size", M.size, config.oracle_module_size)
    k = len(module_generators(M))
    if k > config.oracle_generators:
        raise ResourceCapError("oracle generators", k, config.oracle_generators)


def _first_unlifted(V: FiniteModule, M: FiniteModule, config: Config):
    """First ``(N, g)`` with ``g: V -> M/N`` not of the form ``pi f``."""
    budget = _Budget(config.candidates)
    to_m = hom_table(V, M, config.candidates, budget)
    gens = list(_presentation(V).gens)
    for N in submodules(M, config.ideal_count):
        Q, proj = quotient_module(M, N)
        targets = hom_table(V, Q, config.candidates, budget)
        # pushforwards are homs into M/N, so equal counts mean equal sets;
        # a hom is fixed by its generator images, which give a compact code
        pushed = _codes(proj[to_m[:, gens]], Q.size)
        if len(np.unique(pushed)) != len(targets):
            seen = set(pushed.tolist())
            for row, code in zip(targets, _codes(targets[:, gens], Q.size).tolist()):
                if code not in seen:
                    return N, ModuleHom(V, Q, row)
    return None


def _codes(images: np.ndarray, base: int) -> np.ndarray:
    out = np.zeros(images.shape[0], dtype=np.int64)
    for j in range(images.shape[1]):
        out = out * base + images[:, j]
    return out


def unliftable_witness(M: FiniteModule, config: Config = DEFAULT):
    """Witness ``(N, g)`` that ``M`` is not quasi-projective, or None."""
    _oracle_caps(M, config)
    return _first_unlifted(M, M, config)


def quasi_projective_oracle(M: FiniteModule, config: Config = DEFAULT) -> bool:
    """Brute force: every hom ``M -> M/N`` lifts to an endomorphism of ``M``."""
    return unliftable_witness(M, config) is None


def is_relatively_projective(V: FiniteModule, M: FiniteModule, config: Config = DEFAULT) -> bool:
    """``V`` is ``M``-projective: ``Hom(V, M) -> Hom(V, M/N)`` onto for all ``N``."""
    if V.size > config.oracle_module_size or M.size > config.oracle_module_size:
        raise ResourceCapError("oracle module size", max(V.size, M.size), config.oracle_module_size)
    return _first_unlifted(V, M, config) is None


def split_identity(M: FiniteModule, parts: Sequence[np.ndarray],
                   cap: int = DEFAULT.candidates) -> list[ModuleHom] | None:
    """First tuple of endomorphisms ``f_i`` with ``f_i(M)`` in part ``i`` summing to ``1_M``."""
    parts = [np.asarray(p, dtype=np.bool_) for p in parts]
    if not parts:
        raise ValueError("need at least one part")
    total = parts[0]
    for p in parts[1:]:
        total = submodule_sum(M, total, p)
    if not total.all():
        raise ValueError("parts do not sum to the module")
    ends = hom_table(M, M, cap)
    allowed = [ends[p[ends].all(axis=1)] for p in parts]
    ident = identity_map(M)
    last = {row.tobytes(): i for i, row in enumerate(allowed[-1])}
    heads = allowed[:-1]
    work = int(np.prod([len(a) for a in heads], dtype=np.float64)) if heads else 1
    if work > cap:
        raise ResourceCapError("identity splitting tuples", work, cap)
    for choice in product(*(range(len(a)) for a in heads)):
        acc = np.full(M.size, M.zero, dtype=np.int32)
        for a, i in zip(heads, choice):
            acc = M.add[acc, a[i]]
        need = M.add[ident, M.neg[acc]]
        hit = last.get(need.astype(np.int32).tobytes())
        if hit is not None:
            rows = [a[i] for a, i in zip(heads, choice)] + [allowed[-1][hit]]
            return [ModuleHom(M, M, r) for r in rows]
    return None


def additive_orders(M: FiniteModule) -> np.ndarray:
    order = np.zeros(M.size, dtype=np.int64)
    cur = np.full(M.size, M.zero, dtype=np.int32)
    idx = np.arange(M.size)
    for k in range(1, M.size + 1):
        cur = M.add[cur, idx]
        order[(cur == M.zero) & (order == 0)] = k
        if (order > 0).all():
            break
    return order


def module_fingerprint(M: FiniteModule) -> tuple:
    """(size, annihilator, additive-order multiset, generator count)."""
    return (M.size, module_annihilator(M).key, tuple(sorted(additive_orders(M).tolist())),
            len(module_generators(M)))


def find_isomorphism(M: FiniteModule, N: FiniteModule,
                     cap: int = DEFAULT.candidates) -> ModuleHom | None:
    if M.ring is not N.ring or module_fingerprint(M) != module_fingerprint(N):
        return None
    rows = hom_table(M, N, cap, first_bijective=True)
    return ModuleHom(M, N, rows[0]) if len(rows) else None


def are_isomorphic(M: FiniteModule, N: FiniteModule, cap: int = DEFAULT.candidates) -> bool:
    return find_isomorphism(M, N, cap) is not None


def local_component(M: FiniteModule, i: int) -> FiniteModule:
    """``e_i M`` as a module over the local factor ``e_i R``."""
    f = local_factors(M.ring).factors[i]
    el = np.flatnonzero(_factor_parts(M)[i].component)
    pos = np.full(M.size, -1, dtype=np.int64)
    pos[el] = np.arange(len(el))
    add = pos[M.add[np.ix_(el, el)]]
    act = pos[M.action[np.ix_(f.elements, el)]]
    return FiniteModule(f.ring, len(el), add, act, int(pos[M.zero]), name=f"{M.name}[e{i}]",
                        labels=tuple(M.labels[x] for x in el))


def ideal_annihilator(I: Ideal) -> Ideal:
    return ring_annihilator(I.ring, I)
