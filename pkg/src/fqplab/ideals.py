"""Ideals of a finite ring, stored as membership masks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from . import kernels
from .errors import ResourceCapError
from .rings import FiniteRing, local_factors

DEFAULT_IDEAL_CAP = 100_000


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    members: np.ndarray
    gens: tuple[int, ...] | None = None

    def __post_init__(self):
        mask = np.asarray(self.members, dtype=np.bool_)
        if mask.shape != (self.ring.size,):
            raise ValueError("ideal mask has the wrong length")
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "members", mask)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.members).tobytes()

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, x) -> bool:
        return bool(self.members[self.ring.index(x)])

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other: "Ideal") -> bool:
        return contains(other, self)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __and__(self, other: "Ideal") -> "Ideal":
        return intersect(self, other)

    def describe(self) -> str:
        if self.size == 1:
            return "(0)"
        if self.size == self.ring.size:
            return "R"
        gens = self.gens if self.gens is not None else minimal_generators(self.ring, self)
        return "(" + ", ".join(self.ring.labels[g] for g in gens) + ")"

    def __repr__(self):
        return f"Ideal{self.describe()} of size {self.size}"


def _same_ring(I: Ideal, J: Ideal):
    if I.ring is not J.ring:
        raise ValueError("ideals live in different rings")


def zero_ideal(R: FiniteRing) -> Ideal:
    mask = np.zeros(R.size, dtype=np.bool_)
    mask[R.zero] = True
    return Ideal(R, mask, ())


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, np.ones(R.size, dtype=np.bool_), (R.one,))


def principal_ideal(R: FiniteRing, a) -> Ideal:
    a = R.index(a)
    return Ideal(R, R.principal[a], (a,))


def ideal_generated(R: FiniteRing, gens: Iterable) -> Ideal:
    """Least ideal containing ``gens``: the sum of the principal ideals."""
    gens = tuple(R.index(g) for g in gens)
    mask = np.zeros(R.size, dtype=np.bool_)
    mask[R.zero] = True
    for g in gens:
        mask = kernels.sumset(R.add, np.flatnonzero(mask), np.flatnonzero(R.principal[g]))
    return Ideal(R, mask, gens)


def ideal_from_mask(R: FiniteRing, mask) -> Ideal:
    return Ideal(R, mask)


def is_ideal_mask(R: FiniteRing, mask) -> bool:
    mask = np.asarray(mask, dtype=np.bool_)
    idx = np.flatnonzero(mask)
    if not mask[R.zero]:
        return False
    closed_add = mask[R.add[np.ix_(idx, idx)]].all()
    closed_mul = mask[R.mul[:, idx]].all()
    return bool(closed_add and closed_mul)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    R = I.ring
    gens = I.gens + J.gens if I.gens is not None and J.gens is not None else None
    return Ideal(R, kernels.sumset(R.add, I.elements, J.elements), gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    """Additive closure of the pairwise products (already closed under scaling)."""
    _same_ring(I, J)
    R = I.ring
    prods = np.zeros(R.size, dtype=np.bool_)
    prods[R.mul[np.ix_(I.elements, J.elements)].ravel()] = True
    return Ideal(R, kernels.additive_closure(R.add, prods, R.zero))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.members & J.members)


def contains(I: Ideal, J: Ideal) -> bool:
    """True iff ``J`` is a subset of ``I``."""
    _same_ring(I, J)
    return bool((J.members <= I.members).all())


def equals(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return I == J


def principal_generator(I: Ideal) -> int | None:
    """Smallest element generating ``I`` on its own, if any."""
    rows = I.ring.principal[I.elements]
    hits = np.flatnonzero((rows == I.members[None, :]).all(axis=1))
    return int(I.elements[hits[0]]) if len(hits) else None


def is_principal(I: Ideal) -> bool:
    return principal_generator(I) is not None


def annihilator(R: FiniteRing, I) -> Ideal:
    """``{r : r x = 0 for all x in I}``; ``I`` may be an ideal or an element list."""
    if isinstance(I, Ideal):
        _same_ring_ring(R, I)
        elems = I.elements
    else:
        elems = np.array([R.index(x) for x in I], dtype=np.int64)
    if len(elems) == 0:
        return unit_ideal(R)
    return Ideal(R, (R.mul[:, elems] == R.zero).all(axis=1))


def _same_ring_ring(R: FiniteRing, I: Ideal):
    if I.ring is not R:
        raise ValueError("ideal lives in a different ring")


def power(I: Ideal, k: int) -> Ideal:
    out = unit_ideal(I.ring)
    for _ in range(k):
        out = ideal_product(out, I)
    return out


def nilradical(R: FiniteRing) -> Ideal:
    return Ideal(R, R.nil_mask)


def maximal_ideal(R: FiniteRing) -> Ideal:
    """The non-units of a local ring."""
    mask = ~R.unit_mask
    if len(local_factors(R).factors) != 1:
        raise ValueError(f"{R.name} is not local")
    return Ideal(R, mask)


def _sort_key(I: Ideal):
    return (I.size, tuple(I.elements.tolist()))


def lattice_closure(add: np.ndarray, zero: int, cyclic_masks, cap: int, what: str) -> list[np.ndarray]:
    """All sums of the given cyclic subgroups: breadth-first from ``{0}``."""
    n = add.shape[0]
    cyclic = {}
    for m in cyclic_masks:
        cyclic.setdefault(np.packbits(m).tobytes(), m)
    cyclic_list = list(cyclic.values())
    start = np.zeros(n, dtype=np.bool_)
    start[zero] = True
    seen = {np.packbits(start).tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            s_idx = np.flatnonzero(S)
            for C in cyclic_list:
                if (C <= S).all():
                    continue
                T = kernels.sumset(add, s_idx, np.flatnonzero(C))
                key = np.packbits(T).tobytes()
                if key not in seen:
                    seen[key] = T
                    nxt.append(T)
                    if len(seen) > cap:
                        raise ResourceCapError(what, len(seen), cap)
        frontier = nxt
    return list(seen.values())


def all_ideals(R: FiniteRing, cap: int = DEFAULT_IDEAL_CAP) -> list[Ideal]:
    """Every ideal of ``R``, ordered by size and then by member indices."""
    def compute():
        masks = lattice_closure(R.add, R.zero, R.principal, cap, "ideal count")
        return sorted((Ideal(R, m) for m in masks), key=_sort_key)
    found = R.cached("all_ideals", compute)
    if len(found) > cap:
        raise ResourceCapError("ideal count", len(found), cap)
    return found


def _local_minimal_generators(R: FiniteRing, I: Ideal, m: Ideal) -> list[int]:
    mI = ideal_product(m, I)
    gens: list[int] = []
    span = mI.members
    for x in I.elements:
        if not span[x]:
            gens.append(int(x))
            span = kernels.sumset(R.add, np.flatnonzero(span), np.flatnonzero(R.principal[x]))
        if (span == I.members).all():
            break
    return gens


def minimal_generators(R: FiniteRing, I: Ideal) -> list[int]:
    """Nakayama generators: lifts of a basis of ``I/mI``, smallest index first.

    For a non-local ring the factorwise generators (``e_i I`` in ``e_i R``)
    are concatenated, mapped back to ``R``.
    """
    _same_ring_ring(R, I)
    dec = local_factors(R)
    if len(dec.factors) == 1:
        return _local_minimal_generators(R, I, Ideal(R, ~R.unit_mask))
    out: list[int] = []
    for f in dec.factors:
        F = f.ring
        mask = np.zeros(F.size, dtype=np.bool_)
        mask[f.projection[I.elements]] = True
        If = Ideal(F, mask)
        out.extend(int(f.elements[g]) for g in _local_minimal_generators(F, If, Ideal(F, ~F.unit_mask)))
    return out
