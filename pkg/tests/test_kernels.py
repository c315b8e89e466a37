"""The numba kernels and their numpy twins give identical answers."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fqplab import kernels
from fqplab.deciders import _ideal_sum_table
from fqplab.ideals import all_ideals
from fqplab.kernels import _numba, _numpy
from fqplab.modules import _presentation, module_from_ideal

from conftest import mutate
from strategies import rings

BACKENDS = [_numba, _numpy]


def test_backend_flag_is_known():
    assert kernels.BACKEND in ("numba", "numpy")


@given(rings(), st.data())
def test_axiom_violation_agrees(R, data):
    a = data.draw(st.integers(0, R.size - 1))
    b = data.draw(st.integers(0, R.size - 1))
    v = data.draw(st.integers(0, R.size - 1))
    mul = mutate(R.mul, a, b, v).astype(np.int32)
    got = [tuple(int(x) for x in k.axiom_violation(R.add, mul, R.zero, R.one)) for k in BACKENDS]
    assert got[0] == got[1]


@given(rings(), st.data())
def test_sumset_and_closure_agree(R, data):
    a = np.array(sorted(data.draw(st.sets(st.integers(0, R.size - 1), min_size=1, max_size=5))))
    b = np.array(sorted(data.draw(st.sets(st.integers(0, R.size - 1), min_size=1, max_size=5))))
    assert np.array_equal(_numba.sumset(R.add, a, b), _numpy.sumset(R.add, a, b))
    mask = np.zeros(R.size, dtype=np.bool_)
    mask[a] = True
    assert np.array_equal(_numba.additive_closure(R.add, mask, R.zero),
                          _numpy.additive_closure(R.add, mask, R.zero))


@given(rings(max_size=32), st.data())
def test_hom_search_agrees(R, data):
    ideals = all_ideals(R)
    I = ideals[data.draw(st.integers(0, len(ideals) - 1))]
    J = ideals[data.draw(st.integers(0, len(ideals) - 1))]
    M, N = module_from_ideal(I), module_from_ideal(J)
    p = _presentation(M)
    if N.size ** len(p.gens) > 50_000:
        return
    for first in (False, True):
        a = _numba.hom_search(p.coef, p.orbit, p.cyc, M.add, N.add, N.action, N.zero, first)
        b = _numpy.hom_search(p.coef, p.orbit, p.cyc, M.add, N.add, N.action, N.zero, first)
        assert np.array_equal(a, b)


@given(rings())
def test_gaussian_violation_agrees(R):
    a = _numba.gaussian_violation(R.mul, R.principal, R.zero)
    b = _numpy.gaussian_violation(R.mul, R.principal, R.zero)
    assert tuple(map(int, a)) == tuple(map(int, b))


@pytest.mark.parametrize("spec", ["Z(12)", "Poly(2,[x,y],[x^3,x^2*y,x*y^2,y^3])",
                                  "Poly(2,[x,y],[x^2,x*y,y^2])", "TrivExt(Z(8),[2],1)"])
@pytest.mark.parametrize("d", [0, 1])
def test_content_search_agrees(spec, d):
    from fqplab.specparse import build_ring
    R = build_ring(spec)
    _, pid, isum = _ideal_sum_table(R, 100_000)
    a = _numba.content_search(R.mul, R.add, pid, isum, R.zero, d, 0)
    b = _numpy.content_search(R.mul, R.add, pid, isum, R.zero, d, 0)
    assert tuple(map(int, a)) == tuple(map(int, b))
