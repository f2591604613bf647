from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from burgerspim import cfd6, hopfcole, pim, splitting
from burgerspim.grid import Axis, Field, Grid, error_norms

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
SETTINGS = settings(max_examples=40, deadline=None)


@SETTINGS
@given(arrays(np.float64, 12, elements=finite), arrays(np.float64, 12, elements=finite))
def test_error_norms_are_symmetric(a, b):
    g = Grid.uniform(0, 1, 12)
    fa, fb = Field(g, a), Field(g, b)
    for conv in ("weighted", "rms"):
        ab, ba = error_norms(fa, fb, conv), error_norms(fb, fa, conv)
        assert ab.l2 == ba.l2 and ab.linf == ba.linf
        assert ab.l2 >= 0 and ab.linf >= 0


@SETTINGS
@given(st.floats(-5, 5), st.floats(0.1, 10), st.integers(8, 200))
def test_refinement_keeps_endpoints_and_old_nodes(a, length, n):
    ax = Axis(a, a + length, n)
    fine = ax.refined()
    assert fine.n == 2 * n - 1
    assert fine.nodes[0] == ax.nodes[0] and fine.nodes[-1] == ax.nodes[-1]
    np.testing.assert_allclose(fine.nodes[::2], ax.nodes, rtol=0, atol=1e-12 * max(1.0, abs(a) + length))


@SETTINGS
@given(
    arrays(np.float64, 9, elements=st.floats(0.5, 5)),
    arrays(np.float64, 9, elements=finite),
    st.floats(1e-3, 1e3),
    st.floats(1e-3, 10),
)
def test_inverse_is_scale_invariant(phi, grad, scale, omega):
    g = Grid.uniform(0, 1, 9)
    base = hopfcole.HeatState(Field(g, phi), (Field(g, grad),), omega)
    scaled = base.with_values(phi * scale, [grad * scale], 0.0)
    np.testing.assert_allclose(
        hopfcole.inverse(scaled)[0].values, hopfcole.inverse(base)[0].values, rtol=1e-12, atol=1e-300
    )


@SETTINGS
@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from(["neumann", "dirichlet", "periodic"]))
def test_propagator_semigroup(j, k, kind):
    n = 12
    h = 1 / n if kind == "periodic" else 1 / (n - 1)
    p = pim.build_propagator(cfd6.build_generator(kind, n, h, 0.1), 1e-3)
    lhs = p.power(j).compose(p.power(k))
    assert np.abs(lhs.increment - p.power(j + k).increment).max() <= 1e-13


@SETTINGS
@given(arrays(np.float64, (9, 9, 9), elements=st.floats(-1, 1)), st.permutations([0, 1, 2]))
def test_axis_order_invariance(v, order):
    g = Grid.uniform(0, 1, 9, rank=3)
    sp = splitting.build_split_propagator(g, 0.2, 5e-3, [["neumann", "dirichlet"]] * 3)
    kinds = ("neumann", "dirichlet", "neumann")
    base = sp.evolve(v, kinds)
    assert np.abs(sp.with_order(order).evolve(v, kinds) - base).max() <= 1e-12


@SETTINGS
@given(arrays(np.float64, 16, elements=st.floats(-1, 1)), st.floats(-3, 3))
def test_periodic_step_preserves_mean_and_shifts_constants(v, c):
    p = pim.build_propagator(cfd6.build_generator("periodic", 16, 1 / 16, 0.05), 5e-3)
    out = pim.apply(p, v + c)
    assert abs(out.mean() - (v + c).mean()) <= 1e-12
    np.testing.assert_allclose(out - c, pim.apply(p, v), atol=1e-12)
