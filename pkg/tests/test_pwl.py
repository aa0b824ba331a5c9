import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expressivity_auditor import (
    PwlFunction1D,
    affine_combine,
    apply_activation,
    builtin_activation,
    normalize,
    state_change_points,
    state_trace,
)

RELU = builtin_activation("relu")
STEP = builtin_activation("step")
HARD_TANH = builtin_activation("hard-tanh")


def tent(peak):
    return PwlFunction1D.from_knots([0.0, peak, 1.0], [0.0, 1.0, 0.0])


# ---------------------------------------------------------------- evaluation

def test_eval_single_piece():
    f = PwlFunction1D.affine(2.0, -1.0)
    assert f.eval(0.5) == 0.0
    assert f.n_breakpoints == 0


def test_eval_identity_endpoints():
    f = PwlFunction1D.affine(1.0, 0.0)
    assert f.eval(0.0) == 0.0
    assert f.eval(1.0) == 1.0


def test_eval_at_breakpoint_uses_right_piece():
    f = PwlFunction1D([0.3], [1.0, -1.0], [0.0, 0.6])
    assert f.eval(0.3) == pytest.approx(0.3, abs=1e-15)
    # left limit differs only for discontinuous functions; here both agree
    assert f.piece_index(0.3) == 1


def test_eval_vectorized():
    f = PwlFunction1D.affine(2.0, -1.0)
    a = np.array([0.0, 0.25, 0.5, 1.0])
    assert np.allclose(f.eval(a), 2.0 * a - 1.0)


def test_eval_outside_domain_raises():
    f = PwlFunction1D.affine(1.0, 0.0)
    with pytest.raises(ValueError):
        f.eval(1.5)
    with pytest.raises(ValueError):
        f.eval(-0.1)


def test_constructor_rejects_bad_breakpoints():
    with pytest.raises(ValueError):
        PwlFunction1D([0.0], [1.0, 1.0], [0.0, 0.0])  # not in open interval
    with pytest.raises(ValueError):
        PwlFunction1D([0.5, 0.5], [1.0, 1.0, 1.0], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        PwlFunction1D([0.5], [1.0], [0.0])  # piece count mismatch


def test_from_knots_requires_full_range():
    with pytest.raises(ValueError):
        PwlFunction1D.from_knots([0.1, 1.0], [0.0, 1.0])


# ------------------------------------------------------------- combinations

def test_combine_affine_stays_affine():
    f = affine_combine([1.0, 1.0], [PwlFunction1D.affine(1.0, 0.0), PwlFunction1D.affine(-2.0, 3.0)])
    assert f.n_breakpoints == 0
    assert f.eval(0.0) == 3.0
    assert f.eval(1.0) == 2.0


def test_combine_unions_breakpoints():
    f = affine_combine([1.0, 1.0], [tent(0.3), tent(0.7)])
    assert np.allclose(f.breakpoints, [0.3, 0.7])
    assert f.eval(0.5) == pytest.approx(tent(0.3).eval(0.5) + tent(0.7).eval(0.5))


def test_combine_cancellation_collapses():
    g = tent(0.3)
    f = affine_combine([1.0, -1.0], [g, g])
    assert f.n_breakpoints == 0
    assert f.eval(0.5) == 0.0


def test_combine_with_bias():
    f = affine_combine([2.0], [PwlFunction1D.affine(1.0, 0.0)], bias=-1.0)
    assert f.eval(0.5) == 0.0


# ---------------------------------------------------------------- activation

def test_relu_composition_cuts_at_crossing():
    f = apply_activation(RELU, PwlFunction1D.affine(2.0, -1.0))
    assert np.allclose(f.breakpoints, [0.5])
    assert f.pieces == [(0.0, 0.0), (2.0, -1.0)]


def test_relu_composition_no_crossing():
    f = apply_activation(RELU, PwlFunction1D.affine(1.0, 0.0))
    assert f.n_breakpoints == 0
    assert f.pieces == [(1.0, 0.0)]


def test_step_composition_jumps():
    f = apply_activation(STEP, PwlFunction1D.affine(2.0, -1.0))
    assert np.allclose(f.breakpoints, [0.5])
    left, right = f.junction_values()
    assert np.allclose(right - left, [1.0])
    assert f.eval(0.5) == 1.0  # right piece wins at the jump


def test_apply_activation_needs_pwl():
    with pytest.raises(Exception):
        apply_activation(builtin_activation("sigmoid"), PwlFunction1D.affine(1.0, 0.0))


# --------------------------------------------------------------- breakpoints

def test_count_constant():
    assert PwlFunction1D.constant(3.0).n_breakpoints == 0


def test_count_examples():
    assert affine_combine([1.0, 1.0], [tent(0.3), tent(0.7)]).n_breakpoints == 2
    assert apply_activation(RELU, PwlFunction1D.affine(2.0, -1.0)).n_breakpoints == 1


# --------------------------------------------------------------- state trace

def test_state_trace_relu():
    trace = state_trace(RELU, PwlFunction1D.affine(2.0, -1.0))
    assert trace == [(1, 0.0, 0.5), (2, 0.5, 1.0)]
    assert np.allclose(state_change_points(trace), [0.5])


def test_state_trace_constant():
    trace = state_trace(RELU, PwlFunction1D.constant(-2.0))
    assert trace == [(1, 0.0, 1.0)]
    assert state_change_points(trace).size == 0


def test_state_trace_three_states():
    from expressivity_auditor import PwlActivation

    act = PwlActivation("clip-half", [-0.5, 0.5], [0.0, 1.0, 0.0], [-0.5, 0.0, 0.5])
    trace = state_trace(act, PwlFunction1D.affine(2.0, -1.0))
    assert [s for s, _, _ in trace] == [1, 2, 3]
    assert np.allclose(state_change_points(trace), [0.25, 0.75])


# ------------------------------------------------------------- normalization

def test_normalize_merges_collinear():
    f = PwlFunction1D([0.5], [1.0, 1.0], [0.0, 0.0])
    g = normalize(f)
    assert g.n_breakpoints == 0


def test_normalize_coalesces_near_duplicates():
    f = PwlFunction1D([0.5, 0.5 + 1e-14], [1.0, 2.0, 3.0], [0.0, -0.5, -1.0])
    g = normalize(f)
    assert g.n_breakpoints <= 1


# ----------------------------------------------------------------- property

@st.composite
def pwl_functions(draw, max_breaks=5):
    k = draw(st.integers(0, max_breaks))
    bps = sorted(draw(st.lists(
        st.floats(0.01, 0.99), min_size=k, max_size=k, unique=True)))
    slopes = draw(st.lists(st.floats(-5, 5), min_size=k + 1, max_size=k + 1))
    icpts = draw(st.lists(st.floats(-5, 5), min_size=k + 1, max_size=k + 1))
    return PwlFunction1D(np.array(bps), np.array(slopes), np.array(icpts))


@settings(max_examples=60, deadline=None)
@given(pwl_functions(), pwl_functions(), st.floats(-3, 3), st.floats(-3, 3))
def test_combine_pointwise(f, g, c1, c2):
    h = affine_combine([c1, c2], [f, g], bias=0.25)
    alphas = np.random.default_rng(0).random(1000)
    want = c1 * f.eval(alphas) + c2 * g.eval(alphas) + 0.25
    assert np.max(np.abs(h.eval(alphas) - want)) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(pwl_functions(), pwl_functions())
def test_combine_breakpoint_subadditivity(f, g):
    h = affine_combine([1.0, 1.0], [f, g])
    assert h.n_breakpoints <= f.n_breakpoints + g.n_breakpoints


@settings(max_examples=60, deadline=None)
@given(pwl_functions())
def test_normalize_idempotent(f):
    g = normalize(f)
    h = normalize(g)
    assert np.array_equal(g.breakpoints, h.breakpoints)
    assert np.array_equal(g.slopes, h.slopes)
    assert np.array_equal(g.intercepts, h.intercepts)


@settings(max_examples=60, deadline=None)
@given(pwl_functions(), st.sampled_from(["relu", "hard-tanh", "step"]))
def test_composition_breakpoint_cap(f, name):
    act = builtin_activation(name)
    g = apply_activation(act, f)
    assert g.n_breakpoints <= act.t * (f.n_breakpoints + 1) - 1


@settings(max_examples=40, deadline=None)
@given(pwl_functions(), st.sampled_from(["relu", "hard-tanh"]))
def test_composition_pointwise_away_from_breaks(f, name):
    act = builtin_activation(name)
    g = apply_activation(act, f)
    alphas = np.random.default_rng(1).random(500)
    if g.breakpoints.size:
        dist = np.min(np.abs(alphas[:, None] - g.breakpoints[None, :]), axis=1)
        alphas = alphas[dist > 1e-6]
    want = act.value(f.eval(alphas))
    assert np.max(np.abs(g.eval(alphas) - want), initial=0.0) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(pwl_functions(), st.sampled_from(["relu", "hard-tanh", "step"]))
def test_trace_tiles_unit_interval(f, name):
    act = builtin_activation(name)
    trace = state_trace(act, f)
    assert trace[0][1] == 0.0 and trace[-1][2] == 1.0
    for (s1, _, hi1), (s2, lo2, _) in zip(trace, trace[1:]):
        assert hi1 == lo2 and s1 != s2
