"""Shared network fixtures used across the test modules."""

import pytest

from expressivity_auditor import Edge, Network, Unit, builtin_activation


def _relu():
    return builtin_activation("relu")


@pytest.fixture
def fig1_net():
    """Three-layer DAG on three inputs with skip connections.

    Hidden units u11, u12 / u21, u22, u23 / u31, u32, u33.  Depth 3,
    eight hidden units, width 8/3.  Used as the canonical worked
    example for depth, width, and ancestor-set queries.
    """
    units = [
        Unit("u11", 0.0, _relu()),
        Unit("u12", 0.0, _relu()),
        Unit("u21", 0.0, _relu()),
        Unit("u22", 0.0, _relu()),
        Unit("u23", 0.0, _relu()),
        Unit("u31", 0.0, _relu()),
        Unit("u32", 0.0, _relu()),
        Unit("u33", 0.0, _relu()),
    ]
    edges = [
        Edge("x3", "u11", 1.0),
        Edge("x3", "u12", 1.0),
        Edge("x1", "u23", 1.0),
        Edge("x2", "u32", 1.0),
        Edge("u11", "u21", 1.0),
        Edge("u11", "u22", 1.0),
        Edge("u11", "u23", 1.0),
        Edge("u12", "u23", 1.0),
        Edge("u12", "u33", 1.0),
        Edge("u21", "u31", 1.0),
        Edge("u21", "u32", 1.0),
        Edge("u22", "u31", 1.0),
        Edge("u22", "u33", 1.0),
        Edge("u23", "u32", 1.0),
        Edge("u23", "out", 1.0),
        Edge("u31", "out", 1.0),
        Edge("u32", "out", 1.0),
        Edge("u33", "out", 1.0),
    ]
    return Network(n_inputs=3, units=units, edges=edges)


def build_tent2():
    """Depth-2 ReLU net computing tent(tent(x)) on one input.

    tent(x) = min(2x, 2-2x) on [0,1]; the composition has exactly
    three interior breakpoints at 1/4, 1/2, 3/4.
    """
    units = [
        Unit("u11", 0.0, _relu()),
        Unit("u12", -2.0, _relu()),
        Unit("v21", 0.0, _relu()),
        Unit("v22", -2.0, _relu()),
    ]
    edges = [
        Edge("x1", "u11", 2.0),
        Edge("x1", "u12", 4.0),
        Edge("u11", "v21", 2.0),
        Edge("u12", "v21", -2.0),
        Edge("u11", "v22", 4.0),
        Edge("u12", "v22", -4.0),
        Edge("v21", "out", 1.0),
        Edge("v22", "out", -1.0),
    ]
    return Network(n_inputs=1, units=units, edges=edges)


@pytest.fixture
def tent2_net():
    return build_tent2()


def build_single_relu():
    """f(x) = relu(2x - 1) on one input: a single kink at 1/2."""
    units = [Unit("u1", -1.0, _relu())]
    edges = [Edge("x1", "u1", 2.0), Edge("u1", "out", 1.0)]
    return Network(n_inputs=1, units=units, edges=edges)


@pytest.fixture
def single_relu_net():
    return build_single_relu()
