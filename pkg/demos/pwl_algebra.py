"""Piecewise-linear functions on [0, 1]: build, combine, compose.

Restricting a network to a segment reduces to this one-dimensional algebra,
so this demo walks it end to end: affine atoms, linear combinations, cutting
pieces with an activation, jumps, and state traces.

Run with: python3 demos/pwl_algebra.py
"""

import numpy as np

from expressivity_auditor import (
    PwlFunction1D,
    affine_combine,
    apply_activation,
    builtin_activation,
    state_change_points,
    state_trace,
)

relu = builtin_activation("relu")
step = builtin_activation("step")
hard_tanh = builtin_activation("hard-tanh")

# An affine function is the one-piece special case.
line = PwlFunction1D.affine(2.0, -1.0)  # 2a - 1
print("line(0), line(1/2), line(1)   =", line(np.array([0.0, 0.5, 1.0])))

# Composing with relu cuts the piece where 2a - 1 crosses 0.
kink = apply_activation(relu, line)
print("relu(2a - 1) breakpoints      =", kink.breakpoints)
print("relu(2a - 1) pieces           =", kink.pieces)

# The tent map as a two-relu combination: relu(2a) - 2 relu(2a - 1).
ramp = apply_activation(relu, PwlFunction1D.affine(2.0, 0.0))
tent = affine_combine([1.0, -2.0], [ramp, kink])
grid = np.linspace(0.0, 1.0, 5)
print("tent on {0, .25, .5, .75, 1}  =", tent(grid))
print("tent breakpoints              =", tent.breakpoints)

# Subtracting a function from itself collapses back to one piece: the
# normalizer merges junctions where slope and value agree.
zero = affine_combine([1.0, -1.0], [tent, tent])
print("tent - tent piece count       =", zero.n_pieces)

# A discontinuous activation produces a jump, and the jump is a break point.
gate = apply_activation(step, line)
print("step(2a - 1) breakpoints      =", gate.breakpoints)
print("junction (left, right) values =", gate.junction_values())
print("value at the jump (right piece wins) =", gate(0.5))

# State traces record which activation interval the input occupies.  For
# hard-tanh the three states are (-inf,-1), [-1,1), [1,inf); a steep line
# sweeps all of them.
steep = PwlFunction1D.affine(4.0, -2.0)  # 4a - 2 covers [-2, 2]
trace = state_trace(hard_tanh, steep)
for state, lo, hi in trace:
    print(f"state {state} on [{lo:.4f}, {hi:.4f})")
print("state changes at alpha        =", state_change_points(trace))
