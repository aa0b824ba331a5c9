"""Restrict a network to a segment and count break points and transitions.

The network below computes tent(tent(x)) on [0, 1] with two hidden layers of
two relu units each.  Along the segment from 0 to 1 the output folds twice,
so it has exactly three break points, and the per-unit transition counts obey
every counting inequality the auditor checks.

Run with: python3 demos/restrict_and_count.py
"""

import numpy as np

from expressivity_auditor import (
    Edge,
    Network,
    Segment,
    Unit,
    audit_transition_inequalities,
    break_points,
    breakpoint_upper_bound_exact,
    builtin_activation,
    depth_profile,
    forward,
    restrict,
    transition_counts,
)


def build_tent_of_tent() -> Network:
    # tent(x) = relu(2x) - relu(4x - 2), wired twice in series.
    relu = builtin_activation("relu")
    units = [
        Unit("u1", 0.0, relu),
        Unit("u2", -2.0, relu),
        Unit("v1", 0.0, relu),
        Unit("v2", -2.0, relu),
    ]
    edges = [
        Edge("x1", "u1", 2.0),
        Edge("x1", "u2", 4.0),
        Edge("u1", "v1", 2.0),
        Edge("u2", "v1", -2.0),
        Edge("u1", "v2", 4.0),
        Edge("u2", "v2", -4.0),
        Edge("v1", "out", 1.0),
        Edge("v2", "out", -1.0),
    ]
    return Network(1, units, edges)


net = build_tent_of_tent()
prof = depth_profile(net)
print(f"depth d = {prof.depth}, hidden units = {sum(prof.layer_widths)}, "
      f"width omega = {prof.width}")

seg = Segment(np.array([0.0]), np.array([1.0]))
r = restrict(net, seg)

B = break_points(r)
counts = transition_counts(r)
N = counts.filtered["H"]
t = 2  # relu has two pieces
bound = breakpoint_upper_bound_exact(t, prof.width, prof.depth)
print(f"break points B = {B}, at alpha = {r.output.breakpoints}")
print(f"transitions  N = {N}, per layer: "
      + ", ".join(f"{k}={v}" for k, v in counts.filtered.items() if not k.startswith("H<=")))
print(f"sandwich: B = {B} <= N = {N} <= ((t-1)w+1)^d - 1 = {bound}")

# The restriction is exact: it matches forward evaluation everywhere.
alphas = np.linspace(0.0, 1.0, 9)
outputs = np.array([forward(net, seg.point(a)).output for a in alphas])
print("max |restrict - forward| =", np.abs(r.output(alphas) - outputs).max())

print("\ncounting inequalities:")
for rep in audit_transition_inequalities(r):
    print(f"  {rep.kind:32s} measured={rep.measured:g} bound={rep.bound:g} "
          f"margin={rep.margin:g} -> {rep.verdict}")
