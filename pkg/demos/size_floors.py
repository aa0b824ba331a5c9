"""Lower bounds: how many pieces (and hidden units) a target forces.

Any piecewise-linear approximation of a curved target within eps needs many
pieces along a segment where the target stays strictly curved; pieces cost
hidden units at rate log_t.  This demo evaluates the three floors (segment
curvature, strong convexity, integrated Laplacian) on the built-in targets,
then checks tightness against the optimal interpolant of x^2.

Run with: python3 demos/size_floors.py
"""

import numpy as np

from expressivity_auditor import (
    BoundConfig,
    Segment,
    catalog,
    curvature_breakpoint_audit,
    curvature_lower_bound,
    depth_scaled_lower_bound,
    laplacian_lower_bound,
    min_curvature,
    strong_convexity_lower_bound,
    uniform_interpolant_1d,
)

cfg = BoundConfig(epsilon=1e-4, t=2)

# Segment curvature on the unit square.  sq_norm keeps curvature sqrt(2)
# along the diagonal; poly_g1 has a saddle, so some direction kills the
# clamped infimum and the whole search bottoms out at 0.
sq = catalog("sq_norm")
g1 = catalog("poly_g1")
g2 = catalog("poly_g2")
diag = (np.zeros(2), np.ones(2))
print("curvature along the main diagonal:")
for g in (sq, g1, g2):
    seg = min_curvature(g, *diag)
    print(f"  {g.name:8s} value={seg.value:.6f} at alpha={seg.minimizing_alpha:.4f}")

print("\nbest-pair search (sup ||x-y|| * curvature / 4):")
for g in (sq, g1, g2):
    cb = curvature_lower_bound(g, cfg)
    x, y = cb.best_pair
    print(f"  {g.name:8s} value={cb.value:.6f} (pair {x} -> {y}), "
          f"hidden-unit floor at eps={cfg.epsilon:g}: {cb.hidden_units_lb:.3f}")

# For strongly convex targets the mu route gives the same floor in closed
# form: 0.5*log_t(mu*diam^2/(16 eps)).
mu_floor = strong_convexity_lower_bound(sq.mu, sq.domain.diameter, cfg.epsilon, cfg.t)
print(f"\nsq_norm strong-convexity floor = {mu_floor:.6f} "
      f"(matches the curvature route above)")

# Fixing the depth trades the log floor for a power law: q * d * eps^(-1/(2d)).
print("sq_norm depth-scaled floors:", ", ".join(
    f"d={d}: {depth_scaled_lower_bound(sq, d, cfg.epsilon, cfg):.2f}" for d in (1, 2, 3)))

# The Laplacian route survives indefinite targets: poly_g1 has no mu and a
# zero curvature infimum, but its integrated curvature still forces pieces.
print("\nLaplacian floors at eps=1e-2, t=2:")
for g in (catalog("poly_a"), g1):
    lb = laplacian_lower_bound(g, 1e-2, 2)
    print(f"  {g.name:8s} multiplier={lb.multiplier:.6f} "
          f"(max|lap|={lb.max_abs_laplacian:g} at {lb.at_point}), "
          f"hidden-unit floor={lb.hidden_units_lb:.3f}")

# Tightness: the equioscillating s-piece interpolant of x^2 on [0, 1] has
# error 1/(8 s^2), and the curvature floor then demands exactly s - 1
# interior break points, which is what the interpolant has.
x2 = catalog("sq_norm", 1)
seg01 = Segment(np.zeros(1), np.ones(1))
print("\ninterpolants of x^2 on [0, 1]:")
for s in (2, 4, 8, 16):
    f, achieved = uniform_interpolant_1d(x2, seg01, s)
    rep = curvature_breakpoint_audit(x2, seg01, f, achieved)
    print(f"  s={s:2d}: eps-hat={achieved:.6f} breakpoints={f.n_breakpoints} "
          f"floor={rep.bound:.6f} -> {rep.verdict}")
