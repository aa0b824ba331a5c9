"""Empirical approximation machinery.

sup_error estimates sup |f - g| by dense grids (low dimension) or seeded Monte
Carlo; uniform_interpolant_1d builds the best uniform-knot piecewise-linear
approximation of a target along a segment; the *_breakpoint_audit functions
check the measured piece counts of such approximants against the curvature and
Laplacian floors; swap_audit compares two copies of a network that differ only
in their activation function against the closed-form deviation cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import activations, pwl
from .bounds import activation_swap_bound, max_abs_laplacian, min_curvature, BoundConfig
from .errors import PreconditionError
from .netgraph import Network, Segment, Unit, depth_profile, forward, require_valid
from .report import AuditReport, lower_audit
from .targets import TargetFunction

DENSE_PER_PIECE = 4096  # samples per linear piece for 1-D sup-error measurement


@dataclass(frozen=True)
class Sampler:
    """Where and how densely to sample: grid points per axis for dimensions
    <= 2, Monte Carlo sample count above, plus the box used when the callee
    has no domain of its own (activation-swap inputs)."""

    grid: int = 512
    samples: int = 100000
    seed: int = 0
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if self.grid < 2 or self.samples < 1:
            raise ValueError("grid must be >= 2 and samples >= 1")
        if not self.hi > self.lo:
            raise ValueError("need hi > lo")


@dataclass(frozen=True)
class SwapAudit:
    """Observed vs bounded output deviation for an activation swap."""

    empirical_sup: float
    bound: float
    samples: int
    margin: float
    gap: float
    lipschitz: float


def sup_error(f, g: TargetFunction, sampler: Sampler | None = None) -> float:
    """max |f - g| over a deterministic point set in g's domain.

    f is a Network (dimensions must match) or a PwlFunction1D of a scalar
    argument (g must then be one-dimensional on [0,1]). Dimensions <= 2 use a
    full grid of sampler.grid points per axis; higher dimensions fall back to
    sampler.samples seeded Monte Carlo points, an under-estimate of the sup.
    """
    sampler = sampler or Sampler()
    if isinstance(f, pwl.PwlFunction1D):
        if g.n != 1:
            raise ValueError("a 1-D piecewise-linear f needs a 1-D target")
        alphas = np.linspace(0.0, 1.0, sampler.grid)
        pts = g.domain.lo + alphas[:, None] * (g.domain.hi - g.domain.lo)
        return float(np.max(np.abs(f.eval(alphas) - g.value(pts))))
    if not isinstance(f, Network):
        raise ValueError("f must be a Network or a PwlFunction1D")
    if f.n_inputs != g.n:
        raise ValueError(f"network takes {f.n_inputs} inputs, target has {g.n}")
    if g.n <= 2:
        axes = [
            np.linspace(g.domain.lo[i], g.domain.hi[i], sampler.grid) for i in range(g.n)
        ]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
    else:
        rng = np.random.default_rng(sampler.seed)
        pts = g.domain.sample(rng, sampler.samples)
    return float(np.max(np.abs(forward(f, pts).output - g.value(pts))))


def _dense_alphas(f: pwl.PwlFunction1D, per_piece: int = DENSE_PER_PIECE) -> np.ndarray:
    edges = np.concatenate(([0.0], f.breakpoints, [1.0]))
    chunks = [
        np.linspace(edges[i], edges[i + 1], per_piece) for i in range(len(edges) - 1)
    ]
    return np.unique(np.concatenate(chunks))


def sup_error_on_segment(
    f: pwl.PwlFunction1D, g: TargetFunction, seg: Segment, per_piece: int = DENSE_PER_PIECE
) -> float:
    """max |f(alpha) - g(z(alpha))| sampled densely within every linear piece."""
    alphas = _dense_alphas(f, per_piece)
    return float(np.max(np.abs(f.eval(alphas) - g.value(seg.point(alphas)))))


def uniform_interpolant_1d(g: TargetFunction, seg: Segment, s: int):
    """Piecewise-linear approximation of g along seg with s uniform pieces.

    Interpolates at the s+1 uniform knots, then shifts by half the signed
    deviation range so the error equioscillates; for curved targets that
    halves the plain interpolation error. Returns (normalized function,
    measured sup error); the unnormalized interpolant has exactly s-1
    interior breakpoints.
    """
    if int(s) != s or s < 1:
        raise ValueError("s must be an integer >= 1")
    knots = np.linspace(0.0, 1.0, int(s) + 1)
    f0 = pwl.PwlFunction1D.from_knots(knots, g.value(seg.point(knots)))
    alphas = _dense_alphas(f0)
    dev = f0.eval(alphas) - g.value(seg.point(alphas))
    shift = -(dev.max() + dev.min()) / 2.0
    achieved = float((dev.max() - dev.min()) / 2.0)
    return pwl.normalize(f0.shifted(shift)), achieved


def _measured_eps(f1d, g, seg, eps) -> float:
    measured = sup_error_on_segment(f1d, g, seg)
    if measured > eps + 1e-12 * max(1.0, eps):
        raise PreconditionError(
            f"interpolant misses the requested error: measured {measured:.6g} > {eps:.6g}"
        )
    return measured


def curvature_breakpoint_audit(
    g: TargetFunction, seg: Segment, f1d: pwl.PwlFunction1D, eps: float,
    cfg: BoundConfig | None = None,
) -> AuditReport:
    """Check breakpoints(f1d) >= ||x-y|| * curvature / (4 sqrt(eps)) - 1.

    eps is re-measured from the supplied approximant (the floor quantifies
    over actual approximations); a small relative tolerance absorbs the
    sampling bias of that measurement in the equality-tight cases.
    """
    e = _measured_eps(f1d, g, seg, eps)
    psi = min_curvature(g, seg.x, seg.y, cfg).value
    if psi <= 0.0:
        rhs = -1.0
    elif e <= 0.0:
        rhs = math.inf
    else:
        rhs = seg.length * psi / (4.0 * math.sqrt(e)) - 1.0
    return lower_audit(
        "breakpoints-vs-curvature-floor",
        float(f1d.n_breakpoints),
        rhs,
        parameters={"curvature": psi, "eps": e, "segment_length": seg.length},
        tol=1e-6 * max(1.0, abs(rhs)),
    )


def laplacian_breakpoint_audit(
    g: TargetFunction, seg: Segment, f1d: pwl.PwlFunction1D, eps: float, grid: int = 129
) -> AuditReport:
    """Check breakpoints(f1d) >= sqrt((max|lap|/n - d3*n^1.5)+ / (16 eps)) - 1
    for targets on the unit box."""
    if not (np.allclose(g.domain.lo, 0.0) and np.allclose(g.domain.hi, 1.0)):
        raise ValueError("this floor is stated on the unit box domain")
    e = _measured_eps(f1d, g, seg, eps)
    max_lap, _ = max_abs_laplacian(g, grid)
    inner = max(0.0, max_lap / g.n - g.third_bound * g.n**1.5)
    if inner <= 0.0:
        rhs = -1.0
    elif e <= 0.0:
        rhs = math.inf
    else:
        rhs = math.sqrt(inner / (16.0 * e)) - 1.0
    return lower_audit(
        "breakpoints-vs-laplacian-floor",
        float(f1d.n_breakpoints),
        rhs,
        parameters={"max_abs_laplacian": max_lap, "eps": e},
        tol=1e-6 * max(1.0, abs(rhs)),
    )


def _with_activation(net: Network, act) -> Network:
    units = tuple(Unit(u.uid, u.bias, act) for u in net.units)
    return Network(net.n_inputs, units, net.edges, net.output_bias)


def swap_audit(net: Network, act1, act2, A: float, sampler: Sampler | None = None) -> SwapAudit:
    """Empirical output deviation between act1- and act2-versions of one
    weight configuration, against the closed-form cap.

    All edge weights must lie in [-A, A]. The activation gap entering the cap
    is measured over the observed pre-activation range of both versions,
    padded by 0.5 on each side to cover drift between sample points.
    """
    sampler = sampler or Sampler()
    require_valid(net)
    if not A > 0:
        raise ValueError("A must be positive")
    for e in net.edges:
        if abs(e.weight) > A + 1e-12:
            raise PreconditionError(
                f"edge {e.src!r}->{e.dst!r} weight {e.weight} outside [-{A}, {A}]"
            )
    act1 = activations.builtin_activation(act1) if isinstance(act1, str) else act1
    act2 = activations.builtin_activation(act2) if isinstance(act2, str) else act2
    net1 = _with_activation(net, act1)
    net2 = _with_activation(net, act2)
    rng = np.random.default_rng(sampler.seed)
    x = sampler.lo + rng.random((sampler.samples, net.n_inputs)) * (sampler.hi - sampler.lo)
    r1 = forward(net1, x)
    r2 = forward(net2, x)
    emp = float(np.max(np.abs(r1.output - r2.output)))
    pre = np.concatenate(
        [v.ravel() for v in r1.pre_activations.values()]
        + [v.ravel() for v in r2.pre_activations.values()]
    )
    g = activations.gap(act1, act2, float(pre.min()) - 0.5, float(pre.max()) + 0.5)
    delta = activations.lipschitz_constant(act1)
    prof = depth_profile(net)
    bound = activation_swap_bound(delta, A, prof.width, prof.depth, g)
    return SwapAudit(emp, bound, sampler.samples, bound - emp, g.value, delta)
