"""Exact algebra of scalar piecewise-linear functions on [0, 1].

This is the substrate for restricting a network to a line segment: each input
restricts to an affine function of the segment parameter alpha, pre-activations
are affine combinations, and composing with a piecewise-linear activation cuts
pieces wherever the pre-activation crosses an activation interval boundary.

Conventions, fixed once:

* pieces are left-closed / right-open, the last piece closed at 1;
* breakpoints live in the open interval (0, 1);
* jump discontinuities are allowed (adjacent pieces need not agree at the
  junction) and count as break points;
* activation interval boundaries are resolved right-continuously, so the state
  at a boundary value belongs to the interval on its right.

Arithmetic is IEEE binary64 with tolerance-based junction merging; there is no
exact rational mode. See `normalize` for the merging rules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Breakpoints closer than this are treated as a single point; the sliver piece
# between them is dropped during normalization.
COALESCE_TOL = 1e-12
# Relative scale for deciding that two adjacent pieces are the same line.
MERGE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class PwlFunction1D:
    """Piecewise-linear function of alpha in [0, 1].

    Piece i is `slopes[i] * alpha + intercepts[i]`, valid on the i-th
    subinterval of the partition induced by `breakpoints`.
    """

    breakpoints: np.ndarray
    slopes: np.ndarray
    intercepts: np.ndarray

    def __post_init__(self):
        bp = np.atleast_1d(np.asarray(self.breakpoints, dtype=float))
        sl = np.atleast_1d(np.asarray(self.slopes, dtype=float))
        ic = np.atleast_1d(np.asarray(self.intercepts, dtype=float))
        if bp.ndim != 1 or sl.ndim != 1 or ic.ndim != 1:
            raise ValueError("breakpoints, slopes, intercepts must be 1-D")
        if len(sl) != len(bp) + 1 or len(ic) != len(sl):
            raise ValueError("need exactly len(breakpoints) + 1 pieces")
        if bp.size:
            if not np.all(np.diff(bp) > 0.0):
                raise ValueError("breakpoints must be strictly increasing")
            if bp[0] <= 0.0 or bp[-1] >= 1.0:
                raise ValueError("breakpoints must lie in the open interval (0, 1)")
        if not (np.all(np.isfinite(bp)) and np.all(np.isfinite(sl)) and np.all(np.isfinite(ic))):
            raise ValueError("non-finite data")
        for name, arr in (("breakpoints", bp), ("slopes", sl), ("intercepts", ic)):
            arr = np.ascontiguousarray(arr)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def affine(cls, slope, intercept):
        return cls(np.empty(0), np.array([slope], dtype=float), np.array([intercept], dtype=float))

    @classmethod
    def constant(cls, value):
        return cls.affine(0.0, value)

    @classmethod
    def from_knots(cls, alphas, values):
        """Continuous chord interpolant through (alphas, values); knots must
        include 0 and 1 and be strictly increasing."""
        a = np.asarray(alphas, dtype=float)
        v = np.asarray(values, dtype=float)
        if a.ndim != 1 or a.shape != v.shape or a.size < 2:
            raise ValueError("need matching 1-D knot arrays of length >= 2")
        if a[0] != 0.0 or a[-1] != 1.0 or not np.all(np.diff(a) > 0):
            raise ValueError("knots must increase strictly from 0 to 1")
        slopes = np.diff(v) / np.diff(a)
        intercepts = v[:-1] - slopes * a[:-1]
        return cls(a[1:-1], slopes, intercepts)

    @property
    def n_breakpoints(self) -> int:
        return int(self.breakpoints.size)

    @property
    def n_pieces(self) -> int:
        return int(self.slopes.size)

    @property
    def pieces(self):
        return list(zip(self.slopes.tolist(), self.intercepts.tolist()))

    def piece_index(self, alpha):
        """Index of the piece containing alpha (left-closed/right-open)."""
        return np.searchsorted(self.breakpoints, alpha, side="right")

    def eval(self, alpha):
        a = np.asarray(alpha, dtype=float)
        if np.any(a < 0.0) or np.any(a > 1.0):
            raise ValueError("alpha outside [0, 1]")
        idx = self.piece_index(a)
        out = self.slopes[idx] * a + self.intercepts[idx]
        if a.ndim == 0:
            return float(out)
        return out

    __call__ = eval

    def junction_values(self):
        """(left limit, right value) at each breakpoint; the gap between them
        is the jump size (zero when continuous)."""
        b = self.breakpoints
        left = self.slopes[:-1] * b + self.intercepts[:-1]
        right = self.slopes[1:] * b + self.intercepts[1:]
        return left, right

    def shifted(self, delta):
        """The function plus a constant."""
        return PwlFunction1D(self.breakpoints, self.slopes, self.intercepts + float(delta))


def normalize(f: PwlFunction1D) -> PwlFunction1D:
    """Canonical form: coalesce breakpoints closer than COALESCE_TOL (dropping
    the sliver piece between them) and dissolve junctions whose two sides are
    the same line within tolerance.

    A junction at b with pieces (sl, il) and (sr, ir) is dissolved iff
    |sl - sr| <= 1e-9 * max(1, |sl|, |sr|) and the one-sided values differ by
    at most 1e-9 * max(1, |value|). Idempotent.
    """
    knots = [0.0, *f.breakpoints.tolist(), 1.0]
    pieces = list(zip(f.slopes.tolist(), f.intercepts.tolist()))

    # Pass 1: drop sliver pieces. Absorb leftward except at the left edge.
    changed = True
    while changed and len(pieces) > 1:
        changed = False
        for j in range(len(pieces)):
            if knots[j + 1] - knots[j] <= COALESCE_TOL:
                if j == 0:
                    del pieces[0]
                    del knots[1]
                else:
                    del pieces[j]
                    del knots[j]
                changed = True
                break

    # Pass 2: merge collinear junctions, keeping the left piece's parameters.
    out_pieces = [pieces[0]]
    out_breaks = []
    for j in range(1, len(pieces)):
        b = knots[j]
        sl, il = out_pieces[-1]
        sr, ir = pieces[j]
        vl = sl * b + il
        vr = sr * b + ir
        tol_slope = MERGE_RTOL * max(1.0, abs(sl), abs(sr))
        tol_value = MERGE_RTOL * max(1.0, abs(vl), abs(vr))
        if abs(sl - sr) <= tol_slope and abs(vl - vr) <= tol_value:
            continue
        out_breaks.append(b)
        out_pieces.append((sr, ir))
    slopes, intercepts = zip(*out_pieces)
    return PwlFunction1D(np.array(out_breaks), np.array(slopes), np.array(intercepts))


def affine_combine(coeffs, fs, bias=0.0) -> PwlFunction1D:
    """Normalized sum(coeffs[i] * fs[i]) + bias."""
    coeffs = [float(c) for c in coeffs]
    fs = list(fs)
    if len(coeffs) != len(fs) or not fs:
        raise ValueError("coeffs and fs must have the same nonzero length")
    merged = np.unique(np.concatenate([f.breakpoints for f in fs]))
    if merged.size:
        keep = np.concatenate(([True], np.diff(merged) > COALESCE_TOL))
        merged = merged[keep]
    starts = np.concatenate(([0.0], merged))
    ends = np.concatenate((merged, [1.0]))
    mids = 0.5 * (starts + ends)
    slopes = np.zeros_like(mids)
    intercepts = np.full_like(mids, float(bias))
    for c, f in zip(coeffs, fs):
        idx = f.piece_index(mids)
        slopes += c * f.slopes[idx]
        intercepts += c * f.intercepts[idx]
    return normalize(PwlFunction1D(merged, slopes, intercepts))


def _cut_by_activation(act, f: PwlFunction1D):
    """Subdivide [0, 1] so the activation state of f is constant per cell.

    Yields (lo, hi, state, slope, intercept) with (slope, intercept) the piece
    of f on the cell. States at crossing points follow the right-continuous
    boundary convention of the activation combined with the carrier's
    left-closed pieces.
    """
    boundaries = np.asarray(act.boundaries, dtype=float)
    knots = np.concatenate(([0.0], f.breakpoints, [1.0]))
    cells = []
    for j in range(f.n_pieces):
        lo, hi = knots[j], knots[j + 1]
        if hi <= lo:
            continue
        a, c = float(f.slopes[j]), float(f.intercepts[j])
        if a == 0.0 or boundaries.size == 0:
            state = int(act.state_of(c if a == 0.0 else a * 0.5 * (lo + hi) + c))
            cells.append((lo, hi, state, a, c))
            continue
        with np.errstate(over="ignore"):  # near-zero slopes push crossings to inf
            crossings = (boundaries - c) / a
        crossings = np.sort(crossings[(crossings > lo) & (crossings < hi)])
        cuts = np.concatenate(([lo], crossings, [hi]))
        for k in range(cuts.size - 1):
            clo, chi = float(cuts[k]), float(cuts[k + 1])
            if chi <= clo:
                continue
            state = int(act.state_of(a * 0.5 * (clo + chi) + c))
            cells.append((clo, chi, state, a, c))
    return cells


def apply_activation(act, f: PwlFunction1D) -> PwlFunction1D:
    """Normalized composition act(f(alpha)).

    New breakpoints appear only where f crosses an activation boundary or at
    existing breakpoints of f; jumps of the activation become jump breakpoints.
    """
    if not hasattr(act, "boundaries"):
        from .errors import UnsupportedActivationError

        raise UnsupportedActivationError(
            f"activation {getattr(act, 'name', act)!r} has no piecewise-linear structure"
        )
    breaks = []
    slopes = []
    intercepts = []
    act_slopes = np.asarray(act.slopes, dtype=float)
    act_intercepts = np.asarray(act.intercepts, dtype=float)
    for lo, hi, state, a, c in _cut_by_activation(act, f):
        m = act_slopes[state - 1]
        q = act_intercepts[state - 1]
        if lo > 0.0:
            breaks.append(lo)
        slopes.append(m * a)
        intercepts.append(m * c + q)
    return normalize(PwlFunction1D(np.array(breaks), np.array(slopes), np.array(intercepts)))


def state_trace(act, f: PwlFunction1D):
    """Activation states of f over [0, 1] as a list of (state, lo, hi).

    Intervals tile [0, 1] in order and adjacent intervals always carry distinct
    states, so every interior junction is a state change. The number of
    junctions is the raw per-unit transition count.
    """
    trace = []
    for lo, hi, state, _, _ in _cut_by_activation(act, f):
        if trace and trace[-1][0] == state:
            trace[-1] = (state, trace[-1][1], hi)
        else:
            trace.append((state, lo, hi))
    return trace


def state_change_points(trace) -> np.ndarray:
    """Alphas in (0, 1) where the traced state changes."""
    return np.array([lo for _, lo, _ in trace[1:]], dtype=float)
