"""Randomized verification campaigns.

Each trial draws a layered random network and a random segment from a
CampaignSpec, restricts the network to the segment, and audits every counting
inequality. Trial i is seeded by SeedSequence(master, spawn_key=(i,)), so
results are reproducible individually and independent of worker scheduling;
rows are always emitted in trial order.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .activations import builtin_activation, piece_count
from .bounds import breakpoint_upper_bound
from .netgraph import Segment, depth_profile, random_network
from .report import PASS
from .restriction import audit_transition_inequalities, break_points, restrict, transitions

CSV_HEADER = "# expressivity-auditor v1"
CSV_COLUMNS = (
    "trial", "seed", "n", "t", "n_hidden", "depth", "omega", "B", "N", "bound",
    "breakpoints_le_transitions", "transitions_le_bound", "transition_subadditivity",
    "prefix_monotonicity", "union_bound", "per_unit_transition_cap", "overall",
)
_KIND_TO_COLUMN = {
    "breakpoints-le-transitions": "breakpoints_le_transitions",
    "transitions-le-depth-bound": "transitions_le_bound",
    "transition-subadditivity": "transition_subadditivity",
    "prefix-monotonicity": "prefix_monotonicity",
    "union-bound": "union_bound",
    "per-unit-transition-cap": "per_unit_transition_cap",
}


@dataclass(frozen=True)
class CampaignSpec:
    """Random-network and segment-sampling parameters for one campaign."""

    n_choices: tuple = (1, 2, 3)
    depth_max: int = 4
    width_max: int = 5
    skip_prob: float = 0.3
    weight_bound: float = 1.0
    activations: tuple = ("relu", "hard-tanh")
    segment_lo: float = 0.0
    segment_hi: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "n_choices", tuple(int(v) for v in self.n_choices))
        object.__setattr__(self, "activations", tuple(self.activations))
        if not self.n_choices or min(self.n_choices) < 1:
            raise ValueError("n_choices must list dimensions >= 1")
        if self.depth_max < 1 or self.width_max < 1:
            raise ValueError("depth_max and width_max must be >= 1")
        if not self.activations:
            raise ValueError("need at least one activation name")
        for name in self.activations:
            builtin_activation(name)  # fail fast on unknown names
        if not self.segment_hi > self.segment_lo:
            raise ValueError("need segment_hi > segment_lo")

    @classmethod
    def from_json(cls, doc: dict) -> "CampaignSpec":
        if not isinstance(doc, dict):
            raise ValueError("campaign spec must be a JSON object")
        known = {
            "n_choices", "depth_max", "width_max", "skip_prob", "weight_bound",
            "activations", "segment_box",
        }
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown campaign keys: {sorted(unknown)}")
        kwargs = {k: doc[k] for k in doc if k != "segment_box"}
        if "segment_box" in doc:
            lo, hi = doc["segment_box"]
            kwargs["segment_lo"] = float(lo)
            kwargs["segment_hi"] = float(hi)
        return cls(**kwargs)


@dataclass(frozen=True, eq=False)
class TrialResult:
    trial: int
    seed: int
    n: int
    t: int
    n_hidden: int
    depth: int
    omega: Fraction
    breakpoints: int
    transitions_all: int
    bound: float
    verdicts: dict
    overall: bool


def run_trial(spec: CampaignSpec, master_seed: int, i: int) -> TrialResult:
    rng = np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(i,)))
    act = builtin_activation(spec.activations[i % len(spec.activations)])
    n = int(rng.choice(spec.n_choices))
    depth = int(rng.integers(1, spec.depth_max + 1))
    widths = [int(w) for w in rng.integers(1, spec.width_max + 1, size=depth)]
    net = random_network(
        n, depth, widths=widths, skip_prob=spec.skip_prob,
        weight_bound=spec.weight_bound, activation=act, seed=rng,
    )
    span = spec.segment_hi - spec.segment_lo
    x = spec.segment_lo + rng.random(n) * span
    y = spec.segment_lo + rng.random(n) * span
    while np.linalg.norm(y - x) < 1e-6:
        y = spec.segment_lo + rng.random(n) * span
    r = restrict(net, Segment(x, y))
    reports = audit_transition_inequalities(r)
    verdicts = {rep.kind: rep.verdict == PASS for rep in reports}
    prof = depth_profile(net)
    t = piece_count(act)
    return TrialResult(
        trial=i,
        seed=master_seed,
        n=n,
        t=t,
        n_hidden=len(net.units),
        depth=prof.depth,
        omega=prof.width,
        breakpoints=break_points(r),
        transitions_all=transitions(r, tuple(net.unit_map)),
        bound=breakpoint_upper_bound(t, prof.width, prof.depth),
        verdicts=verdicts,
        overall=all(verdicts.values()),
    )


def run_campaign(spec: CampaignSpec, trials: int, seed: int, threads: int | None = None) -> list:
    """All trial results, in trial order regardless of worker scheduling."""
    if trials < 0:
        raise ValueError("trials must be >= 0")
    if threads is None:
        threads = int(os.environ.get("EXPR_AUDIT_THREADS", "1"))
    if threads > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda i: run_trial(spec, seed, i), range(trials)))
    return [run_trial(spec, seed, i) for i in range(trials)]


def violations(results) -> list:
    return [r for r in results if not r.overall]


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def write_csv(results, fh) -> None:
    """Versioned, byte-deterministic CSV: one comment header line, one column
    line, one row per trial."""
    fh.write(CSV_HEADER + "\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        row = [
            r.trial, r.seed, r.n, r.t, r.n_hidden, r.depth, str(r.omega),
            r.breakpoints, r.transitions_all, repr(r.bound),
        ]
        row.extend(_verdict(r.verdicts[k]) for k in _KIND_TO_COLUMN)
        row.append(_verdict(r.overall))
        writer.writerow(row)
