"""Joint activity model: who transmits in a slot, and with what probability.

The incumbent occupies the channel with probability q1. The secondary senses
the channel through an imperfect detector (miss rate pm, false alarm rate pf)
and transmits only when it both believes the channel idle and has a packet
(probability q). The jammer senses the composite signal and fires whenever it
detects activity; its miss rates depend on which transmitters are active
(pm1, pm2, pm12) and it false-alarms on an idle channel with rate pf_j.
The eight resulting active-set probabilities form an EventDistribution; the
jammer's activation probability q3 fixes its per-slot power through the
average power budget.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .link import ALL_SETS, set_mask
from .validation import require_node, require_nonnegative, require_probability

BUDGET_TOL = 1e-12


@dataclass(frozen=True)
class TrafficParams:
    """q1: incumbent occupancy probability; q: secondary packet probability."""

    q1: float
    q: float

    def __post_init__(self):
        require_probability("q1", self.q1)
        require_probability("q", self.q)


@dataclass(frozen=True)
class DetectorErrorProfile:
    """Sensing error rates consumed by the activity model.

    pm/pf belong to the secondary's detector (missing the incumbent /
    false-alarming on an idle channel). pm1/pm2/pm12 are the jammer's miss
    rates against T1 alone, T2 alone, and both combined; pf_j is the jammer's
    idle-channel false alarm rate.
    """

    pm: float
    pf: float
    pm1: float
    pm2: float
    pm12: float
    pf_j: float

    def __post_init__(self):
        for name in ("pm", "pf", "pm1", "pm2", "pm12", "pf_j"):
            require_probability(name, getattr(self, name))
        if self.pm12 > min(self.pm1, self.pm2) + 1e-12:
            # combining two transmit powers raises the SNR at the jammer, so
            # the combined miss rate should not exceed either single one
            warnings.warn(
                "pm12 > min(pm1, pm2): combined-signal detection is worse than "
                "single-signal detection, which is physically inconsistent",
                stacklevel=2,
            )


@dataclass(frozen=True)
class EventDistribution:
    """Probability mass over the 8 active-node subsets, indexed by mask."""

    probs: np.ndarray  # (8,), mask order of link.ALL_SETS

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.shape != (8,):
            raise ValueError(f"probs must have shape (8,), got {probs.shape}")
        if np.any(probs < -1e-12) or np.any(probs > 1 + 1e-12):
            raise ValueError("set probabilities must lie in [0, 1]")
        total = probs.sum()
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"set probabilities must sum to 1, got {total!r}")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_masses(cls, masses: dict) -> "EventDistribution":
        """Build from a {members: probability} mapping; missing sets get 0."""
        probs = np.zeros(8)
        for members, p in masses.items():
            probs[set_mask(members)] = p
        return cls(probs)

    def p(self, members) -> float:
        """Probability of one active set."""
        return float(self.probs[set_mask(members)])

    def masses(self) -> dict:
        return {members: float(self.probs[mask]) for mask, members in enumerate(ALL_SETS)}

    def marginal(self, node: int) -> float:
        """Probability that the given node is active."""
        node = require_node("node", node)
        return float(sum(self.probs[mask] for mask, members in enumerate(ALL_SETS)
                         if node in members))

    def conditioned_on(self, node: int) -> "EventDistribution":
        """Distribution over sets given that the node transmits."""
        node = require_node("node", node)
        mass = self.marginal(node)
        if mass <= 0.0:
            raise ValueError(f"node {node} never transmits under this distribution")
        probs = np.array([self.probs[mask] / mass if node in members else 0.0
                          for mask, members in enumerate(ALL_SETS)])
        return EventDistribution(probs)


def secondary_transmit_probability(traffic: TrafficParams,
                                   errors: DetectorErrorProfile) -> float:
    """q2 = [(1-q1)(1-pf) + q1*pm] * q."""
    q1, q = traffic.q1, traffic.q
    return ((1.0 - q1) * (1.0 - errors.pf) + q1 * errors.pm) * q


def active_set_distribution(traffic: TrafficParams,
                            errors: DetectorErrorProfile) -> EventDistribution:
    """Joint distribution over the 8 active-node subsets.

    The secondary decides first (it senses only the incumbent); the jammer
    then senses the composite of both transmitters.
    """
    q1, q = traffic.q1, traffic.q
    pm, pf = errors.pm, errors.pf
    pm1, pm2, pm12, pf_j = errors.pm1, errors.pm2, errors.pm12, errors.pf_j

    both_tx = q1 * pm * q                      # incumbent on, secondary missed it and has a packet
    sec_only = (1.0 - q1) * (1.0 - pf) * q     # channel idle, sensed idle, packet present
    inc_only = q1 * ((1.0 - pm) + pm * (1.0 - q))
    silent = (1.0 - q1) * (pf + (1.0 - pf) * (1.0 - q))

    return EventDistribution.from_masses({
        frozenset({1, 2, 3}): both_tx * (1.0 - pm12),
        frozenset({1, 2}): both_tx * pm12,
        frozenset({2, 3}): sec_only * (1.0 - pm2),
        frozenset({2}): sec_only * pm2,
        frozenset({1, 3}): inc_only * (1.0 - pm1),
        frozenset({1}): inc_only * pm1,
        frozenset({3}): silent * pf_j,
        frozenset(): silent * (1.0 - pf_j),
    })


def jammer_activation_probability(dist: EventDistribution) -> float:
    """q3: total mass of sets containing the jammer."""
    return dist.marginal(3)


@dataclass(frozen=True)
class JammerBudget:
    """Resolved jamming power: P3 * q3 never exceeds the average budget."""

    pbar_max: float
    p3_selected: float
    q3: float
    active: bool

    def __post_init__(self):
        if self.p3_selected < 0:
            raise ValueError("p3_selected must be >= 0")
        if self.p3_selected * self.q3 > self.pbar_max + BUDGET_TOL:
            raise ValueError("jamming power violates the average budget")


def select_jamming_power(pbar_max: float, q3: float,
                         p3_cap: float | None = None) -> JammerBudget:
    """Full-budget rule: spend the whole average budget, P3 = pbar_max / q3.

    A rising activation probability therefore forces a proportional reduction
    in per-slot power. With q3 = 0 the jammer never fires and P3 = 0. An
    optional instantaneous cap bounds P3 when q3 is tiny.
    """
    pbar_max = require_nonnegative("pbar_max", pbar_max)
    q3 = require_probability("q3", q3)
    if p3_cap is not None:
        p3_cap = require_nonnegative("p3_cap", p3_cap)
    if q3 == 0.0 or pbar_max == 0.0:
        return JammerBudget(pbar_max, 0.0, q3, active=False)
    p3 = pbar_max / q3
    if p3_cap is not None:
        p3 = min(p3, p3_cap)
    return JammerBudget(pbar_max, p3, q3, active=True)
