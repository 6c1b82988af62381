"""SINR link model under Rayleigh block fading.

Mean received power on the i -> k link is R(i,k) = P_i * g(i,k) * h(i,k),
with g a constant path gain and h the mean of the exponentially distributed
instantaneous power gain. A transmission from node i succeeds when its SINR
at the intended receiver exceeds `sinr_threshold`; for a set A of
simultaneously active nodes the success probability has the standard
exponential-fading closed form

    S_i(A) = exp(-gamma * noise / R(i,i)) * prod_j 1 / (1 + gamma * R(j,i) / R(i,i))

over the interferers j in A \\ {i}. A Monte Carlo fading oracle
(`success_probability_mc`) provides an independent estimate of the same
quantity for verification.
"""

from dataclasses import dataclass, field

import numpy as np

from .validation import NODES, require_members, require_node, require_positive_int

# all 8 subsets of {1,2,3}, ordered by bit mask (bit i-1 set <=> node i active)
ALL_SETS = tuple(
    frozenset(i for i in NODES if mask >> (i - 1) & 1) for mask in range(8)
)


def set_mask(members) -> int:
    """3-bit mask of an active set (bit i-1 set when node i is active)."""
    members = require_members("members", members)
    mask = 0
    for i in members:
        mask |= 1 << (i - 1)
    return mask


@dataclass(frozen=True)
class LinkBudget:
    """Per-link power model: transmit powers, path gains, mean fading gains.

    Index convention is node-1-based on the public API; internally arrays are
    0-based. path_gain/mean_fading entry [i-1][k-1] describes the i -> k link;
    the diagonal describes each transmitter's link to its own receiver.
    """

    tx_power: np.ndarray  # (3,) watts
    path_gain: np.ndarray  # (3,3) dimensionless, > 0
    mean_fading: np.ndarray  # (3,3) dimensionless, > 0
    noise_power: float  # watts
    sinr_threshold: float  # linear

    def __post_init__(self):
        tx = np.asarray(self.tx_power, dtype=float)
        g = np.asarray(self.path_gain, dtype=float)
        h = np.asarray(self.mean_fading, dtype=float)
        if tx.shape != (3,) or g.shape != (3, 3) or h.shape != (3, 3):
            raise ValueError("tx_power must be (3,), path_gain/mean_fading (3,3)")
        if np.any(tx < 0) or not np.all(np.isfinite(tx)):
            raise ValueError("tx_power entries must be finite and >= 0")
        if np.any(g <= 0) or np.any(h <= 0):
            raise ValueError("path gains and mean fading gains must be > 0")
        if not np.isfinite(self.noise_power) or self.noise_power < 0:
            raise ValueError(f"noise_power must be >= 0, got {self.noise_power}")
        if not np.isfinite(self.sinr_threshold) or self.sinr_threshold <= 0:
            raise ValueError(f"sinr_threshold must be > 0, got {self.sinr_threshold}")
        object.__setattr__(self, "tx_power", tx)
        object.__setattr__(self, "path_gain", g)
        object.__setattr__(self, "mean_fading", h)

    @classmethod
    def symmetric(cls, tx_power=(1.0, 1.0, 0.0), gain=2.0 ** -4, fading=1.0,
                  noise_power=0.0625, sinr_threshold=1.0) -> "LinkBudget":
        """Budget with one common path gain and fading mean on every link."""
        return cls(
            tx_power=np.asarray(tx_power, dtype=float),
            path_gain=np.full((3, 3), float(gain)),
            mean_fading=np.full((3, 3), float(fading)),
            noise_power=float(noise_power),
            sinr_threshold=float(sinr_threshold),
        )

    def with_tx_power(self, node: int, power: float) -> "LinkBudget":
        """Copy of this budget with node's transmit power replaced."""
        node = require_node("node", node)
        if not np.isfinite(power) or power < 0:
            raise ValueError(f"power must be >= 0, got {power}")
        tx = self.tx_power.copy()
        tx[node - 1] = power
        return LinkBudget(tx, self.path_gain, self.mean_fading,
                          self.noise_power, self.sinr_threshold)


def mean_received_power(i: int, k: int, links: LinkBudget) -> float:
    """R(i,k) = P_i * g(i,k) * h(i,k), the mean received power of i at node k."""
    i = require_node("i", i)
    k = require_node("k", k)
    return float(links.tx_power[i - 1]
                 * links.path_gain[i - 1][k - 1]
                 * links.mean_fading[i - 1][k - 1])


def success_probability(i: int, active, links: LinkBudget,
                        inverted_interference: bool = True) -> float:
    """Probability that receiver i decodes given the active set.

    With `inverted_interference=False` the interference product multiplies
    instead of dividing (a physically inconsistent variant kept available for
    comparison; its value can exceed 1 and is not clamped).
    """
    i = require_node("i", i)
    active = require_members("active", active)
    if i not in active:
        raise ValueError(f"node {i} is not in the active set {sorted(active)}")
    r_own = mean_received_power(i, i, links)
    if r_own == 0.0:
        return 0.0
    gamma = links.sinr_threshold
    value = float(np.exp(-gamma * links.noise_power / r_own))
    for j in sorted(active - {i}):
        r_j = mean_received_power(j, i, links)
        factor = 1.0 + gamma * r_j / r_own
        value = value * factor if not inverted_interference else value / factor
    return value


def success_probability_mc(i: int, active, links: LinkBudget,
                           n_draws: int, seed) -> tuple[float, float]:
    """Monte Carlo estimate of success_probability with its standard error.

    Draws instantaneous received powers as independent exponentials with the
    configured means and counts SINR > threshold events. Deterministic given
    the seed. Returns (estimate, binomial standard error).
    """
    i = require_node("i", i)
    active = require_members("active", active)
    if i not in active:
        raise ValueError(f"node {i} is not in the active set {sorted(active)}")
    n_draws = require_positive_int("n_draws", n_draws)
    rng = np.random.default_rng(seed)
    signal = rng.exponential(mean_received_power(i, i, links), size=n_draws)
    interference = np.zeros(n_draws)
    for j in sorted(active - {i}):
        r_j = mean_received_power(j, i, links)
        if r_j > 0.0:
            interference += rng.exponential(r_j, size=n_draws)
    hits = signal > links.sinr_threshold * (links.noise_power + interference)
    p = float(np.mean(hits))
    stderr = float(np.sqrt(p * (1.0 - p) / n_draws))
    return p, stderr


def success_table(i: int, links: LinkBudget) -> np.ndarray:
    """S_i(A) for all 8 active sets, indexed by mask; 0 where i is inactive."""
    i = require_node("i", i)
    table = np.zeros(8)
    for mask, members in enumerate(ALL_SETS):
        if i in members:
            table[mask] = success_probability(i, members, links)
    return table


def average_success_probability(i: int, dist, links: LinkBudget) -> float:
    """Per-attempt success probability of node i, averaged over active sets.

    Conditions the set distribution on node i transmitting: the result is
    sum_{A contains i} S_i(A) * P(A | i in A). Raises if the distribution puts
    no mass on sets containing i (the node never transmits).
    """
    i = require_node("i", i)
    table = success_table(i, links)
    probs = dist.probs
    contains = np.array([i in members for members in ALL_SETS])
    mass = float(probs[contains].sum())
    if mass <= 0.0:
        raise ValueError(f"node {i} never transmits under this distribution")
    return float(np.dot(table, probs) / mass)


def per_slot_success_probability(i: int, dist, links: LinkBudget) -> float:
    """Unconditioned per-slot delivery probability sum_A S_i(A) * P(A).

    Sets not containing i contribute zero (an inactive node cannot deliver),
    so this equals P(i transmits) times the per-attempt value. This is the
    rate that drives the AoI recursion.
    """
    i = require_node("i", i)
    return float(np.dot(success_table(i, links), dist.probs))
