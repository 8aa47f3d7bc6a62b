# src/qslink/link_tools/transmitter/transmitter.py
import logging
from dataclasses import dataclass, field
from typing import Tuple

from ..core import reaches, require
from ..kinetics import KineticParams, steady_binding_probability
from .transmitter_config import TransmitterConfig

log = logging.getLogger("qslink.transmitter")

_DEFAULTS = TransmitterConfig()

FIRST_ORDER_LIMIT = _DEFAULTS.FIRST_ORDER_LIMIT


@dataclass(frozen=True)
class NodeParams:
    """A chamber of n identical-in-law bacteria.

    Attributes:
        n (int): bacteria per node.
        sigma_gamma_sq (float): variance of the per-bacterium gain noise.
        sigma_kappa_sq (float): variance of the per-bacterium dissociation noise.
        kinetics (KineticParams): nominal constants shared by the population.
    """
    n: int = _DEFAULTS.BACTERIA
    sigma_gamma_sq: float = 0.0
    sigma_kappa_sq: float = 0.0
    kinetics: KineticParams = field(default_factory=KineticParams)

    def __post_init__(self):
        require(int(self.n) == self.n and self.n >= 1, f"n must be a positive integer, got {self.n}")
        require(self.sigma_gamma_sq >= 0, f"sigma_gamma_sq must be >= 0, got {self.sigma_gamma_sq}")
        require(self.sigma_kappa_sq >= 0, f"sigma_kappa_sq must be >= 0, got {self.sigma_kappa_sq}")
        if reaches(self.relative_noise, FIRST_ORDER_LIMIT):
            log.warning(
                "[TRANSMITTER] relative parameter noise %.3f reaches %.2f; first-order moments are unreliable",
                self.relative_noise, FIRST_ORDER_LIMIT,
            )

    @classmethod
    def from_relative(cls, n: int, gamma_rel_sq: float, kappa_rel_sq: float,
                      kinetics: KineticParams = None) -> "NodeParams":
        """Build from relative variances sigma_gamma^2/gamma^2 and sigma_kappa^2/kappa^2."""
        kinetics = kinetics or KineticParams()
        return cls(
            n=n,
            sigma_gamma_sq=gamma_rel_sq * kinetics.gamma ** 2,
            sigma_kappa_sq=kappa_rel_sq * kinetics.kappa ** 2,
            kinetics=kinetics,
        )

    @property
    def N(self) -> int:
        return self.kinetics.N

    @property
    def receptors(self) -> int:
        """Total receptors nN in the node."""
        return self.n * self.kinetics.N

    @property
    def gamma_rel_sq(self) -> float:
        return self.sigma_gamma_sq / self.kinetics.gamma ** 2

    @property
    def kappa_rel_sq(self) -> float:
        return self.sigma_kappa_sq / self.kinetics.kappa ** 2

    @property
    def relative_noise(self) -> float:
        """sigma_gamma^2/gamma^2 + sigma_kappa^2/kappa^2."""
        return self.gamma_rel_sq + self.kappa_rel_sq

    @property
    def first_order_ok(self) -> bool:
        return not reaches(self.relative_noise, FIRST_ORDER_LIMIT)


@dataclass(frozen=True)
class OutputMoments:
    """Moments of the activated-receptor count X of a node.

    ``variance`` is the dominant-term approximation, ``exact_variance`` keeps
    the per-receptor Bernoulli term and the N^2 - N factor.
    """
    mean: float
    variance: float
    exact_variance: float


def noiseless_entrapment(A_s: float, p: NodeParams) -> float:
    """p_s* for stimulus A_s."""
    return steady_binding_probability(A_s, p.kinetics)


def transmitter_moments(A_s: float, p: NodeParams) -> OutputMoments:
    ps = noiseless_entrapment(A_s, p)
    n, N = p.n, p.N
    shape = ps ** 2 * (1.0 - ps) ** 2 * p.relative_noise
    return OutputMoments(
        mean=n * N * ps,
        variance=n * N ** 2 * shape,
        exact_variance=n * N * ps * (1.0 - ps) + n * (N ** 2 - N) * shape,
    )


def output_rate_stats(A_s: float, p: NodeParams) -> Tuple[float, float]:
    """(mean, variance) of the molecule output rate beta = alpha X."""
    m = transmitter_moments(A_s, p)
    alpha = p.kinetics.alpha
    return alpha * m.mean, alpha ** 2 * m.variance


def relative_output_variance(ps: float, p: NodeParams, exact: bool = False) -> float:
    """Var(X) / E(X)^2 at entrapment probability ps.

    With ``exact`` the Bernoulli term and N^2 - N factor are kept; otherwise
    this is (1 - ps)^2 / n * relative_noise.
    """
    require(0.0 <= ps <= 1.0, f"ps must lie in [0, 1], got {ps}")
    n, N = p.n, p.N
    if not exact:
        return (1.0 - ps) ** 2 / n * p.relative_noise
    if ps == 0.0:
        return float("inf")
    bernoulli = (1.0 - ps) / (n * N * ps)
    parameter = (N ** 2 - N) / N ** 2 * (1.0 - ps) ** 2 / n * p.relative_noise
    return bernoulli + parameter
