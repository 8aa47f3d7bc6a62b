# src/qslink/link_tools/receiver/receiver.py
"""
Receiver node statistics.

The receiver sees A_r = A0 (1 + eps_t - eps_r / r0). Expanding its
entrapment probability to first order around p0 = A0 gamma / (A0 gamma + kappa)
gives

    p_r ~ p0 + p0 (1 - p0) (eps_gamma / gamma - eps_kappa / kappa - eps_r / r0 + eps_t)

and the output Y (activated receptors of the whole node) has mean nN p0 and
variance nN^2 p0^2 (1 - p0)^2 sigma0^2 with
sigma0^2 = sigma_gamma^2/gamma^2 + sigma_kappa^2/kappa^2 + sigma_r^2/r0^2.
"""
import logging
import math
from dataclasses import dataclass

from ..channel import ChannelParams, saturation_concentration
from ..core import SaturationError, require
from ..kinetics import concentration_for_probability, steady_binding_probability
from ..transmitter import NodeParams, relative_output_variance

log = logging.getLogger("qslink.receiver")


@dataclass(frozen=True)
class EntrapmentExpansion:
    """p0 and the first-order coefficients on (eps_gamma/gamma, eps_kappa/kappa, eps_r/r0, eps_t)."""
    p0: float
    gamma: float
    kappa: float
    distance: float
    transmitter: float

    @property
    def coefficients(self):
        return self.gamma, self.kappa, self.distance, self.transmitter


@dataclass(frozen=True)
class ReceiverMoments:
    p0: float
    mean: float
    variance: float
    sigma0_sq: float

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class VarianceSplit:
    """Var(Y) = E(Var(Y | eps_r)) + Var(E(Y | eps_r))."""
    conditional: float
    distance: float

    @property
    def total(self) -> float:
        return self.conditional + self.distance


@dataclass(frozen=True)
class ExactVariance:
    """First-order Var(Y) keeping every term.

    Attributes:
        bernoulli (float): binomial activation of nN receptors.
        parameter (float): per-bacterium gain and dissociation noise.
        distance (float): shared distance error, common to all bacteria.
        transmitter (float): shared transmitter output fluctuation.
    """
    bernoulli: float
    parameter: float
    distance: float
    transmitter: float

    @property
    def total(self) -> float:
        return self.bernoulli + self.parameter + self.distance + self.transmitter


def sigma0_sq(node: NodeParams, ch: ChannelParams) -> float:
    return node.relative_noise + ch.sigma_r_rel_sq


def receiver_entrapment(A_0: float, node: NodeParams, ch: ChannelParams) -> EntrapmentExpansion:
    p0 = steady_binding_probability(A_0, node.kinetics)
    c = p0 * (1.0 - p0)
    return EntrapmentExpansion(p0=p0, gamma=c, kappa=-c, distance=-c, transmitter=c)


def _shape(p0: float, node: NodeParams) -> float:
    return node.n * node.N ** 2 * p0 ** 2 * (1.0 - p0) ** 2


def _transmitter_probability(p0: float, node: NodeParams, ch: ChannelParams) -> float:
    """Transmitter entrapment p_s* that puts the receiver at p0."""
    if p0 >= 1.0:
        return 1.0
    A_0 = concentration_for_probability(p0, node.kinetics)
    a_sat = saturation_concentration(node, ch)
    if A_0 >= a_sat:
        raise SaturationError(f"p0 = {p0:.6g} needs A_0 = {A_0:.6g} nM >= saturation {a_sat:.6g} nM")
    return A_0 / a_sat


def receiver_moments(p0: float, node: NodeParams, ch: ChannelParams,
                     include_transmitter_noise: bool = False) -> ReceiverMoments:
    require(0.0 <= p0 <= 1.0, f"p0 must lie in [0, 1], got {p0}")
    s0 = sigma0_sq(node, ch)
    variance = _shape(p0, node) * s0
    if include_transmitter_noise and 0.0 < p0 < 1.0:
        ps = _transmitter_probability(p0, node, ch)
        variance += _shape(p0, node) * relative_output_variance(ps, node)
    return ReceiverMoments(p0=p0, mean=node.receptors * p0, variance=variance, sigma0_sq=s0)


def variance_split(p0: float, node: NodeParams, ch: ChannelParams) -> VarianceSplit:
    require(0.0 <= p0 <= 1.0, f"p0 must lie in [0, 1], got {p0}")
    shape = _shape(p0, node)
    return VarianceSplit(conditional=shape * node.relative_noise, distance=shape * ch.sigma_r_rel_sq)


def snr_ratio(p0: float, node: NodeParams, sigma0_sq: float) -> float:
    """E(Y) / sqrt(Var(Y)) = sqrt(n) / ((1 - p0) sigma0); inf when the variance vanishes."""
    require(0.0 <= p0 <= 1.0, f"p0 must lie in [0, 1], got {p0}")
    require(sigma0_sq >= 0, f"sigma0_sq must be >= 0, got {sigma0_sq}")
    if p0 == 1.0 or sigma0_sq == 0.0:
        return math.inf
    return math.sqrt(node.n) / ((1.0 - p0) * math.sqrt(sigma0_sq))


def exact_receiver_variance(p0: float, node: NodeParams, ch: ChannelParams,
                            include_transmitter_noise: bool = True,
                            include_distance_noise: bool = True) -> ExactVariance:
    """Var(Y) to first order in the parameter noise, without dropping terms.

    The distance and transmitter fluctuations are shared by every receiver
    bacterium, so they scale with (nN)^2 rather than nN^2.
    """
    require(0.0 <= p0 <= 1.0, f"p0 must lie in [0, 1], got {p0}")
    n, N = node.n, node.N
    c2 = p0 ** 2 * (1.0 - p0) ** 2
    shared = (n * N) ** 2 * c2
    transmitter = 0.0
    if include_transmitter_noise and 0.0 < p0 < 1.0:
        ps = _transmitter_probability(p0, node, ch)
        transmitter = shared * relative_output_variance(ps, node, exact=True)
    return ExactVariance(
        bernoulli=n * N * p0 * (1.0 - p0),
        parameter=n * (N ** 2 - N) * c2 * node.relative_noise,
        distance=shared * ch.sigma_r_rel_sq if include_distance_noise else 0.0,
        transmitter=transmitter,
    )
