# src/qslink/link_config.py
"""
Experiment configuration.

Values come from, in increasing precedence: the tool config classes, an INI
file, QSLINK_* environment variables and explicit overrides (CLI flags).
"""
import configparser
import logging
import os
from dataclasses import replace
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

from .link_tools.capacity import CapacityConfig
from .link_tools.channel import ChannelConfig, ChannelParams
from .link_tools.core import ConfigError, DomainError, Tolerance
from .link_tools.kinetics import KineticParams, KineticsConfig
from .link_tools.modulation import ModulationConfig
from .link_tools.montecarlo import MonteCarloConfig, SimConfig
from .link_tools.timing import TimingConfig
from .link_tools.transmitter import NodeParams, TransmitterConfig

log = logging.getLogger("qslink.config")


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value not in configparser.ConfigParser.BOOLEAN_STATES:
        raise ValueError(f"not a boolean: {raw!r}")
    return configparser.ConfigParser.BOOLEAN_STATES[value]


def _parse_list(item: Callable[[str], Any]) -> Callable[[str], list]:
    def parse(raw: str) -> list:
        return [item(x.strip()) for x in raw.split(",") if x.strip()]
    return parse


_floats = _parse_list(float)
_ints = _parse_list(int)


def _defaults() -> Dict[str, Dict[str, Tuple[Callable[[str], Any], Any]]]:
    kin, chn, cap = KineticsConfig(), ChannelConfig(), CapacityConfig()
    tim, mod, mc = TimingConfig(), ModulationConfig(), MonteCarloConfig()
    tx = TransmitterConfig()
    return {
        "kinetics": {
            "gamma": (float, kin.GAMMA),
            "kappa": (float, kin.KAPPA),
            "a0": (float, kin.A0),
            "a1": (float, kin.A1),
            "b0": (float, kin.B0),
            "b1": (float, kin.B1),
            "b2": (float, kin.B2),
            "alpha": (float, kin.ALPHA),
            "alpha_from_cascade": (_parse_bool, False),
            "receptors": (int, kin.RECEPTORS),
        },
        "node": {
            "n": (int, tx.BACTERIA),
            "sigma_gamma_rel_sq": (float, tx.GAMMA_REL_SQ),
            "sigma_kappa_rel_sq": (float, tx.KAPPA_REL_SQ),
        },
        "channel": {
            "diffusion": (float, chn.DIFFUSION),
            "distance_um": (float, chn.DISTANCE_UM),
            "sigma_r_rel_sq": (float, chn.DISTANCE_REL_SQ),
            "pulse_duration_s": (float, chn.PULSE_DURATION),
        },
        "capacity": {
            "k_in": (int, cap.K_IN),
            "k_out": (int, cap.K_OUT),
            "gap_bits": (float, cap.GAP_BITS),
            "max_iter": (int, cap.MAX_ITER),
            "amax_grid_nm": (_floats, cap.AMAX_GRID_NM),
            "n_sweep": (_ints, cap.N_SWEEP),
            "sigma0_sweep": (_floats, cap.SIGMA0_SWEEP),
        },
        "timing": {
            "rise_threshold": (float, tim.RISE_THRESHOLD),
            "fall_threshold": (float, tim.FALL_THRESHOLD),
            "reception_concentration_nm": (float, tim.RECEPTION_CONCENTRATION_NM),
            "distance_grid_um": (_floats, tim.DISTANCE_GRID_UM),
            "n_sweep": (_ints, tim.N_SWEEP),
            "a_max_nm": (float, tim.A_MAX_NM),
        },
        "modulation": {
            "m_list": (_ints, mod.M_LIST),
            "amax_grid_nm": (_floats, mod.AMAX_GRID_NM),
            "k_out": (int, mod.K_OUT),
            "one_sided_endpoints": (_parse_bool, mod.ONE_SIDED_ENDPOINTS),
        },
        "montecarlo": {
            "trials": (int, mc.TRIALS),
            "seed": (int, mc.SEED),
            "truncate_probabilities": (_parse_bool, mc.TRUNCATE_PROBABILITIES),
            "chunk_size": (int, mc.CHUNK_SIZE),
            "symbol_trials": (int, mc.SYMBOL_TRIALS),
            "validate_p0": (_floats, mc.VALIDATE_P0),
            "symbol_m": (_ints, mc.SYMBOL_M),
            "symbol_a_max_nm": (float, mc.SYMBOL_A_MAX_NM),
        },
        "output": {
            "threads": (int, 1),
            "no_timestamp": (_parse_bool, False),
            "jsonl": (_parse_bool, False),
        },
    }


# environment variable -> (section, key)
ENV_OVERRIDES = {
    "QSLINK_SEED": ("montecarlo", "seed"),
    "QSLINK_THREADS": ("output", "threads"),
    "QSLINK_TRIALS": ("montecarlo", "trials"),
    "QSLINK_NO_TIMESTAMP": ("output", "no_timestamp"),
}


class LinkConfig:
    """
    Full parameter set of an experiment, grouped by section.

    Read values with ``cfg.get(section, key)``; the parameter records
    (KineticParams, NodeParams, ChannelParams, ...) are built on demand.
    """

    def __init__(self, values: Optional[Dict[str, Dict[str, Any]]] = None):
        self._schema = _defaults()
        self.values = {s: {k: d for k, (_, d) in keys.items()} for s, keys in self._schema.items()}
        for section, keys in (values or {}).items():
            for key, value in keys.items():
                self.set(section, key, value)

    # ---------------- Loading ----------------
    @classmethod
    def load(cls, path: Optional[str] = None, env: Optional[Mapping[str, str]] = None,
             overrides: Optional[Mapping[Tuple[str, str], Any]] = None) -> "LinkConfig":
        cfg = cls()
        if path:
            cfg._read_file(path)
        cfg._apply_env(os.environ if env is None else env)
        for (section, key), value in (overrides or {}).items():
            if value is not None:
                cfg.set(section, key, value)
        cfg.validate()
        return cfg

    def _read_file(self, path: str):
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as ex:
            raise ConfigError(f"cannot read config file {path}: {ex}") from ex
        except configparser.Error as ex:
            raise ConfigError(f"malformed config file {path}: {ex}") from ex
        for section in parser.sections():
            for key, raw in parser.items(section):
                self.set(section, key, raw)
        log.info("[CONFIG] loaded %s", path)

    def _apply_env(self, env: Mapping[str, str]):
        for name, (section, key) in ENV_OVERRIDES.items():
            raw = env.get(name)
            if raw is not None and raw.strip():
                self.set(section, key, raw)
                log.debug("[CONFIG] %s overrides [%s] %s", name, section, key)

    # ---------------- Access ----------------
    def set(self, section: str, key: str, value: Any):
        if section not in self._schema:
            raise ConfigError(f"unknown config section [{section}]")
        if key not in self._schema[section]:
            raise ConfigError(f"unknown config key '{key}' in [{section}]")
        parse, _ = self._schema[section][key]
        if isinstance(value, str):
            try:
                value = parse(value)
            except ValueError as ex:
                raise ConfigError(f"bad value for '{key}' in [{section}]: {ex}") from ex
        self.values[section][key] = value

    def get(self, section: str, key: str) -> Any:
        try:
            return self.values[section][key]
        except KeyError:
            raise ConfigError(f"unknown config key '{key}' in [{section}]") from None

    def validate(self):
        """Build every parameter record once so bad physical values fail at load time."""
        try:
            self.node()
            self.channel()
            self.tolerance()
            self.sim_config()
            for th in (self.get("timing", "rise_threshold"), self.get("timing", "fall_threshold")):
                if not 0.0 < th < 1.0:
                    raise DomainError(f"thresholds must lie in (0, 1), got {th}")
            if any(m < 2 for m in self.get("modulation", "m_list") + self.get("montecarlo", "symbol_m")):
                raise DomainError("every m must be >= 2")
            if any(r <= 0 for r in self.get("timing", "distance_grid_um")):
                raise DomainError("distances must be > 0")
            if any(n < 1 for n in self.get("capacity", "n_sweep") + self.get("timing", "n_sweep")):
                raise DomainError("n must be >= 1")
            if self.get("output", "threads") < 1:
                raise DomainError("threads must be >= 1")
        except (DomainError, TypeError) as ex:
            raise ConfigError(f"invalid configuration: {ex}") from ex

    # ---------------- Parameter records ----------------
    def kinetics(self) -> KineticParams:
        s = self.values["kinetics"]
        fields = dict(gamma=s["gamma"], kappa=s["kappa"], a0=s["a0"], a1=s["a1"], b0=s["b0"],
                      b1=s["b1"], b2=s["b2"], N=s["receptors"])
        if s["alpha_from_cascade"]:
            return KineticParams.from_cascade(**fields)
        return KineticParams(alpha=s["alpha"], **fields)

    def node(self, n: Optional[int] = None) -> NodeParams:
        s = self.values["node"]
        return NodeParams.from_relative(
            n=s["n"] if n is None else n,
            gamma_rel_sq=s["sigma_gamma_rel_sq"],
            kappa_rel_sq=s["sigma_kappa_rel_sq"],
            kinetics=self.kinetics(),
        )

    def channel(self, distance_um: Optional[float] = None) -> ChannelParams:
        s = self.values["channel"]
        return ChannelParams.from_microns(
            s["distance_um"] if distance_um is None else distance_um,
            sigma_r_rel_sq=s["sigma_r_rel_sq"], D=s["diffusion"], t0=s["pulse_duration_s"],
        )

    def tolerance(self) -> Tolerance:
        s = self.values["capacity"]
        return Tolerance(abs=s["gap_bits"], max_iter=s["max_iter"])

    def sim_config(self, trials: Optional[int] = None) -> SimConfig:
        s = self.values["montecarlo"]
        return SimConfig(
            trials=s["trials"] if trials is None else trials,
            seed=s["seed"],
            truncate_probabilities=s["truncate_probabilities"],
            threads=self.values["output"]["threads"],
            chunk_size=s["chunk_size"],
        )

    def symbol_sim_config(self) -> SimConfig:
        s = self.values["montecarlo"]
        return replace(self.sim_config(), trials=min(s["symbol_trials"], s["trials"]))

    @property
    def threads(self) -> int:
        return self.values["output"]["threads"]

    def __repr__(self) -> str:
        return f"LinkConfig({self.values!r})"


def load_config(path: Optional[str] = None, **overrides) -> LinkConfig:
    """Shortcut: ``load_config(path, montecarlo__seed=7)``."""
    flat = {}
    for name, value in overrides.items():
        section, _, key = name.partition("__")
        flat[(section, key)] = value
    return LinkConfig.load(path, overrides=flat)
