"""
Tolerance profiles for the verification suite.

Profiles live in ``profiles.yaml`` next to this module; a user file with the
same layout can be passed instead. Values from the command line override the
profile afterwards.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_PROFILE_FILE = Path(__file__).with_name("profiles.yaml")

REQUIRED_TOLERANCES = (
    "hermite_equation", "riccati", "coupled", "bernoulli", "uncoupling",
    "sturm_liouville", "ladder", "ladder_large_delta", "annihilation",
    "number_operator", "commutator", "orthonormality", "delta_zero",
    "delta_infinity", "composition", "scaling", "ground_state_ode",
    "partner_hamiltonian", "isospectral", "isospectral_vs_sho",
)


@dataclass(frozen=True)
class Profile:
    """One named set of tolerances plus the default sweep parameters."""

    name: str
    tolerances: dict
    deltas: tuple
    ladder_deltas: tuple
    orthonormality_deltas: tuple
    gammas: tuple
    n_max: int
    orthonormality_n_max: int
    hermite_n_max: int
    quadrature_nodes: int
    limit_delta: float
    grid: dict
    partner_grid: dict
    limit_grid: dict
    box: dict
    fd_step: float
    source: str = field(default="", compare=False)

    def tolerance(self, check):
        return self.tolerances[check]


def _read_yaml(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"profile file not found: {path}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed profile file {path}: {e}") from e


def available_profiles(path=None):
    data = _read_yaml(path or DEFAULT_PROFILE_FILE)
    return sorted((data or {}).get("profiles", {}))


def load_profile(name="default", path=None):
    """Load profile ``name`` from ``path`` (the packaged file by default)."""
    path = Path(path) if path else DEFAULT_PROFILE_FILE
    data = _read_yaml(path)
    if not isinstance(data, dict) or "profiles" not in data:
        raise ConfigError(f"{path} has no 'profiles' section")

    profiles = data["profiles"]
    if name not in profiles:
        raise ConfigError(f"unknown profile '{name}' (available: {', '.join(sorted(profiles))})")
    raw = profiles[name]

    tolerances = raw.get("tolerances") or {}
    missing = [key for key in REQUIRED_TOLERANCES if key not in tolerances]
    if missing:
        raise ConfigError(f"profile '{name}' is missing tolerances: {', '.join(missing)}")

    try:
        profile = Profile(
            name=name,
            tolerances={key: float(value) for key, value in tolerances.items()},
            deltas=tuple(float(d) for d in raw["deltas"]),
            ladder_deltas=tuple(float(d) for d in raw["ladder_deltas"]),
            orthonormality_deltas=tuple(float(d) for d in raw["orthonormality_deltas"]),
            gammas=tuple(float(g) for g in raw["gammas"]),
            n_max=int(raw["n_max"]),
            orthonormality_n_max=int(raw["orthonormality_n_max"]),
            hermite_n_max=int(raw["hermite_n_max"]),
            quadrature_nodes=int(raw["quadrature_nodes"]),
            limit_delta=float(raw["limit_delta"]),
            grid=dict(raw["grid"]),
            partner_grid=dict(raw["partner_grid"]),
            limit_grid=dict(raw["limit_grid"]),
            box=dict(raw["box"]),
            fd_step=float(raw["fd_step"]),
            source=str(path),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"profile '{name}' in {path} is malformed: {e}") from e

    logger.debug("Loaded profile %s from %s", name, path)
    return profile
