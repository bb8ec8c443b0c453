"""
Run configuration for the growfrag command line.

A configuration file is flat ``key = value`` text:

    # reference parameter set
    gamma = 0.8
    theta = 2
    t_frac = 0.9, 0.99, 0.999
    cells = 4000
    tol.pde_l1 = 0.03

Lists are comma separated, ``#`` starts a comment, and tolerances are set
with ``tol.<check name>``. Unknown keys are rejected.
"""

import logging
import os
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from .errors import ConfigError, GrowFragError
from .grid import SPACINGS, RadialGrid
from .mellin import ContourSpec
from .model import ProblemParams, make_params

logger = logging.getLogger('growfrag.config')

CONFIG_ENV_VAR = "GROWFRAG_CONFIG"

DEFAULT_TOLERANCES = {
    "roots": 1e-14,
    "phi_infimum": 1e-8,
    "omega_forms": 1e-10,
    "omega_roots": 1e-10,
    "positivity": 1e-12,
    "front_jump": 1e-10,
    "profile": 1e-3,
    "initial": 1e-6,
    "ode_residual": 1e-6,
    "ode_ratio": 0.2,
    "ode_root": 1e-8,
    "beta": 1e-9,
    "reassembly": 1e-10,
    "forward": 1e-6,
    "inverse": 1e-4,
    "weak": 1e-5,
    "weak_far": 1e-10,
    "pde_l1": 0.03,
    "order_dev": 0.2,
    "first_moment": 0.02,
    "front_cells": 3.0,
    "atom_ode": 1e-8,
    "blowup": 1e-3,
    "log_rate": 1e-3,
}

_FLOAT_KEYS = ("gamma", "theta", "x_min", "x_max", "s0", "height")
_INT_KEYS = ("cells", "nodes", "jobs")
_LIST_KEYS = ("t", "t_frac", "r")
_TEXT_KEYS = ("spacing", "output_path")
_CONTOUR_KEYS = ("s0", "height", "nodes")


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs; times are absolute once resolved."""

    gamma: float = 0.8
    theta: float = 2.0
    t: Tuple[float, ...] = ()
    t_frac: Tuple[float, ...] = ()
    r: Tuple[float, ...] = (0.5, 1.0, 2.0, 3.3)
    x_min: float = 1e-3
    x_max: float = 10.0
    cells: int = 4000
    spacing: str = "log-uniform"
    contour: ContourSpec = field(default_factory=ContourSpec)
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_path: Optional[str] = None
    jobs: int = 1

    def params(self) -> ProblemParams:
        return make_params(self.gamma, self.theta)

    def times(self) -> List[float]:
        """Absolute times: explicit ones first, then fractions of 1/gamma."""
        return list(self.t) + [frac / self.gamma for frac in self.t_frac]

    def grid(self) -> RadialGrid:
        return RadialGrid.build(self.x_min, self.x_max, self.cells, self.spacing)

    def tolerance(self, name: str) -> float:
        return self.tolerances[name]

    def with_overrides(self, **overrides) -> "RunConfig":
        """Copy with every non-None override applied; contour keys rebuild the contour."""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        contour_args = {k: overrides.pop(k) for k in _CONTOUR_KEYS if k in overrides}
        if contour_args:
            overrides["contour"] = replace(self.contour, **contour_args)
        return replace(self, **overrides)

    def validate(self) -> "RunConfig":
        """
        Check the configuration before any computation.

        Raises:
            ConfigError: If any value violates its precondition
        """
        try:
            self.params()
            self.grid()
        except (GrowFragError, ValueError) as e:
            raise ConfigError(str(e)) from e
        for t in self.times():
            if not 0 <= self.gamma * t < 1:
                raise ConfigError(f"time {t} outside [0, {1.0 / self.gamma})")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"Unknown tolerance names: {sorted(unknown)}")
        return self


def _parse_value(key: str, text: str, lineno: int):
    try:
        if key in _FLOAT_KEYS:
            return float(text)
        if key in _INT_KEYS:
            return int(text)
        if key in _LIST_KEYS:
            return tuple(float(item) for item in text.split(",") if item.strip())
        if key.startswith("tol."):
            return float(text)
    except ValueError as e:
        raise ConfigError(f"line {lineno}: bad value for {key}: {text!r}") from e
    if key in _TEXT_KEYS:
        if key == "spacing" and text not in SPACINGS:
            raise ConfigError(f"line {lineno}: spacing must be one of {SPACINGS}, got {text!r}")
        return text
    raise ConfigError(f"line {lineno}: unknown key {key!r}")


def parse_config_text(text: str, base: Optional[RunConfig] = None) -> RunConfig:
    """Apply ``key = value`` lines to ``base`` (defaults when None)."""
    base = base or RunConfig()
    values = {}
    tolerances = dict(base.tolerances)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        parsed = _parse_value(key, value, lineno)
        if key.startswith("tol."):
            name = key[len("tol."):]
            if name not in DEFAULT_TOLERANCES:
                raise ConfigError(f"line {lineno}: unknown tolerance {name!r}")
            tolerances[name] = parsed
        else:
            values[key] = parsed

    return base.with_overrides(tolerances=tolerances, **values)


def load_config(path: Optional[str] = None) -> RunConfig:
    """
    Load a RunConfig from ``path``, or from $GROWFRAG_CONFIG when path is None.

    Returns:
        The parsed configuration, or the defaults when no file is named

    Raises:
        ConfigError: If the file cannot be read or contains a bad entry
    """
    path = path or os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return RunConfig()
    try:
        with open(path, 'r') as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"Cannot read configuration {path}: {e}") from e
    logger.info(f"Loaded configuration from {path}")
    return parse_config_text(text)
