"""
Cell-centred radial grids on (0, inf) and real functions sampled on them.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

SPACINGS = ("log-uniform", "uniform")


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """
    Finite-volume grid: ``edges`` has one more entry than ``centers``.

    Log-uniform grids put each centre at the geometric mean of its edges,
    uniform grids at the midpoint.
    """

    edges: np.ndarray
    centers: np.ndarray
    spacing: str

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        centers = np.asarray(self.centers, dtype=float)
        if self.spacing not in SPACINGS:
            raise ValueError(f"Unknown grid spacing: {self.spacing}")
        if edges.ndim != 1 or edges.size < 2:
            raise ValueError("A grid needs at least two edges")
        if edges[0] <= 0 or not np.all(np.diff(edges) > 0):
            raise ValueError("Grid edges must be positive and strictly increasing")
        if centers.shape != (edges.size - 1,):
            raise ValueError(f"Expected {edges.size - 1} centres, got {centers.size}")
        if not np.all((centers > edges[:-1]) & (centers < edges[1:])):
            raise ValueError("Every centre must lie inside its cell")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "centers", centers)

    @classmethod
    def log_uniform(cls, x_min: float, x_max: float, cells: int) -> "RadialGrid":
        edges = np.geomspace(x_min, x_max, cells + 1)
        return cls(edges=edges, centers=np.sqrt(edges[:-1] * edges[1:]), spacing="log-uniform")

    @classmethod
    def uniform(cls, x_min: float, x_max: float, cells: int) -> "RadialGrid":
        edges = np.linspace(x_min, x_max, cells + 1)
        return cls(edges=edges, centers=0.5 * (edges[:-1] + edges[1:]), spacing="uniform")

    @classmethod
    def build(cls, x_min: float, x_max: float, cells: int, spacing: str = "log-uniform") -> "RadialGrid":
        """Construct a grid from its configuration tuple."""
        if not 0 < x_min < x_max:
            raise ValueError(f"Need 0 < x_min < x_max, got ({x_min}, {x_max})")
        if cells < 1:
            raise ValueError(f"Need at least one cell, got {cells}")
        if spacing == "log-uniform":
            return cls.log_uniform(x_min, x_max, cells)
        if spacing == "uniform":
            return cls.uniform(x_min, x_max, cells)
        raise ValueError(f"Unknown grid spacing: {spacing}")

    @property
    def size(self) -> int:
        return self.centers.size

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def x_min(self) -> float:
        return float(self.edges[0])

    @property
    def x_max(self) -> float:
        return float(self.edges[-1])

    def locate(self, x: float) -> int:
        """Index of the cell containing x (clipped to the grid)."""
        return int(np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, self.size - 1))

    def power_integrals(self, r: float) -> np.ndarray:
        """Exact cell integrals of x^r."""
        if abs(r + 1.0) < 1e-14:
            return np.log(self.edges[1:] / self.edges[:-1])
        return (self.edges[1:] ** (r + 1.0) - self.edges[:-1] ** (r + 1.0)) / (r + 1.0)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Cell values of a density on a RadialGrid."""

    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.centers.shape:
            raise ValueError(
                f"Expected {self.grid.size} values, got array of shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("GridFunction values must be finite")
        object.__setattr__(self, "values", values)

    def l1_norm(self, mask: Optional[np.ndarray] = None) -> float:
        weights = np.abs(self.values) * self.grid.widths
        if mask is not None:
            weights = weights[mask]
        return float(np.sum(weights))

    def moment(self, r: float) -> float:
        """Integral of x^r f(x) with f piecewise constant on the cells."""
        return float(np.sum(self.values * self.grid.power_integrals(r)))
