"""Greedy extremal-correlation clustering and threshold selection.

The clustering loop repeatedly takes the most extremally correlated active
pair as a seed and absorbs every active variable whose correlation to both
seeds clears the threshold tau; a failed seed pair emits a singleton. The
data-driven threshold scans a grid and keeps the greatest tau attaining the
minimal SECO.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .core import ChiMatrix, EmptyGrid, InvalidParam, Partition, PseudoObs, canonicalize
from .estimators import chi_matrix, seco, tau_theory

__all__ = [
    "eco_cluster",
    "ThresholdScan",
    "select_threshold",
    "default_grid",
    "scan_to_csv",
]


def eco_cluster(chi: ChiMatrix, tau: float) -> Partition:
    """Cluster variables whose block maxima stay dependent above tau.

    Loop until no active variable remains: a lone survivor forms its own
    group; otherwise seed on the argmax pair (a, b) of chi over active pairs
    (ties go to the lexicographically smallest pair). If chi(a, b) <= tau,
    emit {a} alone; else emit every active s with
    min(chi(a, s), chi(b, s)) >= tau, reading chi(x, x) from the unit
    diagonal so both seeds always belong. At most d iterations, O(d^3) total.
    """
    if not tau >= 0.0:
        raise InvalidParam("tau must be a nonnegative real")
    labels = kernels.eco_labels(chi.values, float(tau))
    groups: dict[int, list[int]] = {}
    for var, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(var)
    return canonicalize(groups.values(), chi.d)


@dataclass(frozen=True)
class ThresholdScan:
    """SECO profile over a threshold grid plus the selected tau."""

    grid: tuple[float, ...]
    secos: tuple[float, ...]
    n_clusters: tuple[int, ...]
    selected: float

    def __post_init__(self):
        if not self.grid:
            raise EmptyGrid("empty threshold grid")
        if not (len(self.grid) == len(self.secos) == len(self.n_clusters)):
            raise InvalidParam("grid, secos and n_clusters must align")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise InvalidParam("grid must be strictly ascending")
        if self.selected not in self.grid:
            raise InvalidParam("selected tau must be a grid point")


def select_threshold(
    pobs: PseudoObs, grid: Sequence[float], abs_tol: float = 0.0
) -> ThresholdScan:
    """Scan tau over the grid and keep the greatest minimizer of the SECO.

    One chi matrix is computed and shared across grid points. selected is
    the largest tau whose SECO lies within abs_tol of the minimum; the
    default abs_tol = 0 breaks exact ties toward the larger tau.
    """
    taus = [float(t) for t in grid]
    if not taus:
        raise EmptyGrid("empty threshold grid")
    if any(t < 0.0 for t in taus):
        raise InvalidParam("grid values must be nonnegative")
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise InvalidParam("grid must be strictly ascending")
    if abs_tol < 0.0:
        raise InvalidParam("abs_tol must be nonnegative")
    chi = chi_matrix(pobs)
    secos = []
    sizes = []
    for tau in taus:
        part = eco_cluster(chi, tau)
        secos.append(seco(pobs, part))
        sizes.append(part.n_groups)
    cutoff = min(secos) + abs_tol
    selected = max(t for t, s in zip(taus, secos) if s <= cutoff)
    return ThresholdScan(
        grid=tuple(taus),
        secos=tuple(secos),
        n_clusters=tuple(sizes),
        selected=selected,
    )


def default_grid(m: int, d: int, k: int) -> list[float]:
    """41 equally spaced thresholds spanning [0.1, 2.5] times tau_theory(m, d, k)."""
    tau0 = tau_theory(m, d, k)
    return [float(t) for t in np.unique(np.linspace(0.1 * tau0, 2.5 * tau0, 41))]


def scan_to_csv(scan: ThresholdScan) -> str:
    """Columns tau, seco, n_clusters, selected (0/1), one row per grid point."""
    lines = ["tau,seco,n_clusters,selected"]
    for tau, s, size in zip(scan.grid, scan.secos, scan.n_clusters):
        flag = 1 if tau == scan.selected else 0
        lines.append(f"{format(tau, '.17g')},{format(s, '.17g')},{size},{flag}")
    return "\n".join(lines) + "\n"
