"""Seeded samplers for the generative models used in the experiments.

All copula sampling runs through Marshall-Olkin frailty mixtures. The
outer-power Clayton generator is psi(t) = (1 + t^(1/beta))^(-1/theta); its
frailty is V = Gamma^beta * S with Gamma ~ Gamma(1/theta, 1) and S positive
stable with exponent 1/beta, because

    E[exp(-t V)] = E[ E[exp(-t Gamma^beta S) | Gamma] ]
                 = E[ exp(-(t^(1/beta) Gamma)) ] = psi(t).

For the nested model with a common theta, the inner-to-outer generator
composition psi0^{-1}(psi_g(t)) = t^(beta0/beta_g) is itself a stable
exponent, so each group reuses the global frailty as V_g = V0^(beta_g/beta0)
times an independent stable(beta0/beta_g) factor. A block-maxima limit of
the outer-power Clayton is the logistic (Gumbel-Hougaard) extreme-value
copula, sampled directly from a single stable frailty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    IncompatibleDimension,
    InvalidAlpha,
    InvalidParam,
    Partition,
    SeriesMatrix,
    canonicalize,
)

__all__ = [
    "NestedModel",
    "RepetitionConfig",
    "sample_positive_stable",
    "sample_outer_power_clayton",
    "sample_nested",
    "sample_logistic_ev",
    "repetition_process",
    "build_experiment_model",
]


@dataclass(frozen=True)
class NestedModel:
    """Nested Archimedean dependence: global (theta, beta0) over per-group betas.

    Variables are laid out contiguously, group g covering group_sizes[g]
    consecutive columns. Requires 1 <= beta0 <= min(group_betas) so the
    nesting is a valid copula.
    """

    theta: float
    beta0: float
    group_betas: tuple[float, ...]
    group_sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "group_betas", tuple(float(b) for b in self.group_betas))
        object.__setattr__(self, "group_sizes", tuple(int(s) for s in self.group_sizes))
        if not self.theta > 0.0:
            raise InvalidParam("theta must be positive")
        if not self.beta0 >= 1.0:
            raise InvalidParam("beta0 must be at least 1")
        if len(self.group_betas) != len(self.group_sizes) or not self.group_betas:
            raise InvalidParam("need one beta per group, at least one group")
        if any(b < self.beta0 for b in self.group_betas):
            raise InvalidParam("every group beta must be >= beta0")
        if any(s < 1 for s in self.group_sizes):
            raise InvalidParam("group sizes must be positive")

    @property
    def d(self) -> int:
        return sum(self.group_sizes)

    def partition(self) -> Partition:
        """Ground-truth grouping of the contiguous layout."""
        groups = []
        start = 0
        for size in self.group_sizes:
            groups.append(range(start, start + size))
            start += size
        return canonicalize(groups, start)


@dataclass(frozen=True)
class RepetitionConfig:
    """Stationary random-repetition process: refresh with probability p, else repeat."""

    p: float
    n: int
    model: NestedModel
    margins: str = "uniform"

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise InvalidParam("innovation probability p must lie in (0, 1]")
        if self.n < 1:
            raise InvalidParam("length n must be positive")
        if self.margins not in ("uniform", "frechet"):
            raise InvalidParam("margins must be 'uniform' or 'frechet'")


def sample_positive_stable(alpha: float, rng: np.random.Generator, size=None):
    """Positive alpha-stable draws with Laplace transform exp(-t^alpha).

    Kanter's representation: with U ~ Uniform(0, pi) and E ~ Exp(1),

        S = [sin(alpha U) sin((1-alpha) U)^((1-alpha)/alpha) / sin(U)^(1/alpha)]
            * E^(-(1-alpha)/alpha).

    alpha = 1 is the unit point mass (returned without touching rng). With
    size=None a scalar is returned, otherwise an ndarray of that shape.
    """
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlpha(f"alpha = {alpha} outside (0, 1]")
    if alpha == 1.0:
        return 1.0 if size is None else np.ones(size)
    scalar = size is None
    u = rng.uniform(0.0, np.pi, size=1 if scalar else size)
    e = rng.exponential(1.0, size=1 if scalar else size)
    ratio = (1.0 - alpha) / alpha
    s = (
        np.sin(alpha * u)
        * np.sin((1.0 - alpha) * u) ** ratio
        / np.sin(u) ** (1.0 / alpha)
    ) * e ** (-ratio)
    return float(s[0]) if scalar else s


def sample_outer_power_clayton(
    theta: float, beta: float, dim: int, n: int, rng: np.random.Generator
) -> np.ndarray:
    """n draws from the outer-power Clayton copula on dim variables.

    Marshall-Olkin scheme: V = Gamma^beta * S with Gamma ~ Gamma(1/theta, 1)
    and S ~ stable(1/beta), then U_j = (1 + (E_j / V)^(1/beta))^(-1/theta)
    for iid unit exponentials E_j. beta = 1 recovers the Clayton copula.
    """
    _check_copula_params(theta, beta, dim, n)
    gam = rng.gamma(1.0 / theta, 1.0, size=n)
    s = sample_positive_stable(1.0 / beta, rng, size=n)
    v = gam**beta * s
    e = rng.exponential(1.0, size=(n, dim))
    return (1.0 + (e / v[:, None]) ** (1.0 / beta)) ** (-1.0 / theta)


def sample_nested(model: NestedModel, n: int, rng: np.random.Generator) -> np.ndarray:
    """n draws from the nested model, one column block per group.

    Global frailty V0 = Gamma^beta0 * S0; group g reuses it as
    V_g = V0^(beta_g/beta0) * S_g with S_g ~ stable(beta0/beta_g), which
    degenerates to V_g = V0 when beta_g = beta0. Cross-group pairs follow
    the outer copula, within-group pairs the group copula.
    """
    if n < 1:
        raise InvalidParam("n must be positive")
    theta, beta0 = model.theta, model.beta0
    gam = rng.gamma(1.0 / theta, 1.0, size=n)
    s0 = sample_positive_stable(1.0 / beta0, rng, size=n)
    v0 = gam**beta0 * s0
    out = np.empty((n, model.d))
    start = 0
    for beta_g, size in zip(model.group_betas, model.group_sizes):
        s_g = sample_positive_stable(beta0 / beta_g, rng, size=n)
        v_g = v0 ** (beta_g / beta0) * s_g
        e = rng.exponential(1.0, size=(n, size))
        out[:, start : start + size] = (
            1.0 + (e / v_g[:, None]) ** (1.0 / beta_g)
        ) ** (-1.0 / theta)
        start += size
    return out


def sample_logistic_ev(
    beta: float, dim: int, n: int, rng: np.random.Generator
) -> np.ndarray:
    """n draws from the logistic (Gumbel-Hougaard) extreme-value copula.

    V ~ stable(1/beta), U_j = exp(-(E_j / V)^(1/beta)). Its extremal
    coefficient on any subset of size p is p^(1/beta); beta = 1 gives
    independence.
    """
    _check_copula_params(1.0, beta, dim, n)
    v = sample_positive_stable(1.0 / beta, rng, size=n)
    e = rng.exponential(1.0, size=(n, dim))
    return np.exp(-((e / np.asarray(v)[:, None]) ** (1.0 / beta)))


def _check_copula_params(theta: float, beta: float, dim: int, n: int) -> None:
    if not theta > 0.0:
        raise InvalidParam("theta must be positive")
    if not beta >= 1.0:
        raise InvalidParam("beta must be at least 1")
    if dim < 1 or n < 1:
        raise InvalidParam("dim and n must be positive")


def repetition_process(cfg: RepetitionConfig, rng: np.random.Generator) -> SeriesMatrix:
    """Sample the phi-mixing repetition process as a SeriesMatrix.

    Row 0 is a fresh model draw; row t repeats row t-1 with probability
    1 - p and refreshes otherwise. Implementation draws the n-1 refresh
    indicators first, then all needed innovations in one batch, and expands
    by cumulative indexing. margins='frechet' maps u to -1/log(u).
    """
    n = cfg.n
    if cfg.p >= 1.0 or n == 1:
        vals = sample_nested(cfg.model, n, rng)
    else:
        fresh = rng.random(n - 1) < cfg.p
        rows = np.concatenate([[0], np.cumsum(fresh)])
        innov = sample_nested(cfg.model, int(rows[-1]) + 1, rng)
        vals = innov[rows]
    if cfg.margins == "frechet":
        # u == 1.0 can occur by rounding; nudge below 1 so -1/log stays finite
        vals = -1.0 / np.log(np.minimum(vals, np.nextafter(1.0, 0.0)))
    return SeriesMatrix(vals)


_MULTINOMIAL_WEIGHTS = (0.5, 0.25, 0.125, 0.0625, 0.0625)


def build_experiment_model(
    experiment: str, d: int, beta: float, rng: np.random.Generator
) -> tuple[NestedModel, Partition]:
    """Model and ground-truth partition for the three experiment layouts.

    E1: two equal blocks. E2: five blocks with sizes multinomial(d) over
    weights (1/2, 1/4, 1/8, 1/16, 1/16), redrawn until all five are nonempty.
    E3: the E2 layout on d - 5 variables plus five appended singletons
    (asymptotically independent blocks of size one). All layouts use
    theta = 1 and beta0 = 1.
    """
    if experiment == "E1":
        if d < 2 or d % 2:
            raise IncompatibleDimension("E1 needs an even d >= 2")
        sizes = (d // 2, d // 2)
    elif experiment == "E2":
        if d < 5:
            raise IncompatibleDimension("E2 needs d >= 5")
        sizes = _nonempty_multinomial(d, rng)
    elif experiment == "E3":
        if d < 10:
            raise IncompatibleDimension(
                "E3 needs d >= 10 (five multinomial blocks on d-5 plus five singletons)"
            )
        sizes = _nonempty_multinomial(d - 5, rng) + (1,) * 5
    else:
        raise InvalidParam(f"unknown experiment {experiment!r}")
    model = NestedModel(
        theta=1.0,
        beta0=1.0,
        group_betas=(float(beta),) * len(sizes),
        group_sizes=sizes,
    )
    return model, model.partition()


def _nonempty_multinomial(d: int, rng: np.random.Generator) -> tuple[int, ...]:
    while True:
        sizes = rng.multinomial(d, _MULTINOMIAL_WEIGHTS)
        if sizes.min() >= 1:
            return tuple(int(s) for s in sizes)
