"""Closed-form quantities: GME from the maximal overlap, the dimension-only
upper bound, and an exact two-party oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .tensor_core import ProductState, StateTensor, ShapeError

SIGMA_SLACK = 1e-9


@dataclass(frozen=True)
class GmeReport:
    sigma: float
    gme: float
    bound: float
    slack: float
    closest: ProductState


def gme_from_sigma(sigma: float) -> float:
    """Distance ``sqrt(2 - 2 sigma)`` to the nearest product state."""
    sigma = float(sigma)
    if not -SIGMA_SLACK <= sigma <= 1 + SIGMA_SLACK:
        raise ValueError(f"overlap {sigma!r} outside [0, 1]")
    sigma = min(max(sigma, 0.0), 1.0)
    return math.sqrt(2.0 - 2.0 * sigma)


def sigma_from_gme(gme: float) -> float:
    return (2.0 - float(gme) ** 2) / 2.0


def _check_dims(dims: Sequence[int]) -> list[int]:
    dims = list(dims)
    if not dims:
        raise ValueError("dims must be non-empty")
    out = []
    for d in dims:
        if isinstance(d, bool) or int(d) != d or d < 1:
            raise ValueError(f"dimension {d!r} is not a positive integer")
        out.append(int(d))
    return out


def min_sigma(dims: Sequence[int]) -> float:
    """Lower bound ``1/sqrt(d_1 ... d_{n-1})`` on the maximal overlap, dims sorted ascending."""
    dims = sorted(_check_dims(dims))
    return 1.0 / math.sqrt(math.prod(dims[:-1]))


def upper_bound(dims: Sequence[int]) -> float:
    """Largest GME any pure state on subsystems of the given dimensions can have.

    The largest dimension is dropped; the order of ``dims`` is irrelevant.
    A single subsystem gives 0.
    """
    return math.sqrt(2.0 - 2.0 * min_sigma(dims))


def bipartite_sigma(t: StateTensor, tol: float = 1e-12, max_iters: int = 10000):
    """Largest singular value of a two-mode tensor and a maximizing product state.

    Power iteration on ``M^H M``; no SVD.  Returns ``(sigma, ProductState)``
    with ``contract_full(t, state) == sigma`` (real, nonnegative).
    """
    if t.n_modes != 2:
        raise ShapeError(f"bipartite_sigma needs a 2-mode tensor, got {t.n_modes} modes")
    m = t.array
    if not np.any(m):
        raise ValueError("zero tensor has no maximal overlap")
    h = m.conj().T @ m
    rng = np.random.default_rng(0)
    v = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
    v /= np.linalg.norm(v)
    for _ in range(max_iters):
        w = h @ v
        nrm = np.linalg.norm(w)
        if nrm == 0:
            # start orthogonal to the row space; rank deficient corner case
            v = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
            v /= np.linalg.norm(v)
            continue
        w /= nrm
        phase = np.vdot(w, v)
        phase = phase / abs(phase) if phase != 0 else 1.0
        change = np.linalg.norm(w * phase - v)
        v = w * phase
        if change <= tol:
            break
    left = m @ v
    sigma = float(np.linalg.norm(left))
    u = np.conj(left / sigma)
    return sigma, ProductState((u, v))


def maximally_entangled_bipartite(d1: int, d2: int) -> StateTensor:
    """Diagonal ``d1 x d2`` state with equal weights ``1/sqrt(d1)``."""
    d1, d2 = _check_dims([d1, d2])
    if d1 > d2:
        raise ValueError(f"need d1 <= d2, got {d1} > {d2}")
    a = np.zeros((d1, d2), dtype=complex)
    a[np.arange(d1), np.arange(d1)] = 1.0 / math.sqrt(d1)
    return StateTensor.from_amplitudes(a)


def gme_report(t: StateTensor, cfg=None) -> GmeReport:
    """Solve for the maximal overlap and package it with the bound."""
    from .solver import SolverConfig, solve, solve_symmetric

    cfg = cfg or SolverConfig()
    res = solve_symmetric(t, cfg) if cfg.symmetric_mode else solve(t, cfg)
    gme = gme_from_sigma(res.sigma)
    bound = upper_bound(t.dims)
    return GmeReport(sigma=res.sigma, gme=gme, bound=bound, slack=bound - gme, closest=res.closest)
