"""Largest U-eigenvalue (spectral radius) of a complex tensor.

Shifted higher-order power iteration with Gauss-Seidel mode sweeps and
multiple random starts.  With ``A`` the stored tensor and ``x`` the iterates,
one sweep is::

    for i in modes:
        x_i <- normalize(lam * A(conj x_1, .., skip i, .., conj x_n) + alpha * x_i)
    lam <- conj(A)(x_1, ..., x_n)

The maximizing product state for ``A`` is ``conj(x)``, after a phase fix that
makes the overlap real.  All starts run as one numpy batch.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .tensor_core import (
    BatchContractor,
    ProductState,
    StateTensor,
    frobenius_norm,
    is_symmetric,
)

DEGENERATE_OVERLAP = 1e-14
MAX_RESEEDS = 32


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    alpha: float = 1.0
    tol: float = 1e-10
    max_iters: int = 5000
    restarts: int = 64
    seed: int = 0
    symmetric_mode: bool = False

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters!r}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts!r}")


@dataclass(frozen=True)
class SolveResult:
    sigma: float
    closest: ProductState
    iterations: tuple[int, ...]
    converged: tuple[bool, ...]
    best_start: int
    lambda_trace: Optional[tuple[float, ...]] = field(default=None, repr=False)

    @property
    def gme(self) -> float:
        from .bounds import gme_from_sigma

        return gme_from_sigma(self.sigma)

    @property
    def best_converged(self) -> bool:
        return self.converged[self.best_start]


def _random_unit(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_product(dims, rng: np.random.Generator) -> ProductState:
    """Product state with independent standard complex Gaussian factors, normalized."""
    return ProductState(tuple(_random_unit(rng, d) for d in dims))


def _start_rng(seed: int, start: int, attempt: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, start, attempt])


def _prepare(t: StateTensor) -> np.ndarray:
    a = t.array
    if not np.all(np.isfinite(a)):
        raise NumericError("tensor has non-finite entries")
    nrm = frobenius_norm(t)
    if nrm == 0:
        raise ValueError("zero tensor has no maximal overlap")
    return a / nrm


def _phase_align_change(new: np.ndarray, old: np.ndarray) -> np.ndarray:
    """Per-row ``min_theta |new - e^{i theta} old|``."""
    c = (old.conj() * new).sum(axis=1)
    mag = np.abs(c)
    ph = np.ones_like(c)
    nz = mag > 0
    ph[nz] = c[nz] / mag[nz]
    diff = new - ph[:, None] * old
    return np.sqrt((diff.real**2 + diff.imag**2).sum(axis=1))


def _unit_rows(h: np.ndarray) -> np.ndarray:
    return h / np.sqrt((h.real**2 + h.imag**2).sum(axis=1, keepdims=True))


def _sweep_batch(con, con_bar, xs, lam, cfg):
    """Run iterations for a batch of starts; returns updated state and diagnostics."""
    n = len(con.dims)
    R = lam.shape[0]
    iters = np.zeros(R, dtype=int)
    conv = np.zeros(R, dtype=bool)
    trace = [np.abs(lam)]
    active = np.arange(R)
    for k in range(1, cfg.max_iters + 1):
        xa = [x[active] for x in xs]
        la = lam[active]
        old = [x.copy() for x in xa]
        if cfg.symmetric_mode:
            xc = [xa[0].conj()] * n
            g = sum(con.all_but(xc, i) for i in range(n)) / n
            v = _unit_rows(la[:, None] * g + cfg.alpha * xa[0])
            xa = [v] * n
        else:
            xc = [x.conj() for x in xa]
            for i in range(n):
                xa[i] = _unit_rows(la[:, None] * con.all_but(xc, i) + cfg.alpha * xa[i])
                xc[i] = xa[i].conj()
        new_lam = con_bar.full(xa)
        if not np.all(np.isfinite(new_lam)):
            raise NumericError("iteration produced a non-finite overlap")
        change = np.max([_phase_align_change(xa[i], old[i]) for i in range(n)], axis=0)
        dlam = np.abs(new_lam - la)
        done = (dlam <= cfg.tol * np.maximum(1.0, np.abs(new_lam))) & (change <= cfg.tol)
        for j in range(n):
            xs[j][active] = xa[j]
        lam[active] = new_lam
        iters[active] = k
        full_trace = trace[-1].copy()
        full_trace[active] = np.abs(new_lam)
        trace.append(full_trace)
        conv[active[done]] = True
        active = active[~done]
        if active.size == 0:
            break
    return xs, lam, iters, conv, np.array(trace)


def _initial_batch(con_bar, dims, cfg, starts):
    """Starting factors and lam_0, reseeding any start with vanishing lam_0.

    ``starts`` is a list of product states (or None to draw from the seeded
    stream of each start index).
    """
    n = len(dims)
    R = len(starts)
    shared = 1 if cfg.symmetric_mode else n
    xs = [np.empty((R, d), dtype=complex) for d in dims]
    for r, s in enumerate(starts):
        if s is None:
            rng = _start_rng(cfg.seed, r)
            vecs = [_random_unit(rng, dims[0])] * n if shared == 1 else [_random_unit(rng, d) for d in dims]
        else:
            vecs = list(s.factors)
        for j in range(n):
            xs[j][r] = vecs[j]
    lam = con_bar.full(xs)
    for r in range(R):
        attempt = 1
        while abs(lam[r]) <= DEGENERATE_OVERLAP:
            if attempt > MAX_RESEEDS:
                raise NumericError("could not find a start with nonzero overlap")
            rng = _start_rng(cfg.seed, r, attempt)
            if shared == 1:
                v = _random_unit(rng, dims[0])
                vecs = [v] * n
            else:
                vecs = [_random_unit(rng, d) for d in dims]
            for j in range(n):
                xs[j][r] = vecs[j]
            lam[r] = con_bar.full([x[r : r + 1] for x in xs])[0]
            attempt += 1
    return xs, lam


def _canonical_closest(xs, lam, r, symmetric: bool) -> ProductState:
    """Phase-corrected maximizer for start ``r`` in canonical gauge."""
    n = len(xs)
    lam_r = lam[r]
    rot = np.exp(-1j * np.angle(lam_r) / n)
    # maximizer of |A u| is conj of the phase-corrected iterate
    u = [np.conj(rot * x[r]) for x in xs]
    if symmetric:
        return ProductState(tuple(u))
    total = 1.0 + 0j
    for i in range(n - 1):
        j = int(np.argmax(np.abs(u[i])))
        c = u[i][j]
        ph = np.conj(c) / abs(c) if c != 0 else 1.0
        u[i] = u[i] * ph
        u[i][j] = abs(c)
        total *= ph
    u[-1] = u[-1] * np.conj(total)
    return ProductState(tuple(u))


def _finish(xs, lam, iters, conv, trace, tol, symmetric, record_trace) -> SolveResult:
    sig = np.abs(lam)
    best = float(np.max(sig))
    near = np.flatnonzero(sig >= best - 10 * tol)
    # ties: larger sigma first, then fewer iterations, then lower start index
    r = int(min(near, key=lambda j: (iters[j], j)) if near.size > 1 else near[0])
    closest = _canonical_closest(xs, lam, r, symmetric)
    return SolveResult(
        sigma=float(sig[r]),
        closest=closest,
        iterations=tuple(int(i) for i in iters),
        converged=tuple(bool(c) for c in conv),
        best_start=r,
        lambda_trace=tuple(float(v) for v in trace[:, r]) if record_trace else None,
    )


def _run(t: StateTensor, cfg: SolverConfig, starts, record_trace: bool) -> SolveResult:
    a = _prepare(t)
    con = BatchContractor(a)
    con_bar = BatchContractor(a.conj())
    xs, lam = _initial_batch(con_bar, a.shape, cfg, starts)
    xs, lam, iters, conv, trace = _sweep_batch(con, con_bar, xs, lam, cfg)
    return _finish(xs, lam, iters, conv, trace, cfg.tol, cfg.symmetric_mode, record_trace)


def power_iterate(
    t: StateTensor, start: ProductState, cfg: SolverConfig, record_trace: bool = False
) -> SolveResult:
    """Single-start iteration from ``start`` (its factors are the initial iterates)."""
    if start.dims != t.dims:
        raise ValueError(f"start dims {start.dims} do not match tensor dims {t.dims}")
    if cfg.symmetric_mode and any(not np.array_equal(f, start.factors[0]) for f in start.factors):
        raise ValueError("symmetric mode needs a start with all factors equal")
    return _run(t, cfg, [start], record_trace)


def solve(t: StateTensor, cfg: SolverConfig | None = None, record_trace: bool = False) -> SolveResult:
    """Best of ``cfg.restarts`` seeded random starts.

    Start ``r`` draws from ``default_rng([seed, r])``, so the result depends
    only on the seed and the restart count.
    """
    cfg = cfg or SolverConfig()
    if cfg.symmetric_mode:
        return solve_symmetric(t, cfg, record_trace)
    return _run(t, cfg, [None] * cfg.restarts, record_trace)


def solve_symmetric(
    t: StateTensor, cfg: SolverConfig | None = None, record_trace: bool = False
) -> SolveResult:
    """Same iteration restricted to equal factors (US-eigenvalue)."""
    cfg = cfg or SolverConfig()
    if not is_symmetric(t, tol=1e-12 * max(1.0, frobenius_norm(t))):
        raise ValueError("solve_symmetric needs a symmetric tensor")
    if not cfg.symmetric_mode:
        cfg = SolverConfig(
            alpha=cfg.alpha, tol=cfg.tol, max_iters=cfg.max_iters,
            restarts=cfg.restarts, seed=cfg.seed, symmetric_mode=True,
        )
    return _run(t, cfg, [None] * cfg.restarts, record_trace)

