"""Dense complex tensors and product states.

A :class:`StateTensor` stores the *conjugated* amplitudes of a pure state,
so that contracting it with the coefficient vectors of a product state gives
the overlap ``<psi|phi>`` directly.  Build tensors from amplitudes with
:meth:`StateTensor.from_amplitudes`; that is the only place a conjugation
happens.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-12


class ShapeError(ValueError):
    """Raised when tensor and factor dimensions disagree."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateTensor:
    """Dense complex multi-array ``a[i1, ..., in]`` with per-mode dimensions."""

    array: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.array)
        if arr.ndim < 1:
            raise ShapeError("a state tensor needs at least one mode")
        if any(d < 1 for d in arr.shape):
            raise ShapeError(f"non-positive dimension in {arr.shape}")
        object.__setattr__(self, "array", _freeze(arr))

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateTensor":
        """Tensor of a state given by its amplitudes ``<e_i1...e_in|psi>``."""
        return cls(np.conj(np.asarray(amplitudes, dtype=complex)))

    @classmethod
    def from_entries(cls, dims: Sequence[int], entries) -> "StateTensor":
        dims = tuple(int(d) for d in dims)
        entries = np.asarray(entries, dtype=complex).ravel()
        if entries.size != math.prod(dims):
            raise ShapeError(
                f"{entries.size} entries cannot fill dims {dims} "
                f"(need {math.prod(dims)})"
            )
        return cls(entries.reshape(dims))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.array.shape

    @property
    def n_modes(self) -> int:
        return self.array.ndim

    @property
    def entries(self) -> np.ndarray:
        """Row-major flat view of the entries."""
        return self.array.reshape(-1)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.conj(self.array)

    @property
    def normalized(self) -> bool:
        return abs(frobenius_norm(self) - 1.0) <= NORM_TOL

    def conj(self) -> "StateTensor":
        return StateTensor(np.conj(self.array))

    def __eq__(self, other):
        if not isinstance(other, StateTensor):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.array, other.array)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ProductState:
    """One unit vector per mode."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(_freeze(np.asarray(f).ravel()) for f in self.factors)
        if not factors:
            raise ShapeError("a product state needs at least one factor")
        for k, f in enumerate(factors):
            nrm = np.linalg.norm(f)
            if abs(nrm - 1.0) > NORM_TOL:
                raise ValueError(f"factor {k} has norm {nrm!r}, expected 1")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_vectors(cls, vectors: Iterable, normalize: bool = True) -> "ProductState":
        vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
        if normalize:
            out = []
            for k, v in enumerate(vecs):
                nrm = np.linalg.norm(v)
                if nrm == 0:
                    raise ValueError(f"factor {k} is the zero vector")
                out.append(v / nrm)
            vecs = out
        return cls(tuple(vecs))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.size for f in self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, k):
        return self.factors[k]

    def to_tensor(self) -> StateTensor:
        """Tensor of the product state itself (rank one)."""
        out = np.ones((), dtype=complex)
        for f in self.factors:
            out = np.multiply.outer(out, f)
        return StateTensor.from_amplitudes(out)


def _check_mode(t: StateTensor, k: int) -> None:
    if not 0 <= k < t.n_modes:
        raise IndexError(f"mode {k} out of range for a {t.n_modes}-mode tensor")


def _check_factors(t: StateTensor, factors: Sequence, skip: int | None = None) -> None:
    if len(factors) != t.n_modes:
        raise ShapeError(f"{len(factors)} factors given for a {t.n_modes}-mode tensor")
    for k, (f, d) in enumerate(zip(factors, t.dims)):
        if k != skip and np.shape(f)[-1] != d:
            raise ShapeError(f"mode {k}: factor has length {np.shape(f)[-1]}, tensor dimension is {d}")


def _factors(p) -> Sequence:
    return p.factors if isinstance(p, ProductState) else p


def contract_full(t: StateTensor, p) -> complex:
    """``sum a[i1..in] u1[i1] ... un[in]`` (no conjugation of the factors)."""
    factors = _factors(p)
    _check_factors(t, factors)
    out = t.array
    for f in reversed(factors):
        out = out @ np.asarray(f, dtype=complex)
    return complex(out)


def contract_all_but(t: StateTensor, p, k: int) -> np.ndarray:
    """Contract every mode except ``k``; the mode-``k`` factor is ignored."""
    _check_mode(t, k)
    factors = _factors(p)
    _check_factors(t, factors, skip=k)
    out = np.moveaxis(t.array, k, -1)
    for j in range(t.n_modes):
        if j != k:
            out = np.tensordot(np.asarray(factors[j], dtype=complex), out, axes=(0, 0))
    return out


class BatchContractor:
    """Contract one tensor against many product states at once.

    Factors are passed as arrays of shape ``(R, d_k)``; results have a leading
    batch axis of length ``R``.  Mode-moved copies of the tensor are cached.
    """

    def __init__(self, array: np.ndarray):
        self.array = np.asarray(array, dtype=complex)
        self.dims = self.array.shape
        self._moved = [
            np.ascontiguousarray(np.moveaxis(self.array, k, -1)) for k in range(self.array.ndim)
        ]

    def all_but(self, factors: Sequence[np.ndarray], k: int) -> np.ndarray:
        others = [j for j in range(len(self.dims)) if j != k]
        if not others:
            R = factors[k].shape[0]
            return np.broadcast_to(self.array, (R, self.dims[0])).copy()
        first = others[0]
        R = factors[first].shape[0]
        y = factors[first] @ self._moved[k].reshape(self.dims[first], -1)
        for j in others[1:]:
            y = np.matmul(factors[j][:, None, :], y.reshape(R, self.dims[j], -1))[:, 0, :]
        return y

    def full(self, factors: Sequence[np.ndarray]) -> np.ndarray:
        last = len(self.dims) - 1
        return np.einsum("rd,rd->r", self.all_but(factors, last), factors[last])


def frobenius_norm(t: StateTensor) -> float:
    # fsum is correctly rounded, so the result does not depend on entry order
    e = t.entries
    return math.sqrt(math.fsum((e.real**2 + e.imag**2).tolist()))


def normalize(t: StateTensor) -> StateTensor:
    nrm = frobenius_norm(t)
    if nrm == 0:
        raise ValueError("cannot normalize the zero tensor")
    return StateTensor(t.array / nrm)


def matrix_slice(t: StateTensor, prefix: Sequence[int]) -> np.ndarray:
    """The ``d_{n-1} x d_n`` matrix obtained by fixing the first ``n-2`` indices."""
    if t.n_modes < 2:
        raise ShapeError("matrix slices need at least two modes")
    prefix = tuple(int(i) for i in prefix)
    if len(prefix) != t.n_modes - 2:
        raise IndexError(f"prefix must have {t.n_modes - 2} indices, got {len(prefix)}")
    for k, (i, d) in enumerate(zip(prefix, t.dims)):
        if not 0 <= i < d:
            raise IndexError(f"prefix index {i} out of range for mode {k} (dimension {d})")
    return np.array(t.array[prefix])


def slice_prefixes(t: StateTensor):
    """All index tuples over the first ``n-2`` modes."""
    return product(*(range(d) for d in t.dims[:-2]))


def permute_modes(t: StateTensor, perm: Sequence[int]) -> StateTensor:
    """New tensor whose mode ``j`` is mode ``perm[j]`` of ``t`` (0-based)."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(t.n_modes)):
        raise ValueError(f"{perm} is not a permutation of 0..{t.n_modes - 1}")
    return StateTensor(np.transpose(t.array, perm))


def is_symmetric(t: StateTensor, tol: float = 1e-12) -> bool:
    if len(set(t.dims)) != 1:
        return False
    a = t.array
    for k in range(t.n_modes - 1):
        if np.max(np.abs(a - np.swapaxes(a, k, k + 1)), initial=0.0) > tol:
            return False
    return True
