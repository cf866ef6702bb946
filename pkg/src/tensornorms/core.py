"""Dense tensors over R/C with mode-wise Kronecker products and direct sums.

The objects here are deliberately small: an immutable :class:`TensorSpace`
describing mode dimensions and scalar field, dense coordinate tensors,
rank-one ("simple") tensors in a normalized form, and tuples of tensors
sharing a space.  Everything downstream (norm solvers, certificates, the
law suite) is built from the handful of operations in this module.

Conventions fixed once and used everywhere:

* entries are stored row-major, last index fastest;
* the mode-wise Kronecker product maps index pairs ``(i_e, j_e)`` of the
  factors to the composite index ``i_e * m_e + j_e``, which reproduces the
  classical matrix Kronecker product at order 2;
* the Frobenius inner product is conjugate-linear in its *second*
  argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

REAL = "real"
COMPLEX = "complex"
FIELDS = (REAL, COMPLEX)

GAUSSIAN = "gaussian"
UNIT_SPHERE = "unit_sphere"

UNIT_TOL = 1e-12

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class SpaceMismatchError(ValueError):
    """Raised when operands live in incompatible tensor spaces."""


def _readonly(arr):
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TensorSpace:
    """Mode dimensions plus scalar field of a tensor product space."""

    dims: tuple
    field: str = REAL

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if not dims:
            raise ValueError("a tensor space needs at least one mode")
        if any(n < 1 for n in dims):
            raise ValueError(f"mode dimensions must be positive, got {dims}")
        if self.field not in FIELDS:
            raise ValueError(f"field must be one of {FIELDS}, got {self.field!r}")
        object.__setattr__(self, "dims", dims)

    @property
    def order(self):
        return len(self.dims)

    @property
    def total_dim(self):
        return int(np.prod(self.dims, dtype=np.int64))

    @property
    def dtype(self):
        return np.complex128 if self.field == COMPLEX else np.float64

    def kron(self, other):
        _check_compatible(self, other)
        return TensorSpace(
            tuple(n * m for n, m in zip(self.dims, other.dims)), self.field
        )

    def direct_sum(self, other):
        _check_compatible(self, other)
        return TensorSpace(
            tuple(n + m for n, m in zip(self.dims, other.dims)), self.field
        )

    def __str__(self):
        return "x".join(str(n) for n in self.dims) + f" ({self.field})"


def _check_compatible(a, b):
    """Same order and field; the precondition for mode-wise products."""
    if a.order != b.order:
        raise SpaceMismatchError(f"order mismatch: {a.order} vs {b.order}")
    if a.field != b.field:
        raise SpaceMismatchError(f"field mismatch: {a.field} vs {b.field}")


def _check_same_space(a, b):
    if a.space != b.space:
        raise SpaceMismatchError(f"space mismatch: {a.space} vs {b.space}")


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """A coordinate tensor with explicit entries, shaped like its space."""

    space: TensorSpace
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=self.space.dtype)
        if arr.shape != self.space.dims:
            if arr.size != self.space.total_dim:
                raise ValueError(
                    f"expected {self.space.total_dim} entries for space "
                    f"{self.space}, got {arr.size}"
                )
            arr = arr.reshape(self.space.dims)
        else:
            arr = arr.copy()
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        object.__setattr__(self, "data", _readonly(arr))

    @classmethod
    def from_array(cls, arr, field=None):
        arr = np.asarray(arr)
        if field is None:
            field = COMPLEX if np.iscomplexobj(arr) else REAL
        return cls(TensorSpace(arr.shape, field), arr)

    @property
    def flat(self):
        return self.data.reshape(-1)

    def is_zero(self):
        return not np.any(self.data)

    def __add__(self, other):
        _check_same_space(self, other)
        return DenseTensor(self.space, self.data + other.data)

    def __sub__(self, other):
        _check_same_space(self, other)
        return DenseTensor(self.space, self.data - other.data)

    def __mul__(self, scalar):
        return DenseTensor(self.space, self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return DenseTensor(self.space, -self.data)


def zeros(space):
    return DenseTensor(space, np.zeros(space.dims, dtype=space.dtype))


@dataclass(frozen=True, eq=False)
class SimpleTensor:
    """A pure tensor ``scale * phase * f_1 (x) ... (x) f_d`` in normal form.

    Factors are unit vectors; the magnitude lives in ``scale`` (nonnegative)
    and the sign/phase in ``phase`` (unit modulus, +-1 over the reals).
    A *unit* simple tensor has ``scale == 1``.
    """

    space: TensorSpace
    factors: tuple
    scale: float
    phase: complex

    def __post_init__(self):
        if len(self.factors) != self.space.order:
            raise ValueError("one factor per mode required")
        facs = []
        for e, f in enumerate(self.factors):
            f = np.asarray(f, dtype=self.space.dtype)
            if f.shape != (self.space.dims[e],):
                raise SpaceMismatchError(
                    f"factor {e} has length {f.size}, expected {self.space.dims[e]}"
                )
            nrm = np.linalg.norm(f)
            if abs(nrm - 1.0) > 1e-9 and self.scale != 0.0:
                raise ValueError(f"factor {e} is not unit norm (|f| = {nrm})")
            facs.append(_readonly(f.copy()))
        if self.scale < 0:
            raise ValueError("scale must be nonnegative")
        if abs(abs(self.phase) - 1.0) > 1e-9:
            raise ValueError("phase must have unit modulus")
        object.__setattr__(self, "factors", tuple(facs))
        object.__setattr__(self, "scale", float(self.scale))
        phase = complex(self.phase)
        if self.space.field == REAL:
            phase = 1.0 if phase.real >= 0 else -1.0
        object.__setattr__(self, "phase", phase)

    @classmethod
    def from_factors(cls, factors, field=REAL, weight=1.0):
        """Canonicalize raw vectors: norms go to scale, signs to phase."""
        space = TensorSpace(tuple(len(np.asarray(f)) for f in factors), field)
        scale = abs(weight)
        phase = 1.0 if weight == 0 else weight / abs(weight)
        unit = []
        for f in factors:
            f = np.asarray(f, dtype=space.dtype)
            nrm = np.linalg.norm(f)
            if nrm == 0.0:
                scale = 0.0
                break
            scale *= nrm
            unit.append(f / nrm)
        if scale == 0.0:
            unit = [_basis_vector(n, space.dtype) for n in space.dims]
            phase = 1.0
        if field == REAL:
            sgn = np.sign(phase.real if isinstance(phase, complex) else phase)
            phase = sgn if sgn != 0 else 1.0
        return cls(space, tuple(unit), scale, phase)

    def assemble(self):
        return assemble_simple(self)

    @property
    def is_unit(self):
        return abs(self.scale - 1.0) <= UNIT_TOL


def _basis_vector(n, dtype):
    e = np.zeros(n, dtype=dtype)
    e[0] = 1.0
    return e


@dataclass(frozen=True, eq=False)
class TensorTuple:
    """An ordered tuple of dense tensors sharing one space."""

    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a tensor tuple needs at least one member")
        for m in members[1:]:
            _check_same_space(members[0], m)
        object.__setattr__(self, "members", members)

    @property
    def space(self):
        return self.members[0].space

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def is_zero(self):
        return all(m.is_zero() for m in self.members)


# ---------------------------------------------------------------------------
# operations


def assemble_simple(v):
    """Expand a simple tensor to dense coordinates.

    The entry at ``(i_1, ..., i_d)`` is ``scale * phase * prod_e f_e[i_e]``.
    """
    arr = reduce(np.multiply.outer, v.factors)
    arr = arr * (v.scale * v.phase)
    if v.space.field == REAL:
        arr = arr.real
    return DenseTensor(v.space, arr)


def frobenius_inner(S, T):
    """Frobenius inner product, conjugate-linear in the second argument."""
    _check_same_space(S, T)
    val = np.vdot(T.data, S.data)  # sum S * conj(T)
    if S.space.field == REAL:
        return float(val.real) if np.iscomplexobj(val) else float(val)
    return complex(val)


def frobenius_norm(S):
    return float(np.linalg.norm(S.data.reshape(-1)))


def kron_vertical(S, T):
    """Mode-wise Kronecker product of two order-d tensors.

    The result lives on dims ``(n_e * m_e)``; the entry at composite index
    ``k_e = i_e * m_e + j_e`` (per mode) is ``S[i] * T[j]``.
    """
    _check_compatible(S.space, T.space)
    d = S.space.order
    out = np.tensordot(S.data, T.data, axes=0)
    perm = [ax for e in range(d) for ax in (e, d + e)]
    out = out.transpose(perm).reshape(S.space.kron(T.space).dims)
    return DenseTensor(S.space.kron(T.space), out)


def kron_simple(u, v):
    """Kronecker product of simple tensors; the result is again simple."""
    _check_compatible(u.space, v.space)
    factors = tuple(np.kron(a, b) for a, b in zip(u.factors, v.factors))
    space = u.space.kron(v.space)
    return SimpleTensor(space, factors, u.scale * v.scale, u.phase * v.phase)


def direct_sum(S, T):
    """Block embedding of S and T on dims ``(n_e + m_e)``; mixed blocks zero."""
    _check_compatible(S.space, T.space)
    space = S.space.direct_sum(T.space)
    out = np.zeros(space.dims, dtype=space.dtype)
    out[tuple(slice(0, n) for n in S.space.dims)] = S.data
    out[tuple(slice(n, n + m) for n, m in zip(S.space.dims, T.space.dims))] = T.data
    return DenseTensor(space, out)


def embed_simple(v, other, side):
    """Embed a simple tensor into the direct sum with ``other``'s space.

    ``side='left'`` pads each factor with trailing zeros (the tensor lands
    in the first block), ``side='right'`` with leading zeros.
    """
    _check_compatible(v.space, other)
    factors = []
    for f, m in zip(v.factors, other.dims):
        pad = np.zeros(m, dtype=f.dtype)
        if side == "left":
            factors.append(np.concatenate([f, pad]))
        elif side == "right":
            factors.append(np.concatenate([pad, f]))
        else:
            raise ValueError("side must be 'left' or 'right'")
    if side == "left":
        space = v.space.direct_sum(TensorSpace(other.dims, other.field))
    else:
        space = TensorSpace(other.dims, other.field).direct_sum(v.space)
    return SimpleTensor(space, tuple(factors), v.scale, v.phase)


def flatten(S, row_modes):
    """Matricization: ``row_modes`` index the rows, the complement the columns.

    Entries are permuted, never altered, so every flattening is a Frobenius
    isometry.  ``row_modes`` must be a nonempty proper subset of the modes.
    """
    d = S.space.order
    rows = sorted(set(int(e) for e in row_modes))
    if not rows or len(rows) == d:
        raise ValueError("row_modes must be a nonempty proper subset of modes")
    if rows[0] < 0 or rows[-1] >= d:
        raise ValueError(f"row_modes out of range for order {d}")
    cols = [e for e in range(d) if e not in rows]
    mat = S.data.transpose(rows + cols).reshape(
        int(np.prod([S.space.dims[e] for e in rows])), -1
    )
    return DenseTensor(TensorSpace(mat.shape, S.space.field), mat)


def random_tensor(space, seed, dist=GAUSSIAN):
    """Seeded random dense tensor; identical (space, seed, dist) => identical entries."""
    if dist not in (GAUSSIAN, UNIT_SPHERE):
        raise ValueError(f"unknown distribution {dist!r}")
    rng = np.random.default_rng(seed)
    arr = rng.standard_normal(space.dims)
    if space.field == COMPLEX:
        arr = (arr + 1j * rng.standard_normal(space.dims)) / np.sqrt(2.0)
    if dist == UNIT_SPHERE:
        nrm = np.linalg.norm(arr.reshape(-1))
        while nrm == 0.0:  # pragma: no cover - probability zero
            arr = rng.standard_normal(space.dims)
            nrm = np.linalg.norm(arr.reshape(-1))
        arr = arr / nrm
    return DenseTensor(space, arr)


def random_simple(space, seed):
    """Seeded random unit simple tensor (unit gaussian factors)."""
    rng = np.random.default_rng(seed)
    factors = []
    for n in space.dims:
        f = rng.standard_normal(n)
        if space.field == COMPLEX:
            f = f + 1j * rng.standard_normal(n)
        factors.append(f / np.linalg.norm(f))
    return SimpleTensor(space, tuple(factors), 1.0, 1.0)


def spawn_seeds(seed, n):
    """Derive n child seeds deterministically from one 64-bit seed."""
    state = np.random.SeedSequence(seed).generate_state(n, np.uint64)
    return [int(s) for s in state]


def contract_all(data, factors):
    """Inner product of a dense array with the simple tensor of the factors."""
    d = data.ndim
    subs = _LETTERS[:d] + "," + ",".join(_LETTERS[e] for e in range(d)) + "->"
    return complex(np.einsum(subs, data, *[np.conj(f) for f in factors]))


def contract_except(data, factors, mode):
    """Contract every mode but one against conjugated factors.

    Returns the vector ``c`` with ``<S, u> = <c, u_mode>`` when the other
    factors are held fixed.
    """
    d = data.ndim
    subs = (
        _LETTERS[:d]
        + ","
        + ",".join(_LETTERS[e] for e in range(d) if e != mode)
        + "->"
        + _LETTERS[mode]
    )
    return np.einsum(subs, data, *[np.conj(factors[e]) for e in range(d) if e != mode])
