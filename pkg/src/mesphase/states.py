"""State vectors and operators on one- and two-qudit Hilbert spaces.

Conventions fixed here and relied on everywhere else:

* amplitudes are complex128 and unit-norm within ``DEFAULT_TOL``;
* a two-qudit ket with local dimension d is stored flat with particle 1 as
  the high digit: flat index = n1 * d + n2;
* the inner product is antilinear in the first argument.

This module is plain finite-dimensional linear algebra and does not restrict
the dimension; the odd-prime requirement is enforced by the construction
modules that sit on top of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch

__all__ = [
    "DEFAULT_TOL",
    "Ket",
    "DensityOp",
    "UnitaryOp",
    "SchmidtDecomposition",
    "tensor",
    "partial_trace",
    "schmidt_decompose",
    "is_mes",
    "mes_deviation",
    "equal_up_to_global_phase",
    "phase_canonical",
]

DEFAULT_TOL = 1e-10


def _as_readonly_complex(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if arr.ndim != ndim:
        raise DimMismatch(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _split_dim(dim: int) -> int:
    """Local dimension d of a two-qudit space of total dimension d*d."""
    d = math.isqrt(dim)
    if d * d != dim:
        raise DimMismatch(f"dimension {dim} is not a two-qudit dimension")
    return d


@dataclass(frozen=True)
class Ket:
    """A normalized pure state, immutable after construction."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_readonly_complex(self.amplitudes, 1)
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > DEFAULT_TOL:
            raise ValueError(f"ket is not normalized (norm = {norm!r})")
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def basis(cls, dim: int, n: int) -> "Ket":
        v = np.zeros(dim, dtype=np.complex128)
        v[n % dim] = 1.0
        return cls(v)

    @classmethod
    def normalized(cls, values) -> "Ket":
        arr = np.asarray(values, dtype=np.complex128)
        norm = np.linalg.norm(arr)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(arr / norm)

    def inner(self, other: "Ket") -> complex:
        """<self|other>."""
        if other.dim != self.dim:
            raise DimMismatch(f"dims {self.dim} != {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def tensor(self, other: "Ket") -> "Ket":
        return tensor(self, other)

    def tilde(self) -> "Ket":
        """The state whose computational-basis amplitudes are conjugated."""
        return Ket(np.conj(self.amplitudes))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "re": [float(x) for x in self.amplitudes.real],
            "im": [float(x) for x in self.amplitudes.imag],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Ket":
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data["im"], dtype=float)
        if len(re) != data["dim"] or len(im) != data["dim"]:
            raise DimMismatch("amplitude list length does not match dim")
        return cls(re + 1j * im)


@dataclass(frozen=True)
class DensityOp:
    """A density operator: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        mat = _as_readonly_complex(self.matrix, 2)
        n = mat.shape[0]
        if mat.shape != (n, n):
            raise DimMismatch(f"density matrix must be square, got {mat.shape}")
        if np.abs(mat - mat.conj().T).max() > self.tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(mat) - 1.0) > self.tol:
            raise ValueError("density matrix trace != 1")
        if np.linalg.eigvalsh(mat).min() < -self.tol:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_json(self) -> dict:
        flat = self.matrix.reshape(-1)
        return {
            "dim": self.dim,
            "re": [float(x) for x in flat.real],
            "im": [float(x) for x in flat.imag],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DensityOp":
        n = data["dim"]
        flat = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
        return cls(flat.reshape(n, n))


@dataclass(frozen=True)
class UnitaryOp:
    """A unitary matrix, checked at construction."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        mat = _as_readonly_complex(self.matrix, 2)
        n = mat.shape[0]
        if mat.shape != (n, n):
            raise DimMismatch(f"unitary must be square, got {mat.shape}")
        if np.abs(mat.conj().T @ mat - np.eye(n)).max() > self.tol:
            raise ValueError("matrix is not unitary")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, ket: Ket) -> Ket:
        if ket.dim != self.dim:
            raise DimMismatch(f"dims {self.dim} != {ket.dim}")
        return Ket(self.matrix @ ket.amplitudes)

    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(self.matrix.conj().T, self.tol)

    def __matmul__(self, other: "UnitaryOp") -> "UnitaryOp":
        if other.dim != self.dim:
            raise DimMismatch(f"dims {self.dim} != {other.dim}")
        return UnitaryOp(self.matrix @ other.matrix, self.tol)


def tensor(a: Ket, b: Ket) -> Ket:
    """Product state a (x) b; amplitude at n1*d + n2 is a[n1] * b[n2]."""
    if a.dim != b.dim:
        raise DimMismatch(f"single-particle dims differ: {a.dim} != {b.dim}")
    return Ket(np.kron(a.amplitudes, b.amplitudes))


def partial_trace(state: Ket, keep: int) -> DensityOp:
    """Reduced density operator of particle ``keep`` (1 or 2)."""
    d = _split_dim(state.dim)
    m = state.amplitudes.reshape(d, d)
    if keep == 1:
        rho = m @ m.conj().T
    elif keep == 2:
        rho = (m.conj().T @ m).T
    else:
        raise ValueError("keep must be 1 or 2")
    # symmetrize away float asymmetry before validation
    rho = 0.5 * (rho + rho.conj().T)
    return DensityOp(rho)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """state = sum_k coefficients[k] * left[k] (x) right[k].

    Coefficients are nonnegative and descending; ``left`` and ``right`` hold
    the orthonormal factor vectors as rows.
    """

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        terms = [
            c * np.kron(l, r)
            for c, l, r in zip(self.coefficients, self.left, self.right)
        ]
        return np.sum(terms, axis=0)


def schmidt_decompose(state: Ket) -> SchmidtDecomposition:
    """Singular-value factorization of the d x d amplitude matrix."""
    d = _split_dim(state.dim)
    u, s, vh = np.linalg.svd(state.amplitudes.reshape(d, d))
    return SchmidtDecomposition(coefficients=s, left=u.T, right=vh)


def is_mes(state: Ket, tol: float = DEFAULT_TOL) -> bool:
    """True iff both reduced density operators equal identity/d within tol."""
    d = _split_dim(state.dim)
    m = state.amplitudes.reshape(d, d)
    target = np.eye(d) / d
    return bool(
        np.abs(m @ m.conj().T - target).max() < tol
        and np.abs((m.conj().T @ m).T - target).max() < tol
    )


def mes_deviation(state: Ket) -> float:
    """Largest elementwise deviation of either reduced operator from identity/d."""
    d = _split_dim(state.dim)
    m = state.amplitudes.reshape(d, d)
    target = np.eye(d) / d
    return float(
        max(
            np.abs(m @ m.conj().T - target).max(),
            np.abs((m.conj().T @ m).T - target).max(),
        )
    )


def equal_up_to_global_phase(
    a: Ket, b: Ket, tol: float = DEFAULT_TOL
) -> tuple[bool, float]:
    """Whether |<a|b>| = 1 within tol, together with arg <a|b>."""
    overlap = a.inner(b)
    return bool(abs(abs(overlap) - 1.0) < tol), float(np.angle(overlap))


def phase_canonical(ket: Ket, tol: float = DEFAULT_TOL) -> Ket:
    """Rotate so the first amplitude with modulus > tol is real positive.

    Used for deterministic printing and factor matching only; equality tests
    always go through inner products.
    """
    for amp in ket.amplitudes:
        if abs(amp) > tol:
            return Ket(ket.amplitudes * (abs(amp) / amp))
    return ket
