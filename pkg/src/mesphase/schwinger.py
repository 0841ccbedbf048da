"""Clock and shift unitaries and the d+1 unbiased bases they generate.

For an odd prime d, with w = exp(2*pi*i/d):

* the clock Z has Z|n> = w^n |n>, the shift X has X|n> = |n+1 mod d>;
* the computational basis (label ``cb``) is the Z eigenbasis;
* basis b in 0..d-1 consists of the quadratic-phase states

      |m; b> = (1/sqrt d) sum_n w^(b n^2 - n m) |n>,

  which are eigenstates of w^b X Z^(2b) with eigenvalue w^m.  Basis 0 is the
  plain Fourier basis, i.e. the X eigenbasis.

Every cross-basis overlap in the family has modulus 1/sqrt d.  All phase
exponents are computed as exact integers mod d and only then lifted to the
unit circle, so the amplitudes sit exactly on the d-point circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidDimension, InvalidLabel
from .modring import Prime
from .states import Ket, UnitaryOp

__all__ = [
    "BasisLabel",
    "CB",
    "MubState",
    "omega_powers",
    "clock_z",
    "shift_x",
    "mub_state",
    "mub_basis",
    "mub_family",
    "mub_eigen_residual",
    "mub_eigen_check",
    "tilde",
    "family_to_json",
]


def validate_dimension(d: int) -> int:
    """Odd prime check, reported as an InvalidDimension for interface code."""
    try:
        Prime(d)
    except Exception as exc:
        raise InvalidDimension(f"d={d} must be an odd prime") from exc
    return d


@lru_cache(maxsize=None)
def omega_powers(d: int) -> np.ndarray:
    """w^k for k = 0..d-1, computed once per dimension."""
    pows = np.exp(2j * np.pi * np.arange(d) / d)
    pows.setflags(write=False)
    return pows


@dataclass(frozen=True)
class BasisLabel:
    """One of the d+1 basis labels: ``cb`` or an integer b in 0..d-1.

    ``index=None`` marks the computational basis.
    """

    index: int | None = None

    @property
    def is_cb(self) -> bool:
        return self.index is None

    def __str__(self) -> str:
        return "cb" if self.index is None else str(self.index)

    @classmethod
    def parse(cls, text: str, d: int) -> "BasisLabel":
        token = text.strip().lower()
        if token == "cb":
            return cls(None)
        try:
            b = int(token)
        except ValueError as exc:
            raise InvalidLabel(f"basis label {text!r} is not 'cb' or an integer") from exc
        if not 0 <= b < d:
            raise InvalidLabel(f"basis label {b} out of range 0..{d - 1}")
        return cls(b)

    @staticmethod
    def all_labels(d: int) -> list["BasisLabel"]:
        return [BasisLabel(None)] + [BasisLabel(b) for b in range(d)]


CB = BasisLabel(None)


def _label_index(b: "BasisLabel | int | None", d: int) -> int | None:
    """Normalize a label argument to None (cb) or a reduced residue."""
    if isinstance(b, BasisLabel):
        idx = b.index
    else:
        idx = b
    if idx is None:
        return None
    return int(idx) % d


@dataclass(frozen=True)
class MubState:
    """State m of basis b, with its computational-basis vector."""

    b: BasisLabel
    m: int
    vector: Ket


def clock_z(d: int) -> UnitaryOp:
    """Diagonal unitary with entries w^n."""
    validate_dimension(d)
    return UnitaryOp(np.diag(omega_powers(d)))


def shift_x(d: int) -> UnitaryOp:
    """Cyclic shift |n> -> |n+1>, with |d-1> wrapping to |0>."""
    validate_dimension(d)
    mat = np.zeros((d, d), dtype=np.complex128)
    for n in range(d):
        mat[(n + 1) % d, n] = 1.0
    return UnitaryOp(mat)


def mub_state(d: int, b: "BasisLabel | int | None", m: int) -> MubState:
    """State m of basis b; the computational basis returns e_m."""
    validate_dimension(d)
    idx = _label_index(b, d)
    m = m % d
    if idx is None:
        return MubState(CB, m, Ket.basis(d, m))
    pows = omega_powers(d)
    exponents = [(idx * n * n - n * m) % d for n in range(d)]
    vec = pows[exponents] / np.sqrt(d)
    return MubState(BasisLabel(idx), m, Ket(vec))


def mub_basis(d: int, b: "BasisLabel | int | None") -> list[MubState]:
    return [mub_state(d, b, m) for m in range(d)]


def mub_family(d: int) -> list[list[MubState]]:
    """All d+1 bases, ordered [cb, 0, 1, ..., d-1]; d(d+1) states in total."""
    return [mub_basis(d, label) for label in BasisLabel.all_labels(d)]


def mub_eigen_residual(d: int, b: "BasisLabel | int", m: int) -> float:
    """Residual of the defining eigenrelation of basis b != cb.

    Applies w^b X Z^(2b) to |m; b> and returns the largest amplitude
    deviation from w^m |m; b|>.
    """
    idx = _label_index(b, d)
    if idx is None:
        raise InvalidLabel("the computational basis has no shift-clock eigenrelation")
    state = mub_state(d, idx, m).vector.amplitudes
    pows = omega_powers(d)
    z2b = np.diag(pows[[(2 * idx * n) % d for n in range(d)]])
    applied = pows[idx] * (shift_x(d).matrix @ (z2b @ state))
    return float(np.abs(applied - pows[m % d] * state).max())


def mub_eigen_check(d: int, b: "BasisLabel | int", m: int, tol: float = 1e-10) -> bool:
    return mub_eigen_residual(d, b, m) < tol


def tilde(state: "MubState | Ket") -> Ket:
    """Conjugate the computational-basis amplitudes.

    An involution; computational-basis vectors are their own tilde states.
    """
    ket = state.vector if isinstance(state, MubState) else state
    return ket.tilde()


def family_to_json(d: int) -> dict:
    """The full basis family, annotated with (b, m) labels."""
    return {
        "d": d,
        "bases": [
            {
                "b": str(basis[0].b),
                "states": [{"m": s.m, "ket": s.vector.to_json()} for s in basis],
            }
            for basis in mub_family(d)
        ],
    }
