"""Maximally entangled two-qudit bases, the universal diagonal state, and
state-relabeling unitaries.

A maximally entangled state (MES) of two d-level systems is a pure state whose
reduced density operators are both identity/d.  Given any two single-particle
bases b and b', the d^2 states

    u(q, p) = (1/sqrt d) sum_m |m; b>_1  w^(-m p)  |m - q; b'>_2

are orthonormal and each maximally entangled; they form a basis of the pair
Hilbert space indexed by the lattice (q, p).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotBijective, NotOrthonormal
from .schwinger import (
    BasisLabel,
    mub_basis,
    mub_state,
    omega_powers,
    validate_dimension,
)
from .states import DEFAULT_TOL, Ket, UnitaryOp

__all__ = [
    "MesBasisElement",
    "RelabelingMap",
    "mes_state",
    "mes_basis",
    "universal_state",
    "build_relabeling",
    "diagonalizer_for",
    "mes_basis_to_json",
]


@dataclass(frozen=True)
class MesBasisElement:
    q: int
    p: int
    b: BasisLabel
    b_prime: BasisLabel
    vector: Ket


def _basis_matrix(d: int, b: "BasisLabel | int | None") -> np.ndarray:
    """Rows are the computational-basis amplitudes of the basis states."""
    return np.array([s.vector.amplitudes for s in mub_basis(d, b)])


def mes_state(
    d: int,
    b: "BasisLabel | int | None",
    b_prime: "BasisLabel | int | None",
    q: int,
    p: int,
) -> MesBasisElement:
    """The (q, p) element of the MES basis built from bases b and b'."""
    validate_dimension(d)
    q, p = q % d, p % d
    rows1 = _basis_matrix(d, b)
    rows2 = _basis_matrix(d, b_prime)
    pows = omega_powers(d)
    vec = np.zeros(d * d, dtype=np.complex128)
    for m in range(d):
        vec += pows[(-m * p) % d] * np.kron(rows1[m], rows2[(m - q) % d])
    state1 = mub_state(d, b, 0)
    state2 = mub_state(d, b_prime, 0)
    return MesBasisElement(q, p, state1.b, state2.b, Ket(vec / np.sqrt(d)))


def mes_basis(
    d: int,
    b: "BasisLabel | int | None",
    b_prime: "BasisLabel | int | None",
) -> list[MesBasisElement]:
    """All d^2 elements, ordered lexicographically by (q, p)."""
    validate_dimension(d)
    rows1 = _basis_matrix(d, b)
    rows2 = _basis_matrix(d, b_prime)
    pows = omega_powers(d)
    label1 = mub_state(d, b, 0).b
    label2 = mub_state(d, b_prime, 0).b
    out = []
    for q in range(d):
        for p in range(d):
            vec = np.zeros(d * d, dtype=np.complex128)
            for m in range(d):
                vec += pows[(-m * p) % d] * np.kron(rows1[m], rows2[(m - q) % d])
            out.append(MesBasisElement(q, p, label1, label2, Ket(vec / np.sqrt(d))))
    return out


def universal_state(d: int, b: "BasisLabel | int | None") -> Ket:
    """(1/sqrt d) sum_m |m; b> (x) tilde(|m; b>).

    Independent of the basis b: summing any orthonormal basis against its
    conjugate partner collapses to the diagonal state (1/sqrt d) sum_n |n>|n>.
    """
    validate_dimension(d)
    rows = _basis_matrix(d, b)
    vec = np.zeros(d * d, dtype=np.complex128)
    for m in range(d):
        vec += np.kron(rows[m], np.conj(rows[m]))
    return Ket(vec / np.sqrt(d))


@dataclass(frozen=True)
class RelabelingMap:
    """A unitary that renames each source state to a computational label.

    ``u`` maps source k to the basis vector of ``targets[k]``.  ``z_bar`` and
    ``x_bar`` are the clock and shift conjugated into the relabeled frame:
    z_bar has the sources as eigenstates with eigenvalues w^targets[k], and
    x_bar steps source k to the source whose target label is targets[k] + 1.
    """

    sources: tuple[Ket, ...]
    targets: tuple[int, ...]
    u: UnitaryOp
    z_bar: UnitaryOp
    x_bar: UnitaryOp


def _check_orthonormal(vectors: np.ndarray, tol: float) -> None:
    n = vectors.shape[0]
    gram = vectors.conj() @ vectors.T
    if vectors.shape[1] != n:
        raise NotOrthonormal(f"{n} vectors cannot span a {vectors.shape[1]}-dim space")
    if np.abs(gram - np.eye(n)).max() > tol:
        raise NotOrthonormal("source states are not an orthonormal basis")


def build_relabeling(
    sources: list[Ket], targets: list[int], tol: float = DEFAULT_TOL
) -> RelabelingMap:
    """Unitary relabeling source k -> |targets[k]>."""
    vecs = np.array([s.amplitudes for s in sources])
    d = vecs.shape[1]
    _check_orthonormal(vecs, tol)
    if sorted(int(t) % d for t in targets) != list(range(d)):
        raise NotBijective(f"targets {targets} are not a bijection onto 0..{d - 1}")
    targets_mod = [int(t) % d for t in targets]
    u = np.zeros((d, d), dtype=np.complex128)
    for src, tgt in zip(vecs, targets_mod):
        u += np.outer(Ket.basis(d, tgt).amplitudes, np.conj(src))
    pows = omega_powers(d)
    z_bar = np.zeros((d, d), dtype=np.complex128)
    x_bar = np.zeros((d, d), dtype=np.complex128)
    by_target = {tgt: src for src, tgt in zip(vecs, targets_mod)}
    for tgt, src in by_target.items():
        z_bar += pows[tgt] * np.outer(src, np.conj(src))
        x_bar += np.outer(by_target[(tgt + 1) % d], np.conj(src))
    return RelabelingMap(
        sources=tuple(sources),
        targets=tuple(targets_mod),
        u=UnitaryOp(u),
        z_bar=UnitaryOp(z_bar),
        x_bar=UnitaryOp(x_bar),
    )


def diagonalizer_for(
    sources: list[Ket], spectrum, tol: float = DEFAULT_TOL
) -> UnitaryOp:
    """The operator F = sum_k |v_k> spectrum[k] <v_k|.

    Each source state becomes an eigenstate with its assigned eigenvalue; for
    a unimodular spectrum the result is unitary.
    """
    vecs = np.array([s.amplitudes for s in sources])
    _check_orthonormal(vecs, tol)
    eigenvalues = np.asarray(spectrum, dtype=np.complex128)
    if eigenvalues.shape != (vecs.shape[0],):
        raise ValueError("spectrum length must match the number of source states")
    f = np.zeros((vecs.shape[1], vecs.shape[1]), dtype=np.complex128)
    for lam, src in zip(eigenvalues, vecs):
        f += lam * np.outer(src, np.conj(src))
    return UnitaryOp(f)


def mes_basis_to_json(
    d: int, b: "BasisLabel | int | None", b_prime: "BasisLabel | int | None"
) -> dict:
    """The annotated MES basis in serialized form."""
    elements = mes_basis(d, b, b_prime)
    return {
        "d": d,
        "b": str(elements[0].b),
        "b_prime": str(elements[0].b_prime),
        "states": [
            {"q": e.q, "p": e.p, "ket": e.vector.to_json()} for e in elements
        ],
    }
