"""Center-of-mass / relative coordinates for a pair of qudits, the phase-point
product bases, operator words, and lattice hopping.

The pair index (n1, n2) is exchanged with the collective index (nc, nr) by

    nc = (n1 + n2) / 2,   nr = (n1 - n2) / 2        (mod d, /2 = modular half)
    n1 = nc + nr,         n2 = nc - nr,

a bijection because 2 is invertible mod an odd prime.  Collective operators
are obtained by conjugating single-factor operators through this permutation,
so the factorization identities Z1 = Zr Zc, Z2 = Zr^-1 Zc, X1 = Xr^h Xc^h and
X2 = Xr^-h Xc^h (h the modular half of 1) are checkable theorems rather than
definitions.

A lattice point (q, p) is realized by the product state

    |q; cb>_c (x) |p; fourier>_r        ("minus" convention, used for hopping
                                         and line states)

while the "plus" convention puts the Fourier label on the center-of-mass
factor:  |p; fourier>_c (x) |q; cb>_r.  Both families are orthonormal bases
of the pair space and are mutually unbiased with overlap modulus 1/d.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import WordParseError
from .modring import ModInt, Prime
from .schwinger import mub_state, validate_dimension
from .states import Ket, UnitaryOp

__all__ = [
    "PhasePoint",
    "CollectiveIndex",
    "CollectiveOps",
    "HopResult",
    "particle_to_collective",
    "collective_to_particle",
    "collective_permutation",
    "collective_ops",
    "point_state_plus",
    "point_state_minus",
    "parse_word",
    "format_word",
    "word_matrix",
    "local_action",
    "hop",
    "hop_dense",
    "hop_trajectory",
]


@dataclass(frozen=True)
class PhasePoint:
    """A lattice point (q, p) in the d x d phase grid."""

    q: int
    p: int


@dataclass(frozen=True)
class CollectiveIndex:
    nc: int
    nr: int


def _point(point: "PhasePoint | tuple[int, int]", d: int) -> tuple[int, int]:
    if isinstance(point, PhasePoint):
        return point.q % d, point.p % d
    q, p = point
    return int(q) % d, int(p) % d


def particle_to_collective(d: int, n1: int, n2: int) -> CollectiveIndex:
    """(n1, n2) -> (nc, nr) = ((n1+n2)/2, (n1-n2)/2) mod d."""
    prime = Prime(d)
    nc = ModInt(n1 + n2, prime).half()
    nr = ModInt(n1 - n2, prime).half()
    return CollectiveIndex(int(nc), int(nr))


def collective_to_particle(d: int, nc: int, nr: int) -> tuple[int, int]:
    """(nc, nr) -> (n1, n2) = (nc + nr, nc - nr) mod d."""
    Prime(d)
    return (nc + nr) % d, (nc - nr) % d


@lru_cache(maxsize=None)
def _permutation_matrix(d: int) -> np.ndarray:
    mat = np.zeros((d * d, d * d), dtype=np.complex128)
    for n1 in range(d):
        for n2 in range(d):
            idx = particle_to_collective(d, n1, n2)
            mat[idx.nc * d + idx.nr, n1 * d + n2] = 1.0
    mat.setflags(write=False)
    return mat


def collective_permutation(d: int) -> UnitaryOp:
    """Permutation sending particle-flat index n1*d + n2 to nc*d + nr."""
    validate_dimension(d)
    return UnitaryOp(_permutation_matrix(d))


@dataclass(frozen=True)
class CollectiveOps:
    """Clock and shift for the center-of-mass (c) and relative (r) modes,
    expressed as d^2 x d^2 matrices in particle coordinates."""

    xc: UnitaryOp
    zc: UnitaryOp
    xr: UnitaryOp
    zr: UnitaryOp

    def by_name(self, name: str) -> UnitaryOp:
        return {"Xc": self.xc, "Zc": self.zc, "Xr": self.xr, "Zr": self.zr}[name]


@lru_cache(maxsize=None)
def collective_ops(d: int) -> CollectiveOps:
    from .schwinger import clock_z, shift_x

    validate_dimension(d)
    perm = _permutation_matrix(d)
    eye = np.eye(d)
    z, x = clock_z(d).matrix, shift_x(d).matrix

    def conj(op_c: np.ndarray, op_r: np.ndarray) -> UnitaryOp:
        return UnitaryOp(perm.T @ np.kron(op_c, op_r) @ perm)

    return CollectiveOps(
        xc=conj(x, eye), zc=conj(z, eye), xr=conj(eye, x), zr=conj(eye, z)
    )


def _fourier_vector(d: int, p: int) -> np.ndarray:
    return mub_state(d, 0, p).vector.amplitudes


def point_state_plus(d: int, point: "PhasePoint | tuple[int, int]") -> Ket:
    """Fourier state p on the c mode, basis state q on the r mode, mapped back
    to particle coordinates."""
    q, p = _point(point, d)
    perm = _permutation_matrix(d)
    coll = np.kron(_fourier_vector(d, p), Ket.basis(d, q).amplitudes)
    return Ket(perm.T @ coll)


def point_state_minus(d: int, point: "PhasePoint | tuple[int, int]") -> Ket:
    """Basis state q on the c mode, Fourier state p on the r mode, mapped back
    to particle coordinates."""
    q, p = _point(point, d)
    perm = _permutation_matrix(d)
    coll = np.kron(Ket.basis(d, q).amplitudes, _fourier_vector(d, p))
    return Ket(perm.T @ coll)


# -- operator words ----------------------------------------------------------

COLLECTIVE_GENERATORS = ("Xc", "Zc", "Xr", "Zr")
SINGLE_GENERATORS = ("X", "Z")

_FACTOR_RE = re.compile(r"^([A-Za-z]+)(?:\^(-?\d+))?$")


def parse_word(text: str, generators: tuple[str, ...] = COLLECTIVE_GENERATORS) -> list[tuple[str, int]]:
    """Parse a word like ``Xc^2 Xr^6 Zr^-1`` into (generator, power) factors.

    Factors are whitespace-separated; a missing caret means power 1.  The
    empty word parses to the empty list (the identity).
    """
    factors: list[tuple[str, int]] = []
    for token in text.split():
        match = _FACTOR_RE.match(token)
        if match is None or match.group(1) not in generators:
            raise WordParseError(
                f"bad factor {token!r}; expected one of {generators} with optional ^integer"
            )
        power = int(match.group(2)) if match.group(2) is not None else 1
        factors.append((match.group(1), power))
    return factors


def format_word(factors: list[tuple[str, int]]) -> str:
    """Canonical text for a parsed word (explicit powers, single spaces)."""
    return " ".join(f"{name}^{power}" for name, power in factors)


def word_matrix(
    d: int,
    word: "str | list[tuple[str, int]]",
    generators: tuple[str, ...] = COLLECTIVE_GENERATORS,
) -> np.ndarray:
    """Dense matrix of a word, factors multiplied in written order.

    The rightmost factor acts first on a ket, as in ordinary operator
    composition.
    """
    factors = parse_word(word, generators) if isinstance(word, str) else word
    if generators == COLLECTIVE_GENERATORS:
        ops = collective_ops(d)
        base = {name: ops.by_name(name).matrix for name in generators}
        n = d * d
    else:
        from .schwinger import clock_z, shift_x

        base = {"X": shift_x(d).matrix, "Z": clock_z(d).matrix}
        n = d
    mat = np.eye(n, dtype=np.complex128)
    for name, power in factors:
        mat = mat @ np.linalg.matrix_power(base[name], power % d)
    return mat


def local_action(state: Ket, particle: int, word: "str | list[tuple[str, int]]") -> Ket:
    """Apply a single-particle word (generators X, Z) to one side of a pair."""
    import math

    d = math.isqrt(state.dim)
    if d * d != state.dim:
        raise ValueError("local_action expects a two-qudit state")
    w = word_matrix(d, word, SINGLE_GENERATORS)
    if particle == 1:
        full = np.kron(w, np.eye(d))
    elif particle == 2:
        full = np.kron(np.eye(d), w)
    else:
        raise ValueError("particle must be 1 or 2")
    return Ket(full @ state.amplitudes)


# -- lattice hopping ---------------------------------------------------------


@dataclass(frozen=True)
class HopResult:
    """Lattice point plus accumulated phase, as an exact exponent of w."""

    point: PhasePoint
    phase_exponent: int


def hop(
    d: int,
    point: "PhasePoint | tuple[int, int]",
    word: "str | list[tuple[str, int]]",
) -> HopResult:
    """Symbolic action of a collective word on the lattice state
    |q; cb>_c (x) |p; fourier>_r.

    Per generator factor (rightmost first):  Xc^k shifts q by k;  Zr^k shifts
    p by -k;  Zc^k and Xr^k are diagonal and add k*q resp. k*p to the phase
    exponent, evaluated at the current labels.
    """
    validate_dimension(d)
    q, p = _point(point, d)
    factors = parse_word(word) if isinstance(word, str) else word
    phase = 0
    for name, power in reversed(factors):
        if name == "Xc":
            q = (q + power) % d
        elif name == "Zc":
            phase = (phase + power * q) % d
        elif name == "Xr":
            phase = (phase + power * p) % d
        elif name == "Zr":
            p = (p - power) % d
    return HopResult(PhasePoint(q, p), phase % d)


def hop_dense(
    d: int,
    point: "PhasePoint | tuple[int, int]",
    word: "str | list[tuple[str, int]]",
) -> tuple[HopResult, float]:
    """Oracle for :func:`hop`: apply the dense word matrix to the lattice
    state and re-identify the image by overlap search over all d^2 points.

    Returns the identified (point, phase exponent) and the overlap modulus,
    which is 1 exactly when the image is again a lattice state.
    """
    q, p = _point(point, d)
    applied = word_matrix(d, word) @ point_state_minus(d, (q, p)).amplitudes
    best: tuple[float, int, int, complex] = (-1.0, 0, 0, 0j)
    for q2 in range(d):
        for p2 in range(d):
            overlap = np.vdot(point_state_minus(d, (q2, p2)).amplitudes, applied)
            if abs(overlap) > best[0]:
                best = (abs(overlap), q2, p2, overlap)
    fidelity, q2, p2, overlap = best
    exponent = int(round(np.angle(overlap) / (2 * np.pi / d))) % d
    return HopResult(PhasePoint(q2, p2), exponent), float(fidelity)


def hop_trajectory(
    d: int,
    point: "PhasePoint | tuple[int, int]",
    word: "str | list[tuple[str, int]]",
) -> list[tuple[str, HopResult]]:
    """Intermediate lattice states after each factor, rightmost factor first.

    The first entry is ("", start); the last entry equals :func:`hop` on the
    whole word.
    """
    q, p = _point(point, d)
    factors = parse_word(word) if isinstance(word, str) else word
    steps = [("", HopResult(PhasePoint(q, p), 0))]
    done: list[tuple[str, int]] = []
    for factor in reversed(factors):
        done.insert(0, factor)
        steps.append((format_word([factor]), hop(d, (q, p), done)))
    return steps
