"""Straight lines in the d x d phase grid and the product states they sum to.

A line is labeled by an orientation b and an offset m.  Orientation ``cb``
is the vertical family q = m; orientation b in 0..d-1 is the family

    p = b*q - m   (mod d).

Each orientation partitions the d^2 grid points into d parallel lines; two
non-parallel lines meet in exactly one point.

The state of a line is the normalized sum of the lattice product states
|q; cb>_c (x) |p; fourier>_r over its d points.  Every such sum collapses to
a rank-1 product in particle coordinates:

* a vertical line gives |m>_1 |m>_2 exactly;
* orientation b, offset m gives  tilde(u) (x) u  with u the quadratic-phase
  state of basis b/4 (mod d) and index m/2 (mod d) on particle 2, global
  phase exactly 1.

With the offset entering as -m, the m/2 rule above holds on the nose; the
same family swept with +m merely renames offsets within each pencil.
Grouping the particle-2 factors by orientation therefore reproduces the full
d+1 unbiased-basis family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collective import PhasePoint, point_state_minus, point_state_plus
from .errors import FactorizationFailed
from .modring import ModInt, Prime
from .schwinger import (
    CB,
    BasisLabel,
    mub_family,
    validate_dimension,
)
from .states import (
    DEFAULT_TOL,
    Ket,
    phase_canonical,
    schmidt_decompose,
)

__all__ = [
    "Line",
    "LineState",
    "LineFactorReport",
    "all_lines",
    "line_points",
    "line_state",
    "schmidt_inversion_check",
    "mub_from_lines",
    "line_factor_table",
]


@dataclass(frozen=True)
class Line:
    """Orientation label b (``cb`` = vertical) and offset m."""

    b: BasisLabel
    m: int


@dataclass(frozen=True)
class LineState:
    line: Line
    vector: Ket


def all_lines(d: int) -> list[Line]:
    """The d+1 pencils of d parallel lines each, in a fixed order."""
    validate_dimension(d)
    return [
        Line(label, m)
        for label in BasisLabel.all_labels(d)
        for m in range(d)
    ]


def line_points(d: int, line: Line) -> list[PhasePoint]:
    """The d grid points of a line.

    Vertical lines are {(m, p) : p}; orientation b gives {(q, b*q - m) : q}.
    """
    validate_dimension(d)
    m = line.m % d
    if line.b.is_cb:
        return [PhasePoint(m, p) for p in range(d)]
    b = line.b.index % d
    return [PhasePoint(q, (b * q - m) % d) for q in range(d)]


def line_state(d: int, line: Line, realization: str = "standard") -> LineState:
    """Normalized sum of the lattice point states along the line.

    The d summed points are orthonormal, so 1/sqrt(d) is the exact
    normalization.  ``realization="alt"`` sums the conjugate point family
    (Fourier label on the center-of-mass mode) instead; the result is still a
    rank-1 product but with the factor roles of the two particles exchanged.
    """
    if realization == "standard":
        point_fn = point_state_minus
    elif realization == "alt":
        point_fn = point_state_plus
    else:
        raise ValueError("realization must be 'standard' or 'alt'")
    total = np.zeros(d * d, dtype=np.complex128)
    for pt in line_points(d, line):
        total += point_fn(d, pt).amplitudes
    return LineState(line, Ket(total / np.sqrt(d)))


def _identify_label(
    d: int, factor: Ket, conjugate: bool, tol: float
) -> tuple[BasisLabel, int, float]:
    """Best-matching (basis, index) for a single-particle factor.

    With ``conjugate=True`` the search runs over the tilde partners of the
    family instead.
    """
    best = (CB, 0, -1.0)
    for basis in mub_family(d):
        for state in basis:
            ref = state.vector.tilde() if conjugate else state.vector
            fid = abs(np.vdot(ref.amplitudes, factor.amplitudes))
            if fid > best[2]:
                best = (state.b, state.m, fid)
    return best


@dataclass(frozen=True)
class LineFactorReport:
    """Measured factorization of one line state."""

    d: int
    line: Line
    second_singular_value: float
    schmidt_rank_ok: bool
    factor1_b: BasisLabel
    factor1_m: int
    factor1_is_tilde: bool
    factor1_fidelity: float
    factor2_b: BasisLabel
    factor2_m: int
    factor2_fidelity: float
    global_phase_exponent: int
    max_error: float


def schmidt_inversion_check(
    d: int, line: Line, tol: float = DEFAULT_TOL, realization: str = "standard"
) -> LineFactorReport:
    """Verify a line state is a product and identify both factors.

    Factor 2 is matched directly against the basis family, factor 1 against
    the tilde partners.  The reported global phase is the overlap phase of
    the line state with the canonicalized product of its factors, as an
    exact exponent of w when it lies on the d-point circle.
    """
    state = line_state(d, line, realization).vector
    decomp = schmidt_decompose(state)
    second = float(decomp.coefficients[1]) if d > 1 else 0.0
    factor1 = phase_canonical(Ket.normalized(decomp.left[0]))
    factor2 = phase_canonical(Ket.normalized(decomp.right[0]))
    b1, m1, fid1 = _identify_label(d, factor1, conjugate=True, tol=tol)
    b2, m2, fid2 = _identify_label(d, factor2, conjugate=False, tol=tol)
    overlap = np.vdot(
        np.kron(factor1.amplitudes, factor2.amplitudes), state.amplitudes
    )
    exponent = int(round(np.angle(overlap) / (2 * np.pi / d))) % d
    pows = np.exp(2j * np.pi * exponent / d)
    phase_error = abs(overlap - pows)
    max_error = float(max(second, 1.0 - fid1, 1.0 - fid2, phase_error))
    return LineFactorReport(
        d=d,
        line=line,
        second_singular_value=second,
        schmidt_rank_ok=second < tol,
        factor1_b=b1,
        factor1_m=m1,
        factor1_is_tilde=True,
        factor1_fidelity=float(fid1),
        factor2_b=b2,
        factor2_m=m2,
        factor2_fidelity=float(fid2),
        global_phase_exponent=exponent,
        max_error=max_error,
    )


def expected_factor2_label(d: int, line: Line) -> tuple[BasisLabel, int]:
    """Predicted particle-2 factor label: (cb, m) for vertical lines, else
    (b/4 mod d, m/2 mod d)."""
    prime = Prime(d)
    if line.b.is_cb:
        return CB, line.m % d
    return (
        BasisLabel(int(ModInt(line.b.index, prime).quarter())),
        int(ModInt(line.m, prime).half()),
    )


def mub_from_lines(d: int, tol: float = DEFAULT_TOL) -> list[list]:
    """Rebuild the full d+1 basis family from line-state factorizations.

    For every line, the particle-2 factor of its product form is extracted
    by singular-value factorization and filed under the predicted label.
    The result has the same [cb, 0, .., d-1] ordering as
    :func:`mesphase.schwinger.mub_family` and agrees with it state by state
    up to a phase.
    """
    from .schwinger import MubState

    validate_dimension(d)
    slots: dict[BasisLabel, list] = {
        label: [None] * d for label in BasisLabel.all_labels(d)
    }
    for line in all_lines(d):
        state = line_state(d, line).vector
        decomp = schmidt_decompose(state)
        if decomp.coefficients[1] > tol:
            raise FactorizationFailed(
                f"line b={line.b} m={line.m} has Schmidt rank > 1 "
                f"(second singular value {decomp.coefficients[1]:.3e})"
            )
        label, m = expected_factor2_label(d, line)
        slots[label][m] = MubState(
            label, m, phase_canonical(Ket.normalized(decomp.right[0]))
        )
    return [slots[label] for label in BasisLabel.all_labels(d)]


def line_factor_table(
    d: int, tol: float = DEFAULT_TOL, realization: str = "standard"
) -> list[dict]:
    """One row per line: measured factor labels, phase and error.

    Rows carry the particle-2 labels (the un-conjugated factor); column
    order matches the CSV the command-line tool emits.
    """
    rows = []
    for line in all_lines(d):
        rep = schmidt_inversion_check(d, line, tol, realization)
        rows.append(
            {
                "d": d,
                "b": str(line.b),
                "m": line.m,
                "schmidt_rank_ok": rep.schmidt_rank_ok,
                "factor_label_b": str(rep.factor2_b),
                "factor_label_m": rep.factor2_m,
                "global_phase_exponent": rep.global_phase_exponent,
                "max_error": rep.max_error,
            }
        )
    return rows
