"""Commutativity and set-coherence criteria built from multivariate traces.

The central test: two positive (or merely Hermitian) operators commute if
and only if tr(A^2 B^2) = tr(ABAB).  The difference of the two traces equals
half the squared Hilbert-Schmidt norm of the commutator [A, B], so it is
nonnegative and vanishes exactly at commutativity.  A collection of states
is *set incoherent* (jointly diagonalizable) iff every pair passes.

The remaining criteria here are one-sided or dimension-specific companions:
overlap-polytope facets on three states, Gram-matrix rank of Bloch vectors,
qubit polynomial reductions, and an imaginarity witness bound.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateReferenceError,
    NumericInconsistencyError,
    ShapeError,
)
from .invariants import bargmann_invariant
from .numkernel import chain_product_trace
from .states import (
    GAP_TOL,
    BlochVector,
    PositiveOperator,
    as_matrix,
    bloch_map,
    spectral_profile,
)

__all__ = [
    "COMMUTE_TOL",
    "FACET_TOL",
    "IM_DISCARD_TOL",
    "IM_ERROR_TOL",
    "SET_INCOHERENT",
    "SET_COHERENT",
    "PairGap",
    "CoherenceReport",
    "QubitCriterionResult",
    "GramRankReport",
    "FacetReport",
    "ImaginarityWitness",
    "commutator_gap",
    "set_coherence_decide",
    "reduced_set_coherence",
    "qubit_delta1122",
    "qubit_delta1212",
    "qubit_criterion",
    "qubit_fourth_order",
    "gram_bloch",
    "gram_rank_criterion",
    "c3_facet_check",
    "winc_membership",
    "imaginarity_witness",
]

# Gap threshold is meaningful on an absolute scale: the gap equals half the
# squared Hilbert-Schmidt norm of the commutator, and states have trace <= 1.
COMMUTE_TOL = 1e-10
FACET_TOL = 1e-9
# Fourth-order pair invariants are provably real; residues above the discard
# level signal accumulation noise, above the error level invalid input.
IM_DISCARD_TOL = 1e-10
IM_ERROR_TOL = 1e-8

SET_INCOHERENT = "set_incoherent"
SET_COHERENT = "set_coherent"


def _real_invariant(value: complex, what: str) -> float:
    if abs(value.imag) > IM_ERROR_TOL:
        raise NumericInconsistencyError(
            f"{what} should be real, found imaginary part {value.imag:.3e}"
        )
    return float(value.real)


@dataclass(frozen=True)
class PairGap:
    """Fourth-order invariant gap of one pair of operators.

    ``gap = delta_llkk - delta_lklk >= 0`` always, and ``gap == 0`` exactly
    when the pair commutes.  ``indices`` are 1-based state labels.
    """

    indices: tuple[int, int]
    delta_llkk: float
    delta_lklk: float
    gap: float
    commutes: bool

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "delta_llkk": self.delta_llkk,
            "delta_lklk": self.delta_lklk,
            "gap": self.gap,
            "commutes": self.commutes,
        }


@dataclass(frozen=True)
class CoherenceReport:
    """Pairwise gap table and overall verdict for a state collection.

    ``mode`` is ``"full"`` (all n(n-1)/2 pairs) or ``"reduced"`` (only the
    n-1 pairs against a non-degenerate reference, recorded in ``reference``).
    ``invariant_count`` counts the fourth-order invariants evaluated (two per
    pair).
    """

    n: int
    pairs: tuple[PairGap, ...]
    verdict: str
    mode: str
    reference: int | None
    invariant_count: int

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "pairs": [p.to_dict() for p in self.pairs],
            "verdict": self.verdict,
            "mode": self.mode,
            "invariant_count": self.invariant_count,
        }
        if self.reference is not None:
            out["reference"] = self.reference
        return out


def commutator_gap(
    op1: "PositiveOperator | np.ndarray",
    op2: "PositiveOperator | np.ndarray",
    tol: float = COMMUTE_TOL,
    indices: tuple[int, int] = (1, 2),
) -> PairGap:
    """Decide commutativity of a pair from two fourth-order traces.

    Computes ``delta_llkk = tr(A^2 B^2)`` and ``delta_lklk = tr(ABAB)``;
    the pair commutes iff the two agree.  Positivity of the inputs is not
    required: the identity holds for arbitrary Hermitian operators.

    Parameters
    ----------
    op1, op2 : PositiveOperator or array_like
        Hermitian operators of equal dimension.
    tol : float
        Gap at or below this threshold counts as commuting.
    indices : tuple of int
        1-based labels recorded in the result.
    """
    a, b = as_matrix(op1), as_matrix(op2)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    d_llkk = _real_invariant(chain_product_trace([a, a, b, b]), "tr(A^2 B^2)")
    d_lklk = _real_invariant(chain_product_trace([a, b, a, b]), "tr(ABAB)")
    gap = d_llkk - d_lklk
    return PairGap(
        indices=(int(indices[0]), int(indices[1])),
        delta_llkk=d_llkk,
        delta_lklk=d_lklk,
        gap=gap,
        commutes=bool(gap <= tol),
    )


def set_coherence_decide(
    states: list[PositiveOperator], tol: float = COMMUTE_TOL
) -> CoherenceReport:
    """Full pairwise decision: set incoherent iff every pair commutes."""
    n = len(states)
    if n < 1:
        raise ValueError("need at least one state")
    pairs = []
    for l in range(1, n + 1):
        for k in range(l + 1, n + 1):
            pairs.append(
                commutator_gap(states[l - 1], states[k - 1], tol=tol, indices=(l, k))
            )
    verdict = SET_INCOHERENT if all(p.commutes for p in pairs) else SET_COHERENT
    return CoherenceReport(
        n=n,
        pairs=tuple(pairs),
        verdict=verdict,
        mode="full",
        reference=None,
        invariant_count=2 * len(pairs),
    )


def reduced_set_coherence(
    states: list[PositiveOperator],
    ref_index: int,
    tol: float = COMMUTE_TOL,
    gap_tol: float = GAP_TOL,
) -> CoherenceReport:
    """Reduced decision against a reference with fully non-degenerate spectrum.

    When one state has no repeated eigenvalues, commuting with it forces all
    states onto its eigenbasis, so the n-1 pairs against it decide the whole
    collection with 2(n-1) invariants instead of n(n-1).

    Parameters
    ----------
    states : list of PositiveOperator
    ref_index : int
        1-based label of the reference state.
    tol : float
        Pair-gap commutativity threshold.
    gap_tol : float
        Minimal adjacent eigenvalue gap the reference must exceed.
    """
    n = len(states)
    if not 1 <= ref_index <= n:
        raise ValueError(f"reference index {ref_index} out of range for {n} states")
    profile = spectral_profile(states[ref_index - 1], gap_tol=gap_tol)
    if not profile.non_degenerate:
        raise DegenerateReferenceError(
            f"reference state {ref_index} has degenerate spectrum "
            f"(min adjacent gap {profile.min_gap:.3e} <= {gap_tol:.1e})"
        )
    pairs = []
    for k in range(1, n + 1):
        if k == ref_index:
            continue
        pairs.append(
            commutator_gap(
                states[ref_index - 1], states[k - 1], tol=tol, indices=(ref_index, k)
            )
        )
    verdict = SET_INCOHERENT if all(p.commutes for p in pairs) else SET_COHERENT
    return CoherenceReport(
        n=n,
        pairs=tuple(pairs),
        verdict=verdict,
        mode="reduced",
        reference=ref_index,
        invariant_count=2 * len(pairs),
    )


# --------------------------------------------------------------------------
# Qubit reductions: everything collapses to polynomials in two-state overlaps
# --------------------------------------------------------------------------

def _warn_qubit_ranges(d11: float, d22: float, d12: float) -> None:
    # Estimated overlaps may fall slightly outside; warn, never raise.
    if not (0.5 - 1e-9 <= d11 <= 1 + 1e-9 and 0.5 - 1e-9 <= d22 <= 1 + 1e-9):
        warnings.warn(
            f"purities ({d11}, {d22}) outside the normalized qubit range [1/2, 1]",
            stacklevel=3,
        )
    if not -1e-9 <= d12 <= 1 + 1e-9:
        warnings.warn(
            f"overlap {d12} outside the normalized qubit range [0, 1]",
            stacklevel=3,
        )


def qubit_delta1122(d11: float, d22: float, d12: float) -> float:
    """tr(rho1^2 rho2^2) for normalized qubits, from purities and overlap."""
    _warn_qubit_ranges(d11, d22, d12)
    return d12 + 0.5 * (d11 * d22 - 1.0)


def qubit_delta1212(d11: float, d22: float, d12: float) -> float:
    """tr(rho1 rho2 rho1 rho2) for normalized qubits, from purities and overlap."""
    _warn_qubit_ranges(d11, d22, d12)
    return d12 * d12 + 0.5 * (d11 + d22 - d11 * d22 - 1.0)


@dataclass(frozen=True)
class QubitCriterionResult:
    """Residual of the qubit overlap equality and the commuting verdict."""

    residual: float
    commutes: bool

    def to_dict(self) -> dict:
        return {"residual": self.residual, "commutes": self.commutes}


def qubit_criterion(
    d11: float, d22: float, d12: float, tol: float = COMMUTE_TOL
) -> QubitCriterionResult:
    """Commutativity test for a normalized qubit pair from second-order data.

    The pair commutes iff ``(d12 - 1/2)^2 = (d11 - 1/2)(d22 - 1/2)``; the
    residual returned is the absolute difference of the two sides, which for
    qubits coincides with the fourth-order gap.
    """
    residual = abs((d12 - 0.5) ** 2 - (d11 - 0.5) * (d22 - 0.5))
    return QubitCriterionResult(residual=residual, commutes=bool(residual <= tol))


def _vec3(r: "BlochVector | np.ndarray") -> np.ndarray:
    if isinstance(r, BlochVector):
        if r.convention != "pauli":
            raise ValueError("qubit_fourth_order requires pauli Bloch vectors")
        return np.asarray(r.components, dtype=float)
    v = np.asarray(r, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise ShapeError(f"expected a 3-vector, got shape {v.shape}")
    return v


def qubit_fourth_order(
    r1: "BlochVector | np.ndarray",
    r2: "BlochVector | np.ndarray",
    r3: "BlochVector | np.ndarray",
    r4: "BlochVector | np.ndarray",
) -> complex:
    """Fourth-order invariant tr(rho1 rho2 rho3 rho4) of four qubits.

    Closed form in the pauli Bloch vectors: the real part combines the three
    pairings of the four vectors, the imaginary part is the determinant of
    (r1+r2, r2+r3, r3+r4); both divided by 8.  The determinant's orientation
    fixes the sign of the imaginary part and is validated against direct
    traces in the test suite.
    """
    v1, v2, v3, v4 = _vec3(r1), _vec3(r2), _vec3(r3), _vec3(r4)
    a0 = (
        (1.0 + v1 @ v2) * (1.0 + v3 @ v4)
        - (1.0 - v1 @ v3) * (1.0 - v2 @ v4)
        + (1.0 + v1 @ v4) * (1.0 + v2 @ v3)
    )
    b0 = float(np.linalg.det(np.column_stack([v1 + v2, v2 + v3, v3 + v4])))
    return complex(a0 / 8.0, b0 / 8.0)


# --------------------------------------------------------------------------
# Gram matrix of Bloch vectors
# --------------------------------------------------------------------------

def gram_bloch(states: list[PositiveOperator], convention: str) -> np.ndarray:
    """Gram matrix G_ij = <r_i, r_j> of the states' Bloch vectors."""
    vectors = [bloch_map(s, convention=convention).components for s in states]
    r = np.asarray(vectors, dtype=float)
    return r @ r.T


@dataclass(frozen=True)
class GramRankReport:
    """Numerical rank of the Bloch Gram matrix against the d-1 bound.

    Rank <= d-1 is necessary for joint diagonalizability in dimension d, and
    also sufficient for qubits (where rank <= 1 means collinear Bloch
    vectors).  ``verdict`` is None when the test is inconclusive (condition
    passed, d > 2).
    """

    dimension: int
    convention: str
    rank: int
    eigenvalues: np.ndarray
    bound: int
    condition_ok: bool
    sufficient: bool
    verdict: str | None

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "convention": self.convention,
            "rank": self.rank,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "bound": self.bound,
            "condition_ok": self.condition_ok,
            "sufficient": self.sufficient,
            "verdict": self.verdict,
        }


def gram_rank_criterion(
    states: list[PositiveOperator],
    tol: float = FACET_TOL,
    convention: "str | None" = None,
) -> GramRankReport:
    """Rank test on the Gram matrix of Bloch vectors.

    Numerical rank counts eigenvalues above ``tol`` times the largest one.
    For qubits the verdict is conclusive either way; for d > 2 a violation
    proves set coherence while a pass proves nothing.  The rank (hence the
    verdict) does not depend on the convention, which only rescales the
    Gram matrix.
    """
    if not states:
        raise ValueError("need at least one state")
    d = states[0].dim
    if convention is None:
        convention = "pauli" if d == 2 else "orthonormal"
    g = gram_bloch(states, convention=convention)
    w = np.linalg.eigvalsh(g)
    top = float(w[-1])
    rank = int(np.sum(w > tol * top)) if top > 0 else 0
    bound = max(d - 1, 0)
    condition_ok = rank <= bound
    sufficient = d <= 2
    if not condition_ok:
        verdict = SET_COHERENT
    elif sufficient:
        verdict = SET_INCOHERENT
    else:
        verdict = None
    return GramRankReport(
        dimension=d,
        convention=convention,
        rank=rank,
        eigenvalues=w,
        bound=bound,
        condition_ok=condition_ok,
        sufficient=sufficient,
        verdict=verdict,
    )


# --------------------------------------------------------------------------
# Overlap-polytope membership
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FacetReport:
    """Membership data for the three-state overlap polytope.

    Jointly diagonalizable normalized triples have overlaps in [0, 1]
    satisfying all three cyclic facet inequalities of the form
    ``z_12 + z_13 - z_23 <= 1``; ``facet_slacks`` stores 1 minus each
    signed combination.
    """

    point: tuple[float, float, float]
    facet_slacks: tuple[float, float, float]
    box_ok: bool
    member: bool

    def to_dict(self) -> dict:
        return {
            "point": list(self.point),
            "facet_slacks": list(self.facet_slacks),
            "box_ok": self.box_ok,
            "member": self.member,
        }


def c3_facet_check(
    z12: float, z13: float, z23: float, tol: float = FACET_TOL
) -> FacetReport:
    """Check a triple of pairwise overlaps against the three-cycle facets."""
    slacks = (
        1.0 - (+z12 + z13 - z23),
        1.0 - (+z12 - z13 + z23),
        1.0 - (-z12 + z13 + z23),
    )
    box_ok = all(-tol <= z <= 1.0 + tol for z in (z12, z13, z23))
    member = box_ok and min(slacks) >= -tol
    return FacetReport(
        point=(float(z12), float(z13), float(z23)),
        facet_slacks=tuple(float(s) for s in slacks),
        box_ok=bool(box_ok),
        member=bool(member),
    )


def winc_membership(
    z1122: float, z1212: float, tol: float = COMMUTE_TOL, normalized: bool = True
) -> bool:
    """Membership in the pair polytope {(z, z) : z in [0, 1]} (or its cone).

    With ``normalized=False`` the box constraint is dropped and only
    nonnegativity plus the equality remain, which characterizes commuting
    pairs of arbitrary unnormalized positive operators.
    """
    if abs(z1122 - z1212) > tol:
        return False
    if z1122 < -tol or z1212 < -tol:
        return False
    if normalized and (z1122 > 1 + tol or z1212 > 1 + tol):
        return False
    return True


# --------------------------------------------------------------------------
# Imaginarity witness
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ImaginarityWitness:
    """Cauchy-Schwarz bound on the imaginary part of a third-order invariant.

    ``2 |Im tr(rho_l rho_k rho_s)| <= ||rho_l||_2 * ||[rho_k, rho_s]||_2``,
    where the commutator norm is obtained from the pair gap.  A nonzero
    ``im_delta`` witnesses set imaginarity (no basis makes all three real).
    """

    lhs: float
    rhs: float
    satisfied: bool
    im_delta: float

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "im_delta": self.im_delta,
        }


def imaginarity_witness(
    rho_l: PositiveOperator, rho_k: PositiveOperator, rho_s: PositiveOperator
) -> ImaginarityWitness:
    """Evaluate the imaginarity bound for an ordered state triple."""
    im_delta = bargmann_invariant([rho_l, rho_k, rho_s], (1, 2, 3)).imag
    purity_l = _real_invariant(
        chain_product_trace([rho_l.matrix, rho_l.matrix]), "tr(rho_l^2)"
    )
    pair = commutator_gap(rho_k, rho_s)
    radicand = 2.0 * pair.gap
    if radicand < -1e-10:
        raise NumericInconsistencyError(
            f"negative commutator-norm radicand {radicand:.3e}"
        )
    rhs = float(np.sqrt(purity_l) * np.sqrt(max(radicand, 0.0)))
    lhs = 2.0 * abs(float(im_delta))
    return ImaginarityWitness(
        lhs=lhs,
        rhs=rhs,
        satisfied=bool(lhs <= rhs + 1e-10),
        im_delta=float(im_delta),
    )
