"""Built-in reference state collections with their exact expected values.

Each fixture bundles a small state collection with the quantities it is
known to produce (invariants, gaps, overlaps, Gram spectra, verdicts).
Matrices are built from integer-ratio literals evaluated in double
precision, and expected values are kept as exact-fraction strings parsed at
load, so representation error stays at the rounding floor.  The
:func:`paper_check` report re-derives every expectation through the public
library operations and is the package's end-to-end self-test.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .criteria import (
    c3_facet_check,
    commutator_gap,
    gram_bloch,
    gram_rank_criterion,
    set_coherence_decide,
)
from .invariants import bargmann_invariant
from .states import (
    PositiveOperator,
    embed,
    overlap,
    pure_state,
    purity,
    qubit_from_bloch,
    validate_state,
)

__all__ = [
    "FIXTURE_NAMES",
    "Fixture",
    "PaperCheckEntry",
    "PaperCheckReport",
    "fixture",
    "paper_check",
]


def _f(text: str) -> float:
    return float(Fraction(text))


def _c(re_text: str, im_text: str) -> complex:
    return complex(_f(re_text), _f(im_text))


@dataclass(frozen=True)
class Fixture:
    """A named state collection plus the values it must reproduce."""

    name: str
    states: tuple[PositiveOperator, ...]
    expected: dict
    source: str


def _basis_ket(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def _mub_trio() -> Fixture:
    states = (
        pure_state([1, 0]),
        pure_state([1, 1]),
        pure_state([1, 1j]),
    )
    expected = {
        "delta_123": _c("1/4", "1/4"),
        "overlap_12": _f("1/2"),
        "overlap_13": _f("1/2"),
        "overlap_23": _f("1/2"),
        "gram_eigenvalues_embedded_c4": (_f("1/2"), _f("1/2"), _f("5/4")),
        "verdict": "set_coherent",
    }
    return Fixture(
        name="mub_trio",
        states=states,
        expected=expected,
        source="pure qubit trio |0>, |+>, |+i>, one state from each mutually unbiased basis",
    )


def _main_sigma_trio() -> Fixture:
    states = tuple(pure_state(_basis_ket(5, k)) for k in (0, 2, 4))
    return Fixture(
        name="main_sigma_trio",
        states=states,
        expected={"delta_123": _c("0", "0"), "verdict": "set_incoherent"},
        source="computational-basis projectors |0>, |2>, |4> in dimension 5",
    )


def _main_sigma_prime_trio() -> Fixture:
    plus = (_basis_ket(3, 0) + _basis_ket(3, 1)) / np.sqrt(2)
    states = (
        pure_state(_basis_ket(3, 0)),
        pure_state(plus),
        pure_state(_basis_ket(3, 2)),
    )
    return Fixture(
        name="main_sigma_prime_trio",
        states=states,
        expected={"delta_123": _c("0", "0"), "verdict": "set_coherent"},
        source="projectors |0>, |+>, |2> in dimension 3",
    )


def _trine() -> Fixture:
    half_rt3 = np.sqrt(3) / 2
    states = (
        qubit_from_bloch((1.0, 0.0, 0.0)),
        qubit_from_bloch((0.5, half_rt3, 0.0)),
        qubit_from_bloch((0.5, -half_rt3, 0.0)),
    )
    expected = {
        "overlap_12": _f("3/4"),
        "overlap_13": _f("3/4"),
        "overlap_23": _f("1/4"),
        "facet_value": _f("5/4"),
        "facet_member": False,
        "delta_123": _c("3/8", "0"),
        "verdict": "set_coherent",
    }
    return Fixture(
        name="trine",
        states=states,
        expected=expected,
        source="planar qubit trine: Bloch vectors at 120 degrees on a great circle",
    )


def _c4_quartet() -> Fixture:
    kets = [_basis_ket(4, k) for k in range(4)]
    a = (kets[0] + kets[2]) / np.sqrt(2)
    b = (kets[1] + kets[3]) / np.sqrt(2)

    def rank2(u, v):
        return validate_state(0.5 * (np.outer(u, u.conj()) + np.outer(v, v.conj())))

    states = (
        rank2(kets[0], kets[1]),
        rank2(kets[0], kets[2]),
        rank2(kets[0], kets[3]),
        rank2(a, b),
    )
    expected = {
        "purity_1": _f("1/2"),
        "purity_2": _f("1/2"),
        "purity_3": _f("1/2"),
        "purity_4": _f("1/2"),
        "overlap_12": _f("1/4"),
        "overlap_13": _f("1/4"),
        "overlap_14": _f("1/4"),
        "overlap_23": _f("1/4"),
        "overlap_24": _f("1/4"),
        "overlap_34": _f("1/4"),
        "delta_123": _c("1/8", "0"),
        "delta_124": _c("1/16", "0"),
        "delta_134": _c("1/16", "0"),
        "delta_234": _c("1/16", "0"),
        "delta_1234": _c("1/32", "0"),
        "gram_matrix": np.eye(4) / 4,
        "gram_rank": 4,
        "verdict": "set_coherent",
    }
    return Fixture(
        name="c4_quartet",
        states=states,
        expected=expected,
        source="four rank-2 mixed states in dimension 4 with uniform purities and overlaps",
    )


def _emc_first_state() -> PositiveOperator:
    return validate_state(np.diag([1 / 2, 3 / 8, 1 / 8, 0]).astype(complex))


def _emc_rho_pair() -> Fixture:
    flip = np.zeros((4, 4), dtype=complex)
    flip[0, 2] = flip[2, 0] = flip[1, 3] = flip[3, 1] = 1.0
    rho2 = np.diag([4 / 15, 1 / 3, 1 / 6, 7 / 30]).astype(complex) + flip / 10
    states = (_emc_first_state(), validate_state(rho2))
    expected = {
        "gap": _f("9/3200"),
        "delta_11": _f("13/32"),
        "delta_111": _f("23/128"),
        "delta_22": _f("137/450"),
        "delta_222": _f("31/300"),
        "delta_12": _f("67/240"),
        "delta_112": _f("223/1920"),
        "delta_122": _f("653/7200"),
        "verdict": "set_coherent",
    }
    return Fixture(
        name="emc_rho_pair",
        states=states,
        expected=expected,
        source="noncommuting dimension-4 pair whose 2- and 3-letter invariants all "
        "match a commuting pair (emc_sigma_pair)",
    )


def _emc_sigma_pair() -> Fixture:
    sigma2 = np.diag([11 / 30, 2 / 15, 11 / 30, 2 / 15]).astype(complex)
    states = (_emc_first_state(), validate_state(sigma2))
    expected = {
        "gap": _f("0"),
        "delta_11": _f("13/32"),
        "delta_111": _f("23/128"),
        "delta_22": _f("137/450"),
        "delta_222": _f("31/300"),
        "delta_12": _f("67/240"),
        "delta_112": _f("223/1920"),
        "delta_122": _f("653/7200"),
        "verdict": "set_incoherent",
    }
    return Fixture(
        name="emc_sigma_pair",
        states=states,
        expected=expected,
        source="commuting diagonal dimension-4 pair matching emc_rho_pair on all "
        "2- and 3-letter invariants",
    )


_BUILDERS = {
    "mub_trio": _mub_trio,
    "main_sigma_trio": _main_sigma_trio,
    "main_sigma_prime_trio": _main_sigma_prime_trio,
    "trine": _trine,
    "c4_quartet": _c4_quartet,
    "emc_rho_pair": _emc_rho_pair,
    "emc_sigma_pair": _emc_sigma_pair,
}

FIXTURE_NAMES = tuple(_BUILDERS)


def fixture(name: str) -> Fixture:
    """Build a fixture by name; see :data:`FIXTURE_NAMES`."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ValueError(
            f"unknown fixture {name!r}; expected one of {FIXTURE_NAMES}"
        ) from None


# --------------------------------------------------------------------------
# Self-check
# --------------------------------------------------------------------------

def _compute_quantity(fix: Fixture, quantity: str):
    states = list(fix.states)
    if quantity == "gap":
        return commutator_gap(states[0], states[1]).gap
    if quantity == "verdict":
        return set_coherence_decide(states).verdict
    if quantity.startswith("delta_"):
        word = tuple(int(ch) for ch in quantity.removeprefix("delta_"))
        return bargmann_invariant(states, word)
    if quantity.startswith("overlap_"):
        l, k = (int(ch) for ch in quantity.removeprefix("overlap_"))
        return overlap(states[l - 1], states[k - 1])
    if quantity.startswith("purity_"):
        return purity(states[int(quantity.removeprefix("purity_")) - 1])
    if quantity == "facet_value":
        z12 = overlap(states[0], states[1])
        z13 = overlap(states[0], states[2])
        z23 = overlap(states[1], states[2])
        return z12 + z13 - z23
    if quantity == "facet_member":
        z12 = overlap(states[0], states[1])
        z13 = overlap(states[0], states[2])
        z23 = overlap(states[1], states[2])
        return c3_facet_check(z12, z13, z23).member
    if quantity == "gram_eigenvalues_embedded_c4":
        embedded = [embed(s, 4) for s in states]
        w = np.linalg.eigvalsh(gram_bloch(embedded, "orthonormal"))
        return tuple(float(x) for x in w)
    if quantity == "gram_matrix":
        return gram_bloch(states, "orthonormal")
    if quantity == "gram_rank":
        return gram_rank_criterion(states).rank
    raise ValueError(f"fixture {fix.name!r} has no rule for quantity {quantity!r}")


def _deviation(expected, computed) -> float:
    if isinstance(expected, str) or isinstance(expected, bool):
        return 0.0 if expected == computed else 1.0
    if isinstance(expected, (tuple, list, np.ndarray)):
        e = np.asarray(expected, dtype=float)
        c = np.asarray(computed, dtype=float)
        if e.shape != c.shape:
            return float("inf")
        return float(np.max(np.abs(e - c))) if e.size else 0.0
    return float(abs(complex(expected) - complex(computed)))


def _json_value(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    return value


@dataclass(frozen=True)
class PaperCheckEntry:
    """One fixture quantity: expected vs computed."""

    fixture: str
    quantity: str
    expected: object
    computed: object
    abs_error: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "fixture": self.fixture,
            "quantity": self.quantity,
            "expected": _json_value(self.expected),
            "computed": _json_value(self.computed),
            "abs_error": self.abs_error,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class PaperCheckReport:
    """Aggregate of all fixture checks."""

    entries: tuple[PaperCheckEntry, ...]
    passed: bool
    max_abs_error: float

    def to_json(self) -> list[dict]:
        return [e.to_dict() for e in self.entries]


def paper_check(names: "list[str] | None" = None) -> PaperCheckReport:
    """Re-derive every fixture expectation and report deviations.

    Numeric quantities must match within 1e-12 absolute (1e-10 for
    eigenvalue lists); verdicts and flags must match exactly.  Failures are
    recorded in the report rather than raised.
    """
    selected = FIXTURE_NAMES if names is None else tuple(names)
    for name in selected:
        if name not in _BUILDERS:
            raise ValueError(f"unknown fixture {name!r}")
    if not selected:
        warnings.warn("no fixtures selected; check passes vacuously", stacklevel=2)
    entries = []
    for name in selected:
        fix = fixture(name)
        for quantity, expected in fix.expected.items():
            computed = _compute_quantity(fix, quantity)
            err = _deviation(expected, computed)
            tol = 1e-10 if "eigenvalues" in quantity else 1e-12
            entries.append(
                PaperCheckEntry(
                    fixture=name,
                    quantity=quantity,
                    expected=expected,
                    computed=computed,
                    abs_error=err,
                    passed=bool(err <= tol),
                )
            )
    max_err = max((e.abs_error for e in entries), default=0.0)
    return PaperCheckReport(
        entries=tuple(entries),
        passed=all(e.passed for e in entries),
        max_abs_error=max_err,
    )
