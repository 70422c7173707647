import numpy as np
import pytest

from bargmann.criteria import (
    SET_COHERENT,
    SET_INCOHERENT,
    c3_facet_check,
    commutator_gap,
    gram_bloch,
    gram_rank_criterion,
    imaginarity_witness,
    qubit_criterion,
    qubit_delta1122,
    qubit_delta1212,
    qubit_fourth_order,
    reduced_set_coherence,
    set_coherence_decide,
    winc_membership,
)
from bargmann.exceptions import DegenerateReferenceError, ShapeError
from bargmann.fixtures import fixture
from bargmann.invariants import bargmann_invariant
from bargmann.numkernel import hs_norm_sq
from bargmann.states import (
    bloch_map,
    commuting_set,
    haar_unitary,
    maximally_mixed,
    overlap,
    pure_state,
    purity,
    qubit_from_bloch,
    random_state,
    validate_state,
)


def rand_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def rand_qubit(rng, pure=False):
    r = rng.standard_normal(3)
    r /= np.linalg.norm(r)
    if not pure:
        r *= rng.uniform(0, 1)
    return qubit_from_bloch(r)


# --------------------------------------------------------------------------
# commutator gap
# --------------------------------------------------------------------------

def test_commutator_gap_reference_pair():
    pg = commutator_gap(*fixture("emc_rho_pair").states)
    assert pg.gap == pytest.approx(9 / 3200, abs=1e-13)
    assert not pg.commutes

    pg = commutator_gap(*fixture("emc_sigma_pair").states)
    assert pg.gap == pytest.approx(0.0, abs=1e-13)
    assert pg.commutes


def test_commutator_gap_self():
    rho = random_state(4, "ginibre_mixed", np.random.default_rng(1))
    pg = commutator_gap(rho, rho)
    assert pg.gap == pytest.approx(0.0, abs=1e-14)
    assert pg.commutes


def test_commutator_gap_pure_pair():
    pg = commutator_gap(pure_state([1, 0]), pure_state([1, 1]))
    assert pg.delta_llkk == pytest.approx(0.5, abs=1e-14)
    assert pg.delta_lklk == pytest.approx(0.25, abs=1e-14)
    assert pg.gap == pytest.approx(0.25, abs=1e-14)


def test_commutator_gap_accepts_plain_hermitian():
    # arbitrary observables, not positive
    a = np.array([[1.0, 2.0], [2.0, -1.0]], dtype=complex)
    b = np.array([[0.0, 1j], [-1j, 3.0]], dtype=complex)
    pg = commutator_gap(a, b)
    comm = a @ b - b @ a
    assert pg.gap == pytest.approx(0.5 * hs_norm_sq(comm), rel=1e-12)
    with pytest.raises(ShapeError):
        commutator_gap(a, np.eye(3))


def test_gap_equals_half_commutator_norm():
    rng = np.random.default_rng(40)
    for _ in range(300):
        d = int(rng.integers(2, 9))
        a, b = rand_hermitian(rng, d), rand_hermitian(rng, d)
        pg = commutator_gap(a, b)
        ref = 0.5 * hs_norm_sq(a @ b - b @ a)
        assert pg.gap >= -1e-10
        assert pg.gap == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_soundness_and_completeness_at_desk_scale():
    rng = np.random.default_rng(39)
    # commuting constructions are always judged incoherent
    for d, n in ((2, 2), (3, 3), (5, 4)):
        states = commuting_set(d, n, rng)
        assert set_coherence_decide(states).verdict == SET_INCOHERENT
    # pairs with a clearly nonzero commutator are always judged coherent
    found = 0
    while found < 50:
        d = int(rng.integers(2, 6))
        a = random_state(d, "ginibre_mixed", rng)
        b = random_state(d, "ginibre_mixed", rng)
        comm = a.matrix @ b.matrix - b.matrix @ a.matrix
        if hs_norm_sq(comm) > 1e-6:
            found += 1
            assert set_coherence_decide([a, b]).verdict == SET_COHERENT


def test_gap_scaling_covariance():
    rng = np.random.default_rng(41)
    for _ in range(30):
        d = int(rng.integers(2, 9))
        a, b = rand_hermitian(rng, d), rand_hermitian(rng, d)
        base = commutator_gap(a, b, tol=0.0)
        for s in (0.5, 2.0, 10.0):
            for t in (0.5, 2.0, 10.0):
                scaled = commutator_gap(s * a, t * b, tol=0.0)
                assert scaled.gap == pytest.approx(
                    s * s * t * t * base.gap, rel=1e-10, abs=1e-12
                )
                assert scaled.commutes == base.commutes


# --------------------------------------------------------------------------
# set decisions
# --------------------------------------------------------------------------

def test_set_coherence_decide():
    rep = set_coherence_decide(list(fixture("emc_sigma_pair").states))
    assert rep.verdict == SET_INCOHERENT
    assert rep.mode == "full"
    assert len(rep.pairs) == 1
    assert rep.invariant_count == 2

    rep = set_coherence_decide(list(fixture("c4_quartet").states))
    assert rep.verdict == SET_COHERENT
    assert len(rep.pairs) == 6
    assert rep.invariant_count == 12
    # the fourth state commutes with rho_2 (its |a> component lies inside
    # rho_2's support and |b> is orthogonal to it) but not with rho_1, rho_3
    noncommuting = {(1, 4), (3, 4)}
    for pg in rep.pairs:
        assert pg.commutes == (pg.indices not in noncommuting)


def test_set_coherence_decide_singleton():
    rep = set_coherence_decide([maximally_mixed(3)])
    assert rep.verdict == SET_INCOHERENT
    assert rep.pairs == ()


def test_reduced_set_coherence_commuting_construction():
    rng = np.random.default_rng(42)
    u = haar_unitary(4, rng)
    spectrum = np.array([1 / 2, 3 / 8, 1 / 8, 0.0])
    ref = validate_state((u * spectrum) @ u.conj().T)
    others = [
        validate_state((u * rng.dirichlet(np.ones(4))) @ u.conj().T) for _ in range(3)
    ]
    rep = reduced_set_coherence([ref] + others, 1)
    assert rep.verdict == SET_INCOHERENT
    assert rep.mode == "reduced"
    assert rep.reference == 1
    assert len(rep.pairs) == 3
    assert rep.invariant_count == 6


def test_reduced_set_coherence_detects_coherence():
    states = list(fixture("emc_rho_pair").states)
    rep = reduced_set_coherence(states, 1)
    assert rep.verdict == SET_COHERENT
    assert rep.pairs[0].gap == pytest.approx(9 / 3200, abs=1e-13)


def test_reduced_set_coherence_degenerate_reference():
    states = [maximally_mixed(3), random_state(3, "ginibre_mixed", np.random.default_rng(2))]
    with pytest.raises(DegenerateReferenceError, match="min adjacent gap"):
        reduced_set_coherence(states, 1)
    with pytest.raises(ValueError):
        reduced_set_coherence(states, 5)


def test_reduced_matches_full_verdict():
    rng = np.random.default_rng(43)
    for trial in range(20):
        d = int(rng.integers(2, 6))
        n = int(rng.integers(2, 5))
        if trial % 2 == 0:
            states = commuting_set(d, n, rng)
        else:
            states = [random_state(d, "ginibre_mixed", rng) for _ in range(n)]
        ref = None
        from bargmann.states import spectral_profile

        for i, s in enumerate(states, start=1):
            if spectral_profile(s).non_degenerate:
                ref = i
                break
        if ref is None:
            continue
        full = set_coherence_decide(states)
        reduced = reduced_set_coherence(states, ref)
        assert reduced.verdict == full.verdict


# --------------------------------------------------------------------------
# qubit reductions
# --------------------------------------------------------------------------

def test_qubit_delta_polynomials_fixed_points():
    assert qubit_delta1122(1.0, 1.0, 0.5) == pytest.approx(0.5)
    assert qubit_delta1212(1.0, 1.0, 0.5) == pytest.approx(0.25)
    assert qubit_delta1122(0.5, 0.5, 0.5) == pytest.approx(1 / 8)
    assert qubit_delta1212(0.5, 0.5, 0.5) == pytest.approx(1 / 8)


def test_qubit_delta_polynomials_match_traces():
    rng = np.random.default_rng(44)
    for _ in range(200):
        a, b = rand_qubit(rng), rand_qubit(rng)
        d11, d22, d12 = purity(a), purity(b), overlap(a, b)
        assert qubit_delta1122(d11, d22, d12) == pytest.approx(
            bargmann_invariant([a, b], (1, 1, 2, 2)).real, abs=1e-10
        )
        assert qubit_delta1212(d11, d22, d12) == pytest.approx(
            bargmann_invariant([a, b], (1, 2, 1, 2)).real, abs=1e-10
        )


def test_qubit_delta_out_of_range_warns():
    with pytest.warns(UserWarning):
        qubit_delta1122(0.2, 1.0, 0.5)
    with pytest.warns(UserWarning):
        qubit_delta1212(1.0, 1.0, 1.4)


def test_qubit_criterion_examples():
    res = qubit_criterion(0.5, 0.83, 0.5)
    assert res.residual == pytest.approx(0.0, abs=1e-14)
    assert res.commutes

    res = qubit_criterion(1.0, 1.0, 0.5)
    assert res.residual == pytest.approx(0.25)
    assert not res.commutes

    res = qubit_criterion(1.0, 1.0, 1.0)
    assert res.residual == pytest.approx(0.0, abs=1e-14)
    assert res.commutes


def test_qubit_criterion_matches_gap_verdict():
    rng = np.random.default_rng(45)
    for trial in range(300):
        if trial % 3 == 0:
            # collinear Bloch vectors commute
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            a = qubit_from_bloch(axis * rng.uniform(0, 1))
            b = qubit_from_bloch(axis * rng.uniform(-1, 1))
        else:
            a, b = rand_qubit(rng), rand_qubit(rng)
        pg = commutator_gap(a, b)
        res = qubit_criterion(purity(a), purity(b), overlap(a, b))
        assert res.commutes == pg.commutes
        assert res.residual == pytest.approx(pg.gap, abs=1e-10)


def test_qubit_fourth_order_examples():
    r_pure = np.array([0.0, 0.0, 1.0])
    assert qubit_fourth_order(r_pure, r_pure, r_pure, r_pure) == pytest.approx(1.0)

    rng = np.random.default_rng(46)
    ra, rb = rng.standard_normal(3), rng.standard_normal(3)
    ra *= rng.uniform(0, 1) / np.linalg.norm(ra)
    rb *= rng.uniform(0, 1) / np.linalg.norm(rb)
    a, b = qubit_from_bloch(ra), qubit_from_bloch(rb)
    d11, d22, d12 = purity(a), purity(b), overlap(a, b)
    val = qubit_fourth_order(ra, ra, rb, rb)
    assert val.imag == pytest.approx(0.0, abs=1e-12)
    assert val.real == pytest.approx(qubit_delta1122(d11, d22, d12), abs=1e-12)


def test_qubit_fourth_order_matches_traces():
    rng = np.random.default_rng(47)
    for _ in range(200):
        vecs = []
        for _ in range(4):
            r = rng.standard_normal(3)
            r *= rng.uniform(0, 1) / np.linalg.norm(r)
            vecs.append(r)
        states = [qubit_from_bloch(r) for r in vecs]
        direct = bargmann_invariant(states, (1, 2, 3, 4))
        closed = qubit_fourth_order(*vecs)
        assert closed == pytest.approx(direct, abs=1e-10)


def test_qubit_fourth_order_accepts_bloch_vectors():
    states = list(fixture("mub_trio").states)
    vecs = [bloch_map(s, "pauli") for s in states] + [
        bloch_map(maximally_mixed(2), "pauli")
    ]
    # appending the maximally mixed state halves the third-order invariant
    val = qubit_fourth_order(*vecs)
    assert 2 * val == pytest.approx(0.25 + 0.25j, abs=1e-12)


# --------------------------------------------------------------------------
# Gram rank
# --------------------------------------------------------------------------

def test_gram_bloch_examples():
    trio = [pure_state([1, 0])]
    np.testing.assert_allclose(gram_bloch(trio, "pauli"), [[1.0]], atol=1e-14)

    quartet = list(fixture("c4_quartet").states)
    np.testing.assert_allclose(
        gram_bloch(quartet, "orthonormal"), np.eye(4) / 4, atol=1e-13
    )


def test_gram_rank_criterion_trine():
    rep = gram_rank_criterion(list(fixture("trine").states))
    assert rep.convention == "pauli"
    assert rep.rank == 2
    assert rep.bound == 1
    assert not rep.condition_ok
    assert rep.verdict == SET_COHERENT


def test_gram_rank_criterion_quartet():
    rep = gram_rank_criterion(list(fixture("c4_quartet").states))
    assert rep.rank == 4
    assert rep.bound == 3
    assert not rep.condition_ok
    assert rep.verdict == SET_COHERENT
    assert not rep.sufficient


def test_gram_rank_criterion_collinear():
    # mixtures of |0><0| and I/2 have collinear Bloch vectors
    states = [
        validate_state(t * pure_state([1, 0]).matrix + (1 - t) * np.eye(2) / 2)
        for t in (0.9, 0.5, 0.1)
    ]
    rep = gram_rank_criterion(states)
    assert rep.rank == 1
    assert rep.condition_ok
    assert rep.verdict == SET_INCOHERENT


def test_gram_rank_consistent_with_gaps_for_qubits():
    rng = np.random.default_rng(48)
    for trial in range(50):
        if trial % 2 == 0:
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            states = [qubit_from_bloch(axis * rng.uniform(-1, 1)) for _ in range(3)]
        else:
            states = [rand_qubit(rng) for _ in range(3)]
        rank_incoherent = gram_rank_criterion(states).verdict == SET_INCOHERENT
        gap_incoherent = set_coherence_decide(states).verdict == SET_INCOHERENT
        assert rank_incoherent == gap_incoherent


def test_gram_rank_inconclusive_when_passing_in_high_dim():
    rng = np.random.default_rng(49)
    states = commuting_set(3, 2, rng)
    rep = gram_rank_criterion(states)
    assert rep.condition_ok
    assert rep.verdict is None


# --------------------------------------------------------------------------
# polytope membership
# --------------------------------------------------------------------------

def test_c3_facet_check_trine():
    rep = c3_facet_check(3 / 4, 3 / 4, 1 / 4)
    assert rep.facet_slacks[0] == pytest.approx(-0.25)
    assert rep.box_ok
    assert not rep.member


def test_c3_facet_check_members():
    rep = c3_facet_check(0.5, 0.5, 0.5)
    assert rep.member
    rep = c3_facet_check(0.0, 0.0, 0.0)
    assert rep.member
    assert rep.facet_slacks == (1.0, 1.0, 1.0)
    assert not c3_facet_check(1.2, 0.5, 0.5).member  # box violation


def test_winc_membership():
    assert winc_membership(0.3, 0.3)
    rho_pair = fixture("emc_rho_pair").states
    z1122 = bargmann_invariant(list(rho_pair), (1, 1, 2, 2)).real
    z1212 = bargmann_invariant(list(rho_pair), (1, 2, 1, 2)).real
    assert not winc_membership(z1122, z1212)
    assert not winc_membership(1.5, 1.5)
    assert winc_membership(1.5, 1.5, normalized=False)
    assert not winc_membership(-0.2, -0.2, normalized=False)


# --------------------------------------------------------------------------
# imaginarity witness
# --------------------------------------------------------------------------

def test_imaginarity_witness_mub_trio():
    wit = imaginarity_witness(*fixture("mub_trio").states)
    assert wit.im_delta == pytest.approx(0.25, abs=1e-12)
    assert wit.lhs == pytest.approx(0.5, abs=1e-12)
    assert wit.rhs == pytest.approx(np.sqrt(0.5), abs=1e-10)
    assert wit.satisfied


def test_imaginarity_witness_commuting_triple():
    states = commuting_set(4, 3, np.random.default_rng(50))
    wit = imaginarity_witness(*states)
    assert wit.lhs == pytest.approx(0.0, abs=1e-10)
    assert wit.satisfied


def test_imaginarity_witness_random_sweep():
    rng = np.random.default_rng(51)
    for _ in range(200):
        d = int(rng.integers(2, 6))
        states = [random_state(d, "ginibre_mixed", rng) for _ in range(3)]
        wit = imaginarity_witness(*states)
        assert wit.lhs <= wit.rhs + 1e-10


# --------------------------------------------------------------------------
# incomparability of the one-sided criteria
# --------------------------------------------------------------------------

def test_incomparability_mub_trio():
    # detected by imaginarity only: facets pass, Gram rank bound passes in C^4
    from bargmann.states import embed

    states = list(fixture("mub_trio").states)
    assert abs(bargmann_invariant(states, (1, 2, 3)).imag) > 0.2
    z = [overlap(states[0], states[1]), overlap(states[0], states[2]), overlap(states[1], states[2])]
    assert c3_facet_check(*z).member
    embedded = [embed(s, 4) for s in states]
    rep = gram_rank_criterion(embedded)
    assert rep.rank == 3
    assert rep.condition_ok


def test_incomparability_trine():
    # detected by facets only: all third-order invariants real nonnegative
    states = list(fixture("trine").states)
    for word in ((1, 2, 3), (1, 3, 2), (1, 1, 2), (2, 3, 3)):
        val = bargmann_invariant(states, word)
        assert abs(val.imag) <= 1e-10
        assert val.real >= -1e-10
    z = [overlap(states[0], states[1]), overlap(states[0], states[2]), overlap(states[1], states[2])]
    assert not c3_facet_check(*z).member
    from bargmann.states import embed

    embedded = [embed(s, 4) for s in states]
    assert gram_rank_criterion(embedded).condition_ok


def test_incomparability_quartet():
    # detected by the Gram rank bound only
    states = list(fixture("c4_quartet").states)
    for word, expected in (((1, 2, 3), 1 / 8), ((1, 2, 4), 1 / 16), ((1, 2, 3, 4), 1 / 32)):
        val = bargmann_invariant(states, word)
        assert abs(val.imag) <= 1e-10
        assert val.real == pytest.approx(expected, abs=1e-13)
    z = [overlap(states[0], states[1]), overlap(states[0], states[2]), overlap(states[1], states[2])]
    assert c3_facet_check(*z).member
    assert not gram_rank_criterion(states).condition_ok
