import math

import numpy as np
import pytest

from dipoledyn.coupling import DecayRates, coupling_c
from dipoledyn.errors import ContractError, DomainError, ValidityWarning
from dipoledyn.gates import schedule_cnot_lasers
from dipoledyn.hamiltonians import (
    A,
    E,
    G,
    S,
    DriveHamiltonian,
    LaserDrive,
    RabiPair,
    Units,
    WaveMode,
    h0,
    h_cnot,
    h_cnot_ideal,
    h_cond,
    h_decay,
    h_interaction,
    rabi_pair,
    rotation_step_matrix,
    standing_wave_factor,
)
from dipoledyn.statespace import basis_state, combination

R2 = 1.0 / math.sqrt(2.0)


def test_h_cond_without_decay_is_the_shift():
    h = h_cond(Units(), coupling_c(0.2))
    assert np.allclose(np.diag(h.entries), [0.0, 0.5, -0.5, 0.0])
    assert h.is_hermitian()


def test_h_cond_with_decay_has_collective_widths():
    a = 0.01
    c = coupling_c(0.2)
    h = h_cond(Units(a), c)
    d = np.diag(h.entries)
    assert d[S].imag == pytest.approx(-a * (1.0 + c.re) / 2.0)
    assert d[A].imag == pytest.approx(-a * (1.0 - c.re) / 2.0)
    assert d[E].imag == pytest.approx(-a)
    assert d[S].real == pytest.approx(0.5)
    assert d[A].real == pytest.approx(-0.5)


def test_h_cond_shift_stays_half_with_physical_decay():
    h = h_cond(Units(1.0 / 375.0), coupling_c(0.2))
    d = np.diag(h.entries)
    assert d[S].real == pytest.approx(0.5)
    assert d[A].real == pytest.approx(-0.5)
    assert d[E].real == 0.0


def test_h0_levels():
    h = h0(10.0, 2.0)
    assert np.allclose(np.diag(h.entries), [0.0, 11.0, 9.0, 20.0])
    with pytest.raises(DomainError):
        h0(10.0, -1.0)


def test_h_decay():
    h = h_decay(Units(0.1), DecayRates(1.5, 0.5, 2.0))
    assert np.allclose(np.diag(h.entries), -0.05j * np.array([0.0, 1.5, 0.5, 2.0]))


def test_rabi_pairs():
    assert rabi_pair(LaserDrive.running(0.3, 0.5)) == RabiPair(0.3, 0.3)
    pair = rabi_pair(LaserDrive(WaveMode.STANDING_NODE, 1.0, -0.5, 0.2))
    assert pair.omega1 == pytest.approx(2j * math.sin(0.1))
    assert pair.omega2 == pytest.approx(-pair.omega1)
    assert standing_wave_factor(0.2) == pytest.approx(0.19967, abs=1e-5)


def test_standing_for_realizes_requested_pair():
    pair = LaserDrive.standing_for(0.25, -0.5).pair()
    assert pair.omega1 == pytest.approx(0.25)
    assert pair.omega2 == pytest.approx(-0.25)
    with pytest.raises(DomainError):
        LaserDrive.standing_for(0.25, -0.5, klr=0.0)


def test_standing_wave_on_node_warns():
    with pytest.warns(ValidityWarning):
        pair = rabi_pair(LaserDrive(WaveMode.STANDING_NODE, 1.0, 0.0, 0.0))
    assert pair == RabiPair(0j, 0j)


@pytest.mark.parametrize("t", [0.0, 0.37, 5.0, 123.4])
def test_interaction_is_hermitian(t):
    drives = (LaserDrive.running(0.25, 0.5), LaserDrive.standing_for(-0.25, -0.5))
    assert h_interaction(drives, t).is_hermitian()


def test_symmetric_drive_never_touches_a():
    h = h_interaction((LaserDrive.running(0.25, 0.5),), 3.0).entries
    assert np.all(h[A, :] == 0.0)
    assert abs(h[G, S]) == pytest.approx(0.25 * R2)


def test_interaction_rejects_negative_time():
    with pytest.raises(DomainError):
        h_interaction((LaserDrive.running(0.25, 0.5),), -1.0)


def test_resonant_cnot_equals_ideal_swap_hamiltonian():
    omega1r = 0.2
    resonant = h_cnot(omega1r, 1.3, oscillating=False).entries
    assert np.allclose(resonant, h_cnot_ideal(2.0 * omega1r).entries, atol=1e-15)


def test_ideal_cnot_hamiltonian_kernel():
    h = h_cnot_ideal(0.5)
    assert np.allclose(h.entries @ basis_state("g").amplitudes, 0.0)
    assert np.allclose(h.entries @ combination(+1).amplitudes, 0.0)
    swap_01 = h_cnot_ideal(0.5, "swap-01")
    assert np.allclose(swap_01.entries @ combination(-1).amplitudes, 0.0)
    with pytest.raises(ContractError):
        h_cnot_ideal(0.5, "other")


def test_two_laser_cnot_matches_prescribed_form():
    omega1r, t = 0.25, 2.1
    drives = schedule_cnot_lasers(omega1r).segments[0].drives
    built = DriveHamiltonian(drives).matrix(t)
    prescribed = h_cnot(omega1r, t).entries
    for idx in [(S, E), (A, E), (G, S)]:
        assert built[idx] == pytest.approx(prescribed[idx])
    # the g-a term differs only in sign
    assert built[G, A] == pytest.approx(-prescribed[G, A])


def test_drive_hamiltonian_adds_decay():
    drives = (LaserDrive.running(0.25, 0.5),)
    closed = DriveHamiltonian(drives).matrix(1.0)
    open_ = DriveHamiltonian(drives, Units(0.01), DecayRates(1.0, 1.0, 2.0)).matrix(1.0)
    assert np.allclose(open_ - closed, np.diag(-0.005j * np.array([0.0, 1.0, 1.0, 2.0])))


def test_units_reject_negative_ratio():
    with pytest.raises(DomainError):
        Units(-1.0)


def test_rotation_steps_couple_a_single_combination():
    half = 0.125
    u, w = combination(+1).amplitudes, combination(-1).amplitudes
    first = rotation_step_matrix(1, half, -half)
    assert np.allclose(first, first.conj().T)
    assert first[G] @ w == pytest.approx(half)
    assert first[G] @ u == pytest.approx(0.0)
    assert np.allclose(first[E], 0.0)
    second = rotation_step_matrix(2, half, half)
    assert second[E] @ u == pytest.approx(half)
    assert second[E] @ w == pytest.approx(0.0)
    assert np.allclose(second[G], 0.0)
    with pytest.raises(ContractError):
        rotation_step_matrix(3, half, half)
