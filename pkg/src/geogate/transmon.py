"""Transmon-level Hamiltonians: DRAG-corrected single qubit and the
parametrically modulated two-transmon system."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy.special import jv

from .core import from_mhz, kron_all, ladder_ops
from .errors import InvalidDimensionError
from .gates import GateRecipe, sqrt_iswap_spec
from .paths import DriveSchedule

# absolute qubit frequency only enters LAB-frame cross-checks; value arbitrary
DEFAULT_OMEGA1 = from_mhz(5000.0)

FD_STEP_FRACTION = 2.0 ** -20  # centered-difference step as a fraction of tau


class Frame(Enum):
    LAB = "lab"
    DRIVE_ROTATING = "drive_rotating"


TWO_QUBIT_FRAME = "local_rotating_with_flux"


@dataclass(frozen=True)
class TransmonConfig:
    """Level count and anharmonicity (rad/us) of one transmon."""
    levels: int = 3
    alpha: float = from_mhz(220.0)
    label: int = 1

    def __post_init__(self):
        if self.levels < 2:
            raise InvalidDimensionError(f"levels must be >= 2, got {self.levels}")
        if self.alpha <= 0:
            raise InvalidDimensionError(f"anharmonicity must be positive, got {self.alpha}")


@dataclass(frozen=True)
class CouplerConfig:
    """Static coupling plus the parametric flux-modulation parameters."""
    g12: float = from_mhz(8.0)
    beta: float = 1.3
    nu: float = 0.0
    delta1: float = from_mhz(345.0)

    @property
    def delta_L(self):
        return self.nu - self.delta1

    @property
    def g_eff(self):
        """Sideband coupling 2 g12 J1(beta) of the |01> <-> |10> pair."""
        return 2.0 * self.g12 * jv(1, self.beta)

    def __post_init__(self):
        dl = abs(self.delta_L)
        if dl >= 0.1 * min(abs(self.nu), abs(self.delta1)):
            warnings.warn(
                f"|delta_L| = {dl:.3g} is not small against nu/delta1; "
                "the effective two-level reduction degrades", stacklevel=2)


# -------------------------------------------------------------- single qubit

def drag_pulse(drive: DriveSchedule, alpha1):
    """Complex DRAG-corrected envelope for a two-level drive schedule.

    Omega_D = Omega - [i dOmega/dt + Omega dphi/dt + Delta Omega] / (2 alpha1).
    Derivatives use the analytic envelope/ramp forms when the schedule carries
    them, else centered differences with step tau * 2^-20.
    """
    if alpha1 == 0:
        raise ZeroDivisionError("DRAG correction needs a nonzero anharmonicity")
    h = drive.tau * FD_STEP_FRACTION

    if hasattr(drive.pulse, "derivative"):
        domega = drive.pulse.derivative
    else:
        domega = lambda t: (drive.omega(t + h) - drive.omega(t - h)) / (2 * h)
    if drive.phi_dot is not None:
        dphi = drive.phi_dot
    else:
        dphi = lambda t: (drive.phi(t + h) - drive.phi(t - h)) / (2 * h)

    def omega_d(t):
        o = float(drive.omega(t))
        return o - (1j * float(domega(t)) + o * float(dphi(t))
                    + float(drive.delta_at(t)) * o) / (2.0 * alpha1)

    return omega_d


def transmon_hamiltonian_fn(config: TransmonConfig, drive: DriveSchedule,
                            frame=Frame.DRIVE_ROTATING, drag=True,
                            omega1=DEFAULT_OMEGA1):
    """Time-callable transmon Hamiltonian for the given drive.

    DRIVE_ROTATING: diagonal k Delta - k(k-1) alpha/2 with drive
    (Omega_D/2) sqrt(k) e^{-i phi}|k-1><k| + h.c.
    LAB: the explicit-frequency form with drive phase e^{i(omega_d t - phi)};
    only constant-detuning drives are supported there.
    """
    n = config.levels
    k = np.arange(n, dtype=float)
    anh = -0.5 * k * (k - 1) * config.alpha
    sq = np.sqrt(np.arange(1, n))
    omega_d_env = drag_pulse(drive, config.alpha) if drag else \
        (lambda t: float(drive.omega(t)))

    if frame is Frame.DRIVE_ROTATING:
        def hfun(t):
            d = float(drive.delta_at(t))
            h = np.diag((k * d + anh).astype(complex))
            amp = 0.5 * omega_d_env(t) * np.exp(-1j * float(drive.phi(t)))
            h[np.arange(n - 1), np.arange(1, n)] += amp * sq
            h[np.arange(1, n), np.arange(n - 1)] += np.conj(amp) * sq
            return h
        return hfun

    if frame is Frame.LAB:
        if callable(drive.delta):
            raise InvalidDimensionError("LAB frame requires a constant detuning")
        wd = omega1 - drive.delta
        diag = (k * omega1 + anh).astype(complex)

        def hfun(t):
            h = np.diag(diag)
            amp = 0.5 * omega_d_env(t) * np.exp(1j * (wd * t - float(drive.phi(t))))
            h[np.arange(n - 1), np.arange(1, n)] += amp * sq
            h[np.arange(1, n), np.arange(n - 1)] += np.conj(amp) * sq
            return h
        return hfun

    raise ValueError(f"unknown frame {frame!r}")


def transmon_hamiltonian(config, drive, frame, t, drag=True, omega1=DEFAULT_OMEGA1):
    """Single-time evaluation of transmon_hamiltonian_fn."""
    return transmon_hamiltonian_fn(config, drive, frame, drag, omega1)(t)


def rotating_frame_map(config: TransmonConfig, drive: DriveSchedule, t,
                       omega1=DEFAULT_OMEGA1):
    """Unitary exp(i omega_d t N) relating LAB states to DRIVE_ROTATING states."""
    wd = omega1 - drive.delta
    k = np.arange(config.levels, dtype=float)
    return np.diag(np.exp(1j * wd * t * k))


# ----------------------------------------------------------------- two qubits

def parametric_flux(coupler: CouplerConfig, phi, t, phi_dot=None):
    """Flux modulation F = beta sin(nu t + phi(t)) and its time derivative."""
    p = float(phi(t)) if callable(phi) else float(phi)
    if phi_dot is None:
        pd = 0.0 if not callable(phi) else None
    else:
        pd = float(phi_dot(t))
    if pd is None:
        h = 1e-7
        pd = (float(phi(t + h)) - float(phi(t - h))) / (2 * h)
    arg = coupler.nu * t + p
    f = coupler.beta * np.sin(arg)
    fdot = coupler.beta * (coupler.nu + pd) * np.cos(arg)
    return f, fdot


def two_transmon_ops(levels=3):
    b1, b1z = ladder_ops(levels, 1, 2)
    b2, b2z = ladder_ops(levels, 2, 2)
    return b1, b1z, b2, b2z


def two_transmon_hamiltonian_fn(cfg1: TransmonConfig, cfg2: TransmonConfig,
                                coupler: CouplerConfig, phi, phi_dot=None):
    """9x9 Hamiltonian in the frame exp(i[w1 t + F(t)] N1 + i w2 t N2).

    Exact up to level truncation: anharmonicity diagonals plus the coupling
    g12 e^{-i[Delta1 t + F(t)]} b1- b2-^+ + h.c.
    """
    if cfg1.levels != cfg2.levels:
        raise InvalidDimensionError("both transmons must share the level truncation")
    n = cfg1.levels
    eye = np.eye(n, dtype=complex)
    k2 = np.arange(n) * (np.arange(n) - 1) / 2.0
    h_static = kron_all(np.diag(-cfg1.alpha * k2), eye) \
        + kron_all(eye, np.diag(-cfg2.alpha * k2))
    h_static = h_static.astype(complex)
    b1, _, b2, _ = two_transmon_ops(n)
    coup = b1 @ b2.conj().T

    def hfun(t):
        f, _ = parametric_flux(coupler, phi, t, phi_dot)
        ph = np.exp(-1j * (coupler.delta1 * t + f))
        return h_static + coupler.g12 * (ph * coup + np.conj(ph) * coup.conj().T)

    return hfun


def two_transmon_hamiltonian(cfg1, cfg2, coupler, phi, t, phi_dot=None):
    return two_transmon_hamiltonian_fn(cfg1, cfg2, coupler, phi, phi_dot)(t)


REDUCED_BASIS = ("01", "10", "02", "11", "20")


def reduced_hamiltonian(coupler: CouplerConfig, phi, t, alpha1=from_mhz(220.0),
                        alpha2=from_mhz(180.0)):
    """First-Bessel-order Hamiltonian on span(|01>, |10>, |02>, |11>, |20>).

    Keeping only the resonant J1 sideband of exp(-i F(t)) in the flux-absorbed
    frame: coupling -g12 J1(beta) e^{i[(nu - delta1) t + phi]} on the three
    lowering chains, with the anharmonicity left as a static diagonal (the
    |01>/|10> pair carries none).
    """
    g = coupler.g12 * jv(1, coupler.beta)
    p = float(phi(t)) if callable(phi) else float(phi)
    c = -g * np.exp(1j * ((coupler.nu - coupler.delta1) * t + p))
    h = np.zeros((5, 5), dtype=complex)
    h[0, 1] = c                      # |01><10|
    h[2, 3] = np.sqrt(2) * c         # |02><11|
    h[3, 4] = np.sqrt(2) * c         # |11><20|
    h = h + h.conj().T
    h[2, 2] = -alpha2
    h[4, 4] = -alpha1
    return h


def effective_two_level(coupler: CouplerConfig, phi):
    """Two-level-drive-shaped Hamiltonian on the (|10>, |01>) pair: constant coupling
    g' = 2 g12 J1(beta), detuning delta_L, drive phase phi(t)."""
    g_eff = coupler.g_eff
    dl = coupler.delta_L

    def hfun(t):
        p = float(phi(t)) if callable(phi) else float(phi)
        e = g_eff * np.exp(-1j * p)
        return 0.5 * np.array([[-dl, e], [np.conj(e), dl]], dtype=complex)

    return hfun


# ------------------------------------------------------- sqrt-iSWAP benchmark

@dataclass
class SqrtISwapPlan:
    """Everything needed to run the two-transmon gate and compare to its target."""
    recipe: GateRecipe
    cfg1: TransmonConfig
    cfg2: TransmonConfig
    coupler: CouplerConfig
    phi_flux: Callable
    phi_flux_dot: Callable
    tau: float

    @property
    def hamiltonian(self):
        return two_transmon_hamiltonian_fn(self.cfg1, self.cfg2, self.coupler,
                                           self.phi_flux, self.phi_flux_dot)

    def frame_correction(self, t=None):
        """Virtual-Z alignment exp(i delta_L t (N1 - N2)/2) to the drive frame."""
        t = self.tau if t is None else t
        n = self.cfg1.levels
        k = np.arange(n, dtype=float)
        n1 = np.kron(np.diag(k), np.eye(n))
        n2 = np.kron(np.eye(n), np.diag(k))
        return np.diag(np.exp(0.5j * self.coupler.delta_L * t
                              * np.diag(n1 - n2))).astype(complex)

    @property
    def computational_indices(self):
        n = self.cfg1.levels
        return [0, 1, n, n + 1]

    def embedded_target(self):
        out = np.eye(self.cfg1.levels ** 2, dtype=complex)
        out[np.ix_(self.computational_indices, self.computational_indices)] = \
            self.recipe.target
        return out


def sqrt_iswap_plan(g12=from_mhz(8.0), beta=1.3, delta1=from_mhz(345.0),
                    alpha1=from_mhz(220.0), alpha2=from_mhz(180.0), levels=3):
    """Wire the root-iSWAP recipe to the flux-modulated two-transmon model.

    The flux phase ramp realizing the latitude drive phase phi_d(t) = xi(t) + pi
    is phi_flux(t) = xi(t) (the sideband conjugation absorbs the pi), with the
    drive frequency nu = delta1 + delta_L and delta_L = -g'.
    """
    recipe = sqrt_iswap_spec(g12=g12, beta=beta)
    drive = recipe.segments[0]
    g_eff = 2.0 * g12 * jv(1, beta)
    coupler = CouplerConfig(g12=g12, beta=beta, nu=delta1 - g_eff, delta1=delta1)
    xi0 = drive.gate_spec.xi0
    xi_rate = 2.0 * g_eff  # xi'(t) on the chi = pi/4 latitude with Omega = g'
    phi_flux = lambda t: xi0 + xi_rate * t
    phi_flux_dot = lambda t: xi_rate
    return SqrtISwapPlan(
        recipe=recipe,
        cfg1=TransmonConfig(levels=levels, alpha=alpha1, label=1),
        cfg2=TransmonConfig(levels=levels, alpha=alpha2, label=2),
        coupler=coupler, phi_flux=phi_flux, phi_flux_dot=phi_flux_dot,
        tau=drive.tau)
