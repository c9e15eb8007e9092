"""Invariant-based inverse engineering of two-level drives from Bloch-sphere paths.

A path is the pair of Bloch angles (chi(t), xi(t)) of the dressed state

    |psi_1> = cos(chi/2)|0> + sin(chi/2) e^{i xi} |1>,

and the drive is the triple (Omega(t), Delta, phi(t)) entering

    H = 1/2 [[-Delta, Omega e^{-i phi}], [Omega e^{i phi}, Delta]].

The two are linked by  chi' = Omega sin(phi - xi)  and
xi' = -Delta - Omega cot(chi) cos(phi - xi); constant-latitude paths driven
with phi = xi + pi give the closed forms implemented here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .core import assert_unitary
from .errors import (
    PathDomainError,
    PhaseSingularityError,
    SingularPathError,
    UndefinedPhaseError,
    ZeroAreaError,
)

QUAD_NODES = 4097  # composite-Simpson node count for phase/detuning integrals


def simpson(y, dx):
    """Composite Simpson rule on uniformly spaced samples (odd length)."""
    y = np.asarray(y)
    n = y.shape[-1]
    if n % 2 == 0:
        raise ValueError("simpson needs an odd number of nodes")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.real_if_close(np.sum(w * y, axis=-1) * dx / 3.0))


# ------------------------------------------------------------------ envelopes

@dataclass(frozen=True)
class EnvelopeSpec:
    """Envelope family plus peak Rabi frequency (rad/us)."""
    shape_id: str = "sine"
    omega_m: float = 2.0 * np.pi * 20.0


class Pulse:
    """A concrete envelope over [0, tau] with analytic integral and derivative."""

    shape_id = ""

    def __init__(self, omega_m, tau):
        if omega_m <= 0:
            raise ZeroAreaError(f"peak Rabi frequency must be positive, got {omega_m}")
        if tau <= 0:
            raise ZeroAreaError(f"pulse duration must be positive, got {tau}")
        self.omega_m = float(omega_m)
        self.tau = float(tau)

    def value(self, t):
        raise NotImplementedError

    def integral(self, t):
        """int_0^t Omega dt'."""
        raise NotImplementedError

    def derivative(self, t):
        raise NotImplementedError

    @property
    def raw_area(self):
        return self.integral(self.tau)


class SinePulse(Pulse):
    """Omega(t) = Omega_m sin(pi t / tau)."""

    shape_id = "sine"

    def value(self, t):
        return self.omega_m * np.sin(np.pi * np.asarray(t) / self.tau)

    def integral(self, t):
        return self.omega_m * self.tau / np.pi * (1.0 - np.cos(np.pi * np.asarray(t) / self.tau))

    def derivative(self, t):
        return self.omega_m * np.pi / self.tau * np.cos(np.pi * np.asarray(t) / self.tau)


class ConstantPulse(Pulse):
    """Omega(t) = Omega_m on [0, tau]."""

    shape_id = "constant"

    def value(self, t):
        return self.omega_m * np.ones_like(np.asarray(t, dtype=float))

    def integral(self, t):
        return self.omega_m * np.asarray(t, dtype=float)

    def derivative(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))


_PULSES = {"sine": SinePulse, "constant": ConstantPulse}


def make_pulse(shape_id, omega_m, raw_area):
    """Pulse of the given family whose raw area int Omega dt equals `raw_area`."""
    if raw_area <= 0:
        raise ZeroAreaError(f"raw pulse area must be positive, got {raw_area}")
    if shape_id not in _PULSES:
        raise ValueError(f"unknown envelope family {shape_id!r} (have {sorted(_PULSES)})")
    if shape_id == "sine":
        tau = np.pi * raw_area / (2.0 * omega_m)
    else:
        tau = raw_area / omega_m
    return _PULSES[shape_id](omega_m, tau)


# ---------------------------------------------------------------------- paths

@dataclass
class PathSegment:
    """One smooth piece of a Bloch path; callables take segment-local time."""
    duration: float
    chi: Callable[[float], float]
    xi: Callable[[float], float]
    chi_dot: Callable[[float], float]
    xi_dot: Callable[[float], float]


@dataclass
class PathSpec:
    """Piecewise Bloch-sphere trajectory; xi may jump between segments."""
    segments: list
    mu: float = 1.0

    def __post_init__(self):
        if not self.segments or self.tau <= 0:
            raise PathDomainError("path must have positive total duration")

    @property
    def tau(self):
        return float(sum(s.duration for s in self.segments))

    def _locate(self, t):
        if t < -1e-12 or t > self.tau + 1e-12:
            raise PathDomainError(f"t={t} outside [0, {self.tau}]")
        acc = 0.0
        for i, seg in enumerate(self.segments):
            if t <= acc + seg.duration or i == len(self.segments) - 1:
                return i, min(max(t - acc, 0.0), seg.duration)
            acc += seg.duration
        raise PathDomainError(f"t={t} outside [0, {self.tau}]")

    def angles(self, t):
        i, s = self._locate(t)
        seg = self.segments[i]
        return float(seg.chi(s)), float(seg.xi(s))

    def rates(self, t):
        i, s = self._locate(t)
        seg = self.segments[i]
        return float(seg.chi_dot(s)), float(seg.xi_dot(s))

    def xi_jumps(self):
        """(time, chi, delta_xi) at each inter-segment boundary."""
        out = []
        acc = 0.0
        for a, b in zip(self.segments[:-1], self.segments[1:]):
            acc += a.duration
            dxi = float(b.xi(0.0)) - float(a.xi(a.duration))
            out.append((acc, float(a.chi(a.duration)), dxi))
        return out

    def validate(self, samples=257):
        for seg in self.segments:
            ts = np.linspace(0.0, seg.duration, samples)
            chis = np.array([seg.chi(s) for s in ts])
            if chis.min() < -1e-9 or chis.max() > np.pi + 1e-9:
                raise PathDomainError("chi leaves [0, pi]")
        return self


def dressed_states(path: PathSpec, t):
    """Orthonormal dressed pair |psi_1>, |psi_2> at time t."""
    chi, xi = path.angles(t)
    c, s = np.cos(chi / 2.0), np.sin(chi / 2.0)
    psi1 = np.array([c, s * np.exp(1j * xi)], dtype=complex)
    psi2 = np.array([s * np.exp(-1j * xi), -c], dtype=complex)
    return psi1, psi2


def build_invariant(path: PathSpec, t):
    """Lewis-Riesenfeld invariant (mu/2) n(t).sigma with n the dressed Bloch axis."""
    chi, xi = path.angles(t)
    return (path.mu / 2.0) * np.array(
        [[np.cos(chi), np.sin(chi) * np.exp(-1j * xi)],
         [np.sin(chi) * np.exp(1j * xi), -np.cos(chi)]], dtype=complex)


# --------------------------------------------------------------------- drives

@dataclass
class DriveSchedule:
    """Engineered control fields for the two-level Hamiltonian over [0, tau]."""
    pulse: Pulse
    delta: Union[float, Callable]
    phi: Callable[[float], float]
    tau: float
    shape_id: str
    phi0: float = 0.0
    phi_dot: Optional[Callable] = None
    path: Optional[PathSpec] = None
    gate_spec: Optional["GateSpec"] = None
    label: str = ""

    def omega(self, t):
        return np.maximum(self.pulse.value(t), 0.0)

    def delta_at(self, t):
        return self.delta(t) if callable(self.delta) else self.delta

    @property
    def is_constant_delta(self):
        return not callable(self.delta)

    @property
    def raw_area(self):
        return float(self.pulse.integral(self.tau))

    @property
    def pulse_area(self):
        return 0.5 * self.raw_area

    def hamiltonian(self, t):
        d = self.delta_at(t)
        o = float(self.omega(t))
        p = float(self.phi(t))
        e = o * np.exp(-1j * p)
        return 0.5 * np.array([[-d, e], [np.conj(e), d]], dtype=complex)

    def validate(self, rel_tol=1e-9):
        """Constant Delta must reproduce the quadrature mean -<xi' sin^2 chi>."""
        if self.is_constant_delta and self.path is not None:
            ref = constant_detuning(self.path)
            scale = max(1.0, abs(self.delta))
            if abs(self.delta - ref) > rel_tol * scale:
                raise SingularPathError(
                    f"constant detuning {self.delta:.9g} != quadrature mean {ref:.9g}")
        return self


def latitude_path(chi, xi0, xi_minus, pulse: Pulse, detuning="constant", mu=1.0):
    """PathSpec of a constant-latitude trajectory engineered for the given pulse."""
    sc = np.sin(chi) * np.cos(chi)
    if detuning == "constant":
        delta = -np.tan(chi) * pulse.raw_area / pulse.tau
        xi = lambda t: xi0 - delta * t + pulse.integral(t) / np.tan(chi)
        xi_dot = lambda t: -delta + pulse.value(t) / np.tan(chi)
    else:
        xi = lambda t: xi0 + pulse.integral(t) / sc
        xi_dot = lambda t: pulse.value(t) / sc
    seg = PathSegment(pulse.tau, lambda t: chi, xi, lambda t: 0.0, xi_dot)
    return PathSpec([seg], mu=mu)


def drive_from_latitude_path(chi, xi0, xi_minus, envelope: EnvelopeSpec,
                             sign=+1, detuning="constant"):
    """Inverse-engineer the drive for a constant-latitude path.

    The azimuth advances by `xi_minus` over the gate with phi(t) = xi(t) +/- pi,
    which fixes the raw pulse area to xi_minus sin(chi) cos(chi) and, for the
    constant strategy, Delta = -(1/tau) int Omega tan(chi) dt.  The duration
    follows from the envelope family.  `detuning` selects the constant-Delta
    strategy or the pointwise-null one (Delta(t) = -Omega tan chi).
    """
    for bad, name in ((0.0, "0"), (np.pi / 2, "pi/2"), (np.pi, "pi")):
        if abs(chi - bad) < 1e-9:
            raise SingularPathError(f"chi = {name} is excluded for latitude gates")
    if not 0.0 < chi < np.pi:
        raise SingularPathError(f"chi must lie in (0, pi), got {chi}")
    if xi_minus == 0.0:
        raise ZeroAreaError("xi_minus = 0 requests a vanishing pulse area")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    raw_area = xi_minus * np.sin(chi) * np.cos(chi)
    if raw_area <= 0.0:
        raise SingularPathError(
            "phi = xi +/- pi cannot realize this path: xi_minus and cos(chi) "
            "must have the same sign")
    if detuning not in ("constant", "instantaneous"):
        raise ValueError(f"unknown detuning strategy {detuning!r}")

    pulse = make_pulse(envelope.shape_id, envelope.omega_m, raw_area)
    tau = pulse.tau
    path = latitude_path(chi, xi0, xi_minus, pulse, detuning=detuning)
    phi0 = xi0 + sign * np.pi
    cot = 1.0 / np.tan(chi)
    if detuning == "constant":
        delta = -np.tan(chi) * raw_area / tau
        phi = lambda t: phi0 - delta * t + cot * pulse.integral(t)
        phi_dot = lambda t: -delta + cot * pulse.value(t)
    else:
        sc = np.sin(chi) * np.cos(chi)
        delta = lambda t: -pulse.value(t) * np.tan(chi)
        phi = lambda t: phi0 + pulse.integral(t) / sc
        phi_dot = lambda t: pulse.value(t) / sc

    spec = GateSpec(Gamma=0.5 * xi_minus * np.cos(chi), chi0=chi, chi_tau=chi,
                    xi0=xi0, xi_tau=xi0 + xi_minus)
    drive = DriveSchedule(pulse=pulse, delta=delta, phi=phi, tau=tau,
                          shape_id=envelope.shape_id, phi0=phi0, phi_dot=phi_dot,
                          path=path, gate_spec=spec)
    return drive.validate()


def resonant_segment(phi_const, envelope: EnvelopeSpec, raw_area, path=None, label=""):
    """Resonant (Delta = 0) constant-phase segment of given raw area int Omega dt."""
    pulse = make_pulse(envelope.shape_id, envelope.omega_m, raw_area)
    return DriveSchedule(pulse=pulse, delta=0.0, phi=lambda t: phi_const,
                         tau=pulse.tau, shape_id=envelope.shape_id, phi0=phi_const,
                         phi_dot=lambda t: 0.0, path=path, label=label)


# ----------------------------------------------------------------- detunings

def constant_detuning(path: PathSpec, nodes=QUAD_NODES):
    """Delta = -(1/tau) int xi' sin^2(chi) dt by per-segment Simpson quadrature."""
    total = 0.0
    for seg in path.segments:
        ts = np.linspace(0.0, seg.duration, nodes)
        y = np.array([seg.xi_dot(s) * np.sin(seg.chi(s)) ** 2 for s in ts])
        total += simpson(y, ts[1] - ts[0])
    return -total / path.tau


def instantaneous_detuning(path: PathSpec, t):
    """Delta(t) = -xi'(t) sin^2(chi(t)), the pointwise dynamical-phase null."""
    chi, _ = path.angles(t)
    _, xid = path.rates(t)
    return -xid * np.sin(chi) ** 2


# -------------------------------------------------------------------- phases

@dataclass
class PhaseRecord:
    """Phase decomposition of one engineered evolution (all radians)."""
    gamma: float          # overall phase of the dressed pair
    gamma_d: float        # dynamical part
    gamma_g: float        # Pancharatnam geometric part
    gamma_t: float        # total relative phase


def _delta_lookup(drive):
    """Global-time Delta(t) for a single drive or an ordered segment list."""
    if isinstance(drive, DriveSchedule):
        return drive.delta_at
    segs = list(drive)
    bounds = np.cumsum([s.tau for s in segs])

    def delta_at(t):
        i = int(np.searchsorted(bounds, t, side="left"))
        i = min(i, len(segs) - 1)
        t0 = bounds[i] - segs[i].tau
        return segs[i].delta_at(t - t0)

    return delta_at


def dynamical_phase(path: PathSpec, drive, nodes=QUAD_NODES):
    """gamma_d = 1/2 int (Delta + xi' sin^2 chi)/cos(chi) dt.

    Points where the numerator vanishes are taken as zero even on the equator;
    a diverging integrand (chi crossing pi/2 with finite numerator) raises.
    """
    delta_at = _delta_lookup(drive)
    total = 0.0
    offset = 0.0
    for seg in path.segments:
        ts = np.linspace(0.0, seg.duration, nodes)
        num = np.array([delta_at(offset + s) + seg.xi_dot(s) * np.sin(seg.chi(s)) ** 2
                        for s in ts])
        cos = np.array([np.cos(seg.chi(s)) for s in ts])
        y = np.zeros_like(num)
        live = np.abs(num) > 1e-13 * max(1.0, np.max(np.abs(num)))
        if np.any(live & (np.abs(cos) < 1e-3)):
            raise PhaseSingularityError("dynamical-phase integrand diverges at chi = pi/2")
        with np.errstate(divide="ignore", invalid="ignore"):
            y[live] = num[live] / cos[live]
        total += 0.5 * simpson(y, ts[1] - ts[0])
        offset += seg.duration
    return total


def _connection_phase(path: PathSpec, nodes=QUAD_NODES):
    """-1/2 int (1 - cos chi) xi' dt, including the inter-segment xi jumps."""
    total = 0.0
    for seg in path.segments:
        ts = np.linspace(0.0, seg.duration, nodes)
        y = np.array([(1.0 - np.cos(seg.chi(s))) * seg.xi_dot(s) for s in ts])
        total += simpson(y, ts[1] - ts[0])
    for _, chi, dxi in path.xi_jumps():
        total += (1.0 - np.cos(chi)) * dxi
    return -0.5 * total


def overall_phase(path: PathSpec, drive, nodes=QUAD_NODES):
    """gamma(tau): dynamical part plus the Aharonov-Anandan connection term."""
    return dynamical_phase(path, drive, nodes) + _connection_phase(path, nodes)


def total_relative_phase(path: PathSpec, drive, nodes=QUAD_NODES):
    """gamma_t = gamma(tau) + arg <psi_1(0)|psi_1(tau)>."""
    psi_a, _ = dressed_states(path, 0.0)
    psi_b, _ = dressed_states(path, path.tau)
    ov = np.vdot(psi_a, psi_b)
    if abs(ov) < 1e-12:
        raise UndefinedPhaseError("endpoint dressed states are orthogonal")
    return overall_phase(path, drive, nodes) + float(np.angle(ov))


def pancharatnam_phase(path: PathSpec, drive, nodes=QUAD_NODES):
    """Gauge-invariant geometric phase gamma_g = gamma_t - gamma_d."""
    return total_relative_phase(path, drive, nodes) - dynamical_phase(path, drive, nodes)


def phase_record(path: PathSpec, drive, nodes=QUAD_NODES):
    gd = dynamical_phase(path, drive, nodes)
    g = gd + _connection_phase(path, nodes)
    psi_a, _ = dressed_states(path, 0.0)
    psi_b, _ = dressed_states(path, path.tau)
    ov = np.vdot(psi_a, psi_b)
    if abs(ov) < 1e-12:
        raise UndefinedPhaseError("endpoint dressed states are orthogonal")
    gt = g + float(np.angle(ov))
    return PhaseRecord(gamma=g, gamma_d=gd, gamma_g=gt - gd, gamma_t=gt)


# ------------------------------------------------------------- target unitary

@dataclass
class GateSpec:
    """Boundary data (Gamma, chi, xi endpoints) fixing the ideal gate."""
    Gamma: float
    chi0: float
    chi_tau: float
    xi0: float
    xi_tau: float

    @property
    def chi_minus(self):
        return self.chi_tau - self.chi0

    @property
    def chi_plus(self):
        return self.chi_tau + self.chi0

    @property
    def xi_minus(self):
        return self.xi_tau - self.xi0

    @property
    def xi_plus(self):
        return self.xi_tau + self.xi0


def target_unitary(spec: GateSpec):
    """Ideal evolution operator [[u1, u2], [-u2*, u1*]] from the boundary data."""
    g, cm, cp = spec.Gamma, spec.chi_minus, spec.chi_plus
    u1 = (np.cos(g) * np.cos(cm / 2.0) + 1j * np.sin(g) * np.cos(cp / 2.0)) \
        * np.exp(-0.5j * spec.xi_minus)
    u2 = (-np.cos(g) * np.sin(cm / 2.0) + 1j * np.sin(g) * np.sin(cp / 2.0)) \
        * np.exp(-0.5j * spec.xi_plus)
    u = np.array([[u1, u2], [-np.conj(u2), np.conj(u1)]], dtype=complex)
    assert_unitary(u, 1e-12, "target unitary")
    return u
