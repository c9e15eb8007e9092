"""Constructors for the four single-qubit gate families and the two-qubit gate.

Schemes:
  NSGP      one-step noncyclic gates on a constant-latitude path (smooth phases)
  OSSP      cyclic orange-slice gates: two meridians with phase jumps at the poles
  DYN       plain resonant (dynamical) rotations, possibly composite
  LONGITUDE noncyclic smooth gates along a meridian through the south pole

Every constructor returns a GateRecipe bundling the drive segments, the analytic
target unitary, the effective pulse area S = int Omega dt / 2 and, where the
construction leaves a residual frame rotation, the R_z prefix angle.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.special import jv

from .core import TWO_PI, assert_unitary, from_mhz
from .errors import SingularPathError
from .paths import (
    EnvelopeSpec,
    GateSpec,
    PathSegment,
    PathSpec,
    drive_from_latitude_path,
    resonant_segment,
    simpson,
    target_unitary,
)


class Scheme(str, Enum):
    NSGP = "NSGP"
    OSSP = "OSSP"
    DYN = "DYN"
    LONGITUDE = "LONGITUDE"


NAMED_GATES = ("hadamard", "phase", "pi8")

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)


def rx(theta):
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta):
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta):
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


@dataclass
class GateRecipe:
    """A gate as drive segments plus its analytic target."""
    scheme: Scheme
    label: str
    segments: list
    target: np.ndarray
    pulse_area: float
    rz_prefix: Optional[float] = None
    path: Optional[PathSpec] = None
    gate_spec: Optional[GateSpec] = None

    def __post_init__(self):
        self.target = np.asarray(self.target, dtype=complex)
        assert_unitary(self.target, 1e-12, f"{self.label} target")

    @property
    def tau(self):
        return float(sum(s.tau for s in self.segments))


def pulse_area(recipe: GateRecipe, nodes=4097):
    """S = sum over segments of int Omega dt / 2, by Simpson quadrature."""
    total = 0.0
    for seg in recipe.segments:
        ts = np.linspace(0.0, seg.tau, nodes)
        total += simpson(seg.omega(ts), ts[1] - ts[0])
    return 0.5 * total


# ----------------------------------------------------------------------- NSGP

def _nsgp_recipe(chi, xi0, xi_minus, envelope, label, target, rz_prefix,
                 detuning="constant"):
    drive = drive_from_latitude_path(chi, xi0, xi_minus, envelope, detuning=detuning)
    return GateRecipe(scheme=Scheme.NSGP, label=label, segments=[drive],
                      target=target, pulse_area=0.5 * drive.raw_area,
                      rz_prefix=rz_prefix, path=drive.path, gate_spec=drive.gate_spec)


def nsgp_rotation(axis, theta, envelope: EnvelopeSpec, detuning="constant"):
    """One-step latitude-path rotation about x, y or z by angle theta.

    x, y gates carry an extra R_z(xi_minus - pi) frame rotation in front of the
    target rotation; z gates are exact R_z(theta).
    """
    if not 0.0 < theta < TWO_PI:
        raise SingularPathError(f"theta must lie in (0, 2 pi), got {theta}")
    if axis in ("x", "y"):
        if abs(theta - np.pi) < 1e-12:
            raise SingularPathError("theta = pi puts the path on the equator (chi = pi/2)")
        chi = theta / 2.0
        xi_minus = np.pi / np.cos(chi)
        xi0 = np.pi / 2.0 if axis == "x" else np.pi
        prefix = xi_minus - np.pi
        base = rx(theta) if axis == "x" else ry(theta)
        target = rz(prefix) @ base
        return _nsgp_recipe(chi, xi0, xi_minus, envelope, f"nsgp_r{axis}", target,
                            prefix, detuning)
    if axis == "z":
        xi_minus = theta + TWO_PI
        chi = np.arccos(TWO_PI / xi_minus)
        return _nsgp_recipe(chi, 0.0, xi_minus, envelope, "nsgp_rz", rz(theta),
                            None, detuning)
    raise ValueError(f"axis must be x, y or z, got {axis!r}")


def nsgp_named(gate, envelope: EnvelopeSpec, detuning="constant"):
    """Hadamard-like, Phase or pi/8 gate on the latitude path."""
    if gate == "hadamard":
        chi, xi0 = np.pi / 4.0, 0.0
        xi_minus = np.pi / np.cos(chi)  # sqrt(2) pi
        spec = GateSpec(Gamma=0.5 * xi_minus * np.cos(chi), chi0=chi, chi_tau=chi,
                        xi0=xi0, xi_tau=xi0 + xi_minus)
        return _nsgp_recipe(chi, xi0, xi_minus, envelope, "nsgp_hadamard",
                            target_unitary(spec), xi_minus, detuning)
    if gate == "phase":
        r = nsgp_rotation("z", np.pi / 2.0, envelope, detuning)
        r.label = "nsgp_phase"
        return r
    if gate == "pi8":
        r = nsgp_rotation("z", np.pi / 4.0, envelope, detuning)
        r.label = "nsgp_pi8"
        return r
    raise ValueError(f"unknown gate {gate!r} (have {NAMED_GATES})")


# ----------------------------------------------------------------------- OSSP

def _monotone_chi_segment(pulse, chi_start, direction, xi_const):
    """Path segment with chi' = direction * Omega(t) at fixed azimuth."""
    return PathSegment(
        duration=pulse.tau,
        chi=lambda t, c0=chi_start, d=direction: c0 + d * pulse.integral(t),
        xi=lambda t, x=xi_const: x,
        chi_dot=lambda t, d=direction: d * pulse.value(t),
        xi_dot=lambda t: 0.0,
    )


def ossp_gate(gamma_g, chi0, xi0, xi1, envelope: EnvelopeSpec):
    """Cyclic orange-slice gate: meridian descents/ascents with pole mutations.

    Resonant throughout; the geometric phase gamma_g = xi1 - xi0 accumulates at
    the south-pole azimuth jump.  Raw segment areas are (chi0, pi, pi - chi0),
    so the effective pulse area is always pi.
    """
    if abs(gamma_g - (xi1 - xi0)) > 1e-12:
        raise ValueError("OSSP requires gamma_g = xi1 - xi0")
    plan = [
        (xi0 - np.pi / 2.0, chi0),
        (xi1 + np.pi / 2.0, np.pi),
        (xi0 - np.pi / 2.0, np.pi - chi0),
    ]
    segments = []
    path_segments = []
    # traversal: (chi0, xi0) -> north pole -> south pole along xi1 -> back to chi0
    chi_cursor, direction, xi_here = chi0, -1.0, (xi0, xi1, xi0)
    for i, (phi_c, area) in enumerate(plan):
        if area <= 1e-12:
            continue
        seg = resonant_segment(phi_c, envelope, area, label=f"ossp_seg{i}")
        segments.append(seg)
        start = (chi0, 0.0, np.pi)[i]
        direction = (-1.0, +1.0, -1.0)[i]
        path_segments.append(_monotone_chi_segment(seg.pulse, start, direction, xi_here[i]))
    spec = GateSpec(Gamma=gamma_g, chi0=chi0, chi_tau=chi0, xi0=xi0, xi_tau=xi0)
    return GateRecipe(scheme=Scheme.OSSP, label="ossp", segments=segments,
                      target=target_unitary(spec),
                      pulse_area=np.pi, path=PathSpec(path_segments),
                      gate_spec=spec)


def ossp_named(gate, envelope: EnvelopeSpec):
    if gate == "hadamard":
        r = ossp_gate(np.pi / 2.0, np.pi / 4.0, 0.0, np.pi / 2.0, envelope)
    elif gate == "phase":
        r = ossp_gate(-np.pi / 4.0, 0.0, 0.0, -np.pi / 4.0, envelope)
    elif gate == "pi8":
        r = ossp_gate(-np.pi / 8.0, 0.0, 0.0, -np.pi / 8.0, envelope)
    else:
        raise ValueError(f"unknown gate {gate!r} (have {NAMED_GATES})")
    r.label = f"ossp_{gate}"
    return r


# ------------------------------------------------------------------ dynamical

def u_d(theta_d, phi_d):
    """Resonant constant-phase rotation by pulse angle theta_d about cos/sin(phi_d)."""
    c, s = np.cos(theta_d / 2.0), np.sin(theta_d / 2.0)
    return np.array([[c, -1j * s * np.exp(-1j * phi_d)],
                     [-1j * s * np.exp(1j * phi_d), c]], dtype=complex)


def dynamical_gate(theta_d, phi_d, envelope: EnvelopeSpec):
    """Single resonant segment U_d(theta_d, phi_d)."""
    seg = resonant_segment(phi_d, envelope, theta_d, label="dyn")
    return GateRecipe(scheme=Scheme.DYN, label="dyn", segments=[seg],
                      target=u_d(theta_d, phi_d), pulse_area=theta_d / 2.0)


def _dyn_composite(label, steps_time_order, envelope):
    segments = [resonant_segment(phi_d, envelope, th, label=f"{label}_seg{i}")
                for i, (th, phi_d) in enumerate(steps_time_order)]
    target = np.eye(2, dtype=complex)
    for th, phi_d in steps_time_order:
        target = u_d(th, phi_d) @ target
    area = sum(th for th, _ in steps_time_order) / 2.0
    return GateRecipe(scheme=Scheme.DYN, label=label, segments=segments,
                      target=target, pulse_area=area)


def dynamical_rotation(axis, theta, envelope: EnvelopeSpec):
    if axis == "x":
        r = dynamical_gate(theta, 0.0, envelope)
    elif axis == "y":
        r = dynamical_gate(theta, np.pi / 2.0, envelope)
    elif axis == "z":
        # R_z(t) = U_d(pi/2, pi) U_d(t, -pi/2) U_d(pi/2, 0), rightmost first in time
        r = _dyn_composite("dyn_rz", [(np.pi / 2.0, 0.0), (theta, -np.pi / 2.0),
                                      (np.pi / 2.0, np.pi)], envelope)
    else:
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    r.label = f"dyn_r{axis}"
    return r


def dynamical_named(gate, envelope: EnvelopeSpec):
    if gate == "hadamard":
        r = _dyn_composite("dyn_hadamard", [(np.pi / 2.0, np.pi / 2.0), (np.pi, np.pi)],
                           envelope)
    elif gate == "phase":
        r = dynamical_rotation("z", np.pi / 2.0, envelope)
        r.label = "dyn_phase"
    elif gate == "pi8":
        r = dynamical_rotation("z", np.pi / 4.0, envelope)
        r.label = "dyn_pi8"
    else:
        raise ValueError(f"unknown gate {gate!r} (have {NAMED_GATES})")
    return r


# ------------------------------------------------------------------ longitude

def u_n(chi0, xi0):
    """Meridian-path gate through the south pole, in closed form."""
    c, s = np.cos(chi0), np.sin(chi0)
    return np.array([[c, s * np.exp(-1j * xi0)],
                     [-s * np.exp(1j * xi0), c]], dtype=complex)


def longitude_gate(chi0, xi0, envelope: EnvelopeSpec):
    """Descend the xi0 meridian from chi0 through the south pole and back up.

    The drive is a single smooth resonant pulse at constant phase xi0 + pi/2 of
    raw area 2(pi - chi0); the path is bookkept as two segments with xi jumping
    by pi at the pole, where the -pi geometric phase accumulates.
    """
    if not 0.0 <= chi0 < np.pi:
        raise SingularPathError(f"chi0 must lie in [0, pi), got {chi0}")
    phi_c = xi0 + np.pi / 2.0
    half = np.pi - chi0
    down = resonant_segment(phi_c, envelope, half, label="long_down")
    up = resonant_segment(phi_c, envelope, half, label="long_up")
    path = PathSpec([
        _monotone_chi_segment(down.pulse, chi0, +1.0, xi0),
        _monotone_chi_segment(up.pulse, np.pi, -1.0, xi0 + np.pi),
    ])
    spec = GateSpec(Gamma=-np.pi / 2.0, chi0=chi0, chi_tau=chi0,
                    xi0=xi0, xi_tau=xi0 + np.pi)
    return GateRecipe(scheme=Scheme.LONGITUDE, label="longitude",
                      segments=[down, up], target=u_n(chi0, xi0),
                      pulse_area=np.pi - chi0, path=path, gate_spec=spec)


def _long_composite(label, steps_time_order, envelope):
    parts = [longitude_gate(chi0, xi0, envelope) for chi0, xi0 in steps_time_order]
    target = np.eye(2, dtype=complex)
    for p in parts:
        target = p.target @ target
    segments = [s for p in parts for s in p.segments]
    path = PathSpec([ps for p in parts for ps in p.path.segments])
    return GateRecipe(scheme=Scheme.LONGITUDE, label=label, segments=segments,
                      target=target, pulse_area=sum(p.pulse_area for p in parts),
                      path=path)


def longitude_rotation(axis, theta, envelope: EnvelopeSpec):
    if axis == "x":
        r = longitude_gate(theta / 2.0, np.pi / 2.0, envelope)
    elif axis == "y":
        r = longitude_gate(theta / 2.0, np.pi, envelope)
    elif axis == "z":
        r = _long_composite("long_rz", [(np.pi / 4.0, np.pi / 2.0), (theta / 2.0, 0.0),
                                        (np.pi / 4.0, -np.pi / 2.0)], envelope)
    else:
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    r.label = f"long_r{axis}"
    return r


def longitude_named(gate, envelope: EnvelopeSpec):
    if gate == "hadamard":
        r = _long_composite("long_hadamard", [(np.pi / 4.0, np.pi), (np.pi / 2.0, np.pi / 2.0)],
                            envelope)
    elif gate == "phase":
        r = longitude_rotation("z", np.pi / 2.0, envelope)
        r.label = "long_phase"
    elif gate == "pi8":
        r = longitude_rotation("z", np.pi / 4.0, envelope)
        r.label = "long_pi8"
    else:
        raise ValueError(f"unknown gate {gate!r} (have {NAMED_GATES})")
    return r


# ------------------------------------------------------------------ two-qubit

SQRT_ISWAP_XI_PRIME = (np.sqrt(2.0) - 1.0) * np.pi


def sqrt_iswap_spec(g12=from_mhz(8.0), beta=1.3):
    """Root-iSWAP-like recipe on the parametrically coupled single-excitation pair.

    The effective qubit is spanned by (|10>, |01>); driving it on the chi = pi/4
    latitude with constant coupling g' = 2 g12 J1(beta) realizes
    R_z(xi') (1/sqrt2)[[1, i], [i, 1]] on that pair with xi' = (sqrt2 - 1) pi,
    and identity on |00>, |11>.  The returned 4x4 target is ordered
    (|00>, |01>, |10>, |11>).
    """
    g_eff = 2.0 * g12 * jv(1, beta)
    drive = drive_from_latitude_path(np.pi / 4.0, -np.pi / 2.0, np.sqrt(2.0) * np.pi,
                                     EnvelopeSpec("constant", g_eff))
    block = target_unitary(drive.gate_spec)  # on (|10>, |01>)
    target = np.eye(4, dtype=complex)
    target[2, 2] = block[0, 0]
    target[2, 1] = block[0, 1]
    target[1, 2] = block[1, 0]
    target[1, 1] = block[1, 1]
    return GateRecipe(scheme=Scheme.NSGP, label="sqrt_iswap", segments=[drive],
                      target=target, pulse_area=0.5 * drive.raw_area,
                      rz_prefix=SQRT_ISWAP_XI_PRIME, path=drive.path,
                      gate_spec=drive.gate_spec)


# ------------------------------------------------------------------- plumbing

def named_gate(scheme, gate, envelope: EnvelopeSpec, detuning="constant"):
    scheme = Scheme(scheme)
    if scheme is Scheme.NSGP:
        return nsgp_named(gate, envelope, detuning)
    if scheme is Scheme.OSSP:
        return ossp_named(gate, envelope)
    if scheme is Scheme.DYN:
        return dynamical_named(gate, envelope)
    return longitude_named(gate, envelope)


def ideal_propagator(recipe: GateRecipe, steps=8192):
    """Closed-system propagator of the recipe, composed segment by segment."""
    from .core import time_ordered_propagator

    u = np.eye(2, dtype=complex)
    for seg in recipe.segments:
        u = time_ordered_propagator(seg.hamiltonian, seg.tau, steps) @ u
    return u


def recipe_to_dict(recipe: GateRecipe, samples=1024):
    """JSON-ready document: sampled drives, target matrix and pulse area."""
    doc = {
        "scheme": recipe.scheme.value,
        "label": recipe.label,
        "pulse_area": recipe.pulse_area,
        "rz_prefix": recipe.rz_prefix,
        "tau": recipe.tau,
        "target_re": np.real(recipe.target).tolist(),
        "target_im": np.imag(recipe.target).tolist(),
        "segments": [],
    }
    for seg in recipe.segments:
        ts = np.linspace(0.0, seg.tau, samples)
        doc["segments"].append({
            "tau": seg.tau,
            "shape_id": seg.shape_id,
            "omega_m": seg.pulse.omega_m,
            "delta_constant": None if callable(seg.delta) else seg.delta,
            "t": ts.tolist(),
            "omega": np.asarray(seg.omega(ts), dtype=float).tolist(),
            "delta": [float(seg.delta_at(t)) for t in ts],
            "phi": [float(seg.phi(t)) for t in ts],
        })
    return doc
