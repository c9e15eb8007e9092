"""Lindblad evolution, systematic-error injection and fidelity metrics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    DEFAULT_STEPS,
    check_density_matrix,
    dissipator_matrix,
    ladder_ops,
    rk4_evolve,
    superoperator_propagator,
    unvec,
    vec,
)
from .errors import ConfigError, InvalidNoiseError
from .paths import DriveSchedule


@dataclass(frozen=True)
class NoiseConfig:
    """Decay/dephasing rates (rad/us) of one or two qubits."""
    kappa1: float = 0.0
    kappa2: float = 0.0
    kappa1p: Optional[float] = None
    kappa2p: Optional[float] = None

    def __post_init__(self):
        for r in (self.kappa1, self.kappa2, self.kappa1p, self.kappa2p):
            if r is not None and r < 0:
                raise InvalidNoiseError(f"negative rate {r}")

    def collapse_ops(self, levels=2, total_qubits=1):
        """(rate, operator) pairs: lowering + number projector per qubit."""
        b1, bz1 = ladder_ops(levels, 1, total_qubits)
        ops = [(self.kappa1, b1), (self.kappa2, bz1)]
        if total_qubits == 2:
            k1p = self.kappa1 if self.kappa1p is None else self.kappa1p
            k2p = self.kappa2 if self.kappa2p is None else self.kappa2p
            b2, bz2 = ladder_ops(levels, 2, total_qubits)
            ops += [(k1p, b2), (k2p, bz2)]
        return ops


@dataclass(frozen=True)
class ErrorConfig:
    """Systematic qubit-frequency drift and drive-amplitude deviation.

    delta is in units of the peak Rabi frequency; epsilon is fractional.
    """
    delta: float = 0.0
    epsilon: float = 0.0


def inject_error(drive: DriveSchedule, err: ErrorConfig, omega_m):
    """Two-level Hamiltonian with drift delta*Omega_m and amplitude factor 1+epsilon."""
    def hamiltonian(t):
        d = drive.delta_at(t) + err.delta * omega_m
        o = (1.0 + err.epsilon) * float(drive.omega(t))
        e = o * np.exp(-1j * float(drive.phi(t)))
        return 0.5 * np.array([[-d, e], [np.conj(e), d]], dtype=complex)
    return hamiltonian


def lindblad_evolve(hamiltonian, rho0, collapse_ops, tau, steps=DEFAULT_STEPS,
                    snapshot_steps=None, check=True):
    """Integrate rho' = -i[H, rho] + sum_k k_k (2 b rho b+ - b+b rho - rho b+b).

    Direct RK4 on the density matrix.  With `snapshot_steps`, also returns the
    density matrices recorded at those step indices.
    """
    if steps < 1 or tau / steps == 0.0:
        raise ConfigError(f"invalid step configuration: tau={tau}, steps={steps}")
    rho0 = np.asarray(rho0, dtype=complex)
    if check:
        check_density_matrix(rho0)
    dim = rho0.shape[0]
    if callable(hamiltonian):
        hfun = hamiltonian
    else:
        h0 = np.asarray(hamiltonian, dtype=complex)
        hfun = lambda t: h0
    dmat = dissipator_matrix(dim, collapse_ops)
    eye = np.eye(dim, dtype=complex)

    def gen(t):
        h = np.asarray(hfun(t), dtype=complex)
        return -1j * (np.kron(h, eye) - np.kron(eye, h.T)) + dmat

    out = rk4_evolve(gen, vec(rho0), tau, steps, snapshot_steps=snapshot_steps)
    if snapshot_steps is not None:
        v, snaps = out
        return unvec(v, dim), {k: unvec(s, dim) for k, s in snaps.items()}
    return unvec(out, dim)


# ----------------------------------------------------------------- fidelities

def state_fidelity(rho, psi):
    """<psi|rho|psi> for a pure target state."""
    rho = np.asarray(rho, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    f = np.vdot(psi, rho @ psi)
    if abs(f.imag) > 1e-12:
        raise InvalidNoiseError(f"state fidelity has imaginary part {f.imag:.3e}")
    return float(f.real)


def _theta_states(grid_points):
    """psi_i(theta) = cos(theta)|0> + sin(theta)|1> on a uniform closed grid."""
    th = np.linspace(0.0, 2.0 * np.pi, grid_points)
    return np.stack([np.cos(th), np.sin(th)], axis=1).astype(complex)


def _pauli_basis():
    """P_i(theta) = A0 + cos(2 theta) A1 + sin(2 theta) A2 on the qubit subspace."""
    a0 = 0.5 * np.eye(2, dtype=complex)
    a1 = 0.5 * np.array([[1, 0], [0, -1]], dtype=complex)
    a2 = 0.5 * np.array([[0, 1], [1, 0]], dtype=complex)
    return [a0, a1, a2]


def _coeff_grid(grid_points):
    th = np.linspace(0.0, 2.0 * np.pi, grid_points)
    return np.stack([np.ones_like(th), np.cos(2 * th), np.sin(2 * th)], axis=1)


def _embed(mat, dim):
    out = np.zeros((dim, dim), dtype=complex)
    out[: mat.shape[0], : mat.shape[1]] = mat
    return out


def _channel_apply(channel, rhos):
    """Apply a superoperator matrix or an evolve-callback to stacked matrices."""
    if callable(channel):
        return np.stack([np.asarray(channel(r), dtype=complex) for r in rhos])
    s = np.asarray(channel, dtype=complex)
    dim = int(round(np.sqrt(s.shape[0])))
    flat = np.stack([vec(r) for r in rhos])
    return (s @ flat.T).T.reshape(len(rhos), dim, dim)


def _channel_dim(channel, fallback):
    if callable(channel):
        return fallback
    s = np.asarray(channel)
    return int(round(np.sqrt(s.shape[0])))


def fidelity_table(channel, target, dim=None):
    """T[j, k] = Tr[U A_j U^+ . channel(A_k)] over the 3-element Pauli-cos basis.

    The theta-averaged gate fidelity is a quadratic form in this table, which
    lets one channel evaluation serve any number of initial states.
    """
    target = np.asarray(target, dtype=complex)
    dim = _channel_dim(channel, dim or target.shape[0])
    basis = [_embed(a, dim) for a in _pauli_basis()]
    evolved = _channel_apply(channel, basis)
    tgt = _embed(target, dim)
    # pad target to a full-space unitary so B_j = U A_j U^+ stays in-subspace
    for k in range(target.shape[0], dim):
        tgt[k, k] = 1.0
    table = np.empty((3, 3), dtype=complex)
    for j, aj in enumerate(basis):
        bj = tgt @ aj @ tgt.conj().T
        for k in range(3):
            table[j, k] = np.trace(bj.conj().T @ evolved[k])
    return table


def gate_fidelity(channel, target, grid_points=1001):
    """Average fidelity over psi_i = cos(theta)|0> + sin(theta)|1>.

    `channel` is a superoperator matrix (dim^2 x dim^2, row-major vec) or a
    callback rho -> rho; `target` is the ideal 2x2 gate.  The average runs over
    `grid_points` uniform theta values on [0, 2 pi], endpoints included.
    """
    if grid_points < 2:
        raise ConfigError(f"grid_points must be >= 2, got {grid_points}")
    table = fidelity_table(channel, target)
    c = _coeff_grid(grid_points)
    f = np.einsum("nj,jk,nk->n", c, np.real(table), c)
    return float(f.mean())


def gate_fidelity_direct(evolve, target, grid_points=1001, dim=2):
    """Slow verification path: evolve each initial state individually."""
    states = _theta_states(grid_points)
    tgt = np.asarray(target, dtype=complex)
    total = 0.0
    for psi in states:
        psi_d = np.zeros(dim, dtype=complex)
        psi_d[:2] = psi
        rho = np.outer(psi_d, psi_d.conj())
        out = np.asarray(evolve(rho), dtype=complex)
        psi_t = np.zeros(dim, dtype=complex)
        psi_t[:2] = tgt @ psi
        total += float(np.real(np.vdot(psi_t, out @ psi_t)))
    return total / grid_points


def two_qubit_fidelity_table(channel, target, dim_single=3,
                             computational_indices=None):
    """9x9 table version of fidelity_table for product-state averages."""
    target = np.asarray(target, dtype=complex)
    dim = _channel_dim(channel, dim_single * dim_single)
    if computational_indices is None:
        # |ab> with a, b in {0, 1} inside a dim_single x dim_single register
        computational_indices = [0, 1, dim_single, dim_single + 1]
    basis1 = _pauli_basis()
    mats = []
    for aj in basis1:
        for ak in basis1:
            m = np.zeros((dim, dim), dtype=complex)
            prod = np.kron(aj, ak)
            m[np.ix_(computational_indices, computational_indices)] = prod
            mats.append(m)
    evolved = _channel_apply(channel, mats)
    tgt = np.eye(dim, dtype=complex)
    tgt[np.ix_(computational_indices, computational_indices)] = target
    table = np.empty((9, 9), dtype=complex)
    for j, mj in enumerate(mats):
        bj = tgt @ mj @ tgt.conj().T
        for k in range(9):
            table[j, k] = np.trace(bj.conj().T @ evolved[k])
    return table


def two_qubit_gate_fidelity(channel, target, grid=(101, 101), dim_single=3,
                            computational_indices=None):
    """Average fidelity over the product grid (cos t1|0>+sin t1|1>) x (same in t2)."""
    table = np.real(two_qubit_fidelity_table(channel, target, dim_single,
                                             computational_indices))
    c1 = _coeff_grid(grid[0])
    c2 = _coeff_grid(grid[1])
    m1 = c1.T @ c1 / grid[0]
    m2 = c2.T @ c2 / grid[1]
    weight = np.kron(m1, m2)
    return float(np.sum(weight * table))


def recipe_channel(recipe, noise: NoiseConfig, err: ErrorConfig = ErrorConfig(),
                   steps=DEFAULT_STEPS, levels=2):
    """Lindblad superoperator of a (possibly multi-segment) two-level recipe.

    The qubit may be embedded in a `levels`-dimensional register, in which case
    the drive couples the lowest two levels only (leakage handled by the
    transmon layer, not here).
    """
    collapse = noise.collapse_ops(levels=levels)
    omega_m = max(seg.pulse.omega_m for seg in recipe.segments)
    s = np.eye(levels * levels, dtype=complex)
    for seg in recipe.segments:
        h2 = inject_error(seg, err, omega_m)
        if levels == 2:
            hfun = h2
        else:
            def hfun(t, h2=h2):
                return _embed(h2(t), levels)
        s = superoperator_propagator(hfun, collapse, seg.tau, steps=steps) @ s
    return s
