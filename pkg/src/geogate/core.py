"""Dense complex linear algebra and fixed-step propagators for small quantum systems.

Conventions used package-wide:
  * frequencies are angular, rad/us; times in us; hbar = 1
  * density matrices are vectorized row-major, so vec(A rho B) = (A kron B^T) vec(rho)
  * the dissipator of a collapse operator b with rate k is
        k * (2 b rho b^+  -  b^+ b rho  -  rho b^+ b)
    i.e. the excited-state population of a two-level decay channel falls as exp(-2 k t)
"""
from __future__ import annotations

import numpy as np

from .errors import ContractViolationError, InvalidDimensionError, InvalidNoiseError

TWO_PI = 2.0 * np.pi

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

DEFAULT_STEPS = 8192


def from_mhz(f):
    """Linear frequency in MHz -> angular frequency in rad/us."""
    return TWO_PI * f


def ket(dim, index):
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def dag(a):
    return np.asarray(a).conj().T


def kron_all(*ops):
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


# ---------------------------------------------------------------- contracts

def hermiticity_defect(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T)))


def unitarity_defect(u):
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def assert_hermitian(a, tol=1e-12, what="operator"):
    d = hermiticity_defect(a)
    if d > tol:
        raise ContractViolationError(f"{what} is not Hermitian (defect {d:.3e} > {tol:.1e})")


def assert_unitary(u, tol=1e-9, what="operator"):
    d = unitarity_defect(u)
    if d > tol:
        raise ContractViolationError(f"{what} is not unitary (defect {d:.3e} > {tol:.1e})")


def check_density_matrix(rho, trace_tol=1e-9, herm_tol=1e-10, eig_tol=1e-9):
    rho = np.asarray(rho)
    if abs(np.trace(rho) - 1.0) > trace_tol:
        raise ContractViolationError(f"trace {np.trace(rho):.12f} != 1")
    if hermiticity_defect(rho) > herm_tol:
        raise ContractViolationError("density matrix not Hermitian")
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if w.min() < -eig_tol:
        raise ContractViolationError(f"negative eigenvalue {w.min():.3e}")
    return rho


def phase_aligned_distance(u, v):
    """max-abs distance between u and v after optimally aligning a global phase."""
    u = np.asarray(u)
    v = np.asarray(v)
    tr = np.trace(v.conj().T @ u)
    if abs(tr) < 1e-300:
        return float(np.max(np.abs(u - v)))
    return float(np.max(np.abs(u - (tr / abs(tr)) * v)))


# ---------------------------------------------------------------- operators

def ladder_ops(levels, qubit_index=1, total_qubits=1):
    """Lowering operator and number projector of one qubit, tensored with identities.

    Returns (b_minus, b_z) with b_minus = sum_k sqrt(k)|k-1><k| and
    b_z = sum_k k|k><k|, truncated to `levels`.  `qubit_index` is 1-based.
    """
    if levels < 2:
        raise InvalidDimensionError(f"need at least 2 levels, got {levels}")
    if not 1 <= qubit_index <= total_qubits:
        raise InvalidDimensionError(f"qubit_index {qubit_index} outside 1..{total_qubits}")
    k = np.arange(1, levels)
    b = np.zeros((levels, levels), dtype=complex)
    b[k - 1, k] = np.sqrt(k)
    bz = np.diag(np.arange(levels, dtype=float)).astype(complex)
    eye = np.eye(levels, dtype=complex)
    factors_b = [b if m == qubit_index else eye for m in range(1, total_qubits + 1)]
    factors_z = [bz if m == qubit_index else eye for m in range(1, total_qubits + 1)]
    return kron_all(*factors_b), kron_all(*factors_z)


# ------------------------------------------------------------- vectorization

def vec(rho):
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvec(v, dim=None):
    v = np.asarray(v)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    return v.reshape(dim, dim)


def conjugation_superop(u):
    """Superoperator of rho -> U rho U^+ in the row-major vec convention."""
    u = np.asarray(u, dtype=complex)
    return np.kron(u, u.conj())


def dissipator_matrix(dim, collapse_ops):
    """Sum_k rate_k * (2 b rho b^+ - b^+ b rho - rho b^+ b) as a dim^2 x dim^2 matrix."""
    eye = np.eye(dim, dtype=complex)
    d = np.zeros((dim * dim, dim * dim), dtype=complex)
    for rate, b in collapse_ops:
        if rate < 0:
            raise InvalidNoiseError(f"negative rate {rate}")
        if rate == 0:
            continue
        b = np.asarray(b, dtype=complex)
        bdb = b.conj().T @ b
        d += rate * (2.0 * np.kron(b, b.conj()) - np.kron(bdb, eye) - np.kron(eye, bdb.T))
    return d


def liouvillian(h, dissipator=None):
    """-i[H, .] (+ dissipator) in vectorized form."""
    h = np.asarray(h, dtype=complex)
    eye = np.eye(h.shape[0], dtype=complex)
    l = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    if dissipator is not None:
        l = l + dissipator
    return l


def choi_matrix(superop):
    """Choi matrix of a vec-row-major superoperator (reshuffle of indices)."""
    s = np.asarray(superop)
    d = int(round(np.sqrt(s.shape[0])))
    return s.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def check_channel(superop, tp_tol=1e-8, cp_tol=1e-7):
    """Verify trace preservation and complete positivity of a superoperator."""
    s = np.asarray(superop)
    d = int(round(np.sqrt(s.shape[0])))
    vid = np.eye(d, dtype=complex).reshape(-1)
    tp = float(np.max(np.abs(vid.conj() @ s - vid.conj())))
    if tp > tp_tol:
        raise ContractViolationError(f"channel not trace preserving (defect {tp:.3e})")
    w = np.linalg.eigvalsh(choi_matrix(s))
    if w.min() < -cp_tol:
        raise ContractViolationError(f"channel not completely positive (eig {w.min():.3e})")
    return s


# --------------------------------------------------------------- propagators

def rk4_evolve(generator, y0, tau, steps, t_start=0.0, snapshot_steps=None):
    """Integrate dy/dt = G(t) y with classic fixed-step RK4.

    `generator` maps absolute time to a matrix; y0 may be a matrix of stacked
    columns.  If `snapshot_steps` is given (sorted step indices, 1-based),
    returns (y, {step: y_at_step}).
    """
    y = np.array(y0, dtype=complex)
    h = tau / steps
    t = t_start
    snaps = {}
    want = set(snapshot_steps) if snapshot_steps is not None else None
    for n in range(steps):
        k1 = generator(t) @ y
        k2 = generator(t + 0.5 * h) @ (y + 0.5 * h * k1)
        k3 = generator(t + 0.5 * h) @ (y + 0.5 * h * k2)
        k4 = generator(t + h) @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t_start + (n + 1) * h
        if want is not None and (n + 1) in want:
            snaps[n + 1] = y.copy()
    if want is not None:
        return y, snaps
    return y


def time_ordered_propagator(hamiltonian, tau, steps=DEFAULT_STEPS, t_start=0.0,
                            check_hermitian=True, herm_tol=1e-10):
    """Unitary propagator of a time-dependent Hamiltonian over [t_start, t_start+tau].

    The Hamiltonian callable is sampled on the RK4 grid; a non-Hermitian sample
    raises ContractViolationError.
    """
    if steps < 1:
        raise InvalidDimensionError(f"steps must be >= 1, got {steps}")
    probe = np.asarray(hamiltonian(t_start), dtype=complex)
    dim = probe.shape[0]

    if check_hermitian:
        def gen(t):
            h = np.asarray(hamiltonian(t), dtype=complex)
            if hermiticity_defect(h) > herm_tol:
                raise ContractViolationError(
                    f"Hamiltonian sample at t={t:.6g} is not Hermitian")
            return -1j * h
    else:
        def gen(t):
            return -1j * np.asarray(hamiltonian(t), dtype=complex)

    return rk4_evolve(gen, np.eye(dim, dtype=complex), tau, steps, t_start)


def superoperator_propagator(hamiltonian, collapse_ops, tau, steps=DEFAULT_STEPS,
                             t_start=0.0, snapshot_steps=None):
    """Lindblad propagator as a dim^2 x dim^2 matrix acting on vec(rho).

    `hamiltonian` is a callable t -> Hermitian matrix (or a constant matrix);
    `collapse_ops` is a list of (rate, operator) pairs.
    """
    if callable(hamiltonian):
        h0 = np.asarray(hamiltonian(t_start), dtype=complex)
        hfun = hamiltonian
    else:
        h0 = np.asarray(hamiltonian, dtype=complex)
        hfun = lambda t: h0
    dim = h0.shape[0]
    dmat = dissipator_matrix(dim, collapse_ops)
    eye = np.eye(dim, dtype=complex)

    def gen(t):
        h = np.asarray(hfun(t), dtype=complex)
        return -1j * (np.kron(h, eye) - np.kron(eye, h.T)) + dmat

    return rk4_evolve(gen, np.eye(dim * dim, dtype=complex), tau, steps, t_start,
                      snapshot_steps=snapshot_steps)


def propagate_affine(parts, coeffs, v0, tau, steps, t_start=0.0):
    """Batched RK4 for generators of the form G_b(t) = sum_k c[b,k] * M_k(t).

    parts:  callable t -> list of K (m, m) arrays shared across the batch
    coeffs: (B, K) array
    v0:     (m, R) initial columns shared by the batch, or (B, m, R)
    returns (B, m, R) propagated columns.

    The per-step cost is K matrix products of shape (m, m) @ (m, B*R), which
    keeps large parameter grids inside BLAS.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    nbatch, nparts = coeffs.shape
    v0 = np.asarray(v0, dtype=complex)
    if v0.ndim == 2:
        m, r = v0.shape
        v0 = np.broadcast_to(v0, (nbatch, m, r))
    _, m, r = v0.shape
    y = np.ascontiguousarray(v0.transpose(1, 0, 2).reshape(m, nbatch * r))
    cT = coeffs.T  # (K, B)

    def rhs(t, v):
        ms = parts(t)
        out = np.zeros_like(v)
        vr = v.reshape(m, nbatch, r)
        for k in range(nparts):
            yk = (ms[k] @ v).reshape(m, nbatch, r)
            out += (yk * cT[k][None, :, None]).reshape(m, nbatch * r)
        del vr
        return out

    h = tau / steps
    t = t_start
    for n in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t_start + (n + 1) * h
    return y.reshape(m, nbatch, r).transpose(1, 0, 2)
