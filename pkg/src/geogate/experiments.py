"""Config-driven experiment runners behind the command-line front end.

Each runner consumes a TOML config, produces one CSV artifact (metadata lines
prefixed with '#', then a header row, then '%.12g' floats -- byte-identical
across reruns of the same config) plus a JSON sidecar with run metadata.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import tomli

from . import __version__
from .core import (
    dissipator_matrix,
    from_mhz,
    liouvillian,
    propagate_affine,
    superoperator_propagator,
    time_ordered_propagator,
    vec,
)
from .errors import ConfigError
from .gates import NAMED_GATES, Scheme, named_gate, recipe_to_dict
from .opensys import (
    NoiseConfig,
    _coeff_grid,
    _pauli_basis,
    gate_fidelity,
    lindblad_evolve,
    state_fidelity,
    two_qubit_gate_fidelity,
)
from .paths import EnvelopeSpec
from .transmon import Frame, TransmonConfig, sqrt_iswap_plan, transmon_hamiltonian_fn

DEFAULT_SWEEP_STEPS = 1024
DEFAULT_GATE_STEPS = 8192


# ------------------------------------------------------------------ config IO

def load_config(path):
    try:
        with open(path, "rb") as fh:
            return tomli.load(fh)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc


def _envelope_from(cfg):
    drive = cfg.get("drive", {})
    shape = drive.get("envelope", "sine")
    if "omega_m_mhz" in drive:
        omega_m = from_mhz(float(drive["omega_m_mhz"]))
    else:
        omega_m = float(drive.get("omega_m", from_mhz(20.0)))
    return EnvelopeSpec(shape, omega_m)


def _gate_from(cfg):
    gate = cfg.get("gate", {}).get("gate", "hadamard")
    if gate not in NAMED_GATES:
        raise ConfigError(f"unknown gate {gate!r}; valid gates: {', '.join(NAMED_GATES)}")
    return gate


def _schemes_from(cfg, default=("NSGP", "OSSP", "DYN")):
    names = cfg.get("gate", {}).get("schemes", list(default))
    out = []
    for n in names:
        try:
            out.append(Scheme(n))
        except ValueError:
            valid = ", ".join(s.value for s in Scheme)
            raise ConfigError(f"unknown scheme {n!r}; valid schemes: {valid}") from None
    return out


def _steps_from(cfg, steps_override, default):
    if steps_override:
        return int(steps_override)
    return int(cfg.get("integration", {}).get("steps", default))


# ---------------------------------------------------------------- CSV writing

def write_csv(path, header, rows, meta):
    lines = [f"# {k} = {v}" for k, v in sorted(meta.items())]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(f"{float(x):.12g}" for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def write_meta(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _out_paths(cfg, out_dir):
    exp_id = cfg.get("id", "experiment")
    os.makedirs(out_dir, exist_ok=True)
    return (exp_id,
            os.path.join(out_dir, f"{exp_id}.csv"),
            os.path.join(out_dir, f"{exp_id}.meta.json"))


def _base_meta(exp_id, steps):
    return {"experiment": exp_id, "steps": steps, "version": __version__}


# ----------------------------------------------------------------- synthesize

def run_synthesize(cfg, out_dir, jobs=1, steps_override=None):
    """Sample the engineered drive of one recipe and dump recipe JSON + CSV."""
    t0 = time.time()
    exp_id, csv_path, meta_path = _out_paths(cfg, out_dir)
    env = _envelope_from(cfg)
    gate = _gate_from(cfg)
    scheme = _schemes_from(cfg, default=("NSGP",))[0]
    samples = int(cfg.get("output", {}).get("samples", 1024))
    if samples < 1024:
        raise ConfigError("synthesize needs at least 1024 samples")
    recipe = named_gate(scheme, gate, env)
    # the pointwise-null detuning variant shares tau; sampled alongside for NSGP
    twin = named_gate(scheme, gate, env, "instantaneous") \
        if scheme is Scheme.NSGP else None

    rows = []
    offset = 0.0
    per_seg = max(2, samples // len(recipe.segments))
    for seg_idx, seg in enumerate(recipe.segments):
        ts = np.linspace(0.0, seg.tau, per_seg)
        for t in ts:
            row = [offset + t, float(seg.omega(t)), float(seg.delta_at(t)),
                   float(seg.phi(t))]
            if twin is not None:
                row.append(float(twin.segments[seg_idx].delta_at(t)))
            rows.append(row)
        offset += seg.tau
    header = ["t", "omega", "delta", "phi"]
    if rows and len(rows[0]) == 5:
        header.append("delta_inst")

    meta = _base_meta(exp_id, 0)
    meta.update({"scheme": scheme.value, "gate": gate, "envelope": env.shape_id,
                 "omega_m": f"{env.omega_m:.12g}",
                 "pulse_area": f"{recipe.pulse_area:.12g}"})
    write_csv(csv_path, header, rows, meta)
    recipe_path = os.path.join(out_dir, f"{exp_id}.recipe.json")
    with open(recipe_path, "w") as fh:
        json.dump(recipe_to_dict(recipe), fh, sort_keys=True)
        fh.write("\n")
    write_meta(meta_path, {**meta, "runtime_s": time.time() - t0,
                           "recipe": os.path.basename(recipe_path)})
    return csv_path


# ------------------------------------------------------- decoherence sweep

def _kappa_sweep_one_scheme(recipe, kappas, steps):
    """Fidelity of one recipe for a batch of kappa1 = kappa2 = kappa values."""
    basis = _pauli_basis()
    v0 = np.stack([vec(a) for a in basis], axis=1)  # (4, 3)
    b_low = np.array([[0, 1], [0, 0]], dtype=complex)
    b_z = np.diag([0.0, 1.0]).astype(complex)
    d_unit = dissipator_matrix(2, [(1.0, b_low), (1.0, b_z)])
    coeffs = np.stack([np.ones_like(kappas), kappas], axis=1)
    v = v0
    for seg in recipe.segments:
        def parts(t, seg=seg):
            return [liouvillian(seg.hamiltonian(t)), d_unit]
        v = propagate_affine(parts, coeffs, v, seg.tau, steps)
    return _fidelities_from_tables(v, recipe.target)


def _fidelities_from_tables(v, target, grid_points=1001):
    """Batched (B, 4, 3) evolved Pauli-basis columns -> theta-averaged fidelity."""
    basis = _pauli_basis()
    bs = np.stack([target @ a @ target.conj().T for a in basis])  # (3, 2, 2)
    e = v.reshape(v.shape[0], 2, 2, 3)
    table = np.einsum("jqp,bpqk->bjk", bs, e)
    c = _coeff_grid(grid_points)
    m = c.T @ c / grid_points
    return np.real(np.einsum("jk,bjk->b", m, table))


def run_sweep_decoherence(cfg, out_dir, jobs=1, steps_override=None):
    """Gate fidelity vs kappa for the configured schemes (single named gate)."""
    t0 = time.time()
    exp_id, csv_path, meta_path = _out_paths(cfg, out_dir)
    env = _envelope_from(cfg)
    gate = _gate_from(cfg)
    schemes = _schemes_from(cfg)
    steps = _steps_from(cfg, steps_override, DEFAULT_SWEEP_STEPS)
    noise_cfg = cfg.get("noise", {})
    ratios = np.asarray(noise_cfg.get("kappa_ratios",
                                      np.linspace(0.0, 1e-3, 11).tolist()))
    kappas = ratios * env.omega_m

    cols = {}
    for scheme in schemes:
        recipe = named_gate(scheme, gate, env)
        cols[scheme.value.lower()] = _kappa_sweep_one_scheme(recipe, kappas, steps)

    header = ["kappa_ratio", "kappa"] + list(cols)
    rows = np.column_stack([ratios, kappas] + [cols[k] for k in cols])
    meta = _base_meta(exp_id, steps)
    meta.update({"gate": gate, "envelope": env.shape_id,
                 "omega_m": f"{env.omega_m:.12g}"})
    write_csv(csv_path, header, rows, meta)
    write_meta(meta_path, {**meta, "runtime_s": time.time() - t0,
                           "schemes": [s.value for s in schemes]})
    return csv_path


# ------------------------------------------------------------ (delta,eps) grid

def _error_grid_one_scheme(scheme, gate, env, kappa, deltas, epsilons, steps,
                           jobs=1, detuning="constant"):
    """F_G on the (delta, epsilon) product grid for one scheme + named gate."""
    dd, ee = np.meshgrid(deltas, epsilons, indexing="ij")
    coeffs = np.stack([np.ones(dd.size), dd.ravel(), ee.ravel()], axis=1)
    if jobs > 1:
        chunks = np.array_split(np.arange(dd.size), jobs)
        args = [(scheme.value, gate, env.shape_id, env.omega_m, kappa,
                 coeffs[c], steps, detuning) for c in chunks if len(c)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_error_grid_chunk, args))
        f = np.concatenate(parts)
    else:
        f = _error_grid_chunk((scheme.value, gate, env.shape_id, env.omega_m,
                               kappa, coeffs, steps, detuning))
    return f.reshape(dd.shape)


def _error_grid_chunk(args):
    scheme, gate, shape_id, omega_m, kappa, coeffs, steps, detuning = args
    env = EnvelopeSpec(shape_id, omega_m)
    recipe = named_gate(Scheme(scheme), gate, env, detuning)
    basis = _pauli_basis()
    v = np.stack([vec(a) for a in basis], axis=1)
    b_low = np.array([[0, 1], [0, 0]], dtype=complex)
    b_z = np.diag([0.0, 1.0]).astype(complex)
    dmat = dissipator_matrix(2, [(kappa, b_low), (kappa, b_z)])
    h_drift = omega_m * np.diag([-0.5, 0.5]).astype(complex)
    l_drift = liouvillian(h_drift)
    for seg in recipe.segments:
        def parts(t, seg=seg):
            h0 = seg.hamiltonian(t)
            o = float(seg.omega(t))
            p = float(seg.phi(t))
            e = 0.5 * o * np.exp(-1j * p)
            h_eps = np.array([[0.0, e], [np.conj(e), 0.0]], dtype=complex)
            return [liouvillian(h0) + dmat, l_drift, liouvillian(h_eps)]
        v = propagate_affine(parts, coeffs, v, seg.tau, steps)
    return _fidelities_from_tables(v, recipe.target)


def run_sweep_error_grid(cfg, out_dir, jobs=1, steps_override=None):
    """F_G over the systematic-error grid for each configured scheme."""
    t0 = time.time()
    exp_id, csv_path, meta_path = _out_paths(cfg, out_dir)
    env = _envelope_from(cfg)
    gate = _gate_from(cfg)
    schemes = _schemes_from(cfg)
    steps = _steps_from(cfg, steps_override, DEFAULT_SWEEP_STEPS)
    grid = cfg.get("grid", {})
    res = int(grid.get("resolution", 41))
    if res < 2:
        raise ConfigError(f"grid resolution must be >= 2, got {res}")
    dlo, dhi = grid.get("delta_range", [-0.1, 0.1])
    elo, ehi = grid.get("epsilon_range", [-0.1, 0.1])
    deltas = np.linspace(dlo, dhi, res)
    epsilons = np.linspace(elo, ehi, res)
    kappa = float(cfg.get("noise", {}).get("kappa_ratio", 4e-4)) * env.omega_m

    fields = {}
    for scheme in schemes:
        fields[scheme.value.lower()] = _error_grid_one_scheme(
            scheme, gate, env, kappa, deltas, epsilons, steps, jobs)

    dd, ee = np.meshgrid(deltas, epsilons, indexing="ij")
    header = ["delta", "epsilon"] + list(fields)
    rows = np.column_stack([dd.ravel(), ee.ravel()]
                           + [fields[k].ravel() for k in fields])
    meta = _base_meta(exp_id, steps)
    meta.update({"gate": gate, "envelope": env.shape_id,
                 "omega_m": f"{env.omega_m:.12g}", "kappa": f"{kappa:.12g}",
                 "resolution": res})
    write_csv(csv_path, header, rows, meta)
    grid_means = {k: float(np.mean(fld)) for k, fld in fields.items()}
    write_meta(meta_path, {**meta, "runtime_s": time.time() - t0,
                           "grid_means": grid_means})
    return csv_path


# ------------------------------------------------------------- omega_m scan

def transmon_gate_channel(gate, env, alpha, kappa, steps, levels=3, drag=True,
                          detuning="constant"):
    """Lindblad superoperator of one named NSGP gate on a 3-level transmon."""
    recipe = named_gate(Scheme.NSGP, gate, env, detuning)
    drive = recipe.segments[0]
    cfg = TransmonConfig(levels=levels, alpha=alpha)
    hfun = transmon_hamiltonian_fn(cfg, drive, Frame.DRIVE_ROTATING, drag=drag)
    noise = NoiseConfig(kappa1=kappa, kappa2=kappa)
    s = superoperator_propagator(hfun, noise.collapse_ops(levels=levels),
                                 drive.tau, steps=steps)
    return s, recipe


def run_optimize_omega(cfg, out_dir, jobs=1, steps_override=None):
    """Scan Omega_m for the best transmon gate fidelity (coarse + 1 MHz refine)."""
    t0 = time.time()
    exp_id, csv_path, meta_path = _out_paths(cfg, out_dir)
    gate = _gate_from(cfg)
    drive = cfg.get("drive", {})
    shape = drive.get("envelope", "sine")
    scan = cfg.get("scan", {})
    lo = float(scan.get("omega_min_mhz", 10.0))
    hi = float(scan.get("omega_max_mhz", 80.0))
    coarse = float(scan.get("coarse_step_mhz", 2.0))
    fine = float(scan.get("fine_step_mhz", 1.0))
    tr = cfg.get("transmon", {})
    alpha = from_mhz(float(tr.get("alpha_mhz", 220.0)))
    levels = int(tr.get("levels", 3))
    kappa = from_mhz(float(cfg.get("noise", {}).get("kappa_khz", 4.0)) * 1e-3)
    steps = _steps_from(cfg, steps_override, 2048)
    drag = bool(tr.get("drag", True))

    def fidelity_at(om_mhz):
        env = EnvelopeSpec(shape, from_mhz(om_mhz))
        s, recipe = transmon_gate_channel(gate, env, alpha, kappa, steps,
                                          levels, drag)
        return gate_fidelity(s, recipe.target)

    coarse_grid = np.round(np.arange(lo, hi + 0.5 * coarse, coarse), 9)
    values = {om: fidelity_at(om) for om in coarse_grid}
    best = max(values, key=values.get)
    fine_grid = np.round(np.arange(max(lo, best - coarse), min(hi, best + coarse)
                                   + 0.5 * fine, fine), 9)
    for om in fine_grid:
        if om not in values:
            values[om] = fidelity_at(om)

    oms = sorted(values)
    rows = [[om, values[om]] for om in oms]
    optimum = max(values, key=values.get)
    meta = _base_meta(exp_id, steps)
    meta.update({"gate": gate, "envelope": shape, "alpha_mhz": f"{alpha / from_mhz(1):.12g}",
                 "kappa": f"{kappa:.12g}", "drag": drag, "levels": levels})
    write_csv(csv_path, ["omega_mhz", "fidelity"], rows, meta)
    write_meta(meta_path, {**meta, "runtime_s": time.time() - t0,
                           "optimum_mhz": float(optimum),
                           "optimum_fidelity": values[optimum]})
    return csv_path


# ------------------------------------------------------------------- dynamics

_INITIAL_STATES = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "1": np.array([0.0, 1.0], dtype=complex),
    "plus": np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0),
}


def run_dynamics(cfg, out_dir, jobs=1, steps_override=None):
    """Population and state-fidelity dynamics of one transmon gate."""
    t0 = time.time()
    exp_id, csv_path, meta_path = _out_paths(cfg, out_dir)
    gate = _gate_from(cfg)
    env = _envelope_from(cfg)
    tr = cfg.get("transmon", {})
    alpha = from_mhz(float(tr.get("alpha_mhz", 220.0)))
    levels = int(tr.get("levels", 3))
    drag = bool(tr.get("drag", True))
    kappa = from_mhz(float(cfg.get("noise", {}).get("kappa_khz", 4.0)) * 1e-3)
    steps = _steps_from(cfg, steps_override, DEFAULT_GATE_STEPS)
    samples = int(cfg.get("output", {}).get("samples", 256))
    if samples < 256:
        raise ConfigError("dynamics needs at least 256 samples")
    state_name = cfg.get("state", {}).get("initial", "0")
    if state_name not in _INITIAL_STATES:
        raise ConfigError(f"unknown initial state {state_name!r}; "
                          f"valid: {', '.join(_INITIAL_STATES)}")
    psi0_2 = _INITIAL_STATES[state_name]

    recipe = named_gate(Scheme.NSGP, gate, env)
    drive = recipe.segments[0]
    tcfg = TransmonConfig(levels=levels, alpha=alpha)
    hfun = transmon_hamiltonian_fn(tcfg, drive, Frame.DRIVE_ROTATING, drag=drag)
    noise = NoiseConfig(kappa1=kappa, kappa2=kappa)
    psi0 = np.zeros(levels, dtype=complex)
    psi0[:2] = psi0_2
    rho0 = np.outer(psi0, psi0.conj())
    snap_every = max(1, steps // samples)
    snap_steps = list(range(snap_every, steps + 1, snap_every))
    _, snaps = lindblad_evolve(hfun, rho0, noise.collapse_ops(levels=levels),
                               drive.tau, steps, snapshot_steps=snap_steps)

    # leakage-free reference: ideal two-level evolution on the same grid
    u_ref = np.eye(2, dtype=complex)
    refs = {}
    dt_block = drive.tau / len(snap_steps)
    for i, s in enumerate(snap_steps):
        u_ref = time_ordered_propagator(drive.hamiltonian, dt_block,
                                        max(1, snap_every), t_start=i * dt_block) @ u_ref
        refs[s] = u_ref @ psi0_2

    rows = []
    for s in snap_steps:
        rho = snaps[s]
        psi_t = np.zeros(levels, dtype=complex)
        psi_t[:2] = refs[s]
        pops = np.real(np.diag(rho))
        rows.append([s * drive.tau / steps, *pops, state_fidelity(rho, psi_t)])
    header = ["t"] + [f"pop{k}" for k in range(levels)] + ["fs"]
    meta = _base_meta(exp_id, steps)
    meta.update({"gate": gate, "initial": state_name, "envelope": env.shape_id,
                 "omega_m": f"{env.omega_m:.12g}", "kappa": f"{kappa:.12g}",
                 "drag": drag})
    write_csv(csv_path, header, rows, meta)
    write_meta(meta_path, {**meta, "runtime_s": time.time() - t0,
                           "final_fs": rows[-1][-1],
                           "final_pops": [float(p) for p in rows[-1][1:-1]]})
    return csv_path


# ------------------------------------------------------------------ two-qubit

def two_qubit_channel(plan, noise: NoiseConfig, steps, snapshot_steps=None):
    """Frame-corrected Lindblad superoperator of the flux-modulated gate."""
    levels = plan.cfg1.levels
    collapse = noise.collapse_ops(levels=levels, total_qubits=2)
    out = superoperator_propagator(plan.hamiltonian, collapse, plan.tau,
                                   steps=steps, snapshot_steps=snapshot_steps)
    if snapshot_steps is None:
        s = out
        c = plan.frame_correction(plan.tau)
        return np.kron(c, c.conj()) @ s
    s, snaps = out
    c = plan.frame_correction(plan.tau)
    corrected = {}
    for n, sn in snaps.items():
        cn = plan.frame_correction(plan.tau * n / steps)
        corrected[n] = np.kron(cn, cn.conj()) @ sn
    return np.kron(c, c.conj()) @ s, corrected


def run_two_qubit(cfg, out_dir, jobs=1, steps_override=None):
    """Full two-transmon root-iSWAP-like benchmark (fidelity + dynamics)."""
    t0 = time.time()
    exp_id, csv_path, meta_path = _out_paths(cfg, out_dir)
    tq = cfg.get("two_qubit", {})
    plan = sqrt_iswap_plan(
        g12=from_mhz(float(tq.get("g12_mhz", 8.0))),
        beta=float(tq.get("beta", 1.3)),
        delta1=from_mhz(float(tq.get("delta1_mhz", 345.0))),
        alpha1=from_mhz(float(tq.get("alpha1_mhz", 220.0))),
        alpha2=from_mhz(float(tq.get("alpha2_mhz", 180.0))),
        levels=int(tq.get("levels", 3)),
    )
    kappa = from_mhz(float(cfg.get("noise", {}).get("kappa_khz", 4.0)) * 1e-3)
    noise = NoiseConfig(kappa1=kappa, kappa2=kappa, kappa1p=kappa, kappa2p=kappa)
    steps = _steps_from(cfg, steps_override, DEFAULT_GATE_STEPS)
    samples = int(cfg.get("output", {}).get("samples", 256))
    grid = tuple(tq.get("fidelity_grid", (101, 101)))

    snap_every = max(1, steps // samples)
    snap_steps = list(range(snap_every, steps + 1, snap_every))
    s_final, snaps = two_qubit_channel(plan, noise, steps, snap_steps)

    f2 = two_qubit_gate_fidelity(s_final, plan.recipe.target, grid=grid,
                                 dim_single=plan.cfg1.levels)

    # dynamics from (|01> + |11>)/sqrt(2), ideal reference = embedded two-level
    levels = plan.cfg1.levels
    i01, i10, i11 = 1, levels, levels + 1
    psi0 = np.zeros(levels * levels, dtype=complex)
    psi0[i01] = psi0[i11] = 1.0 / np.sqrt(2.0)
    rho0 = vec(np.outer(psi0, psi0.conj()))
    drive = plan.recipe.segments[0]
    u_ref = np.eye(2, dtype=complex)
    dt_block = plan.tau / len(snap_steps)
    rows = []
    for i, n in enumerate(snap_steps):
        u_ref = time_ordered_propagator(drive.hamiltonian, dt_block,
                                        max(1, snap_every), t_start=i * dt_block) @ u_ref
        # embed the (|10>, |01>) block evolution into the register
        u_emb = np.eye(levels * levels, dtype=complex)
        u_emb[i10, i10] = u_ref[0, 0]
        u_emb[i10, i01] = u_ref[0, 1]
        u_emb[i01, i10] = u_ref[1, 0]
        u_emb[i01, i01] = u_ref[1, 1]
        rho = snaps[n] @ rho0
        rho = rho.reshape(levels * levels, levels * levels)
        psi_t = u_emb @ psi0
        comp = [0, i01, i10, i11]
        pops = np.real(np.diag(rho))
        p_leak = 1.0 - float(np.sum(pops[comp]))
        fg_t = two_qubit_gate_fidelity(snaps[n], u_emb[np.ix_(comp, comp)],
                                       grid=(21, 21), dim_single=levels)
        rows.append([n * plan.tau / steps, fg_t, float(pops[i01]), float(pops[i10]),
                     float(pops[i11]), p_leak, state_fidelity(rho, psi_t)])

    header = ["t", "fg", "p01", "p10", "p11", "pleak", "fs"]
    meta = _base_meta(exp_id, steps)
    meta.update({"g12_mhz": f"{plan.coupler.g12 / from_mhz(1):.12g}",
                 "beta": plan.coupler.beta,
                 "delta1_mhz": f"{plan.coupler.delta1 / from_mhz(1):.12g}",
                 "kappa": f"{kappa:.12g}"})
    write_csv(csv_path, header, rows, meta)
    p11_series = [r[4] for r in rows]
    write_meta(meta_path, {
        **meta, "runtime_s": time.time() - t0,
        "f2_gate": f2, "final_fs": rows[-1][-1],
        "p11_oscillation": float(max(p11_series) - min(p11_series)),
        "g_eff_mhz": plan.coupler.g_eff / from_mhz(1),
        "delta_L_mhz": plan.coupler.delta_L / from_mhz(1),
        "tau_us": plan.tau,
    })
    return csv_path


RUNNERS = {
    "synthesize": run_synthesize,
    "sweep-decoherence": run_sweep_decoherence,
    "sweep-error-grid": run_sweep_error_grid,
    "optimize-omega": run_optimize_omega,
    "dynamics": run_dynamics,
    "two-qubit": run_two_qubit,
}


def run_experiment(kind, cfg, out_dir, jobs=1, steps_override=None):
    if kind not in RUNNERS:
        raise ConfigError(f"unknown experiment kind {kind!r}; "
                          f"valid: {', '.join(RUNNERS)}")
    declared = cfg.get("kind")
    if declared is not None and declared != kind:
        raise ConfigError(f"config declares kind {declared!r} but {kind!r} was requested")
    return RUNNERS[kind](cfg, out_dir, jobs=jobs, steps_override=steps_override)
