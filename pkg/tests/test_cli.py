import json
import os

import numpy as np
import pytest

from geogate.cli import main
from geogate.errors import ConfigError
from geogate.experiments import load_config, run_experiment, write_csv


def write_toml(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


SYNTH = """
id = "synth"
kind = "synthesize"

[drive]
envelope = "sine"
omega_m_mhz = 20.0

[gate]
gate = "{gate}"
schemes = ["{scheme}"]
"""

SWEEP = """
id = "sweep"
kind = "sweep-decoherence"

[drive]
envelope = "sine"
omega_m_mhz = 20.0

[gate]
gate = "hadamard"
schemes = ["NSGP", "OSSP", "DYN"]

[noise]
kappa_ratios = [0.0, 5e-4, 1e-3]

[integration]
steps = {steps}
"""

GRID = """
id = "grid"
kind = "sweep-error-grid"

[drive]
envelope = "sine"
omega_m_mhz = 20.0

[gate]
gate = "pi8"
schemes = ["NSGP"]

[noise]
kappa_ratio = 4e-4

[grid]
resolution = 3

[integration]
steps = {steps}
"""


def read_csv(path):
    meta, header, rows = {}, None, []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#"):
                k, v = line[1:].split("=", 1)
                meta[k.strip()] = v.strip()
            elif header is None:
                header = line.split(",")
            else:
                rows.append([float(x) for x in line.split(",")])
    return meta, header, np.array(rows)


def test_synthesize_csv_and_recipe(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml",
                                 SYNTH.format(gate="hadamard", scheme="NSGP")))
    out = run_experiment("synthesize", cfg, str(tmp_path))
    meta, header, rows = read_csv(out)
    assert header == ["t", "omega", "delta", "phi", "delta_inst"]
    assert len(rows) >= 1024
    assert meta["scheme"] == "NSGP"
    # constant detuning column at -2 Omega_m / pi; smooth phi
    assert np.allclose(rows[:, 2], -2 * 2 * np.pi * 20.0 / np.pi)
    assert np.max(np.abs(np.diff(rows[:, 3]))) < 0.1
    doc = json.load(open(tmp_path / "synth.recipe.json"))
    assert doc["scheme"] == "NSGP"


def test_synthesize_ossp_phase_discontinuities(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml",
                                 SYNTH.format(gate="hadamard", scheme="OSSP")))
    out = run_experiment("synthesize", cfg, str(tmp_path))
    _, _, rows = read_csv(out)
    jumps = np.abs(np.diff(rows[:, 3])) > 0.5
    assert jumps.sum() == 2


def test_synthesize_dyn_pi8_segments(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml",
                                 SYNTH.format(gate="pi8", scheme="DYN")))
    run_experiment("synthesize", cfg, str(tmp_path))
    doc = json.load(open(tmp_path / "synth.recipe.json"))
    areas = []
    for seg in doc["segments"]:
        t = np.array(seg["t"])
        om = np.array(seg["omega"])
        areas.append(np.trapezoid(om, t))
    assert np.allclose(areas, [np.pi / 2, np.pi / 4, np.pi / 2], atol=1e-3)


def test_csv_byte_determinism(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml", GRID.format(steps=64)))
    a = run_experiment("sweep-error-grid", cfg, str(tmp_path / "a"))
    b = run_experiment("sweep-error-grid", cfg, str(tmp_path / "b"))
    assert open(a, "rb").read() == open(b, "rb").read()


def test_parallel_dispatch_is_deterministic(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml", GRID.format(steps=64)))
    a = run_experiment("sweep-error-grid", cfg, str(tmp_path / "a"), jobs=1)
    b = run_experiment("sweep-error-grid", cfg, str(tmp_path / "b"), jobs=2)
    assert open(a, "rb").read() == open(b, "rb").read()


def test_doubled_steps_change_fidelities_below_1e_5(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml", SWEEP.format(steps=256)))
    a = run_experiment("sweep-decoherence", cfg, str(tmp_path / "a"))
    cfg2 = load_config(write_toml(tmp_path, "s2.toml", SWEEP.format(steps=512)))
    b = run_experiment("sweep-decoherence", cfg2, str(tmp_path / "b"))
    _, _, ra = read_csv(a)
    _, _, rb = read_csv(b)
    assert np.max(np.abs(ra[:, 2:] - rb[:, 2:])) < 1e-5


def test_sweep_reports_unity_at_zero_kappa(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml", SWEEP.format(steps=256)))
    out = run_experiment("sweep-decoherence", cfg, str(tmp_path))
    _, header, rows = read_csv(out)
    assert rows[0, 0] == 0.0
    assert np.all(rows[0, 2:] >= 1.0 - 1e-6)
    assert np.all(rows[:, 2:] <= 1.0 + 1e-9)
    meta = json.load(open(tmp_path / "sweep.meta.json"))
    assert meta["steps"] == 256
    assert "version" in meta


def test_invalid_gate_and_scheme_errors(tmp_path):
    bad_gate = SYNTH.format(gate="cnot", scheme="NSGP")
    cfg = load_config(write_toml(tmp_path, "bad.toml", bad_gate))
    with pytest.raises(ConfigError) as err:
        run_experiment("synthesize", cfg, str(tmp_path))
    assert "valid gates" in str(err.value)

    bad_scheme = SYNTH.format(gate="pi8", scheme="WUT")
    cfg = load_config(write_toml(tmp_path, "bad2.toml", bad_scheme))
    with pytest.raises(ConfigError) as err:
        run_experiment("synthesize", cfg, str(tmp_path))
    assert "valid schemes" in str(err.value)


def test_kind_mismatch_rejected(tmp_path):
    cfg = load_config(write_toml(tmp_path, "s.toml", SWEEP.format(steps=64)))
    with pytest.raises(ConfigError):
        run_experiment("synthesize", cfg, str(tmp_path))
    with pytest.raises(ConfigError):
        run_experiment("not-a-thing", cfg, str(tmp_path))


def test_cli_entry_point(tmp_path):
    path = write_toml(tmp_path, "s.toml", SYNTH.format(gate="phase", scheme="NSGP"))
    assert main(["synthesize", "--config", path, "--out", str(tmp_path)]) == 0
    assert os.path.exists(tmp_path / "synth.csv")


def test_cli_reports_config_errors(tmp_path, capsys):
    path = write_toml(tmp_path, "s.toml", SYNTH.format(gate="cnot", scheme="NSGP"))
    assert main(["synthesize", "--config", path, "--out", str(tmp_path)]) == 2
    assert "valid gates" in capsys.readouterr().err


OMEGA_FLAT = """
id = "flat"
kind = "optimize-omega"

[gate]
gate = "hadamard"

[scan]
omega_min_mhz = 20.0
omega_max_mhz = 28.0
coarse_step_mhz = 4.0
fine_step_mhz = 2.0

[transmon]
alpha_mhz = 220.0
levels = 2
drag = false

[noise]
kappa_khz = 0.0

[integration]
steps = 512
"""

DYNAMICS = """
id = "dyn"
kind = "dynamics"

[drive]
envelope = "sine"
omega_m_mhz = 30.0

[gate]
gate = "pi8"

[state]
initial = "plus"

[transmon]
alpha_mhz = 220.0

[noise]
kappa_khz = 4.0

[integration]
steps = 512
"""


def test_optimize_omega_flat_without_loss_channels(tmp_path):
    # 2 levels, kappa = 0, no DRAG: nothing to trade off, fidelity pinned at 1
    cfg = load_config(write_toml(tmp_path, "s.toml", OMEGA_FLAT))
    out = run_experiment("optimize-omega", cfg, str(tmp_path))
    _, _, rows = read_csv(out)
    assert np.all(np.abs(rows[:, 1] - 1.0) < 1e-6)


def test_dynamics_populations_of_z_rotation(tmp_path):
    # the z gate is a geometric path, not a sigma_z generator: populations
    # swing mid-gate (analytically up to ~0.9 from |+>) and return to 1/2 at tau
    cfg = load_config(write_toml(tmp_path, "s.toml", DYNAMICS))
    out = run_experiment("dynamics", cfg, str(tmp_path))
    _, header, rows = read_csv(out)
    assert header[:2] == ["t", "pop0"]
    assert abs(rows[-1, 1] - 0.5) < 5e-3
    assert abs(rows[-1, 2] - 0.5) < 5e-3
    assert np.max(rows[:, 1]) > 0.8
    assert rows[-1, -1] > 0.999


def test_csv_writer_formats_12_significant_digits(tmp_path):
    path = write_csv(str(tmp_path / "x.csv"), ["a"], [[np.pi]], {"k": "v"})
    lines = open(path).read().splitlines()
    assert lines[0] == "# k = v"
    assert lines[1] == "a"
    assert lines[2] == "3.14159265359"
