"""geogate: invariant-engineered geometric quantum gates and their open-system
benchmarks (two-level, three-level transmon, coupled two-transmon)."""

__version__ = "0.1.0"

from .core import (
    from_mhz,
    ladder_ops,
    phase_aligned_distance,
    superoperator_propagator,
    time_ordered_propagator,
)
from .gates import (
    GateRecipe,
    Scheme,
    dynamical_gate,
    dynamical_named,
    dynamical_rotation,
    ideal_propagator,
    longitude_gate,
    longitude_named,
    longitude_rotation,
    named_gate,
    nsgp_named,
    nsgp_rotation,
    ossp_gate,
    ossp_named,
    pulse_area,
    sqrt_iswap_spec,
)
from .opensys import (
    ErrorConfig,
    NoiseConfig,
    gate_fidelity,
    inject_error,
    lindblad_evolve,
    state_fidelity,
    two_qubit_gate_fidelity,
)
from .paths import (
    DriveSchedule,
    EnvelopeSpec,
    GateSpec,
    PathSpec,
    build_invariant,
    constant_detuning,
    dressed_states,
    drive_from_latitude_path,
    dynamical_phase,
    instantaneous_detuning,
    overall_phase,
    pancharatnam_phase,
    phase_record,
    target_unitary,
    total_relative_phase,
)
from .transmon import (
    CouplerConfig,
    Frame,
    TransmonConfig,
    drag_pulse,
    effective_two_level,
    parametric_flux,
    reduced_hamiltonian,
    sqrt_iswap_plan,
    transmon_hamiltonian,
    two_transmon_hamiltonian,
)
