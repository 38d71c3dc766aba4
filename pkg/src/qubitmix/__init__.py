"""Spectral densities and entropy statistics for mixtures of random qubit states."""

from .bloch import (
    bloch_to_matrix,
    coherence_bloch,
    eigenvalues,
    entropy_phi,
    fidelity_squared,
    fidelity_squared_bloch,
    matrix_to_bloch,
    rel_entropy_coherence,
    von_neumann_entropy,
)
from .divergences import dist_J, dist_Jhat, qjsd, qjsd_hat, triangle_delta, violation_search
from .ensembles import (
    SeededSampler,
    sample_angle,
    sample_direction,
    sample_hs_length,
    sample_hs_state,
    sample_orbit_state,
)
from .errors import (
    ContractError,
    DegenerateParameterError,
    DomainError,
    InvalidStateError,
    NumericalFailureError,
    QubitMixError,
)
from .mixing import MixCurve, channel_Et, g2, mix_curves, mix_weighted, partial_swap_unitary, quantum_add_bloch

__version__ = "0.1.0"
