# config.py
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

DEFAULT_SEED = int(os.environ.get("CDE_SEED", "42"))
DEFAULT_TRIALS = int(os.environ.get("CDE_TRIALS", "100"))
TOL_SCALE = float(os.environ.get("CDE_TOL_SCALE", "1.0"))
LOG_LEVEL = os.environ.get("CDE_LOG_LEVEL", "WARNING").upper()

# Rank decisions for null spaces and eigenvectors
RANK_TOL = 1e-10

# Mass-shell tolerance (relative to max(1, E^2)) for momenta typed on the command
# line or posted to the API, which rarely carry more than seven digits
INPUT_SHELL_TOL = float(os.environ.get("CDE_INPUT_SHELL_TOL", "1e-6"))

# Acceptance tolerances, one entry per check of the verify-all run
TOLERANCES = {
    "clifford.anticommutator": 1e-14,
    "clifford.gamma5": 1e-14,
    "clifford.chiral_exp": 1e-12,
    "projectors.constraints": 1e-12,
    "projectors.real_axes": 1e-13,
    "projectors.complex_axes": 1e-12,
    "projectors.tensor_family": 1e-12,
    "projectors.rotation": 1e-13,
    "projectors.rotation_2pi": 1e-15,
    "cde.gamma_rewrite": 1e-12,
    "cde.kernel_dimension": 0.0,
    "cde.determinant": 1e-9,
    "cde.dispersion": 1e-9,
    "cde.representation_kernels": 0.0,
    "cde.representation": 1e-10,
    "cde.chi_solution": 1e-10,
    "cde.chiral_rotation": 1e-12,
    "cde.eq1_conformance": 1e-12,
    "cde.branch_relation": 1e-14,
    "cde.helicity": 1e-12,
    "lagrangian.dirac_consistency": 0.0,
    "lagrangian.hermiticity": 1e-12,
    "lagrangian.stationary": 1e-12,
    "lagrangian.convergence_order": 0.3,
    "lagrangian.euler_lagrange": 1e-6,
    "lagrangian.covariance": 1e-9,
    "symmetries.generators": 1e-14,
    "symmetries.lorentz_maps": 1e-10,
    "symmetries.covariance": 1e-9,
    "symmetries.alpha_table": 0.0,
    "symmetries.classifier": 0.0,
    "symmetries.discrete": 1e-12,
}


def scaled_tolerance(name, scale=None):
    """Look up a suite tolerance, multiplied by the global (or given) scale."""
    if name not in TOLERANCES:
        raise KeyError(f"Unknown tolerance: {name}")
    return TOLERANCES[name] * (TOL_SCALE if scale is None else scale)
