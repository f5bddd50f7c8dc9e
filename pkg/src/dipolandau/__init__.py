"""Landau-level analogs for neutral particles carrying permanent dipole moments.

A magnetic dipole orbiting in the radial electric field of a uniform
charge density (the LAC system) and an electric dipole orbiting in the
radial magnetic field of a uniform magnetic-charge density (the HMW
system) both quantize exactly like a charged particle in a uniform
magnetic field. This package provides the exact spectra and normalized
radial eigenfunctions, an independent finite-difference eigensolver to
verify them, and a command-line workbench emitting deterministic
CSV/JSON tables and figures.
"""

from .fields import (
    ConditionCheck,
    ConditionReport,
    CylindricalVectorField,
    DipoleFieldConfig,
    FieldComponent,
    Model,
    Profile,
    divergence_of_source,
    effective_magnetic_field,
    effective_vector_potential,
    source_field,
    validate_landau_conditions,
)
from .numeric import (
    ConvergenceStudy,
    EigenSolution,
    RadialGrid,
    TridiagonalMatrix,
    analytic_eigenvalue,
    convergence_study,
    discretize_radial,
    grid_for_channel,
    hamiltonian_matrix_elements,
    numeric_spectrum,
    sturm_count_below,
    tridiagonal_eigenvalues,
)
from .specfun import (
    PolynomialCoefficients,
    kummer_coefficients,
    kummer_polynomial,
    laguerre_assoc,
    log_factorial,
)
from .spectra import (
    EnergyLevel,
    QuantumNumbers,
    cyclotron_frequency,
    dual_config,
    energy_for_model,
    energy_hmw,
    energy_lac,
    enumerate_degenerate_states,
    ladder_energy,
    ladder_index,
)
from .wavefn import (
    RadialEigenfunction,
    length_scale_from_config,
    radial_eigenfunction,
    sample_radial,
)

__version__ = "0.1.0"
