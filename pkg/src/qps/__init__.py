"""Phase-space quantum mechanics toolkit.

Submodules:

- ``lie_cohomology``: exact-rational Chevalley-Eilenberg machinery
  (closed/exact 2-forms, kernel subalgebras, phase-space dimensions).
- ``wh_model``: truncated Fock space, displacement operators, phase-space
  grids, resolution generators, admissibility diagnostics.
- ``transform``: coherent-state transform, frame operator, reconstruction,
  orthogonality relation.
- ``localization``: phase-space quantization A(f), localization spectra,
  eigenvalue clustering, channel capacity.
- ``tomography``: Husimi densities, informational completeness, state
  reconstruction.
- ``effect_algebra``: effects, the partial sum, POVM checks, fuzzy-symbol
  MV/Heyting operations.
- ``cli``: command-line front end (``qps`` entry point).
"""

from . import (  # noqa: F401
    effect_algebra,
    lie_cohomology,
    localization,
    tomography,
    transform,
    wh_model,
)

__version__ = "0.1.0"
