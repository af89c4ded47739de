# Encode a state as a complex function on phase space, look at where the
# function lives, and reconstruct the state from nothing but the samples.

import numpy as np

from qps import transform as tr
from qps import wh_model as wh

ctx = wh.fock_space(24)
grid = wh.build_grid(7.0, 0.15)
eta = wh.resolution_generator("ground", ctx)

# a superposition of the vacuum and a two-photon component
phi = np.zeros(24, complex)
phi[0], phi[2] = 1.0, 0.8j
phi /= np.linalg.norm(phi)

samples = tr.w_transform(eta, grid, phi, ctx)
print(f"{len(grid)} samples; weighted norm^2 = {samples.weighted_norm_sq():.6f} "
      "(near 1: the transform is nearly isometric on covered states)")

# the magnitude peaks where the state lives in phase space
peak = np.argmax(np.abs(samples.values))
print(f"largest |sample| at (q, p) = ({grid.q[peak]:+.2f}, {grid.p[peak]:+.2f})")

recovered = tr.reconstruct(eta, grid, samples, ctx)
print(f"reconstruction error: {np.linalg.norm(recovered - phi):.2e}")

# the reproducing-kernel projection smooths arbitrary sample data onto
# the range of the transform, and is idempotent there
noise = tr.GammaFunctionSamples(
    values=np.exp(2j * np.pi * np.linspace(0, 1, len(grid))), grid=grid
)
smoothed = tr.projection_P(eta, grid, noise, ctx)
twice = tr.projection_P(eta, grid, smoothed, ctx)
print(f"projection: norm^2 {noise.weighted_norm_sq():.3f} -> {smoothed.weighted_norm_sq():.3f}, "
      f"idempotence defect {np.max(np.abs(twice.values - smoothed.values)):.2e}")

# lattice translations act by moving samples; mass pushed over the grid
# edge is dropped (and only that much norm is lost)
shifted = tr.v_action((10 * grid.spacing, 0.0), samples)
print(f"translated norm^2 = {shifted.weighted_norm_sq():.6f}")

# the orthogonality relation with the constant recomputed from the grid
rep = tr.orthogonality_check(eta, eta, phi, phi, grid, ctx)
print(f"orthogonality: lhs = {rep.lhs:.6f}, rhs = {rep.rhs:.6f}, d = {rep.d_used:.6f}")
