# The measurement side: quantized indicators are effects but never
# projections, partitions of phase space quantize additively, and the
# symbols indexing the effects carry many-valued (not Boolean) logic.

import numpy as np

from qps import effect_algebra as ea
from qps import localization as loc
from qps import wh_model as wh

ctx = wh.fock_space(16)
grid = wh.build_grid(7.0, 0.15)
eta = wh.resolution_generator("ground", ctx)

# Randomized check of the effect-algebra axioms on the full effect set.
report = ea.verify_axioms(ea.effect_sampler(6, seed=1), trials=500)
print(f"axiom failures over {report.trials} random trials: {report.failures}")

# A partition of the grid quantizes to positive parts summing to the
# frame operator: the discrete positive-operator-valued measure.
quadrants = [
    loc.RegionSpec.from_mask((grid.q >= 0) & (grid.p >= 0), "++"),
    loc.RegionSpec.from_mask((grid.q >= 0) & (grid.p < 0), "+-"),
    loc.RegionSpec.from_mask((grid.q < 0) & (grid.p >= 0), "-+"),
    loc.RegionSpec.from_mask((grid.q < 0) & (grid.p < 0), "--"),
]
povm = ea.povm_check(quadrants, eta, grid, ctx)
print(f"quadrant partition: additivity error {povm.additivity_error:.1e}, "
      f"all parts positive: {povm.min_part_eigenvalue >= -1e-9}")

# No quantized indicator is a projection: the spectrum always keeps
# weight strictly between 0 and 1.
regions = [loc.RegionSpec.disk(1.0), loc.RegionSpec.disk(2.0),
           loc.RegionSpec.rect(0.0, np.inf, -np.inf, np.inf)]
scan = ea.projection_scan(eta, grid, ctx, regions)
for entry in scan.entries:
    print(f"  {entry.label:25s} max lambda(1-lambda) = {entry.max_spectral_gap:.3f}")

# Symbol logic: truncated sum and negation satisfy the many-valued laws,
# the lattice is distributive, and the Goedel implication is adjoint to
# the meet -- but the algebra is not Boolean.
rng = np.random.default_rng(0)
f = ea.FuzzySymbol(rng.uniform(size=12))
print(f"\nf (+) not f == 1 everywhere: "
      f"{bool(np.all(ea.symbol_oplus(f, ea.symbol_neg(f)).values == 1.0))}")
half = ea.FuzzySymbol(np.full(12, 0.5))
print(f"meet(1/2, not 1/2) = {ea.symbol_meet(half, ea.symbol_neg(half)).values[0]} "
      "(nonzero: excluded middle fails, the logic is not Boolean)")
print(f"Goedel f -> f == 1 everywhere: "
      f"{bool(np.all(ea.symbol_imp_godel(f, f).values == 1.0))}")
