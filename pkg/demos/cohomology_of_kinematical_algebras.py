# Walk the shipped Lie algebra catalog through the cohomology engine:
# which algebras admit central extensions, and what phase spaces their
# closed 2-forms carve out.  Everything here is exact rational arithmetic.

from fractions import Fraction

from qps import lie_cohomology as lc

print("=== second cohomology of the catalog ===")
for name in lc.CATALOG:
    algebra = lc.catalog(name)
    assert lc.validate_algebra(algebra).ok
    report = lc.second_cohomology(algebra)
    print(
        f"{name:10s} dim={algebra.dim:2d}  Z2={report.dim_z2:2d}  B2={report.dim_b2:2d}"
        f"  H2={report.dim_h2}  H1={report.dim_h1}"
    )

# The non-relativistic kinematical algebra is the interesting one: both
# H1 and H2 survive, and the H2 class is exactly the mass cocycle that
# pairs each boost with the matching translation.
print("\n=== the mass cocycle of the Galilei algebra ===")
galilei = lc.catalog("galilei")
mass = lc.two_form_from_pairs(galilei, {(3, 6): 1, (4, 7): 1, (5, 8): 1})
kernel = lc.kernel_subalgebra(galilei, mass)
names = galilei.names
directions = [
    "+".join(f"{coef}*{names[i]}" for i, coef in enumerate(vec) if coef)
    for vec in kernel.h_basis
]
print("kernel directions:", directions)
print("kernel closed under brackets:", kernel.is_subalgebra)
print("phase-space dimension:", kernel.gamma_dim, "(three q's and three p's)")

# The Heisenberg algebra gives the textbook picture: the symplectic form
# q* ^ p* kills the center and leaves a 2-dimensional phase plane.
print("\n=== h3: the canonical phase plane ===")
h3 = lc.catalog("h3")
omega = lc.two_form_from_pairs(h3, {(0, 1): Fraction(1)})
kr = lc.kernel_subalgebra(h3, omega)
print("kernel:", kr.h_basis, "-> gamma_dim =", kr.gamma_dim)
