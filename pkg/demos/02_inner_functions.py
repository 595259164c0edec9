"""Inner functions on the box: monomials, one-variable disc factors, products.

Monomials are exactly inner.  A disc-automorphism factor with zero at
alpha has an infinite Taylor series, so its truncation carries a
certified l2 error that shrinks geometrically with the cutoff degree.
"""

import numpy as np

from bidiscframes import InnerSpec, build_inner, verify_unimodular

# Monomial inner functions truncate with zero error.
zw = build_inner(InnerSpec.monomial(1, 1), (6, 6))
print(f"monomial inner z w: poly {zw.poly}, truncation error {zw.trunc_error}")

# One disc factor with zero at 0.5, truncated at several degrees.
print("\ndisc factor with zero at 0.5, truncation error by cutoff:")
for n in (4, 8, 16, 32):
    ip = build_inner(InnerSpec.blaschke_z([0.5]), (n, 0))
    print(f"  degree {n:2d}: error {ip.trunc_error:.3e}")

ip = build_inner(InnerSpec.blaschke_z([0.5]), (8, 0))
coeffs = [ip.poly.coeffs.get((k, 0), 0.0) for k in range(4)]
print(f"\nleading coefficients: {[f'{c.real:+.4f}' for c in coeffs]}")
print("(constant term |alpha|, then a geometric tail with ratio conj(alpha))")

# Sampled on the torus, the truncation is unimodular up to its tail.
rep = verify_unimodular(ip, grid=64)
print(f"max | |value| - 1 | on a 64x64 torus grid: {rep.max_dev:.3e}")
print(f"certified tail bound for comparison:      {ip.trunc_error:.3e}")

# Products multiply the factors and compound the certified errors.
spec = InnerSpec.product([InnerSpec.blaschke_z([0.5]), InnerSpec.monomial(0, 1)])
prod = build_inner(spec, (8, 1))
print(f"\nproduct (disc factor in z) * w: degrees {tuple(prod.poly.maxdeg)}, "
      f"error {prod.trunc_error:.3e}")

# Two zeros in the same variable: errors add through the product rule.
two = build_inner(InnerSpec.blaschke_z([0.5, 0.5j]), (12, 0))
print(f"two zeros (0.5 and 0.5i): error {two.trunc_error:.3e}")
print(f"value at z = 0.5 vanishes: |value| = "
      f"{abs(two.poly.evaluate(0.5, 0.0)):.2e}")
