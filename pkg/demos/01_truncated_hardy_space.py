"""Tour of the truncated coefficient space.

Polynomials in two variables live on a degree box; the space stores
their coefficients in a flat vector with a monomial orthonormal basis.
Both coordinate shifts become nilpotent matrices after truncation.
"""

import numpy as np

from bidiscframes import (
    BidiscPoly,
    adjoint_shift,
    inner_product,
    make_space,
    mult_operator,
    shift_matrix,
)

space = make_space((3, 2))
print(f"degree box {tuple(space.order)} -> dimension {space.dim}")
print("enumeration is row-major in (i, j):")
print("  ", list(space.pairs())[:5], "...")

# A polynomial is a sparse coefficient map; the space flattens it.
f = BidiscPoly({(0, 0): 1.0, (1, 1): -2.0, (3, 2): 0.5j})
v = space.to_vec(f)
print(f"\nf = {f}")
print(f"coefficient vector has norm {np.linalg.norm(v):.6f} = poly norm {f.norm():.6f}")
print(f"round trip recovers the polynomial: {space.from_vec(v) == f}")

g = BidiscPoly.monomial(1, 1)
print(f"<f, z w> picks out one coefficient: {inner_product(f, g)}")

# The shift in z moves every coefficient one slot up in i; degrees
# that fall off the box are dropped, so the matrix is nilpotent.
sz = shift_matrix(space, "z")
sw = shift_matrix(space, "w")
print(f"\nshift matrices commute: residual {np.linalg.norm(sz @ sw - sw @ sz):.1e}")
power = np.linalg.matrix_power(sz, space.order.d1 + 1)
print(f"S_z^{space.order.d1 + 1} vanishes identically: {not power.any()}")

# The adjoint shifts coefficients back down and kills the bottom row.
az = adjoint_shift(space, "z")
print(f"adjoint of the shift is the conjugate transpose: "
      f"{np.array_equal(az, sz.conj().T)}")

# General multiplication operators clip products to the box.
phi = BidiscPoly({(1, 0): 1.0, (0, 1): 1.0})
m = mult_operator(phi, space)
h = BidiscPoly.monomial(2, 1)
print(f"\nM_(z+w) applied to z^2 w: {space.from_vec(m @ space.to_vec(h))}")
print("(the z^3 w part survives, z^2 w^2 survives; nothing left the box)")
