"""
The deformed Virasoro Verma module
==================================

Generators ``T_n`` obey quadratic relations with structure series
``f(x)``. The rewriting engine expresses any word in ``T`` acting on the
highest weight vector in the basis ``T_{-lam}|h>`` and gives the Gram
matrix of the contravariant form.
"""

from fractions import Fraction

from qagt import dvir, linalg
from qagt.params import ParamPoint

pt = ParamPoint(2, 3, 2)  # h = 5/2

fs = dvir.structure_series(4, pt)
print("f_0..f_4 =", [str(c) for c in fs.f])

# T_1 T_-1 |h> = (-f_1 h^2 - c(1)) |h>
print("T_1 T_-1|h> =", dict(dvir.apply_mode(1, dvir.basis_vector((1,)), pt)))

# level-3 Gram matrix, rows indexed by (3), (2,1), (1,1,1)
g = dvir.gram_matrix(3, pt)
for lam, row in zip(g.basis, g.entries):
    print(lam, [str(e) for e in row])
print("symmetric:", linalg.is_symmetric(g.rows()))

# the determinant over the factorised Kac product does not depend on h
rep = dvir.kac_check(3, pt, [2, 3, Fraction(7, 2)])
print("ratios:", [str(r) for r in rep["ratios"]])
print("fitted C_3:", rep["constant"], " closed-form fit:", dvir.kac_constant_fit(3, pt.t))

# on h = h_{1,1} the determinant vanishes (q=4, t=9 makes h_{1,1} rational)
deg = ParamPoint(4, 9, Fraction(3, 2))
print("det at h = h_11:", [dvir.gram_matrix(n, deg).det() for n in range(1, 4)])
