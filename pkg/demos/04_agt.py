"""
Gaiotto state norm against the Nekrasov function
================================================

The Whittaker (Gaiotto) vector is fixed level by level by
``T_1 G_n = G_{n-1}`` and ``T_k G_n = 0`` for ``k >= 2``. Its level-n norm
is the ``(1^n, 1^n)`` entry of the inverse Gram matrix; up to a monomial
prefactor found at level 1 it equals ``Z_n(sigma^2)``.
"""

from fractions import Fraction

from qagt import dvir
from qagt.params import ParamPoint, sample_points

pt = ParamPoint(2, 3, Fraction(5, 7))

g = dvir.gaiotto_coeffs(3, pt)
for lam, c in g.level(2).items():
    print("G_2 coefficient", lam, c)
print("Whittaker conditions exact:", all(not d for _, _, d in dvir.whittaker_residuals(g, pt)))

e = dvir.determine_prefactor(pt)
print("prefactor:", dvir.PREFACTOR_LABELS[e])

for p in [pt] + sample_points(2, 4, seed=3):
    for n in range(1, 5):
        rep = dvir.agt_check(n, p, e)
        print(f"q={p.q} t={p.t} sigma={p.sigma} n={n}: {'equal' if rep['ok'] else 'DIFFERENT'}")

# the norms, rebuilt as functions of Q, obey the same pole recursion
for n in range(1, 4):
    print(f"F_{n} recursion residual vanishes:", dvir.f_recursion_residual(n, 2, 3, e).is_zero())
