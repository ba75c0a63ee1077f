"""
The Nekrasov function and its pole recursion
=============================================

Each graded part ``Z_n(Q)`` of the pure SU(2) Nekrasov partition function
is a rational function of ``Q`` at fixed ``(q, t)``. Here we build it
exactly, look at its poles, and confirm it is rebuilt by the residue
recursion from the lower levels.
"""

from fractions import Fraction

from qagt import nekrasov
from qagt.params import ParamPoint
from qagt.partitions import EMPTY, Partition

pt = ParamPoint(2, 3)

# Z_2 as a reduced rational function of Q
z2 = nekrasov.z_level_symbolic(2, pt)
print("Z_2 numerator degree:", z2.num.degree, " denominator degree:", z2.den.degree)
print("Z_2(5) =", z2(5))

# every pole is simple and sits at Q = q^r t^-s with 1 <= rs <= n
for n in range(1, 5):
    rep = nekrasov.pole_report(n, pt)
    print(f"n={n}: poles {sorted(rep['poles'])}, simple={rep['squarefree']}")

# the residue at each pole is G(r, s) times a lower level at a shifted Q
lhs, rhs = nekrasov.residue_check(1, 1, 2, pt)
print("Res at q/t of Z_2:", lhs, "=", rhs)

# so the whole function is its pole expansion; the residual is identically 0
for n in range(6):
    print(f"recursion residual at n={n} vanishes:", nekrasov.recursion_residual(n, pt).is_zero())

# a single pair term, and its duality under (lam, mu, Q) -> (mu, lam, 1/Q)
print("Z_{(1),0}(5) =", nekrasov.z_pair(Partition((1,)), EMPTY, 5, pt))
print("duality:", nekrasov.duality_check(Partition((2, 1)), Partition((1,)), Fraction(7, 2), pt))
