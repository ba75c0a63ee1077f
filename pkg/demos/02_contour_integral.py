"""
Iterated residues of the contour integral
=========================================

The same ``Z_n`` can be written as an n-fold contour integral. Its poles
are labelled by pairs of Young diagrams; taking the residues one variable
at a time reproduces each Nekrasov term exactly. ``sigma`` stands for
``Q**(1/2)`` so everything stays rational.
"""

from fractions import Fraction

from qagt import integral, nekrasov
from qagt.params import NonGenericError, ParamPoint
from qagt.partitions import Partition, partition_pairs

pt = ParamPoint(2, 3, 2)  # Q = 4

lam, mu = Partition((2,)), Partition((1,))
print("pole values:", integral.pole_assignment(lam, mu, pt).values)

# each step has exactly one simple pole at its assigned value; at step 2
# the double zero of omega at x_1 eats the P pole at sigma
for k, step in enumerate(integral.residue_steps(lam, mu, pt), start=1):
    print(f"step {k}: x = {step.value}, residue {step.residue}, cancelled {step.cancelled}")

print("I =", integral.iterated_residue(lam, mu, pt))
print("Z =", nekrasov.z_pair(lam, mu, pt.Q, pt))

# summing over all configurations gives the level function at Q = sigma^2;
# sigma = 2 with q = 2 puts Q on the q,t grid, which level 3 cannot tolerate
try:
    pt.require_generic(3)
except NonGenericError as exc:
    print("sigma=2 rejected at level 3:", exc)
gen = ParamPoint(2, 3, Fraction(5, 7))
gen.require_generic(3)
for n in range(4):
    s, z = integral.level_check(n, gen)
    print(f"n={n}: residue sum {s}  Z_n(25/49) {z}")

# any order respecting the contour nesting gives the same residue
vals = {integral.iterated_residue(lam, mu, pt, o) for o in integral.admissible_orders(lam, mu)}
print("order independent:", len(vals) == 1, "over", len(list(integral.admissible_orders(lam, mu))), "orders")
print("configurations at n=3:", len(partition_pairs(3)))
