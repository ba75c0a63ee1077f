"""Iterated-residue evaluation of the contour-integral form of ``Z_n``.

Each pair ``(lam, mu)`` fixes where the integration variables are
specialised: boxes ``(i, j)`` of ``lam`` go to ``sigma q^(j-1) t^-(i-1)``
and boxes of ``mu`` to ``sigma^-1 q^(j-1) t^-(i-1)``, with ``sigma = Q^(1/2)``.
Residues are taken one variable at a time. At step ``k`` the integrand,
viewed as a function of ``x_k`` alone, is a product of linear factors, so
a residue is an exact evaluation once the matching factor is dropped.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .exact import as_fraction
from .nekrasov import z_level_symbolic
from .params import NonGenericError, ParamPoint
from .partitions import Partition, partition_pairs


class NonSimplePoleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FactorList:
    """``scalar * prod (x - root)**exp`` in one active variable ``x``."""

    scalar: Fraction
    exps: tuple  # sorted (root, exponent) pairs, exponent != 0

    @classmethod
    def build(cls, scalar, exps: Counter) -> FactorList:
        return cls(as_fraction(scalar), tuple(sorted((r, e) for r, e in exps.items() if e)))

    def __mul__(self, other: FactorList) -> FactorList:
        c = Counter(dict(self.exps))
        for r, e in other.exps:
            c[r] += e
        return FactorList.build(self.scalar * other.scalar, c)

    def exponent(self, root) -> int:
        return dict(self.exps).get(root, 0)

    def __call__(self, x) -> Fraction:
        acc = self.scalar
        for r, e in self.exps:
            d = x - r
            if d == 0 and e < 0:
                raise ZeroDivisionError(f"pole at {x}")
            acc *= d**e
        return acc

    def residue(self, x0) -> Fraction:
        """Residue at ``x0``, which must be a simple pole."""
        e = self.exponent(x0)
        if e != -1:
            raise NonSimplePoleError(f"order of x0={x0} is {-e}, expected a simple pole")
        acc = self.scalar
        for r, k in self.exps:
            if r != x0:
                acc *= (x0 - r) ** k
        return acc


def p_factor(a, p) -> FactorList:
    """``P(x; a, p) = x / ((x - a)(x - 1/a)(x - p a)(x - p/a))``."""
    a, p = as_fraction(a), as_fraction(p)
    if a == 0:
        raise ValueError("P(x; a, p) needs a != 0")
    c = Counter({Fraction(0): 1})
    for r in (a, 1 / a, p * a, p / a):
        c[r] -= 1
    return FactorList.build(1, c)


def omega_factor(q1, q2, q3, *, y=None, over=None, under=None):
    """``omega(y; q1, q2, q3)``.

    ``omega(y) = (y-1)^2 (y-q3)(y-1/q3) / ((y-q1)(y-1/q1)(y-q2)(y-1/q2))``

    With ``y`` a number, returns its exact value. With ``over=v`` the
    argument is ``x / v`` and with ``under=v`` it is ``v / x``; a
    :class:`FactorList` in ``x`` is returned.
    """
    q1, q2, q3 = (as_fraction(v) for v in (q1, q2, q3))
    if 0 in (q1, q2, q3):
        raise ValueError("omega needs nonzero q1, q2, q3")
    zeros = (Fraction(1), Fraction(1), q3, 1 / q3)
    poles = (q1, 1 / q1, q2, 1 / q2)
    if y is not None:
        y = as_fraction(y)
        for pole in poles:
            if y == pole:
                raise ZeroDivisionError(f"pole: y={y} hits a denominator root {pole}")
        num = Fraction(1)
        for z in zeros:
            num *= y - z
        den = Fraction(1)
        for pole in poles:
            den *= y - pole
        return num / den
    c = Counter()
    scalar = Fraction(1)
    if over is not None:
        v = as_fraction(over)
        # x/v - c = (x - c v) / v, and the 1/v factors cancel 4 against 4
        for z in zeros:
            c[z * v] += 1
        for pole in poles:
            c[pole * v] -= 1
    elif under is not None:
        v = as_fraction(under)
        # v/x - c = -c (x - v/c) / x, the 1/x factors cancel 4 against 4
        for z in zeros:
            c[v / z] += 1
            scalar *= -z
        for pole in poles:
            c[v / pole] -= 1
            scalar /= -pole
    else:
        raise TypeError("give one of y, over, under")
    return FactorList.build(scalar, c)


def _omega(pt: ParamPoint, **kw):
    return omega_factor(pt.q, 1 / pt.t, pt.t / pt.q, **kw)


@dataclass(frozen=True)
class PoleAssignment:
    values: tuple
    boxes: tuple  # (side, i, j) per variable; side 0 = lam, 1 = mu
    source: tuple


def box_value(side: int, i: int, j: int, pt: ParamPoint) -> Fraction:
    base = pt.sigma if side == 0 else 1 / pt.sigma
    return base * pt.monomial(j - 1, -(i - 1))


def default_order(lam: Partition, mu: Partition) -> list:
    """Row-major over ``lam``, then row-major over ``mu``."""
    return [(0, i, j) for i, j in lam.boxes()] + [(1, i, j) for i, j in mu.boxes()]


def pole_assignment(lam: Partition, mu: Partition, pt: ParamPoint, order=None) -> PoleAssignment:
    if pt.sigma is None:
        raise ValueError("the integral needs a point with sigma")
    order = default_order(lam, mu) if order is None else list(order)
    if sorted(order) != sorted(default_order(lam, mu)):
        raise ValueError("order must list every box of lam and mu exactly once")
    values = tuple(box_value(side, i, j, pt) for side, i, j in order)
    if len(set(values)) != len(values):
        raise NonGenericError("two integration variables are assigned the same value")
    return PoleAssignment(values, tuple(order), (lam, mu))


def is_admissible(order) -> bool:
    """Every box comes after its upper and left neighbours in the same diagram."""
    seen = set()
    for side, i, j in order:
        if i > 1 and (side, i - 1, j) not in seen:
            return False
        if j > 1 and (side, i, j - 1) not in seen:
            return False
        seen.add((side, i, j))
    return True


def admissible_orders(lam: Partition, mu: Partition):
    """All specialisation orders compatible with the contour prescription (small sizes only)."""
    for perm in permutations(default_order(lam, mu)):
        if is_admissible(perm):
            yield perm


@dataclass
class ResidueStep:
    value: Fraction
    integrand: FactorList
    residue: Fraction
    cancelled: dict = field(default_factory=dict)


def residue_steps(lam: Partition, mu: Partition, pt: ParamPoint, order=None) -> list:
    """The per-variable residues, with the factor list seen at each step.

    ``cancelled`` maps each root where numerator and denominator factors
    met to ``(numerator multiplicity, denominator multiplicity)``.
    """
    assign = pole_assignment(lam, mu, pt, order)
    if not is_admissible(assign.boxes):
        raise ValueError(f"order {assign.boxes} violates the contour prescription")
    p0 = pt.t / pt.q
    steps = []
    for k, v in enumerate(assign.values):
        pieces = [p_factor(pt.sigma, p0)] + [_omega(pt, over=w) for w in assign.values[:k]]
        num, den = Counter(), Counter()
        for piece in pieces:
            for r, e in piece.exps:
                (num if e > 0 else den)[r] += abs(e)
        integrand = pieces[0]
        for piece in pieces[1:]:
            integrand = integrand * piece
        if integrand.exponent(v) >= 0:
            raise NonSimplePoleError(f"step {k + 1}: no pole at the assigned value {v}")
        if integrand.exponent(v) < -1:
            raise NonSimplePoleError(f"non-simple pole at step {k + 1} (x = {v})")
        cancelled = {r: (num[r], den[r]) for r in num if r in den}
        steps.append(ResidueStep(v, integrand, integrand.residue(v), cancelled))
    return steps


def prefactor(pt: ParamPoint) -> Fraction:
    """``(1 - q/t) / ((1 - q)(1 - 1/t))``, one per integration variable."""
    return (1 - pt.q / pt.t) / ((1 - pt.q) * (1 - 1 / pt.t))


def iterated_residue(lam: Partition, mu: Partition, pt: ParamPoint, order=None) -> Fraction:
    """``I_{lam,mu}``: the residue contribution of one pole configuration."""
    n = lam.size + mu.size
    acc = prefactor(pt) ** n
    for step in residue_steps(lam, mu, pt, order):
        acc *= step.residue
    return acc


def level_sum_via_residues(n: int, pt: ParamPoint) -> Fraction:
    """Sum of :func:`iterated_residue` over all pairs with ``|lam| + |mu| = n``."""
    return sum((iterated_residue(lam, mu, pt) for lam, mu in partition_pairs(n)), Fraction(0))


def level_check(n: int, pt: ParamPoint) -> tuple:
    """(residue sum, ``Z_n(sigma^2)``)."""
    return level_sum_via_residues(n, pt), z_level_symbolic(n, ParamPoint(pt.q, pt.t))(pt.Q)
