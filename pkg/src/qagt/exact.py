"""Exact univariate polynomial and rational-function arithmetic over Q.

Scalars are :class:`fractions.Fraction`. There is exactly one symbolic
variable, conventionally called ``Q``. Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg

BigRational = Fraction


class PoleError(ZeroDivisionError):
    """Evaluation hit a root of the denominator."""

    def __init__(self, location):
        self.location = location
        super().__init__(f"pole at {location}")


class HigherOrderPoleError(ArithmeticError):
    pass


class InterpolationError(ArithmeticError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Polynomial:
    """Dense polynomial; ``coeffs[k]`` multiplies ``Q**k``.

    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> Polynomial:
        # trusted path: caller passes Fractions
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls((c,))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def linear(cls, root) -> Polynomial:
        """The monic factor ``Q - root``."""
        return cls((-as_fraction(root), 1))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> Polynomial:
        coeffs = [as_fraction(lead)]
        for r in roots:
            r = as_fraction(r)
            new = [Fraction(0)] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                new[k + 1] += c
                new[k] -= r * c
            coeffs = new
        return cls._raw(coeffs)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return Polynomial._raw([c / lc for c in self.coeffs])

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("Q" if k == 1 else f"Q^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            elif mono:
                terms.append(f"({c})*{mono}")
            else:
                terms.append(f"({c})")
        return " + ".join(terms)

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial()
            return Polynomial._raw([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dd = other.degree
        lc = other.lead
        if len(rem) - 1 < dd:
            return Polynomial(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] / lc
            quot[k] = c
            if c:
                for j, d in enumerate(other.coeffs):
                    rem[k + j] -= c * d
        return Polynomial._raw(quot), Polynomial._raw(rem[:dd])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def deflate(self, root) -> tuple[Polynomial, Fraction]:
        """Synthetic division by ``Q - root``; returns (quotient, remainder)."""
        if not self.coeffs:
            return Polynomial(), Fraction(0)
        n = len(self.coeffs)
        quot = [Fraction(0)] * (n - 1)
        acc = Fraction(0)
        for k in range(n - 1, -1, -1):
            acc = acc * root + self.coeffs[k]
            if k:
                quot[k - 1] = acc
        return Polynomial._raw(quot), acc

    def root_multiplicity(self, root) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        m = 0
        p = self
        while True:
            quot, rem = p.deflate(root)
            if rem != 0:
                return m
            m += 1
            p = quot

    def derivative(self) -> Polynomial:
        return Polynomial._raw([k * c for k, c in enumerate(self.coeffs)][1:])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (the zero polynomial if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


class RationalFunction:
    """Reduced quotient ``num / den`` of polynomials in ``Q``.

    ``den`` is monic and ``gcd(num, den) == 1`` so that equality is
    structural. The zero function is ``0 / 1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        if den is None:
            den = Polynomial.constant(1)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if num.is_zero():
            self.num, self.den = num, Polynomial.constant(1)
            return
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = num // g, den // g
        lc = den.lead
        self.num = num * (1 / lc)
        self.den = den * (1 / lc)

    @classmethod
    def _reduced(cls, num: Polynomial, den: Polynomial) -> RationalFunction:
        # caller guarantees coprime with monic den
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def from_linear_factors(cls, num: Polynomial, roots: dict, scale=1) -> RationalFunction:
        """Build ``scale * num / prod (Q - r)**m`` and reduce.

        Reduction only divides out the listed roots, which is cheaper and
        sturdier than a Euclidean gcd when the denominator is already
        factored.
        """
        scale = as_fraction(scale)
        if num.is_zero():
            return cls(Polynomial())
        remaining = {}
        for r, m in roots.items():
            while m > 0:
                quot, rem = num.deflate(r)
                if rem != 0:
                    break
                num = quot
                m -= 1
            if m:
                remaining[r] = m
        den_roots = []
        for r in sorted(remaining):
            den_roots.extend([r] * remaining[r])
        return cls._reduced(num * scale, Polynomial.from_roots(den_roots))

    @classmethod
    def x(cls) -> RationalFunction:
        return cls._reduced(Polynomial.x(), Polynomial.constant(1))

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        d = self.den(x)
        if d == 0:
            raise PoleError(x)
        return self.num(x) / d

    evaluate = __call__

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction._reduced(Polynomial.constant(other), Polynomial.constant(1))
        if isinstance(other, Polynomial):
            return RationalFunction._reduced(other, Polynomial.constant(1))
        return None

    def __neg__(self):
        return RationalFunction._reduced(-self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        a_cof = self.den // g
        b_cof = other.den // g
        return RationalFunction(self.num * b_cof + other.num * a_cof, a_cof * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self


def reduce(num, den) -> RationalFunction:
    """Return ``num / den`` in lowest terms with a monic denominator."""
    if not isinstance(num, Polynomial):
        num = Polynomial(num) if isinstance(num, (list, tuple)) else Polynomial.constant(num)
    if not isinstance(den, Polynomial):
        den = Polynomial(den) if isinstance(den, (list, tuple)) else Polynomial.constant(den)
    return RationalFunction(num, den)


def evaluate(f: RationalFunction, x) -> Fraction:
    return f(x)


def residue_simple(f: RationalFunction, x0) -> Fraction:
    """Residue of ``f`` at a simple pole ``x0``.

    Raises
    ------
    ValueError
        If ``x0`` is not a pole of ``f``.
    HigherOrderPoleError
        If the pole has multiplicity two or more.
    """
    x0 = as_fraction(x0)
    cofactor, rem = f.den.deflate(x0)
    if rem != 0:
        raise ValueError(f"not a pole: {x0}")
    val = cofactor(x0)
    if val == 0:
        raise HigherOrderPoleError(f"higher-order pole at {x0}")
    return f.num(x0) / val


@dataclass(frozen=True)
class PoleDecomposition:
    """``sum(res / (Q - pole)) + polynomial_part`` with distinct poles."""

    terms: tuple  # of (pole, residue) pairs, sorted by pole
    polynomial_part: Polynomial

    def to_function(self) -> RationalFunction:
        poles = [p for p, _ in self.terms]
        if len(set(poles)) != len(poles):
            raise ValueError("pole locations must be distinct")
        den = Polynomial.from_roots(poles)
        num = self.polynomial_part * den
        for k, (_, res) in enumerate(self.terms):
            if res:
                num = num + Polynomial.from_roots(poles[:k] + poles[k + 1:], lead=res)
        return RationalFunction.from_linear_factors(num, {p: 1 for p in poles})

    def residue_at(self, pole) -> Fraction:
        for p, r in self.terms:
            if p == pole:
                return r
        return Fraction(0)


def rational_roots(p: Polynomial) -> list:
    """Sorted distinct rational roots via the rational root theorem (small inputs only)."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    from math import lcm

    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    roots = []
    shift = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
    if len(ints) <= 1:
        return roots
    cands = set()
    for a in _divisors(abs(ints[0])):
        for b in _divisors(abs(ints[-1])):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    roots.extend(c for c in cands if p(c) == 0)
    return sorted(roots)


def _divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def partial_fractions(f: RationalFunction, candidates: Sequence | None = None) -> PoleDecomposition:
    """Split ``f`` into simple-pole terms plus a polynomial part.

    ``candidates`` lists the admissible pole locations. Every root of the
    denominator must be found among them (or, without candidates, among the
    rational roots) and must be simple.
    """
    quot, rem = f.num.divmod(f.den)
    if candidates is None:
        candidates = rational_roots(f.den) if not f.den.is_constant() else []
    den = f.den
    poles = []
    for c in dict.fromkeys(as_fraction(c) for c in candidates):
        if den.is_constant():
            break
        reduced, r = den.deflate(c)
        if r != 0:
            continue
        if reduced(c) == 0:
            raise HigherOrderPoleError(f"repeated factor (Q - {c}) in denominator")
        den = reduced
        poles.append(c)
    if not den.is_constant():
        raise ArithmeticError(f"unfactored remainder in denominator: {den}")
    terms = tuple(sorted((p, residue_simple(RationalFunction._reduced(rem, f.den), p)) for p in poles))
    return PoleDecomposition(terms, quot)


def cauchy_interpolate(samples: Sequence, deg_num: int, deg_den: int) -> RationalFunction:
    """Reconstruct a rational function from exact samples ``(x, y)``.

    The first ``deg_num + deg_den + 1`` samples determine the candidate
    through a homogeneous linear system; all remaining samples are used to
    validate it.
    """
    need = deg_num + deg_den + 2
    if len(samples) < need:
        raise ValueError(f"need at least {need} samples, got {len(samples)}")
    pts = [(as_fraction(x), as_fraction(y)) for x, y in samples]
    if len({x for x, _ in pts}) != len(pts):
        raise ValueError("sample abscissae must be distinct")
    fit, check = pts[: need - 1], pts[need - 1:]
    rows = []
    for x, y in fit:
        powers = [Fraction(1)]
        for _ in range(max(deg_num, deg_den)):
            powers.append(powers[-1] * x)
        rows.append(powers[: deg_num + 1] + [-y * w for w in powers[: deg_den + 1]])
    basis = linalg.nullspace(rows)
    if not basis:
        raise InterpolationError("interpolation failed")
    vec = basis[0]
    num = Polynomial(vec[: deg_num + 1])
    den = Polynomial(vec[deg_num + 1:])
    if den.is_zero():
        raise InterpolationError("interpolation failed")
    f = RationalFunction(num, den)
    for x, y in pts:
        try:
            ok = f(x) == y
        except PoleError:
            ok = False
        if not ok:
            raise InterpolationError("degree bound too small")
    return f
