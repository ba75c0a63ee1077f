"""Exact rational sample points ``(q, t, sigma)`` and genericity checks.

``sigma`` stands for ``Q**(1/2)`` so that ``Q = sigma**2`` and
``h = sigma + 1/sigma`` stay rational.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import as_fraction

log = logging.getLogger(__name__)


class NonGenericError(ValueError):
    """A sample point makes some factor vanish in the requested range."""


def _ipow(x: Fraction, k: int) -> Fraction:
    return x**k if k >= 0 else 1 / x ** (-k)


@dataclass(frozen=True)
class ParamPoint:
    q: Fraction
    t: Fraction
    sigma: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        object.__setattr__(self, "t", as_fraction(self.t))
        if self.q == 0 or self.t == 0:
            raise NonGenericError("q and t must be nonzero")
        if self.sigma is not None:
            s = as_fraction(self.sigma)
            object.__setattr__(self, "sigma", s)
            if s in (0, 1, -1):
                raise NonGenericError(f"sigma must avoid 0 and ±1, got {s}")

    @classmethod
    def generic(cls, q, t, sigma=None, level: int = 1) -> ParamPoint:
        pt = cls(q, t, sigma)
        pt.require_generic(level)
        return pt

    @property
    def p(self) -> Fraction:
        return self.q / self.t

    @property
    def Q(self) -> Fraction:
        if self.sigma is None:
            raise ValueError("this point has no sigma")
        return self.sigma * self.sigma

    @property
    def h(self) -> Fraction:
        if self.sigma is None:
            raise ValueError("this point has no sigma")
        return self.sigma + 1 / self.sigma

    def monomial(self, a: int, b: int) -> Fraction:
        """``q**a * t**b``."""
        return _ipow(self.q, a) * _ipow(self.t, b)

    def grid_point(self, r: int, s: int) -> Fraction:
        """The pole location ``q**r * t**(-s)``."""
        return self.monomial(r, -s)

    def with_sigma(self, sigma) -> ParamPoint:
        return ParamPoint(self.q, self.t, sigma)

    def require_generic(self, level: int) -> None:
        """Reject points where some ``q**a t**b`` with small exponents is 1.

        Exponents up to ``2*level + 2`` cover every factor met when
        evaluating level-``level`` objects, including the shifted arguments
        ``Q = q**r t**s`` of the recursion. With ``sigma`` present, ``Q``
        and ``-Q`` must also avoid that monomial grid.
        """
        bound = 2 * level + 2
        seen = {}
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                if (a, b) == (0, 0):
                    continue
                v = self.monomial(a, b)
                if v == 1:
                    raise NonGenericError(f"q^{a} t^{b} = 1 at q={self.q}, t={self.t}")
                seen[v] = (a, b)
        if self.q + self.t == 0 or self.p in (1, -1):
            raise NonGenericError(f"p = q/t must avoid ±1 (q={self.q}, t={self.t})")
        if self.sigma is not None:
            Q = self.Q
            for target in (Q, -Q):
                if target in seen or target == 1:
                    raise NonGenericError(f"Q={Q} collides with the q,t monomial grid")

    def as_dict(self) -> dict:
        d = {"q": str(self.q), "t": str(self.t)}
        if self.sigma is not None:
            d["sigma"] = str(self.sigma)
        return d


def random_ratio(rng: random.Random, lo: int = 2, hi: int = 97) -> Fraction:
    """A ratio ``a/b`` of coprime integers from ``[lo, hi]``, with ``a != b``."""
    while True:
        a = rng.randint(lo, hi)
        b = rng.choice([1, rng.randint(lo, hi)])
        if a != b and gcd(a, b) == 1:
            return Fraction(a, b)


def sample_points(count: int, level: int, seed: int, with_sigma: bool = True, max_tries: int = 1000) -> list:
    """Seeded generic sample points for objects up to ``level``."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise NonGenericError(f"no generic point found after {max_tries} draws")
        q, t = random_ratio(rng), random_ratio(rng)
        sigma = random_ratio(rng) if with_sigma else None
        try:
            out.append(ParamPoint.generic(q, t, sigma, level))
        except NonGenericError as exc:
            log.debug("rejected sample (q=%s, t=%s, sigma=%s): %s", q, t, sigma, exc)
    return out
