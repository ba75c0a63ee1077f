"""K-theoretic pure SU(2) Nekrasov partition function and its recursion.

Everything is exact in ``Q`` at a fixed rational ``(q, t)``. Poles of the
graded parts ``Z_n`` sit on the grid ``q**r t**(-s)`` with ``1 <= r*s <= n``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .exact import (
    HigherOrderPoleError,
    PoleDecomposition,
    Polynomial,
    RationalFunction,
    as_fraction,
    poly_gcd,
    residue_simple,
)
from .params import NonGenericError, ParamPoint
from .partitions import EMPTY, Partition, conjugate, partition_pairs, rectangle


class VanishingFactorError(NonGenericError):
    pass


def n_exponents(lam: Partition, mu: Partition) -> list:
    """Exponents ``(a, b)`` with ``N_{lam,mu}(Q) = prod (1 - Q q^a t^b)``."""
    lam_c, mu_c = conjugate(lam), conjugate(mu)
    out = []
    for i, j in mu.boxes():
        out.append((lam.part(i) - j, mu_c.part(j) - i + 1))
    for i, j in lam.boxes():
        out.append((-mu.part(i) + j - 1, -lam_c.part(j) + i))
    return out


def n_factor(lam: Partition, mu: Partition, Qval, pt: ParamPoint) -> Fraction:
    """``N_{lam,mu}(Q)`` at a numeric ``Q``."""
    Qval = as_fraction(Qval)
    acc = Fraction(1)
    for a, b in n_exponents(lam, mu):
        acc *= 1 - Qval * pt.monomial(a, b)
    return acc


def z_pair(lam: Partition, mu: Partition, Qval, pt: ParamPoint) -> Fraction:
    """``Z_{lam,mu}(Q) = 1 / (N_{ll}(1) N_{mm}(1) N_{lm}(Q) N_{ml}(1/Q))``.

    Raises
    ------
    VanishingFactorError
        Naming the factor that is zero at these parameters.
    """
    Qval = as_fraction(Qval)
    if Qval == 0:
        raise VanishingFactorError("Q = 0")
    factors = (
        ("N_{lam,lam}(1)", n_factor(lam, lam, 1, pt)),
        ("N_{mu,mu}(1)", n_factor(mu, mu, 1, pt)),
        ("N_{lam,mu}(Q)", n_factor(lam, mu, Qval, pt)),
        ("N_{mu,lam}(1/Q)", n_factor(mu, lam, 1 / Qval, pt)),
    )
    den = Fraction(1)
    for name, val in factors:
        if val == 0:
            raise VanishingFactorError(
                f"{name} vanishes for lam={list(lam)}, mu={list(mu)} at Q={Qval}, q={pt.q}, t={pt.t}"
            )
        den *= val
    return 1 / den


def _pair_factored(lam: Partition, mu: Partition, pt: ParamPoint):
    """``Z_{lam,mu}`` as ``scale * Q**n / prod (Q - r)**m``; returns (scale, n, roots)."""
    const = n_factor(lam, lam, 1, pt) * n_factor(mu, mu, 1, pt)
    if const == 0:
        raise VanishingFactorError(f"N(1) vanishes for lam={list(lam)}, mu={list(mu)}")
    roots = Counter()
    # 1 - c Q = -c (Q - 1/c)
    for a, b in n_exponents(lam, mu):
        c = pt.monomial(a, b)
        const *= -c
        roots[1 / c] += 1
    # 1 - d/Q = (Q - d)/Q
    n = 0
    for a, b in n_exponents(mu, lam):
        roots[pt.monomial(a, b)] += 1
        n += 1
    return 1 / const, n, roots


def z_pair_symbolic(lam: Partition, mu: Partition, pt: ParamPoint) -> RationalFunction:
    scale, n, roots = _pair_factored(lam, mu, pt)
    num = Polynomial([0] * n + [scale])
    return RationalFunction.from_linear_factors(num, dict(roots))


@lru_cache(maxsize=64)
def z_level_symbolic(n: int, pt: ParamPoint) -> RationalFunction:
    """``Z_n(Q)`` as a reduced rational function of ``Q``.

    The terms are put over the least common multiple of their (already
    factored) denominators and then every common linear factor is divided
    out, so no Euclidean gcd is needed and nothing about the pole set is
    assumed.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return RationalFunction(1)
    terms = [_pair_factored(lam, mu, pt) for lam, mu in partition_pairs(n)]
    lcm = Counter()
    for _, _, roots in terms:
        for r, m in roots.items():
            lcm[r] = max(lcm[r], m)
    total = Polynomial()
    for scale, k, roots in terms:
        missing = []
        for r, m in lcm.items():
            missing.extend([r] * (m - roots.get(r, 0)))
        cof = Polynomial.from_roots(missing, lead=scale)
        total = total + Polynomial([0] * k + list(cof.coeffs))
    return RationalFunction.from_linear_factors(total, dict(lcm))


def z_level_value(n: int, Qval, pt: ParamPoint) -> Fraction:
    """``Z_n`` at a numeric ``Q`` by direct summation over partition pairs.

    Single terms have spurious poles (for instance ``Q = 1`` at ``n = 1``)
    that cancel in the sum; at such points use :func:`z_level_symbolic`.
    """
    return sum((z_pair(lam, mu, Qval, pt) for lam, mu in partition_pairs(n)), Fraction(0))


def pole_pairs(n: int) -> list:
    """Index pairs ``(r, s)`` with ``1 <= r*s <= n``, positive ones first."""
    pos = [(r, s) for r in range(1, n + 1) for s in range(1, n // r + 1)]
    return pos + [(-r, -s) for r, s in pos]


def pole_grid(n: int, pt: ParamPoint) -> dict:
    """Map ``q**r t**(-s) -> (r, s)`` over :func:`pole_pairs`."""
    return {pt.grid_point(r, s): (r, s) for r, s in pole_pairs(n)}


def g_kernel(r: int, s: int, pt: ParamPoint) -> Fraction:
    """Residue kernel ``G(r, s; q, t)``."""
    if r * s < 1:
        raise ValueError(f"need r*s >= 1, got r={r}, s={s}")
    sign = 1 if r > 0 else -1
    acc = -sign * pt.grid_point(r, s)
    for i in range(-abs(r), abs(r)):
        for j in range(-abs(s), abs(s)):
            if (i, j) == (0, 0):
                continue
            d = 1 - pt.monomial(i, -j)
            if d == 0:
                raise VanishingFactorError(f"1 - q^{i} t^{-j} vanishes at q={pt.q}, t={pt.t}")
            acc /= d
    return acc


def recursion_rhs(n: int, pt: ParamPoint, z_lower=None) -> RationalFunction:
    """``delta_{n,0} + sum G(r,s) Z_{n-rs}(q^r t^s) / (Q - q^r t^{-s})``.

    ``z_lower(m, Qval)`` supplies the lower-level values; by default the
    reduced ``Z_m`` is evaluated. Direct summation is not usable here: the
    shifted points ``q^r t^s`` can hit spurious poles of single terms that
    cancel in the sum.
    """
    if z_lower is None:
        def z_lower(m, Qval):
            return z_level_symbolic(m, pt)(Qval)
    terms = []
    for r, s in pole_pairs(n):
        shifted = pt.monomial(r, s)
        terms.append((pt.grid_point(r, s), g_kernel(r, s, pt) * z_lower(n - r * s, shifted)))
    poly = Polynomial.constant(1 if n == 0 else 0)
    return PoleDecomposition(tuple(sorted(terms)), poly).to_function()


def recursion_residual(n: int, pt: ParamPoint) -> RationalFunction:
    """``Z_n - rhs``; the zero function when the recursion holds."""
    return z_level_symbolic(n, pt) - recursion_rhs(n, pt)


def pole_report(n: int, pt: ParamPoint) -> dict:
    """Pole structure of ``Z_n``: roots with multiplicities and grid membership."""
    f = z_level_symbolic(n, pt)
    den = f.den
    squarefree = poly_gcd(den, den.derivative()).is_constant()
    grid = pole_grid(n, pt)
    found = {}
    rest = den
    for x, rs in grid.items():
        m = rest.root_multiplicity(x)
        if m:
            found[rs] = m
            for _ in range(m):
                rest, _ = rest.deflate(x)
    return {
        "denominator_degree": den.degree,
        "numerator_degree": f.num.degree,
        "squarefree": squarefree,
        "poles": found,
        "off_grid_degree": rest.degree,
        "ok": squarefree and rest.is_constant() and all(m == 1 for m in found.values()),
    }


def residue_check(r: int, s: int, n: int, pt: ParamPoint) -> tuple:
    """(Res_{Q=q^r t^-s} Z_n, G(r,s) Z_{n-rs}(q^r t^s)).

    Raises
    ------
    HigherOrderPoleError
        If ``Z_n`` has a multiple pole there (a failure of the simple-pole
        property, not a parameter problem).
    """
    if not 1 <= r * s <= n:
        raise ValueError(f"need 1 <= r*s <= n, got r={r}, s={s}, n={n}")
    x0 = pt.grid_point(r, s)
    f = z_level_symbolic(n, pt)
    try:
        lhs = residue_simple(f, x0)
    except HigherOrderPoleError:
        raise
    except ValueError:
        lhs = Fraction(0)
    rhs = g_kernel(r, s, pt) * z_level_symbolic(n - r * s, pt)(pt.monomial(r, s))
    return lhs, rhs


def rectangle_residue(r: int, s: int, pt: ParamPoint) -> Fraction:
    """Residue at ``q^r t^-s`` of the single term carrying that pole.

    For ``r, s > 0`` this is ``Z_{∅,(r^s)}``; for ``r, s < 0`` the mirror
    term ``Z_{(|r|^|s|),∅}``.
    """
    if r > 0:
        f = z_pair_symbolic(EMPTY, rectangle(r, s), pt)
    else:
        f = z_pair_symbolic(rectangle(-r, -s), EMPTY, pt)
    return residue_simple(f, pt.grid_point(r, s))


def duality_check(lam: Partition, mu: Partition, Qval, pt: ParamPoint) -> tuple:
    """``(Z_{lam,mu}(Q), Z_{mu,lam}(1/Q))``."""
    Qval = as_fraction(Qval)
    return z_pair(lam, mu, Qval, pt), z_pair(mu, lam, 1 / Qval, pt)


def z_series(x, n_max: int, Qval, pt: ParamPoint) -> list:
    """Coefficients ``x**n Z_n(Q)`` for ``n = 0..n_max`` with ``x = Lambda^4 t/q``."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    x = as_fraction(x)
    return [x**n * z_level_value(n, Qval, pt) for n in range(n_max + 1)]
