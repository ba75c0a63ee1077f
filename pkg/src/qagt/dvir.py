"""Deformed Virasoro algebra: Verma module, Gram matrices, Whittaker vector.

The generators obey

    [T_n, T_m] = -sum_{l>=1} f_l (T_{n-l} T_{m+l} - T_{m-l} T_{n+l})
                 - c(n) delta_{n+m,0}

with ``f(x) = exp(sum_n (1-q^n)(1-t^-n)/(1+p^n) x^n/n)``, ``p = q/t`` and
``c(n) = (1-q)(1-1/t)(p^n - p^-n)/(1-p)``. The Verma module basis is
``T_{-lam}|h> = T_{-lam_1} T_{-lam_2} ... |h>`` for partitions ``lam``.

Coefficients may be exact rationals or polynomials in ``h``
(:class:`~qagt.exact.Polynomial`); the rewriting engine only adds and
multiplies them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .exact import Polynomial, RationalFunction, cauchy_interpolate
from .nekrasov import pole_pairs, recursion_rhs, z_level_symbolic
from .params import NonGenericError, ParamPoint
from .partitions import EMPTY, Partition, enumerate_partitions, ones


class RewritingError(RuntimeError):
    pass


@dataclass(frozen=True)
class StructureSeries:
    q: Fraction
    t: Fraction
    f: tuple

    @property
    def p(self) -> Fraction:
        return self.q / self.t

    def coeff(self, l: int) -> Fraction:
        if l >= len(self.f):
            raise RewritingError(f"f_{l} requested but the series is truncated at {len(self.f) - 1}")
        return self.f[l]

    def central(self, r: int) -> Fraction:
        """Coefficient ``c(r)`` of ``delta_{r+m,0}`` in ``[T_r, T_m]`` (entering with a minus sign)."""
        p = self.p
        pr = p**r if r >= 0 else 1 / p ** (-r)
        return (1 - self.q) * (1 - 1 / self.t) * (pr - 1 / pr) / (1 - p)


def log_coeffs(L: int, q, t) -> list:
    """``c_n = (1-q^n)(1-t^-n)/(1+p^n)`` for ``n = 1..L`` (index 0 unused).

    The numerator must carry the power ``n``: with ``(1-q)(1-1/t)`` in every
    term the quadratic relations are not consistent from level 3 on.
    """
    q, t = Fraction(q), Fraction(t)
    p = q / t
    out = [Fraction(0)]
    for n in range(1, L + 1):
        d = 1 + p**n
        if d == 0:
            raise NonGenericError(f"1 + p^{n} = 0 at p = {p}")
        out.append((1 - q**n) * (1 - t**-n) / d)
    return out


def structure_series(L: int, pt: ParamPoint) -> StructureSeries:
    """Truncation ``f_0..f_L`` of ``f(x)``.

    Uses ``n f_n = sum_{k=1..n} c_k f_{n-k}``, which follows from
    ``f' = g' f`` for ``f = exp(g)``.
    """
    if L < 1:
        raise ValueError("L must be at least 1")
    c = log_coeffs(L, pt.q, pt.t)
    f = [Fraction(1)]
    for n in range(1, L + 1):
        f.append(sum((c[k] * f[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return StructureSeries(pt.q, pt.t, tuple(f))


class VermaVector(dict):
    """Finite combination ``{partition: coefficient}`` of ``T_{-lam}|h>``."""

    def level_support(self) -> set:
        return {lam.size for lam in self}

    def coefficient(self, lam) -> object:
        return self.get(Partition(lam), 0)

    def __add__(self, other):
        out = VermaVector(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
            if not out[k]:
                del out[k]
        return out

    def scaled(self, c) -> VermaVector:
        if not c:
            return VermaVector()
        return VermaVector({k: v * c for k, v in self.items()})


def highest_weight() -> VermaVector:
    return VermaVector({EMPTY: Fraction(1)})


def basis_vector(lam) -> VermaVector:
    return VermaVector({Partition(lam): Fraction(1)})


class VermaModule:
    """Action of ``T_k`` on the Verma module of highest weight ``h``.

    ``h`` may be a rational or ``Polynomial.x()`` for entries polynomial in
    ``h``. Results are memoised per ``(mode, partition)``; the cache is the
    only mutable state.
    """

    def __init__(self, pt: ParamPoint, h, cap: int):
        self.pt = pt
        self.h = h
        self.cap = cap
        self.fs = structure_series(max(cap, 1) + 1, pt)
        self._memo = {}

    def _acc(self, out: dict, vec: dict, scale):
        for lam, c in vec.items():
            v = out.get(lam, 0) + c * scale
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)

    def apply_basis(self, a: int, lam: Partition) -> dict:
        """``T_a T_{-lam}|h>`` expanded in the canonical basis."""
        key = (a, lam)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if lam.size > self.cap or lam.size - a > self.cap:
            raise RewritingError(f"T_{a} on level {lam.size} leaves the cap {self.cap}")
        out = self._apply_basis(a, lam)
        self._memo[key] = out
        return out

    def _apply_basis(self, a: int, lam: Partition) -> dict:
        if a > lam.size:
            return {}
        if not lam:
            if a == 0:
                return {EMPTY: self.h}
            return {Partition((-a,)): Fraction(1)}
        b = -lam[0]
        rest = Partition(lam[1:])
        if a <= b:
            return {Partition((-a,) + tuple(lam)): Fraction(1)}
        # T_a T_b X = T_b (T_a X) + [T_a, T_b] X, every recursive call below
        # acts on a strictly smaller partition than lam
        out = {}
        self._acc(out, self.apply_vec(b, self.apply_basis(a, rest)), 1)
        m = rest.size
        fs = self.fs
        for l in range(1, m - b + 1):
            self._acc(out, self.apply_vec(a - l, self.apply_basis(b + l, rest)), -fs.coeff(l))
        for l in range(1, m - a + 1):
            self._acc(out, self.apply_vec(b - l, self.apply_basis(a + l, rest)), fs.coeff(l))
        if a + b == 0:
            self._acc(out, {rest: Fraction(1)}, -fs.central(a))
        return out

    def apply_vec(self, a: int, vec: dict) -> dict:
        out = {}
        for lam, c in vec.items():
            self._acc(out, self.apply_basis(a, lam), c)
        return out

    def apply_mode(self, k: int, v: dict) -> VermaVector:
        return VermaVector(self.apply_vec(k, v))

    def apply_word(self, modes, v: dict) -> VermaVector:
        """Apply ``T_{modes[0]} T_{modes[1]} ...``; the last mode acts first."""
        for k in reversed(list(modes)):
            v = self.apply_vec(k, v)
        return VermaVector(v)

    def pairing(self, lam: Partition, mu: Partition):
        """``<h| T_mu T_{-lam} |h>``, i.e. ``S(T_lam|h>, T_mu|h>)``."""
        if lam.size != mu.size:
            return 0
        v = {lam: Fraction(1)}
        for k in mu:
            v = self.apply_vec(k, v)
        return v.get(EMPTY, 0)


def apply_mode(k: int, v: dict, pt: ParamPoint, h=None, cap: int | None = None) -> VermaVector:
    """``T_k v`` at the highest weight ``h`` (default ``pt.h``)."""
    h = pt.h if h is None else h
    top = max((lam.size for lam in v), default=0)
    mod = VermaModule(pt, h, cap if cap is not None else max(top, top - k, 1))
    return mod.apply_mode(k, v)


@dataclass(frozen=True)
class GramMatrix:
    level: int
    basis: tuple
    entries: tuple  # rows of entries; entries[i][j] = S(T_{b_i}, T_{b_j})

    def rows(self) -> list:
        return [list(r) for r in self.entries]

    def evaluate(self, h) -> GramMatrix:
        """Specialise a polynomial-in-``h`` Gram matrix."""
        ev = tuple(tuple(e(h) if isinstance(e, Polynomial) else e for e in row) for row in self.entries)
        return GramMatrix(self.level, self.basis, ev)

    def det(self):
        return linalg.det(self.rows())

    def inverse(self) -> list:
        return linalg.inverse(self.rows())

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "basis": [list(b) for b in self.basis],
            "entries": [[str(e) for e in row] for row in self.entries],
        }


@lru_cache(maxsize=32)
def gram_matrix_poly(n: int, q, t) -> GramMatrix:
    """Level-``n`` Gram matrix with entries in ``Q[h]`` at fixed ``(q, t)``."""
    pt = ParamPoint(q, t)
    mod = VermaModule(pt, Polynomial.x(), max(n, 1))
    basis = tuple(enumerate_partitions(n))
    rows = []
    for lam in basis:
        row = []
        for mu in basis:
            e = mod.pairing(lam, mu)
            row.append(e if isinstance(e, Polynomial) else Polynomial.constant(e))
        rows.append(tuple(row))
    return GramMatrix(n, basis, tuple(rows))


def gram_matrix(n: int, pt: ParamPoint, h=None) -> GramMatrix:
    """``S^(n)`` at ``h`` (default ``pt.h``), indexed by :func:`enumerate_partitions`."""
    if n < 0:
        raise ValueError("n must be non-negative")
    h = pt.h if h is None else Fraction(h)
    return gram_matrix_poly(n, pt.q, pt.t).evaluate(h)


def gram_matrix_direct(n: int, pt: ParamPoint, h=None) -> GramMatrix:
    """Same as :func:`gram_matrix` but rewriting with numeric ``h`` throughout."""
    h = pt.h if h is None else Fraction(h)
    mod = VermaModule(pt, h, max(n, 1))
    basis = tuple(enumerate_partitions(n))
    rows = tuple(tuple(Fraction(mod.pairing(lam, mu)) for mu in basis) for lam in basis)
    return GramMatrix(n, basis, rows)


def h_rs_squared(r: int, s: int, pt: ParamPoint) -> Fraction:
    """``h_{r,s}^2 = t^r q^-s + t^-r q^s + 2``."""
    return pt.monomial(-s, r) + pt.monomial(s, -r) + 2


def partition_count(n: int) -> int:
    return len(enumerate_partitions(n)) if n >= 0 else 0


def kac_product(n: int, h, pt: ParamPoint) -> Fraction:
    """The factorised Kac determinant without its constant ``C_n``."""
    h2 = Fraction(h) ** 2
    acc = Fraction(1)
    for r in range(1, n + 1):
        for s in range(1, n // r + 1):
            e = partition_count(n - r * s)
            qr, tr = pt.q**r, pt.t**r
            acc *= ((h2 - h_rs_squared(r, s, pt)) * (1 - qr) * (1 - 1 / tr) / (qr + tr)) ** e
    return acc


def kac_constant_fit(n: int, t) -> Fraction:
    """Closed form matching every fitted ``C_n`` so far: ``(-1)^L t^(n p(n))``.

    ``L`` is the total number of parts over all partitions of ``n``. This is
    an empirical fit, reported as a diagnostic and never gated.
    """
    parts = sum(len(lam) for lam in enumerate_partitions(n))
    return (-1) ** parts * Fraction(t) ** (n * partition_count(n))


def kac_check(n: int, pt: ParamPoint, sigmas) -> dict:
    """Fit ``C_n = det S^(n) / kac_product`` at several ``h = sigma + 1/sigma``.

    ``ok`` is true when the ratio is the same for every ``h``.
    """
    sigmas = [Fraction(s) for s in sigmas]
    if len(set(sigmas)) < 3:
        raise ValueError("need at least 3 distinct sigma values")
    ratios = []
    for s in sigmas:
        h = s + 1 / s
        for r in range(1, n + 1):
            for k in range(1, n // r + 1):
                if h * h == h_rs_squared(r, k, pt):
                    raise NonGenericError(f"h^2 = h_{{{r},{k}}}^2 at sigma={s}")
        d = gram_matrix(n, pt, h).det()
        ratios.append(d / kac_product(n, h, pt))
    return {
        "level": n,
        "q": pt.q,
        "t": pt.t,
        "h_values": [s + 1 / s for s in sigmas],
        "ratios": ratios,
        "constant": ratios[0],
        "ok": all(r == ratios[0] for r in ratios),
    }


@dataclass(frozen=True)
class GaiottoVector:
    levels: tuple  # level n -> {Partition: coefficient}

    def level(self, n: int) -> dict:
        return self.levels[n]

    def to_json(self) -> dict:
        return {
            "levels": [
                [{"partition": list(lam), "coeff": str(c)} for lam, c in lev.items()]
                for lev in self.levels
            ]
        }


def gaiotto_coeffs(n_max: int, pt: ParamPoint, h=None) -> GaiottoVector:
    """Solve ``T_1 G_n = G_{n-1}``, ``T_k G_n = 0`` (``2 <= k <= n``) level by level.

    The overdetermined system must have exactly one solution.

    Raises
    ------
    linalg.SingularMatrixError
        If the solution is not unique or does not exist.
    """
    h = pt.h if h is None else Fraction(h)
    mod = VermaModule(pt, h, max(n_max, 1))
    levels = [{EMPTY: Fraction(1)}]
    for n in range(1, n_max + 1):
        basis = enumerate_partitions(n)
        images = {k: [mod.apply_basis(k, lam) for lam in basis] for k in range(1, n + 1)}
        rows, rhs = [], []
        for k in range(1, n + 1):
            target = levels[n - 1] if k == 1 else {}
            for nu in enumerate_partitions(n - k):
                rows.append([img.get(nu, Fraction(0)) for img in images[k]])
                rhs.append(target.get(nu, Fraction(0)))
        sol = linalg.solve(rows, rhs)
        levels.append({lam: c for lam, c in zip(basis, sol)})
    return GaiottoVector(tuple(levels))


def whittaker_residuals(g: GaiottoVector, pt: ParamPoint, h=None) -> list:
    """``(n, k, T_k G_n - expected)`` for every level and mode; all empty when exact."""
    h = pt.h if h is None else Fraction(h)
    n_max = len(g.levels) - 1
    mod = VermaModule(pt, h, max(n_max, 1))
    out = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            got = mod.apply_vec(k, g.level(n))
            want = g.level(n - 1) if k == 1 else {}
            diff = dict(got)
            for lam, c in want.items():
                diff[lam] = diff.get(lam, 0) - c
            out.append((n, k, {lam: c for lam, c in diff.items() if c}))
    return out


def gaiotto_norm_level(n: int, pt: ParamPoint, h=None) -> Fraction:
    """``(S^(n))^{-1}`` at ``(1^n, 1^n)``."""
    g = gram_matrix(n, pt, h)
    inv = linalg.inverse(g.rows())
    i = g.basis.index(ones(n))
    return inv[i][i]


def gaiotto_norm_direct(n: int, pt: ParamPoint, h=None) -> Fraction:
    """``<G_n|G_n> = sum c_lam c_mu S(lam, mu)`` from the solved Whittaker coefficients."""
    g = gram_matrix(n, pt, h)
    c = gaiotto_coeffs(n, pt, h).level(n)
    vec = [c[lam] for lam in g.basis]
    return sum((vec[i] * g.entries[i][j] * vec[j] for i in range(len(vec)) for j in range(len(vec))), Fraction(0))


PREFACTOR_LABELS = {0: "1", 1: "(q/t)^n", -1: "(t/q)^n"}


def determine_prefactor(pt: ParamPoint) -> int:
    """Exponent ``e`` in ``{0, 1, -1}`` with ``Z_1(sigma^2) = p^e F_1``.

    Raises
    ------
    ValueError
        If no candidate monomial matches.
    """
    f1 = gaiotto_norm_level(1, pt)
    z1 = z_level_symbolic(1, ParamPoint(pt.q, pt.t))(pt.Q)
    for e in (0, 1, -1):
        if z1 == pt.p**e * f1:
            return e
    raise ValueError(f"no monomial prefactor relates F_1={f1} and Z_1={z1}")


def agt_check(n: int, pt: ParamPoint, exponent: int | None = None) -> dict:
    """Compare ``p^(e n) (S^(n))^{-1}(1^n,1^n)`` with ``Z_n(sigma^2)``.

    ``exponent`` is the frozen prefactor exponent; when omitted it is
    determined at level 1 on this point.
    """
    if exponent is None:
        exponent = determine_prefactor(pt)
    f = gaiotto_norm_level(n, pt)
    lhs = pt.p ** (exponent * n) * f
    rhs = z_level_symbolic(n, ParamPoint(pt.q, pt.t))(pt.Q)
    return {
        "level": n,
        "prefactor": PREFACTOR_LABELS[exponent],
        "exponent": exponent,
        "inverse_gram_entry": f,
        "normalized": lhs,
        "nekrasov": rhs,
        "ok": lhs == rhs,
    }


def f_level_function(n: int, q, t, exponent: int = 1, sigmas=None) -> RationalFunction:
    """``p^(e n) F_n`` as a rational function of ``Q``, by Cauchy interpolation.

    Degree bounds: denominator ``#poles``, numerator ``#poles - 1`` over the
    candidate grid ``q^r t^-s``, ``1 <= r s <= n``.
    """
    q, t = Fraction(q), Fraction(t)
    if n == 0:
        return RationalFunction(1)
    npoles = len(pole_pairs(n))
    deg_num, deg_den = npoles - 1, npoles
    need = deg_num + deg_den + 2 + 2
    base = ParamPoint(q, t)
    bad_Q = {base.monomial(a, b) for a in range(-2 * n - 2, 2 * n + 3) for b in range(-2 * n - 2, 2 * n + 3)}
    if sigmas is None:
        sigmas = []
        k = 2
        while len(sigmas) < need:
            for s in (Fraction(k), Fraction(1, k) + 1):
                if s * s not in bad_Q and s not in sigmas:
                    sigmas.append(s)
            k += 1
        sigmas = sigmas[:need]
    gp = gram_matrix_poly(n, q, t)
    idx = gp.basis.index(ones(n))
    p = q / t
    samples = []
    for s in sigmas:
        h = s + 1 / s
        inv = linalg.inverse(gp.evaluate(h).rows())
        samples.append((s * s, p ** (exponent * n) * inv[idx][idx]))
    return cauchy_interpolate(samples, deg_num, deg_den)


def f_recursion_residual(n: int, q, t, exponent: int = 1) -> RationalFunction:
    """Residual of the conjectured recursion for ``F_n`` (zero when it holds)."""
    pt = ParamPoint(q, t)
    cache = {}

    def lower(m, Qval):
        if m not in cache:
            cache[m] = f_level_function(m, q, t, exponent)
        return cache[m](Qval)

    return f_level_function(n, q, t, exponent) - recursion_rhs(n, pt, z_lower=lower)
