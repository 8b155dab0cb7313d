"""
Solvers for e^(cx) prod(x - t_i) / prod(x - s_j) = a in the shapes that have
a real-variable analysis: no parameters (a logarithm), one upper parameter
with an optional r-shift, one upper and one lower, and two upper parameters.

The one-upper/one-lower equation is reduced to the r-Lambert function, which
has no pole, so every branch of W_r yields at most one root.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from ._roots import safeguarded_newton
from .errors import DomainError, UnsupportedConfiguration
from .rlambert import classify, w_r

__all__ = [
    "GenWParams",
    "RootSet",
    "canonicalize",
    "forward",
    "residual",
    "solve",
    "solve_empty",
    "solve_ts",
    "solve_shifted",
    "solve_tt",
    "count_tt_solutions",
    "tt_critical_points",
    "ROOT_TOL",
    "DOUBLE_ROOT_TOL",
]

ROOT_TOL = 1e-10
DOUBLE_ROOT_TOL = 1e-9
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class GenWParams:
    """Parameters of e^(cx) prod(x - t_i) / prod(x - s_j) = a."""

    uppers: tuple[float, ...] = ()
    lowers: tuple[float, ...] = ()
    c: float = 1.0
    a: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "uppers", tuple(self.uppers))
        object.__setattr__(self, "lowers", tuple(self.lowers))


@dataclass(frozen=True)
class RootSet:
    """Sorted real roots; ``double[i]`` marks a root of multiplicity two."""

    roots: tuple[float, ...] = ()
    double: tuple[bool, ...] = field(default=())

    @property
    def count(self) -> int:
        """Number of roots counted with multiplicity."""
        return len(self.roots) + sum(self.double)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def canonicalize(p: GenWParams) -> GenWParams:
    """Cancel shared upper/lower parameters and scale c to 1.

    Substituting x -> x/c turns the equation into
    e^x prod(x - c t_i) / prod(x - c s_j) = c^(n-m) a, so a root x' of the
    canonical problem gives x = x'/c for the original one.
    """
    if p.c == 0:
        raise ValueError("c = 0 removes the exponential; not a Lambert-type equation")
    up, lo = Counter(p.uppers), Counter(p.lowers)
    shared = up & lo
    up -= shared
    lo -= shared
    uppers = sorted(up.elements())
    lowers = sorted(lo.elements())
    n, m = len(uppers), len(lowers)
    c = p.c
    return GenWParams(
        uppers=tuple(c * t for t in uppers),
        lowers=tuple(c * s for s in lowers),
        c=1.0,
        a=p.a * c ** (n - m),
    )


def forward(p: GenWParams, x: float) -> float:
    """Left-hand side e^(cx) prod(x - t_i) / prod(x - s_j)."""
    v = math.exp(p.c * x)
    for t in p.uppers:
        v *= x - t
    for s in p.lowers:
        v /= x - s
    return v


def residual(p: GenWParams, x: float) -> float:
    """Relative residual of the denominator-cleared equation.

    |e^(cx) prod(x-t) - a prod(x-s)| divided by max(1, |a|, both sides),
    which stays meaningful next to a pole where the quotient form blows up.
    """
    lhs = math.exp(p.c * x)
    for t in p.uppers:
        lhs *= x - t
    rhs = p.a
    for s in p.lowers:
        rhs *= x - s
    return abs(lhs - rhs) / max(1.0, abs(p.a), abs(lhs), abs(rhs))


def _rootset(values: list[float], doubles: list[bool] | None = None) -> RootSet:
    """Sort and merge values that coincide (within 1e-9 relative)."""
    doubles = doubles or [False] * len(values)
    pairs = sorted(zip(values, doubles))
    roots: list[float] = []
    flags: list[bool] = []
    for v, d in pairs:
        if roots and abs(v - roots[-1]) <= DOUBLE_ROOT_TOL * max(1.0, abs(v)):
            flags[-1] = True
            continue
        roots.append(v)
        flags.append(d)
    return RootSet(tuple(roots), tuple(flags))


def solve_empty(a: float) -> float:
    """W(;;a) = log a."""
    if a <= 0:
        raise DomainError("e^x = a needs a > 0")
    return math.log(a)


def _all_wr(r: float, x: float) -> list[float]:
    """Values of every branch of W_r whose domain holds x."""
    layout = classify(r)
    out = []
    for b in layout.branches:
        try:
            out.append(w_r(r, b.id, x).value)
        except DomainError:
            continue
    return out


def solve_ts(t: float, s: float, c: float, a: float) -> RootSet:
    """All real roots of e^(cx) (x - t) / (x - s) = a.

    With T = t - s the roots are x = t + W_{r'}(c a e^(-ct) T) / c on every
    branch of W_{r'}, r' = -a e^(-ct).
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    if t == s:
        raise DomainError("t = s cancels; the equation is e^(cx) = a")
    if a == 0:
        return RootSet((float(t),), (False,))
    T = t - s
    scale = math.exp(-c * t)
    r = -a * scale
    arg = c * a * scale * T
    xs = [t + u / c for u in _all_wr(r, arg)]
    p = GenWParams((t,), (s,), c, a)
    return _rootset([x for x in xs if residual(p, x) <= ROOT_TOL])


def solve_shifted(t: float, c: float, r: float, a: float) -> RootSet:
    """All real roots of (x - t) e^(cx) + r (x - t) = a.

    x = t + W_{r e^(-ct)}(c a e^(-ct)) / c, one root per branch whose domain
    holds the argument.
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    scale = math.exp(-c * t)
    xs = [t + u / c for u in _all_wr(r * scale, c * a * scale)]
    return _rootset(xs)


def tt_critical_points(t1: float, t2: float) -> tuple[float, float]:
    """Zeros of d/dx e^x (x-t1)(x-t2): roots of x^2 + (2-t1-t2) x + t1 t2 - t1 - t2.

    The discriminant is 4 + (t1 - t2)^2 > 0, so there are always two.
    """
    b = 2.0 - t1 - t2
    cc = t1 * t2 - t1 - t2
    d = math.sqrt(4.0 + (t1 - t2) ** 2)
    # stable quadratic roots
    q = -0.5 * (b + math.copysign(d, b))
    x1 = q
    x2 = cc / q if q != 0 else -b - q
    if q == 0:
        x1, x2 = -0.5 * d, 0.5 * d
    return (min(x1, x2), max(x1, x2))


def _g_tt(t1: float, t2: float, x: float) -> float:
    if x > 709.0:
        return math.inf
    return math.exp(x) * (x - t1) * (x - t2)


def _dg_tt(t1: float, t2: float, x: float) -> float:
    if x > 709.0:
        return math.inf
    return math.exp(x) * ((x - t1) * (x - t2) + (x - t1) + (x - t2))


def _near(a: float, v: float) -> bool:
    return abs(a - v) <= DOUBLE_ROOT_TOL * max(abs(v), 1e-300)


def count_tt_solutions(t1: float, t2: float, a: float) -> int:
    """Number of real roots of e^x (x-t1)(x-t2) = a, with multiplicity.

    The map rises from 0+ at -inf to a local maximum at the first critical
    point, falls to a local minimum (<= 0) at the second, then grows without
    bound. The count follows from where a sits relative to those two values.
    """
    c1, c2 = tt_critical_points(t1, t2)
    vmax, vmin = _g_tt(t1, t2, c1), _g_tt(t1, t2, c2)
    if a > 0:
        # tangency at the maximum is a double root plus the right-hand root
        return 1 if a > vmax and not _near(a, vmax) else 3
    if a == 0:
        return 2
    if _near(a, vmin):
        return 2
    return 2 if a > vmin else 0


def _h_tt(t1: float, t2: float, la: float, x: float) -> float:
    prod = abs((x - t1) * (x - t2))
    return -math.inf if prod == 0.0 else x + math.log(prod) - la


def _dh_tt(t1: float, t2: float, x: float) -> float:
    if x == t1 or x == t2:
        return math.inf
    return 1.0 + 1.0 / (x - t1) + 1.0 / (x - t2)


def _seed_near_zero(t1: float, t2: float, a: float, z: float, lo: float, hi: float) -> float:
    """Root of the local model e^z (x-t1)(x-t2) = a next to the zero ``z`` of g."""
    h = 0.5 * abs(t1 - t2)
    eps = a * math.exp(-z)
    den = h + math.sqrt(max(h * h + eps, 0.0))
    step = abs(eps) / den if den > 0.0 else 0.0
    return z + step if lo == z else z - step


def _bracketed(t1: float, t2: float, a: float, lo: float, hi: float,
               increasing: bool) -> float:
    """Root of e^x (x-t1)(x-t2) = a on a piece where g has the sign of a.

    Works with x + log|(x-t1)(x-t2)| = log|a|, which neither underflows far
    to the left nor flattens next to a double zero. ``increasing`` refers to
    |g| on [lo, hi].
    """
    la = math.log(abs(a))
    y0 = None
    for z in (lo, hi):
        if z in (t1, t2):
            y0 = _seed_near_zero(t1, t2, a, z, lo, hi)
            if y0 == z:
                # the offset is below one ulp of z
                return float(z)
    g = lambda x: _h_tt(t1, t2, la, x)
    dg = lambda x: _dh_tt(t1, t2, x)
    x, _ = safeguarded_newton(g, dg, lo, hi, increasing, y0=y0, min_slope=0.0)
    return x


def solve_tt(t1: float, t2: float, a: float) -> RootSet:
    """All real roots of e^x (x-t1)(x-t2) = a.

    The line is cut at the two critical points and the zeros t1, t2 into
    pieces where g is monotone and of one sign; each piece that can reach
    ``a`` is searched with bracketed Newton.
    """
    if a == 0:
        if t1 == t2:
            return RootSet((float(t1),), (True,))
        return RootSet(tuple(sorted((float(t1), float(t2)))), (False, False))
    tlo, thi = min(t1, t2), max(t1, t2)
    c1, c2 = tt_critical_points(t1, t2)
    vmax, vmin = _g_tt(t1, t2, c1), _g_tt(t1, t2, c2)
    roots: list[float] = []
    doubles: list[bool] = []

    if a > 0:
        # right of both zeros g climbs from 0 to inf
        hi = thi + 1.0
        while _g_tt(t1, t2, hi) < a:
            hi = thi + 2.0 * (hi - thi)
        roots.append(_bracketed(t1, t2, a, thi, hi, True))
        doubles.append(False)
        if _near(a, vmax):
            roots.append(c1)
            doubles.append(True)
        elif a < vmax:
            # falling from vmax to 0 on [c1, tlo], rising from 0+ on (-inf, c1]
            roots.append(_bracketed(t1, t2, a, c1, tlo, False))
            doubles.append(False)
            lo = c1 - 1.0
            while _g_tt(t1, t2, lo) > a:
                lo = c1 - 2.0 * (c1 - lo)
            roots.append(_bracketed(t1, t2, a, lo, c1, True))
            doubles.append(False)
    elif _near(a, vmin):
        roots.append(c2)
        doubles.append(True)
    elif a > vmin:
        # between the zeros: |g| grows on [tlo, c2] and shrinks on [c2, thi]
        roots.append(_bracketed(t1, t2, a, tlo, c2, True))
        roots.append(_bracketed(t1, t2, a, c2, thi, False))
        doubles += [False, False]
    out: list[float] = []
    flags: list[bool] = []
    for x, d in sorted(zip(roots, doubles)):
        # two roots closer than one ulp round onto the same float
        if out and x == out[-1]:
            flags[-1] = True
            continue
        out.append(x)
        flags.append(d)
    return RootSet(tuple(out), tuple(flags))


def solve(p: GenWParams) -> RootSet:
    """Dispatch on the parameter shape after canonicalization.

    Roots are returned in the original variable and checked against the
    original equation.
    """
    q = canonicalize(p)
    shape = (len(q.uppers), len(q.lowers))
    if shape == (0, 0):
        if q.a <= 0:
            return RootSet()
        xs = [solve_empty(q.a)]
        flags = [False]
    elif shape == (1, 0):
        rs = solve_shifted(q.uppers[0], 1.0, 0.0, q.a)
        xs, flags = list(rs.roots), list(rs.double)
    elif shape == (1, 1):
        rs = solve_ts(q.uppers[0], q.lowers[0], 1.0, q.a)
        xs, flags = list(rs.roots), list(rs.double)
    elif shape == (2, 0):
        rs = solve_tt(q.uppers[0], q.uppers[1], q.a)
        xs, flags = list(rs.roots), list(rs.double)
    else:
        raise UnsupportedConfiguration(
            f"no solver for {shape[0]} upper and {shape[1]} lower parameters")
    return _rootset([x / p.c for x in xs], flags)
