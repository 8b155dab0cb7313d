"""
The r-Lambert function W_r, the inverse of f_r(y) = y e^y + r y.

Depending on r the inverse has one (r >= 1/e^2), two (r < 0) or three
(0 < r < 1/e^2) real branches; r = 0 is the classical Lambert W. Branch
labels follow the classical convention: 0 is the rightmost branch, -1 the
next one to the left, -2 the leftmost.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import classic
from ._roots import safeguarded_newton
from .errors import BranchError, ConvergenceError, DomainError, SingularityError

__all__ = [
    "INV_E2",
    "Branch",
    "BranchLayout",
    "CriticalPoints",
    "EvalResult",
    "f_r",
    "f_r_prime",
    "classify",
    "w_r",
    "w_r_all",
    "w_r_derivative",
    "w_r_antiderivative",
    "w_r_asymptotic",
    "omega1_constant",
    "log_identity_check",
]

INV_E2 = math.exp(-2.0)
DEGENERATE_TOL = 1e-15
_EPS = 2.220446049250313e-16
_NEAR_CUT = 1e-6
_LOCAL_TERMS = 16
_MAX_EXPAND = 1100


def _exp_plus(y: float, r: float) -> float:
    """e^y + r, keeping digits when r is close to -1 and y is small."""
    if abs(1.0 + r) < 0.5:
        return math.expm1(y) + (1.0 + r)
    return (math.exp(y) if y < 709.0 else math.inf) + r


def f_r(r: float, y: float) -> float:
    """Forward map y e^y + r y."""
    return y * _exp_plus(y, r)


def f_r_prime(r: float, y: float) -> float:
    """Derivative e^y (1 + y) + r."""
    ey = math.exp(y) if y < 709.0 else math.inf
    return _exp_plus(y, r) + y * ey


@dataclass(frozen=True)
class CriticalPoints:
    """Zeros of f_r'. ``alpha``/``beta`` for 0 < r <= 1/e^2, ``gamma`` for r < 0."""

    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None


@dataclass(frozen=True)
class Branch:
    """One real branch: domain and range as closed intervals (infinite ends allowed)."""

    id: int
    domain: tuple[float, float]
    range: tuple[float, float]
    increasing: bool

    def in_domain(self, x: float, slack: float = 0.0) -> bool:
        return self.domain[0] - slack <= x <= self.domain[1] + slack

    def in_range(self, y: float) -> bool:
        return self.range[0] <= y <= self.range[1]


@dataclass(frozen=True)
class BranchLayout:
    r: float
    case: str
    branches: tuple[Branch, ...]
    critical: CriticalPoints
    kink: float | None = None

    def branch(self, branch_id: int) -> Branch:
        for b in self.branches:
            if b.id == branch_id:
                return b
        have = [b.id for b in self.branches]
        raise BranchError(f"r={self.r!r} has branches {have}, not {branch_id}")

    @property
    def cuts(self) -> tuple[float, ...]:
        """Abscissas where two branches meet (or the kink when degenerate)."""
        if self.kink is not None:
            return (self.kink,)
        c = self.critical
        pts = [p for p in (c.alpha, c.beta, c.gamma) if p is not None]
        if self.case == "classical":
            pts = [-1.0]
        return tuple(f_r(self.r, p) for p in pts)

    def branch_for_value(self, y: float) -> Branch:
        """The branch whose range holds ``y`` (rightmost one on a shared end)."""
        for b in self.branches:
            if b.in_range(y):
                return b
        raise DomainError(f"no branch of W_{self.r!r} takes the value {y!r}")

    def branches_at(self, x: float) -> list[Branch]:
        return [b for b in self.branches if b.in_domain(x)]


def _is_degenerate(r: float) -> bool:
    return abs(r - INV_E2) <= DEGENERATE_TOL


@lru_cache(maxsize=256)
def classify(r: float) -> BranchLayout:
    """Real branch structure of W_r.

    The critical points of f_r are W(-re) - 1 on the classical branches;
    they split the real line into monotone pieces of f_r.
    """
    r = float(r)
    if not math.isfinite(r):
        raise ValueError("r must be finite")
    inf = math.inf
    if r == 0.0:
        return BranchLayout(r, "classical", (
            Branch(0, (classic.BRANCH_POINT, inf), (-1.0, inf), True),
            Branch(-1, (classic.BRANCH_POINT, -math.ulp(0.0)), (-inf, -1.0), False),
        ), CriticalPoints())
    if _is_degenerate(r):
        return BranchLayout(r, "degenerate", (
            Branch(0, (-inf, inf), (-inf, inf), True),
        ), CriticalPoints(alpha=-2.0, beta=-2.0), kink=f_r(r, -2.0))
    if r > INV_E2:
        return BranchLayout(r, "one-branch", (
            Branch(0, (-inf, inf), (-inf, inf), True),
        ), CriticalPoints())
    if r > 0.0:
        alpha = classic.lambert_w(-1, -r * math.e) - 1.0
        beta = classic.lambert_w(0, -r * math.e) - 1.0
        fa, fb = f_r(r, alpha), f_r(r, beta)
        return BranchLayout(r, "three-branch", (
            Branch(0, (fb, inf), (beta, inf), True),
            Branch(-1, (fb, fa), (alpha, beta), False),
            Branch(-2, (-inf, fa), (-inf, alpha), True),
        ), CriticalPoints(alpha=alpha, beta=beta))
    gamma = classic.lambert_w(0, -r * math.e) - 1.0
    fg = f_r(r, gamma)
    return BranchLayout(r, "two-branch", (
        Branch(0, (fg, inf), (gamma, inf), True),
        Branch(-1, (fg, inf), (-inf, gamma), False),
    ), CriticalPoints(gamma=gamma))


@dataclass(frozen=True)
class EvalResult:
    value: float
    residual: float
    iterations: int
    branch: int


# -- local solver around a critical point ---------------------------------

def _local_coeffs(r: float, c: float) -> list[float]:
    """Taylor coefficients a_1..a_K of f_r(c + u) - f_r(c) in u."""
    ec = math.exp(c)
    out = [f_r_prime(r, c)]
    fact = 1.0
    for k in range(2, _LOCAL_TERMS + 1):
        fact *= k
        out.append(ec * (c + k) / fact)
    return out


def _poly(coeffs: list[float], u: float) -> float:
    acc = 0.0
    for a in reversed(coeffs):
        acc = acc * u + a
    return acc * u


def _dpoly(coeffs: list[float], u: float) -> float:
    acc = 0.0
    for k in range(len(coeffs), 0, -1):
        acc = acc * u + k * coeffs[k - 1]
    return acc


def _solve_near(r: float, c: float, x_c: float, x: float, side: int) -> tuple[float, int]:
    """Solve f_r(c + u) = x for u on one side of a flat point c.

    ``side`` is +1 or -1. Working in u keeps full relative precision in the
    offset, which a direct solve on f_r(y) - x loses near f_r' = 0.
    """
    delta = x - x_c
    if delta == 0.0:
        return c, 0
    coeffs = _local_coeffs(r, c)
    umax = 0.25
    lo, hi = (0.0, umax) if side > 0 else (-umax, 0.0)
    g = lambda u: _poly(coeffs, u) - delta
    dg = lambda u: _dpoly(coeffs, u)
    increasing = (g(hi) > g(lo))
    a2, a3 = coeffs[1], coeffs[2]
    if abs(a2) > 1e-3:
        q = delta / a2
        p = side * math.sqrt(abs(q))
        u0 = p - a3 / (2.0 * a2) * p * p
    else:
        p = math.copysign(abs(delta / a3) ** (1.0 / 3.0), delta / a3)
        u0 = p
    u, it = safeguarded_newton(g, dg, lo, hi, increasing, u0)
    return c + u, it


# -- main evaluator --------------------------------------------------------

@lru_cache(maxsize=256)
def _seed_coeffs(r: float) -> tuple[float, ...]:
    from .series import series_wr
    return tuple(float(c) for c in series_wr(r, 6).coeffs)


def _seed(r: float, b: Branch, x: float) -> float | None:
    lo, hi = b.range
    if r != -1.0 and lo < 0.0 < hi and x != 0.0:
        cs = _seed_coeffs(r)
        terms = [c * x ** (k + 1) for k, c in enumerate(cs)]
        if all(abs(terms[k + 1]) <= 0.2 * abs(terms[k]) for k in range(len(terms) - 1)):
            y = _poly(list(cs), x)
            if lo < y < hi:
                return y
    if hi == math.inf and x > 3.0:
        inner = 1.0 / math.log(x) - r / x
        if inner > 0.0:
            return math.log(x) + math.log(inner)
    if lo == -math.inf and abs(x / r) > 40.0 and (x / r) < 0.0:
        return x / r
    return None


def _clip_finite(b: Branch, anchor: float) -> float:
    lo, hi = b.range
    return min(max(anchor, lo), hi)


def _range_bracket(r: float, b: Branch, x: float, seed: float | None) -> tuple[float, float]:
    g = lambda y: f_r(r, y) - x
    lo, hi = b.range
    p = _clip_finite(b, seed if seed is not None else 0.0)
    if not math.isfinite(p):
        p = 0.0
    v = g(p)
    if v == 0.0:
        return p, p
    # root lies above p when g(p) has the "too small" sign
    above = (v < 0.0) == b.increasing
    if above:
        if hi < math.inf:
            return p, hi
        step = max(1.0, abs(p))
        for _ in range(_MAX_EXPAND):
            q = p + step
            if (g(q) > 0.0) == b.increasing or g(q) == 0.0:
                return p, q
            p, step = q, 2.0 * step
        raise ConvergenceError(f"could not bracket W_{r!r}({x!r})")
    if lo > -math.inf:
        return lo, p
    step = max(1.0, abs(p))
    for _ in range(_MAX_EXPAND):
        q = p - step
        if (g(q) < 0.0) == b.increasing or g(q) == 0.0:
            return q, p
        p, step = q, 2.0 * step
    raise ConvergenceError(f"could not bracket W_{r!r}({x!r})")


def _cut_info(layout: BranchLayout, b: Branch) -> list[tuple[float, float, int]]:
    """(cut abscissa, critical point, side of the branch) for each finite range end."""
    out = []
    lo, hi = b.range
    if math.isfinite(lo):
        out.append((f_r(layout.r, lo), lo, +1))
    if math.isfinite(hi):
        out.append((f_r(layout.r, hi), hi, -1))
    return out


def _result(r: float, branch: int, x: float, y: float, it: int) -> EvalResult:
    if not math.isfinite(y) and math.isfinite(x):
        raise DomainError(f"W_{r!r}({x!r}) on branch {branch} overflows the double range")
    return EvalResult(y, abs(f_r(r, y) - x), it, branch)


def w_r(r: float, branch: int, x: float) -> EvalResult:
    """Evaluate branch ``branch`` of W_r at ``x``.

    Raises :class:`BranchError` if the branch does not exist for ``r`` and
    :class:`DomainError` if ``x`` lies outside the branch's domain.
    """
    r, x = float(r), float(x)
    if math.isnan(x):
        raise DomainError("x is NaN")
    layout = classify(r)
    b = layout.branch(branch)

    if layout.case == "classical":
        y = classic.lambert_w(branch, x)
        return _result(r, branch, x, y, 0)

    dlo, dhi = b.domain
    slack = 8.0 * _EPS * max(1.0, abs(dlo if math.isfinite(dlo) else dhi))
    if not b.in_domain(x, slack):
        raise DomainError(
            f"x={x!r} outside domain [{dlo!r}, {dhi!r}] of branch {branch} of W_{r!r}")

    if x == 0.0 and b.in_range(0.0):
        return EvalResult(0.0, 0.0, 0, branch)

    # the degenerate case has its flat point inside the single branch
    if layout.kink is not None:
        delta = x - layout.kink
        if abs(delta) <= _NEAR_CUT * max(1.0, abs(layout.kink)):
            y, it = _solve_near(r, -2.0, layout.kink, x, 1 if delta > 0 else -1)
            return _result(r, branch, x, y, it)

    for x_c, c, side in _cut_info(layout, b):
        # f_r(c + u) - x_c ~ a2 u^2; a flat critical point makes u large even for tiny x - x_c
        a2 = 0.5 * abs(math.exp(c) * (c + 2.0))
        u_est = math.sqrt(abs(x - x_c) / a2) if a2 > 0.0 else math.inf
        if u_est > 0.1 * max(1.0, abs(c)):
            continue
        if abs(x - x_c) <= _NEAR_CUT * max(1.0, abs(x_c)):
            if abs(x - x_c) <= slack:
                return _result(r, branch, x, c, 0)
            y, it = _solve_near(r, c, x_c, x, side)
            if b.in_range(y):
                return _result(r, branch, x, y, it)

    seed = _seed(r, b, x)
    lo, hi = _range_bracket(r, b, x, seed)
    if lo == hi:
        return _result(r, branch, x, lo, 0)
    y, it = safeguarded_newton(lambda y: f_r(r, y) - x, lambda y: f_r_prime(r, y),
                               lo, hi, b.increasing, seed)
    return _result(r, branch, x, y, it)


def w_r_all(r: float, x: float) -> list[EvalResult]:
    """Values of every real branch of W_r defined at ``x``."""
    layout = classify(r)
    out = []
    for b in layout.branches:
        try:
            out.append(w_r(r, b.id, x))
        except DomainError:
            continue
    return out


def w_r_derivative(r: float, branch: int, x: float) -> float:
    """1 / (e^W (1 + W) + r) with W = W_r(x)."""
    y = w_r(r, branch, x).value
    den = f_r_prime(r, y)
    # compare against the size of the terms that cancel at a critical point
    scale = abs(math.exp(y) * (1.0 + y)) + abs(r) if y < 709.0 else math.inf
    if abs(den) <= 1e-13 * scale:
        raise SingularityError(f"W_{r!r} is not differentiable at x={x!r}")
    return 1.0 / den


def w_r_antiderivative(r: float, branch: int, x: float) -> float:
    """(r/2) W^2 + e^W (1 - W + W^2), the antiderivative with zero constant."""
    w = w_r(r, branch, x).value
    return 0.5 * r * w * w + math.exp(w) * (1.0 - w + w * w)


def w_r_asymptotic(r: float, x: float, direction: str) -> float:
    """Leading behaviour of W_r at +inf (``"+inf"``) or -inf (``"-inf"``)."""
    if direction in ("+inf", "+", "pos"):
        if x <= 1.0:
            raise DomainError("the +inf form needs x > 1")
        inner = 1.0 / math.log(x) - r / x
        if inner <= 0.0:
            raise DomainError(f"1/log(x) - r/x = {inner!r} is not positive")
        return math.log(x) + math.log(inner)
    if direction in ("-inf", "-", "neg"):
        if r == 0.0:
            raise DomainError("r = 0 has no branch reaching -inf")
        if r < 0.0:
            raise DomainError("for r < 0 no real branch extends to -inf")
        return x / r
    raise ValueError(f"direction must be '+inf' or '-inf', not {direction!r}")


def omega1_constant() -> float:
    """Root of y e^y + y = 1, i.e. W_1(1)."""
    return w_r(1.0, 0, 1.0).value


def log_identity_check(r: float, x: float) -> float:
    """W_r((x + r) log x) on the branch whose range contains log x.

    Should reproduce log x.
    """
    if x <= 0.0:
        raise DomainError("x must be positive")
    target = math.log(x)
    layout = classify(r)
    b = layout.branch_for_value(target)
    return w_r(r, b.id, (x + r) * target).value
