"""Phase functions with derivative access and structural partitions.

A phase is a real function on an interval (or planar domain) whose
derivatives up to a declared order can be evaluated directly.  Families are
parametric (monomial, polynomial, sine and exponential perturbations) and a
generic closure form is provided for anything else; closures self-report
their derivatives, there is no automatic differentiation.

The two structural operations every other module leans on are
``sign_partition`` (tile the domain into pieces on which one derivative does
not cross zero) and ``monotone_partition`` (pieces on which the function and
its derivatives up to order N-1 are all monotone).  Root detection is a
dense scan followed by bisection: the phases in play are smooth and low
complexity at desk scale, so robustness beats cleverness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, PartitionOverflowError, PreconditionError

SCAN_SAMPLES_PER_UNIT = 4096
MIN_SCAN_SAMPLES = 257
BISECT_XTOL = 1e-12


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise PreconditionError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, other: "Interval", slack: float = 1e-12) -> bool:
        return self.lo - slack <= other.lo and other.hi <= self.hi + slack

    def contains_point(self, x: float, slack: float = 1e-12) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def as_tuple(self) -> tuple[float, float]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class PhaseMeta:
    """Structural claims attached to a phase.

    ``N`` is the derivative order of the hypothesis, ``derivative_lower_bound``
    the alpha in |f^(N)| >= alpha when one is claimed.  ``claimed_delta``
    defaults to 1/N whenever a lower bound is declared.
    """

    N: int = 1
    derivative_lower_bound: float | None = None
    claimed_delta: float | None = None
    claimed_A: float | None = None
    single_sign_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.N < 1:
            raise PreconditionError("meta.N must be a positive integer")
        if self.derivative_lower_bound is not None and self.claimed_delta is None:
            object.__setattr__(self, "claimed_delta", 1.0 / self.N)
        if self.claimed_A is not None and self.claimed_A < 1.0:
            raise PreconditionError("claimed_A must be >= 1")


@dataclass(frozen=True)
class PhaseFunction:
    """Evaluator of f and its derivatives on an interval.

    ``eval_fn(order, x)`` must be a pure, numpy-vectorised function of its
    arguments (order 0 is f itself); instances are immutable and safe to
    share across concurrent evaluators.
    """

    eval_fn: Callable[[int, np.ndarray], np.ndarray]
    max_order: int
    domain: Interval
    meta: PhaseMeta = PhaseMeta()
    name: str = "phase"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def eval(self, order: int, x):
        if order < 0 or order > self.max_order:
            raise PreconditionError(
                f"order {order} outside [0, {self.max_order}] for phase {self.name!r}"
            )
        return self.eval_fn(order, np.asarray(x, dtype=float))

    def __call__(self, x):
        return self.eval(0, x)


# ---------------------------------------------------------------------------
# Structural partitions
# ---------------------------------------------------------------------------


def _bisect_root(f, lo: float, hi: float, flo: float, xtol: float = BISECT_XTOL) -> float:
    """Bisection for a sign change bracketed by [lo, hi]."""
    neg = flo < 0.0
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = float(f(mid))
        if (fm < 0.0) == neg and fm != 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sign_partition(
    phase: PhaseFunction,
    order: int,
    tol: float,
    cap: int = 64,
    interval: Interval | None = None,
) -> list[tuple[Interval, int]]:
    """Tile the domain into intervals on which ``eval(order, .)`` is single-signed.

    Single-signed is non-strict: touching zeros (no crossing beyond ``tol``)
    do not split a piece.  Returns (interval, sign) pairs ordered left to
    right with sign in {+1, -1, 0}; sign 0 means the derivative is below
    ``tol`` in magnitude on the whole piece.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    iv = interval or phase.domain
    key = ("sp", order, tol, cap, iv.as_tuple())
    if key in phase._cache:
        return phase._cache[key]
    a, b = iv.lo, iv.hi
    if b <= a:
        return [(iv, 0)]
    n = max(MIN_SCAN_SAMPLES, int(math.ceil(SCAN_SAMPLES_PER_UNIT * (b - a))) + 1)
    xs = np.linspace(a, b, n)
    vs = np.asarray(phase.eval(order, xs), dtype=float)
    sgn = np.zeros(n, dtype=np.int8)
    sgn[vs > tol] = 1
    sgn[vs < -tol] = -1

    nz = np.flatnonzero(sgn)
    breaks: list[float] = []
    if nz.size:
        f_scalar = lambda x: phase.eval(order, x)
        prev = nz[0]
        for idx in nz[1:]:
            if sgn[idx] != sgn[prev]:
                if len(breaks) >= cap:
                    raise PartitionOverflowError(
                        f"more than {cap} sign changes of order-{order} derivative "
                        f"of {phase.name!r}; structural claim violated",
                        phase=phase.name,
                        order=order,
                    )
                breaks.append(_bisect_root(f_scalar, xs[prev], xs[idx], vs[prev]))
            prev = idx

    pieces: list[tuple[Interval, int]] = []
    edges = [a] + breaks + [b]
    for lo, hi in zip(edges[:-1], edges[1:]):
        mask = (xs >= lo - 1e-15) & (xs <= hi + 1e-15)
        piece_sign = 0
        if mask.any():
            sub = vs[mask]
            j = int(np.argmax(np.abs(sub)))
            if abs(sub[j]) > tol:
                piece_sign = 1 if sub[j] > 0 else -1
        pieces.append((Interval(lo, hi), piece_sign))
    phase._cache[key] = pieces
    return pieces


def monotone_partition(
    phase: PhaseFunction,
    tol: float = 1e-11,
    order_cap: int | None = None,
    cap: int = 64,
    interval: Interval | None = None,
) -> list[Interval]:
    """Intervals on which f and its derivatives up to order N-1 are monotone.

    N comes from ``phase.meta.N`` (override via ``order_cap``); the pieces are
    the common refinement of the sign partitions of orders 1..N.
    """
    N = order_cap if order_cap is not None else phase.meta.N
    if phase.max_order < N:
        raise PreconditionError(
            f"phase {phase.name!r} reports derivatives up to {phase.max_order}, need {N}"
        )
    iv = interval or phase.domain
    breaks: list[float] = []
    for k in range(1, N + 1):
        for piece, _ in sign_partition(phase, k, tol, cap=cap, interval=iv)[:-1]:
            breaks.append(piece.hi)
    breaks = sorted(set(breaks))
    merged: list[float] = []
    for x in breaks:
        if not merged or x - merged[-1] > BISECT_XTOL:
            merged.append(x)
    edges = [iv.lo] + [x for x in merged if iv.lo < x < iv.hi] + [iv.hi]
    return [Interval(lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


# ---------------------------------------------------------------------------
# One-dimensional families
# ---------------------------------------------------------------------------


def _falling(n: int, k: int) -> float:
    """n (n-1) ... (n-k+1), the k-th derivative coefficient of x^n."""
    out = 1.0
    for j in range(k):
        out *= n - j
    return out


def monomial(n: int, domain=(0.0, 1.0), meta: PhaseMeta | None = None) -> PhaseFunction:
    if n < 1:
        raise PreconditionError("monomial degree must be >= 1")
    iv = Interval(*map(float, domain))
    if meta is None:
        meta = PhaseMeta(
            N=n,
            derivative_lower_bound=float(math.factorial(n)),
            single_sign_orders=(n,),
        )

    def ev(order, x):
        if order > n:
            return np.zeros_like(x)
        return _falling(n, order) * x ** (n - order)

    return PhaseFunction(ev, max_order=max(n, 2), domain=iv, meta=meta, name=f"x^{n}")


def polynomial_phase(coeffs: Sequence[float], domain=(0.0, 1.0), meta: PhaseMeta | None = None) -> PhaseFunction:
    c = np.asarray(coeffs, dtype=float)
    if c.size < 2 or c[-1] == 0.0:
        raise PreconditionError("polynomial phase needs degree >= 1 with nonzero leading coefficient")
    d = c.size - 1
    iv = Interval(*map(float, domain))
    if meta is None:
        meta = PhaseMeta(
            N=d,
            derivative_lower_bound=abs(c[-1]) * math.factorial(d),
            single_sign_orders=(d,),
        )
    derivs = [c]
    for _ in range(d):
        prev = derivs[-1]
        derivs.append(prev[1:] * np.arange(1, prev.size))

    def ev(order, x):
        if order > d:
            return np.zeros_like(x)
        return np.polynomial.polynomial.polyval(x, derivs[order])

    return PhaseFunction(ev, max_order=max(d, 2), domain=iv, meta=meta, name="poly")


def sine(amplitude: float = 1.0, frequency: float = 1.0, domain=(0.0, 2.0 * math.pi),
         meta: PhaseMeta | None = None) -> PhaseFunction:
    iv = Interval(*map(float, domain))
    amp, freq = float(amplitude), float(frequency)

    def ev(order, x):
        return amp * freq**order * np.sin(freq * x + order * math.pi / 2.0)

    return PhaseFunction(ev, max_order=32, domain=iv, meta=meta or PhaseMeta(N=1),
                         name=f"{amp}*sin({freq}x)")


def exponential(amplitude: float = 1.0, rate: float = 1.0, domain=(0.0, 1.0),
                meta: PhaseMeta | None = None) -> PhaseFunction:
    iv = Interval(*map(float, domain))
    amp, r = float(amplitude), float(rate)

    def ev(order, x):
        return amp * r**order * np.exp(r * x)

    return PhaseFunction(ev, max_order=32, domain=iv, meta=meta or PhaseMeta(N=1),
                         name=f"{amp}*exp({r}x)")


def monomial_sin(n: int, amplitude: float, frequency: float, domain=(0.0, 1.0),
                 meta: PhaseMeta | None = None) -> PhaseFunction:
    """x^n perturbed by amplitude*sin(frequency*x)."""
    base = monomial(n, domain)
    pert = sine(amplitude, frequency, domain)

    def ev(order, x):
        return base.eval_fn(order, x) + pert.eval_fn(order, x)

    return PhaseFunction(ev, max_order=base.max_order, domain=base.domain,
                         meta=meta or PhaseMeta(N=n), name=f"x^{n}+{amplitude}sin({frequency}x)")


def closure_phase(derivatives: Sequence[Callable], domain, meta: PhaseMeta | None = None,
                  name: str = "closure") -> PhaseFunction:
    """Generic form: ``derivatives[k]`` evaluates the k-th derivative."""
    fns = list(derivatives)
    iv = Interval(*map(float, domain))

    def ev(order, x):
        return np.asarray(fns[order](x), dtype=float)

    return PhaseFunction(ev, max_order=len(fns) - 1, domain=iv,
                         meta=meta or PhaseMeta(N=1), name=name)


# ---------------------------------------------------------------------------
# Compositions (outer function applied to a phase)
# ---------------------------------------------------------------------------


def compose_with_polynomial(phase: PhaseFunction, coeffs: Sequence[float],
                            name: str | None = None) -> PhaseFunction:
    """Phase x -> P(f(x)) with derivatives up to order 2 by the chain rule."""
    c = np.asarray(coeffs, dtype=float)
    dc = c[1:] * np.arange(1, c.size)
    ddc = dc[1:] * np.arange(1, dc.size) if dc.size > 1 else np.zeros(1)
    pv = np.polynomial.polynomial.polyval

    def ev(order, x):
        f = phase.eval_fn(0, x)
        if order == 0:
            return pv(f, c)
        f1 = phase.eval_fn(1, x)
        if order == 1:
            return pv(f, dc) * f1
        f2 = phase.eval_fn(2, x)
        return pv(f, ddc) * f1 * f1 + pv(f, dc) * f2

    return PhaseFunction(ev, max_order=min(2, phase.max_order), domain=phase.domain,
                         meta=PhaseMeta(N=1), name=name or f"P({phase.name})")


def compose_with_power(phase: PhaseFunction, exponent: float,
                       name: str | None = None) -> PhaseFunction:
    """Phase x -> |f(x)|^s for s > 1, with derivatives where f != 0."""
    s = float(exponent)
    if s <= 1.0:
        raise PreconditionError("power transform needs exponent > 1")

    def ev(order, x):
        f = phase.eval_fn(0, x)
        af = np.abs(f)
        if order == 0:
            return af**s
        sg = np.sign(f)
        f1 = phase.eval_fn(1, x)
        if order == 1:
            return s * af ** (s - 1.0) * sg * f1
        f2 = phase.eval_fn(2, x)
        return s * (s - 1.0) * af ** (s - 2.0) * f1 * f1 + s * af ** (s - 1.0) * sg * f2

    return PhaseFunction(ev, max_order=min(2, phase.max_order), domain=phase.domain,
                         meta=PhaseMeta(N=1), name=name or f"|{phase.name}|^{s}")


# ---------------------------------------------------------------------------
# Planar domains and two-dimensional phases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarDomain:
    """Union of axis-aligned rectangles (ax, bx, ay, by).

    Every axis-parallel line must meet the union in at most ``slice_bound``
    intervals; for disjoint rectangles that count is checked exactly at
    construction by sweeping the edge events.
    """

    rects: tuple[tuple[float, float, float, float], ...]
    slice_bound: int = 1

    def __post_init__(self):
        rects = tuple(tuple(map(float, r)) for r in self.rects)
        object.__setattr__(self, "rects", rects)
        if not rects:
            raise PreconditionError("planar domain needs at least one rectangle")
        for ax, bx, ay, by in rects:
            if bx <= ax or by <= ay:
                raise PreconditionError("degenerate rectangle in planar domain")
        for horizontal in (True, False):
            events = []
            for ax, bx, ay, by in rects:
                lo, hi = (ay, by) if horizontal else (ax, bx)
                events.append((lo, 1))
                events.append((hi, -1))
            events.sort()
            depth = best = 0
            for _, d in events:
                depth += d
                best = max(best, depth)
            if best > self.slice_bound:
                raise PreconditionError(
                    f"a line meets the domain in up to {best} intervals > slice_bound={self.slice_bound}"
                )

    @property
    def bounding_box(self) -> tuple[float, float, float, float]:
        ax = min(r[0] for r in self.rects)
        bx = max(r[1] for r in self.rects)
        ay = min(r[2] for r in self.rects)
        by = max(r[3] for r in self.rects)
        return ax, bx, ay, by

    @property
    def area(self) -> float:
        return sum((bx - ax) * (by - ay) for ax, bx, ay, by in self.rects)

    @property
    def diameter(self) -> float:
        ax, bx, ay, by = self.bounding_box
        return math.hypot(bx - ax, by - ay)

    def x_slices(self, y: float) -> list[Interval]:
        """Intervals of {x : (x, y) in domain}, merged and ordered."""
        spans = sorted((ax, bx) for ax, bx, ay, by in self.rects if ay <= y <= by)
        merged: list[list[float]] = []
        for lo, hi in spans:
            if merged and lo <= merged[-1][1] + 1e-15:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return [Interval(lo, hi) for lo, hi in merged]

    def y_extent(self) -> Interval:
        _, _, ay, by = self.bounding_box
        return Interval(ay, by)


def unit_square() -> PlanarDomain:
    return PlanarDomain(((0.0, 1.0, 0.0, 1.0),), slice_bound=1)


@dataclass(frozen=True)
class Phase2D:
    """Two-dimensional phase with mixed-derivative access.

    ``eval_fn((i, j), x, y)`` returns the (i, j) mixed partial; ``beta`` is
    the multiindex whose derivative is declared bounded below (by
    ``derivative_lower_bound``) on the domain, and ``n_orders`` holds the
    per-axis convexity orders whose derivatives are claimed single-signed.
    """

    eval_fn: Callable[[tuple[int, int], np.ndarray, np.ndarray], np.ndarray]
    max_orders: tuple[int, int]
    domain: PlanarDomain
    beta: tuple[int, int] = (1, 1)
    n_orders: tuple[int | None, int | None] = (None, 2)
    derivative_lower_bound: float = 1.0
    name: str = "phase2d"

    def __post_init__(self):
        b1, b2 = self.beta
        if b1 < 0 or b2 < 0 or b1 + b2 < 1:
            raise PreconditionError("beta components must be nonnegative with |beta| >= 1")

    def eval(self, orders: tuple[int, int], x, y):
        i, j = orders
        if i < 0 or j < 0 or i > self.max_orders[0] or j > self.max_orders[1]:
            raise PreconditionError(f"orders {orders} outside declared maxima {self.max_orders}")
        return self.eval_fn((i, j), np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def slice_in_x(self, y: float, max_order: int = 2) -> PhaseFunction:
        """One-dimensional phase x -> f(x, y0) on the matching slice."""
        y0 = float(y)
        slices = self.domain.x_slices(y0)
        if not slices:
            raise DomainError(f"y={y0} outside domain")
        iv = Interval(min(s.lo for s in slices), max(s.hi for s in slices))

        def ev(order, x):
            return self.eval_fn((order, 0), x, np.full_like(x, y0))

        return PhaseFunction(ev, max_order=min(max_order, self.max_orders[0]), domain=iv,
                             meta=PhaseMeta(N=1), name=f"{self.name}|y={y0:.6g}")

    def slice_in_y(self, x: float, base_dx_order: int = 0, max_order: int = 4) -> PhaseFunction:
        """One-dimensional phase y -> d_x^k f(x0, y) for fixed x0."""
        x0 = float(x)
        iv = self.domain.y_extent()
        k = base_dx_order

        def ev(order, y):
            return self.eval_fn((k, order), np.full_like(y, x0), y)

        return PhaseFunction(ev, max_order=min(max_order, self.max_orders[1]), domain=iv,
                             meta=PhaseMeta(N=1), name=f"{self.name}|x={x0:.6g}")


def product_phase(fx: PhaseFunction, gy: PhaseFunction, beta=(1, 1),
                  n_orders=(None, 2), lower_bound: float = 1.0,
                  domain: PlanarDomain | None = None) -> Phase2D:
    """f(x) * g(y) with mixed partials from the self-reported 1D derivatives."""
    dom = domain or PlanarDomain(
        ((fx.domain.lo, fx.domain.hi, gy.domain.lo, gy.domain.hi),), slice_bound=1
    )

    def ev(orders, x, y):
        i, j = orders
        return fx.eval_fn(i, x) * gy.eval_fn(j, y)

    return Phase2D(ev, max_orders=(fx.max_order, gy.max_order), domain=dom, beta=beta,
                   n_orders=n_orders, derivative_lower_bound=lower_bound,
                   name=f"{fx.name}*{gy.name}")


def xy_phase(domain: PlanarDomain | None = None) -> Phase2D:
    dom = domain or unit_square()

    def ev(orders, x, y):
        i, j = orders
        if i > 1 or j > 1:
            return np.zeros(np.broadcast_shapes(x.shape, y.shape))
        if i == 1 and j == 1:
            return np.ones(np.broadcast_shapes(x.shape, y.shape))
        if i == 1:
            return np.broadcast_to(y, np.broadcast_shapes(x.shape, y.shape)).copy()
        if j == 1:
            return np.broadcast_to(x, np.broadcast_shapes(x.shape, y.shape)).copy()
        return x * y

    return Phase2D(ev, max_orders=(4, 4), domain=dom, beta=(1, 1), n_orders=(None, 2),
                   derivative_lower_bound=1.0, name="xy")


def xy_quad_phase(c: float, domain: PlanarDomain | None = None) -> Phase2D:
    """x*y + c*x^2*y^2 on [0,1]^2; the mixed (1,1) derivative is 1 + 4c*x*y."""
    dom = domain or unit_square()
    cc = float(c)

    def term(orders, x, y):
        i, j = orders
        a = _falling(1, i) * x ** max(1 - i, 0) if i <= 1 else 0.0
        b = _falling(1, j) * y ** max(1 - j, 0) if j <= 1 else 0.0
        first = a * b if (i <= 1 and j <= 1) else 0.0
        p = _falling(2, i) * x ** max(2 - i, 0) if i <= 2 else 0.0
        q = _falling(2, j) * y ** max(2 - j, 0) if j <= 2 else 0.0
        second = cc * p * q if (i <= 2 and j <= 2) else 0.0
        return first + second

    def ev(orders, x, y):
        val = term(orders, x, y)
        if np.isscalar(val) or getattr(val, "shape", None) == ():
            return np.full(np.broadcast_shapes(x.shape, y.shape), float(val))
        return np.broadcast_to(val, np.broadcast_shapes(x.shape, y.shape)).copy()

    lb = 1.0 if cc >= 0 else max(1e-9, 1.0 + 4.0 * cc)
    return Phase2D(ev, max_orders=(4, 4), domain=dom, beta=(1, 1), n_orders=(None, 2),
                   derivative_lower_bound=lb, name=f"xy+{cc}x2y2")


def compose2d_with_polynomial(phase: Phase2D, coeffs: Sequence[float],
                              name: str | None = None) -> Phase2D:
    """Planar phase (x, y) -> P(f(x, y)), values only (enough to integrate)."""
    c = np.asarray(coeffs, dtype=float)
    pv = np.polynomial.polynomial.polyval

    def ev(orders, x, y):
        if orders != (0, 0):
            raise PreconditionError("composed planar phase exposes values only")
        return pv(phase.eval_fn((0, 0), x, y), c)

    return Phase2D(ev, max_orders=(0, 0), domain=phase.domain, beta=phase.beta,
                   n_orders=phase.n_orders,
                   derivative_lower_bound=phase.derivative_lower_bound,
                   name=name or f"P({phase.name})")


# ---------------------------------------------------------------------------
# Config-file naming of families
# ---------------------------------------------------------------------------

_FAMILIES_1D = {
    "monomial": lambda p: monomial(int(p["n"]), p.get("domain", (0.0, 1.0))),
    "polynomial": lambda p: polynomial_phase(p["coeffs"], p.get("domain", (0.0, 1.0))),
    "sin": lambda p: sine(p.get("amplitude", 1.0), p.get("frequency", 1.0),
                          p.get("domain", (0.0, 2.0 * math.pi))),
    "exp": lambda p: exponential(p.get("amplitude", 1.0), p.get("rate", 1.0),
                                 p.get("domain", (0.0, 1.0))),
    "monomial_sin": lambda p: monomial_sin(int(p["n"]), p["amplitude"], p["frequency"],
                                           p.get("domain", (0.0, 1.0))),
}

_FAMILIES_2D = {
    "xy": lambda p: xy_phase(),
    "xy_quad": lambda p: xy_quad_phase(p.get("c", 0.1)),
    "product_monomial": lambda p: product_phase(monomial(int(p["nx"])), monomial(int(p["ny"])),
                                                beta=tuple(p.get("beta", (1, 1)))),
}


def phase_from_config(spec: dict) -> PhaseFunction:
    """Build a 1D phase from an identifier + parameter mapping."""
    fam = spec.get("family")
    if fam not in _FAMILIES_1D:
        raise PreconditionError(f"unknown 1D phase family {fam!r}", known=sorted(_FAMILIES_1D))
    return _FAMILIES_1D[fam](spec)


def phase2d_from_config(spec: dict) -> Phase2D:
    fam = spec.get("family")
    if fam not in _FAMILIES_2D:
        raise PreconditionError(f"unknown 2D phase family {fam!r}", known=sorted(_FAMILIES_2D))
    return _FAMILIES_2D[fam](spec)
