"""High-accuracy evaluation of oscillatory integrals int e^{i*lambda*g(x)} dx.

Strategy: seed panels from the monotone pieces of the phase, then bisect
panels until the per-panel phase swing |lambda| * |g(b_p) - g(a_p)| falls
below the configured cap (on a monotone piece the endpoint difference IS
the swing, so no derivative bounds are needed).  Each panel is integrated
with a 15-point Gauss-Legendre rule on the real and imaginary parts, with
the 7-point rule on the same panel supplying the error estimate.  With the
default cap of pi/2 the 15-point rule is exact to machine precision, so the
estimate is dominated by float roundoff and scales with total length.

Evaluation is vectorised and chunked; summation order is a fixed
left-to-right reduction over the sorted panels, so results are bit-stable
across runs and across any parallel panel evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError, PanelBudgetError, PreconditionError
from .phases import Interval, Phase2D, PhaseFunction, PlanarDomain, monotone_partition

_N15, _W15 = leggauss(15)
_N7, _W7 = leggauss(7)
_CHUNK = 1 << 16
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    max_panels: int = 1 << 20
    phase_variation_cap: float = math.pi / 2.0

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise PreconditionError("rel_tol must lie in (0, 1)")
        if self.max_panels < 1:
            raise PreconditionError("max_panels must be positive")
        if not (0.0 < self.phase_variation_cap <= math.pi):
            raise PreconditionError("phase_variation_cap must lie in (0, pi]")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    panels_used: int
    lam: float

    @property
    def magnitude(self) -> float:
        return abs(self.value)


DEFAULT_CONFIG = QuadConfig()


# ---------------------------------------------------------------------------
# Panel construction on monotone pieces
# ---------------------------------------------------------------------------


def _build_panels(gval, pieces, lam_abs: float, cap: float, max_panels: int):
    """Bisect monotone pieces until every panel's endpoint swing is under cap.

    ``gval`` maps a float array to phase values.  Returns sorted (left, right)
    arrays.  Raises PANEL_BUDGET before allocating past ``max_panels``.
    """
    lo = np.array([p.lo for p in pieces])
    hi = np.array([p.hi for p in pieces])
    keep = hi > lo
    L, R = lo[keep], hi[keep]
    GL, GR = gval(L), gval(R)
    done: list[tuple[np.ndarray, np.ndarray]] = []
    n_done = 0
    while L.size:
        bad = lam_abs * np.abs(GR - GL) > cap
        n_bad = int(bad.sum())
        if n_done + (L.size - n_bad) + 2 * n_bad > max_panels:
            raise PanelBudgetError(
                f"panel budget {max_panels} exceeded (lambda too large for config)",
                lam_abs=lam_abs,
            )
        if not n_bad:
            done.append((L, R))
            n_done += L.size
            break
        good = ~bad
        if good.any():
            done.append((L[good], R[good]))
            n_done += int(good.sum())
        Lb, Rb, GLb, GRb = L[bad], R[bad], GL[bad], GR[bad]
        M = 0.5 * (Lb + Rb)
        GM = gval(M)
        L = np.concatenate([Lb, M])
        R = np.concatenate([M, Rb])
        GL = np.concatenate([GLb, GM])
        GR = np.concatenate([GM, GRb])
    if not done:
        return np.empty(0), np.empty(0)
    left = np.concatenate([d[0] for d in done])
    right = np.concatenate([d[1] for d in done])
    order = np.argsort(left, kind="stable")
    return left[order], right[order]


def _panel_rule(gval, lam: float, L: np.ndarray, R: np.ndarray):
    """Per-panel 15-point values and |15-point - 7-point| error, chunked."""
    n = L.size
    re = np.empty(n)
    im = np.empty(n)
    err = np.empty(n)
    for s in range(0, n, _CHUNK):
        e = min(n, s + _CHUNK)
        mid = 0.5 * (L[s:e] + R[s:e])
        half = 0.5 * (R[s:e] - L[s:e])
        th15 = lam * gval(mid[:, None] + half[:, None] * _N15[None, :])
        re15 = (np.cos(th15) @ _W15) * half
        im15 = (np.sin(th15) @ _W15) * half
        th7 = lam * gval(mid[:, None] + half[:, None] * _N7[None, :])
        re7 = (np.cos(th7) @ _W7) * half
        im7 = (np.sin(th7) @ _W7) * half
        re[s:e] = re15
        im[s:e] = im15
        err[s:e] = np.hypot(re15 - re7, im15 - im7)
    return re, im, err


def osc_integrate_1d(g: PhaseFunction, lam: float, interval: Interval | None = None,
                     cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Integral of e^{i*lam*g(x)} over the interval (default: g's domain)."""
    iv = interval or g.domain
    if not g.domain.contains(iv):
        raise DomainError(f"interval {iv.as_tuple()} not inside domain {g.domain.as_tuple()}")
    length = iv.length
    if lam == 0.0:
        return QuadResult(complex(length, 0.0), 0.0, 0, 0.0)

    gval = lambda x: np.asarray(g.eval_fn(0, x), dtype=float)
    pieces = monotone_partition(g, order_cap=1, interval=iv)
    L, R = _build_panels(gval, pieces, abs(lam), cfg.phase_variation_cap, cfg.max_panels)
    re, im, errp = _panel_rule(gval, lam, L, R)

    # refine any panel whose error exceeds its share of the tolerance budget
    for _ in range(3):
        bad = errp > cfg.rel_tol * np.maximum(R - L, 1e-300)
        if not bad.any():
            break
        if L.size + int(bad.sum()) > cfg.max_panels:
            break
        Lb, Rb = L[bad], R[bad]
        M = 0.5 * (Lb + Rb)
        L = np.concatenate([L[~bad], Lb, M])
        R = np.concatenate([R[~bad], M, Rb])
        order = np.argsort(L, kind="stable")
        L, R = L[order], R[order]
        re, im, errp = _panel_rule(gval, lam, L, R)

    value = complex(float(np.sum(re)), float(np.sum(im)))
    err = float(np.sum(errp)) + 8.0 * _EPS * length
    return QuadResult(value, err, int(L.size), float(lam))


# ---------------------------------------------------------------------------
# Two dimensions: iterated tensor-panel integration
# ---------------------------------------------------------------------------


def _refine_1d_swings(swing_fn, a: float, b: float, cap: float, max_panels: int):
    """Halve [a, b] until swing_fn(lo, hi) <= cap on every panel."""
    L = np.array([a])
    R = np.array([b])
    done: list[tuple[np.ndarray, np.ndarray]] = []
    n_done = 0
    while L.size:
        sw = swing_fn(L, R)
        bad = sw > cap
        n_bad = int(bad.sum())
        if n_done + (L.size - n_bad) + 2 * n_bad > max_panels:
            raise PanelBudgetError(f"panel budget {max_panels} exceeded in 2D refinement")
        if not n_bad:
            done.append((L, R))
            n_done += L.size
            break
        good = ~bad
        if good.any():
            done.append((L[good], R[good]))
            n_done += int(good.sum())
        M = 0.5 * (L[bad] + R[bad])
        L = np.concatenate([L[bad], M])
        R = np.concatenate([M, R[bad]])
    left = np.concatenate([d[0] for d in done])
    right = np.concatenate([d[1] for d in done])
    order = np.argsort(left, kind="stable")
    return left[order], right[order]


def osc_integrate_2d(g: Phase2D, lam: float, domain: PlanarDomain | None = None,
                     cfg: QuadConfig = DEFAULT_CONFIG) -> QuadResult:
    """Iterated integration over a union of disjoint rectangles.

    The outer variable is the second coordinate; for each outer panel the
    inner slices at all outer nodes share one x-panel grid sized by the worst
    phase swing over the panel, so the whole block is evaluated as a tensor.
    The combined error estimate is the outer-rule estimate plus the supremum
    of the inner estimates times the outer length, per the module contract.
    """
    dom = domain or g.domain
    for r in dom.rects:
        if r not in g.domain.rects:
            ga, gb, gc, gd = g.domain.bounding_box
            if not (ga <= r[0] and r[1] <= gb and gc <= r[2] and r[3] <= gd):
                raise DomainError("integration domain not inside phase domain")
    if lam == 0.0:
        return QuadResult(complex(dom.area, 0.0), 0.0, 0, 0.0)

    cap = cfg.phase_variation_cap
    lam_abs = abs(lam)
    f = g.eval_fn
    total = 0.0 + 0.0j
    outer_err = 0.0
    inner_sup = 0.0
    cells = 0
    y_span = 0.0

    for ax, bx, ay, by in dom.rects:
        y_span += by - ay
        x_probe = np.linspace(ax, bx, 9)

        def y_swing(lo, hi):
            va = f((0, 0), x_probe[None, :], lo[:, None])
            vb = f((0, 0), x_probe[None, :], hi[:, None])
            return lam_abs * np.max(np.abs(vb - va), axis=1)

        YL, YR = _refine_1d_swings(y_swing, ay, by, cap, cfg.max_panels)

        for y0, y1 in zip(YL, YR):
            ymid, yhalf = 0.5 * (y0 + y1), 0.5 * (y1 - y0)
            y_nodes = np.concatenate([ymid + yhalf * _N15, ymid + yhalf * _N7])
            y_probe = np.array([y0, ymid, y1])

            def x_swing(lo, hi):
                va = f((0, 0), lo[:, None], y_probe[None, :])
                vb = f((0, 0), hi[:, None], y_probe[None, :])
                return lam_abs * np.max(np.abs(vb - va), axis=1)

            XL, XR = _refine_1d_swings(x_swing, ax, bx, cap, cfg.max_panels)
            m = XL.size
            cells += m
            if cells > cfg.max_panels:
                raise PanelBudgetError(
                    f"2D cell budget {cfg.max_panels} exceeded (lambda too large for config)",
                    lam_abs=lam_abs,
                )
            xmid, xhalf = 0.5 * (XL + XR), 0.5 * (XR - XL)

            def inner_rule(nodes, weights):
                xs = (xmid[:, None] + xhalf[:, None] * nodes[None, :]).ravel()
                th = lam * f((0, 0), xs[:, None], y_nodes[None, :])
                c = np.cos(th).reshape(m, nodes.size, 22)
                s = np.sin(th).reshape(m, nodes.size, 22)
                re = np.einsum("i,pij->pj", weights, c) * xhalf[:, None]
                im = np.einsum("i,pij->pj", weights, s) * xhalf[:, None]
                return re, im

            re15, im15 = inner_rule(_N15, _W15)
            re7, im7 = inner_rule(_N7, _W7)
            inner_re = re15.sum(axis=0)
            inner_im = im15.sum(axis=0)
            inner_err = np.hypot(re15 - re7, im15 - im7).sum(axis=0)
            inner_sup = max(inner_sup, float(inner_err.max()))

            o15 = yhalf * complex(float(inner_re[:15] @ _W15), float(inner_im[:15] @ _W15))
            o7 = yhalf * complex(float(inner_re[15:] @ _W7), float(inner_im[15:] @ _W7))
            total += o15
            outer_err += abs(o15 - o7)

    err = outer_err + inner_sup * y_span + 8.0 * _EPS * dom.area
    return QuadResult(complex(total), float(err), int(cells), float(lam))


# ---------------------------------------------------------------------------
# General adaptive quadrature for smooth (possibly kinked) integrands
# ---------------------------------------------------------------------------


def adaptive_quad(fvec, a: float, b: float, rel_tol: float = 1e-9,
                  abs_floor: float = 1e-14, max_segments: int = 1 << 16):
    """Adaptive 15/7 Gauss rule for a vectorised scalar integrand.

    Not for large-lambda oscillatory phases (use the panel engine); this is
    the workhorse for slice measures, Fourier profiles, and other smooth or
    piecewise-smooth integrands.  Returns (value, error_estimate).
    """
    if b <= a:
        return 0.0, 0.0
    probe = np.asarray(fvec(np.array([0.5 * (a + b)])))
    is_complex = np.iscomplexobj(probe)

    def rule(L, R):
        mid = 0.5 * (L + R)
        half = 0.5 * (R - L)
        v15 = np.asarray(fvec((mid[:, None] + half[:, None] * _N15[None, :]).ravel()))
        v15 = v15.reshape(L.size, 15) @ _W15 * half
        v7 = np.asarray(fvec((mid[:, None] + half[:, None] * _N7[None, :]).ravel()))
        v7 = v7.reshape(L.size, 7) @ _W7 * half
        return v15, np.abs(v15 - v7)

    L = np.array([a])
    R = np.array([b])
    acc = 0.0 + 0.0j if is_complex else 0.0
    acc_err = 0.0
    for _ in range(64):
        v15, err = rule(L, R)
        scale = max(abs_floor, rel_tol * (abs(acc + v15.sum())))
        tol_per = scale * (R - L) / (b - a)
        good = err <= tol_per
        if good.any():
            acc += v15[good].sum()
            acc_err += float(err[good].sum())
        if good.all():
            return (complex(acc) if is_complex else float(acc)), acc_err
        L, R = L[~good], R[~good]
        if 2 * L.size > max_segments:
            acc += v15[~good].sum()
            acc_err += float(err[~good].sum())
            return (complex(acc) if is_complex else float(acc)), acc_err
        M = 0.5 * (L + R)
        L = np.concatenate([L, M])
        R = np.concatenate([M, R])
    acc += v15[~good].sum()
    acc_err += float(err[~good].sum())
    return (complex(acc) if is_complex else float(acc)), acc_err
