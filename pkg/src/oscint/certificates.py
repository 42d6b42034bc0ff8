"""Bound certificates for oscillatory integrals with polynomially composed phases.

``certify_1d`` executes the constructive argument behind the composition
estimates as an explicit decomposition: the domain is partitioned into
monotonicity pieces, a root-proximity cover of the composed derivative is
removed and charged by its measure, the low-slope set {|f'| < r} is charged
by its length (the derivative-pushforward bound is recorded alongside), and
every remaining interval is charged with the integration-by-parts bound
6 / (r |lambda| eps^(d-1)) using the piece's own endpoint lower bounds.
Summing the per-piece charges yields a machine-checkable total dominating
|int e^{i lambda P(f)}|.

No uniform constant is ever hardcoded; where the underlying theorems merely
assert existence of constants, certificates expose the computed bounds and a
lambda sweep of totals recovers the predicted exponent.

``certify_2d`` runs the two-variable version at n = 2: the domain splits at
|d^{beta_2}_y f| = gamma, slices of the large-derivative region are certified
with the one-dimensional engine (with P(x) = x as the base case), and the
complementary region is charged by its measure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    NotNormalizedError,
    PreconditionError,
    SliceOverflowError,
)
from .phases import Interval, Phase2D, PhaseFunction, monotone_partition
from .polynomials import (
    Polynomial,
    SndConstant,
    classify,
    derivative,
    estimate_B,
    monic_sublevel_cover,
    roots,
    snd_sublevel_cover,
)
from .quadrature import QuadResult, adaptive_quad
from .sublevel import _bisect_to_value, osc_to_sublevel_constant, sublevel_1d

KIND_REMOVED = "removed_sublevel"
KIND_SMALL = "small_derivative"
KIND_IBP = "integration_by_parts"
KIND_MIXED = "slice_small_mixed"

_snd_constant_cache: dict[int, SndConstant] = {}


def default_snd_constant(degree: int) -> SndConstant:
    """Cached empirical cover constant for SND polynomials of the given degree."""
    if degree not in _snd_constant_cache:
        _snd_constant_cache[degree] = estimate_B(degree, trials=200, seed=20260809)
    return _snd_constant_cache[degree]


# ---------------------------------------------------------------------------
# Formula operations
# ---------------------------------------------------------------------------


def derivpush_bound(B: float, delta: float, r: float) -> float:
    """Length bound for an interval where |f'| <= r, given the sublevel
    estimate measure <= B * alpha^delta: (B / 2^delta)^(1/(1-delta)) * r^(delta/(1-delta))."""
    if not (0.0 < delta < 1.0) or B <= 0.0 or r <= 0.0:
        raise PreconditionError("derivpush_bound needs B > 0, r > 0, delta in (0,1)")
    return (B / 2.0**delta) ** (1.0 / (1.0 - delta)) * r ** (delta / (1.0 - delta))


def ibp_bound(r: float, eps: float, d: float, lam: float) -> float:
    """Integration-by-parts bound 6 / (r |lambda| eps^(d-1)) on an interval
    where |f'| >= r and the composed derivative magnitude is >= eps^(d-1),
    both monotone."""
    if lam == 0.0:
        raise PreconditionError("ibp_bound needs lambda != 0")
    if r <= 0.0 or eps <= 0.0:
        raise PreconditionError("ibp_bound needs positive r and eps")
    return 6.0 / (r * abs(lam) * eps ** (d - 1.0))


# ---------------------------------------------------------------------------
# Certificate data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateParams:
    epsilon: float
    r: float
    lam: float
    delta: float
    d: float
    gamma: float | None = None
    mode: str = "general"


@dataclass(frozen=True)
class CertPiece:
    kind: str
    support: tuple
    bound: float
    formula: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "support": list(self.support),
            "bound": self.bound,
            "formula": self.formula,
            "details": self.details,
        }


@dataclass
class Certificate:
    pieces: list[CertPiece]
    params: CertificateParams
    total_bound: float
    notes: dict = field(default_factory=dict)
    verified_against: QuadResult | None = None

    def verify_against(self, quad: QuadResult) -> bool:
        """Record a quadrature result; true when the certificate dominates it."""
        self.verified_against = quad
        return abs(quad.value) <= self.total_bound + quad.error_estimate

    def to_dict(self) -> dict:
        out = {
            "params": {
                "epsilon": self.params.epsilon,
                "r": self.params.r,
                "lambda": self.params.lam,
                "delta": self.params.delta,
                "d": self.params.d,
                "gamma": self.params.gamma,
                "mode": self.params.mode,
            },
            "total_bound": self.total_bound,
            "pieces": [p.to_dict() for p in self.pieces],
            "notes": self.notes,
        }
        if self.verified_against is not None:
            out["verified_against"] = {
                "value_re": self.verified_against.value.real,
                "value_im": self.verified_against.value.imag,
                "error_estimate": self.verified_against.error_estimate,
                "lambda": self.verified_against.lam,
            }
        return out


def _finish(pieces: list[CertPiece], params: CertificateParams, notes: dict) -> Certificate:
    pieces = sorted(pieces, key=lambda p: p.support[:1])
    total = float(sum(p.bound for p in pieces))
    return Certificate(pieces, params, total, notes)


# ---------------------------------------------------------------------------
# Outer-function models (polynomial and power transform)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerTransform:
    """Outer transform t -> |t|^s for s > 1.

    Its derivative s |t|^(s-1) sgn(t) is monotone with a single zero, and
    {|T'| <= eps^(s-1)} is exactly {|t| <= eps / s^(1/(s-1))}, so the
    certificate machinery runs with d replaced by s.
    """

    exponent: float

    def __post_init__(self):
        if self.exponent <= 1.0:
            raise PreconditionError("power transform needs exponent > 1")


class _PolyOuter:
    def __init__(self, P: Polynomial, lam_abs: float, snd_constant: SndConstant | None):
        self.P = P
        self.d = float(P.degree)
        if P.degree < 2:
            raise PreconditionError("composition theorem requires degree >= 2")
        self.Pp = derivative(P)
        rep = classify(self.Pp)
        if not (rep.is_monic or rep.is_snd):
            raise NotNormalizedError(
                f"P' is {rep.label}; rescale by {rep.rescale:.6g} to restore max coefficient 1",
                report=rep,
            )
        self.is_monic = rep.is_monic
        if not rep.is_monic and lam_abs < 1.0:
            raise PreconditionError("SND normalisation requires |lambda| >= 1")
        self.B = 1.0 if rep.is_monic else (snd_constant or default_snd_constant(self.Pp.degree)).B
        self.n_centers = self.Pp.degree
        self.label = "monic" if rep.is_monic else "SND"

    def cover(self, eps: float) -> list[Interval]:
        if self.is_monic:
            return monic_sublevel_cover(self.Pp, eps)
        B = SndConstant(self.Pp.degree, self.B, "user-supplied")
        return snd_sublevel_cover(self.Pp, min(eps, 1.0), B)

    def cover_radius(self, eps: float) -> float:
        return self.B * eps

    def threshold(self, eps: float) -> float:
        return eps ** (self.d - 1.0)

    def dprime_abs(self, t: float) -> float:
        return abs(float(self.Pp(t)))

    def prime_breaks(self) -> list[float]:
        if self.Pp.degree < 2:
            return []
        rs = roots(derivative(self.Pp))
        return [z.real for z in rs.roots if abs(z.imag) <= 1e-9 * (1.0 + abs(z.real))]


class _PowerOuter:
    def __init__(self, T: PowerTransform):
        self.s = T.exponent
        self.d = self.s
        self.label = "power"
        self.n_centers = 1

    def cover(self, eps: float) -> list[Interval]:
        c = self.cover_radius(eps)
        return [Interval(-c, c)]

    def cover_radius(self, eps: float) -> float:
        return eps * self.s ** (-1.0 / (self.s - 1.0))

    def threshold(self, eps: float) -> float:
        return eps ** (self.s - 1.0)

    def dprime_abs(self, t: float) -> float:
        return self.s * abs(t) ** (self.s - 1.0)

    def prime_breaks(self) -> list[float]:
        return []


# ---------------------------------------------------------------------------
# Interval bookkeeping
# ---------------------------------------------------------------------------


def _merge(intervals: Sequence[Interval]) -> list[Interval]:
    out: list[list[float]] = []
    for iv in sorted(intervals, key=lambda v: v.lo):
        if out and iv.lo <= out[-1][1] + 1e-13:
            out[-1][1] = max(out[-1][1], iv.hi)
        else:
            out.append([iv.lo, iv.hi])
    return [Interval(a, b) for a, b in out]


def _subtract(piece: Interval, removed: Sequence[Interval]) -> list[Interval]:
    kept: list[Interval] = []
    cursor = piece.lo
    for r in removed:
        if r.hi <= piece.lo or r.lo >= piece.hi:
            continue
        if r.lo > cursor:
            kept.append(Interval(cursor, min(r.lo, piece.hi)))
        cursor = max(cursor, r.hi)
        if cursor >= piece.hi:
            break
    if cursor < piece.hi:
        kept.append(Interval(cursor, piece.hi))
    return [iv for iv in kept if iv.length > 1e-13]


def _band_subinterval(fn, a: float, b: float, fa: float, fb: float,
                      lo_t: float, hi_t: float) -> Interval | None:
    """{x in [a,b] : lo_t <= fn(x) <= hi_t} for monotone fn, via bracketing."""
    fmin, fmax = min(fa, fb), max(fa, fb)
    if fmin > hi_t or fmax < lo_t:
        return None
    increasing = fb >= fa
    if increasing:
        x_lo = a if fa >= lo_t else _bisect_to_value(fn, a, b, lo_t)
        x_hi = b if fb <= hi_t else _bisect_to_value(fn, a, b, hi_t)
    else:
        x_lo = a if fa <= hi_t else _bisect_to_value(fn, a, b, hi_t)
        x_hi = b if fb >= lo_t else _bisect_to_value(fn, a, b, lo_t)
    if x_hi <= x_lo:
        return None
    return Interval(x_lo, x_hi)


# ---------------------------------------------------------------------------
# The shared 1D engine
# ---------------------------------------------------------------------------


def _engine_1d(f: PhaseFunction, outer, lam: float, eps: float, r: float,
               interval: Interval, claims: dict | None,
               partition_order: int | None = None) -> tuple[list[CertPiece], dict]:
    """Produce the per-piece decomposition on one interval.

    ``outer`` may be None for the identity outer function (base case), in
    which case only the |f'| split and integration by parts run, with the
    classical per-interval bound 3 / (r_p |lambda|).
    """
    lam_abs = abs(lam)
    fval = lambda x: float(f.eval_fn(0, np.asarray(x, dtype=float)))
    f1val = lambda x: float(f.eval_fn(1, np.asarray(x, dtype=float)))
    pieces: list[CertPiece] = []
    notes = {"shrunk_for_threshold": 0}

    base = monotone_partition(f, order_cap=partition_order, interval=interval)

    # refine at pullbacks of the outer derivative's monotonicity breaks
    if outer is not None:
        breaks: list[float] = []
        for piece in base:
            fa, fb = fval(piece.lo), fval(piece.hi)
            for t_star in outer.prime_breaks():
                if min(fa, fb) < t_star < max(fa, fb):
                    breaks.append(_bisect_to_value(fval, piece.lo, piece.hi, t_star))
        if breaks:
            refined: list[Interval] = []
            for piece in base:
                cuts = sorted(x for x in breaks if piece.lo < x < piece.hi)
                edges = [piece.lo] + cuts + [piece.hi]
                refined.extend(Interval(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a)
            base = refined

    # removed root-proximity cover, pulled back through f
    removed: list[Interval] = []
    if outer is not None:
        threshold = outer.threshold(eps)
        for t_iv in outer.cover(eps):
            center = 0.5 * (t_iv.lo + t_iv.hi)
            radius = 0.5 * (t_iv.hi - t_iv.lo)
            if radius <= 0:
                continue
            res = sublevel_1d(f, center, radius, interval=interval)
            removed.extend(res.components)
        removed = _merge(removed)
    else:
        threshold = None

    r_strict = r * (1.0 - 1e-12)

    def emit_removed(iv: Interval, why: str):
        claimed = None
        bound = iv.length
        if claims is not None:
            claimed = claims["removed_unit"]
            if claims["removed_total_measured"] > claims["removed_total_claimed"] > 0:
                bound = iv.length * claims["removed_total_claimed"] / claims["removed_total_measured"]
        pieces.append(CertPiece(
            KIND_REMOVED, iv.as_tuple(), bound, "measured_sublevel_measure",
            {"measured": iv.length, "claimed_per_root": claimed, "origin": why},
        ))

    if claims is not None and removed:
        measured_total = sum(iv.length for iv in removed)
        claims["removed_total_measured"] = measured_total
        claims["removed_total_claimed"] = claims["removed_unit"] * outer.n_centers
    elif claims is not None:
        claims["removed_total_measured"] = 0.0
        claims["removed_total_claimed"] = 0.0

    for iv in removed:
        emit_removed(iv, "root_proximity_cover")

    for piece in base:
        for kept in _subtract(piece, removed):
            a, b = kept.lo, kept.hi
            if outer is not None:
                ea = outer.dprime_abs(fval(a))
                eb = outer.dprime_abs(fval(b))
                thr_ok = threshold * (1.0 - 1e-9)
                if ea < thr_ok and eb < thr_ok:
                    notes["shrunk_for_threshold"] += 1
                    pieces.append(CertPiece(
                        KIND_REMOVED, kept.as_tuple(), kept.length,
                        "measured_sublevel_measure",
                        {"measured": kept.length, "origin": "threshold_safety"},
                    ))
                    continue
                if ea < thr_ok or eb < thr_ok:
                    notes["shrunk_for_threshold"] += 1
                    dpf = lambda x: outer.dprime_abs(fval(x))
                    x_star = _bisect_to_value(dpf, a, b, threshold)
                    if ea < thr_ok:
                        shaved, a = Interval(a, x_star), x_star
                    else:
                        shaved, b = Interval(x_star, b), x_star
                    pieces.append(CertPiece(
                        KIND_REMOVED, shaved.as_tuple(), shaved.length,
                        "measured_sublevel_measure",
                        {"measured": shaved.length, "origin": "threshold_safety"},
                    ))
                    if b - a <= 1e-13:
                        continue
                m_piece = min(outer.dprime_abs(fval(a)), outer.dprime_abs(fval(b)))
                m_piece = max(m_piece, threshold)
            else:
                m_piece = 1.0

            f1a, f1b = f1val(a), f1val(b)
            small = _band_subinterval(f1val, a, b, f1a, f1b, -r_strict, r_strict)
            sub_ibp: list[Interval] = []
            if small is None:
                sub_ibp.append(Interval(a, b))
            else:
                if small.lo > a + 1e-13:
                    sub_ibp.append(Interval(a, small.lo))
                if small.hi < b - 1e-13:
                    sub_ibp.append(Interval(small.hi, b))
                details = {"measured": small.length, "r": r}
                if claims is not None:
                    details["derivpush"] = derivpush_bound(claims["sublevel_B"], claims["delta"], r)
                pieces.append(CertPiece(
                    KIND_SMALL, small.as_tuple(), small.length,
                    "measured_interval_length", details,
                ))

            for ivb in sub_ibp:
                ra = abs(f1val(ivb.lo))
                rb = abs(f1val(ivb.hi))
                r_piece = max(min(ra, rb), r)
                if outer is not None:
                    exponent = outer.d
                    eps_piece = m_piece ** (1.0 / (exponent - 1.0)) if exponent > 1.0 else 1.0
                    formula_val = ibp_bound(r_piece, eps_piece, exponent, lam)
                    formula_name = "ibp_6_over_r_lam_eps"
                else:
                    formula_val = 3.0 / (r_piece * lam_abs)
                    formula_name = "vdc_ibp_3_over_r_lam"
                bound = min(ivb.length, formula_val)
                pieces.append(CertPiece(
                    KIND_IBP, ivb.as_tuple(), bound, formula_name,
                    {"length": ivb.length, "formula_value": formula_val,
                     "r_piece": r_piece, "min_dprime": m_piece},
                ))
    return pieces, notes


# ---------------------------------------------------------------------------
# Public one-dimensional certification
# ---------------------------------------------------------------------------


def certify_1d(f: PhaseFunction, P: Polynomial | PowerTransform, lam: float,
               mode: str, delta: float | None = None, A: float | None = None,
               N: int | None = None, snd_constant: SndConstant | None = None,
               interval: Interval | None = None) -> Certificate:
    """Certificate for |int_I e^{i lam P(f(x))} dx|.

    mode "general": f carries an oscillatory-decay claim |I(lam)| <= A lam^-delta
    (A >= 1, 0 < delta < 1) plus the single-signed structure of order meta.N.
    mode "vdc": |f^(N)| >= 1 is declared (f' monotone when N = 1) and the
    certified rate is 1/(N d).
    """
    if lam == 0.0:
        raise PreconditionError("certify_1d needs lambda != 0")
    lam_abs = abs(lam)
    iv = interval or f.domain

    if isinstance(P, PowerTransform):
        outer = _PowerOuter(P)
    else:
        outer = _PolyOuter(P, lam_abs, snd_constant)
    d = outer.d

    if mode == "general":
        if delta is None or A is None:
            delta = delta if delta is not None else f.meta.claimed_delta
            A = A if A is not None else f.meta.claimed_A
        if delta is None or A is None:
            raise PreconditionError("general mode needs (delta, A)")
        if not (0.0 < delta < 1.0):
            raise PreconditionError("general mode needs delta in (0, 1)")
        if A < 1.0:
            raise PreconditionError("general mode needs A >= 1")
        delta_eff = float(delta)
        r = lam_abs ** (-(1.0 - delta_eff) / d)
        C = osc_to_sublevel_constant(delta_eff)
        radius = outer.cover_radius(lam_abs ** (-1.0 / d))
        claims = {
            "delta": delta_eff,
            "A": float(A),
            "C_delta": C.C_delta,
            "sublevel_B": C.C_delta * float(A),
            "removed_unit": C.C_delta * float(A) * radius**delta_eff,
        }
    elif mode == "vdc":
        N_eff = N if N is not None else f.meta.N
        if N_eff < 1:
            raise PreconditionError("vdc mode needs N >= 1")
        lb = f.meta.derivative_lower_bound
        if lb is None or lb < 1.0:
            raise PreconditionError(
                "vdc mode needs a declared derivative lower bound |f^(N)| >= 1"
            )
        if lam_abs < 1.0:
            raise PreconditionError("vdc mode certifies |lambda| >= 1")
        delta_eff = 1.0 / N_eff
        r = lam_abs ** (-(N_eff - 1.0) / (N_eff * d))
        claims = None
    else:
        raise PreconditionError(f"unknown mode {mode!r}")

    eps = lam_abs ** (-1.0 / d)
    pieces, notes = _engine_1d(f, outer, lam, eps, r, iv, claims)
    params = CertificateParams(eps, r, float(lam), delta_eff, d, None, mode)
    notes["outer"] = outer.label
    if claims is not None:
        notes["C_delta"] = claims["C_delta"]
        notes["A"] = claims["A"]
    cert = _finish(pieces, params, notes)
    return cert


# ---------------------------------------------------------------------------
# Two dimensions (n = 2)
# ---------------------------------------------------------------------------


def _ge_gamma_subintervals(h: PhaseFunction, gamma: float, iv: Interval,
                           cap: int) -> list[Interval]:
    """Subintervals of iv where |h| >= gamma, by scan plus bracket refinement."""
    n = 1025
    xs = np.linspace(iv.lo, iv.hi, n)
    vs = np.abs(np.asarray(h.eval_fn(0, xs), dtype=float))
    ge = vs >= gamma
    hval = lambda x: abs(float(h.eval_fn(0, np.asarray(x, dtype=float))))
    out: list[Interval] = []
    i = 0
    while i < n:
        if not ge[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and ge[j + 1]:
            j += 1
        lo = xs[i]
        if i > 0:
            lo = _bisect_to_value(hval, xs[i - 1], xs[i], gamma)
        hi = xs[j]
        if j + 1 < n:
            hi = _bisect_to_value(hval, xs[j], xs[j + 1], gamma)
        if hi > lo:
            out.append(Interval(lo, hi))
        i = j + 1
    if len(out) > cap:
        raise SliceOverflowError(
            f"slice decomposed into {len(out)} intervals, cap {cap}", gamma=gamma
        )
    return out


def certify_2d(f: Phase2D, P: Polynomial | PowerTransform, lam: float,
               snd_constant: SndConstant | None = None,
               slice_samples: int = 33) -> Certificate:
    """Certificate for |int_X e^{i lam P(f(x, y))} dx dy| at n = 2.

    The domain splits where |d^(beta_2)_y f| crosses gamma.  On the large
    side, slices in y at sampled x are certified by the one-dimensional
    engine with r = gamma (base case P(x) = x uses the classical
    per-interval bound); the region bound is the x-projection width times
    the worst sampled slice total.  The small side is charged by its
    measure, with the parametric 2*A*gamma*height bound recorded when the
    mixed derivative is bounded below.
    """
    if lam == 0.0:
        raise PreconditionError("certify_2d needs lambda != 0")
    lam_abs = abs(lam)
    beta1, beta2 = f.beta
    abs_beta = beta1 + beta2
    if beta2 < 1 or beta1 < 1:
        raise PreconditionError("certify_2d at n=2 needs beta components >= 1")
    dom = f.domain

    if isinstance(P, PowerTransform):
        outer = _PowerOuter(P)
        d = outer.d
        base_case = False
    elif P.degree == 1:
        rep = classify(derivative(P))
        if not rep.is_monic:
            raise PreconditionError("base case needs P' = 1 (P = x + const)")
        outer = None
        d = 1.0
        base_case = True
    else:
        outer = _PolyOuter(P, lam_abs, snd_constant)
        d = outer.d
        base_case = False

    N2 = f.n_orders[1]
    if N2 is None or N2 <= beta2:
        raise PreconditionError("need declared convexity order N2 > beta2")

    if base_case:
        gamma = lam_abs ** (-beta1 / abs_beta)
        eps = 1.0
        r = gamma
    elif beta2 > 1:
        gamma = lam_abs ** (-beta1 / (d * abs_beta))
        eps = lam_abs ** (-1.0 / d)
        r = lam_abs ** (-1.0 / d + 1.0 / (d * abs_beta))
    else:
        gamma = lam_abs ** (-(abs_beta - 1.0) / (d * abs_beta))
        eps = lam_abs ** (-1.0 / d)
        r = gamma

    ax, bx, ay, by = dom.bounding_box
    width = bx - ax
    height = by - ay

    # spot-check the declared lower bound on the beta derivative
    gx = np.linspace(ax, bx, 17)
    gy = np.linspace(ay, by, 17)
    mixed = np.abs(f.eval((beta1, beta2), gx[:, None], gy[None, :]))
    if mixed.min() < f.derivative_lower_bound * (1.0 - 1e-9):
        raise PreconditionError(
            f"|d^beta f| dips to {mixed.min():.3g} below declared bound "
            f"{f.derivative_lower_bound}"
        )

    pieces: list[CertPiece] = []
    notes = {"gamma": gamma, "slice_samples": slice_samples}
    cap = dom.slice_bound * (N2 + 2)

    # region 1: |d^(beta2)_y f| >= gamma, certified slice by slice.  The worst
    # slice sits at the region boundary (where the slice derivative bound is
    # exactly gamma), so locate that boundary and cluster samples against it.
    y_probe = np.linspace(ay, by, 65)

    def slice_active(x0: float) -> bool:
        vals = np.abs(f.eval_fn((0, beta2), np.full_like(y_probe, x0), y_probe))
        return bool(vals.max() >= gamma)

    x_scan = np.linspace(ax, bx, 257)
    active = np.array([slice_active(float(x0)) for x0 in x_scan])
    if not active.any():
        xs = np.array([])
    else:
        i0 = int(np.argmax(active))
        x_start = x_scan[i0]
        if i0 > 0:
            lo_x, hi_x = x_scan[i0 - 1], x_scan[i0]
            for _ in range(50):
                m = 0.5 * (lo_x + hi_x)
                if slice_active(m):
                    hi_x = m
                else:
                    lo_x = m
            x_start = hi_x
        span = bx - x_start
        cluster = x_start + span * np.geomspace(1e-8, 1.0, slice_samples)
        xs = np.unique(np.concatenate([[x_start], cluster,
                                       np.linspace(x_start, bx, slice_samples)]))
    worst_total = 0.0
    worst_pieces: list[CertPiece] = []
    for x0 in xs:
        hy = f.slice_in_y(float(x0), base_dx_order=0, max_order=max(2, N2))

        def dbeta2(order, y, _x=float(x0)):
            return f.eval_fn((0, beta2 + order), np.full_like(y, _x), y)

        dphase = PhaseFunction(dbeta2, max_order=max(0, N2 - beta2),
                               domain=dom.y_extent(), name="d_y^b2 f slice")
        slice_pieces: list[CertPiece] = []
        for sub in _ge_gamma_subintervals(dphase, gamma, dom.y_extent(), cap):
            ps, _ = _engine_1d(hy, outer, lam, eps, r, sub, None,
                               partition_order=min(N2, hy.max_order))
            slice_pieces.extend(ps)
        total = sum(p.bound for p in slice_pieces)
        if total > worst_total:
            worst_total = total
            worst_pieces = slice_pieces
    for p in worst_pieces:
        pieces.append(CertPiece(
            p.kind, (ax, bx) + p.support, p.bound * width,
            p.formula + "_x_width",
            dict(p.details, slice_bound=p.bound, width=width),
        ))

    # region 2: |d^(beta2)_y f| < gamma, charged by measure
    gamma_strict = gamma * (1.0 - 1e-12)

    def region2_slice(ys):
        ys = np.asarray(ys, dtype=float)
        out = np.empty(ys.size)
        for k, yv in enumerate(ys):
            def hx(order, x, _y=float(yv)):
                return f.eval_fn((order, beta2), x, np.full_like(x, _y))

            hphase = PhaseFunction(hx, max_order=1, domain=Interval(ax, bx),
                                   name="d_y^b2 f row")
            res = sublevel_1d(hphase, 0.0, gamma_strict, Interval(ax, bx))
            out[k] = res.measure
        return out

    measured, quad_err = adaptive_quad(region2_slice, ay, by, rel_tol=1e-6)
    region2 = measured + quad_err
    parametric = None
    if beta1 == 1:
        parametric = 2.0 * dom.slice_bound * gamma * height
        region2 = min(region2, parametric)
    pieces.append(CertPiece(
        KIND_MIXED, (ax, bx, ay, by), float(region2), "measured_region_measure",
        {"measured": measured, "outer_quad_error": quad_err, "parametric": parametric,
         "gamma": gamma},
    ))

    params = CertificateParams(eps, r, float(lam), 1.0 / (abs_beta * d), d, gamma,
                               "2d_base" if base_case else "2d")
    return _finish(pieces, params, notes)
