"""Polynomial arithmetic, root finding, SND classification, and root-proximity covers.

The sublevel set {x : |P(x)| <= eps^d} of a monic polynomial is contained in
the union of intervals of radius eps around the real parts of its roots.
For SND-normalised polynomials (largest coefficient magnitude equal to 1 and
attained in the top half) the same holds with radius B_d * eps for a constant
depending only on the degree; no closed form for B_d is used here, instances
are estimated empirically.  A degenerating family demonstrating failure of
the inclusion for non-SND polynomials is provided alongside.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotSndError, PreconditionError, RootConvergenceError
from .phases import Interval

_polyval = np.polynomial.polynomial.polyval

CLASSIFY_TOL = 1e-12
DEFAULT_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class Polynomial:
    """Real coefficients in ascending order, nonzero leading coefficient."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        if not c or all(v == 0.0 for v in c):
            raise PreconditionError("zero polynomial is not representable")
        while len(c) > 1 and c[-1] == 0.0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    @property
    def max_abs_coeff(self) -> float:
        return max(abs(v) for v in self.coeffs)

    def __call__(self, x):
        return _polyval(np.asarray(x, dtype=float), np.asarray(self.coeffs))

    def eval_complex(self, z):
        return _polyval(np.asarray(z, dtype=complex), np.asarray(self.coeffs))

    def scaled(self, factor: float) -> "Polynomial":
        return Polynomial(tuple(factor * v for v in self.coeffs))


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    residual_tol: float

    @property
    def count(self) -> int:
        return len(self.roots)

    @property
    def real_parts(self) -> tuple[float, ...]:
        return tuple(z.real for z in self.roots)


@dataclass(frozen=True)
class SndConstant:
    d: int
    B: float
    provenance: str = "empirical"

    def __post_init__(self):
        if self.B < 1.0:
            raise PreconditionError("SND cover constant must be >= 1")
        if self.provenance not in ("empirical", "user-supplied"):
            raise PreconditionError(f"unknown provenance {self.provenance!r}")


@dataclass(frozen=True)
class ClassifyReport:
    label: str  # "monic" | "SND" | "other"
    is_monic: bool
    is_snd: bool
    attaining_j: int | None
    max_abs_coeff: float
    rescale: float  # multiply coefficients by this to restore max |a| = 1


def derivative(P: Polynomial) -> Polynomial:
    if P.degree < 1:
        raise PreconditionError("cannot differentiate a constant polynomial")
    c = np.asarray(P.coeffs)
    return Polynomial(tuple(c[1:] * np.arange(1, c.size)))


def classify(P: Polynomial) -> ClassifyReport:
    """Scale-checking classification into monic / SND / other.

    SND means the maximum coefficient magnitude is 1 (within 1e-12) and is
    attained by |a_{d-j}| for some j <= d/2.  The check is deliberately not
    scale invariant; the report carries the rescale factor restoring max
    coefficient 1.
    """
    d = P.degree
    mags = [abs(v) for v in P.coeffs]
    mx = max(mags)
    is_monic = abs(P.leading - 1.0) <= CLASSIFY_TOL
    attaining = None
    is_snd = False
    if abs(mx - 1.0) <= CLASSIFY_TOL:
        for j in range(d + 1):
            if mags[d - j] >= mx - CLASSIFY_TOL:
                attaining = j
                break
        is_snd = attaining is not None and attaining <= d / 2.0
    label = "monic" if is_monic else ("SND" if is_snd else "other")
    return ClassifyReport(label, is_monic, is_snd, attaining if is_snd else None,
                          mx, 1.0 / mx)


# ---------------------------------------------------------------------------
# Root finding: Aberth-Ehrlich with companion-matrix fallback
# ---------------------------------------------------------------------------


def _aberth(monic: np.ndarray, max_iter: int = 120,
            start: np.ndarray | None = None) -> np.ndarray | None:
    """Simultaneous iteration on a monic coefficient array (ascending)."""
    d = monic.size - 1
    dcoef = monic[1:] * np.arange(1, monic.size)
    if start is None:
        radius = 1.0 + float(np.max(np.abs(monic[:-1])))
        angles = 2.0 * np.pi * (np.arange(d) + 0.376) / d
        z = radius * 0.7 * np.exp(1j * angles) + 0.1j
    else:
        z = start.astype(complex).copy()
    for _ in range(max_iter):
        p = _polyval(z, monic)
        dp = _polyval(z, dcoef)
        dp = np.where(np.abs(dp) < 1e-300, 1e-300, dp)
        newton = p / dp
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, np.inf)
        s = np.sum(1.0 / diffs, axis=1)
        denom = 1.0 - newton * s
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        w = newton / denom
        z = z - w
        if not np.all(np.isfinite(z)):
            return None
        if np.max(np.abs(w)) < 1e-15 * (1.0 + np.max(np.abs(z))):
            return z
    return z


def _companion_eigs(monic: np.ndarray) -> np.ndarray:
    d = monic.size - 1
    comp = np.zeros((d, d))
    comp[1:, :-1] = np.eye(d - 1)
    comp[:, -1] = -monic[:-1]
    return np.linalg.eigvals(comp)


def _pair_and_sort(z: np.ndarray) -> tuple[complex, ...]:
    """Force conjugate pairing for real input and order deterministically."""
    z = np.asarray(z, dtype=complex)
    real_mask = np.abs(z.imag) <= 1e-9 * (1.0 + np.abs(z.real))
    reals = sorted(z[real_mask].real.tolist())
    complexes = z[~real_mask]
    pos = sorted(complexes[complexes.imag > 0], key=lambda w: (w.real, w.imag))
    neg = sorted(complexes[complexes.imag < 0], key=lambda w: (w.real, -w.imag))
    paired: list[complex] = []
    used = [False] * len(neg)
    for zp in pos:
        best, best_err = None, np.inf
        for i, zn in enumerate(neg):
            if used[i]:
                continue
            err = abs(zp - np.conj(zn))
            if err < best_err:
                best, best_err = i, err
        if best is not None:
            used[best] = True
            avg = 0.5 * (zp + np.conj(neg[best]))
            paired.extend([avg, np.conj(avg)])
        else:
            paired.append(zp)
    paired.extend(zn for i, zn in enumerate(neg) if not used[i])
    out = [complex(r, 0.0) for r in reals] + paired
    out.sort(key=lambda w: (w.real, w.imag))
    return tuple(out)


def roots(P: Polynomial, tol: float = DEFAULT_ROOT_TOL, max_iter: int = 120) -> RootSet:
    """All complex roots, Aberth-Ehrlich first, companion eigenvalues as fallback.

    The returned set satisfies |P(z)| <= tol * (1 + max|a_j|) for every root,
    relaxed to the float backward-error scale tol * (1 + sum |a_j| |z|^j)
    when roots are large enough that plain evaluation noise exceeds the
    coefficient scale.
    """
    d = P.degree
    if d < 1:
        raise PreconditionError("roots requires degree >= 1")
    scale = tol * (1.0 + P.max_abs_coeff)

    def acceptable(z: np.ndarray) -> bool:
        resid = np.abs(P.eval_complex(z))
        mags = np.abs(z)
        eval_scale = np.zeros_like(mags)
        for j, a in enumerate(P.coeffs):
            eval_scale += abs(a) * mags**j
        return bool(np.all(resid <= np.maximum(scale, tol * (1.0 + eval_scale))))
    if d == 1:
        a0, a1 = P.coeffs
        return RootSet((complex(-a0 / a1),), tol)
    if d == 2:
        a0, a1, a2 = P.coeffs
        disc = complex(a1 * a1 - 4.0 * a2 * a0)
        sq = np.sqrt(disc)
        # stable quadratic: avoid cancellation in the small root
        q = -0.5 * (a1 + (sq if a1 >= 0 else -sq))
        r1 = q / a2
        r2 = (a0 / q) if q != 0 else -a1 / a2 - r1
        return RootSet(_pair_and_sort(np.array([r1, r2])), tol)

    monic = np.asarray(P.coeffs) / P.leading
    z = _aberth(monic, max_iter=max_iter)
    if z is None or not acceptable(z):
        z2 = _aberth(monic, max_iter=60, start=_companion_eigs(monic))
        if z2 is not None and (
            z is None
            or np.max(np.abs(P.eval_complex(z2))) < np.max(np.abs(P.eval_complex(z)))
        ):
            z = z2
    if not acceptable(z):
        resid = np.max(np.abs(P.eval_complex(z)))
        raise RootConvergenceError(
            f"root residual {resid:.3e} above tolerance scale after fallback", degree=d
        )
    return RootSet(_pair_and_sort(z), tol)


# ---------------------------------------------------------------------------
# Product sublevel inclusion (weak Hoelder / Young route)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class YoungCover:
    """Combined sublevel estimate for a product of factors.

    For factors with sublevel constants (C_i, delta_i) the product satisfies
    measure <= C * eps^delta with delta the harmonic combination below, and
    the sublevel set at eps is covered by the per-factor threshold sets
    {|f_i| <= (k*eps/p_i)^(1/p_i)} with p_i = delta_i/delta.
    """

    delta: float
    C: float
    thresholds: tuple[float, ...]
    p: tuple[float, ...]


def young_cover(factors: Sequence[tuple[float, float]], eps: float) -> YoungCover:
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    k = len(factors)
    if k < 1:
        raise PreconditionError("need at least one factor")
    for C_i, d_i in factors:
        if not (0.0 < d_i <= 1.0) or C_i <= 0.0:
            raise PreconditionError("factor exponents must lie in (0,1] with positive constants")
    delta = 1.0 / sum(1.0 / d_i for _, d_i in factors)
    p = tuple(d_i / delta for _, d_i in factors)
    C = sum(C_i * (k * delta / d_i) ** delta for C_i, d_i in factors)
    thresholds = tuple((k * eps / p_i) ** (1.0 / p_i) for p_i in p)
    return YoungCover(delta, C, thresholds, p)


# ---------------------------------------------------------------------------
# Root-proximity covers
# ---------------------------------------------------------------------------


def _merged_intervals(centers: Sequence[float], radius: float) -> list[Interval]:
    out: list[list[float]] = []
    for c in sorted(centers):
        lo, hi = c - radius, c + radius
        if out and lo <= out[-1][1] + 1e-15:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [Interval(lo, hi) for lo, hi in out]


def monic_sublevel_cover(P: Polynomial, eps: float, tol: float = DEFAULT_ROOT_TOL) -> list[Interval]:
    """Intervals of radius eps around the real parts of the roots.

    Guarantee: {x real : |P(x)| <= eps^d} is contained in their union
    (complex roots contribute through their real parts).
    """
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    rep = classify(P)
    if not rep.is_monic:
        raise PreconditionError("monic cover requires a monic polynomial")
    rs = roots(P, tol)
    return _merged_intervals(rs.real_parts, eps)


def snd_sublevel_cover(P: Polynomial, eps: float, B: SndConstant,
                       tol: float = DEFAULT_ROOT_TOL) -> list[Interval]:
    """Same cover with radius B*eps, valid for SND polynomials and eps <= 1."""
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if eps > 1.0:
        raise PreconditionError("SND cover requires eps <= 1")
    if eps == 1.0:
        warnings.warn("SND cover at the eps = 1 boundary; accepted by continuity",
                      stacklevel=2)
    rep = classify(P)
    if not rep.is_snd:
        raise NotSndError(f"polynomial is {rep.label}, not SND", report=rep)
    rs = roots(P, tol)
    return _merged_intervals(rs.real_parts, B.B * eps)


def _ratio_grid(P: Polynomial, rs: RootSet, n_grid: int,
                max_window: float = 64.0) -> np.ndarray:
    """Grid of n_grid points concentrated around the root real parts.

    Any point of {|P| <= 1} lies within (1/|a_d|)^(1/d) of some root; for
    normalised polynomials the interesting distances are O(1), so each root
    gets a local window of that spread capped at ``max_window``, overlapping
    windows are merged, and the budget is spread across windows by length.
    """
    spread = (1.0 / abs(P.leading)) ** (1.0 / P.degree) + 1.0
    w = min(spread, max_window)
    windows: list[list[float]] = []
    for c in sorted(set(rs.real_parts)):
        if windows and c - w <= windows[-1][1]:
            windows[-1][1] = c + w
        else:
            windows.append([c - w, c + w])
    total = sum(hi - lo for lo, hi in windows)
    parts = []
    remaining = n_grid
    for i, (lo, hi) in enumerate(windows):
        n = remaining if i == len(windows) - 1 else max(16, int(n_grid * (hi - lo) / total))
        n = min(n, remaining)
        remaining -= n
        if n > 0:
            parts.append(np.linspace(lo, hi, n))
    return np.concatenate(parts)


def _ratio_data(P: Polynomial, n_grid: int, tol: float):
    rs = roots(P, tol)
    xs = _ratio_grid(P, rs, n_grid)
    pv = np.abs(P(xs))
    re = np.asarray(rs.real_parts)
    dist = np.min(np.abs(xs[:, None] - re[None, :]), axis=1)
    return xs, pv, dist


def cover_ratio(P: Polynomial, eps_values: Sequence[float], n_grid: int = 10_000,
                tol: float = 1e-7) -> tuple[float, dict | None]:
    """Worst ratio dist(x, nearest real part)/eps over sublevel grid points.

    The minimal radius scale B for which the root-proximity cover holds on
    these grids is exactly this ratio.  Returns (ratio, witness) where the
    witness records the attaining (eps, x) pair.
    """
    xs, pv, dist = _ratio_data(P, n_grid, tol)
    d = P.degree
    worst, witness = 0.0, None
    for eps in eps_values:
        mask = pv <= eps**d
        if not mask.any():
            continue
        i = int(np.argmax(np.where(mask, dist, -np.inf)))
        ratio = dist[i] / eps
        if ratio > worst:
            worst = ratio
            witness = {"eps": float(eps), "x": float(xs[i]), "abs_P": float(pv[i]),
                       "dist": float(dist[i])}
    return worst, witness


def cover_violations(P: Polynomial, radius_scale: float, eps: float,
                     n_grid: int = 10_000, slack: float = 1e-8,
                     tol: float = 1e-7) -> list[dict]:
    """Grid points in {|P| <= eps^d} farther than radius_scale*eps from every
    root real part.  ``slack`` absorbs root-residual noise near the boundary."""
    xs, pv, dist = _ratio_data(P, n_grid, tol)
    bad = (pv <= eps**P.degree) & (dist > radius_scale * eps + slack)
    return [
        {"x": float(x), "abs_P": float(p), "dist": float(dv), "eps": float(eps)}
        for x, p, dv in zip(xs[bad], pv[bad], dist[bad])
    ]


# ---------------------------------------------------------------------------
# Empirical SND constants and the degenerating counterexample family
# ---------------------------------------------------------------------------


def sample_snd(d: int, rng: np.random.Generator, max_draws: int = 1000) -> Polynomial:
    """Uniform coefficients in [-1,1], rejected until the max magnitude falls
    in the top half of the coefficients, then rescaled to max magnitude 1."""
    for _ in range(max_draws):
        c = rng.uniform(-1.0, 1.0, size=d + 1)
        if abs(c[-1]) < 1e-6:
            continue
        mags = np.abs(c)
        j_attained = d - int(np.argmax(mags))
        if j_attained <= d / 2.0:
            return Polynomial(tuple(c / mags.max()))
    raise RootConvergenceError("rejection sampling failed to produce an SND polynomial")


def default_eps_grid(lo: float = 1e-2, hi: float = 1.0, per_decade: int = 25) -> np.ndarray:
    n = int(round(per_decade * math.log10(hi / lo))) + 1
    return np.geomspace(lo, hi, n)


def estimate_B(d: int, trials: int = 400, seed: int = 0, n_grid: int = 10_000,
               eps_grid: Sequence[float] | None = None) -> SndConstant:
    """Smallest radius scale (to 2 significant digits, rounded up) for which
    the SND cover holds on all sampled polynomials and dense eps, x grids.

    Trials draw with per-trial derived seeds, so results do not depend on
    evaluation order.
    """
    if d < 1:
        raise PreconditionError("degree must be >= 1")
    if d == 1:
        # |a1 x + a0| <= eps with |a1| = 1 forces |x + a0/a1| <= eps.
        return SndConstant(1, 1.0, "empirical")
    if trials < 100:
        raise PreconditionError("estimate_B needs at least 100 trials")
    eps_values = np.asarray(eps_grid) if eps_grid is not None else default_eps_grid()
    ratios = np.empty(trials)
    for t in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, d, t)))
        P = sample_snd(d, rng)
        try:
            ratios[t], _ = cover_ratio(P, eps_values, n_grid=n_grid)
        except RootConvergenceError:
            # clustered roots: accept the looser residual, the cover uses
            # real parts and the binary search only needs 2 digits
            ratios[t], _ = cover_ratio(P, eps_values, n_grid=n_grid, tol=1e-5)
    worst = float(ratios.max())

    def holds(B: float) -> bool:
        return bool(np.all(ratios <= B))

    lo, hi = 1.0, max(1.0, worst)
    if not holds(hi):
        while not holds(hi):
            hi *= 2.0
    while (hi - lo) > 0.005 * hi:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            hi = mid
        else:
            lo = mid
    exp10 = math.floor(math.log10(hi)) if hi > 0 else 0
    quantum = 10.0 ** (exp10 - 1)
    B = max(1.0, math.ceil(hi / quantum) * quantum)
    return SndConstant(d, B, "empirical")


def degenerating_family(k: int, eta: float) -> Polynomial:
    """eta * x^(k-1) * (x - eta^(-1/k))^k, expanded to coefficients.

    Degree 2k-1; as eta -> 0 the leading coefficient degenerates and the
    k-fold root escapes to infinity, defeating any fixed cover radius.
    """
    if k < 2:
        raise PreconditionError("family needs k >= 2")
    if not (0.0 < eta <= 1.0):
        raise PreconditionError("family needs eta in (0, 1]")
    rho = eta ** (-1.0 / k)
    factor = np.array([math.comb(k, m) * (-rho) ** (k - m) for m in range(k + 1)])
    shifted = np.zeros(2 * k)
    shifted[k - 1:] = factor
    return Polynomial(tuple(eta * shifted))
