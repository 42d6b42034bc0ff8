"""Oscillatory quadrature at a glance.

The integrals int_0^1 e^{i lam x} dx and int_0^1 e^{i lam x^2} dx have closed
forms, so we can watch the panel engine track them into the large-lambda
regime and read the decay straight off the magnitudes.
"""

import numpy as np

from oscint import geometric_grid, monomial, osc_integrate_1d

linear = monomial(1, (0.0, 1.0))
square = monomial(2, (0.0, 1.0))

print(f"{'lambda':>10} {'|I| (x phase)':>16} {'|I| (x^2 phase)':>16} {'panels':>8}")
for lam in geometric_grid(1e1, 1e5, 1):
    r1 = osc_integrate_1d(linear, float(lam))
    r2 = osc_integrate_1d(square, float(lam))
    print(f"{lam:10.0f} {abs(r1.value):16.8e} {abs(r2.value):16.8e} {r2.panels_used:8d}")

lam = 100.0
exact = (np.exp(1j * lam) - 1.0) / (1j * lam)
r = osc_integrate_1d(linear, lam)
print(f"\nclosed form at lambda={lam:g}: {exact:.12f}")
print(f"panel engine:              {r.value:.12f}  (error estimate {r.error_estimate:.1e})")
print("\nthe x^2 magnitudes fall like lambda^-1/2, the x magnitudes like lambda^-1,")
print("which is exactly what the decay-fit module recovers in demo_decay_fits.py")
