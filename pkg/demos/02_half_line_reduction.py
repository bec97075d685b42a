"""The one-dimensional reduction behind the cone bounds.

Restricting the quadratic form to functions of the height alone turns the
3D problem into a weighted half-line form

    p[lam](u) = int (|u'|^2 + lam x^2 |u|^2) x^2 dx,
    lam = ||A0||^2_{L2(w)} / |w|,

whose spectrum is known in closed form: sqrt(lam) (4n - 1). This script
checks the finite-difference discretization against those values, probes
the Rayleigh quotient around the exact ground profile, and verifies that
a direct solid-cone quadrature of a test function reproduces the 1D
quotient to quadrature accuracy.
"""

import math

import numpy as np

from conebounds import (Disc, GridSpec, cone_quotient_consistency,
                        exact_reduced_spectrum, fd_halfline_spectrum,
                        full_gauge, lambda_from_gauge, moments,
                        optimal_transverse_gauge, rayleigh_quotient_1d)

# --- lam from the optimal gauge --------------------------------------------

disc = Disc(center=(0.0, 0.0), radius=1.0)
gauge = full_gauge((0.0, 0.0, 1.0), optimal_transverse_gauge(moments(disc)))
lam = lambda_from_gauge(gauge, disc)
print(f"unit disc, axial field: lam = {lam:.6f} (exact 1/8)")

# --- exact vs finite-difference spectrum ------------------------------------

exact = exact_reduced_spectrum(lam, n_max=3)
fd = fd_halfline_spectrum(lam, n_max=3)
print("n   sqrt(lam)(4n-1)      FD eigenvalue        difference")
for n, (ev, ef) in enumerate(zip(exact, fd), start=1):
    print(f"{n}   {ev:.12f}   {ef:.12f}   {ef - ev:+.2e}")

# --- observed convergence order ---------------------------------------------

# Halving the mesh width (n + 1 doubles) should divide the error by 4.
errs = []
for n in (600, 1201, 2403):
    e1 = fd_halfline_spectrum(1.0, grid=GridSpec(12.0, n), n_max=1)[0]
    errs.append(abs(e1 - 3.0))
orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
print(f"ground-state errors under refinement: "
      f"{', '.join(f'{e:.3e}' for e in errs)}")
print(f"observed orders: {', '.join(f'{p:.3f}' for p in orders)} (expect 2)")

# --- Rayleigh quotients around the ground profile ---------------------------

# The adapted Gaussian exp(-sqrt(lam) x^2 / 2) is the exact minimizer; any
# width perturbation must raise the quotient above 3 sqrt(lam).
print(f"\nquotient of width-t Gaussians at lam = 1 (minimum 3 at t = 1):")
for t in (0.6, 0.8, 1.0, 1.25, 1.6):
    q = rayleigh_quotient_1d(lambda x: math.exp(-t * x * x / 2.0), 1.0,
                             du=lambda x: -t * x * math.exp(-t * x * x / 2.0))
    print(f"  t = {t:4.2f}: quotient = {q:.8f}")

# --- solid cone versus half line ---------------------------------------------

# Quadrature over the truncated solid cone with the physical gauge equals
# the weighted 1D quotient of the same height profile.
for label, phi, dphi in (
        ("exp(-x^2/2)",
         lambda x: math.exp(-x * x / 2.0),
         lambda x: -x * math.exp(-x * x / 2.0)),
        ("x exp(-x^2/2)",
         lambda x: x * math.exp(-x * x / 2.0),
         lambda x: (1.0 - x * x) * math.exp(-x * x / 2.0))):
    three_d, one_d = cone_quotient_consistency(phi, gauge, disc, dphi=dphi)
    print(f"profile {label:15s}: 3D quadrature {three_d:.10f}, "
          f"1D quotient {one_d:.10f}")
