"""Quantum harmonic oscillator: position moments in high states.

In the vacuum Phi_0 the position a + a* is standard Gaussian.  In Phi_N,
rescaled by sqrt(2 omega_N) = sqrt(2N), the moments drift toward the arcsine
law on (-sqrt2, sqrt2), whose even moments are C(2k, k) / 2^k.
"""
from fractions import Fraction

from fock_limits import make_family, position_moment, scaled_moment
from fock_limits.measures import arcsine_moment, gaussian_moment

osc = make_family("oscillator")

# Vacuum moments are the Gaussian ones: 1, 0, 1, 0, 3, 0, 15, ...
print("vacuum moments:", [int(position_moment(0, m, osc)) for m in range(9)])
print("gaussian       :", [gaussian_moment(m) for m in range(9)])

# Scaled moments in Phi_N, exact rationals.  scale_squared = 2 omega_N keeps
# even moments rational.
print()
print(f"{'N':>6} " + " ".join(f"{'m=' + str(m):>12}" for m in (2, 4, 6, 8)))
for N in (1, 8, 64, 512, 4096):
    vals = [scaled_moment(N, m, osc, scale_squared=2 * N) for m in (2, 4, 6, 8)]
    print(f"{N:>6} " + " ".join(f"{float(v):>12.6f}" for v in vals))
print(f"{'limit':>6} " + " ".join(f"{float(arcsine_moment(m)):>12.6f}" for m in (2, 4, 6, 8)))

# The second moment is (omega_N + omega_{N+1}) / (2 omega_N) = 1 + 1/(2N).
N = 64
assert scaled_moment(N, 2, osc, scale_squared=2 * N) == 1 + Fraction(1, 2 * N)
