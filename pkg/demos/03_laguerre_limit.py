"""Exponential distribution / Laguerre oscillator (asymmetric case).

The monic Laguerre recurrence has alpha_{n+1} = 2n + 1 and omega_n = n^2.
Moments of (a + a* + a°) / N in Phi_N converge to C(2m, m), the moments of
the arcsine law on (0, 4).  The limit is also written as
sum_l 2^(m-2l) C(m, m-2l) C(2l, l); both sides agree exactly.
"""
from math import comb

from fock_limits.limits import emit_report, run_laguerre_limit
from fock_limits.measures import laguerre_limit_sum, quadrature_moment

for m in range(8):
    print(f"m={m}: limit sum {laguerre_limit_sum(m):>5}   C(2m,m) {comb(2 * m, m):>5}   "
          f"arcsine(0,4) quadrature {quadrature_moment('arcsine_04', m):10.4f}")

report = run_laguerre_limit([8, 64, 512, 1024], m_max=4)
print()
print(emit_report(report, "csv"))
