"""q-Gaussian Jacobi sequences omega_n = [n]_q.

q = 1 is the oscillator, q = 0 the free (semicircle) case with omega_n = 1.
For every -1 < q <= 1 the ratio omega_{n+1}/omega_n tends to 1, so the
scaled moments approach the same arcsine limit.  For |q| < 1 omega_n
converges geometrically and so does the error.
"""
from fock_limits import parse_family, ratio_limit_check
from fock_limits.limits import run_symmetric_limit

for spec in ("q:1", "q:1/2", "q:0", "q:-1/2"):
    rec = parse_family(spec)
    diag = ratio_limit_check(rec, 200, tol=1e-2)
    report = run_symmetric_limit(rec, [2, 4, 8, 16, 32], m_max=6)
    print(f"{spec:>7}  ratio check: {diag.plausibly_convergent_to_1}")
    for N in (2, 8, 32):
        errs = [float(report.row(N, m).abs_error) for m in (2, 4, 6)]
        print(f"         N={N:<3} abs errors m=2,4,6: " + "  ".join(f"{e:.3e}" for e in errs))

# Free family: every balanced word contributes exactly 1 once N >= m/2, so
# the scaled moments are the arcsine moments with no error at all.
free = run_symmetric_limit(parse_family("q:0"), [6, 7], m_max=12)
print("\nfree family errors for N >= m/2:", {r.abs_error for r in free.rows})
