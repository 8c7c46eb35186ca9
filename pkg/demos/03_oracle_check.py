"""Checking the closed-form energies against brute-force numerics.

The oracle never touches the analytic formulas. It discretizes the reduced
radial equation g'' + (eps2 - alpha^2 r^2 - gamma/r^2) g = 0 on a uniform grid,
takes the lowest eigenvalues of the resulting tridiagonal matrix and
Richardson-extrapolates two grid resolutions.
"""
from pseudoharmonic_nu import PotentialSpec, make_state, oracle, radial, verify

spec = PotentialSpec(De=4.0, re=2.0, beta=0.5, D=5)
st = make_state(0, 1, 1, spec)
rp = st.radial_params
fd = oracle.radial_fd_eigen(rp.gamma, rp.alpha, 4)
print(f"D={spec.D} beta={spec.beta} n=1 m=1 (gamma={rp.gamma:.5f}, alpha={rp.alpha:.5f})")
for N, eps2 in enumerate(fd.values):
    exact = make_state(N, 1, 1, spec).energy
    numeric = radial.energy_of_eps2(eps2, rp)
    print(f"  N={N}: closed form {exact:.10f}  oracle {numeric:.10f}  rel diff {abs(exact - numeric) / abs(exact):.1e}")

print("\nThe 3D pseudoharmonic formula needs the De inside the square root.")
for c in verify.check_prefactor_variants():
    print(f"  {c.name}: closed {c.closed_form:.8f}  oracle {c.oracle:.8f}  -> {'ok' if c.passed else 'FAIL'}")

print("\nFull verification (criteria 1-9):")
report = verify.run_verification()
for row in report.summary():
    print(f"  {row['criterion']}: {'PASS' if row['passed'] else 'FAIL'}  {row['checks']:5d} checks  {row['description']}")
