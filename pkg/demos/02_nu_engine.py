"""Running the Nikiforov-Uvarov machinery by hand.

Any equation sigma y'' + tau~ y' + (sigma~/sigma) y = 0 with polynomial
coefficients of degree at most 2, 1 and 2 can be fed to the engine. It finds
the constants k that make the pi-radicand a perfect square, enumerates the
branches of pi, keeps the physical one and names the polynomial family.
"""
import math

from pseudoharmonic_nu import HypergeometricForm, select_branch
from pseudoharmonic_nu import angular, nu_engine, radial

# Radial equation in s = r^2 at the ground state of the default molecule.
params = radial.RadialParams(a=1.0, b=1.0, c=-2.0)
E0 = radial.energy(0, params)
form = radial.hypergeometric_form(params, E0)
print("radial form: tau~ =", form.tau_tilde, " sigma =", form.sigma, " sigma~ =", form.sigma_tilde)
print("k candidates:", nu_engine.k_candidates(form))
sol = select_branch(form)
print("selected: k =", sol.k, " pi =", sol.pi, " tau =", sol.tau, " by rule:", sol.selected_by)
print("lambda =", sol.lam, " lambda_0 =", nu_engine.lambda_quantized(form, sol, 0))
print("family:", nu_engine.classify_family(sol).kind)

# The same engine, now solving for the energy instead of checking it.
for N in range(3):
    print(f"N={N}: root of lambda - lambda_N -> E = {radial.energy_via_nu(N, params):.12f}"
          f"  closed form {radial.energy(N, params):.12f}")

# Angular equation in x = cos(theta): Jacobi polynomials with a = b = m'.
m_prime, n = 1.3, 2
nu = (n + m_prime) * (n + m_prime + 1)
aform = angular.hypergeometric_form(nu, m_prime)
asol = select_branch(aform)
fam = nu_engine.classify_family(asol)
print("\nangular: tau =", asol.tau, " expected slope", -2 * (1 + m_prime))
print("family:", fam.kind, fam.params)

# A free-standing example: the Hermite equation y'' - 2 x y' + 2n y = 0 rewritten with sigma = 1.
herm = HypergeometricForm(tau_tilde=(0.0, 0.0), sigma=(1.0,), sigma_tilde=(1.0, 0.0, -1.0),
                          domain=(-math.inf, math.inf))
hsol = select_branch(herm)
print("\nharmonic oscillator: tau =", hsol.tau, " family:", nu_engine.classify_family(hsol).kind)
