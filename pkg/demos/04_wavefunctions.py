"""What the eigenfunctions look like.

R(r) is a Laguerre polynomial in alpha r^2 times a Gaussian and a power of r.
H(theta) is sin^m'(theta) times a Jacobi polynomial in cos(theta). Both come
out normalized, so the product with exp(i m phi)/sqrt(2 pi) has unit norm.
"""
import math

import numpy as np

from pseudoharmonic_nu import PotentialSpec, angular, make_state, radial
from pseudoharmonic_nu.specfun import integrate

spec = PotentialSpec(De=1.0, re=1.0, beta=0.5)
for N in range(3):
    st = make_state(N, 1, 1, spec)
    r = np.linspace(1e-3, 6.0, 4000)
    R = radial.radial_wavefunction(r, st.radial, st.radial_params)
    nodes = int(np.sum(np.sign(R[1:]) != np.sign(R[:-1])))
    peak = r[np.argmax(np.abs(R) * r)]
    norm = integrate(lambda x: radial.radial_wavefunction(np.maximum(x, 1e-300), st.radial, st.radial_params) ** 2
                     * x**2, 0.0, 12.0)
    print(f"N={N}: E={st.energy:.6f}  radial nodes={nodes}  |rR| peaks at r={peak:.3f}  norm={norm:.12f}")

print("\nAngular factor for m = 1, beta = 0.5 (m' = sqrt(2)):")
theta = np.linspace(0.05, math.pi - 0.05, 7)
for n in range(3):
    H = angular.angular_wavefunction(theta, make_state(0, n, 1, spec).angular)
    print(f"  n={n}: " + " ".join(f"{h:+.4f}" for h in H))
