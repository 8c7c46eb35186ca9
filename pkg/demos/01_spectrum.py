"""A first look at the bound-state spectrum.

The pseudoharmonic well De (r/re - re/r)^2 has equally spaced radial levels.
Adding the ring term beta cos^2(theta) / (r^2 sin^2(theta)) keeps the problem
separable but shifts the azimuthal number m to a non-integer m', which in turn
splits levels that share n + m in the pure pseudoharmonic case.
"""
import math

from pseudoharmonic_nu import PotentialSpec, enumerate_spectrum, make_state

plain = PotentialSpec(De=1.0, re=1.0)
print("ground state, De = re = 1, D = 3:", make_state(0, 0, 0, plain).energy)
print("  compare -2 + 5/sqrt(2)        :", -2 + 5 / math.sqrt(2))

print("\nWithout the ring term, states with equal n + m are degenerate:")
for st in enumerate_spectrum(plain, 0, 2, 2):
    print(f"  n={st.n} m={st.m}  l'={st.ell_prime:.3f}  E={st.energy:.10f}")

ring = PotentialSpec(De=1.0, re=1.0, beta=0.5)
print("\nWith beta = 0.5 the degeneracy is lifted (m' = sqrt(m^2 + 2 beta)):")
for st in enumerate_spectrum(ring, 0, 2, 2):
    print(f"  n={st.n} m={st.m}  m'={st.m_prime:.4f}  l'={st.ell_prime:.4f}  E={st.energy:.10f}")

print("\nRadial levels stay equally spaced in any dimension:")
for D in (3, 4, 8):
    spec = PotentialSpec(De=4.0, re=2.0, beta=0.5, D=D)
    E = [make_state(N, 1, 1, spec).energy for N in range(4)]
    gaps = [b - a for a, b in zip(E, E[1:])]
    print(f"  D={D}: E0={E[0]:.6f}  gaps={', '.join(f'{g:.6f}' for g in gaps)}")
