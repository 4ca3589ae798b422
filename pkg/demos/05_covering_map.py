"""The extremal covering map h of the disk minus {-mu, mu}.

The map is assembled from a disk automorphism, the Joukowski map, a
rectangle map, a ratio of Lame solutions and the modular function.  h omits 0
and 1 off the punctures, vanishes to order m at -mu and takes the value 1
to order n at mu.
"""
import math

from omitted_values.lame import build_covering, verify_covering

ev = build_covering(2, 1)
sol = ev.lame
print(f"mu = {ev.mu:.10f}, a = {ev.a:.8f}")
print(f"rectangle half-width omega = {ev.rect.omega:.10f}")
print(f"eigenvalues: lambda0 = {sol.lambda0:.12f}, lambda1 = {sol.lambda1:.12f}, lambda2 = {sol.lambda2:.12f}")
print(f"normalising constant K = {sol.K:.12f}")
print(f"sigma(omega) = {sol.sigma(ev.rect.omega).real:.12f}, 3 - 2 sqrt 2 = {3 - 2 * math.sqrt(2):.12f}")
print()
for z in (0.0, 0.3, -0.3, 0.2 + 0.2j, 0.5j):
    print(f"h({z}) = {ev.h(z):.10f}")
print()
rep = verify_covering(ev)
for name, check in rep["checks"].items():
    print(f"{name}: {'ok' if check['passed'] else 'FAILED'}  {check}")
