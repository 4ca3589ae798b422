"""Extremal radii mu_{m,n} and the separating geodesic.

For generators A^m, B^n the covering of the disk minus {-mu, mu} has its
two punctures as close as possible; mu follows from the harmonic measure of
the tangent-circle domain with r = 1/(sqrt(mn) + 1).
"""
import math

from omitted_values.extremal import mu, mu_p, separating_length, table_a5, t_for_length, two_point_admissible

res = mu(2, 1)
print(f"mu(2,1) = {res.mu:.10f}  (a = {res.a:.8f}, omega0 = {res.omega0.value:.10f})")
print(f"critical pseudo-hyperbolic distance 2 mu/(1 + mu^2) = {res.threshold:.10f}")
print()
print("table of extremal radii:")
for row in table_a5():
    print(f"  (m, n) = ({row.m}, {row.n})  p = {row.p:2}  mu = {row.mu:.8f}")
print("the radius depends on p = mn only; product 8 gives", f"{mu_p(8).mu:.8f}")
print()
ell = separating_length(res.mu)
print(f"separating length at mu(2,1): {ell:.10f}, 2 log(3 + 2 sqrt 2) = {2 * math.log(3 + 2 * math.sqrt(2)):.10f}")
for length in (2.0, 4.0, 6.0):
    t = t_for_length(length)
    print(f"  length {length}: t = {t:.10f}, back to length {separating_length(t):.10f}")
print()
for pair in [(-res.mu, res.mu), (0.0, 0.04), (0.1j, -0.3)]:
    out = two_point_admissible(*pair, mu_value=res.mu)
    print(f"points {pair}: distance {out['pseudo_dist']:.6f}, holomorphic {out['admissible_holomorphic']}, "
          f"rational {out['admissible_rational']}")
