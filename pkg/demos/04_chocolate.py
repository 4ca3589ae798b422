"""Lower bound for the critical stabilization parameter.

The radius s0 whose separating geodesic has length log(3 + 2 sqrt 2) gives
t* >= sqrt(2 s0/(1 + s0^2)); an explicit modulus estimate gives a weaker bound.
"""
from omitted_values.extremal import chocolate
from omitted_values.hyperbolic import aaa_lower_bound, ring_from
from omitted_values.enumeration import exact_a0

res = chocolate()
print(f"s0 = {res.s0:.10e}")
print(f"t* >= {res.tstar_lower:.10f}")
print(f"delta* <= {res.delta_star_upper:.10f}")
print(f"explicit-estimate bound t* >= {res.hempel_smith_tstar:.10f}")
print()
j = ring_from(trace=6).rho
print(f"ring radius for trace 6: {j:.10f}")
print(f"improved bound from a cube root: {aaa_lower_bound(j, 3):.10f}")
print(f"same construction from A0(4,1) with q = 5: {aaa_lower_bound(exact_a0(4, 1).a0, 5):.6f}")
