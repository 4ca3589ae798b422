"""Minimal traces of words with prescribed exponent sums, and the constant A0.

A cyclic word in the generators A, B of the level-two congruence group is a
closed curve on the twice-punctured plane.  Its trace t gives the length
2 acosh(t/2) of the geodesic, and the shortest curve with exponent sums
(n0, n1) fixes A0 = exp(-pi^2 / length).
"""
from omitted_values import canonical_cyclic, entry_formulas, exact_a0, stats, to_matrix, trace
from omitted_values.enumeration import candidates_below_trace, index_orbit
from omitted_values.traces import baribaud_bound, conjecture_check, nstar_bound

w = canonical_cyclic("B A^2")
print(f"canonical form of 'B A^2': {w}")
print(f"matrix {to_matrix(w).tolist()}, trace {trace(w)}, exponent sums {stats(w)[1:3]}")
print(f"closed-form entries agree with the product: {entry_formulas(w) == to_matrix(w)}")
print()

print("Exact minimal traces:")
for pair in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2)]:
    res = exact_a0(*pair)
    words = ", ".join(str(x) for x in res.witnesses)
    print(f"  {pair}: t_min = {res.t_min:3d}  A0 = {res.a0:.9f}  witnesses: {words}")
print()

print("The three index symmetries generate an orbit sharing one minimal trace:")
print("  orbit of (2, 1):", sorted(index_orbit(2, 1)))
print()

print("Closed-form lower bounds next to the exact value for (4, 1):")
print(f"  trace bound {baribaud_bound(4, 1)}, length-count bound {nstar_bound(4, 1)}")
print()

print("Non-peripheral classes with |trace| <= 14, up to symmetry:")
for c in candidates_below_trace(14):
    print(f"  {c}  (trace {trace(c)})")
print()

for k in (1, 2, 3):
    rep = conjecture_check(k)
    print(f"constant-sign check of the k = {k} trace polynomial: {rep.verified} over {rep.sign_patterns_checked} sign patterns")
