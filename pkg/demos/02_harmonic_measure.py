"""Harmonic measure in the disk with two tangent disks removed.

Alternating Schwarz: solve in the crescent without the left disk, feed the
result on the right circle into the crescent without the right disk, and so
on.  The values at the origin form an alternating series with decreasing
terms, so every partial sum brackets the answer.
"""
import math

from omitted_values.schwarz import SchwarzSolver

r = math.sqrt(2) - 1
solver = SchwarzSolver(r)
print(f"r = {r:.12f}, {solver.n_nodes} quadrature nodes on each circle")
est = solver.run(tol=1e-10)
print(f"omega0 = {est.value:.12f} +- {est.error_bound:.1e} after {est.iterations} iterations")
print(f"first term (one crescent alone): {est.terms[0]:.15f} = 1/sqrt(2)")
print()
print("partial sums:")
print("\n".join(est.convergence_csv().splitlines()[:8]))
print("...")
print()
print("starting from the right circle instead:", f"{solver.run(1e-10, start='R').value:.12f}")
print()
print("omega0 grows with the radius of the removed disks:")
for rr in (0.05, 0.15, 0.25, 0.35, 0.45):
    print(f"  r = {rr:.2f}: {SchwarzSolver(rr).run(1e-10).value:.10f}")
