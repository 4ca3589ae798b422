import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import trapezoid

from omitted_values.errors import ConvergenceError, DomainError
from omitted_values.schwarz import (
    BoundaryTrace,
    SchwarzSolver,
    TangentCircleDomain,
    omega0,
    strip_poisson_kernel,
    subdomain_dirichlet,
)

R_SQRT2 = math.sqrt(2) - 1


def crescent_measure(domain: TangentCircleDomain, side, z):
    """Exact harmonic measure of the side circle in its crescent: linear in the strip."""
    s = domain.to_strip(side, z)
    return s.real / domain.strip_width


@pytest.fixture(scope="module")
def solver():
    return SchwarzSolver(R_SQRT2)


class TestGeometry:
    def test_circles_map_to_strip_edges(self):
        dom = TangentCircleDomain(0.3)
        t = np.linspace(-5, 5, 11)
        for side in ("L", "R"):
            pts = dom.circle_point(side, t)
            centre = -0.7 if side == "L" else 0.7
            assert np.allclose(np.abs(pts - centre), 0.3)
            assert np.allclose(dom.to_strip(side, pts).real, dom.strip_width)
        unit = np.exp(1j * np.linspace(0.1, 6.0, 9))
        assert np.allclose(dom.to_strip("L", unit).real, 0.0, atol=1e-12)

    def test_contains(self):
        dom = TangentCircleDomain(0.3)
        assert dom.contains("L", 0.0) and not dom.contains("L", -0.7) and dom.contains("L", 0.7)

    @pytest.mark.parametrize("r", [0.0, 0.5, -0.1, 0.7])
    def test_radius_range(self, r):
        with pytest.raises(DomainError):
            TangentCircleDomain(r)


class TestSubdomainSolve:
    def test_kernel_integrates_to_linear_profile(self):
        d = 2.0
        tau = np.linspace(-60, 60, 24001)
        for x in (0.3, 1.0, 1.7):
            mass = trapezoid(strip_poisson_kernel(x, tau, d), tau)
            assert mass == pytest.approx(x / d, abs=1e-10)

    def test_constant_data_reproduces_exact_measure(self, solver):
        dom = solver.domain
        data = BoundaryTrace("L", solver.t, np.ones_like(solver.t))
        zs = np.array([0.0, 0.2 + 0.3j, -0.1 - 0.5j])
        got = subdomain_dirichlet(dom, "L", data, zs)
        assert np.allclose(got, crescent_measure(dom, "L", zs), atol=1e-12)
        assert got[0] == pytest.approx(1 / math.sqrt(2), abs=1e-13)

    def test_zero_data(self, solver):
        data = BoundaryTrace("R", solver.t, np.zeros_like(solver.t))
        assert subdomain_dirichlet(solver.domain, "R", data, 0.1) == 0.0

    @given(st.floats(-3, 3), st.floats(-3, 3))
    @settings(max_examples=20)
    def test_linear_in_data(self, alpha, beta):
        sv = SchwarzSolver(0.35, resolution=3.0)
        rng = np.random.default_rng(1)
        f, g = rng.normal(size=(2, sv.n_nodes))
        z = np.array([0.0, 0.3j])
        def solve(v):
            return subdomain_dirichlet(sv.domain, "L", BoundaryTrace("L", sv.t, v), z)
        assert np.allclose(solve(alpha * f + beta * g), alpha * solve(f) + beta * solve(g), atol=1e-10)

    def test_rejects_wrong_side_and_exterior_points(self, solver):
        data = BoundaryTrace("L", solver.t, np.ones_like(solver.t))
        with pytest.raises(DomainError):
            subdomain_dirichlet(solver.domain, "R", data, 0.0)
        with pytest.raises(DomainError):
            subdomain_dirichlet(solver.domain, "L", data, -1 + R_SQRT2)

    def test_sinc_interpolation_hits_nodes(self, solver):
        data = BoundaryTrace("L", solver.t, np.cos(solver.t))
        assert np.allclose(data(solver.t[10:20]), np.cos(solver.t[10:20]), atol=1e-12)

    def test_trace_shape_mismatch(self):
        with pytest.raises(DomainError):
            BoundaryTrace("L", np.arange(3.0), np.arange(4.0))


class TestIteration:
    def test_reference_value(self):
        est = omega0(R_SQRT2, tol=1e-9)
        assert est.value == pytest.approx(0.483903, abs=1e-6)
        assert est.error_bound <= 1e-9

    def test_first_term_is_crescent_measure(self, solver):
        est = solver.run(1e-8)
        assert est.terms[0] == pytest.approx(1 / math.sqrt(2), abs=1e-13)

    def test_terms_alternate_and_shrink(self, solver):
        est = solver.run(1e-9)
        terms = np.array(est.terms)
        assert np.all((terms > 0) & (terms < 1))
        assert np.all(np.diff(terms) < 0)
        lo, hi = est.bracket
        partials = np.cumsum(terms[:-1] * (-1.0) ** np.arange(len(terms) - 1))
        assert lo <= partials[-1] <= hi

    def test_start_side_symmetry(self, solver):
        left = solver.run(1e-9, start="L")
        right = solver.run(1e-9, start="R")
        assert abs(left.value - right.value) <= 2 * max(left.error_bound, right.error_bound)

    def test_symmetric_domain_total_below_half(self):
        # omega_L + omega_R < 1 at 0 since the unit circle carries positive measure.
        for r in (0.2, 0.3, 0.4):
            assert 0 < omega0(r, 1e-9).value < 0.5

    def test_monotone_in_radius(self):
        values = [omega0(r, 1e-9).value for r in (0.05, 0.15, 0.25, 0.35, 0.45)]
        assert np.all(np.diff(values) > 0)

    def test_small_radius_tends_to_zero(self):
        assert omega0(0.01, 1e-10).value < 0.02

    def test_resolution_converged(self):
        a = omega0(0.3, 1e-11, resolution=7.0).value
        b = omega0(0.3, 1e-11, resolution=10.0).value
        assert a == pytest.approx(b, abs=1e-11)

    def test_convergence_csv(self, solver):
        est = solver.run(1e-6)
        lines = est.convergence_csv().strip().splitlines()
        assert lines[0] == "iteration,partial_sum,term"
        assert len(lines) == len(est.terms) + 1
        assert est.to_dict()["iterations"] == est.iterations

    def test_iteration_cap(self, solver):
        with pytest.raises(ConvergenceError):
            solver.run(1e-12, max_iter=2)

    def test_bad_tolerance(self, solver):
        with pytest.raises(DomainError):
            solver.run(0.0)
