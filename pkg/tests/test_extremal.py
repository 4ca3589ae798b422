import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omitted_values.errors import DomainError
from omitted_values.extremal import (
    A5_ROWS,
    chocolate,
    hempel_smith_tstar,
    mu,
    mu_from_omega0,
    mu_p,
    r_from_product,
    separating_length,
    t_for_length,
    table_a5,
    table_a5_csv,
    two_point_admissible,
)


@pytest.fixture(scope="module")
def mu21():
    return mu(2, 1)


class TestChain:
    def test_radius(self):
        assert r_from_product(2) == pytest.approx(math.sqrt(2) - 1, rel=1e-15)
        assert r_from_product(4) == pytest.approx(1 / 3, rel=1e-15)
        with pytest.raises(DomainError):
            r_from_product(0.5)

    def test_chain_against_direct_formula(self):
        w = 0.3
        x = math.cos(math.pi * w)
        a = (x + 1 / x) / 2
        q = -a + math.sqrt(a * a - 1)
        chain = mu_from_omega0(w)
        assert chain.a == pytest.approx(a, rel=1e-14)
        assert chain.q == pytest.approx(q, rel=1e-13)
        assert chain.mu == pytest.approx((-1 + math.sqrt(1 - q * q)) / q, rel=1e-12)

    @given(st.floats(0.01, 0.4999))
    def test_q_identity(self, w):
        chain = mu_from_omega0(w)
        assert abs(abs(chain.q) - 2 * abs(chain.mu) / (1 + chain.mu**2)) <= 1e-12 * abs(chain.q)

    def test_precision_near_half(self):
        # In double precision mu would lose about half its digits here.
        w = 0.5 - 1e-9
        with mpmath.workdps(50):
            x = mpmath.sin(mpmath.pi * mpmath.mpf(1e-9))
            a = (x + 1 / x) / 2
            q = -a + mpmath.sqrt(a * a - 1)
            ref = float((-1 + mpmath.sqrt(1 - q * q)) / q)
        assert mu_from_omega0(w).mu == pytest.approx(ref, rel=1e-12)

    @pytest.mark.parametrize("w,digits", [(0.0, 30), (0.5, 30), (0.3, 10)])
    def test_domain(self, w, digits):
        with pytest.raises(DomainError):
            mu_from_omega0(w, digits)


class TestMu:
    def test_two_one(self, mu21):
        assert mu21.mu == pytest.approx(0.0252896, abs=1e-6)
        assert mu21.omega0.value == pytest.approx(0.483903, abs=1e-6)
        assert mu21.threshold == pytest.approx(0.050546, abs=2e-6)
        assert abs(mu21.q) == pytest.approx(mu21.threshold, rel=1e-12)

    def test_depends_on_product_only(self):
        assert mu(4, 1).mu == mu_p(4).mu
        assert mu(2, 3).mu == mu(3, 2).mu

    def test_monotone_in_product(self):
        values = [mu_p(p).mu for p in (1.5, 2, 3, 5, 8)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_invalid(self):
        for m, n in [(1, 1), (0, 2), (2, -1)]:
            with pytest.raises(DomainError):
                mu(m, n)
        with pytest.raises(DomainError):
            mu_p(1.0)

    def test_dense_solver_limit(self):
        with pytest.raises(DomainError):
            mu_p(1.0001)

    def test_table(self):
        rows = table_a5(extra=[(5, 1)])
        assert [(r.m, r.n) for r in rows] == list(A5_ROWS) + [(5, 1)]
        text = table_a5_csv(rows)
        lines = text.strip().splitlines()
        assert lines[0] == "m,n,p,r,omega0,a,mu"
        assert lines[1].startswith("2,1,2,")
        assert len(lines) == 7


class TestLength:
    def test_trace_ten_radius(self):
        # p = 3 corresponds to trace 2(2p - 1) = 10.
        t = mu(3, 1).mu
        assert separating_length(t) == pytest.approx(2 * math.acosh(5), rel=1e-8)

    def test_two_one(self, mu21):
        assert separating_length(mu21.mu) == pytest.approx(2 * math.acosh(3), rel=1e-8)

    @pytest.mark.parametrize("ell", [2.0, 3.0, 4.0, 5.0])
    def test_round_trip(self, ell):
        assert separating_length(t_for_length(ell)) == pytest.approx(ell, rel=1e-8)

    @given(st.floats(0.002, 0.3), st.floats(0.01, 0.2))
    @settings(max_examples=10)
    def test_monotone(self, t, dt):
        if t + dt < 0.35:
            assert separating_length(t) < separating_length(t + dt)

    def test_domain(self):
        with pytest.raises(DomainError):
            separating_length(0.0)
        with pytest.raises(DomainError):
            t_for_length(-1.0)


class TestChocolate:
    def test_invariants(self):
        res = chocolate()
        assert res.p == pytest.approx((1 + math.sqrt(2)) / 2)
        assert res.tstar_lower == pytest.approx(math.sqrt(2 * res.s0 / (1 + res.s0**2)), rel=1e-15)
        t2 = res.tstar_lower**2
        assert res.delta_star_upper == pytest.approx((1 - t2) / (1 + t2), rel=1e-15)
        assert res.tstar_lower > res.hempel_smith_tstar
        assert res.tstar_lower == pytest.approx(0.01448, abs=1e-5)

    def test_s0_has_requested_length(self):
        res = chocolate()
        assert separating_length(res.s0) == pytest.approx(math.log(3 + 2 * math.sqrt(2)), rel=1e-7)

    def test_hempel_smith(self):
        t = hempel_smith_tstar()
        assert t == pytest.approx(0.0132889, abs=1e-6)
        r = t * t
        big_l = math.log(16 * math.sqrt(1 - r) / r)
        ell = 2 * math.pi**2 / (big_l - math.pi**2 / (4 * big_l))
        assert ell == pytest.approx(math.log(3 + 2 * math.sqrt(2)), rel=1e-12)


class TestTwoPoint:
    def test_boundary_pair(self, mu21):
        out = two_point_admissible(-mu21.mu, mu21.mu, mu21.mu)
        assert out["admissible_holomorphic"] and not out["admissible_rational"]

    def test_far_and_near(self, mu21):
        far = two_point_admissible(0.0, 0.5, mu21.mu)
        near = two_point_admissible(0.0, 0.01, mu21.mu)
        assert far["admissible_rational"] and far["admissible_holomorphic"]
        assert not near["admissible_holomorphic"]

    def test_moebius_invariant(self, mu21):
        a, b, c = 0.1 + 0.2j, -0.3j, 0.4 - 0.1j
        def phi(z):
            return (z - c) / (1 - c.conjugate() * z)
        d1 = two_point_admissible(a, b, mu21.mu)["pseudo_dist"]
        d2 = two_point_admissible(phi(a), phi(b), mu21.mu)["pseudo_dist"]
        assert d1 == pytest.approx(d2, rel=1e-13)

    def test_default_mu(self):
        assert two_point_admissible(0, 0.2)["threshold"] == pytest.approx(0.050546, abs=2e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            two_point_admissible(1.0, 0.0, 0.02)
