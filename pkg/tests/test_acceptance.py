"""Acceptance criteria 1-13, one pass/fail line each in the terminal summary.

Run with ``pytest tests/test_acceptance.py`` or directly as a script.
"""
import io
import json
import math
import random
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from omitted_values.cli import dispatch
from omitted_values.enumeration import exact_a0
from omitted_values.extremal import chocolate, mu, separating_length, t_for_length
from omitted_values.hyperbolic import aaa_lower_bound, ring_from
from omitted_values.lame import build_covering, verify_covering
from omitted_values.schwarz import omega0
from omitted_values.traces import conjecture_check
from omitted_values.words import (
    Syllable,
    Word,
    canonical_cyclic,
    entry_formulas,
    from_exponents,
    is_decreasing,
    parse_word,
    tau,
    to_matrix,
)

LOG_3_2R2 = math.log(3 + 2 * math.sqrt(2))


def record(n: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    assert code == 0, err.getvalue()
    return json.loads(out.getvalue())


def test_criterion_01_a0_two_one():
    t = time.perf_counter()
    res = cli_json("a0", "2", "1")
    dt = time.perf_counter() - t
    exact = math.exp(-math.pi**2 / LOG_3_2R2)
    ok = res["t_min"] == 6 and abs(res["a0"] - exact) < 1e-15 and abs(res["a0"] - 0.003701599) < 1e-8 and dt < 1
    record(1, ok, f"a0 2 1 -> t_min={res['t_min']}, A0={res['a0']:.10g} in {dt:.3f} s")


def test_criterion_02_small_pairs():
    want = {(3, 1): 10, (3, 2): 10, (4, 1): 14, (4, 3): 14}
    parts, ok = [], True
    for (n0, n1), t_min in want.items():
        t = time.perf_counter()
        res = cli_json("a0", str(n0), str(n1))
        dt = time.perf_counter() - t
        good = res["t_min"] == t_min and dt < 10
        if t_min == 14:
            good &= abs(res["a0"] - 0.023585) < 1e-5
        ok &= good
        parts.append(f"({n0},{n1}) t_min={res['t_min']} A0={res['a0']:.7f} {dt:.2f}s")
    record(2, ok, "; ".join(parts))


def test_criterion_03_symmetry_grid():
    t = time.perf_counter()
    bad = []
    count = 0
    for n0 in range(2, 7):
        for n1 in range(1, n0):
            base = exact_a0(n0, n1, reduce=False).t_min
            for other in ((n1, n0), (n0, n0 - n1)):
                count += 1
                if exact_a0(*other, reduce=False).t_min != base:
                    bad.append(((n0, n1), other))
    dt = time.perf_counter() - t
    record(3, not bad and dt < 300, f"{count} symmetric pairs by direct search, {len(bad)} mismatches, {dt:.1f} s")


def test_criterion_04_candidates():
    t = time.perf_counter()
    res = cli_json("candidates", "14")
    dt = time.perf_counter() - t
    want = {str(canonical_cyclic(w)) for w in ("A^2 B", "A^3 B", "A^4 B", "A^2 B A B", "A^2 B A B A B")}
    got = [r["word"] for r in res]
    ok = sorted(got) == sorted(want) and dt < 10
    record(4, ok, f"candidates 14 -> {got} in {dt:.2f} s")


def _random_word(rng: random.Random, max_syllables: int) -> Word:
    n = rng.randint(1, max_syllables)
    gen = rng.choice("AB")
    syl = []
    for _ in range(n):
        syl.append(Syllable(gen, rng.choice([-1, 1]) * rng.randint(1, 6)))
        gen = "B" if gen == "A" else "A"
    return Word(tuple(syl))


def _random_decreasing(rng: random.Random):
    while True:
        k = rng.randint(1, 4)
        ms = [rng.choice([-1, 1]) * rng.randint(1, 4) for _ in range(k)]
        ns = [rng.choice([-1, 1]) * rng.randint(1, 4) for _ in range(k)]
        m = to_matrix(Word(tuple(s for a, b in zip(ms, ns) for s in (Syllable("A", a), Syllable("B", b)))))
        if is_decreasing(m):
            return m


def test_criterion_05_property_suite():
    rng = random.Random(20240501)
    mod_bad = 0
    for _ in range(10_000):
        w = _random_word(rng, 10)
        m = to_matrix(w)
        # bc = 0 mod 4 forces ad = 1 mod 4, so a = d mod 4 with a odd.
        if m.trace % 4 != 2:
            mod_bad += 1
    entry_bad = 0
    for _ in range(200):
        k = rng.randint(1, 4)
        ms = [rng.choice([-1, 1]) * rng.randint(1, 6) for _ in range(k)]
        ns = [rng.choice([-1, 1]) * rng.randint(1, 6) for _ in range(k)]
        w = from_exponents(ms, ns)
        if entry_formulas(w) != to_matrix(w):
            entry_bad += 1
    decreasing_bad = 0
    gens = {}
    for _ in range(1000):
        x = _random_decreasing(rng)
        t = tau(x)
        if t < 0 or (t == 0 and abs(x.trace) != 2):
            decreasing_bad += 1
        m = rng.choice([-1, 1]) * rng.randint(1, 5)
        n = rng.choice([-1, 1]) * rng.randint(1, 5)
        key = (m, n)
        if key not in gens:
            gens[key] = to_matrix(parse_word(f"A^{m} B^{n}"))
        y = gens[key] @ x
        if not (is_decreasing(y) and tau(y) >= t and abs(y.trace) >= abs(x.trace) + t * (abs(m) + abs(n))):
            decreasing_bad += 1
    ok = mod_bad == entry_bad == decreasing_bad == 0
    record(
        5, ok,
        f"mod 4 failures {mod_bad}/10000, entry formula failures {entry_bad}/200, "
        f"decreasing-matrix failures {decreasing_bad}/1000",
    )


def test_criterion_06_conjecture():
    t = time.perf_counter()
    reps = [conjecture_check(k) for k in (1, 2, 3)]
    dt = time.perf_counter() - t
    ok = all(r.verified and r.sign_patterns_checked == 4**r.k for r in reps) and dt < 120
    record(6, ok, f"k=1..3 verified={[r.verified for r in reps]} in {dt:.2f} s")


def test_criterion_07_omega0():
    t = time.perf_counter()
    est = omega0(math.sqrt(2) - 1, 1e-7)
    dt = time.perf_counter() - t
    ok = abs(est.value - 0.483903) <= 1e-5 and est.error_bound <= 1e-6 and est.iterations <= 30 and dt < 30
    record(
        7, ok,
        f"omega0={est.value:.9f} bound={est.error_bound:.2e} iterations={est.iterations} in {dt:.2f} s",
    )


def test_criterion_08_mu_two_one():
    res = mu(2, 1)
    identity = abs(abs(res.q) - 2 * res.mu / (1 + res.mu**2))
    checks = {
        "mu": abs(res.mu - 0.0252896) <= 1e-6,
        "a": abs(res.a - 9.91706) <= 1e-4,
        "identity": identity <= 1e-12,
        "threshold": abs(res.threshold - 0.050546) <= 1e-5,
    }
    failed = [k for k, v in checks.items() if not v]
    record(
        8, not failed,
        f"mu={res.mu:.9f} a={res.a:.6f} (reference 9.91706) |q| identity {identity:.1e} "
        f"threshold={res.threshold:.7f}" + (f"; off: {failed}" if failed else ""),
    )


def test_criterion_09_table():
    reference = {(2, 1): 0.0252896, (3, 1): 0.0849241, (4, 1): 0.140571, (3, 2): 0.227417, (4, 3): 0.290697}
    t = time.perf_counter()
    rows = cli_json("--tol", "1e-10", "table-a5")
    dt = time.perf_counter() - t
    parts, off = [], []
    for row in rows:
        key = (row["m"], row["n"])
        diff = abs(row["mu"] - reference[key])
        parts.append(f"{key}={row['mu']:.6f}")
        if diff > 1e-4:
            off.append(f"{key} differs by {diff:.2e}")
    ok = not off and dt < 300
    record(9, ok, ", ".join(parts) + f" in {dt:.1f} s" + (f"; off: {off}" if off else ""))


def test_criterion_10_separating_length():
    ell = separating_length(mu(2, 1).mu)
    target = 2 * LOG_3_2R2
    worst = 0.0
    for length in (2.0, 3.0, 4.0, 5.0, 6.0):
        worst = max(worst, abs(separating_length(t_for_length(length)) - length) / length)
    ok = abs(ell - target) <= 1e-4 and worst <= 1e-7
    record(10, ok, f"length={ell:.10f} vs {target:.10f}; round trip relative error {worst:.1e}")


def test_criterion_11_chocolate():
    res = chocolate()
    s0_rel = abs(res.s0 - 1.054752e-4) / 1.054752e-4
    tstar_3 = float(f"{res.tstar_lower:.3g}") == float(f"{0.01450779:.3g}")
    tstar_4 = float(f"{res.tstar_lower:.4g}") == float(f"{0.01450779:.4g}")
    hs_ok = abs(res.hempel_smith_tstar - 0.0132889) <= 1e-5
    ok = s0_rel <= 1e-3 and tstar_3 and hs_ok
    warn = "" if tstar_4 else f"; warn: 4th digit of t* differs ({res.tstar_lower:.8f} vs 0.01450779)"
    record(
        11, ok,
        f"s0={res.s0:.7e} (relative offset {s0_rel:.2e}) t*>={res.tstar_lower:.8f} "
        f"explicit bound={res.hempel_smith_tstar:.7f}" + warn,
    )


def test_criterion_12_aaa():
    j = ring_from(trace=6).rho
    value = aaa_lower_bound(j, 3)
    a041 = exact_a0(4, 1).a0
    inter = aaa_lower_bound(a041, 5)
    ok = 0.005874 <= value <= 0.005877 and inter > 0.0310
    record(12, ok, f"AAA(J, 3)={value:.8f}, AAA(A0(4,1), 5)={inter:.6f}")


def test_criterion_13_lame():
    t = time.perf_counter()
    ev = build_covering(2, 1)
    sol, om = ev.lame, ev.rect.omega
    drift = max(abs(sol.wronskian(z) - 1) for z in (0.3, om, 0.5 + 1.0j, om + 2.0j, 0.1 + 3.1j))
    c, dc, s, ds = sol.at_i_pi(sol.lambda0)
    one = max(abs(c * ds - 1), abs(dc))
    c, dc, s, ds = sol.at_i_pi()
    half = abs(c * ds - 0.5)
    qm = abs(c * ds + dc * s)
    s0, spi, som = sol.sigma(0), sol.sigma(1j * math.pi), sol.sigma(om)
    sig_ok = abs(s0) < 1e-12 and abs(spi - 1j) < 1e-8 and abs(som - (3 - 2 * math.sqrt(2))) < 1e-3
    rep = verify_covering(ev)
    zero, unit = rep["checks"]["zero_at_minus_mu"], rep["checks"]["one_point_at_mu"]
    dt = time.perf_counter() - t
    ok = (
        drift < 1e-8 and one < 1e-8 and half < 1e-8 and qm < 1e-8 and sig_ok
        and zero["h_at_minus_mu"] < 1e-6 and zero["abs_derivative"] < 1e-5
        and unit["one_minus_h_at_mu"] < 1e-6
        and (zero["winding"], unit["winding"]) == (2, 1)
        and rep["passed"] and dt < 120
    )
    record(
        13, ok,
        f"Wronskian drift {drift:.1e}; conditions at i pi {one:.1e}/{half:.1e}/{qm:.1e}; "
        f"sigma(omega)={som.real:.10f}; |h(-mu)|={zero['h_at_minus_mu']:.1e} "
        f"|h'(-mu)|={zero['abs_derivative']:.1e} |1-h(mu)|={unit['one_minus_h_at_mu']:.1e} "
        f"windings=({zero['winding']},{unit['winding']}) in {dt:.1f} s",
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
