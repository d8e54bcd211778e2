"""Acceptance gate: nine end-to-end checks, one pass/fail line each.

Each test prints ``CRITERION n: PASS/FAIL`` directly to the terminal so
the gate status is visible regardless of output capture.
"""

import random
import time
from fractions import Fraction

from toricpot import (EXACT, FLOAT, INF, BulkDeformation, MomentPolytope,
                      Monomial, NovikovSeries, build_example, balanced_locus,
                      case_analysis_two_point, euler_check,
                      fano_bulk_potential, flag_basis, leading_equations,
                      leading_potential, level_structure, lift_bulk, scan,
                      solve, solution_to_torus)
from toricpot import lattice
from toricpot.errors import NotInLambda0P
from toricpot.leading import evaluate_equation


def _report(n, ok, elapsed, detail=""):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s)"
    if detail and not ok:
        line += f"  [{detail}]"
    print(line, flush=True)
    from conftest import record_gate_line
    record_gate_line(line)
    assert ok, detail


def test_criterion_1_cp1_residue_exact():
    t0 = time.monotonic()
    ok = True
    detail = ""
    P = build_example("cp1")
    locus = balanced_locus(scan(P, Fraction(1, 10)))
    ok &= locus == [(Fraction(1, 2),)]
    half = Fraction(1, 2)
    F = leading_potential(P, [half], mode=EXACT)
    pairings = {}
    for sign in (1, -1):
        y = [NovikovSeries.const(sign, mode=EXACT)]
        _, kv = F.gradient_residual(y)
        ok &= kv is INF
        hd = F.hessian(y)
        ok &= hd.matrix[0][0] == NovikovSeries.monomial(2 * sign, half,
                                                        mode=EXACT)
        expected = NovikovSeries.monomial(Fraction(sign, 2), -half,
                                          mode=EXACT)
        ok &= hd.residue_self_pairing == expected
        pairings[sign] = hd.residue_self_pairing
    identity = NovikovSeries.monomial(1, half, mode=EXACT) \
        * (pairings[1] - pairings[-1])
    ok &= identity == NovikovSeries.one(mode=EXACT)
    elapsed = time.monotonic() - t0
    _report(1, ok and elapsed < 1.0, elapsed, "exact residue data mismatch")


def test_criterion_2_blowup_leading_system_grid():
    t0 = time.monotonic()
    ok = True
    P = build_example("two_point_blowup", Fraction(2, 5), Fraction(3, 10))
    for k in range(61, 70):  # every 1/200 grid point in (3/10, 7/20)
        u = (Fraction(k, 200), Fraction(3, 10))
        system = leading_equations(P, u)
        terms = {eq.label: eq.terms for eq in system.equations}
        ok &= terms == {(1, 1): {(-2, 0): -1, (0, 0): 1},
                        (2, 1): {(0, 0): 1, (1, 0): 1}}
        result = solve(system)
        ok &= result.certified and len(result.solutions) == 1
        s = result.solutions[0]
        ok &= abs(s.values[(1, 1)] + 1) < 1e-9 and s.free == {(2, 1)}
    elapsed = time.monotonic() - t0
    _report(2, ok and elapsed < 5.0, elapsed, "grid system mismatch")


def test_criterion_3_case_analysis():
    t0 = time.monotonic()
    ok = True
    detail = []
    N = Fraction(2)

    def lifts_ok(report):
        good = True
        for s in report.solutions:
            if s.multiplicity == 1:
                rv = s.lift_residual_valuation
                good &= rv is INF or rv >= N
        return good

    reports = case_analysis_two_point(Fraction(2, 5), 1, Fraction(1, 100),
                                      N=N)
    cases = {r.case: r for r in reports}
    ok &= set(cases) == {1, 3}
    # Case 1 fiber from u1 = (1+alpha)/4 - kappa/2; the value 69/200
    ok &= cases[1].u == (Fraction(69, 200), Fraction(3, 10))
    ok &= len(cases[1].solutions) == 2 and lifts_ok(cases[1])
    ok &= cases[3].u == (Fraction(31, 100), Fraction(3, 10))
    ok &= len(cases[3].solutions) == 1 and lifts_ok(cases[3])

    reports = case_analysis_two_point(Fraction(2, 5), 1, Fraction(1, 10), N=N)
    ok &= [r.case for r in reports] == [2]
    r2 = reports[0]
    ok &= r2.u == (Fraction(1, 3), Fraction(3, 10))
    ok &= len(r2.solutions) == 3 and lifts_ok(r2)
    ok &= all(abs(s.d_bar ** 3 + 2) < 1e-9 for s in r2.solutions)

    reports = case_analysis_two_point(Fraction(2, 5), 1, Fraction(1, 30), N=N)
    ok &= [r.case for r in reports] == [4] and lifts_ok(reports[0])

    w = -float((27 / 2) ** (1 / 3))
    reports = case_analysis_two_point(Fraction(2, 5), w, Fraction(1, 30),
                                      N=N)
    r4 = reports[0]
    ok &= r4.case == 4 and r4.degenerate
    ok &= sorted(s.multiplicity for s in r4.solutions) == [1, 2]
    ok &= all(abs(s.d_bar ** 2 * (s.d_bar + w) + 2) < 1e-8
              for s in r4.solutions)
    elapsed = time.monotonic() - t0
    _report(3, ok and elapsed < 10.0, elapsed, "case analysis mismatch")


def test_criterion_4_degenerate_double_root():
    t0 = time.monotonic()
    ok = Fraction(-3, 4) ** 4 + Fraction(-3, 4) ** 3 == Fraction(-27, 256)
    P = build_example("one_point_blowup_monotone")
    u = (Fraction(1, 3), Fraction(1, 3))
    facet = next(i for i, f in enumerate(P.facets) if f.v == (0, 1))
    c = Fraction(-27, 256)
    result = solve(leading_equations(P, u, coefficients={facet: c}))
    ok &= result.certified
    double = [s for s in result.solutions if s.multiplicity == 2]
    ok &= len(double) == 1
    y = solution_to_torus(P, u, double[0])
    ok &= abs(y[0] + 0.75) < 1e-8
    bulk = BulkDeformation({facet: NovikovSeries.zero(mode=FLOAT)},
                           mode=FLOAT)
    F = fano_bulk_potential(P, u, bulk, trunc=Fraction(2))
    # scale the deformed facet term by the unit weight c
    terms = [(coeff.scale(complex(c)) if e == (0, 1) else coeff, e)
             for coeff, e in F.terms]
    from toricpot import PotentialFunction
    F = PotentialFunction(2, terms)
    hd = F.hessian([NovikovSeries.const(v, mode=FLOAT) for v in y])
    lead = abs(hd.det.terms[0][1]) if hd.det.terms else 0.0
    ok &= hd.degenerate or lead < 1e-8
    elapsed = time.monotonic() - t0
    _report(4, ok and elapsed < 1.0, elapsed, "double root data mismatch")


def test_criterion_5_generalized_system():
    t0 = time.monotonic()
    ok = True
    P = build_example("two_point_blowup", Fraction(2, 5), Fraction(3, 10))
    u = (Fraction(3, 10), Fraction(3, 10))
    facet = next(i for i, f in enumerate(P.facets) if f.v == (0, 1))
    for c in (Fraction(2), Fraction(-1), Fraction(1, 2)):
        result = solve(leading_equations(P, u, coefficients={facet: c}))
        ok &= result.certified and len(result.solutions) == 1
        s = result.solutions[0]
        vec = s.value_vector(sorted(s.values))
        ok &= abs(vec[0] - (1 - c)) < 1e-9 and abs(vec[1] + 1) < 1e-9
    result = solve(leading_equations(P, u, coefficients={facet: Fraction(1)}))
    ok &= result.certified and result.solutions == []
    elapsed = time.monotonic() - t0
    _report(5, ok and elapsed < 1.0, elapsed, "generalized system mismatch")


def test_criterion_6_lift_soundness_randomized():
    t0 = time.monotonic()
    ok = True
    detail = ""
    rng = random.Random("lift-soundness")
    N = Fraction(3)
    candidates = [(build_example("cpn", 2), (Fraction(1, 3), Fraction(1, 3))),
                  (build_example("one_point_blowup_monotone"),
                   (Fraction(1, 3), Fraction(1, 3)))]
    P2 = build_example("two_point_blowup", Fraction(2, 5), Fraction(3, 10))
    interval = [Fraction(k, d)
                for d in (200, 400) for k in range(int(d * 3 / 10) + 1,
                                                   int(d * 7 / 20) + 1)]
    for u1 in interval:
        candidates.append((P2, (u1, Fraction(3, 10))))
    rng.shuffle(candidates)
    done = 0
    for P, u in candidates:
        if done == 20:
            break
        result = solve(leading_equations(P, u))
        if not result.solutions:
            continue
        witness = rng.choice(result.solutions)
        bulk, y, cert = lift_bulk(P, u, witness, N)
        ok &= cert.congruences_checked
        ok &= cert.residual_valuation is INF or cert.residual_valuation >= N
        ok &= all(s < t for s, t in zip(cert.steps, cert.steps[1:]))
        # independent oracle: rebuild the potential and take the gradient
        F = fano_bulk_potential(P, u, bulk, trunc=N)
        yser = [NovikovSeries.const(c, mode=FLOAT) for c in y]
        residuals, _ = F.gradient_residual(yser)
        for r in residuals:
            for e, c in r.terms:
                if e < N and abs(c) > 1e-8:
                    ok = False
                    detail = f"residual {abs(c):.2e} at order {e} for u={u}"
        done += 1
    ok &= done == 20
    elapsed = time.monotonic() - t0
    _report(6, ok and elapsed < 60.0, elapsed,
            detail or f"completed {done}/20 lifts")


def test_criterion_7_algebra_suite():
    t0 = time.monotonic()
    rng = random.Random("algebra-suite")

    def rand_series(lo=-3):
        terms = []
        for _ in range(rng.randint(1, 5)):
            den = rng.randint(1, 6)
            e = Fraction(rng.randint(lo * den, 8 * den), den)
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            terms.append((e, c))
        return NovikovSeries(terms, mode=EXACT)

    failures = 0
    for _ in range(1000):
        a, b = rand_series(), rand_series()
        if not a.is_zero and not b.is_zero:
            if (a * b).valuation() != a.valuation() + b.valuation():
                failures += 1
        va, vb, vs = a.valuation(), b.valuation(), (a + b).valuation()
        if vs < min(va, vb) or (va != vb and vs != min(va, vb)):
            failures += 1
        unit = rand_series(lo=0) + NovikovSeries.one()
        if unit.is_unit():
            t = Fraction(5)
            prod = (unit * unit.inverse(trunc=t)).truncate(t)
            if prod != NovikovSeries.one().truncate(t):
                failures += 1
        t1 = Fraction(rng.randint(0, 12), rng.randint(1, 4))
        t2 = Fraction(rng.randint(0, 12), rng.randint(1, 4))
        if a.truncate(t1).truncate(t2) != a.truncate(min(t1, t2)):
            failures += 1
    elapsed = time.monotonic() - t0
    _report(7, failures == 0, elapsed, f"{failures} algebra failures")


def test_criterion_8_structural_suite():
    t0 = time.monotonic()
    ok = True
    detail = ""
    rng = random.Random("structural-suite")
    examples = [build_example("cp1"), build_example("cpn", 2),
                build_example("two_point_blowup", Fraction(2, 5),
                              Fraction(3, 10)),
                build_example("one_point_blowup_monotone")]

    def random_interior(P):
        for _ in range(100):
            u = tuple(Fraction(rng.randint(1, 39), 40) for _ in range(P.n))
            if P.is_interior(u):
                return u
        raise AssertionError("no interior point found")

    # flag property: unimodular rows, prefix spans matching the increments
    for P in examples:
        for _ in range(5):
            u = random_interior(P)
            ls = level_structure(P, u)
            if ls.K is None:
                continue
            fb = flag_basis(ls)
            ok &= abs(lattice.det([list(r) for r in fb.rows])) == 1
            count = 0
            for l in range(1, ls.K + 1):
                count += ls.d[l - 1]
                prefix = [list(r) for r in fb.rows[:count]]
                normals = [list(f) for j in range(l)
                           for _, f in ls.level(j + 1).members]
                ok &= lattice.rank(prefix) == count == lattice.rank(normals)

    # the leading system only sees the unit parts of the divisor weights
    for P in examples:
        u = random_interior(P)
        F0 = leading_potential(P, u, mode=FLOAT, trunc=2)
        entries = {i: NovikovSeries.monomial(
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            Fraction(rng.randint(1, 8), 20), mode=FLOAT)
            for i in range(len(P.facets)) if rng.random() < 0.7}
        Fb = fano_bulk_potential(P, u, BulkDeformation(entries, mode=FLOAT),
                                 trunc=2)
        for f in P.facets:
            ell = f.ell(u)
            c0 = F0.coefficient(f.v).coefficient(ell)
            cb = Fb.coefficient(f.v).coefficient(ell)
            ok &= abs(complex(c0) - complex(cb)) < 1e-10

    # reduction of a lifted critical point solves the leading system
    P2 = examples[2]
    u = (Fraction(13, 40), Fraction(3, 10))
    _, y, _ = lift_bulk(P2, u, [1, -1], Fraction(2))
    ls = level_structure(P2, u)
    fb = flag_basis(ls)
    values = []
    for row in fb.rows:
        val = 1.0 + 0j
        for c, p in zip(y, row):
            val *= c ** p
        values.append(val)
    for eq in leading_equations(P2, u).equations:
        ok &= abs(evaluate_equation(eq, values)) < 1e-8

    # facet variable valuations and nonnegative vertex decompositions
    for P in examples:
        u = random_interior(P)
        for f in P.facets:
            ok &= -f.lam + sum(a * b for a, b in zip(f.v, u)) == f.ell(u)
        for _ in range(10):
            exps = tuple(rng.randint(-2, 2) for _ in range(P.n))
            mono = Monomial(NovikovSeries.monomial(1, 3), exps)
            try:
                zx = P.monomial_to_z(mono)
            except NotInLambda0P:
                continue
            ok &= all(p >= 0 for p in zx.powers.values())
            back = P.z_expression_to_monomial(zx)
            ok &= back.expvec == mono.expvec and back.coeff == mono.coeff

    # Euler identity mod T^5 with random degree-two weights
    for P in examples:
        for _ in range(5):
            u = random_interior(P)
            entries = {i: NovikovSeries.monomial(
                complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                Fraction(rng.randint(1, 8), 20), mode=FLOAT)
                for i in range(len(P.facets)) if rng.random() < 0.7}
            equal, residual = euler_check(
                P, BulkDeformation(entries, mode=FLOAT), u, N=5)
            if not equal:
                ok = False
                detail = f"Euler residual {residual} on {P.name} at {u}"
    elapsed = time.monotonic() - t0
    _report(8, ok and elapsed < 30.0, elapsed,
            detail or "structural property violated")


def test_criterion_9_three_point_scan():
    t0 = time.monotonic()
    P2 = build_example("two_point_blowup", Fraction(2, 5), Fraction(3, 10))
    P3 = build_example("k_point_blowup", Fraction(2, 5), Fraction(1, 50))
    row = {2: Fraction(3, 10)}
    b2 = balanced_locus(scan(P2, Fraction(1, 40), row=row))
    b3 = balanced_locus(scan(P3, Fraction(1, 40), row=row))
    ok = b2 == b3 and len(b2) > 0
    elapsed = time.monotonic() - t0
    _report(9, ok and elapsed < 10.0, elapsed,
            f"balanced loci differ: {b2} vs {b3}")
