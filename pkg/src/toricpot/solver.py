"""Solutions of leading term systems over the torus of nonzero complexes.

The strategy ladder, in order of preference:

(a) triangular substitution — whenever some equation becomes univariate
    under the partial assignment, solve it by companion-matrix roots with
    multiplicity from root clustering;
(b) two-variable elimination by a numerically interpolated resultant;
(c) deterministic multistart Newton (heuristic; results are certified
    only through their residuals, completeness is not).

All variables range over nonzero complex numbers: zero roots are
discarded, and monomial factors are divided out during normalization.
Variables absent from every normalized equation are free; they are
reported as such and instantiated at 1.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .leading import Equation, LeadingSystem, leading_equations

RESIDUAL_TOL = 1e-9
DEDUP_TOL = 1e-6
ZERO_ROOT_TOL = 1e-9


@dataclass
class LeadingSolution:
    values: dict                  # variable label -> complex
    free: set                     # labels of free variables (value set to 1)
    multiplicity: Optional[int]   # None when unknown (heuristic path)
    residual: float

    def value_vector(self, labels):
        return [self.values[lab] for lab in labels]

    def to_dict(self) -> dict:
        return {
            "values": {
                f"Y{l}_{s}": [v.real, v.imag]
                for (l, s), v in sorted(self.values.items())},
            "free": sorted(f"Y{l}_{s}" for l, s in self.free),
            "multiplicity": self.multiplicity,
            "residual": self.residual,
        }


@dataclass
class SolveResult:
    solutions: list
    certified: bool
    path: str                     # letters of the ladder stages used

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


# -- polynomial plumbing over exponent-tuple dicts -------------------------


def _substitute(terms: dict, assignment: dict):
    """Fold assigned variables into coefficients; keys keep full length."""
    out: dict = {}
    for e, c in terms.items():
        value = complex(c)
        key = list(e)
        for j, v in assignment.items():
            if e[j] != 0:
                value *= v ** e[j]
                key[j] = 0
        key = tuple(key)
        out[key] = out.get(key, 0) + value
    return {e: c for e, c in out.items() if abs(c) > 1e-14}


def _variables_of(terms: dict):
    used = set()
    for e in terms:
        for j, p in enumerate(e):
            if p != 0:
                used.add(j)
    return used


def _clear_monomial(terms: dict):
    """Shift exponents so they are nonnegative with no common factor."""
    if not terms:
        return terms
    n = len(next(iter(terms)))
    shift = [min(e[j] for e in terms) for j in range(n)]
    return {tuple(p - s for p, s in zip(e, shift)): c
            for e, c in terms.items()}


def normalize(equations: Sequence[dict]):
    """Clear negative powers and monomial factors; drop zero equations.

    Returns (normalized equation list, set of variable indices appearing
    in none of them).
    """
    cleaned = []
    nvars = None
    for terms in equations:
        if terms:
            nvars = len(next(iter(terms)))
        cleared = _clear_monomial(dict(terms))
        if cleared:
            cleaned.append(cleared)
    if nvars is None:
        nvars = 0
    used = set()
    for terms in cleaned:
        used |= _variables_of(terms)
    free = set(range(nvars)) - used
    return cleaned, free


def _univariate_coeffs(terms: dict, j: int):
    """Coefficient array (descending degree) of a univariate equation."""
    cleared = _clear_monomial(terms)
    deg = max(e[j] for e in cleared)
    coeffs = [0j] * (deg + 1)
    for e, c in cleared.items():
        coeffs[deg - e[j]] += complex(c)
    return coeffs


def cluster_roots(roots, tol=DEDUP_TOL):
    """Group numerically coincident roots; returns (center, multiplicity)."""
    clusters = []
    for r in sorted(roots, key=lambda z: (round(z.real, 8), round(z.imag, 8))):
        for idx, (center, mult) in enumerate(clusters):
            if abs(r - center) < tol:
                clusters[idx] = ((center * mult + r) / (mult + 1), mult + 1)
                break
        else:
            clusters.append((r, 1))
    return clusters


def _poly_roots(coeffs):
    arr = np.array(coeffs, dtype=complex)
    arr = np.trim_zeros(arr, "f")
    if arr.size <= 1:
        return []
    return list(np.roots(arr))


# -- the ladder ------------------------------------------------------------


class _Search:
    def __init__(self, equations, nvars, tol):
        self.equations = equations
        self.nvars = nvars
        self.tol = tol
        self.solutions = []   # (assignment dict, multiplicity or None)
        self.certified = True
        self.paths = set()

    def run(self):
        self._branch({}, 1)
        return self

    def _branch(self, assignment, multiplicity):
        remaining = []
        for terms in self.equations:
            sub = _substitute(terms, assignment)
            varset = _variables_of(sub)
            if not varset:
                const = sum(sub.values())
                if abs(const) > self.tol:
                    return  # inconsistent branch, certified dead
                continue
            remaining.append((sub, varset))
        if not remaining:
            self.solutions.append((dict(assignment), multiplicity))
            return
        # stage (a): univariate equation available?
        univ = [(terms, varset) for terms, varset in remaining
                if len(varset) == 1]
        if univ:
            univ.sort(key=lambda tv: min(tv[1]))
            terms, varset = univ[0]
            j = next(iter(varset))
            self.paths.add("a")
            coeffs = _univariate_coeffs(terms, j)
            roots = [r for r in _poly_roots(coeffs)
                     if abs(r) > ZERO_ROOT_TOL]
            for center, mult in cluster_roots(roots):
                new_assignment = dict(assignment)
                new_assignment[j] = center
                self._branch(new_assignment, multiplicity * mult)
            return
        active_vars = sorted(set().union(*(v for _, v in remaining)))
        if len(active_vars) == 2 and len(remaining) >= 2:
            self.paths.add("b")
            self._resultant_branch(assignment, multiplicity, remaining,
                                   active_vars)
            return
        # stage (c): heuristic multistart Newton
        self.paths.add("c")
        self.certified = False
        for point in _newton_multistart([t for t, _ in remaining],
                                        active_vars, self.tol):
            new_assignment = dict(assignment)
            new_assignment.update(point)
            self.solutions.append((new_assignment, None))

    def _resultant_branch(self, assignment, multiplicity, remaining, pair):
        x, y = pair
        f = _clear_monomial(remaining[0][0])
        g = _clear_monomial(remaining[1][0])
        for r, mult in _resultant_roots(f, g, x, y):
            if abs(r) <= ZERO_ROOT_TOL:
                continue
            new_assignment = dict(assignment)
            new_assignment[x] = r
            before = len(self.solutions)
            self._branch(new_assignment, multiplicity)
            # a repeated elimination root with a unique continuation is a
            # genuinely multiple solution of the pair
            if mult > 1 and len(self.solutions) == before + 1:
                sol, m = self.solutions[-1]
                if m is not None and m == multiplicity:
                    self.solutions[-1] = (sol, m * mult)


def _as_xy_poly(terms: dict, x: int, y: int):
    """Dense coefficient matrix c[i][j] of x^i y^j."""
    dx = max(e[x] for e in terms)
    dy = max(e[y] for e in terms)
    mat = np.zeros((dx + 1, dy + 1), dtype=complex)
    for e, c in terms.items():
        mat[e[x], e[y]] += complex(c)
    return mat


def _sylvester_det(fc, gc):
    """Determinant of the Sylvester matrix of two univariate coefficient
    arrays (ascending degree)."""
    fc = np.trim_zeros(np.array(fc, dtype=complex), "b")
    gc = np.trim_zeros(np.array(gc, dtype=complex), "b")
    m = fc.size - 1
    n = gc.size - 1
    if m < 0 or n < 0:
        return 0j
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    S = np.zeros((size, size), dtype=complex)
    for i in range(n):
        S[i, i:i + m + 1] = fc[::-1]
    for i in range(m):
        S[n + i, i:i + n + 1] = gc[::-1]
    return complex(np.linalg.det(S))


def _resultant_roots(f: dict, g: dict, x: int, y: int):
    """x-values where f and g share a y-root, via interpolated resultant."""
    fm = _as_xy_poly(f, x, y)
    gm = _as_xy_poly(g, x, y)
    dfx, dfy = fm.shape[0] - 1, fm.shape[1] - 1
    dgx, dgy = gm.shape[0] - 1, gm.shape[1] - 1
    deg_bound = dfx * dgy + dgx * dfy
    if deg_bound == 0:
        return []
    # sample the resultant on a circle and interpolate the polynomial in x
    npts = deg_bound + 1
    xs = np.exp(2j * np.pi * np.arange(npts) / npts) * 1.17
    vals = []
    for x0 in xs:
        fy = fm.T @ (x0 ** np.arange(dfx + 1))
        gy = gm.T @ (x0 ** np.arange(dgx + 1))
        vals.append(_sylvester_det(fy, gy))
    coeffs = np.fft.fft(np.array(vals) / npts)
    coeffs = coeffs * (1.17 ** -np.arange(npts))
    scale = np.max(np.abs(coeffs))
    if scale == 0:
        return []
    coeffs = np.where(np.abs(coeffs) > 1e-10 * scale, coeffs, 0)
    roots = _poly_roots(coeffs[::-1])
    return cluster_roots(roots)


def _newton_multistart(equations, active_vars, tol, max_starts=200):
    """Deterministic seeded Gauss-Newton over the remaining variables."""
    k = len(active_vars)
    radii = [0.5, 1.0, 2.0]
    phases = [cmath.exp(2j * cmath.pi * t / 8) for t in range(8)]
    seeds = itertools.islice(
        itertools.product(itertools.product(radii, phases), repeat=k),
        max_starts)
    found = []
    for seed in seeds:
        point = {j: r * p for j, (r, p) in zip(active_vars, seed)}
        refined = _gauss_newton(equations, active_vars, point, tol)
        if refined is None:
            continue
        if any(abs(v) <= ZERO_ROOT_TOL for v in refined.values()):
            continue
        if any(all(abs(refined[j] - prev[j]) < DEDUP_TOL for j in active_vars)
               for prev in found):
            continue
        found.append(refined)
    found.sort(key=lambda p: tuple((p[j].real, p[j].imag)
                                   for j in active_vars))
    return found


def _gauss_newton(equations, active_vars, point, tol, iters=60):
    idx = {j: t for t, j in enumerate(active_vars)}
    x = np.array([point[j] for j in active_vars], dtype=complex)
    for _ in range(iters):
        vals = np.zeros(len(equations), dtype=complex)
        jac = np.zeros((len(equations), len(active_vars)), dtype=complex)
        for r, terms in enumerate(equations):
            for e, c in terms.items():
                term = complex(c)
                for j in active_vars:
                    if e[j] != 0:
                        term *= x[idx[j]] ** e[j]
                vals[r] += term
                for j in active_vars:
                    if e[j] != 0:
                        jac[r, idx[j]] += term * e[j] / x[idx[j]]
        if np.max(np.abs(vals)) < tol * 1e-3:
            return {j: complex(x[idx[j]]) for j in active_vars}
        try:
            step, *_ = np.linalg.lstsq(jac, -vals, rcond=None)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        x = x + step
        if np.any(np.abs(x) < 1e-12):
            return None
    return None


# -- public API ------------------------------------------------------------


def solve_equations(equations: Sequence[dict], labels,
                    tol: float = RESIDUAL_TOL) -> SolveResult:
    """Solve a list of exponent-dict Laurent equations over (C\\{0})^n."""
    original = [dict(t) for t in equations]
    normalized, free_idx = normalize(equations)
    nvars = len(labels)
    search = _Search(normalized, nvars, tol).run()
    solutions = []
    for assignment, multiplicity in search.solutions:
        values = {}
        free = set()
        for j, lab in enumerate(labels):
            if j in assignment:
                values[lab] = assignment[j]
            else:
                values[lab] = 1.0 + 0j
                if j in free_idx:
                    free.add(lab)
        vec = {j: values[lab] for j, lab in enumerate(labels)}
        residual = max((abs(sum(_substitute(t, vec).values()))
                        for t in original), default=0.0)
        if residual > tol:
            continue
        solutions.append(LeadingSolution(values, free, multiplicity, residual))
    solutions.sort(key=lambda s: tuple((s.values[lab].real, s.values[lab].imag)
                                       for lab in labels))
    path = "".join(sorted(search.paths)) or "-"
    return SolveResult(solutions, search.certified, path)


def solve(system: LeadingSystem, tol: float = RESIDUAL_TOL) -> SolveResult:
    """Solve a leading term system in its cutoff variables."""
    labels = system.variables
    keep = [i for i, lab in enumerate(system.basis.labels)
            if lab[0] <= system.cutoff]
    projected = []
    for eq in system.equations:
        terms = {}
        for e, c in eq.terms.items():
            assert all(e[i] == 0 for i in range(len(e)) if i not in keep)
            terms[tuple(e[i] for i in keep)] = c
        projected.append(terms)
    return solve_equations(projected, labels, tol=tol)


def solve_partial(P, u, l0: int, coefficients=None,
                  tol: float = RESIDUAL_TOL) -> SolveResult:
    """Assemble and solve only the equations of levels up to ``l0``."""
    system = leading_equations(P, u, cutoff=l0, coefficients=coefficients)
    return solve(system, tol=tol)
