"""Shared helpers: random framework generators and independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from bipartite_rigidity.geometry import BipartiteFramework
from bipartite_rigidity.lp import ZERO, ONE


def random_framework(
    rng: random.Random,
    d_max: int = 3,
    nm_max: int = 12,
    coord_bound: int = 16,
) -> BipartiteFramework:
    """A random rational framework with both classes nonempty."""
    d = rng.randint(1, d_max)
    n = rng.randint(1, nm_max - 1)
    m = rng.randint(1, nm_max - n)

    def pt():
        return tuple(
            F(rng.randint(-coord_bound, coord_bound), rng.randint(1, coord_bound))
            for _ in range(d)
        )

    return BipartiteFramework(d, tuple(pt() for _ in range(n)), tuple(pt() for _ in range(m)))


def random_line_framework(rng: random.Random, n_max: int = 5) -> BipartiteFramework:
    """Distinct-point line framework with at least two vertices per class."""
    n = rng.randint(2, n_max)
    m = rng.randint(2, n_max)
    vals = rng.sample(range(-40, 41), n + m)
    return BipartiteFramework(
        1,
        tuple((F(v),) for v in vals[:n]),
        tuple((F(v),) for v in vals[n:]),
    )


def line_strictly_separable(fw: BipartiteFramework) -> bool:
    """Cut-pair oracle on the line: is one class inside an open interval
    that excludes the other class?  Candidate endpoints are midpoints of
    consecutive points plus sentinels beyond the extremes, so half-line
    splits are covered.
    """
    p_vals = [pt[0] for pt in fw.points_p]
    q_vals = [pt[0] for pt in fw.points_q]
    all_vals = sorted(p_vals + q_vals)
    cuts = [all_vals[0] - 1]
    cuts += [(a + b) / 2 for a, b in zip(all_vals, all_vals[1:])]
    cuts += [all_vals[-1] + 1]
    for i, j in combinations(range(len(cuts)), 2):
        a, b = cuts[i], cuts[j]
        if all(a < v < b for v in p_vals) and all(v < a or b < v for v in q_vals):
            return True
        if all(a < v < b for v in q_vals) and all(v < a or b < v for v in p_vals):
            return True
    return False


# -- brute-force LP oracle (vertex and ray enumeration) ----------------------


def _solve_support(rows, rhs, support):
    """Exact solution of the square-ish system restricted to a support.

    Returns the coefficient vector on the support when the columns are
    independent and the system is consistent, else None.
    """
    m = len(rows)
    k = len(support)
    aug = [[rows[i][j] for j in support] + [rhs[i]] for i in range(m)]
    rank = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(rank, m) if aug[r][col] != 0), None)
        if piv is None:
            return None  # dependent columns: skip, smaller support covers it
        aug[rank], aug[piv] = aug[piv], aug[rank]
        prow = aug[rank]
        pv = prow[col]
        aug[rank] = prow = [v / pv for v in prow]
        for r in range(m):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b if b else a for a, b in zip(aug[r], prow)]
        pivots.append((rank, col))
        rank += 1
    for r in range(rank, m):
        if aug[r][k] != 0:
            return None  # inconsistent
    sol = [ZERO] * k
    for r, c in pivots:
        sol[c] = aug[r][k]
    return sol


def _null_on_support(rows, support):
    """A nonzero null vector of the support columns when nullity is one."""
    m = len(rows)
    k = len(support)
    work = [[rows[i][j] for j in support] for i in range(m)]
    rank = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(rank, m) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        pv = prow[col]
        work[rank] = prow = [v / pv for v in prow]
        for r in range(m):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b if b else a for a, b in zip(work[r], prow)]
        pivots.append((rank, col))
        rank += 1
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(k) if c not in pivot_cols]
    if len(free) != 1:
        return None
    vec = [ZERO] * k
    vec[free[0]] = ONE
    for r, c in pivots:
        vec[c] = -work[r][free[0]]
    return vec


def oracle_lp(rows, rhs, objective=None):
    """Brute-force LP oracle for ``A x = b, x >= 0`` by enumeration.

    Feasibility comes from enumerating candidate extreme-point supports
    (independent columns, size at most the row count); unboundedness from
    enumerating candidate extreme rays of the recession cone.  Returns
    'infeasible', 'feasible', 'unbounded', or ('optimal', value).
    """
    m = len(rows)
    n = len(rows[0]) if rows else (len(objective) if objective else 0)
    rows = [[F(v) for v in row] for row in rows]
    rhs = [F(v) for v in rhs]
    best = None
    feasible = False
    if all(v == 0 for v in rhs):
        feasible = True
        best = ZERO if objective else None
    for size in range(1, m + 1):
        for support in combinations(range(n), size):
            sol = _solve_support(rows, rhs, support)
            if sol is None or any(v < 0 for v in sol):
                continue
            feasible = True
            if objective is not None:
                value = sum(
                    (F(objective[j]) * sol[k] for k, j in enumerate(support)),
                    ZERO,
                )
                if best is None or value > best:
                    best = value
    if not feasible:
        return "infeasible"
    if objective is None:
        return "feasible"
    for size in range(1, m + 2):
        for support in combinations(range(n), size):
            ray = _null_on_support(rows, support)
            if ray is None:
                continue
            if all(v <= 0 for v in ray):
                ray = [-v for v in ray]
            if any(v < 0 for v in ray) or all(v == 0 for v in ray):
                continue
            gain = sum(
                (F(objective[j]) * ray[k] for k, j in enumerate(support)), ZERO
            )
            if gain > 0:
                return "unbounded"
    return ("optimal", best)


@pytest.fixture
def rng():
    return random.Random(20240817)
