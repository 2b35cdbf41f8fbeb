"""Exact rational polyhedral-cone routines: Fourier-Motzkin feasibility
and double description at small rank.

Rows are plain tuples of Fractions; nothing here knows about lattices or
bilinear forms.  Intended scale is rank <= 8 with a few dozen
constraints, where the textbook algorithms stay comfortably exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

FrVec = tuple[Fraction, ...]

# an affine constraint: coeffs . x + const  (> 0 if strict else >= 0)
Constraint = tuple[FrVec, Fraction, bool]


def _canon_constraint(c: Constraint) -> Constraint:
    coeffs, const, strict = c
    nums = [x.numerator for x in coeffs] + [const.numerator]
    dens = [x.denominator for x in coeffs] + [const.denominator]
    scale = Fraction(lcm(*dens), gcd(*nums) or 1)
    return (tuple(x * scale for x in coeffs), const * scale, strict)


def fm_satisfiable(rows: Iterable[Constraint], nvars: int) -> bool:
    """Decide whether a system of affine (in)equalities has a solution.

    Classic Fourier-Motzkin elimination over the rationals; strictness
    propagates through combinations (sum of a strict and a weak
    inequality is strict).
    """
    cur = [(tuple(Fraction(x) for x in co), Fraction(k), bool(s)) for co, k, s in rows]
    for var in range(nvars):
        pos, neg, zero = [], [], []
        for co, k, s in cur:
            c = co[var]
            if c > 0:
                pos.append((co, k, s))
            elif c < 0:
                neg.append((co, k, s))
            else:
                zero.append((co, k, s))
        nxt = list(zero)
        for pco, pk, ps in pos:
            for nco, nk, ns in neg:
                a, b = pco[var], -nco[var]
                co = tuple(b * pco[j] + a * nco[j] for j in range(nvars))
                nxt.append((co, b * pk + a * nk, ps or ns))
        seen = set()
        cur = []
        for c in nxt:
            cc = _canon_constraint(c)
            if cc not in seen:
                seen.add(cc)
                cur.append(cc)
    for co, k, s in cur:
        if k < 0 or (k == 0 and s):
            return False
    return True


def rref(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(rows: Sequence[Sequence[Fraction]], n: int) -> list[FrVec]:
    """Basis of {x in Q^n : row . x = 0 for every row}."""
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def canonical_ray(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the same ray (direction preserved)."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector spans no ray")
    mult = lcm(*(x.denominator for x in fr))
    ints = [int(x * mult) for x in fr]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def _rank(rows: list[Sequence[Fraction]]) -> int:
    return len(rref(rows)[0])


def dd_generators(ineq_rows: Sequence[Sequence[Fraction]], n: int):
    """Generators of the cone {x in R^n : a . x >= 0 for each row a}.

    Returns (lineality_basis, extreme_rays), both lists of primitive
    integer tuples; the cone is the set of lineality combinations plus
    nonnegative ray combinations.  Motzkin's double description with an
    extremality prune (a ray is extreme iff its tight constraints have
    rank dim-1) after each insertion.
    """
    rows = [tuple(Fraction(x) for x in r) for r in ineq_rows]
    rows = [r for r in rows if any(x != 0 for x in r)]
    lin = kernel_basis(rows, n)
    if not rows:
        return [canonical_ray(b) for b in lin], []
    # complement coordinates: standard basis vectors at the pivot columns
    _, pivots = rref(rows)
    r = len(pivots)
    # reduced constraint matrix B: column j of B is A . e_{pivots[j]}
    B = [tuple(row[p] for p in pivots) for row in rows]

    # initial simplicial cone from r independent reduced rows
    chosen: list[int] = []
    for i in range(len(B)):
        if _rank([B[j] for j in chosen] + [B[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == r:
                break
    M = [B[i] for i in chosen]
    inv = invert_matrix(M)
    rays = [tuple(inv[i][j] for i in range(r)) for j in range(r)]  # columns
    processed = list(chosen)

    def extreme(ray, constraint_ids) -> bool:
        tight = [B[i] for i in constraint_ids if _dot(B[i], ray) == 0]
        return _rank(tight) >= r - 1

    for i in range(len(B)):
        if i in processed:
            continue
        row = B[i]
        vals = [_dot(row, u) for u in rays]
        keep = [u for u, v in zip(rays, vals) if v >= 0]
        new = []
        for up, vp in zip(rays, vals):
            if vp <= 0:
                continue
            for un, vn in zip(rays, vals):
                if vn >= 0:
                    continue
                cand = tuple(vp * un[j] - vn * up[j] for j in range(r))
                new.append(cand)
        processed.append(i)
        merged = keep + new
        rays = []
        seen = set()
        for u in merged:
            if all(x == 0 for x in u):
                continue
            cu = canonical_ray(u)
            if cu in seen:
                continue
            if extreme(cu, processed):
                seen.add(cu)
                rays.append(cu)
    # lift back to R^n
    lifted = []
    for u in rays:
        x = [Fraction(0)] * n
        for j, p in enumerate(pivots):
            x[p] = Fraction(u[j])
        lifted.append(canonical_ray(x))
    return [canonical_ray(b) for b in lin], lifted


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def invert_matrix(m):
    """Exact inverse of a square matrix over the rationals."""
    n = len(m)
    aug = [list(map(Fraction, m[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def same_ray_set(a: Iterable[Sequence[int]], b: Iterable[Sequence[int]]) -> bool:
    return sorted(canonical_ray(v) for v in a) == sorted(canonical_ray(v) for v in b)
