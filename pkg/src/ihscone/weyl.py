"""Reflections in negative-norm classes and the exceptional chamber.

The group generated by reflections in the numerically exceptional
classes acts on the positive cone; weyl_reduce moves a class into the
fundamental chamber (nonnegative pairing with every root) and
is_chamber_wall decides which root hyperplanes actually support facets
of that chamber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BoundExceededError,
    NonIntegralReflectionError,
    PreconditionError,
)
from .lattice import Lattice, Vec, gram_vec, norm, pairing
from .polyhedra import fm_satisfiable


@dataclass(frozen=True)
class Reflection:
    root: Vec
    root_norm: int

    @staticmethod
    def of(L: Lattice, root: Sequence[int]) -> "Reflection":
        r = L.check_vector(root)
        q = norm(L, r)
        if q == 0:
            raise PreconditionError("reflection root must not be isotropic")
        if q > 0:
            raise PreconditionError("reflection root must have negative norm, got %d" % q)
        return Reflection(r, q)


def reflect(L: Lattice, root: Sequence[int], v: Sequence[int]) -> Vec:
    """v - (2*pairing(root, v)/norm(root)) * root, checked integral."""
    ref = Reflection.of(L, root)
    w = L.check_vector(v)
    num = 2 * pairing(L, ref.root, w)
    if num % ref.root_norm != 0:
        raise NonIntegralReflectionError(
            "2*pairing(root, v) = %d is not divisible by norm(root) = %d"
            % (num, ref.root_norm)
        )
    c = num // ref.root_norm
    return tuple(w[i] - c * ref.root[i] for i in range(L.rank))


def reflection_is_integral(L: Lattice, t, root: Sequence[int]) -> bool:
    """True iff the reflection in root maps the whole lattice into itself,
    i.e. norm(root) divides 2*pairing(root, b) for every basis vector b.

    Roots matching a catalog profile of the type t always pass (their
    norm divides twice their divisibility); t is accepted to document
    that context and for signature parity with the callers.
    """
    ref = Reflection.of(L, root)
    return all(2 * x % ref.root_norm == 0 for x in gram_vec(L, ref.root))


@dataclass(frozen=True)
class ChamberReduction:
    representative: Vec
    word: tuple[Vec, ...]  # roots in the order applied
    steps: int


def weyl_reduce(
    L: Lattice, roots: Sequence[Sequence[int]], v: Sequence[int], max_steps: int = 10000
) -> ChamberReduction:
    """Reflect v until it pairs nonnegatively with every root.

    Pivot rule: the root of most negative pairing, ties broken by lowest
    index.  The recorded word, applied right-to-left to the
    representative, reconstructs the input.
    """
    rs = [L.check_vector(r) for r in roots]
    for i, r in enumerate(rs):
        if not reflection_is_integral(L, None, r):
            raise PreconditionError("root %d does not define an integral reflection" % i)
    cur = L.check_vector(v)
    if norm(L, cur) < 0:
        raise PreconditionError(
            "vector to reduce must lie in the closed positive cone, norm is %d"
            % norm(L, cur)
        )
    word: list[Vec] = []
    steps = 0
    while True:
        worst = None
        worst_val = 0
        for i, r in enumerate(rs):
            p = pairing(L, r, cur)
            if p < worst_val:
                worst, worst_val = i, p
        if worst is None:
            return ChamberReduction(cur, tuple(word), steps)
        if steps >= max_steps:
            raise BoundExceededError(
                "chamber reduction did not terminate within %d steps" % max_steps
            )
        cur = reflect(L, rs[worst], cur)
        word.append(rs[worst])
        steps += 1


def _proportional(a: Vec, b: Vec) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def is_chamber_wall(
    L: Lattice,
    roots: Sequence[Sequence[int]],
    candidate: Sequence[int],
    ample: Sequence[int],
    rank_limit: int = 8,
) -> bool:
    """Does the candidate's orthogonal hyperplane support a facet of the
    fundamental chamber?

    Decided exactly by Fourier-Motzkin elimination on the strict system

        pairing(x, candidate) = 0,
        pairing(x, r) > 0   for every other non-proportional root r,
        pairing(x, ample) > 0.

    The last inequality is the linear stand-in for membership in the
    positive cone on the ample side; every genuine facet point satisfies
    it, and at rank 2 the two conditions agree outright.
    """
    if L.rank > rank_limit:
        raise BoundExceededError(
            "wall test limited to rank <= %d, lattice has rank %d" % (rank_limit, L.rank)
        )
    c = L.check_vector(candidate)
    rs = [L.check_vector(r) for r in roots]
    if not any(r == c for r in rs):
        raise PreconditionError("candidate must be one of the roots")
    a = L.check_vector(ample)
    n = L.rank
    eq = [Fraction(x) for x in gram_vec(L, c)]
    k = next(i for i in range(n) if eq[i] != 0)
    strict_rows = [gram_vec(L, r) for r in rs if not _proportional(r, c)]
    strict_rows.append(gram_vec(L, a))

    def substitute(row) -> tuple[Fraction, ...]:
        # solve the equality for x_k and drop that variable
        rk = Fraction(row[k])
        return tuple(
            Fraction(row[j]) - rk * eq[j] / eq[k] for j in range(n) if j != k
        )

    system = [(substitute(row), Fraction(0), True) for row in strict_rows]
    return fm_satisfiable(system, n - 1)
