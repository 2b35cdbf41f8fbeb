"""Catalog of the known deformation types and their wall-divisor data.

Each type carries the finite list of (square, divisibility) profiles
that characterize numerically exceptional classes, plus the expected
discriminant group of the full cohomology lattice.  K3 surfaces are the
degenerate n=1 member of the Hilbert-scheme family and get their own
entry with the classical profile (-2, 1).

Sign convention: for the generalized-Kummer family the square of the
wall divisor is taken as -2(n+1) (the value the cone computations use;
part of the literature states the same number with a positive sign for
a different normal form).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import InputFormatError, PreconditionError
from .lattice import Lattice, divisibility, is_primitive, norm, pairing


class Kind(Enum):
    K3 = "K3"
    K3N = "K3[n]"
    KUMN = "Kum[n]"
    OG6 = "OG6"
    OG10 = "OG10"


_NEEDS_N = (Kind.K3N, Kind.KUMN)


@dataclass(frozen=True)
class DeformationType:
    kind: Kind
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind in _NEEDS_N:
            if self.n is None or self.n < 2:
                raise InputFormatError(
                    "type %s requires the parameter n >= 2" % self.kind.value
                )
        elif self.n is not None:
            raise InputFormatError(
                "type %s does not take a parameter n" % self.kind.value
            )

    @property
    def tag(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class ExceptionalProfile:
    square: int
    div: int

    def __post_init__(self):
        if self.square >= 0 or self.div < 1:
            raise PreconditionError("profile needs square < 0 and div >= 1")


def parse_type(tag: str, n: Optional[int] = None) -> DeformationType:
    """Build a DeformationType from its input tag ("K3", "K3[n]", ...)."""
    for kind in Kind:
        if kind.value == tag:
            return DeformationType(kind, n)
    raise InputFormatError(
        "unknown type tag %r (expected one of %s)"
        % (tag, ", ".join(k.value for k in Kind))
    )


def profiles(t: DeformationType) -> tuple[ExceptionalProfile, ...]:
    """The (square, divisibility) profiles of numerically exceptional
    classes for the given deformation type."""
    if t.kind is Kind.K3:
        return (ExceptionalProfile(-2, 1),)
    if t.kind is Kind.OG10:
        return (ExceptionalProfile(-2, 1), ExceptionalProfile(-6, 3))
    if t.kind is Kind.OG6:
        return (ExceptionalProfile(-2, 2), ExceptionalProfile(-4, 2))
    if t.kind is Kind.K3N:
        m = t.n - 1
        return (ExceptionalProfile(-2 * m, m), ExceptionalProfile(-2 * m, 2 * m))
    m = t.n + 1
    return (ExceptionalProfile(-2 * m, m), ExceptionalProfile(-2 * m, 2 * m))


def expected_disc_group(t: DeformationType) -> tuple[int, ...]:
    """Invariant factors of the discriminant group of the full lattice."""
    if t.kind is Kind.K3:
        return ()
    if t.kind is Kind.OG10:
        return (3,)
    if t.kind is Kind.OG6:
        return (2, 2)
    if t.kind is Kind.K3N:
        return (2 * (t.n - 1),)
    return (2 * (t.n + 1),)


def embeds_two_hyperbolic_planes(t: DeformationType) -> bool:
    """Documentation flag: the full lattice of every catalog type splits
    off two hyperbolic planes, so Eichler's criterion applies there."""
    return True


def rlf_and_cone_flags(t: DeformationType) -> dict:
    """Known-results flags used by the cone analysis.

    For all catalog types the rational-Lagrangian-fibration statement is
    a theorem (not merely conjectural) and the positive part of the
    movable cone already generates the exceptional chamber decomposition.
    """
    return {"rlf_conjecture": True, "mov_plus_equals_mov_e": True}


def matches_profile(L: Lattice, t: DeformationType, v: Sequence[int]) -> bool:
    """Norm equals a profile square and the profile divisibility divides
    the divisibility computed in L.

    The catalog divisibilities are full-lattice invariants; inside the
    Picard lattice the pairing ideal can only shrink, so the computed
    divisibility is a positive multiple of the catalog value.
    """
    w = L.check_vector(v)
    s = norm(L, w)
    d = divisibility(L, w)
    return any(p.square == s and d % p.div == 0 for p in profiles(t))


def is_numerically_exceptional(
    L: Lattice, t: DeformationType, v: Sequence[int], ample: Sequence[int]
) -> bool:
    """Primitive, profile-matching, and strictly positive against ample."""
    a = L.check_vector(ample)
    if norm(L, a) <= 0:
        raise PreconditionError("ample class must have positive norm")
    w = L.check_vector(v)
    if all(x == 0 for x in w):
        return False
    if not is_primitive(L, w):
        return False
    if not matches_profile(L, t, w):
        return False
    return pairing(L, w, a) > 0
