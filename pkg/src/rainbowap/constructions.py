"""Generators for the explicit rainbow-AP-free colorings the toolkit verifies.

Four families:

* ``construct_interval4`` -- the equinumerous-or-near 4-colorings of [n]
  assembled from the blocks ABCC and DDAB, one per residue of n mod 8,
  plus two alternate forms for n = 8m+3 and n = 8m+4;
* ``construct_k`` -- the inductive k-coloring of [kn+r] that stacks a new
  top color on the (k-1)-color base, bottoming out at the 4-color family;
* ``construct_z24`` / ``tile`` -- the rainbow-free equinumerous 4-coloring
  of Z_24 defined by residue classes, and its block-repetition to Z_{24t};
* ``construct_pow3`` -- color i by its 3-adic valuation; uses
  floor(log3 n) + 1 colors and has no rainbow AP(3).
"""

from __future__ import annotations

from enum import Enum

from .core import Coloring, Topology, letter_index, make_coloring
from .errors import (
    InvalidRepeat,
    TooSmall,
    UnsupportedArity,
    UnsupportedTopology,
    VariantMismatch,
)

BLOCK_A = "ABCC"
BLOCK_B = "DDAB"

# residue of n mod 8 -> (prefix, suffix) around the ABCC^m DDAB^m middle
_DEFAULT_EDGES = {
    0: ("", ""),
    1: ("", "D"),
    2: ("", "DB"),
    3: ("", "DBA"),
    4: ("C", "DBA"),
    5: ("CC", "DBA"),
    6: ("BCC", "DBA"),
    7: ("ABCC", "DBA"),
}


class Variant(Enum):
    DEFAULT = "default"
    ALT41 = "alt41"   # C + middle + DB, valid for n = 8m+3
    STAR = "star"     # BAC + middle + D, valid for n = 8m+4


def construct_interval4(n: int, variant: Variant = Variant.DEFAULT) -> Coloring:
    """Rainbow-AP(4)-free 4-coloring of [n] for any n >= 8.

    Class sizes are floor(n/4) or ceil(n/4); all four are equal exactly
    when 4 divides n.
    """
    if n < 8:
        raise TooSmall(f"interval construction needs n >= 8, got {n}")
    m, r = divmod(n, 8)
    middle = BLOCK_A * m + BLOCK_B * m
    if variant is Variant.ALT41:
        if r != 3:
            raise VariantMismatch(f"alt41 needs n = 8m+3, got n={n}")
        text = "C" + middle + "DB"
    elif variant is Variant.STAR:
        if r != 4:
            raise VariantMismatch(f"star needs n = 8m+4, got n={n}")
        text = "BAC" + middle + "D"
    else:
        prefix, suffix = _DEFAULT_EDGES[r]
        text = prefix + middle + suffix
    return make_coloring(Topology.INTERVAL, 4, text)


def variants_for(n: int) -> list[Variant]:
    """All construction variants valid for this n."""
    out = [Variant.DEFAULT]
    if n % 8 == 3:
        out.append(Variant.ALT41)
    if n % 8 == 4:
        out.append(Variant.STAR)
    return out


def construct_k(k: int, n: int) -> Coloring:
    """Rainbow-AP(k)-free k-coloring of [n], k >= 4, n = k*q + r with q > 1.

    For k > 4 the top segment carries the new color: with n = k*q + r,
    the base is the (k-1)-coloring of [(k-1)q + r - 1] when r = k-1 and of
    [(k-1)q + r] otherwise, and everything above it gets color k-1. No such
    coloring exists for k = 3 (every equinumerous 3-coloring of [3q+r]
    contains a rainbow AP(3)).
    """
    if k < 4:
        raise UnsupportedArity(f"no rainbow-free construction exists for k={k}")
    q, r = divmod(n, k)
    if q <= 1:
        raise TooSmall(f"construction needs n >= 2k, got n={n} for k={k}")
    if k == 4:
        return construct_interval4(n)
    if r == k - 1:
        base = construct_k(k - 1, (k - 1) * q + r - 1)
    else:
        base = construct_k(k - 1, (k - 1) * q + r)
    top = (k - 1,) * (n - base.n)
    return Coloring(Topology.INTERVAL, k, base.assignment + top)


# Residue classes of the rainbow-free equinumerous 4-coloring of Z_24.
Z24_CLASSES = {
    "A": (3, 6, 9, 16, 18, 20),
    "B": (1, 8, 10, 12, 19, 22),
    "C": (5, 7, 13, 15, 21, 23),
    "D": (0, 2, 4, 11, 14, 17),
}


def construct_z24() -> Coloring:
    """The rainbow-AP(4)-free equinumerous proper 4-coloring of Z_24."""
    assignment = [0] * 24
    for letter, residues in Z24_CLASSES.items():
        for r in residues:
            assignment[r] = letter_index(letter)
    return Coloring(Topology.CYCLIC, 4, tuple(assignment))


def tile(c: Coloring, times: int) -> Coloring:
    """Repeat a cyclic coloring block-wise onto Z_{times * n}."""
    if c.topology is not Topology.CYCLIC:
        raise UnsupportedTopology("tiling is defined for cyclic colorings only")
    if times < 1:
        raise InvalidRepeat(f"repetition count must be >= 1, got {times}")
    return Coloring(Topology.CYCLIC, c.k, c.assignment * times)


def pow3_valuation(i: int) -> int:
    """Exponent of the largest power of three dividing i."""
    v = 0
    while i % 3 == 0:
        i //= 3
        v += 1
    return v


def floor_log3(n: int) -> int:
    """Largest e with 3**e <= n, computed exactly."""
    e = 0
    while 3 ** (e + 1) <= n:
        e += 1
    return e


def construct_pow3(n: int) -> Coloring:
    """Color each i in [n] by its 3-adic valuation.

    Uses floor(log3 n) + 1 colors and contains no rainbow AP(3): for an AP
    x, y, z we have x + z = 2y, the minimum valuation among x, z, 2y is
    attained at least twice, and v(2y) = v(y), so two terms share a color.
    """
    if n < 1:
        raise TooSmall(f"construction needs n >= 1, got {n}")
    assignment = tuple(pow3_valuation(i) for i in range(1, n + 1))
    return Coloring(Topology.INTERVAL, floor_log3(n) + 1, assignment)
