"""Colorings of [n] and Z_n: AP enumeration, rainbow detection, symmetries.

Conventions used everywhere in the package:

* interval positions are 1..n, cyclic positions are residues 0..n-1;
* the embedding of [n] into Z_n is i -> i mod n, so position n lands on
  residue 0 (see :func:`to_cyclic`);
* colors are integer indices 0..k-1, displayed as letters 'A', 'B', ...;
* a cyclic AP is admissible only if its length residues are pairwise
  distinct, i.e. n / gcd(n, d) >= length.

All values here are immutable and all operations are pure functions, so
everything is safe to use from multiple threads without locking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterator, Sequence

from .errors import (
    InvalidArity,
    InvalidColorLetter,
    InvalidDifference,
    NotDistinct,
    NotInvertible,
    OutOfRange,
    UnsupportedTopology,
)


class Topology(Enum):
    INTERVAL = "interval"
    CYCLIC = "cyclic"


class BalanceClass(Enum):
    """How evenly the color classes split n, strongest class first."""

    EQUINUMEROUS = "equinumerous"          # all class sizes equal
    NEAR_EQUINUMEROUS = "near_equinumerous"  # max - min <= 1
    BALANCED = "balanced"                  # every class >= floor(n/k)
    UNBALANCED = "unbalanced"


def color_letter(index: int) -> str:
    return chr(ord("A") + index)


def letter_index(letter: str) -> int:
    return ord(letter) - ord("A")


@dataclass(frozen=True)
class Coloring:
    """Total assignment of one of k colors to each point of [n] or Z_n."""

    topology: Topology
    k: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise InvalidArity(f"k must be >= 1, got {self.k}")
        if len(self.assignment) < 1:
            raise InvalidColorLetter("coloring must assign at least one position")
        for pos, c in enumerate(self.assignment):
            if not 0 <= c < self.k:
                raise InvalidColorLetter(
                    f"color index {c} at position {pos + 1} out of range for k={self.k}"
                )

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def letters(self) -> str:
        return "".join(color_letter(c) for c in self.assignment)

    def color_at(self, position: int) -> int:
        """Color at an interval position 1..n or a cyclic residue."""
        if self.topology is Topology.CYCLIC:
            return self.assignment[position % self.n]
        if not 1 <= position <= self.n:
            raise OutOfRange(f"position {position} outside [{self.n}]")
        return self.assignment[position - 1]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "topology": self.topology.value,
            "colors": self.letters,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def coloring_from_json_dict(data: dict) -> Coloring:
    try:
        topology = Topology(data["topology"])
        k = int(data["k"])
        colors = data["colors"]
        n = int(data["n"])
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidColorLetter(f"malformed coloring JSON: {exc}") from exc
    if n != len(colors):
        raise InvalidColorLetter(
            f"coloring JSON declares n={n} but has {len(colors)} colors"
        )
    return make_coloring(topology, k, colors)


@dataclass(frozen=True)
class APSpec:
    """A length-term AP with start position and common difference d."""

    start: int
    d: int
    length: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidDifference(f"common difference must be >= 1, got {self.d}")
        if self.length < 3:
            raise ValueError(f"AP length must be >= 3, got {self.length}")


@dataclass(frozen=True)
class APWitness:
    """A rainbow AP: its spec, resolved positions, and color letters."""

    spec: APSpec
    elements: tuple[int, ...]
    colors: str

    def to_json_dict(self) -> dict:
        return {
            "start": self.spec.start,
            "d": self.spec.d,
            "elements": list(self.elements),
            "colors": self.colors,
        }


def make_coloring(topology: Topology, k: int, letters: str) -> Coloring:
    """Parse a line of uppercase letters into a coloring."""
    if k < 1:
        raise InvalidArity(f"k must be >= 1, got {k}")
    if not letters:
        raise InvalidColorLetter("coloring text is empty")
    assignment = []
    for pos, ch in enumerate(letters, start=1):
        idx = letter_index(ch)
        if not 0 <= idx < k:
            raise InvalidColorLetter(
                f"character {ch!r} at position {pos} out of range for k={k} "
                f"(expected 'A'..{color_letter(k - 1)!r})"
            )
        assignment.append(idx)
    return Coloring(topology, k, tuple(assignment))


def color_counts(c: Coloring) -> dict[int, int]:
    """Class sizes for every color index 0..k-1 (unused colors report 0)."""
    counts = {i: 0 for i in range(c.k)}
    for v in c.assignment:
        counts[v] += 1
    return counts


def classify_balance(c: Coloring) -> BalanceClass:
    """Strongest balance class that holds for the coloring."""
    sizes = list(color_counts(c).values())
    lo, hi = min(sizes), max(sizes)
    if lo == hi:
        return BalanceClass.EQUINUMEROUS
    if hi - lo <= 1:
        return BalanceClass.NEAR_EQUINUMEROUS
    if lo >= c.n // c.k:
        return BalanceClass.BALANCED
    return BalanceClass.UNBALANCED


def is_recessive(c: Coloring, color: int) -> bool:
    """True iff no two adjacent positions both carry `color`.

    Adjacency includes the n -> 1 wrap on cyclic colorings (for n = 1 the
    single residue is its own cyclic neighbour).
    """
    a = c.assignment
    n = c.n
    for i in range(n - 1):
        if a[i] == color and a[i + 1] == color:
            return False
    if c.topology is Topology.CYCLIC and a[n - 1] == color and a[0] == color:
        return False
    return True


def ap_members(n: int, topology: Topology, spec: APSpec) -> list[int]:
    """Resolve an AP spec to its position list under the given topology.

    Raises OutOfRange when an interval AP overruns n, and NotDistinct when
    a cyclic AP revisits a residue (n / gcd(n, d) < length).
    """
    if topology is Topology.INTERVAL:
        last = spec.start + (spec.length - 1) * spec.d
        if spec.start < 1 or last > n:
            raise OutOfRange(
                f"AP start={spec.start} d={spec.d} len={spec.length} leaves [{n}]"
            )
        return [spec.start + t * spec.d for t in range(spec.length)]
    if n // gcd(n, spec.d) < spec.length:
        raise NotDistinct(
            f"AP d={spec.d} in Z_{n} has only {n // gcd(n, spec.d)} distinct members"
        )
    return [(spec.start + t * spec.d) % n for t in range(spec.length)]


def iter_ap_specs(n: int, topology: Topology, length: int) -> Iterator[APSpec]:
    """All valid AP specs in canonical (d, start) order."""
    if length < 3:
        raise ValueError(f"AP length must be >= 3, got {length}")
    if topology is Topology.INTERVAL:
        for d in range(1, (n - 1) // (length - 1) + 1):
            for start in range(1, n - (length - 1) * d + 1):
                yield APSpec(start, d, length)
    else:
        for d in range(1, n):
            if n // gcd(n, d) < length:
                continue
            for start in range(n):
                yield APSpec(start, d, length)


def _witness(c: Coloring, spec: APSpec) -> APWitness | None:
    elements = ap_members(c.n, c.topology, spec)
    offset = 1 if c.topology is Topology.INTERVAL else 0
    colors = [c.assignment[e - offset] for e in elements]
    if len(set(colors)) != spec.length:
        return None
    return APWitness(spec, tuple(elements), "".join(color_letter(v) for v in colors))


def find_rainbow_ap(c: Coloring, length: int) -> APWitness | None:
    """First rainbow AP in (d, start) order, or None if the coloring is free."""
    for spec in iter_ap_specs(c.n, c.topology, length):
        w = _witness(c, spec)
        if w is not None:
            return w
    return None


def enumerate_rainbow_aps(c: Coloring, length: int) -> list[APWitness]:
    """All rainbow APs in canonical (d, start) order.

    On cyclic colorings the list is closed under the reversal d -> n - d,
    since reversing an AP preserves both membership and colors.
    """
    out = []
    for spec in iter_ap_specs(c.n, c.topology, length):
        w = _witness(c, spec)
        if w is not None:
            out.append(w)
    return out


def apply_affine(c: Coloring, a: int, b: int, sigma: Sequence[int]) -> Coloring:
    """Push a cyclic coloring through x -> a*x + b composed with a color permutation.

    Output position a*x + b (mod n) carries sigma[color of x]. Requires
    gcd(a, n) = 1 so the map is a bijection on Z_n.
    """
    if c.topology is not Topology.CYCLIC:
        raise UnsupportedTopology("affine maps act on cyclic colorings only")
    n = c.n
    if gcd(a % n if n > 1 else 1, n) != 1:
        raise NotInvertible(f"multiplier {a} is not a unit mod {n}")
    if sorted(sigma) != list(range(c.k)):
        raise ValueError(f"sigma must be a permutation of 0..{c.k - 1}")
    out = [0] * n
    for x, v in enumerate(c.assignment):
        out[(a * x + b) % n] = sigma[v]
    return Coloring(Topology.CYCLIC, c.k, tuple(out))


def relabel_first_occurrence(assignment: Sequence[int]) -> tuple[int, ...]:
    """Relabel colors so first occurrences appear in increasing order.

    This is the lexicographically least image of the assignment under all
    color permutations.
    """
    remap: dict[int, int] = {}
    out = []
    for v in assignment:
        if v not in remap:
            remap[v] = len(remap)
        out.append(remap[v])
    return tuple(out)


def units(n: int) -> list[int]:
    """Multiplicative units of Z_n (for n = 1 the identity alone)."""
    if n == 1:
        return [1]
    return [a for a in range(1, n) if gcd(a, n) == 1]


def canonical_form(c: Coloring) -> Coloring:
    """Lexicographically least member of the coloring's symmetry orbit.

    Cyclic orbits are taken under the full affine group x -> a*x + b with
    gcd(a, n) = 1 (a superset of rotation plus reversal; affine maps send
    distinct-member APs to distinct-member APs) composed with color
    permutations. Interval orbits use reversal and color permutations only.
    Idempotent, and constant on orbits.
    """
    if c.topology is Topology.INTERVAL:
        forward = relabel_first_occurrence(c.assignment)
        backward = relabel_first_occurrence(c.assignment[::-1])
        return Coloring(c.topology, c.k, min(forward, backward))
    n = c.n
    best: tuple[int, ...] | None = None
    transformed = [0] * n
    for a in units(n):
        for b in range(n):
            for x, v in enumerate(c.assignment):
                transformed[(a * x + b) % n] = v
            candidate = relabel_first_occurrence(transformed)
            if best is None or candidate < best:
                best = candidate
    assert best is not None
    return Coloring(Topology.CYCLIC, c.k, best)


def to_cyclic(c: Coloring) -> Coloring:
    """Embed an interval coloring into Z_n via i -> i mod n.

    Position n lands on residue 0; every interval AP of [n] maps to a
    distinct-member AP of Z_n, so a rainbow-free Z_n image implies the
    interval original is rainbow-free as well.
    """
    if c.topology is not Topology.INTERVAL:
        raise UnsupportedTopology("to_cyclic embeds interval colorings only")
    n = c.n
    out = [0] * n
    for i in range(1, n + 1):
        out[i % n] = c.assignment[i - 1]
    return Coloring(Topology.CYCLIC, c.k, tuple(out))
