"""Independent brute-force oracle used to cross-check the package.

Deliberately shares no code with rainbowap: APs are enumerated by a plain
(start, difference) double loop, members are resolved with inline modular
arithmetic, and distinctness goes through set sizes. Keep it dumb.
"""

from collections import Counter


def rainbow_aps(letters: str, cyclic: bool, length: int):
    """All rainbow APs as (d, start, elements, colors) tuples."""
    n = len(letters)
    out = []
    for d in range(1, n):
        if cyclic:
            for s in range(n):
                elems = [(s + t * d) % n for t in range(length)]
                if len(set(elems)) != length:
                    continue
                cols = [letters[e] for e in elems]
                if len(set(cols)) == length:
                    out.append((d, s, elems, "".join(cols)))
        else:
            for s in range(1, n + 1):
                elems = [s + t * d for t in range(length)]
                if elems[-1] > n:
                    continue
                cols = [letters[e - 1] for e in elems]
                if len(set(cols)) == length:
                    out.append((d, s, elems, "".join(cols)))
    return out


def has_rainbow(letters: str, cyclic: bool, length: int) -> bool:
    return bool(rainbow_aps(letters, cyclic, length))


def balance_label(letters: str, k: int) -> str:
    counts = Counter(letters)
    sizes = [counts.get(chr(ord("A") + i), 0) for i in range(k)]
    if len(set(sizes)) == 1:
        return "equinumerous"
    if max(sizes) - min(sizes) <= 1:
        return "near_equinumerous"
    if min(sizes) >= len(letters) // k:
        return "balanced"
    return "unbalanced"
