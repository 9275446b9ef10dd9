"""Exhaustive and symmetry-reduced search over equinumerous colorings of Z_n.

The engine is a depth-first search that assigns residues 0..n-1 in order
and prunes on three rules:

* capacity -- a color used n/k times is closed;
* rainbow -- assigning position p completes exactly the APs whose maximum
  member is p, so those are the only ones checked at each step (the tables
  store each d <-> n-d pair once, since both give the same member set);
* symmetry -- VALUE_ORDER forces first occurrences of colors to appear in
  increasing index order; FULL_CANONICAL additionally rejects a partial
  assignment as soon as some affine image of it, optimally relabeled, is
  strictly lexicographically smaller on the decided prefix, which makes
  every surviving leaf the exact lex-least member of its orbit.

Determinism contract: for a fixed config the outcome and stats are
identical across runs and worker counts. The tree is split into subtree
tasks at a fixed depth; tasks may run on a thread pool, but the reported
result is always computed by a sequential accounting walk in task order
(each task stops at its own first solution; the walk stops at the first
found certificate or when the cumulative node budget runs out, re-running
at most one boundary task with its exact remaining allowance so that
parallel scheduling can never leak into the stats). The wall-clock limit
is a safety valve; when it fires, stats are timing-dependent and only the
BUDGET_EXCEEDED status itself is meaningful.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import factorial, gcd
from typing import Callable, Iterator, Sequence

from .core import (
    BalanceClass,
    Coloring,
    Topology,
    classify_balance,
    find_rainbow_ap,
)
from .errors import NotDivisible, UnsupportedTopology

_CHUNK = 1024  # budget reservation granularity (also the abort-check period)
_SPLIT_DEPTH = 4  # tasks are the surviving prefixes of this length


class SymmetryLevel(Enum):
    NONE = "none"
    VALUE_ORDER = "value_order"
    FULL_CANONICAL = "full_canonical"


class SearchStatus(Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    max_nodes: int = 10_000_000
    max_ms: int | None = None
    symmetry: SymmetryLevel = SymmetryLevel.VALUE_ORDER
    threads: int = 1

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError(f"need n >= 1 and k >= 1, got n={self.n} k={self.k}")
        if self.max_nodes < 0:
            raise ValueError(f"node budget must be >= 0, got {self.max_nodes}")
        if self.max_ms is not None and self.max_ms < 0:
            raise ValueError(f"wall budget must be >= 0, got {self.max_ms}")
        if self.threads < 1:
            raise ValueError(f"thread count must be >= 1, got {self.threads}")


@dataclass
class SearchStats:
    nodes: int = 0
    prunes_capacity: int = 0
    prunes_rainbow: int = 0
    canonical_rejects: int = 0
    elapsed_ms: int = 0

    def to_json_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "prunes_capacity": self.prunes_capacity,
            "prunes_rainbow": self.prunes_rainbow,
            "canonical_rejects": self.canonical_rejects,
            "elapsed_ms": self.elapsed_ms,
        }

    def comparable(self) -> dict:
        """Stats dict without the timing field, for determinism checks."""
        d = self.to_json_dict()
        del d["elapsed_ms"]
        return d


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    certificate: Coloring | None
    stats: SearchStats

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json_dict()
        out["stats"] = self.stats.to_json_dict()
        return out


def equinumerous_count(n: int, k: int) -> int:
    """Number of equinumerous k-colorings of an n-point set: n! / ((n/k)!)^k."""
    if n % k != 0:
        raise NotDivisible(f"k={k} does not divide n={n}")
    return factorial(n) // factorial(n // k) ** k


def enumerate_equinumerous(
    n: int, k: int, limit: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield every assignment with all class sizes n/k, in lexicographic order."""
    if n % k != 0:
        raise NotDivisible(f"k={k} does not divide n={n}")
    cap = n // k
    counts = [0] * k
    cur: list[int] = []
    emitted = 0

    def rec(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(cur)
            return
        for c in range(k):
            if counts[c] == cap:
                continue
            counts[c] += 1
            cur.append(c)
            yield from rec(pos + 1)
            cur.pop()
            counts[c] -= 1

    for coloring in rec(0):
        yield coloring
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def ap_tables(n: int, length: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each position p, the other members of every AP whose maximum is p.

    Assigning positions in increasing order, an AP becomes fully colored
    exactly when its maximum member is assigned, so these tables drive the
    incremental rainbow check. Each d <-> n-d reversal pair appears once.
    """
    seen: set[frozenset[int]] = set()
    by_max: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for d in range(1, n):
        if n // gcd(n, d) < length:
            continue
        for s in range(n):
            elems = frozenset((s + t * d) % n for t in range(length))
            if elems in seen:
                continue
            seen.add(elems)
            mx = max(elems)
            by_max[mx].append(tuple(sorted(elems - {mx})))
    return tuple(tuple(rows) for rows in by_max)


def completes_rainbow(
    tables: Sequence[Sequence[tuple[int, ...]]], colors: Sequence[int]
) -> bool:
    """True iff assigning the last color in `colors` completed a rainbow AP."""
    p = len(colors) - 1
    last = colors[p]
    for rest in tables[p]:
        mask = 1 << last
        for q in rest:
            mask |= 1 << colors[q]
        if mask.bit_count() == len(rest) + 1:
            return True
    return False


def _affine_position_maps(n: int) -> tuple[tuple[int, ...], ...]:
    """Preimage tables for every non-identity affine map of Z_n.

    Entry xs satisfies: the image coloring at position y equals the original
    at position xs[y] (so xs[y] = a^-1 (y - b) mod n for the map x -> ax+b).
    """
    maps = []
    for a in range(1, n):
        if gcd(a, n) != 1:
            continue
        ainv = pow(a, -1, n)
        for b in range(n):
            if a == 1 and b == 0:
                continue
            maps.append(tuple((ainv * (y - b)) % n for y in range(n)))
    return tuple(maps)


class _Budget:
    """Chunked node allowance; exact for the sequential (fixed) form."""

    def __init__(self, remaining: int, lock: threading.Lock | None = None):
        self.remaining = remaining
        self.lock = lock

    def take(self, want: int) -> int:
        if self.lock is None:
            grant = min(want, self.remaining)
            self.remaining -= grant
            return grant
        with self.lock:
            grant = min(want, self.remaining)
            self.remaining -= grant
            return grant


@dataclass
class _TaskResult:
    nodes: int = 0
    prunes_capacity: int = 0
    prunes_rainbow: int = 0
    canonical_rejects: int = 0
    found: tuple[int, ...] | None = None
    complete: bool = False  # subtree fully covered (no budget/wall/cancel abort)


def _explore(
    n: int,
    k: int,
    tables: Sequence[Sequence[tuple[int, ...]]],
    symmetry: SymmetryLevel,
    affine_maps: Sequence[Sequence[int]],
    prefix: Sequence[int],
    budget: _Budget,
    deadline: float | None,
    abort_check: Callable[[], bool] | None,
    stop_depth: int,
    on_reach: Callable[[tuple[int, ...]], bool],
) -> _TaskResult:
    """Run the pruned DFS from a prefix down to stop_depth.

    `on_reach` is called with the assignment each time the DFS reaches
    stop_depth; it returns True to halt the whole exploration (first-found
    mode) and False to keep enumerating. The result's `complete` flag is
    True only when the subtree was fully covered.
    """
    cap = n // k
    col = list(prefix) + [-1] * (n - len(prefix))
    counts = [0] * k
    for c in prefix:
        counts[c] += 1
    used = max(prefix, default=-1)
    res = _TaskResult()
    value_order = symmetry is not SymmetryLevel.NONE
    full_canonical = symmetry is SymmetryLevel.FULL_CANONICAL

    allowance = 0  # nodes grantable before consulting the budget again
    aborted = False
    halted = False

    def refill() -> bool:
        nonlocal allowance, aborted
        if deadline is not None and time.monotonic() > deadline:
            aborted = True
            return False
        if abort_check is not None and abort_check():
            aborted = True
            return False
        allowance = budget.take(_CHUNK)
        if allowance == 0:
            aborted = True
            return False
        return True

    def nonminimal(p: int) -> bool:
        # Some affine image, greedily relabeled, beats the decided prefix.
        for xs in affine_maps:
            remap = [-1] * k
            nxt = 0
            for y in range(p + 1):
                x = xs[y]
                if x > p:
                    break
                m = remap[col[x]]
                if m == -1:
                    remap[col[x]] = m = nxt
                    nxt += 1
                o = col[y]
                if m < o:
                    return True
                if m > o:
                    break
        return False

    def rec(pos: int, used_max: int) -> None:
        nonlocal allowance, halted
        if pos == stop_depth:
            if on_reach(tuple(col[:stop_depth])):
                halted = True
            return
        hi = min(used_max + 1, k - 1) if value_order else k - 1
        aps = tables[pos]
        for c in range(hi + 1):
            if counts[c] == cap:
                res.prunes_capacity += 1
                continue
            col[pos] = c
            rainbow = False
            for rest in aps:
                mask = 1 << c
                for q in rest:
                    mask |= 1 << col[q]
                if mask.bit_count() == len(rest) + 1:
                    rainbow = True
                    break
            if rainbow:
                res.prunes_rainbow += 1
                col[pos] = -1
                continue
            if full_canonical and nonminimal(pos):
                res.canonical_rejects += 1
                col[pos] = -1
                continue
            if allowance == 0 and not refill():
                col[pos] = -1
                return
            allowance -= 1
            res.nodes += 1
            counts[c] += 1
            rec(pos + 1, c if c > used_max else used_max)
            counts[c] -= 1
            col[pos] = -1
            if halted or aborted:
                return

    rec(len(prefix), used)
    res.complete = not (aborted or halted)
    return res


def _split_depth(n: int) -> int:
    return min(_SPLIT_DEPTH, max(n - 1, 0))


def search_rainbow_free(config: SearchConfig, ap_length: int) -> SearchOutcome:
    """Search for an equinumerous rainbow-AP(ap_length)-free coloring of Z_n.

    Returns FOUND with the first certificate in DFS order, EXHAUSTED when
    the (symmetry-reduced) space is covered without one, or BUDGET_EXCEEDED.
    """
    if ap_length < 3:
        raise ValueError(f"AP length must be >= 3, got {ap_length}")
    if config.n % config.k != 0:
        raise NotDivisible(f"k={config.k} does not divide n={config.n}")
    t0 = time.monotonic()
    n, k = config.n, config.k
    tables = ap_tables(n, ap_length)
    affine_maps = (
        _affine_position_maps(n)
        if config.symmetry is SymmetryLevel.FULL_CANONICAL
        else ()
    )
    deadline = t0 + config.max_ms / 1000.0 if config.max_ms is not None else None

    def finish(status: SearchStatus, cert: tuple[int, ...] | None,
               parts: list[_TaskResult]) -> SearchOutcome:
        stats = SearchStats()
        for part in parts:
            stats.nodes += part.nodes
            stats.prunes_capacity += part.prunes_capacity
            stats.prunes_rainbow += part.prunes_rainbow
            stats.canonical_rejects += part.canonical_rejects
        stats.elapsed_ms = int((time.monotonic() - t0) * 1000)
        certificate = None
        if cert is not None:
            certificate = Coloring(Topology.CYCLIC, k, cert)
        return SearchOutcome(status, certificate, stats)

    # Phase 0: sequential generation of subtree tasks at the split depth.
    split = _split_depth(n)
    tasks: list[tuple[int, ...]] = []
    gen = _explore(
        n, k, tables, config.symmetry, affine_maps,
        prefix=(), budget=_Budget(config.max_nodes), deadline=deadline,
        abort_check=None, stop_depth=split,
        on_reach=lambda prefix: tasks.append(prefix) or False,
    )
    if not gen.complete:
        return finish(SearchStatus.BUDGET_EXCEEDED, None, [gen])
    if not tasks:
        return finish(SearchStatus.EXHAUSTED, None, [gen])

    # Phase 1: optimistic exploration of every task under a shared countdown.
    shared = _Budget(config.max_nodes - gen.nodes, threading.Lock())
    min_found = [len(tasks)]
    found_lock = threading.Lock()

    def run_task(idx: int) -> _TaskResult | None:
        if idx > min_found[0]:
            return None
        hit: list[tuple[int, ...] | None] = [None]

        def on_solution(assignment: tuple[int, ...]) -> bool:
            hit[0] = assignment
            return True

        result = _explore(
            n, k, tables, config.symmetry, affine_maps,
            prefix=tasks[idx], budget=shared, deadline=deadline,
            abort_check=lambda: idx > min_found[0], stop_depth=n,
            on_reach=on_solution,
        )
        result.found = hit[0]
        if result.found is not None:
            with found_lock:
                if idx < min_found[0]:
                    min_found[0] = idx
        return result

    if config.threads == 1:
        results = [run_task(i) for i in range(len(tasks))]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(run_task, range(len(tasks))))

    # Phase 2: deterministic accounting walk in task order.
    parts = [gen]
    consumed = gen.nodes
    for idx in range(len(tasks)):
        allowance = config.max_nodes - consumed
        if allowance <= 0:
            return finish(SearchStatus.BUDGET_EXCEEDED, None, parts)
        result = results[idx]
        usable = (
            result is not None
            and (result.complete or result.found is not None)
            and result.nodes <= allowance
        )
        if not usable:
            hit: list[tuple[int, ...] | None] = [None]

            def on_solution(assignment: tuple[int, ...]) -> bool:
                hit[0] = assignment
                return True

            result = _explore(
                n, k, tables, config.symmetry, affine_maps,
                prefix=tasks[idx], budget=_Budget(allowance), deadline=deadline,
                abort_check=None, stop_depth=n, on_reach=on_solution,
            )
            result.found = hit[0]
        parts.append(result)
        consumed += result.nodes
        if result.found is not None:
            return finish(SearchStatus.FOUND, result.found, parts)
        if not result.complete:
            return finish(SearchStatus.BUDGET_EXCEEDED, None, parts)
    return finish(SearchStatus.EXHAUSTED, None, parts)


def count_rainbow_free(
    config: SearchConfig, ap_length: int
) -> tuple[int, bool, SearchStats]:
    """Exhaustive-listing mode: count every rainbow-free completion.

    Runs sequentially, streaming solutions into a counter so memory stays
    bounded. Returns (count, covered, stats) where covered is False when
    the node or wall budget cut the enumeration short.
    """
    if ap_length < 3:
        raise ValueError(f"AP length must be >= 3, got {ap_length}")
    if config.n % config.k != 0:
        raise NotDivisible(f"k={config.k} does not divide n={config.n}")
    t0 = time.monotonic()
    n, k = config.n, config.k
    tables = ap_tables(n, ap_length)
    affine_maps = (
        _affine_position_maps(n)
        if config.symmetry is SymmetryLevel.FULL_CANONICAL
        else ()
    )
    deadline = t0 + config.max_ms / 1000.0 if config.max_ms is not None else None
    hits = [0]

    def on_solution(_: tuple[int, ...]) -> bool:
        hits[0] += 1
        return False

    result = _explore(
        n, k, tables, config.symmetry, affine_maps,
        prefix=(), budget=_Budget(config.max_nodes), deadline=deadline,
        abort_check=None, stop_depth=n, on_reach=on_solution,
    )
    stats = SearchStats(
        nodes=result.nodes,
        prunes_capacity=result.prunes_capacity,
        prunes_rainbow=result.prunes_rainbow,
        canonical_rejects=result.canonical_rejects,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
    return hits[0], result.complete, stats


@dataclass(frozen=True)
class CoverageResult:
    """Outcome of checking the whole equinumerous space for rainbow APs."""

    all_contain: bool
    checked: int  # raw colorings certified to contain a rainbow AP
    counterexample: Coloring | None


def all_contain_rainbow(n: int, k: int, ap_length: int) -> CoverageResult:
    """Does every equinumerous k-coloring of Z_n contain a rainbow AP?

    Walks the colorings in lexicographic order, skipping a whole subtree
    as soon as its prefix completes a rainbow AP (every completion then
    contains that same AP) and restricting to first-occurrence color order
    (relabeling preserves both equinumerosity and rainbow-freeness, and the
    lex-least counterexample is always in first-occurrence form, so the
    counterexample returned is the true lexicographic first). `checked`
    counts the raw colorings certified, which on a True outcome equals the
    full multinomial count.
    """
    if n % k != 0:
        raise NotDivisible(f"k={k} does not divide n={n}")
    if ap_length < 3:
        raise ValueError(f"AP length must be >= 3, got {ap_length}")
    cap = n // k

    # Group every distinct-member AP by its maximum position, resolving the
    # members through a straightforward (start, d) sweep.
    seen: set[frozenset[int]] = set()
    by_max: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for d in range(1, n):
        for s in range(n):
            members = [(s + t * d) % n for t in range(ap_length)]
            if len(set(members)) != ap_length:
                continue
            key = frozenset(members)
            if key in seen:
                continue
            seen.add(key)
            mx = max(members)
            by_max[mx].append(tuple(sorted(key - {mx})))

    fact = [factorial(i) for i in range(n + 1)]

    def completions(assigned: int) -> int:
        # raw colorings extending the current prefix, unseen-color debut
        # order divided out, times k! for the relabeling classes
        rem = fact[n - assigned]
        for c in range(k):
            rem //= fact[cap - counts[c]]
        unseen = sum(1 for c in range(k) if counts[c] == 0)
        return rem * factorial(k) // factorial(unseen)

    col = [-1] * n
    counts = [0] * k
    certified = [0]
    witness: list[tuple[int, ...] | None] = [None]

    def rec(pos: int, used: int) -> None:
        if pos == n:
            witness[0] = tuple(col)
            return
        for c in range(min(used + 1, k - 1) + 1):
            if counts[c] == cap:
                continue
            col[pos] = c
            rainbow = False
            for rest in by_max[pos]:
                group = {c}
                for q in rest:
                    group.add(col[q])
                if len(group) == ap_length:
                    rainbow = True
                    break
            if rainbow:
                counts[c] += 1
                certified[0] += completions(pos + 1)
                counts[c] -= 1
                col[pos] = -1
                continue
            counts[c] += 1
            rec(pos + 1, c if c > used else used)
            counts[c] -= 1
            col[pos] = -1
            if witness[0] is not None:
                return

    rec(0, -1)
    if witness[0] is not None:
        return CoverageResult(
            False, certified[0], Coloring(Topology.CYCLIC, k, witness[0])
        )
    return CoverageResult(True, certified[0], None)


def verify_certificate(c: Coloring, ap_length: int) -> bool:
    """Re-check a claimed certificate through the core detector alone.

    True iff the coloring is equinumerous and has no cyclic rainbow
    AP(ap_length). Shares no code with the DFS engine.
    """
    if c.topology is not Topology.CYCLIC:
        raise UnsupportedTopology("certificates live on cyclic colorings")
    if classify_balance(c) is not BalanceClass.EQUINUMEROUS:
        return False
    return find_rainbow_ap(c, ap_length) is None
