import random
from itertools import permutations

import pytest

from rainbowap.constructions import construct_z24, tile
from rainbowap.core import (
    Coloring,
    Topology,
    apply_affine,
    canonical_form,
    find_rainbow_ap,
    make_coloring,
    units,
)
from rainbowap.errors import NotDivisible, UnsupportedTopology
from rainbowap.search import (
    CoverageResult,
    SearchConfig,
    SearchStatus,
    SymmetryLevel,
    all_contain_rainbow,
    ap_tables,
    completes_rainbow,
    count_rainbow_free,
    enumerate_equinumerous,
    equinumerous_count,
    search_rainbow_free,
    verify_certificate,
)

import naive


# ------------------------------------------------------------ enumeration

def test_equinumerous_count_examples():
    assert equinumerous_count(4, 4) == 24
    assert equinumerous_count(8, 4) == 2520
    assert equinumerous_count(16, 4) == 63_063_000
    with pytest.raises(NotDivisible):
        equinumerous_count(10, 4)


def test_enumerate_equinumerous_is_exhaustive_and_lexicographic():
    for n, k in ((4, 2), (6, 3), (8, 4), (6, 2)):
        seen = list(enumerate_equinumerous(n, k))
        assert len(seen) == equinumerous_count(n, k)
        assert len(set(seen)) == len(seen)
        assert seen == sorted(seen)
        for col in seen:
            assert all(col.count(c) == n // k for c in range(k))


def test_enumerate_equinumerous_limit():
    first = list(enumerate_equinumerous(8, 4, limit=10))
    assert len(first) == 10
    assert first == list(enumerate_equinumerous(8, 4))[:10]


# ------------------------------------------------------------ containment

def test_all_contain_rainbow_z4_and_z8():
    r4 = all_contain_rainbow(4, 4, 4)
    assert r4.all_contain and r4.counterexample is None
    assert r4.checked == 24
    r8 = all_contain_rainbow(8, 4, 4)
    assert r8.all_contain and r8.checked == 2520


def test_all_contain_rainbow_agrees_with_plain_enumeration_on_z8():
    # independent route: check all 2520 colorings one by one via the oracle
    missing = [
        col
        for col in enumerate_equinumerous(8, 4)
        if not naive.has_rainbow(
            "".join(chr(65 + v) for v in col), True, 4
        )
    ]
    assert missing == []
    assert all_contain_rainbow(8, 4, 4).all_contain


def test_all_contain_rainbow_z24_finds_counterexample():
    result = all_contain_rainbow(24, 4, 4)
    assert not result.all_contain
    ce = result.counterexample
    # lexicographically first counterexample, and a genuine certificate
    assert ce.letters == "AABAACDCBDBDBADACCBCBDCD"
    assert verify_certificate(ce, 4)
    assert not naive.has_rainbow(ce.letters, True, 4)


def test_all_contain_rainbow_rejects_bad_arity():
    with pytest.raises(NotDivisible):
        all_contain_rainbow(10, 4, 4)


# ------------------------------------------------------------ certificates

def test_verify_certificate_z24_family():
    assert verify_certificate(construct_z24(), 4)
    assert verify_certificate(tile(construct_z24(), 3), 4)
    nu1 = make_coloring(Topology.CYCLIC, 4, "AABBCDCD")
    assert not verify_certificate(nu1, 4)
    unbalanced = make_coloring(Topology.CYCLIC, 4, "AABBCCDA")
    assert not verify_certificate(unbalanced, 4)
    with pytest.raises(UnsupportedTopology):
        verify_certificate(make_coloring(Topology.INTERVAL, 4, "ABCD"), 4)


# ------------------------------------------------------------ search engine

def test_search_z8_exhausts():
    outcome = search_rainbow_free(SearchConfig(n=8, k=4), 4)
    assert outcome.status is SearchStatus.EXHAUSTED
    assert outcome.certificate is None
    assert outcome.stats.nodes > 0


def test_search_z4_exhausts():
    outcome = search_rainbow_free(SearchConfig(n=4, k=4), 4)
    assert outcome.status is SearchStatus.EXHAUSTED


def test_search_z24_budget_exceeded():
    outcome = search_rainbow_free(SearchConfig(n=24, k=4, max_nodes=1000), 4)
    assert outcome.status is SearchStatus.BUDGET_EXCEEDED
    assert outcome.stats.nodes == 1000
    assert outcome.certificate is None


def test_search_zero_budget_exceeds_immediately():
    outcome = search_rainbow_free(SearchConfig(n=8, k=4, max_nodes=0), 4)
    assert outcome.status is SearchStatus.BUDGET_EXCEEDED
    assert outcome.stats.nodes == 0


def test_search_not_divisible():
    with pytest.raises(NotDivisible):
        search_rainbow_free(SearchConfig(n=10, k=4), 4)


def test_search_found_when_rainbow_impossible():
    # three colors can never paint a rainbow AP(4): first completion wins
    outcome = search_rainbow_free(SearchConfig(n=6, k=3), 4)
    assert outcome.status is SearchStatus.FOUND
    assert verify_certificate(outcome.certificate, 4)
    mono = search_rainbow_free(SearchConfig(n=3, k=1), 3)
    assert mono.status is SearchStatus.FOUND
    assert mono.certificate.letters == "AAA"


def test_search_found_certificate_on_z24():
    outcome = search_rainbow_free(SearchConfig(n=24, k=4, max_nodes=5_000_000), 4)
    assert outcome.status is SearchStatus.FOUND
    assert verify_certificate(outcome.certificate, 4)
    # first certificate in DFS order = lex-least rainbow-free coloring,
    # which all_contain_rainbow reaches by an independent route
    assert outcome.certificate.letters == "AABAACDCBDBDBADACCBCBDCD"


def test_symmetry_levels_agree_on_status():
    for n in (4, 8):
        statuses = {
            search_rainbow_free(
                SearchConfig(n=n, k=4, symmetry=level), 4
            ).status
            for level in SymmetryLevel
        }
        assert statuses == {SearchStatus.EXHAUSTED}


def test_search_deterministic_across_runs_and_threads():
    configs = [
        SearchConfig(n=8, k=4, threads=1),
        SearchConfig(n=8, k=4, threads=8),
        SearchConfig(n=8, k=4, threads=3),
    ]
    outcomes = [search_rainbow_free(c, 4) for c in configs]
    again = [search_rainbow_free(c, 4) for c in configs]
    baseline = outcomes[0]
    for o in outcomes + again:
        assert o.status == baseline.status
        assert o.stats.comparable() == baseline.stats.comparable()


def test_search_budget_boundary_deterministic_across_threads():
    for budget in (500, 5000, 39_000):
        outcomes = [
            search_rainbow_free(
                SearchConfig(n=16, k=4, max_nodes=budget, threads=t), 4
            )
            for t in (1, 2, 8)
        ]
        assert len({o.status for o in outcomes}) == 1
        assert len({tuple(sorted(o.stats.comparable().items())) for o in outcomes}) == 1


# ------------------------------------------------------------ prune rule

def test_rainbow_prune_only_fires_on_real_rainbows():
    rng = random.Random(99)
    for _ in range(1000):
        n = rng.choice([8, 12, 16])
        length = 4
        tables = ap_tables(n, length)
        p = rng.randint(length - 1, n - 1)
        colors = [rng.randrange(4) for _ in range(p + 1)]
        if completes_rainbow(tables, colors):
            letters = "".join(chr(65 + c) for c in colors)
            found = [
                elems
                for d, s, elems, cols in naive.rainbow_aps(
                    letters + "?" * (n - len(letters)), True, length
                )
                if max(elems) < len(letters)
            ]
            assert found, (n, letters)


def test_completes_rainbow_matches_direct_check():
    tables = ap_tables(8, 4)
    # BABCCDDA completes its (d=3) rainbow when position 6 is assigned
    colors = [1, 0, 1, 2, 2, 3, 3]
    assert completes_rainbow(tables, colors)
    assert not completes_rainbow(tables, [1, 0, 1, 2, 2, 3])


# ------------------------------------------------------------ canonical mode

def test_full_canonical_counts_orbit_representatives_on_z8():
    count, complete, stats = count_rainbow_free(
        SearchConfig(n=8, k=4, symmetry=SymmetryLevel.FULL_CANONICAL), 9
    )
    assert complete
    # independent: canonicalize all 2520 colorings through core and weight
    # each class by its orbit size
    orbits: dict[tuple[int, ...], int] = {}
    for col in enumerate_equinumerous(8, 4):
        key = canonical_form(Coloring(Topology.CYCLIC, 4, col)).assignment
        orbits[key] = orbits.get(key, 0) + 1
    assert count == len(orbits) == 11
    assert sum(orbits.values()) == 2520


def test_full_canonical_orbit_sizes_match_group_expansion():
    rep = canonical_form(construct_z24())
    images = {
        apply_affine(rep, a, b, list(sigma)).assignment
        for a in units(8 * 3)
        for b in range(24)
        for sigma in permutations(range(4))
    }
    # orbit size divides group order phi(24) * 24 * 4!
    assert (8 * 24 * 24) % len(images) == 0
