"""Named verification suites producing machine-readable reports.

Each suite machine-checks one published claim over a parameterized range
and reports pass/fail with replayable counterexamples. Reports are pure
functions of their parameters except for the elapsed-time field, so two
runs of the same suite compare equal once timing is stripped.

Registered suites:

* ``thm1.1``     interval 4-colorings from the block family are rainbow-
                 AP(4)-free and near-equinumerous or better, for every
                 variant and every 8 <= n <= max_n;
* ``thm1.2``     the stacked k-colorings are rainbow-AP(k)-free over a
                 (k, q, r) grid;
* ``k3-positive`` every equinumerous 3-coloring of [3q] contains a rainbow
                 AP(3), exhaustively for 2 <= q <= n_max;
* ``z8``         every equinumerous 4-coloring of Z_8 contains a rainbow
                 AP(4), plus the nine fixed Z_8 regression colorings each
                 have a difference-3 witness;
* ``z24``        the Z_24 coloring and its tiles are proper equinumerous
                 rainbow-free certificates;
* ``pow3``       the power-of-3 coloring has no rainbow AP(3) and uses
                 exactly floor(log3 n) + 1 colors for every n <= max_n;
* ``open-q``     budgeted searches on configured moduli; passes when every
                 Found certificate re-verifies.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import constructions, search
from .core import (
    BalanceClass,
    Coloring,
    Topology,
    classify_balance,
    color_counts,
    enumerate_rainbow_aps,
    find_rainbow_ap,
    is_recessive,
    make_coloring,
)
from .errors import InvalidParams, UnknownSuite

# Z_8 regression colorings: equinumerous 4-colorings starting with color A
# whose rainbow AP(4) has common difference 3.
Z8_REGRESSIONS = (
    "AABBCDCD",
    "ADBBCACD",
    "ADBDCBCA",
    "ADCACBBD",
    "ADCDCBBA",
    "AACDCDBB",
    "ADCDBBCA",
    "AACBBDCD",
    "ADCABBCD",
)


@dataclass
class Report:
    suite: str
    params: dict
    passed: bool
    counterexamples: list[dict] = field(default_factory=list)
    cases: int = 0
    elapsed_ms: int = 0

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "pass": self.passed,
            "counterexamples": self.counterexamples,
            "stats": {"cases": self.cases, "elapsed_ms": self.elapsed_ms},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def comparable(self) -> dict:
        """Report dict without the timing field, for determinism checks."""
        d = self.to_json_dict()
        del d["stats"]["elapsed_ms"]
        return d


def has_rainbow_interval(assignment, length: int) -> bool:
    """Vectorized brute force over every length-term AP of an interval coloring."""
    colors = np.asarray(assignment, dtype=np.int8)
    n = colors.size
    pairs = [(i, j) for i in range(length) for j in range(i + 1, length)]
    for d in range(1, (n - 1) // (length - 1) + 1):
        m = n - (length - 1) * d
        rows = [colors[t * d : t * d + m] for t in range(length)]
        distinct = rows[pairs[0][0]] != rows[pairs[0][1]]
        for i, j in pairs[1:]:
            distinct &= rows[i] != rows[j]
        if distinct.any():
            return True
    return False


def _counterexample(case: dict, coloring: Coloring, witness) -> dict:
    entry_input = dict(case)
    entry_input["coloring"] = coloring.to_json_dict()
    return {
        "input": entry_input,
        "witness": witness.to_json_dict() if witness is not None else None,
    }


def _suite_thm11(params: dict) -> tuple[bool, list[dict], int]:
    max_n = params["max_n"]
    counterexamples = []
    cases = 0
    for n in range(8, max_n + 1):
        floor_q, ceil_q = n // 4, (n + 3) // 4
        for variant in constructions.variants_for(n):
            cases += 1
            c = constructions.construct_interval4(n, variant)
            case = {"n": n, "variant": variant.value}
            if has_rainbow_interval(c.assignment, 4):
                counterexamples.append(
                    _counterexample(case, c, find_rainbow_ap(c, 4))
                )
                continue
            sizes = color_counts(c).values()
            if n % 4 == 0:
                balanced = all(s == n // 4 for s in sizes)
            else:
                balanced = all(s in (floor_q, ceil_q) for s in sizes)
            if not balanced:
                counterexamples.append(_counterexample(case, c, None))
    return not counterexamples, counterexamples, cases


def _suite_thm12(params: dict) -> tuple[bool, list[dict], int]:
    k_max, n_max = params["k_max"], params["n_max"]
    counterexamples = []
    cases = 0
    for k in range(5, k_max + 1):
        for q in range(2, n_max + 1):
            for r in range(k):
                cases += 1
                total = k * q + r
                c = constructions.construct_k(k, total)
                if has_rainbow_interval(c.assignment, k):
                    case = {"k": k, "n": total, "r": r}
                    counterexamples.append(
                        _counterexample(case, c, find_rainbow_ap(c, k))
                    )
    return not counterexamples, counterexamples, cases


def _suite_k3(params: dict) -> tuple[bool, list[dict], int]:
    n_max = params["n_max"]
    counterexamples = []
    cases = 0
    for q in range(2, n_max + 1):
        n = 3 * q
        triples = [
            (s, s + d, s + 2 * d)
            for d in range(1, (n - 1) // 2 + 1)
            for s in range(n - 2 * d)
        ]
        for col in search.enumerate_equinumerous(n, 3):
            cases += 1
            for a, b, c in triples:
                x, y, z = col[a], col[b], col[c]
                if x != y and x != z and y != z:
                    break
            else:
                bad = Coloring(Topology.INTERVAL, 3, col)
                counterexamples.append(_counterexample({"n": n}, bad, None))
    return not counterexamples, counterexamples, cases


def _suite_z8(params: dict) -> tuple[bool, list[dict], int]:
    counterexamples = []
    coverage = search.all_contain_rainbow(8, 4, 4)
    cases = coverage.checked
    if not coverage.all_contain:
        counterexamples.append(
            _counterexample({"n": 8}, coverage.counterexample, None)
        )
    elif coverage.checked != search.equinumerous_count(8, 4):
        raise RuntimeError(
            f"coverage accounting is broken: {coverage.checked} != 2520"
        )
    for text in Z8_REGRESSIONS:
        cases += 1
        c = make_coloring(Topology.CYCLIC, 4, text)
        if not any(w.spec.d == 3 for w in enumerate_rainbow_aps(c, 4)):
            counterexamples.append(
                _counterexample({"regression": text}, c, None)
            )
    return not counterexamples, counterexamples, cases


def _suite_z24(params: dict) -> tuple[bool, list[dict], int]:
    max_times = params["max_times"]
    counterexamples = []
    cases = 0
    base = constructions.construct_z24()
    for times in range(1, max_times + 1):
        c = constructions.tile(base, times) if times > 1 else base
        case = {"n": c.n}
        cases += 1
        if not search.verify_certificate(c, 4):
            counterexamples.append(_counterexample(case, c, find_rainbow_ap(c, 4)))
        for color in range(4):
            cases += 1
            if not is_recessive(c, color):
                counterexamples.append(
                    _counterexample({**case, "color": color}, c, None)
                )
    return not counterexamples, counterexamples, cases


def _suite_pow3(params: dict) -> tuple[bool, list[dict], int]:
    max_n = params["max_n"]
    counterexamples = []
    cases = 0
    top = constructions.construct_pow3(max_n)
    # Rainbow-freeness for every n <= max_n follows from one full scan at
    # the top plus the prefix identity checked per n: an AP of [n] is the
    # same AP of [max_n] with the same colors. Small n are also scanned
    # directly as a belt-and-braces check.
    direct_limit = min(max_n, 243)
    for n in range(1, max_n + 1):
        cases += 1
        c = constructions.construct_pow3(n)
        case = {"n": n}
        if c.assignment != top.assignment[:n]:
            counterexamples.append(_counterexample(case, c, None))
            continue
        if c.k != constructions.floor_log3(n) + 1 or len(set(c.assignment)) != c.k:
            counterexamples.append(_counterexample(case, c, None))
            continue
        if n <= direct_limit and has_rainbow_interval(c.assignment, 3):
            counterexamples.append(_counterexample(case, c, find_rainbow_ap(c, 3)))
    if has_rainbow_interval(top.assignment, 3):
        counterexamples.append(
            _counterexample({"n": max_n}, top, find_rainbow_ap(top, 3))
        )
    return not counterexamples, counterexamples, cases


def _suite_openq(params: dict) -> tuple[bool, list[dict], int]:
    counterexamples = []
    cases = 0
    for n in params["moduli"]:
        cases += 1
        config = search.SearchConfig(
            n=n,
            k=params["k"],
            max_nodes=params["max_nodes"],
            symmetry=search.SymmetryLevel(params["symmetry"]),
            threads=params["threads"],
        )
        outcome = search.search_rainbow_free(config, params["ap_length"])
        if outcome.status is search.SearchStatus.FOUND:
            if not search.verify_certificate(outcome.certificate, params["ap_length"]):
                counterexamples.append(
                    _counterexample({"n": n}, outcome.certificate, None)
                )
    return not counterexamples, counterexamples, cases


def _positive_int(name: str, value, minimum: int = 1) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise InvalidParams(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


def _validate_thm11(params: dict) -> dict:
    return {"max_n": _positive_int("max_n", params.get("max_n", 512), 8)}


def _validate_thm12(params: dict) -> dict:
    return {
        "k_max": _positive_int("k_max", params.get("k_max", 8), 5),
        "n_max": _positive_int("n_max", params.get("n_max", 40), 2),
    }


def _validate_k3(params: dict) -> dict:
    n_max = _positive_int("n_max", params.get("n_max", 5), 2)
    allow_large = bool(params.get("allow_large", False))
    if n_max > 6 or (n_max == 6 and not allow_large):
        raise InvalidParams(
            "n_max above 5 enumerates tens of millions of colorings; "
            "pass allow_large=true to opt in to n_max=6"
        )
    return {"n_max": n_max, "allow_large": allow_large}


def _validate_z8(params: dict) -> dict:
    return {}


def _validate_z24(params: dict) -> dict:
    return {"max_times": _positive_int("max_times", params.get("max_times", 3), 1)}


def _validate_pow3(params: dict) -> dict:
    return {"max_n": _positive_int("max_n", params.get("max_n", 2187), 1)}


def _validate_openq(params: dict) -> dict:
    moduli = params.get("moduli", (16,))
    if isinstance(moduli, int):
        moduli = (moduli,)
    try:
        moduli = tuple(int(m) for m in moduli)
    except (TypeError, ValueError):
        raise InvalidParams(f"moduli must be a list of integers, got {moduli!r}")
    k = _positive_int("k", params.get("k", 4), 1)
    for m in moduli:
        if m < 1 or m % k != 0:
            raise InvalidParams(f"modulus {m} is not a positive multiple of k={k}")
    symmetry = params.get("symmetry", search.SymmetryLevel.VALUE_ORDER.value)
    if symmetry not in {level.value for level in search.SymmetryLevel}:
        raise InvalidParams(f"unknown symmetry level {symmetry!r}")
    return {
        "moduli": list(moduli),
        "k": k,
        "ap_length": _positive_int("ap_length", params.get("ap_length", 4), 3),
        "max_nodes": _positive_int("max_nodes", params.get("max_nodes", 5_000_000), 0),
        "symmetry": symmetry,
        "threads": _positive_int("threads", params.get("threads", 1), 1),
    }


_SUITES: dict[str, tuple[Callable[[dict], dict], Callable[[dict], tuple]]] = {
    "thm1.1": (_validate_thm11, _suite_thm11),
    "thm1.2": (_validate_thm12, _suite_thm12),
    "k3-positive": (_validate_k3, _suite_k3),
    "z8": (_validate_z8, _suite_z8),
    "z24": (_validate_z24, _suite_z24),
    "pow3": (_validate_pow3, _suite_pow3),
    "open-q": (_validate_openq, _suite_openq),
}


def suite_names() -> list[str]:
    return sorted(_SUITES)


def run_suite(name: str, params: dict | None = None) -> Report:
    """Run a named suite and return its report.

    Raises UnknownSuite for unregistered names and InvalidParams for
    malformed or out-of-bounds parameters (including unknown keys).
    """
    if name not in _SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    validate, runner = _SUITES[name]
    raw = dict(params or {})
    checked = validate(raw)
    unknown = set(raw) - set(checked)
    if unknown:
        raise InvalidParams(f"unknown parameter(s) for {name}: {sorted(unknown)}")
    t0 = time.monotonic()
    passed, counterexamples, cases = runner(checked)
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    return Report(
        suite=name,
        params=checked,
        passed=passed,
        counterexamples=counterexamples,
        cases=cases,
        elapsed_ms=elapsed_ms,
    )
