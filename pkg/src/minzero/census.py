"""Isomorph-free enumeration of support families and reproduction of the
published census tables.

Families are generated by an orderly algorithm: a family is a strictly
increasing sequence of subset ranks (subsets ordered by cardinality, then
lexicographically), it is kept only when it is the lexicographically least
member of its orbit under coordinate permutations, and children append a
subset of larger rank.  Prefixes of canonical families are canonical, so
every equivalence class is produced exactly once.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .families import (ConditionReport, GuardExceeded, SupportFamily, cond_i, cond_ii, cond_iii, cond_iv, iii_violation,
                       iv_unmatched, mask_of, set_of)
from .lp import cond_v, holds_condition_v

ALL_CONDITIONS = ("i", "ii", "iii", "iv", "v")
DEFAULT_NODE_BUDGET = 2_000_000
N7_LOWER_BOUND = 14028724


class CensusRefused(ValueError):
    """The requested census is known to be out of reach."""


@dataclass(frozen=True)
class _Universe:
    n: int
    masks: tuple[int, ...]  # subset masks of size 2..n-2 in rank order
    perm_table: np.ndarray  # (n!, len(masks)) image rank of each subset


@lru_cache(maxsize=None)
def universe(n: int) -> _Universe:
    subsets = [c for k in range(2, n - 1) for c in combinations(range(1, n + 1), k)]
    masks = tuple(mask_of(s) for s in subsets)
    rank = {m: r for r, m in enumerate(masks)}
    perms = list(permutations(range(1, n + 1)))
    table = np.empty((len(perms), len(masks)), dtype=np.int16)
    for p, perm in enumerate(perms):
        for r, s in enumerate(subsets):
            table[p, r] = rank[mask_of(perm[i - 1] for i in s)]
    return _Universe(n, masks, table)


def is_canonical_ranks(ranks: list[int], table: np.ndarray) -> bool:
    """True iff the sorted rank list is lexicographically least in its orbit."""
    img = table[:, ranks]
    # most images already differ in their least element; sort only the ties
    mn = img.min(axis=1)
    if np.any(mn < ranks[0]):
        return False
    img = np.sort(img[mn == ranks[0]], axis=1)
    f = np.asarray(ranks, dtype=img.dtype)
    diff = img != f
    rows = np.flatnonzero(diff.any(axis=1))
    if rows.size == 0:
        return True
    first = diff[rows].argmax(axis=1)
    return not bool(np.any(img[rows, first] < f[first]))


def normalize_conditions(conds) -> tuple[str, ...]:
    if isinstance(conds, str):
        conds = [c.strip() for c in conds.split(",") if c.strip()]
    out = set()
    for c in conds:
        c = c.lower()
        if "-" in c:
            a, b = c.split("-")
            ia, ib = ALL_CONDITIONS.index(a), ALL_CONDITIONS.index(b)
            out.update(ALL_CONDITIONS[ia:ib + 1])
        elif c in ALL_CONDITIONS:
            out.add(c)
        else:
            raise ValueError(f"unknown condition {c!r}")
    if not out:
        raise ValueError("at least one condition is required")
    return tuple(c for c in ALL_CONDITIONS if c in out)


@dataclass
class CensusResult:
    n: int
    conditions: tuple[str, ...]
    count: int
    classes: list[SupportFamily] = field(default_factory=list)
    elapsed: float = 0.0
    nodes: int = 0

    def to_json(self, with_classes: bool = True) -> dict:
        return {"n": self.n, "conditions": list(self.conditions), "count": self.count,
                "classes": [f.to_json() for f in self.classes] if with_classes else [],
                "elapsed_ms": int(round(self.elapsed * 1000))}


def check_family(f: SupportFamily, strict_chain: bool = False) -> ConditionReport:
    """All five conditions for one family; (iii)-(v) are left unevaluated
    when (i) or (ii) fails."""
    i, ii = cond_i(f), cond_ii(f)
    if not (i.passed and ii.passed):
        return ConditionReport(i, ii)
    return ConditionReport(i, ii, cond_iii(f, strict_chain), cond_iv(f), cond_v(f))


def _walk(n, conds, prune, strict_chain, budget, first_rank=None):
    """Depth-first orderly generation; yields (ranks, passes_iii) for every
    nonempty canonical antichain that survives pruning."""
    U = universe(n)
    masks, table = U.masks, U.perm_table
    want_iii = "iii" in conds
    check_ii = "ii" in conds
    nodes = 0

    def rec(ranks, sets, ok3):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise GuardExceeded(f"search exceeded the node budget of {budget}")
        yield ranks, ok3
        for c in range(ranks[-1] + 1, len(masks)):
            s = masks[c]
            if check_ii and any(t & s == t or t & s == s for t in sets):
                continue
            child = ranks + [c]
            if not is_canonical_ranks(child, table):
                continue
            csets = sets + [s]
            ok = ok3
            if want_iii and ok and prune:
                ok = iii_violation(csets, strict_chain) is None
                if not ok:
                    continue
            yield from rec(child, csets, ok)

    starts = range(len(masks)) if first_rank is None else [first_rank]
    for c in starts:
        if is_canonical_ranks([c], table):
            ok = True
            if want_iii and prune:
                ok = iii_violation([masks[c]], strict_chain) is None
                if not ok:
                    continue
            yield from rec([c], [masks[c]], ok)


def _family_passes(n, sets, conds, ok3, strict_chain, prune, cache):
    if "iii" in conds and not prune:
        ok3 = iii_violation(sets, strict_chain) is None
    if "iii" in conds and not ok3:
        return False
    if "iv" in conds and iv_unmatched(n, sets)[1]:
        return False
    if "v" in conds:
        key = tuple(sets)
        if key not in cache:
            cache[key] = holds_condition_v(SupportFamily(n, [set_of(m) for m in sets])).passed
        if not cache[key]:
            return False
    return True


def _run_branch(args):
    n, conds, prune, strict_chain, budget, first = args
    U = universe(n)
    found = []
    nodes = 0
    cache: dict = {}
    for ranks, ok3 in _walk(n, conds, prune, strict_chain, budget, first):
        nodes += 1
        sets = [U.masks[r] for r in ranks]
        if _family_passes(n, sets, conds, ok3, strict_chain, prune, cache):
            found.append(tuple(ranks))
    return found, nodes


def enumerate_classes(n: int, conditions=ALL_CONDITIONS, prune: bool = True, strict_chain: bool = False,
                      jobs: int = 1, node_budget: int = DEFAULT_NODE_BUDGET,
                      allow_long: bool = False, progress=None) -> CensusResult:
    """Canonical representatives of all nonempty support families on ``n``
    indices (set sizes 2..n-2) satisfying the requested conditions.

    Conditions (ii) and, with ``prune``, (iii) are checked while generating
    since a violation persists in every superfamily; (iv) and (v) are
    checked on complete families only.  ``progress(done, total, nodes)``
    is called after each first-set branch.
    """
    conds = normalize_conditions(conditions)
    if not 2 <= n <= 7:
        raise ValueError("census supports 2 <= n <= 7")
    if n == 7:
        if "iii" not in conds:
            raise CensusRefused(
                f"n = 7 without condition (iii) is out of reach: the (i),(ii) census alone has more than "
                f"{N7_LOWER_BOUND} classes")
        if not allow_long:
            raise CensusRefused("n = 7 is a long-running job; pass allow_long=True (--allow-long)")
        node_budget = max(node_budget, 10**9)
    t0 = time.perf_counter()
    U = universe(n)
    firsts = [c for c in range(len(U.masks)) if is_canonical_ranks([c], U.perm_table)]
    tasks = [(n, conds, prune, strict_chain, node_budget, c) for c in firsts]
    reps = []
    nodes = 0

    def collect(results):
        nonlocal nodes
        for done, (found, k) in enumerate(results, 1):
            reps.extend(found)
            nodes += k
            if nodes > node_budget:
                raise GuardExceeded(f"search exceeded the node budget of {node_budget}")
            if progress is not None:
                progress(done, len(tasks), nodes)

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            collect(ex.map(_run_branch, tasks))
    else:
        collect(_run_branch(t) for t in tasks)
    reps.sort()
    classes = [SupportFamily(n, [set_of(U.masks[r]) for r in ranks]) for ranks in reps]
    return CensusResult(n, conds, len(classes), classes, time.perf_counter() - t0, nodes)


# ------------------------------------------------------------ published data

TABLE1 = (
    "{1,2},{1,3},{1,4},{2,5},{3,6},{5,6}",
    "{1,2},{1,3},{1,4},{2,5},{3,6},{4,5,6}",
    "{1,2},{1,3},{1,4},{2,5},{3,5,6},{4,5,6}",
    "{1,2},{1,3},{1,4},{2,5,6},{3,5,6},{4,5,6}",
    "{1,2},{1,3},{2,4},{3,4,5},{1,5,6},{4,5,6}",
    "{1,2},{1,3},{1,4,5},{2,4,6},{3,4,6},{4,5,6}",
    "{1,2},{1,3},{2,4,5},{3,4,5},{2,4,6},{3,4,6}",
    "{1,2},{1,3},{2,4,5},{3,4,5},{2,4,6},{3,5,6}",
    "{1,2},{3,4},{1,3,5},{2,4,6},{1,5,6},{4,5,6}",
    "{1,2},{1,3,4},{1,3,5},{2,3,6},{3,4,6},{3,5,6}",
    "{1,2},{1,3,4},{1,3,5},{1,4,6},{2,5,6},{3,5,6}",
    "{1,2},{1,3,4},{1,3,5},{1,4,6},{3,5,6},{4,5,6}",
    "{1,2},{1,3,4},{1,3,5},{2,4,6},{3,4,6},{2,5,6}",
    "{1,2},{1,3,4},{1,3,5},{2,4,6},{3,4,6},{3,5,6}",
    "{1,2},{1,3,4},{1,3,5},{2,4,6},{3,4,6},{4,5,6}",
    "{1,2},{1,3,4},{1,3,5},{2,4,6},{3,5,6},{4,5,6}",
    "{1,2},{1,3,4},{2,3,5},{3,4,5},{2,4,6},{3,4,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{1,4,6},{1,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{1,4,6},{2,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{1,4,6},{3,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{2,4,6},{3,4,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{2,4,6},{3,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{2,4,6},{3,4,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{3,4,6},{3,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{3,4,6},{4,5,6}",
    "{1,2,3},{1,2,4},{1,3,5},{1,4,5},{2,3,6},{2,4,6}",
    "{1,2,3},{1,2,4},{1,3,5},{1,4,5},{2,3,6},{3,4,6}",
    "{1,2,3},{1,2,4},{1,3,5},{2,4,5},{3,4,5},{2,3,6}",
    "{1,2,3},{1,2,4},{1,3,5},{2,4,5},{2,3,6},{2,5,6}",
    "{1,2,3},{1,2,4},{1,3,5},{2,4,5},{3,4,6},{3,5,6}",
    "{1,2,3},{1,2,4},{1,3,5},{2,4,5},{1,5,6},{2,5,6}",
    "{1,2,3},{1,2,4},{1,3,5},{2,4,5},{1,5,6},{4,5,6}",
    "{1,2,3},{1,2,4},{1,3,5},{2,4,5},{3,5,6},{4,5,6}",
    "{1,2,3},{1,2,4},{1,3,5},{2,4,6},{3,5,6},{4,5,6}",
    "{1,2,3,4},{1,2,3,5},{1,2,4,6},{1,3,5,6},{2,4,5,6},{3,4,5,6}",
    "{1,2},{1,3},{1,4},{2,5},{4,5},{3,6},{5,6}",
    "{1,2},{1,3,4},{1,3,5},{1,4,6},{2,5,6},{3,5,6},{4,5,6}",
    "{1,2},{1,3,4},{1,3,5},{2,4,6},{3,4,6},{2,5,6},{3,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{1,4,6},{2,5,6},{3,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{1,4,6},{3,5,6},{4,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{2,4,6},{3,4,6},{3,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{2,4,6},{3,5,6},{4,5,6}",
    "{1,2,3},{1,2,4},{1,2,5},{1,3,6},{1,4,6},{2,5,6},{3,5,6},{4,5,6}",
    "{1,2,3},{1,2,4},{1,3,5},{1,4,5},{2,3,6},{2,4,6},{3,5,6},{4,5,6}",
)

# rows as printed; an entry (">", b) is a lower bound only
TABLE2 = (
    (("i", "ii"), {4: 10, 5: 150, 6: 15933, 7: (">", 14028724)}),
    (("i", "ii", "iv", "v"), {4: 6, 5: 33, 6: 298, 7: 19807}),
    (("i", "ii", "iii", "v"), {4: 0, 5: 11, 6: 2697, 7: (">", 157872)}),
    (("i", "ii", "iii", "iv"), {4: 0, 5: 2, 6: 80, 7: 18676}),
    (("i", "ii", "iii", "iv", "v"), {4: 0, 5: 2, 6: 44, 7: 12378}),
)


def condition_label(conds) -> str:
    conds = tuple(conds)
    if len(conds) >= 3 and conds == ALL_CONDITIONS[:len(conds)]:
        return f"(i)-({conds[-1]})"
    if conds[:3] == ("i", "ii", "iii"):
        return "(i)-(iii)," + ",".join(f"({c})" for c in conds[3:])
    return ",".join(f"({c})" for c in conds)


@dataclass(frozen=True)
class Cell:
    label: str
    n: int
    expected: object  # int, or (">", bound)
    computed: int | None

    @property
    def match(self) -> bool:
        if self.computed is None:
            return False
        if isinstance(self.expected, tuple):
            return self.computed > self.expected[1]
        return self.computed == self.expected

    def expected_text(self) -> str:
        return f"> {self.expected[1]}" if isinstance(self.expected, tuple) else str(self.expected)


@dataclass
class TableReport:
    which: str
    cells: list[Cell] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)  # table 1 only
    extra: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.match for c in self.cells) and not self.missing and not self.extra

    def to_json(self) -> dict:
        return {"table": self.which, "ok": self.ok,
                "cells": [{"conditions": c.label, "n": c.n, "expected": c.expected_text(),
                           "computed": c.computed, "match": c.match} for c in self.cells],
                "missing": self.missing, "extra": self.extra,
                "elapsed_ms": int(round(self.elapsed * 1000))}

    def text(self) -> str:
        out = []
        for c in self.cells:
            flag = "ok" if c.match else "MISMATCH"
            out.append(f"{c.label:<22} n={c.n}  expected {c.expected_text():>12}  computed {c.computed!s:>8}  {flag}")
        for lit in self.missing:
            out.append(f"missing  {lit}")
        for lit in self.extra:
            out.append(f"extra    {lit}")
        out.append("all cells match" if self.ok else "mismatches found")
        return "\n".join(out)


def _flags_branch(args):
    """Per-family (iii), (iv), (v) flags for one depth-1 branch of the (i),(ii)
    census; (v) is only evaluated where (iii) or (iv) holds."""
    n, strict_chain, budget, first = args
    U = universe(n)
    counts = {}
    nodes = 0
    for ranks, _ in _walk(n, ("i", "ii"), False, strict_chain, budget, first):
        nodes += 1
        sets = [U.masks[r] for r in ranks]
        ok3 = iii_violation(sets, strict_chain) is None
        ok4 = not iv_unmatched(n, sets)[1]
        ok5 = False
        if ok3 or ok4:
            ok5 = holds_condition_v(SupportFamily(n, [set_of(m) for m in sets])).passed
        key = (ok3, ok4, ok5)
        counts[key] = counts.get(key, 0) + 1
    return counts, nodes


def table2_counts(n: int, strict_chain: bool = False, jobs: int = 1,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> dict[tuple[str, ...], int]:
    """All Table 2 rows for ``n <= 6`` from a single (i),(ii) census."""
    if not 2 <= n <= 6:
        raise ValueError("single-pass table computation supports 2 <= n <= 6")
    U = universe(n)
    firsts = [c for c in range(len(U.masks)) if is_canonical_ranks([c], U.perm_table)]
    tasks = [(n, strict_chain, node_budget, c) for c in firsts]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_flags_branch, tasks))
    else:
        results = [_flags_branch(t) for t in tasks]
    tally: dict = {}
    for counts, _ in results:
        for k, v in counts.items():
            tally[k] = tally.get(k, 0) + v
    out = {}
    for conds, _ in TABLE2:
        want3, want4, want5 = ("iii" in conds), ("iv" in conds), ("v" in conds)
        out[conds] = sum(v for (a, b, c), v in tally.items()
                         if (a or not want3) and (b or not want4) and (c or not want5))
    return out


def reproduce_table(which: str, n: int | None = None, jobs: int = 1, strict_chain: bool = False,
                    allow_long: bool = False) -> TableReport:
    """Recompute published cells and diff them against the embedded values.

    ``which="2"`` covers the condition-combination counts (``n`` in 4..7, or
    all of 4..6 when ``n`` is None); ``which="1"`` compares the n = 6
    survivors of all five conditions with the listed representatives.
    """
    t0 = time.perf_counter()
    which = str(which)
    if which == "1":
        if n not in (None, 6):
            raise ValueError("table 1 lists n = 6 only")
        from .families import canonical_form, parse_family
        res = enumerate_classes(6, ALL_CONDITIONS, jobs=jobs, strict_chain=strict_chain)
        got = {canonical_form(f): f for f in res.classes}
        want = {canonical_form(parse_family(lit, 6)): lit for lit in TABLE1}
        rep = TableReport("1", [Cell("(i)-(v)", 6, len(TABLE1), res.count)])
        rep.missing = [want[k] for k in want if k not in got]
        rep.extra = [got[k].literal() for k in sorted(got, key=lambda k: got[k].literal()) if k not in want]
        rep.elapsed = time.perf_counter() - t0
        return rep
    if which != "2":
        raise ValueError("which must be 1 or 2")
    ns = [4, 5, 6] if n is None else [n]
    rep = TableReport("2")
    for m in ns:
        if m not in (4, 5, 6, 7):
            raise ValueError("table 2 covers n = 4..7")
        if m <= 6:
            counts = table2_counts(m, strict_chain, jobs)
            for conds, row in TABLE2:
                rep.cells.append(Cell(condition_label(conds), m, row[m], counts[conds]))
        else:
            if not allow_long:
                raise CensusRefused("n = 7 is a long-running job; pass allow_long=True (--allow-long)")
            for conds, row in TABLE2:
                if "iii" not in conds:
                    continue
                r = enumerate_classes(7, conds, jobs=jobs, strict_chain=strict_chain, allow_long=True)
                rep.cells.append(Cell(condition_label(conds), 7, row[7], r.count))
    rep.elapsed = time.perf_counter() - t0
    return rep
