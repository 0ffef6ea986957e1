"""Support families and the combinatorial conditions on minimal support sets.

A :class:`SupportFamily` is a set of index subsets of ``{1..n}`` (1-based).
Internally the condition checks work on bitmasks with bit ``i-1`` standing
for index ``i``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

MAX_CANONICAL_N = 9


class FamilyParseError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    pass


def set_key(s: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Total order on index sets: by cardinality, then lexicographically."""
    return len(s), tuple(sorted(s))


def mask_of(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << (i - 1)
    return m


def set_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class SupportFamily:
    n: int
    sets: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, sets: Iterable[Iterable[int]]):
        norm = set()
        for s in sets:
            t = tuple(sorted(set(int(i) for i in s)))
            if not t:
                raise ValueError("support sets must be nonempty")
            if t[0] < 1 or t[-1] > n:
                raise ValueError(f"index out of range 1..{n} in {set(t)}")
            norm.add(t)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "sets", tuple(sorted(norm, key=set_key)))

    @property
    def masks(self) -> list[int]:
        return [mask_of(s) for s in self.sets]

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def relabel(self, perm: Sequence[int]) -> "SupportFamily":
        """Image under ``i -> perm[i-1]`` (``perm`` is a 1-based permutation list)."""
        return SupportFamily(self.n, [[perm[i - 1] for i in s] for s in self.sets])

    def literal(self) -> str:
        return ",".join("{" + ",".join(map(str, s)) + "}" for s in self.sets)

    def to_json(self) -> list[list[int]]:
        return [list(s) for s in self.sets]

    def __str__(self) -> str:
        return self.literal()


_SET_RE = re.compile(r"\{([^{}]*)\}")


def parse_family(text: str, n: int | None = None) -> SupportFamily:
    """Parse ``{1,2},{2,3}`` or a JSON array of arrays.  ``n`` defaults to the
    largest index present."""
    text = text.strip()
    if text.startswith("["):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise FamilyParseError(str(e)) from None
        if not isinstance(raw, list) or not all(isinstance(s, list) for s in raw):
            raise FamilyParseError("expected an array of arrays of integers")
        sets = raw
    else:
        sets = []
        pos = 0
        for m in _SET_RE.finditer(text):
            gap = text[pos:m.start()].strip()
            if gap not in ("", ","):
                raise FamilyParseError(f"unexpected text {gap!r} at column {pos + 1}")
            pos = m.end()
            body = m.group(1).strip()
            try:
                sets.append([int(x) for x in body.split(",")] if body else [])
            except ValueError:
                raise FamilyParseError(f"bad set {m.group(0)!r} at column {m.start() + 1}") from None
        if text[pos:].strip() not in ("", ","):
            raise FamilyParseError(f"unexpected trailing text at column {pos + 1}")
        if not sets and text:
            raise FamilyParseError("no sets found")
    if any(not all(isinstance(i, int) for i in s) for s in sets):
        raise FamilyParseError("set entries must be integers")
    if n is None:
        n = max((max(s) for s in sets if s), default=0)
    try:
        return SupportFamily(n, sets)
    except ValueError as e:
        raise FamilyParseError(str(e)) from None


# ---------------------------------------------------------------- verdicts

PASS, FAIL, NOT_EVALUATED = "pass", "fail", "not_evaluated"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self):
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass(frozen=True)
class ConditionReport:
    cond_i: Verdict = field(default_factory=lambda: Verdict(NOT_EVALUATED))
    cond_ii: Verdict = field(default_factory=lambda: Verdict(NOT_EVALUATED))
    cond_iii: Verdict = field(default_factory=lambda: Verdict(NOT_EVALUATED))
    cond_iv: Verdict = field(default_factory=lambda: Verdict(NOT_EVALUATED))
    cond_v: Verdict = field(default_factory=lambda: Verdict(NOT_EVALUATED))

    def items(self):
        return [("i", self.cond_i), ("ii", self.cond_ii), ("iii", self.cond_iii),
                ("iv", self.cond_iv), ("v", self.cond_v)]

    @property
    def all_passed(self) -> bool:
        return all(v.passed for _, v in self.items())

    def to_json(self):
        return {k: v.to_json() for k, v in self.items()}


# ----------------------------------------------------------- conditions (i), (ii)

def cond_i(f: SupportFamily) -> Verdict:
    for s in f.sets:
        if not 2 <= len(s) <= f.n - 2:
            return Verdict(FAIL, {"set": list(s), "cardinality": len(s), "bounds": [2, f.n - 2]})
    return Verdict(PASS)


def cond_ii(f: SupportFamily) -> Verdict:
    masks = f.masks
    for a in masks:
        for b in masks:
            if a != b and a & b == a:
                return Verdict(FAIL, {"subset": list(set_of(a)), "superset": list(set_of(b))})
    return Verdict(PASS)


def cond_i_ii(f: SupportFamily) -> Verdict:
    """Cardinality bounds ``2 <= |I| <= n-2`` and the antichain property."""
    v = cond_i(f)
    if not v.passed:
        return Verdict(FAIL, {"condition": "i", **v.witness})
    v = cond_ii(f)
    if not v.passed:
        return Verdict(FAIL, {"condition": "ii", **v.witness})
    return Verdict(PASS)


# ------------------------------------------------------------------ condition (iii)

def _maximal_chains(values: list[int]) -> list[list[int]]:
    """Maximal chains of the inclusion order on distinct bitmasks."""
    vs = sorted(set(values), key=popcount)
    above = {v: [w for w in vs if w != v and v & w == v] for v in vs}
    covers = {v: [w for w in above[v] if not any(x != w and x in above[v] and x & w == x for x in above[v])]
              for v in vs}
    minimal = [v for v in vs if not any(w != v and w & v == w for w in vs)]
    chains: list[list[int]] = []

    def walk(chain):
        nxt = covers[chain[-1]]
        if not nxt:
            chains.append(chain)
            return
        for w in nxt:
            walk(chain + [w])

    for v in minimal:
        walk([v])
    return chains


def iii_violation(masks: Sequence[int], strict_chain: bool = False):
    """First violation ``(I, S, j)`` of the overlapping-support condition, as
    bitmasks, or None.

    ``I`` ranges over strict subsets of members; ``S`` is a set of members
    each exceeding ``I`` by a single index with their traces on ``I`` forming
    a chain; ``j`` is a member outside ``S`` covered by ``I`` and the extra
    indices of ``S``.  Expects an antichain; checking maximal chains then
    suffices since two members of one chain never share their extra index.
    """
    masks = list(masks)
    seen = set()
    for big in masks:
        sub = (big - 1) & big
        while True:
            I = sub
            if I not in seen:
                seen.add(I)
                hit = _iii_at(masks, I, strict_chain)
                if hit is not None:
                    return hit
            if sub == 0:
                break
            sub = (sub - 1) & big
    return None


def _iii_at(masks, I, strict_chain):
    single = []
    for t in masks:
        d = t & ~I
        if d and d & (d - 1) == 0:
            single.append((t & I, d, t))
    if not single:
        return None
    by_trace: dict[int, list] = {}
    for tr, d, t in single:
        by_trace.setdefault(tr, []).append((d, t))
    if len(by_trace) == 1 and not strict_chain:
        # one chain taking every member: j must be a non-member in the cover
        full, ts = I, set()
        for _, d, t in single:
            full |= d
            ts.add(t)
        if not any(j & full == j and j not in ts for j in masks):
            return None
    chains = [list(by_trace)] if len(by_trace) == 1 else _maximal_chains(list(by_trace))
    for chain in chains:
        if strict_chain:
            selections = product(*(by_trace[v] for v in chain))
        else:
            selections = [[x for v in chain for x in by_trace[v]]]
        for sel in selections:
            cover = I
            members = set()
            for d, t in sel:
                cover |= d
                members.add(t)
            for j in masks:
                if j & cover == j and j not in members:
                    return I, sorted(members, key=lambda m: set_key(set_of(m))), j
    return None


def cond_iii(f: SupportFamily, strict_chain: bool = False) -> Verdict:
    """Overlapping minimal supports must not force an extra minimal zero.

    Evaluated only on families passing (i) and (ii).  Chain traces are
    compared with non-strict inclusion unless ``strict_chain`` is set.
    """
    if not cond_i_ii(f).passed:
        return Verdict(NOT_EVALUATED)
    hit = iii_violation(f.masks, strict_chain)
    if hit is None:
        return Verdict(PASS)
    I, S, j = hit
    return Verdict(FAIL, {"I": list(set_of(I)), "S": [list(set_of(s)) for s in S], "j": list(set_of(j))})


# ------------------------------------------------------------------- condition (iv)

def bipartite_components(n: int, pair_masks: Sequence[int]) -> list[list[int]]:
    """Vertex lists (1-based) of the bipartite connected components of the
    graph on ``1..n`` whose edges are the given pairs.  Isolated vertices are
    bipartite components."""
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for m in pair_masks:
        a, b = set_of(m)
        adj[a].append(b)
        adj[b].append(a)
    color = [-1] * (n + 1)
    comps = []
    for s in range(1, n + 1):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack, comp, bip = [s], [s], True
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    stack.append(y)
                    comp.append(y)
                elif color[y] == color[x]:
                    bip = False
        if bip:
            comps.append(sorted(comp))
    return comps


def max_bipartite_matching(adj: Sequence[Sequence[int]]) -> dict[int, int]:
    """Maximum matching of left vertices ``0..len(adj)-1`` into right vertices
    by augmenting paths; returns ``right -> left``."""
    match: dict[int, int] = {}

    def augment(u, seen):
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match or augment(match[w], seen):
                match[w] = u
                return True
        return False

    for u in range(len(adj)):
        augment(u, set())
    return match


def iv_unmatched(n: int, masks: Sequence[int]) -> tuple[list[list[int]], list[list[int]], dict]:
    """Bipartite components of the pair graph, those left unmatched, and the
    matching (component index -> member mask) into supports of size >= 3."""
    pairs = [m for m in masks if popcount(m) == 2]
    big = [m for m in masks if popcount(m) > 2]
    comps = bipartite_components(n, pairs)
    cmasks = [mask_of(c) for c in comps]
    adj = [[w for w, b in enumerate(big) if b & cm] for cm in cmasks]
    match = max_bipartite_matching(adj)
    matched = {u: big[w] for w, u in match.items()}
    unmatched = [comps[u] for u in range(len(comps)) if u not in matched]
    return comps, unmatched, matched


def cond_iv(f: SupportFamily) -> Verdict:
    """Every bipartite component of the pair graph needs its own distinct
    larger support touching it (a matching of size = #components)."""
    comps, unmatched, matched = iv_unmatched(f.n, f.masks)
    if unmatched:
        return Verdict(FAIL, {"components": comps, "unmatched": unmatched})
    return Verdict(PASS, {"components": comps,
                          "matching": [[comps[u], list(set_of(m))] for u, m in sorted(matched.items())]}
                   if comps else None)


# ------------------------------------------------------------------ canonical form

def canonical_form(f: SupportFamily) -> SupportFamily:
    """Lexicographically least relabeling of ``f`` under all permutations.

    Families compare as their sorted lists of sets (sets ordered by
    cardinality, then lexicographically).  New labels ``1, 2, ...`` are handed
    out one at a time; a branch is cut once a lower bound on every completion
    is no better than the best relabeling found so far.
    """
    n = f.n
    if n > MAX_CANONICAL_N:
        raise GuardExceeded(f"canonical_form supports n <= {MAX_CANONICAL_N}, got n = {n}")
    sets = [frozenset(s) for s in f.sets]
    if not sets:
        return f
    best: list | None = None

    def bound(label_of: dict[int, int], t: int):
        keys = []
        for s in sets:
            assigned = sorted(label_of[i] for i in s if i in label_of)
            r = len(s) - len(assigned)
            keys.append((len(s), tuple(assigned) + tuple(range(t + 1, t + 1 + r))))
        keys.sort()
        return keys

    def dfs(label_of: dict[int, int], free: list[int]):
        nonlocal best
        t = len(label_of)
        if not free:
            keys = bound(label_of, t)
            if best is None or keys < best:
                best = keys
            return
        children = []
        for x in free:
            label_of[x] = t + 1
            children.append((bound(label_of, t + 1), x))
            del label_of[x]
        children.sort()
        for lb, x in children:
            if best is not None and lb >= best:
                break
            label_of[x] = t + 1
            dfs(label_of, [y for y in free if y != x])
            del label_of[x]

    dfs({}, list(range(1, n + 1)))
    return SupportFamily(n, [k[1] for k in best])


def is_equivalent(f: SupportFamily, g: SupportFamily) -> bool:
    return f.n == g.n and canonical_form(f) == canonical_form(g)
