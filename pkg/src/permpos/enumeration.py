"""Brute-force enumeration oracles for 1324-avoiding permutations.

Two independent generation routes are provided and cross-checked in the
test suite:

* :func:`generate_avoiders` backtracks position by position, trying values
  in increasing order and pruning every prefix that already contains the
  pattern, so avoiders of any pattern stream out in lexicographic order.

* The counting sweeps (:func:`count_tables`, :func:`iter_class_members`)
  walk a generating tree instead: every 1324-avoider of size n+1 arises
  exactly once by inserting the new maximum n+1 into an avoider of size n,
  and the insertion position is legal iff the prefix strictly before it
  avoids 132. Carrying the length L of the longest 132-free prefix along
  the tree makes the child set {1, ..., L+1} and the child's own bound
  computable in O(n), so visiting a node costs O(n) total. This is what
  makes exact classification feasible at desk scale (n = 11 in seconds,
  n = 12 opt-in).

Class counts are exact Python integers end to end; tables can be persisted
as JSON-lines with decimal-string counts so no width limit is ever hit.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Iterator, NamedTuple, Optional

from .permutations import (
    PATTERN_1324,
    DomainError,
    Permutation,
    _word_contains_1324,
    word_contains,
)

_BIG = 1 << 62

DESK_MAX_N = 11
DESK_OPT_IN_MAX_N = 12
_SEED_SIZE = 7  # subtree-root size used to partition parallel sweeps


class PositionalClass(NamedTuple):
    """Class (a, k): value a sits k positions left of the maximum and every
    value below a sits right of the maximum."""

    a: int
    k: int


def classify(p: Permutation, validate: bool = True) -> Optional[PositionalClass]:
    """Positional class of a 1324-avoider, or None if it starts with its
    maximum (or n <= 1).

    a is the smallest value left of the maximum; every value below a is
    then automatically right of the maximum. k is the position distance
    from a to the maximum.
    """
    if validate and _word_contains_1324(p.values):
        raise DomainError(f"{p!r} does not avoid 1324")
    n = len(p)
    if n <= 1 or p.values[0] == n:
        return None
    pos_n = p.values.index(n)
    a = min(p.values[:pos_n])
    return PositionalClass(a, pos_n - p.values.index(a))


# -- lexicographic backtracking generator -----------------------------------


def generate_avoiders(n: int, pattern: Permutation = PATTERN_1324) -> Iterator[Permutation]:
    """Yield the size-n avoiders of ``pattern``, each once, in lexicographic
    order of one-line notation.

    A prefix is extended only while it avoids the pattern, so the explored
    tree is exactly the set of avoiding prefixes.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    key = tuple(pattern.values)
    if len(key) == 0:
        raise ValueError("empty pattern")
    if n == 0:
        yield Permutation(())
        return
    if key == (1, 3, 2, 4):
        yield from _generate_1324(n)
    else:
        yield from _generate_generic(n, pattern)


def _generate_1324(n: int) -> Iterator[Permutation]:
    # m132 = smallest "3"-value over the 132 occurrences inside the prefix;
    # appending v creates a 1324 iff v > m132, so candidate values above the
    # threshold are pruned wholesale.
    prefix: list[int] = []
    premins: list[int] = []
    used = [False] * (n + 1)

    def rec(depth: int, m132: int, curmin: int) -> Iterator[Permutation]:
        if depth == n:
            yield Permutation(tuple(prefix), validate=False)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            if v > m132:
                break
            new_m132 = m132
            for j in range(depth):
                x = prefix[j]
                if v < x < new_m132 and premins[j] < v:
                    new_m132 = x
            used[v] = True
            prefix.append(v)
            premins.append(curmin)
            yield from rec(depth + 1, new_m132, v if v < curmin else curmin)
            premins.pop()
            prefix.pop()
            used[v] = False

    yield from rec(0, _BIG, _BIG)


def _generate_generic(n: int, pattern: Permutation) -> Iterator[Permutation]:
    pat = pattern.values
    prefix: list[int] = []
    used = [False] * (n + 1)

    def rec(depth: int) -> Iterator[Permutation]:
        if depth == n:
            yield Permutation(tuple(prefix), validate=False)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            if len(prefix) < len(pat) or not word_contains(prefix, pat):
                used[v] = True
                yield from rec(depth + 1)
                used[v] = False
            prefix.pop()

    yield from rec(0)


# -- generating-tree sweeps --------------------------------------------------
#
# A node is (sig, L): sig an avoider as a list/tuple, L the length of its
# longest 132-avoiding prefix. Children insert M = len(sig)+1 at positions
# p = 1..L+1. For the child made at position p:
#
#   * its class is (a, k) = (pm, p - pmpos) where pm is the minimum of the
#     first p-1 entries of sig and pmpos its position (p = 1 children start
#     with the maximum and carry no class);
#   * its own bound is min(L+1, F_p, len+1) where F_p is the first position
#     q >= p with sig(q) > pm -- the inserted maximum over an earlier
#     smaller entry turns any later larger entry into a 132.


def _expand_count(sig: list[int], L: int, size: int, max_n: int,
                  counts: dict, totals: list[int]) -> None:
    child_n = size + 1
    totals[child_n] += L + 1
    if child_n == max_n:
        cget = counts.get
        pm = sig[0]
        pmpos = 1
        for p in range(2, L + 2):
            v = sig[p - 2]
            if v < pm:
                pm = v
                pmpos = p - 1
            key = (child_n, pm, p - pmpos)
            counts[key] = cget(key, 0) + 1
        return
    _expand_count([child_n] + sig, L + 1 if L + 1 < child_n else child_n,
                  child_n, max_n, counts, totals)
    cget = counts.get
    pm = sig[0]
    pmpos = 1
    for p in range(2, L + 2):
        v = sig[p - 2]
        if v < pm:
            pm = v
            pmpos = p - 1
        key = (child_n, pm, p - pmpos)
        counts[key] = cget(key, 0) + 1
        if p <= size and sig[p - 1] > pm:
            F = p
        else:
            F = child_n
            for q in range(p, size):
                if sig[q] > pm:
                    F = q + 1
                    break
        Lc = L + 1 if L + 1 < F else F
        if Lc > child_n:
            Lc = child_n
        _expand_count(sig[:p - 1] + [child_n] + sig[p - 1:], Lc,
                      child_n, max_n, counts, totals)


def _count_sweep(max_n: int) -> tuple[dict, list[int]]:
    counts: dict = {}
    totals = [0] * (max_n + 1)
    if max_n >= 1:
        totals[1] = 1
        if max_n >= 2:
            _expand_count([1], 1, 1, max_n, counts, totals)
    return counts, totals


def _collect_seeds(seed_n: int) -> list[tuple[tuple[int, ...], int]]:
    """All tree nodes of size seed_n together with their 132-prefix bound."""
    seeds: list[tuple[tuple[int, ...], int]] = []
    if seed_n == 1:
        return [((1,), 1)]
    stack: list[tuple[tuple[int, ...], int]] = [((1,), 1)]
    while stack:
        sig, L = stack.pop()
        size = len(sig)
        child_n = size + 1
        out = seeds if child_n == seed_n else stack
        out.append(((child_n,) + sig, L + 1 if L + 1 < child_n else child_n))
        pm = sig[0]
        for p in range(2, L + 2):
            v = sig[p - 2]
            if v < pm:
                pm = v
            if p <= size and sig[p - 1] > pm:
                F = p
            else:
                F = child_n
                for q in range(p, size):
                    if sig[q] > pm:
                        F = q + 1
                        break
            Lc = L + 1 if L + 1 < F else F
            if Lc > child_n:
                Lc = child_n
            out.append((sig[:p - 1] + (child_n,) + sig[p - 1:], Lc))
    return seeds


def _count_subtrees(args: tuple[list[tuple[tuple[int, ...], int]], int]) -> tuple[dict, list[int]]:
    chunk, max_n = args
    counts: dict = {}
    totals = [0] * (max_n + 1)
    for sig, L in chunk:
        _expand_count(list(sig), L, len(sig), max_n, counts, totals)
    return counts, totals


def _resolve_workers(workers: int) -> int:
    if workers < 0:
        raise ValueError("worker count must be >= 0")
    return workers if workers else (os.cpu_count() or 1)


# -- exact class-count tables ------------------------------------------------


@dataclass
class ClassCountTable:
    """Exact counts |S_{n,k}^{a<n}(1324)| for one size n, plus the total
    |S_n(1324)|. Keys satisfy a + k <= n; every avoider not starting with
    n appears in exactly one class."""

    n: int
    total: int
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    def count(self, a: int, k: int) -> int:
        return self.counts.get((a, k), 0)

    def classified_total(self) -> int:
        return sum(self.counts.values())

    def to_jsonl(self) -> str:
        lines = [json.dumps({"n": self.n, "total": str(self.total)})]
        for (a, k) in sorted(self.counts):
            lines.append(json.dumps(
                {"n": self.n, "a": a, "k": k, "count": str(self.counts[(a, k)])}))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "ClassCountTable":
        total = None
        n = None
        counts: dict[tuple[int, int], int] = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            if n is None:
                n = rec["n"]
            elif rec["n"] != n:
                raise ValueError(f"mixed sizes in table: {rec['n']} vs {n}")
            if "total" in rec:
                total = int(rec["total"])
            else:
                counts[(rec["a"], rec["k"])] = int(rec["count"])
        if n is None or total is None:
            raise ValueError("table text has no total record")
        return cls(n=n, total=total, counts=counts)


def _cache_path(cache_dir: Path, n: int) -> Path:
    return Path(cache_dir) / f"class-counts-n{n:02d}.jsonl"


def count_tables(max_n: int, workers: int = 1,
                 cache_dir: str | os.PathLike | None = None) -> dict[int, ClassCountTable]:
    """Exact class-count tables for every 1 <= n <= max_n, from one sweep
    of the generating tree.

    workers=0 means one per CPU; any worker count yields identical tables
    (merging is plain integer addition over disjoint subtrees). With a
    cache directory, tables are loaded when every size is present and
    persisted after recomputation; cache files are byte-identical to a
    fresh recomputation.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if cache_dir is not None:
        paths = [_cache_path(Path(cache_dir), n) for n in range(1, max_n + 1)]
        if all(p.is_file() for p in paths):
            tables = {}
            for n, p in zip(range(1, max_n + 1), paths):
                table = ClassCountTable.from_jsonl(p.read_text())
                if table.n != n:
                    raise ValueError(f"cache file {p} holds n={table.n}")
                tables[n] = table
            return tables

    workers = _resolve_workers(workers)
    if workers <= 1 or max_n <= _SEED_SIZE + 1:
        counts, totals = _count_sweep(max_n)
    else:
        counts, totals = _count_sweep(_SEED_SIZE)
        totals += [0] * (max_n - _SEED_SIZE)
        seeds = _collect_seeds(_SEED_SIZE)
        nchunks = min(len(seeds), workers * 4)
        chunks = [(seeds[i::nchunks], max_n) for i in range(nchunks)]
        with Pool(workers) as pool:
            for part_counts, part_totals in pool.imap_unordered(_count_subtrees, chunks):
                for key, c in part_counts.items():
                    counts[key] = counts.get(key, 0) + c
                for n, t in enumerate(part_totals):
                    totals[n] += t

    per_n: dict[int, dict[tuple[int, int], int]] = {n: {} for n in range(1, max_n + 1)}
    for (n, a, k), c in counts.items():
        per_n[n][(a, k)] = c
    tables = {n: ClassCountTable(n=n, total=totals[n], counts=per_n[n])
              for n in range(1, max_n + 1)}

    if cache_dir is not None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        for n, table in tables.items():
            _cache_path(Path(cache_dir), n).write_text(table.to_jsonl())
    return tables


def count_table(n: int, workers: int = 1,
                cache_dir: str | os.PathLike | None = None) -> ClassCountTable:
    """Exact counts for all (a, k) plus the total |S_n(1324)|."""
    return count_tables(n, workers=workers, cache_dir=cache_dir)[n]


# -- streaming class members -------------------------------------------------


def _iter_tree_members(n: int, a: Optional[int] = None,
                       k: Optional[int] = None) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """Yield (a, k, values) over the size-n avoiders with a positional
    class, filtered on a and k when given. Tree order, not lexicographic.
    """
    if n <= 1:
        return
    stack: list[tuple[tuple[int, ...], int]] = [((1,), 1)]
    while stack:
        sig, L = stack.pop()
        size = len(sig)
        child_n = size + 1
        at_target = child_n == n
        if not at_target:
            stack.append(((child_n,) + sig, L + 1 if L + 1 < child_n else child_n))
        pm = sig[0]
        pmpos = 1
        for p in range(2, L + 2):
            v = sig[p - 2]
            if v < pm:
                pm = v
                pmpos = p - 1
            if at_target:
                if (a is None or pm == a) and (k is None or p - pmpos == k):
                    yield pm, p - pmpos, sig[:p - 1] + (child_n,) + sig[p - 1:]
                continue
            if p <= size and sig[p - 1] > pm:
                F = p
            else:
                F = child_n
                for q in range(p, size):
                    if sig[q] > pm:
                        F = q + 1
                        break
            Lc = L + 1 if L + 1 < F else F
            if Lc > child_n:
                Lc = child_n
            stack.append((sig[:p - 1] + (child_n,) + sig[p - 1:], Lc))


def _iter_subtree_members(seed: tuple[tuple[int, ...], int], max_n: int,
                          a: Optional[int] = None) -> Iterator[tuple[int, int, int, tuple[int, ...]]]:
    """Yield (n, a, k, values) for every classified avoider of size
    len(seed)+1 .. max_n inside the subtree rooted at ``seed``."""
    stack = [seed]
    while stack:
        sig, L = stack.pop()
        size = len(sig)
        child_n = size + 1
        deeper = child_n < max_n
        if deeper:
            stack.append(((child_n,) + sig, L + 1 if L + 1 < child_n else child_n))
        pm = sig[0]
        pmpos = 1
        for p in range(2, L + 2):
            v = sig[p - 2]
            if v < pm:
                pm = v
                pmpos = p - 1
            if a is None or pm == a:
                yield child_n, pm, p - pmpos, sig[:p - 1] + (child_n,) + sig[p - 1:]
            if deeper:
                if p <= size and sig[p - 1] > pm:
                    F = p
                else:
                    F = child_n
                    for q in range(p, size):
                        if sig[q] > pm:
                            F = q + 1
                            break
                Lc = L + 1 if L + 1 < F else F
                if Lc > child_n:
                    Lc = child_n
                stack.append((sig[:p - 1] + (child_n,) + sig[p - 1:], Lc))


def iter_class_members(n: int, a: Optional[int] = None,
                       k: Optional[int] = None) -> Iterator[Permutation]:
    """All size-n avoiders with a positional class (optionally filtered to
    one a and one k), as Permutations. Order is the tree's, not lex."""
    for _, _, values in _iter_tree_members(n, a, k):
        yield Permutation(values, validate=False)


def count_ending_with_one(n: int, k: int) -> int:
    """Number of size-n class-(2, k) avoiders whose last entry is 1,
    counted by direct enumeration."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return sum(1 for _, _, vals in _iter_tree_members(n, 2, k) if vals[-1] == 1)
