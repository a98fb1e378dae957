"""Exact minimum-preimage computation and ambiguity detection for small graphs.

A preimage (clique cover) of a graph G is a set of d-cliques of G whose
pairwise projections cover every edge of G exactly; a minimum preimage has
the fewest hyperedges.  This module is the exact set-cover engine behind the
MAP reconstruction rule and the ambiguity search: it finds the minimum size
r by branch and bound, then enumerates minimum covers in lexicographic
order, exhaustively enough to decide whether a second minimum exists.

It is meant for component-scale inputs (tens of candidate hyperedges), not
whole projected graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Graph, Hypergraph, clique_hypergraph


@dataclass(frozen=True)
class CoverInstance:
    """A set-cover view of a preimage problem.

    universe: the target graph's edges; candidates: d-cliques, each covering
    its C(d, 2) projected pairs.  The graph has a preimage iff every
    universe edge lies in at least one candidate.
    """

    universe: tuple
    candidates: tuple

    @property
    def feasible(self) -> bool:
        covered = set()
        for c in self.candidates:
            for i in range(len(c)):
                for j in range(i + 1, len(c)):
                    covered.add((c[i], c[j]))
        return all(e in covered for e in self.universe)


@dataclass(frozen=True)
class PreimageReport:
    """Result of exact minimum-preimage search.

    min_covers holds at most ``cap`` minimum covers, lexicographically
    least first; the ambiguous flag is decided by exhaustive search for a
    second minimum and never depends on the cap.
    """

    feasible: bool
    min_size: Optional[int]
    min_covers: tuple
    ambiguous: bool
    total_preimage_count: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "min_size": self.min_size,
            "min_covers": [[list(e) for e in cover] for cover in self.min_covers],
            "ambiguous": self.ambiguous,
            "total_preimage_count": self.total_preimage_count,
        }


def _bitmasks(universe: Sequence, candidates: Sequence) -> tuple:
    """Per-candidate coverage bitmasks over the universe edge list."""
    index = {e: i for i, e in enumerate(universe)}
    masks = []
    for c in candidates:
        m = 0
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                bit = index.get((c[i], c[j]))
                if bit is not None:
                    m |= 1 << bit
        masks.append(m)
    return masks, (1 << len(universe)) - 1


def _min_cover_size(full: int, masks: Sequence[int]) -> Optional[int]:
    """Exact minimum cover size by branch and bound.

    Branches on the lexicographically least uncovered edge over the
    candidates containing it; admissible bound ceil(#uncovered / max_cover).
    Returns None if the universe cannot be covered.
    """
    if full == 0:
        return 0
    union = 0
    for m in masks:
        union |= m
    if union & full != full:
        return None
    nbits = full.bit_length()
    by_edge: list = [[] for _ in range(nbits)]
    for ci, m in enumerate(masks):
        mm = m & full
        while mm:
            low = mm & -mm
            by_edge[low.bit_length() - 1].append(ci)
            mm ^= low
    max_cover = max(m.bit_count() for m in masks)
    best = len(masks) + 1

    def dfs(uncovered: int, depth: int) -> None:
        nonlocal best
        if uncovered == 0:
            best = min(best, depth)
            return
        if depth + -(-uncovered.bit_count() // max_cover) >= best:
            return
        edge = (uncovered & -uncovered).bit_length() - 1
        for ci in by_edge[edge]:
            dfs(uncovered & ~masks[ci], depth + 1)

    dfs(full, 0)
    return best


def _enumerate_exact_covers(
    full: int, masks: Sequence[int], size: int, stop_after: Optional[int] = None
) -> list:
    """All covers of exactly ``size`` candidates, emitted in lexicographic
    order on sorted index tuples (include-before-exclude DFS).

    Stops early once ``stop_after`` covers are found; with stop_after=None
    the enumeration is exhaustive.
    """
    m = len(masks)
    suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]
    max_cover = max((mk.bit_count() for mk in masks), default=1) or 1
    out: list = []
    chosen: list = []

    def dfs(i: int, covered: int) -> bool:
        if covered == full:
            out.append(tuple(chosen))
            return stop_after is not None and len(out) >= stop_after
        if i == m or len(chosen) == size:
            return False
        if covered | suffix[i] != full:
            return False
        need = (full & ~covered).bit_count()
        if len(chosen) + -(-need // max_cover) > size:
            return False
        chosen.append(i)
        if dfs(i + 1, covered | masks[i]):
            return True
        chosen.pop()
        return dfs(i + 1, covered)

    dfs(0, 0)
    return out


def _enumerate_all_covers(
    full: int, masks: Sequence[int], size_limit: int
) -> list:
    """All candidate subsets of size <= size_limit whose union covers full."""
    m = len(masks)
    suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]
    out: list = []
    chosen: list = []

    def dfs(i: int, covered: int) -> None:
        if covered | suffix[i] != full:
            return
        if i == m:
            if covered == full:
                out.append(tuple(chosen))
            return
        if len(chosen) < size_limit:
            chosen.append(i)
            dfs(i + 1, covered | masks[i])
            chosen.pop()
        dfs(i + 1, covered)

    dfs(0, 0)
    return out


def solve_cover(
    universe: Sequence, candidates: Sequence, cap: int = 16
) -> tuple:
    """Exact cover core shared by min_preimage and the MAP component solver.

    Returns (min_size, covers, ambiguous) where covers are tuples of
    candidate hyperedges (lex-least first, at most cap of them), or
    (None, (), False) if infeasible.  ambiguous means a second distinct
    minimum cover exists; deciding it never relies on the cap.
    """
    universe = sorted(universe)
    candidates = sorted(candidates)
    masks, full = _bitmasks(universe, candidates)
    r = _min_cover_size(full, masks)
    if r is None:
        return None, (), False
    index_covers = _enumerate_exact_covers(full, masks, r, stop_after=max(2, cap))
    covers = tuple(tuple(candidates[i] for i in ic) for ic in index_covers[:cap])
    return r, covers, len(index_covers) >= 2


def min_preimage(
    g: Graph,
    d: int,
    vertex_bound: int = 64,
    cap: int = 16,
    count_all: bool = False,
) -> PreimageReport:
    """Exact minimum preimages of g among its d-cliques.

    Infeasible (some edge of g lies in no d-clique) is reported, not raised:
    the CLI accepts arbitrary graphs.  ``count_all`` additionally counts all
    preimages of any size by brute force; only sensible for tiny inputs.
    """
    if g.n > vertex_bound:
        raise ValueError(
            f"graph has {g.n} vertices; exact engine is capped at {vertex_bound} "
            "(raise vertex_bound explicitly if you mean it)"
        )
    candidates = clique_hypergraph(g, d).edges
    masks, full = _bitmasks(g.edges, candidates)
    r = _min_cover_size(full, masks)
    if r is None:
        return PreimageReport(False, None, (), False)
    index_covers = _enumerate_exact_covers(full, masks, r, stop_after=max(2, cap))
    covers = tuple(tuple(candidates[i] for i in ic) for ic in index_covers[:cap])
    total = None
    if count_all:
        total = len(_enumerate_all_covers(full, masks, len(candidates)))
    return PreimageReport(True, r, covers, len(index_covers) >= 2, total)


def enumerate_preimages(g: Graph, d: int, size_limit: int) -> list:
    """All preimages of g with at most size_limit hyperedges, sorted."""
    candidates = clique_hypergraph(g, d).edges
    masks, full = _bitmasks(g.edges, candidates)
    union = 0
    for m in masks:
        union |= m
    if union != full:
        return []
    subsets = _enumerate_all_covers(full, masks, size_limit)
    hypergraphs = [
        Hypergraph(g.n, d, [candidates[i] for i in ic]) for ic in subsets
    ]
    return sorted(hypergraphs, key=lambda h: h.edges)
