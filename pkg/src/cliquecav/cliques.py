"""Clique enumeration and complexes.

Cliques are graded by order: a node is a 0-clique, an edge a 1-clique, a
triangle a 2-clique. Level k+1 is built from level k by extending each
clique with every common neighbor whose id exceeds the clique's maximum,
so each clique is produced exactly once and levels come out in
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .graph import DEFAULT_BUDGET, Network, network_from_edges

Clique = tuple[int, ...]


@dataclass(frozen=True)
class CliqueComplex:
    """All cliques of a graph, listed per order.

    Attributes
    ----------
    levels : tuple of per-order clique tuples, lexicographically sorted.
    counts : m_k = len(levels[k]) per order.
    truncated_at : order whose level would have exceeded the budget, or None.
    warning : human-readable truncation note, or None.
    """

    levels: tuple[tuple[Clique, ...], ...]
    counts: tuple[int, ...]
    truncated_at: int | None = None
    warning: str | None = None

    @property
    def top_order(self) -> int:
        return len(self.levels) - 1


@dataclass(frozen=True)
class EulerNumber:
    chi: int


def enumerate_cliques(
    net: Network, budget: int = DEFAULT_BUDGET, max_order: int | None = None
) -> CliqueComplex:
    """Enumerate all cliques per order by common-neighbor extension.

    Parameters
    ----------
    net : canonical Network.
    budget : per-order cap on the number of cliques. If a level would
        exceed it, that level is dropped, ``truncated_at`` is set to its
        order and a warning is attached; enumeration never returns a
        silently partial level.
    max_order : stop after this order even if higher cliques exist.

    Returns
    -------
    CliqueComplex with levels [0..K] where K is the last nonempty order
    (or max_order / the truncation point).
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    n = net.node_count
    levels: list[tuple[Clique, ...]] = []
    if n > budget:
        return CliqueComplex((), (), 0, f"level 0 exceeds budget ({n} > {budget})")
    if n == 0:
        return CliqueComplex((), ())
    levels.append(tuple((u,) for u in range(n)))
    if max_order == 0:
        return CliqueComplex(tuple(levels), tuple(len(l) for l in levels))

    adj_sets = [set(ns) for ns in net.adjacency]
    # carry (clique, extension candidates > max id) pairs between levels
    current: list[tuple[Clique, tuple[int, ...]]] = []
    for u in range(n):
        ext = tuple(v for v in net.adjacency[u] if v > u)
        current.append(((u,), ext))
    order = 0
    while True:
        order += 1
        if max_order is not None and order > max_order:
            break
        nxt: list[tuple[Clique, tuple[int, ...]]] = []
        count = 0
        overflow = False
        for clique, ext in current:
            for i, w in enumerate(ext):
                new_ext = tuple(z for z in ext[i + 1 :] if z in adj_sets[w])
                nxt.append((clique + (w,), new_ext))
                count += 1
                if count > budget:
                    overflow = True
                    break
            if overflow:
                break
        if overflow:
            return CliqueComplex(
                tuple(levels),
                tuple(len(l) for l in levels),
                order,
                f"level {order} exceeds budget ({budget}); enumeration stopped",
            )
        if not nxt:
            break
        levels.append(tuple(c for c, _ in nxt))
        current = nxt
    return CliqueComplex(tuple(levels), tuple(len(l) for l in levels))


def euler_characteristic(cx: CliqueComplex) -> EulerNumber:
    """Alternating sum of clique counts; undefined on a truncated complex."""
    if cx.truncated_at is not None:
        raise ValueError("truncated complex: Euler characteristic undefined")
    chi = 0
    for k, m in enumerate(cx.counts):
        chi += m if k % 2 == 0 else -m
    return EulerNumber(chi)


def maximal_cliques(net: Network) -> list[Clique]:
    """All maximal cliques, as sorted tuples in lexicographic order.

    Pivoted recursive expansion; used as an independent cross-check of
    enumerate_cliques (expanding every maximal clique into all sub-tuples
    must reproduce the per-order levels exactly).
    """
    adj = [set(ns) for ns in net.adjacency]
    out: list[Clique] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot, best = -1, -1
        for u in sorted(p | x):
            c = len(p & adj[u])
            if c > best:
                pivot, best = u, c
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand([], set(range(net.node_count)), set())
    return sorted(out)


def expand_maximal_cliques(maximal: list[Clique]) -> list[tuple[Clique, ...]]:
    """Expand maximal cliques into full per-order levels (dedup + sort)."""
    by_order: dict[int, set[Clique]] = {}
    for c in maximal:
        for size in range(1, len(c) + 1):
            level = by_order.setdefault(size - 1, set())
            for sub in combinations(c, size):
                level.add(sub)
    if not by_order:
        return []
    return [tuple(sorted(by_order[k])) for k in range(max(by_order) + 1)]


def max_clique_order(net: Network) -> int:
    """Largest k with m_k > 0, via maximal cliques."""
    maximal = maximal_cliques(net)
    if not maximal:
        return -1
    return max(len(c) for c in maximal) - 1


def cocktail_party_network(k: int) -> Network:
    """Complete graph on 2(k+1) nodes minus a perfect matching.

    Nodes 2p and 2p+1 form the excluded (antipodal) pair p. Labels are
    "1".."2k+2". Adding pair k to the pair-(k-1) graph realizes the
    two-new-nodes suspension recursion.
    """
    if not 1 <= k <= 12:
        raise ValueError(f"order {k} out of supported range 1..12")
    n = 2 * (k + 1)
    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            if u // 2 != v // 2:
                pairs.append((str(u + 1), str(v + 1)))
    return network_from_edges([str(i + 1) for i in range(n)], pairs)


def generate_smallest_cavity_complex(k: int) -> CliqueComplex:
    """Clique complex of the smallest k-cavity (cross-polytope boundary).

    Face counts are measured by enumeration, not assumed; they satisfy
    m_j = 2^(j+1) * C(k+1, j+1) for 0 <= j <= k.
    """
    return enumerate_cliques(cocktail_party_network(k))


def cross_polytope_count(k: int, j: int) -> int:
    """Closed-form face count m_j of the smallest k-cavity complex."""
    return 2 ** (j + 1) * comb(k + 1, j + 1)


def complex_to_json(cx: CliqueComplex, source_checksum: str) -> dict:
    """Cache document: {"counts", "levels", "truncated_at", "source_checksum"}."""
    return {
        "counts": list(cx.counts),
        "levels": [[list(c) for c in level] for level in cx.levels],
        "truncated_at": cx.truncated_at,
        "source_checksum": source_checksum,
    }


def complex_from_json(doc: dict) -> tuple[CliqueComplex, str]:
    levels = tuple(tuple(tuple(c) for c in level) for level in doc["levels"])
    counts = tuple(doc["counts"])
    if counts != tuple(len(l) for l in levels):
        raise ValueError("cache counts disagree with levels")
    truncated_at = doc["truncated_at"]
    warning = None
    if truncated_at is not None:
        warning = f"level {truncated_at} exceeded the budget; enumeration stopped"
    return CliqueComplex(levels, counts, truncated_at, warning), doc["source_checksum"]
