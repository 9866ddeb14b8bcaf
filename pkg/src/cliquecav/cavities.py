"""Cavity search over a clique complex.

A k-cavity certificate is a 0-1 vector over k-cliques that is a GF(2)
cycle, passes through its generator clique, has exactly L ones, and is
linearly independent of the (k+1)-clique boundaries together with all
previously accepted certificates. Generators are identified from pivot
structure; minimal representatives are found by exact-length 0-1 search
over an increasing length schedule.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .cliques import Clique, CliqueComplex
from .gf2 import Gf2Matrix, basis_insert, column_space_basis, gf2_rank
from .solver import DEFAULT_NODE_LIMIT, ZeroOneProgram, iter_solutions

log = logging.getLogger(__name__)


class CavitySearchError(RuntimeError):
    """Search exhausted its length ceiling; carries the partial result."""

    def __init__(self, message: str, partial: list[CavityCertificate]):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SpanningSelection:
    """Deterministic split of the k-clique index set.

    tree_cols: pivot columns of B_k (the order-k spanning selection).
    boundary_cols: pivot columns of B_{k+1}.
    covered_cliques: non-tree k-cliques accounted for by the chosen
        boundaries.
    generator_cliques: the remaining non-tree k-cliques; one per cavity.
    """

    order: int
    tree_cols: tuple[int, ...]
    boundary_cols: tuple[int, ...]
    covered_cliques: tuple[int, ...]
    generator_cliques: tuple[int, ...]


@dataclass
class CavityCertificate:
    order: int
    indicator: int  # bitmask over k-clique indices
    generator: int  # k-clique index with the indicator bit set
    length: int
    node_set: tuple[int, ...]
    rank_evidence: int | None = None

    def support(self) -> list[int]:
        out = []
        v = self.indicator
        while v:
            low = v & -v
            out.append(low.bit_length() - 1)
            v ^= low
        return out


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _column_weight(m: Gf2Matrix, j: int) -> int:
    return sum((row >> j) & 1 for row in m.bits)


def infer_order(bk: Gf2Matrix) -> int:
    """Order k of the cliques indexing B_k's columns (column weight - 1)."""
    if bk.cols == 0:
        raise ValueError("cannot infer order from an empty matrix")
    return _column_weight(bk, 0) - 1


def select_spanning_and_generators(bk: Gf2Matrix, bk1: Gf2Matrix) -> SpanningSelection:
    """Split k-cliques into tree, boundary-covered, and generator sets.

    The tree is the greedy pivot-column set of B_k. Each pivot column of
    B_{k+1} is projected onto the non-tree coordinates and reduced
    against the previously chosen projections; its pivot coordinate is
    the non-tree k-clique that boundary accounts for. The generators are
    the beta_k non-tree cliques left unaccounted.
    """
    k = infer_order(bk)
    rk = gf2_rank(bk)
    tree = set(rk.pivot_cols)
    non_tree = [j for j in range(bk.cols) if j not in tree]
    non_tree_mask = 0
    for j in non_tree:
        non_tree_mask |= 1 << j
    rk1 = gf2_rank(bk1) if bk1.cols else None
    boundary_cols = rk1.pivot_cols if rk1 else []
    columns = bk1.column_vectors() if bk1.cols else []
    covered: list[int] = []
    proj_basis: dict[int, int] = {}
    for c in boundary_cols:
        proj = columns[c] & non_tree_mask
        while proj:
            low = proj & -proj
            if low not in proj_basis:
                proj_basis[low] = proj
                covered.append(low.bit_length() - 1)
                break
            proj ^= proj_basis[low]
        else:
            raise AssertionError(
                f"boundary column {c} vanished on non-tree coordinates"
            )
    covered_set = set(covered)
    generators = [j for j in non_tree if j not in covered_set]
    # tree, covered, and generators must partition the k-clique indices
    assert len(tree) + len(covered_set) + len(generators) == bk.cols
    assert not tree & covered_set
    return SpanningSelection(
        k,
        tuple(rk.pivot_cols),
        tuple(boundary_cols),
        tuple(sorted(covered)),
        tuple(generators),
    )


def _parity_rows(bk: Gf2Matrix) -> list[list[int]]:
    rows = []
    for bits in bk.bits:
        row = []
        v = bits
        while v:
            low = v & -v
            row.append(low.bit_length() - 1)
            v ^= low
        if row:
            rows.append(row)
    return rows


def find_cycle(
    bk: Gf2Matrix,
    v: int,
    length: int,
    row_sum_cap: int | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> int | None:
    """Lexicographically first cycle through clique v with exactly `length` ones.

    Solves: x_v = 1, B_k x = 0 (mod 2), sum x = length. Returns the
    indicator bitmask, or None when no such cycle exists.
    """
    if not 0 <= v < bk.cols:
        raise ValueError(f"clique index {v} out of range")
    k = infer_order(bk)
    if length < 2 ** (k + 1):
        raise ValueError(f"length {length} below the order-{k} minimum {2 ** (k + 1)}")
    program = ZeroOneProgram(
        num_vars=bk.cols,
        parity_rows=_parity_rows(bk),
        fixed=[(v, 1)],
        cardinality=length,
        row_sum_cap=row_sum_cap,
    )
    for mask in iter_solutions(program, node_limit):
        return mask
    return None


def length_schedule(k: int, ceiling: int):
    """Lengths 2^(k+1), then steps of 1 for k=1 and 2^(k-1) for k>=2."""
    step = 1 if k == 1 else 2 ** (k - 1)
    length = 2 ** (k + 1)
    while length <= ceiling:
        yield length
        length += step


def find_cavities(
    bk: Gf2Matrix,
    bk1: Gf2Matrix,
    sel: SpanningSelection,
    cliques: Sequence[Clique],
    row_sum_cap: int | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
    length_ceiling: int | None = None,
) -> list[CavityCertificate]:
    """One minimal independent certificate per generator clique.

    Generators are processed in ascending index order. For each length on
    the schedule, same-length candidate cycles are enumerated exhaustively
    in lexicographic order and the first one that raises the rank of
    (accepted certificates | B_{k+1} columns) is accepted.
    """
    k = sel.order
    if not sel.generator_cliques:
        return []
    basis = dict(column_space_basis(bk1))
    r_next = len(basis)
    ceiling = length_ceiling if length_ceiling is not None else bk.cols
    rows = _parity_rows(bk)
    accepted: list[CavityCertificate] = []
    for v in sel.generator_cliques:
        found = None
        for length in length_schedule(k, ceiling):
            program = ZeroOneProgram(
                num_vars=bk.cols,
                parity_rows=rows,
                fixed=[(v, 1)],
                cardinality=length,
                row_sum_cap=row_sum_cap,
            )
            for mask in iter_solutions(program, node_limit):
                if basis_insert(basis, mask):
                    nodes = set()
                    for j in _mask_indices(mask):
                        nodes.update(cliques[j])
                    found = CavityCertificate(
                        order=k,
                        indicator=mask,
                        generator=v,
                        length=length,
                        node_set=tuple(sorted(nodes)),
                        rank_evidence=r_next + len(accepted) + 1,
                    )
                    break
            if found is not None:
                accepted.append(found)
                log.debug("generator %d: accepted length-%d cavity", v, found.length)
                break
        if found is None:
            raise CavitySearchError(
                f"no independent cycle through generator {v} up to length {ceiling}",
                accepted,
            )
    return accepted


def _mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def verify_certificate(
    cert: CavityCertificate,
    bk: Gf2Matrix,
    bk1: Gf2Matrix,
    prior: Sequence[CavityCertificate] = (),
) -> VerifyResult:
    """Re-check a certificate from scratch, naming the failed constraint.

    Checks, in order: the generator bit is set; the indicator is a GF(2)
    cycle of B_k; adjoining the indicator after all prior certificates to
    the B_{k+1} column space raises the rank each time; the recorded
    length is the popcount and is at least the order-k minimum 2^(k+1).
    A clique boundary therefore fails on independence, not on length.
    """
    x = cert.indicator
    if x < 0 or x >> bk.cols:
        return VerifyResult(False, "dimension")
    if not (x >> cert.generator) & 1:
        return VerifyResult(False, "generator-membership")
    for row in bk.bits:
        if (row & x).bit_count() & 1:
            return VerifyResult(False, "cycle")
    basis = dict(column_space_basis(bk1))
    for p in prior:
        if not basis_insert(basis, p.indicator):
            return VerifyResult(False, "independence")
    if not basis_insert(basis, x):
        return VerifyResult(False, "independence")
    if x.bit_count() != cert.length or cert.length < 2 ** (cert.order + 1):
        return VerifyResult(False, "length")
    return VerifyResult(True)


def certificate_from_cliques(
    level: Sequence[Clique],
    order: int,
    members: Sequence[Clique],
    generator: Clique,
) -> CavityCertificate:
    """Build a certificate from explicit clique node-tuples for verification."""
    index = {c: i for i, c in enumerate(level)}
    mask = 0
    nodes: set[int] = set()
    for c in members:
        key = tuple(sorted(c))
        if key not in index:
            raise ValueError(f"{key} is not an order-{order} clique of the complex")
        mask |= 1 << index[key]
        nodes.update(key)
    gen_key = tuple(sorted(generator))
    if gen_key not in index:
        raise ValueError(f"generator {gen_key} is not an order-{order} clique")
    return CavityCertificate(
        order=order,
        indicator=mask,
        generator=index[gen_key],
        length=mask.bit_count(),
        node_set=tuple(sorted(nodes)),
    )


def certificates_to_json(
    certs: Sequence[CavityCertificate],
    cx: CliqueComplex,
    labels: Sequence[str],
) -> list[dict]:
    """Export: [{"order", "generator", "cliques", "length", "nodes"}, ...]."""
    out = []
    for cert in certs:
        level = cx.levels[cert.order]
        out.append(
            {
                "order": cert.order,
                "generator": [labels[u] for u in level[cert.generator]],
                "cliques": [[labels[u] for u in level[j]] for j in cert.support()],
                "length": cert.length,
                "nodes": [labels[u] for u in cert.node_set],
            }
        )
    return out


def certificates_from_json(
    doc: Sequence[dict],
    cx: CliqueComplex,
    labels: Sequence[str],
) -> list[CavityCertificate]:
    """Rebuild certificates exported by certificates_to_json."""
    index = {lab: i for i, lab in enumerate(labels)}
    certs = []
    for entry in doc:
        order = entry["order"]
        if not 0 <= order < len(cx.levels):
            raise ValueError(f"certificate order {order} outside the complex")
        members = [tuple(sorted(index[lab] for lab in c)) for c in entry["cliques"]]
        generator = tuple(sorted(index[lab] for lab in entry["generator"]))
        cert = certificate_from_cliques(cx.levels[order], order, members, generator)
        if cert.length != entry["length"]:
            raise ValueError(
                f"certificate claims length {entry['length']} but lists {cert.length} cliques"
            )
        return_nodes = tuple(sorted(index[lab] for lab in entry["nodes"]))
        if return_nodes != cert.node_set:
            raise ValueError("certificate node list disagrees with its cliques")
        certs.append(cert)
    return certs


def certificate_to_dot(
    cert: CavityCertificate,
    cx: CliqueComplex,
    labels: Sequence[str],
    name: str,
) -> str:
    """DOT rendering of the cavity's node-edge skeleton."""
    level = cx.levels[cert.order]
    edges: set[tuple[int, int]] = set()
    for j in cert.support():
        for u, v in combinations(level[j], 2):
            edges.add((u, v))
    lines = [f"graph {name} {{"]
    lines.append(f'  label="order {cert.order} cavity, length {cert.length}";')
    for u in cert.node_set:
        lines.append(f'  "{labels[u]}";')
    for u, v in sorted(edges):
        lines.append(f'  "{labels[u]}" -- "{labels[v]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
