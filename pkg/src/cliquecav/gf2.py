"""Dense bitset matrices over GF(2): boundary matrices, ranks, Betti numbers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cliques import CliqueComplex


@dataclass
class Gf2Matrix:
    """Row-major bitset matrix: bit j of bits[i] is entry (i, j)."""

    rows: int
    cols: int
    bits: list[int]
    row_labels: list[int] = field(default_factory=list)
    col_labels: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.bits) != self.rows:
            raise ValueError("bits length disagrees with row count")
        if not self.row_labels:
            self.row_labels = list(range(self.rows))
        if not self.col_labels:
            self.col_labels = list(range(self.cols))
        self._col_basis: dict[int, int] | None = None

    def entry(self, i: int, j: int) -> int:
        return (self.bits[i] >> j) & 1

    def column_vectors(self) -> list[int]:
        """Transpose: one int per column, bit i = row i."""
        cols = [0] * self.cols
        for i, v in enumerate(self.bits):
            while v:
                low = v & -v
                cols[low.bit_length() - 1] |= 1 << i
                v ^= low
        return cols


@dataclass
class RankResult:
    rank: int
    pivot_cols: list[int]
    reduced: Gf2Matrix


def zero_cols_matrix(rows: int, row_labels: list[int] | None = None) -> Gf2Matrix:
    """A rows x 0 matrix; stands in for the boundary above the top order."""
    return Gf2Matrix(rows, 0, [0] * rows, row_labels or [], [])


def build_boundary_matrix(cx: CliqueComplex, k: int) -> Gf2Matrix:
    """Incidence of (k-1)-cliques (rows) against k-cliques (columns).

    Entry (i, j) = 1 iff row clique i is a face of column clique j; every
    column therefore carries exactly k+1 ones.
    """
    if k < 1:
        raise ValueError("boundary order must be >= 1")
    if cx.truncated_at is not None and cx.truncated_at <= k:
        raise ValueError(f"complex truncated at order {cx.truncated_at}; level {k} unreliable")
    if k >= len(cx.levels) or k - 1 >= len(cx.levels):
        raise ValueError(f"complex has no level {k}")
    faces = cx.levels[k - 1]
    cells = cx.levels[k]
    face_index = {c: i for i, c in enumerate(faces)}
    bits = [0] * len(faces)
    for j, cell in enumerate(cells):
        for drop in range(len(cell)):
            face = cell[:drop] + cell[drop + 1 :]
            bits[face_index[face]] |= 1 << j
    return Gf2Matrix(len(faces), len(cells), bits)


def _lowbit_index(v: int) -> int:
    return (v & -v).bit_length() - 1


def basis_insert(basis: dict[int, int], v: int) -> bool:
    """Reduce v against basis (keyed by lowest set bit); insert if independent."""
    while v:
        low = v & -v
        if low not in basis:
            basis[low] = v
            return True
        v ^= basis[low]
    return False


def gf2_rank(m: Gf2Matrix) -> RankResult:
    """Row reduction with deterministic pivoting.

    pivot_cols is the left-to-right greedy independent column set (the
    pivot columns of the unique reduced row-echelon form, which `reduced`
    holds, one row per pivot in ascending pivot order).
    """
    basis: dict[int, int] = {}
    for v in m.bits:
        basis_insert(basis, v)
    # back-substitute so every pivot column is zero outside its own row
    for low in sorted(basis, reverse=True):
        vec = basis[low]
        for other in basis:
            if other < low and basis[other] & low:
                basis[other] ^= vec
    pivots = sorted(basis)
    pivot_cols = [p.bit_length() - 1 for p in pivots]
    reduced = Gf2Matrix(len(pivots), m.cols, [basis[p] for p in pivots],
                        list(pivot_cols), list(m.col_labels))
    return RankResult(len(pivots), pivot_cols, reduced)


def column_space_basis(m: Gf2Matrix) -> dict[int, int]:
    """Basis of the column space, columns read as ints over row indices.

    Cached on the matrix; callers must copy before mutating.
    """
    if m._col_basis is None:
        basis: dict[int, int] = {}
        for col in m.column_vectors():
            basis_insert(basis, col)
        m._col_basis = basis
    return m._col_basis


def rank_with_augmentation(m: Gf2Matrix, extra_cols: list[int]) -> int:
    """Rank of [columns of m | extra_cols], every column an int over row indices."""
    basis = dict(column_space_basis(m))
    for col in extra_cols:
        basis_insert(basis, col)
    return len(basis)


def multiply(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """GF(2) matrix product: row i of the result is the XOR of b's rows
    selected by the set bits of row i of a."""
    if a.cols != b.rows:
        raise ValueError("dimension mismatch")
    bits = []
    for row in a.bits:
        acc = 0
        v = row
        while v:
            low = v & -v
            acc ^= b.bits[low.bit_length() - 1]
            v ^= low
        bits.append(acc)
    return Gf2Matrix(a.rows, b.cols, bits, list(a.row_labels), list(b.col_labels))


@dataclass(frozen=True)
class HomologyProfile:
    """Per-order clique counts, boundary ranks, Betti numbers, and chi.

    r has one entry per order 0..K with r[0] = 0; ranks past the top
    order are zero by convention. beta[k] = m[k] - r[k] - r[k+1].
    """

    m: tuple[int, ...]
    r: tuple[int, ...]
    beta: tuple[int, ...]
    chi: int
    euler_poincare_ok: bool


def homology_profile(cx: CliqueComplex) -> HomologyProfile:
    """Compute all boundary ranks and Betti numbers of a complete complex."""
    if cx.truncated_at is not None:
        raise ValueError("truncated complex: Betti numbers undefined")
    top = len(cx.levels) - 1
    if top < 0:
        return HomologyProfile((), (), (), 0, True)
    r = [0] * (top + 1)
    for k in range(1, top + 1):
        r[k] = gf2_rank(build_boundary_matrix(cx, k)).rank
    beta = []
    for k in range(top + 1):
        nxt = r[k + 1] if k + 1 <= top else 0
        b = cx.counts[k] - r[k] - nxt
        if b < 0:
            raise AssertionError(f"negative Betti number at order {k}")
        beta.append(b)
    chi = sum(m if k % 2 == 0 else -m for k, m in enumerate(cx.counts))
    chi_beta = sum(b if k % 2 == 0 else -b for k, b in enumerate(beta))
    return HomologyProfile(tuple(cx.counts), tuple(r), tuple(beta), chi, chi_beta == chi)
