"""Join-indicator matrices over partition families, with exact integer rank.

The matrix of kind "M" is indexed by all partitions of {1..n}; kind "E"
by the perfect pairings only. Entry (i,j) is 1 exactly when the join of
the i-th and j-th index partition is the one-block partition. Ranks are
computed over the rationals with fraction-free integer elimination, so
the full-rank identities can be checked without any floating point.
"""

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from . import partitions as pt
from .errors import ResourceLimitError

M_LIMIT = 7
E_LIMIT = 10
DIMENSION_CAP = 1000


@dataclass(frozen=True)
class JoinMatrix:
    kind: str  # "M" or "E"
    n: int
    index: tuple  # SetPartition per row/column, in enumeration order
    rows: tuple  # tuple of tuples of 0/1 ints

    @property
    def dimension(self):
        return len(self.index)

    def entry(self, i, j):
        return self.rows[i][j]

    def index_hash(self):
        """Stable digest of the row/column index (the enumeration contract)."""
        h = hashlib.sha256()
        for p in self.index:
            h.update(str(p).encode())
            h.update(b";")
        return h.hexdigest()


def expected_rank(kind, n):
    if kind == "M":
        return pt.bell(n)
    if kind == "E":
        return pt.pair_partition_count(n)
    raise ValueError(f"unknown matrix kind {kind!r}")


def build_join_matrix(kind, n, m_limit=M_LIMIT, e_limit=E_LIMIT):
    """Construct the 0/1 join matrix of the given kind over {1..n}."""
    if kind == "M":
        if n > m_limit:
            raise ResourceLimitError(f"kind M needs n<={m_limit}, got n={n}")
        index = tuple(pt.enumerate_partitions(n))
    elif kind == "E":
        if n > e_limit:
            raise ResourceLimitError(f"kind E needs n<={e_limit}, got n={n}")
        index = tuple(pt.enumerate_pair_partitions(n))
    else:
        raise ValueError(f"unknown matrix kind {kind!r}")
    dim = len(index)
    if dim > DIMENSION_CAP:
        raise ResourceLimitError(
            f"dimension {dim} exceeds the dense-representation cap {DIMENSION_CAP}"
        )
    rows = []
    for i in range(dim):
        row = [0] * dim
        for j in range(i, dim):
            v = 1 if pt.join(index[i], index[j]).is_trivial else 0
            row[j] = v
        rows.append(row)
    for i in range(dim):  # mirror the strict upper triangle
        for j in range(i):
            rows[i][j] = rows[j][i]
    return JoinMatrix(kind, n, index, tuple(tuple(r) for r in rows))


def exact_rank(matrix):
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Accepts a JoinMatrix or any rectangular list of integer rows. All
    arithmetic is unbounded-integer; the two-term update divides exactly
    by the previous pivot, and pivots are chosen as the first nonzero
    entry in column order, so the result is reproducible.
    """
    rows = matrix.rows if isinstance(matrix, JoinMatrix) else matrix
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    piv = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(piv, nrows):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != piv:
            m[piv], m[pivot_row] = m[pivot_row], m[piv]
        p = m[piv][col]
        top = m[piv]
        for r in range(piv + 1, nrows):
            row = m[r]
            lead = row[col]
            for c in range(col, ncols):
                row[c] = (row[c] * p - lead * top[c]) // prev
        prev = p
        piv += 1
        if piv == nrows:
            break
    return piv


def rank_by_rational_elimination(rows):
    """Plain Gaussian elimination over Fraction; the cross-check oracle."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def verify_principal_submatrix_rank(matrix, subset):
    """True iff the principal submatrix on subset x subset has full rank."""
    idx = sorted(set(subset))
    dim = matrix.dimension if isinstance(matrix, JoinMatrix) else len(matrix.rows)
    if any(i < 0 or i >= dim for i in idx):
        raise ValueError("subset index out of range")
    if not idx:
        return True
    rows = matrix.rows
    sub = [[rows[i][j] for j in idx] for i in idx]
    return exact_rank(sub) == len(idx)


def rank_report(matrix):
    """Structured record {kind, n, dimension, rank, expected, pass}."""
    rank = exact_rank(matrix)
    expected = expected_rank(matrix.kind, matrix.n)
    return {
        "kind": matrix.kind,
        "n": matrix.n,
        "dimension": matrix.dimension,
        "rank": rank,
        "expected": expected,
        "pass": rank == expected,
    }


def export_text(matrix):
    """Human-readable dump: a header line followed by 0/1 rows."""
    header = (
        f"join-matrix kind={matrix.kind} n={matrix.n} "
        f"dimension={matrix.dimension} index-hash={matrix.index_hash()}"
    )
    lines = [header]
    lines.extend("".join(str(v) for v in row) for row in matrix.rows)
    return "\n".join(lines) + "\n"


def export_binary(matrix):
    """Row-major packed dump with a JSON header line (8 entries per byte)."""
    header = json.dumps(
        {
            "kind": matrix.kind,
            "n": matrix.n,
            "dimension": matrix.dimension,
            "index_hash": matrix.index_hash(),
        },
        sort_keys=True,
    ).encode()
    bits = bytearray()
    acc = 0
    count = 0
    for row in matrix.rows:
        for v in row:
            acc = (acc << 1) | v
            count += 1
            if count == 8:
                bits.append(acc)
                acc, count = 0, 0
    if count:
        bits.append(acc << (8 - count))
    return header + b"\n" + bytes(bits)
