"""The bipartite indistinguishability graph over cycle families.

Left vertices are one-cycle instances, right vertices two-cycle
instances, and an edge joins I1 to I2 whenever some pair of active
independent directed edges of I1 crosses into I2. The graph itself is
simple; crossing multiplicity is tracked separately as "operations",
where a pair of directed edges and its both-orientations-reversed twin
count as one operation (they produce the identical crossed instance).
"""

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .crossing import are_independent, cross, directed_input_edges
from .errors import InternalConsistencyError
from .families import cycles_of_instance
from .matching import hall_check as _bipartite_hall_check
from .sim import KT0, simulate


def _op_key(f1, f2):
    """Canonical representative of {f1, f2} under both-edge reversal."""
    a = tuple(sorted((tuple(f1), tuple(f2))))
    b = tuple(sorted((tuple(f1.reversed()), tuple(f2.reversed()))))
    return min(a, b)


@dataclass(frozen=True)
class IndistGraph:
    family: object
    t: int
    x: tuple
    y: tuple
    algorithm_name: str
    adjacency: dict  # one-cycle key -> frozenset of two-cycle keys
    right_adjacency: dict  # two-cycle key -> frozenset of one-cycle keys
    op_counts: dict  # (one-cycle key, two-cycle key) -> operation count
    active_directed: dict  # one-cycle key -> number of active directed edges
    active_undirected: dict  # one-cycle key -> edges with an active orientation
    witnesses: dict  # (lk, rk) -> a witnessing directed pair, when recorded

    @property
    def left(self):
        return self.family.one_cycles

    @property
    def right(self):
        return tuple(self.family.all_two_cycle_keys())

    def edge_count(self):
        return sum(len(v) for v in self.adjacency.values())

    def degree(self, lk):
        return len(self.adjacency.get(lk, ()))

    def right_degree(self, rk):
        return len(self.right_adjacency.get(rk, ()))

    def left_ops(self, lk):
        return sum(
            self.op_counts[(lk, rk)] for rk in self.adjacency.get(lk, ())
        )

    def right_ops(self, rk):
        return sum(
            self.op_counts[(lk, rk)] for lk in self.right_adjacency.get(rk, ())
        )

    def bipartite_adjacency(self, positive_degree_only=True):
        """left key -> right key lists, for the matching machinery."""
        items = self.adjacency.items()
        return {
            lk: sorted(rks)
            for lk, rks in items
            if rks or not positive_degree_only
        }


def build_indist_graph(family, algorithm, t, x=(), y=(), mode=KT0, coins=()):
    """Construct the graph for the given broadcast strings x, y.

    For every one-cycle instance the active directed edges (head
    broadcast x, tail broadcast y over rounds 1..t) are paired up; each
    independent pair whose crossing yields a two-cycle instance inside
    the family contributes the crossed instance's canonical key as a
    neighbor. Crossings that merge or that leave the family's minimum
    cycle length are discarded; a crossed two-cycle key absent from the
    family indicates a bug and raises InternalConsistencyError.
    """
    x, y = tuple(x), tuple(y)
    if len(x) != t or len(y) != t:
        raise ValueError(f"need |x| = |y| = t = {t}")
    right_index = set(family.all_two_cycle_keys())
    adjacency = {}
    right_adjacency = {rk: set() for rk in right_index}
    op_counts = {}
    active_directed = {}
    active_undirected = {}
    witnesses = {}
    for lk in family.one_cycles:
        inst = family.one_cycle_instance(lk, mode=mode)
        run = simulate(inst, algorithm, t, coins)
        sent = run.sent
        active = [
            f
            for f in directed_input_edges(inst)
            if sent[f.head][:t] == x and sent[f.tail][:t] == y
        ]
        active_directed[lk] = len(active)
        active_undirected[lk] = len(
            {(f.head, f.tail) if f.head < f.tail else (f.tail, f.head) for f in active}
        )
        ops = {}
        for f1, f2 in combinations(active, 2):
            if not are_independent(inst, f1, f2):
                continue
            crossed = cross(inst, f1, f2)
            key = cycles_of_instance(crossed)
            if len(key) != 2:
                continue  # merged back into a single cycle
            if len(key[0]) < family.min_cycle_len:
                continue
            if key not in right_index:
                raise InternalConsistencyError(
                    f"crossed instance {key} missing from the enumerated family"
                )
            bucket = ops.setdefault(key, set())
            if not bucket:
                witnesses[(lk, key)] = (f1, f2)
            bucket.add(_op_key(f1, f2))
        if ops:
            adjacency[lk] = frozenset(ops)
            for rk, reps in ops.items():
                op_counts[(lk, rk)] = len(reps)
                right_adjacency[rk].add(lk)
    right_adjacency = {rk: frozenset(v) for rk, v in right_adjacency.items()}
    return IndistGraph(
        family, t, x, y, getattr(algorithm, "name", "?"),
        adjacency, right_adjacency, op_counts, active_directed,
        active_undirected, witnesses,
    )


@dataclass(frozen=True)
class DegreeStats:
    left_size: int
    right_size: int
    edge_count: int
    left_degree_hist: Counter
    right_degree_hist: Counter
    ti_edge_totals: dict  # i -> edges incident to T_i
    ti_op_totals: dict  # i -> operations incident to T_i
    ops_total: int
    handshake_ok: bool
    degree_condition_rows: Counter  # (d_und, i, required2x, observed) -> #left nodes

    def to_record(self):
        return {
            "left_size": self.left_size,
            "right_size": self.right_size,
            "edge_count": self.edge_count,
            "left_degree_hist": dict(sorted(self.left_degree_hist.items())),
            "right_degree_hist": dict(sorted(self.right_degree_hist.items())),
            "ti_edge_totals": dict(sorted(self.ti_edge_totals.items())),
            "ti_op_totals": dict(sorted(self.ti_op_totals.items())),
            "ops_total": self.ops_total,
            "handshake_ok": self.handshake_ok,
            "degree_condition_rows": [
                {
                    "active_undirected": row[0],
                    "i": row[1],
                    "required_twice": row[2],
                    "observed": row[3],
                    "count": c,
                }
                for row, c in sorted(self.degree_condition_rows.items())
            ],
        }


def degree_stats(graph):
    """Degree histograms, per-class operation totals and the handshake check.

    The handshake identity (edges and operations counted from the left
    equal those counted from the right) is asserted; the degree-condition
    rows are reported, not asserted, since the underlying counting
    convention fixes constants the finite graph need not reproduce. Rows
    are keyed by (active undirected edges d, class i, 2*floor requirement
    = d, observed neighbors of simple degree i*(d-i)) and deduplicated.
    """
    left_edges = graph.edge_count()
    right_edges = sum(len(v) for v in graph.right_adjacency.values())
    ops_left = sum(graph.op_counts.values())
    ops_right = sum(
        graph.op_counts[(lk, rk)]
        for rk, lks in graph.right_adjacency.items()
        for lk in lks
    )
    handshake = left_edges == right_edges and ops_left == ops_right
    if not handshake:
        raise InternalConsistencyError(
            f"handshake violated: edges {left_edges}/{right_edges}, "
            f"ops {ops_left}/{ops_right}"
        )
    left_hist = Counter(len(v) for v in graph.adjacency.values())
    left_hist.update({0: len(graph.left) - len(graph.adjacency)})
    left_hist += Counter()  # drop zero-count entries
    right_hist = Counter(len(v) for v in graph.right_adjacency.values())
    ti_edges = {}
    ti_ops = {}
    for rk, lks in graph.right_adjacency.items():
        i = len(rk[0])
        ti_edges[i] = ti_edges.get(i, 0) + len(lks)
        ti_ops[i] = ti_ops.get(i, 0) + sum(
            graph.op_counts[(lk, rk)] for lk in lks
        )
    rows = Counter()
    right_degree = {rk: len(lks) for rk, lks in graph.right_adjacency.items()}
    for lk, rks in graph.adjacency.items():
        d_und = graph.active_undirected[lk]
        neighbor_degrees = Counter(right_degree[rk] for rk in rks)
        for i in range(3, d_und // 2 + 1):
            observed = neighbor_degrees.get(i * (d_und - i), 0)
            rows[(d_und, i, d_und, observed)] += 1
    return DegreeStats(
        len(graph.left), len(graph.right), left_edges,
        left_hist, right_hist, ti_edges, ti_ops, ops_left, handshake, rows,
    )


def hall_check(graph, subset, k):
    """Polygamous Hall condition |N(S)| >= k|S| on the left subset S."""
    adjacency = {lk: graph.adjacency.get(lk, frozenset()) for lk in subset}
    return _bipartite_hall_check(adjacency, subset, k)
