"""Reduction graphs over partition pairs and the two-party simulation.

``build_reduction`` realizes a pair of partitions as a graph whose
connected components, projected onto the rung vertices, equal the join
of the two partitions. The general variant uses four vertex groups
A, L, R, B of size n each; the two-regular variant (pair partitions
only) keeps just L and R, every vertex then has degree exactly 2 and
every component is an even cycle of length at least 4.

``two_party_simulate`` runs a KT1 algorithm on such a graph with one
party hosting Alice's vertices and one hosting Bob's; per round each
party sends the symbols its hosted vertices broadcast, in increasing id
order, and both reconstruct all port receptions from the fixed id
scheme. The result is checked to be a bisimulation of the monolithic
simulator, with exact communication accounting.
"""

from dataclasses import dataclass

from . import partitions as pt
from .errors import ProtocolViolation
from .sim import (
    KT1,
    Symbol,
    Verdict,
    _normalize_payload,
    make_instance,
    simulate,
    system_verdict,
)
from .unionfind import DisjointSet

GENERAL = "general"
TWO_REGULAR = "two-regular"


@dataclass(frozen=True)
class ReductionGraph:
    variant: str
    n: int  # ground-set size
    instance: object  # the KT1 BccInstance realizing the construction
    alice_vertices: tuple  # vertex indices hosted by Alice, ascending ids
    bob_vertices: tuple

    def vertex_label(self, v):
        n = self.n
        if self.variant == TWO_REGULAR:
            group, i = divmod(v, n)
            return ("l", "r")[group] + str(i + 1)
        group, i = divmod(v, n)
        return ("a", "l", "r", "b")[group] + str(i + 1)

    def l_vertex(self, i):
        offset = 0 if self.variant == TWO_REGULAR else self.n
        return offset + i - 1

    def r_vertex(self, i):
        offset = self.n if self.variant == TWO_REGULAR else 2 * self.n
        return offset + i - 1


def build_reduction(variant, p_a, p_b):
    """The graph G(P_A, P_B) as a KT1 instance with the fixed id scheme.

    Part indices follow canonical block order (blocks sorted by minimum
    element take indices 1, 2, ...); the leftover attachment vertex is
    always the last rung vertex. Vertex ids are i, n+i, 2n+i, 3n+i for
    a_i, l_i, r_i, b_i (the two-regular variant keeps only l and r).
    """
    if p_a.ground_size != p_b.ground_size:
        raise ValueError("partitions must share the ground size")
    n = p_a.ground_size
    if variant == TWO_REGULAR:
        if not (p_a.is_pair_partition and p_b.is_pair_partition):
            raise ValueError("two-regular variant needs pair partitions")
        edges = []
        for i in range(1, n + 1):  # rungs
            edges.append((i - 1, n + i - 1))
        for i, j in p_a.blocks:
            edges.append((i - 1, j - 1))
        for i, j in p_b.blocks:
            edges.append((n + i - 1, n + j - 1))
        ids = tuple(range(n + 1, 3 * n + 1))
        inst = make_instance(2 * n, edges, mode=KT1, ids=ids)
        return ReductionGraph(
            variant, n, inst, tuple(range(n)), tuple(range(n, 2 * n))
        )
    if variant != GENERAL:
        raise ValueError(f"unknown variant {variant!r}")
    a0, l0, r0, b0 = 0, n, 2 * n, 3 * n
    edges = [(l0 + i, r0 + i) for i in range(n)]  # rungs
    for side, part, anchor in ((a0, p_a, l0 + n - 1), (b0, p_b, r0 + n - 1)):
        hub = l0 if side == a0 else r0
        for j, block in enumerate(part.blocks):
            for m in block:
                edges.append((side + j, hub + m - 1))
        for j in range(len(part.blocks), n):  # empty parts attach to the anchor
            edges.append((side + j, anchor))
    ids = tuple(range(1, 4 * n + 1))
    inst = make_instance(4 * n, edges, mode=KT1, ids=ids)
    return ReductionGraph(
        variant, n, inst, tuple(range(2 * n)), tuple(range(2 * n, 4 * n))
    )


def components_partition(graph):
    """Partition of [n] induced by connected components on the rung vertices."""
    inst = graph.instance
    ds = DisjointSet(inst.n)
    for u, v in inst.input_edges:
        ds.union(u, v)
    n = graph.n
    roots = {}
    blocks = {}
    for i in range(1, n + 1):
        root = ds.find(graph.l_vertex(i))
        blocks.setdefault(root, []).append(i)
        roots[i] = root
    for i in range(1, n + 1):  # rungs force the R projection to agree
        assert ds.find(graph.r_vertex(i)) == roots[i]
    return pt.SetPartition(n, blocks.values())


def verify_join_correspondence(p_a, p_b, variant):
    """components_partition(build_reduction(...)) == join(p_a, p_b)?"""
    graph = build_reduction(variant, p_a, p_b)
    return components_partition(graph) == pt.join(p_a, p_b)


def multicycle_ground_truth(p_a, p_b):
    """YES iff the reduction graph is one cycle, i.e. the join is trivial."""
    return Verdict.YES if pt.join(p_a, p_b).is_trivial else Verdict.NO


@dataclass(frozen=True)
class TwoPartyTrace:
    """Messages exchanged per round, each a symbol tuple in id order."""

    rounds: tuple  # tuple of (alice_message, bob_message)
    symbols_per_message: int

    @property
    def total_symbols(self):
        return 2 * len(self.rounds) * self.symbols_per_message

    def hex_rounds(self):
        """Per-round (alice, bob) messages as hex-packed trit strings."""
        return [
            (pack_trits(a), pack_trits(b)) for a, b in self.rounds
        ]


def pack_trits(symbols):
    value = 0
    for s in reversed(symbols):
        value = value * 3 + int(s)
    return format(value, "x")


def unpack_trits(text, length):
    value = int(text, 16)
    out = []
    for _ in range(length):
        value, digit = divmod(value, 3)
        out.append(Symbol(digit))
    return tuple(out)


@dataclass(frozen=True)
class TwoPartyResult:
    graph: ReductionGraph
    t: int
    trace: TwoPartyTrace
    states: dict  # vertex index -> final state
    verdicts: dict  # vertex index -> Verdict
    system: object
    equivalent: bool  # bit-identical to the monolithic simulation


def _party_round_message(algorithm, states, vertices, round_no, b):
    if b != 1:
        raise ProtocolViolation("the two-party message format assumes b=1")
    return tuple(
        _normalize_payload(algorithm.broadcast(states[v], round_no), 1, v, round_no)
        for v in vertices
    )


def two_party_simulate(algorithm, p_a, p_b, variant, t, coins=()):
    """Alice/Bob round-synchronous simulation of a KT1 algorithm.

    Alice hosts her construction's vertices and Bob his; each round both
    emit the symbols their hosted vertices broadcast (ascending id
    order) and reconstruct every hosted vertex's port receptions from
    the id scheme (a position in the peer's message reveals the sender
    id, which is the port label). Returns the trace with exact symbol
    counts plus an equivalence flag against the monolithic simulator.
    """
    graph = build_reduction(variant, p_a, p_b)
    inst = graph.instance
    ids = inst.ids
    alice, bob = graph.alice_vertices, graph.bob_vertices
    states = {}
    for v in alice + bob:
        states[v] = algorithm.initialize(inst.view(v, coins))
    rounds = []
    for r in range(1, t + 1):
        msg_a = _party_round_message(algorithm, states, alice, r, inst.b)
        msg_b = _party_round_message(algorithm, states, bob, r, inst.b)
        rounds.append((msg_a, msg_b))
        # both parties now know every broadcast: own ones directly, the
        # peer's by message position (peer vertices in ascending id order)
        broadcast = {}
        for vs, msg in ((alice, msg_a), (bob, msg_b)):
            for v, sym in zip(vs, msg):
                broadcast[ids[v]] = sym
        for v in alice + bob:
            own = ids[v]
            inbox = {i: s for i, s in broadcast.items() if i != own}
            states[v] = algorithm.receive(states[v], r, inbox)
    verdicts = {v: algorithm.decide(states[v]) for v in alice + bob}
    system = system_verdict(verdicts.values())

    mono = simulate(inst, algorithm, t, coins)
    equivalent = all(
        states[v] == mono.states[v] and verdicts[v] == mono.verdicts[v]
        for v in alice + bob
    )
    trace = TwoPartyTrace(tuple(rounds), len(alice))
    return TwoPartyResult(graph, t, trace, states, verdicts, system, equivalent)
