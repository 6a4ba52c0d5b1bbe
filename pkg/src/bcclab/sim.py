"""Round-exact simulator for 1-bit-per-round broadcast clique instances.

An instance is a complete communication network over n vertices together
with a subset of edges forming the input graph. Vertices run a shared
deterministic state machine over the three-symbol alphabet {0, 1, silent};
the simulator delivers every round-r broadcast to every other vertex at
that vertex's port facing the sender, then applies the machine's receive
step. Two knowledge modes are supported:

* KT0 -- ports are arbitrary labels 1..n-1 carrying no identity
  information; a vertex initially sees only its own id, the port labels,
  and which ports carry input edges.
* KT1 -- every port is labeled with the id of the vertex behind it and
  every vertex knows the full id roster.
"""

import json
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from functools import cached_property

from .errors import ProtocolViolation, ResourceLimitError

KT0 = "KT0"
KT1 = "KT1"


class Symbol(IntEnum):
    ZERO = 0
    ONE = 1
    SILENT = 2

    def __str__(self):
        return "01-"[self]


SYMBOL_FROM_CHAR = {"0": Symbol.ZERO, "1": Symbol.ONE, "-": Symbol.SILENT}


class Verdict(Enum):
    YES = "YES"
    NO = "NO"


def canonical_kt0_ports(ids):
    """Default KT0 port tables: port of v facing u = rank of u by id.

    Ranks run 1..n-1 over the vertices other than v sorted by id; the rule
    is only a reproducible default and carries no more information than
    any other fixed bijection.
    """
    n = len(ids)
    order = sorted(range(n), key=lambda v: ids[v])
    rank = [0] * n
    for i, v in enumerate(order):
        rank[v] = i
    rows = []
    for v in range(n):
        rv = rank[v]
        row = [r + 1 if r < rv else r for r in rank]
        row[v] = 0
        rows.append(tuple(row))
    return tuple(rows)


def kt1_ports(ids):
    """KT1 port law: the edge {u,v} sits at port ids[u] on v's side."""
    base = list(ids)
    rows = []
    for v in range(len(ids)):
        row = base.copy()
        row[v] = 0
        rows.append(tuple(row))
    return tuple(rows)


def random_kt0_ports(rng, n):
    """Independent uniformly random port bijections, one per vertex."""
    rows = []
    for v in range(n):
        labels = list(range(1, n))
        rng.shuffle(labels)
        row = [0] * n
        k = 0
        for u in range(n):
            if u != v:
                row[u] = labels[k]
                k += 1
        rows.append(tuple(row))
    return tuple(rows)


def all_port_tables(n, limit=5):
    """Every KT0 port-table assignment; ((n-1)!)^n of them, so n is capped."""
    from itertools import permutations, product

    if n > limit:
        raise ResourceLimitError(
            f"full port-space enumeration needs n<={limit}, got n={n}"
        )
    per_vertex = []
    others = [[u for u in range(n) if u != v] for v in range(n)]
    for v in range(n):
        tables = []
        for perm in permutations(range(1, n)):
            row = [0] * n
            for u, p in zip(others[v], perm):
                row[u] = p
            tables.append(tuple(row))
        per_vertex.append(tables)
    for combo in product(*per_vertex):
        yield tuple(combo)


def _normalize_edge(e):
    u, v = e
    if u == v:
        raise ValueError(f"self-loop {e} is not a valid edge")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class VertexView:
    """Everything a vertex knows before round 1 (plus the shared coin tape)."""

    mode: str
    n: int
    b: int
    own_id: int
    coins: tuple = ()
    input_ports: frozenset = frozenset()  # KT0: ports carrying input edges
    all_ids: tuple = ()  # KT1 only
    neighbor_ids: frozenset = frozenset()  # KT1: ids across input edges


@dataclass(frozen=True)
class BccInstance:
    """A clique network with ids, port tables and an input-edge subset.

    Instances built through :func:`make_instance` are validated; internal
    transforms that preserve the invariants (crossings in particular)
    construct directly for speed. ``validate`` can always be re-run.
    """

    n: int
    mode: str
    ids: tuple
    input_edges: frozenset  # of (u, v) tuples with u < v, vertex indices
    ports: tuple  # ports[v][u] = port label of the network edge at v facing u
    b: int = 1

    def validate(self, check_ports=True):
        if self.n < 2:
            raise ValueError("an instance needs at least 2 vertices")
        if self.mode not in (KT0, KT1):
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.ids) != self.n or len(set(self.ids)) != self.n:
            raise ValueError("ids must be one injective value per vertex")
        if any(i < 0 for i in self.ids):
            raise ValueError("ids must be nonnegative")
        for u, v in self.input_edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"input edge ({u},{v}) outside the network")
        if len(self.ports) != self.n:
            raise ValueError("one port row per vertex required")
        if check_ports:
            for v in range(self.n):
                row = self.ports[v]
                labels = [row[u] for u in range(self.n) if u != v]
                if len(set(labels)) != self.n - 1:
                    raise ValueError(f"port labels at vertex {v} are not distinct")
                if self.mode == KT0 and sorted(labels) != list(range(1, self.n)):
                    raise ValueError(f"KT0 ports at vertex {v} must be 1..n-1")
                if self.mode == KT1 and any(
                    row[u] != self.ids[u] for u in range(self.n) if u != v
                ):
                    raise ValueError(f"KT1 port law violated at vertex {v}")
        if self.b < 1:
            raise ValueError("bandwidth b must be >= 1")
        return self

    @cached_property
    def input_neighbors(self):
        nbr = [[] for _ in range(self.n)]
        for u, v in sorted(self.input_edges):
            nbr[u].append(v)
            nbr[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbr)

    @cached_property
    def _delivery_ports(self):
        # _delivery_ports[v][k] = port at v facing sender k', where k' runs
        # over 0..n-1 with v removed; aligned with payload list slicing.
        return tuple(
            tuple(self.ports[v][u] for u in range(self.n) if u != v)
            for v in range(self.n)
        )

    def port_at(self, v, u):
        return self.ports[v][u]

    def view(self, v, coins=()):
        base = dict(mode=self.mode, n=self.n, b=self.b, own_id=self.ids[v], coins=tuple(coins))
        if self.mode == KT0:
            return VertexView(
                input_ports=frozenset(self.ports[v][u] for u in self.input_neighbors[v]),
                **base,
            )
        return VertexView(
            all_ids=tuple(sorted(self.ids)),
            neighbor_ids=frozenset(self.ids[u] for u in self.input_neighbors[v]),
            input_ports=frozenset(self.ids[u] for u in self.input_neighbors[v]),
            **base,
        )

def make_instance(n, input_edges, mode=KT0, ids=None, ports=None, b=1):
    """Build an instance; ids default to 0..n-1 and ports to the mode's canon.

    Explicitly supplied port tables are fully validated; derived canonical
    tables are correct by construction and skip the per-row bijection scan.
    """
    ids = tuple(range(n)) if ids is None else tuple(ids)
    derived = ports is None
    if derived:
        ports = canonical_kt0_ports(ids) if mode == KT0 else kt1_ports(ids)
    else:
        ports = tuple(tuple(row) for row in ports)
    edges = frozenset(_normalize_edge(e) for e in input_edges)
    return BccInstance(n, mode, ids, edges, ports, b).validate(
        check_ports=not derived
    )


class Algorithm:
    """Vertex state machine interface; one shared object drives every vertex.

    The machine must be deterministic given the view (the public coin tape
    lives inside the view). For b = 1 ``broadcast`` returns a single
    Symbol; for b > 1 it may return a tuple of up to b Symbols. ``receive``
    is handed the symbols broadcast in ``round`` as a dict keyed by the
    vertex's own port labels, and returns the successor state.
    """

    name = "abstract"
    # machines whose receive() provably returns the state unchanged may set
    # this; the simulator then skips inbox construction (transcripts are
    # unaffected -- received symbols are derived from the senders' rows)
    receive_is_identity = False

    def initialize(self, view):
        raise NotImplementedError

    def broadcast(self, state, round_no):
        raise NotImplementedError

    def receive(self, state, round_no, inbox):
        raise NotImplementedError

    def decide(self, state):
        raise NotImplementedError

    def round_budget(self, instance):
        """Rounds after which decide() is meaningful; None if unconditional."""
        return None


@dataclass(frozen=True)
class SimulationRun:
    """Transcript bundle: everything simulate() produced, immutably.

    ``sent[v]`` holds vertex v's broadcasts per round (a Symbol per round
    for b = 1, otherwise a tuple of Symbols). Received symbols are exposed
    through :meth:`received`, reconstructed from the senders' rows and the
    port tables; by construction the symbol seen at u in round r on the
    port facing v equals sent[v][r-1].
    """

    instance: BccInstance
    t: int
    coins: tuple
    views: tuple
    sent: tuple  # sent[v] = tuple over rounds
    states: tuple
    verdicts: tuple

    def sent_sequence(self, v, upto=None):
        seq = self.sent[v]
        return seq if upto is None else seq[:upto]

    def received(self, v, round_no):
        """Symbols delivered to v at the end of `round_no`, keyed by port."""
        if not 1 <= round_no <= self.t:
            raise ValueError(f"round {round_no} outside 1..{self.t}")
        inst = self.instance
        r = round_no - 1
        return {
            inst.ports[v][u]: self.sent[u][r]
            for u in range(inst.n)
            if u != v
        }

    @property
    def system_verdict(self):
        return system_verdict(self.verdicts)


def _normalize_payload(payload, b, vertex, round_no):
    if isinstance(payload, Symbol):
        if b == 1:
            return payload
        return (payload,)
    payload = tuple(payload)
    if any(not isinstance(s, Symbol) for s in payload):
        raise ProtocolViolation(
            f"vertex {vertex} broadcast a non-symbol value in round {round_no}"
        )
    if len(payload) > b:
        raise ProtocolViolation(
            f"vertex {vertex} broadcast {len(payload)} symbols in round "
            f"{round_no}, bandwidth is {b}"
        )
    if b == 1:
        if len(payload) != 1:
            raise ProtocolViolation(
                f"vertex {vertex} must broadcast exactly one symbol per round "
                f"at b=1 (round {round_no})"
            )
        return payload[0]
    return payload


def simulate(instance, algorithm, t, coins=()):
    """Run `t` synchronous rounds and return the full transcript bundle.

    Round r: every vertex broadcasts a payload computed from its current
    state; the payloads are then delivered (each vertex sees every other
    vertex's payload at the port facing the sender) and the receive step
    advances each state. The state after round r therefore reflects all
    broadcasts of rounds 1..r, and reruns with identical arguments are
    bit-identical.
    """
    if t < 0:
        raise ValueError("round count must be nonnegative")
    n = instance.n
    b = instance.b
    coins = tuple(coins)
    views = tuple(instance.view(v, coins) for v in range(n))
    states = [algorithm.initialize(view) for view in views]
    skip_delivery = algorithm.receive_is_identity
    delivery = None if skip_delivery else instance._delivery_ports
    sent = [[] for _ in range(n)]
    for r in range(1, t + 1):
        payloads = [
            _normalize_payload(algorithm.broadcast(states[v], r), b, v, r)
            for v in range(n)
        ]
        for v in range(n):
            sent[v].append(payloads[v])
        if skip_delivery:
            continue
        for v in range(n):
            inbox = dict(zip(delivery[v], payloads[:v] + payloads[v + 1 :]))
            states[v] = algorithm.receive(states[v], r, inbox)
    verdicts = tuple(algorithm.decide(s) for s in states)
    return SimulationRun(
        instance, t, coins, views,
        tuple(tuple(s) for s in sent), tuple(states), verdicts,
    )


def system_verdict(verdicts):
    """YES iff every vertex said YES; NO otherwise."""
    verdicts = list(verdicts)
    if not verdicts or any(v not in (Verdict.YES, Verdict.NO) for v in verdicts):
        raise ValueError("need one YES/NO verdict per vertex")
    return Verdict.YES if all(v is Verdict.YES for v in verdicts) else Verdict.NO


def evaluate_error(algorithm, t, yes_family, no_family, coins=()):
    """Exact error under the half/half uniform two-family distribution.

    Returns 1/2 * (fraction of yes instances judged NO) + 1/2 * (fraction
    of no instances judged YES), as a Fraction.
    """
    yes_family = list(yes_family)
    no_family = list(no_family)
    if not yes_family or not no_family:
        raise ValueError("both families must be nonempty")
    ref = yes_family[0]
    for inst in yes_family + no_family:
        if inst.n != ref.n or inst.mode != ref.mode:
            raise ValueError("families must share n and mode")
    wrong_yes = sum(
        1 for inst in yes_family
        if simulate(inst, algorithm, t, coins).system_verdict is Verdict.NO
    )
    wrong_no = sum(
        1 for inst in no_family
        if simulate(inst, algorithm, t, coins).system_verdict is Verdict.YES
    )
    return Fraction(wrong_yes, 2 * len(yes_family)) + Fraction(
        wrong_no, 2 * len(no_family)
    )


def instance_to_json(instance, include_ports=True):
    """Serialize to the structured-text instance format."""
    doc = {
        "n": instance.n,
        "mode": instance.mode,
        "b": instance.b,
        "ids": list(instance.ids),
        "input_edges": sorted(list(e) for e in instance.input_edges),
    }
    if include_ports:
        doc["ports"] = [list(row) for row in instance.ports]
    return json.dumps(doc, sort_keys=True)


def instance_from_json(text):
    doc = json.loads(text)
    return make_instance(
        doc["n"],
        [tuple(e) for e in doc["input_edges"]],
        mode=doc.get("mode", KT0),
        ids=doc.get("ids"),
        ports=doc.get("ports"),
        b=doc.get("b", 1),
    )
