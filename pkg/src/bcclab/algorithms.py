"""Reference vertex state machines for the simulator.

All machines are deterministic and keep their per-vertex state as plain
tuples so that states from two runs compare with ==. Broadcast payloads
are single symbols (b = 1).

Round budgets
-------------
* id-exchange: W rounds, where W is the configured id bit width; after
  W rounds every vertex has decoded the id behind each port.
* full-exchange-sparse: d*W rounds for maximum input degree d and id
  width W = bit length of the largest id; after that every vertex has
  rebuilt the entire input graph and decides connectivity locally.
"""

import hashlib

from .sim import KT1, Algorithm, Symbol, Verdict


def _stable_trit(*parts):
    payload = ":".join(str(p) for p in parts).encode()
    digest = hashlib.blake2b(payload, digest_size=4).digest()
    return int.from_bytes(digest, "big") % 3


class AlwaysYes(Algorithm):
    """Broadcasts silence forever and accepts every input."""

    name = "always-yes"
    receive_is_identity = True

    def initialize(self, view):
        return ()

    def broadcast(self, state, round_no):
        return Symbol.SILENT

    def receive(self, state, round_no, inbox):
        return state

    def decide(self, state):
        return Verdict.YES


class AlwaysSilent(AlwaysYes):
    """Alias machine kept for broadcast-pattern-centric experiments."""

    name = "always-silent"


class IdExchange(Algorithm):
    """KT0 bootstrap: broadcast the own id bit-serially, LSB first.

    ``bits`` must be at least the bit length of the largest id in the
    instance (a shared convention, e.g. ceil(log2(max id + 1))). After
    ``bits`` rounds the id behind every port can be decoded from the
    transcript, which upgrades a KT0 vertex to KT1-level knowledge.
    """

    name = "id-exchange"

    def __init__(self, bits):
        if bits < 1:
            raise ValueError("id width must be >= 1")
        self.bits = bits

    def initialize(self, view):
        # state = (view, own port labels ascending, per-round inbox rows)
        return (view, tuple(range(1, view.n)), ())

    def broadcast(self, state, round_no):
        view = state[0]
        if round_no > self.bits:
            return Symbol.SILENT
        return Symbol((view.own_id >> (round_no - 1)) & 1)

    def receive(self, state, round_no, inbox):
        view, ports, rows = state
        row = tuple(inbox[p] for p in ports)
        return (view, ports, rows + (row,))

    def decide(self, state):
        return Verdict.YES

    def round_budget(self, instance):
        return self.bits

    def port_ids(self, state):
        """Decoded port -> id map; only meaningful after `bits` rounds."""
        view, ports, rows = state
        decoded = {}
        for k, p in enumerate(ports):
            value = 0
            for r in range(min(self.bits, len(rows))):
                sym = rows[r][k]
                if sym is Symbol.ONE:
                    value |= 1 << r
            decoded[p] = value
        return decoded


class FullExchangeSparse(Algorithm):
    """KT1 brute force for sparse inputs: broadcast the neighbor-id list.

    Each vertex serializes its sorted input-neighbor ids into d slots of W
    bits each (LSB first, silent-padded slots for missing neighbors) and
    broadcasts them over d*W rounds. Every vertex then reconstructs the
    whole input graph from all broadcasts and outputs YES iff it is
    connected. Before the budget is exhausted decide() defaults to YES.
    """

    name = "full-exchange-sparse"

    def __init__(self, max_degree=2):
        if max_degree < 1:
            raise ValueError("max degree must be >= 1")
        self.max_degree = max_degree

    @staticmethod
    def _width(view):
        return max(1, max(view.all_ids).bit_length())

    def initialize(self, view):
        if view.mode != KT1:
            raise ValueError("full-exchange-sparse requires KT1 knowledge")
        neighbors = tuple(sorted(view.neighbor_ids))
        if len(neighbors) > self.max_degree:
            raise ValueError(
                f"vertex {view.own_id} has degree {len(neighbors)} > "
                f"configured bound {self.max_degree}"
            )
        senders = tuple(x for x in view.all_ids if x != view.own_id)
        # state = (view, own sorted neighbor ids, sender ids ascending,
        #          per-round inbox rows aligned with the sender ids)
        return (view, neighbors, senders, ())

    def broadcast(self, state, round_no):
        view, neighbors = state[0], state[1]
        w = self._width(view)
        if round_no > self.max_degree * w:
            return Symbol.SILENT
        slot, bit = divmod(round_no - 1, w)
        if slot >= len(neighbors):
            return Symbol.SILENT
        return Symbol((neighbors[slot] >> bit) & 1)

    def receive(self, state, round_no, inbox):
        view, neighbors, senders, rows = state
        row = tuple(inbox[p] for p in senders)  # KT1 ports are sender ids
        return (view, neighbors, senders, rows + (row,))

    def decide(self, state):
        view, neighbors, sender_ids, rows = state
        w = self._width(view)
        if len(rows) < self.round_budget_from_view(view):
            return Verdict.YES
        edges = {frozenset((view.own_id, x)) for x in neighbors}
        for k, sender in enumerate(sender_ids):
            for slot in range(self.max_degree):
                bits = [rows[slot * w + bit][k] for bit in range(w)]
                if all(s is Symbol.SILENT for s in bits):
                    continue
                value = 0
                for bit, s in enumerate(bits):
                    if s is Symbol.ONE:
                        value |= 1 << bit
                edges.add(frozenset((sender, value)))
        return self._connected(view.all_ids, edges)

    @staticmethod
    def _connected(ids, edges):
        index = {x: i for i, x in enumerate(ids)}
        from .unionfind import DisjointSet

        ds = DisjointSet(len(ids))
        for e in edges:
            pair = sorted(e)
            if len(pair) == 2 and pair[0] in index and pair[1] in index:
                ds.union(index[pair[0]], index[pair[1]])
        root = ds.find(0)
        one = all(ds.find(i) == root for i in range(len(ids)))
        return Verdict.YES if one else Verdict.NO

    def round_budget_from_view(self, view):
        return self.max_degree * self._width(view)

    def round_budget(self, instance):
        return self.max_degree * max(1, max(instance.ids).bit_length())


class RandomTable(Algorithm):
    """A pseudorandomly drawn deterministic machine.

    The broadcast in round r is a fixed function of (seed, r, digest)
    where the digest folds the received history into Z_modulus; with
    modulus 1 every vertex broadcasts the same sequence, larger moduli
    give partially diverging sequences. Useful for adversarial trials
    that need a deterministic but arbitrary-looking machine.
    """

    name = "random-table"

    def __init__(self, seed, modulus=1):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.seed = seed
        self.modulus = modulus
        self.receive_is_identity = modulus == 1

    def initialize(self, view):
        return (0,)

    def broadcast(self, state, round_no):
        return Symbol(_stable_trit(self.seed, round_no, state[0]))

    def receive(self, state, round_no, inbox):
        if self.modulus == 1:
            return state
        acc = state[0] * 31
        for port, sym in inbox.items():
            acc += port * 7 + int(sym) + 1
        return (acc % self.modulus,)

    def decide(self, state):
        return Verdict.YES


def reference_algorithms():
    """Catalog of the shipped machines, keyed by CLI name."""
    return {
        AlwaysYes.name: AlwaysYes,
        AlwaysSilent.name: AlwaysSilent,
        IdExchange.name: IdExchange,
        FullExchangeSparse.name: FullExchangeSparse,
        RandomTable.name: RandomTable,
    }


def make_algorithm(name, instance=None, **params):
    """Instantiate a cataloged machine, filling defaults from the instance."""
    catalog = reference_algorithms()
    if name not in catalog:
        raise ValueError(f"unknown algorithm {name!r}; know {sorted(catalog)}")
    cls = catalog[name]
    if cls is IdExchange and "bits" not in params:
        if instance is None:
            raise ValueError("id-exchange needs bits= or an instance")
        params["bits"] = max(1, max(instance.ids).bit_length())
    if cls is RandomTable and "seed" not in params:
        params["seed"] = 0
    return cls(**params)
