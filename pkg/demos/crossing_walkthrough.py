"""Port-preserving crossings and what a vertex can(not) see.
============================================================

Builds a 6-cycle, crosses two independent edges, and shows that every
vertex's local view is untouched; then runs the id-exchange machine to
show when the crossed instance becomes distinguishable, and hunts for
fooling pairs that survive two rounds on a 300-cycle.
"""

from bcclab import find_fooling_pairs, make_instance, oriented_edge, states_identical
from bcclab.algorithms import AlwaysSilent, IdExchange
from bcclab.crossing import compare_states, cross
from bcclab.families import cycles_of_instance

n = 6
inst = make_instance(n, [(i, (i + 1) % n) for i in range(n)])
e1 = oriented_edge(inst, 0, 1)
e2 = oriented_edge(inst, 3, 4)
crossed = cross(inst, e1, e2)
print("input cycle      :", cycles_of_instance(inst))
print("after cross      :", cycles_of_instance(crossed))
print("views preserved  :", all(inst.view(v) == crossed.view(v) for v in range(n)))
print()

# a silent machine can never tell the two instances apart
print("silent, t=4      :", states_identical(inst, crossed, AlwaysSilent(), 4))

# id-exchange broadcasts id bits; the swap is exposed the moment a bit
# behind a swapped port differs
algo = IdExchange(bits=3)
diff = compare_states(inst, crossed, algo, 3)
print("id-exchange diff :", diff)
print()

# on a large cycle, pigeonholed same-label edges survive any fixed number
# of rounds; every returned pair is an undetectable crossing
big = make_instance(300, [(i, (i + 1) % 300) for i in range(300)])
report = find_fooling_pairs(big, IdExchange(bits=9), 2)
print("n=300, t=2       :", len(report), "verified fooling pairs,",
      len(report.bucket_sizes()), "label buckets")
a, b = report.pair(0)
print("first pair       :", (a.head, a.tail), (b.head, b.tail),
      "splits into", report.split_lengths(0))
