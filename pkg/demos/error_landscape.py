"""Exact distributional error of reference machines on cycle families.
======================================================================

Evaluates machines against the half/half hard distribution (uniform on
one-cycle instances vs uniform on two-cycle instances) by simulating
every instance, and compares the observed floor with the pigeonhole
bound arithmetic.
"""

from fractions import Fraction

from bcclab import enumerate_family, evaluate_error
from bcclab.algorithms import AlwaysYes, FullExchangeSparse
from bcclab.bounds import pigeonhole_error_bound
from bcclab.sim import KT1

fam = enumerate_family(8)
yes_kt0 = [fam.one_cycle_instance(k) for k in fam.one_cycles]
no_kt0 = [fam.two_cycle_instance(k) for k in fam.all_two_cycle_keys()]
print("|V1| =", len(yes_kt0), " |V2| =", len(no_kt0))

err = evaluate_error(AlwaysYes(), 0, yes_kt0, no_kt0)
print("always-yes error :", err, "(errs on every two-cycle instance)")
assert err == Fraction(1, 2)

yes_kt1 = [fam.one_cycle_instance(k, mode=KT1) for k in fam.one_cycles]
no_kt1 = [fam.two_cycle_instance(k, mode=KT1) for k in fam.all_two_cycle_keys()]
algo = FullExchangeSparse(max_degree=2)
budget = algo.round_budget(yes_kt1[0])
for t in (0, budget // 2, budget):
    err = evaluate_error(algo, t, yes_kt1, no_kt1)
    print(f"full exchange t={t}: error = {err}")
print()

# the pigeonhole floor: at t=0 every crossing is invisible, so the error
# under the single-instance star distribution is 1; it decays with t
for t in range(4):
    print(f"pigeonhole bound n=2000, t={t}:",
          pigeonhole_error_bound(2000, t))
