"""A colored walk, solved three ways.

The small graph below has edges 0->1 (color 1), 1->2 (color 2) and
0->2 (color 2).  We ask for a walk from 0 to 2 reading colors 1, 2.
"""
import numpy as np

from rwlab import ColoredGraph, WalkInstance, oracles
from rwlab.io import serialize_instance
from rwlab.solvers import solve_walk_dp, solve_walk_matrix_chain, walk_frontiers

g = ColoredGraph.build(True, 3, [(0, 1), (1, 2), (0, 2)], "edge", 2, [1, 2, 2])
inst = WalkInstance(g, 0, 2, [1, 2])
print(serialize_instance(inst))

# The frontier DP keeps the set of vertices reachable after each prefix.
for i, x in enumerate(walk_frontiers(inst)):
    print(f"after {i} colors: reachable = {np.flatnonzero(x).tolist()}")

print("dp           :", solve_walk_dp(inst))
print("matrix chain :", solve_walk_matrix_chain(inst))
print("enumeration  :", oracles.walk_enum_oracle(inst))

# Reading 2, 2 instead fails: the only color-2 edge out of 0 ends in 2,
# and nothing leaves 2.
no = WalkInstance(g, 0, 2, [2, 2])
print("seq 2 2      :", solve_walk_dp(no), oracles.enumerate_walks(g, 0, [2, 2]))
