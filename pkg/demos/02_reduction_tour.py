"""Push one instance through the reductions and watch the sizes.

Every reduction returns a report with the measured sizes of its output
and the exact sizes its construction promises.  ``violations()`` is empty
when the two agree.
"""
from rwlab import ColoredGraph, WalkInstance, reductions as red
from rwlab.solvers import solve

# node-colored path 0 -> 1 -> 2 with colors 1, 2, 1
j0 = WalkInstance(ColoredGraph.build(True, 3, [(0, 1), (1, 2)], "node", 2, [1, 2, 1]), 0, 2, [2, 1])
print("input answer:", solve(j0))

for reduce in (red.red_dirnode2_to_diredge2, red.red_dirnode2_to_undiredge2,
               red.red_dirnode2_to_undirnode2):
    r = reduce(j0)
    print(f"{r.name:28s} {r.params_in} -> {r.params_out}  answer={solve(r.output)}  "
          f"violations={r.violations()}")

# the closed cycle: node-2 -> edge-2 -> NFA -> node-sigma -> node-2
for r in red.equivalence_cycle(j0):
    print(f"  {r.name:26s} -> {r.params_out}")

# cross-problem targets start from a directed edge-colored instance
i0 = red.red_dirnode2_to_diredge2(j0).output
cfl = red.red_walk_to_cfl(i0)
wb = red.red_walk_to_wordbreak(i0)
omv = red.red_walk_to_omv(i0)
print("CFL reachability:", solve(cfl.output), cfl.params_out)
print("Word Break text :", "".join(map(str, wb.output.text)),
      "dictionary:", sorted("".join(map(str, w)) for w in wb.output.dictionary))
print("Word Break      :", solve(wb.output), wb.params_out, "promised:", wb.bound_expr)
print("OMv answer      :", omv.extras["answer"], "rounds per engine:", omv.extras["rounds_used"])
print()
print(red.serialize_report(cfl))
