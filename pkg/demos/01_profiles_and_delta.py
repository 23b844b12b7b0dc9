#!/usr/bin/env python3
"""Profiles, delta-sequences, and nested solutions.

The exact profile I(m) of a graph is the maximum number of induced edges
over all m-vertex subsets.  Its first differences, the delta-sequence,
fingerprint the graph's isoperimetric behavior: cliques climb 0,1,2,...,
paths settle at 1, and the Petersen graph interleaves plateaus and climbs.
A graph admits nested solutions when one chain of sets is optimal at every
size simultaneously; reading the chain off gives an optimal order.
"""

import blocklex as bx


def show(name, g):
    prof = bx.exact_profile(g)
    delta = bx.delta_sequence(prof)
    print(f"{name:14s} I = {list(prof.i_values)}")
    print(f"{'':14s} delta = {list(delta.values)}")
    res = bx.find_nested_chain(g, prof)
    if res.status == "order":
        print(f"{'':14s} nested chain: vertices in order {res.order.sequence()}")
    else:
        print(f"{'':14s} no nested chain ({res.status})")
    print()


show("K5", bx.clique(5))
show("P6", bx.path(6))
show("Petersen", bx.petersen())

# A disconnected graph still has a profile; the delta-sequence drops back
# to zero when the optimal sets jump to the second component.
show("K5 + K4", bx.disjoint_union([bx.clique(5), bx.clique(4)]))

# Witnesses: one optimal set per size.
prof = bx.exact_profile(bx.petersen())
print("Petersen optimal 5-set:", prof.witness(5), "induces",
      bx.induced_edges(bx.petersen(), bx.VertexSet.from_ids(10, prof.witness(5))),
      "edges (a five-cycle)")

# Boundary minima relate to induced maxima on regular graphs:
# boundary + 2*induced = degree * size.
theta = bx.theta_profile(bx.petersen())
print("Petersen boundary minima:", list(theta.i_values))
for m in range(11):
    assert theta.i_values[m] == 3 * m - 2 * prof.i_values[m]
print("degree identity checked at every size")
