"""
Aligning a group with its neighbourhood by a bi-random walk
===========================================================

The group becomes a clique, the remaining actors keep their own network,
and the direct ties between the two sides seed an affinity matrix R that
diffuses along both networks in turn.
"""

import numpy as np

from groupaccretion import BirwParams, birw_seq, build_alignment_problem, build_snapshot, score_group_brws

groups = [(0, 1), (0, 2), (2, 3)]
snap = build_snapshot(groups, 4)
problem = build_alignment_problem(snap, (0, 1))
print("inter ties X:\n", problem.inter.toarray())
print("outer network:\n", problem.outer.toarray())

###############################################################################
# One group-side and one outer-side step with alpha = 0.5.  Actor 3 is never
# tied to the group directly, yet it inherits affinity through actor 2.

r = birw_seq(problem, BirwParams(alpha=0.5, l_group=1, l_outer=1))
print("R:\n", r)
print("scores:", score_group_brws(r, problem).as_dict())

###############################################################################
# Longer walks spread the affinity further.

for steps in (1, 2, 4, 8):
    r = birw_seq(problem, BirwParams(0.6, steps, steps))
    print(steps, np.round(score_group_brws(r, problem).values, 4))
