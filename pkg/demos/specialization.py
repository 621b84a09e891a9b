"""Deform S(1,1,2) along a parameter direction and read off the induced Poisson bracket on the center.

Directions with equal first two entries stay inside the PI-degree-2 family S(1,1,c),
so commutators never become nonzero and the procedure has nothing to detect.
"""

from sklyanin.specialize import check_direction, specialize

for direction in [(1, 0, 0), (0, 1, 0), (1, 2, 3)]:
    res, _, _ = specialize((1, 1, 2), direction)
    print(direction, "level", res.N, "eta", res.eta, "rounds", res.rounds)
    for (u, v), b in sorted(res.brackets.items()):
        print(f"  {{{u},{v}}} =", b)

for direction in [(0, 0, 1), (1, 1, 0)]:
    print(direction, "accepted:", check_direction((1, 1, 2), direction))
