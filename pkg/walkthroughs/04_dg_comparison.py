"""Three independent membership tests for simplices of a dg-category agree."""

import random

from tanerve.fixtures import homotopy_simplex
from tanerve.nerve import Nerve
from tanerve.quasicat import dg_nerve_member, faonte_check, perturb, random_simplex, tan_simplex_member

A = homotopy_simplex(3)
nv = Nerve(A)
rng = random.Random(2)
tally = {}
for _ in range(50):
    S = random_simplex(A, (0, 1, 2, 3), rng)
    if rng.randrange(2):
        S = perturb(A, S, rng) or S
    key = (dg_nerve_member(A, S), bool(faonte_check(A, S)), tan_simplex_member(nv, S))
    tally[key] = tally.get(key, 0) + 1
for (dg, rel, tan), k in sorted(tally.items()):
    print(f"dg nerve {dg!s:5}  simplex relations {rel!s:5}  TAN {tan!s:5}: {k}")
