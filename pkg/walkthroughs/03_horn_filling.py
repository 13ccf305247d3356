"""Fill inner horns and check the fillers exactly."""

import random

from tanerve.fixtures import m3_category
from tanerve.necklace import Necklace
from tanerve.nerve import Nerve
from tanerve.quasicat import horn_compatible, horn_fill, restrict_to_horn, verify_filler

A = m3_category()
nv = Nerve(A)
rng = random.Random(1)
w = nv.random_element(Necklace.simplex(3), 0, 3, rng)
print("random 3-simplex with", w.support(), "terms")

for j in (1, 2):
    H = restrict_to_horn(nv, w, j)
    print(f"j={j}: compatible = {bool(horn_compatible(nv, H))}")
    z = horn_fill(nv, H)
    rep = verify_filler(nv, H, z)
    print(f"      filler verified = {rep.passed}, equals the original = {z == w}")
