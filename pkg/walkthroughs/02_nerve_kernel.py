"""A nerve component as the kernel of the TAN system."""

from tanerve.ainfty import standard_simplex_dg
from tanerve.fixtures import m3_category
from tanerve.necklace import Necklace
from tanerve.nerve import Nerve, element_to_dict

A = standard_simplex_dg(2)
nv = Nerve(A)
D2 = Necklace.simplex(2)

print("full component N_D2(0, 2):", nv.dim(D2, 0, 2), "of ambient", nv.ambient_dim(D2, 0, 2))
(y,) = nv.basis(D2, 0, 2, labels=(0, 1, 2))
print("labelled by 0,1,2 it is spanned by")
for c in element_to_dict(y, A)["components"]:
    print("  ", c["map"], c["terms"])

x1, x2 = nv.comult(1, 1, y)[0]
print("its comultiplication splits into", x1, "and", x2)

M = m3_category()
nm = Nerve(M)
for beads in ["3", "2,1", "1,2", "1,1,1"]:
    T = Necklace.parse(beads)
    print(f"M3: dim N_{T}(0, 3) labelled 0,1,2,3 = {nm.dim(T, 0, 3, (0, 1, 2, 3))}")
