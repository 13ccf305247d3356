"""Necklaces, their maps and the two factorizations."""

from tanerve.necklace import (
    Necklace,
    NecklaceMap,
    enumerate_inert_into,
    enumerate_injective_into,
    factor_active_inert,
    factor_epi_mono,
    maps_between,
    nu,
)

T = Necklace.parse("2,3")
print(f"{T}: beads {T.beads}, spine {T.spine}, dim {T.dim}, signature {T.signature}")

h = NecklaceMap(Necklace.simplex(2), Necklace.simplex(2), (0, 0, 2))
e, m = factor_epi_mono(h)
print(f"{h.values} = {m.values} after {e.values}  (through {e.target})")

act, ine = factor_active_inert(nu(1, 1))
print(f"nu_(1,1): active part {act}, inert part {ine}")

print("injective maps into D2:")
for g in enumerate_injective_into(Necklace.simplex(2)):
    print("  ", g)

for n in range(1, 6):
    print(f"inert maps into D{n}: {len(enumerate_inert_into(n))}")

S, U = Necklace.parse("1,1"), Necklace.parse("2,1")
print(f"{len(maps_between(S, U))} maps {S} -> {U}")
