"""
Small categories and functors used by the tests, the self test and the
walkthroughs.  Every fixture is validated by the relation checkers in the
test suite; nothing here is trusted by construction.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .ainfty import AInftyCategory, AInftyFunctor, standard_simplex_dg
from .exactlin import Field, Q


def build(
    objects: Sequence,
    gens: Sequence[tuple[str, object, object, int]],
    units: Mapping[object, str],
    m: Mapping[int, Mapping[tuple[str, ...], Mapping[str, int]]] = {},
    field: Field = Q,
    name: str = "",
) -> AInftyCategory:
    """Category from globally unique labels: gens are (label, src, tgt, degree)."""
    info = {}
    homs: dict[tuple, list[str]] = {}
    for lab, s, t, d in gens:
        info[lab] = (s, t, d, lab)
        homs.setdefault((s, t, d), []).append(lab)
    for x, u in units.items():
        if u not in info:
            info[u] = (x, x, 0, u)
            homs.setdefault((x, x, 0), []).insert(0, u)
    tables = {}
    for k, entries in m.items():
        tables[k] = [
            ([info[l] for l in inputs], {info[o]: c for o, c in out.items()}) for inputs, out in entries.items()
        ]
    return AInftyCategory(objects, homs, units, tables, field=field, name=name)


def nonassociative_algebra(field: Field = Q) -> AInftyCategory:
    """One object, basis {1, x, y}, x*x = y and x*y = x; (xx)x = 0 but x(xx) = x."""
    return build(
        ["*"],
        [("x", "*", "*", 0), ("y", "*", "*", 0)],
        {"*": "1"},
        {2: {("x", "x"): {"y": 1}, ("x", "y"): {"x": 1}}},
        field=field,
        name="nonassoc",
    )


def homotopy_simplex(n: int = 3, field: Field = Q) -> AInftyCategory:
    """A dg-category on objects 0..n with odd-degree morphisms.

    hom(i, j) has (i,j) in degree 0 for i <= j and e(i,j) in degree 1 for
    i < j, with d e(i,j) = (i,j), composition of the (i,j) as in the
    simplex, e(i,j)(j,k) = e(i,k) = (i,j)e(j,k) and e e = 0.
    """
    objs = list(range(n + 1))
    gens = []
    for i in objs:
        for j in objs:
            if i < j:
                gens.append((f"({i},{j})", i, j, 0))
                gens.append((f"e({i},{j})", i, j, 1))
    units = {i: f"({i},{i})" for i in objs}
    m1 = {(f"e({i},{j})",): {f"({i},{j})": 1} for i in objs for j in objs if i < j}
    m2 = {}
    for i in objs:
        for j in objs:
            for k in objs:
                if i < j < k:
                    m2[(f"({i},{j})", f"({j},{k})")] = {f"({i},{k})": 1}
                    m2[(f"e({i},{j})", f"({j},{k})")] = {f"e({i},{k})": 1}
                    m2[(f"({i},{j})", f"e({j},{k})")] = {f"e({i},{k})": 1}
    return build(objs, gens, units, {1: m1, 2: m2}, field=field, name=f"H[D{n}]")


def _m3_block(offset: int, tag: str, twist: int):
    o = [offset + i for i in range(4)]
    e = lambda a, b: f"e{o[a]}{o[b]}"
    p, q, h = f"p{tag}", f"q{tag}", f"h{tag}"
    gens = [
        (e(0, 1), o[0], o[1], 0),
        (e(1, 2), o[1], o[2], 0),
        (e(2, 3), o[2], o[3], 0),
        (e(0, 2), o[0], o[2], 0),
        (e(1, 3), o[1], o[3], 0),
        (p, o[0], o[3], 0),
        (q, o[0], o[3], 0),
        (h, o[0], o[3], 1),
    ]
    m1 = {(h,): {q: 1, p: -1}}
    m2 = {
        (e(0, 1), e(1, 2)): {e(0, 2): 1},
        (e(1, 2), e(2, 3)): {e(1, 3): 1},
        (e(0, 2), e(2, 3)): {p: 1 + twist, q: -twist},
        (e(0, 1), e(1, 3)): {q: 1},
    }
    m3 = {(e(0, 1), e(1, 2), e(2, 3)): {h: 1 + twist}}
    return gens, m1, m2, m3


def m3_category(twist: int = 0, field: Field = Q) -> AInftyCategory:
    """Two glued squares on objects 0..6 whose associator is a nonzero m_3.

    On the block 0..3 the two composites e01 e12 e23 land on p and q, and
    m_3(e01, e12, e23) = h with d h = q - p.  The block 3..6 repeats the
    pattern.  ``twist`` = 1 gives the structure transported along the
    functor with f_2(e02, e23) = h on the first block.
    """
    g1, a1, b1, c1 = _m3_block(0, "", twist)
    g2, a2, b2, c2 = _m3_block(3, "'", 0)
    objs = list(range(7))
    units = {i: f"1_{i}" for i in objs}
    m = {1: {**a1, **a2}, 2: {**b1, **b2}, 3: {**c1, **c2}}
    return build(objs, g1 + g2, units, m, field=field, name="M3" + ("'" if twist else ""))


def twist_functor(A: AInftyCategory | None = None, B: AInftyCategory | None = None, sign: int = 1) -> AInftyFunctor:
    """f_1 = identity on labels, f_2(e02, e23) = sign * h.

    With sign = 1 this goes M3 -> M3' (twist 1); with sign = -1 it is the
    inverse M3' -> M3.
    """
    if A is None:
        A = m3_category(0) if sign == 1 else m3_category(1)
    if B is None:
        B = m3_category(1) if sign == 1 else m3_category(0)
    table1 = {(i,): {B.gen(*A.keys[i]): A.field.one} for i in range(len(A)) if not A.is_unit(i)}
    table2 = {(A["e02"], A["e23"]): {B["h"]: A.field(sign)}}
    return AInftyFunctor(A, B, {x: x for x in A.objects}, {1: table1, 2: table2}, name="theta" if sign == 1 else "theta^-1")


def poset_functor(A: AInftyCategory, B: AInftyCategory, object_map: Mapping, name: str = "") -> AInftyFunctor:
    """Strict functor sending (i,j) to (f i, f j) and e(i,j) to e(f i, f j) when present.

    Suitable between simplex-like fixtures whose labels follow the
    ``(i,j)`` / ``e(i,j)`` naming; a label with no counterpart maps to 0.
    """
    table = {}
    for i in range(len(A)):
        if A.is_unit(i):
            continue
        s, t, d, lab = A.keys[i]
        fs, ft = object_map[s], object_map[t]
        target = lab.replace(f"({s},{t})", f"({fs},{ft})")
        try:
            j = B.gen(fs, ft, d, target)
        except ValueError:
            continue
        table[(i,)] = {j: A.field.one}
    return AInftyFunctor(A, B, object_map, {1: table}, name=name)


def codegeneracy_functor(n: int, i: int, field: Field = Q) -> AInftyFunctor:
    """A[D^{n+1}] -> A[D^n] induced by the codegeneracy sigma_i."""
    A, B = standard_simplex_dg(n + 1, field), standard_simplex_dg(n, field)
    f0 = {v: (v if v <= i else v - 1) for v in A.objects}
    return poset_functor(A, B, f0, name=f"s{i}")


def inclusion_functor(n: int = 3, field: Field = Q) -> AInftyFunctor:
    """A[D^n] -> H[D^n], (i,j) -> (i,j)."""
    return poset_functor(standard_simplex_dg(n, field), homotopy_simplex(n, field), {v: v for v in range(n + 1)}, name="incl")
