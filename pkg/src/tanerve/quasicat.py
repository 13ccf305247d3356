"""
Simplices of the underlying simplicial set and inner horn filling.

A simplex collection on objects A_0..A_n assigns to every strictly
increasing sequence I = (i_0 < ... < i_k), k >= 1, an element
a_I of degree k - 1 in hom(A_{i_0}, A_{i_k}).  It is a simplex when

    d a_I = sum_{j=1}^{k-1} (-1)^{j-1} a_{I - i_j}
            - sum_{r >= 2} (-1)^{eps_c(j_1..j_{r-1})} m_r(a_{I_1} (x) ... (x) a_{I_r})

where I_1, ..., I_r are the consecutive segments of I cut at positions
0 < j_1 < ... < j_{r-1} < k.  Degenerate sequences carry the convention
a_{(i,i)} = 1 and a_I = 0 otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .ainfty import AInftyCategory, SpecError
from .exactlin import add_into, tensor
from .necklace import (
    Necklace,
    NecklaceMap,
    delta,
    enumerate_inert_into,
    enumerate_injective_into,
    eps_c,
    eps_g,
    identity,
    iter_compositions,
    nu,
)
from .nerve import Nerve, NerveElement, element_from_dict, element_to_dict
from .report import Report

Vector = dict[int, object]


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


# --------------------------------------------------------------------------
# simplex collections


@dataclass
class SimplexCollection:
    objects: tuple
    cells: dict[tuple[int, ...], Vector] = field(default_factory=dict)

    def __post_init__(self):
        self.objects = tuple(self.objects)
        n = self.n
        for I, v in list(self.cells.items()):
            if len(I) < 2 or any(not 0 <= i <= n for i in I) or any(a > b for a, b in zip(I, I[1:])):
                raise ValueError(f"bad index sequence {I} for n={n}")
            if not v:
                del self.cells[I]

    @property
    def n(self) -> int:
        return len(self.objects) - 1

    def sequences(self) -> list[tuple[int, ...]]:
        """All strictly increasing sequences of length >= 2, shortest first."""
        out = []
        for size in range(2, self.n + 2):
            out.extend(combinations(range(self.n + 1), size))
        return out

    def cell(self, I: tuple[int, ...], A: AInftyCategory) -> Vector:
        """a_I with the degenerate conventions applied."""
        if any(a == b for a, b in zip(I, I[1:])):
            if len(I) == 2:
                return {A.units[self.objects[I[0]]]: A.field.one}
            return {}
        return self.cells.get(tuple(I), {})

    def validate(self, A: AInftyCategory) -> None:
        for I, v in self.cells.items():
            want = (self.objects[I[0]], self.objects[I[-1]], len(I) - 2)
            for x in v:
                if A.keys[x][:3] != want:
                    raise SpecError(f"a_{I} must lie in hom{list(want)}, got {A.describe(x)}")
            if any(a == b for a, b in zip(I, I[1:])) and v != self.cell(I, A):
                raise SpecError(f"degenerate cell a_{I} violates the unit convention")

    def with_cell(self, I, v) -> "SimplexCollection":
        cells = {k: dict(w) for k, w in self.cells.items()}
        cells[tuple(I)] = dict(v)
        return SimplexCollection(self.objects, cells)


def _segments(I: Sequence[int], cuts: Sequence[int]) -> list[tuple[int, ...]]:
    bounds = (0, *cuts, len(I) - 1)
    return [tuple(I[a : b + 1]) for a, b in zip(bounds, bounds[1:])]


def _mult_of_tensor(A: AInftyCategory, t: Mapping[tuple, object]) -> Vector:
    out: Vector = {}
    for lab, c in t.items():
        v = A.m(lab)
        if v:
            add_into(out, v, c)
    return out


def _tensor_vectors(vs: Sequence[Vector]) -> dict:
    t: dict = {(): 1}
    for v in vs:
        t = tensor(t, {(x,): c for x, c in v.items()})
        if not t:
            break
    return t


def faonte_residual(A: AInftyCategory, S: SimplexCollection, I: tuple[int, ...]) -> Vector:
    """Left minus right side of the simplex relation at I."""
    k = len(I) - 1
    res: Vector = {}
    for x, c in S.cell(I, A).items():
        add_into(res, A.m((x,)), c)
    for j in range(1, k):
        add_into(res, S.cell(I[:j] + I[j + 1 :], A), -_sgn(j - 1))
    for r in range(2, min(k, A.arity_bound) + 1):
        for cuts in combinations(range(1, k), r - 1):
            t = _tensor_vectors([S.cell(seg, A) for seg in _segments(I, cuts)])
            if t:
                add_into(res, _mult_of_tensor(A, t), _sgn(eps_c(*cuts)))
    return res


def faonte_check(A: AInftyCategory, S: SimplexCollection, degenerate: bool = False) -> Report:
    """Decide whether a collection is a simplex; with degenerate=True also
    evaluate the relation on weakly increasing sequences, where both sides
    must vanish under the unit conventions."""
    S.validate(A)
    rep = Report("simplex-relations", stats={"n": S.n})
    seqs = S.sequences()
    if degenerate:
        seqs = [
            I
            for size in range(2, S.n + 3)
            for I in combinations_with_replacement(range(S.n + 1), size)
            if any(a == b for a, b in zip(I, I[1:]))
        ] + seqs
    for I in seqs:
        rep.count("sequences")
        res = faonte_residual(A, S, I)
        if res:
            rep.fail(sequence=list(I), residual=[[A.describe(x), A.field.format(c)] for x, c in sorted(res.items())])
    return rep


def dg_nerve_member(A: AInftyCategory, S: SimplexCollection) -> bool:
    """Membership in the dg nerve, using only d and the binary product.

    d a_I = sum_{j=1}^{k-1} (-1)^{j-1} (a_{I - i_j} - a_{i_0..i_j} a_{i_j..i_k}).
    """
    if any(k > 2 and t for k, t in A.tables.items()):
        raise ValueError("the dg nerve predicate needs a dg-category")
    S.validate(A)

    def a(I):
        return S.cells.get(tuple(I), {})

    for I in S.sequences():
        k = len(I) - 1
        lhs: Vector = {}
        for x, c in a(I).items():
            for y, d in A.tables.get(1, {}).get((x,), {}).items():
                lhs[y] = lhs.get(y, 0) + c * d
        rhs: Vector = {}
        for j in range(1, k):
            sg = _sgn(j - 1)
            for x, c in a(I[:j] + I[j + 1 :]).items():
                rhs[x] = rhs.get(x, 0) + sg * c
            for x, c in a(I[: j + 1]).items():
                for y, d in a(I[j:]).items():
                    for z, e in A.m((x, y)).items():
                        rhs[z] = rhs.get(z, 0) - sg * c * d * e
        diff = {x: lhs.get(x, 0) - rhs.get(x, 0) for x in set(lhs) | set(rhs)}
        if any(diff.values()):
            return False
    return True


def assemble_simplex(A: AInftyCategory, S: SimplexCollection, interval: tuple[int, int] | None = None) -> NerveElement:
    """y_g = a_{g|bead 1} (x) ... (x) a_{g|bead l} for every injective g into Delta^n.

    With interval = (i, j) the same is done for the face spanned by
    i..j, giving an element of N_{Delta^{j-i}}(A_i, A_j).
    """
    S.validate(A)
    lo, hi = (0, S.n) if interval is None else interval
    if not 0 <= lo < hi <= S.n and not (lo == hi == 0 == S.n):
        raise ValueError(f"bad interval {interval} for n={S.n}")
    T = Necklace.simplex(hi - lo)
    comps = {}
    for g in enumerate_injective_into(T):
        U = g.source
        vs = []
        for u, v in zip(U.joints, U.joints[1:]):
            vs.append(S.cell(tuple(lo + x for x in g.values[u : v + 1]), A))
        t = _tensor_vectors(vs)
        if t:
            comps[g] = t
    objs = S.objects[lo : hi + 1]
    return NerveElement(T, objs[0], objs[-1], comps, objs)


def assemble_intervals(A: AInftyCategory, S: SimplexCollection) -> dict[tuple[int, int], NerveElement]:
    """The elements on every face [i, j] of Delta^n; together they are the
    templicial map out of the free templicial space on Delta^n."""
    return {(i, j): assemble_simplex(A, S, (i, j)) for i in range(S.n + 1) for j in range(i + 1, S.n + 1)}


def tan_simplex_member(nv: Nerve, S: SimplexCollection, top_only: bool = False) -> bool:
    """All assembled interval elements satisfy the TAN relations.

    top_only=True inspects only the element over the whole of Delta^n,
    which cannot see cells whose complement in a tensor vanishes.
    """
    if top_only:
        return nv.is_member(assemble_simplex(nv.A, S))
    return all(nv.is_member(y) for y in assemble_intervals(nv.A, S).values())


# --------------------------------------------------------------------------
# random collections


def _random_vector(A: AInftyCategory, src, tgt, deg: int, rng: random.Random, span: int = 2) -> Vector:
    out = {}
    for x in A.hom(src, tgt, deg):
        c = rng.randint(-span, span)
        if c:
            out[x] = A.field(c)
    return out


def random_simplex(A: AInftyCategory, objects: Sequence, rng: random.Random, span: int = 2) -> SimplexCollection:
    """A random simplex with the given vertex objects.

    Cells a_I with i_1 = i_0 + 1 are drawn freely (edges (i, i+1) are
    cycles automatically since degree 0 has no boundary).  Every other
    cell is solved from the relation of I + {i_0 + 1}, whose first face
    it is.  Cells are processed by decreasing i_0.
    """
    objects = tuple(objects)
    n = len(objects) - 1
    S = SimplexCollection(objects)
    cells = S.cells
    for i0 in range(n - 1, -1, -1):
        seqs = [I for size in range(2, n + 2) for I in combinations(range(n + 1), size) if I[0] == i0]
        free = [I for I in seqs if I[1] == i0 + 1]
        fixed = [I for I in seqs if I[1] > i0 + 1]
        for I in free:
            v = _random_vector(A, objects[I[0]], objects[I[-1]], len(I) - 2, rng, span)
            if v:
                cells[I] = v
        for I in sorted(fixed, key=len):
            J = tuple(sorted(I + (i0 + 1,)))
            # relation at J: d a_J = a_I - sum_{j>=2} ... - (m terms); solve for a_I
            k = len(J) - 1
            val: Vector = {}
            for x, c in S.cell(J, A).items():
                add_into(val, A.m((x,)), c)
            for j in range(2, k):
                add_into(val, S.cell(J[:j] + J[j + 1 :], A), -_sgn(j - 1))
            for r in range(2, min(k, A.arity_bound) + 1):
                for cuts in combinations(range(1, k), r - 1):
                    t = _tensor_vectors([S.cell(seg, A) for seg in _segments(J, cuts)])
                    if t:
                        add_into(val, _mult_of_tensor(A, t), _sgn(eps_c(*cuts)))
            if val:
                cells[I] = val
    return S


def perturb(A: AInftyCategory, S: SimplexCollection, rng: random.Random, tries: int = 100) -> SimplexCollection | None:
    """Change one cell by a random nonzero vector in its hom; None if no cell has room."""
    seqs = [I for I in S.sequences() if A.hom(S.objects[I[0]], S.objects[I[-1]], len(I) - 2)]
    if not seqs:
        return None
    for _ in range(tries):
        I = rng.choice(seqs)
        v = _random_vector(A, S.objects[I[0]], S.objects[I[-1]], len(I) - 2, rng)
        if not v:
            continue
        new = dict(S.cells.get(I, {}))
        add_into(new, v)
        return S.with_cell(I, new)
    return None


def random_collection(A: AInftyCategory, objects: Sequence, rng: random.Random) -> SimplexCollection:
    objects = tuple(objects)
    S = SimplexCollection(objects)
    for I in S.sequences():
        v = _random_vector(A, objects[I[0]], objects[I[-1]], len(I) - 2, rng)
        if v:
            S.cells[I] = v
    return S


# --------------------------------------------------------------------------
# data over the free templicial space on Delta^N


def beta_from_collection(A: AInftyCategory, S: SimplexCollection) -> Callable[[tuple], Vector]:
    return lambda seq: S.cell(tuple(seq), A)


def verify_beta_data(
    A: AInftyCategory,
    N: int,
    beta: Callable[[tuple], Vector],
    objects: Sequence,
    m_max: int | None = None,
    printed_sign: bool = False,
) -> Report:
    """Check a family beta_m on the free templicial space of Delta^N.

    A basis element of degree m is a weakly increasing sequence of length
    m + 1 in [N]; inner faces delete an interior entry, degeneracies repeat
    an entry and the comultiplication cuts the sequence.  beta maps each
    sequence to a vector in hom(objects[first], objects[last]) of degree
    m - 1.  Checked: beta_1 sends (i, i) to the unit, beta vanishes on
    other degenerate sequences, and

        d beta_m = sum_j (-1)^{j-1} beta_{m-1} d_j - sum (-1)^{eps_g} m_l(beta (x) ... (x) beta) mu.

    printed_sign=True evaluates the m-terms with (-1)^{1 + eps_g} instead,
    for comparison.
    """
    m_max = N + 1 if m_max is None else m_max
    objects = tuple(objects)
    rep = Report("beta-data", stats={"N": N, "m_max": m_max})
    for i in range(N + 1):
        if beta((i, i)) != {A.units[objects[i]]: A.field.one}:
            rep.fail(sequence=[i, i], reason="degenerate 1-simplex does not go to the unit")
    for m in range(1, m_max + 1):
        for seq in combinations_with_replacement(range(N + 1), m + 1):
            rep.count("sequences")
            val = beta(seq)
            want = (objects[seq[0]], objects[seq[-1]], m - 1)
            if any(A.keys[x][:3] != want for x in val):
                rep.fail(sequence=list(seq), reason="value in the wrong hom")
                continue
            degenerate = any(a == b for a, b in zip(seq, seq[1:]))
            if degenerate and m > 1 and val:
                rep.fail(sequence=list(seq), reason="degenerate sequence not sent to zero")
            res: Vector = {}
            for x, c in val.items():
                add_into(res, A.m((x,)), c)
            for j in range(1, m):
                add_into(res, beta(seq[:j] + seq[j + 1 :]), -_sgn(j - 1))
            for comp in iter_compositions(m):
                if len(comp) < 2 or len(comp) > A.arity_bound:
                    continue
                cuts, pos = [], 0
                for part in comp[:-1]:
                    pos += part
                    cuts.append(pos)
                t = _tensor_vectors([beta(seg) for seg in _segments(seq, cuts)])
                if t:
                    e = eps_g(*comp) + (1 if printed_sign else 0)
                    add_into(res, _mult_of_tensor(A, t), _sgn(e))
            if res:
                rep.fail(sequence=list(seq), residual=[[A.describe(x), A.field.format(c)] for x, c in sorted(res.items())])
    return rep


# --------------------------------------------------------------------------
# inner horns


@dataclass
class HornData:
    """Faces y_i (0 < i < n, i != j) and pieces x_k over Delta^k v Delta^{n-k} (0 < k < n)."""

    n: int
    j: int
    a: Hashable
    b: Hashable
    faces: dict[int, NerveElement]
    pieces: dict[int, NerveElement]

    def __post_init__(self):
        n, j = self.n, self.j
        if n < 2 or not 0 < j < n:
            raise ValueError(f"need 0 < j < n and n >= 2, got n={n}, j={j}")
        if set(self.faces) != {i for i in range(1, n) if i != j}:
            raise ValueError(f"faces must be given for i in (0, {n}) except {j}")
        if set(self.pieces) != set(range(1, n)):
            raise ValueError(f"pieces must be given for k in (0, {n})")
        for i, y in self.faces.items():
            if y.necklace != Necklace.simplex(n - 1) or (y.a, y.b) != (self.a, self.b):
                raise ValueError(f"face {i} has the wrong shape")
        for k, x in self.pieces.items():
            if x.necklace != Necklace.simplex(k) | Necklace.simplex(n - k) or (x.a, x.b) != (self.a, self.b):
                raise ValueError(f"piece {k} has the wrong shape")

    @property
    def labels(self):
        return self.pieces[1].labels


def restrict_to_horn(nv: Nerve, w: NerveElement, j: int) -> HornData:
    n = w.necklace.spine
    faces = {i: nv.face(i, w) for i in range(1, n) if i != j}
    pieces = {k: nv.structure_map(nu(k, n - k), w) for k in range(1, n)}
    return HornData(n, j, w.a, w.b, faces, pieces)


def _wedge(f: NecklaceMap, g: NecklaceMap) -> NecklaceMap:
    return f | g


def horn_compatible(nv: Nerve, H: HornData) -> Report:
    n, j = H.n, H.j
    rep = Report("horn-compatibility", stats={"n": n, "j": j})
    idx = [i for i in range(1, n) if i != j]
    for i in idx:
        for i2 in idx:
            if i < i2:
                rep.count("face pairs")
                lhs = nv.face(i2 - 1, H.faces[i])
                rhs = nv.face(i, H.faces[i2])
                if lhs != rhs:
                    rep.fail(condition="faces", i=i, i2=i2)
    for k in range(1, n):
        for l in range(k + 1, n):
            rep.count("piece pairs")
            lhs = nv.structure_map(_wedge(identity(Necklace.simplex(k)), nu(l - k, n - l)), H.pieces[k])
            rhs = nv.structure_map(_wedge(nu(k, l - k), identity(Necklace.simplex(n - l))), H.pieces[l])
            if lhs != rhs:
                rep.fail(condition="pieces", k=k, l=l)
    for i in idx:
        for k in range(1, n - 1):
            rep.count("mixed pairs")
            lhs = nv.structure_map(nu(k, n - 1 - k), H.faces[i])
            if i <= k:
                f = _wedge(delta(k + 1, i), identity(Necklace.simplex(n - k - 1)))
                rhs = nv.structure_map(f, H.pieces[k + 1])
            else:
                f = _wedge(identity(Necklace.simplex(k)), delta(n - k, i - k))
                rhs = nv.structure_map(f, H.pieces[k])
            if lhs != rhs:
                rep.fail(condition="mixed", i=i, k=k)
    return rep


def horn_fill(nv: Nerve, H: HornData, check: bool = True) -> NerveElement:
    """The explicit filler with z_id = 0."""
    if check:
        rep = horn_compatible(nv, H)
        if not rep:
            raise ValueError(f"incompatible horn: {rep.failures}")
    A = nv.A
    n, j = H.n, H.j
    T = Necklace.simplex(n)
    comps: dict[NecklaceMap, dict] = {}
    skip_j = delta(n, j)
    for g in enumerate_injective_into(T):
        if g.is_identity or g == skip_j:
            continue
        image = set(g.values)
        missing = [i for i in range(1, n) if i != j and i not in image]
        if missing:
            i = missing[0]
            inner = NecklaceMap(g.source, Necklace.simplex(n - 1), tuple(v if v < i else v - 1 for v in g.values))
            val = H.faces[i][inner]
        else:
            joint_vals = [g.values[u] for u in g.source.joints[1:-1]]
            k = joint_vals[0]
            inner = NecklaceMap(g.source, Necklace.simplex(k) | Necklace.simplex(n - k), g.values)
            val = H.pieces[k][inner]
        if val:
            comps[g] = dict(val)
    zj: dict = {}
    for i in range(1, n):
        if i != j:
            top = H.faces[i][identity(Necklace.simplex(n - 1))]
            add_into(zj, {lab[0]: c for lab, c in top.items()}, _sgn(i + j - 1))
    for v in enumerate_inert_into(n):
        S = v.source
        if S.length < 2:
            continue
        t = comps.get(v, {})
        if t:
            add_into(zj, _mult_of_tensor(A, t), _sgn(S.signature + j - 1))
    if zj:
        comps[skip_j] = {(x,): c for x, c in zj.items()}
    return NerveElement(T, H.a, H.b, comps, H.labels)


def verify_filler(nv: Nerve, H: HornData, z: NerveElement) -> Report:
    rep = Report("horn-filler", stats={"n": H.n, "j": H.j})
    for i, y in H.faces.items():
        if nv.face(i, z) != y:
            rep.fail(condition="face", i=i)
    for k, x in H.pieces.items():
        if nv.structure_map(nu(k, H.n - k), z) != x:
            rep.fail(condition="piece", k=k)
    res = nv.tan_residuals(z)
    for g, k, r in res:
        rep.fail(condition="TAN", map=str(g), bead=k)
    return rep


def horn_to_dict(H: HornData, A: AInftyCategory) -> dict:
    return {
        "n": H.n,
        "j": H.j,
        "from": H.a,
        "to": H.b,
        "faces": {str(i): element_to_dict(y, A) for i, y in sorted(H.faces.items())},
        "pieces": {str(k): element_to_dict(x, A) for k, x in sorted(H.pieces.items())},
    }


def horn_from_dict(data: Mapping, A: AInftyCategory) -> HornData:
    try:
        n, j = int(data["n"]), int(data["j"])
        faces = {int(i): element_from_dict(y, A) for i, y in data["faces"].items()}
        pieces = {int(k): element_from_dict(x, A) for k, x in data["pieces"].items()}
        a = next(iter(pieces.values())).a
        b = next(iter(pieces.values())).b
    except (KeyError, TypeError, ValueError, StopIteration) as exc:
        raise SpecError(f"malformed horn: {exc}") from None
    try:
        return HornData(n, j, a, b, faces, pieces)
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def collection_to_dict(S: SimplexCollection, A: AInftyCategory) -> dict:
    return {
        "objects": list(S.objects),
        "cells": [
            {"sequence": list(I), "terms": [[A.label(x), A.field.format(c)] for x, c in sorted(v.items())]}
            for I, v in sorted(S.cells.items())
        ],
    }


def collection_from_dict(data: Mapping, A: AInftyCategory) -> SimplexCollection:
    try:
        objects = tuple(data["objects"])
        cells = {}
        for entry in data.get("cells", []):
            I = tuple(entry["sequence"])
            src, tgt = objects[I[0]], objects[I[-1]]
            v: Vector = {}
            for label, c in entry["terms"]:
                add_into(v, {A.gen(src, tgt, len(I) - 2, str(label)): A.field.parse(str(c))})
            cells[I] = v
    except (KeyError, TypeError, IndexError) as exc:
        raise SpecError(f"malformed simplex collection: {exc}") from None
    return SimplexCollection(objects, cells)
