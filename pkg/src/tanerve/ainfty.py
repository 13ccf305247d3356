"""
Finite strictly unital A-infinity categories and A-infinity functors.

Gradings are homological and non-negative: m_k has degree k - 2, so m_1
lowers degree by one, and a functor component f_k has degree k - 1.
Multiplication and functor tables are stored only on tuples of non-unit
basis elements; everything involving a unit is synthesized from the
strict unit laws.

Basis elements are addressed by integer ids.  ``A.gen(src, tgt, deg,
label)`` and ``A[label]`` (when the label is globally unique) translate
from labels.
"""

from __future__ import annotations

import json
from itertools import product
from pathlib import Path
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .exactlin import Field, Q, SignConvention, add_into, field_from_spec
from .necklace import eps_g, iter_compositions
from .report import Report

Table = dict[tuple[int, ...], dict[int, object]]


class SpecError(ValueError):
    """Malformed category, functor or element description."""


class AInftyCategory:
    def __init__(
        self,
        objects: Sequence[Hashable],
        homs: Mapping[tuple, Sequence[str]],
        units: Mapping[Hashable, str],
        tables: Mapping[int, Iterable[tuple[Sequence[tuple], Mapping[tuple, object]]]] = (),
        field: Field = Q,
        max_degree: int | None = None,
        name: str = "",
    ):
        """
        homs maps (src, tgt, deg) to a list of labels.  tables maps k to
        entries (inputs, outputs) where inputs is a sequence of
        (src, tgt, deg, label) keys and outputs maps such keys to scalars.
        """
        self.field = field
        self.name = name
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise SpecError("duplicate objects")
        obj_set = set(self.objects)
        self.keys: list[tuple] = []
        self._index: dict[tuple, int] = {}
        self._by_label: dict[str, list[int]] = {}
        for (s, t, d), labels in sorted(homs.items(), key=lambda kv: _hom_sort(kv[0], self.objects)):
            if s not in obj_set or t not in obj_set:
                raise SpecError(f"hom ({s!r}, {t!r}) mentions an unknown object")
            if not isinstance(d, int) or d < 0:
                raise SpecError(f"degree {d!r} must be a non-negative integer")
            if len(set(labels)) != len(labels):
                raise SpecError(f"repeated labels in hom ({s!r}, {t!r}) degree {d}")
            for lab in labels:
                key = (s, t, d, str(lab))
                self._index[key] = len(self.keys)
                self._by_label.setdefault(str(lab), []).append(len(self.keys))
                self.keys.append(key)
        self.max_degree = max((k[2] for k in self.keys), default=0)
        if max_degree is not None:
            if max_degree < self.max_degree:
                raise SpecError(f"hom degree {self.max_degree} exceeds declared max {max_degree}")
            self.max_degree = max_degree

        self.units: dict[Hashable, int] = {}
        for x in self.objects:
            if x not in units:
                raise SpecError(f"object {x!r} has no unit")
            key = (x, x, 0, str(units[x]))
            if key not in self._index:
                raise SpecError(f"unit {units[x]!r} is not a degree 0 element of hom({x!r}, {x!r})")
            self.units[x] = self._index[key]
        self._unit_ids = frozenset(self.units.values())

        self._out: dict[Hashable, list[int]] = {x: [] for x in self.objects}
        self._out_deg: dict[tuple, list[int]] = {}
        self._hom: dict[tuple, list[int]] = {}
        for i, (s, t, d, _) in enumerate(self.keys):
            self._out[s].append(i)
            self._out_deg.setdefault((s, d), []).append(i)
            self._hom.setdefault((s, t, d), []).append(i)

        self.tables: dict[int, Table] = {}
        for k, entries in dict(tables).items():
            for inputs, outputs in entries:
                ids = tuple(self._lookup(key) for key in inputs)
                self._add_entry(int(k), ids, {self._lookup(o): self.field(c) for o, c in outputs.items()})

    # ------------------------------------------------------------ lookup

    def _lookup(self, key) -> int:
        key = tuple(key)
        if len(key) != 4:
            raise SpecError(f"basis key {key!r} must be [src, tgt, degree, label]")
        key = (key[0], key[1], key[2], str(key[3]))
        try:
            return self._index[key]
        except KeyError:
            raise SpecError(f"unknown basis element {list(key)!r}") from None

    def gen(self, src, tgt, deg: int, label: str) -> int:
        return self._lookup((src, tgt, deg, label))

    def __getitem__(self, label: str) -> int:
        ids = self._by_label.get(label, [])
        if len(ids) != 1:
            raise KeyError(f"label {label!r} matches {len(ids)} basis elements")
        return ids[0]

    def __len__(self) -> int:
        return len(self.keys)

    def src(self, i: int):
        return self.keys[i][0]

    def tgt(self, i: int):
        return self.keys[i][1]

    def degree(self, i: int) -> int:
        return self.keys[i][2]

    def label(self, i: int) -> str:
        return self.keys[i][3]

    def is_unit(self, i: int) -> bool:
        return i in self._unit_ids

    def hom(self, src, tgt, deg: int) -> list[int]:
        return self._hom.get((src, tgt, deg), [])

    def out(self, src, deg: int | None = None) -> list[int]:
        if deg is None:
            return self._out.get(src, [])
        return self._out_deg.get((src, deg), [])

    @property
    def arity_bound(self) -> int:
        """m_k vanishes identically for k above this."""
        return self.max_degree + 2

    @property
    def relation_bound(self) -> int:
        """The A-infinity relation at arity k lands in degree (sum of inputs) + k - 3,
        so it is vacuous for k > max_degree + 3."""
        return self.max_degree + 3

    def describe(self, i: int) -> list:
        s, t, d, lab = self.keys[i]
        return [s, t, d, lab]

    # ------------------------------------------------------------ tables

    def _check_path(self, ids: Sequence[int]) -> None:
        for a, b in zip(ids, ids[1:]):
            if self.tgt(a) != self.src(b):
                raise SpecError(f"inputs {[self.describe(i) for i in ids]} are not composable")

    def _add_entry(self, k: int, ids: tuple[int, ...], out: Mapping[int, object]) -> None:
        if k < 1 or len(ids) != k:
            raise SpecError(f"m_{k} entry has {len(ids)} inputs")
        self._check_path(ids)
        if any(self.is_unit(i) for i in ids):
            raise SpecError(f"m_{k} entries on units are synthesized, not stored: {[self.describe(i) for i in ids]}")
        want = (self.src(ids[0]), self.tgt(ids[-1]), sum(self.degree(i) for i in ids) + k - 2)
        table = self.tables.setdefault(k, {})
        slot = table.setdefault(ids, {})
        for o, c in out.items():
            if self.keys[o][:3] != want:
                raise SpecError(
                    f"m_{k}{[self.describe(i) for i in ids]} must land in hom{list(want)}, got {self.describe(o)}"
                )
            add_into(slot, {o: c})
        if not slot:
            del table[ids]

    def m(self, ids: tuple[int, ...]) -> dict[int, object]:
        """m_k on a tuple of basis ids; never mutate the result."""
        k = len(ids)
        units = [self.is_unit(i) for i in ids]
        if any(units):
            if k != 2:
                return {}
            a, b = ids
            if self.tgt(a) != self.src(b):
                return {}
            return {b: self.field.one} if units[0] else {a: self.field.one}
        return self.tables.get(k, {}).get(ids, _EMPTY)

    def op(self, k: int) -> Callable[[tuple], dict]:
        return self.m

    def iter_paths(self, k: int, units: bool = True, start=None) -> Iterator[tuple[int, ...]]:
        """Composable k-tuples of basis ids in canonical order."""
        starts = self.objects if start is None else (start,)

        def rec(obj, left):
            if left == 0:
                yield ()
                return
            for i in self._out[obj]:
                if not units and self.is_unit(i):
                    continue
                for rest in rec(self.tgt(i), left - 1):
                    yield (i,) + rest

        for x in starts:
            yield from rec(x, k)

    # ------------------------------------------------------------ misc

    def __repr__(self):
        return f"AInftyCategory({self.name or '?'}: {len(self.objects)} objects, {len(self.keys)} basis elements)"

    def nonzero_arities(self) -> list[int]:
        return sorted(k for k, t in self.tables.items() if t)

    def equal_tables(self, other: "AInftyCategory") -> bool:
        if self.keys != other.keys or self.units != other.units:
            return False
        ks = set(self.tables) | set(other.tables)
        return all(self.tables.get(k, {}) == other.tables.get(k, {}) for k in ks)


_EMPTY: dict = {}


def _hom_sort(key, objects):
    s, t, d = key
    pos = {x: i for i, x in enumerate(objects)}
    return (pos.get(s, -1), pos.get(t, -1), d if isinstance(d, int) else -1)


# --------------------------------------------------------------------------
# evaluation helpers


def apply_tensor_of_maps(
    maps: Sequence[tuple[Callable[[tuple], Mapping], int, int]],
    x: tuple[int, ...],
    degree_of: Callable[[int], int],
    convention: SignConvention = SignConvention.KOSZUL,
) -> dict[tuple, object]:
    """(f_1 (x) ... (x) f_r)(x) for maps given as (fn, degree, arity).

    Each f_j passes the inputs consumed before it with the sign of the
    chosen convention.
    """
    if sum(a for _, _, a in maps) != len(x):
        raise ValueError("arities do not add up to the tensor length")
    partial: dict[tuple, object] = {(): 1}
    pos = 0
    for fn, deg, ar in maps:
        chunk = x[pos : pos + ar]
        value = fn(chunk)
        if not value:
            return {}
        e = convention.passing(deg, [degree_of(i) for i in x[:pos]])
        s = -1 if e % 2 else 1
        nxt: dict[tuple, object] = {}
        for lab, c in partial.items():
            for z, cz in value.items():
                add_into(nxt, {lab + (z,): s * c * cz})
        partial = nxt
        if not partial:
            return {}
        pos += ar
    return partial


def _unsigned_lookup(table: Table):
    return lambda ids: table.get(ids, _EMPTY)


def relation_residual(A: AInftyCategory, x: tuple[int, ...]) -> dict[int, object]:
    """Sum over r+s+t=k of (-1)^{r+st} m_{r+1+t}(id^r (x) m_s (x) id^t)(x)."""
    k = len(x)
    total: dict[int, object] = {}
    B = A.arity_bound
    for s in range(1, min(k, B) + 1):
        for r in range(0, k - s + 1):
            t = k - r - s
            if r + 1 + t > B:
                continue
            inner = A.m(x[r : r + s])
            if not inner:
                continue
            e = r + s * t + SignConvention.KOSZUL.passing(s - 2, [A.degree(i) for i in x[:r]])
            sgn = -1 if e % 2 else 1
            for z, cz in inner.items():
                outer = A.m(x[:r] + (z,) + x[r + s :])
                if outer:
                    add_into(total, outer, sgn * cz)
    return total


def check_relations(A: AInftyCategory, k_max: int | None = None) -> Report:
    """Evaluate the A-infinity relations on every composable basis tuple."""
    k_max = A.relation_bound if k_max is None else k_max
    rep = Report("ainfty-relations", stats={"k_max": k_max})
    for k in range(1, k_max + 1):
        for x in A.iter_paths(k):
            rep.count("tuples")
            res = relation_residual(A, x)
            if res:
                rep.fail(
                    k=k,
                    inputs=[A.describe(i) for i in x],
                    residual=_fmt_vec(A, res),
                )
    return rep


def check_units(A: AInftyCategory) -> Report:
    """Strict unit laws, evaluated through the public m."""
    rep = Report("ainfty-units")
    one = A.field.one
    for x, u in A.units.items():
        if A.degree(u) != 0 or A.src(u) != x or A.tgt(u) != x:
            rep.fail(object=x, reason="unit is not a degree 0 endomorphism")
        if A.m((u,)):
            rep.fail(object=x, reason="differential of the unit is nonzero")
    for i in range(len(A)):
        rep.count("elements")
        left = A.m((A.units[A.src(i)], i))
        right = A.m((i, A.units[A.tgt(i)]))
        if left != {i: one} or right != {i: one}:
            rep.fail(element=A.describe(i), reason="m_2 with a unit is not the identity")
    for k in range(3, A.arity_bound + 1):
        for x in A.iter_paths(k):
            if any(A.is_unit(i) for i in x) and A.m(x):
                rep.fail(inputs=[A.describe(i) for i in x], reason=f"m_{k} does not vanish on a unit")
    for k, table in A.tables.items():
        for ids in table:
            if any(A.is_unit(i) for i in ids):
                rep.fail(inputs=[A.describe(i) for i in ids], reason="stored entry on a unit")
    return rep


def _fmt_vec(A, vec: Mapping[int, object]) -> list:
    return [[A.describe(i), A.field.format(c)] for i, c in sorted(vec.items())]


# --------------------------------------------------------------------------
# functors


class AInftyFunctor:
    def __init__(
        self,
        source: AInftyCategory,
        target: AInftyCategory,
        object_map: Mapping[Hashable, Hashable],
        tables: Mapping[int, Table] | None = None,
        name: str = "",
    ):
        """tables maps k to {source id tuple: {target id: scalar}} on non-unit tuples."""
        self.source = source
        self.target = target
        self.name = name
        if source.field != target.field:
            raise SpecError("source and target live over different fields")
        self.object_map = dict(object_map)
        for x in source.objects:
            if x not in self.object_map:
                raise SpecError(f"object {x!r} is not mapped")
            if self.object_map[x] not in set(target.objects):
                raise SpecError(f"object {x!r} maps to unknown {self.object_map[x]!r}")
        self.tables: dict[int, Table] = {}
        for k, table in (tables or {}).items():
            for ids, out in table.items():
                self._add_entry(int(k), tuple(ids), out)

    def _add_entry(self, k: int, ids: tuple[int, ...], out: Mapping[int, object]) -> None:
        A, B = self.source, self.target
        if len(ids) != k:
            raise SpecError(f"f_{k} entry has {len(ids)} inputs")
        A._check_path(ids)
        if any(A.is_unit(i) for i in ids):
            raise SpecError("functor entries on units are synthesized, not stored")
        f0 = self.object_map
        want = (f0[A.src(ids[0])], f0[A.tgt(ids[-1])], sum(A.degree(i) for i in ids) + k - 1)
        slot = self.tables.setdefault(k, {}).setdefault(ids, {})
        for o, c in out.items():
            if B.keys[o][:3] != want:
                raise SpecError(f"f_{k}{[A.describe(i) for i in ids]} must land in hom{list(want)}, got {B.describe(o)}")
            add_into(slot, {o: B.field(c)})
        if not slot:
            del self.tables[k][ids]

    def f(self, ids: tuple[int, ...]) -> dict[int, object]:
        A = self.source
        if any(A.is_unit(i) for i in ids):
            if len(ids) == 1:
                return {self.target.units[self.object_map[A.src(ids[0])]]: self.target.field.one}
            return {}
        return self.tables.get(len(ids), {}).get(ids, _EMPTY)

    @property
    def arity_bound(self) -> int:
        """f_k has degree k - 1, so it vanishes for k - 1 above the target's max degree."""
        return self.target.max_degree + 1

    @property
    def relation_bound(self) -> int:
        return self.target.max_degree + 2

    def __repr__(self):
        return f"AInftyFunctor({self.name or '?'}: {self.source.name} -> {self.target.name})"


def identity_functor(A: AInftyCategory) -> AInftyFunctor:
    one = A.field.one
    table = {(i,): {i: one} for i in range(len(A)) if not A.is_unit(i)}
    return AInftyFunctor(A, A, {x: x for x in A.objects}, {1: table}, name=f"id_{A.name}")


def strict_functor(
    A: AInftyCategory, B: AInftyCategory, object_map: Mapping, f1: Mapping[int, Mapping[int, object]], name=""
) -> AInftyFunctor:
    """Functor with only a linear component (f_k = 0 for k >= 2)."""
    return AInftyFunctor(A, B, object_map, {1: {(i,): v for i, v in f1.items()}}, name=name)


def functor_relation_residual(F: AInftyFunctor, x: tuple[int, ...]) -> dict[int, object]:
    A, B = F.source, F.target
    k = len(x)
    deg = A.degree
    total: dict[int, object] = {}
    for s in range(1, k + 1):
        for r in range(0, k - s + 1):
            t = k - r - s
            inner = A.m(x[r : r + s])
            if not inner:
                continue
            e = r + s * t + SignConvention.KOSZUL.passing(s - 2, [deg(i) for i in x[:r]])
            sgn = -1 if e % 2 else 1
            for z, cz in inner.items():
                out = F.f(x[:r] + (z,) + x[r + s :])
                if out:
                    add_into(total, out, sgn * cz)
    for comp in iter_compositions(k):
        if len(comp) > B.arity_bound:
            continue
        maps = [(F.f, i - 1, i) for i in comp]
        inner = apply_tensor_of_maps(maps, x, deg)
        sgn = -1 if eps_g(*comp) % 2 else 1
        for lab, c in inner.items():
            out = B.m(lab)
            if out:
                add_into(total, out, -sgn * c)
    return total


def check_functor(F: AInftyFunctor, k_max: int | None = None) -> Report:
    """Functor relations on all composable tuples, plus unit conditions."""
    A, B = F.source, F.target
    k_max = F.relation_bound if k_max is None else k_max
    rep = Report("ainfty-functor", stats={"k_max": k_max})
    for x, u in A.units.items():
        if F.f((u,)) != {B.units[F.object_map[x]]: B.field.one}:
            rep.fail(object=x, reason="f_1 does not preserve the unit")
    for k in range(1, k_max + 1):
        for x in A.iter_paths(k):
            rep.count("tuples")
            if k > 1 and any(A.is_unit(i) for i in x) and F.f(x):
                rep.fail(k=k, inputs=[A.describe(i) for i in x], reason="f_k does not vanish on a unit")
            res = functor_relation_residual(F, x)
            if res:
                rep.fail(k=k, inputs=[A.describe(i) for i in x], residual=_fmt_vec(B, res))
    return rep


def compose_functors(G: AInftyFunctor, F: AInftyFunctor) -> AInftyFunctor:
    """G o F with (G o F)_k = sum (-1)^{eps_g(i)} G_r (F_{i_1} (x) ... (x) F_{i_r})."""
    if F.target is not G.source and not F.target.equal_tables(G.source):
        raise SpecError("functors are not composable")
    A, C = F.source, G.target
    f0 = {x: G.object_map[F.object_map[x]] for x in A.objects}
    tables: dict[int, Table] = {}
    for k in range(1, C.max_degree + 2):
        for x in A.iter_paths(k, units=False):
            total: dict[int, object] = {}
            for comp in iter_compositions(k):
                inner = apply_tensor_of_maps([(F.f, i - 1, i) for i in comp], x, A.degree)
                sgn = -1 if eps_g(*comp) % 2 else 1
                for lab, c in inner.items():
                    out = G.f(lab)
                    if out:
                        add_into(total, out, sgn * c)
            if total:
                tables.setdefault(k, {})[x] = total
    return AInftyFunctor(A, C, f0, tables, name=f"{G.name}.{F.name}")


def equal_functors(F: AInftyFunctor, G: AInftyFunctor) -> bool:
    if F.object_map != G.object_map:
        return False
    ks = set(F.tables) | set(G.tables)
    return all(F.tables.get(k, {}) == G.tables.get(k, {}) for k in ks)


# --------------------------------------------------------------------------
# constructors


def from_dg(
    objects, homs, units, m1=(), m2=(), field: Field = Q, name: str = "", validate: bool = True
) -> AInftyCategory:
    """A dg-category as an A-infinity category with m_k = 0 for k > 2.

    m1 and m2 are sequences of (inputs, outputs) entries as for
    AInftyCategory.  With validate=True the input is rejected unless the
    relations hold, i.e. unless it is a genuine dg-category.
    """
    A = AInftyCategory(objects, homs, units, {1: m1, 2: m2}, field=field, name=name)
    if validate:
        rep = check_relations(A)
        if not rep:
            first = rep.failures[0]
            raise SpecError(f"not a dg-category: relation fails at k={first['k']} on {first['inputs']}")
    return A


def standard_simplex_dg(n: int, field: Field = Q) -> AInftyCategory:
    """The dg-category with objects 0..n and one degree 0 morphism (i,j) per i <= j."""
    objs = list(range(n + 1))
    homs = {(i, j, 0): [f"({i},{j})"] for i in objs for j in objs if i <= j}
    units = {i: f"({i},{i})" for i in objs}
    m2 = []
    for i in objs:
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                m2.append((((i, j, 0, f"({i},{j})"), (j, k, 0, f"({j},{k})")), {(i, k, 0, f"({i},{k})"): 1}))
    return from_dg(objs, homs, units, (), m2, field=field, name=f"Ainf[D{n}]", validate=False)


def pullback(object_map: Mapping[Hashable, Hashable], A: AInftyCategory, name: str = "") -> AInftyCategory:
    """f*(A): objects are the keys of object_map, hom(x, y) = hom(f x, f y)."""
    new_objs = list(object_map)
    f0 = dict(object_map)
    homs = {}
    for x in new_objs:
        for y in new_objs:
            for d in range(A.max_degree + 1):
                ids = A.hom(f0[x], f0[y], d)
                if ids:
                    homs[(x, y, d)] = [A.label(i) for i in ids]
    units = {x: A.label(A.units[f0[x]]) for x in new_objs}
    fibres: dict[Hashable, list] = {}
    for x in new_objs:
        fibres.setdefault(f0[x], []).append(x)
    tables: dict[int, list] = {}
    for k, table in A.tables.items():
        for ids, out in table.items():
            path = [A.src(ids[0])] + [A.tgt(i) for i in ids]
            for lift in product(*(fibres.get(c, []) for c in path)):
                inputs = [(lift[j], lift[j + 1], A.degree(i), A.label(i)) for j, i in enumerate(ids)]
                outputs = {(lift[0], lift[-1], A.degree(o), A.label(o)): c for o, c in out.items()}
                tables.setdefault(k, []).append((inputs, outputs))
    B = AInftyCategory(new_objs, homs, units, tables, field=A.field, max_degree=A.max_degree, name=name or f"pullback({A.name})")
    return B


# --------------------------------------------------------------------------
# JSON


def category_from_dict(data: Mapping) -> AInftyCategory:
    """Build a category from the JSON schema documented in the README."""
    try:
        field = field_from_spec(str(data.get("field", "Q")))
        objects = list(data["objects"])
        homs = {}
        for h in data["homs"]:
            key = (_match_obj(h["source"], objects), _match_obj(h["target"], objects), h["degree"])
            if key in homs:
                raise SpecError(f"hom {list(key)} listed twice")
            homs[key] = [str(l) for l in h["basis"]]
        units = {_match_obj(k, objects): v for k, v in dict(data.get("units", {})).items()}
        raw = {int(k): [_entry(e) for e in entries] for k, entries in data.get("m", {}).items()}
        max_degree = data.get("max_degree")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"malformed category spec: {type(exc).__name__} {exc}") from None
    A = AInftyCategory(objects, homs, units, {}, field=field, max_degree=max_degree, name=str(data.get("name", "")))
    for k, entries in sorted(raw.items()):
        for inputs, out in entries:
            ids = tuple(A._lookup(_key(key, objects)) for key in inputs)
            if not ids:
                raise SpecError(f"m_{k} entry without inputs")
            deg = sum(A.degree(i) for i in ids) + k - 2
            src, tgt = A.src(ids[0]), A.tgt(ids[-1])
            outs: dict[int, object] = {}
            for label, c in out:
                add_into(outs, {A._lookup((src, tgt, deg, label)): A.field.parse(str(c))})
            A._add_entry(k, ids, outs)
    return A


def _match_obj(key, objects):
    """JSON object keys are strings; map them back to the declared objects."""
    if key in objects:
        return key
    for x in objects:
        if str(x) == str(key):
            return x
    raise SpecError(f"unknown object {key!r}")


def _key(key, objects):
    if not isinstance(key, (list, tuple)) or len(key) != 4:
        raise SpecError(f"basis key {key!r} must be [src, tgt, degree, label]")
    s, t, d, lab = key
    return (_match_obj(s, objects), _match_obj(t, objects), d, str(lab))


def _entry(e: Mapping):
    """(inputs, [(label, scalar-string), ...]) from one table entry."""
    inputs = list(e["inputs"])
    out = e["output"]
    if out and not isinstance(out[0], (list, tuple)):
        out = [out]
    pairs = []
    for item in out:
        if len(item) != 2:
            raise SpecError(f"output {item!r} must be [label, scalar]")
        pairs.append((str(item[0]), item[1]))
    return inputs, pairs


def load_category(source) -> AInftyCategory:
    """Read a category from a path, a JSON string or an already parsed dict."""
    return category_from_dict(_read_json(source))


def _read_json(source) -> dict:
    if isinstance(source, Mapping):
        return dict(source)
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = Path(source).read_text()
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SpecError("top level JSON value must be an object")
    return data


def category_to_dict(A: AInftyCategory) -> dict:
    homs = []
    for (s, t, d), ids in A._hom.items():
        homs.append({"source": s, "target": t, "degree": d, "basis": [A.label(i) for i in ids]})
    m = {}
    for k in sorted(A.tables):
        entries = []
        for ids, out in sorted(A.tables[k].items()):
            for o, c in sorted(out.items()):
                entries.append({"inputs": [A.describe(i) for i in ids], "output": [A.label(o), A.field.format(c)]})
        if entries:
            m[str(k)] = entries
    return {
        "name": A.name,
        "field": A.field.name,
        "objects": list(A.objects),
        "max_degree": A.max_degree,
        "homs": homs,
        "units": {str(x): A.label(u) for x, u in A.units.items()},
        "m": m,
    }


def load_functor(source, categories: Mapping[str, AInftyCategory] | None = None) -> AInftyFunctor:
    """Functor spec: {"source": <category>, "target": <category>, "object_map": {...},
    "f": {"1": [{"inputs": [...], "output": [label, scalar]}...]}}.

    source/target may be inline category dicts or names looked up in
    ``categories``.
    """
    data = _read_json(source)
    cats = categories or {}

    def cat(v):
        if isinstance(v, str) and v in cats:
            return cats[v]
        return load_category(v)

    try:
        A, B = cat(data["source"]), cat(data["target"])
        f0 = {_match_obj(k, A.objects): _match_obj(v, B.objects) for k, v in data["object_map"].items()}
        raw = {int(k): [_entry(e) for e in entries] for k, entries in data.get("f", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"malformed functor spec: {type(exc).__name__} {exc}") from None
    F = AInftyFunctor(A, B, f0, name=str(data.get("name", "")))
    for k, entries in sorted(raw.items()):
        for inputs, out in entries:
            ids = tuple(A._lookup(_key(key, A.objects)) for key in inputs)
            if not ids:
                raise SpecError(f"f_{k} entry without inputs")
            deg = sum(A.degree(i) for i in ids) + k - 1
            src, tgt = f0[A.src(ids[0])], f0[A.tgt(ids[-1])]
            outs: dict[int, object] = {}
            for label, c in out:
                add_into(outs, {B._lookup((src, tgt, deg, label)): B.field.parse(str(c))})
            F._add_entry(k, ids, outs)
    return F


def functor_to_dict(F: AInftyFunctor) -> dict:
    A, B = F.source, F.target
    f = {}
    for k in sorted(F.tables):
        entries = []
        for ids, out in sorted(F.tables[k].items()):
            for o, c in sorted(out.items()):
                entries.append({"inputs": [A.describe(i) for i in ids], "output": [B.label(o), B.field.format(c)]})
        if entries:
            f[str(k)] = entries
    return {
        "name": F.name,
        "source": category_to_dict(A),
        "target": category_to_dict(B),
        "object_map": {str(x): y for x, y in F.object_map.items()},
        "f": f,
    }
