"""
The templicial A-infinity nerve of a finite A-infinity category.

For a necklace T and objects a, b an element y of the ambient space is a
family (y_g) indexed by injective necklace maps g: U -> T, with y_g a
tensor in (sA)_U(a, b): a bead Delta^n of U contributes a factor of
A-degree n - 1, and the factors are composable from a to b.  The nerve
component N_T(a, b) is the subspace cut out by the TAN relations, solved
here exactly as the kernel of a sparse linear system.

An optional vertex labelling restricts every y_g to tensors whose object
path is labels[g(u)] at the joints u of U.  These labelled collections
form a sub-functor and are what one gets for categories in which every
hom between chosen objects is already determined by its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

from .ainfty import AInftyCategory, AInftyFunctor, SpecError, apply_tensor_of_maps
from .exactlin import (
    LinearSystem,
    RowReducer,
    SignConvention,
    add_into,
    apply_graded_op,
    kernel_basis,
    scale,
    tensor,
)
from .necklace import (
    Necklace,
    NecklaceMap,
    compose,
    compose_at,
    delta,
    enumerate_inert_into,
    enumerate_inert_into_necklace,
    enumerate_injective_into,
    factor_epi_mono,
    nu,
    phi,
    sigma,
    split_inert,
    split_injective,
)

Tensor = dict[tuple[int, ...], object]


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass
class NerveElement:
    """A collection (y_g) over the injective maps into T, from a to b."""

    necklace: Necklace
    a: Hashable
    b: Hashable
    comps: dict[NecklaceMap, Tensor] = field(default_factory=dict)
    labels: tuple | None = None

    def __post_init__(self):
        if self.labels is not None:
            self.labels = tuple(self.labels)
            if len(self.labels) != self.necklace.spine + 1:
                raise ValueError(f"labelling {self.labels} does not fit {self.necklace}")
            if self.labels[0] != self.a or self.labels[-1] != self.b:
                raise ValueError("labelling disagrees with the endpoints")
        self.comps = {g: dict(t) for g, t in self.comps.items() if any(t.values())}
        for g, t in self.comps.items():
            if g.target != self.necklace or not g.is_injective:
                raise ValueError(f"component index {g} is not an injective map into {self.necklace}")
            for lab in list(t):
                if not t[lab]:
                    del t[lab]

    def __getitem__(self, g: NecklaceMap) -> Tensor:
        return self.comps.get(g, {})

    def _check_compatible(self, other: "NerveElement"):
        if (self.necklace, self.a, self.b) != (other.necklace, other.a, other.b):
            raise ValueError("elements live in different components")

    def __add__(self, other: "NerveElement") -> "NerveElement":
        self._check_compatible(other)
        comps = {g: dict(t) for g, t in self.comps.items()}
        for g, t in other.comps.items():
            add_into(comps.setdefault(g, {}), t)
        return NerveElement(self.necklace, self.a, self.b, comps, _common_labels(self, other))

    def __neg__(self) -> "NerveElement":
        return self.scaled(-1)

    def __sub__(self, other: "NerveElement") -> "NerveElement":
        return self + (-other)

    def scaled(self, c) -> "NerveElement":
        return NerveElement(self.necklace, self.a, self.b, {g: scale(t, c) for g, t in self.comps.items()}, self.labels)

    __rmul__ = scaled

    def __eq__(self, other) -> bool:
        if not isinstance(other, NerveElement):
            return NotImplemented
        return (self.necklace, self.a, self.b) == (other.necklace, other.a, other.b) and self.comps == other.comps

    def is_zero(self) -> bool:
        return not self.comps

    def support(self) -> int:
        return sum(len(t) for t in self.comps.values())

    def __repr__(self):
        return f"NerveElement({self.necklace}, {self.a!r}->{self.b!r}, {self.support()} terms)"


def _common_labels(x: NerveElement, y: NerveElement):
    return x.labels if x.labels == y.labels else None


def zero_element(T: Necklace, a, b, labels=None) -> NerveElement:
    return NerveElement(T, a, b, {}, labels)


class Nerve:
    """Nerve components, structure maps and functor images for one category.

    ``convention`` selects how operators act on element tensors (see
    SignConvention); the TAN signs themselves are fixed.
    """

    def __init__(self, A: AInftyCategory, convention: SignConvention | str = SignConvention.KOSZUL):
        self.A = A
        self.convention = SignConvention(convention)
        self._paths: dict = {}
        self._columns: dict = {}
        self._bases: dict = {}

    def __repr__(self):
        return f"Nerve({self.A.name}, {self.convention.value})"

    # ----------------------------------------------------------- ambient space

    def _vertex_objects(self, g: NecklaceMap, labels) -> tuple | None:
        if labels is None:
            return None
        return tuple(labels[g.values[u]] for u in g.source.joints)

    def component_labels(self, U: Necklace, a, b, joint_objects: Sequence | None = None) -> list[tuple[int, ...]]:
        """Basis of (sA)_U(a, b), optionally with the objects at the joints fixed."""
        key = (U, a, b, None if joint_objects is None else tuple(joint_objects))
        if key in self._paths:
            return self._paths[key]
        A = self.A
        beads = U.beads
        if joint_objects is not None and (joint_objects[0] != a or joint_objects[-1] != b):
            out: list = []
        elif not beads:
            out = [()] if a == b else []
        else:
            out = []

            def rec(i, obj, acc):
                if i == len(beads):
                    if obj == b:
                        out.append(tuple(acc))
                    return
                deg = beads[i] - 1
                if joint_objects is None:
                    cands = A.out(obj, deg)
                else:
                    cands = A.hom(obj, joint_objects[i + 1], deg)
                for x in cands:
                    acc.append(x)
                    rec(i + 1, A.tgt(x), acc)
                    acc.pop()

            rec(0, a, [])
        self._paths[key] = out
        return out

    def columns(self, T: Necklace, a, b, labels=None) -> list[tuple[NecklaceMap, tuple[int, ...]]]:
        """Canonical basis of the ambient sum over injective g: U -> T."""
        key = (T, a, b, labels)
        if key not in self._columns:
            cols = []
            for g in enumerate_injective_into(T):
                for lab in self.component_labels(g.source, a, b, self._vertex_objects(g, labels)):
                    cols.append((g, lab))
            self._columns[key] = cols
        return self._columns[key]

    # ----------------------------------------------------------- TAN relations

    def _op_sign(self, g: NecklaceMap, k: int, S: Necklace) -> int:
        # dim of the first k - 1 beads of U
        return S.signature + S.length * (g.source.joints[k - 1] - (k - 1))

    def tan_system(self, T: Necklace, a, b, labels=None) -> tuple[LinearSystem, list]:
        """Matrix of the decomposed TAN equations, one row per (g, bead, output basis tensor)."""
        A = self.A
        cols = self.columns(T, a, b, labels)
        by_map: dict[NecklaceMap, list[tuple[int, tuple]]] = {}
        for c, (g, lab) in enumerate(cols):
            by_map.setdefault(g, []).append((c, lab))
        system = LinearSystem(len(cols), A.field)
        for g in enumerate_injective_into(T):
            U = g.source
            for k in range(1, U.length + 1):
                n = U.beads[k - 1]
                for v in enumerate_inert_into(n):
                    h = compose_at(g, k, v)
                    S = v.source
                    base = _sgn(self._op_sign(g, k, S))
                    for c, lab in by_map.get(h, ()):
                        out = apply_graded_op(A.m, S.length - 2, k - 1, S.length, {lab: 1}, A.degree, self.convention)
                        for z, cz in out.items():
                            system.add((g, k, z), c, base * cz)
                for j in range(1, n):
                    h = compose_at(g, k, delta(n, j))
                    for c, lab in by_map.get(h, ()):
                        system.add((g, k, lab), c, -_sgn(j - 1))
        return system, cols

    def tan_residuals(self, y: NerveElement) -> list[tuple[NecklaceMap, int, Tensor]]:
        """Nonzero residuals of the decomposed TAN equations, evaluated on y directly."""
        A = self.A
        out = []
        for g in enumerate_injective_into(y.necklace):
            U = g.source
            for k in range(1, U.length + 1):
                n = U.beads[k - 1]
                res: Tensor = {}
                for v in enumerate_inert_into(n):
                    h = compose_at(g, k, v)
                    comp = y[h]
                    if not comp:
                        continue
                    S = v.source
                    val = apply_graded_op(A.m, S.length - 2, k - 1, S.length, comp, A.degree, self.convention)
                    add_into(res, val, _sgn(self._op_sign(g, k, S)))
                for j in range(1, n):
                    add_into(res, y[compose_at(g, k, delta(n, j))], -_sgn(j - 1))
                if res:
                    out.append((g, k, res))
        return out

    def is_member(self, y: NerveElement) -> bool:
        return not self.tan_residuals(y)

    def basis(self, T: Necklace, a, b, labels=None) -> list[NerveElement]:
        """Exact basis of N_T(a, b), memoized per (T, a, b, labels)."""
        labels = None if labels is None else tuple(labels)
        key = (T, a, b, labels)
        if key not in self._bases:
            if labels is not None and (len(labels) != T.spine + 1 or labels[0] != a or labels[-1] != b):
                raise ValueError(f"labelling {labels} does not fit {T} from {a!r} to {b!r}")
            for x in (a, b):
                if x not in self.A.units:
                    raise SpecError(f"unknown object {x!r}")
            system, cols = self.tan_system(T, a, b, labels)
            elems = []
            for vec in kernel_basis(system):
                comps: dict[NecklaceMap, Tensor] = {}
                for c, coeff in vec.items():
                    g, lab = cols[c]
                    comps.setdefault(g, {})[lab] = coeff
                elems.append(NerveElement(T, a, b, comps, labels))
            self._bases[key] = elems
        return self._bases[key]

    def dim(self, T: Necklace, a, b, labels=None) -> int:
        return len(self.basis(T, a, b, labels))

    def ambient_dim(self, T: Necklace, a, b, labels=None) -> int:
        return len(self.columns(T, a, b, None if labels is None else tuple(labels)))

    def combination(self, T, a, b, coeffs: Sequence, labels=None) -> NerveElement:
        out = zero_element(T, a, b, labels)
        for c, e in zip(coeffs, self.basis(T, a, b, labels)):
            if c:
                out = out + e.scaled(self.A.field(c))
        return out

    def random_element(self, T, a, b, rng, labels=None, span: int = 3) -> NerveElement:
        B = self.basis(T, a, b, labels)
        return self.combination(T, a, b, [rng.randint(-span, span) for _ in B], labels)

    # ----------------------------------------------------------- structure maps

    def ebar(self, e: NecklaceMap, comp: Tensor, a) -> Tensor:
        """Image of a component under the functor attached to an active surjection."""
        return self._apply_plan(_ebar_plan(e), comp, a)

    def _apply_plan(self, plan: tuple[bool, ...] | None, comp: Tensor, a) -> Tensor:
        if plan is None:
            return {}
        if all(plan):
            return dict(comp)
        A = self.A
        out: Tensor = {}
        one = A.field.one
        for lab, c in comp.items():
            new, pos, obj = [], 0, a
            for keep in plan:
                if keep:
                    x = lab[pos]
                    pos += 1
                    new.append(x)
                    obj = A.tgt(x)
                else:
                    new.append(A.units[obj])
            add_into(out, {tuple(new): c * one})
        return out

    def structure_map(self, f: NecklaceMap, y: NerveElement, check: bool = False) -> NerveElement:
        """f^*(y) for a necklace map f: T -> T' and y over T'."""
        if f.target != y.necklace:
            raise ValueError(f"{f} does not land in {y.necklace}")
        if check and not self.is_member(y):
            raise ValueError("input does not satisfy the TAN relations")
        labels = None if y.labels is None else tuple(y.labels[v] for v in f.values)
        comps = {}
        for g, g2, plan in _pullback_plan(f):
            comp = y[g2]
            if comp:
                val = self._apply_plan(plan, comp, y.a)
                if val:
                    comps[g] = val
        return NerveElement(f.source, y.a, y.b, comps, labels)

    def face(self, j: int, y: NerveElement) -> NerveElement:
        n = _simplex_dim(y)
        if not 0 < j < n:
            raise ValueError(f"inner face index {j} out of range for n={n}")
        return self.structure_map(delta(n, j), y)

    def degeneracy(self, i: int, y: NerveElement) -> NerveElement:
        """s_i by the three-case formula (independent of structure_map)."""
        n = _simplex_dim(y)
        if not 0 <= i <= n:
            raise ValueError(f"degeneracy index {i} out of range for n={n}")
        A = self.A
        s = sigma(n, i)
        T = Necklace.simplex(n + 1)
        labels = None if y.labels is None else tuple(y.labels[v] for v in s.values)
        comps = {}
        for g in enumerate_injective_into(T):
            img = set(g.values)
            if not {i, i + 1} <= img:
                h = compose(s, g)
                U = g.source
                h = NecklaceMap(U, y.necklace, h.values)
                if y[h]:
                    comps[g] = dict(y[h])
                continue
            joints = [g.values[u] for u in g.source.joints]
            if i in joints and i + 1 in joints:
                k = joints.index(i)  # the Delta^1 bead is bead k + 1
                e, g2 = factor_epi_mono(compose(s, g))
                comp = y[g2]
                out: Tensor = {}
                for lab, c in comp.items():
                    obj = y.a if k == 0 else A.tgt(lab[k - 1])
                    add_into(out, {lab[:k] + (A.units[obj],) + lab[k:]: c})
                if out:
                    comps[g] = out
        return NerveElement(T, y.a, y.b, comps, labels)

    def comult_restrict(self, p: int, q: int, y: NerveElement) -> NerveElement:
        """Restriction of y in N_{p+q} along nu_{p,q}, an element over Delta^p v Delta^q."""
        if p <= 0 or q <= 0 or p + q != _simplex_dim(y):
            raise ValueError(f"bad comultiplication split ({p}, {q})")
        return self.structure_map(nu(p, q), y)

    def comult(self, p: int, q: int, y: NerveElement) -> list[tuple[NerveElement, NerveElement]]:
        """The pair decomposition of the restriction along nu_{p,q}."""
        z = self.comult_restrict(p, q, y)
        return self.split(z, Necklace.simplex(p), Necklace.simplex(q))

    # ----------------------------------------------------------- tensor splitting

    def tensor_elements(self, x: NerveElement, y: NerveElement) -> NerveElement:
        """z_g = x_{g1} (x) y_{g2} for g = g1 v g2 into T1 v T2."""
        if x.b != y.a:
            raise ValueError(f"endpoint mismatch: {x.b!r} != {y.a!r}")
        T1, T2 = x.necklace, y.necklace
        T = T1 | T2
        labels = None
        if x.labels is not None and y.labels is not None:
            labels = x.labels + y.labels[1:]
        comps = {}
        for g in enumerate_injective_into(T):
            g1, g2 = split_injective(g, T1, T2)
            t = tensor(x[g1], y[g2])
            if t:
                comps[g] = t
        return NerveElement(T, x.a, y.b, comps, labels)

    def split(self, z: NerveElement, T1: Necklace, T2: Necklace) -> list[tuple[NerveElement, NerveElement]]:
        """Write z over T1 v T2 as a sum of x (x) y with x in a basis of N_{T1}.

        Raises ValueError when z does not decompose that way.
        """
        if z.necklace != T1 | T2:
            raise ValueError(f"{z.necklace} is not {T1} v {T2}")
        A = self.A
        p1 = T1.spine
        if z.labels is not None:
            mids = [z.labels[p1]]
            lab1, lab2 = z.labels[: p1 + 1], z.labels[p1:]
        else:
            mids = list(A.objects)
            lab1 = lab2 = None
        pairs = []
        rebuilt = zero_element(z.necklace, z.a, z.b, z.labels)
        maps = enumerate_injective_into(z.necklace)
        by_left: dict[NecklaceMap, list] = {}
        for g in maps:
            h1, h2 = split_injective(g, T1, T2)
            if z[g]:
                by_left.setdefault(h1, []).append((z[g], h2))
        for c in mids:
            X, solve = self._left_solver(T1, z.a, c, None if lab1 is None else tuple(lab1))
            if not X:
                continue
            # y_r = sum_s M[s][r] * Z[P_s, :]
            ys: list[dict] = [{} for _ in X]
            for (g1, lab1_), combo in solve:
                row = {}
                for comp, h2 in by_left.get(g1, ()):
                    for lab, v in comp.items():
                        if lab[: len(lab1_)] == lab1_:
                            add_into(row.setdefault(h2, {}), {lab[len(lab1_) :]: v})
                for r, m in combo.items():
                    for h2, t in row.items():
                        add_into(ys[r].setdefault(h2, {}), t, m)
            l2 = None if lab2 is None else tuple(lab2)
            for x, ycomps in zip(X, ys):
                yy = NerveElement(T2, c, z.b, ycomps, l2)
                if yy.is_zero():
                    continue
                pairs.append((x, yy))
                rebuilt = rebuilt + self.tensor_elements(x, yy)
        if rebuilt.comps != z.comps:
            raise ValueError("element does not split as a sum of tensors of nerve elements")
        return pairs

    def _left_solver(self, T1: Necklace, a, c, labels) -> tuple[list[NerveElement], list]:
        """Basis X of N_{T1}(a, c) with, per pivot coordinate, the combination of X reaching it."""
        key = ("solver", T1, a, c, labels)
        if key in self._bases:
            return self._bases[key]
        X = self.basis(T1, a, c, labels)
        coords: dict[tuple, int] = {}
        for x in X:
            for g1, t in x.comps.items():
                for lab in t:
                    coords.setdefault((g1, lab), len(coords))
        red = RowReducer(self.A.field, track=True)
        for x in X:
            red.insert({coords[(g1, lab)]: v for g1, t in x.comps.items() for lab, v in t.items()})
        if red.rank != len(X):
            raise ArithmeticError("nerve basis is not linearly independent")
        inv = {i: k for k, i in coords.items()}
        solve = [(inv[pcol], combo) for pcol, combo in red.combos.items()]
        self._bases[key] = (X, solve)
        return X, solve

    # ----------------------------------------------------------- functor images

    def functor_image(self, F: AInftyFunctor, y: NerveElement, target: "Nerve | None" = None) -> NerveElement:
        """f_T(y) over the target category."""
        if F.source is not self.A and not F.source.equal_tables(self.A):
            raise ValueError("functor does not start at this category")
        B = F.target
        conv = self.convention if target is None else target.convention
        f0 = F.object_map
        labels = None if y.labels is None else tuple(f0[v] for v in y.labels)
        comps = {}
        for g in enumerate_injective_into(y.necklace):
            U = g.source
            out: Tensor = {}
            for v in enumerate_inert_into_necklace(U):
                comp = y[compose(g, v)]
                if not comp:
                    continue
                parts = [w.source for w in split_inert(v)]
                e = sum(S.signature for S in parts) + phi(v)
                maps = [(F.f, S.length - 1, S.length) for S in parts]
                for lab, c in comp.items():
                    val = apply_tensor_of_maps(maps, lab, self.A.degree, conv)
                    if val:
                        add_into(out, val, _sgn(e) * c)
            if out:
                comps[g] = out
        return NerveElement(y.necklace, f0[y.a], f0[y.b], comps, labels)


@lru_cache(maxsize=None)
def _ebar_plan(e: NecklaceMap) -> tuple[bool, ...] | None:
    """Per bead of e: keep the factor (True) or insert a unit (False); None means zero.

    Only spine collapsing maps survive: every bead factor must be an
    identity or Delta^1 -> Delta^0.
    """
    plan = []
    for f in e.bead_factors():
        if f.is_identity:
            plan.append(True)
        elif f.source.spine == 1 and f.target.spine == 0:
            plan.append(False)
        else:
            return None
    return tuple(plan)


@lru_cache(maxsize=None)
def _pullback_plan(f: NecklaceMap) -> tuple:
    """(g, g', plan) for each injective g into the source, where f g = g' e."""
    out = []
    for g in enumerate_injective_into(f.source):
        e, g2 = factor_epi_mono(compose(f, g))
        plan = _ebar_plan(e)
        if plan is not None:
            out.append((g, g2, plan))
    return tuple(out)


def _simplex_dim(y: NerveElement) -> int:
    T = y.necklace
    if T.length > 1:
        raise ValueError(f"{T} is not a simplex")
    return T.spine


# --------------------------------------------------------------------------
# JSON


def map_to_dict(g: NecklaceMap) -> dict:
    return {"source": g.source.encode(), "values": list(g.values)}


def element_to_dict(y: NerveElement, A: AInftyCategory) -> dict:
    comps = []
    for g in enumerate_injective_into(y.necklace):
        t = y[g]
        if not t:
            continue
        terms = [[[A.label(i) for i in lab], A.field.format(c)] for lab, c in sorted(t.items())]
        comps.append({"map": map_to_dict(g), "terms": terms})
    out = {"necklace": y.necklace.encode(), "from": y.a, "to": y.b, "components": comps}
    if y.labels is not None:
        out["labels"] = list(y.labels)
    return out


def element_from_dict(data: Mapping, A: AInftyCategory) -> NerveElement:
    """Inverse of element_to_dict; labels are resolved along the component's object path."""
    try:
        T = Necklace.parse(str(data["necklace"]))
        a, b = _obj(data["from"], A), _obj(data["to"], A)
        labels = data.get("labels")
        if labels is not None:
            labels = tuple(_obj(x, A) for x in labels)
        comps: dict[NecklaceMap, Tensor] = {}
        for entry in data.get("components", []):
            U = Necklace.parse(str(entry["map"]["source"]))
            g = NecklaceMap(U, T, tuple(entry["map"]["values"]))
            t = comps.setdefault(g, {})
            for names, coeff in entry["terms"]:
                lab = _resolve_path(A, U, a, names)
                add_into(t, {lab: A.field.parse(str(coeff))})
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed nerve element: {exc}") from None
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    return NerveElement(T, a, b, comps, labels)


def _obj(x, A: AInftyCategory):
    for o in A.objects:
        if o == x or str(o) == str(x):
            return o
    raise SpecError(f"unknown object {x!r}")


def _resolve_path(A: AInftyCategory, U: Necklace, a, names) -> tuple[int, ...]:
    if len(names) != U.length:
        raise SpecError(f"expected {U.length} factors for {U}, got {names}")
    out, obj = [], a
    for n, name in zip(U.beads, names):
        cands = [i for i in A.out(obj, n - 1) if A.label(i) == str(name)]
        if len(cands) != 1:
            raise SpecError(f"no unique degree {n - 1} element {name!r} out of {obj!r}")
        out.append(cands[0])
        obj = A.tgt(cands[0])
    return tuple(out)


def basis_report(nerve: Nerve, T: Necklace, a, b, labels=None) -> dict:
    B = nerve.basis(T, a, b, labels)
    return {
        "necklace": T.encode(),
        "from": a,
        "to": b,
        "labels": None if labels is None else list(labels),
        "sign_convention": nerve.convention.value,
        "ambient_dimension": nerve.ambient_dim(T, a, b, labels),
        "dimension": len(B),
        "basis": [element_to_dict(y, nerve.A) for y in B],
    }
