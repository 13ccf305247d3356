import json
from importlib import resources

import pytest

from tanerve.ainfty import (
    AInftyCategory,
    SpecError,
    category_from_dict,
    category_to_dict,
    check_functor,
    check_relations,
    check_units,
    compose_functors,
    equal_functors,
    from_dg,
    functor_to_dict,
    identity_functor,
    load_category,
    load_functor,
    pullback,
    standard_simplex_dg,
    strict_functor,
)
from tanerve.exactlin import Field
from tanerve.fixtures import (
    codegeneracy_functor,
    homotopy_simplex,
    inclusion_functor,
    m3_category,
    poset_functor,
    twist_functor,
)

DATA = resources.files("tanerve") / "data"


@pytest.mark.parametrize("n", range(5))
def test_simplex_categories_pass(n):
    A = standard_simplex_dg(n)
    assert check_relations(A) and check_units(A)


def test_simplex_zero():
    A = standard_simplex_dg(0)
    assert A.objects == (0,) and len(A) == 1 and A.is_unit(0)


def test_simplex_composition():
    A = standard_simplex_dg(2)
    assert A.m((A["(0,1)"], A["(1,2)"])) == {A["(0,2)"]: 1}


@pytest.mark.parametrize("make", [lambda: homotopy_simplex(3), m3_category, lambda: m3_category(1)])
def test_fixtures_pass(make):
    A = make()
    assert check_relations(A) and check_units(A)


def test_m3_fixture_has_genuine_m3(m3):
    assert 3 in m3.nonzero_arities()
    assert m3.m((m3["e01"], m3["e12"], m3["e23"])) == {m3["h"]: 1}


def test_nonassociative_fails_exactly_at_three(nonassoc):
    rep = check_relations(nonassoc)
    assert not rep
    assert {f["k"] for f in rep.failures} == {3}
    assert check_units(nonassoc)


def test_relation_bound_counts_degree():
    assert standard_simplex_dg(2).relation_bound == 3
    assert homotopy_simplex(2).relation_bound == 4


def test_from_dg_rejects_nonassociative():
    homs = {("*", "*", 0): ["1", "x", "y"]}
    m2 = [((("*", "*", 0, "x"), ("*", "*", 0, "x")), {("*", "*", 0, "y"): 1}),
          ((("*", "*", 0, "x"), ("*", "*", 0, "y")), {("*", "*", 0, "x"): 1})]
    with pytest.raises(SpecError, match="k=3"):
        from_dg(["*"], homs, {"*": "1"}, (), m2)


def test_unit_laws_are_synthesized(h3):
    u = h3.units[0]
    e = h3["e(0,1)"]
    assert h3.m((u, e)) == {e: 1} and h3.m((u,)) == {}


class TestFunctors:
    def test_identity(self, m3):
        assert check_functor(identity_functor(m3))

    def test_strict_dg_functor(self):
        assert check_functor(inclusion_functor(3))
        assert check_functor(codegeneracy_functor(2, 1))

    def test_twist_has_f2(self):
        F = twist_functor()
        assert F.tables[2] and check_functor(F)

    def test_not_a_chain_map_fails_at_one(self):
        H = homotopy_simplex(2)
        f1 = {i: {i: 1} for i in range(len(H)) if not H.is_unit(i) and H.label(i) != "(0,1)"}
        F = strict_functor(H, H, {x: x for x in H.objects}, f1)
        rep = check_functor(F)
        assert not rep and min(f["k"] for f in rep.failures) == 1

    def test_compose_with_identity(self):
        G = twist_functor()
        assert equal_functors(compose_functors(G, identity_functor(G.source)), G)
        assert equal_functors(compose_functors(identity_functor(G.target), G), G)

    def test_strict_composite(self):
        F = codegeneracy_functor(2, 1)
        G = poset_functor(standard_simplex_dg(2), standard_simplex_dg(1), {0: 0, 1: 0, 2: 1})
        GF = compose_functors(G, F)
        assert set(GF.tables) == {1} and check_functor(GF)
        for (i,), out in F.tables[1].items():
            (j,) = out
            assert GF.f((i,)) == G.f((j,))

    def test_twist_inverse(self):
        F, Finv = twist_functor(), twist_functor(sign=-1)
        assert equal_functors(compose_functors(Finv, F), identity_functor(F.source))

    def test_associativity(self):
        F = codegeneracy_functor(3, 1)
        G = codegeneracy_functor(2, 0)
        H = codegeneracy_functor(1, 0)
        lhs = compose_functors(compose_functors(H, G), F)
        rhs = compose_functors(H, compose_functors(G, F))
        assert equal_functors(lhs, rhs)

    def test_field_mismatch(self):
        with pytest.raises(SpecError):
            strict_functor(standard_simplex_dg(1), standard_simplex_dg(1, Field(3)), {0: 0, 1: 1}, {})

    def test_unmapped_object(self):
        with pytest.raises(SpecError):
            strict_functor(standard_simplex_dg(1), standard_simplex_dg(1), {0: 0}, {})


class TestPullback:
    def test_identity(self, m3):
        B = pullback({x: x for x in m3.objects}, m3)
        assert B.equal_tables(m3) and check_relations(B)

    def test_constant_map(self):
        H = homotopy_simplex(1)
        B = pullback({"x": 0, "y": 0}, H)
        for s in "xy":
            for t in "xy":
                assert [B.label(i) for i in B.hom(s, t, 0)] == ["(0,0)"]
        assert check_relations(B) and check_units(B)

    def test_nontrivial(self, m3):
        B = pullback({"a": 0, "b": 1, "c": 2, "d": 3, "d2": 3}, m3)
        assert check_relations(B) and 3 in B.nonzero_arities()


class TestJson:
    @pytest.mark.parametrize("name", ["a2simplex", "nonassoc", "m3", "h3"])
    def test_shipped_round_trip(self, name):
        A = load_category(DATA / f"{name}.json")
        again = category_from_dict(json.loads(json.dumps(category_to_dict(A))))
        assert category_to_dict(again) == category_to_dict(A)
        assert again.equal_tables(A)

    def test_shipped_functor(self):
        F = load_functor(DATA / "theta.json")
        assert check_functor(F)
        assert equal_functors(load_functor(functor_to_dict(F)), F)

    def _base(self):
        return category_to_dict(standard_simplex_dg(1))

    def test_unknown_object(self):
        d = self._base()
        d["homs"].append({"source": 0, "target": 7, "degree": 0, "basis": ["z"]})
        with pytest.raises(SpecError, match="unknown object"):
            category_from_dict(d)

    def test_missing_unit(self):
        d = self._base()
        del d["units"]["1"]
        with pytest.raises(SpecError, match="no unit"):
            category_from_dict(d)

    def test_negative_degree(self):
        d = self._base()
        d["homs"][0]["degree"] = -1
        with pytest.raises(SpecError):
            category_from_dict(d)

    def test_wrong_output_degree(self):
        d = category_to_dict(standard_simplex_dg(2))
        d["m"]["1"] = [{"inputs": [[0, 1, 0, "(0,1)"]], "output": ["(0,1)", "1"]}]
        with pytest.raises(SpecError):
            category_from_dict(d)

    def test_missing_key(self):
        with pytest.raises(SpecError, match="malformed"):
            category_from_dict({"objects": [0]})

    def test_bad_json(self):
        with pytest.raises(SpecError, match="line 1"):
            load_category('{"objects": [0,')

    def test_entry_on_unit_rejected(self):
        d = self._base()
        d["m"]["2"] = [{"inputs": [[0, 0, 0, "(0,0)"], [0, 1, 0, "(0,1)"]], "output": ["(0,1)", "1"]}]
        with pytest.raises(SpecError):
            category_from_dict(d)

    def test_fractions_and_fields(self):
        d = category_to_dict(homotopy_simplex(1))
        d["field"] = "Fp:3"
        A = category_from_dict(d)
        assert A.field == Field(3) and check_relations(A)
