import random
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from tanerve.ainfty import SpecError, load_category
from tanerve.fixtures import homotopy_simplex
from tanerve.necklace import Necklace, delta, identity, inert, nu
from tanerve.nerve import Nerve, NerveElement
from tanerve.quasicat import (
    HornData,
    SimplexCollection,
    assemble_simplex,
    beta_from_collection,
    collection_from_dict,
    collection_to_dict,
    dg_nerve_member,
    faonte_check,
    horn_compatible,
    horn_fill,
    horn_from_dict,
    horn_to_dict,
    perturb,
    random_simplex,
    restrict_to_horn,
    tan_simplex_member,
    verify_beta_data,
    verify_filler,
)

D = Necklace.simplex
DATA = resources.files("tanerve") / "data"


def two_simplex(A):
    return SimplexCollection((0, 1, 2), {(0, 1): {A["(0,1)"]: 1}, (1, 2): {A["(1,2)"]: 1}, (0, 2): {A["(0,2)"]: 1}})


class TestCollections:
    def test_bad_sequence(self):
        with pytest.raises(ValueError):
            SimplexCollection((0, 1), {(1, 0): {0: 1}})

    def test_validate_hom(self, a2):
        S = SimplexCollection((0, 1, 2), {(0, 1): {a2["(0,2)"]: 1}})
        with pytest.raises(SpecError):
            S.validate(a2)

    def test_two_simplex_passes(self, a2):
        S = two_simplex(a2)
        assert faonte_check(a2, S) and dg_nerve_member(a2, S)

    def test_doubled_edge_fails(self, a2):
        S = two_simplex(a2).with_cell((0, 2), {a2["(0,2)"]: 2})
        assert not faonte_check(a2, S) and not dg_nerve_member(a2, S)
        assert not tan_simplex_member(Nerve(a2), S)

    def test_dg_predicate_rejects_m3(self, m3):
        with pytest.raises(ValueError):
            dg_nerve_member(m3, SimplexCollection((0, 1)))

    def test_json_round_trip(self, m3):
        S = random_simplex(m3, (0, 1, 2, 3), random.Random(1))
        again = collection_from_dict(collection_to_dict(S, m3), m3)
        assert again == S

    def test_json_errors(self, m3):
        with pytest.raises(SpecError):
            collection_from_dict({"cells": []}, m3)


class TestAssemble:
    def test_edge(self, a2):
        y = assemble_simplex(a2, SimplexCollection((0, 1), {(0, 1): {a2["(0,1)"]: 1}}))
        assert y.comps == {identity(D(1)): {(a2["(0,1)"],): 1}}

    def test_triangle(self, a2):
        y = assemble_simplex(a2, two_simplex(a2))
        assert y[identity(D(2))] == {}
        assert y[nu(1, 1)] == {(a2["(0,1)"], a2["(1,2)"]): 1}
        assert y[delta(2, 1)] == {(a2["(0,2)"],): 1}
        assert y == Nerve(a2).basis(D(2), 0, 2, (0, 1, 2))[0]

    def test_bad_interval(self, a2):
        with pytest.raises(ValueError):
            assemble_simplex(a2, two_simplex(a2), (2, 1))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6), st.integers(1, 3))
    def test_random_simplices_agree(self, seed, n):
        for A in (homotopy_simplex(3), load_category(DATA / "m3.json")):
            rng = random.Random(seed)
            objs = tuple(sorted(rng.sample(list(A.objects), n + 1)))
            S = random_simplex(A, objs, rng)
            assert faonte_check(A, S)
            assert tan_simplex_member(Nerve(A), S)
            P = perturb(A, S, rng)
            if P is not None:
                assert bool(faonte_check(A, P)) == tan_simplex_member(Nerve(A), P)


class TestBeta:
    def test_closed_edge(self, h3):
        S = SimplexCollection((0, 1), {(0, 1): {h3["(0,1)"]: 1}})
        assert verify_beta_data(h3, 1, beta_from_collection(h3, S), S.objects)

    def test_wrong_unit(self, h3):
        beta = lambda seq: {h3["(0,1)"]: 1} if seq == (0, 1) else {}
        rep = verify_beta_data(h3, 1, beta, (0, 1))
        assert not rep and "unit" in rep.failures[0]["reason"]

    def test_from_collection(self, m3):
        S = random_simplex(m3, (0, 1, 2, 3), random.Random(4))
        assert verify_beta_data(m3, 3, beta_from_collection(m3, S), S.objects)


class TestHorns:
    def test_two_one_example(self, a2):
        H = horn_from_dict(__import__("json").loads((DATA / "horn_a2.json").read_text()), a2)
        nv = Nerve(a2)
        rep = horn_compatible(nv, H)
        assert rep and rep.stats.get("piece pairs", 0) == 0
        z = horn_fill(nv, H)
        assert z[identity(D(2))] == {}
        assert z[delta(2, 1)] == {(a2["(0,2)"],): 1}
        assert verify_filler(nv, H, z)

    def test_degenerate_horn(self, h3):
        nv = Nerve(h3)
        w = nv.degeneracy(1, nv.basis(D(2), 0, 3)[0])
        for j in (1, 2):
            H = restrict_to_horn(nv, w, j)
            assert verify_filler(nv, H, horn_fill(nv, H))

    def test_m3_horn(self, m3):
        nv = Nerve(m3)
        w = nv.basis(D(3), 0, 3, (0, 1, 2, 3))
        total = w[0]
        for y in w[1:]:
            total = total + y
        H = restrict_to_horn(nv, total, 1)
        z = horn_fill(nv, H)
        assert verify_filler(nv, H, z)
        assert m3.m((m3["e01"], m3["e12"], m3["e23"]))

    def test_perturbed_piece_is_incompatible(self, h3):
        nv = Nerve(h3)
        w = nv.random_element(D(3), 0, 3, random.Random(3))
        H = restrict_to_horn(nv, w, 2)
        g = inert(Necklace.parse("1,1,1"), D(1) | D(2))
        old = H.pieces[1][g]
        bumped = {(h3["(0,1)"], h3["(1,2)"], h3["(2,3)"]): old.get((h3["(0,1)"], h3["(1,2)"], h3["(2,3)"]), 0) + 1}
        bad = NerveElement(H.pieces[1].necklace, 0, 3, {**H.pieces[1].comps, g: {**old, **bumped}})
        H2 = HornData(3, 2, 0, 3, H.faces, {**H.pieces, 1: bad})
        rep = horn_compatible(nv, H2)
        assert not rep and {f["condition"] for f in rep.failures} <= {"pieces", "mixed"}
        with pytest.raises(ValueError, match="incompatible"):
            horn_fill(nv, H2)

    def test_shape_errors(self, a2):
        with pytest.raises(ValueError):
            HornData(2, 2, 0, 2, {}, {})
        with pytest.raises(ValueError):
            HornData(3, 1, 0, 3, {}, {})

    def test_dict_round_trip(self, m3):
        nv = Nerve(m3)
        H = restrict_to_horn(nv, nv.basis(D(3), 0, 3)[0], 2)
        H2 = horn_from_dict(horn_to_dict(H, m3), m3)
        assert H2.faces == H.faces and H2.pieces == H.pieces

    def test_malformed_dict(self, a2):
        with pytest.raises(SpecError):
            horn_from_dict({"n": 2}, a2)


def test_literal_display_sign_rejects_genuine_simplices(m3):
    S = random_simplex(m3, (0, 1, 2, 3), random.Random(4))
    assert not verify_beta_data(m3, 3, beta_from_collection(m3, S), S.objects, printed_sign=True)
