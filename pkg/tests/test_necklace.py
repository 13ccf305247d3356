from itertools import product

import pytest
from hypothesis import given, strategies as st

from tanerve.necklace import (
    Necklace,
    NecklaceMap,
    compose,
    compose_at,
    delta,
    enumerate_inert_into,
    enumerate_injective_into,
    eps_c,
    eps_g,
    factor_active_inert,
    factor_epi_mono,
    identity,
    inert,
    koszul,
    maps_between,
    necklaces_up_to,
    nu,
    phi,
    phi_k,
    sigma,
    split_inert,
    split_injective,
    wedge_all,
)

from conftest import necklaces

D = Necklace.simplex
P = Necklace.parse


def brute_maps(S, T):
    """Every monotone endpoint preserving map sending each bead of S into a bead of T."""
    out = []
    for vals in product(range(T.spine + 1), repeat=S.spine + 1):
        if vals[0] != 0 or vals[-1] != T.spine or any(a > b for a, b in zip(vals, vals[1:])):
            continue
        ok = True
        for a, b in zip(S.joints, S.joints[1:]):
            lo, hi = vals[a], vals[b]
            if any(lo < t < hi for t in T.joints):
                ok = False
        if ok:
            out.append(vals)
    return sorted(out)


class TestNecklace:
    def test_wedge_of_simplices(self):
        T = D(1) | D(2)
        assert T.joints == (0, 1, 3) and T.spine == 3

    def test_unit(self):
        T = P("2,1")
        assert D(0) | T == T == T | D(0)

    def test_invariants_of_d2_d3(self):
        T = P("2,3")
        assert (T.length, T.spine, T.dim, T.signature) == (2, 5, 3, 1)

    def test_encoding(self):
        assert P("").encode() == "" and P("") == D(0)
        assert P(" 1, 2 ").beads == (1, 2)

    @pytest.mark.parametrize("text", ["0", "1,,2", "a", "-1"])
    def test_bad_encoding(self, text):
        with pytest.raises(ValueError):
            P(text)

    @pytest.mark.parametrize("spine,joints", [(-1, (0,)), (2, (0, 1)), (2, (1, 2)), (3, (0, 2, 1, 3))])
    def test_bad_joints(self, spine, joints):
        with pytest.raises(ValueError):
            Necklace(spine, joints)

    @given(necklaces)
    def test_round_trip(self, T):
        assert P(T.encode()) == T
        assert Necklace.from_beads(T.beads) == T

    @given(necklaces, necklaces)
    def test_wedge_additive(self, S, T):
        W = S | T
        assert W.spine == S.spine + T.spine
        assert W.length == S.length + T.length
        assert W.dim == S.dim + T.dim

    @given(necklaces)
    def test_signature_two_ways(self, T):
        assert T.signature == eps_g(*T.beads) == eps_c(*T.joints[1:-1])

    def test_before_after(self):
        T = P("1,2,3")
        assert T.before(2) == D(1) and T.after(2) == D(3)
        assert T.bead_range(2) == (1, 3)


class TestMaps:
    def test_codegeneracy_after_coface(self):
        assert compose(sigma(1, 0), delta(2, 1)) == identity(D(1))

    def test_identity_left_unit(self):
        f = delta(3, 2)
        assert compose(identity(D(3)), f) == f

    def test_wedge_functorial(self):
        f1, g1 = sigma(1, 0), delta(2, 1)
        f2, g2 = delta(2, 1), sigma(1, 0)
        lhs = compose(f1 | f2, g1 | g2)
        assert lhs == compose(f1, g1) | compose(f2, g2)

    def test_compose_mismatch(self):
        with pytest.raises(ValueError):
            compose(delta(2, 1), delta(2, 1))

    @pytest.mark.parametrize(
        "vals,why", [((0, 1), "short"), ((1, 1, 2), "endpoint"), ((0, 2, 1, 2), "monotone")]
    )
    def test_invalid_maps(self, vals, why):
        with pytest.raises(ValueError):
            NecklaceMap(D(len(vals) - 1) if why != "short" else D(2), D(2), vals)

    def test_joints_must_be_hit(self):
        with pytest.raises(ValueError):
            NecklaceMap(D(1), P("1,1"), (0, 2))

    def test_face_and_degeneracy_ranges(self):
        with pytest.raises(ValueError):
            delta(2, 3)
        with pytest.raises(ValueError):
            sigma(2, 3)


class TestFactorizations:
    def test_epi_mono_example(self):
        e, m = factor_epi_mono(NecklaceMap(D(2), D(2), (0, 0, 2)))
        assert e == sigma(1, 0) and m == delta(2, 1)

    def test_epi_mono_of_mono_and_epi(self):
        e, m = factor_epi_mono(delta(3, 1))
        assert e.is_identity and m == delta(3, 1)
        e, m = factor_epi_mono(sigma(1, 0))
        assert e == sigma(1, 0) and m.is_identity

    def test_active_inert_example(self):
        act, ine = factor_active_inert(nu(1, 1))
        assert act == identity(P("1,1"))
        assert ine == nu(1, 1) and ine.is_inert

    def test_active_inert_of_active(self):
        act, ine = factor_active_inert(sigma(1, 0))
        assert act == sigma(1, 0) and ine.is_identity

    @pytest.mark.parametrize("S", necklaces_up_to(3))
    def test_factorizations_recompose(self, S):
        for T in necklaces_up_to(3):
            for f in maps_between(S, T):
                e, m = factor_epi_mono(f)
                assert compose(m, e) == f
                assert e.is_active and e.is_surjective and m.is_injective
                act, ine = factor_active_inert(f)
                assert compose(ine, act) == f
                assert act.is_active and ine.is_inert

    def test_split_injective(self):
        g = delta(2, 1) | identity(D(1))
        assert split_injective(g, D(2), D(1)) == (delta(2, 1), identity(D(1)))
        W = P("1,1")
        assert split_injective(identity(W), D(1), D(1)) == (identity(D(1)), identity(D(1)))
        assert enumerate_injective_into(W) == (identity(W),)

    def test_split_injective_rejects(self):
        with pytest.raises(ValueError):
            split_injective(sigma(1, 0), D(1), D(0))

    def test_split_inert(self):
        mu = inert(P("1,1,2"), P("2,2"))
        assert split_inert(mu) == [nu(1, 1), identity(D(2))]
        with pytest.raises(ValueError):
            split_inert(delta(2, 1))


class TestEnumeration:
    @pytest.mark.parametrize("text,count", [("1", 1), ("2", 3), ("1,1", 1), ("", 1)])
    def test_injective_counts(self, text, count):
        assert len(enumerate_injective_into(P(text))) == count

    def test_injective_into_d2(self):
        got = set(enumerate_injective_into(D(2)))
        assert got == {identity(D(2)), nu(1, 1), delta(2, 1)}

    @pytest.mark.parametrize("n", range(1, 9))
    def test_inert_counts(self, n):
        maps = enumerate_inert_into(n)
        assert len(maps) == 2 ** (n - 1)
        assert all(m.is_inert and m.target == D(n) for m in maps)

    def test_inert_small(self):
        assert enumerate_inert_into(2) == (identity(D(2)), nu(1, 1))

    @pytest.mark.parametrize("S", necklaces_up_to(3))
    def test_maps_between_matches_bead_criterion(self, S):
        for T in necklaces_up_to(3):
            assert sorted(f.values for f in maps_between(S, T)) == brute_maps(S, T)

    @pytest.mark.parametrize("T", necklaces_up_to(4))
    def test_injective_matches_filter(self, T):
        want = set()
        for p in range(T.spine + 1):
            for S in necklaces_up_to(p):
                if S.spine == p:
                    want |= {f for f in maps_between(S, T) if f.is_injective}
        assert set(enumerate_injective_into(T)) == want


class TestSigns:
    def test_phi_k_example(self):
        assert phi_k(nu(1, 2), 2, P("2,3")) == 1

    def test_phi_k_rejects(self):
        with pytest.raises(ValueError):
            phi_k(nu(1, 2), 1, P("2,3"))
        with pytest.raises(ValueError):
            phi_k(delta(2, 1), 1, D(2))

    def test_phi_of_identity_and_nu(self):
        assert phi(identity(P("2,3"))) == 0
        assert phi(nu(2, 1)) == 0

    def test_koszul(self):
        assert koszul(1, 1) == 1 and koszul(2, 1) == 2 and koszul(1, 1, 1) == 3

    @given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
    def test_eps_g_matches_necklace(self, ns):
        assert eps_g(*ns) == Necklace.from_beads(ns).signature

    @pytest.mark.parametrize("n", range(1, 7))
    def test_magic_formula_corollary(self, n):
        for V in necklaces_up_to(4):
            for k in range(1, V.length + 1):
                if V.beads[k - 1] != n:
                    continue
                for w in enumerate_inert_into(n):
                    W = w.source
                    glued = wedge_all([V.before(k), W, V.after(k)])
                    want = V.signature + W.signature + phi_k(w, k, V) - (W.length - 1) * V.after(k).length
                    assert glued.signature == want


class TestComposeAt:
    def test_single_bead(self):
        assert compose_at(delta(3, 2), 1, delta(2, 1)) == compose(delta(3, 2), delta(2, 1))

    def test_nu_into_second_bead(self):
        got = compose_at(identity(P("2,2")), 2, nu(1, 1))
        assert got == inert(P("2,1,1"), P("2,2"))

    def test_identity_d3(self):
        assert compose_at(identity(D(3)), 1, delta(3, 1)) == delta(3, 1)

    def test_rejects(self):
        with pytest.raises(ValueError):
            compose_at(identity(P("2,2")), 3, nu(1, 1))
        with pytest.raises(ValueError):
            compose_at(identity(P("2,2")), 1, delta(3, 1))


def test_wedge_all_empty():
    assert wedge_all([]) == D(0)
