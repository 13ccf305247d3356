"""The property suites at reduced bounds; the full bounds run in test_acceptance."""

import pytest

from tanerve.exactlin import SignConvention
from tanerve.fixtures import homotopy_simplex
from tanerve.suites import (
    SUITES,
    brute_force_dimension,
    dg_comparison,
    functor_suite,
    horn_suite,
    kernel_suite,
    pin_convention,
    necklace_suite,
    run_all,
    simplicial_set_suite,
    structure_suite,
)
from tanerve.necklace import Necklace


def test_necklace_small():
    rep = necklace_suite(pmax=3, inert_max=5, bij_n=3, bij_r=2)
    assert rep, rep.failures[:3]
    assert rep.stats["inert maps"] > 0


def test_kernel_small():
    assert kernel_suite(pmax=2)


def test_structure_small():
    rep = structure_suite(pmax=3, pin=False)
    assert rep, rep.failures[:3]


def test_shifted_fails_at_spine_three():
    assert not structure_suite(SignConvention.SHIFTED, pmax=3, pin=False, fixtures=[homotopy_simplex(3)])


def test_plain_needs_spine_four_to_be_told_apart():
    small = pin_convention(pmax=3)
    assert small.stats["passing"] == ["koszul", "plain"] and not small


def test_functor_small():
    assert functor_suite(pmax=2)


def test_random_suites_small():
    assert dg_comparison(trials=30)
    assert simplicial_set_suite(trials=30)
    rep = horn_suite(per_case=5)
    assert rep and rep.stats["horns"] == 2 * 5 * 3


def test_run_all_subset():
    reps = run_all(only=["necklace", "ainfty"])
    assert [bool(r) for r in reps] == [True, True]


def test_suite_registry():
    assert set(SUITES) == {"necklace", "ainfty", "kernel", "structure", "functor", "dg", "horn", "sset"}


def test_brute_force_limit():
    from tanerve.exactlin import Field
    from tanerve.fixtures import homotopy_simplex as hs

    A = hs(3, Field(3))
    with pytest.raises(ValueError):
        brute_force_dimension(A, Necklace.simplex(3), 0, 3, limit=10)
