import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trimatcat.bimodule import (
    Bimodule, BimoduleError, bimodule_ext1, bimodule_from_hom, check_bimodule, ext1_dim,
    ext1_dim_oracle, hom_bimodule, mt_module, mu_module, zero_bimodule,
)
from trimatcat.fixtures import fixture, projectives, quiver_category, simples
from trimatcat.functor_modules import check_module, random_module, representable
from trimatcat.klinear_core import CategoryError


def test_a2_fixture_bimodule():
    M = fixture("a2").M
    assert M.dim("u", "t") == 1
    assert check_bimodule(M).ok


def test_hom_bimodule_dims():
    M = bimodule_from_hom(quiver_category("a3"), ["3"], ["1", "2"])
    assert (M.dim("3", "1"), M.dim("3", "2")) == (1, 1)
    assert check_bimodule(M).ok
    K = bimodule_from_hom(quiver_category("kronecker"), ["2"], ["1"])
    assert K.dim("2", "1") == 2


def test_overlap_rejected():
    with pytest.raises(BimoduleError):
        bimodule_from_hom(quiver_category("a3"), ["2", "3"], ["1", "2"])


def test_broken_left_action_is_reported():
    pc = quiver_category("a3")
    M = hom_bimodule(pc, pc, pc)
    left = dict(M.left)
    left[("2", "3", "1")] = 2 * M.left[("2", "3", "1")]
    bad = Bimodule(pc, pc, M.space, left, M.right)
    rep = check_bimodule(bad)
    laws = {f["law"] for f in rep.failures}
    assert "left_composition" in laws
    f = next(f for f in rep.failures if f["law"] == "left_composition")
    assert f["objects"] == ["1", "2", "3"] and f["T"] == "1"


def test_broken_identity_action():
    M = fixture("a2").M
    left = dict(M.left)
    left[("u", "u", "t")] = 2 * M.left[("u", "u", "t")]
    bad = Bimodule(M.tcat, M.ucat, M.space, left, M.right)
    assert any(f["law"] == "left_identity" for f in check_bimodule(bad).failures)


def test_action_shape_checked():
    M = fixture("a2").M
    with pytest.raises(BimoduleError):
        Bimodule(M.tcat, M.ucat, M.space, {("u", "u", "t"): np.zeros((1, 2, 2), dtype=object)}, {})


def test_mt_mu_examples():
    M = fixture("a2").M
    assert mt_module(M, "t").dims == {"u": 1}
    assert mu_module(M, "u").dims == {"t": 1}
    A3 = fixture("a3").M
    assert mt_module(A3, "2").dims == {"3": 1}
    assert mu_module(A3, "3").dims == {"1": 1, "2": 1}
    Z = zero_bimodule(M.tcat, M.ucat)
    assert mt_module(Z, "t").is_zero() and mu_module(Z, "u").is_zero()
    with pytest.raises(CategoryError):
        mt_module(M, "u")


@pytest.mark.parametrize("name", ["a2", "a3", "kronecker", "hom_a2"])
def test_one_sided_modules_are_functors(name):
    M = fixture(name).M
    for t in M.tcat.objects:
        assert check_module(mt_module(M, t)).ok
    for u in M.ucat.objects:
        assert check_module(mu_module(M, u)).ok


@pytest.mark.parametrize("name", ["a3", "kronecker"])
def test_mt_is_restricted_representable(name):
    f = fixture(name)
    M = f.M
    for t in M.tcat.objects:
        mt = mt_module(M, t)
        rep = representable(f.pc, t)
        for u, u2 in itertools.product(M.ucat.objects, repeat=2):
            assert mt.dims[u] == rep.dims[u]
            assert np.array_equal(mt.action[(u, u2)], rep.action[(u, u2)])


@pytest.mark.parametrize("name", ["a2", "a3", "kronecker", "hom_a2"])
def test_opposite_is_involution(name):
    M = fixture(name).M
    Mbar = M.opposite()
    assert check_bimodule(Mbar).ok
    assert Mbar.tcat.base is M.ucat and Mbar.ucat.base is M.tcat
    assert Mbar.opposite() is M
    for (t, u), sp in Mbar.space.items():
        assert sp == M.space[(u, t)]


# --- Ext¹ ---------------------------------------------------------------------


def test_ext1_a2_simples():
    pc = quiver_category("a2")
    S = simples(pc)
    assert ext1_dim(pc, S["St"], S["Su"]) == 1
    assert ext1_dim(pc, S["Su"], S["St"]) == 0
    P = projectives(pc)
    assert ext1_dim(pc, P["Pt"], P["Pt"]) == 0


def test_ext1_kronecker_simples():
    pc = quiver_category("kronecker")
    S = simples(pc)
    assert ext1_dim(pc, S["S1"], S["S2"]) == 2


def test_ext1_bimodule_block_convention():
    pc = quiver_category("a2")
    M = bimodule_ext1(pc, simples(pc))
    # M(U, T) = Ext¹(T, U)
    assert M.dim("Su", "St") == 1
    assert M.total_dim() == 1
    assert check_bimodule(M).ok


def test_ext1_rejects_relations():
    pc = quiver_category("a3_rel")
    with pytest.raises(BimoduleError):
        ext1_dim(pc, simples(pc)["S1"], simples(pc)["S3"])


@pytest.mark.parametrize("name", ["a2", "a3", "kronecker"])
@given(seed=st.integers(0, 10_000))
def test_ext1_matches_oracle(name, seed):
    pc = quiver_category(name)
    rng = np.random.default_rng(seed)
    Y, _ = random_module(pc, rng)
    X, _ = random_module(pc, rng)
    assert ext1_dim(pc, Y, X) == ext1_dim_oracle(pc, Y, X)


def test_ext1_bimodule_on_mixed_family():
    pc = quiver_category("a3")
    reps = dict(simples(pc))
    reps.update(projectives(pc))
    M = bimodule_ext1(pc, reps)
    assert check_bimodule(M).ok
    for (u, t), sp in M.space.items():
        assert sp.dim == ext1_dim_oracle(pc, reps[t], reps[u])
