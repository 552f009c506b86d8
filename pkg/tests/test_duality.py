import numpy as np
import pytest
from hypothesis import given, strategies as st

from trimatcat.duality import (
    check_theta_twice, double_dual_check, dual_map, dualize_module, nu_square_check,
    theta_hat, theta_hat_morphism, witness_to_dict,
)
from trimatcat.exact_linalg import QQ
from trimatcat.fixtures import LAMBDA_FIXTURES, fixture, quiver_category
from trimatcat.functor_modules import (
    FiniteModule, ModuleTriple, check_exact_sequence, check_module, check_triple,
    check_triple_morphism, hom_triples, kernel_cokernel_triples, module_from_triple,
    projective_triple, random_module, random_triple, triple_morphism_from,
    zero_module, zero_triple,
)

seeds = st.integers(0, 2**32 - 1)


def regular_a2():
    M = fixture("a2").M
    A = FiniteModule(M.tcat, {"t": 1}, {("t", "t"): [[[1]]]})
    B = FiniteModule(M.ucat, {"u": 1}, {("u", "u"): [[[1]]]})
    return ModuleTriple(M, A, B, {("u", "t"): QQ.array([1], (1, 1, 1))})


def test_dualize_zero_and_dims():
    pc = quiver_category("a2")
    assert dualize_module(zero_module(pc)).is_zero()
    C = FiniteModule.from_arrows(pc, {"t": 2, "u": 3}, {"a": [[1, 0], [0, 1], [1, 1]]})
    D = dualize_module(C)
    assert D.base is pc.opposite()
    assert D.dims == {"t": 2, "u": 3}
    assert check_module(D).ok


def test_dual_action_is_transpose():
    L = fixture("a2").L
    C = module_from_triple(regular_a2(), L)
    D = dualize_module(C)
    for k in range(3):
        f = L.basis_vector("t|u", "t|u", k)
        assert np.array_equal(D.matrix("t|u", "t|u", f), C.matrix("t|u", "t|u", f).T)


def test_theta_hat_zero():
    M = fixture("a3").M
    th = theta_hat(zero_triple(M))
    assert th.A.is_zero() and th.B.is_zero()


def test_theta_hat_regular():
    tr = regular_a2()
    th = theta_hat(tr)
    assert th.M is tr.M.opposite()
    # s(m · x) with everything one-dimensional is the same scalar
    assert th.act[("t", "u")].tolist() == [[[1]]]
    assert check_triple(th).ok


@pytest.mark.parametrize("name", ["a3", "kronecker"])
@given(seed=seeds)
def test_theta_hat_is_contravariant(name, seed):
    f = fixture(name)
    rng = np.random.default_rng(seed)
    trs = [random_triple(f.M, rng) for _ in range(3)]
    H1, H2 = hom_triples(trs[0], trs[1]), hom_triples(trs[1], trs[2])
    if not (H1.dim and H2.dim):
        return
    phi = triple_morphism_from(H1, H1.random(rng))
    psi = triple_morphism_from(H2, H2.random(rng))
    th = [theta_hat(t) for t in trs]
    tphi = theta_hat_morphism(phi, th[1], th[0])
    tpsi = theta_hat_morphism(psi, th[2], th[1])
    assert check_triple_morphism(tphi).ok and check_triple_morphism(tpsi).ok
    both = theta_hat_morphism(psi.compose(phi), th[2], th[0])
    rev = tphi.compose(tpsi)
    for k in both.alpha:
        assert np.array_equal(QQ.reduce(both.alpha[k]), QQ.reduce(rev.alpha[k]))
    for k in both.beta:
        assert np.array_equal(QQ.reduce(both.beta[k]), QQ.reduce(rev.beta[k]))


def test_nu_zero_triple():
    f = fixture("a2")
    _, rep = nu_square_check(zero_triple(f.M), f.L)
    assert rep.ok


def test_nu_regular_is_swap():
    f = fixture("a2")
    nu, rep = nu_square_check(regular_a2(), f.L)
    assert rep.ok
    assert nu["t|u"].tolist() == [[0, 1], [1, 0]]


def test_nu_a3_projective():
    f = fixture("a3")
    P = projective_triple(f.L, "1|3")
    assert (P.A.dims["1"], P.B.dims["3"]) == (1, 2)
    nu, rep = nu_square_check(P, f.L)
    assert rep.ok
    assert nu["1|3"].shape == (3, 3)


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
def test_nu_every_projective(name):
    L = fixture(name).L
    for x in L.objects:
        assert nu_square_check(projective_triple(L, x), L)[1].ok


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
@given(seed=seeds)
def test_nu_random(name, seed):
    f = fixture(name)
    tr = random_triple(f.M, np.random.default_rng(seed))
    assert nu_square_check(tr, f.L)[1].ok


def test_nu_rejects_invalid_triple():
    tr = regular_a2()
    bad_A = FiniteModule(tr.M.tcat, {"t": 1}, {("t", "t"): [[[3]]]})
    bad = ModuleTriple(tr.M, bad_A, tr.B, tr.act)
    assert not nu_square_check(bad, fixture("a2").L)[1].ok


def test_nu_witness_json():
    f = fixture("a2")
    nu, rep = nu_square_check(regular_a2(), f.L)
    d = witness_to_dict(nu, rep, f.L.field)
    assert d["nu"]["t|u"] == [["0/1", "1/1"], ["1/1", "0/1"]]
    assert d["report"]["passed"]


def test_double_dual_small():
    pc = quiver_category("a2")
    C = FiniteModule.from_arrows(pc, {"t": 1, "u": 0}, {})
    ev, rep = double_dual_check(C)
    assert rep.ok and ev["t"].tolist() == [[1]]
    L = fixture("a2").L
    assert double_dual_check(module_from_triple(regular_a2(), L))[1].ok


@given(seed=seeds)
def test_double_dual_random(seed):
    pc = quiver_category("a3")
    C, _ = random_module(pc, np.random.default_rng(seed))
    assert double_dual_check(C)[1].ok


@pytest.mark.parametrize("name", LAMBDA_FIXTURES)
@given(seed=seeds)
def test_theta_twice(name, seed):
    f = fixture(name)
    assert check_theta_twice(random_triple(f.M, np.random.default_rng(seed))).ok


@pytest.mark.parametrize("name", ["a3", "kronecker"])
@given(seed=seeds)
def test_duality_is_exact(name, seed):
    f = fixture(name)
    rng = np.random.default_rng(seed)
    t1, t2 = random_triple(f.M, rng), random_triple(f.M, rng)
    H = hom_triples(t1, t2)
    if not H.dim:
        return
    phi = triple_morphism_from(H, H.random(rng))
    ker, cok, inc, proj, rep = kernel_cokernel_triples(phi)
    assert rep.ok
    th = {k: theta_hat(v) for k, v in (("k", ker), ("s", t1), ("t", t2), ("c", cok))}
    seq = [theta_hat_morphism(proj, th["c"], th["t"]),
           theta_hat_morphism(phi, th["t"], th["s"]),
           theta_hat_morphism(inc, th["s"], th["k"])]
    assert check_exact_sequence(seq).ok


def test_dual_map_transposes():
    eta = {"x": QQ.array([[1, 2], [3, 4]])}
    assert dual_map(eta)["x"].tolist() == [[1, 3], [2, 4]]
