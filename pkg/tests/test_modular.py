import pytest

from bqg.freemod import Vec
from bqg.instances import CATALOG, FINITE_CATALOG, resolve
from bqg.modular import (compute_eta, compute_eta_literal, delta_element, invariant_space_dim,
                         left_invariant_functionals, modular_data, modular_report)
from oracles import sweedler_oracle

GROUP_INSTANCES = [n for n in CATALOG if n.startswith(("fun:", "alg:"))]


def as_vec(terms):
    return Vec([((k,), c) for k, c in terms.items()])


@pytest.fixture(scope="module")
def oracle():
    return sweedler_oracle()


def test_sweedler_psi(oracle):
    H = resolve("sweedler")
    md = modular_data(H)
    assert oracle["psi_dim"] == 1
    for lab in H.labels():
        assert md.psi.at(lab) == oracle["psi"][lab]
    # psi is a multiple of the dual basis functional of x
    assert [lab for lab in H.labels() if md.psi.at(lab)] == ["x"]


@pytest.mark.parametrize("which", ["sigma", "nu"])
def test_sweedler_twists(oracle, which):
    H = resolve("sweedler")
    op = getattr(modular_data(H), which)
    for lab in H.labels():
        assert op.on(lab) == as_vec(oracle[which][lab])


def test_sweedler_sigma_values():
    sigma = modular_data(resolve("sweedler")).sigma
    # phi(g x) = 1 = phi(x (-g)), so sigma(g) = -g with phi the dual of gx
    assert sigma.on("g") == -Vec.basis("g")
    assert sigma.on("x") == -Vec.basis("x")


def test_sweedler_delta(oracle):
    H = resolve("sweedler")
    assert as_vec(oracle["delta"]) == Vec.basis("g")
    assert delta_element(H) == Vec.basis("g")


def test_sweedler_antipode_squared_commutes_with_sigma():
    H = resolve("sweedler")
    S, _ = H.antipode()
    sigma = modular_data(H).sigma
    for lab in H.labels():
        assert S(S(sigma.on(lab))) == sigma(S(S.on(lab)))
    assert S(S.on("x")) == -Vec.basis("x")


@pytest.mark.parametrize("name", GROUP_INSTANCES)
def test_groups_are_unimodular(name):
    H = resolve(name)
    md = modular_data(H)
    for lab in H.labels(2):
        v = Vec.basis(lab)
        assert md.sigma(v) == v
        assert md.nu(v) == v
        assert md.delta.L(v) == v and md.delta.R(v) == v


def test_function_algebra_right_haar():
    md = modular_data(resolve("fun:Z3"))
    assert [md.psi.at(s) for s in range(3)] == [1, 1, 1]


def test_group_algebra_right_haar():
    md = modular_data(resolve("alg:Z2"))
    assert [md.psi.at(s) for s in range(2)] == [1, 0]


def test_sigma_on_group_algebra_is_trace_twist():
    # phi(u_s u_t) = [st = e] = phi(u_t u_s) over Z3
    H = resolve("alg:Z3")
    for s in range(3):
        for t in range(3):
            assert H.phi(H.mu(Vec.basis(s, t))) == H.phi(H.mu(Vec.basis(t, s)))


@pytest.mark.parametrize("name", FINITE_CATALOG)
def test_invariant_space_is_a_line(name):
    assert invariant_space_dim(resolve(name)) == 1


def test_invariant_space_oracles():
    H = resolve("fun:Z2")
    (f,) = left_invariant_functionals(H.labels(), H.galois["gamma_l"])
    assert len(set(f.values()) - {0}) == 1


@pytest.mark.parametrize("name", FINITE_CATALOG)
def test_modular_report(name):
    rep = modular_report(resolve(name), 0)
    assert rep.ok, [c.to_dict() for c in rep.failures()]
    assert "modular.eta-defining" in rep.ids()


@pytest.mark.parametrize("name", ["fun:Z", "alg:Z", "fun:F2", "alg:F2"])
def test_modular_report_infinite(name):
    rep = modular_report(resolve(name), 2)
    assert rep.ok


def test_eta_defining_relation_against_literal_formula():
    H = resolve("alg:Z3")
    md = modular_data(H)
    eta, lit = compute_eta(H), compute_eta_literal(H)
    mu = H.mu

    def holds(op):
        return all(H.phi(mu(Vec.basis(f, h))) == md.psi(mu(Vec.basis(h).tensor(op.on(f))))
                   for f in H.labels() for h in H.labels())
    assert holds(eta)
    assert not holds(lit)
