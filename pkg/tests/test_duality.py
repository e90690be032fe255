import pytest

from bqg.duality import (DualElement, build_dual, counit_morphism, dual_morphism, dual_report, fourier,
                         fourier_functional, group_dual_relabel, group_dual_twin, identity_morphism,
                         morphism_report, pair, pair_coords, pontrjagin_check, pontrjagin_maps,
                         quotient_morphism)
from bqg.freemod import Vec
from bqg.instances import FINITE_CATALOG, resolve
from bqg.qgcore import compare_structure, verify_laws
from oracles import cyclic, symmetric3

GROUP_FINITE = [n for n in FINITE_CATALOG if n.startswith(("fun:", "alg:"))]


def test_fourier_of_delta_is_dual_basis():
    H = resolve("fun:Z2")
    for s in (0, 1):
        w = fourier(H, Vec.basis(s))
        assert [w(Vec.basis(t)) for t in (0, 1)] == [int(s == t) for t in (0, 1)]
    assert fourier(H, Vec.zero())(Vec.basis(0)) == 0


@pytest.mark.parametrize("which", ["Fl", "Fr", "Gl", "Gr"])
@pytest.mark.parametrize("name", ["sweedler", "alg:S3", "taft:3"])
def test_fourier_coordinates_match_defining_formulas(name, which):
    H = resolve(name)
    for f in H.labels():
        w = fourier(H, Vec.basis(f), which)
        direct = fourier_functional(H, Vec.basis(f), which)
        assert all(w(Vec.basis(h)) == direct(Vec.basis(h)) for h in H.labels())


def test_gl_on_group_algebra():
    H = resolve("alg:Z2")
    for s in (0, 1):
        assert fourier(H, Vec.basis(s), "Gl") == DualElement(H, Vec.basis(s))


def test_dual_of_function_algebra_is_convolution():
    # oracle: mu^(F_l d_s (x) F_l d_t) = F_l d_(st), taken from the group table
    for elems, mul, inv, e in (cyclic(2), cyclic(3), symmetric3()):
        name = "fun:S3" if len(elems) == 6 else f"fun:Z{len(elems)}"
        D = build_dual(resolve(name))
        for s in elems:
            for t in elems:
                assert D.mu.on(s, t) == Vec.basis(mul(s, t))


def test_dual_of_group_algebra_is_pointwise():
    D = build_dual(resolve("alg:Z3"))
    H = resolve("alg:Z3")
    relabel = group_dual_relabel(H)
    for s in range(3):
        for t in range(3):
            # F_l(u_s) is evaluation at s^-1, and evaluations multiply pointwise
            want = Vec.basis(relabel(s)) if s == t else Vec.zero()
            got = Vec({(relabel(k[0]),): c for k, c in D.mu.on(s, t).items()})
            assert got == want


@pytest.mark.parametrize("name", GROUP_FINITE)
def test_group_duals_match_twins(name):
    H = resolve(name)
    assert compare_structure(build_dual(H), group_dual_twin(H), relabel=group_dual_relabel(H)) == []


@pytest.mark.parametrize("name", FINITE_CATALOG)
def test_dual_haar_identities(name):
    H = resolve(name)
    D = build_dual(H)
    eps_hat = D.counit()
    psi_hat = D.crosscheck["psi"]
    eps = H.counit()
    for f in H.labels():
        assert eps_hat.at(f) == H.phi.at(f)
        assert psi_hat.at(f) == eps.at(f)


@pytest.mark.parametrize("name", FINITE_CATALOG)
def test_dual_report(name):
    rep = dual_report(resolve(name), 0)
    assert rep.ok, [c.to_dict() for c in rep.failures()]
    assert rep.get("dual.galois.pentagon").passed


def test_counit_hat_of_function_algebra():
    D = build_dual(resolve("fun:Z2"))
    assert [D.counit().at(s) for s in (0, 1)] == [1, 1]


def test_pairings():
    H = resolve("fun:Z2")
    for s in (0, 1):
        for t in (0, 1):
            assert pair_coords(H, Vec.basis(s), Vec.basis(t)) == int(s == t)
    assert pair(fourier(H, Vec.zero()), Vec.basis(1)) == 0
    S = resolve("sweedler")
    assert pair_coords(S, Vec.basis("1"), Vec.basis("gx")) == 1


def test_dual_of_infinite_instances():
    for name in ("fun:Z", "alg:Z"):
        rep = verify_laws(build_dual(resolve(name)), "all", 2)
        assert rep.ok


@pytest.mark.parametrize("name", ["fun:Z2", "alg:Z2", "fun:Z3", "sweedler", "alg:S3", "taft:3"])
def test_pontrjagin(name):
    rep = pontrjagin_check(resolve(name), 0)
    assert rep.ok, [c.to_dict() for c in rep.failures()]
    assert rep.get("pontrjagin.double-dual-structure").passed
    assert len([i for i in rep.ids() if i.startswith("pontrjagin.formula")]) == 3


def test_pontrjagin_on_z2_by_hand():
    # P(d_s)(omega) = omega(d_s); double dual coordinates are again labels of Z2
    H = resolve("fun:Z2")
    dual, ddual, P0, *_ = pontrjagin_maps(H)
    for s in (0, 1):
        for c in (0, 1):
            val = dual.phi(dual.mu(Vec.basis(c).tensor(P0.on(s))))
            assert val == H.phi(H.mu(Vec.basis(s, c)))


def test_pontrjagin_needs_finite():
    with pytest.raises(ValueError):
        pontrjagin_check(resolve("fun:Z"))


def test_quotient_morphism_dual():
    m = quotient_morphism(resolve("alg:Z"), resolve("alg:Z2"))
    rep = morphism_report(m, 3)
    assert rep.ok
    d = dual_morphism(m)
    # oracle: <alpha(u_n), F_l(u_c)> = phi(u_(n mod 2) u_c) = [n + c even]
    for n in range(-3, 4):
        for c in (0, 1):
            assert d.pair(Vec.basis(n), Vec.basis(c)) == int((n + c) % 2 == 0)


@pytest.mark.parametrize("name", ["alg:Z", "sweedler", "taft:3", "fun:S3"])
def test_identity_morphism(name):
    rep = morphism_report(identity_morphism(resolve(name)), 3)
    assert rep.ok
    assert {"morphism.counit", "morphism.antipode", "morphism.dual-adjoint"} <= set(rep.ids())


@pytest.mark.parametrize("name", ["sweedler", "alg:Z3"])
def test_counit_morphism(name):
    assert morphism_report(counit_morphism(resolve(name)), 2).ok


def test_non_multiplicative_map_is_caught():
    from bqg.duality import Morphism
    from bqg.freemod import Operator
    H = resolve("alg:Z3")
    square = Operator(1, 1, lambda k: Vec.basis((2 * k[0] + 1) % 3))
    rep = morphism_report(Morphism(H, H, square, "bad"), 0)
    assert not rep.get("morphism.multiplicative").passed
