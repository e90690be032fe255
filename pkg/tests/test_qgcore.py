import json

import pytest

from bqg.freemod import ID, Operator, Vec
from bqg.instances import CATALOG, FINITE_CATALOG, resolve
from bqg.qgcore import (Check, Law, Multiplier, QuantumGroup, Report, compare_structure, derivation_report,
                        derive_antipode, derive_counit, multiplier_check, multiplier_of, normalizing_elements,
                        opposite_variant, unit_multiplier, verify_laws)
from oracles import sweedler_oracle


def test_function_algebra_z2_against_hand_tables():
    # Delta(d_u) = sum_{st = u} d_s (x) d_t, so gamma_r(d_s (x) d_t) = Delta(d_s)(1 (x) d_t) = d_(s-t) (x) d_t
    # and rho_l(d_s (x) d_t) = (d_s (x) 1) Delta(d_t) = d_s (x) d_(t-s) over Z2.
    H = resolve("fun:Z2")
    for s in (0, 1):
        for t in (0, 1):
            assert H.galois["gamma_r"].on(s, t) == Vec.basis((s - t) % 2, t)
            assert H.galois["rho_l"].on(s, t) == Vec.basis(s, (t - s) % 2)
            assert H.mu.on(s, t) == (Vec.basis(s) if s == t else 0)
    rep = verify_laws(H, "all", 0)
    assert rep.ok
    assert {"algebra.associativity", "galois.pentagon", "hopf.antipode-left"} <= set(rep.ids())


def test_group_algebra_with_identity_gamma_r_fails():
    H = resolve("alg:Z2")
    broken = QuantumGroup("broken", H.field, H.basis, H.mu,
                          dict(H.galois, gamma_r=Operator(2, 2, lambda k: Vec.basis(*k))), H.phi,
                          unit=H.unit)
    rep = verify_laws(broken, "galois", 0)
    assert not rep.ok
    fails = rep.failures()
    assert all(c.counterexample for c in fails)
    assert "galois.condition-e" in [c.id for c in fails]


def test_integers_window():
    rep = verify_laws(resolve("fun:Z"), "all", 4)
    assert rep.ok and rep.window == 4


@pytest.mark.parametrize("suite", ["algebra", "galois", "hopf"])
def test_suites_are_subsets(suite):
    H = resolve("sweedler")
    full = set(verify_laws(H, "all", 0).ids())
    part = verify_laws(H, suite, 0)
    assert part.ok
    assert set(part.ids()) < full


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify_laws(resolve("fun:Z2"), "nope")


def test_group_counits():
    assert [derive_counit(resolve("fun:Z2")).at(s) for s in (0, 1)] == [1, 0]
    assert [derive_counit(resolve("alg:Z2")).at(s) for s in (0, 1)] == [1, 1]


def test_sweedler_counit_and_antipode_match_oracle():
    want = sweedler_oracle()
    H = resolve("sweedler")
    eps = derive_counit(H)
    S, S_inv = derive_antipode(H, eps)
    for lab in H.labels():
        assert eps.at(lab) == want["eps"][lab]
        assert S.on(lab) == Vec([((k,), c) for k, c in want["S"][lab].items()])
        assert S_inv(S.on(lab)) == Vec.basis(lab)


def test_second_normalizing_element_differs():
    for name in ("fun:Z2", "alg:S3", "sweedler", "fun:F2"):
        H = resolve(name)
        h1, h2 = normalizing_elements(H, 2)
        assert h1 != h2
        assert H.phi(h1) == H.phi(h2) == 1


@pytest.mark.parametrize("name", CATALOG)
def test_derivation_is_unique_and_matches(name):
    rep = derivation_report(resolve(name), 3)
    assert rep.ok, rep.failures()
    assert len(rep.checks) == 6


def test_opcop_is_an_involution():
    H = resolve("fun:Z3")
    twice = opposite_variant(opposite_variant(H, "opcop"), "opcop")
    assert twice.name == "fun:Z3"
    assert compare_structure(H, twice) == []


def test_cocommutative_and_commutative_variants():
    assert compare_structure(resolve("alg:Z2"), opposite_variant(resolve("alg:Z2"), "cop")) == []
    assert compare_structure(resolve("fun:S3"), opposite_variant(resolve("fun:S3"), "op")) == []
    assert compare_structure(resolve("alg:S3"), opposite_variant(resolve("alg:S3"), "op")) != []


@pytest.mark.parametrize("variant", ["op", "cop", "opcop"])
def test_variants_of_sweedler_are_quantum_groups(variant):
    assert verify_laws(opposite_variant(resolve("sweedler"), variant), "all", 0).ok


def test_multiplier_of_idempotent():
    H = resolve("fun:Z2")
    m = multiplier_of(H, Vec.basis(0))
    assert m.left(Vec.basis(1)) == 0
    assert m.left(Vec.basis(0)) == Vec.basis(0)
    assert multiplier_check(H, m).ok


@pytest.mark.parametrize("name", CATALOG)
def test_unit_multiplier(name):
    assert multiplier_check(resolve(name), unit_multiplier(), 2).ok


def test_word_length_multiplier():
    def scaled(H):
        G = H.group
        op = Operator(1, 1, lambda k: Vec.basis(*k) * G.word_length(k[0]), "len")
        return Multiplier(op, op, "len")
    # diagonal maps are multipliers of the function algebra ...
    H = resolve("fun:Z")
    assert multiplier_check(H, scaled(H), 3).ok
    # ... but not of the group algebra: u_1 L(u_2) = 2 u_3 while R(u_1) u_2 = u_3
    H = resolve("alg:Z")
    rep = multiplier_check(H, scaled(H), 3)
    bad = rep.get("multiplier.balanced")
    assert not bad.passed and bad.counterexample["input"]


def test_check_needs_counterexample():
    with pytest.raises(ValueError):
        Check("x", "law", "fail")
    assert Check("x", "law", "pass").to_dict() == {"id": "x", "law": "law", "status": "pass"}


def test_law_records_first_counterexample():
    H = resolve("fun:Z2")
    law = Law("demo", "mu = 0", H.mu, Operator(2, 1, lambda k: Vec.zero(1)), [H.basis, H.basis])
    c = law.check(0)
    assert c.status == "fail"
    assert c.counterexample == {"input": ["0", "0"], "lhs": "[0]", "rhs": "0"}


def test_report_json_is_stable(monkeypatch):
    a = json.dumps(verify_laws(resolve("alg:S3"), "all", 0).to_dict())
    monkeypatch.setenv("QG_THREADS", "4")
    b = json.dumps(verify_laws(resolve("alg:S3"), "all", 0).to_dict())
    assert a == b
    assert json.loads(a)["timing_ms"] is None


def test_report_text():
    rep = Report("demo", 0)
    rep.record("a", "first", True)
    rep.record("b", "second", False, {"input": ["z"]})
    text = rep.to_text()
    assert "[fail] b: second" in text and "1/2 checks passed" in text
    assert not rep.ok and [c.id for c in rep.failures()] == ["b"]


@pytest.mark.parametrize("name", FINITE_CATALOG)
def test_unital_instances_have_unit(name):
    H = resolve(name)
    assert H.unit is not None
    for lab in H.labels():
        assert H.mu(H.unit.tensor(Vec.basis(lab))) == Vec.basis(lab)


def test_local_units_of_function_algebra():
    H = resolve("fun:Z")
    e = H.local_unit(2)
    for n in range(-2, 3):
        assert H.mu(e.tensor(Vec.basis(n))) == Vec.basis(n)
    assert ID(e) == e


def test_zero_product_is_not_essential():
    from bqg.qgcore import essential_check
    H = resolve("fun:Z2")
    zero = QuantumGroup("zero", H.field, H.basis, Operator(2, 1, lambda k: Vec.zero(1)), H.galois, H.phi)
    c = essential_check(zero, 0)
    assert c.status == "fail" and c.counterexample["input"] == ["0"]
    assert essential_check(H, 0).status == "pass"
