from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bqg.freemod import (ID, TAU, ArityError, Eliminator, FiniteBasis, NotInvertible, Operator, Vec,
                         compose, invert_on_span, leg_apply, matrix_operator, nullspace, otimes,
                         rank_of, window_tuples, zero_map)
from bqg.instances import Integers, resolve

labels = st.sampled_from(["a", "b", "c", "e"])
coeffs = st.integers(-5, 5)
vecs = st.lists(st.tuples(labels, coeffs), max_size=5).map(
    lambda terms: Vec([((lab,), c) for lab, c in terms]))


def test_vec_basics():
    v = Vec.basis("a") * 2 + Vec.basis("b")
    assert v.coeff("a") == 2
    assert v - v == 0
    assert (v / 2).coeff("a") == 1
    assert isinstance((Vec.basis("a") * 1 / 3).coeff("a"), Fraction)
    assert Vec.basis("a").tensor(Vec.basis("b")) == Vec.basis("a", "b")
    with pytest.raises(ArityError):
        Vec.basis("a") + Vec.basis("a", "b")


def test_tuple_labels_stay_labels():
    v = Vec.basis((0, 1))
    assert v.rank == 1
    assert v.coeff(((0, 1),)) == 1


def test_identity_and_flip():
    assert ID(Vec.basis("a")) == Vec.basis("a")
    assert TAU(Vec.basis("a", "b")) == Vec.basis("b", "a")


def test_mu_of_function_algebra():
    mu = resolve("fun:Z2").mu
    assert mu(Vec.basis(0, 1)) == 0
    assert mu(Vec.basis(1, 1)) == Vec.basis(1)


def test_leg_apply():
    x = Vec.basis("a", "b", "c")
    assert leg_apply(TAU, [1, 2], x) == Vec.basis("b", "a", "c")
    assert leg_apply(ID, [2], x) == x
    gr = resolve("alg:Z2").galois["gamma_r"]
    # gamma_r(u_s (x) u_t) = u_s (x) u_st on legs 1 and 3
    assert leg_apply(gr, [1, 3], Vec.basis(1, 0, 1)) == Vec.basis(1, 0, 0)
    with pytest.raises(ArityError):
        leg_apply(TAU, [1, 1], x)


def test_compose_and_otimes():
    swap_twice = compose(TAU, TAU)
    assert swap_twice(Vec.basis("a", "b")) == Vec.basis("a", "b")
    shift = matrix_operator({("a",): Vec.basis("b")}, 1, 1)
    both = otimes(shift, ID)
    assert both(Vec.basis("a", "c")) == Vec.basis("b", "c")
    with pytest.raises(ArityError):
        compose(TAU, ID)


def test_invert_upper_triangular():
    op = matrix_operator({("p",): Vec.basis("p"), ("q",): Vec.basis("p") + Vec.basis("q")}, 1, 1)
    inv = invert_on_span(op, ["p", "q"])
    assert inv.on("q") == Vec.basis("q") - Vec.basis("p")
    assert inv.on("p") == Vec.basis("p")


def test_invert_gamma_r_of_function_algebra():
    # oracle: gamma_r(d_s (x) d_t) = d_(s-t) (x) d_t, so the inverse is d_u (x) d_v -> d_(u+v) (x) d_v
    gr = resolve("fun:Z2").galois["gamma_r"]
    keys = [(u, v) for u in (0, 1) for v in (0, 1)]
    inv = invert_on_span(gr, keys)
    for u, v in keys:
        assert inv.on(u, v) == Vec.basis((u + v) % 2, v)


def test_invert_zero_map_fails():
    with pytest.raises(NotInvertible):
        invert_on_span(zero_map(), ["a", "b"])


def test_eliminator_and_nullspace():
    vs = [{("a",): 1, ("b",): 1}, {("b",): 1}, {("a",): 2, ("b",): 3}]
    assert rank_of(vs) == 2
    rel = nullspace(vs)
    assert len(rel) == 1
    total = {}
    for i, c in rel[0].items():
        for k, x in vs[i].items():
            total[k] = total.get(k, 0) + c * x
    assert all(v == 0 for v in total.values())
    e = Eliminator()
    e.add(vs[0], "u")
    assert e.express({("a",): 3, ("b",): 3}) == {"u": 3}
    assert e.express({("a",): 1}) is None


def test_window_tuples():
    Z = Integers()
    pairs = window_tuples([Z, Z], 2)
    assert all(abs(a) + abs(b) <= 2 for a, b in pairs)
    assert len(pairs) == 13
    fin = FiniteBasis(["p", "q"])
    assert len(window_tuples([fin, fin, fin], 5)) == 8


def test_operator_memo_is_consistent():
    calls = []

    def rule(k):
        calls.append(k)
        return Vec.basis(*k)
    op = Operator(1, 1, rule)
    op.on("a")
    op.on("a")
    assert calls == [("a",)]


@settings(max_examples=80, deadline=None)
@given(vecs, vecs, vecs)
def test_vector_space_laws(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert (u + v) * 3 == u * 3 + v * 3
    assert u - u == 0


@settings(max_examples=50, deadline=None)
@given(vecs, vecs, vecs)
def test_tensor_is_bilinear(u, v, w):
    assert (u + v).tensor(w) == u.tensor(w) + v.tensor(w)
    assert TAU(TAU(u.tensor(v))) == u.tensor(v)
